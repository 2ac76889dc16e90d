//! The BIT-predicate graph on the naturals and its saturation
//! witnesses.
//!
//! Vertices are arbitrary-precision naturals; `m ~ n` (for `m < n`)
//! holds when bit `m` of `n` is set. Directing every edge from the
//! larger number to the smaller gives the BIT digraph, in which the
//! out-set of `n` is exactly its set of bit positions. Each finite set
//! of naturals is realized as an out-set exactly once — the digraph is
//! extensional — so there is no multiplicity parameter here, unlike
//! the transfinite construction this models, which realizes every
//! countable set continuum-many times.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::graphs::{FiniteDigraph, FiniteGraph, GraphError};

/// A vertex of the BIT graph; its out-set consists of its bit positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitVertex(pub BigUint);

impl BitVertex {
    pub fn out_set(&self) -> BTreeSet<u64> {
        bit_positions(&self.0)
    }
}

/// Bit positions set in `n`.
pub fn bit_positions(n: &BigUint) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for (i, byte) in n.to_bytes_le().iter().enumerate() {
        for b in 0..8 {
            if byte & (1 << b) != 0 {
                out.insert(i as u64 * 8 + b);
            }
        }
    }
    out
}

/// `Σ 2^a` over the given bit positions.
pub fn from_bit_set(set: &BTreeSet<u64>) -> BigUint {
    let mut n = BigUint::zero();
    for &a in set {
        n.set_bit(a, true);
    }
    n
}

/// The symmetric BIT adjacency: with `a = min`, `b = max`, true iff
/// bit `a` of `b` is set. Errors on `m = n`.
pub fn bit_edge(m: &BigUint, n: &BigUint) -> Result<bool, GraphError> {
    if m == n {
        return Err(GraphError::LoopQuery);
    }
    let (a, b) = if m < n { (m, n) } else { (n, m) };
    // A bit index beyond u64 cannot be set in any representable b.
    Ok(match a.to_u64() {
        Some(i) => b.bit(i),
        None => false,
    })
}

/// Checks the witness postcondition: `v ∉ A ∪ B`, `A ⊆ N(v)`,
/// `B ∩ N(v) = ∅`.
pub fn verify_witness(v: &BigUint, a: &BTreeSet<BigUint>, b: &BTreeSet<BigUint>) -> bool {
    if a.contains(v) || b.contains(v) {
        return false;
    }
    a.iter().all(|x| bit_edge(v, x) == Ok(true))
        && b.iter().all(|x| bit_edge(v, x) == Ok(false))
}

fn check_disjoint(a: &BTreeSet<BigUint>, b: &BTreeSet<BigUint>) -> Result<(), GraphError> {
    if let Some(x) = a.intersection(b).next() {
        return Err(GraphError::NotDisjoint(x.to_string()));
    }
    Ok(())
}

/// Constructive witness: set bits exactly at `A` plus one fresh high
/// bit chosen past every constraint. Output verified against the same
/// postcondition as the minimal scan; the two may differ in value.
pub fn saturation_witness_fast(
    a: &BTreeSet<BigUint>,
    b: &BTreeSet<BigUint>,
) -> Result<BigUint, GraphError> {
    check_disjoint(a, b)?;
    let mut base = BigUint::zero();
    for x in a {
        let i = x
            .to_u64()
            .ok_or_else(|| GraphError::TooLarge("witness bit index".into()))?;
        base.set_bit(i, true);
    }
    let mut h = a
        .iter()
        .map(|x| x.to_u64().unwrap_or(u64::MAX) + 1)
        .chain(b.iter().map(|x| x.bits()))
        .max()
        .unwrap_or(0);
    loop {
        let h_big = BigUint::from(h);
        let mut v = base.clone();
        v.set_bit(h, true);
        if !b.contains(&h_big) && verify_witness(&v, a, b) {
            return Ok(v);
        }
        h += 1;
    }
}

/// Least `v ∉ A ∪ B` adjacent to all of `A` and none of `B` in the
/// BIT graph. The scan is bounded by the constructive witness, which
/// always satisfies the postcondition, so it terminates.
pub fn saturation_witness(
    a: &BTreeSet<BigUint>,
    b: &BTreeSet<BigUint>,
) -> Result<BigUint, GraphError> {
    check_disjoint(a, b)?;
    let bound = saturation_witness_fast(a, b)?;
    let mut v = BigUint::zero();
    while v < bound {
        if verify_witness(&v, a, b) {
            return Ok(v);
        }
        v += BigUint::one();
    }
    Ok(bound)
}

/// Convenience wrappers over `u64` vertex sets.
pub fn witness_u64(a: &BTreeSet<u64>, b: &BTreeSet<u64>, fast: bool) -> Result<BigUint, GraphError> {
    let a: BTreeSet<BigUint> = a.iter().map(|&x| BigUint::from(x)).collect();
    let b: BTreeSet<BigUint> = b.iter().map(|&x| BigUint::from(x)).collect();
    if fast {
        saturation_witness_fast(&a, &b)
    } else {
        saturation_witness(&a, &b)
    }
}

/// The BIT graph induced on the given vertex labels. Returns the
/// relabelled graph together with the sorted label vector.
pub fn bit_graph_on(labels: &[u64]) -> (FiniteGraph, Vec<u64>) {
    let labels: Vec<u64> = {
        let mut l: Vec<u64> = labels.to_vec();
        l.sort_unstable();
        l.dedup();
        l
    };
    let mut edges = Vec::new();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            let (m, n) = (BigUint::from(labels[i]), BigUint::from(labels[j]));
            if bit_edge(&m, &n).unwrap() {
                edges.push((i, j));
            }
        }
    }
    (
        FiniteGraph::new(labels.len(), edges).expect("constructed in range"),
        labels,
    )
}

/// The BIT digraph induced on the given labels: an arc `i -> j` when
/// label `j` is a bit of label `i`.
pub fn bit_digraph_on(labels: &[u64]) -> (FiniteDigraph, Vec<u64>) {
    let labels: Vec<u64> = {
        let mut l: Vec<u64> = labels.to_vec();
        l.sort_unstable();
        l.dedup();
        l
    };
    let mut arcs = Vec::new();
    for (i, &from) in labels.iter().enumerate() {
        let out = bit_positions(&BigUint::from(from));
        for (j, &to) in labels.iter().enumerate() {
            if out.contains(&to) {
                arcs.push((i, j));
            }
        }
    }
    (
        FiniteDigraph::new(labels.len(), arcs).expect("bit arcs go strictly downward"),
        labels,
    )
}

/// Closure of `{n}` under the out-set relation (bit positions of bit
/// positions, and so on). Always finite and downward-closed.
pub fn nz_closure(n: u64) -> BTreeSet<u64> {
    let mut seen = BTreeSet::from([n]);
    let mut stack = vec![n];
    while let Some(v) = stack.pop() {
        for p in bit_positions(&BigUint::from(v)) {
            if seen.insert(p) {
                stack.push(p);
            }
        }
    }
    seen
}

/// Outcome of the finitized saturation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SaturationOutcome {
    Saturated,
    Counterexample {
        a: BTreeSet<usize>,
        b: BTreeSet<usize>,
    },
}

/// Subsets of `universe` with fewer than `bound` elements, in
/// lexicographic order on the sorted tuples, a prefix before its
/// extensions.
fn subsets_below(universe: &[usize], bound: usize) -> Vec<Vec<usize>> {
    fn go(
        universe: &[usize],
        bound: usize,
        from: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(prefix.clone());
        if prefix.len() + 1 >= bound {
            return;
        }
        for k in from..universe.len() {
            prefix.push(universe[k]);
            go(universe, bound, k + 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if bound == 0 {
        return out;
    }
    go(universe, bound, 0, &mut Vec::new(), &mut out);
    out
}

/// Checks whether every disjoint pair `A, B` with `|A| < s`, `|B| < t`
/// has a witness vertex in `g`; returns the lexicographically first
/// failing pair otherwise.
pub fn check_saturation(g: &FiniteGraph, s: usize, t: usize) -> SaturationOutcome {
    let vertices: Vec<usize> = (0..g.n()).collect();
    for a in subsets_below(&vertices, s) {
        let a_set: BTreeSet<usize> = a.iter().copied().collect();
        let rest: Vec<usize> = vertices
            .iter()
            .copied()
            .filter(|v| !a_set.contains(v))
            .collect();
        for b in subsets_below(&rest, t) {
            let b_set: BTreeSet<usize> = b.iter().copied().collect();
            let witnessed = (0..g.n()).any(|v| {
                !a_set.contains(&v)
                    && !b_set.contains(&v)
                    && a_set.iter().all(|&x| g.has_edge(v, x))
                    && b_set.iter().all(|&x| !g.has_edge(v, x))
            });
            if !witnessed {
                return SaturationOutcome::Counterexample { a: a_set, b: b_set };
            }
        }
    }
    SaturationOutcome::Saturated
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn set(xs: &[u64]) -> BTreeSet<BigUint> {
        xs.iter().map(|&x| big(x)).collect()
    }

    #[test]
    fn bit_edge_examples() {
        assert_eq!(bit_edge(&big(0), &big(1)), Ok(true));
        assert_eq!(bit_edge(&big(0), &big(2)), Ok(false));
        assert_eq!(bit_edge(&big(2), &big(5)), Ok(true));
        assert_eq!(bit_edge(&big(3), &big(3)), Err(GraphError::LoopQuery));
    }

    #[test]
    fn bit_edge_symmetry() {
        for m in 0..64u64 {
            for n in 0..64u64 {
                if m != n {
                    assert_eq!(bit_edge(&big(m), &big(n)), bit_edge(&big(n), &big(m)));
                }
            }
        }
    }

    #[test]
    fn witness_examples() {
        assert_eq!(
            saturation_witness(&set(&[0, 1]), &set(&[2])).unwrap(),
            big(3)
        );
        assert_eq!(saturation_witness(&set(&[]), &set(&[])).unwrap(), big(0));
        assert_eq!(
            saturation_witness(&set(&[2]), &set(&[0, 1])).unwrap(),
            big(4)
        );
    }

    #[test]
    fn witness_not_disjoint() {
        assert!(matches!(
            saturation_witness(&set(&[1]), &set(&[1])),
            Err(GraphError::NotDisjoint(_))
        ));
    }

    #[test]
    fn fast_witness_verifies() {
        let a = set(&[0, 3, 7]);
        let b = set(&[1, 2, 12]);
        let w = saturation_witness_fast(&a, &b).unwrap();
        assert!(verify_witness(&w, &a, &b));
        let w_min = saturation_witness(&a, &b).unwrap();
        assert!(verify_witness(&w_min, &a, &b));
        assert!(w_min <= w);
    }

    #[test]
    fn extensionality_small() {
        // Each subset of 0..k is the out-set of exactly one n.
        let k = 8u64;
        let mut seen = BTreeSet::new();
        for n in 0..(1u64 << k) {
            let bits = bit_positions(&big(n));
            assert!(seen.insert(bits.clone()));
            assert_eq!(from_bit_set(&bits), big(n));
        }
        assert_eq!(seen.len(), 1 << k);
    }

    #[test]
    fn saturation_check_examples() {
        let k4 = FiniteGraph::complete(4);
        assert_eq!(check_saturation(&k4, 2, 1), SaturationOutcome::Saturated);
        let e3 = FiniteGraph::empty(3);
        assert_eq!(
            check_saturation(&e3, 2, 1),
            SaturationOutcome::Counterexample {
                a: BTreeSet::from([0]),
                b: BTreeSet::new(),
            }
        );
    }

    #[test]
    fn bit_graph_restricted() {
        let (g, labels) = bit_graph_on(&[0, 1, 3]);
        assert_eq!(labels, vec![0, 1, 3]);
        assert!(g.has_edge(0, 1)); // 0 ~ 1
        assert!(g.has_edge(0, 2)); // 0 ~ 3
        assert!(g.has_edge(1, 2)); // 1 ~ 3
    }

    #[test]
    fn bit_digraph_is_downward() {
        let (d, labels) = bit_digraph_on(&[0, 1, 3]);
        assert_eq!(labels, vec![0, 1, 3]);
        assert!(d.has_arc(2, 0) && d.has_arc(2, 1) && d.has_arc(1, 0));
        assert!(d.is_acyclic());
    }

    #[test]
    fn closure_is_downward_closed() {
        let c = nz_closure(6);
        assert_eq!(c, BTreeSet::from([0, 1, 2, 6]));
    }
}
