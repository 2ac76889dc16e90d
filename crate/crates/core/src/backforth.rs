//! Generic back-and-forth engine over presentations with extension
//! oracles.
//!
//! A presentation is an enumerated structure with an atomic-relation
//! oracle and an extender that realizes the type of a new element over
//! a finite subset. The engine alternates sides: even steps take the
//! least-enumerated unmapped left element and realize its type on the
//! right, odd steps go the other way, so element `k` of either side is
//! mapped by step `2k + 2`. Choices are never revised; an extender
//! failure aborts the run with the partial map.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graphs::{
    bit_edge, saturation_witness_fast, verify_witness, FiniteGraph, GraphError,
};
use crate::orders::{
    cmp, realize_cut, sample_term, Cut, OrderDesc, OrderError, OrderTerm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfError {
    #[error("extender exhausted: no element realizes the requested type")]
    ExtenderExhausted,
    #[error("extender output fails its own type: {0}")]
    ExtenderInvalid(String),
    #[error("map is not a partial isomorphism: {0}")]
    NotAPartialIso(String),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The relational type of a new element over a finite subset:
/// `pos` are the elements it must relate to positively (strict lower
/// set for orders, adjacent set for graphs) and `neg` the rest
/// (strict upper set, non-adjacent set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeOver<E> {
    pub pos: Vec<E>,
    pub neg: Vec<E>,
}

/// An enumerated structure with a relation oracle and an extender.
pub trait Presentation {
    type Elem: Clone + Ord + std::fmt::Debug;

    /// The `idx`-th element of the injective enumeration, `None` once
    /// a finite presentation is exhausted.
    fn enumerate(&self, idx: usize) -> Option<Self::Elem>;

    /// Directed atomic relation: `a < b` for orders, adjacency for
    /// graphs.
    fn relates(&self, a: &Self::Elem, b: &Self::Elem) -> Result<bool, BfError>;

    /// An element realizing the type, not among the type's elements.
    fn extend(&self, ty: &TypeOver<Self::Elem>) -> Result<Self::Elem, BfError>;

    /// Whether `e` realizes the type; used to re-verify every extender
    /// answer.
    fn satisfies(&self, e: &Self::Elem, ty: &TypeOver<Self::Elem>) -> Result<bool, BfError>;

    /// The type of element `x` over the listed elements.
    fn type_of(
        &self,
        x: &Self::Elem,
        over: &[Self::Elem],
    ) -> Result<TypeOver<Self::Elem>, BfError> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for m in over {
            if self.relates(m, x)? {
                pos.push(m.clone());
            } else {
                neg.push(m.clone());
            }
        }
        Ok(TypeOver { pos, neg })
    }
}

/// A finite bijection maintained as a partial isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialIso<L, R> {
    pairs: Vec<(L, R)>,
}

impl<L: Clone + Ord, R: Clone + Ord> PartialIso<L, R> {
    pub fn new() -> Self {
        PartialIso { pairs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(L, R)] {
        &self.pairs
    }

    pub fn has_left(&self, x: &L) -> bool {
        self.pairs.iter().any(|(a, _)| a == x)
    }

    pub fn has_right(&self, y: &R) -> bool {
        self.pairs.iter().any(|(_, b)| b == y)
    }

    pub fn domain(&self) -> Vec<L> {
        self.pairs.iter().map(|(a, _)| a.clone()).collect()
    }

    pub fn range(&self) -> Vec<R> {
        self.pairs.iter().map(|(_, b)| b.clone()).collect()
    }
}

/// Full independent re-verification: the map is injective both ways
/// and preserves and reflects the atomic relations pairwise.
pub fn verify_partial_iso<PL, PR>(
    left: &PL,
    right: &PR,
    p: &PartialIso<PL::Elem, PR::Elem>,
) -> Result<(), BfError>
where
    PL: Presentation,
    PR: Presentation,
{
    for (i, (a, fa)) in p.pairs().iter().enumerate() {
        for (b, fb) in p.pairs().iter().skip(i + 1) {
            if a == b || fa == fb {
                return Err(BfError::NotAPartialIso("not a bijection".into()));
            }
            if left.relates(a, b)? != right.relates(fa, fb)?
                || left.relates(b, a)? != right.relates(fb, fa)?
            {
                return Err(BfError::NotAPartialIso(format!(
                    "relation mismatch on {a:?},{b:?}"
                )));
            }
        }
    }
    Ok(())
}

/// One alternation step. Even steps extend the image of the least
/// unmapped left element, odd steps the preimage of the least unmapped
/// right element. The map grows by exactly one pair unless the
/// relevant enumeration is already exhausted.
pub fn bf_step<PL, PR>(
    left: &PL,
    right: &PR,
    p: PartialIso<PL::Elem, PR::Elem>,
    step_index: usize,
) -> Result<PartialIso<PL::Elem, PR::Elem>, BfError>
where
    PL: Presentation,
    PR: Presentation,
{
    let mut p = p;
    if step_index % 2 == 0 {
        let x = {
            let mut k = 0;
            loop {
                match left.enumerate(k) {
                    Some(e) if p.has_left(&e) => k += 1,
                    Some(e) => break Some(e),
                    None => break None,
                }
            }
        };
        let Some(x) = x else { return Ok(p) };
        let ty_left = left.type_of(&x, &p.domain())?;
        // Transport the type through the map.
        let image = |e: &PL::Elem| {
            p.pairs()
                .iter()
                .find(|(a, _)| a == e)
                .map(|(_, b)| b.clone())
                .expect("type ranges over the domain")
        };
        let ty_right = TypeOver {
            pos: ty_left.pos.iter().map(&image).collect(),
            neg: ty_left.neg.iter().map(&image).collect(),
        };
        let y = right.extend(&ty_right)?;
        if !right.satisfies(&y, &ty_right)? || p.has_right(&y) {
            return Err(BfError::ExtenderInvalid(format!("{y:?}")));
        }
        p.pairs.push((x, y));
    } else {
        let y = {
            let mut k = 0;
            loop {
                match right.enumerate(k) {
                    Some(e) if p.has_right(&e) => k += 1,
                    Some(e) => break Some(e),
                    None => break None,
                }
            }
        };
        let Some(y) = y else { return Ok(p) };
        let ty_right = right.type_of(&y, &p.range())?;
        let preimage = |e: &PR::Elem| {
            p.pairs()
                .iter()
                .find(|(_, b)| b == e)
                .map(|(a, _)| a.clone())
                .expect("type ranges over the range")
        };
        let ty_left = TypeOver {
            pos: ty_right.pos.iter().map(&preimage).collect(),
            neg: ty_right.neg.iter().map(&preimage).collect(),
        };
        let x = left.extend(&ty_left)?;
        if !left.satisfies(&x, &ty_left)? || p.has_left(&x) {
            return Err(BfError::ExtenderInvalid(format!("{x:?}")));
        }
        p.pairs.push((x, y));
    }
    // In-engine incremental check; tests re-verify the whole map
    // independently.
    let (a, fa) = p.pairs.last().expect("just pushed");
    for (b, fb) in p.pairs.iter().take(p.pairs.len() - 1) {
        if left.relates(a, b)? != right.relates(fa, fb)?
            || left.relates(b, a)? != right.relates(fb, fa)?
        {
            return Err(BfError::NotAPartialIso(format!(
                "step {step_index} broke the map on {a:?},{b:?}"
            )));
        }
    }
    Ok(p)
}

/// Folds `bf_step` over `0..steps`.
pub fn bf_run<PL, PR>(
    left: &PL,
    right: &PR,
    steps: usize,
) -> Result<PartialIso<PL::Elem, PR::Elem>, BfError>
where
    PL: Presentation,
    PR: Presentation,
{
    let mut p = PartialIso::new();
    for i in 0..steps {
        p = bf_step(left, right, p, i)?;
    }
    Ok(p)
}

/// Fairness: element `k` of both enumerations is mapped once
/// `2k + 2 ≤ steps`.
pub fn fairness_holds<PL, PR>(
    left: &PL,
    right: &PR,
    p: &PartialIso<PL::Elem, PR::Elem>,
    steps: usize,
) -> bool
where
    PL: Presentation,
    PR: Presentation,
{
    for k in 0..steps / 2 {
        if let Some(e) = left.enumerate(k) {
            if !p.has_left(&e) {
                return false;
            }
        }
        if let Some(e) = right.enumerate(k) {
            if !p.has_right(&e) {
                return false;
            }
        }
    }
    true
}

/// Deterministic injective reshuffle of the naturals: identity for
/// seed 0, independently seeded permutations of 256-blocks otherwise.
fn shuffled_index(seed: u64, idx: u64) -> u64 {
    if seed == 0 {
        return idx;
    }
    const BLOCK: u64 = 256;
    let block = idx / BLOCK;
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ block.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut perm: Vec<u64> = (0..BLOCK).collect();
    perm.shuffle(&mut rng);
    block * BLOCK + perm[(idx % BLOCK) as usize]
}

/// The ternary dense order, enumerated by a seeded shuffle of its
/// canonical term codes; the extender realizes cuts.
#[derive(Debug, Clone)]
pub struct DloPresentation {
    seed: u64,
    desc: OrderDesc,
}

/// Seeded dense-order presentation; seed 0 enumerates canonically.
pub fn make_dlo_presentation(seed: u64) -> DloPresentation {
    DloPresentation {
        seed,
        desc: OrderDesc::TernaryFinSupp,
    }
}

impl Presentation for DloPresentation {
    type Elem = OrderTerm;

    fn enumerate(&self, idx: usize) -> Option<OrderTerm> {
        Some(
            sample_term(&self.desc, shuffled_index(self.seed, idx as u64))
                .expect("ternary sampling is total"),
        )
    }

    fn relates(&self, a: &OrderTerm, b: &OrderTerm) -> Result<bool, BfError> {
        Ok(cmp(&self.desc, a, b)? == std::cmp::Ordering::Less)
    }

    fn extend(&self, ty: &TypeOver<OrderTerm>) -> Result<OrderTerm, BfError> {
        let cut = Cut::new(&self.desc, ty.pos.clone(), ty.neg.clone())?;
        Ok(realize_cut(&self.desc, &cut)?)
    }

    fn satisfies(&self, e: &OrderTerm, ty: &TypeOver<OrderTerm>) -> Result<bool, BfError> {
        for p in &ty.pos {
            if !self.relates(p, e)? {
                return Ok(false);
            }
        }
        for n in &ty.neg {
            if !self.relates(e, n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Values below this bound are scanned before falling back to the
/// constructive witness.
const BIT_SCAN_LIMIT: u64 = 1 << 12;

/// The BIT graph on the naturals, enumerated by a seeded shuffle; the
/// extender prefers small witnesses and falls back to the constructive
/// one.
#[derive(Debug, Clone)]
pub struct BitPresentation {
    seed: u64,
}

/// Seeded BIT-graph presentation; seed 0 enumerates canonically.
pub fn make_bit_presentation(seed: u64) -> BitPresentation {
    BitPresentation { seed }
}

impl Presentation for BitPresentation {
    type Elem = BigUint;

    fn enumerate(&self, idx: usize) -> Option<BigUint> {
        Some(BigUint::from(shuffled_index(self.seed, idx as u64)))
    }

    fn relates(&self, a: &BigUint, b: &BigUint) -> Result<bool, BfError> {
        Ok(bit_edge(a, b)?)
    }

    fn extend(&self, ty: &TypeOver<BigUint>) -> Result<BigUint, BfError> {
        let a: BTreeSet<BigUint> = ty.pos.iter().cloned().collect();
        let b: BTreeSet<BigUint> = ty.neg.iter().cloned().collect();
        for small in 0..BIT_SCAN_LIMIT {
            let v = BigUint::from(small);
            if verify_witness(&v, &a, &b) {
                return Ok(v);
            }
        }
        Ok(saturation_witness_fast(&a, &b)?)
    }

    fn satisfies(&self, e: &BigUint, ty: &TypeOver<BigUint>) -> Result<bool, BfError> {
        let a: BTreeSet<BigUint> = ty.pos.iter().cloned().collect();
        let b: BTreeSet<BigUint> = ty.neg.iter().cloned().collect();
        Ok(verify_witness(e, &a, &b))
    }
}

/// A finite graph presentation; the extender is an exhaustive scan, so
/// it can run out.
#[derive(Debug, Clone)]
pub struct TableGraphPresentation {
    graph: FiniteGraph,
    order: Vec<usize>,
}

impl TableGraphPresentation {
    pub fn new(graph: FiniteGraph, order: Vec<usize>) -> Self {
        TableGraphPresentation { graph, order }
    }

    pub fn canonical(graph: FiniteGraph) -> Self {
        let order = (0..graph.n()).collect();
        TableGraphPresentation { graph, order }
    }
}

impl Presentation for TableGraphPresentation {
    type Elem = usize;

    fn enumerate(&self, idx: usize) -> Option<usize> {
        self.order.get(idx).copied()
    }

    fn relates(&self, a: &usize, b: &usize) -> Result<bool, BfError> {
        Ok(self.graph.has_edge(*a, *b))
    }

    fn extend(&self, ty: &TypeOver<usize>) -> Result<usize, BfError> {
        (0..self.graph.n())
            .find(|v| self.satisfies(v, ty).unwrap_or(false))
            .ok_or(BfError::ExtenderExhausted)
    }

    fn satisfies(&self, e: &usize, ty: &TypeOver<usize>) -> Result<bool, BfError> {
        if ty.pos.contains(e) || ty.neg.contains(e) {
            return Ok(false);
        }
        Ok(ty.pos.iter().all(|p| self.graph.has_edge(*e, *p))
            && ty.neg.iter().all(|n| !self.graph.has_edge(*e, *n)))
    }
}

/// A finite linear-order presentation over explicit terms; the
/// extender is an exhaustive scan.
#[derive(Debug, Clone)]
pub struct TableOrderPresentation {
    desc: OrderDesc,
    elems: Vec<OrderTerm>,
}

impl TableOrderPresentation {
    pub fn new(desc: OrderDesc, elems: Vec<OrderTerm>) -> Self {
        TableOrderPresentation { desc, elems }
    }
}

impl Presentation for TableOrderPresentation {
    type Elem = OrderTerm;

    fn enumerate(&self, idx: usize) -> Option<OrderTerm> {
        self.elems.get(idx).cloned()
    }

    fn relates(&self, a: &OrderTerm, b: &OrderTerm) -> Result<bool, BfError> {
        Ok(cmp(&self.desc, a, b)? == std::cmp::Ordering::Less)
    }

    fn extend(&self, ty: &TypeOver<OrderTerm>) -> Result<OrderTerm, BfError> {
        for e in &self.elems {
            if self.satisfies(e, ty)? {
                return Ok(e.clone());
            }
        }
        Err(BfError::ExtenderExhausted)
    }

    fn satisfies(&self, e: &OrderTerm, ty: &TypeOver<OrderTerm>) -> Result<bool, BfError> {
        for p in &ty.pos {
            if cmp(&self.desc, p, e)? != std::cmp::Ordering::Less {
                return Ok(false);
            }
        }
        for n in &ty.neg {
            if cmp(&self.desc, e, n)? != std::cmp::Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::enumerate;

    #[test]
    fn dlo_presentations_verify_and_are_fair() {
        let left = make_dlo_presentation(1);
        let right = make_dlo_presentation(2);
        let steps = 60;
        let p = bf_run(&left, &right, steps).unwrap();
        assert_eq!(p.len(), steps);
        verify_partial_iso(&left, &right, &p).unwrap();
        assert!(fairness_holds(&left, &right, &p, steps));
    }

    #[test]
    fn seed_zero_is_canonical_and_deterministic() {
        let a = make_dlo_presentation(0);
        for idx in 0..10 {
            assert_eq!(
                a.enumerate(idx),
                Some(sample_term(&OrderDesc::TernaryFinSupp, idx as u64).unwrap())
            );
        }
        let l1 = make_dlo_presentation(7);
        let l2 = make_dlo_presentation(7);
        let p1 = bf_run(&l1, &make_dlo_presentation(9), 30).unwrap();
        let p2 = bf_run(&l2, &make_dlo_presentation(9), 30).unwrap();
        assert_eq!(p1, p2);
    }

    #[test]
    fn shuffled_enumeration_is_injective() {
        let mut seen = BTreeSet::new();
        for idx in 0..2048u64 {
            assert!(seen.insert(shuffled_index(42, idx)));
        }
    }

    #[test]
    fn bit_presentations_verify() {
        let left = make_bit_presentation(3);
        let right = make_bit_presentation(4);
        let steps = 30;
        let p = bf_run(&left, &right, steps).unwrap();
        assert_eq!(p.len(), steps);
        verify_partial_iso(&left, &right, &p).unwrap();
        assert!(fairness_holds(&left, &right, &p, steps));
    }

    #[test]
    fn first_step_realizes_empty_type() {
        let left = make_dlo_presentation(0);
        let right = make_dlo_presentation(5);
        let p = bf_step(&left, &right, PartialIso::new(), 0).unwrap();
        assert_eq!(p.len(), 1);
        let (x, _) = &p.pairs()[0];
        assert_eq!(x, &left.enumerate(0).unwrap());
    }

    #[test]
    fn exhausted_finite_extender_reports() {
        // Two disconnected vertices cannot realize the type "adjacent
        // to both".
        let g = FiniteGraph::new(3, [(0, 1), (0, 2)]).unwrap();
        let left = TableGraphPresentation::canonical(g.clone());
        let right = TableGraphPresentation::canonical(FiniteGraph::empty(3));
        let err = bf_run(&left, &right, 4);
        assert!(matches!(err, Err(BfError::ExtenderExhausted)));
    }

    #[test]
    fn isomorphic_finite_orders_reach_total_iso() {
        for n in 1..=7usize {
            let desc = OrderDesc::Finite(n as u64);
            let elems = enumerate(&desc).unwrap();
            let left = TableOrderPresentation::new(desc.clone(), elems.clone());
            let right = TableOrderPresentation::new(desc.clone(), elems);
            let p = bf_run(&left, &right, 2 * n).unwrap();
            assert_eq!(p.len(), n);
            verify_partial_iso(&left, &right, &p).unwrap();
        }
    }

    #[test]
    fn greedy_engine_aborts_on_adversarial_enumeration() {
        // The engine never backtracks: enumerating the two-chain from
        // the top maps its maximum to the other side's minimum, and
        // the next step has nowhere to go.
        let desc = OrderDesc::Finite(2);
        let elems = enumerate(&desc).unwrap();
        let mut reversed = elems.clone();
        reversed.reverse();
        let left = TableOrderPresentation::new(desc.clone(), reversed);
        let right = TableOrderPresentation::new(desc, elems);
        assert!(matches!(
            bf_run(&left, &right, 4),
            Err(BfError::ExtenderExhausted)
        ));
    }

    #[test]
    fn isomorphic_finite_graphs_reach_total_iso() {
        // A 4-cycle against its relabelling.
        let g1 = FiniteGraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let g2 = FiniteGraph::new(4, [(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        let left = TableGraphPresentation::canonical(g1);
        let right = TableGraphPresentation::canonical(g2);
        let p = bf_run(&left, &right, 8).unwrap();
        assert_eq!(p.len(), 4);
        verify_partial_iso(&left, &right, &p).unwrap();
    }

    #[test]
    fn steps_zero_yields_empty_map() {
        let left = make_dlo_presentation(0);
        let right = make_dlo_presentation(0);
        let p = bf_run(&left, &right, 0).unwrap();
        assert!(p.is_empty());
    }
}
