//! Hereditarily finite sets, Ackermann coding, the Mostowski collapse
//! of acyclic digraphs, and the ∈-recursion embedding into realizing
//! graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::graphs::FiniteDigraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HfError {
    #[error("input digraph has a directed cycle")]
    CyclicInput,
    #[error("collapse is not injective; digraph is not extensional")]
    NotExtensional,
    #[error("realizer failed: {0}")]
    RealizerFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Printing switches to `#<code>` beyond this rank.
const PRINT_RANK_CAP: usize = 6;

/// A hereditarily finite set in canonical form: children are sorted by
/// Ackermann code and duplicate-free, so structural equality is
/// extensional equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HfSet {
    children: Vec<HfSet>,
}

impl HfSet {
    pub fn empty() -> Self {
        HfSet {
            children: Vec::new(),
        }
    }

    pub fn from_children(mut children: Vec<HfSet>) -> Self {
        children.sort();
        children.dedup();
        HfSet { children }
    }

    pub fn children(&self) -> &[HfSet] {
        &self.children
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        self.children.binary_search(x).is_ok()
    }

    pub fn rank(&self) -> usize {
        self.children
            .iter()
            .map(|c| c.rank() + 1)
            .max()
            .unwrap_or(0)
    }
}

impl PartialOrd for HfSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HfSet {
    /// Orders sets by their Ackermann codes without materializing
    /// them: codes are bitsets of child codes, so the largest child in
    /// the symmetric difference decides.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        for (a, b) in self
            .children
            .iter()
            .rev()
            .zip(other.children.iter().rev())
        {
            let ord = a.cmp(b);
            if ord != std::cmp::Ordering::Equal {
                return ord;
            }
        }
        self.children.len().cmp(&other.children.len())
    }
}

/// Ackermann code: `code(x) = Σ_{y ∈ x} 2^code(y)`.
pub fn encode(x: &HfSet) -> BigUint {
    checked_encode(x).expect("Ackermann code exceeds addressable bit range")
}

/// Like `encode`, but `None` when a child code does not fit a bit
/// index (possible from rank 7 on, where codes outgrow memory).
pub fn checked_encode(x: &HfSet) -> Option<BigUint> {
    let mut code = BigUint::zero();
    for child in &x.children {
        let bit = checked_encode(child)?.to_u64()?;
        code.set_bit(bit, true);
    }
    Some(code)
}

/// Inverse of `encode`: the set whose children decode the bit
/// positions of `c`.
pub fn decode(c: &BigUint) -> HfSet {
    let children = crate::graphs::bit_positions(c)
        .into_iter()
        .map(|p| decode(&BigUint::from(p)))
        .collect();
    HfSet::from_children(children)
}

/// The Mostowski collapse of an acyclic digraph: each vertex maps to
/// the set of collapses of its out-neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseMap {
    pub map: BTreeMap<usize, HfSet>,
    /// Whether distinct vertices collapse to distinct sets.
    pub injective: bool,
}

impl CollapseMap {
    pub fn get(&self, v: usize) -> Option<&HfSet> {
        self.map.get(&v)
    }
}

/// Computes the collapse by walking a reverse topological order, so
/// deep chains stay within constant stack space.
pub fn mostowski_collapse(d: &FiniteDigraph) -> Result<CollapseMap, HfError> {
    let order = d.topological_order().ok_or(HfError::CyclicInput)?;
    let mut map: BTreeMap<usize, HfSet> = BTreeMap::new();
    for &v in order.iter().rev() {
        let children = d
            .out_set(v)
            .into_iter()
            .map(|w| map[&w].clone())
            .collect();
        map.insert(v, HfSet::from_children(children));
    }
    let distinct: BTreeSet<&HfSet> = map.values().collect();
    let injective = distinct.len() == map.len();
    Ok(CollapseMap { map, injective })
}

/// Embeds a hereditarily finite set into a realizing digraph by
/// ∈-recursion: `φ(x)` is the realizer's vertex whose out-set is
/// exactly `φ[x]`.
pub fn epsilon_embed<V, F>(x: &HfSet, realizer: &mut F) -> Result<V, HfError>
where
    V: Ord + Clone,
    F: FnMut(&BTreeSet<V>) -> Result<V, HfError>,
{
    let mut memo: BTreeMap<HfSet, V> = BTreeMap::new();
    embed_memo(x, realizer, &mut memo)
}

fn embed_memo<V, F>(
    x: &HfSet,
    realizer: &mut F,
    memo: &mut BTreeMap<HfSet, V>,
) -> Result<V, HfError>
where
    V: Ord + Clone,
    F: FnMut(&BTreeSet<V>) -> Result<V, HfError>,
{
    if let Some(v) = memo.get(x) {
        return Ok(v.clone());
    }
    let mut images = BTreeSet::new();
    for child in x.children() {
        images.insert(embed_memo(child, realizer, memo)?);
    }
    let v = realizer(&images)?;
    memo.insert(x.clone(), v.clone());
    Ok(v)
}

/// The BIT realizer: the unique natural whose bit set is the image
/// set, `A ↦ Σ_{a ∈ A} 2^a`.
pub fn bit_realizer(images: &BTreeSet<BigUint>) -> Result<BigUint, HfError> {
    let mut v = BigUint::zero();
    for a in images {
        let bit = a
            .to_u64()
            .ok_or_else(|| HfError::RealizerFailure("bit index out of range".into()))?;
        v.set_bit(bit, true);
    }
    Ok(v)
}

/// A realizer backed by vertex lookup in a fixed digraph: returns the
/// least vertex whose out-set equals the requested image set.
pub fn table_realizer(d: &FiniteDigraph) -> impl FnMut(&BTreeSet<usize>) -> Result<usize, HfError> + '_ {
    move |images| {
        (0..d.n())
            .find(|&v| d.out_set(v) == *images)
            .ok_or_else(|| HfError::RealizerFailure(format!("no vertex realizes {images:?}")))
    }
}

/// Result of the extensional isomorphism check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoOutcome {
    pub isomorphic: bool,
    /// The induced vertex bijection when isomorphic.
    pub mapping: Option<Vec<(usize, usize)>>,
}

/// Two extensional acyclic digraphs are isomorphic exactly when their
/// collapse images coincide; the collapse then induces the bijection.
pub fn iso_extensional(d1: &FiniteDigraph, d2: &FiniteDigraph) -> Result<IsoOutcome, HfError> {
    let c1 = mostowski_collapse(d1)?;
    let c2 = mostowski_collapse(d2)?;
    if !c1.injective || !c2.injective {
        return Err(HfError::NotExtensional);
    }
    let by_set: BTreeMap<&HfSet, usize> = c2.map.iter().map(|(&v, s)| (s, v)).collect();
    let mut mapping = Vec::with_capacity(d1.n());
    for (&v, s) in &c1.map {
        match by_set.get(s) {
            Some(&w) => mapping.push((v, w)),
            None => return Ok(IsoOutcome {
                isomorphic: false,
                mapping: None,
            }),
        }
    }
    if mapping.len() != d2.n() {
        return Ok(IsoOutcome {
            isomorphic: false,
            mapping: None,
        });
    }
    Ok(IsoOutcome {
        isomorphic: true,
        mapping: Some(mapping),
    })
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() > PRINT_RANK_CAP {
            if let Some(code) = checked_encode(self) {
                return write!(f, "#{code}");
            }
            // Codes of such sets do not fit bit indices; fall through
            // to braces, which stay affordable for narrow deep sets.
        }
        write!(f, "{{")?;
        for (i, c) in self.children.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

impl std::str::FromStr for HfSet {
    type Err = HfError;

    fn from_str(s: &str) -> Result<Self, HfError> {
        let s = s.trim();
        if let Some(code) = s.strip_prefix('#') {
            let c: BigUint = code
                .trim()
                .parse()
                .map_err(|_| HfError::Parse(format!("bad code `{code}`")))?;
            return Ok(decode(&c));
        }
        let (set, rest) = parse_braces(s)?;
        if !rest.trim().is_empty() {
            return Err(HfError::Parse(format!("trailing input `{rest}`")));
        }
        Ok(set)
    }
}

fn parse_braces(s: &str) -> Result<(HfSet, &str), HfError> {
    let s = s.trim_start();
    let mut rest = s
        .strip_prefix('{')
        .ok_or_else(|| HfError::Parse(format!("expected `{{` at `{s}`")))?;
    let mut children = Vec::new();
    loop {
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('}') {
            return Ok((HfSet::from_children(children), r));
        }
        if !children.is_empty() {
            rest = rest
                .strip_prefix(',')
                .ok_or_else(|| HfError::Parse(format!("expected `,` at `{rest}`")))?;
        }
        let (child, r) = parse_braces(rest)?;
        children.push(child);
        rest = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::bit_digraph_on;

    fn hf(children: Vec<HfSet>) -> HfSet {
        HfSet::from_children(children)
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode(&HfSet::empty()), big(0));
        let one = hf(vec![HfSet::empty()]);
        let pair = hf(vec![HfSet::empty(), one.clone()]);
        assert_eq!(encode(&pair), big(3));
        let deep = hf(vec![hf(vec![one.clone()])]);
        assert_eq!(encode(&deep), big(4));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(&big(0)), HfSet::empty());
        let one = hf(vec![HfSet::empty()]);
        assert_eq!(decode(&big(2)), hf(vec![one.clone()]));
        assert_eq!(
            decode(&big(5)),
            hf(vec![HfSet::empty(), hf(vec![one])])
        );
    }

    #[test]
    fn encode_decode_inverse_small() {
        for n in 0..4096u64 {
            let c = big(n);
            assert_eq!(encode(&decode(&c)), c);
        }
    }

    #[test]
    fn code_order_matches_numeric_order() {
        let sets: Vec<HfSet> = (0..64u64).map(|n| decode(&big(n))).collect();
        for i in 0..sets.len() {
            for j in 0..sets.len() {
                assert_eq!(sets[i].cmp(&sets[j]), i.cmp(&j), "codes {i} vs {j}");
            }
        }
    }

    #[test]
    fn collapse_of_bit_digraph_is_decode() {
        let (d, labels) = bit_digraph_on(&[0, 1, 3]);
        let c = mostowski_collapse(&d).unwrap();
        assert!(c.injective);
        for (i, &label) in labels.iter().enumerate() {
            assert_eq!(c.get(i).unwrap(), &decode(&big(label)));
        }
    }

    #[test]
    fn collapse_reports_non_injective() {
        let d = FiniteDigraph::new(2, []).unwrap();
        let c = mostowski_collapse(&d).unwrap();
        assert!(!c.injective);
        assert_eq!(c.get(0), c.get(1));
    }

    #[test]
    fn collapse_rejects_cycles() {
        let d = FiniteDigraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(mostowski_collapse(&d), Err(HfError::CyclicInput)));
    }

    #[test]
    fn collapse_handles_deep_chains() {
        // 0 -> 1 -> 2 -> … -> n-1 as a long chain, far deeper than
        // any decodable code reaches.
        let n = 600;
        let d = FiniteDigraph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap();
        let c = mostowski_collapse(&d).unwrap();
        assert!(c.injective);
        assert_eq!(c.get(n - 1).unwrap(), &HfSet::empty());
    }

    #[test]
    fn epsilon_embed_equals_encode() {
        for n in 0..512u64 {
            let x = decode(&big(n));
            let v = epsilon_embed(&x, &mut bit_realizer).unwrap();
            assert_eq!(v, big(n));
        }
    }

    #[test]
    fn epsilon_embed_through_table_realizer() {
        let (d, labels) = bit_digraph_on(&(0..16).collect::<Vec<_>>());
        let x = decode(&big(11));
        let idx = {
            let mut realizer = table_realizer(&d);
            epsilon_embed(&x, &mut realizer).unwrap()
        };
        assert_eq!(labels[idx], 11);
        // The collapse of the image recovers the set.
        let c = mostowski_collapse(&d).unwrap();
        assert_eq!(c.get(idx).unwrap(), &x);
    }

    #[test]
    fn iso_examples() {
        let (d1, _) = bit_digraph_on(&[0, 1, 3]);
        let same = iso_extensional(&d1, &d1).unwrap();
        assert!(same.isomorphic);

        let (d2, _) = bit_digraph_on(&[0, 1, 2]);
        let diff = iso_extensional(&d1, &d2).unwrap();
        assert!(!diff.isomorphic);

        // A relabelled copy: swap vertex ids 0 and 2.
        let relabeled = FiniteDigraph::new(3, [(0, 2), (0, 1), (1, 2)]).unwrap();
        let iso = iso_extensional(&d1, &relabeled).unwrap();
        assert!(iso.isomorphic);
        let mapping = iso.mapping.unwrap();
        for &(v, w) in &mapping {
            for &(v2, w2) in &mapping {
                if v != v2 {
                    assert_eq!(d1.has_arc(v, v2), relabeled.has_arc(w, w2));
                }
            }
        }
    }

    #[test]
    fn iso_rejects_non_extensional() {
        let d1 = FiniteDigraph::new(2, []).unwrap();
        assert!(matches!(
            iso_extensional(&d1, &d1),
            Err(HfError::NotExtensional)
        ));
    }

    #[test]
    fn brace_round_trip() {
        for s in ["{}", "{{}}", "{{},{{}}}", "{{},{{}},{{},{{}}}}"] {
            let x: HfSet = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        let deep: HfSet = "#65536".parse().unwrap();
        assert_eq!(deep.rank(), 5);
        let code: HfSet = format!("{}", decode(&big(65536))).parse().unwrap();
        assert_eq!(code, deep);
    }

    #[test]
    fn deep_chain_printing_stays_total() {
        // The rank-7 chain has no addressable code, so it prints in
        // braces; rank 6 is the last rank where braces are mandatory.
        let mut x = HfSet::empty();
        for _ in 0..7 {
            x = hf(vec![x]);
        }
        assert_eq!(x.to_string(), "{{{{{{{{}}}}}}}}");
        assert!(checked_encode(&x).is_none());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("{".parse::<HfSet>().is_err());
        assert!("{}}".parse::<HfSet>().is_err());
        assert!("#x".parse::<HfSet>().is_err());
    }
}
