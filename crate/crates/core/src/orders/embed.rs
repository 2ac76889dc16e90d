//! Order embeddings: search, dimension, least upper bounds in
//! products, the selector-based union merge, and binary-tree growth
//! inside intervals.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::orders::cut::{realize_cut, Cut};
use crate::orders::desc::{cmp_unchecked, enumerate, enumerate_up_to, validate_term};
use crate::orders::{OrderDesc, OrderError, OrderTerm, OrdinalCnf};

/// A finite strictly order-preserving map between two described
/// orders. `verify` re-checks the defining property pairwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderEmbedding {
    pub domain: OrderDesc,
    pub codomain: OrderDesc,
    pub map: Vec<(OrderTerm, OrderTerm)>,
}

impl OrderEmbedding {
    pub fn new(
        domain: OrderDesc,
        codomain: OrderDesc,
        map: Vec<(OrderTerm, OrderTerm)>,
    ) -> Result<Self, OrderError> {
        let e = OrderEmbedding {
            domain,
            codomain,
            map,
        };
        e.verify()?;
        Ok(e)
    }

    /// Pairwise verification that the map preserves strict order.
    pub fn verify(&self) -> Result<(), OrderError> {
        for (x, fx) in &self.map {
            validate_term(&self.domain, x)?;
            validate_term(&self.codomain, fx)?;
        }
        for (i, (x, fx)) in self.map.iter().enumerate() {
            for (y, fy) in self.map.iter().skip(i + 1) {
                let dom = cmp_unchecked(&self.domain, x, y);
                let cod = cmp_unchecked(&self.codomain, fx, fy);
                if dom != cod {
                    return Err(OrderError::NotAnEmbedding(format!(
                        "{x:?} vs {y:?} maps {dom:?} to {cod:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn image_of(&self, x: &OrderTerm) -> Option<&OrderTerm> {
        self.map.iter().find(|(d, _)| d == x).map(|(_, i)| i)
    }
}

/// Result of `embed_search`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbedOutcome {
    Found(OrderEmbedding),
    Absent,
}

/// Searches for an order embedding of the finite order `x_desc` into
/// `y_desc`, considering at most `size_bound` elements of the
/// codomain. Returns the lexicographically least embedding: the |X|
/// smallest codomain elements in ascending order.
pub fn embed_search(
    x_desc: &OrderDesc,
    y_desc: &OrderDesc,
    size_bound: usize,
) -> Result<EmbedOutcome, OrderError> {
    let xs = enumerate(x_desc)?;
    let (mut ys, exhausted) = enumerate_up_to(y_desc, size_bound)?;
    ys.sort_by(|a, b| cmp_unchecked(y_desc, a, b));
    if ys.len() < xs.len() {
        return if exhausted {
            Ok(EmbedOutcome::Absent)
        } else {
            Err(OrderError::BoundTooSmall)
        };
    }
    let map = xs.into_iter().zip(ys).collect();
    Ok(EmbedOutcome::Found(OrderEmbedding::new(
        x_desc.clone(),
        y_desc.clone(),
        map,
    )?))
}

/// Materializes the finite lexicographic power `base^k`, defaulting to
/// the least element of the base.
pub fn finite_power(base: &OrderDesc, k: u64) -> Result<OrderDesc, OrderError> {
    let least = enumerate(base)?
        .into_iter()
        .next()
        .ok_or(OrderError::InvalidDescriptor("empty base".into()))?;
    Ok(OrderDesc::lexpow(base.clone(), OrdinalCnf::from_nat(k), least))
}

/// Least `k` with `X ↪ L^k`, found by running `embed_search` against
/// the materialized powers in increasing order.
pub fn ldim(x_desc: &OrderDesc, base: &OrderDesc) -> Result<u64, OrderError> {
    let base_size = base.size().ok_or(OrderError::TooLargeToEnumerate)?;
    if base_size < 2 {
        return Err(OrderError::BaseTooSmall);
    }
    let x_size = x_desc.size().ok_or(OrderError::TooLargeToEnumerate)? as usize;
    let mut k = 0;
    loop {
        let power = finite_power(base, k)?;
        match embed_search(x_desc, &power, x_size)? {
            EmbedOutcome::Found(_) => return Ok(k),
            EmbedOutcome::Absent => k += 1,
        }
    }
}

/// Least upper bound of a nonempty finite set of `Product` terms,
/// following the compactness proof's case split: take the maximum of
/// the outer projection if it exists (always, for finite nonempty
/// `S`), then the least upper bound of the fibre over it. The no-max
/// branch pairs the outer supremum with the least inner element; it is
/// unreachable for finite input and kept for the order-dual reading.
pub fn lub_product(
    outer: &OrderDesc,
    inner: &OrderDesc,
    set: &[OrderTerm],
) -> Result<OrderTerm, OrderError> {
    if set.is_empty() {
        return Err(OrderError::EmptySet);
    }
    let desc = OrderDesc::Product(Box::new(outer.clone()), Box::new(inner.clone()));
    let mut pairs = Vec::with_capacity(set.len());
    for t in set {
        validate_term(&desc, t)?;
        match t {
            OrderTerm::Product(a, b) => pairs.push((a.as_ref(), b.as_ref())),
            _ => unreachable!(),
        }
    }
    let projection: Vec<&OrderTerm> = pairs.iter().map(|(a, _)| *a).collect();
    let max_outer = projection
        .iter()
        .copied()
        .reduce(|a, b| match cmp_unchecked(outer, a, b) {
            Ordering::Less => b,
            _ => a,
        });
    match max_outer {
        None => {
            let least_inner = enumerate(inner)?
                .into_iter()
                .next()
                .ok_or(OrderError::EmptySet)?;
            let sup_outer = enumerate(outer)?
                .into_iter()
                .last()
                .ok_or(OrderError::EmptySet)?;
            Ok(OrderTerm::Product(Box::new(sup_outer), Box::new(least_inner)))
        }
        Some(s_outer) => {
            let fibre: Vec<&OrderTerm> = pairs
                .iter()
                .filter(|(a, _)| cmp_unchecked(outer, a, s_outer) == Ordering::Equal)
                .map(|(_, b)| *b)
                .collect();
            let s_inner = fibre
                .into_iter()
                .reduce(|a, b| match cmp_unchecked(inner, a, b) {
                    Ordering::Less => b,
                    _ => a,
                })
                .expect("fibre over the maximal projection is nonempty");
            Ok(OrderTerm::Product(
                Box::new(s_outer.clone()),
                Box::new(s_inner.clone()),
            ))
        }
    }
}

/// Greatest lower bound, obtained as the order dual of `lub_product`
/// through `Reverse` rather than a second code path.
pub fn glb_product(
    outer: &OrderDesc,
    inner: &OrderDesc,
    set: &[OrderTerm],
) -> Result<OrderTerm, OrderError> {
    let rev_outer = OrderDesc::Reverse(Box::new(outer.clone()));
    let rev_inner = OrderDesc::Reverse(Box::new(inner.clone()));
    let desc = OrderDesc::Product(Box::new(outer.clone()), Box::new(inner.clone()));
    let mut reversed = Vec::with_capacity(set.len());
    for t in set {
        validate_term(&desc, t)?;
        match t {
            OrderTerm::Product(a, b) => reversed.push(OrderTerm::Product(
                Box::new(OrderTerm::Reverse(a.clone())),
                Box::new(OrderTerm::Reverse(b.clone())),
            )),
            _ => unreachable!(),
        }
    }
    match lub_product(&rev_outer, &rev_inner, &reversed)? {
        OrderTerm::Product(a, b) => match (*a, *b) {
            (OrderTerm::Reverse(a), OrderTerm::Reverse(b)) => Ok(OrderTerm::Product(a, b)),
            _ => unreachable!(),
        },
        _ => unreachable!(),
    }
}

fn lexpow_parts(desc: &OrderDesc) -> Result<(&OrderDesc, u64, &OrderTerm), OrderError> {
    match desc {
        OrderDesc::LexPower {
            base,
            exponent,
            default,
        } => {
            let k = exponent.to_nat().ok_or_else(|| {
                OrderError::InvalidDescriptor("merge needs finite lexicographic powers".into())
            })?;
            Ok((base, k, default))
        }
        _ => Err(OrderError::InvalidDescriptor(
            "merge embeddings must land in lexicographic powers".into(),
        )),
    }
}

fn lexpow_support(t: &OrderTerm) -> &BTreeMap<OrdinalCnf, OrderTerm> {
    match t {
        OrderTerm::LexPower(s) => s,
        _ => unreachable!("validated lexpower term"),
    }
}

/// A base element strictly above (`above = true`) or below the given
/// one: the enumeration neighbour for finite bases, a realized cut
/// point for dense ones.
fn base_neighbour(
    base: &OrderDesc,
    around: &OrderTerm,
    above: bool,
) -> Result<Option<OrderTerm>, OrderError> {
    if base.is_dense_unbounded() {
        let cut = if above {
            Cut::new(base, vec![around.clone()], Vec::new())?
        } else {
            Cut::new(base, Vec::new(), vec![around.clone()])?
        };
        return Ok(Some(realize_cut(base, &cut)?));
    }
    let elems = enumerate(base)?;
    let idx = elems
        .iter()
        .position(|e| e == around)
        .ok_or_else(|| OrderError::InvalidTerm("default not in base".into()))?;
    Ok(if above {
        elems.get(idx + 1).cloned()
    } else {
        idx.checked_sub(1).map(|i| elems[i].clone())
    })
}

/// Merges two embeddings `iA : A → L^a`, `iB : B → L^b` of disjoint
/// suborders of a common ambient order into one embedding
/// `A ∪ B → L^(a+1+b)`.
///
/// Elements of `B` are grouped by the convex equivalence
/// `b₀ ∼ b₁ ⇔ [b₀,b₁] ∩ A = ∅`; the least member of each class is the
/// selector, placed in the separator coordinate strictly between the
/// images of the `A`-elements around its class, and the `iB` image
/// fills the trailing block.
pub fn merge_union_embedding(
    ambient: &OrderDesc,
    a_set: &[OrderTerm],
    b_set: &[OrderTerm],
    emb_a: &OrderEmbedding,
    emb_b: &OrderEmbedding,
) -> Result<OrderEmbedding, OrderError> {
    emb_a.verify()?;
    emb_b.verify()?;
    let (base_a, exp_a, default_a) = lexpow_parts(&emb_a.codomain)?;
    let (base_b, exp_b, default_b) = lexpow_parts(&emb_b.codomain)?;
    if base_a != base_b {
        return Err(OrderError::InvalidDescriptor(
            "merge embeddings must share a base order".into(),
        ));
    }
    if default_a != default_b {
        return Err(OrderError::InvalidDescriptor(
            "merge embeddings must share a default".into(),
        ));
    }
    let base = base_a;
    let default = default_a;
    for t in a_set.iter().chain(b_set.iter()) {
        validate_term(ambient, t)?;
    }
    if a_set.iter().any(|a| b_set.contains(a)) {
        return Err(OrderError::InvalidTerm("A and B must be disjoint".into()));
    }

    let mut sorted_a = a_set.to_vec();
    sorted_a.sort_by(|p, q| cmp_unchecked(ambient, p, q));
    let mut sorted_b = b_set.to_vec();
    sorted_b.sort_by(|p, q| cmp_unchecked(ambient, p, q));

    let image_a = |t: &OrderTerm| -> Result<&OrderTerm, OrderError> {
        emb_a
            .image_of(t)
            .ok_or_else(|| OrderError::InvalidTerm(format!("iA undefined on {t:?}")))
    };
    let image_b = |t: &OrderTerm| -> Result<&OrderTerm, OrderError> {
        emb_b
            .image_of(t)
            .ok_or_else(|| OrderError::InvalidTerm(format!("iB undefined on {t:?}")))
    };

    // Separator values around the default.
    let up = base_neighbour(base, default, true)?;
    let down = base_neighbour(base, default, false)?;

    let out_desc = OrderDesc::lexpow(
        base.clone(),
        OrdinalCnf::from_nat(exp_a + 1 + exp_b),
        default.clone(),
    );
    let sep_pos = OrdinalCnf::from_nat(exp_a);

    // The separator block of a class: iA image of the A-neighbour plus
    // an off-default separator coordinate.
    let class_prefix = |b: &OrderTerm| -> Result<BTreeMap<OrdinalCnf, OrderTerm>, OrderError> {
        let below: Option<&OrderTerm> = sorted_a
            .iter()
            .filter(|a| cmp_unchecked(ambient, a, b) == Ordering::Less)
            .next_back();
        let above: Option<&OrderTerm> = sorted_a
            .iter()
            .find(|a| cmp_unchecked(ambient, b, a) == Ordering::Less);
        let (anchor, sep) = match (below, above) {
            (None, None) => return Ok(BTreeMap::new()),
            (Some(lo), _) => (
                image_a(lo)?,
                up.clone().ok_or(OrderError::NoSeparatingPoint)?,
            ),
            (None, Some(hi)) => (
                image_a(hi)?,
                down.clone().ok_or(OrderError::NoSeparatingPoint)?,
            ),
        };
        let mut support = lexpow_support(anchor).clone();
        if sep != *default {
            support.insert(sep_pos.clone(), sep);
        }
        Ok(support)
    };

    let mut map = Vec::with_capacity(a_set.len() + b_set.len());
    for a in &sorted_a {
        // iA image padded with defaults: the support carries over.
        map.push((
            (*a).clone(),
            OrderTerm::LexPower(lexpow_support(image_a(a)?).clone()),
        ));
    }
    for b in &sorted_b {
        let mut support = class_prefix(b)?;
        for (pos, v) in lexpow_support(image_b(b)?) {
            let shifted = pos
                .to_nat()
                .expect("finite power positions are naturals")
                + exp_a
                + 1;
            support.insert(OrdinalCnf::from_nat(shifted), v.clone());
        }
        map.push(((*b).clone(), OrderTerm::LexPower(support)));
    }
    OrderEmbedding::new(ambient.clone(), out_desc, map)
}

/// Grows an embedded copy of the lexicographic cube `2^depth` strictly
/// inside the interval `(a0, a1)` of the ternary order, by the
/// successor step: every stage keeps `i(x⌢0) = i(x)` and inserts the
/// new point `v_x` between `i(x)` and the images above it.
pub fn grow_binary(
    a0: &OrderTerm,
    a1: &OrderTerm,
    depth: u32,
) -> Result<OrderEmbedding, OrderError> {
    let desc = OrderDesc::TernaryFinSupp;
    if crate::orders::desc::cmp(&desc, a0, a1)? != Ordering::Less {
        return Err(OrderError::MalformedInterval);
    }
    let mut images = vec![realize_cut(&desc, &Cut::new(&desc, vec![a0.clone()], vec![a1.clone()])?)?];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(images.len() * 2);
        for (i, t) in images.iter().enumerate() {
            let upper = images.get(i + 1).unwrap_or(a1);
            let v = realize_cut(
                &desc,
                &Cut::new(&desc, vec![t.clone()], vec![upper.clone()])?,
            )?;
            next.push(t.clone());
            next.push(v);
        }
        images = next;
    }
    let domain = finite_power(&OrderDesc::Finite(2), depth as u64)?;
    let cube = enumerate(&domain)?;
    debug_assert_eq!(cube.len(), images.len());
    OrderEmbedding::new(domain, desc, cube.into_iter().zip(images).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orders::desc::cmp;
    use crate::orders::Sign;

    fn fin(i: u64) -> OrderTerm {
        OrderTerm::Finite(i)
    }

    fn pair(a: u64, b: u64) -> OrderTerm {
        OrderTerm::Product(Box::new(fin(a)), Box::new(fin(b)))
    }

    fn tern(entries: &[(u64, i8)]) -> OrderTerm {
        OrderTerm::Ternary(
            entries
                .iter()
                .map(|&(p, v)| (p, if v < 0 { Sign::Minus } else { Sign::Plus }))
                .collect(),
        )
    }

    /// Brute-force least upper bound over the whole finite product.
    fn lub_oracle(
        outer: &OrderDesc,
        inner: &OrderDesc,
        set: &[OrderTerm],
    ) -> Option<OrderTerm> {
        let desc = OrderDesc::Product(Box::new(outer.clone()), Box::new(inner.clone()));
        let all = enumerate(&desc).unwrap();
        all.into_iter().find(|cand| {
            set.iter()
                .all(|s| cmp(&desc, s, cand).unwrap() != Ordering::Greater)
        })
    }

    #[test]
    fn lub_examples_match_brute_force() {
        let k = OrderDesc::Finite(3);
        let s = vec![pair(0, 2), pair(1, 0)];
        let lub = lub_product(&k, &k, &s).unwrap();
        assert_eq!(lub, pair(1, 0));
        assert_eq!(lub_oracle(&k, &k, &s).unwrap(), lub);

        assert_eq!(lub_product(&k, &k, &[pair(2, 2)]).unwrap(), pair(2, 2));

        let two = OrderDesc::Finite(2);
        let s = vec![pair(0, 0), pair(0, 1)];
        assert_eq!(lub_product(&two, &two, &s).unwrap(), pair(0, 1));
        assert_eq!(lub_oracle(&two, &two, &s).unwrap(), pair(0, 1));
    }

    #[test]
    fn lub_exhaustive_small_products() {
        for ko in 1..=4u64 {
            for ki in 1..=3u64 {
                let outer = OrderDesc::Finite(ko);
                let inner = OrderDesc::Finite(ki);
                let desc =
                    OrderDesc::Product(Box::new(outer.clone()), Box::new(inner.clone()));
                let all = enumerate(&desc).unwrap();
                let n = all.len();
                for mask in 1u32..(1 << n) {
                    let set: Vec<OrderTerm> = (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| all[i].clone())
                        .collect();
                    let got = lub_product(&outer, &inner, &set).unwrap();
                    let want = lub_oracle(&outer, &inner, &set).unwrap();
                    assert_eq!(got, want, "S = {set:?}");
                }
            }
        }
    }

    #[test]
    fn glb_is_dual() {
        let k = OrderDesc::Finite(3);
        let s = vec![pair(0, 2), pair(1, 0)];
        assert_eq!(glb_product(&k, &k, &s).unwrap(), pair(0, 2));
        let s = vec![pair(1, 2), pair(2, 1)];
        assert_eq!(glb_product(&k, &k, &s).unwrap(), pair(1, 2));
    }

    #[test]
    fn lub_rejects_empty() {
        let k = OrderDesc::Finite(2);
        assert!(matches!(
            lub_product(&k, &k, &[]),
            Err(OrderError::EmptySet)
        ));
    }

    #[test]
    fn embed_search_examples() {
        let x = OrderDesc::Finite(2);
        let y = OrderDesc::Finite(3);
        match embed_search(&x, &y, 8).unwrap() {
            EmbedOutcome::Found(e) => {
                assert_eq!(e.map, vec![(fin(0), fin(0)), (fin(1), fin(1))]);
            }
            EmbedOutcome::Absent => panic!(),
        }

        assert_eq!(
            embed_search(&OrderDesc::Finite(4), &OrderDesc::Finite(3), 8).unwrap(),
            EmbedOutcome::Absent
        );

        let y = OrderDesc::Product(Box::new(OrderDesc::Finite(2)), Box::new(OrderDesc::Finite(2)));
        match embed_search(&OrderDesc::Finite(3), &y, 8).unwrap() {
            EmbedOutcome::Found(e) => {
                assert_eq!(
                    e.map,
                    vec![
                        (fin(0), pair(0, 0)),
                        (fin(1), pair(0, 1)),
                        (fin(2), pair(1, 0)),
                    ]
                );
            }
            EmbedOutcome::Absent => panic!(),
        }
    }

    #[test]
    fn embed_search_bound_too_small() {
        let x = OrderDesc::Finite(5);
        let y = OrderDesc::TernaryFinSupp;
        assert!(matches!(
            embed_search(&x, &y, 3),
            Err(OrderError::BoundTooSmall)
        ));
        assert!(matches!(
            embed_search(&x, &y, 5).unwrap(),
            EmbedOutcome::Found(_)
        ));
    }

    #[test]
    fn ldim_examples() {
        let two = OrderDesc::Finite(2);
        assert_eq!(ldim(&OrderDesc::Finite(1), &two).unwrap(), 0);
        assert_eq!(ldim(&OrderDesc::Finite(5), &two).unwrap(), 3);
        assert!(matches!(
            ldim(&OrderDesc::Finite(3), &OrderDesc::Finite(1)),
            Err(OrderError::BaseTooSmall)
        ));
    }

    #[test]
    fn merge_example_verifies() {
        let ambient = OrderDesc::Finite(4);
        let base = OrderDesc::Finite(2);
        let a_set = vec![fin(0), fin(2)];
        let b_set = vec![fin(1), fin(3)];
        let la = finite_power(&base, 1).unwrap();
        let emb_a = OrderEmbedding::new(
            ambient.clone(),
            la.clone(),
            vec![
                (fin(0), enumerate(&la).unwrap()[0].clone()),
                (fin(2), enumerate(&la).unwrap()[1].clone()),
            ],
        )
        .unwrap();
        let emb_b = OrderEmbedding::new(
            ambient.clone(),
            la.clone(),
            vec![
                (fin(1), enumerate(&la).unwrap()[0].clone()),
                (fin(3), enumerate(&la).unwrap()[1].clone()),
            ],
        )
        .unwrap();
        let merged = merge_union_embedding(&ambient, &a_set, &b_set, &emb_a, &emb_b).unwrap();
        assert_eq!(merged.map.len(), 4);
        merged.verify().unwrap();
        match &merged.codomain {
            OrderDesc::LexPower { exponent, .. } => {
                assert_eq!(exponent.to_nat(), Some(3));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn merge_empty_sides() {
        let ambient = OrderDesc::Finite(3);
        let base = OrderDesc::Finite(2);
        let la = finite_power(&base, 1).unwrap();
        let terms = enumerate(&la).unwrap();
        let emb = OrderEmbedding::new(
            ambient.clone(),
            la.clone(),
            vec![(fin(0), terms[0].clone()), (fin(2), terms[1].clone())],
        )
        .unwrap();
        let empty = OrderEmbedding::new(ambient.clone(), la.clone(), vec![]).unwrap();

        // B empty: iA padded with defaults.
        let merged = merge_union_embedding(&ambient, &[fin(0), fin(2)], &[], &emb, &empty).unwrap();
        merged.verify().unwrap();
        assert_eq!(merged.map.len(), 2);

        // A empty: iB prefixed by a constant block.
        let merged =
            merge_union_embedding(&ambient, &[], &[fin(0), fin(2)], &empty, &emb).unwrap();
        merged.verify().unwrap();
        let images: Vec<_> = merged.map.iter().map(|(_, v)| v.clone()).collect();
        for img in &images {
            match img {
                OrderTerm::LexPower(s) => {
                    assert!(s.keys().all(|p| p.to_nat().unwrap() >= 2));
                }
                _ => panic!(),
            }
        }
    }

    #[test]
    fn merge_reports_missing_room() {
        // Base fin:2 with default 0 has nothing below the default, so
        // a B-element under all of A cannot be separated.
        let ambient = OrderDesc::Finite(3);
        let base = OrderDesc::Finite(2);
        let la = finite_power(&base, 1).unwrap();
        let terms = enumerate(&la).unwrap();
        let emb_a =
            OrderEmbedding::new(ambient.clone(), la.clone(), vec![(fin(1), terms[0].clone())])
                .unwrap();
        let emb_b =
            OrderEmbedding::new(ambient.clone(), la.clone(), vec![(fin(0), terms[0].clone())])
                .unwrap();
        assert!(matches!(
            merge_union_embedding(&ambient, &[fin(1)], &[fin(0)], &emb_a, &emb_b),
            Err(OrderError::NoSeparatingPoint)
        ));
    }

    #[test]
    fn grow_binary_examples() {
        let a0 = tern(&[]);
        let a1 = tern(&[(0, 1)]);
        let e = grow_binary(&a0, &a1, 0).unwrap();
        assert_eq!(e.map.len(), 1);

        let e = grow_binary(&a0, &a1, 1).unwrap();
        assert_eq!(e.map.len(), 2);
        e.verify().unwrap();
        let d = OrderDesc::TernaryFinSupp;
        for (_, img) in &e.map {
            assert_eq!(cmp(&d, &a0, img).unwrap(), Ordering::Less);
            assert_eq!(cmp(&d, img, &a1).unwrap(), Ordering::Less);
        }

        assert!(matches!(
            grow_binary(&a1, &a0, 1),
            Err(OrderError::MalformedInterval)
        ));
    }
}
