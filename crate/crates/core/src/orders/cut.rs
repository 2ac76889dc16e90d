//! Cuts, cut realization in dense orders, and the patching check.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::orders::desc::{cmp, cmp_unchecked, validate_term};
use crate::orders::{OrderDesc, OrderError, OrderTerm, OrdinalCnf, Sign};

/// A finite cut: every `lower` element strictly below every `upper`
/// element, checked on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    lower: Vec<OrderTerm>,
    upper: Vec<OrderTerm>,
}

impl Cut {
    pub fn new(
        desc: &OrderDesc,
        lower: Vec<OrderTerm>,
        upper: Vec<OrderTerm>,
    ) -> Result<Self, OrderError> {
        for t in lower.iter().chain(upper.iter()) {
            validate_term(desc, t)?;
        }
        for lo in &lower {
            for hi in &upper {
                if cmp_unchecked(desc, lo, hi) != Ordering::Less {
                    return Err(OrderError::MalformedCut);
                }
            }
        }
        Ok(Cut { lower, upper })
    }

    pub fn lower(&self) -> &[OrderTerm] {
        &self.lower
    }

    pub fn upper(&self) -> &[OrderTerm] {
        &self.upper
    }

    /// True if `z` lies strictly between the two sides.
    pub fn realized_by(&self, desc: &OrderDesc, z: &OrderTerm) -> Result<bool, OrderError> {
        for lo in &self.lower {
            if cmp(desc, lo, z)? != Ordering::Less {
                return Ok(false);
            }
        }
        for hi in &self.upper {
            if cmp(desc, z, hi)? != Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn max_term<'a>(
    desc: &OrderDesc,
    terms: &'a [OrderTerm],
) -> Option<&'a OrderTerm> {
    terms
        .iter()
        .reduce(|a, b| match cmp_unchecked(desc, a, b) {
            Ordering::Less => b,
            _ => a,
        })
}

fn min_term<'a>(
    desc: &OrderDesc,
    terms: &'a [OrderTerm],
) -> Option<&'a OrderTerm> {
    terms
        .iter()
        .reduce(|a, b| match cmp_unchecked(desc, a, b) {
            Ordering::Greater => b,
            _ => a,
        })
}

/// Returns a term strictly between the cut's sides.
///
/// Deterministic: the new point is the relevant side's extremum with a
/// single fresh entry appended at the least position past every
/// support occurring in the cut (`+1`-like above, `-1`-like below, the
/// successor-step move of the ambient construction). For a `LexPower`
/// whose fresh position would overflow a finite exponent, the point is
/// instead realized inside the base at the deciding position.
pub fn realize_cut(desc: &OrderDesc, cut: &Cut) -> Result<OrderTerm, OrderError> {
    if !desc.is_dense_unbounded() {
        return Err(OrderError::UnsupportedDescriptor(
            "cut realization needs a dense order without endpoints".into(),
        ));
    }
    let z = match desc {
        OrderDesc::TernaryFinSupp => realize_ternary(desc, cut),
        OrderDesc::LexPower { .. } => realize_lexpow(desc, cut)?,
        _ => unreachable!(),
    };
    debug_assert!(cut.realized_by(desc, &z).unwrap());
    Ok(z)
}

fn ternary_support(t: &OrderTerm) -> &BTreeMap<u64, Sign> {
    match t {
        OrderTerm::Ternary(s) => s,
        _ => unreachable!("validated ternary term"),
    }
}

fn realize_ternary(desc: &OrderDesc, cut: &Cut) -> OrderTerm {
    let fresh = cut
        .lower
        .iter()
        .chain(cut.upper.iter())
        .flat_map(|t| ternary_support(t).keys().copied())
        .max()
        .map_or(0, |p| p + 1);
    match (max_term(desc, &cut.lower), min_term(desc, &cut.upper)) {
        (None, None) => OrderTerm::Ternary(BTreeMap::new()),
        (Some(x), _) => {
            // Point just above the lower maximum, still below every
            // upper element because they already exceed x at a
            // support position before `fresh`.
            let mut support = ternary_support(x).clone();
            support.insert(fresh, Sign::Plus);
            OrderTerm::Ternary(support)
        }
        (None, Some(y)) => {
            let mut support = ternary_support(y).clone();
            support.insert(fresh, Sign::Minus);
            OrderTerm::Ternary(support)
        }
    }
}

fn lexpow_support(t: &OrderTerm) -> &BTreeMap<OrdinalCnf, OrderTerm> {
    match t {
        OrderTerm::LexPower(s) => s,
        _ => unreachable!("validated lexpower term"),
    }
}

fn realize_lexpow(desc: &OrderDesc, cut: &Cut) -> Result<OrderTerm, OrderError> {
    let (base, exponent, default) = match desc {
        OrderDesc::LexPower {
            base,
            exponent,
            default,
        } => (base.as_ref(), exponent, default.as_ref()),
        _ => unreachable!(),
    };
    let fresh = cut
        .lower
        .iter()
        .chain(cut.upper.iter())
        .flat_map(|t| lexpow_support(t).keys())
        .max()
        .map_or(OrdinalCnf::zero(), |p| p.successor());
    let above_default = || {
        let c = Cut::new(base, vec![default.clone()], Vec::new())?;
        realize_cut(base, &c)
    };
    let below_default = || {
        let c = Cut::new(base, Vec::new(), vec![default.clone()])?;
        realize_cut(base, &c)
    };
    let x = max_term(desc, &cut.lower).cloned();
    let y = min_term(desc, &cut.upper).cloned();
    if fresh < *exponent {
        let z = match (&x, &y) {
            (None, None) => OrderTerm::LexPower(BTreeMap::new()),
            (Some(x), _) => {
                let mut support = lexpow_support(x).clone();
                support.insert(fresh, above_default()?);
                OrderTerm::LexPower(support)
            }
            (None, Some(y)) => {
                let mut support = lexpow_support(y).clone();
                support.insert(fresh, below_default()?);
                OrderTerm::LexPower(support)
            }
        };
        return Ok(z);
    }
    // Finite exponent with no fresh room: realize inside the base.
    let last = exponent
        .to_nat()
        .filter(|&k| k > 0)
        .map(|k| OrdinalCnf::from_nat(k - 1))
        .ok_or(OrderError::EmptyOrderBetween)?;
    let value_at = |t: &OrderTerm, pos: &OrdinalCnf| -> OrderTerm {
        lexpow_support(t).get(pos).unwrap_or(default).clone()
    };
    match (&x, &y) {
        (None, None) => unreachable!("fresh position 0 always fits a positive exponent"),
        (Some(x), None) => {
            // Bump the least significant coordinate upward.
            let b = realize_cut(base, &Cut::new(base, vec![value_at(x, &last)], Vec::new())?)?;
            let mut support = lexpow_support(x).clone();
            set_entry(&mut support, last, b, default);
            Ok(OrderTerm::LexPower(support))
        }
        (None, Some(y)) => {
            let b = realize_cut(base, &Cut::new(base, Vec::new(), vec![value_at(y, &last)])?)?;
            let mut support = lexpow_support(y).clone();
            set_entry(&mut support, last, b, default);
            Ok(OrderTerm::LexPower(support))
        }
        (Some(x), Some(y)) => {
            // First deciding position p: x(p) < y(p); pick a base
            // element strictly between and cut the tail off x.
            let mut positions: Vec<&OrdinalCnf> = lexpow_support(x)
                .keys()
                .chain(lexpow_support(y).keys())
                .collect();
            positions.sort();
            positions.dedup();
            let p = positions
                .into_iter()
                .find(|p| value_at(x, p) != value_at(y, p))
                .cloned()
                .ok_or(OrderError::MalformedCut)?;
            let b = realize_cut(
                base,
                &Cut::new(base, vec![value_at(x, &p)], vec![value_at(y, &p)])?,
            )?;
            let mut support: BTreeMap<OrdinalCnf, OrderTerm> = lexpow_support(x)
                .iter()
                .filter(|(pos, _)| **pos < p)
                .map(|(pos, v)| (pos.clone(), v.clone()))
                .collect();
            set_entry(&mut support, p, b, default);
            Ok(OrderTerm::LexPower(support))
        }
    }
}

fn set_entry(
    support: &mut BTreeMap<OrdinalCnf, OrderTerm>,
    pos: OrdinalCnf,
    value: OrderTerm,
    default: &OrderTerm,
) {
    if value == *default {
        support.remove(&pos);
    } else {
        support.insert(pos, value);
    }
}

/// Outcome of `patches_check`: either every cut of `A` is filled by a
/// point of `B`, or the first failing cut in the canonical
/// enumeration (splits of `A` in ascending order, endpoint splits
/// included unless `strict_gaps`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatchOutcome {
    Patches,
    Fails(Cut),
}

pub fn patches_check(
    desc: &OrderDesc,
    b_set: &[OrderTerm],
    a_set: &[OrderTerm],
    strict_gaps: bool,
) -> Result<PatchOutcome, OrderError> {
    for t in b_set.iter().chain(a_set.iter()) {
        validate_term(desc, t)?;
    }
    for a in a_set {
        if !b_set.contains(a) {
            return Err(OrderError::NotSubset);
        }
    }
    let mut sorted_a = a_set.to_vec();
    sorted_a.sort_by(|p, q| cmp_unchecked(desc, p, q));
    sorted_a.dedup();
    let n = sorted_a.len();
    let splits: Vec<usize> = if strict_gaps {
        (1..n.max(1)).collect()
    } else {
        (0..=n).collect()
    };
    for split in splits {
        let (a0, a1) = sorted_a.split_at(split);
        let filled = b_set.iter().any(|b| {
            a0.iter()
                .all(|a| cmp_unchecked(desc, a, b) == Ordering::Less)
                && a1
                    .iter()
                    .all(|a| cmp_unchecked(desc, b, a) == Ordering::Less)
        });
        if !filled {
            // Only the extrema of the two sides constrain a finite
            // gap; report the trimmed cut.
            let lower = max_term(desc, a0).cloned().into_iter().collect();
            let upper = min_term(desc, a1).cloned().into_iter().collect();
            return Ok(PatchOutcome::Fails(Cut::new(desc, lower, upper)?));
        }
    }
    Ok(PatchOutcome::Patches)
}

/// Every term of the ternary order has computed neighbours on both
/// sides; used by the no-endpoint property tests.
pub fn ternary_neighbours(t: &OrderTerm) -> Result<(OrderTerm, OrderTerm), OrderError> {
    let desc = OrderDesc::TernaryFinSupp;
    let below = realize_cut(&desc, &Cut::new(&desc, Vec::new(), vec![t.clone()])?)?;
    let above = realize_cut(&desc, &Cut::new(&desc, vec![t.clone()], Vec::new())?)?;
    Ok((below, above))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tern(entries: &[(u64, i8)]) -> OrderTerm {
        OrderTerm::Ternary(
            entries
                .iter()
                .map(|&(p, v)| (p, if v < 0 { Sign::Minus } else { Sign::Plus }))
                .collect(),
        )
    }

    #[test]
    fn empty_cut_realized_by_default_point() {
        let d = OrderDesc::TernaryFinSupp;
        let cut = Cut::new(&d, vec![], vec![]).unwrap();
        assert_eq!(realize_cut(&d, &cut).unwrap(), tern(&[]));
    }

    #[test]
    fn between_cut_appends_fresh_plus() {
        let d = OrderDesc::TernaryFinSupp;
        let cut = Cut::new(&d, vec![tern(&[(0, 1)])], vec![tern(&[(0, 1), (1, 1)])]).unwrap();
        let z = realize_cut(&d, &cut).unwrap();
        assert_eq!(z, tern(&[(0, 1), (2, 1)]));
        assert!(cut.realized_by(&d, &z).unwrap());
    }

    #[test]
    fn one_sided_cuts() {
        let d = OrderDesc::TernaryFinSupp;
        let above = Cut::new(&d, vec![tern(&[])], vec![]).unwrap();
        assert_eq!(realize_cut(&d, &above).unwrap(), tern(&[(0, 1)]));
        let below = Cut::new(&d, vec![], vec![tern(&[])]).unwrap();
        assert_eq!(realize_cut(&d, &below).unwrap(), tern(&[(0, -1)]));
    }

    #[test]
    fn malformed_cut_rejected() {
        let d = OrderDesc::TernaryFinSupp;
        assert!(matches!(
            Cut::new(&d, vec![tern(&[(0, 1)])], vec![tern(&[])]),
            Err(OrderError::MalformedCut)
        ));
    }

    #[test]
    fn lexpow_over_ternary_realizes() {
        let d = OrderDesc::lexpow(
            OrderDesc::TernaryFinSupp,
            OrdinalCnf::omega_power(1, 1),
            tern(&[]),
        );
        let zero = OrderTerm::LexPower(BTreeMap::new());
        let cut = Cut::new(&d, vec![zero.clone()], vec![]).unwrap();
        let z = realize_cut(&d, &cut).unwrap();
        assert!(cut.realized_by(&d, &z).unwrap());
    }

    #[test]
    fn patches_example_with_endpoints() {
        // A = {1,3} inside B = {1,2,3} in fin:5 — the internal gap is
        // patched, the endpoint gap (∅, {1}) is not.
        let d = OrderDesc::Finite(5);
        let b: Vec<OrderTerm> = [1, 2, 3].iter().map(|&i| OrderTerm::Finite(i)).collect();
        let a: Vec<OrderTerm> = [1, 3].iter().map(|&i| OrderTerm::Finite(i)).collect();
        match patches_check(&d, &b, &a, false).unwrap() {
            PatchOutcome::Fails(cut) => {
                assert!(cut.lower().is_empty());
                assert_eq!(cut.upper(), &[OrderTerm::Finite(1)]);
            }
            PatchOutcome::Patches => panic!("endpoint gap should fail"),
        }
        // Strict gaps exclude the endpoint partitions.
        assert_eq!(
            patches_check(&d, &b, &a, true).unwrap(),
            PatchOutcome::Patches
        );
    }

    #[test]
    fn patches_empty_a_and_singleton() {
        let d = OrderDesc::Finite(5);
        let b: Vec<OrderTerm> = [1, 2, 3].iter().map(|&i| OrderTerm::Finite(i)).collect();
        assert_eq!(
            patches_check(&d, &b, &[], false).unwrap(),
            PatchOutcome::Patches
        );
        let a = vec![OrderTerm::Finite(2)];
        assert_eq!(
            patches_check(&d, &b, &a, false).unwrap(),
            PatchOutcome::Patches
        );
    }

    #[test]
    fn patches_requires_subset() {
        let d = OrderDesc::Finite(5);
        let b = vec![OrderTerm::Finite(1)];
        let a = vec![OrderTerm::Finite(2)];
        assert!(matches!(
            patches_check(&d, &b, &a, false),
            Err(OrderError::NotSubset)
        ));
    }
}
