//! Order descriptors, their elements, and lexicographic comparison.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::orders::{OrderError, OrdinalCnf};

/// How many elements a finite descriptor may enumerate before we
/// refuse to materialize it.
pub const ENUM_CAP: u64 = 1 << 22;

/// An algebraically described linear order.
///
/// `LexPower` and `TernaryFinSupp` carry only the finite supports of
/// their elements, so infinite orders stay representable while every
/// comparison remains a finite computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderDesc {
    /// The `n`-element order `0 < 1 < … < n-1`; `n ≥ 1`.
    Finite(u64),
    /// The inner order with comparisons flipped.
    Reverse(Box<OrderDesc>),
    /// Left block entirely below the right block.
    Sum(Box<OrderDesc>, Box<OrderDesc>),
    /// Lexicographic product, outer coordinate major.
    Product(Box<OrderDesc>, Box<OrderDesc>),
    /// Lexicographic power `base^exponent` restricted to elements that
    /// differ from `default` at finitely many positions.
    LexPower {
        base: Box<OrderDesc>,
        exponent: OrdinalCnf,
        default: Box<OrderTerm>,
    },
    /// Finite-support maps ℕ → {-1, 0, +1} under the lexicographic
    /// order, default value 0. Dense, without endpoints.
    TernaryFinSupp,
}

/// Which block of a `Sum` a term lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A non-default value of the ternary order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    /// Ternary value with 0 the (absent) default: -1, +1.
    fn value(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Plus => 1,
        }
    }
}

/// An element of a described order. Shape must match the descriptor;
/// `validate_term` checks this.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderTerm {
    Finite(u64),
    Reverse(Box<OrderTerm>),
    Sum(Side, Box<OrderTerm>),
    Product(Box<OrderTerm>, Box<OrderTerm>),
    /// Support map position ↦ value; entries must differ from the
    /// descriptor's default and keys must lie below the exponent.
    LexPower(BTreeMap<OrdinalCnf, OrderTerm>),
    /// Support map position ↦ sign; absent positions read 0.
    Ternary(BTreeMap<u64, Sign>),
}

impl OrderDesc {
    pub fn lexpow(base: OrderDesc, exponent: OrdinalCnf, default: OrderTerm) -> OrderDesc {
        OrderDesc::LexPower {
            base: Box::new(base),
            exponent,
            default: Box::new(default),
        }
    }

    /// Checks the structural invariants of the descriptor tree.
    pub fn validate(&self) -> Result<(), OrderError> {
        match self {
            OrderDesc::Finite(n) => {
                if *n == 0 {
                    Err(OrderError::InvalidDescriptor(
                        "finite order must be nonempty".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            OrderDesc::Reverse(inner) => inner.validate(),
            OrderDesc::Sum(a, b) | OrderDesc::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            OrderDesc::LexPower { base, default, .. } => {
                base.validate()?;
                validate_term(base, default)
            }
            OrderDesc::TernaryFinSupp => Ok(()),
        }
    }

    /// Number of elements, `None` when infinite or past `u64`.
    pub fn size(&self) -> Option<u64> {
        match self {
            OrderDesc::Finite(n) => Some(*n),
            OrderDesc::Reverse(inner) => inner.size(),
            OrderDesc::Sum(a, b) => a.size()?.checked_add(b.size()?),
            OrderDesc::Product(a, b) => a.size()?.checked_mul(b.size()?),
            OrderDesc::LexPower { base, exponent, .. } => {
                let b = base.size()?;
                if b == 1 {
                    return Some(1);
                }
                let k = exponent.to_nat()?;
                let mut acc: u64 = 1;
                for _ in 0..k {
                    acc = acc.checked_mul(b)?;
                }
                Some(acc)
            }
            OrderDesc::TernaryFinSupp => None,
        }
    }

    /// Dense without endpoints: the orders `realize_cut` supports.
    pub fn is_dense_unbounded(&self) -> bool {
        match self {
            OrderDesc::TernaryFinSupp => true,
            OrderDesc::LexPower { base, exponent, .. } => {
                !exponent.is_zero() && base.is_dense_unbounded()
            }
            _ => false,
        }
    }
}

/// Checks that `term` is a valid element of `desc`.
pub fn validate_term(desc: &OrderDesc, term: &OrderTerm) -> Result<(), OrderError> {
    let mismatch = || {
        OrderError::InvalidTerm(format!(
            "term {term:?} does not match descriptor {desc:?}"
        ))
    };
    match (desc, term) {
        (OrderDesc::Finite(n), OrderTerm::Finite(i)) => {
            if i < n {
                Ok(())
            } else {
                Err(OrderError::InvalidTerm(format!(
                    "index {i} out of range for fin:{n}"
                )))
            }
        }
        (OrderDesc::Reverse(d), OrderTerm::Reverse(t)) => validate_term(d, t),
        (OrderDesc::Sum(l, _), OrderTerm::Sum(Side::Left, t)) => validate_term(l, t),
        (OrderDesc::Sum(_, r), OrderTerm::Sum(Side::Right, t)) => validate_term(r, t),
        (OrderDesc::Product(o, i), OrderTerm::Product(a, b)) => {
            validate_term(o, a)?;
            validate_term(i, b)
        }
        (
            OrderDesc::LexPower {
                base,
                exponent,
                default,
            },
            OrderTerm::LexPower(support),
        ) => {
            for (pos, val) in support {
                if pos >= exponent {
                    return Err(OrderError::InvalidTerm(format!(
                        "support position {pos} not below exponent {exponent}"
                    )));
                }
                validate_term(base, val)?;
                if val == default.as_ref() {
                    return Err(OrderError::InvalidTerm(format!(
                        "support entry at {pos} equals the default"
                    )));
                }
            }
            Ok(())
        }
        (OrderDesc::TernaryFinSupp, OrderTerm::Ternary(_)) => Ok(()),
        _ => Err(mismatch()),
    }
}

/// Total-order comparison of two valid terms of `desc`.
pub fn cmp(desc: &OrderDesc, x: &OrderTerm, y: &OrderTerm) -> Result<Ordering, OrderError> {
    validate_term(desc, x)?;
    validate_term(desc, y)?;
    Ok(cmp_unchecked(desc, x, y))
}

/// Comparison assuming both terms already validated.
pub(crate) fn cmp_unchecked(desc: &OrderDesc, x: &OrderTerm, y: &OrderTerm) -> Ordering {
    match (desc, x, y) {
        (OrderDesc::Finite(_), OrderTerm::Finite(a), OrderTerm::Finite(b)) => a.cmp(b),
        (OrderDesc::Reverse(d), OrderTerm::Reverse(a), OrderTerm::Reverse(b)) => {
            cmp_unchecked(d, a, b).reverse()
        }
        (OrderDesc::Sum(l, r), OrderTerm::Sum(sa, a), OrderTerm::Sum(sb, b)) => {
            match (sa, sb) {
                (Side::Left, Side::Right) => Ordering::Less,
                (Side::Right, Side::Left) => Ordering::Greater,
                (Side::Left, Side::Left) => cmp_unchecked(l, a, b),
                (Side::Right, Side::Right) => cmp_unchecked(r, a, b),
            }
        }
        (OrderDesc::Product(o, i), OrderTerm::Product(a1, a2), OrderTerm::Product(b1, b2)) => {
            cmp_unchecked(o, a1, b1).then_with(|| cmp_unchecked(i, a2, b2))
        }
        (
            OrderDesc::LexPower { base, default, .. },
            OrderTerm::LexPower(sa),
            OrderTerm::LexPower(sb),
        ) => {
            // Decide at the least position in the union of supports
            // where the values differ; absent positions read default.
            let mut positions: Vec<&OrdinalCnf> = sa.keys().chain(sb.keys()).collect();
            positions.sort();
            positions.dedup();
            for pos in positions {
                let va = sa.get(pos).unwrap_or(default);
                let vb = sb.get(pos).unwrap_or(default);
                let ord = cmp_unchecked(base, va, vb);
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        }
        (OrderDesc::TernaryFinSupp, OrderTerm::Ternary(sa), OrderTerm::Ternary(sb)) => {
            let mut positions: Vec<u64> = sa.keys().chain(sb.keys()).copied().collect();
            positions.sort_unstable();
            positions.dedup();
            for pos in positions {
                let va = sa.get(&pos).map_or(0, |s| s.value());
                let vb = sb.get(&pos).map_or(0, |s| s.value());
                let ord = va.cmp(&vb);
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        }
        _ => unreachable!("cmp_unchecked on validated terms"),
    }
}

/// All elements of a finite descriptor in ascending order.
///
/// Fails with `TooLargeToEnumerate` when the order is infinite or has
/// more than `ENUM_CAP` elements.
pub fn enumerate(desc: &OrderDesc) -> Result<Vec<OrderTerm>, OrderError> {
    let n = desc
        .size()
        .filter(|&n| n <= ENUM_CAP)
        .ok_or(OrderError::TooLargeToEnumerate)?;
    let mut out = Vec::with_capacity(n as usize);
    enumerate_into(desc, &mut out)?;
    debug_assert_eq!(out.len() as u64, n);
    Ok(out)
}

fn enumerate_into(desc: &OrderDesc, out: &mut Vec<OrderTerm>) -> Result<(), OrderError> {
    match desc {
        OrderDesc::Finite(n) => {
            out.extend((0..*n).map(OrderTerm::Finite));
        }
        OrderDesc::Reverse(inner) => {
            let mut inner_terms = enumerate(inner)?;
            inner_terms.reverse();
            out.extend(
                inner_terms
                    .into_iter()
                    .map(|t| OrderTerm::Reverse(Box::new(t))),
            );
        }
        OrderDesc::Sum(l, r) => {
            for t in enumerate(l)? {
                out.push(OrderTerm::Sum(Side::Left, Box::new(t)));
            }
            for t in enumerate(r)? {
                out.push(OrderTerm::Sum(Side::Right, Box::new(t)));
            }
        }
        OrderDesc::Product(o, i) => {
            let outer = enumerate(o)?;
            let inner = enumerate(i)?;
            for a in &outer {
                for b in &inner {
                    out.push(OrderTerm::Product(Box::new(a.clone()), Box::new(b.clone())));
                }
            }
        }
        OrderDesc::LexPower {
            base,
            exponent,
            default,
        } => {
            let elems = enumerate(base)?;
            if elems.len() == 1 {
                out.push(OrderTerm::LexPower(BTreeMap::new()));
                return Ok(());
            }
            let k = exponent
                .to_nat()
                .ok_or(OrderError::TooLargeToEnumerate)? as usize;
            // Odometer over positions 0..k, position 0 most significant.
            let mut digits = vec![0usize; k];
            loop {
                let mut support = BTreeMap::new();
                for (pos, &d) in digits.iter().enumerate() {
                    if elems[d] != **default {
                        support.insert(OrdinalCnf::from_nat(pos as u64), elems[d].clone());
                    }
                }
                out.push(OrderTerm::LexPower(support));
                let mut carry = k;
                while carry > 0 {
                    digits[carry - 1] += 1;
                    if digits[carry - 1] < elems.len() {
                        break;
                    }
                    digits[carry - 1] = 0;
                    carry -= 1;
                }
                if carry == 0 {
                    break;
                }
            }
        }
        OrderDesc::TernaryFinSupp => return Err(OrderError::TooLargeToEnumerate),
    }
    Ok(())
}

/// The `code`-th element of the canonical (unordered) enumeration of an
/// infinite descriptor's terms. Supports `TernaryFinSupp` and
/// `LexPower` over a finite base with infinite exponent.
pub fn sample_term(desc: &OrderDesc, code: u64) -> Result<OrderTerm, OrderError> {
    match desc {
        OrderDesc::TernaryFinSupp => {
            let mut support = BTreeMap::new();
            let mut c = code;
            let mut pos = 0u64;
            while c > 0 {
                match c % 3 {
                    1 => {
                        support.insert(pos, Sign::Minus);
                    }
                    2 => {
                        support.insert(pos, Sign::Plus);
                    }
                    _ => {}
                }
                c /= 3;
                pos += 1;
            }
            Ok(OrderTerm::Ternary(support))
        }
        OrderDesc::LexPower { base, default, .. } => {
            let elems = enumerate(base)?;
            let non_default: Vec<&OrderTerm> =
                elems.iter().filter(|e| *e != default.as_ref()).collect();
            if non_default.is_empty() {
                return Ok(OrderTerm::LexPower(BTreeMap::new()));
            }
            let radix = non_default.len() as u64 + 1;
            let mut support = BTreeMap::new();
            let mut c = code;
            let mut pos = 0u64;
            while c > 0 {
                let d = c % radix;
                if d > 0 {
                    support.insert(
                        OrdinalCnf::from_nat(pos),
                        non_default[(d - 1) as usize].clone(),
                    );
                }
                c /= radix;
                pos += 1;
            }
            Ok(OrderTerm::LexPower(support))
        }
        _ => Err(OrderError::TooLargeToEnumerate),
    }
}

/// Enumerates up to `limit` terms of `desc` together with a flag
/// telling whether the enumeration is complete.
pub fn enumerate_up_to(
    desc: &OrderDesc,
    limit: usize,
) -> Result<(Vec<OrderTerm>, bool), OrderError> {
    match desc.size() {
        Some(n) if n <= ENUM_CAP => {
            let mut terms = enumerate(desc)?;
            if terms.len() <= limit {
                Ok((terms, true))
            } else {
                terms.truncate(limit);
                Ok((terms, false))
            }
        }
        _ => {
            let mut terms = Vec::with_capacity(limit);
            for code in 0..limit as u64 {
                terms.push(sample_term(desc, code)?);
            }
            Ok((terms, false))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn tern(entries: &[(u64, i8)]) -> OrderTerm {
        OrderTerm::Ternary(
            entries
                .iter()
                .map(|&(p, v)| (p, if v < 0 { Sign::Minus } else { Sign::Plus }))
                .collect(),
        )
    }

    #[test]
    fn finite_cmp_is_index_order() {
        let d = OrderDesc::Finite(3);
        assert_eq!(
            cmp(&d, &OrderTerm::Finite(0), &OrderTerm::Finite(2)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn ternary_cmp_examples() {
        let d = OrderDesc::TernaryFinSupp;
        // Default 0 below +1 at position 0.
        assert_eq!(
            cmp(&d, &tern(&[]), &tern(&[(0, 1)])).unwrap(),
            Ordering::Less
        );
        // First difference at position 1: 0 < +1.
        assert_eq!(
            cmp(&d, &tern(&[(0, 1), (2, 1)]), &tern(&[(0, 1), (1, 1)])).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn reverse_flips() {
        let d = OrderDesc::Reverse(Box::new(OrderDesc::Finite(3)));
        let a = OrderTerm::Reverse(Box::new(OrderTerm::Finite(0)));
        let b = OrderTerm::Reverse(Box::new(OrderTerm::Finite(2)));
        assert_eq!(cmp(&d, &a, &b).unwrap(), Ordering::Greater);
    }

    #[test]
    fn sum_orders_blocks() {
        let d = OrderDesc::Sum(Box::new(OrderDesc::Finite(2)), Box::new(OrderDesc::Finite(2)));
        let l = OrderTerm::Sum(Side::Left, Box::new(OrderTerm::Finite(1)));
        let r = OrderTerm::Sum(Side::Right, Box::new(OrderTerm::Finite(0)));
        assert_eq!(cmp(&d, &l, &r).unwrap(), Ordering::Less);
    }

    #[test]
    fn validate_rejects_out_of_range_index() {
        let d = OrderDesc::Finite(3);
        assert!(matches!(
            cmp(&d, &OrderTerm::Finite(0), &OrderTerm::Finite(3)),
            Err(OrderError::InvalidTerm(_))
        ));
    }

    #[test]
    fn lexpower_default_entries_rejected() {
        let d = OrderDesc::lexpow(
            OrderDesc::Finite(3),
            OrdinalCnf::omega_power(1, 1),
            OrderTerm::Finite(1),
        );
        let mut support = BTreeMap::new();
        support.insert(OrdinalCnf::from_nat(0), OrderTerm::Finite(1));
        assert!(validate_term(&d, &OrderTerm::LexPower(support)).is_err());
    }

    #[test]
    fn enumeration_is_ascending() {
        let d = OrderDesc::Product(Box::new(OrderDesc::Finite(2)), Box::new(OrderDesc::Finite(3)));
        let terms = enumerate(&d).unwrap();
        assert_eq!(terms.len(), 6);
        for w in terms.windows(2) {
            assert_eq!(cmp(&d, &w[0], &w[1]).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn lexpower_enumeration_matches_size() {
        let d = OrderDesc::lexpow(
            OrderDesc::Finite(2),
            OrdinalCnf::from_nat(3),
            OrderTerm::Finite(0),
        );
        let terms = enumerate(&d).unwrap();
        assert_eq!(terms.len(), 8);
        for w in terms.windows(2) {
            assert_eq!(cmp(&d, &w[0], &w[1]).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn sample_terms_distinct() {
        let d = OrderDesc::TernaryFinSupp;
        let mut seen = std::collections::BTreeSet::new();
        for code in 0..200 {
            assert!(seen.insert(sample_term(&d, code).unwrap()));
        }
    }
}
