//! Ordinals below ω^ω in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;

use crate::orders::OrderError;

/// An ordinal below ω^ω, stored as a descending list of
/// `(exponent, coefficient)` pairs: `Σ ω^e · c`.
///
/// The empty list is 0. Exponents are strictly decreasing and
/// coefficients positive, so every ordinal has exactly one
/// representation and comparison is lexicographic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrdinalCnf {
    terms: Vec<(u64, u64)>,
}

impl OrdinalCnf {
    pub fn zero() -> Self {
        OrdinalCnf { terms: Vec::new() }
    }

    pub fn from_nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            OrdinalCnf {
                terms: vec![(0, n)],
            }
        }
    }

    /// ω^e · c as a single-term ordinal. `c = 0` yields 0.
    pub fn omega_power(e: u64, c: u64) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            OrdinalCnf {
                terms: vec![(e, c)],
            }
        }
    }

    /// Builds from raw terms, enforcing the CNF invariants.
    pub fn from_terms(terms: Vec<(u64, u64)>) -> Result<Self, OrderError> {
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrderError::InvalidDescriptor(
                    "ordinal exponents must be strictly decreasing".into(),
                ));
            }
        }
        if terms.iter().any(|&(_, c)| c == 0) {
            return Err(OrderError::InvalidDescriptor(
                "ordinal coefficients must be positive".into(),
            ));
        }
        Ok(OrdinalCnf { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The natural number this ordinal denotes, if it is finite.
    pub fn to_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(0, c)] => Some(*c),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_nat().is_some()
    }

    /// Ordinal successor.
    pub fn successor(&self) -> Self {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            Some((0, c)) => *c += 1,
            _ => terms.push((0, 1)),
        }
        OrdinalCnf { terms }
    }

    pub fn terms(&self) -> &[(u64, u64)] {
        &self.terms
    }
}

impl PartialOrd for OrdinalCnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdinalCnf {
    fn cmp(&self, other: &Self) -> Ordering {
        // Descending CNF lists compare lexicographically; a proper
        // prefix is the smaller ordinal.
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            let by_exp = a.0.cmp(&b.0);
            if by_exp != Ordering::Equal {
                return by_exp;
            }
            let by_coeff = a.1.cmp(&b.1);
            if by_coeff != Ordering::Equal {
                return by_coeff;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl fmt::Display for OrdinalCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for &(e, c) in &self.terms {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for OrdinalCnf {
    type Err = OrderError;

    fn from_str(s: &str) -> Result<Self, OrderError> {
        let bad = |s: &str| OrderError::InvalidDescriptor(format!("bad ordinal: `{s}`"));
        let mut terms = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            if part.is_empty() {
                return Err(bad(s));
            }
            if let Some(rest) = part.strip_prefix('w') {
                let (exp, rest) = if let Some(r) = rest.strip_prefix('^') {
                    let end = r.find('*').unwrap_or(r.len());
                    let e: u64 = r[..end].parse().map_err(|_| bad(s))?;
                    (e, &r[end..])
                } else {
                    (1, rest)
                };
                let coeff = if let Some(r) = rest.strip_prefix('*') {
                    r.parse().map_err(|_| bad(s))?
                } else if rest.is_empty() {
                    1
                } else {
                    return Err(bad(s));
                };
                terms.push((exp, coeff));
            } else {
                let n: u64 = part.parse().map_err(|_| bad(s))?;
                if n == 0 {
                    if s.trim() == "0" {
                        return Ok(Self::zero());
                    }
                    return Err(bad(s));
                }
                terms.push((0, n));
            }
        }
        Self::from_terms(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_cnf_order() {
        let zero = OrdinalCnf::zero();
        let five = OrdinalCnf::from_nat(5);
        let omega = OrdinalCnf::omega_power(1, 1);
        let omega_plus_one = omega.successor();
        let omega_sq = OrdinalCnf::omega_power(2, 1);
        assert!(zero < five);
        assert!(five < omega);
        assert!(omega < omega_plus_one);
        assert!(omega_plus_one < omega_sq);
        assert!(OrdinalCnf::from_nat(3) < OrdinalCnf::from_nat(4));
    }

    #[test]
    fn successor_of_limit_appends_finite_part() {
        let omega = OrdinalCnf::omega_power(1, 1);
        let s = omega.successor();
        assert_eq!(s.terms(), &[(1, 1), (0, 1)]);
        assert_eq!(s.to_nat(), None);
        assert_eq!(OrdinalCnf::from_nat(2).successor().to_nat(), Some(3));
    }

    #[test]
    fn parse_display_round_trip() {
        for s in ["0", "3", "w", "w*2", "w^2", "w^3*2+w*4+7", "w^5+1"] {
            let o: OrdinalCnf = s.parse().unwrap();
            assert_eq!(o.to_string(), s);
            let back: OrdinalCnf = o.to_string().parse().unwrap();
            assert_eq!(back, o);
        }
    }

    #[test]
    fn parse_rejects_non_cnf() {
        assert!("w+w^2".parse::<OrdinalCnf>().is_err());
        assert!("w^2*0".parse::<OrdinalCnf>().is_err());
        assert!("x".parse::<OrdinalCnf>().is_err());
    }
}
