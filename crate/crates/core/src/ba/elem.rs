//! Elements of the countable atomless Boolean algebra in canonical
//! form: a truth table over a minimal finite support of named
//! generators `v0, v1, …`.

use std::fmt;

use crate::ba::BaError;

/// A canonical Boolean-algebra element. Two constructions of the same
/// Boolean function compare equal: the support carries only generators
/// the function depends on, and the table is indexed by assignments to
/// that support (bit `i` of the index is the value of `support[i]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaElem {
    support: Vec<u32>,
    table: Vec<bool>,
}

impl BaElem {
    pub fn zero() -> Self {
        BaElem {
            support: Vec::new(),
            table: vec![false],
        }
    }

    pub fn one() -> Self {
        BaElem {
            support: Vec::new(),
            table: vec![true],
        }
    }

    /// The generator `v<k>`.
    pub fn var(k: u32) -> Self {
        BaElem {
            support: vec![k],
            table: vec![false, true],
        }
    }

    /// Builds from a support and truth table, canonicalizing away
    /// generators the function does not depend on.
    pub fn from_table(support: Vec<u32>, table: Vec<bool>) -> Result<Self, BaError> {
        if table.len() != 1usize << support.len() {
            return Err(BaError::InvalidElement(format!(
                "table length {} does not match support size {}",
                table.len(),
                support.len()
            )));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BaError::InvalidElement(
                "support must be strictly ascending".into(),
            ));
        }
        let mut elem = BaElem { support, table };
        elem.minimize();
        Ok(elem)
    }

    fn minimize(&mut self) {
        let mut i = 0;
        while i < self.support.len() {
            let bit = 1usize << i;
            let depends = (0..self.table.len())
                .any(|idx| idx & bit == 0 && self.table[idx] != self.table[idx | bit]);
            if depends {
                i += 1;
                continue;
            }
            let mut table = Vec::with_capacity(self.table.len() / 2);
            for idx in 0..self.table.len() {
                if idx & bit == 0 {
                    table.push(self.table[idx]);
                }
            }
            self.table = table;
            self.support.remove(i);
        }
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&b| !b)
    }

    pub fn is_one(&self) -> bool {
        self.table.iter().all(|&b| b)
    }

    /// Value of the function when exactly the generators in
    /// `true_vars` are set.
    pub fn eval(&self, true_vars: &[u32]) -> bool {
        let mut idx = 0usize;
        for (i, g) in self.support.iter().enumerate() {
            if true_vars.contains(g) {
                idx |= 1 << i;
            }
        }
        self.table[idx]
    }

    fn lift(&self, support: &[u32]) -> Vec<bool> {
        // Table of the same function over the larger support.
        let positions: Vec<usize> = self
            .support
            .iter()
            .map(|g| support.iter().position(|h| h == g).expect("superset"))
            .collect();
        (0..1usize << support.len())
            .map(|idx| {
                let mut small = 0usize;
                for (i, &p) in positions.iter().enumerate() {
                    if idx & (1 << p) != 0 {
                        small |= 1 << i;
                    }
                }
                self.table[small]
            })
            .collect()
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let mut support: Vec<u32> = self
            .support
            .iter()
            .chain(other.support.iter())
            .copied()
            .collect();
        support.sort_unstable();
        support.dedup();
        let a = self.lift(&support);
        let b = other.lift(&support);
        let table = a.iter().zip(b.iter()).map(|(&x, &y)| op(x, y)).collect();
        let mut elem = BaElem { support, table };
        elem.minimize();
        elem
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn complement(&self) -> Self {
        BaElem {
            support: self.support.clone(),
            table: self.table.iter().map(|&b| !b).collect(),
        }
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.meet(other) == *self
    }

    pub fn lt(&self, other: &Self) -> bool {
        self != other && self.leq(other)
    }

    /// Least generator index beyond every support in sight.
    pub fn fresh_index<'a>(elems: impl IntoIterator<Item = &'a BaElem>) -> u32 {
        elems
            .into_iter()
            .flat_map(|e| e.support.iter().copied())
            .max()
            .map_or(0, |m| m + 1)
    }
}

impl fmt::Display for BaElem {
    /// Canonical disjunctive normal form over the minimal support.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.is_one() {
            return write!(f, "1");
        }
        let minterms: Vec<usize> = (0..self.table.len()).filter(|&i| self.table[i]).collect();
        let many = minterms.len() > 1;
        for (n, idx) in minterms.iter().enumerate() {
            if n > 0 {
                write!(f, " | ")?;
            }
            let wrap = many && self.support.len() > 1;
            if wrap {
                write!(f, "(")?;
            }
            for (i, g) in self.support.iter().enumerate() {
                if i > 0 {
                    write!(f, " & ")?;
                }
                if idx & (1 << i) == 0 {
                    write!(f, "~")?;
                }
                write!(f, "v{g}")?;
            }
            if wrap {
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn fail(&self, msg: &str) -> BaError {
        BaError::Parse(format!(
            "{msg} at `{}`",
            String::from_utf8_lossy(&self.s[self.pos.min(self.s.len())..])
        ))
    }

    // expr := term ('|' term)*
    fn expr(&mut self) -> Result<BaElem, BaError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'|') {
            self.bump();
            acc = acc.join(&self.term()?);
        }
        Ok(acc)
    }

    // term := factor ('&' factor)*
    fn term(&mut self) -> Result<BaElem, BaError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'&') {
            self.bump();
            acc = acc.meet(&self.factor()?);
        }
        Ok(acc)
    }

    // factor := '~' factor | '(' expr ')' | 'v' NUM | '0' | '1'
    fn factor(&mut self) -> Result<BaElem, BaError> {
        match self.peek() {
            Some(b'~') => {
                self.bump();
                Ok(self.factor()?.complement())
            }
            Some(b'(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.fail("expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Some(b'v') => {
                self.bump();
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.fail("expected a generator index"));
                }
                let idx: u32 = std::str::from_utf8(&self.s[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.fail("generator index overflow"))?;
                Ok(BaElem::var(idx))
            }
            Some(b'0') => {
                self.bump();
                Ok(BaElem::zero())
            }
            Some(b'1') => {
                self.bump();
                Ok(BaElem::one())
            }
            _ => Err(self.fail("expected a factor")),
        }
    }
}

impl std::str::FromStr for BaElem {
    type Err = BaError;

    fn from_str(s: &str) -> Result<Self, BaError> {
        let mut p = Parser {
            s: s.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.fail("trailing input"));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(k: u32) -> BaElem {
        BaElem::var(k)
    }

    #[test]
    fn complement_of_generator_meets_to_zero() {
        assert!(v(0).meet(&v(0).complement()).is_zero());
        assert!(v(0).join(&v(0).complement()).is_one());
    }

    #[test]
    fn join_has_union_support() {
        assert_eq!(v(0).join(&v(1)).support(), &[0, 1]);
    }

    #[test]
    fn absorption_recanonicalizes() {
        // (v0 | v1) & ~v0 = v1 & ~v0, and support drops v2 entirely.
        let lhs = v(0).join(&v(1)).meet(&v(0).complement());
        let rhs = v(1).meet(&v(0).complement());
        assert_eq!(lhs, rhs);

        let noisy = v(0).meet(&v(2).join(&v(2).complement()));
        assert_eq!(noisy, v(0));
        assert_eq!(noisy.support(), &[0]);
    }

    #[test]
    fn leq_is_lattice_order() {
        assert!(v(0).meet(&v(1)).leq(&v(0)));
        assert!(v(0).leq(&v(0).join(&v(1))));
        assert!(!v(0).leq(&v(1)));
        assert!(BaElem::zero().lt(&v(0)));
        assert!(v(0).lt(&BaElem::one()));
    }

    #[test]
    fn display_parse_round_trip() {
        let cases = [
            BaElem::zero(),
            BaElem::one(),
            v(0),
            v(0).complement(),
            v(0).join(&v(1)),
            v(1).meet(&v(0).complement()),
            v(0).join(&v(2).meet(&v(1).complement())),
        ];
        for e in cases {
            let s = e.to_string();
            let back: BaElem = s.parse().unwrap();
            assert_eq!(back, e, "round trip of `{s}`");
        }
    }

    #[test]
    fn parse_examples() {
        let e: BaElem = "v0 & ~(v1 | v2)".parse().unwrap();
        let want = v(0).meet(&v(1).join(&v(2)).complement());
        assert_eq!(e, want);
        assert!("v0 &".parse::<BaElem>().is_err());
        assert!("w1".parse::<BaElem>().is_err());
    }

    #[test]
    fn fresh_index_past_all_supports() {
        let elems = [v(0).join(&v(3)), v(1)];
        assert_eq!(BaElem::fresh_index(elems.iter()), 4);
        assert_eq!(BaElem::fresh_index([].iter()), 0);
    }
}
