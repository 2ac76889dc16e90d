//! Text grammar for order descriptors and their terms.
//!
//! Descriptors: `fin:5`, `rev(fin:3)`, `sum(fin:2,rev(fin:3))`,
//! `prod(fin:2,fin:2)`, `lexpow(fin:3,w^2,1)`, `tern`.
//! Terms are printed relative to a descriptor: `3`, `rev(2)`, `l(0)`,
//! `(1,0)`, `{0:1,w:2}`, `tern{0:+,2:-}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::orders::desc::validate_term;
use crate::orders::{OrderDesc, OrderError, OrderTerm, OrdinalCnf, Side, Sign};

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), OrderError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn error(&self, msg: &str) -> OrderError {
        OrderError::Parse(format!("{msg} at `{}`", self.rest()))
    }

    fn number(&mut self) -> Result<u64, OrderError> {
        self.skip_ws();
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(self.error("expected a number"));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| self.error("number overflow"))
    }

    fn until(&mut self, stops: &[char]) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.rest().chars().next() {
            if stops.contains(&c) {
                break;
            }
            self.pos += c.len_utf8();
        }
        self.s[start..self.pos].trim_end()
    }

    fn done(&mut self) -> Result<(), OrderError> {
        self.skip_ws();
        if self.rest().is_empty() {
            Ok(())
        } else {
            Err(self.error("trailing input"))
        }
    }
}

pub fn parse_desc(input: &str) -> Result<OrderDesc, OrderError> {
    let mut cur = Cursor::new(input);
    let desc = desc(&mut cur)?;
    cur.done()?;
    desc.validate()?;
    Ok(desc)
}

fn desc(cur: &mut Cursor) -> Result<OrderDesc, OrderError> {
    cur.skip_ws();
    if cur.eat("fin:") {
        return Ok(OrderDesc::Finite(cur.number()?));
    }
    if cur.eat("rev(") {
        let inner = desc(cur)?;
        cur.expect(")")?;
        return Ok(OrderDesc::Reverse(Box::new(inner)));
    }
    if cur.eat("sum(") {
        let left = desc(cur)?;
        cur.expect(",")?;
        let right = desc(cur)?;
        cur.expect(")")?;
        return Ok(OrderDesc::Sum(Box::new(left), Box::new(right)));
    }
    if cur.eat("prod(") {
        let outer = desc(cur)?;
        cur.expect(",")?;
        let inner = desc(cur)?;
        cur.expect(")")?;
        return Ok(OrderDesc::Product(Box::new(outer), Box::new(inner)));
    }
    if cur.eat("lexpow(") {
        let base = desc(cur)?;
        cur.expect(",")?;
        let exponent: OrdinalCnf = cur.until(&[',', ')']).parse()?;
        cur.expect(",")?;
        let default = term(cur, &base)?;
        cur.expect(")")?;
        return Ok(OrderDesc::lexpow(base, exponent, default));
    }
    if cur.eat("tern") {
        return Ok(OrderDesc::TernaryFinSupp);
    }
    Err(cur.error("expected a descriptor"))
}

pub fn parse_term(d: &OrderDesc, input: &str) -> Result<OrderTerm, OrderError> {
    let mut cur = Cursor::new(input);
    let t = term(&mut cur, d)?;
    cur.done()?;
    validate_term(d, &t)?;
    Ok(t)
}

fn term(cur: &mut Cursor, d: &OrderDesc) -> Result<OrderTerm, OrderError> {
    match d {
        OrderDesc::Finite(_) => Ok(OrderTerm::Finite(cur.number()?)),
        OrderDesc::Reverse(inner) => {
            cur.expect("rev(")?;
            let t = term(cur, inner)?;
            cur.expect(")")?;
            Ok(OrderTerm::Reverse(Box::new(t)))
        }
        OrderDesc::Sum(l, r) => {
            if cur.eat("l(") {
                let t = term(cur, l)?;
                cur.expect(")")?;
                Ok(OrderTerm::Sum(Side::Left, Box::new(t)))
            } else if cur.eat("r(") {
                let t = term(cur, r)?;
                cur.expect(")")?;
                Ok(OrderTerm::Sum(Side::Right, Box::new(t)))
            } else {
                Err(cur.error("expected `l(` or `r(`"))
            }
        }
        OrderDesc::Product(o, i) => {
            cur.expect("(")?;
            let a = term(cur, o)?;
            cur.expect(",")?;
            let b = term(cur, i)?;
            cur.expect(")")?;
            Ok(OrderTerm::Product(Box::new(a), Box::new(b)))
        }
        OrderDesc::LexPower { base, .. } => {
            cur.expect("{")?;
            let mut support = BTreeMap::new();
            if !cur.eat("}") {
                loop {
                    let pos: OrdinalCnf = cur.until(&[':']).parse()?;
                    cur.expect(":")?;
                    let v = term(cur, base)?;
                    support.insert(pos, v);
                    if cur.eat("}") {
                        break;
                    }
                    cur.expect(",")?;
                }
            }
            Ok(OrderTerm::LexPower(support))
        }
        OrderDesc::TernaryFinSupp => {
            cur.eat("tern");
            cur.expect("{")?;
            let mut support = BTreeMap::new();
            if !cur.eat("}") {
                loop {
                    let pos = cur.number()?;
                    cur.expect(":")?;
                    let sign = if cur.eat("+") {
                        Sign::Plus
                    } else if cur.eat("-") {
                        Sign::Minus
                    } else {
                        return Err(cur.error("expected `+` or `-`"));
                    };
                    support.insert(pos, sign);
                    if cur.eat("}") {
                        break;
                    }
                    cur.expect(",")?;
                }
            }
            Ok(OrderTerm::Ternary(support))
        }
    }
}

pub fn print_desc(d: &OrderDesc) -> String {
    let mut out = String::new();
    write_desc(&mut out, d);
    out
}

fn write_desc(out: &mut String, d: &OrderDesc) {
    match d {
        OrderDesc::Finite(n) => {
            let _ = write!(out, "fin:{n}");
        }
        OrderDesc::Reverse(inner) => {
            out.push_str("rev(");
            write_desc(out, inner);
            out.push(')');
        }
        OrderDesc::Sum(l, r) => {
            out.push_str("sum(");
            write_desc(out, l);
            out.push(',');
            write_desc(out, r);
            out.push(')');
        }
        OrderDesc::Product(o, i) => {
            out.push_str("prod(");
            write_desc(out, o);
            out.push(',');
            write_desc(out, i);
            out.push(')');
        }
        OrderDesc::LexPower {
            base,
            exponent,
            default,
        } => {
            out.push_str("lexpow(");
            write_desc(out, base);
            let _ = write!(out, ",{exponent},");
            out.push_str(&print_term(base, default));
            out.push(')');
        }
        OrderDesc::TernaryFinSupp => out.push_str("tern"),
    }
}

pub fn print_term(d: &OrderDesc, t: &OrderTerm) -> String {
    match (d, t) {
        (OrderDesc::Finite(_), OrderTerm::Finite(i)) => i.to_string(),
        (OrderDesc::Reverse(d), OrderTerm::Reverse(t)) => format!("rev({})", print_term(d, t)),
        (OrderDesc::Sum(l, _), OrderTerm::Sum(Side::Left, t)) => {
            format!("l({})", print_term(l, t))
        }
        (OrderDesc::Sum(_, r), OrderTerm::Sum(Side::Right, t)) => {
            format!("r({})", print_term(r, t))
        }
        (OrderDesc::Product(o, i), OrderTerm::Product(a, b)) => {
            format!("({},{})", print_term(o, a), print_term(i, b))
        }
        (OrderDesc::LexPower { base, .. }, OrderTerm::LexPower(s)) => {
            let entries: Vec<String> = s
                .iter()
                .map(|(pos, v)| format!("{pos}:{}", print_term(base, v)))
                .collect();
            format!("{{{}}}", entries.join(","))
        }
        (OrderDesc::TernaryFinSupp, OrderTerm::Ternary(s)) => {
            let entries: Vec<String> = s
                .iter()
                .map(|(pos, sign)| {
                    format!("{pos}:{}", if *sign == Sign::Plus { "+" } else { "-" })
                })
                .collect();
            format!("tern{{{}}}", entries.join(","))
        }
        _ => unreachable!("printing a term against a mismatched descriptor"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spec_examples() {
        parse_desc("fin:5").unwrap();
        parse_desc("sum(fin:2,rev(fin:3))").unwrap();
        parse_desc("lexpow(fin:3,w^2,1)").unwrap();
        parse_desc("tern").unwrap();
        let d = parse_desc("tern").unwrap();
        let t = parse_term(&d, "tern{0:+,2:-}").unwrap();
        assert_eq!(print_term(&d, &t), "tern{0:+,2:-}");
    }

    #[test]
    fn desc_round_trip() {
        for s in [
            "fin:5",
            "rev(fin:3)",
            "sum(fin:2,rev(fin:3))",
            "prod(fin:2,fin:2)",
            "lexpow(fin:3,w^2,1)",
            "lexpow(tern,w,tern{})",
            "tern",
        ] {
            let d = parse_desc(s).unwrap();
            assert_eq!(print_desc(&d), s);
            assert_eq!(parse_desc(&print_desc(&d)).unwrap(), d);
        }
    }

    #[test]
    fn term_round_trip() {
        let cases = [
            ("fin:5", "3"),
            ("rev(fin:3)", "rev(2)"),
            ("sum(fin:2,rev(fin:3))", "r(rev(0))"),
            ("prod(fin:2,fin:2)", "(1,0)"),
            ("lexpow(fin:3,w^2,1)", "{0:2,w:0}"),
            ("tern", "tern{0:+,2:-}"),
            ("tern", "tern{}"),
        ];
        for (ds, ts) in cases {
            let d = parse_desc(ds).unwrap();
            let t = parse_term(&d, ts).unwrap();
            assert_eq!(print_term(&d, &t), ts);
        }
    }

    #[test]
    fn parse_rejects_invalid_terms() {
        let d = parse_desc("fin:3").unwrap();
        assert!(parse_term(&d, "3").is_err());
        let d = parse_desc("lexpow(fin:3,w,1)").unwrap();
        // Entry equal to the default is not canonical.
        assert!(parse_term(&d, "{0:1}").is_err());
        // Position at or above the exponent.
        assert!(parse_term(&d, "{w:0}").is_err());
    }
}
