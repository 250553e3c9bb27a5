//! Text syntax for factor products.
//!
//! ```text
//! EXPR   := FACTOR ('*' FACTOR)*
//! FACTOR := C(INT;SIGN) | D(INT,INT;SIGN,SIGN) | E(INT;SIGN) | H | CG[GROUP] | R[GROUP]
//!         | Pauli(GROUP; ROW; ROW; ...) | NAME
//! GROUP  := ZINT ('x' ZINT)* | 1
//! ROW    := INT (',' INT)*
//! ```
//!
//! Orders are actual cyclic orders, so `D(2,4;-,+)` has generators of orders 2
//! and 4. Pauli rows are exponents of ζ_e with e the exponent of the group.
//! Whitespace is ignored. Printing with [`format_expr`] parses back to the same list.

use crate::algebra::{Bicharacter, Sign};
use crate::catalog::{named_factors, Factor, Notice, NAMES};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;

/// Factors plus the adjustments made while validating them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parsed {
    pub factors: Vec<Factor>,
    pub notices: Vec<Notice>,
}

pub fn parse_expr(text: &str) -> Result<Vec<Factor>> {
    Ok(parse_expr_with_notices(text)?.factors)
}

pub fn parse_expr_with_notices(text: &str) -> Result<Parsed> {
    let mut p = Parser { src: text.as_bytes(), text, pos: 0, notices: Vec::new() };
    let mut factors = p.factor()?;
    loop {
        p.skip_ws();
        if p.pos == p.src.len() {
            break;
        }
        p.expect(b'*')?;
        factors.extend(p.factor()?);
    }
    Ok(Parsed { factors, notices: p.notices })
}

pub fn format_expr(factors: &[Factor]) -> String {
    let parts: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
    parts.join(" * ")
}

struct Parser<'a> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    notices: Vec<Notice>,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected `{}`, found `{}`", c as char, x as char)),
            None => self.err(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a factor");
        }
        Ok(self.text[start..self.pos].to_string())
    }

    fn int(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        self.text[start..self.pos].parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn sign(&mut self) -> Result<Sign> {
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
                Ok(Sign::Plus)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(Sign::Minus)
            }
            _ => self.err("expected `+` or `-`"),
        }
    }

    /// Group literal up to the next `]`, `;` or `)`.
    fn group(&mut self) -> Result<FiniteAbelianGroup> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && !matches!(self.src[self.pos], b']' | b';' | b')') {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|e: Error| Error::Syntax { pos: start, msg: e.to_string() })
    }

    fn semantic<T>(&self, start: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| Error::Semantic { factor: self.text[start..self.pos].trim().to_string(), msg: e.to_string() })
    }

    fn factor(&mut self) -> Result<Vec<Factor>> {
        self.skip_ws();
        let start = self.pos;
        let name = self.ident()?;
        let opener = self.peek();
        match (name.as_str(), opener) {
            ("C", Some(b'(')) => {
                self.expect(b'(')?;
                let n = self.int()?;
                self.expect(b';')?;
                let s = self.sign()?;
                self.expect(b')')?;
                let (f, note) = self.semantic(start, Factor::c(n, s))?;
                self.notices.extend(note);
                Ok(vec![f])
            }
            ("D", Some(b'(')) => {
                self.expect(b'(')?;
                let k = self.int()?;
                self.expect(b',')?;
                let l = self.int()?;
                self.expect(b';')?;
                let mu = self.sign()?;
                self.expect(b',')?;
                let nu = self.sign()?;
                self.expect(b')')?;
                Ok(vec![self.semantic(start, Factor::d(k, l, mu, nu))?])
            }
            ("E", Some(b'(')) => {
                self.expect(b'(')?;
                let n = self.int()?;
                self.expect(b';')?;
                let s = self.sign()?;
                self.expect(b')')?;
                Ok(vec![self.semantic(start, Factor::e(n, s))?])
            }
            ("CG" | "R", Some(b'[')) => {
                self.expect(b'[')?;
                let group = self.group()?;
                self.expect(b']')?;
                Ok(vec![if name == "R" { Factor::RG { group } } else { Factor::CG { group } }])
            }
            ("Pauli", Some(b'(')) => {
                self.expect(b'(')?;
                let group = self.group()?;
                let mut rows = Vec::new();
                while self.peek() == Some(b';') {
                    self.pos += 1;
                    let mut row = vec![self.int()?];
                    while self.peek() == Some(b',') {
                        self.pos += 1;
                        row.push(self.int()?);
                    }
                    rows.push(row);
                }
                self.expect(b')')?;
                if group.rank() == 0 && rows.is_empty() {
                    return Ok(vec![Factor::Pauli { beta: Bicharacter::trivial(Vec::new()) }]);
                }
                let e = group.exponent() as u32;
                let beta = self.semantic(start, Bicharacter::new(group.orders().to_vec(), e, rows))?;
                Ok(vec![Factor::Pauli { beta }])
            }
            (_, Some(b'(' | b'[')) => {
                self.pos = start;
                self.err(format!("unknown factor constructor `{name}`"))
            }
            _ if NAMES.contains(&name.as_str()) => named_factors(&name),
            _ => {
                self.pos = start;
                self.err(format!("unknown factor or name `{name}`"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Minus, Plus};

    #[test]
    fn grammar_examples() {
        let f = parse_expr("D(2,4;-,+) * C(8;-)").unwrap();
        assert_eq!(
            f,
            vec![
                Factor::D { k_order: 2, l_order: 4, mu: Minus, nu: Plus },
                Factor::C { order: 8, sign: Minus }
            ]
        );
        let f = parse_expr("H * D(2,2;+,+) * R[Z3]").unwrap();
        assert_eq!(
            f,
            vec![
                Factor::H,
                Factor::D { k_order: 2, l_order: 2, mu: Plus, nu: Plus },
                Factor::RG { group: FiniteAbelianGroup::cyclic(3) }
            ]
        );
        let e = parse_expr("E(6;+)").unwrap_err();
        assert!(matches!(&e, Error::Semantic { factor, msg } if factor == "E(6;+)" && msg.contains("6 is not a power of 2")));
    }

    #[test]
    fn names_whitespace_and_notices() {
        assert_eq!(parse_expr(" H4*M2_4 ").unwrap().len(), 2);
        assert_eq!(parse_expr("M4_4").unwrap(), named_factors("M4_4").unwrap());
        assert_eq!(parse_expr("C ( 4 ; - )").unwrap(), vec![Factor::C { order: 4, sign: Minus }]);
        let p = parse_expr_with_notices("C(3;-)").unwrap();
        assert_eq!(p.factors, vec![Factor::C { order: 3, sign: Plus }]);
        assert_eq!(p.notices.len(), 1);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let pos = |s: &str| match parse_expr(s) {
            Err(Error::Syntax { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("C(2;-) * "), 9);
        assert_eq!(pos("C(2;x)"), 4);
        assert_eq!(pos("Q(2;+)"), 0);
        assert_eq!(pos("C(2;-) D(2,2;+,+)"), 7);
        assert_eq!(pos("R[Z0]"), 2);
        assert!(matches!(parse_expr("Pauli(Z2xZ2; 0,1; 0,0)"), Err(Error::Semantic { .. })));
    }

    #[test]
    fn round_trip() {
        let text = "E(4;-) * C(2;+) * D(2,8;-,+) * CG[Z4xZ2] * R[1] * Pauli(Z4xZ4; 0,1; 3,0) * Pauli(1)";
        let f = parse_expr(text).unwrap();
        assert_eq!(format_expr(&f), text);
        assert_eq!(parse_expr(&format_expr(&f)).unwrap(), f);
    }
}
