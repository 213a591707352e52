//! Textual lattice expressions such as `U+A2(-1)^3` or `U^3 + E8(-1)^2`.
//!
//! ```text
//! sum   := term ('+' term)*
//! term  := atom ('(' int ')')? ('^' int)?
//! atom  := 'U' | 'A' int | 'D' int | 'E' int
//! ```

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{IntegerLattice, LatticeError, LatticeName};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&self, token: &str, msg: &str) -> LatticeError {
        LatticeError::Parse { token: token.to_string(), pos: self.pos, msg: msg.to_string() }
    }

    fn next_token(&self) -> String {
        self.src[self.pos..].chars().take_while(|c| !c.is_whitespace()).take(8).collect()
    }

    fn expect(&mut self, c: char) -> Result<(), LatticeError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(&self.next_token(), &format!("expected `{c}`")))
        }
    }

    fn integer(&mut self, signed: bool) -> Result<BigInt, LatticeError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let sign_len = if signed && rest.starts_with(['-', '+']) { 1 } else { 0 };
        let digits = rest[sign_len..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error(&self.next_token(), "expected an integer"));
        }
        self.pos += sign_len + digits;
        Ok(self.src[start..self.pos].parse().expect("validated digits"))
    }

    fn small(&mut self, signed: bool) -> Result<usize, LatticeError> {
        let start = self.pos;
        let v = self.integer(signed)?;
        v.to_usize().ok_or_else(|| LatticeError::Parse {
            token: v.to_string(),
            pos: start,
            msg: "integer out of range".into(),
        })
    }

    fn term(&mut self) -> Result<IntegerLattice, LatticeError> {
        let Some(c) = self.peek() else {
            return Err(self.error("", "expected a lattice name"));
        };
        let start = self.pos;
        let name: LatticeName =
            c.to_string().parse().map_err(|_| self.error(&self.next_token(), "unknown lattice name"))?;
        self.pos += c.len_utf8();
        let n = if name == LatticeName::U { 2 } else { self.small(false)? };
        let mut lat = IntegerLattice::named(name, n).map_err(|e| LatticeError::Parse {
            token: self.src[start..self.pos].to_string(),
            pos: start,
            msg: e.to_string(),
        })?;
        if self.peek() == Some('(') {
            self.pos += 1;
            let at = self.pos;
            let a = self.integer(true)?;
            if a.is_zero() {
                return Err(LatticeError::Parse {
                    token: "0".into(),
                    pos: at,
                    msg: "rescaling factor must be nonzero".into(),
                });
            }
            self.expect(')')?;
            lat = lat.rescale(&a)?;
        }
        if self.peek() == Some('^') {
            self.pos += 1;
            let at = self.pos;
            let k = self.small(false)?;
            if k == 0 {
                return Err(LatticeError::Parse {
                    token: "0".into(),
                    pos: at,
                    msg: "exponent must be positive".into(),
                });
            }
            lat = lat.power(k)?;
        }
        Ok(lat)
    }
}

/// Parses a direct sum of named lattices.
pub fn parse_lattice_expr(src: &str) -> Result<IntegerLattice, LatticeError> {
    let mut p = Parser { src, pos: 0 };
    let mut parts = vec![p.term()?];
    while let Some(c) = p.peek() {
        if c != '+' {
            return Err(p.error(&p.next_token(), "expected `+` or end of input"));
        }
        p.pos += 1;
        parts.push(p.term()?);
    }
    IntegerLattice::direct_sum(&parts)
}
