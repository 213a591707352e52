//! Direct sums of the named Hermitian lattices `E` (rank one, h = [[1]]) and
//! `Lambda1`, e.g. `E(-3)+Lambda1^2`.

use super::{EisensteinError, HermitianLattice};
use crate::arith::{parse_rational_at, Rational};

fn err(token: &str, pos: usize, msg: &str) -> EisensteinError {
    EisensteinError::Parse { token: token.to_string(), pos, msg: msg.to_string() }
}

fn skip_ws(src: &str, pos: &mut usize) {
    while src[*pos..].starts_with(char::is_whitespace) {
        *pos += 1;
    }
}

fn token_at(src: &str, pos: usize) -> String {
    src[pos..].chars().take_while(|c| !c.is_whitespace()).take(10).collect()
}

pub fn parse_hermitian_expr(src: &str) -> Result<HermitianLattice, EisensteinError> {
    let mut pos = 0;
    let mut parts = Vec::new();
    loop {
        skip_ws(src, &mut pos);
        let start = pos;
        let mut lat = if src[pos..].starts_with("Lambda1") {
            pos += "Lambda1".len();
            HermitianLattice::lambda1()
        } else if src[pos..].starts_with('E') {
            pos += 1;
            HermitianLattice::eisenstein()
        } else {
            return Err(err(&token_at(src, start), start, "expected `E` or `Lambda1`"));
        };
        skip_ws(src, &mut pos);
        if src[pos..].starts_with('(') {
            let close = src[pos..].find(')').ok_or_else(|| err(&token_at(src, pos), pos, "missing `)`"))? + pos;
            let a: Rational = parse_rational_at(&src[pos + 1..close], pos + 1)
                .map_err(|e| err(&src[pos + 1..close], pos + 1, &e.to_string()))?;
            lat = lat.rescale(&a).map_err(|e| err(&src[pos + 1..close], pos + 1, &e.to_string()))?;
            pos = close + 1;
            skip_ws(src, &mut pos);
        }
        if src[pos..].starts_with('^') {
            pos += 1;
            skip_ws(src, &mut pos);
            let digits = src[pos..].bytes().take_while(u8::is_ascii_digit).count();
            let k: usize = src[pos..pos + digits]
                .parse()
                .map_err(|_| err(&token_at(src, pos), pos, "expected a positive exponent"))?;
            if k == 0 {
                return Err(err("0", pos, "expected a positive exponent"));
            }
            pos += digits;
            lat = HermitianLattice::direct_sum(&vec![lat; k])?;
            skip_ws(src, &mut pos);
        }
        parts.push(lat);
        if pos == src.len() {
            break;
        }
        if !src[pos..].starts_with('+') {
            return Err(err(&token_at(src, pos), pos, "expected `+` or end of input"));
        }
        pos += 1;
    }
    HermitianLattice::direct_sum(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn parses() {
        let l = parse_hermitian_expr("E(-3) + Lambda1^2").unwrap();
        assert_eq!(l.rank(), 7);
        assert_eq!(l.gram().get(0, 0).a, rat(-3, 1));
        assert_eq!(parse_hermitian_expr("E").unwrap(), HermitianLattice::eisenstein());
        assert_eq!(parse_hermitian_expr("Lambda1(1/3)").unwrap().rank(), 3);
    }

    #[test]
    fn errors() {
        for (s, p) in [("F", 0), ("E+X", 2), ("E(0)", 2), ("E^0", 2), ("E E", 2), ("E(-3", 1)] {
            match parse_hermitian_expr(s) {
                Err(EisensteinError::Parse { pos, .. }) => assert_eq!(pos, p, "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }
}
