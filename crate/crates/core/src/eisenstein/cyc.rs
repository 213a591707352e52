//! Elements of ℚ(ζ₃) as `a + b·ζ₃` with rational coordinates.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{fmt_rational, parse_rational_at, rat, Field, ParseNumberError, Rational};

/// `a + b·ζ₃` where ζ₃² = −1 − ζ₃.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycNum {
    pub a: Rational,
    pub b: Rational,
}

impl CycNum {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn from_i64(a: i64, b: i64) -> Self {
        Self::new(rat(a, 1), rat(b, 1))
    }

    pub fn rational(a: Rational) -> Self {
        Self::new(a, Rational::zero())
    }

    /// ζ₃.
    pub fn zeta3() -> Self {
        Self::from_i64(0, 1)
    }

    /// ζ₆ = 1 + ζ₃.
    pub fn zeta6() -> Self {
        Self::from_i64(1, 1)
    }

    /// √−3 = 1 + 2ζ₃.
    pub fn sqrt_minus_3() -> Self {
        Self::from_i64(1, 2)
    }

    /// ζ₃ᵏ for any integer k.
    pub fn zeta3_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => Self::one(),
            1 => Self::zeta3(),
            _ => Self::from_i64(-1, -1),
        }
    }

    pub fn conj(&self) -> Self {
        Self::new(&self.a - &self.b, -self.b.clone())
    }

    /// N(x) = x·x̄ = a² − ab + b².
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    /// Real part under ζ₃ ↦ e^{2πi/3}.
    pub fn re(&self) -> Rational {
        &self.a - &self.b / rat(2, 1)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.a * r, &self.b * r)
    }
}

impl Zero for CycNum {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for CycNum {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl Add for CycNum {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl AddAssign for CycNum {
    fn add_assign(&mut self, o: Self) {
        self.a += o.a;
        self.b += o.b;
    }
}

impl Sub for CycNum {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl SubAssign for CycNum {
    fn sub_assign(&mut self, o: Self) {
        self.a -= o.a;
        self.b -= o.b;
    }
}

impl Neg for CycNum {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for CycNum {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        // (a + bζ)(c + dζ) = ac − bd + (ad + bc − bd)ζ
        let bd = &self.b * &o.b;
        Self::new(&self.a * &o.a - &bd, &self.a * &o.b + &self.b * &o.a - bd)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        self.clone() * o.clone()
    }
}

impl Div for CycNum {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.inv()
    }
}

impl Field for CycNum {
    fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q(zeta3)");
        self.conj().scale(&n.recip())
    }
}

impl From<Rational> for CycNum {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl From<i64> for CycNum {
    fn from(n: i64) -> Self {
        Self::from_i64(n, 0)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let zpart = if self.b.is_one() {
            "z".to_string()
        } else if self.b == -Rational::one() {
            "-z".to_string()
        } else {
            format!("{}*z", fmt_rational(&self.b))
        };
        if self.a.is_zero() {
            write!(f, "{zpart}")
        } else if zpart.starts_with('-') {
            write!(f, "{}{}", fmt_rational(&self.a), zpart)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.a), zpart)
        }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses sums of terms `r`, `r*z`, `z`, `-z` (rationals `r` like `-3/4`).
/// `base` offsets reported positions.
pub fn parse_cyc_at(src: &str, base: usize) -> Result<CycNum, ParseNumberError> {
    if src.trim().is_empty() {
        return Err(ParseNumberError::Empty { pos: base });
    }
    let mut out = CycNum::zero();
    // split at top-level signs that are not the first character of a term
    let bytes = src.as_bytes();
    let mut start = 0;
    let mut cuts = Vec::new();
    for i in 1..bytes.len() {
        let prev = src[..i].trim_end();
        if (bytes[i] == b'+' || bytes[i] == b'-') && !prev.is_empty() && !prev.ends_with(['+', '-', '*', '/']) {
            cuts.push((start, i));
            start = i;
        }
    }
    cuts.push((start, bytes.len()));
    for (s, e) in cuts {
        let raw = &src[s..e];
        let pos = base + s + (raw.len() - raw.trim_start().len());
        let term = raw.trim();
        let (sign, body) = match term.strip_prefix('+') {
            Some(rest) => (1, rest.trim()),
            None => match term.strip_prefix('-') {
                Some(rest) => (-1, rest.trim()),
                None => (1, term),
            },
        };
        let sign = rat(sign, 1);
        if body == "z" {
            out.b += sign;
        } else if let Some(coef) = body.strip_suffix('z') {
            let coef = coef
                .trim_end()
                .strip_suffix('*')
                .ok_or_else(|| ParseNumberError::Invalid { token: term.to_string(), pos })?;
            out.b += sign * parse_rational_at(coef, pos)?;
        } else {
            out.a += sign * parse_rational_at(body, pos)?;
        }
    }
    Ok(out)
}

impl FromStr for CycNum {
    type Err = ParseNumberError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_cyc_at(s, 0)
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(a: i64, b: i64) -> CycNum {
        CycNum::from_i64(a, b)
    }

    #[test]
    fn constants() {
        let z = CycNum::zeta3();
        assert_eq!(z.clone() * z.clone(), c(-1, -1));
        assert_eq!(z.pow(3), CycNum::one());
        assert_eq!(CycNum::zeta6().pow(6), CycNum::one());
        assert_eq!(CycNum::zeta6().pow(3), -CycNum::one());
        assert_eq!(CycNum::sqrt_minus_3().pow(2), c(-3, 0));
        assert_eq!(z.conj(), c(-1, -1));
        assert_eq!(CycNum::sqrt_minus_3().conj(), -CycNum::sqrt_minus_3());
        assert_eq!(z.re(), rat(-1, 2));
        assert_eq!(CycNum::zeta3_pow(-1), z.conj());
    }

    #[test]
    fn parse_and_print() {
        for s in ["0", "3", "-2/3", "z", "-z", "1+2*z", "1/2-3/4*z", "5*z"] {
            let x: CycNum = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("1 + 2*z".parse::<CycNum>().unwrap(), CycNum::sqrt_minus_3());
        assert_eq!("z+1".parse::<CycNum>().unwrap(), CycNum::zeta6());
        assert_eq!("-1/2*z + -1/2".parse::<CycNum>().unwrap(), CycNum::new(rat(-1, 2), rat(-1, 2)));
        assert!(matches!("1+2z".parse::<CycNum>(), Err(ParseNumberError::Invalid { pos: 1, .. })));
        assert!("".parse::<CycNum>().is_err());
        assert!("1/0".parse::<CycNum>().is_err());
        let json = serde_json::to_string(&c(1, 2)).unwrap();
        assert_eq!(json, "\"1+2*z\"");
        assert_eq!(serde_json::from_str::<CycNum>(&json).unwrap(), c(1, 2));
    }

    fn arb() -> impl Strategy<Value = CycNum> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(a, ad, b, bd)| CycNum::new(rat(a, ad), rat(b, bd)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb(), y in arb(), w in arb()) {
            prop_assert_eq!(x.clone() * (y.clone() + w.clone()), x.clone() * y.clone() + x.clone() * w.clone());
            prop_assert_eq!((x.clone() * y.clone()) * w.clone(), x.clone() * (y.clone() * w.clone()));
            prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
            if !x.is_zero() {
                prop_assert_eq!(x.clone() * x.inv(), CycNum::one());
            }
        }

        #[test]
        fn conj_is_involutive_ring_map(x in arb(), y in arb()) {
            prop_assert_eq!(x.conj().conj(), x.clone());
            prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
            prop_assert_eq!((x.clone() + y.clone()).conj(), x.conj() + y.conj());
            prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
            prop_assert_eq!(CycNum::rational(x.norm()), x.clone() * x.conj());
        }

        #[test]
        fn string_round_trip(x in arb()) {
            prop_assert_eq!(x.to_string().parse::<CycNum>().unwrap(), x);
        }
    }
}
