//! Sparse polynomials over ℚ(ζ₃) in the fixed variables s, x1, y, t, u, v, f3, f6,
//! and quotients of such a polynomial by a monomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::IdentityError;
use crate::arith::Field;
use crate::eisenstein::CycNum;

pub const NVARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S,
    X1,
    Y,
    T,
    U,
    V,
    F3,
    F6,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::S, Var::X1, Var::Y, Var::T, Var::U, Var::V, Var::F3, Var::F6];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["s", "x1", "y", "t", "u", "v", "f3", "f6"][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector, ordered graded-lexicographically (s > x1 > … > f6).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NVARS]);

    pub fn var(v: Var, e: u32) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Self {
        let mut m = Self::ONE;
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, o: &Self) -> Self {
        Monomial(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn divides(&self, o: &Self) -> bool {
        (0..NVARS).all(|i| self.0[i] <= o.0[i])
    }

    /// `self / o`, if `o` divides `self`.
    pub fn div(&self, o: &Self) -> Option<Self> {
        o.divides(self).then(|| Monomial(std::array::from_fn(|i| self.0[i] - o.0[i])))
    }

    pub fn lcm(&self, o: &Self) -> Self {
        Monomial(std::array::from_fn(|i| self.0[i].max(o.0[i])))
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Var::ALL
            .iter()
            .filter(|v| self.exponent(**v) > 0)
            .map(|v| match self.exponent(*v) {
                1 => v.name().to_string(),
                e => format!("{}^{e}", v.name()),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, CycNum>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(CycNum::one())
    }

    pub fn constant(c: CycNum) -> Self {
        Self::term(c, Monomial::ONE)
    }

    pub fn term(c: CycNum, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(CycNum::one(), Monomial::var(v, 1))
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(CycNum::one(), m)
    }

    fn add_term(&mut self, m: Monomial, c: CycNum) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(CycNum::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.degree_in(v) > 0
    }

    /// The single term of a one-term polynomial.
    pub fn as_term(&self) -> Option<(Monomial, CycNum)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        let mut out = Self::zero();
        for (m, a) in &self.terms {
            out.add_term(*m, a * c);
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Replaces each variable by the given polynomial (`None` keeps it).
    pub fn substitute(&self, values: &[Option<MultiPoly>; NVARS]) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            let mut kept = Monomial::ONE;
            for v in Var::ALL {
                let e = m.exponent(v);
                match &values[v.index()] {
                    Some(p) if e > 0 => t = &t * &p.pow(e),
                    _ => kept.0[v.index()] = e,
                }
            }
            out = out + t.mul_monomial(&kept);
        }
        out
    }

    pub fn eval(&self, point: &[CycNum; NVARS]) -> CycNum {
        let mut s = CycNum::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                t = t * point[i].pow(e);
            }
            s += t;
        }
        s
    }
}

impl From<CycNum> for MultiPoly {
    fn from(c: CycNum) -> Self {
        Self::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        Self::var(v)
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, o: MultiPoly) -> MultiPoly {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        Self { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: MultiPoly) -> MultiPoly {
        self + (-o)
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: MultiPoly) -> MultiPoly {
        &self * &o
    }
}

fn fmt_coeff(c: &CycNum) -> (bool, String) {
    // (negative, magnitude text without sign)
    if c.is_rational() {
        let s = c.to_string();
        match s.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, s),
        }
    } else {
        (false, format!("({c})"))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = fmt_coeff(c);
            let sign = match (i == 0, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = match (mag.as_str(), *m == Monomial::ONE) {
                (_, true) => mag,
                ("1", false) => m.to_string(),
                (_, false) => format!("{mag}*{m}"),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}

/// `num / den` with a monomial denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatExpr {
    pub num: MultiPoly,
    pub den: Monomial,
}

impl RatExpr {
    pub fn poly(p: MultiPoly) -> Self {
        Self { num: p, den: Monomial::ONE }
    }

    pub fn new(num: MultiPoly, den: Monomial) -> Self {
        Self { num, den }
    }

    pub fn var(v: Var) -> Self {
        Self::poly(MultiPoly::var(v))
    }

    pub fn add(&self, o: &Self) -> Self {
        let den = self.den.lcm(&o.den);
        let a = self.num.mul_monomial(&den.div(&self.den).expect("lcm"));
        let b = o.num.mul_monomial(&den.div(&o.den).expect("lcm"));
        Self { num: a + b, den }
    }

    pub fn neg(&self) -> Self {
        Self { num: -self.num.clone(), den: self.den }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { num: &self.num * &o.num, den: self.den.mul(&o.den) }
    }

    /// Inverse; only defined when the numerator is a single term.
    pub fn inv(&self) -> Result<Self, IdentityError> {
        let (m, c) = self.num.as_term().ok_or(IdentityError::NonMonomialDenominator)?;
        Ok(Self { num: MultiPoly::term(c.inv(), self.den), den: m })
    }

    pub fn div(&self, o: &Self) -> Result<Self, IdentityError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::poly(MultiPoly::one()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self { num: self.num.scale(c), den: self.den }
    }

    /// Replaces each variable by a rational expression (`None` keeps it).
    pub fn substitute(&self, values: &[Option<RatExpr>; NVARS]) -> Result<Self, IdentityError> {
        let mono = |m: &Monomial| -> RatExpr {
            let mut acc = RatExpr::poly(MultiPoly::one());
            let mut kept = Monomial::ONE;
            for v in Var::ALL {
                let e = m.exponent(v);
                match &values[v.index()] {
                    Some(r) if e > 0 => acc = acc.mul(&r.pow(e)),
                    _ => kept.0[v.index()] = e,
                }
            }
            acc.mul(&RatExpr::poly(MultiPoly::monomial(kept)))
        };
        let mut num = RatExpr::poly(MultiPoly::zero());
        for (m, c) in self.num.terms() {
            num = num.add(&mono(m).scale(c));
        }
        num.div(&mono(&self.den))
    }

    /// Cross-multiplied difference `a.num·b.den − b.num·a.den`.
    pub fn cross_difference(&self, o: &Self) -> MultiPoly {
        self.num.mul_monomial(&o.den) - o.num.mul_monomial(&self.den)
    }
}

impl fmt::Display for RatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Monomial::ONE {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: Var) -> MultiPoly {
        MultiPoly::var(v)
    }

    #[test]
    fn arithmetic() {
        let p = x(Var::S) + x(Var::Y);
        let q = x(Var::S) - x(Var::Y);
        assert_eq!(&p * &q, x(Var::S).pow(2) - x(Var::Y).pow(2));
        assert!((p.clone() - p).is_zero());
        assert_eq!((x(Var::S) * x(Var::Y)).to_string(), "s*y");
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_pairs(&[(Var::S, 1)]);
        let b = Monomial::from_pairs(&[(Var::F6, 2)]);
        let c = Monomial::from_pairs(&[(Var::X1, 1)]);
        assert!(a < b);
        assert!(c < a);
        let p = x(Var::S) + x(Var::F6).pow(2) + MultiPoly::constant(CycNum::from_i64(-3, 0));
        assert_eq!(p.to_string(), "f6^2 + s - 3");
    }

    #[test]
    fn display_coefficients() {
        let p = MultiPoly::term(CycNum::zeta3(), Monomial::var(Var::U, 2)) - x(Var::V);
        assert_eq!(p.to_string(), "(z)*u^2 - v");
    }

    #[test]
    fn rational_expressions() {
        let s = RatExpr::new(x(Var::S) * x(Var::Y), Monomial::from_pairs(&[(Var::X1, 1), (Var::F3, 1)]));
        let sq = s.pow(2);
        assert_eq!(sq.den, Monomial::from_pairs(&[(Var::X1, 2), (Var::F3, 2)]));
        let sum = s.add(&RatExpr::var(Var::T));
        assert_eq!(sum.num, x(Var::S) * x(Var::Y) + x(Var::T) * x(Var::X1) * x(Var::F3));
        assert!(RatExpr::poly(x(Var::S) + x(Var::Y)).inv().is_err());
        let one = s.div(&s).unwrap();
        assert!(one.cross_difference(&RatExpr::poly(MultiPoly::one())).is_zero());
    }

    #[test]
    fn substitution_and_eval() {
        let p = x(Var::S).pow(2) - x(Var::X1);
        let mut vals: [Option<MultiPoly>; NVARS] = Default::default();
        vals[Var::S.index()] = Some(x(Var::U) + x(Var::V));
        let q = p.substitute(&vals);
        assert_eq!(
            q,
            x(Var::U).pow(2) + x(Var::U) * x(Var::V).scale(&CycNum::from_i64(2, 0)) + x(Var::V).pow(2) - x(Var::X1)
        );
        let mut pt: [CycNum; NVARS] = std::array::from_fn(|_| CycNum::zero());
        pt[Var::U.index()] = CycNum::from_i64(1, 0);
        pt[Var::V.index()] = CycNum::zeta3();
        pt[Var::X1.index()] = CycNum::from_i64(2, 0);
        // (1 + ζ)² − 2 = ζ₆² − 2 = ζ − 2
        assert_eq!(q.eval(&pt), CycNum::from_i64(-2, 1));
    }
}
