//! Univariate polynomials over ℚ and binary forms in (X1, X2).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::FibrationError;
use crate::arith::{det_field, fmt_rational, parse_rational_at, Matrix, Rational};

/// Dense polynomial in one variable, coefficients in ascending degree,
/// no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self(c)
    }

    pub fn one() -> Self {
        Self(vec![Rational::one()])
    }

    /// t − r.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * Rational::from_integer(BigInt::from(k))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::default();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let get = |v: &Vec<Rational>, i: usize| v.get(i).cloned().unwrap_or_else(Rational::zero);
        Self::new((0..n).map(|i| get(&self.0, i) - get(&o.0, i)).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        if r.len() <= dd {
            return (Self::default(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        let inv = d.lead().recip();
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &inv;
            if !c.is_zero() {
                for (i, di) in d.0.iter().enumerate() {
                    r[k + i] -= &c * di;
                }
            }
            q[k] = c;
        }
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lead().recip();
        Self::new(self.0.iter().map(|c| c * &inv).collect())
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's squarefree decomposition: monic squarefree factors with their
    /// multiplicities, the constant factor dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let c = d.div_rem(&a).0;
            b = b.div_rem(&a).0;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Rational roots of a squarefree polynomial, by the rational root test.
    /// Returns `None` if the coefficients are too large to enumerate divisors.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        let mut roots = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return Some(roots);
        }
        let den = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> =
            self.0.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
        if ints[0].is_zero() {
            roots.push(Rational::zero());
            let k = ints.iter().take_while(|c| c.is_zero()).count();
            ints.drain(..k);
        }
        if ints.len() > 1 {
            let ps = divisors(&ints[0])?;
            let qs = divisors(ints.last().expect("nonempty"))?;
            let reduced = UniPoly::new(ints.iter().map(|c| Rational::from_integer(c.clone())).collect());
            for p in &ps {
                for q in &qs {
                    for sign in [1, -1] {
                        let r = Rational::new(p * sign, q.clone());
                        if !roots.contains(&r) && reduced.eval(&r).is_zero() {
                            roots.push(r);
                        }
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Σ c_k X1^{deg−k} X2^k.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct BinaryForm {
    coeffs: Vec<Rational>,
}

impl From<BinaryForm> for Vec<String> {
    fn from(f: BinaryForm) -> Self {
        f.coeffs.iter().map(fmt_rational).collect()
    }
}

impl TryFrom<Vec<String>> for BinaryForm {
    type Error = FibrationError;
    fn try_from(v: Vec<String>) -> Result<Self, Self::Error> {
        let coeffs = v.iter().enumerate().map(|(i, s)| parse_rational_at(s, i)).collect::<Result<Vec<_>, _>>()?;
        BinaryForm::new(coeffs)
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm({self})")
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let deg = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = |var: &str, e: usize| match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            let m: Vec<String> = [mono("X1", deg - k), mono("X2", k)].into_iter().filter(|s| !s.is_empty()).collect();
            let m = m.join("*");
            let (neg, abs) = (c.is_negative(), c.abs());
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let body = if m.is_empty() {
                fmt_rational(&abs)
            } else if abs.is_one() {
                m
            } else {
                format!("{}*{}", fmt_rational(&abs), m)
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, FibrationError> {
        if coeffs.is_empty() || coeffs.iter().all(Zero::is_zero) {
            return Err(FibrationError::ZeroForm);
        }
        Ok(Self { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, FibrationError> {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect())
    }

    /// The form whose affine restriction X1 = 1 is `p`, of the given degree.
    pub fn homogenize(p: &UniPoly, degree: usize) -> Result<Self, FibrationError> {
        let mut c = p.coeffs().to_vec();
        if c.len() > degree + 1 {
            return Err(FibrationError::Degree { expected: degree, got: c.len() - 1 });
        }
        c.resize(degree + 1, Rational::zero());
        Self::new(c)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn eval(&self, x1: &Rational, x2: &Rational) -> Rational {
        let d = self.degree();
        let mut s = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                s += c * pow(x1, d - k) * pow(x2, k);
            }
        }
        s
    }

    /// f(t) = F(1, t).
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self { coeffs: vec![Rational::one()] };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// ∂F/∂X1 and ∂F/∂X2 as forms of degree deg − 1 (zero forms allowed).
    fn partials(&self) -> (Vec<Rational>, Vec<Rational>) {
        let d = self.degree();
        let dx1 = (0..d).map(|k| &self.coeffs[k] * Rational::from_integer(BigInt::from(d - k))).collect();
        let dx2 = (0..d).map(|k| &self.coeffs[k + 1] * Rational::from_integer(BigInt::from(k + 1))).collect();
        (dx1, dx2)
    }

    /// Squarefree over ℚ̄, including at [0:1]: Res(∂F/∂X1, ∂F/∂X2) ≠ 0.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            0 => true,
            1 => true,
            _ => {
                let (a, b) = self.partials();
                !resultant_coeffs(&a, &b).is_zero()
            }
        }
    }

    /// F(αX1 + βX2, γX1 + δX2).
    pub fn substitute(&self, m: [[Rational; 2]; 2]) -> Self {
        let d = self.degree();
        let l1 = Self { coeffs: vec![m[0][0].clone(), m[0][1].clone()] };
        let l2 = Self { coeffs: vec![m[1][0].clone(), m[1][1].clone()] };
        let mut out = vec![Rational::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = l1.pow(d - k).mul(&l2.pow(k));
            for (i, t) in term.coeffs.iter().enumerate() {
                out[i] += c * t;
            }
        }
        Self { coeffs: out }
    }

    /// Squarefree factors with multiplicities. Roots at [0:1] appear as the
    /// factor X1; affine factors are monic in X2.
    pub fn squarefree_decomposition(&self) -> Vec<(BinaryForm, usize)> {
        let f = self.dehomogenize();
        let at_infinity = self.degree() - f.degree().unwrap_or(0);
        let mut out: Vec<(BinaryForm, usize)> = f
            .squarefree_decomposition()
            .into_iter()
            .map(|(g, m)| {
                let k = g.degree().expect("nonconstant");
                (BinaryForm::homogenize(&g, k).expect("degree fits"), m)
            })
            .collect();
        if at_infinity > 0 {
            out.push((BinaryForm::from_i64(&[1, 0]).expect("nonzero"), at_infinity));
        }
        out
    }

    /// Multiplicities of the roots over ℚ̄, largest first.
    pub fn multiplicity_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> =
            self.squarefree_decomposition().into_iter().flat_map(|(g, m)| std::iter::repeat_n(m, g.degree())).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

fn pow(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// Resultant of binary forms given by coefficient lists (degrees are the
/// list lengths minus one), via the Sylvester determinant.
pub fn resultant_coeffs(a: &[Rational], b: &[Rational]) -> Rational {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    if size == 0 {
        return Rational::one();
    }
    let mut s = Matrix::<Rational>::zeros(size, size);
    for r in 0..n {
        for (k, c) in a.iter().enumerate() {
            s.set(r, r + k, c.clone());
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().enumerate() {
            s.set(n + r, r + k, c.clone());
        }
    }
    det_field(&s)
}

pub fn resultant(a: &BinaryForm, b: &BinaryForm) -> Rational {
    resultant_coeffs(&a.coeffs, &b.coeffs)
}
