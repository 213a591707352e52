//! Discriminant groups with their quadratic forms, and an exhaustive
//! isometry search between small ones.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntegerLattice, LatticeError};
use crate::arith::{fmt_rational, int, mod_rational, Matrix, Rational};

/// Largest group order the isometry search accepts.
pub const SEARCH_MAX_ORDER: u64 = 729;
/// Largest group exponent the isometry search accepts.
pub const SEARCH_MAX_EXPONENT: u64 = 12;

/// A finite abelian group ⊕ ℤ/dᵢ with a quadratic form `q` (values mod 2ℤ)
/// and its bilinear form `b` (values mod ℤ), recorded on generators.
///
/// `values[(i,i)] = q(gᵢ) mod 2`, `values[(i,j)] = b(gᵢ,gⱼ) mod 1` for i ≠ j.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormRepr", into = "FormRepr")]
pub struct FiniteQuadraticForm {
    orders: Vec<BigInt>,
    values: Matrix<Rational>,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    orders: Vec<String>,
    q_values: Vec<Vec<String>>,
}

impl From<FiniteQuadraticForm> for FormRepr {
    fn from(f: FiniteQuadraticForm) -> Self {
        FormRepr {
            orders: f.orders.iter().map(|d| d.to_string()).collect(),
            q_values: f.values.to_rows().iter().map(|r| r.iter().map(fmt_rational).collect()).collect(),
        }
    }
}

impl TryFrom<FormRepr> for FiniteQuadraticForm {
    type Error = LatticeError;
    fn try_from(r: FormRepr) -> Result<Self, Self::Error> {
        let bad = |s: &str| LatticeError::InvalidForm(format!("cannot parse `{s}`"));
        let orders = r.orders.iter().map(|s| s.parse::<BigInt>().map_err(|_| bad(s))).collect::<Result<Vec<_>, _>>()?;
        let rows = r
            .q_values
            .iter()
            .map(|row| row.iter().map(|s| crate::arith::parse_rational(s).map_err(|_| bad(s))).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        if rows.iter().any(|row| row.len() != rows.len()) {
            return Err(LatticeError::InvalidForm("q_values is not square".into()));
        }
        let values = if rows.is_empty() { Matrix::zeros(0, 0) } else { Matrix::from_rows(&rows) };
        FiniteQuadraticForm::new(orders, values)
    }
}

impl fmt::Debug for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuadraticForm {{ orders: [")?;
        for (i, d) in self.orders.iter().enumerate() {
            write!(f, "{}{}", if i > 0 { ", " } else { "" }, d)?;
        }
        write!(f, "], values: {:?} }}", self.values)
    }
}

impl fmt::Display for FiniteQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "trivial group");
        }
        let group: Vec<String> = self.orders.iter().map(|d| format!("Z/{d}")).collect();
        let q: Vec<String> = (0..self.orders.len()).map(|i| fmt_rational(self.values.get(i, i))).collect();
        write!(f, "{}; q(generators) = [{}] mod 2", group.join(" + "), q.join(", "))
    }
}

fn reduce(values: &Matrix<Rational>) -> Matrix<Rational> {
    let two = Rational::from_integer(int(2));
    let one = Rational::one();
    let mut out = values.clone();
    for i in 0..values.rows() {
        for j in 0..values.cols() {
            out.set(i, j, mod_rational(values.get(i, j), if i == j { &two } else { &one }));
        }
    }
    out
}

impl FiniteQuadraticForm {
    /// Checks the divisibility chain, symmetry of the cross terms and the
    /// denominator bound `den q(gᵢ) | 2dᵢ`, then reduces the values.
    pub fn new(orders: Vec<BigInt>, values: Matrix<Rational>) -> Result<Self, LatticeError> {
        let n = orders.len();
        if values.rows() != n || values.cols() != n {
            return Err(LatticeError::InvalidForm(format!(
                "{n} orders but a {}x{} value matrix",
                values.rows(),
                values.cols()
            )));
        }
        if orders.iter().any(|d| d <= &BigInt::one()) {
            return Err(LatticeError::InvalidForm("orders must exceed 1".into()));
        }
        if orders.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(LatticeError::InvalidForm("orders do not form a divisibility chain".into()));
        }
        let values = reduce(&values);
        if !values.is_symmetric() {
            return Err(LatticeError::InvalidForm("bilinear values are not symmetric".into()));
        }
        for (i, d) in orders.iter().enumerate() {
            let twice: BigInt = d * 2;
            if !twice.is_multiple_of(values.get(i, i).denom()) {
                return Err(LatticeError::InvalidForm(format!(
                    "q value of generator {i} has denominator not dividing {}",
                    d * 2
                )));
            }
        }
        Ok(Self { orders, values })
    }

    pub fn trivial() -> Self {
        Self { orders: Vec::new(), values: Matrix::zeros(0, 0) }
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn values(&self) -> &Matrix<Rational> {
        &self.values
    }

    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    pub fn exponent(&self) -> BigInt {
        self.orders.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// The form −q on the same group.
    pub fn negate(&self) -> Self {
        Self { orders: self.orders.clone(), values: reduce(&self.values.map(|x| -x)) }
    }

    /// q(Σ cᵢgᵢ) mod 2.
    pub fn q(&self, c: &[BigInt]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..c.len() {
            let ci = Rational::from_integer(c[i].clone());
            s += &ci * &ci * self.values.get(i, i);
            for j in i + 1..c.len() {
                s +=
                    Rational::from_integer(int(2)) * &ci * Rational::from_integer(c[j].clone()) * self.values.get(i, j);
            }
        }
        mod_rational(&s, &Rational::from_integer(int(2)))
    }

    /// b(Σ xᵢgᵢ, Σ yⱼgⱼ) mod 1.
    pub fn b(&self, x: &[BigInt], y: &[BigInt]) -> Rational {
        let mut s = Rational::zero();
        for i in 0..x.len() {
            for j in 0..y.len() {
                // b(g, g) ≡ q(g) mod 1
                s += Rational::from_integer(&x[i] * &y[j]) * self.values.get(i, j);
            }
        }
        mod_rational(&s, &Rational::one())
    }

    fn check_bounds(&self) -> Result<(), LatticeError> {
        let order = self.order();
        let exponent = self.exponent();
        if order > int(SEARCH_MAX_ORDER as i64) || exponent > int(SEARCH_MAX_EXPONENT as i64) {
            return Err(LatticeError::SearchBoundExceeded {
                order,
                exponent,
                max_order: SEARCH_MAX_ORDER,
                max_exponent: SEARCH_MAX_EXPONENT,
            });
        }
        Ok(())
    }

    /// All group elements as coefficient vectors, in lexicographic order.
    fn elements(&self) -> Vec<Vec<u64>> {
        let ords: Vec<u64> = self.orders.iter().map(|d| d.to_u64().expect("bounded")).collect();
        let mut out = vec![Vec::new()];
        for &d in &ords {
            out = out.into_iter().flat_map(|v| (0..d).map(move |k| [v.as_slice(), &[k]].concat())).collect();
        }
        out
    }
}

pub(super) fn discriminant_form(l: &IntegerLattice) -> Result<FiniteQuadraticForm, LatticeError> {
    if !l.is_even() {
        return Err(LatticeError::Odd);
    }
    let g = l.gram();
    let snf = smith_normal_form(g);
    let n = l.rank();
    let mut gens: Vec<Vec<Rational>> = Vec::new();
    let mut orders = Vec::new();
    for (i, d) in snf.invariant_factors().into_iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let col: Vec<Rational> = (0..n).map(|r| Rational::new(snf.right.get(r, i).clone(), d.clone())).collect();
        gens.push(col);
        orders.push(d);
    }
    let gq = g.to_rational();
    let k = gens.len();
    let mut values = Matrix::<Rational>::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            values.set(i, j, gq.bilinear(&gens[i], &gens[j]));
        }
    }
    FiniteQuadraticForm::new(orders, values)
}

fn small_q(form: &FiniteQuadraticForm, c: &[u64]) -> Rational {
    let c: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
    form.q(&c)
}

fn small_b(form: &FiniteQuadraticForm, x: &[u64], y: &[u64]) -> Rational {
    let x: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
    let y: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
    form.b(&x, &y)
}

/// Whether some group isomorphism carries `q1` to `q2`.
///
/// Searches generator images one at a time, pruning on element order, on
/// `q` of the image and on `b` against earlier images; a complete
/// assignment is accepted only if it generates the whole target group.
pub fn forms_isometric(q1: &FiniteQuadraticForm, q2: &FiniteQuadraticForm) -> Result<bool, LatticeError> {
    q1.check_bounds()?;
    q2.check_bounds()?;
    if q1.orders != q2.orders {
        return Ok(false);
    }
    if q1.is_trivial() {
        return Ok(true);
    }
    let ords: Vec<u64> = q2.orders.iter().map(|d| d.to_u64().expect("bounded")).collect();
    let elements = q2.elements();
    let elem_order = |e: &[u64]| -> u64 { e.iter().zip(&ords).fold(1u64, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d)))) };
    let n = q1.orders.len();
    let unit = |i: usize| -> Vec<u64> { (0..n).map(|j| u64::from(i == j)).collect() };
    // candidate images per generator, filtered by order and q value
    let candidates: Vec<Vec<&Vec<u64>>> = (0..n)
        .map(|i| {
            let d = q1.orders[i].to_u64().expect("bounded");
            let target = q1.values.get(i, i);
            elements.iter().filter(|e| elem_order(e) == d && &small_q(q2, e) == target).collect()
        })
        .collect();
    let cross: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| small_b(q1, &unit(i), &unit(j))).collect()).collect();
    let order = q2.order().to_u64().expect("bounded") as usize;

    let mut chosen: Vec<&Vec<u64>> = Vec::with_capacity(n);
    fn generates(imgs: &[&Vec<u64>], ords: &[u64], order: usize) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut frontier = vec![vec![0u64; ords.len()]];
        seen.insert(frontier[0].clone());
        while let Some(v) = frontier.pop() {
            for g in imgs {
                let w: Vec<u64> = v.iter().zip(g.iter()).zip(ords).map(|((a, b), d)| (a + b) % d).collect();
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        seen.len() == order
    }
    fn search<'a>(
        i: usize,
        chosen: &mut Vec<&'a Vec<u64>>,
        candidates: &[Vec<&'a Vec<u64>>],
        cross: &[Vec<Rational>],
        q2: &FiniteQuadraticForm,
        ords: &[u64],
        order: usize,
    ) -> bool {
        if i == candidates.len() {
            return generates(chosen, ords, order);
        }
        for &c in &candidates[i] {
            if (0..i).all(|j| small_b(q2, chosen[j], c) == cross[j][i]) {
                chosen.push(c);
                if search(i + 1, chosen, candidates, cross, q2, ords, order) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    Ok(search(0, &mut chosen, &candidates, &cross, q2, &ords, order))
}

/// Whether `q1 ≅ −q2`.
pub fn disc_forms_opposite(q1: &FiniteQuadraticForm, q2: &FiniteQuadraticForm) -> Result<bool, LatticeError> {
    forms_isometric(q1, &q2.negate())
}
