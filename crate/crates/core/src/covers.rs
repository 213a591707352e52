//! Cyclic covers of ℙ¹ branched at weighted points: Chevalley–Weil
//! multiplicities, Riemann–Hurwitz genus, eigenspace Hodge numbers and the
//! half-integrality condition on pairs of weights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{fmt_rational, frac, parse_rational_at, rat, ParseNumberError, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("need at least 5 branch points, got {0}")]
    TooFewPoints(usize),
    #[error("weight {value} at position {index} is not strictly between 0 and 1")]
    WeightOutOfRange { index: usize, value: String },
    #[error("weights sum to {0}, expected 2")]
    WeightSum(String),
    #[error("cover degree must be positive")]
    ZeroDegree,
    #[error("monodromy exponents sum to {sum}, which is not divisible by the degree {degree}")]
    ExponentSum { sum: u64, degree: u64 },
    #[error("exponents and degree {degree} share the factor {gcd}; the cover is disconnected")]
    Disconnected { degree: u64, gcd: u64 },
    #[error("character index {k} is trivial modulo {degree}")]
    TrivialCharacter { k: i64, degree: u64 },
    #[error("the Kunneth pairing needs a degree 6 cover, got degree {0}")]
    DegreeNotSix(u64),
    #[error("degree {0} does not fit in 64 bits")]
    DegreeTooLarge(String),
    #[error(transparent)]
    Parse(#[from] ParseNumberError),
}

/// Branch data of a cyclic μ_d cover of a genus-`base_genus` curve: the
/// local monodromy at point i is ζ_d^{jᵢ}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchData {
    #[serde(with = "rational_strings")]
    pub weights: Vec<Rational>,
    pub degree: u64,
    pub exponents: Vec<u64>,
    pub base_genus: u64,
}

mod rational_strings {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .enumerate()
            .map(|(i, s)| crate::arith::parse_rational_at(s, i).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl BranchData {
    /// Weights αᵢ ∈ (0,1) with Σαᵢ = 2 and at least five points; d is the
    /// lcm of the denominators and jᵢ = d·αᵢ.
    pub fn from_weights(weights: &[Rational]) -> Result<Self, CoverError> {
        validate_weights(weights)?;
        let d = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let degree = d.to_u64().ok_or_else(|| CoverError::DegreeTooLarge(d.to_string()))?;
        let exponents = weights
            .iter()
            .map(|w| (w * Rational::from_integer(d.clone())).to_integer().to_u64().expect("below degree"))
            .collect();
        Ok(Self { weights: weights.to_vec(), degree, exponents, base_genus: 0 })
    }

    /// A μ_d cover of ℙ¹ from monodromy exponents (taken mod d). Requires
    /// Σjᵢ ≡ 0 mod d and gcd(d, j₁, …) = 1.
    pub fn from_exponents(degree: u64, exponents: &[u64]) -> Result<Self, CoverError> {
        if degree == 0 {
            return Err(CoverError::ZeroDegree);
        }
        let js: Vec<u64> = exponents.iter().map(|j| j % degree).collect();
        let sum: u64 = js.iter().sum();
        if !sum.is_multiple_of(degree) {
            return Err(CoverError::ExponentSum { sum, degree });
        }
        let g = js.iter().fold(degree, |acc, &j| acc.gcd(&j));
        if g != 1 {
            return Err(CoverError::Disconnected { degree, gcd: g });
        }
        let weights = js.iter().map(|&j| Rational::new(BigInt::from(j), BigInt::from(degree))).collect();
        Ok(Self { weights, degree, exponents: js, base_genus: 0 })
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Ramification index eᵢ = d / gcd(d, jᵢ).
    pub fn ramification(&self, i: usize) -> u64 {
        self.degree / self.degree.gcd(&self.exponents[i])
    }
}

fn validate_weights(weights: &[Rational]) -> Result<(), CoverError> {
    if weights.len() < 5 {
        return Err(CoverError::TooFewPoints(weights.len()));
    }
    for (index, w) in weights.iter().enumerate() {
        if !w.is_positive() || *w >= Rational::one() {
            return Err(CoverError::WeightOutOfRange { index, value: fmt_rational(w) });
        }
    }
    let sum: Rational = weights.iter().sum();
    if sum != rat(2, 1) {
        return Err(CoverError::WeightSum(fmt_rational(&sum)));
    }
    Ok(())
}

/// Parses `"1/3,1/3,1/6"`; positions in errors are byte offsets.
pub fn parse_weights(src: &str) -> Result<Vec<Rational>, CoverError> {
    let mut out = Vec::new();
    let mut pos = 0;
    for part in src.split(',') {
        out.push(parse_rational_at(part, pos)?);
        pos += part.len() + 1;
    }
    Ok(out)
}

/// Multiplicities of the characters ρ₀, …, ρ_{d−1} of μ_d in H⁰(C, K_C), and
/// the genus of C.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CwResult {
    pub multiplicities: Vec<i64>,
    pub genus: i64,
}

/// m_k = (g_Y − 1) + δ_{k,0} + Σᵢ ⟨−k·jᵢ/d⟩.
pub fn cw_multiplicities(b: &BranchData) -> CwResult {
    let d = b.degree;
    let multiplicities: Vec<i64> = (0..d).map(|k| multiplicity(b, k)).collect();
    let genus = multiplicities.iter().sum();
    CwResult { multiplicities, genus }
}

fn multiplicity(b: &BranchData, k: u64) -> i64 {
    let d = BigInt::from(b.degree);
    let mut m = Rational::from_integer(BigInt::from(b.base_genus) - 1);
    if k == 0 {
        m += Rational::one();
    }
    for &j in &b.exponents {
        m += frac(&Rational::new(-BigInt::from(k) * BigInt::from(j), d.clone()));
    }
    assert!(m.is_integer(), "exponents sum to a multiple of the degree");
    m.to_integer().to_i64().expect("small multiplicity")
}

/// 2g − 2 = d(2g_Y − 2) + Σᵢ (d/eᵢ)(eᵢ − 1).
pub fn genus_riemann_hurwitz(b: &BranchData) -> i64 {
    let d = b.degree as i64;
    let mut two_g_minus_2 = d * (2 * b.base_genus as i64 - 2);
    for i in 0..b.len() {
        let e = b.ramification(i) as i64;
        two_g_minus_2 += (d / e) * (e - 1);
    }
    (two_g_minus_2 + 2) / 2
}

/// (h^{1,0}, h^{0,1}) of the ρ_k eigenspace of H¹(C) = (m_k, m_{d−k}).
pub fn eigenspace_hodge_dims(b: &BranchData, k: i64) -> Result<(i64, i64), CoverError> {
    let d = b.degree as i64;
    let k = k.rem_euclid(d);
    if k == 0 {
        return Err(CoverError::TrivialCharacter { k, degree: b.degree });
    }
    Ok((multiplicity(b, k as u64), multiplicity(b, (d - k) as u64)))
}

/// The unordered pair {m₁, m_{d−1}} as `(min, max)`.
pub fn dm_signature(b: &BranchData) -> Result<(i64, i64), CoverError> {
    let (p, q) = eigenspace_hodge_dims(b, 1)?;
    Ok((p.min(q), p.max(q)))
}

/// A pair of weights violating the half-integrality condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaIntViolation {
    pub i: usize,
    pub j: usize,
    /// (1 − αᵢ − αⱼ)⁻¹
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaIntReport {
    pub ok: bool,
    pub violations: Vec<SigmaIntViolation>,
}

/// For every pair with αᵢ + αⱼ < 1, (1 − αᵢ − αⱼ)⁻¹ must be an integer when
/// αᵢ ≠ αⱼ and a half-integer when αᵢ = αⱼ.
pub fn sigma_int_check(weights: &[Rational]) -> Result<SigmaIntReport, CoverError> {
    validate_weights(weights)?;
    let mut violations = Vec::new();
    for i in 0..weights.len() {
        for j in i + 1..weights.len() {
            let rest = Rational::one() - &weights[i] - &weights[j];
            if !rest.is_positive() {
                continue;
            }
            let r = rest.recip();
            let ok = if weights[i] == weights[j] { (&r * rat(2, 1)).is_integer() } else { r.is_integer() };
            if !ok {
                violations.push(SigmaIntViolation { i, j, value: fmt_rational(&r) });
            }
        }
    }
    Ok(SigmaIntReport { ok: violations.is_empty(), violations })
}

/// Dimension of the invariants of H¹(C) ⊗ H¹(D) under the diagonal μ₆,
/// where H¹(D) carries ρ₁ and ρ₅ once each: 2(m₁ + m₅).
pub fn kunneth_invariant_dim(b: &BranchData) -> Result<i64, CoverError> {
    if b.degree != 6 {
        return Err(CoverError::DegreeNotSix(b.degree));
    }
    let (m1, m5) = eigenspace_hodge_dims(b, 1)?;
    Ok(2 * (m1 + m5))
}

/// Weight of t ∈ 𝔾_m acting on Symⁱ V₃* ⊗ Symʲ V₆*: 6j − 3i.
pub fn git_z_weight(i: i64, j: i64) -> i64 {
    6 * j - 3 * i
}

/// A random valid weight tuple with 5–10 points and denominator dividing
/// some d ≤ 12.
pub fn random_branch_data<R: Rng>(rng: &mut R) -> BranchData {
    let n: u64 = rng.gen_range(5..=10);
    let d: u64 = rng.gen_range(n.div_ceil(2).max(3)..=12);
    let mut js = vec![1u64; n as usize];
    let mut left = 2 * d - n;
    while left > 0 {
        let i = rng.gen_range(0..js.len());
        if js[i] < d - 1 {
            js[i] += 1;
            left -= 1;
        }
    }
    let weights: Vec<Rational> = js.iter().map(|&j| Rational::new(BigInt::from(j), BigInt::from(d))).collect();
    BranchData::from_weights(&weights).expect("constructed valid")
}

/// The weight tuple (1/3, 1/3, 1/3, 1/6 × 6).
pub fn standard_weights() -> Vec<Rational> {
    let mut w = vec![rat(1, 3); 3];
    w.extend(vec![rat(1, 6); 6]);
    w
}

impl CwResult {
    pub fn is_consistent(&self) -> bool {
        self.multiplicities.iter().all(|m| !m.is_negative()) && self.multiplicities.iter().sum::<i64>() == self.genus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn w(s: &str) -> Vec<Rational> {
        parse_weights(s).unwrap()
    }

    #[test]
    fn standard_tuple() {
        let b = BranchData::from_weights(&standard_weights()).unwrap();
        assert_eq!(b.degree, 6);
        assert_eq!(b.exponents, vec![2, 2, 2, 1, 1, 1, 1, 1, 1]);
        let cw = cw_multiplicities(&b);
        assert_eq!(cw.multiplicities, vec![0, 6, 4, 2, 3, 1]);
        assert_eq!(cw.genus, 16);
        assert_eq!(genus_riemann_hurwitz(&b), 16);
        assert_eq!(eigenspace_hodge_dims(&b, 5).unwrap(), (1, 6));
        assert_eq!(eigenspace_hodge_dims(&b, 1).unwrap(), (6, 1));
        assert_eq!(dm_signature(&b).unwrap(), (1, 6));
        assert_eq!(kunneth_invariant_dim(&b).unwrap(), 14);
        assert!(matches!(eigenspace_hodge_dims(&b, 6), Err(CoverError::TrivialCharacter { .. })));
    }

    #[test]
    fn fifths() {
        let b = BranchData::from_weights(&w("2/5,2/5,2/5,2/5,2/5")).unwrap();
        assert_eq!(genus_riemann_hurwitz(&b), 6);
        assert_eq!(cw_multiplicities(&b).genus, 6);
        assert_eq!(dm_signature(&b).unwrap(), (1, 2));
        assert_eq!(kunneth_invariant_dim(&b), Err(CoverError::DegreeNotSix(5)));
    }

    #[test]
    fn unbranched_cover() {
        let b = BranchData::from_exponents(1, &[0, 0, 0]).unwrap();
        assert_eq!(genus_riemann_hurwitz(&b), 0);
        assert_eq!(cw_multiplicities(&b).multiplicities, vec![0]);
    }

    #[test]
    fn exponent_errors() {
        assert_eq!(BranchData::from_exponents(6, &[1, 1, 1]), Err(CoverError::ExponentSum { sum: 3, degree: 6 }));
        assert_eq!(BranchData::from_exponents(6, &[2, 2, 2]), Err(CoverError::Disconnected { degree: 6, gcd: 2 }));
        assert_eq!(BranchData::from_exponents(0, &[1]), Err(CoverError::ZeroDegree));
    }

    #[test]
    fn weight_errors() {
        assert_eq!(BranchData::from_weights(&w("1/2,1/2,1/2,1/2")), Err(CoverError::TooFewPoints(4)));
        assert!(matches!(
            BranchData::from_weights(&w("1,1/4,1/4,1/4,1/4")),
            Err(CoverError::WeightOutOfRange { index: 0, .. })
        ));
        assert!(matches!(BranchData::from_weights(&w("1/2,1/2,1/2,1/2,1/2")), Err(CoverError::WeightSum(_))));
        assert!(matches!(parse_weights("1/2,x"), Err(CoverError::Parse(ParseNumberError::Invalid { pos: 4, .. }))));
    }

    #[test]
    fn sigma_int() {
        assert!(sigma_int_check(&standard_weights()).unwrap().ok);
        assert!(sigma_int_check(&w("2/5,2/5,2/5,2/5,2/5")).unwrap().ok);
        let r = sigma_int_check(&w("2/7,2/7,2/7,2/7,2/7,4/7")).unwrap();
        assert!(!r.ok);
        assert_eq!(r.violations.len(), 10);
        assert!(r.violations.iter().all(|v| v.value == "7/3" && v.j < 5));
    }

    #[test]
    fn git_weights() {
        assert_eq!(git_z_weight(2, 1), 0);
        assert_eq!(git_z_weight(0, 0), 0);
        assert_eq!(git_z_weight(1, 1), 3);
    }

    #[test]
    fn random_tuples_are_valid() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let b = random_branch_data(&mut rng);
            let n = b.len() as i64;
            assert_eq!(dm_signature(&b).unwrap(), (1, n - 3));
        }
    }

    fn arb_branch() -> impl Strategy<Value = BranchData> {
        any::<u64>().prop_map(|seed| random_branch_data(&mut rand::rngs::StdRng::seed_from_u64(seed)))
    }

    proptest! {
        #[test]
        fn two_genus_formulas_agree(b in arb_branch()) {
            let cw = cw_multiplicities(&b);
            prop_assert!(cw.is_consistent());
            prop_assert_eq!(cw.genus, genus_riemann_hurwitz(&b));
            prop_assert_eq!(cw.multiplicities[0], 0);
            let (p, q) = dm_signature(&b).unwrap();
            prop_assert_eq!(p + q, b.len() as i64 - 2);
        }

        #[test]
        fn permutation_invariance(b in arb_branch(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            let mut ws = b.weights.clone();
            ws.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
            let p = BranchData::from_weights(&ws).unwrap();
            prop_assert_eq!(cw_multiplicities(&p), cw_multiplicities(&b));
            prop_assert_eq!(sigma_int_check(&ws).unwrap().ok, sigma_int_check(&b.weights).unwrap().ok);
        }
    }
}
