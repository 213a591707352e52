//! Divisor classes on the blowup R of ℙ² at p and then at the three points
//! q₁, q₂, q₃ over p, and the resulting canonical class of the double cover.
//!
//! Classes are written on the orthogonal basis of total transforms
//! (ℓ, ε_p, ε₁, ε₂, ε₃) with intersection form diag(1, −1, −1, −1, −1).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

const FORM: [i64; 5] = [1, -1, -1, -1, -1];
const NAMES: [&str; 5] = ["l", "e_p", "e_1", "e_2", "e_3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DivisorClass(pub [i64; 5]);

impl DivisorClass {
    pub const ZERO: DivisorClass = DivisorClass([0; 5]);

    pub fn line() -> Self {
        Self([1, 0, 0, 0, 0])
    }

    /// Total transform of the first exceptional curve.
    pub fn eps_p() -> Self {
        Self([0, 1, 0, 0, 0])
    }

    /// Exceptional curve over qᵢ, i ∈ {1,2,3}.
    pub fn exc(i: usize) -> Self {
        let mut c = [0; 5];
        c[1 + i] = 1;
        Self(c)
    }

    /// E₁ + E₂ + E₃.
    pub fn exc_sum() -> Self {
        Self([0, 0, 1, 1, 1])
    }

    pub fn dot(&self, o: &Self) -> i64 {
        (0..5).map(|i| FORM[i] * self.0[i] * o.0[i]).sum()
    }

    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl Add for DivisorClass {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for DivisorClass {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for DivisorClass {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, d: DivisorClass) -> DivisorClass {
        DivisorClass(d.0.map(|c| self * c))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, name) in self.0.iter().zip(NAMES) {
            if *c == 0 {
                continue;
            }
            let sign = match (first, *c < 0) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let abs = c.abs();
            if abs == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{abs}{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Classes entering the canonical class computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalClassReport {
    /// Strict transform of the sextic: 6ℓ − 3ε_p − Σεᵢ.
    pub k_hat: DivisorClass,
    /// Strict transform of the first exceptional curve: ε_p − Σεᵢ.
    pub e_p_hat: DivisorClass,
    /// K_R = −3ℓ + ε_p + Σεᵢ.
    pub k_r: DivisorClass,
    /// K_R = −3ℓ + Ê_p + 2ΣEᵢ.
    pub k_r_in_strict_terms: bool,
    /// K̂ + Ê_p = 6ℓ − 2Ê_p − 4ΣEᵢ.
    pub branch_in_strict_terms: bool,
    /// Pullback of the sextic: 6ℓ = K̂ + 3Ê_p + 4ΣEᵢ.
    pub sextic_pullback: bool,
    /// 2K_R + K̂ + Ê_p, the pullback of the canonical class of the cover
    /// (times two).
    pub twice_cover_canonical: DivisorClass,
    pub e_p_hat_square: i64,
    /// Self-intersection of the ramification curve over Ê_p on the cover.
    pub e_p_hat_cover_square: i64,
    pub k_hat_dot_e_p_hat: i64,
}

impl CanonicalClassReport {
    pub fn ok(&self) -> bool {
        self.k_r_in_strict_terms
            && self.branch_in_strict_terms
            && self.sextic_pullback
            && self.twice_cover_canonical.is_zero()
            && self.e_p_hat_square == -4
            && self.e_p_hat_cover_square == -2
            && self.k_hat_dot_e_p_hat == 0
    }
}

pub fn canonical_class_check() -> CanonicalClassReport {
    let l = DivisorClass::line();
    let eps_p = DivisorClass::eps_p();
    let sum = DivisorClass::exc_sum();
    let k_hat = 6 * l - 3 * eps_p - sum;
    let e_p_hat = eps_p - sum;
    // K_Q = −3ℓ + ε_p, and each further blowup adds its exceptional curve
    let k_r = -3 * l + eps_p + sum;
    let k_r_in_strict_terms = k_r == -3 * l + e_p_hat + 2 * sum;
    let branch_in_strict_terms = k_hat + e_p_hat == 6 * l - 2 * e_p_hat - 4 * sum;
    let sextic_pullback = 6 * l == k_hat + 3 * e_p_hat + 4 * sum;
    let twice_cover_canonical = 2 * k_r + k_hat + e_p_hat;
    let e_p_hat_square = e_p_hat.square();
    CanonicalClassReport {
        k_hat,
        e_p_hat,
        k_r,
        k_r_in_strict_terms,
        branch_in_strict_terms,
        sextic_pullback,
        twice_cover_canonical,
        e_p_hat_square,
        e_p_hat_cover_square: e_p_hat_square / 2,
        k_hat_dot_e_p_hat: k_hat.dot(&e_p_hat),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_class_vanishes() {
        let r = canonical_class_check();
        assert!(r.ok());
        assert_eq!(r.twice_cover_canonical, DivisorClass::ZERO);
        assert_eq!(r.k_r.to_string(), "-3l + e_p + e_1 + e_2 + e_3");
    }

    #[test]
    fn intersection_basics() {
        assert_eq!(DivisorClass::line().square(), 1);
        assert_eq!(DivisorClass::exc(2).square(), -1);
        assert_eq!(DivisorClass::exc(1).dot(&DivisorClass::exc(2)), 0);
        // a line through p: ℓ − ε_p has self-intersection 0
        assert_eq!((DivisorClass::line() - DivisorClass::eps_p()).square(), 0);
        // K_R² = 9 − 4 = 5 for P² blown up four times
        assert_eq!(canonical_class_check().k_r.square(), 5);
    }
}
