//! Hermitian lattices over the Eisenstein integers, their underlying real
//! lattices with the μ₃-action by ζ₃, and Hermitian eigenspace signatures.

mod cyc;
mod expr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{det_field, inverse, rank, rref, Matrix, Rational};
use crate::lattices::{rational_signature, LatticeError, ScaledLattice, Signature};

pub use cyc::{parse_cyc_at, CycNum};
pub use expr::parse_hermitian_expr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EisensteinError {
    #[error("generator rows are linearly dependent over Q(zeta3)")]
    DependentRows,
    #[error("Hermitian Gram matrix is not conjugate-symmetric")]
    NotHermitian,
    #[error("Hermitian Gram matrix is degenerate")]
    Degenerate,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("the action is not an isometry of the real form")]
    NotIsometry,
    #[error("the action has nonzero fixed vectors")]
    FixedVectors,
    #[error("the action does not have order three")]
    NotOrderThree,
    #[error("parse error at position {pos}: {msg} (`{token}`)")]
    Parse { token: String, pos: usize, msg: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A nondegenerate Hermitian form over ℚ(ζ₃) on a free module with basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HermRepr", into = "HermRepr")]
pub struct HermitianLattice {
    gram: Matrix<CycNum>,
}

#[derive(Serialize, Deserialize)]
struct HermRepr {
    gram: Vec<Vec<CycNum>>,
}

impl From<HermitianLattice> for HermRepr {
    fn from(h: HermitianLattice) -> Self {
        HermRepr { gram: h.gram.to_rows() }
    }
}

impl TryFrom<HermRepr> for HermitianLattice {
    type Error = EisensteinError;
    fn try_from(r: HermRepr) -> Result<Self, Self::Error> {
        HermitianLattice::new(matrix_from_rows(r.gram)?)
    }
}

fn matrix_from_rows(rows: Vec<Vec<CycNum>>) -> Result<Matrix<CycNum>, EisensteinError> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return Err(EisensteinError::Shape("ragged rows".into()));
    }
    Ok(if rows.is_empty() { Matrix::zeros(0, 0) } else { Matrix::from_rows(&rows) })
}

/// `conj(M)ᵀ`.
pub fn conj_transpose(m: &Matrix<CycNum>) -> Matrix<CycNum> {
    m.transpose().map(CycNum::conj)
}

impl HermitianLattice {
    pub fn new(gram: Matrix<CycNum>) -> Result<Self, EisensteinError> {
        if !gram.is_square() {
            return Err(EisensteinError::Shape(format!("{}x{} Gram", gram.rows(), gram.cols())));
        }
        if conj_transpose(&gram) != gram {
            return Err(EisensteinError::NotHermitian);
        }
        if gram.rows() > 0 && det_field(&gram).is_zero() {
            return Err(EisensteinError::Degenerate);
        }
        Ok(Self { gram })
    }

    /// The rank-one lattice 𝓔 with h = [[1]].
    pub fn eisenstein() -> Self {
        Self { gram: Matrix::identity(1) }
    }

    /// Λ₁, spanned by the rows of the stored generator matrix.
    pub fn lambda1() -> Self {
        herm_gram_from_generators(&crate::fixtures::lambda1_generators()).expect("fixture rows are independent")
    }

    pub fn gram(&self) -> &Matrix<CycNum> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// Λ(a) for a nonzero rational a.
    pub fn rescale(&self, a: &Rational) -> Result<Self, EisensteinError> {
        if a.is_zero() {
            return Err(LatticeError::ZeroScale.into());
        }
        Ok(Self { gram: self.gram.map(|x| x.scale(a)) })
    }

    pub fn direct_sum(parts: &[HermitianLattice]) -> Result<Self, EisensteinError> {
        if parts.is_empty() {
            return Err(LatticeError::EmptySum.into());
        }
        let blocks: Vec<&Matrix<CycNum>> = parts.iter().map(|p| &p.gram).collect();
        Ok(Self { gram: Matrix::block_diag(&blocks) })
    }

    pub fn signature(&self) -> Signature {
        hermitian_signature(&self.gram)
    }
}

/// Gram `M·conj(M)ᵀ` of the module spanned by the rows of `m`.
pub fn herm_gram_from_generators(m: &Matrix<CycNum>) -> Result<HermitianLattice, EisensteinError> {
    if rank(m) != m.rows() {
        return Err(EisensteinError::DependentRows);
    }
    HermitianLattice::new(m.mul(&conj_transpose(m)))
}

/// Signature of a Hermitian matrix by conjugate-symmetric elimination.
///
/// Diagonal entries of a Hermitian matrix are rational. When all remaining
/// diagonal entries vanish, `x_k ← x_k + c·x_j` with `c ∈ {1, ζ₃}` makes
/// the pivot `2·Re(c̄·h_kj)` nonzero.
pub fn hermitian_signature(h: &Matrix<CycNum>) -> Signature {
    let n = h.rows();
    let mut a = h.clone();
    let (mut plus, mut minus) = (0, 0);
    let mut k = 0;
    while k < n {
        if a.get(k, k).is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a.get(i, i).is_zero()) {
                a.swap_rows(k, p);
                a.swap_cols(k, p);
            } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                let one = CycNum::one();
                let c = if a.get(k, j).re().is_zero() { CycNum::zeta3() } else { one };
                for col in 0..n {
                    let v = a.get(k, col).clone() + c.clone() * a.get(j, col).clone();
                    a.set(k, col, v);
                }
                for row in 0..n {
                    let v = a.get(row, k).clone() + a.get(row, j).clone() * c.conj();
                    a.set(row, k, v);
                }
            } else if let Some(i) = (k + 1..n).find(|&i| (k + 1..n).any(|j| !a.get(i, j).is_zero())) {
                a.swap_rows(k, i);
                a.swap_cols(k, i);
                continue;
            } else {
                break;
            }
        }
        let piv = a.get(k, k).clone();
        debug_assert!(piv.is_rational());
        if piv.a.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        let inv = piv.a.recip();
        for i in k + 1..n {
            if a.get(i, k).is_zero() {
                continue;
            }
            let f = a.get(i, k).scale(&inv);
            for c in k..n {
                let v = a.get(i, c).clone() - f.clone() * a.get(k, c).clone();
                a.set(i, c, v);
            }
            let fc = f.conj();
            for r in k..n {
                let v = a.get(r, i).clone() - a.get(r, k).clone() * fc.clone();
                a.set(r, i, v);
            }
        }
        k += 1;
    }
    Signature::new(plus, minus)
}

/// Block of multiplication by ζ₃ on the basis `(b, ζ₃b)`, columns are images.
pub fn zeta3_block() -> Matrix<BigInt> {
    Matrix::from_i64_rows(&[&[0, -1], &[1, -1]])
}

/// An underlying real lattice with an isometric action that should have order three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealForm {
    gram: Matrix<Rational>,
    mu3: Matrix<BigInt>,
}

impl RealForm {
    /// Attaches an action to a rational Gram matrix. Only the isometry
    /// condition `Aᵀ G A = G` is enforced here; order and fixed vectors are
    /// reported by [`mu3_checks`].
    pub fn with_action(gram: Matrix<Rational>, action: Matrix<BigInt>) -> Result<Self, EisensteinError> {
        if !gram.is_square() || !action.is_square() || gram.rows() != action.rows() {
            return Err(EisensteinError::Shape("Gram and action sizes differ".into()));
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric.into());
        }
        let a = action.to_rational();
        if a.transpose().mul(&gram).mul(&a) != gram {
            return Err(EisensteinError::NotIsometry);
        }
        Ok(Self { gram, mu3: action })
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn action(&self) -> &Matrix<BigInt> {
        &self.mu3
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    /// The Gram matrix as (primitive integral Gram, positive rational scale).
    pub fn lattice(&self) -> Result<ScaledLattice, EisensteinError> {
        Ok(ScaledLattice::from_rational_gram(&self.gram)?)
    }

    pub fn signature(&self) -> Signature {
        rational_signature(&self.gram).0
    }
}

/// Underlying real lattice of Λ with bilinear form (2/3)·Re(h) on the basis
/// `b₁, ζ₃b₁, …, bₙ, ζ₃bₙ`, together with multiplication by ζ₃.
pub fn real_form(l: &HermitianLattice) -> RealForm {
    let n = l.rank();
    let two_thirds = Rational::new(2.into(), 3.into());
    let mut g = Matrix::<Rational>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            for s in 0..2 {
                for t in 0..2 {
                    // h(ζˢbᵢ, ζᵗbⱼ) = ζ^{s−t} h_ij
                    let v = CycNum::zeta3_pow(s as i64 - t as i64) * l.gram.get(i, j).clone();
                    g.set(2 * i + s, 2 * j + t, v.re() * &two_thirds);
                }
            }
        }
    }
    let blocks = vec![zeta3_block(); n];
    let refs: Vec<&Matrix<BigInt>> = blocks.iter().collect();
    let mu3 = Matrix::block_diag(&refs);
    RealForm { gram: g, mu3 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mu3Report {
    pub order_three: bool,
    pub fixed_point_free: bool,
    pub trivial_on_discriminant: bool,
}

impl Mu3Report {
    pub fn all(&self) -> bool {
        self.order_three && self.fixed_point_free && self.trivial_on_discriminant
    }
}

pub fn mu3_checks(r: &RealForm) -> Mu3Report {
    let n = r.rank();
    let a = r.mu3.to_rational();
    let id = Matrix::<Rational>::identity(n);
    let order_three = a.pow(3) == id;
    let a_minus = a.sub(&id);
    let fixed_point_free = rank(&a_minus) == n;
    // columns of G⁻¹ are the dual basis in lattice coordinates
    let trivial_on_discriminant =
        inverse(&r.gram).map(|ginv| a_minus.mul(&ginv).entries().all(|x| x.is_integer())).unwrap_or(false);
    Mu3Report { order_three, fixed_point_free, trivial_on_discriminant }
}

/// The χ-eigenspace (χ(ζ₃-action) = ζ₃) of `R ⊗ ℚ(ζ₃)` with its Hermitian form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenspace {
    /// Basis vectors as rows, in the coordinates of the real form.
    pub basis: Matrix<CycNum>,
    pub hermitian: HermitianLattice,
    pub signature: Signature,
}

impl Eigenspace {
    /// The signature as an unordered pair `(min, max)`.
    pub fn unordered_signature(&self) -> (usize, usize) {
        let s = self.signature;
        (s.plus.min(s.minus), s.plus.max(s.minus))
    }
}

/// Eigenspace on which the action is multiplication by ζ₃, found as the image
/// of the projector `(1/3)(I + ζ̄₃A + ζ₃A²)`; h(x, y) = φ(x, ȳ) with φ the
/// ℚ(ζ₃)-bilinear extension of the real form.
pub fn eigenspace_hermitian(r: &RealForm) -> Result<Eigenspace, EisensteinError> {
    let report = mu3_checks(r);
    if !report.order_three {
        return Err(EisensteinError::NotOrderThree);
    }
    if !report.fixed_point_free {
        return Err(EisensteinError::FixedVectors);
    }
    let n = r.rank();
    let a = r.mu3.map(|x| CycNum::rational(Rational::from_integer(x.clone())));
    let z = CycNum::zeta3();
    let third = CycNum::rational(Rational::new(1.into(), 3.into()));
    let proj = Matrix::<CycNum>::identity(n).add(&a.scale(&z.conj())).add(&a.mul(&a).scale(&z)).scale(&third);
    // row space of projᵀ = column space of proj, in reduced echelon form
    let mut rows = proj.transpose();
    let pivots = rref(&mut rows);
    let k = pivots.len();
    let idx: Vec<usize> = (0..n).collect();
    let basis = rows.submatrix(&(0..k).collect::<Vec<_>>(), &idx);
    let phi = r.gram.map(|x| CycNum::rational(x.clone()));
    let h = basis.mul(&phi).mul(&conj_transpose(&basis));
    let hermitian = HermitianLattice::new(h)?;
    let signature = hermitian.signature();
    Ok(Eigenspace { basis, hermitian, signature })
}

/// Result of the ω computation on the rank-two symplectic fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaReport {
    /// ξ(E, F).
    pub orientation: i64,
    /// ζ₆·ω = ζ₆ω for the action ζ₆(E) = E − F, ζ₆(F) = E.
    pub eigenvector: bool,
    pub xi_omega_omegabar: CycNum,
    /// +1 if ξ(ω, ω̄) = √−3, −1 if it is −√−3, 0 otherwise.
    pub sign: i64,
}

/// ω = E + ζ₃F with ξ(E, F) = +1.
pub fn omega_check() -> OmegaReport {
    omega_check_with(1)
}

/// ω = E + ζ₃F with ξ(E, F) = `orientation`.
pub fn omega_check_with(orientation: i64) -> OmegaReport {
    let xi = Matrix::from_rows(&[
        vec![CycNum::zero(), CycNum::from(orientation)],
        vec![CycNum::from(-orientation), CycNum::zero()],
    ]);
    // columns are the images of E and F
    let zeta6_action =
        Matrix::from_rows(&[vec![CycNum::from(1), CycNum::from(1)], vec![CycNum::from(-1), CycNum::zero()]]);
    let omega = vec![CycNum::one(), CycNum::zeta3()];
    let lhs = zeta6_action.mul_vec(&omega);
    let rhs: Vec<CycNum> = omega.iter().map(|x| CycNum::zeta6() * x.clone()).collect();
    let omega_bar: Vec<CycNum> = omega.iter().map(CycNum::conj).collect();
    let value = xi.bilinear(&omega, &omega_bar);
    let s3 = CycNum::sqrt_minus_3();
    let sign = if value == s3 {
        1
    } else if value == -s3 {
        -1
    } else {
        0
    };
    OmegaReport { orientation, eigenvector: lhs == rhs, xi_omega_omegabar: value, sign }
}
