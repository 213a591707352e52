//! Integral lattices given by Gram matrices, up to isometry.
//!
//! Root lattices follow the positive definite convention: `A2` has Gram
//! `[[2,-1],[-1,2]]`; negative definite copies are produced with
//! [`IntegerLattice::rescale`] by −1.

mod discriminant;
mod enumerate;
mod expr;
mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{int, is_perfect_square, Matrix, Rational};

pub use discriminant::{
    disc_forms_opposite, forms_isometric, FiniteQuadraticForm, SEARCH_MAX_EXPONENT, SEARCH_MAX_ORDER,
};
pub use enumerate::vector_counts;
pub use expr::parse_lattice_expr;
pub use snf::{smith_normal_form, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("Gram matrix is degenerate (determinant 0)")]
    Degenerate,
    #[error("unknown lattice name `{0}`")]
    UnknownName(String),
    #[error("rank {rank} out of range for lattice family {name}")]
    RankOutOfRange { name: String, rank: usize },
    #[error("rescaling factor must be nonzero")]
    ZeroScale,
    #[error("direct sum of an empty list")]
    EmptySum,
    #[error("lattice is odd; discriminant quadratic form needs an even lattice")]
    Odd,
    #[error("sublattice generators are linearly dependent")]
    DependentGenerators,
    #[error("sublattice generator matrix has {got} columns, lattice rank is {rank}")]
    GeneratorShape { got: usize, rank: usize },
    #[error("lattice is not positive definite")]
    NotPositiveDefinite,
    #[error("norm must be a positive even integer, got {0}")]
    BadNorm(BigInt),
    #[error("search bound exceeded: group order {order}, exponent {exponent} (limits {max_order}, {max_exponent})")]
    SearchBoundExceeded { order: BigInt, exponent: BigInt, max_order: u64, max_exponent: u64 },
    #[error("invalid finite quadratic form: {0}")]
    InvalidForm(String),
    #[error("scaled lattice is not integral")]
    NotIntegral,
    #[error("parse error at position {pos}: {msg} (`{token}`)")]
    Parse { token: String, pos: usize, msg: String },
}

/// (n₊, n₋).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
}

impl Signature {
    pub fn new(plus: usize, minus: usize) -> Self {
        Self { plus, minus }
    }

    pub fn rank(&self) -> usize {
        self.plus + self.minus
    }

    pub fn swapped(&self) -> Self {
        Self { plus: self.minus, minus: self.plus }
    }

    pub fn is_definite(&self) -> bool {
        self.plus == 0 || self.minus == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature::new(self.plus + o.plus, self.minus + o.minus)
    }
}

/// Root-lattice families plus the hyperbolic plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeName {
    A,
    D,
    E,
    U,
}

impl std::str::FromStr for LatticeName {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Self::A),
            "D" => Ok(Self::D),
            "E" => Ok(Self::E),
            "U" => Ok(Self::U),
            other => Err(LatticeError::UnknownName(other.to_string())),
        }
    }
}

/// A nondegenerate symmetric integral bilinear form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    gram: Matrix<BigInt>,
}

impl fmt::Debug for IntegerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerLattice{:?}", self.gram)
    }
}

impl IntegerLattice {
    pub fn new(gram: Matrix<BigInt>) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if gram.det().is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Self { gram })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, LatticeError> {
        Self::new(Matrix::from_i64_rows(rows))
    }

    /// The rank-zero lattice (orthogonal complement of a full-rank sublattice).
    pub fn zero() -> Self {
        Self { gram: Matrix::zeros(0, 0) }
    }

    pub fn gram(&self) -> &Matrix<BigInt> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.rank() == 0
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i).is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn inner(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.gram.bilinear(x, y)
    }

    /// Standard Gram matrices of `A_n`, `D_n`, `E_6/7/8` and `U`.
    pub fn named(name: LatticeName, n: usize) -> Result<Self, LatticeError> {
        let out_of_range = |s: &str| LatticeError::RankOutOfRange { name: s.to_string(), rank: n };
        let edges: Vec<(usize, usize)> = match name {
            LatticeName::U => return Self::from_i64_rows(&[&[0, 1], &[1, 0]]),
            LatticeName::A => {
                if n < 1 {
                    return Err(out_of_range("A"));
                }
                (1..n).map(|i| (i - 1, i)).collect()
            }
            LatticeName::D => {
                if n < 4 {
                    return Err(out_of_range("D"));
                }
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            LatticeName::E => {
                if !(6..=8).contains(&n) {
                    return Err(out_of_range("E"));
                }
                // Bourbaki labels 1..n: chain 1-3-4-5-…-n, node 2 on node 4
                let mut e = vec![(0, 2), (1, 3)];
                e.extend((3..n).map(|i| (i - 1, i)));
                e
            }
        };
        let mut g = Matrix::<BigInt>::zeros(n, n);
        for i in 0..n {
            g.set(i, i, int(2));
        }
        for (a, b) in edges {
            g.set(a, b, int(-1));
            g.set(b, a, int(-1));
        }
        Self::new(g)
    }

    /// `make_named` with the family given as a token (`"A"`, `"D"`, `"E"`, `"U"`).
    pub fn make_named(token: &str, n: usize) -> Result<Self, LatticeError> {
        Self::named(token.parse()?, n)
    }

    /// L(a): every inner product multiplied by `a`.
    pub fn rescale(&self, a: &BigInt) -> Result<Self, LatticeError> {
        if a.is_zero() {
            return Err(LatticeError::ZeroScale);
        }
        Ok(Self { gram: self.gram.scale(a) })
    }

    pub fn rescale_i64(&self, a: i64) -> Result<Self, LatticeError> {
        self.rescale(&int(a))
    }

    pub fn direct_sum(parts: &[IntegerLattice]) -> Result<Self, LatticeError> {
        if parts.is_empty() {
            return Err(LatticeError::EmptySum);
        }
        let blocks: Vec<&Matrix<BigInt>> = parts.iter().map(|p| &p.gram).collect();
        Ok(Self { gram: Matrix::block_diag(&blocks) })
    }

    pub fn power(&self, k: usize) -> Result<Self, LatticeError> {
        Self::direct_sum(&vec![self.clone(); k])
    }

    /// Signature by congruent diagonalization over ℚ.
    pub fn signature(&self) -> Signature {
        let (s, zeros) = rational_signature(&self.gram.to_rational());
        debug_assert_eq!(zeros, 0, "nondegenerate by construction");
        s
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().minus == 0
    }

    pub fn smith_form(&self) -> SmithForm {
        smith_normal_form(&self.gram)
    }

    /// Invariant factors > 1 of L*/L.
    pub fn discriminant_group(&self) -> Vec<BigInt> {
        self.smith_form().invariant_factors().into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn discriminant_form(&self) -> Result<FiniteQuadraticForm, LatticeError> {
        discriminant::discriminant_form(self)
    }

    /// Primitive orthogonal complement of the sublattice spanned by the rows of
    /// `sub` (coordinates in this lattice's basis). Returns the rank-0 lattice
    /// when `sub` has full rank.
    pub fn orthogonal_complement(&self, sub: &Matrix<BigInt>) -> Result<Self, LatticeError> {
        Ok(self.orthogonal_complement_basis(sub)?.1)
    }

    /// Like [`Self::orthogonal_complement`] but also returns the complement basis as
    /// rows in ambient coordinates.
    pub fn orthogonal_complement_basis(&self, sub: &Matrix<BigInt>) -> Result<(Matrix<BigInt>, Self), LatticeError> {
        if sub.cols() != self.rank() {
            return Err(LatticeError::GeneratorShape { got: sub.cols(), rank: self.rank() });
        }
        if smith_normal_form(sub).rank() != sub.rows() {
            return Err(LatticeError::DependentGenerators);
        }
        let a = sub.mul(&self.gram);
        let snf = smith_normal_form(&a);
        let r = snf.rank();
        let n = self.rank();
        let rows: Vec<usize> = (0..n).collect();
        let kernel_cols: Vec<usize> = (r..n).collect();
        let basis = snf.right.submatrix(&rows, &kernel_cols).transpose();
        if basis.rows() == 0 {
            return Ok((basis, Self::zero()));
        }
        let gram = basis.mul(&self.gram).mul(&basis.transpose());
        // nondegeneracy can fail for degenerate restrictions (e.g. isotropic subspaces)
        Ok((basis, Self::new(gram)?))
    }

    /// Number of vectors `v` with `v·v = norm`.
    pub fn root_count(&self, norm: &BigInt) -> Result<u64, LatticeError> {
        if !norm.is_positive() || norm.is_odd() {
            return Err(LatticeError::BadNorm(norm.clone()));
        }
        let counts = vector_counts(self, norm)?;
        Ok(counts.get(norm).copied().unwrap_or(0))
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let signature = self.signature();
        let definite_counts = if self.rank() > 0 && signature.is_definite() {
            let pos = if signature.minus == 0 { self.clone() } else { self.rescale_i64(-1).expect("-1 != 0") };
            let counts = vector_counts(&pos, &int(6)).expect("positive definite");
            Some([2, 4, 6].map(|k| counts.get(&int(k)).copied().unwrap_or(0)))
        } else {
            None
        };
        Fingerprint { rank: self.rank(), even: self.is_even(), det: self.det(), signature, counts: definite_counts }
    }
}

/// Isometry invariants used as evidence for "isomorphic to" claims.
///
/// `counts` holds the number of vectors of norm 2, 4, 6 when the lattice is
/// definite (for negative definite lattices, norms −2, −4, −6).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub rank: usize,
    pub even: bool,
    pub det: BigInt,
    pub signature: Signature,
    pub counts: Option<[u64; 3]>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rank {}, {}, det {}, signature {}",
            self.rank,
            if self.even { "even" } else { "odd" },
            self.det,
            self.signature
        )?;
        if let Some(c) = self.counts {
            write!(f, ", norms 2/4/6: {}/{}/{}", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// An integral lattice together with a positive rational scalar: the
/// bilinear form is `scale · gram`. The Gram matrix is kept primitive
/// (entries with gcd 1) so the representation is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledLattice {
    pub scale: Rational,
    pub lattice: IntegerLattice,
}

impl ScaledLattice {
    pub fn from_rational_gram(g: &Matrix<Rational>) -> Result<Self, LatticeError> {
        let den = g.entries().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints = g.map(|x| (x * Rational::from_integer(den.clone())).to_integer());
        let content = ints.entries().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if content.is_zero() {
            if g.rows() == 0 {
                return Ok(Self { scale: Rational::one(), lattice: IntegerLattice::zero() });
            }
            return Err(LatticeError::Degenerate);
        }
        let gram = ints.map(|x| x / &content);
        Ok(Self { scale: Rational::new(content, den), lattice: IntegerLattice::new(gram)? })
    }

    pub fn rational_gram(&self) -> Matrix<Rational> {
        self.lattice.gram.to_rational().scale(&self.scale)
    }

    /// The lattice `scale·gram` when all its entries are integers.
    pub fn integral(&self) -> Option<IntegerLattice> {
        let g = self.rational_gram().to_integer()?;
        Some(IntegerLattice { gram: g })
    }

    /// Fingerprint; only defined when the scaled form is integral.
    pub fn fingerprint(&self) -> Result<Fingerprint, LatticeError> {
        self.integral().map(|l| l.fingerprint()).ok_or(LatticeError::NotIntegral)
    }

    pub fn signature(&self) -> Signature {
        self.lattice.signature()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn rescale(&self, a: &Rational) -> Result<Self, LatticeError> {
        if a.is_zero() {
            return Err(LatticeError::ZeroScale);
        }
        Self::from_rational_gram(&self.rational_gram().scale(a))
    }
}

/// Signature of a symmetric rational matrix by congruent elimination.
/// Returns `(signature, number of zero directions)`.
///
/// When every remaining diagonal entry is zero but an off-diagonal entry
/// `a_ij` is not, the substitution `x_i ← x_i + x_j` creates the pivot
/// `2·a_ij`.
pub fn rational_signature(m: &Matrix<Rational>) -> (Signature, usize) {
    assert!(m.is_symmetric(), "signature of a non-symmetric matrix");
    let n = m.rows();
    let mut a = m.clone();
    let (mut plus, mut minus, mut zeros) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if a.get(k, k).is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a.get(i, i).is_zero()) {
                a.swap_rows(k, p);
                a.swap_cols(k, p);
            } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                // x_k ← x_k + x_j
                for c in 0..n {
                    let v = a.get(k, c).clone() + a.get(j, c).clone();
                    a.set(k, c, v);
                }
                for r in 0..n {
                    let v = a.get(r, k).clone() + a.get(r, j).clone();
                    a.set(r, k, v);
                }
            } else if let Some(i) = (k + 1..n).find(|&i| (k + 1..n).any(|j| !a.get(i, j).is_zero())) {
                // row k is zero; move a live row into position k and retry
                a.swap_rows(k, i);
                a.swap_cols(k, i);
                continue;
            } else {
                // everything from k on is zero
                zeros += n - k;
                break;
            }
        }
        let piv = a.get(k, k).clone();
        if piv.is_positive() {
            plus += 1;
        } else {
            minus += 1;
        }
        for i in k + 1..n {
            if a.get(i, k).is_zero() {
                continue;
            }
            let f = a.get(i, k) / &piv;
            for c in k..n {
                let v = a.get(i, c) - &f * a.get(k, c);
                a.set(i, c, v);
            }
            for r in k..n {
                let v = a.get(r, i) - &f * a.get(r, k);
                a.set(r, i, v);
            }
        }
        k += 1;
    }
    (Signature::new(plus, minus), zeros)
}

/// Outcome of the unimodular gluing arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueCheck {
    pub ok: bool,
    /// √|det P · det Q| when that is a perfect square.
    pub index: Option<BigInt>,
    pub rank_ok: bool,
    pub signature_ok: bool,
    pub square_ok: bool,
}

/// Necessary conditions for `P ⊕ Q` to glue to a unimodular lattice of the
/// given rank and signature.
pub fn glue_determinant_check(
    p: &IntegerLattice,
    q: &IntegerLattice,
    ambient_rank: usize,
    ambient_signature: Signature,
) -> GlueCheck {
    let rank_ok = p.rank() + q.rank() == ambient_rank;
    let signature_ok = p.signature() + q.signature() == ambient_signature;
    let index = is_perfect_square(&(p.det() * q.det()).abs());
    let square_ok = index.is_some();
    GlueCheck { ok: rank_ok && signature_ok && square_ok, index, rank_ok, signature_ok, square_ok }
}

/// U³ ⊕ E8(−1)².
pub fn k3_lattice() -> IntegerLattice {
    let u = IntegerLattice::named(LatticeName::U, 2).expect("U");
    let e8m = IntegerLattice::named(LatticeName::E, 8).and_then(|e| e.rescale_i64(-1)).expect("E8(-1)");
    IntegerLattice::direct_sum(&[u.clone(), u.clone(), u, e8m.clone(), e8m]).expect("nonempty")
}

/// U ⊕ A2(−1)³.
pub fn trivial_lattice_model() -> IntegerLattice {
    parse_lattice_expr("U+A2(-1)^3").expect("well-formed")
}

/// A2 ⊕ E6(−1)².
pub fn transcendental_lattice_model() -> IntegerLattice {
    parse_lattice_expr("A2+E6(-1)^2").expect("well-formed")
}

/// A primitive embedding of U ⊕ A2(−1)³ into the K3 lattice, rows in the basis
/// of [`k3_lattice`] (U₁, U₂, U₃, E8(−1), E8(−1)).
///
/// U goes to the first hyperbolic plane; one A2(−1) goes into U₂ ⊕ U₃ via
/// `e₂ − f₂` and `f₂ + e₃ − f₃`; the other two are spanned by adjacent simple
/// roots of the two E8(−1) summands.
pub fn trivial_lattice_embedding() -> Matrix<BigInt> {
    let mut rows = vec![vec![0i64; 22]; 8];
    rows[0][0] = 1; // e
    rows[1][1] = 1; // f
    rows[2][2] = 1; // e2 - f2
    rows[2][3] = -1;
    rows[3][3] = 1; // f2 + e3 - f3
    rows[3][4] = 1;
    rows[3][5] = -1;
    rows[4][6] = 1; // α1, α3 of the first E8(-1)
    rows[5][8] = 1;
    rows[6][14] = 1; // α1, α3 of the second E8(-1)
    rows[7][16] = 1;
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_i64_rows(&refs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(expr: &str) -> IntegerLattice {
        parse_lattice_expr(expr).unwrap()
    }

    #[test]
    fn named_grams() {
        assert_eq!(IntegerLattice::make_named("A", 2).unwrap().gram(), &Matrix::from_i64_rows(&[&[2, -1], &[-1, 2]]));
        assert_eq!(IntegerLattice::make_named("U", 0).unwrap().gram(), &Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]));
        let e6 = IntegerLattice::make_named("E", 6).unwrap();
        assert_eq!(e6.rank(), 6);
        assert!(e6.is_even());
        assert_eq!(e6.det(), int(3));
        assert_eq!(IntegerLattice::make_named("E", 7).unwrap().det(), int(2));
        assert_eq!(IntegerLattice::make_named("E", 8).unwrap().det(), int(1));
        assert_eq!(IntegerLattice::make_named("D", 4).unwrap().det(), int(4));
        assert_eq!(IntegerLattice::make_named("D", 7).unwrap().det(), int(4));
        assert_eq!(IntegerLattice::make_named("A", 5).unwrap().det(), int(6));
    }

    #[test]
    fn named_errors() {
        assert!(matches!(IntegerLattice::make_named("F", 4), Err(LatticeError::UnknownName(_))));
        assert!(matches!(IntegerLattice::make_named("E", 9), Err(LatticeError::RankOutOfRange { .. })));
        assert!(matches!(IntegerLattice::make_named("D", 3), Err(LatticeError::RankOutOfRange { .. })));
        assert!(matches!(IntegerLattice::make_named("A", 0), Err(LatticeError::RankOutOfRange { .. })));
    }

    #[test]
    fn construction_rejects_bad_grams() {
        assert_eq!(IntegerLattice::from_i64_rows(&[&[1, 2], &[2, 4]]), Err(LatticeError::Degenerate));
        assert_eq!(IntegerLattice::from_i64_rows(&[&[1, 2], &[3, 4]]), Err(LatticeError::NotSymmetric));
        assert!(matches!(IntegerLattice::new(Matrix::zeros(2, 3)), Err(LatticeError::NotSquare { .. })));
    }

    #[test]
    fn rescale_and_sums() {
        let a2 = lat("A2");
        assert_eq!(a2.rescale_i64(-1).unwrap().gram(), &Matrix::from_i64_rows(&[&[-2, 1], &[1, -2]]));
        assert_eq!(lat("U").rescale_i64(3).unwrap().gram(), &Matrix::from_i64_rows(&[&[0, 3], &[3, 0]]));
        assert_eq!(lat("E6").rescale_i64(-1).unwrap().det(), int(3));
        assert_eq!(a2.rescale_i64(0), Err(LatticeError::ZeroScale));
        assert_eq!(IntegerLattice::direct_sum(&[]), Err(LatticeError::EmptySum));
        assert_eq!(IntegerLattice::direct_sum(std::slice::from_ref(&a2)).unwrap(), a2);
        let p = lat("U+A2(-1)^3");
        assert_eq!((p.rank(), p.det()), (8, int(-27)));
        let q = lat("A2+E6(-1)^2");
        assert_eq!((q.rank(), q.det()), (14, int(27)));
    }

    #[test]
    fn signatures() {
        assert_eq!(lat("U").signature(), Signature::new(1, 1));
        assert_eq!(lat("A2+E6(-1)^2").signature(), Signature::new(2, 12));
        assert_eq!(k3_lattice().signature(), Signature::new(3, 19));
        assert_eq!(lat("U+A2(-1)^3").signature(), Signature::new(1, 7));
        // all-zero diagonal needs the hyperbolic repair
        let h = Matrix::from_i64_rows(&[&[0, 1, 0], &[1, 0, 2], &[0, 2, 0]]).to_rational();
        assert_eq!(rational_signature(&h), (Signature::new(1, 1), 1));
        let h = Matrix::from_i64_rows(&[&[0, 0, 1], &[0, 0, 0], &[1, 0, 0]]).to_rational();
        assert_eq!(rational_signature(&h), (Signature::new(1, 1), 1));
    }

    #[test]
    fn discriminant_groups() {
        assert_eq!(lat("A2").discriminant_group(), vec![int(3)]);
        assert_eq!(lat("U+A2(-1)^3").discriminant_group(), vec![int(3); 3]);
        assert!(lat("E8").discriminant_group().is_empty());
        assert_eq!(lat("D4").discriminant_group(), vec![int(2), int(2)]);
        assert_eq!(lat("A3").discriminant_group(), vec![int(4)]);
    }

    #[test]
    fn complements() {
        let amb = lat("U+A2");
        let sub = Matrix::from_i64_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let c = amb.orthogonal_complement(&sub).unwrap();
        assert_eq!(c.gram(), lat("A2").gram());
        let full = amb.orthogonal_complement(&Matrix::identity(4)).unwrap();
        assert!(full.is_empty());
        let dep = Matrix::from_i64_rows(&[&[1, 0, 0, 0], &[2, 0, 0, 0]]);
        assert_eq!(amb.orthogonal_complement(&dep), Err(LatticeError::DependentGenerators));
        assert!(matches!(
            amb.orthogonal_complement(&Matrix::from_i64_rows(&[&[1, 0]])),
            Err(LatticeError::GeneratorShape { .. })
        ));
    }

    #[test]
    fn embedding_fixture_is_primitive_with_expected_gram() {
        let k3 = k3_lattice();
        let s = trivial_lattice_embedding();
        let restricted = s.mul(k3.gram()).mul(&s.transpose());
        assert_eq!(&restricted, trivial_lattice_model().gram());
        assert!(smith_normal_form(&s).invariant_factors().iter().all(|d| d.is_one()));
    }

    #[test]
    fn glue_examples() {
        let g = glue_determinant_check(
            &trivial_lattice_model(),
            &transcendental_lattice_model(),
            22,
            Signature::new(3, 19),
        );
        assert!(g.ok);
        assert_eq!(g.index, Some(int(27)));
        let e8 = lat("E8");
        let g = glue_determinant_check(&e8, &e8.rescale_i64(-1).unwrap(), 16, Signature::new(8, 8));
        assert_eq!((g.ok, g.index), (true, Some(int(1))));
        let a2 = lat("A2");
        let g = glue_determinant_check(&a2, &a2, 4, Signature::new(4, 0));
        assert_eq!((g.ok, g.index), (true, Some(int(3))));
        let g = glue_determinant_check(&a2, &a2, 5, Signature::new(4, 0));
        assert!(!g.ok && !g.rank_ok);
        let g = glue_determinant_check(&a2, &lat("A1"), 3, Signature::new(3, 0));
        assert!(!g.ok && !g.square_ok);
    }

    #[test]
    fn scaled_lattices() {
        let third = Matrix::from_rows(&[
            vec![Rational::new(int(2), int(3)), Rational::new(int(-1), int(3))],
            vec![Rational::new(int(-1), int(3)), Rational::new(int(2), int(3))],
        ]);
        let s = ScaledLattice::from_rational_gram(&third).unwrap();
        assert_eq!(s.scale, Rational::new(int(1), int(3)));
        assert_eq!(s.lattice, lat("A2"));
        assert!(s.integral().is_none());
        assert_eq!(s.fingerprint(), Err(LatticeError::NotIntegral));
        let back = s.rescale(&Rational::from_integer(int(3))).unwrap();
        assert_eq!(back.integral().unwrap(), lat("A2"));
    }

    #[test]
    fn fingerprints() {
        let f = lat("E6").fingerprint();
        assert_eq!(f.rank, 6);
        assert!(f.even);
        assert_eq!(f.det, int(3));
        assert_eq!(f.signature, Signature::new(6, 0));
        assert_eq!(f.counts, Some([72, 270, 720]));
        let f = lat("U").fingerprint();
        assert_eq!(
            (f.rank, f.even, f.det.clone(), f.signature, f.counts),
            (2, true, int(-1), Signature::new(1, 1), None)
        );
        assert_eq!(lat("E6(-1)").fingerprint().counts, Some([72, 270, 720]));
    }

    #[test]
    fn root_counts() {
        assert_eq!(lat("A2").root_count(&int(2)).unwrap(), 6);
        assert_eq!(lat("E6").root_count(&int(2)).unwrap(), 72);
        assert_eq!(lat("E8").root_count(&int(2)).unwrap(), 240);
        assert_eq!(lat("U").root_count(&int(2)), Err(LatticeError::NotPositiveDefinite));
        assert_eq!(lat("A2").root_count(&int(3)), Err(LatticeError::BadNorm(int(3))));
    }
}
