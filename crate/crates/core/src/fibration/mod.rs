//! The isotrivial elliptic fibration attached to F = X0³F3(X1,X2) + F6(X1,X2):
//! admissibility of the pencil, intersections with lines through p = [1:0:0],
//! singular fibers, the trivial lattice and the surrounding lattice checks.

mod divisors;
mod forms;
mod kodaira;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{int, parse_rational_at, ParseNumberError, Rational};
use crate::lattices::{
    disc_forms_opposite, k3_lattice, parse_lattice_expr, IntegerLattice, LatticeError, LatticeName, Signature,
};

pub use divisors::{canonical_class_check, CanonicalClassReport, DivisorClass};
pub use forms::{resultant, resultant_coeffs, BinaryForm, UniPoly};
pub use kodaira::{kodaira_type, KodairaType, Order};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FibrationError {
    #[error("binary form is identically zero")]
    ZeroForm,
    #[error("expected a form of degree {expected}, got degree {got}")]
    Degree { expected: usize, got: usize },
    #[error("pencil is not admissible: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidPencil(Vec<PencilDefect>),
    #[error("vanishing orders a:{ord_a}, b:{ord_b}, disc:{ord_disc} are inconsistent with disc = 4a^3 + 27b^2")]
    InconsistentOrders { ord_a: String, ord_b: String, ord_disc: u32 },
    #[error("non-minimal Weierstrass model (ord a = {ord_a}, ord b = {ord_b})")]
    NonMinimal { ord_a: String, ord_b: String },
    #[error("unknown fiber type `{0}`")]
    UnknownFiberType(String),
    #[error("Euler numbers sum to {0}, expected 24")]
    EulerSum(u32),
    #[error("the point [0:0] is not a point of the line")]
    ZeroPoint,
    #[error("expected a point `a1:a2` at position {pos}, got `{token}`")]
    BadPoint { token: String, pos: usize },
    #[error(transparent)]
    Number(#[from] ParseNumberError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Why a pair (F3, F6) fails the admissibility condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PencilDefect {
    F3NotSquarefree,
    F6NotSquarefree,
    CommonRoot,
}

impl fmt::Display for PencilDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PencilDefect::F3NotSquarefree => "F3 has a multiple root",
            PencilDefect::F6NotSquarefree => "F6 has a multiple root",
            PencilDefect::CommonRoot => "F3 and F6 have a common root",
        })
    }
}

/// A pair (F3, F6) with F3·F6 squarefree, so that p is the only singular
/// point of the sextic X0³F3 + F6 = 0 and it is a D4 point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PencilRepr", into = "PencilRepr")]
pub struct SexticPencil {
    f3: BinaryForm,
    f6: BinaryForm,
}

#[derive(Serialize, Deserialize)]
struct PencilRepr {
    f3: BinaryForm,
    f6: BinaryForm,
}

impl From<SexticPencil> for PencilRepr {
    fn from(p: SexticPencil) -> Self {
        PencilRepr { f3: p.f3, f6: p.f6 }
    }
}

impl TryFrom<PencilRepr> for SexticPencil {
    type Error = FibrationError;
    fn try_from(r: PencilRepr) -> Result<Self, Self::Error> {
        validate_pencil(&r.f3, &r.f6)
    }
}

impl SexticPencil {
    pub fn f3(&self) -> &BinaryForm {
        &self.f3
    }

    pub fn f6(&self) -> &BinaryForm {
        &self.f6
    }
}

pub fn validate_pencil(f3: &BinaryForm, f6: &BinaryForm) -> Result<SexticPencil, FibrationError> {
    if f3.degree() != 3 {
        return Err(FibrationError::Degree { expected: 3, got: f3.degree() });
    }
    if f6.degree() != 6 {
        return Err(FibrationError::Degree { expected: 6, got: f6.degree() });
    }
    let mut defects = Vec::new();
    if !f3.is_squarefree() {
        defects.push(PencilDefect::F3NotSquarefree);
    }
    if !f6.is_squarefree() {
        defects.push(PencilDefect::F6NotSquarefree);
    }
    if resultant(f3, f6).is_zero() {
        defects.push(PencilDefect::CommonRoot);
    }
    if defects.is_empty() {
        Ok(SexticPencil { f3: f3.clone(), f6: f6.clone() })
    } else {
        Err(FibrationError::InvalidPencil(defects))
    }
}

/// Parses `a1:a2` with rational coordinates.
pub fn parse_point(src: &str) -> Result<(Rational, Rational), FibrationError> {
    let (x, y) = src.split_once(':').ok_or_else(|| FibrationError::BadPoint { token: src.to_string(), pos: 0 })?;
    let a1 = parse_rational_at(x, 0)?;
    let a2 = parse_rational_at(y, x.len() + 1)?;
    if a1.is_zero() && a2.is_zero() {
        return Err(FibrationError::ZeroPoint);
    }
    Ok((a1, a2))
}

/// Intersection of Z(F) with the line through p and [0:a1:a2].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineIntersection {
    pub at_p: usize,
    /// Multiplicities at the other intersection points, largest first.
    pub others: Vec<usize>,
    /// `at_p` followed by `others`.
    pub partition: Vec<usize>,
}

/// Restricts F to the line {[X0 : λa1 : λa2]}: the binary sextic
/// F3(a)·X0³λ³ + F6(a)·λ⁶ in (X0, λ), whose root λ = 0 is p.
pub fn line_intersection_multiplicities(pencil: &SexticPencil, a: &(Rational, Rational)) -> LineIntersection {
    let c3 = pencil.f3.eval(&a.0, &a.1);
    let c6 = pencil.f6.eval(&a.0, &a.1);
    let z = Rational::zero();
    // coefficients of X0^{6−k} λ^k
    let g = BinaryForm::new(vec![z.clone(), z.clone(), z.clone(), c3, z.clone(), z, c6])
        .expect("F3, F6 have no common root");
    let at_p = g.coeffs().iter().take_while(|c| c.is_zero()).count();
    // remaining roots: G / λ^{at_p} has no root at λ = 0
    let rest = BinaryForm::new(g.coeffs()[at_p..].to_vec()).expect("nonzero");
    let mut others = rest.multiplicity_profile();
    if rest.degree() == 0 {
        others.clear();
    }
    let mut partition = vec![at_p];
    partition.extend(others.iter().copied());
    LineIntersection { at_p, others, partition }
}

/// b = F3²·F6 in y² = x³ + b(t); a ≡ 0.
pub fn weierstrass_b(pencil: &SexticPencil) -> BinaryForm {
    pencil.f3.pow(2).mul(&pencil.f6)
}

/// One group of singular fibers: the roots of `factor`, all of the same type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberEntry {
    pub factor: BinaryForm,
    pub ord_b: u32,
    pub ord_disc: u32,
    pub kodaira: KodairaType,
    pub euler_number: u32,
    /// Number of points of ℙ¹(ℚ̄) cut out by `factor`.
    pub roots: usize,
    /// Lattice of the fiber components missing the zero section, e.g. `A2(-1)`.
    pub contribution: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSurvey {
    pub entries: Vec<FiberEntry>,
    pub euler_sum: u32,
}

impl FiberSurvey {
    /// (type, number of fibers), sorted by type.
    pub fn type_counts(&self) -> Vec<(KodairaType, usize)> {
        let mut m = std::collections::BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.kodaira).or_insert(0) += e.roots;
        }
        m.into_iter().collect()
    }

    pub fn table(&self) -> String {
        let mut rows = vec![[
            "factor".to_string(),
            "roots".into(),
            "ord b".into(),
            "ord disc".into(),
            "type".into(),
            "euler".into(),
            "lattice".into(),
        ]];
        for e in &self.entries {
            rows.push([
                e.factor.to_string(),
                e.roots.to_string(),
                e.ord_b.to_string(),
                e.ord_disc.to_string(),
                e.kodaira.to_string(),
                e.euler_number.to_string(),
                e.contribution.clone().unwrap_or_else(|| "-".into()),
            ]);
        }
        let widths: Vec<usize> = (0..7).map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for r in &rows {
            let cells: Vec<String> = r.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
            out.push_str(cells.join("  ").trim_end());
            out.push('\n');
        }
        out.push_str(&format!("euler sum: {}\n", self.euler_sum));
        out
    }
}

/// Splits squarefree factors of `b` off into rational linear factors where
/// possible, so entries are as fine as rational root finding allows.
fn split_rational(factor: &BinaryForm) -> Vec<BinaryForm> {
    let k = factor.degree();
    if k <= 1 {
        return vec![factor.clone()];
    }
    let f = factor.dehomogenize();
    let Some(roots) = f.rational_roots() else {
        return vec![factor.clone()];
    };
    let mut rest = f;
    let mut out = Vec::new();
    for r in &roots {
        let lin = UniPoly::linear_root(r);
        rest = rest.div_rem(&lin).0;
        out.push(BinaryForm::homogenize(&lin, 1).expect("linear"));
    }
    if let Some(d) = rest.degree().filter(|&d| d > 0) {
        out.push(BinaryForm::homogenize(&rest.monic(), d).expect("fits"));
    }
    out
}

pub fn fiber_survey(pencil: &SexticPencil) -> Result<FiberSurvey, FibrationError> {
    let b = weierstrass_b(pencil);
    let mut entries = Vec::new();
    for (factor, mult) in b.squarefree_decomposition() {
        let ord_b = mult as u32;
        let ord_disc = 2 * ord_b;
        let kodaira = kodaira_type(None, Some(ord_b), ord_disc)?;
        for piece in split_rational(&factor) {
            entries.push(FiberEntry {
                roots: piece.degree(),
                factor: piece,
                ord_b,
                ord_disc,
                kodaira,
                euler_number: kodaira.euler_number(),
                contribution: kodaira.lattice_label().map(|(n, r)| lattice_label_string(n, r)),
            });
        }
    }
    entries.sort_by(|x, y| {
        (y.ord_b, y.roots).cmp(&(x.ord_b, x.roots)).then_with(|| x.factor.coeffs().cmp(y.factor.coeffs()))
    });
    let euler_sum = entries.iter().map(|e| e.euler_number * e.roots as u32).sum();
    if euler_sum != 24 {
        return Err(FibrationError::EulerSum(euler_sum));
    }
    Ok(FiberSurvey { entries, euler_sum })
}

fn lattice_label_string(name: LatticeName, rank: usize) -> String {
    let letter = match name {
        LatticeName::A => "A",
        LatticeName::D => "D",
        LatticeName::E => "E",
        LatticeName::U => "U",
    };
    format!("{letter}{rank}(-1)")
}

/// U ⊕ (contributions of all reducible fibers).
pub fn trivial_lattice(survey: &FiberSurvey) -> Result<IntegerLattice, FibrationError> {
    let mut parts = vec![IntegerLattice::named(LatticeName::U, 2)?];
    for e in &survey.entries {
        if let Some(label) = &e.contribution {
            let l = parse_lattice_expr(label)?;
            parts.extend(std::iter::repeat_n(l, e.roots));
        }
    }
    Ok(IntegerLattice::direct_sum(&parts)?)
}

/// Inner products of h = 3e + 4f − Σ(xᵢ + yᵢ) in U ⊕ A2(−1)³ with basis
/// (e, f, x₁, y₁, x₂, y₂, x₃, y₃).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmpleClassTable {
    pub h: Vec<i64>,
    pub h_squared: i64,
    pub h_dot_fiber: i64,
    pub h_dot_section: i64,
    pub h_dot_x: Vec<i64>,
    pub h_dot_y: Vec<i64>,
    /// zᵢ = f − xᵢ − yᵢ, the fiber components meeting the section.
    pub h_dot_z: Vec<i64>,
    /// h = 3s + 4f + Σzᵢ with s = e − f.
    pub decomposition_holds: bool,
}

impl AmpleClassTable {
    pub fn ok(&self) -> bool {
        self.h_squared == 18
            && self.h_dot_fiber == 3
            && self.h_dot_section == 1
            && self.h_dot_x.iter().chain(&self.h_dot_y).chain(&self.h_dot_z).all(|&v| v == 1)
            && self.decomposition_holds
    }
}

pub fn ample_class_table() -> AmpleClassTable {
    let p = parse_lattice_expr("U+A2(-1)^3").expect("well-formed");
    let basis = |i: usize| -> Vec<i64> { (0..8).map(|j| i64::from(i == j)).collect() };
    let h: Vec<i64> = vec![3, 4, -1, -1, -1, -1, -1, -1];
    let dot = |x: &[i64], y: &[i64]| -> i64 {
        let xs: Vec<_> = x.iter().map(|&v| int(v)).collect();
        let ys: Vec<_> = y.iter().map(|&v| int(v)).collect();
        i64::try_from(p.inner(&xs, &ys)).expect("small")
    };
    let e = basis(0);
    let f = basis(1);
    let s: Vec<i64> = e.iter().zip(&f).map(|(a, b)| a - b).collect();
    let z = |i: usize| -> Vec<i64> { (0..8).map(|j| f[j] - basis(2 + 2 * i)[j] - basis(3 + 2 * i)[j]).collect() };
    let mut recomposed: Vec<i64> = (0..8).map(|j| 3 * s[j] + 4 * f[j]).collect();
    for i in 0..3 {
        let zi = z(i);
        for j in 0..8 {
            recomposed[j] += zi[j];
        }
    }
    AmpleClassTable {
        h_squared: dot(&h, &h),
        h_dot_fiber: dot(&h, &f),
        h_dot_section: dot(&h, &s),
        h_dot_x: (0..3).map(|i| dot(&h, &basis(2 + 2 * i))).collect(),
        h_dot_y: (0..3).map(|i| dot(&h, &basis(3 + 2 * i))).collect(),
        h_dot_z: (0..3).map(|i| dot(&h, &z(i))).collect(),
        decomposition_holds: recomposed == h,
        h,
    }
}

/// Invariants forced on the orthogonal complement of P in the K3 lattice,
/// compared with a candidate lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementGenusReport {
    pub expected_rank: usize,
    pub expected_signature: Signature,
    pub candidate_rank: usize,
    pub candidate_signature: Signature,
    pub rank_ok: bool,
    pub signature_ok: bool,
    pub determinant_ok: bool,
    pub disc_forms_opposite: bool,
}

impl ComplementGenusReport {
    pub fn ok(&self) -> bool {
        self.rank_ok && self.signature_ok && self.determinant_ok && self.disc_forms_opposite
    }
}

/// Compares the complement of `p` in U³ ⊕ E8(−1)² against `candidate`
/// (A2 ⊕ E6(−1)² by default in the CLI).
pub fn complement_genus_check(
    p: &IntegerLattice,
    candidate: &IntegerLattice,
) -> Result<ComplementGenusReport, FibrationError> {
    let k3 = k3_lattice();
    let ks = k3.signature();
    let ps = p.signature();
    let expected_rank = k3.rank().saturating_sub(p.rank());
    let expected_signature = Signature::new(ks.plus.saturating_sub(ps.plus), ks.minus.saturating_sub(ps.minus));
    let qp = p.discriminant_form()?;
    let qc = candidate.discriminant_form()?;
    Ok(ComplementGenusReport {
        expected_rank,
        expected_signature,
        candidate_rank: candidate.rank(),
        candidate_signature: candidate.signature(),
        rank_ok: candidate.rank() == expected_rank,
        signature_ok: candidate.signature() == expected_signature,
        determinant_ok: p.det().magnitude() == candidate.det().magnitude(),
        disc_forms_opposite: disc_forms_opposite(&qp, &qc)?,
    })
}

/// Möbius reparametrizations used to test invariance of fiber data.
pub fn sample_reparametrizations() -> Vec<[[Rational; 2]; 2]> {
    let r = |n: i64, d: i64| Rational::new(int(n), int(d));
    vec![
        [[r(0, 1), r(1, 1)], [r(1, 1), r(0, 1)]],
        [[r(1, 1), r(2, 1)], [r(-1, 3), r(1, 1)]],
        [[r(2, 1), r(-1, 2)], [r(5, 1), r(3, 1)]],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn bf(c: &[i64]) -> BinaryForm {
        BinaryForm::from_i64(c).unwrap()
    }

    fn standard() -> SexticPencil {
        validate_pencil(&bf(&[1, 0, 0, 1]), &bf(&[1, 0, 0, 0, 0, 0, 1])).unwrap()
    }

    #[test]
    fn pencil_validation() {
        standard();
        let e = validate_pencil(&bf(&[1, 0, 0, 1]), &bf(&[0, 0, 1, 0, 0, 0, 0])).unwrap_err();
        assert_eq!(e, FibrationError::InvalidPencil(vec![PencilDefect::F6NotSquarefree]));
        let e = validate_pencil(&bf(&[1, 0, 0, -1]), &bf(&[1, 0, 0, 0, 0, 0, -1])).unwrap_err();
        assert_eq!(e, FibrationError::InvalidPencil(vec![PencilDefect::CommonRoot]));
        let e = validate_pencil(&bf(&[0, 1, 0, 0]), &bf(&[0, 0, 1, 0, 0, 0, 0])).unwrap_err();
        assert_eq!(
            e,
            FibrationError::InvalidPencil(vec![
                PencilDefect::F3NotSquarefree,
                PencilDefect::F6NotSquarefree,
                PencilDefect::CommonRoot
            ])
        );
        assert!(matches!(
            validate_pencil(&bf(&[1, 1]), &bf(&[1, 0, 0, 0, 0, 0, 1])),
            Err(FibrationError::Degree { .. })
        ));
    }

    #[test]
    fn lines() {
        let p = standard();
        let on_f3 = line_intersection_multiplicities(&p, &(rat(1, 1), rat(-1, 1)));
        assert_eq!(on_f3.partition, vec![6]);
        let generic = line_intersection_multiplicities(&p, &(rat(1, 1), rat(0, 1)));
        assert_eq!(generic.partition, vec![3, 1, 1, 1]);
        let split = validate_pencil(&bf(&[0, 1, -1, 0]), &bf(&[2, 1, -27, -13, 85, 36, -36])).unwrap();
        let on_f6 = line_intersection_multiplicities(&split, &(rat(1, 1), rat(2, 1)));
        assert_eq!(on_f6.partition, vec![3, 3]);
        // [0:1] is a root of F3 at infinity of the affine chart
        let inf = line_intersection_multiplicities(&split, &(rat(0, 1), rat(1, 1)));
        assert_eq!(inf.partition, vec![6]);
    }

    #[test]
    fn weierstrass_profile() {
        let b = weierstrass_b(&standard());
        assert_eq!(b.multiplicity_profile(), vec![2, 2, 2, 1, 1, 1, 1, 1, 1]);
        for m in sample_reparametrizations() {
            assert_eq!(b.substitute(m).multiplicity_profile(), vec![2, 2, 2, 1, 1, 1, 1, 1, 1]);
        }
    }

    #[test]
    fn survey_and_trivial_lattice() {
        let s = fiber_survey(&standard()).unwrap();
        assert_eq!(s.euler_sum, 24);
        assert_eq!(s.type_counts(), vec![(KodairaType::II, 6), (KodairaType::IV, 3)]);
        let t = trivial_lattice(&s).unwrap();
        assert_eq!(t.fingerprint(), parse_lattice_expr("U+A2(-1)^3").unwrap().fingerprint());
        assert_eq!(t.signature(), Signature::new(1, 7));
        // the split pencil has all nine roots rational
        let split = validate_pencil(&bf(&[0, 1, -1, 0]), &bf(&[2, 1, -27, -13, 85, 36, -36])).unwrap();
        let s = fiber_survey(&split).unwrap();
        assert_eq!(s.entries.len(), 9);
        assert!(s.table().contains("A2(-1)"));
    }

    #[test]
    fn ample_table() {
        let t = ample_class_table();
        assert!(t.ok(), "{t:?}");
        assert_eq!(t.h_squared, 18);
    }

    #[test]
    fn complement_invariants() {
        let p = parse_lattice_expr("U+A2(-1)^3").unwrap();
        let q = parse_lattice_expr("A2+E6(-1)^2").unwrap();
        let r = complement_genus_check(&p, &q).unwrap();
        assert!(r.ok());
        assert_eq!((r.expected_rank, r.expected_signature), (14, Signature::new(2, 12)));
        let wrong = parse_lattice_expr("A2(-1)+E6^2").unwrap();
        assert!(!complement_genus_check(&p, &wrong).unwrap().ok());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("1:-1").unwrap(), (rat(1, 1), rat(-1, 1)));
        assert_eq!(parse_point("0:0"), Err(FibrationError::ZeroPoint));
        assert!(matches!(parse_point("1"), Err(FibrationError::BadPoint { .. })));
        assert!(matches!(parse_point("1:x"), Err(FibrationError::Number(ParseNumberError::Invalid { pos: 2, .. }))));
    }

    #[test]
    fn serde_pencil() {
        let s = serde_json::to_string(&standard()).unwrap();
        assert_eq!(s, r#"{"f3":["1","0","0","1"],"f6":["1","0","0","0","0","0","1"]}"#);
        let back: SexticPencil = serde_json::from_str(&s).unwrap();
        assert_eq!(back, standard());
        assert!(serde_json::from_str::<SexticPencil>(
            r#"{"f3":["1","0","0","-1"],"f6":["1","0","0","0","0","0","-1"]}"#
        )
        .is_err());
    }
}
