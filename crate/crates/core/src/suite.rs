//! The reproduction suite: twelve self-contained checks, each combining the
//! library operations with the expected values they are meant to reproduce.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::arith::{det_field, int, rat, Matrix, Rational};
use crate::covers::{
    cw_multiplicities, dm_signature, eigenspace_hodge_dims, genus_riemann_hurwitz, git_z_weight, kunneth_invariant_dim,
    parse_weights, random_branch_data, sigma_int_check, standard_weights, BranchData,
};
use crate::eisenstein::{
    eigenspace_hermitian, herm_gram_from_generators, mu3_checks, omega_check, parse_hermitian_expr, real_form, CycNum,
    HermitianLattice,
};
use crate::fibration::{
    ample_class_table, canonical_class_check, complement_genus_check, fiber_survey, line_intersection_multiplicities,
    parse_point, trivial_lattice, KodairaType,
};
use crate::fixtures::{lambda1_generators, pencil_named, standard_pencil};
use crate::identity::identity_checks;
use crate::lattices::{
    disc_forms_opposite, glue_determinant_check, k3_lattice, smith_normal_form, transcendental_lattice_model,
    trivial_lattice_embedding, trivial_lattice_model, IntegerLattice, Signature,
};

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Outcome of one criterion; `details` has one line per elementary check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub index: usize,
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {:>2} {}", if self.passed { "PASS" } else { "FAIL" }, self.index, self.name)
    }
}

#[derive(Default)]
struct Checks {
    details: Vec<String>,
    ok: bool,
}

impl Checks {
    fn new() -> Self {
        Self { details: Vec::new(), ok: true }
    }

    fn check(&mut self, label: impl Into<String>, cond: bool) {
        let label = label.into();
        self.ok &= cond;
        self.details.push(format!("{} {label}", if cond { "ok  " } else { "FAIL" }));
    }

    fn note(&mut self, label: impl Into<String>) {
        self.details.push(format!("note {}", label.into()));
    }

    fn finish(self, index: usize, name: &str) -> CriterionResult {
        CriterionResult { index, name: name.to_string(), passed: self.ok, details: self.details }
    }
}

pub const CRITERIA: [&str; 12] = [
    "Chevalley-Weil multiplicities and genus",
    "Deligne-Mostow signature",
    "half-integrality condition",
    "lattice pair and gluing",
    "Eisenstein lattices and real forms",
    "fiber survey of the standard pencil",
    "line intersection partitions",
    "divisor calculus and ample class",
    "birational identities",
    "Kunneth dimension and Hodge eigenspaces",
    "GIT weights",
    "Smith form and root counts",
];

/// Runs criterion `index` (1-based). `seed` drives the randomized checks.
pub fn run_criterion(index: usize, seed: u64) -> Option<CriterionResult> {
    let name = CRITERIA.get(index.checked_sub(1)?)?;
    let checks = match index {
        1 => chevalley_weil(),
        2 => deligne_mostow(seed),
        3 => sigma_int(),
        4 => lattice_pair(),
        5 => eisenstein(),
        6 => fibration(),
        7 => lines(),
        8 => divisors(),
        9 => identities(),
        10 => kunneth(),
        11 => git_weights(),
        _ => kernels(seed),
    };
    Some(checks.finish(index, name))
}

pub fn run_suite(seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).filter_map(|i| run_criterion(i, seed)).collect()
}

fn standard_branch() -> BranchData {
    BranchData::from_weights(&standard_weights()).expect("valid weights")
}

fn chevalley_weil() -> Checks {
    let mut c = Checks::new();
    let b = standard_branch();
    let cw = cw_multiplicities(&b);
    c.check(
        format!("multiplicities {:?} = [0, 6, 4, 2, 3, 1]", cw.multiplicities),
        cw.multiplicities == [0, 6, 4, 2, 3, 1],
    );
    c.check(format!("sum {} = 16", cw.genus), cw.genus == 16);
    let rh = genus_riemann_hurwitz(&b);
    c.check(format!("Riemann-Hurwitz genus {rh} = 16"), rh == 16);
    c
}

fn deligne_mostow(seed: u64) -> Checks {
    let mut c = Checks::new();
    let s = dm_signature(&standard_branch());
    c.check(format!("standard weights: {s:?} = (1, 6)"), s == Ok((1, 6)));
    for src in ["2/5,2/5,2/5,2/5,2/5", "1/3,1/3,1/3,1/3,1/3,1/3", "1/4,1/4,1/4,1/4,1/4,1/4,1/4,1/4"] {
        let w = parse_weights(src).expect("well-formed");
        let n = w.len() as i64;
        let sigma = sigma_int_check(&w).map(|r| r.ok).unwrap_or(false);
        let sig = BranchData::from_weights(&w).and_then(|b| dm_signature(&b));
        c.check(
            format!("({src}): satisfies the condition, signature {sig:?} = (1, {})", n - 3),
            sigma && sig == Ok((1, n - 3)),
        );
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut good = 0;
    for _ in 0..50 {
        let b = random_branch_data(&mut rng);
        let n = b.len() as i64;
        if let Ok((p, q)) = eigenspace_hodge_dims(&b, 1) {
            if p + q == n - 2 && dm_signature(&b) == Ok((1, n - 3)) {
                good += 1;
            }
        }
    }
    c.check(format!("{good}/50 random tuples with p + q = N - 2"), good == 50);
    c
}

fn sigma_int() -> Checks {
    let mut c = Checks::new();
    let ok = sigma_int_check(&standard_weights()).map(|r| r.ok);
    c.check("standard weights pass", ok == Ok(true));
    let w = parse_weights("2/7,2/7,2/7,2/7,2/7,4/7").expect("well-formed");
    match sigma_int_check(&w) {
        Ok(r) => {
            let first = r.violations.first().map(|v| format!("({}, {}) -> {}", v.i, v.j, v.value)).unwrap_or_default();
            c.check(
                format!("(2/7 x5, 4/7) fails, {} violating pairs, first {first}", r.violations.len()),
                !r.ok && !r.violations.is_empty(),
            );
        }
        Err(e) => c.check(format!("(2/7 x5, 4/7): {e}"), false),
    }
    c
}

fn lattice_pair() -> Checks {
    let mut c = Checks::new();
    let p = trivial_lattice_model();
    let q = transcendental_lattice_model();
    c.check(format!("det U+A2(-1)^3 = {}", p.det()), p.det() == int(-27));
    c.check(format!("det A2+E6(-1)^2 = {}", q.det()), q.det() == int(27));
    c.check(
        format!("signatures {} / {}", p.signature(), q.signature()),
        p.signature() == Signature::new(1, 7) && q.signature() == Signature::new(2, 12),
    );
    let g = glue_determinant_check(&p, &q, 22, Signature::new(3, 19));
    c.check(
        format!("glue index {:?} in rank 22, signature (3,19)", g.index.as_ref().map(BigInt::to_string)),
        g.ok && g.index == Some(int(27)),
    );
    let opposite = p.discriminant_form().and_then(|a| q.discriminant_form().and_then(|b| disc_forms_opposite(&a, &b)));
    c.check("discriminant forms opposite", opposite == Ok(true));
    let k3 = k3_lattice();
    c.check(
        "ambient U^3+E8(-1)^2 is even unimodular of signature (3,19)",
        k3.is_unimodular() && k3.is_even() && k3.signature() == Signature::new(3, 19),
    );
    match k3.orthogonal_complement(&trivial_lattice_embedding()) {
        Ok(t) => c.check(
            format!("complement of the embedded trivial lattice: {}", t.fingerprint()),
            t.rank() == 14 && t.signature() == Signature::new(2, 12) && t.det().abs() == int(27),
        ),
        Err(e) => c.check(format!("complement: {e}"), false),
    }
    c
}

fn eisenstein() -> Checks {
    let mut c = Checks::new();
    let s3 = CycNum::sqrt_minus_3();
    let three = CycNum::from(3);
    let printed = Matrix::from_rows(&[
        vec![three.clone(), CycNum::zero(), s3.clone()],
        vec![CycNum::zero(), three.clone(), s3.clone()],
        vec![-s3.clone(), -s3, three],
    ]);
    let gram = herm_gram_from_generators(&lambda1_generators()).map(|h| h.gram().clone());
    c.check("Hermitian Gram of the generator matrix", gram.as_ref() == Ok(&printed));

    let e = real_form(&HermitianLattice::eisenstein());
    let a2 = IntegerLattice::make_named("A", 2).expect("A2").gram().to_rational();
    c.check("3 * real form of E = A2", e.gram().scale(&rat(3, 1)) == a2);

    let e6 = IntegerLattice::make_named("E", 6).expect("E6").fingerprint();
    let l1 = real_form(&HermitianLattice::lambda1()).lattice().ok().and_then(|s| s.integral()).map(|l| l.fingerprint());
    c.check(
        format!(
            "real form of Lambda1 has the E6 fingerprint ({})",
            l1.as_ref().map_or("not integral".into(), ToString::to_string)
        ),
        l1.as_ref() == Some(&e6) && e6.counts.is_some_and(|k| k[0] == 72),
    );

    let total = parse_hermitian_expr("E(-3)+Lambda1^2").expect("well-formed");
    let r = real_form(&total);
    let mu3 = mu3_checks(&r);
    c.check(format!("mu3 on the real form of E(-3)+Lambda1^2: {mu3:?}"), mu3.all());

    let expected = transcendental_lattice_model().fingerprint();
    let actual = r.lattice().ok().and_then(|s| s.integral());
    let sign = match &actual {
        Some(l) if l.fingerprint() == expected => Some(1),
        Some(l) if l.rescale_i64(-1).map(|m| m.fingerprint()) == Ok(expected.clone()) => Some(-1),
        _ => None,
    };
    c.check(format!("real form matches A2+E6(-1)^2 up to overall sign (sign {sign:?})"), sign.is_some());

    match eigenspace_hermitian(&r) {
        Ok(es) => c.check(
            format!(
                "eigenspace rank {}, signature {}, unordered {:?}",
                es.hermitian.rank(),
                es.signature,
                es.unordered_signature()
            ),
            es.hermitian.rank() == 7 && es.unordered_signature() == (1, 6),
        ),
        Err(err) => c.check(format!("eigenspace: {err}"), false),
    }
    let omega = omega_check();
    c.check(
        format!("omega is a zeta6-eigenvector, xi(omega, omega-bar) = {}", omega.xi_omega_omegabar),
        omega.eigenvector && omega.sign != 0,
    );
    c.note(format!("xi(omega, omega-bar) = {} * sqrt(-3)", omega.sign));
    c
}

fn fibration() -> Checks {
    let mut c = Checks::new();
    let pencil = standard_pencil().pencil;
    let survey = match fiber_survey(&pencil) {
        Ok(s) => s,
        Err(e) => {
            c.check(format!("fiber survey: {e}"), false);
            return c;
        }
    };
    let counts = survey.type_counts();
    let shown: Vec<String> = counts.iter().map(|(t, n)| format!("{t} x{n}")).collect();
    c.check(format!("fiber types {}", shown.join(", ")), counts == [(KodairaType::II, 6), (KodairaType::IV, 3)]);
    c.check(format!("Euler sum {}", survey.euler_sum), survey.euler_sum == 24);
    match trivial_lattice(&survey) {
        Ok(t) => c.check(
            format!("trivial lattice: {}", t.fingerprint()),
            t.fingerprint() == trivial_lattice_model().fingerprint(),
        ),
        Err(e) => c.check(format!("trivial lattice: {e}"), false),
    }
    match complement_genus_check(&trivial_lattice_model(), &transcendental_lattice_model()) {
        Ok(r) => c.check(
            format!(
                "complement rank {}, signature {}, opposite forms {}",
                r.expected_rank, r.expected_signature, r.disc_forms_opposite
            ),
            r.ok(),
        ),
        Err(e) => c.check(format!("complement: {e}"), false),
    }
    c
}

fn lines() -> Checks {
    let mut c = Checks::new();
    let cases = [
        ("standard", "on_f3", vec![6]),
        ("standard", "generic", vec![3, 1, 1, 1]),
        ("split", "on_f3", vec![6]),
        ("split", "on_f6", vec![3, 3]),
        ("split", "generic", vec![3, 1, 1, 1]),
    ];
    for (name, label, expected) in cases {
        let Some(fix) = pencil_named(name) else {
            c.check(format!("pencil {name} missing"), false);
            continue;
        };
        let got = fix
            .points
            .get(label)
            .and_then(|p| parse_point(p).ok())
            .map(|a| line_intersection_multiplicities(&fix.pencil, &a).partition);
        c.check(format!("{name} pencil, {label} point: {got:?}"), got.as_ref() == Some(&expected));
    }
    c
}

fn divisors() -> Checks {
    let mut c = Checks::new();
    let k = canonical_class_check();
    c.check(format!("2K_R + K^ + E^_p = {}", k.twice_cover_canonical), k.twice_cover_canonical.is_zero());
    c.check("K_R in strict transforms", k.k_r_in_strict_terms);
    c.check("branch divisor in strict transforms", k.branch_in_strict_terms);
    c.check("pullback of the sextic", k.sextic_pullback);
    c.check(format!("E^_p^2 = {}, its preimage has square {}", k.e_p_hat_square, k.e_p_hat_cover_square), k.ok());
    let h = ample_class_table();
    c.check(format!("h^2 = {}, h.f = {}, h.s = {}", h.h_squared, h.h_dot_fiber, h.h_dot_section), h.ok());
    c
}

fn identities() -> Checks {
    let mut c = Checks::new();
    for chk in identity_checks() {
        let what = if chk.expected { "holds" } else { "fails as expected" };
        let label = if chk.passed() {
            format!("{}: {what}", chk.name)
        } else {
            format!("{}: residual {}", chk.name, chk.normal_form)
        };
        c.check(label, chk.passed());
    }
    c
}

fn kunneth() -> Checks {
    let mut c = Checks::new();
    let b = standard_branch();
    let k = kunneth_invariant_dim(&b);
    c.check(format!("Kunneth invariant dimension {k:?}"), k == Ok(14));
    let h = eigenspace_hodge_dims(&b, 5);
    c.check(format!("Hodge dims of the rho_5 eigenspace {h:?}"), h == Ok((1, 6)));
    c
}

fn git_weights() -> Checks {
    let mut c = Checks::new();
    c.check("weight 0 on (2j, j), j = 0..10", (0..=10).all(|j| git_z_weight(2 * j, j) == 0));
    let off: Vec<(i64, i64)> =
        (0..=12).flat_map(|i| (0..=6).map(move |j| (i, j))).filter(|&(i, j)| i != 2 * j).collect();
    c.check(format!("nonzero at {} points off the ray", off.len()), off.iter().all(|&(i, j)| git_z_weight(i, j) != 0));
    c
}

fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize) -> Matrix<BigInt> {
    let data = (0..rows * cols).map(|_| int(rng.gen_range(-9..=9))).collect();
    Matrix::from_vec(rows, cols, data)
}

fn is_unimodular(m: &Matrix<BigInt>) -> bool {
    det_field(&m.to_rational()).abs().is_one()
}

/// Random even positive definite Gram matrix of rank 1 to 3.
fn random_even_gram(rng: &mut StdRng) -> IntegerLattice {
    loop {
        let n = rng.gen_range(1..=3);
        let mut g = Matrix::<BigInt>::zeros(n, n);
        for i in 0..n {
            g.set(i, i, int(2 * rng.gen_range(1..=4)));
            for j in 0..i {
                let v = int(rng.gen_range(-2..=2));
                g.set(i, j, v.clone());
                g.set(j, i, v);
            }
        }
        if let Ok(l) = IntegerLattice::new(g) {
            if l.is_positive_definite() {
                return l;
            }
        }
    }
}

/// Box search: for positive definite G, |xᵢ| ≤ √(n·(G⁻¹)ᵢᵢ).
fn naive_count(l: &IntegerLattice, norm: &BigInt) -> u64 {
    let n = l.rank();
    let ginv = crate::arith::inverse(&l.gram().to_rational()).expect("nondegenerate");
    let bounds: Vec<i64> = (0..n)
        .map(|i| {
            let b = Rational::from_integer(norm.clone()) * ginv.get(i, i);
            let mut r = 0i64;
            while Rational::from_integer(int((r + 1) * (r + 1))) <= b {
                r += 1;
            }
            r
        })
        .collect();
    let mut x = bounds.iter().map(|b| -b).collect::<Vec<_>>();
    let mut count = 0;
    loop {
        let v: Vec<BigInt> = x.iter().map(|&a| int(a)).collect();
        if &l.inner(&v, &v) == norm {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            if x[i] < bounds[i] {
                x[i] += 1;
                break;
            }
            x[i] = -bounds[i];
            i += 1;
        }
    }
}

fn kernels(seed: u64) -> Checks {
    let mut c = Checks::new();
    let mut rng = StdRng::seed_from_u64(seed ^ 0x5eed);
    let mut good = 0;
    for _ in 0..200 {
        let (r, k) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m = random_matrix(&mut rng, r, k);
        let s = smith_normal_form(&m);
        let d = &s.diagonal;
        let diag_ok = (0..r).all(|i| (0..k).all(|j| i == j || d.get(i, j).is_zero()));
        let f = s.invariant_factors();
        let chain = f.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() })
            && f.iter().all(|x| !x.is_negative());
        if s.left.mul(&m).mul(&s.right) == *d && diag_ok && chain && is_unimodular(&s.left) && is_unimodular(&s.right) {
            good += 1;
        }
    }
    c.check(format!("{good}/200 Smith forms with U M V = D and unimodular U, V"), good == 200);
    let mut agree = 0;
    for _ in 0..20 {
        let l = random_even_gram(&mut rng);
        if [2, 4, 6].iter().all(|&k| l.root_count(&int(k)).ok() == Some(naive_count(&l, &int(k)))) {
            agree += 1;
        }
    }
    c.check(format!("{agree}/20 random Gram matrices with root counts matching a box search"), agree == 20);
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_counter_on_known_lattices() {
        let a2 = IntegerLattice::make_named("A", 2).unwrap();
        assert_eq!(naive_count(&a2, &int(2)), 6);
        let d4 = IntegerLattice::make_named("D", 4).unwrap();
        assert_eq!(naive_count(&d4, &int(2)), 24);
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(0, 1).is_none());
        assert!(run_criterion(13, 1).is_none());
    }

    #[test]
    fn cheap_criteria_pass() {
        for i in [1, 3, 7, 8, 10, 11] {
            let r = run_criterion(i, DEFAULT_SEED).unwrap();
            assert!(r.passed, "{r}: {:#?}", r.details);
        }
    }
}
