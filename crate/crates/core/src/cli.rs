//! Command-line front end. Exit codes: 0 success, 1 failed verification,
//! 2 usage or input error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{parse_int_at, Matrix};
use crate::covers::{
    cw_multiplicities, dm_signature, eigenspace_hodge_dims, genus_riemann_hurwitz, parse_weights, sigma_int_check,
    BranchData,
};
use crate::eisenstein::{
    eigenspace_hermitian, herm_gram_from_generators, mu3_checks, parse_hermitian_expr, real_form, CycNum,
    HermitianLattice,
};
use crate::fibration::{
    fiber_survey, line_intersection_multiplicities, parse_point, trivial_lattice, weierstrass_b, SexticPencil,
};
use crate::fixtures::pencil_named;
use crate::identity::identity_checks;
use crate::lattices::{
    glue_determinant_check, k3_lattice, parse_lattice_expr, trivial_lattice_embedding, IntegerLattice, Signature,
};
use crate::suite::{run_suite, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "dmk3", version, about = "Exact lattice, Eisenstein, cover and fibration computations")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Hermitian lattices over the Eisenstein integers.
    #[command(subcommand)]
    Eisenstein(EisensteinCmd),
    /// Cyclic covers of the line.
    #[command(subcommand)]
    Cw(CwCmd),
    /// The elliptic fibration of a sextic pencil.
    #[command(subcommand)]
    Fibration(FibrationCmd),
    /// Symbolic identities and the full reproduction suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Debug)]
struct LatticeInput {
    /// Lattice expression such as `U+A2(-1)^3`.
    expr: Option<String>,
    /// JSON file with `{"gram": [[...], ...]}`.
    #[arg(long, conflicts_with = "expr")]
    gram: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// Rank, signature, determinant, discriminant group and root counts.
    Info(LatticeInput),
    /// Orthogonal complement of the trivial lattice embedded in U^3+E8(-1)^2.
    Complement,
    /// Gluing arithmetic for two lattices inside a unimodular ambient.
    Glue {
        p: String,
        q: String,
        #[arg(long, default_value_t = 22)]
        rank: usize,
        /// Ambient signature `p,q`.
        #[arg(long, default_value = "3,19")]
        signature: String,
    },
}

#[derive(Args, Debug)]
struct HermitianInput {
    /// Expression such as `E(-3)+Lambda1^2`.
    expr: Option<String>,
    /// JSON file with `{"generators": [[...], ...]}` over Q(zeta3).
    #[arg(long, conflicts_with = "expr")]
    generators: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum EisensteinCmd {
    /// Hermitian Gram and the underlying real lattice.
    Realform(HermitianInput),
    /// Hermitian form on the zeta3-eigenspace of the real form.
    Eigenspace(HermitianInput),
    /// Checks on the action of zeta3 on the real form.
    Mu3(HermitianInput),
}

#[derive(Subcommand, Debug)]
enum CwCmd {
    /// Character multiplicities in the holomorphic one-forms.
    Multiplicities { weights: String },
    /// Half-integrality condition on pairs of weights.
    SigmaInt { weights: String },
    /// Unordered signature of the rho_1 eigenspace.
    Signature { weights: String },
}

#[derive(Args, Debug)]
struct PencilInput {
    /// Name of a shipped pencil.
    #[arg(long, default_value = "standard", conflicts_with = "file")]
    pencil: String,
    /// JSON file with `{"f3": [...], "f6": [...]}`.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum FibrationCmd {
    /// Singular fibers, Euler numbers and the trivial lattice.
    Survey(PencilInput),
    /// Intersection partition of the line through p and [0:a1:a2].
    Lines {
        #[command(flatten)]
        input: PencilInput,
        /// Points `a1:a2`; defaults to the pencil's labelled test points.
        #[arg(long = "point")]
        points: Vec<String>,
    },
    /// The Weierstrass coefficient b = f3^2 f6 and its root multiplicities.
    Weierstrass(PencilInput),
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Symbolic identities with negative controls.
    Identities,
    /// All twelve reproduction checks.
    Paper,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn read_json(path: &PathBuf) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// A command's result: text and JSON renderings plus the exit status.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Like [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                write!(out, "{}", o.text)
            };
            if written.is_err() {
                return 2;
            }
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Lattice(c) => lattice(c),
        Command::Eisenstein(c) => eisenstein(c),
        Command::Cw(c) => cw(c),
        Command::Fibration(c) => fibration(c),
        Command::Verify(VerifyCmd::Identities) => Ok(verify_identities()),
        Command::Verify(VerifyCmd::Paper) => Ok(verify_paper(cli.seed)),
    }
}

fn integer_cell(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(n) => parse_int_at(&n.to_string(), 0).map_err(input),
        Value::String(s) => parse_int_at(s, 0).map_err(input),
        other => Err(CliError::Input(format!("expected an integer, got {other}"))),
    }
}

fn lattice_from(inp: &LatticeInput) -> Result<IntegerLattice, CliError> {
    match (&inp.expr, &inp.gram) {
        (Some(e), _) => parse_lattice_expr(e).map_err(input),
        (None, Some(path)) => {
            let v = read_json(path)?;
            let rows = v
                .get("gram")
                .and_then(Value::as_array)
                .ok_or_else(|| CliError::Input("missing `gram` array".into()))?;
            let mut parsed = Vec::new();
            for row in rows {
                let cells = row.as_array().ok_or_else(|| CliError::Input("Gram rows must be arrays".into()))?;
                parsed.push(cells.iter().map(integer_cell).collect::<Result<Vec<_>, _>>()?);
            }
            if parsed.iter().any(|r| r.len() != parsed.len()) {
                return Err(CliError::Input("Gram matrix must be square".into()));
            }
            IntegerLattice::new(Matrix::from_rows(&parsed)).map_err(input)
        }
        (None, None) => Err(CliError::Input("give a lattice expression or --gram FILE".into())),
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn matrix_json<T: ToString + Clone>(m: &Matrix<T>) -> Value {
    json!(m.to_rows().iter().map(|r| strings(r)).collect::<Vec<_>>())
}

fn lattice_summary(l: &IntegerLattice) -> Result<(String, Value), CliError> {
    let f = l.fingerprint();
    let group = strings(&l.discriminant_group());
    let form = l.discriminant_form().map_err(input)?;
    let mut text = format!(
        "rank: {}\nsignature: {}\ndeterminant: {}\nparity: {}\n",
        f.rank,
        f.signature,
        f.det,
        if f.even { "even" } else { "odd" }
    );
    text.push_str(&format!(
        "discriminant group: {}\n",
        if group.is_empty() { "trivial".to_string() } else { format!("Z/{}", group.join(" + Z/")) }
    ));
    if let Some(c) = f.counts {
        text.push_str(&format!("vectors of norm 2/4/6: {}/{}/{}\n", c[0], c[1], c[2]));
    }
    let json = json!({
        "rank": f.rank,
        "signature": [f.signature.plus, f.signature.minus],
        "determinant": f.det.to_string(),
        "even": f.even,
        "discriminant_group": group,
        "discriminant_form": form,
        "norm_counts": f.counts,
    });
    Ok((text, json))
}

fn parse_signature(s: &str) -> Result<Signature, CliError> {
    let bad = || CliError::Input(format!("expected a signature `p,q`, got `{s}`"));
    let (p, q) = s.split_once(',').ok_or_else(bad)?;
    Ok(Signature::new(p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

fn lattice(c: &LatticeCmd) -> Result<Output, CliError> {
    match c {
        LatticeCmd::Info(inp) => {
            let l = lattice_from(inp)?;
            let (text, json) = lattice_summary(&l)?;
            Ok(Output::ok(text, json))
        }
        LatticeCmd::Complement => {
            let k3 = k3_lattice();
            let emb = trivial_lattice_embedding();
            let t = k3.orthogonal_complement(&emb).map_err(input)?;
            let (summary, js) = lattice_summary(&t)?;
            let text = format!("complement of U+A2(-1)^3 in U^3+E8(-1)^2\n{summary}");
            Ok(Output::ok(text, json!({ "complement": js, "gram": matrix_json(t.gram()) })))
        }
        LatticeCmd::Glue { p, q, rank, signature } => {
            let lp = parse_lattice_expr(p).map_err(input)?;
            let lq = parse_lattice_expr(q).map_err(input)?;
            let sig = parse_signature(signature)?;
            let g = glue_determinant_check(&lp, &lq, *rank, sig);
            let opposite = lp
                .discriminant_form()
                .and_then(|a| lq.discriminant_form().and_then(|b| crate::lattices::disc_forms_opposite(&a, &b)))
                .map_err(input)?;
            let index = g.index.as_ref().map(BigInt::to_string);
            let text = format!(
                "rank ok: {}\nsignature ok: {}\n|det P det Q| is a square: {}\nglue index: {}\ndiscriminant forms opposite: {}\n",
                g.rank_ok,
                g.signature_ok,
                g.square_ok,
                index.clone().unwrap_or_else(|| "-".into()),
                opposite
            );
            let json = json!({
                "rank_ok": g.rank_ok,
                "signature_ok": g.signature_ok,
                "square_ok": g.square_ok,
                "index": index,
                "forms_opposite": opposite,
            });
            Ok(Output { text, json, ok: g.ok && opposite })
        }
    }
}

#[derive(Deserialize)]
struct GeneratorFile {
    generators: Vec<Vec<CycNum>>,
}

fn hermitian_from(inp: &HermitianInput) -> Result<HermitianLattice, CliError> {
    match (&inp.expr, &inp.generators) {
        (Some(e), _) => parse_hermitian_expr(e).map_err(input),
        (None, Some(path)) => {
            let f: GeneratorFile = serde_json::from_value(read_json(path)?).map_err(input)?;
            if f.generators.is_empty() || f.generators.iter().any(|r| r.len() != f.generators[0].len()) {
                return Err(CliError::Input("generator rows must be nonempty and of equal length".into()));
            }
            herm_gram_from_generators(&Matrix::from_rows(&f.generators)).map_err(input)
        }
        (None, None) => Err(CliError::Input("give an expression or --generators FILE".into())),
    }
}

fn format_matrix<T: ToString + Clone>(m: &Matrix<T>) -> String {
    let rows = m.to_rows();
    let cells: Vec<Vec<String>> = rows.iter().map(|r| strings(r)).collect();
    let w = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    let mut s = String::new();
    for r in &cells {
        let padded: Vec<String> = r.iter().map(|c| format!("{c:>w$}")).collect();
        s.push_str(&format!("  [{}]\n", padded.join(" ")));
    }
    s
}

fn eisenstein(c: &EisensteinCmd) -> Result<Output, CliError> {
    match c {
        EisensteinCmd::Realform(inp) => {
            let h = hermitian_from(inp)?;
            let r = real_form(&h);
            let scaled = r.lattice().map_err(input)?;
            let mut text = format!("Hermitian Gram (signature {}):\n{}", h.signature(), format_matrix(h.gram()));
            text.push_str(&format!(
                "real form = {} * Gram, signature {}\n",
                crate::arith::fmt_rational(&scaled.scale),
                r.signature()
            ));
            let fingerprint = scaled.integral().map(|l| l.fingerprint());
            if let Some(f) = &fingerprint {
                text.push_str(&format!("fingerprint: {f}\n"));
            }
            let json = json!({
                "hermitian_gram": matrix_json(h.gram()),
                "hermitian_signature": [h.signature().plus, h.signature().minus],
                "scale": crate::arith::fmt_rational(&scaled.scale),
                "gram": matrix_json(&scaled.lattice.gram().clone()),
                "signature": [r.signature().plus, r.signature().minus],
                "fingerprint": fingerprint.map(|f| f.to_string()),
            });
            Ok(Output::ok(text, json))
        }
        EisensteinCmd::Eigenspace(inp) => {
            let r = real_form(&hermitian_from(inp)?);
            let es = eigenspace_hermitian(&r).map_err(input)?;
            let (lo, hi) = es.unordered_signature();
            let text = format!(
                "eigenspace rank {}\nHermitian signature {}\nunordered signature {{{lo},{hi}}}\nHermitian Gram:\n{}",
                es.hermitian.rank(),
                es.signature,
                format_matrix(es.hermitian.gram())
            );
            let json = json!({
                "rank": es.hermitian.rank(),
                "signature": [es.signature.plus, es.signature.minus],
                "unordered_signature": [lo, hi],
                "hermitian_gram": matrix_json(es.hermitian.gram()),
            });
            Ok(Output::ok(text, json))
        }
        EisensteinCmd::Mu3(inp) => {
            let r = real_form(&hermitian_from(inp)?);
            let m = mu3_checks(&r);
            let text = format!(
                "order three: {}\nno fixed vectors: {}\ntrivial on discriminant group: {}\n",
                m.order_three, m.fixed_point_free, m.trivial_on_discriminant
            );
            Ok(Output { text, json: json!(m), ok: m.all() })
        }
    }
}

fn branch(weights: &str) -> Result<(Vec<crate::arith::Rational>, BranchData), CliError> {
    let w = parse_weights(weights).map_err(input)?;
    let b = BranchData::from_weights(&w).map_err(input)?;
    Ok((w, b))
}

fn cw(c: &CwCmd) -> Result<Output, CliError> {
    match c {
        CwCmd::Multiplicities { weights } => {
            let (_, b) = branch(weights)?;
            let r = cw_multiplicities(&b);
            let rh = genus_riemann_hurwitz(&b);
            let m = strings(&r.multiplicities);
            let text = format!(
                "degree: {}\nmultiplicities: ({})\ngenus: {}\nRiemann-Hurwitz genus: {rh}\n",
                b.degree,
                m.join(","),
                r.genus
            );
            let json = json!({ "degree": b.degree, "multiplicities": r.multiplicities, "genus": r.genus, "riemann_hurwitz_genus": rh });
            Ok(Output { text, json, ok: rh == r.genus })
        }
        CwCmd::SigmaInt { weights } => {
            let w = parse_weights(weights).map_err(input)?;
            let r = sigma_int_check(&w).map_err(input)?;
            let mut text = format!("condition holds: {}\n", r.ok);
            for v in &r.violations {
                text.push_str(&format!("violation at ({}, {}): 1/(1 - a_i - a_j) = {}\n", v.i, v.j, v.value));
            }
            Ok(Output::ok(text, json!(r)))
        }
        CwCmd::Signature { weights } => {
            let (w, b) = branch(weights)?;
            let (lo, hi) = dm_signature(&b).map_err(input)?;
            let (p, q) = eigenspace_hodge_dims(&b, 1).map_err(input)?;
            let text = format!(
                "N = {}\nrho_1 eigenspace (h10, h01) = ({p},{q})\nunordered signature {{{lo},{hi}}}\n",
                w.len()
            );
            Ok(Output::ok(text, json!({ "points": w.len(), "hodge": [p, q], "signature": [lo, hi] })))
        }
    }
}

fn pencil_from(inp: &PencilInput) -> Result<(SexticPencil, Vec<(String, String)>), CliError> {
    if let Some(path) = &inp.file {
        let p: SexticPencil = serde_json::from_value(read_json(path)?).map_err(input)?;
        return Ok((p, Vec::new()));
    }
    let fix = pencil_named(&inp.pencil).ok_or_else(|| CliError::Input(format!("unknown pencil `{}`", inp.pencil)))?;
    Ok((fix.pencil, fix.points.into_iter().collect()))
}

fn fibration(c: &FibrationCmd) -> Result<Output, CliError> {
    match c {
        FibrationCmd::Survey(inp) => {
            let (p, _) = pencil_from(inp)?;
            let s = fiber_survey(&p).map_err(input)?;
            let t = trivial_lattice(&s).map_err(input)?;
            let f = t.fingerprint();
            let counts: Vec<String> = s.type_counts().iter().map(|(k, n)| format!("{k} x{n}")).collect();
            let text = format!("{}fiber types: {}\ntrivial lattice: {f}\n", s.table(), counts.join(", "));
            let json = json!({
                "survey": s,
                "trivial_lattice": { "rank": f.rank, "signature": [f.signature.plus, f.signature.minus], "determinant": f.det.to_string() },
            });
            Ok(Output::ok(text, json))
        }
        FibrationCmd::Lines { input: inp, points } => {
            let (p, labelled) = pencil_from(inp)?;
            let pts: Vec<(String, String)> =
                if points.is_empty() { labelled } else { points.iter().map(|s| (s.clone(), s.clone())).collect() };
            if pts.is_empty() {
                return Err(CliError::Input("give at least one --point a1:a2".into()));
            }
            let mut text = String::new();
            let mut rows = Vec::new();
            for (label, src) in pts {
                let a = parse_point(&src).map_err(input)?;
                let r = line_intersection_multiplicities(&p, &a);
                text.push_str(&format!("{label} [{src}]: {:?}\n", r.partition));
                rows.push(json!({ "label": label, "point": src, "partition": r.partition }));
            }
            Ok(Output::ok(text, json!(rows)))
        }
        FibrationCmd::Weierstrass(inp) => {
            let (p, _) = pencil_from(inp)?;
            let b = weierstrass_b(&p);
            let profile = b.multiplicity_profile();
            let text = format!("y^2 = x^3 + b, b = {b}\nroot multiplicities: {profile:?}\n");
            Ok(Output::ok(text, json!({ "b": b, "multiplicities": profile })))
        }
    }
}

fn verify_identities() -> Output {
    let checks = identity_checks();
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!("[{}] {}\n", if c.passed() { "PASS" } else { "FAIL" }, c.name));
        if !c.passed() || !c.expected {
            text.push_str(&format!("       normal form: {}\n", c.normal_form));
        }
    }
    let ok = checks.iter().all(|c| c.passed());
    Output { text, json: json!(checks), ok }
}

fn verify_paper(seed: u64) -> Output {
    let results = run_suite(seed);
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!("{r}\n"));
        for d in &r.details {
            text.push_str(&format!("       {d}\n"));
        }
    }
    let passed = results.iter().filter(|r| r.passed).count();
    text.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    Output { text, json: json!(results), ok: passed == results.len() }
}
