//! Driver behind the `bialg` binary: loads an input file, validates it,
//! runs one computation and produces a JSON report with a `certificates`
//! object of exact booleans.

pub mod json;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use bialg::cohochschild::invariant_basis;
use bialg::duality::ThetaMap;
use bialg::envelope::s_dual_poisson_bracket;
use bialg::quasitriangular::spans_differ;
use bialg::tensor::{cyb_unchecked, g_action};
use bialg::{
    alt_project, cocycle_defect, cohomology_dimension, dual_bracket, gauge_rho, invariants_s_dual, is_invariant,
    lift_associator, lift_twist, load_input, pentagon_defect, poisson_traces, qt_validate, twist_class, Algebra,
    AlgebraTag, CoPoissonEnvelope, Envelope, Error, FormalSeriesTensor, LinearForm, PBWElement, QTContext, RKind,
    RMat, Rational, Scalar, Tensor,
};
use serde_json::{json, Map, Value};

pub const DEFAULT_DEGREE: usize = 5;
pub const DEFAULT_MAXDEG: usize = 4;
pub const DEGREE_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Lift,
    Cohomology,
    Envelope,
    Theta,
    Qt,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Lift => "lift",
            Command::Cohomology => "cohomology",
            Command::Envelope => "envelope",
            Command::Theta => "theta",
            Command::Qt => "qt",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub degree: usize,
    pub maxdeg: usize,
    pub s: Rational,
    pub allow_large: bool,
    pub output: OutputFormat,
    /// Top-level report sections to keep; empty keeps everything.
    pub emit: Vec<String>,
}

impl RunConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input_path: input_path.into(),
            degree: DEFAULT_DEGREE,
            maxdeg: DEFAULT_MAXDEG,
            s: Rational::from_int(1),
            allow_large: false,
            output: OutputFormat::Json,
            emit: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub report: Value,
}

impl RunOutcome {
    pub fn certificates(&self) -> BTreeMap<String, bool> {
        self.report
            .get("certificates")
            .and_then(Value::as_object)
            .map(|m| m.iter().map(|(k, v)| (k.clone(), v.as_bool().unwrap_or(false))).collect())
            .unwrap_or_default()
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => serde_json::to_string_pretty(&self.report).expect("serializable") + "\n",
            OutputFormat::Text => render_text(&self.report),
        }
    }
}

/// Failures before any computation: bad input text, bad flags.
#[derive(Debug)]
struct ConfigError(String);

enum Failure {
    Config(ConfigError),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Config(ConfigError(m)),
            other => Failure::Compute(other),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

pub fn run(config: &RunConfig) -> RunOutcome {
    match execute(config) {
        Ok(mut report) => {
            if !config.emit.is_empty() {
                report.retain(|k, _| k == "command" || k == "certificates" || config.emit.iter().any(|e| e == k));
            }
            let ok = report
                .get("certificates")
                .and_then(Value::as_object)
                .is_some_and(|m| m.values().all(|v| v.as_bool() == Some(true)));
            RunOutcome { exit_code: if ok { 0 } else { 1 }, report: Value::Object(report) }
        }
        Err(Failure::Config(ConfigError(message))) => RunOutcome {
            exit_code: 2,
            report: json!({ "command": config.command.name(), "error": { "code": "ParseError", "message": message } }),
        },
        Err(Failure::Compute(e)) => RunOutcome {
            exit_code: 1,
            report: json!({ "command": config.command.name(), "error": { "code": e.code(), "message": e.to_string() } }),
        },
    }
}

struct Input {
    alg: Algebra,
    /// The r-matrix as given (r′ for quasitriangular inputs).
    given: RMat,
    /// Antisymmetric r of the coboundary structure.
    r: RMat,
}

fn load(config: &RunConfig) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(&config.input_path)
        .map_err(|e| ConfigError(format!("{}: {e}", config.input_path.display())))?;
    let spec = load_input::<Rational>(&text)?;
    let r = match spec.r.kind() {
        RKind::AntisymmetricCoboundary => spec.r.clone(),
        RKind::QuasitriangularCandidate => spec.r.antisymmetric_part(),
    };
    Ok(Input { alg: spec.algebra, given: spec.r, r })
}

fn check_degree(config: &RunConfig, degree: usize, min: usize) -> Result<(), ConfigError> {
    if degree < min {
        return Err(ConfigError(format!("degree {degree} is below the minimum {min}")));
    }
    if degree > DEGREE_CAP && !config.allow_large {
        return Err(ConfigError(format!("degree {degree} exceeds {DEGREE_CAP}; pass --allow-large")));
    }
    Ok(())
}

type Report = Map<String, Value>;

fn execute(config: &RunConfig) -> Result<Report, Failure> {
    let input = load(config)?;
    let mut report = Report::new();
    report.insert("command".into(), json!(config.command.name()));
    report.insert(
        "input".into(),
        json!({
            "dim": input.alg.dim(),
            "basis": input.alg.names(),
            "brackets": json::brackets(&input.alg),
            "kind": match input.given.kind() {
                RKind::AntisymmetricCoboundary => "coboundary",
                RKind::QuasitriangularCandidate => "quasitriangular",
            },
            "r": json::matrix(&input.given),
        }),
    );
    let mut certs = Map::new();
    validate(&input, &mut report, &mut certs)?;
    match config.command {
        Command::Validate => {}
        Command::Lift => lift(config, &input, &mut report, &mut certs)?,
        Command::Cohomology => cohomology(config, &input, &mut report, &mut certs)?,
        Command::Envelope => envelope(config, &input, &mut report, &mut certs)?,
        Command::Theta => theta(config, &input, &mut report, &mut certs)?,
        Command::Qt => qt(config, &input, &mut report, &mut certs)?,
    }
    report.insert("certificates".into(), Value::Object(certs));
    Ok(report)
}

fn validate(input: &Input, report: &mut Report, certs: &mut Map<String, Value>) -> Result<(), Failure> {
    let alg = &input.alg;
    alg.check_jacobi()?;
    certs.insert("jacobi".into(), json!(true));
    certs.insert("antisymmetric".into(), json!(input.r.is_antisymmetric()));
    let z = cyb_unchecked(alg, &input.r);
    let coboundary = alt_project(&z) == z && is_invariant(alg, &z)?;
    certs.insert("coboundary".into(), json!(coboundary));
    let mut section = Map::new();
    section.insert("cyb".into(), json::tensor(&z));
    if input.given.kind() == RKind::QuasitriangularCandidate {
        let cyb_zero = cyb_unchecked(alg, &input.given).is_zero();
        let t = FormalSeriesTensor::from_r_matrix(&input.given.symmetric_sum(), 2);
        let mut t_invariant = true;
        for i in 0..alg.dim() {
            t_invariant &= g_action(alg, i, &t)?.is_zero();
        }
        certs.insert("cyb_zero".into(), json!(cyb_zero));
        certs.insert("t_invariant".into(), json!(t_invariant));
    }
    report.insert("validation".into(), Value::Object(section));
    Ok(())
}

fn lift(config: &RunConfig, input: &Input, report: &mut Report, certs: &mut Map<String, Value>) -> Result<(), Failure> {
    let n = config.degree;
    check_degree(config, n, 3)?;
    let alg = &input.alg;
    let cyb = cyb_unchecked(alg, &input.r);
    let z = twist_class(alg, &input.r)?;
    let phi = lift_associator(alg, &z, n)?;
    let rho = lift_twist(alg, &input.r, &phi, n)?;
    let pentagon = pentagon_defect(alg, &phi)?;
    let cocycle = cocycle_defect(alg, &rho, &phi)?;
    certs.insert("defect_zero".into(), json!(pentagon.is_zero() && cocycle.is_zero()));
    certs.insert("invariant".into(), json!(is_invariant(alg, &phi)?));
    certs.insert("alt_phi_is_z".into(), json!(alt_project(&phi) == z));
    let leading = FormalSeriesTensor::from_r_matrix(&input.r, n);
    certs.insert("rho_leading_is_r".into(), json!(rho.linear_part() == leading.linear_part()));
    report.insert(
        "lift".into(),
        json!({
            "truncation": n,
            "cyb": json::tensor(&cyb),
            "z": json::tensor(&z),
            "z_is_two_thirds_cyb": z == cyb.scale(&Rational::ratio(2, 3)),
            "phi": json::tensor(&phi),
            "rho": json::tensor(&rho),
            "pentagon_defect_terms": pentagon.len(),
            "cocycle_defect_terms": cocycle.len(),
        }),
    );
    Ok(())
}

/// dim ∧^k(g)^g as the rank of Alt on invariant tensors in g^{⊗k}.
fn wedge_invariant_dim(alg: &Algebra, k: usize) -> usize {
    let basis: Vec<Tensor> = invariant_basis(alg, k, k).iter().map(alt_project).collect();
    let mut rows: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    let vectors: Vec<Vec<(usize, Rational)>> = basis
        .iter()
        .map(|t| {
            bialg::linalg::normalize(t.terms().map(|(key, c)| {
                let next = rows.len();
                (*rows.entry(key.clone()).or_insert(next), c.clone())
            }))
        })
        .collect();
    bialg::linalg::rank(&vectors, rows.len())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
}

fn cohomology(
    config: &RunConfig,
    input: &Input,
    report: &mut Report,
    certs: &mut Map<String, Value>,
) -> Result<(), Failure> {
    let n = config.degree;
    check_degree(config, n, 1)?;
    let alg = &input.alg;
    let mut table = Vec::new();
    let (mut concentrated, mut invariant) = (true, true);
    for k in 1..=3 {
        let wedge = binomial(alg.dim(), k);
        let wedge_inv = wedge_invariant_dim(alg, k);
        for degree in k..=n.max(k) {
            let full = cohomology_dimension(alg, k, degree, false);
            let inv = cohomology_dimension(alg, k, degree, true);
            let (want, want_inv) = if degree == k { (wedge, wedge_inv) } else { (0, 0) };
            concentrated &= full == want;
            invariant &= inv == want_inv;
            table.push(json!({
                "k": k, "degree": degree,
                "dim": full, "invariant_dim": inv,
                "expected": want, "expected_invariant": want_inv,
            }));
        }
    }
    certs.insert("concentrated".into(), json!(concentrated));
    certs.insert("invariant".into(), json!(invariant));
    report.insert("cohomology".into(), json!({ "max_degree": n, "table": table }));
    Ok(())
}

fn dual_names(alg: &Algebra) -> Vec<String> {
    alg.names().iter().map(|n| format!("{n}*")).collect()
}

fn pairwise_commute(env: &Envelope<Rational>, xs: &[PBWElement<Rational>]) -> Result<bool, Error> {
    for a in xs {
        for b in xs {
            if !env.commutator(a, b)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn filtered_dims(xs: &[PBWElement<Rational>], maxdeg: usize, env: &Envelope<Rational>) -> Vec<usize> {
    // dimension of the span within each filtration level
    let words = env.words_up_to(maxdeg);
    let index: BTreeMap<&Vec<usize>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    (0..=maxdeg)
        .map(|d| {
            let vs: Vec<Vec<(usize, Rational)>> = xs
                .iter()
                .filter(|x| x.degree() <= d)
                .map(|x| bialg::linalg::normalize(x.terms().map(|(w, c)| (index[w], c.clone()))))
                .collect();
            bialg::linalg::rank(&vs, words.len())
        })
        .collect()
}

fn envelope(
    config: &RunConfig,
    input: &Input,
    report: &mut Report,
    certs: &mut Map<String, Value>,
) -> Result<(), Failure> {
    let m = config.maxdeg;
    let alg = &input.alg;
    let ug = CoPoissonEnvelope::coboundary(alg, &input.r);
    let ud = CoPoissonEnvelope::dual_of(alg, &input.r)?;
    let names = alg.names().to_vec();
    let dnames = dual_names(alg);
    let zg = ug.envelope().center(m);
    let zd = ud.envelope().center(m);
    certs.insert(
        "commutative".into(),
        json!(pairwise_commute(ug.envelope(), &zg)? && pairwise_commute(ud.envelope(), &zd)?),
    );
    let mut derivation = true;
    let mut d_zero = true;
    for side in [&ug, &ud] {
        let env = side.envelope();
        for i in 0..env.dim() {
            let x = env.generator(i);
            d_zero &= side.derivation_d(&x)?.is_zero();
            for j in 0..env.dim() {
                let y = env.generator(j);
                let lhs = side.derivation_d(&env.product(&x, &y)?)?;
                let rhs = &env.product(&side.derivation_d(&x)?, &y)? + &env.product(&x, &side.derivation_d(&y)?)?;
                derivation &= lhs == rhs;
            }
        }
    }
    certs.insert("derivation".into(), json!(derivation));
    let d_of = |side: &CoPoissonEnvelope<Rational>, names: &[String]| -> Result<Vec<Value>, Error> {
        (0..side.envelope().dim())
            .map(|i| Ok(json::pbw(&side.derivation_d(&side.envelope().generator(i))?, names)))
            .collect()
    };
    report.insert(
        "envelope".into(),
        json!({
            "max_filtration": m,
            "g": {
                "center_dims": filtered_dims(&zg, m, ug.envelope()),
                "center": zg.iter().map(|x| json::pbw(x, &names)).collect::<Vec<_>>(),
                "d_generators": d_of(&ug, &names)?,
            },
            "g_dual": {
                "brackets": json::brackets(ud.envelope().algebra()),
                "center_dims": filtered_dims(&zd, m, ud.envelope()),
                "center": zd.iter().map(|x| json::pbw(x, &dnames)).collect::<Vec<_>>(),
                "d_generators": d_of(&ud, &dnames)?,
            },
            "d_is_zero": d_zero,
        }),
    );
    Ok(())
}

fn lifted_rho(alg: &Algebra, r: &RMat, n: usize) -> Result<Tensor, Error> {
    let phi = lift_associator(alg, &twist_class(alg, r)?, n)?;
    lift_twist(alg, r, &phi, n)
}

/// A fixed gauge parameter in m² with assorted coefficients.
fn sample_lambda(dim: usize, n: usize) -> Tensor {
    let mut terms = Vec::new();
    for d in 2..=n {
        for (i, k) in bialg::tensor::monomials_of_degree(dim, d).into_iter().enumerate() {
            if (i + d) % 3 != 0 {
                let c = Rational::ratio(((i * 7 + d) % 5) as i64 - 2, (d % 3 + 1) as i64);
                terms.push((k, c));
            }
        }
    }
    Tensor::from_terms(dim, 1, n, terms)
}

/// U(dual_bracket(−2r)) → U(dual_bracket(r)), ξ ↦ −2ξ.
fn rescale_dual(x: &PBWElement<Rational>) -> PBWElement<Rational> {
    PBWElement::from_terms(
        AlgebraTag::GDual,
        x.terms()
            .map(|(w, c)| (w.clone(), c.clone() * Rational::from_int(-2).pow(w.len() as i32)))
            .collect::<Vec<_>>(),
    )
}

fn theta(config: &RunConfig, input: &Input, report: &mut Report, certs: &mut Map<String, Value>) -> Result<(), Failure> {
    let m = config.maxdeg;
    let n = config.degree.max(m).max(3);
    check_degree(config, n, 3)?;
    let alg = &input.alg;
    let rho = lifted_rho(alg, &input.r, n)?;
    let map = ThetaMap::new(alg, &rho)?;
    let target = map.target();
    let traces = poisson_traces(alg, m);
    let images = traces.iter().map(|f| map.apply(f)).collect::<Result<Vec<_>, _>>()?;

    let filtered = traces.iter().zip(&images).all(|(f, t)| {
        t.degree() == f.degree() && LinearForm::from_polynomial(&t.symbol(alg.dim()), f.degree()) == f.symbol()
    });
    let mut multiplicative = true;
    for (i, f) in traces.iter().enumerate() {
        for (j, g) in traces.iter().enumerate() {
            if f.degree() + g.degree() <= m && f.degree() > 0 && g.degree() > 0 {
                multiplicative &= map.apply(&f.product(g))? == target.product(&images[i], &images[j])?;
            }
        }
    }
    let commutative = pairwise_commute(target, &images)?;
    let moved = ThetaMap::new(alg, &gauge_rho(alg, &sample_lambda(alg.dim(), n), &rho)?)?;
    let mut gauge_independent = true;
    for (f, t) in traces.iter().zip(&images) {
        gauge_independent &= &moved.apply(f)? == t;
    }
    let co = CoPoissonEnvelope::dual_of(alg, &input.r)?;
    let mut in_kernel = true;
    for t in &images {
        in_kernel &= co.copoisson_delta(&rescale_dual(t))?.is_zero();
    }
    certs.insert("filtered".into(), json!(filtered));
    certs.insert("multiplicative".into(), json!(multiplicative));
    certs.insert("commutative".into(), json!(commutative));
    certs.insert("gauge_independent".into(), json!(gauge_independent));
    certs.insert("image_in_ker_delta".into(), json!(in_kernel));
    certs.insert("invariants_poisson_commute".into(), json!(invariants_poisson_commute(alg, &input.r, m)?));

    let identity = traces.iter().zip(&images).all(|(f, t)| &f.to_pbw(AlgebraTag::GDual) == t);
    let dnames = dual_names(alg);
    let entries: Vec<Value> = traces
        .iter()
        .zip(&images)
        .map(|(f, t)| json!({ "trace": json::form(f), "theta": json::pbw(t, &dnames) }))
        .collect();
    report.insert(
        "theta".into(),
        json!({
            "truncation": n,
            "max_filtration": m,
            "target_brackets": json::brackets(target.algebra()),
            "images": entries,
            "is_identity": identity,
        }),
    );
    Ok(())
}

fn closed_commutative(ctx: &QTContext<Rational>, s: &Rational, m: usize) -> Result<bool, Error> {
    let basis = ctx.c_s_basis(s, m)?;
    let u = ctx.dual().envelope();
    for a in &basis {
        for b in &basis {
            if !u.commutator(a, b)?.is_zero() {
                return Ok(false);
            }
            let p = u.product(a, b)?;
            if p.degree() <= m && !ctx.in_c_s(&p, s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn qt(config: &RunConfig, input: &Input, report: &mut Report, certs: &mut Map<String, Value>) -> Result<(), Failure> {
    let m = config.maxdeg;
    let s = &config.s;
    let alg = &input.alg;
    let structure = qt_validate(alg, &input.given)?;
    let nondegenerate = structure.nondegenerate();
    let ctx = QTContext::new(structure)?;
    let zero = Rational::from_int(0);
    let one = Rational::from_int(1);
    let invariant_dims: Vec<usize> =
        (0..=m).map(|d| invariants_s_dual(alg, m).iter().filter(|f| f.order() == d).count()).collect();
    let c_s = ctx.c_s_dims(s, m)?;
    let c0 = ctx.c_s_dims(&zero, m)?;
    let c1 = ctx.c_s_dims(&one, m)?;

    certs.insert("qt_valid".into(), json!(true));
    certs.insert(
        "commutative".into(),
        json!(closed_commutative(&ctx, s, m)? && closed_commutative(&ctx, &zero, m)? && closed_commutative(&ctx, &one, m)?),
    );
    certs.insert("graded_c1_is_invariants".into(), json!(c1.graded == invariant_dims));
    let inner = ctx.check_inner_derivation();
    certs.insert("inner_derivation".into(), json!(inner.passed));

    let names = alg.names().to_vec();
    let dnames = dual_names(alg);
    let mut section = Map::new();
    section.insert("s".into(), json::rational(s));
    section.insert("max_filtration".into(), json!(m));
    section.insert("r".into(), json::matrix(ctx.structure().r()));
    section.insert("t".into(), json::matrix(ctx.structure().t()));
    section.insert("z".into(), json::tensor(ctx.structure().z()));
    section.insert("nondegenerate".into(), json!(nondegenerate));
    section.insert("d_normalization".into(), json::rational(ctx.d_scale()));
    section.insert("invariant_dims".into(), json!(invariant_dims));
    section.insert("c_s_dims".into(), json!({ "total": c_s.total, "graded": c_s.graded }));
    section.insert("c0_dims".into(), json!({ "total": c0.total, "graded": c0.graded }));
    section.insert("c1_dims".into(), json!({ "total": c1.total, "graded": c1.graded }));
    section.insert(
        "c_s_basis".into(),
        Value::Array(ctx.c_s_basis(s, m)?.iter().map(|x| json::pbw(x, &dnames)).collect()),
    );
    let differ = spans_differ(&ctx.c_s_basis(&zero, m)?, &ctx.c_s_basis(&one, m)?);
    section.insert("c0_c1_differ".into(), json!(differ));
    section.insert(
        "inner_derivation".into(),
        json!({
            "mu": json::pbw(&inner.mu, &names),
            "witnesses": inner.witnesses.iter().map(|(i, lhs, rhs)| json!({
                "generator": names[*i],
                "mu_delta": json::pbw(lhs, &names),
                "minus_ad_mu": json::pbw(rhs, &names),
            })).collect::<Vec<_>>(),
        }),
    );

    if nondegenerate {
        let ranks = ctx.alpha_ranks(m);
        certs.insert("alpha_isomorphism".into(), json!(ranks.iter().all(|(r, n)| r == n)));
        let center = ctx.ug().center(m);
        let images = center.iter().map(|z| ctx.sts_theta(z)).collect::<Result<Vec<_>, _>>()?;
        let mut in_c1 = true;
        let mut in_c_s = true;
        for y in &images {
            in_c1 &= ctx.in_c_s(y, &one)?;
            in_c_s &= ctx.in_c_s(y, s)?;
        }
        let mut multiplicative = true;
        for (i, a) in center.iter().enumerate() {
            for (j, b) in center.iter().enumerate() {
                if a.degree() + b.degree() <= m {
                    let lhs = ctx.sts_theta(&ctx.ug().product(a, b)?)?;
                    multiplicative &= lhs == ctx.dual().envelope().product(&images[i], &images[j])?;
                }
            }
        }
        certs.insert("theta_in_c1".into(), json!(in_c1));
        certs.insert("theta_multiplicative".into(), json!(multiplicative));
        let literal = QTContext::new(ctx.structure().clone())?.with_d_scale(one.clone());
        let mut literal_in_c1 = true;
        for y in &images {
            literal_in_c1 &= literal.in_c_s(y, &one)?;
        }
        section.insert("alpha_ranks".into(), json!(ranks));
        section.insert(
            "sts_theta".into(),
            Value::Array(
                center
                    .iter()
                    .zip(&images)
                    .map(|(z, y)| json!({ "central": json::pbw(z, &names), "theta": json::pbw(y, &dnames) }))
                    .collect(),
            ),
        );
        section.insert("theta_in_c_s".into(), json!(in_c_s));
        section.insert("literal_d_theta_in_c1".into(), json!(literal_in_c1));
    }
    report.insert("qt".into(), Value::Object(section));
    Ok(())
}

fn render_text(report: &Value) -> String {
    let mut out = String::new();
    let obj = report.as_object().cloned().unwrap_or_default();
    let command = obj.get("command").and_then(Value::as_str).unwrap_or("?");
    let _ = writeln!(out, "bialg {command}");
    if let Some(err) = obj.get("error") {
        let _ = writeln!(out, "error {}: {}", err["code"].as_str().unwrap_or("?"), err["message"].as_str().unwrap_or(""));
        return out;
    }
    if let Some(input) = obj.get("input") {
        let _ = writeln!(out, "algebra: dim {} basis {}", input["dim"], input["basis"]);
    }
    for (key, value) in &obj {
        if matches!(key.as_str(), "command" | "input" | "certificates") {
            continue;
        }
        let _ = writeln!(out, "{key}:");
        if let Some(section) = value.as_object() {
            for (k, v) in section {
                let line = v.to_string();
                if line.len() <= 100 {
                    let _ = writeln!(out, "  {k}: {line}");
                } else {
                    let _ = writeln!(out, "  {k}: ({} bytes of JSON)", line.len());
                }
            }
        }
    }
    if let Some(certs) = obj.get("certificates").and_then(Value::as_object) {
        let _ = writeln!(out, "certificates:");
        for (k, v) in certs {
            let verdict = if v.as_bool() == Some(true) { "pass" } else { "FAIL" };
            let _ = writeln!(out, "  {verdict}  {k}");
        }
    }
    out
}

/// Whether all pairs of invariants of S(g*) up to `maxdeg` Poisson-commute
/// in S(g*) built on dual_bracket(r).
fn invariants_poisson_commute(alg: &Algebra, r: &RMat, maxdeg: usize) -> Result<bool, Error> {
    let dual = dual_bracket(alg, r)?;
    let inv = invariants_s_dual(alg, maxdeg);
    Ok(inv.iter().all(|a| inv.iter().all(|b| s_dual_poisson_bracket(&dual, a, b).is_zero())))
}
