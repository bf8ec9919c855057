//! Command-line front end: `cherlab <subcommand> ...`.
//!
//! Exit codes: 0 success, 1 domain error (named after the owning module's error
//! variant), 2 malformed input or usage.

use std::fmt::{Debug, Display};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::charclass::{index_density, CurvatureData, LinearForm, TraceFunctional};
use crate::cherednik::{pbw_spot_check, verify_commutation_relations, DunklRep};
use crate::cyclo::{parse_rational, Rational};
use crate::group::{FiniteMatrixGroup, DEFAULT_ORDER_CAP};
use crate::hochschild::{
    fundamental_cycle, hochschild_boundary, parse_algebra, CappedWeyl, HochschildChain, StructureConstantAlgebra,
};
use crate::io::{parse_group_file, parse_orbifold_file};
use crate::strata::{
    euler_report, hochschild_profile, orbifold_hypercohomology, trace_space_lower_bound, OrbifoldDescriptor,
    StrataError, DEGREE_CONVENTION,
};

#[derive(Parser, Debug)]
#[command(name = "cherlab", version, about = "Exact invariants of finite complex reflection groups")]
struct Cli {
    /// Output layout.
    #[arg(long, value_enum, default_value_t = Format::Lines, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Lines,
    Table,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Upper bound on the group order during closure.
    #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reflection structure of a matrix group.
    AnalyzeGroup {
        file: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Hochschild profile a_j and the trace-space bound.
    Invariants {
        file: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Orbifold hypercohomology and Euler characteristics.
    Orbifold {
        #[arg(long)]
        group: PathBuf,
        /// Descriptor file; the linear descriptor of the group when omitted.
        descriptor: Option<PathBuf>,
        #[command(flatten)]
        caps: GroupArgs,
    },
    /// Cherednik relations for Dunkl operators on truncated polynomials.
    DunklCheck {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value = "1")]
        t: String,
        /// `all=<rat>` or `<element>=<rat>,...` (element indices as listed by analyze-group).
        #[arg(long, default_value = "all=0")]
        c: String,
        #[arg(long)]
        degree: usize,
        /// Also compare the PBW word rank at this filtration level.
        #[arg(long)]
        pbw_level: Option<usize>,
        #[command(flatten)]
        caps: GroupArgs,
    },
    /// Fundamental Hochschild cycle of a capped Weyl algebra, or checks on a tensor-format algebra.
    HochschildCheck {
        #[arg(long)]
        cycle: Option<usize>,
        #[arg(long, default_value_t = 2)]
        cap: usize,
        /// Structure-constant algebra file.
        algebra: Option<PathBuf>,
    },
    /// Degree n-l component of Â(R_T) Ch(-Θ/ℏ) Ch_φ(R_N/ℏ).
    IndexDensity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_delimiter = ',')]
        tangent_roots: Vec<String>,
        #[arg(long, default_value = "0")]
        theta: String,
        #[arg(long, value_delimiter = ',')]
        moments: Vec<String>,
        /// Moment weights λ_k, used with --eigenvalues instead of --moments.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        eigenvalues: Vec<String>,
        /// Symbol of the normal curvature R_N.
        #[arg(long)]
        normal: Option<String>,
        #[arg(long, default_value_t = 1)]
        rank: usize,
        /// Series truncation order (default n - l).
        #[arg(long)]
        hbar_order: Option<usize>,
    },
}

enum CliError {
    Input(String),
    Domain { name: String, msg: String },
}

impl CliError {
    fn domain<E: Debug + Display>(e: E) -> Self {
        let debug = format!("{e:?}");
        let name = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        CliError::Domain { name, msg: e.to_string() }
    }

    fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

enum Line {
    Pair(String, String),
    Raw(String),
}

/// An ordered report; rendered either as `key=value` lines or as an aligned table.
struct Report {
    header: Vec<(String, String)>,
    body: Vec<Line>,
}

impl Report {
    fn new(subcommand: &str) -> Self {
        Self { header: vec![("command".into(), subcommand.into())], body: Vec::new() }
    }

    fn config(&mut self, key: &str, value: impl Display) {
        self.header.push((key.into(), value.to_string()));
    }

    fn put(&mut self, key: impl Into<String>, value: impl Display) {
        self.body.push(Line::Pair(key.into(), value.to_string()));
    }

    fn raw(&mut self, line: impl Into<String>) {
        self.body.push(Line::Raw(line.into()));
    }

    fn render(&self, format: Format) -> String {
        let mut s = String::new();
        for (k, v) in &self.header {
            s.push_str(&format!("# {k}={v}\n"));
        }
        let width = self.body.iter().filter_map(|l| if let Line::Pair(k, _) = l { Some(k.len()) } else { None }).max();
        for line in &self.body {
            match (line, format) {
                (Line::Pair(k, v), Format::Lines) => s.push_str(&format!("{k}={v}\n")),
                (Line::Pair(k, v), Format::Table) => {
                    s.push_str(&format!("{k:<w$}  {v}\n", w = width.unwrap_or(0)));
                }
                (Line::Raw(r), _) => s.push_str(&format!("{r}\n")),
            }
        }
        s
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))
}

fn load_group(path: &Path, cap: usize) -> Result<FiniteMatrixGroup, CliError> {
    let parsed = parse_group_file(&read(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    FiniteMatrixGroup::generate(&parsed.generators, cap).map_err(CliError::domain)
}

fn rational(flag: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::input(format!("--{flag}: {e}")))
}

fn analyze_group(path: &Path, cap: usize, rep: &mut Report) -> Result<(), CliError> {
    rep.config("group", path.display());
    rep.config("order_cap", cap);
    let g = load_group(path, cap)?;
    let r = g.report().map_err(CliError::domain)?;
    rep.put("dim", r.dim);
    rep.put("conductor", r.conductor);
    rep.put("order", r.order);
    rep.put("classes", r.class_count);
    rep.put("N", r.reflections);
    rep.put("N*", r.hyperplanes);
    rep.put("rank", r.rank);
    rep.put("fixed_dim", r.fixed_dim);
    rep.put("generated_by_reflections", yes_no(r.generated_by_reflections));
    rep.put("irreducible", yes_no(r.irreducible));
    rep.put("components", join(&r.component_dims));
    match &r.degrees {
        Ok(d) => rep.put("degrees", join(d)),
        Err(e) => rep.put("degrees", format!("unavailable ({e})")),
    }
    match &r.coxeter_number {
        Some(Ok(h)) => rep.put("h", h),
        Some(Err(e)) => rep.put("h", format!("unavailable ({e})")),
        None => rep.put("h", "n/a (not an irreducible reflection group)"),
    }
    rep.put("well_generated", yes_no(r.well_generated));
    if let Some(w) = &r.well_generated_witness {
        rep.put("well_generated_witness", join(w));
    }
    match &r.coxeter_element {
        Some(Ok(c)) => rep.put("coxeter_element", c),
        Some(Err(e)) => rep.put("coxeter_element", format!("unavailable ({e})")),
        None => {}
    }
    let refl = g.find_reflections();
    let classes = g.conjugacy_classes();
    let lookup = g.class_lookup(&classes);
    let mut seen = vec![false; classes.len()];
    for s in &refl.reflections {
        let ci = lookup[s.element];
        if !std::mem::replace(&mut seen[ci], true) {
            let c = &classes[ci];
            rep.put(format!("reflection_class[{}]", c.representative), format!("size={} eigenvalue={}", c.size(), s.eigenvalue));
        }
    }
    Ok(())
}

fn invariants(path: &Path, cap: usize, rep: &mut Report) -> Result<(), CliError> {
    rep.config("group", path.display());
    rep.config("order_cap", cap);
    let g = load_group(path, cap)?;
    let p = hochschild_profile(&g);
    for (j, a) in p.a.iter().enumerate() {
        rep.put(format!("a[{j}]"), a);
    }
    rep.put("classes", p.class_count());
    let t = trace_space_lower_bound(&g).map_err(CliError::domain)?;
    rep.put("hG_zero", yes_no(t.hg_zero));
    rep.put("well_generated", yes_no(t.well_generated));
    if let Some(w) = t.witness {
        rep.put("witness", w);
    }
    rep.put("trace_bound", if t.bound_holds { "a[0]>=1" } else { "a[0]=0" });
    if let Some(f) = &t.failed_hypothesis {
        rep.put("hypothesis_failed", f);
    }
    Ok(())
}

fn orbifold(group: &Path, descriptor: Option<&Path>, cap: usize, rep: &mut Report) -> Result<(), CliError> {
    rep.config("group", group.display());
    rep.config("descriptor", descriptor.map(|p| p.display().to_string()).unwrap_or_else(|| "linear".into()));
    rep.config("order_cap", cap);
    let g = load_group(group, cap)?;
    let d = match descriptor {
        Some(p) => parse_orbifold_file(&read(p)?).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?,
        None => OrbifoldDescriptor::linear(&g),
    };
    let table = orbifold_hypercohomology(&d, &g).map_err(CliError::domain)?;
    rep.put("convention", DEGREE_CONVENTION);
    for (k, v) in table.hyper.iter().enumerate() {
        rep.put(format!("H^-{k}"), v);
    }
    for (j, v) in table.chen_ruan.iter().enumerate() {
        rep.put(format!("H_CR^{j}"), v);
    }
    let e = euler_report(&d, &g).map_err(CliError::domain)?;
    rep.put("chi_top", &e.chi_top);
    rep.put("chi_hh", e.chi_hh);
    rep.put("group_order", e.group_order);
    rep.put("identity_check", if e.identity_check { "pass" } else { "fail" });
    if !e.identity_check {
        let scaled = &e.chi_top * Rational::from_integer((e.group_order as i64).into());
        return Err(CliError::domain(StrataError::IdentityViolation { chi_hh: e.chi_hh, scaled_chi_top: scaled.to_string() }));
    }
    Ok(())
}

/// `all=<rat>` or `<elem>=<rat>,<elem>=<rat>,...`.
fn parse_c(spec: &str, g: &FiniteMatrixGroup) -> Result<Vec<(usize, Rational)>, CliError> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| CliError::input(format!("--c: expected key=value, got `{item}`")))?;
        let value = rational("c", v)?;
        if k.trim() == "all" {
            out.extend(g.find_reflections().reflections.iter().map(|r| (r.element, value.clone())));
        } else {
            let elem = k.trim().parse().map_err(|_| CliError::input(format!("--c: bad element index `{k}`")))?;
            out.push((elem, value));
        }
    }
    Ok(out)
}

fn dunkl_check(
    group: &Path,
    t: &str,
    c: &str,
    degree: usize,
    pbw_level: Option<usize>,
    cap: usize,
    rep: &mut Report,
) -> Result<(), CliError> {
    let t = rational("t", t)?;
    rep.config("group", group.display());
    rep.config("t", &t);
    rep.config("c", c.split_whitespace().collect::<String>());
    rep.config("degree", degree);
    if let Some(l) = pbw_level {
        rep.config("pbw_level", l);
    }
    rep.config("order_cap", cap);
    let g = load_group(group, cap)?;
    let assignments = parse_c(c, &g)?;
    let dr = DunklRep::new(&g, t, &assignments, degree).map_err(CliError::domain)?;
    let report = verify_commutation_relations(&dr).map_err(CliError::domain)?;
    for chk in &report.checks {
        let mut v = format!("{} degree<={} cases={}", if chk.passed { "pass" } else { "fail" }, chk.verified_degree, chk.cases);
        if let Some(first) = chk.failures.first() {
            v.push_str(&format!(" first_failure={first}"));
        }
        rep.put(format!("relation[{}]", chk.name), v);
    }
    for k in &report.kappa {
        let kappa = k.kappa.as_ref().map(ToString::to_string).unwrap_or_else(|| "unfit".into());
        let ratio = k.ratio.as_ref().map(ToString::to_string).unwrap_or_else(|| "n/a".into());
        rep.put(format!("kappa[{}]", k.representative), format!("size={} c={} kappa={kappa} ratio={ratio}", k.class_size, k.c));
    }
    rep.put("kappa_unique", yes_no(report.kappa_unique));
    let mut ok = report.all_passed();
    if let Some(level) = pbw_level {
        let p = pbw_spot_check(&dr, level).map_err(CliError::domain)?;
        rep.put(
            "pbw",
            format!(
                "{} predicted={} rank={} baseline_rank={} saturated={}",
                if p.flat() { "pass" } else { "fail" },
                p.predicted,
                p.rank,
                p.baseline_rank,
                yes_no(p.matches())
            ),
        );
        ok &= p.flat();
    }
    rep.put("status", if ok { "pass" } else { "fail" });
    if !ok {
        return Err(CliError::Domain { name: "RelationFailure".into(), msg: "a Cherednik relation check failed".into() });
    }
    Ok(())
}

fn summarize_chain(ch: &HochschildChain, alg: &StructureConstantAlgebra) -> String {
    if ch.len() <= 6 {
        ch.display(alg).to_string()
    } else {
        format!("{} terms", ch.len())
    }
}

fn hochschild_check(cycle: Option<usize>, cap: usize, algebra: Option<&Path>, rep: &mut Report) -> Result<(), CliError> {
    if cycle.is_none() && algebra.is_none() {
        return Err(CliError::input("hochschild-check needs --cycle <k> or an algebra file"));
    }
    if let Some(k) = cycle {
        rep.config("cycle", k);
        rep.config("cap", cap);
    }
    if let Some(p) = algebra {
        rep.config("algebra", p.display());
    }
    if let Some(k) = cycle {
        let w = CappedWeyl::new(k, cap).map_err(CliError::domain)?;
        let unit = w.algebra.unit();
        rep.put("weyl_dim", w.algebra.dim());
        let c = fundamental_cycle(&w, k, true).map_err(CliError::domain)?;
        rep.put("cycle_degree", c.degree());
        rep.put("cycle_terms", c.len());
        let b = hochschild_boundary(&c, &w.algebra).map_err(CliError::domain)?;
        rep.put("boundary_unnormalized", summarize_chain(&b, &w.algebra));
        let bn = hochschild_boundary(&c.normalize(unit), &w.algebra).map_err(CliError::domain)?;
        rep.put("boundary_normalized", summarize_chain(&bn, &w.algebra));
        rep.put("signed_is_cycle", yes_no(bn.is_zero()));
        let u = fundamental_cycle(&w, k, false).map_err(CliError::domain)?.normalize(unit);
        let bu = hochschild_boundary(&u, &w.algebra).map_err(CliError::domain)?;
        rep.put("unsigned_is_cycle", yes_no(bu.is_zero()));
        if !bu.is_zero() {
            rep.put("unsigned_boundary", summarize_chain(&bu, &w.algebra));
        }
        if !bn.is_zero() {
            return Err(CliError::Domain { name: "NotACycle".into(), msg: "signed fundamental cycle has nonzero boundary".into() });
        }
    }
    if let Some(p) = algebra {
        let alg = parse_algebra(&read(p)?).map_err(|e| match e {
            crate::hochschild::HochschildError::Parse { .. } => CliError::input(format!("{}: {e}", p.display())),
            other => CliError::domain(other),
        })?;
        rep.put("algebra_dim", alg.dim());
        rep.put("unit", alg.label(alg.unit()));
        rep.put("unverified_triples", alg.unverified_triples());
        match alg.hh0_dimension() {
            Ok(d) => rep.put("HH_0", d),
            Err(e) => rep.put("HH_0", format!("unavailable ({e})")),
        }
        let (checked, failures) = boundary_squares(&alg);
        rep.put("b_squared_zero", format!("{} checked={checked}", if failures == 0 { "pass" } else { "fail" }));
        if failures > 0 {
            return Err(CliError::Domain { name: "BoundarySquareNonzero".into(), msg: format!("b∘b ≠ 0 on {failures} basis chains") });
        }
    }
    Ok(())
}

/// `b∘b` on every basis 2-chain whose products stay inside the algebra.
fn boundary_squares(alg: &StructureConstantAlgebra) -> (usize, usize) {
    let n = alg.dim();
    let (mut checked, mut failures) = (0, 0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut ch = HochschildChain::zero(2, false);
                ch.add_term(vec![i, j, k], Rational::from_integer(1.into()));
                let Ok(b) = hochschild_boundary(&ch, alg) else { continue };
                let Ok(bb) = hochschild_boundary(&b, alg) else { continue };
                checked += 1;
                if !bb.is_zero() {
                    failures += 1;
                }
            }
        }
    }
    (checked, failures)
}

struct DensityArgs<'a> {
    n: usize,
    l: usize,
    tangent_roots: &'a [String],
    theta: &'a str,
    moments: &'a [String],
    weights: &'a [String],
    eigenvalues: &'a [String],
    normal: Option<&'a str>,
    rank: usize,
    hbar_order: Option<usize>,
}

fn density(a: DensityArgs<'_>, rep: &mut Report) -> Result<(), CliError> {
    let form = |s: &str| LinearForm::parse(s).map_err(|e| CliError::input(e.to_string()));
    let roots = a.tangent_roots.iter().map(|s| form(s)).collect::<Result<Vec<_>, _>>()?;
    let theta = form(a.theta)?;
    let normal = a.normal.map(form).transpose()?;
    let order = a.hbar_order.unwrap_or(a.n.saturating_sub(a.l));
    let rats = |flag: &str, v: &[String]| v.iter().map(|s| rational(flag, s)).collect::<Result<Vec<_>, _>>();
    rep.config("n", a.n);
    rep.config("l", a.l);
    rep.config("tangent_roots", join(&roots));
    rep.config("theta", &theta);
    if let Some(nf) = &normal {
        rep.config("normal", nf);
    }
    rep.config("rank", a.rank);
    rep.config("hbar_order", order);
    let tf = if !a.weights.is_empty() || !a.eigenvalues.is_empty() {
        let (w, e) = (rats("weights", a.weights)?, rats("eigenvalues", a.eigenvalues)?);
        rep.config("weights", join(&w));
        rep.config("eigenvalues", join(&e));
        TraceFunctional::from_weights(&w, &e, order).map_err(CliError::domain)?
    } else if !a.moments.is_empty() {
        let m = rats("moments", a.moments)?;
        rep.config("moments", join(&m));
        TraceFunctional::from_rationals(&m).map_err(CliError::domain)?
    } else {
        return Err(CliError::input("index-density needs --moments or --weights with --eigenvalues"));
    };
    let mut cd = CurvatureData::new(roots, theta);
    cd.normal = normal;
    cd.rank = a.rank;
    let d = index_density(&cd, a.n, a.l, &tf, a.hbar_order).map_err(CliError::domain)?;
    let lines = d.component.lines();
    if lines.is_empty() {
        rep.raw("0");
    }
    for l in lines {
        rep.raw(l);
    }
    rep.put("degree", d.degree);
    rep.put("spellings_agree", yes_no(d.spellings_agree()));
    rep.put("nonnegative_hbar_order", yes_no(d.nonnegative_order()));
    Ok(())
}

fn dispatch(cli: &Cli, rep: &mut Report) -> Result<(), CliError> {
    match &cli.command {
        Command::AnalyzeGroup { file, group } => analyze_group(file, group.order_cap, rep),
        Command::Invariants { file, group } => invariants(file, group.order_cap, rep),
        Command::Orbifold { group, descriptor, caps } => orbifold(group, descriptor.as_deref(), caps.order_cap, rep),
        Command::DunklCheck { group, t, c, degree, pbw_level, caps } => {
            dunkl_check(group, t, c, *degree, *pbw_level, caps.order_cap, rep)
        }
        Command::HochschildCheck { cycle, cap, algebra } => hochschild_check(*cycle, *cap, algebra.as_deref(), rep),
        Command::IndexDensity { n, l, tangent_roots, theta, moments, weights, eigenvalues, normal, rank, hbar_order } => {
            density(
                DensityArgs {
                    n: *n,
                    l: *l,
                    tangent_roots,
                    theta,
                    moments,
                    weights,
                    eigenvalues,
                    normal: normal.as_deref(),
                    rank: *rank,
                    hbar_order: *hbar_order,
                },
                rep,
            )
        }
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::AnalyzeGroup { .. } => "analyze-group",
        Command::Invariants { .. } => "invariants",
        Command::Orbifold { .. } => "orbifold",
        Command::DunklCheck { .. } => "dunkl-check",
        Command::HochschildCheck { .. } => "hochschild-check",
        Command::IndexDensity { .. } => "index-density",
    }
}

/// Run with `argv` (program name first), writing the report to `out` and diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
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
    let mut rep = Report::new(subcommand_name(&cli.command));
    rep.config("format", if cli.format == Format::Lines { "lines" } else { "table" });
    let result = dispatch(&cli, &mut rep);
    let _ = out.write_all(rep.render(cli.format).as_bytes());
    match result {
        Ok(()) => 0,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: malformed input: {msg}");
            2
        }
        Err(CliError::Domain { name, msg }) => {
            let _ = writeln!(err, "error: {name}: {msg}");
            1
        }
    }
}
