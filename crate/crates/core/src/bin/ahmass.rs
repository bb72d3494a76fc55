use ahmass::charges::michel::{fp_convergence, scal_convergence, ChargeConvergence};
use ahmass::charges::{
    bach_report, chiral_hw_vectors, cotton_reports, mu_p, ricci_report, transverse_hw_vector, EigenReport, MuReport,
};
use ahmass::exactcore::field::{q_string, q_to_f64};
use ahmass::exactcore::json::{gq_json, parse_q_str, poly_to_json, q_json, tensor_to_json};
use ahmass::invariants::{check_equivariance_all, check_equivariance_finite, conformal_mass, mass_value, to_f64, Family};
use ahmass::lorentz::LorentzElement;
use ahmass::massaspect::{load_mass_aspect, SphereQuadrature, SphereTensor};
use ahmass::verify::{run_suite, suite_ok, SuiteConfig};
use ahmass::weylspace::hw::hw_vectors_weyl;
use ahmass::weylspace::space;
use ahmass::{harmonic, Error, Field, Poly, GQ, Q};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

// stdout writes that ignore a closed pipe
macro_rules! emit {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "ahmass", version, about = "Exact Lorentz representations and linear masses of asymptotically hyperbolic metrics")]
struct Cli {
    /// Output format
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Add floating-point approximations next to exact values
    #[arg(long, global = true)]
    float: bool,
    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceFamily {
    Harmonic,
    Weyl,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChargeKind {
    Fp,
    Scal,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions and signatures of H_p or W_p
    Spaces {
        #[arg(long, value_enum, default_value = "harmonic")]
        family: SpaceFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pmax: usize,
    },
    /// Highest-weight vectors of the Weyl decomposition at (n, p)
    Hw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
    },
    /// Linear mass of a mass aspect against H_{n1} or W_{n1}
    Mass {
        #[arg(long)]
        input: PathBuf,
        /// conformal, weyl, weyl+ or weyl-
        #[arg(long, default_value = "conformal")]
        family: Family,
        #[arg(long, default_value_t = 0)]
        n1: usize,
        /// Apply the leading-order transverse adjustment first
        #[arg(long)]
        transversalize: bool,
    },
    /// Infinitesimal (exact) and finite (quadrature) equivariance residuals
    Equivariance {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "conformal")]
        family: Family,
        #[arg(long, default_value_t = 0)]
        n1: usize,
        /// Rational boost "c,s,i": cosh, sinh and 1-based direction
        #[arg(long)]
        boost: Option<String>,
        #[arg(long, default_value_t = 64)]
        order: usize,
        #[arg(long)]
        transversalize: bool,
    },
    /// Curvature-operator eigenvalues on highest-weight tensors, with mu_p and flags
    Curvops {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pmax: usize,
    },
    /// Charge convergence table on the model metric b + e
    Charge {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 14.0)]
        rmax: f64,
        #[arg(long, value_enum, default_value = "fp")]
        kind: ChargeKind,
        /// Index of u in the basis of H_p (default: first with nonzero conformal mass)
        #[arg(long)]
        basis_index: Option<usize>,
        #[arg(long, default_value_t = 32)]
        order: usize,
        #[arg(long)]
        transversalize: bool,
    },
    /// Full acceptance suite
    VerifyAll {
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated criterion numbers
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Include wall times in JSON output
        #[arg(long)]
        timings: bool,
    },
}

enum Failure {
    Check(String),
    Usage(String),
    Parse(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Parse(e.to_string()),
            Error::Invalid(_) => Failure::Usage(e.to_string()),
            Error::Check(_) | Error::Internal(_) => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn require_n(n: usize) -> Result<(), Failure> {
    if (3..=6).contains(&n) {
        Ok(())
    } else {
        Err(usage(format!("n = {n} outside the supported range 3..=6")))
    }
}

struct Out {
    format: Format,
    float: bool,
}

impl Out {
    fn json(&self, v: &Value) {
        emit!("{}", serde_json::to_string_pretty(v).expect("serializable"));
    }

    fn q(&self, x: &Q) -> Value {
        if self.float {
            json!({"exact": q_string(x), "approx": q_to_f64(x)})
        } else {
            q_json(x)
        }
    }

    fn gq(&self, x: &GQ) -> Value {
        let mut v = gq_json(x);
        if self.float {
            let (re, im) = to_f64(x);
            v["approx"] = json!([re, im]);
        }
        v
    }

    fn table(&self, header: &[&str], rows: &[Vec<String>]) {
        emit!("{}", header.join(","));
        for r in rows {
            let cells: Vec<String> =
                r.iter().map(|c| if c.contains(',') || c.contains('"') { format!("\"{}\"", c.replace('"', "\"\"")) } else { c.clone() }).collect();
            emit!("{}", cells.join(","));
        }
    }
}

fn load(path: &PathBuf, adjust: bool) -> Result<SphereTensor, Failure> {
    if !path.exists() {
        return Err(usage(format!("input file {} not found", path.display())));
    }
    Ok(load_mass_aspect(path, adjust)?)
}

fn spaces(out: &Out, family: SpaceFamily, n: usize, pmax: usize) -> Outcome {
    require_n(n)?;
    let cap = match family {
        SpaceFamily::Harmonic => 8,
        SpaceFamily::Weyl => {
            if n == 3 {
                3
            } else {
                2
            }
        }
    };
    if pmax > cap {
        return Err(usage(format!("pmax = {pmax} above the cap {cap} for this family and n")));
    }
    let rows: Vec<(usize, usize, (usize, usize), usize, (usize, usize))> = (0..=pmax)
        .map(|p| -> Result<_, Failure> {
            Ok(match family {
                SpaceFamily::Harmonic => {
                    let dim = harmonic::build_hp(n, p).basis.len();
                    (p, dim, harmonic::signature_hp(n, p), harmonic::dim_formula(n, p), harmonic::signature_formula(n, p))
                }
                SpaceFamily::Weyl => {
                    let ws = space::build_wp(n, p);
                    (p, ws.dim(), space::signature_wp(&ws)?, space::dim_formula(n, p), space::signature_formula(n, p))
                }
            })
        })
        .collect::<Result<_, _>>()?;
    let ok = rows.iter().all(|(_, d, s, df, sf)| d == df && s == sf);
    match out.format {
        Format::Csv | Format::Text => {
            let t: Vec<Vec<String>> = rows
                .iter()
                .map(|(p, d, s, df, sf)| {
                    vec![n, *p, *d, s.0, s.1, *df, sf.0, sf.1].iter().map(|x| x.to_string()).collect::<Vec<_>>()
                })
                .collect();
            out.table(&["n", "p", "dim", "n_plus", "n_minus", "dim_formula", "n_plus_formula", "n_minus_formula"], &t);
        }
        Format::Json => {
            let family = match family {
                SpaceFamily::Harmonic => "harmonic",
                SpaceFamily::Weyl => "weyl",
            };
            let rs: Vec<Value> = rows
                .iter()
                .map(|(p, d, s, df, sf)| {
                    json!({"n": n, "p": p, "dim": d, "signature": [s.0, s.1], "dim_formula": df,
                           "signature_formula": [sf.0, sf.1], "matches": d == df && s == sf})
                })
                .collect();
            out.json(&json!({"family": family, "rows": rs, "all_match": ok}));
        }
    }
    Ok(ok)
}

fn hw(out: &Out, n: usize, p: usize) -> Outcome {
    require_n(n)?;
    let cap = if n == 3 { 4 } else { 2 };
    if p > cap {
        return Err(usage(format!("p = {p} above the cap {cap} for n = {n}")));
    }
    let r = hw_vectors_weyl(n, p)?;
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            json!({"label": e.label, "weight": e.weight, "count": e.vectors.len(), "de_donder": e.de_donder,
                   "transverse": e.transverse, "weyl_dimension": out.q(&e.weyl_dimension),
                   "vectors": e.vectors.iter().map(tensor_to_json).collect::<Vec<_>>()})
        })
        .collect();
    let comps: Vec<Value> =
        r.comparisons.iter().map(|c| json!({"name": c.name, "matches": c.matches, "note": c.note})).collect();
    let consistent = r.dimension_sum == Q::from_integer((r.dimension_expected as i64).into());
    match out.format {
        Format::Json => out.json(&json!({
            "n": n, "p": p, "entries": entries, "comparisons": comps, "flags": r.flags,
            "dimension_sum": out.q(&r.dimension_sum), "dimension_expected": r.dimension_expected,
            "weyl_space_dimension": out.q(&r.weyl_space_dimension),
        })),
        _ => {
            let t: Vec<Vec<String>> = r
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.label.clone(),
                        format!("{:?}", e.weight),
                        e.vectors.len().to_string(),
                        q_string(&e.weyl_dimension),
                        e.de_donder.to_string(),
                        e.transverse.to_string(),
                    ]
                })
                .collect();
            out.table(&["label", "weight", "count", "weyl_dimension", "de_donder", "transverse"], &t);
            for f in &r.flags {
                eprintln!("flag: {f}");
            }
        }
    }
    Ok(consistent)
}

fn mass(out: &Out, input: &PathBuf, family: Family, n1: usize, adjust: bool) -> Outcome {
    let m = load(input, adjust)?;
    let v = mass_value(family, &m, n1)?;
    let coeffs: Vec<Value> = v.coefficients.iter().map(|c| out.gq(c)).collect();
    match out.format {
        Format::Json => out.json(&json!({
            "family": family.to_string(), "n": v.n, "n1": n1, "k": v.k,
            "normalization": "relative to Vol(S^(n-1))", "coefficients": coeffs,
        })),
        _ => {
            let t: Vec<Vec<String>> = v
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), q_string(&c.real_part()), q_string(&c.imag_part())])
                .collect();
            out.table(&["basis_index", "re", "im"], &t);
        }
    }
    Ok(true)
}

fn parse_boost(s: &str, n: usize) -> Result<LorentzElement, Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(usage(format!("--boost expects c,s,i, got {s:?}")));
    }
    let c = parse_q_str(parts[0]).map_err(usage)?;
    let sh = parse_q_str(parts[1]).map_err(usage)?;
    let i: usize = parts[2].parse().map_err(|_| usage(format!("bad boost direction {:?}", parts[2])))?;
    Ok(LorentzElement::rational_boost(n, i, c, sh)?)
}

fn equivariance(out: &Out, input: &PathBuf, family: Family, n1: usize, boost: Option<&str>, order: usize, adjust: bool) -> Outcome {
    let m = load(input, adjust)?;
    if !(1..=256).contains(&order) {
        return Err(usage("quadrature order outside 1..=256"));
    }
    let res = check_equivariance_all(family, &m, n1)?;
    let mut ok = res.iter().all(|(_, r)| r.is_zero());
    let gens: Vec<Value> = res
        .iter()
        .map(|(g, r)| json!({"generator": g.to_string(), "max_abs": out.q(&r.max_abs), "nonzero": r.nonzero, "checked": r.checked}))
        .collect();
    let finite = match boost {
        Some(b) => {
            let a = parse_boost(b, m.n)?;
            let r = check_equivariance_finite(family, &m, n1, &a, order)?;
            ok &= r < 1e-9;
            Some(json!({"boost": b, "order": order, "max_residual": r, "tolerance": 1e-9}))
        }
        None => None,
    };
    match out.format {
        Format::Json => out.json(&json!({"family": family.to_string(), "n": m.n, "n1": n1, "k": m.k,
                                          "infinitesimal": gens, "finite": finite, "ok": ok})),
        _ => {
            let t: Vec<Vec<String>> = res
                .iter()
                .map(|(g, r)| vec![g.to_string(), q_string(&r.max_abs), r.nonzero.to_string(), r.checked.to_string()])
                .collect();
            out.table(&["generator", "max_abs", "nonzero", "checked"], &t);
            if let Some(f) = finite {
                eprintln!("finite: {f}");
            }
        }
    }
    Ok(ok)
}

fn report_json(out: &Out, e: &EigenReport) -> Value {
    json!({"operator": e.operator, "n": e.n, "p": e.p, "degree": e.degree, "predicted": out.gq(&e.predicted),
           "computed": e.computed.as_ref().map(|c| out.gq(c)), "matches": e.matches, "note": e.note})
}

fn mu_json(out: &Out, m: &MuReport) -> Value {
    json!({"n": m.n, "p": m.p, "p1": out.gq(&m.p1), "p2": out.gq(&m.p2), "mu": out.gq(&m.mu),
           "printed": out.gq(&m.printed), "printed_satisfies": m.printed_satisfies,
           "p1_pipeline": out.gq(&m.p1_pipeline), "p2_pipeline": m.p2_pipeline.as_ref().map(|x| out.gq(x)),
           "mu_pipeline": m.mu_pipeline.as_ref().map(|x| out.gq(x)), "kernel_holds": m.kernel_holds,
           "pipeline_kernel_holds": m.pipeline_kernel_holds})
}

fn curvops(out: &Out, n: usize, pmax: usize) -> Outcome {
    require_n(n)?;
    let cap = if n == 3 { 4 } else { 2 };
    if pmax > cap {
        return Err(usage(format!("pmax = {pmax} above the cap {cap} for n = {n}")));
    }
    let mut reports = Vec::new();
    let mut mus = Vec::new();
    let mut flags = Vec::new();
    for p in 0..=pmax {
        if n == 3 {
            reports.extend(cotton_reports(p)?);
            for k in chiral_hw_vectors(p)? {
                reports.push(ricci_report(&k, p)?);
            }
        } else {
            reports.push(bach_report(n, p)?);
            reports.push(ricci_report(&transverse_hw_vector(n, p)?, p)?);
        }
        let m = mu_p(n, p)?;
        if !m.printed_satisfies {
            flags.push(format!("p = {p}: printed mu_p = -p2/(p2-p1) = {} violates mu p1 + (1-mu) p2 = 0; solved mu = {}", m.printed, m.mu));
        }
        mus.push(m);
    }
    for r in &reports {
        if !r.matches {
            flags.push(format!("{} p = {}: displayed {} vs computed {}", r.operator, r.p, r.predicted,
                r.computed.as_ref().map(|c| c.to_string()).unwrap_or_else(|| "none".into())));
        }
        if !r.note.is_empty() && r.operator == "ricci" {
            flags.push(r.note.clone());
        }
    }
    flags.dedup();
    // the computed-side identities: every operator acts diagonally and mu annihilates the tensor
    let ok = reports.iter().all(|r| r.computed.is_some()) && mus.iter().all(|m| m.pipeline_kernel_holds.unwrap_or(false));
    match out.format {
        Format::Json => out.json(&json!({
            "n": n, "pmax": pmax,
            "reports": reports.iter().map(|r| report_json(out, r)).collect::<Vec<_>>(),
            "mu": mus.iter().map(|m| mu_json(out, m)).collect::<Vec<_>>(),
            "flags": flags,
        })),
        _ => {
            let t: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.operator.clone(),
                        r.n.to_string(),
                        r.p.to_string(),
                        r.degree.to_string(),
                        r.predicted.to_string(),
                        r.computed.as_ref().map(|c| c.to_string()).unwrap_or_default(),
                        r.matches.to_string(),
                        r.note.clone(),
                    ]
                })
                .collect();
            out.table(&["operator", "n", "p", "degree", "predicted", "computed", "matches", "note"], &t);
            for m in &mus {
                eprintln!("mu_{}: solved {} printed {} pipeline {}", m.p, m.mu, m.printed,
                    m.mu_pipeline.as_ref().map(|x| x.to_string()).unwrap_or_default());
            }
            for f in &flags {
                eprintln!("flag: {f}");
            }
        }
    }
    Ok(ok)
}

fn pick_u(m: &SphereTensor, p: usize, index: Option<usize>) -> Result<Poly<Q>, Failure> {
    let basis = harmonic::build_hp(m.n, p).basis;
    match index {
        Some(i) => basis.get(i).cloned().ok_or_else(|| usage(format!("basis index {i} outside 0..{}", basis.len()))),
        None => {
            for u in &basis {
                if !conformal_mass(m, u)?.is_zero() {
                    return Ok(u.clone());
                }
            }
            Ok(basis[0].clone())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn charge(out: &Out, input: &PathBuf, p: usize, rmax: f64, kind: ChargeKind, index: Option<usize>, order: usize, adjust: bool) -> Outcome {
    let m = load(input, adjust)?;
    if !(2.0..=30.0).contains(&rmax) {
        return Err(usage("rmax outside [2, 30]"));
    }
    if !(4..=128).contains(&order) {
        return Err(usage("quadrature order outside 4..=128"));
    }
    let quad = SphereQuadrature::new(m.n, order);
    let (u, conv): (Poly<Q>, ChargeConvergence) = match kind {
        ChargeKind::Fp => {
            if p > 4 {
                return Err(usage("p above the cap 4"));
            }
            let u = pick_u(&m, p, index)?;
            let c = fp_convergence(&m, &u, rmax, &quad)?;
            (u, c)
        }
        ChargeKind::Scal => {
            let u = pick_u(&m, 1, index)?;
            let c = scal_convergence(&m, &u, rmax, &quad)?;
            (u, c)
        }
    };
    let finite = conv.limit.is_finite() && conv.rows.iter().all(|r| r.charge.is_finite());
    match out.format {
        Format::Json => out.json(&json!({
            "n": m.n, "k": m.k, "p": p, "u": poly_to_json(&u),
            "rows": conv.rows.iter().map(|r| json!({"r": r.r, "charge": r.charge, "ratio": r.ratio})).collect::<Vec<_>>(),
            "limit": conv.limit, "reference": conv.reference,
            "constant_printed": conv.constant_printed, "constant_derived": conv.constant_derived,
            "ratio_printed": conv.ratio_printed, "ratio_derived": conv.ratio_derived,
            "observed_rate": conv.observed_rate,
        })),
        _ => {
            let t: Vec<Vec<String>> =
                conv.rows.iter().map(|r| vec![format!("{}", r.r), format!("{:.12e}", r.charge), format!("{:.12}", r.ratio)]).collect();
            out.table(&["r", "charge", "ratio"], &t);
            eprintln!(
                "limit {:.12e}; ratio to displayed constant {:.9}; ratio to derived constant {:.9}",
                conv.limit, conv.ratio_printed, conv.ratio_derived
            );
        }
    }
    Ok(finite)
}

fn verify_all(out: &Out, n: Option<usize>, only: Vec<u8>, seed: u64, timings: bool) -> Outcome {
    if let Some(n) = n {
        require_n(n)?;
    }
    if let Some(bad) = only.iter().find(|c| !(1..=10).contains(*c)) {
        return Err(usage(format!("criterion {bad} outside 1..=10")));
    }
    let mut lines = run_suite(&SuiteConfig { n, seed, only });
    let ok = suite_ok(&lines);
    match out.format {
        Format::Json => {
            if !timings {
                for l in &mut lines {
                    l.seconds = None;
                }
            }
            out.json(&json!({"lines": lines, "ok": ok}));
        }
        Format::Csv => {
            let t: Vec<Vec<String>> = lines
                .iter()
                .map(|l| {
                    vec![l.criterion.to_string(), l.status.label().into(), l.known_discrepancy.to_string(), l.name.clone(), l.detail.clone()]
                })
                .collect();
            out.table(&["criterion", "status", "known_discrepancy", "name", "detail"], &t);
        }
        Format::Text => {
            for l in &lines {
                emit!("{}", l.render());
            }
            emit!("verify-all: {}", if ok { "ok" } else { "FAILED" });
        }
    }
    Ok(ok)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("AHMASS_THREADS") {
        let t: usize = v.trim().parse().map_err(|_| usage(format!("AHMASS_THREADS must be a positive integer, got {v:?}")))?;
        if t == 0 {
            return Err(usage("AHMASS_THREADS must be positive"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().map_err(|e| Failure::Check(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    let default = if matches!(cli.command, Command::VerifyAll { .. }) { Format::Text } else { Format::Json };
    let out = Out { format: cli.format.unwrap_or(default), float: cli.float };
    match cli.command {
        Command::Spaces { family, n, pmax } => spaces(&out, family, n, pmax),
        Command::Hw { n, p } => hw(&out, n, p),
        Command::Mass { input, family, n1, transversalize } => mass(&out, &input, family, n1, transversalize),
        Command::Equivariance { input, family, n1, boost, order, transversalize } => {
            equivariance(&out, &input, family, n1, boost.as_deref(), order, transversalize)
        }
        Command::Curvops { n, pmax } => curvops(&out, n, pmax),
        Command::Charge { input, p, rmax, kind, basis_index, order, transversalize } => {
            charge(&out, &input, p, rmax, kind, basis_index, order, transversalize)
        }
        Command::VerifyAll { n, only, timings } => verify_all(&out, n, only, cli.seed, timings),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
