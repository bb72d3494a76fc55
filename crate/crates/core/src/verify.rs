//! Acceptance suite shared by `ahmass verify-all` and the `acceptance` test target.
//!
//! Each criterion yields one headline line plus supplementary lines. A headline that fails
//! against a displayed closed form whose correct value is derived and checked elsewhere in the
//! suite is marked `known_discrepancy`; every other failure is fatal.

use crate::charges::michel::{fp_convergence, scal_constant_derived, scal_mass_vector};
use crate::charges::{bach_linearized, bach_report, cotton_reports, mu_p, ricci_coefficient, ricci_report, transverse_hw_vector};
use crate::error::Result;
use crate::exactcore::field::{q_to_f64, qr};
use crate::exactcore::sphere::sphere_volume;
use crate::exactcore::{monomials_of_degree, Field, Poly, PolyTensor, GQ, Q};
use crate::harmonic;
use crate::invariants::{check_equivariance_all, check_equivariance_finite, wang_mass_vector, Family};
use crate::lorentz::LorentzElement;
use crate::massaspect::{random_transverse, SphereQuadrature};
use crate::weylspace::space::{self, build_wp, signature_wp};
use crate::weylspace::tensors::linearized_riemann;
use crate::weylspace::{hw::hw_vectors_weyl, poincare_homotopy, weyl_to_potential, PolyForm};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Flag,
    Skip,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flag => "FLAG",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub criterion: u8,
    pub name: String,
    pub status: Status,
    pub known_discrepancy: bool,
    pub detail: String,
    /// Wall time of the whole criterion, set on the headline only.
    pub seconds: Option<f64>,
    pub budget_seconds: Option<f64>,
}

impl CheckLine {
    fn new(criterion: u8, name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CheckLine {
            criterion,
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            known_discrepancy: false,
            detail: detail.into(),
            seconds: None,
            budget_seconds: None,
        }
    }

    fn flag(criterion: u8, name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckLine { status: Status::Flag, ..CheckLine::new(criterion, name, true, detail) }
    }

    fn known(mut self) -> Self {
        if self.status == Status::Fail {
            self.known_discrepancy = true;
        }
        self
    }

    pub fn is_fatal(&self) -> bool {
        self.status == Status::Fail && !self.known_discrepancy
    }

    pub fn render(&self) -> String {
        let mut s = format!("[{}] criterion {:>2}: {}", self.status.label(), self.criterion, self.name);
        if let (Some(t), Some(b)) = (self.seconds, self.budget_seconds) {
            s.push_str(&format!(" ({:.2}s / {:.0}s)", t, b));
        }
        if self.known_discrepancy {
            s.push_str(" [known discrepancy in displayed value]");
        }
        if !self.detail.is_empty() {
            s.push_str(" -- ");
            s.push_str(&self.detail);
        }
        s
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Restrict every criterion to this n (criteria with no case at this n are skipped).
    pub n: Option<usize>,
    pub seed: u64,
    /// Only these criteria (all when empty).
    pub only: Vec<u8>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { n: None, seed: 2024, only: Vec::new() }
    }
}

impl SuiteConfig {
    fn ns(&self, all: &[usize]) -> Vec<usize> {
        all.iter().copied().filter(|n| self.n.is_none_or(|m| m == *n)).collect()
    }
}

pub const CRITERIA: [(u8, &str, f64); 10] = [
    (1, "dim H_p by exact nullspace, n in {3,4,5}, p <= 6", 10.0),
    (2, "signature of the invariant form on H_p, n in {3,4,5}, p <= 6", 10.0),
    (3, "dim W_p by exact nullspace, n = 3 p <= 3, n in {4,5} p <= 2", 300.0),
    (4, "signature of the invariant form on W_p, same range", 300.0),
    (5, "infinitesimal equivariance of the linear masses, exact", 120.0),
    (6, "finite equivariance of the conformal mass under rational boosts", 60.0),
    (7, "Cotton and Bach eigenvalues on highest-weight tensors", 120.0),
    (8, "Weyl-to-potential round trip and Poincare homotopy identity", 120.0),
    (9, "Michel charge convergence and Wang mass vector", 180.0),
    (10, "discrepancy flags and computed-side identities", 120.0),
];

fn headline(criterion: u8, ok: bool, detail: String) -> CheckLine {
    let name = CRITERIA[criterion as usize - 1].1;
    CheckLine::new(criterion, name, ok, detail)
}

fn skipped(criterion: u8, n: Option<usize>) -> Vec<CheckLine> {
    let mut l = headline(criterion, true, format!("no case at n = {}", n.unwrap_or(0)));
    l.status = Status::Skip;
    vec![l]
}

/// Runs one criterion and stamps the headline with its wall time and budget.
pub fn run_criterion(id: u8, cfg: &SuiteConfig) -> Vec<CheckLine> {
    let start = Instant::now();
    let mut lines = match id {
        1 => c1_dim_hp(cfg),
        2 => c2_signature_hp(cfg),
        3 => c3_dim_wp(cfg),
        4 => c4_signature_wp(cfg),
        5 => c5_infinitesimal(cfg),
        6 => c6_finite(cfg),
        7 => c7_eigenvalues(cfg),
        8 => c8_round_trip(cfg),
        9 => c9_charges(cfg),
        10 => c10_flags(cfg),
        _ => vec![CheckLine::new(id, "unknown criterion", false, "")],
    };
    let elapsed = start.elapsed().as_secs_f64();
    if let Some((_, _, budget)) = CRITERIA.iter().find(|c| c.0 == id) {
        let head = &mut lines[0];
        head.seconds = Some(elapsed);
        head.budget_seconds = Some(*budget);
        if elapsed > *budget && head.status != Status::Skip {
            head.status = Status::Fail;
            head.known_discrepancy = false;
            head.detail.push_str("; time budget exceeded");
        }
    }
    lines
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckLine> {
    CRITERIA
        .iter()
        .filter(|c| cfg.only.is_empty() || cfg.only.contains(&c.0))
        .flat_map(|c| run_criterion(c.0, cfg))
        .collect()
}

pub fn suite_ok(lines: &[CheckLine]) -> bool {
    !lines.iter().any(CheckLine::is_fatal)
}

fn grid(ns: &[usize], pmax: impl Fn(usize) -> usize) -> Vec<(usize, usize)> {
    ns.iter().flat_map(|&n| (0..=pmax(n)).map(move |p| (n, p))).collect()
}

fn mismatches<T: PartialEq + std::fmt::Debug>(rows: &[((usize, usize), T, T)]) -> Vec<String> {
    rows.iter().filter(|(_, a, b)| a != b).map(|((n, p), a, b)| format!("(n={n}, p={p}): {a:?} vs {b:?}")).collect()
}

fn c1_dim_hp(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let ns = cfg.ns(&[3, 4, 5]);
    if ns.is_empty() {
        return skipped(1, cfg.n);
    }
    let cases = grid(&ns, |_| 6);
    let rows: Vec<_> =
        cases.par_iter().map(|&(n, p)| ((n, p), harmonic::build_hp(n, p).basis.len(), harmonic::dim_formula(n, p))).collect();
    let bad = mismatches(&rows);
    vec![headline(1, bad.is_empty(), format!("{} cases exact{}", rows.len(), join_bad(&bad)))]
}

fn c2_signature_hp(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let ns = cfg.ns(&[3, 4, 5]);
    if ns.is_empty() {
        return skipped(2, cfg.n);
    }
    let cases = grid(&ns, |_| 6);
    let rows: Vec<_> =
        cases.par_iter().map(|&(n, p)| ((n, p), harmonic::signature_hp(n, p), harmonic::signature_formula(n, p))).collect();
    let bad = mismatches(&rows);
    vec![headline(2, bad.is_empty(), format!("{} cases exact{}", rows.len(), join_bad(&bad)))]
}

fn wp_cases(cfg: &SuiteConfig) -> Vec<(usize, usize)> {
    grid(&cfg.ns(&[3, 4, 5]), |n| if n == 3 { 3 } else { 2 })
}

fn c3_dim_wp(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let cases = wp_cases(cfg);
    if cases.is_empty() {
        return skipped(3, cfg.n);
    }
    let rows: Vec<_> = cases.par_iter().map(|&(n, p)| ((n, p), build_wp(n, p).dim(), space::dim_formula(n, p))).collect();
    let bad = mismatches(&rows);
    vec![headline(3, bad.is_empty(), format!("{} cases exact{}", rows.len(), join_bad(&bad)))]
}

fn c4_signature_wp(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let cases = wp_cases(cfg);
    if cases.is_empty() {
        return skipped(4, cfg.n);
    }
    let rows: Vec<_> = cases
        .par_iter()
        .map(|&(n, p)| {
            let sig = signature_wp(&build_wp(n, p)).map_err(|e| e.to_string());
            ((n, p), sig, Ok(space::signature_formula(n, p)))
        })
        .collect();
    let bad = mismatches(&rows);
    let mut lines = vec![headline(4, bad.is_empty(), format!("{} cases exact{}", rows.len(), join_bad(&bad)))];
    for ((n, p), sig, _) in rows.iter().filter(|r| r.0 .1 == 0) {
        if let Ok((a, b)) = sig {
            lines.push(CheckLine::new(4, format!("W_0 signature at n = {n}, p = {p}"), true, format!("({a}, {b})")));
        }
    }
    lines
}

fn join_bad(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; mismatches: {}", bad.join(", "))
    }
}

fn c5_infinitesimal(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let mut cases: Vec<(Family, usize, usize)> = Vec::new();
    for n in cfg.ns(&[3, 4]) {
        cases.extend((0..=3).map(|n1| (Family::Conformal, n, n1)));
    }
    for n in cfg.ns(&[4]) {
        cases.extend((0..=1).map(|n1| (Family::Weyl, n, n1)));
    }
    for n in cfg.ns(&[3]) {
        for fam in [Family::WeylPlus, Family::WeylMinus] {
            cases.extend((0..=1).map(|n1| (fam, n, n1)));
        }
    }
    if cases.is_empty() {
        return skipped(5, cfg.n);
    }
    let jobs: Vec<(Family, usize, usize, u64)> =
        cases.iter().flat_map(|&(f, n, n1)| (0..5u64).map(move |s| (f, n, n1, s))).collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(fam, n, n1, s)| {
            let seed = cfg.seed ^ (1000 * n as u64 + 100 * n1 as u64 + 10 * s);
            let m = random_transverse(n, fam.weight(n, n1), seed)?;
            let res = check_equivariance_all(fam, &m, n1)?;
            let nonzero = res.iter().filter(|(_, r)| !r.is_zero()).count();
            Ok(((fam, n, n1), res.len(), nonzero))
        })
        .collect::<Vec<Result<_>>>();
    let mut lines = Vec::new();
    let mut total = 0;
    let mut bad = Vec::new();
    for r in &results {
        match r {
            Ok(((fam, n, n1), checked, nonzero)) => {
                total += checked;
                if *nonzero > 0 {
                    bad.push(format!("{fam} n={n} n1={n1}: {nonzero} nonzero"));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    lines.push(headline(
        5,
        bad.is_empty(),
        format!("{} families x 5 aspects, {} generator residuals exactly 0{}", cases.len(), total, join_bad(&bad)),
    ));
    lines
}

fn c6_finite(cfg: &SuiteConfig) -> Vec<CheckLine> {
    if cfg.ns(&[3]).is_empty() {
        return skipped(6, cfg.n);
    }
    let n = 3;
    let boosts = [(qr(5, 4), qr(3, 4)), (qr(13, 12), qr(5, 12))];
    let mut jobs = Vec::new();
    for n1 in 0..=2usize {
        for (c, s) in &boosts {
            for dir in 1..=n {
                jobs.push((n1, c.clone(), s.clone(), dir));
            }
        }
    }
    let results: Vec<Result<(usize, f64)>> = jobs
        .par_iter()
        .map(|(n1, c, s, dir)| {
            let m = random_transverse(n, Family::Conformal.weight(n, *n1), cfg.seed + 7 * *n1 as u64)?;
            let a = LorentzElement::rational_boost(n, *dir, c.clone(), s.clone())?;
            Ok((*n1, check_equivariance_finite(Family::Conformal, &m, *n1, &a, 64)?))
        })
        .collect();
    let mut worst = 0.0f64;
    let mut errs = Vec::new();
    for r in results {
        match r {
            Ok((_, v)) => worst = worst.max(v),
            Err(e) => errs.push(e.to_string()),
        }
    }
    let ok = errs.is_empty() && worst < 1e-9;
    vec![headline(6, ok, format!("{} boosts, max residual {:.3e} (tolerance 1e-9){}", jobs.len(), worst, join_bad(&errs)))]
}

fn c7_eigenvalues(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    let mut cotton_ok = true;
    let mut cotton_detail = Vec::new();
    let with_cotton = !cfg.ns(&[3]).is_empty();
    if with_cotton {
        let reps: Vec<_> = (0..=4usize).into_par_iter().map(cotton_reports).collect();
        for (p, r) in reps.into_iter().enumerate() {
            match r {
                Ok(rs) => {
                    for e in rs {
                        cotton_ok &= e.matches;
                        cotton_detail.push(format!("p={p} {} -> {}", e.operator, show(&e.computed)));
                    }
                }
                Err(e) => {
                    cotton_ok = false;
                    cotton_detail.push(e.to_string());
                }
            }
        }
    }
    let bach_ns = cfg.ns(&[4, 5]);
    let cases = grid(&bach_ns, |_| 2);
    let bach: Vec<_> = cases
        .par_iter()
        .map(|&(n, p)| -> Result<_> {
            let rep = bach_report(n, p)?;
            let steps = bach_linearized(&transverse_hw_vector(n, p)?)?;
            Ok((n, p, rep, steps))
        })
        .collect();
    let mut printed_ok = true;
    let mut identities_ok = true;
    let mut derived_ok = true;
    let mut bach_detail = Vec::new();
    let mut bach_lines = Vec::new();
    for r in bach {
        match r {
            Ok((n, p, rep, steps)) => {
                let ids = steps.first_contraction_holds && steps.second_contraction_holds && steps.u_transverse;
                let derived = GQ::from_q(crate::charges::bach_derived(n, steps.degree));
                let dok = steps.eigenvalue.as_ref() == Some(&derived);
                printed_ok &= rep.matches;
                identities_ok &= ids;
                derived_ok &= dok;
                bach_detail.push(format!("n={n} p={p}: printed {} computed {}", rep.predicted, show(&rep.computed)));
                bach_lines.push(CheckLine::new(
                    7,
                    format!("Bach n = {n}, p = {p}: T-contraction identities and transverse U"),
                    ids,
                    format!("degree {}", steps.degree),
                ));
                bach_lines.push(CheckLine::new(
                    7,
                    format!("Bach n = {n}, p = {p}: computed eigenvalue equals (p+1)(n+p-2)K at the degree"),
                    dok,
                    format!("{} vs {}", show(&steps.eigenvalue), derived),
                ));
            }
            Err(e) => {
                printed_ok = false;
                identities_ok = false;
                bach_detail.push(e.to_string());
            }
        }
    }
    let ok = cotton_ok && printed_ok && identities_ok;
    let mut head = headline(
        7,
        ok,
        format!(
            "Cotton {} ({} checks); Bach displayed value {}",
            if cotton_ok { "exact" } else { "MISMATCH" },
            cotton_detail.len(),
            if cases.is_empty() { "not in range".to_string() } else { bach_detail.join("; ") }
        ),
    );
    if !with_cotton && cases.is_empty() {
        return skipped(7, cfg.n);
    }
    if cotton_ok && identities_ok && derived_ok {
        head = head.known();
    }
    lines.push(head);
    if with_cotton {
        lines.push(CheckLine::new(7, "Cotton -i(p+3)/2 and +i(p+3)/2, n = 3, p <= 4", cotton_ok, cotton_detail.join("; ")));
    }
    lines.extend(bach_lines);
    lines
}

fn show(v: &Option<GQ>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "not an eigenvector".into())
}

fn random_weyl(ws: &space::WeylSpace, rng: &mut ChaCha8Rng) -> PolyTensor<Q> {
    let mut w = PolyTensor::zero(ws.n + 1, 4, ws.n + 1);
    for _ in 0..3 {
        let i = rng.random_range(0..ws.dim());
        let c = qr(rng.random_range(-6..7), rng.random_range(1..5));
        w = w.add(&ws.tensor(i).scale(&c));
    }
    w
}

fn random_form(rng: &mut ChaCha8Rng, dim: usize) -> PolyForm<Q> {
    let k = rng.random_range(1..=3usize);
    let deg = rng.random_range(0..=3usize);
    let monos = monomials_of_degree(dim, deg);
    let mut w = PolyForm::zero(dim, k, dim);
    for _ in 0..3 {
        let mut idx: Vec<usize> = (0..dim).collect();
        for i in 0..k {
            let j = rng.random_range(i..dim);
            idx.swap(i, j);
        }
        idx.truncate(k);
        let e = monos[rng.random_range(0..monos.len())].clone();
        w.add_term(&idx, &Poly::monomial(e, qr(rng.random_range(-5..6), rng.random_range(1..4))));
    }
    w
}

fn c8_round_trip(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(8));
    let mut lines = Vec::new();
    let weyl_ok;
    let mut detail = Vec::new();
    if !cfg.ns(&[4]).is_empty() {
        let mut jobs = Vec::new();
        for p in 0..=1 {
            let ws = build_wp(4, p);
            for _ in 0..3 {
                jobs.push((p, random_weyl(&ws, &mut rng)));
            }
        }
        let res: Vec<Result<bool>> = jobs
            .par_iter()
            .map(|(_, w)| {
                let h = weyl_to_potential(w)?;
                Ok(linearized_riemann(&h) == w.scale(&qr(-1, 2)))
            })
            .collect();
        let good = res.iter().filter(|r| matches!(r, Ok(true))).count();
        weyl_ok = good == jobs.len();
        detail.push(format!("R(h) = -W/2 on {good}/{} random elements of W_0, W_1 (n = 4)", jobs.len()));
    } else {
        weyl_ok = true;
        detail.push("Weyl round trip needs n = 4".into());
    }
    let forms: Vec<PolyForm<Q>> = (0..10).map(|_| random_form(&mut rng, 4)).collect();
    let hom: Vec<bool> = forms
        .par_iter()
        .map(|w| match (poincare_homotopy(w), poincare_homotopy(&w.d())) {
            (Ok(a), Ok(b)) => a.d().add(&b) == *w,
            _ => false,
        })
        .collect();
    let hom_good = hom.iter().filter(|b| **b).count();
    detail.push(format!("dI + Id = id on {hom_good}/10 random forms"));
    lines.push(headline(8, weyl_ok && hom_good == 10, detail.join("; ")));
    lines
}

fn c9_charges(cfg: &SuiteConfig) -> Vec<CheckLine> {
    if cfg.ns(&[3]).is_empty() {
        return skipped(9, cfg.n);
    }
    let n = 3;
    let quad = SphereQuadrature::new(n, 32);
    let x = |i: usize| Poly::<Q>::var(n + 1, i);
    let us = [(0usize, Poly::one(n + 1)), (1, x(1)), (2, x(0).mul(&x(1)))];
    let runs: Vec<Result<_>> = us
        .par_iter()
        .map(|(p, u)| {
            let m = random_transverse(n, (p + n - 1) as u32, cfg.seed + 90 + *p as u64)?;
            Ok((*p, fp_convergence(&m, u, 14.0, &quad)?))
        })
        .collect();
    let mut lines = Vec::new();
    let mut printed_ok = true;
    let mut derived_ok = true;
    let mut detail = Vec::new();
    let mut sub = Vec::new();
    for r in runs {
        match r {
            Ok((p, c)) => {
                let within = (c.ratio_printed - 1.0).abs() <= 1e-3;
                printed_ok &= within;
                detail.push(format!("p={p}: ratio {:.6}", c.ratio_printed));
                // C_true(3, 1) = 0: the charge itself must vanish
                let (dok, what) = if c.constant_derived == 0.0 {
                    let tol = 1e-6 * c.reference.abs().max(1.0);
                    (c.limit.abs() <= tol, format!("limit {:.3e} with derived constant 0", c.limit))
                } else {
                    ((c.ratio_derived - 1.0).abs() <= 1e-3, format!("ratio {:.9}", c.ratio_derived))
                };
                derived_ok &= dok;
                sub.push(CheckLine::new(
                    9,
                    format!("F_{p} charge against C = (p-1)(p+n-1)(2p+n-1) = {}", c.constant_derived),
                    dok,
                    what,
                ));
            }
            Err(e) => {
                printed_ok = false;
                derived_ok = false;
                detail.push(e.to_string());
            }
        }
    }
    let wang = (|| -> Result<(bool, f64)> {
        let m = random_transverse(n, n as u32, cfg.seed + 99)?;
        let exact: Vec<f64> = wang_mass_vector(&m)?.iter().map(q_to_f64).collect();
        let num = scal_mass_vector(&m, 14.0, &quad)?;
        // one global constant, fitted on the largest component
        let (i, _) = exact.iter().enumerate().fold((0, 0.0), |b, (i, v)| if v.abs() > b.1 { (i, v.abs()) } else { b });
        let scale = num[i] / exact[i];
        let big = exact.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let worst_rel = num.iter().zip(&exact).map(|(a, b)| (a - scale * b).abs() / (scale * big).abs()).fold(0.0, f64::max);
        Ok((worst_rel <= 1e-6, scale / (scal_constant_derived(n) * sphere_volume(n))))
    })();
    let (wang_ok, wang_detail) = match wang {
        Ok((ok, c)) => (ok, format!("componentwise within 1e-6, fitted constant = {c:.9} n Vol(S^(n-1))")),
        Err(e) => (false, e.to_string()),
    };
    let mut head = headline(
        9,
        printed_ok && wang_ok,
        format!("F_p against displayed C(n,p): {}; Wang vector {}", detail.join(", "), if wang_ok { "ok" } else { "FAIL" }),
    );
    if !printed_ok && derived_ok && wang_ok {
        head = head.known();
    }
    lines.push(head);
    lines.extend(sub);
    lines.push(CheckLine::new(9, "Wang mass vector from Scal charges, up to one global constant", wang_ok, wang_detail));
    lines
}

fn c10_flags(cfg: &SuiteConfig) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    let mut ok = true;
    if !cfg.ns(&[3]).is_empty() {
        let reports: Vec<_> = (0..=2usize).into_par_iter().map(|p| hw_vectors_weyl(3, p)).collect();
        let mut closed_form_flags = 0;
        let mut xi_flags = 0;
        let mut constructed = true;
        for r in &reports {
            match r {
                Ok(rep) => {
                    closed_form_flags += rep.flags.iter().filter(|f| f.starts_with("closed form")).count();
                    xi_flags += rep.flags.iter().filter(|f| f.contains("xi_(p+2)w1")).count();
                    constructed &= rep.entries.iter().all(|e| e.vectors.len() == 1);
                    constructed &= rep.comparisons.iter().filter(|c| c.name.starts_with("H_pw1+(p+4)w2 with")).all(|c| c.matches);
                }
                Err(_) => constructed = false,
            }
        }
        ok &= closed_form_flags > 0 && xi_flags > 0 && constructed;
        lines.push(CheckLine::flag(
            10,
            "chiral highest-weight closed form (n = 3)",
            format!("{closed_form_flags} displayed closed forms are not weight vectors; constructed vectors unique and corrected form matches: {constructed}"),
        ));
        lines.push(CheckLine::flag(
            10,
            "vector-field subscript",
            format!("{xi_flags} reports: L_xi eta lies in the (p+4)w1 summand, not (p+2)w1"),
        ));
    }
    let mu_ns = cfg.ns(&[3, 4, 5]);
    let mu: Vec<_> = grid(&mu_ns, |_| 2).into_par_iter().map(|(n, p)| mu_p(n, p)).collect();
    let mut wrong_sign = 0;
    let mut mu_ok = true;
    for r in &mu {
        match r {
            Ok(m) => {
                if !m.printed_satisfies {
                    wrong_sign += 1;
                }
                let solves = m.mu.mul(&m.p1).add(&GQ::one().sub(&m.mu).mul(&m.p2)).is_zero();
                mu_ok &= solves && m.pipeline_kernel_holds.unwrap_or(true);
            }
            Err(_) => mu_ok = false,
        }
    }
    if !mu.is_empty() {
        ok &= mu_ok && wrong_sign > 0;
        lines.push(CheckLine::flag(
            10,
            "mu_p sign",
            format!("printed -p2/(p2-p1) violates mu p1 + (1-mu) p2 = 0 in {wrong_sign}/{} cases; solved mu and pipeline kernel hold: {mu_ok}", mu.len()),
        ));
    }
    let ric_ns = cfg.ns(&[4, 5]);
    let mut ric_ok = true;
    let mut ric_detail = Vec::new();
    for n in &ric_ns {
        let r = transverse_hw_vector(*n, 0).and_then(|k| ricci_report(&k.clone(), 0));
        match r {
            Ok(rep) => {
                let want = GQ::from_q(ricci_coefficient(*n, 2));
                ric_ok &= rep.computed.as_ref() == Some(&want) && !rep.note.is_empty();
                ric_detail.push(format!("n={n}: coefficient {}", show(&rep.computed)));
            }
            Err(e) => {
                ric_ok = false;
                ric_detail.push(e.to_string());
            }
        }
    }
    if !ric_ns.is_empty() {
        ok &= ric_ok;
        lines.push(CheckLine::flag(10, "degree-2 kernel claim for DRic*", format!("{}; zero only at n = 3", ric_detail.join(", "))));
    }
    if lines.is_empty() {
        return skipped(10, cfg.n);
    }
    let mut out = vec![headline(10, ok, format!("{} flag reports produced", lines.len()))];
    out.extend(lines);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rendering_and_exit_policy() {
        let fail = CheckLine::new(1, "x", false, "d");
        assert!(fail.is_fatal());
        let known = fail.clone().known();
        assert!(!known.is_fatal());
        assert!(known.render().contains("FAIL"));
        assert!(suite_ok(&[known, CheckLine::flag(10, "f", "")]));
        assert!(!suite_ok(&[fail]));
        assert!(CheckLine::new(2, "y", true, "").known().status == Status::Pass);
    }

    #[test]
    fn cheap_criteria_pass() {
        let cfg = SuiteConfig { n: Some(3), ..Default::default() };
        for id in [1, 2, 8] {
            let lines = run_criterion(id, &cfg);
            assert!(suite_ok(&lines), "{:?}", lines);
        }
        let lines = run_criterion(8, &SuiteConfig { n: Some(6), ..Default::default() });
        assert_eq!(lines[0].status, Status::Pass);
        assert_eq!(run_criterion(3, &SuiteConfig { n: Some(6), ..Default::default() })[0].status, Status::Skip);
    }
}
