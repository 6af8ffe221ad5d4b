//! Seeded verification suites.
//!
//! Every suite is a list of tasks. Task `i` of suite `s` draws its
//! parameters from `ChaCha8Rng::seed_from_u64(seed)` on stream
//! `s << 32 | i`, so the output depends only on the seed and the options,
//! never on thread scheduling. Tasks run on the rayon pool and their
//! records are concatenated in task order.

use crate::error::{Error, Result};
use crate::fourier_xform::{
    ft_closed_form, ft_oracle_check, ft_recursion_check, g_recursion_check, lambda_form_check, GParams,
};
use crate::hypergeom::pfq;
use crate::index::{AlphaVector, MultiIndex, ParamVector};
use crate::numerics::{beta, c, gamma, pochhammer, Complex};
use crate::quadrature::{gauss_jacobi, simplex_rule};
use crate::recurrences::{
    corrected_coefficients, find_errata, sample_params, terms, BruteForceFit, Erratum, Family, RelationId,
    RelationParams,
};
use crate::report::{ParamsBuilder, Summary, VerificationReport};
use crate::sfamily::{s_form_check, s_orthogonality_check, s_orthogonality_lhs, s_relation_check, SParams, SRelation};
use crate::simplex_poly::{h_norm, orthogonality_check};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

/// Output schema version written in the header line.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Numerics,
    Orthogonality,
    Fourier,
    Sfamily,
    Recurrence,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Numerics,
        Suite::Orthogonality,
        Suite::Fourier,
        Suite::Sfamily,
        Suite::Recurrence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Numerics => "numerics",
            Suite::Orthogonality => "orthogonality",
            Suite::Fourier => "fourier",
            Suite::Sfamily => "sfamily",
            Suite::Recurrence => "recurrence",
            Suite::All => "all",
        }
    }

    fn stream_base(self) -> u64 {
        (self as u64 + 1) << 32
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::ParameterRange(format!("unknown suite {s:?}")))
    }
}

/// Options shared by all suites. `None` picks the suite default.
#[derive(Debug, Clone, Default)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tolerance: Option<f64>,
    /// Random draws per check family.
    pub samples: Option<usize>,
    /// Restrict the recurrence suite to one relation.
    pub id: Option<RelationId>,
    /// Emit the least-squares fit for every relation.
    pub brute_force: bool,
    /// Fill `runtime_ms`; breaks byte-for-byte reproducibility.
    pub timings: bool,
    /// Restrict rank-dependent sweeps to one rank.
    pub r: Option<usize>,
    pub max_degree: Option<usize>,
}

impl VerifyConfig {
    pub fn seeded(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn ranks(&self, default: &[usize]) -> Vec<usize> {
        match self.r {
            Some(r) => vec![r],
            None => default.to_vec(),
        }
    }

    fn rng(&self, suite: Suite, task: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(suite.stream_base() | task as u64);
        rng
    }
}

/// One line of output.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Record {
    Header { schema: u32 },
    Report(VerificationReport),
    Erratum { erratum: Erratum },
    Fit { brute_force: BruteForceFit },
    Summary { summary: Summary },
}

#[derive(Debug, Clone, Default)]
pub struct SuiteOutput {
    pub records: Vec<Record>,
}

impl SuiteOutput {
    pub fn reports(&self) -> impl Iterator<Item = &VerificationReport> {
        self.records.iter().filter_map(|r| match r {
            Record::Report(v) => Some(v),
            _ => None,
        })
    }

    pub fn errata(&self) -> impl Iterator<Item = &Erratum> {
        self.records.iter().filter_map(|r| match r {
            Record::Erratum { erratum } => Some(erratum),
            _ => None,
        })
    }

    pub fn all_passed(&self) -> bool {
        self.reports().all(|r| r.passed)
    }

    /// JSON lines: the schema header, then every record.
    pub fn write_json_lines(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(w, "{}", to_json(&Record::Header { schema: SCHEMA }))?;
        for r in &self.records {
            writeln!(w, "{}", to_json(r))?;
        }
        Ok(())
    }
}

fn to_json(r: &Record) -> String {
    serde_json::to_string(r).expect("records serialize")
}

type Task<'a> = Box<dyn Fn(&mut ChaCha8Rng) -> Vec<Record> + Send + Sync + 'a>;

fn run_tasks(cfg: &VerifyConfig, suite: Suite, tasks: Vec<Task<'_>>) -> Vec<Record> {
    tasks
        .par_iter()
        .enumerate()
        .map(|(i, task)| {
            let mut rng = cfg.rng(suite, i);
            let start = Instant::now();
            let mut out = task(&mut rng);
            if cfg.timings {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                for r in &mut out {
                    if let Record::Report(v) = r {
                        v.runtime_ms = Some(ms);
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Converts a failed evaluation into a failing report.
fn settle(id: &str, params: ParamsBuilder, tol: f64, r: Result<VerificationReport>) -> Record {
    Record::Report(r.unwrap_or_else(|e| VerificationReport::error(id, params.build(), tol, e.to_string())))
}

/// Runs a suite; `All` runs every suite in order with one summary each and
/// a final overall summary.
pub fn run(suite: Suite, cfg: &VerifyConfig) -> SuiteOutput {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut records = Vec::new();
    let mut all_reports = Vec::new();
    let mut all_errata = 0;
    for s in suites {
        let recs = match s {
            Suite::Numerics => numerics_suite(cfg),
            Suite::Orthogonality => orthogonality_suite(cfg),
            Suite::Fourier => fourier_suite(cfg),
            Suite::Sfamily => sfamily_suite(cfg),
            Suite::Recurrence => recurrence_suite(cfg),
            Suite::All => unreachable!(),
        };
        let reports: Vec<VerificationReport> = recs
            .iter()
            .filter_map(|r| match r {
                Record::Report(v) => Some(v.clone()),
                _ => None,
            })
            .collect();
        let errata = recs.iter().filter(|r| matches!(r, Record::Erratum { .. })).count();
        records.extend(recs);
        records.push(Record::Summary {
            summary: Summary::of(s.name(), &reports, errata),
        });
        all_reports.extend(reports);
        all_errata += errata;
    }
    if suite == Suite::All {
        records.push(Record::Summary {
            summary: Summary::of("all", &all_reports, all_errata),
        });
    }
    SuiteOutput { records }
}

pub fn numerics_suite(cfg: &VerifyConfig) -> Vec<Record> {
    let n = cfg.samples(20);
    let gj_tol = cfg.tol(1e-13);
    let gamma_tol = cfg.tol(1e-12);
    let cv_tol = cfg.tol(1e-11);
    let mut tasks: Vec<Task> = Vec::new();
    for points in 1..=12usize {
        tasks.push(Box::new(move |rng| {
            let (al, be) = (rng.gen_range(-0.5..2.0), rng.gen_range(-0.5..2.0));
            gauss_jacobi_reports(points, al, be, gj_tol)
        }));
    }
    for _ in 0..n {
        tasks.push(Box::new(move |rng| {
            let z = Complex::new(rng.gen_range(0.1..20.0), rng.gen_range(-20.0..20.0));
            let y = rng.gen_range(0.1..5.0);
            let params = ParamsBuilder::new().with("z", z);
            let rec = (|| {
                let lhs = gamma(z + 1.0)?;
                let rhs = z * gamma(z)?;
                Ok(VerificationReport::relative(
                    "gamma_recurrence",
                    params.clone().build(),
                    lhs,
                    rhs,
                    f64::MIN_POSITIVE,
                    gamma_tol,
                ))
            })();
            let refl_params = ParamsBuilder::new().with("y", y);
            let refl = gamma(Complex::new(0.5, y)).map(|g| {
                VerificationReport::relative(
                    "gamma_reflection",
                    refl_params.clone().build(),
                    c(g.norm_sqr() * (PI * y).cosh()),
                    c(PI),
                    0.0,
                    gamma_tol,
                )
            });
            vec![
                settle("gamma_recurrence", params, gamma_tol, rec),
                settle("gamma_reflection", refl_params, gamma_tol, refl),
            ]
        }));
        tasks.push(Box::new(move |rng| {
            let k = rng.gen_range(0..=10usize);
            let b = rng.gen_range(-3.0..3.0);
            let cc = rng.gen_range(0.1..5.0);
            let params = ParamsBuilder::new().with("n", k).with("b", b).with("c", cc);
            let rep = pfq(&[c(-(k as f64)), c(b)], &[c(cc)], c(1.0)).map(|lhs| {
                let rhs = pochhammer(c(cc - b), k) / pochhammer(c(cc), k);
                VerificationReport::relative("chu_vandermonde", params.clone().build(), lhs, rhs, 1.0, cv_tol)
            });
            vec![settle("chu_vandermonde", params, cv_tol, rep)]
        }));
    }
    run_tasks(cfg, Suite::Numerics, tasks)
}

/// Integrates `(1+x)^k` and `(1-x)^k` for `k = 2n-1` against the Jacobi
/// weight and compares with the Beta-function moments.
fn gauss_jacobi_reports(points: usize, al: f64, be: f64, tol: f64) -> Vec<Record> {
    let k = 2 * points - 1;
    let params = ParamsBuilder::new()
        .with("points", points)
        .with("alpha", al)
        .with("beta", be)
        .with("degree", k);
    let kf = k as f64;
    let run = |plus: bool| -> Result<VerificationReport> {
        let rule = gauss_jacobi(points, al, be)?;
        let lhs = rule.integrate(|x| if plus { (1.0 + x[0]).powi(k as i32) } else { (1.0 - x[0]).powi(k as i32) });
        let rhs = if plus {
            2f64.powf(al + be + kf + 1.0) * beta(c(al + 1.0), c(be + kf + 1.0))?.re
        } else {
            2f64.powf(al + be + kf + 1.0) * beta(c(al + kf + 1.0), c(be + 1.0))?.re
        };
        let side = if plus { "1+x" } else { "1-x" };
        Ok(VerificationReport::relative(
            "gauss_jacobi_exactness",
            params.clone().with("monomial", side).build(),
            c(lhs),
            c(rhs),
            0.0,
            tol,
        ))
    };
    vec![
        settle("gauss_jacobi_exactness", params.clone(), tol, run(true)),
        settle("gauss_jacobi_exactness", params.clone(), tol, run(false)),
    ]
}

/// Orthogonality of the simplex basis for every pair of multi-indices up to
/// the maximal degree. Residuals are measured against `sqrt(h_n h_m)`.
pub fn orthogonality_suite(cfg: &VerifyConfig) -> Vec<Record> {
    let draws = cfg.samples(10);
    let max_degree = cfg.max_degree.unwrap_or(4);
    let tol = cfg.tol(1e-10);
    let mut tasks: Vec<Task> = Vec::new();
    for r in cfg.ranks(&[1, 2, 3]) {
        for _ in 0..draws {
            tasks.push(Box::new(move |rng| {
                let alpha: Vec<f64> = (0..=r).map(|_| rng.gen_range(-0.5..2.0)).collect();
                simplex_orthogonality_reports(r, max_degree, &alpha, tol)
            }));
        }
    }
    run_tasks(cfg, Suite::Orthogonality, tasks)
}

fn simplex_orthogonality_reports(r: usize, max_degree: usize, alpha: &[f64], tol: f64) -> Vec<Record> {
    let av = AlphaVector::new(alpha);
    let params = ParamsBuilder::new().with("r", r).with("alpha", alpha);
    let rule = match simplex_rule(r, 2 * max_degree, alpha) {
        Ok(rule) => rule,
        Err(e) => {
            return vec![Record::Report(VerificationReport::error(
                "simplex_orthogonality",
                params.build(),
                tol,
                e.to_string(),
            ))]
        }
    };
    let idx = MultiIndex::up_to_total(r, max_degree);
    let mut out = Vec::new();
    for (i, n) in idx.iter().enumerate() {
        for m in &idx[i..] {
            let rep = orthogonality_check(n, m, &av, &rule, tol).and_then(|rep| {
                let scale = (h_norm(n, &av)? * h_norm(m, &av)?).sqrt();
                Ok(VerificationReport::compare(rep.identity_id, rep.parameters, rep.lhs, rep.rhs, scale, tol))
            });
            out.push(settle("simplex_orthogonality", params.clone(), tol, rep));
        }
    }
    out
}

const XI_GRID: [f64; 5] = [-3.0, -1.0, 0.0, 1.0, 3.0];

fn grid(r: usize) -> Vec<Vec<f64>> {
    let mut pts = vec![vec![]];
    for _ in 0..r {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                XI_GRID.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    pts
}

fn random_g<R: Rng>(r: usize, max_n: usize, rng: &mut R) -> Result<GParams> {
    let n: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=max_n)).collect();
    let a: Vec<f64> = (0..=r).map(|_| rng.gen_range(0.5..2.0)).collect();
    let alpha: Vec<f64> = (0..=r).map(|_| rng.gen_range(-0.5..2.0)).collect();
    GParams::new(MultiIndex(n), ParamVector(a), ParamVector(alpha))
}

/// Fourier transform of `g_r`: closed form against quadrature on the `ξ`
/// grid, the two closed forms of `Λ_j`, and both rank recursions.
pub fn fourier_suite(cfg: &VerifyConfig) -> Vec<Record> {
    let draws = cfg.samples(20);
    let tol = cfg.tol(1e-8);
    let eq_tol = cfg.tol(1e-11);
    let spot_tol = cfg.tol(1e-12);
    let mut tasks: Vec<Task> = Vec::new();
    tasks.push(Box::new(move |_| {
        let params = ParamsBuilder::new().with("r", 1).with("n", [0]).with("a", [1.0, 1.0]).with("xi", [0.0]);
        let rep = GParams::new(MultiIndex::new(&[0]), ParamVector::new(&[1.0, 1.0]), ParamVector::new(&[0.0, 0.0]))
            .and_then(|p| ft_closed_form(&p, &[0.0]))
            .map(|v| VerificationReport::relative("ft_spot_value", params.clone().build(), v, c(2.0), 0.0, spot_tol));
        vec![settle("ft_spot_value", params, spot_tol, rep)]
    }));
    for r in cfg.ranks(&[1, 2]) {
        for _ in 0..draws {
            tasks.push(Box::new(move |rng| {
                let p = match random_g(r, 3, rng) {
                    Ok(p) => p,
                    Err(e) => return vec![error_record("ft_closed_form_vs_quadrature", tol, e)],
                };
                let mut out = Vec::new();
                for xi in grid(r) {
                    let params = ParamsBuilder::new().with("xi", &xi);
                    out.push(settle("ft_closed_form_vs_quadrature", params.clone(), tol, ft_oracle_check(&p, &xi, tol)));
                    for (j, &x) in xi.iter().enumerate() {
                        out.push(settle("lambda_hahn_form", params.clone(), eq_tol, lambda_form_check(j + 1, &p, x, eq_tol)));
                    }
                }
                out
            }));
        }
    }
    let rec_ranks: Vec<usize> = cfg.ranks(&[2, 3]).into_iter().filter(|&r| r >= 2).collect();
    if !rec_ranks.is_empty() {
        for i in 0..cfg.samples(50) {
            let r = rec_ranks[i % rec_ranks.len()];
            tasks.push(Box::new(move |rng| {
                let p = match random_g(r, 3, rng) {
                    Ok(p) => p,
                    Err(e) => return vec![error_record("g_rank_recursion", eq_tol, e)],
                };
                let x: Vec<f64> = (0..r).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let xi: Vec<f64> = (0..r).map(|_| rng.gen_range(-3.0..3.0)).collect();
                let params = ParamsBuilder::new().with("x", &x);
                vec![
                    settle("g_rank_recursion", params.clone(), eq_tol, g_recursion_check(&p, &x, eq_tol)),
                    settle("ft_rank_recursion", params, eq_tol, ft_recursion_check(&p, &xi, eq_tol)),
                ]
            }));
        }
    }
    run_tasks(cfg, Suite::Fourier, tasks)
}

fn error_record(id: &str, tol: f64, e: Error) -> Record {
    Record::Report(VerificationReport::error(id, Default::default(), tol, e.to_string()))
}

fn random_s<R: Rng>(n: Vec<usize>, lo: f64, hi: f64, rng: &mut R) -> Result<SParams> {
    let r = n.len();
    let a: Vec<f64> = (0..=r).map(|_| rng.gen_range(lo..hi)).collect();
    let b: Vec<f64> = (0..=r).map(|_| rng.gen_range(lo..hi)).collect();
    SParams::new(MultiIndex(n), ParamVector(a), ParamVector(b))
}

/// `S` family: orthogonality by line quadrature against the closed-form
/// norms, the spot value `4π`, the Hahn form and the factorizations.
pub fn sfamily_suite(cfg: &VerifyConfig) -> Vec<Record> {
    let draws = cfg.samples(5);
    let tol = cfg.tol(1e-6);
    let spot_tol = cfg.tol(1e-8);
    let eq_tol = cfg.tol(1e-11);
    let max_index = cfg.max_degree.unwrap_or(2);
    let mut tasks: Vec<Task> = Vec::new();
    tasks.push(Box::new(move |_| {
        let params = ParamsBuilder::new().with("r", 1).with("n", [0]).with("a", [0.5, 0.5]).with("b", [0.5, 0.5]);
        let rep = SParams::new(MultiIndex::new(&[0]), ParamVector::new(&[0.5, 0.5]), ParamVector::new(&[0.5, 0.5]))
            .and_then(|p| s_orthogonality_lhs(&p, &MultiIndex::new(&[0]), spot_tol * 1e-2))
            .map(|v| VerificationReport::relative("s_spot_value", params.clone().build(), v, c(4.0 * PI), 0.0, spot_tol));
        vec![settle("s_spot_value", params, spot_tol, rep)]
    }));
    for r in cfg.ranks(&[1, 2]) {
        for _ in 0..draws {
            tasks.push(Box::new(move |rng| {
                let idx = MultiIndex::boxed(r, max_index);
                let base = match random_s(vec![0; r], 0.5, 1.5, rng) {
                    Ok(p) => p,
                    Err(e) => return vec![error_record("s_orthogonality", tol, e)],
                };
                let mut out = Vec::new();
                for n in &idx {
                    for m in &idx {
                        let params = ParamsBuilder::new().with("n", n.entries()).with("m", m.entries());
                        let rep = base
                            .with_index(n.clone())
                            .and_then(|p| s_orthogonality_check(&p, m, tol));
                        out.push(settle("s_orthogonality", params, tol, rep));
                    }
                }
                out
            }));
        }
    }
    let samples = cfg.samples(50);
    for i in 0..samples {
        let r = 1 + i % 3;
        tasks.push(Box::new(move |rng| {
            let n: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=4)).collect();
            let p = match random_s(n, 0.7, 2.5, rng) {
                Ok(p) => p,
                Err(e) => return vec![error_record("s_hahn_form", eq_tol, e)],
            };
            let x: Vec<Complex> = (0..r)
                .map(|_| Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let params = ParamsBuilder::new();
            vec![settle("s_hahn_form", params, eq_tol, s_form_check(&p, &x, eq_tol))]
        }));
    }
    for which in SRelation::ALL {
        let two_only = matches!(which, SRelation::Relation1 | SRelation::Relation2);
        for i in 0..samples {
            let r = if two_only { 2 } else { 2 + i % 2 };
            tasks.push(Box::new(move |rng| {
                let n: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=4)).collect();
                let id = format!("s_{}", which.name());
                let p = match random_s(n, 0.7, 2.5, rng) {
                    Ok(p) => p,
                    Err(e) => return vec![error_record(&id, eq_tol, e)],
                };
                let x: Vec<Complex> = (0..r)
                    .map(|_| Complex::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..1.0)))
                    .collect();
                vec![settle(&id, ParamsBuilder::new(), eq_tol, s_relation_check(&p, which, &x, eq_tol))]
            }));
        }
    }
    run_tasks(cfg, Suite::Sfamily, tasks)
}

/// Relative residual report for one relation instance.
fn relation_report(id: RelationId, p: &RelationParams, coefficients: &[Complex], tol: f64) -> Result<VerificationReport> {
    let f = terms(id, p)?;
    let parts: Vec<Complex> = coefficients.iter().zip(&f).map(|(a, b)| a * b).collect();
    let scale = parts.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let lhs: Complex = parts.iter().sum();
    Ok(VerificationReport::compare(
        id.name(),
        p.describe(),
        lhs,
        c(0.0),
        scale.max(f64::MIN_POSITIVE),
        tol,
    ))
}

/// Residual sweep over every relation. A relation whose printed form fails
/// is handed to the least-squares oracle; when that yields a constant-factor
/// correction on three independent sample sets, the erratum is emitted and
/// the sweep is re-scored with the corrected coefficients.
pub fn recurrence_suite(cfg: &VerifyConfig) -> Vec<Record> {
    let samples = cfg.samples(100);
    let tol = cfg.tol(1e-9);
    let ids: Vec<RelationId> = match cfg.id {
        Some(id) => vec![id],
        None => RelationId::ALL.to_vec(),
    };
    let mut tasks: Vec<Task> = Vec::new();
    for id in ids {
        tasks.push(Box::new(move |rng| relation_sweep(id, samples, tol, cfg, rng)));
    }
    run_tasks(cfg, Suite::Recurrence, tasks)
}

/// Sample count of each least-squares fit.
const FIT_SAMPLES: usize = 24;

fn relation_sweep(id: RelationId, samples: usize, tol: f64, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Vec<Record> {
    let mut params = Vec::with_capacity(samples);
    for _ in 0..samples {
        match sample_for(id, cfg, rng) {
            Ok(p) => params.push(p),
            Err(e) => return vec![error_record(id.name(), tol, e)],
        }
    }
    let score = |errata: &[Erratum]| -> Vec<Record> {
        params
            .iter()
            .map(|p| {
                let rep = corrected_coefficients(id, p, errata).and_then(|cs| relation_report(id, p, &cs, tol));
                let rep = rep.map(|r| {
                    if errata.is_empty() {
                        r
                    } else {
                        r.with_note("scored with brute-force corrected coefficients")
                    }
                });
                settle(id.name(), ParamsBuilder::new(), tol, rep)
            })
            .collect()
    };
    let mut out = score(&[]);
    let printed_ok = out.iter().all(|r| matches!(r, Record::Report(v) if v.passed));
    let mut fit_rng = rng.clone();
    if !printed_ok {
        if let Ok(Some(errata)) = find_errata(id, 3, FIT_SAMPLES, &mut fit_rng) {
            if !errata.is_empty() {
                out = score(&errata);
                out.extend(errata.into_iter().map(|erratum| Record::Erratum { erratum }));
            }
        }
    }
    if cfg.brute_force {
        let fit = crate::recurrences::sample_fit_params(id, &mut fit_rng)
            .and_then(|p| crate::recurrences::brute_force_coefficients(id, &p, FIT_SAMPLES, &mut fit_rng));
        match fit {
            Ok(brute_force) => out.push(Record::Fit { brute_force }),
            Err(e) => out.push(error_record(&format!("{}_brute_force", id.name()), tol, e)),
        }
    }
    out
}

fn sample_for(id: RelationId, cfg: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<RelationParams> {
    match (id.family(), cfg.r) {
        (Family::Sr, Some(r)) if r >= 1 => {
            // redraw until the rank matches
            for _ in 0..10_000 {
                let p = sample_params(id, rng)?;
                if let RelationParams::S { p: sp, .. } = &p {
                    if sp.r() == r {
                        return Ok(p);
                    }
                }
            }
            Err(Error::ParameterRange(format!("rank {r} is not sampled for {id}")))
        }
        _ => sample_params(id, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64) -> VerifyConfig {
        VerifyConfig {
            samples: Some(2),
            max_degree: Some(2),
            ..VerifyConfig::seeded(seed)
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::EACH {
            let out = run(s, &small(3));
            let failed: Vec<_> = out.reports().filter(|r| !r.passed).collect();
            assert!(failed.is_empty(), "{}: {failed:?}", s.name());
            assert!(matches!(out.records.last(), Some(Record::Summary { .. })));
        }
    }

    #[test]
    fn output_is_deterministic() {
        let cfg = small(9);
        let mut a = Vec::new();
        let mut b = Vec::new();
        run(Suite::Recurrence, &cfg).write_json_lines(&mut a).unwrap();
        run(Suite::Recurrence, &cfg).write_json_lines(&mut b).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(b"{\"schema\":1}\n"));
    }

    #[test]
    fn different_seeds_differ() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        run(Suite::Numerics, &small(1)).write_json_lines(&mut a).unwrap();
        run(Suite::Numerics, &small(2)).write_json_lines(&mut b).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn erratum_is_emitted_for_103() {
        let cfg = VerifyConfig {
            id: Some(RelationId::S2Eq103),
            samples: Some(20),
            ..VerifyConfig::seeded(5)
        };
        let out = run(Suite::Recurrence, &cfg);
        let errata: Vec<_> = out.errata().collect();
        assert_eq!(errata.len(), 1);
        assert_eq!(errata[0].coefficient, 2);
        assert!(out.all_passed());
    }

    #[test]
    fn rank_filter_applies_to_sr() {
        let cfg = VerifyConfig {
            id: Some(RelationId::SrT518),
            samples: Some(5),
            r: Some(3),
            ..VerifyConfig::seeded(4)
        };
        let out = run(Suite::Recurrence, &cfg);
        for r in out.reports() {
            assert_eq!(r.parameters["n"].as_array().unwrap().len(), 3);
        }
    }

    #[test]
    fn brute_force_flag_adds_fit() {
        let cfg = VerifyConfig {
            id: Some(RelationId::H3),
            samples: Some(3),
            brute_force: true,
            ..VerifyConfig::seeded(4)
        };
        let out = run(Suite::Recurrence, &cfg);
        assert!(out.records.iter().any(|r| matches!(r, Record::Fit { .. })));
    }

    #[test]
    fn tolerance_override_can_fail_a_suite() {
        let cfg = VerifyConfig {
            tolerance: Some(0.0),
            ..small(3)
        };
        let out = run(Suite::Fourier, &cfg);
        assert!(!out.all_passed());
    }
}
