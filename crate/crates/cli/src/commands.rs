use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use colorsos::config::Budget;
use colorsos::experiments::{
    chi_sum_moment, pipeline_survey, xi_concentration, MomentMode, MomentReport, ShapeFamily, SurveyConfig, XiConfig,
};
use colorsos::graph::gen_gnp;
use colorsos::io::{read_graph, read_pe_any, write_atomic, write_graph, write_pe, LoadedPe, Report};
use colorsos::pe::{pe_calibrated, pe_from_distribution, uniform_independent_distribution, CalibrationParams, PseudoExpectation, TruncationRule};
use colorsos::reduction::{run_reduction, ReductionOptions};
use colorsos::refutation::{power_chain_refute, refute_coloring_existence, Refutation};
use colorsos::spectral::{build_moment_matrix, certify_psd, covering_certificate, PSD_TOL};
use colorsos::{Arithmetic, Error, Graph, Rational, Result, Scalar};
use serde::Serialize;
use serde_json::{json, Value};

use crate::BudgetArgs;

fn config_of<A: Serialize>(args: &A, budget: &Budget) -> Result<Value> {
    let mut v = serde_json::to_value(args)?;
    if let Value::Object(map) = &mut v {
        map.remove("budget");
        map.insert("budget".into(), serde_json::to_value(budget)?);
    }
    Ok(v)
}

fn emit(path: &Option<PathBuf>, report: &Report) -> Result<()> {
    match path {
        Some(p) => report.write(p),
        None => {
            println!("{}", serde_json::to_string_pretty(report)?);
            Ok(())
        }
    }
}

fn write_csv<R: Serialize>(path: &Path, rows: &[R]) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Parse(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    write_atomic(path, &bytes)
}

#[derive(Args, Debug, Serialize)]
pub struct GenGraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output path.
    #[arg(long)]
    out: PathBuf,
    /// JSON report path; stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

pub fn gen_graph(a: &GenGraphArgs) -> Result<bool> {
    let g = gen_gnp(a.n, a.p, a.seed)?;
    write_graph(&a.out, &g)?;
    let result = json!({"n": g.n(), "m": g.num_edges(), "graph_hash": g.graph_hash()});
    emit(&a.report, &Report::new("gen-graph", serde_json::to_value(a)?, "COMPLETE", result))?;
    Ok(true)
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Distribution,
    Calibrated,
}

#[derive(Args, Debug, Serialize)]
pub struct BuildPeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    source: Source,
    #[arg(long, default_value_t = 4)]
    d: usize,
    /// `float` or `rational`.
    #[arg(long, default_value = "rational")]
    mode: Arithmetic,
    /// Calibration: planted size; defaults to `n^(1/2 - epsilon)`.
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    #[arg(long, default_value_t = 2)]
    tau: usize,
    /// `union` or `strict`.
    #[arg(long, default_value = "union")]
    rule: TruncationRule,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn build_table<T: Scalar>(a: &BuildPeArgs, g: &Graph, budget: &Budget) -> Result<(PseudoExpectation<T>, Value)> {
    match a.source {
        Source::Distribution => {
            let pe = pe_from_distribution(g, a.d, &uniform_independent_distribution(g))?;
            Ok((pe, json!({})))
        }
        Source::Calibrated => {
            let omega = a.omega.unwrap_or_else(|| (g.n() as f64).powf(0.5 - a.epsilon));
            let mut params = CalibrationParams::new(omega, a.tau, a.d).with_rule(a.rule);
            params.epsilon = a.epsilon;
            let cal = pe_calibrated::<T>(g, &params, budget)?;
            let raw_empty = cal.raw.get(&colorsos::poly::Monomial::one())?;
            Ok((cal.normalized, json!({"omega": omega, "raw_empty": raw_empty.render()})))
        }
    }
}

fn finish_build<T: Scalar>(a: &BuildPeArgs, g: &Graph, budget: &Budget) -> Result<Value> {
    let (pe, extra) = build_table::<T>(a, g, budget)?;
    write_pe(&a.out, &pe)?;
    Ok(json!({
        "n": pe.n(),
        "d": pe.d(),
        "entries": pe.entries().len(),
        "graph_hash": pe.graph_hash(),
        "source": extra,
    }))
}

pub fn build_pe(a: &BuildPeArgs) -> Result<bool> {
    let budget = a.budget.resolve();
    let g = read_graph(&a.graph)?;
    let result = match a.mode {
        Arithmetic::Float => finish_build::<f64>(a, &g, &budget)?,
        Arithmetic::Rational => finish_build::<Rational>(a, &g, &budget)?,
    };
    emit(&a.report, &Report::new("build-pe", config_of(a, &budget)?, "COMPLETE", result))?;
    Ok(true)
}

#[derive(Args, Debug, Serialize)]
pub struct CertifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    pe: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn certify_table<T: Scalar>(pe: &PseudoExpectation<T>, g: &Graph, budget: &Budget) -> Result<(bool, Value)> {
    let cert = covering_certificate(pe, g, budget)?;
    let moment = build_moment_matrix(pe, pe.d() / 2, budget)?;
    let psd = certify_psd(&moment.matrix, PSD_TOL)?;
    let pass = cert.passed && psd.is_psd;
    Ok((pass, json!({"certificate": cert, "moment_matrix": psd, "arithmetic": T::MODE})))
}

pub fn certify_pe(a: &CertifyArgs) -> Result<bool> {
    let budget = a.budget.resolve();
    let g = read_graph(&a.graph)?;
    let (pass, result) = match read_pe_any(&a.pe, Some(&g))? {
        LoadedPe::Float(pe) => certify_table(&pe, &g, &budget)?,
        LoadedPe::Rational(pe) => certify_table(&pe, &g, &budget)?,
    };
    let verdict = if pass { "PASS" } else { "FAIL" };
    emit(&a.report, &Report::new("certify-pe", config_of(a, &budget)?, verdict, result))?;
    Ok(pass)
}

#[derive(Args, Debug, Serialize)]
pub struct ReduceArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    pe: PathBuf,
    #[arg(long, default_value_t = 1.0)]
    c_k: f64,
    /// Use this many colours instead of the chosen count.
    #[arg(long)]
    k: Option<usize>,
    /// Even operator degree; defaults to the table's.
    #[arg(long)]
    degree: Option<usize>,
    /// Half degree of the sum-constraint matrices; defaults to `d/4`.
    #[arg(long)]
    sum_half: Option<usize>,
    /// Allow sum-constraint half degrees above `d/4`.
    #[arg(long)]
    widen: bool,
    #[arg(long, default_value_t = 2000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn reduce_table<T: Scalar>(a: &ReduceArgs, pe: &PseudoExpectation<T>, g: &Graph, budget: &Budget) -> Result<(bool, Value)> {
    let options = ReductionOptions {
        c_k: a.c_k,
        degree: a.degree,
        k: a.k,
        sum_half_degree: a.sum_half,
        widen: a.widen,
        samples: a.samples,
        seed: a.seed,
    };
    match run_reduction(g, pe, &options, budget) {
        Ok((_, report)) => Ok((report.pass, serde_json::to_value(&report)?)),
        Err(Error::CoveringFailure(why)) => Ok((false, json!({"covering_failure": why}))),
        Err(e) => Err(e),
    }
}

pub fn reduce(a: &ReduceArgs) -> Result<bool> {
    let budget = a.budget.resolve();
    let g = read_graph(&a.graph)?;
    let (pass, result) = match read_pe_any(&a.pe, Some(&g))? {
        LoadedPe::Float(pe) => reduce_table(a, &pe, &g, &budget)?,
        LoadedPe::Rational(pe) => reduce_table(a, &pe, &g, &budget)?,
    };
    let verdict = if pass { "PASS" } else { "FAIL" };
    emit(&a.report, &Report::new("reduce", config_of(a, &budget)?, verdict, result))?;
    Ok(pass)
}

#[derive(Args, Debug, Serialize)]
pub struct CheckColoringArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

pub fn check_coloring(a: &CheckColoringArgs) -> Result<bool> {
    let budget = a.budget.resolve();
    let g = read_graph(&a.graph)?;
    let colorable = g.is_colorable(a.k, budget.exact_limit)?;
    let chromatic = g.chromatic_number(budget.exact_limit)?;
    let (t, witness) = g.max_independent_set(budget.exact_limit)?;
    let result = json!({
        "n": g.n(),
        "k": a.k,
        "colorable": colorable,
        "chromatic_number": chromatic,
        "independence_number": t,
        "independent_witness": witness,
    });
    let verdict = if colorable { "COLORABLE" } else { "NOT_COLORABLE" };
    emit(&a.report, &Report::new("check-coloring", config_of(a, &budget)?, verdict, result))?;
    Ok(colorable)
}

#[derive(Args, Debug, Serialize)]
pub struct RefuteArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    k: usize,
    /// Defaults to `4t` with `t` the independence number.
    #[arg(long)]
    degree: Option<usize>,
    /// Table to run the power-chain audit on.
    #[arg(long)]
    pe: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

pub fn refute(a: &RefuteArgs) -> Result<bool> {
    let budget = a.budget.resolve();
    let g = read_graph(&a.graph)?;
    let degree = match a.degree {
        Some(d) => d,
        None => 4 * g.max_independent_set(budget.exact_limit)?.0,
    };
    let refutation = refute_coloring_existence(&g, a.k, degree, &budget)?;
    let chain = match &a.pe {
        None => Value::Null,
        Some(p) => match read_pe_any(p, Some(&g))? {
            LoadedPe::Float(pe) => serde_json::to_value(power_chain_refute(&pe, &g, a.tol, &budget)?)?,
            LoadedPe::Rational(pe) => serde_json::to_value(power_chain_refute(&pe, &g, a.tol, &budget)?)?,
        },
    };
    let verdict = match refutation.verdict {
        Refutation::Refuted => "REFUTED",
        Refutation::NotRefuted => "NOT_REFUTED",
    };
    let result = json!({"refutation": refutation, "power_chain": chain});
    emit(&a.report, &Report::new("refute", config_of(a, &budget)?, verdict, result))?;
    Ok(true)
}

fn parse_pairs(text: &str, sep: char) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (a, b) = item
                .split_once(sep)
                .ok_or_else(|| Error::Parse(format!("expected `a{sep}b`, got `{item}`")))?;
            let p = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad number in `{item}`")));
            Ok((p(a)?, p(b)?))
        })
        .collect()
}

#[derive(Args, Debug, Serialize)]
pub struct ChiconcArgs {
    #[arg(long, value_delimiter = ',', default_value = "4,5,6,7,8")]
    n_list: Vec<usize>,
    /// Template edges on vertices `1..=t`, e.g. `1-2,2-3`.
    #[arg(long, default_value = "1-2")]
    template: String,
    /// Pins `template vertex:graph vertex`, e.g. `1:1`.
    #[arg(long, default_value = "")]
    anchor: String,
    #[arg(long, value_delimiter = ',', default_value = "2,4")]
    ell: Vec<u32>,
    /// `pairing`, `enumerate` or `montecarlo`.
    #[arg(long, default_value = "pairing")]
    mode: MomentMode,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

pub fn chiconc(a: &ChiconcArgs) -> Result<bool> {
    let budget = a.budget.resolve();
    let template = parse_pairs(&a.template, '-')?;
    let anchor = parse_pairs(&a.anchor, ':')?;
    let mut rows: Vec<MomentReport> = Vec::new();
    for &n in &a.n_list {
        let family = ShapeFamily::new(n, template.clone(), anchor.clone(), &budget)?;
        for &ell in &a.ell {
            rows.push(chi_sum_moment(&family, ell, a.mode, a.trials, a.seed, &budget)?);
        }
    }
    if let Some(p) = &a.csv {
        write_csv(p, &rows)?;
    }
    let pass = rows.iter().all(|r| r.within_bound);
    let verdict = if pass { "PASS" } else { "FAIL" };
    emit(&a.report, &Report::new("experiment-chiconc", config_of(a, &budget)?, verdict, serde_json::to_value(&rows)?))?;
    Ok(pass)
}

#[derive(Args, Debug, Serialize)]
pub struct XiArgs {
    #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    #[arg(long, default_value_t = 2)]
    tau: usize,
    #[arg(long, default_value_t = 200)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "strict")]
    rule: TruncationRule,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

pub fn xi(a: &XiArgs) -> Result<bool> {
    let budget = a.budget.resolve();
    let config = XiConfig {
        ns: a.n_list.clone(),
        epsilon: a.epsilon,
        tau: a.tau,
        trials: a.trials,
        seed: a.seed,
        rule: a.rule,
    };
    let r = xi_concentration(&config, &budget)?;
    if let Some(p) = &a.csv {
        write_csv(p, &r.rows)?;
    }
    emit(&a.report, &Report::new("experiment-xi", config_of(a, &budget)?, "COMPLETE", serde_json::to_value(&r)?))?;
    Ok(true)
}

#[derive(Args, Debug, Serialize)]
pub struct SurveyArgs {
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    epsilon: f64,
    #[arg(long, default_value_t = 10)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1.0)]
    c_k: f64,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 2)]
    tau: usize,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long, default_value = "union")]
    rule: TruncationRule,
    #[arg(long, default_value_t = 500)]
    samples: u64,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

pub fn survey(a: &SurveyArgs) -> Result<bool> {
    let budget = a.budget.resolve();
    let config = SurveyConfig {
        n: a.n,
        epsilon: a.epsilon,
        trials: a.trials,
        seed: a.seed,
        c_k: a.c_k,
        d: a.d,
        tau: a.tau,
        omega: a.omega,
        rule: a.rule,
        samples: a.samples,
    };
    let r = pipeline_survey(&config, &budget)?;
    if let Some(p) = &a.csv {
        write_csv(p, &r.rows)?;
    }
    emit(&a.report, &Report::new("survey", config_of(a, &budget)?, "COMPLETE", serde_json::to_value(&r)?))?;
    Ok(true)
}
