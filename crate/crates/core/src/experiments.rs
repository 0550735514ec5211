//! Exact and Monte Carlo studies of the random-graph claims: moments of
//! character sums over shape families, concentration of calibrated
//! singletons, and pass rates of the whole pipeline.
//!
//! Trial `i` of an experiment seeded with `s` draws from a ChaCha8 stream
//! seeded with `s` on stream number `i`, so results do not depend on thread
//! count or scheduling.

use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::Budget;
use crate::error::{Error, Result};
use crate::graph::{gen_gnp_with, Graph};
use crate::pe::{
    calibrated_singletons, pe_calibrated, pe_from_distribution, uniform_independent_distribution, CalibrationParams,
    PseudoExpectation, TruncationRule,
};
use crate::reduction::{run_reduction, ReductionOptions};
use crate::spectral::covering_certificate_at;

pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// All relabellings of a template edge set into `[n]`, with some template
/// vertices pinned to fixed graph vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeFamily {
    pub n: usize,
    pub t: usize,
    pub template: Vec<(usize, usize)>,
    /// `(template vertex, graph vertex)` pins.
    pub anchor: Vec<(usize, usize)>,
    members: Vec<Vec<(usize, usize)>>,
}

impl ShapeFamily {
    /// `template` lives on vertices `1..=t` and must touch each of them.
    pub fn new(n: usize, template: Vec<(usize, usize)>, anchor: Vec<(usize, usize)>, budget: &Budget) -> Result<Self> {
        let t = template.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0);
        let touched: BTreeSet<usize> = template.iter().flat_map(|&(a, b)| [a, b]).collect();
        if template.is_empty() || touched.len() != t || template.iter().any(|&(a, b)| a == 0 || a == b) {
            return Err(Error::InvalidParameter(
                "template must be a nonempty loop-free edge set touching every vertex 1..=t".into(),
            ));
        }
        if t > n {
            return Err(Error::InvalidParameter(format!("template has {t} vertices but n = {n}")));
        }
        let mut pinned = vec![None; t + 1];
        let mut used = BTreeSet::new();
        for &(a, v) in &anchor {
            if a == 0 || a > t || v == 0 || v > n || pinned[a].is_some() || !used.insert(v) {
                return Err(Error::InvalidParameter(format!("invalid anchor pin ({a}, {v})")));
            }
            pinned[a] = Some(v);
        }
        let free = t - anchor.len();
        let count = (0..free).fold(1u128, |acc, i| acc.saturating_mul((n - anchor.len() - i) as u128));
        if count > budget.max_enumeration as u128 {
            return Err(Error::limit("family relabellings", count, budget.max_enumeration as u128));
        }
        let mut members = BTreeSet::new();
        let mut map = vec![0usize; t + 1];
        fn rec(
            a: usize,
            t: usize,
            n: usize,
            pinned: &[Option<usize>],
            map: &mut Vec<usize>,
            used: &mut BTreeSet<usize>,
            template: &[(usize, usize)],
            out: &mut BTreeSet<Vec<(usize, usize)>>,
        ) {
            if a > t {
                let mut edges: Vec<(usize, usize)> = template
                    .iter()
                    .map(|&(x, y)| (map[x].min(map[y]), map[x].max(map[y])))
                    .collect();
                edges.sort_unstable();
                out.insert(edges);
                return;
            }
            if let Some(v) = pinned[a] {
                map[a] = v;
                rec(a + 1, t, n, pinned, map, used, template, out);
                return;
            }
            for v in 1..=n {
                if used.insert(v) {
                    map[a] = v;
                    rec(a + 1, t, n, pinned, map, used, template, out);
                    used.remove(&v);
                }
            }
        }
        rec(1, t, n, &pinned, &mut map, &mut used, &template, &mut members);
        Ok(ShapeFamily {
            n,
            t,
            template,
            anchor,
            members: members.into_iter().collect(),
        })
    }

    /// Every single edge of `K_n`.
    pub fn all_edges(n: usize, budget: &Budget) -> Result<Self> {
        Self::new(n, vec![(1, 2)], vec![], budget)
    }

    /// Every edge at vertex `i`.
    pub fn edges_at(n: usize, i: usize, budget: &Budget) -> Result<Self> {
        Self::new(n, vec![(1, 2)], vec![(1, i)], budget)
    }

    pub fn members(&self) -> &[Vec<(usize, usize)>] {
        &self.members
    }

    /// Vertices common to every member.
    pub fn common_vertices(&self) -> Vec<usize> {
        let mut common: Option<BTreeSet<usize>> = None;
        for m in &self.members {
            let vs: BTreeSet<usize> = m.iter().flat_map(|&(a, b)| [a, b]).collect();
            common = Some(match common {
                None => vs,
                Some(c) => c.intersection(&vs).copied().collect(),
            });
        }
        common.unwrap_or_default().into_iter().collect()
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        // Lexicographic position of (i, j), i < j, among pairs of [n].
        (i - 1) * (2 * self.n - i) / 2 + (j - i - 1)
    }

    fn masks(&self) -> Result<Vec<u128>> {
        if self.n * (self.n - 1) / 2 > 128 {
            return Err(Error::InvalidParameter(format!("edge masks need n <= 16, got {}", self.n)));
        }
        Ok(self
            .members
            .iter()
            .map(|m| m.iter().fold(0u128, |acc, &(i, j)| acc | 1u128 << self.pair_index(i, j)))
            .collect())
    }

    /// `sum_T chi_T(g)`.
    pub fn character_sum(&self, g: &Graph) -> i64 {
        self.members
            .iter()
            .map(|m| {
                let misses = m.iter().filter(|&&(i, j)| !g.has_edge(i, j)).count();
                if misses % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMode {
    /// Count `ell`-tuples whose symmetric difference is empty.
    Pairing,
    /// Average over every labelled graph on `n` vertices.
    Enumerate,
    MonteCarlo,
}

impl std::str::FromStr for MomentMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pairing" | "exact" => Ok(MomentMode::Pairing),
            "enumerate" => Ok(MomentMode::Enumerate),
            "montecarlo" | "monte-carlo" => Ok(MomentMode::MonteCarlo),
            _ => Err(Error::Parse(format!("unknown moment mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentReport {
    pub n: usize,
    pub t: usize,
    pub anchor_size: usize,
    pub members: usize,
    pub ell: u32,
    pub mode: MomentMode,
    pub moment: f64,
    /// Exact value as a decimal integer or fraction.
    pub exact: Option<String>,
    pub std_error: Option<f64>,
    pub trials: Option<u64>,
    /// `n^((t - |S|) ell / 2) (t ell)^(t ell)`.
    pub bound: f64,
    pub within_bound: bool,
}

/// `n^((t - |S|) ell / 2) (t ell)^(t ell)`, with `0^0 = 1`.
pub fn moment_bound(n: usize, t: usize, s: usize, ell: u32) -> f64 {
    let e = ell as f64;
    (n as f64).powf((t - s) as f64 * e / 2.0) * ((t as f64) * e).powf(t as f64 * e)
}

/// `E_G |sum_T chi_T(G)|^ell` over `G(n, 1/2)`.
pub fn chi_sum_moment(
    family: &ShapeFamily,
    ell: u32,
    mode: MomentMode,
    trials: u64,
    seed: u64,
    budget: &Budget,
) -> Result<MomentReport> {
    if ell % 2 != 0 {
        return Err(Error::InvalidParameter(format!("ell must be even, got {ell}")));
    }
    let n = family.n;
    let (moment, exact, std_error, trials_used) = match mode {
        MomentMode::Pairing => {
            if n > 8 || family.t > 3 || ell > 4 {
                return Err(Error::InvalidParameter(format!(
                    "pairing mode covers n <= 8, t <= 3, ell <= 4 (got n = {n}, t = {}, ell = {ell})",
                    family.t
                )));
            }
            let v = pairing_count(&family.masks()?, ell, budget)?;
            (v as f64, Some(v.to_string()), None, None)
        }
        MomentMode::Enumerate => {
            if n > 6 {
                return Err(Error::InvalidParameter(format!("graph enumeration covers n <= 6, got {n}")));
            }
            let (num, den) = enumerate_moment(family, ell)?;
            let exact = if num % den == 0 {
                (num / den).to_string()
            } else {
                let g = gcd(num, den);
                format!("{}/{}", num / g, den / g)
            };
            (num as f64 / den as f64, Some(exact), None, None)
        }
        MomentMode::MonteCarlo => {
            if trials < 2 {
                return Err(Error::InvalidParameter("Monte Carlo needs at least 2 trials".into()));
            }
            let samples: Vec<f64> = (0..trials)
                .into_par_iter()
                .map(|i| {
                    let g = gen_gnp_with(n, 0.5, &mut trial_rng(seed, i))?;
                    Ok((family.character_sum(&g) as f64).powi(ell as i32))
                })
                .collect::<Result<_>>()?;
            let (mean, se) = mean_and_se(&samples);
            (mean, None, Some(se), Some(trials))
        }
    };
    let s = family.common_vertices().len();
    let bound = moment_bound(n, family.t, s, ell);
    Ok(MomentReport {
        n,
        t: family.t,
        anchor_size: s,
        members: family.members.len(),
        ell,
        mode,
        moment,
        exact,
        std_error,
        trials: trials_used,
        bound,
        within_bound: moment <= bound,
    })
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn mean_and_se(samples: &[f64]) -> (f64, f64) {
    let m = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / m;
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
    (mean, (var / m).sqrt())
}

/// Number of `ell`-tuples of members with empty symmetric difference, by
/// squaring the XOR histogram of `ell/2`-tuples.
fn pairing_count(masks: &[u128], ell: u32, budget: &Budget) -> Result<u128> {
    let half = ell / 2;
    let tuples = (masks.len() as u128).saturating_pow(half);
    if tuples > budget.max_enumeration as u128 {
        return Err(Error::limit("pairing half-tuples", tuples, budget.max_enumeration as u128));
    }
    let mut hist: HashMap<u128, u128> = HashMap::from([(0, 1)]);
    for _ in 0..half {
        let mut next = HashMap::with_capacity(hist.len() * masks.len());
        for (&x, &c) in &hist {
            for &m in masks {
                *next.entry(x ^ m).or_insert(0) += c;
            }
        }
        hist = next;
    }
    Ok(hist.values().map(|c| c * c).sum())
}

/// `(sum over all labelled graphs of (sum_T chi_T)^ell, 2^C(n,2))`.
fn enumerate_moment(family: &ShapeFamily, ell: u32) -> Result<(i128, i128)> {
    let masks = family.masks()?;
    let pairs = family.n * (family.n - 1) / 2;
    let total: i128 = (0u64..1 << pairs)
        .into_par_iter()
        .map(|g| {
            let s: i128 = masks
                .iter()
                .map(|&m| if (m & !(g as u128)).count_ones() % 2 == 0 { 1 } else { -1 })
                .sum();
            s.pow(ell)
        })
        .sum();
    Ok((total, 1i128 << pairs))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiConfig {
    pub ns: Vec<usize>,
    pub epsilon: f64,
    pub tau: usize,
    pub trials: u64,
    pub seed: u64,
    pub rule: TruncationRule,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiRow {
    pub n: usize,
    pub omega: f64,
    pub tau: usize,
    pub trials: u64,
    pub samples: usize,
    pub mean: f64,
    pub q10: f64,
    pub median: f64,
    pub q90: f64,
    pub max: f64,
    pub median_ci_low: f64,
    pub median_ci_high: f64,
    /// Samples with `pE_G[x_i] < (omega/n)(1 - n^(-epsilon/2))`.
    pub below_target: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct XiReport {
    pub config: XiConfig,
    pub rows: Vec<XiRow>,
    /// Medians nonincreasing in `n`; a soft check, reported only.
    pub monotone: bool,
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Distribution-free 95% interval for the median from order statistics.
fn median_ci(sorted: &[f64]) -> (f64, f64) {
    let m = sorted.len() as f64;
    let half_width = 1.96 * m.sqrt() / 2.0;
    let lo = ((m / 2.0 - half_width).floor().max(0.0)) as usize;
    let hi = ((m / 2.0 + half_width).ceil() as usize).min(sorted.len() - 1);
    (sorted[lo], sorted[hi])
}

/// Deviations `|pE_G[x_i] n / omega - 1|` of raw calibrated singletons at
/// `omega = n^(1/2 - epsilon)`, pooled over vertices and sampled graphs.
pub fn xi_concentration(config: &XiConfig, budget: &Budget) -> Result<XiReport> {
    if config.trials == 0 || config.ns.is_empty() {
        return Err(Error::InvalidParameter("need at least one n and one trial".into()));
    }
    let mut rows = Vec::new();
    for &n in &config.ns {
        let omega = (n as f64).powf(0.5 - config.epsilon);
        let mut params = CalibrationParams::new(omega, config.tau, 1).with_rule(config.rule);
        params.epsilon = config.epsilon;
        let per_graph: Vec<Vec<f64>> = (0..config.trials)
            .into_par_iter()
            .map(|i| {
                let g = gen_gnp_with(n, 0.5, &mut trial_rng(config.seed, ((n as u64) << 32) | i))?;
                calibrated_singletons::<f64>(&g, &params, budget)
            })
            .collect::<Result<_>>()?;
        let target = omega / n as f64 * (1.0 - (n as f64).powf(-config.epsilon / 2.0));
        let below_target = per_graph.iter().flatten().filter(|&&v| v < target).count();
        let mut dev: Vec<f64> = per_graph
            .iter()
            .flatten()
            .map(|&v| (v * n as f64 / omega - 1.0).abs())
            .collect();
        dev.sort_by(f64::total_cmp);
        let (median_ci_low, median_ci_high) = median_ci(&dev);
        rows.push(XiRow {
            n,
            omega,
            tau: config.tau,
            trials: config.trials,
            samples: dev.len(),
            mean: dev.iter().sum::<f64>() / dev.len() as f64,
            q10: quantile(&dev, 0.1),
            median: quantile(&dev, 0.5),
            q90: quantile(&dev, 0.9),
            max: *dev.last().expect("nonempty"),
            median_ci_low,
            median_ci_high,
            below_target,
        });
    }
    let mut sorted: Vec<&XiRow> = rows.iter().collect();
    sorted.sort_by_key(|r| r.n);
    let monotone = sorted.windows(2).all(|w| w[1].median <= w[0].median);
    Ok(XiReport {
        config: config.clone(),
        rows,
        monotone,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyConfig {
    pub n: usize,
    pub epsilon: f64,
    pub trials: u64,
    pub seed: u64,
    pub c_k: f64,
    /// Even degree of both arms.
    pub d: usize,
    pub tau: usize,
    /// Overrides `n^(1/2 - epsilon)`.
    pub omega: Option<f64>,
    pub rule: TruncationRule,
    /// Samples for the sampled constraint checks.
    pub samples: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arm {
    Calibrated,
    Distribution,
}

impl Arm {
    pub fn as_str(self) -> &'static str {
        match self {
            Arm::Calibrated => "calibrated",
            Arm::Distribution => "distribution",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyRow {
    pub trial: u64,
    pub arm: Arm,
    pub graph_hash: String,
    pub built: bool,
    pub covered: bool,
    pub k0: Option<u64>,
    pub lambda: Option<f64>,
    pub k: Option<usize>,
    pub reduced: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArmSummary {
    pub arm: Arm,
    pub trials: u64,
    pub built_rate: f64,
    pub covered_rate: f64,
    pub reduced_rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyReport {
    pub config: SurveyConfig,
    pub rows: Vec<SurveyRow>,
    pub summary: Vec<ArmSummary>,
}

fn survey_arm(g: &Graph, pe: Result<PseudoExpectation<f64>>, config: &SurveyConfig, trial: u64, arm: Arm, budget: &Budget) -> SurveyRow {
    let mut row = SurveyRow {
        trial,
        arm,
        graph_hash: g.graph_hash(),
        built: false,
        covered: false,
        k0: None,
        lambda: None,
        k: None,
        reduced: false,
        failure: None,
    };
    let pe = match pe {
        Ok(pe) => pe,
        Err(e) => {
            row.failure = Some(e.to_string());
            return row;
        }
    };
    row.built = true;
    match covering_certificate_at(&pe, g, config.d / 2, budget) {
        Ok(cert) => {
            row.k0 = cert.k0;
            row.lambda = Some(cert.lambda);
            row.covered = cert.passed;
            if !cert.passed {
                row.failure = cert.failure;
                return row;
            }
        }
        Err(e) => {
            row.failure = Some(e.to_string());
            return row;
        }
    }
    let options = ReductionOptions {
        c_k: config.c_k,
        degree: Some(config.d),
        samples: config.samples,
        seed: config.seed ^ trial,
        ..ReductionOptions::default()
    };
    match run_reduction(g, &pe, &options, budget) {
        Ok((_, r)) => {
            row.k = Some(r.k);
            row.reduced = r.pass;
            if !r.pass {
                row.failure = Some("constraint check failed".into());
            }
        }
        Err(e) => row.failure = Some(e.to_string()),
    }
    row
}

/// For each sampled graph, both the calibrated table and the uniform
/// distribution over independent sets go through certificate and reduction.
pub fn pipeline_survey(config: &SurveyConfig, budget: &Budget) -> Result<SurveyReport> {
    if config.d < 2 || config.d % 2 != 0 {
        return Err(Error::InvalidParameter(format!("survey degree must be even and at least 2, got {}", config.d)));
    }
    if config.trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let omega = config.omega.unwrap_or_else(|| (config.n as f64).powf(0.5 - config.epsilon));
    let mut params = CalibrationParams::new(omega, config.tau, config.d).with_rule(config.rule);
    params.epsilon = config.epsilon;
    params.validate()?;
    let rows: Vec<SurveyRow> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let g = gen_gnp_with(config.n, 0.5, &mut trial_rng(config.seed, i))?;
            let calibrated = pe_calibrated::<f64>(&g, &params, budget).map(|c| c.normalized);
            let distribution = pe_from_distribution(&g, config.d, &uniform_independent_distribution(&g));
            Ok([
                survey_arm(&g, calibrated, config, i, Arm::Calibrated, budget),
                survey_arm(&g, distribution, config, i, Arm::Distribution, budget),
            ])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let summary = [Arm::Calibrated, Arm::Distribution]
        .into_iter()
        .map(|arm| {
            let mine: Vec<&SurveyRow> = rows.iter().filter(|r| r.arm == arm).collect();
            let rate = |f: fn(&SurveyRow) -> bool| mine.iter().filter(|r| f(r)).count() as f64 / mine.len() as f64;
            ArmSummary {
                arm,
                trials: mine.len() as u64,
                built_rate: rate(|r| r.built),
                covered_rate: rate(|r| r.covered),
                reduced_rate: rate(|r| r.reduced),
            }
        })
        .collect();
    Ok(SurveyReport {
        config: config.clone(),
        rows,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pe::pe_calibrated;
    use crate::scalar::Rational;
    use crate::Scalar;

    #[test]
    fn family_sizes() {
        let b = Budget::default();
        assert_eq!(ShapeFamily::all_edges(5, &b).unwrap().members().len(), 10);
        let at = ShapeFamily::edges_at(5, 2, &b).unwrap();
        assert_eq!(at.members().len(), 4);
        assert_eq!(at.common_vertices(), vec![2]);
        let paths = ShapeFamily::new(5, vec![(1, 2), (2, 3)], vec![], &b).unwrap();
        assert_eq!(paths.members().len(), 30);
        let triangles = ShapeFamily::new(5, vec![(1, 2), (2, 3), (1, 3)], vec![], &b).unwrap();
        assert_eq!(triangles.members().len(), 10);
        assert!(ShapeFamily::new(5, vec![(1, 3)], vec![], &b).is_err());
        assert_eq!(ShapeFamily::all_edges(6, &b).unwrap().pair_index(5, 6), 14);
    }

    #[test]
    fn moment_examples() {
        let b = Budget::default();
        let all = ShapeFamily::all_edges(4, &b).unwrap();
        let r = chi_sum_moment(&all, 2, MomentMode::Pairing, 0, 0, &b).unwrap();
        assert_eq!(r.exact.as_deref(), Some("6"));
        assert_eq!(r.bound, 16.0 * 256.0);
        let at = ShapeFamily::edges_at(4, 1, &b).unwrap();
        let r = chi_sum_moment(&at, 2, MomentMode::Pairing, 0, 0, &b).unwrap();
        assert_eq!(r.exact.as_deref(), Some("3"));
        assert_eq!(r.bound, 4.0 * 256.0);
        let r = chi_sum_moment(&all, 0, MomentMode::Pairing, 0, 0, &b).unwrap();
        assert_eq!(r.moment, 1.0);
        assert!(r.bound >= 1.0);
        assert!(chi_sum_moment(&all, 3, MomentMode::Pairing, 0, 0, &b).is_err());
    }

    #[test]
    fn pairing_matches_enumeration() {
        let b = Budget::default();
        for n in 4..=5 {
            let families = [
                ShapeFamily::all_edges(n, &b).unwrap(),
                ShapeFamily::edges_at(n, 1, &b).unwrap(),
                ShapeFamily::new(n, vec![(1, 2), (2, 3)], vec![], &b).unwrap(),
                ShapeFamily::new(n, vec![(1, 2), (2, 3), (1, 3)], vec![(1, 1)], &b).unwrap(),
            ];
            for f in &families {
                for ell in [2, 4] {
                    let p = chi_sum_moment(f, ell, MomentMode::Pairing, 0, 0, &b).unwrap();
                    let e = chi_sum_moment(f, ell, MomentMode::Enumerate, 0, 0, &b).unwrap();
                    assert_eq!(p.exact, e.exact);
                    assert!(p.within_bound);
                }
            }
        }
    }

    #[test]
    fn monte_carlo_standard_error_shrinks() {
        let b = Budget::default();
        let f = ShapeFamily::all_edges(6, &b).unwrap();
        let small = chi_sum_moment(&f, 2, MomentMode::MonteCarlo, 400, 3, &b).unwrap();
        let large = chi_sum_moment(&f, 2, MomentMode::MonteCarlo, 1600, 3, &b).unwrap();
        let ratio = small.std_error.unwrap() / large.std_error.unwrap();
        assert!(ratio > 2.0 / 3.0 && ratio < 6.0, "ratio {ratio}");
        assert!((large.moment - 15.0).abs() < 3.0 * large.std_error.unwrap() + 1.0);
        let again = chi_sum_moment(&f, 2, MomentMode::MonteCarlo, 400, 3, &b).unwrap();
        assert_eq!(small, again);
    }

    #[test]
    fn xi_with_only_empty_shape_is_exact() {
        let config = XiConfig {
            ns: vec![8, 16],
            epsilon: 0.3,
            tau: 1,
            trials: 5,
            seed: 1,
            rule: TruncationRule::Strict,
        };
        let r = xi_concentration(&config, &Budget::default()).unwrap();
        for row in &r.rows {
            assert!(row.max < 1e-12, "{row:?}");
        }
    }

    #[test]
    fn xi_singletons_match_full_table() {
        let budget = Budget::default();
        for seed in 0..4 {
            let g = crate::graph::gen_gnp(6, 0.5, seed).unwrap();
            let params = CalibrationParams::new(6f64.powf(0.2), 2, 1).with_rule(TruncationRule::Strict);
            let full = pe_calibrated::<Rational>(&g, &params, &budget).unwrap();
            let single = calibrated_singletons::<Rational>(&g, &params, &budget).unwrap();
            for (i, v) in single.iter().enumerate() {
                assert_eq!(full.raw.get(&crate::poly::Monomial::var(i + 1)).unwrap(), *v);
            }
            let f = calibrated_singletons::<f64>(&g, &params, &budget).unwrap();
            assert!((f[0] - single[0].to_f64()).abs() < 1e-12);
        }
    }

    #[test]
    fn survey_is_deterministic_with_passing_control() {
        let config = SurveyConfig {
            n: 7,
            epsilon: 0.3,
            trials: 3,
            seed: 5,
            c_k: 1.0,
            d: 2,
            tau: 2,
            omega: None,
            rule: TruncationRule::Strict,
            samples: 100,
        };
        let budget = Budget::default();
        let a = pipeline_survey(&config, &budget).unwrap();
        let b = pipeline_survey(&config, &budget).unwrap();
        assert_eq!(a, b);
        let control = a.summary.iter().find(|s| s.arm == Arm::Distribution).unwrap();
        assert_eq!(control.reduced_rate, 1.0);
        assert_eq!(a.rows.len(), 6);
    }
}
