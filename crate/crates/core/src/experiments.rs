//! Numerical studies: Poisson convergence with set size, the Bernoulli
//! zero-probability sweep, per-component contribution curves and the
//! Gini index of a whole distribution.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::measures::{
    evaluate, CoefficientVector, MeasureError, MeasureId, MeasureParams, MeasureSpec,
};
use crate::quadrature::{self, QuadratureError};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExperimentError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{measure} is not a sum of per-component terms")]
    NonSeparableMeasure { measure: MeasureId },
    #[error("no usable draw for n = {n} after {attempts} attempts")]
    ResampleLimit { n: usize, attempts: usize },
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistributionSpec {
    Poisson {
        lambda: f64,
    },
    /// 0 with probability `p`, otherwise 1.
    Bernoulli01 {
        p: f64,
    },
    Uniform {
        lo: f64,
        hi: f64,
    },
    Exponential {
        rate: f64,
    },
}

const MAX_POISSON_LAMBDA: f64 = 700.0;

impl DistributionSpec {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |msg: String| Err(ExperimentError::InvalidParams(msg));
        match *self {
            Self::Poisson { lambda } if !(lambda > 0.0 && lambda <= MAX_POISSON_LAMBDA) => bad(
                format!("Poisson lambda must lie in (0, {MAX_POISSON_LAMBDA}], got {lambda}"),
            ),
            Self::Bernoulli01 { p } if !(0.0..=1.0).contains(&p) => {
                bad(format!("Bernoulli p must lie in [0, 1], got {p}"))
            }
            Self::Uniform { lo, hi } if !(lo >= 0.0 && lo < hi && hi.is_finite()) => bad(format!(
                "uniform bounds need 0 <= lo < hi, got [{lo}, {hi}]"
            )),
            Self::Exponential { rate } if !(rate > 0.0 && rate.is_finite()) => {
                bad(format!("exponential rate must be positive, got {rate}"))
            }
            _ => Ok(()),
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Self::Poisson { lambda } => lambda,
            Self::Bernoulli01 { p } => 1.0 - p,
            Self::Uniform { lo, hi } => 0.5 * (lo + hi),
            Self::Exponential { rate } => 1.0 / rate,
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Poisson { lambda } => {
                let u: f64 = rng.gen();
                let mut k = 0u32;
                let mut pmf = (-lambda).exp();
                let mut cdf = pmf;
                while u > cdf && pmf > 0.0 {
                    k += 1;
                    pmf *= lambda / f64::from(k);
                    cdf += pmf;
                }
                f64::from(k)
            }
            Self::Bernoulli01 { p } => {
                if rng.gen::<f64>() < p {
                    0.0
                } else {
                    1.0
                }
            }
            Self::Uniform { lo, hi } => lo + (hi - lo) * rng.gen::<f64>(),
            Self::Exponential { rate } => -(1.0 - rng.gen::<f64>()).ln() / rate,
        }
    }
}

fn sample_with<R: Rng + ?Sized>(
    dist: &DistributionSpec,
    n: usize,
    rng: &mut R,
) -> Result<CoefficientVector, ExperimentError> {
    dist.validate()?;
    if n == 0 {
        return Err(ExperimentError::InvalidParams(
            "n must be at least 1".into(),
        ));
    }
    Ok(CoefficientVector::new(
        (0..n).map(|_| dist.draw(rng)).collect(),
    )?)
}

/// Draws `n` independent values; deterministic in `(dist, n, seed)`.
pub fn sample_vector(
    dist: &DistributionSpec,
    n: usize,
    seed: u64,
) -> Result<CoefficientVector, ExperimentError> {
    sample_with(dist, n, &mut rng::stream(&[seed]))
}

/// Measure parameters used by the experiments: the defaults except
/// `epsilon = 0.5`, so that `ℓ⁰_ε` separates 0 from 1 on 0/1 data.
pub fn experiment_params() -> MeasureParams {
    MeasureParams {
        epsilon: 0.5,
        ..MeasureParams::default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub sweep: f64,
    pub measure: MeasureId,
    pub repeat: usize,
    pub raw: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub sweep: f64,
    pub measure: MeasureId,
    pub mean: f64,
    /// Sample standard deviation over repeats.
    pub std: f64,
    /// Mean after min-max scaling across the sweep for this measure.
    pub normalized_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentMetadata {
    pub name: String,
    /// The swept quantity: `n` for the Poisson study, `p` for Bernoulli.
    pub sweep_parameter: String,
    pub sweep_values: Vec<f64>,
    pub distribution: DistributionSpec,
    /// Vector length when it is held fixed.
    pub n: Option<usize>,
    pub repeats: usize,
    pub seed: u64,
    pub params: MeasureParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub metadata: ExperimentMetadata,
    pub rows: Vec<ExperimentRow>,
    pub summary: Vec<SummaryRow>,
}

impl ExperimentResult {
    /// Summary rows for one measure in sweep order.
    pub fn series(&self, measure: MeasureId) -> Vec<&SummaryRow> {
        self.summary
            .iter()
            .filter(|r| r.measure == measure)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoissonConfig {
    pub lambda: f64,
    pub sizes: Vec<usize>,
    pub repeats: usize,
    pub seed: u64,
    pub params: MeasureParams,
}

impl Default for PoissonConfig {
    fn default() -> Self {
        Self {
            lambda: 5.0,
            sizes: vec![10, 30, 100, 300, 1000, 3000],
            repeats: 50,
            seed: 0,
            params: experiment_params(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BernoulliConfig {
    pub grid: Vec<f64>,
    pub n: usize,
    pub repeats: usize,
    pub seed: u64,
    pub params: MeasureParams,
}

impl Default for BernoulliConfig {
    fn default() -> Self {
        Self {
            grid: (1..20).map(|k| f64::from(k) / 20.0).collect(),
            n: 1000,
            repeats: 20,
            seed: 0,
            params: experiment_params(),
        }
    }
}

const MAX_RESAMPLES: usize = 100;
const POISSON_TAG: u64 = 1;
const BERNOULLI_TAG: u64 = 2;

/// All fifteen measures on one draw, resampling draws on which any measure
/// is undefined.
fn evaluate_draw(
    dist: &DistributionSpec,
    n: usize,
    params: &MeasureParams,
    stream: [u64; 4],
) -> Result<[f64; 15], ExperimentError> {
    for attempt in 0..MAX_RESAMPLES {
        let mut rng = rng::stream(&[stream[0], stream[1], stream[2], stream[3], attempt as u64]);
        let c = sample_with(dist, n, &mut rng)?;
        let mut values = [0.0; 15];
        let mut ok = true;
        for m in MeasureId::ALL {
            match evaluate(&MeasureSpec::new(m, *params), &c) {
                Ok(v) => values[m.index()] = v,
                Err(MeasureError::DegenerateInput { .. }) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
        if ok {
            return Ok(values);
        }
    }
    Err(ExperimentError::ResampleLimit {
        n,
        attempts: MAX_RESAMPLES,
    })
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = if xs.len() > 1 {
        xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, var.sqrt())
}

fn run_sweep(
    metadata: ExperimentMetadata,
    tag: u64,
    point: impl Fn(usize) -> (DistributionSpec, usize) + Sync,
) -> Result<ExperimentResult, ExperimentError> {
    let points = metadata.sweep_values.len();
    let repeats = metadata.repeats;
    let draws = (0..points * repeats)
        .into_par_iter()
        .map(|job| {
            let (k, r) = (job / repeats, job % repeats);
            let (dist, n) = point(k);
            evaluate_draw(
                &dist,
                n,
                &metadata.params,
                [metadata.seed, tag, k as u64, r as u64],
            )
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows = Vec::with_capacity(draws.len() * 15);
    let mut summary = Vec::with_capacity(points * 15);
    for m in MeasureId::ALL {
        let mut stats = Vec::with_capacity(points);
        for k in 0..points {
            let raw: Vec<f64> = (0..repeats)
                .map(|r| draws[k * repeats + r][m.index()])
                .collect();
            stats.push(mean_std(&raw));
        }
        let means: Vec<f64> = stats.iter().map(|s| s.0).collect();
        let normalized = minmax_normalize(&means);
        for (k, &(mean, std)) in stats.iter().enumerate() {
            summary.push(SummaryRow {
                sweep: metadata.sweep_values[k],
                measure: m,
                mean,
                std,
                normalized_mean: normalized[k],
            });
        }
    }
    for (job, values) in draws.iter().enumerate() {
        let (k, r) = (job / repeats, job % repeats);
        for m in MeasureId::ALL {
            rows.push(ExperimentRow {
                sweep: metadata.sweep_values[k],
                measure: m,
                repeat: r,
                raw: values[m.index()],
            });
        }
    }
    Ok(ExperimentResult {
        metadata,
        rows,
        summary,
    })
}

/// Evaluates all measures on Poisson draws of increasing length.
pub fn poisson_convergence(config: &PoissonConfig) -> Result<ExperimentResult, ExperimentError> {
    let dist = DistributionSpec::Poisson {
        lambda: config.lambda,
    };
    dist.validate()?;
    if config.sizes.is_empty() || config.sizes.iter().any(|&n| n < 2) {
        return Err(ExperimentError::InvalidParams(
            "sizes must be non-empty and each >= 2".into(),
        ));
    }
    if config.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ExperimentError::InvalidParams(
            "sizes must be strictly ascending".into(),
        ));
    }
    if config.repeats < 2 {
        return Err(ExperimentError::InvalidParams(
            "need at least 2 repeats".into(),
        ));
    }
    let metadata = ExperimentMetadata {
        name: "poisson".into(),
        sweep_parameter: "n".into(),
        sweep_values: config.sizes.iter().map(|&n| n as f64).collect(),
        distribution: dist,
        n: None,
        repeats: config.repeats,
        seed: config.seed,
        params: config.params,
    };
    let sizes = config.sizes.clone();
    run_sweep(metadata, POISSON_TAG, move |k| (dist, sizes[k]))
}

/// Evaluates all measures on 0/1 vectors as the zero probability varies.
pub fn bernoulli_sweep(config: &BernoulliConfig) -> Result<ExperimentResult, ExperimentError> {
    if config.grid.is_empty() || config.grid.iter().any(|&p| !(p > 0.0 && p < 1.0)) {
        return Err(ExperimentError::InvalidParams(
            "grid values must lie in (0, 1)".into(),
        ));
    }
    if config.n < 2 {
        return Err(ExperimentError::InvalidParams(
            "n must be at least 2".into(),
        ));
    }
    if config.repeats < 1 {
        return Err(ExperimentError::InvalidParams(
            "need at least 1 repeat".into(),
        ));
    }
    let metadata = ExperimentMetadata {
        name: "bernoulli".into(),
        sweep_parameter: "p".into(),
        sweep_values: config.grid.clone(),
        distribution: DistributionSpec::Bernoulli01 { p: config.grid[0] },
        n: Some(config.n),
        repeats: config.repeats,
        seed: config.seed,
        params: config.params,
    };
    let (grid, n) = (config.grid.clone(), config.n);
    run_sweep(metadata, BERNOULLI_TAG, move |k| {
        (DistributionSpec::Bernoulli01 { p: grid[k] }, n)
    })
}

/// `(x - min) / (max - min)`; a constant series maps to zeros.
pub fn minmax_normalize(series: &[f64]) -> Vec<f64> {
    let lo = series.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = series.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    series
        .iter()
        .map(|&x| {
            if range > 0.0 {
                ((x - lo) / range).clamp(0.0, 1.0)
            } else {
                0.0
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContributionRow {
    pub measure: MeasureId,
    pub x: f64,
    pub term: f64,
}

/// The additive term one component of amplitude `x` contributes.
pub fn contribution(spec: &MeasureSpec, x: f64) -> Result<f64, ExperimentError> {
    spec.validate()?;
    let p = &spec.params;
    let term = match spec.id {
        MeasureId::L0 => f64::from(u8::from(x == 0.0)),
        MeasureId::L0Eps => f64::from(u8::from(x <= p.epsilon)),
        MeasureId::NegL1 => -x,
        MeasureId::NegLp => -x.powf(p.p_frac),
        MeasureId::NegLpNeg if x == 0.0 => 0.0,
        MeasureId::NegLpNeg => -x.powf(p.p_neg),
        MeasureId::NegTanh => -(p.a * x).powf(p.b).tanh(),
        MeasureId::NegLog => -x.mul_add(x, 1.0).ln(),
        MeasureId::Hg | MeasureId::HsPrime if x == 0.0 => 0.0,
        MeasureId::Hg => -2.0 * x.ln(),
        MeasureId::HsPrime => -2.0 * x * x.ln(),
        measure => return Err(ExperimentError::NonSeparableMeasure { measure }),
    };
    Ok(term)
}

/// Per-component terms of each separable measure over an amplitude grid.
pub fn contribution_curves(
    grid: &[f64],
    specs: &[MeasureSpec],
) -> Result<Vec<ContributionRow>, ExperimentError> {
    if let Some(&x) = grid.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
        return Err(ExperimentError::InvalidParams(format!(
            "amplitudes must be finite and non-negative, got {x}"
        )));
    }
    let mut rows = Vec::with_capacity(grid.len() * specs.len());
    for spec in specs {
        for &x in grid {
            rows.push(ContributionRow {
                measure: spec.id,
                x,
                term: contribution(spec, x)?,
            });
        }
    }
    Ok(rows)
}

/// Default absolute tolerance for [`distributional_gini`].
pub const DEFAULT_QUADRATURE_TOLERANCE: f64 = 1e-8;

/// Upper tail mass dropped when truncating infinite supports.
pub const TAIL_MASS: f64 = 1e-9;

/// `1 − 2∫ L(x) f(x) dx` with `L(x) = ∫₀ˣ t f(t) dt / μ`.
///
/// Continuous laws are integrated by nested adaptive quadrature up to the
/// `1 − 1e-9` quantile. Discrete laws use the exact Stieltjes form
/// `1 − Σ p(x) (L(x⁻) + L(x))`.
pub fn distributional_gini(
    dist: &DistributionSpec,
    tolerance: f64,
) -> Result<f64, ExperimentError> {
    dist.validate()?;
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(ExperimentError::InvalidParams(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    if dist.mean() <= 0.0 {
        return Err(ExperimentError::InvalidParams(
            "distribution has zero mean".into(),
        ));
    }
    match *dist {
        DistributionSpec::Bernoulli01 { p } => Ok(discrete_gini(&[(0.0, p), (1.0, 1.0 - p)])),
        DistributionSpec::Poisson { lambda } => {
            let mut support = Vec::new();
            let mut pmf = (-lambda).exp();
            let mut cdf = 0.0;
            let mut k = 0u32;
            while cdf < 1.0 - 1e-15 && (f64::from(k) < lambda || pmf > 0.0) {
                support.push((f64::from(k), pmf));
                cdf += pmf;
                k += 1;
                pmf *= lambda / f64::from(k);
            }
            Ok(discrete_gini(&support))
        }
        DistributionSpec::Uniform { lo, hi } => {
            let density = 1.0 / (hi - lo);
            continuous_gini(move |_| density, lo, hi, tolerance)
        }
        DistributionSpec::Exponential { rate } => {
            let upper = -TAIL_MASS.ln() / rate;
            continuous_gini(move |x| rate * (-rate * x).exp(), 0.0, upper, tolerance)
        }
    }
}

fn discrete_gini(support: &[(f64, f64)]) -> f64 {
    let mean: f64 = support.iter().map(|&(x, p)| x * p).sum();
    let mut below = 0.0;
    let mut acc = 0.0;
    for &(x, p) in support {
        let upto = below + x * p / mean;
        acc += p * (below + upto);
        below = upto;
    }
    1.0 - acc
}

fn continuous_gini<F: Fn(f64) -> f64 + Copy>(
    density: F,
    lo: f64,
    hi: f64,
    tolerance: f64,
) -> Result<f64, ExperimentError> {
    let inner_tol = tolerance * 1e-2;
    let partial = |x: f64| quadrature::integrate(|t| t * density(t), lo, x, inner_tol);
    let mean = partial(hi)?;
    let mut failure = None;
    let outer = quadrature::integrate(
        |x| match partial(x) {
            Ok(v) => v * density(x),
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        lo,
        hi,
        tolerance * mean * 0.5,
    )?;
    if let Some(e) = failure {
        return Err(e.into());
    }
    Ok(1.0 - 2.0 * outer / mean)
}
