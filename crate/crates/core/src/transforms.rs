//! The six criterion transformations as explicit before/after trials.
//!
//! Each constructor checks the criterion's preconditions and records the
//! parameters it applied, so [`CriterionTrial::replay`] can rebuild the
//! `after` vector from `before`. [`sample_trial`] draws random trials for
//! the compliance search.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::measures::{CoefficientVector, MeasureError};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransformError {
    #[error("invalid {criterion} transform: {reason}")]
    InvalidTransform {
        criterion: CriterionId,
        reason: String,
    },
    #[error("could not generate a {criterion} trial after {attempts} attempts")]
    GenerationFailure {
        criterion: CriterionId,
        attempts: usize,
    },
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CriterionId {
    /// Robin Hood: moving wealth from rich to poor decreases sparsity.
    D1,
    /// Scaling leaves sparsity unchanged.
    D2,
    /// Rising tide: adding a constant decreases sparsity.
    D3,
    /// Cloning leaves sparsity unchanged.
    D4,
    /// Bill Gates: one coefficient growing without bound increases sparsity.
    P1,
    /// Babies: appending zeros increases sparsity.
    P2,
}

impl CriterionId {
    pub const ALL: [CriterionId; 6] = [
        CriterionId::D1,
        CriterionId::D2,
        CriterionId::D3,
        CriterionId::D4,
        CriterionId::P1,
        CriterionId::P2,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            CriterionId::D1 => "D1",
            CriterionId::D2 => "D2",
            CriterionId::D3 => "D3",
            CriterionId::D4 => "D4",
            CriterionId::P1 => "P1",
            CriterionId::P2 => "P2",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            CriterionId::D1 => "Robin Hood",
            CriterionId::D2 => "Scaling",
            CriterionId::D3 => "Rising Tide",
            CriterionId::D4 => "Cloning",
            CriterionId::P1 => "Bill Gates",
            CriterionId::P2 => "Babies",
        }
    }

    /// How the measure must move from `before` to `after`.
    pub fn relation(self) -> Relation {
        match self {
            CriterionId::D1 | CriterionId::D3 => Relation::AfterStrictlyLess,
            CriterionId::D2 | CriterionId::D4 => Relation::Equal,
            CriterionId::P1 | CriterionId::P2 => Relation::AfterStrictlyGreater,
        }
    }
}

impl fmt::Display for CriterionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CriterionId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.to_ascii_uppercase();
        CriterionId::ALL
            .into_iter()
            .find(|c| c.name() == upper)
            .ok_or_else(|| format!("unknown criterion `{s}` (expected D1-D4, P1 or P2)"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AfterStrictlyLess,
    Equal,
    AfterStrictlyGreater,
}

/// Parameters of the transformation that produced a trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TransformParams {
    /// `c_i -= alpha`, `c_j += alpha`.
    RobinHood {
        i: usize,
        j: usize,
        alpha: f64,
    },
    Scale {
        alpha: f64,
    },
    RisingTide {
        alpha: f64,
    },
    Clone {
        copies: usize,
    },
    /// `before` already carries `c_i + beta`; `after` adds `alpha` on top.
    BillGates {
        i: usize,
        beta: f64,
        alpha: f64,
    },
    Babies {
        zeros: usize,
    },
    /// A fixed counter-example pair; nothing to re-apply.
    Catalog {
        entry: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionTrial {
    pub criterion: CriterionId,
    pub before: CoefficientVector,
    pub after: CoefficientVector,
    pub params: TransformParams,
    pub expected_relation: Relation,
}

impl CriterionTrial {
    fn new(
        criterion: CriterionId,
        before: CoefficientVector,
        after: Vec<f64>,
        params: TransformParams,
    ) -> Result<Self, TransformError> {
        Ok(Self {
            criterion,
            before,
            after: CoefficientVector::new(after)?,
            params,
            expected_relation: criterion.relation(),
        })
    }

    /// A trial built from a literal vector pair.
    pub fn from_pair(
        criterion: CriterionId,
        before: CoefficientVector,
        after: CoefficientVector,
        entry: impl Into<String>,
    ) -> Self {
        Self {
            criterion,
            before,
            after,
            params: TransformParams::Catalog {
                entry: entry.into(),
            },
            expected_relation: criterion.relation(),
        }
    }

    /// Re-applies the recorded parameters to `before`. `None` for catalog
    /// pairs, which carry no transformation.
    pub fn replay(&self) -> Option<Vec<f64>> {
        let c = self.before.values();
        let out = match self.params {
            TransformParams::RobinHood { i, j, alpha } => {
                let mut v = c.to_vec();
                v[i] -= alpha;
                v[j] += alpha;
                v
            }
            TransformParams::Scale { alpha } => c.iter().map(|x| alpha * x).collect(),
            TransformParams::RisingTide { alpha } => c.iter().map(|x| x + alpha).collect(),
            TransformParams::Clone { copies } => c.repeat(copies),
            TransformParams::BillGates { i, alpha, .. } => {
                let mut v = c.to_vec();
                v[i] += alpha;
                v
            }
            TransformParams::Babies { zeros } => {
                let mut v = c.to_vec();
                v.resize(c.len() + zeros, 0.0);
                v
            }
            TransformParams::Catalog { .. } => return None,
        };
        Some(out)
    }
}

fn invalid(criterion: CriterionId, reason: impl Into<String>) -> TransformError {
    TransformError::InvalidTransform {
        criterion,
        reason: reason.into(),
    }
}

fn check_index(
    criterion: CriterionId,
    c: &CoefficientVector,
    i: usize,
) -> Result<(), TransformError> {
    if i >= c.len() {
        return Err(invalid(
            criterion,
            format!("index {i} out of range for length {}", c.len()),
        ));
    }
    Ok(())
}

/// D1: move `alpha` from coefficient `i` to the smaller coefficient `j`.
pub fn robin_hood(
    c: &CoefficientVector,
    i: usize,
    j: usize,
    alpha: f64,
) -> Result<CriterionTrial, TransformError> {
    let crit = CriterionId::D1;
    check_index(crit, c, i)?;
    check_index(crit, c, j)?;
    let (ci, cj) = (c.values()[i], c.values()[j]);
    if ci <= cj {
        return Err(invalid(crit, format!("need c_i > c_j, got {ci} and {cj}")));
    }
    if !(alpha > 0.0 && alpha < (ci - cj) / 2.0) {
        return Err(invalid(
            crit,
            format!("alpha must lie in (0, (c_i - c_j)/2), got {alpha}"),
        ));
    }
    let mut after = c.values().to_vec();
    after[i] -= alpha;
    after[j] += alpha;
    CriterionTrial::new(
        crit,
        c.clone(),
        after,
        TransformParams::RobinHood { i, j, alpha },
    )
}

/// D2: multiply every coefficient by `alpha`.
pub fn scale(c: &CoefficientVector, alpha: f64) -> Result<CriterionTrial, TransformError> {
    let crit = CriterionId::D2;
    if !(alpha > 0.0 && alpha.is_finite()) || alpha == 1.0 {
        return Err(invalid(
            crit,
            format!("alpha must be positive and != 1, got {alpha}"),
        ));
    }
    let after = c.values().iter().map(|x| alpha * x).collect();
    CriterionTrial::new(crit, c.clone(), after, TransformParams::Scale { alpha })
}

/// D3: add `alpha` to every coefficient of a non-constant vector.
pub fn rising_tide(c: &CoefficientVector, alpha: f64) -> Result<CriterionTrial, TransformError> {
    let crit = CriterionId::D3;
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(invalid(
            crit,
            format!("alpha must be positive, got {alpha}"),
        ));
    }
    if c.is_constant() {
        return Err(invalid(crit, "constant vectors are excluded"));
    }
    let after = c.values().iter().map(|x| x + alpha).collect();
    CriterionTrial::new(
        crit,
        c.clone(),
        after,
        TransformParams::RisingTide { alpha },
    )
}

/// D4: concatenate `copies` copies of the vector.
pub fn clone(c: &CoefficientVector, copies: usize) -> Result<CriterionTrial, TransformError> {
    let crit = CriterionId::D4;
    if copies < 2 {
        return Err(invalid(
            crit,
            format!("need at least 2 copies, got {copies}"),
        ));
    }
    let after = c.values().repeat(copies);
    CriterionTrial::new(crit, c.clone(), after, TransformParams::Clone { copies })
}

/// P1: `before` carries `c_i + beta`, `after` carries `c_i + beta + alpha`.
pub fn bill_gates(
    c: &CoefficientVector,
    i: usize,
    beta: f64,
    alpha: f64,
) -> Result<CriterionTrial, TransformError> {
    let crit = CriterionId::P1;
    check_index(crit, c, i)?;
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(invalid(crit, format!("beta must be positive, got {beta}")));
    }
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(invalid(
            crit,
            format!("alpha must be positive, got {alpha}"),
        ));
    }
    let mut before = c.values().to_vec();
    before[i] += beta;
    let mut after = before.clone();
    after[i] += alpha;
    CriterionTrial::new(
        crit,
        CoefficientVector::new(before)?,
        after,
        TransformParams::BillGates { i, beta, alpha },
    )
}

/// Default offset for [`bill_gates`]: `‖c‖₁ + max(c) − c_i`, which makes the
/// perturbed coefficient strictly the largest.
pub fn bill_gates_beta(c: &CoefficientVector, i: usize) -> f64 {
    c.l1() + c.max() - c.values()[i]
}

/// P2: append `zeros` zero coefficients.
pub fn babies(c: &CoefficientVector, zeros: usize) -> Result<CriterionTrial, TransformError> {
    let crit = CriterionId::P2;
    if c.is_all_zero() {
        return Err(invalid(crit, "vector must have nonzero total"));
    }
    if zeros == 0 {
        return Err(invalid(crit, "must append at least one zero"));
    }
    let mut after = c.values().to_vec();
    after.resize(c.len() + zeros, 0.0);
    CriterionTrial::new(crit, c.clone(), after, TransformParams::Babies { zeros })
}

/// Multipliers of `‖c‖₁` from which the Bill Gates increment is drawn.
pub const BILL_GATES_ALPHA_FACTORS: [f64; 3] = [1e-3, 1.0, 1e3];

/// `2^-32`.
pub const DEFAULT_GRID: f64 = 1.0 / 4_294_967_296.0;

/// Random trial generator settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n_min: usize,
    pub n_max: usize,
    /// Coefficients are drawn from `uniform(0, upper)`.
    pub upper: f64,
    /// Probability that an entry is zeroed (ignored in strictly-positive mode).
    pub zero_probability: f64,
    /// Draw from `uniform(positive_floor * upper, upper)` with no zeros.
    pub strictly_positive: bool,
    pub positive_floor: f64,
    /// Robin Hood pairs need `c_i - c_j >= robin_hood_min_gap * max(c)`.
    pub robin_hood_min_gap: f64,
    /// Bill Gates trials need the other coefficients to hold at least this
    /// share of `‖c‖₁`.
    pub bill_gates_rest_share: f64,
    /// Zeros appended by Babies trials.
    pub babies_zeros: usize,
    pub clone_max: usize,
    pub max_attempts: usize,
    /// Coefficients and additive parameters are multiples of this dyadic
    /// step, so sums of generated values are exact in floating point.
    pub grid: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            n_min: 2,
            n_max: 64,
            upper: 10.0,
            zero_probability: 0.2,
            strictly_positive: false,
            positive_floor: 0.05,
            robin_hood_min_gap: 0.1,
            bill_gates_rest_share: 0.25,
            babies_zeros: 1,
            clone_max: 4,
            max_attempts: 256,
            grid: DEFAULT_GRID,
        }
    }
}

impl GeneratorConfig {
    pub fn strictly_positive(mut self) -> Self {
        self.strictly_positive = true;
        self
    }

    /// Rounds `x` to the nearest grid multiple.
    pub fn quantize(&self, x: f64) -> f64 {
        (x / self.grid).round() * self.grid
    }

    fn uniform_on_grid<R: Rng + ?Sized>(&self, rng: &mut R, lo: f64, hi: f64) -> f64 {
        let lo_steps = (lo / self.grid).ceil() as u64;
        let hi_steps = ((hi / self.grid).floor() as u64).max(lo_steps + 1);
        rng.gen_range(lo_steps..hi_steps) as f64 * self.grid
    }

    /// Draws one coefficient vector.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let n = rng.gen_range(self.n_min..=self.n_max.max(self.n_min));
        (0..n)
            .map(|_| {
                if self.strictly_positive {
                    self.uniform_on_grid(rng, self.positive_floor * self.upper, self.upper)
                } else if rng.gen::<f64>() < self.zero_probability {
                    0.0
                } else {
                    self.uniform_on_grid(rng, 0.0, self.upper)
                }
            })
            .collect()
    }
}

/// A random starting point for Bill Gates trials: vector, index and the
/// sampled increment. Shared with the β sweep of the compliance search.
pub(crate) fn sample_bill_gates_start<R: Rng + ?Sized>(
    config: &GeneratorConfig,
    rng: &mut R,
) -> Result<(CoefficientVector, usize, f64), TransformError> {
    for _ in 0..config.max_attempts {
        let c = CoefficientVector::new(config.draw(rng))?;
        let i = rng.gen_range(0..c.len());
        let total = c.l1();
        let rest = total - c.values()[i];
        let factor = BILL_GATES_ALPHA_FACTORS[rng.gen_range(0..BILL_GATES_ALPHA_FACTORS.len())];
        let alpha = config.quantize(factor * total);
        if total > 0.0 && alpha > 0.0 && rest >= config.bill_gates_rest_share * total {
            return Ok((c, i, alpha));
        }
    }
    Err(TransformError::GenerationFailure {
        criterion: CriterionId::P1,
        attempts: config.max_attempts,
    })
}

/// Draws a random valid trial for `criterion`.
pub fn sample_trial_with<R: Rng + ?Sized>(
    criterion: CriterionId,
    config: &GeneratorConfig,
    rng: &mut R,
) -> Result<CriterionTrial, TransformError> {
    if criterion == CriterionId::P1 {
        let (c, i, alpha) = sample_bill_gates_start(config, rng)?;
        let beta = bill_gates_beta(&c, i);
        return bill_gates(&c, i, beta, alpha);
    }
    for _ in 0..config.max_attempts {
        let c = CoefficientVector::new(config.draw(rng))?;
        let trial = match criterion {
            CriterionId::D1 => {
                let n = c.len();
                let mut i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n);
                let v = c.values();
                if v[i] < v[j] {
                    std::mem::swap(&mut i, &mut j);
                }
                let gap = v[i] - v[j];
                if !(gap > 0.0 && gap >= config.robin_hood_min_gap * c.max()) {
                    continue;
                }
                let alpha = config.quantize(rng.gen_range(0.05..0.95) * gap / 2.0);
                if !(alpha > 0.0 && alpha < gap / 2.0) {
                    continue;
                }
                robin_hood(&c, i, j, alpha)
            }
            CriterionId::D2 => {
                let alpha = loop {
                    let a = 10f64.powf(rng.gen_range(-3.0..3.0));
                    if a != 1.0 {
                        break a;
                    }
                };
                scale(&c, alpha)
            }
            CriterionId::D3 => {
                if c.is_constant() {
                    continue;
                }
                let alpha = config.quantize(c.max() * 10f64.powf(rng.gen_range(-2.0..0.0)));
                if alpha <= 0.0 {
                    continue;
                }
                rising_tide(&c, alpha)
            }
            CriterionId::D4 => {
                let copies = rng.gen_range(2..=config.clone_max.max(2));
                clone(&c, copies)
            }
            CriterionId::P2 => {
                if c.nonzero_count() < 2 {
                    continue;
                }
                babies(&c, config.babies_zeros)
            }
            CriterionId::P1 => unreachable!("handled above"),
        };
        return trial;
    }
    Err(TransformError::GenerationFailure {
        criterion,
        attempts: config.max_attempts,
    })
}

/// Seeded variant of [`sample_trial_with`]; identical inputs give identical
/// trials.
pub fn sample_trial(
    criterion: CriterionId,
    config: &GeneratorConfig,
    seed: u64,
) -> Result<CriterionTrial, TransformError> {
    let mut rng = rng::stream(&[seed, criterion.index() as u64]);
    sample_trial_with(criterion, config, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cv(v: &[f64]) -> CoefficientVector {
        CoefficientVector::new(v.to_vec()).unwrap()
    }

    fn sorted(v: &[f64]) -> Vec<f64> {
        let mut v = v.to_vec();
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn robin_hood_examples() {
        let t = robin_hood(&cv(&[0.0, 1.0, 3.0, 5.0]), 3, 1, 1.0).unwrap();
        assert_eq!(t.after.values(), &[0.0, 2.0, 3.0, 4.0]);
        assert_eq!(t.expected_relation, Relation::AfterStrictlyLess);

        let t = robin_hood(&cv(&[0.3, 1.0, 2.0]), 1, 0, 0.01).unwrap();
        let expect = [0.31, 0.99, 2.0];
        for (a, b) in t.after.values().iter().zip(expect) {
            assert!((a - b).abs() < 1e-15);
        }

        let err = robin_hood(&cv(&[0.0, 1.0, 3.0, 5.0]), 3, 1, 2.0);
        assert!(matches!(err, Err(TransformError::InvalidTransform { .. })));
        assert!(robin_hood(&cv(&[1.0, 5.0]), 0, 1, 0.5).is_err());
        assert!(robin_hood(&cv(&[1.0, 5.0]), 1, 7, 0.5).is_err());
    }

    #[test]
    fn scale_examples() {
        let t = scale(&cv(&[0.0, 1.0, 3.0, 5.0]), 2.0).unwrap();
        assert_eq!(t.after.values(), &[0.0, 2.0, 6.0, 10.0]);
        let t = scale(&cv(&[7.0]), 3.0).unwrap();
        assert_eq!(t.after.values(), &[21.0]);
        assert_eq!(t.expected_relation, Relation::Equal);
        assert!(scale(&cv(&[1.0, 2.0]), 0.0).is_err());
        assert!(scale(&cv(&[1.0, 2.0]), -1.0).is_err());
        assert!(scale(&cv(&[1.0, 2.0]), 1.0).is_err());
    }

    #[test]
    fn rising_tide_examples() {
        let t = rising_tide(&cv(&[1.0, 3.0, 5.0]), 0.5).unwrap();
        assert_eq!(t.after.values(), &[1.5, 3.5, 5.5]);
        assert!(rising_tide(&cv(&[2.0, 2.0, 2.0]), 1.0).is_err());
        assert!(rising_tide(&cv(&[1.0, 2.0]), 0.0).is_err());
        let t = rising_tide(&cv(&[0.1, 0.3, 0.5]), 0.05).unwrap();
        for (a, b) in t.after.values().iter().zip([0.15, 0.35, 0.55]) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn clone_examples() {
        let t = clone(&cv(&[0.0, 1.0, 3.0, 5.0]), 2).unwrap();
        // c‖c, i.e. every coefficient twice
        assert_eq!(
            sorted(t.after.values()),
            vec![0.0, 0.0, 1.0, 1.0, 3.0, 3.0, 5.0, 5.0]
        );
        assert_eq!(
            clone(&cv(&[5.0]), 3).unwrap().after.values(),
            &[5.0, 5.0, 5.0]
        );
        let t = clone(&cv(&[1.0, 2.0]), 2).unwrap();
        assert_eq!(t.after.values(), &[1.0, 2.0, 1.0, 2.0]);
        assert!(clone(&cv(&[1.0]), 1).is_err());
    }

    #[test]
    fn bill_gates_examples() {
        let c = cv(&[0.0, 1.0, 3.0, 5.0]);
        let t = bill_gates(&c, 3, 10.0, 5.0).unwrap();
        assert_eq!(t.before.values(), &[0.0, 1.0, 3.0, 15.0]);
        assert_eq!(t.after.values(), &[0.0, 1.0, 3.0, 20.0]);
        assert_eq!(t.expected_relation, Relation::AfterStrictlyGreater);

        for i in 0..c.len() {
            let beta = bill_gates_beta(&c, i);
            let t = bill_gates(&c, i, beta, 1.0).unwrap();
            let top = t.before.values()[i];
            assert!(t
                .before
                .values()
                .iter()
                .enumerate()
                .all(|(k, &v)| k == i || v < top));
        }

        let t = bill_gates(&cv(&[1.0, 1.0]), 0, 10.0, 1.0).unwrap();
        assert_eq!(t.before.values(), &[11.0, 1.0]);
        assert_eq!(t.after.values(), &[12.0, 1.0]);
        assert!(bill_gates(&c, 0, 0.0, 1.0).is_err());
        assert!(bill_gates(&c, 0, 1.0, -1.0).is_err());
    }

    #[test]
    fn babies_examples() {
        let t = babies(&cv(&[0.0, 1.0, 3.0, 5.0]), 2).unwrap();
        assert_eq!(t.after.values(), &[0.0, 1.0, 3.0, 5.0, 0.0, 0.0]);
        assert_eq!(t.after.l1(), t.before.l1());
        let t = babies(&cv(&[1.0]), 1).unwrap();
        assert_eq!(t.after.values(), &[1.0, 0.0]);
        assert!(babies(&cv(&[0.0, 0.0]), 1).is_err());
        assert!(babies(&cv(&[1.0]), 0).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let cfg = GeneratorConfig::default();
        assert_eq!(
            sample_trial(CriterionId::D1, &cfg, 42).unwrap(),
            sample_trial(CriterionId::D1, &cfg, 42).unwrap()
        );
        for seed in 0..200 {
            let t = sample_trial(CriterionId::D3, &cfg, seed).unwrap();
            assert!(!t.before.is_constant());

            let t = sample_trial(CriterionId::D2, &cfg, seed).unwrap();
            let TransformParams::Scale { alpha } = t.params else {
                panic!("expected scale params");
            };
            for (b, a) in t.before.values().iter().zip(t.after.values()) {
                assert_eq!(*a, alpha * b);
            }
        }
    }

    #[test]
    fn strictly_positive_mode_has_no_zeros() {
        let cfg = GeneratorConfig::default().strictly_positive();
        let mut rng = rng::stream(&[9]);
        for _ in 0..100 {
            assert!(cfg.draw(&mut rng).iter().all(|&v| v >= 0.5));
        }
    }

    #[test]
    fn generation_failure_is_reported() {
        // every draw is all-zero, so no Robin Hood pair exists
        let cfg = GeneratorConfig {
            zero_probability: 1.0,
            max_attempts: 8,
            ..GeneratorConfig::default()
        };
        assert!(matches!(
            sample_trial(CriterionId::D1, &cfg, 0),
            Err(TransformError::GenerationFailure { attempts: 8, .. })
        ));
        assert!(sample_trial(CriterionId::P1, &cfg, 0).is_err());
    }

    #[test]
    fn criterion_names_parse() {
        for c in CriterionId::ALL {
            assert_eq!(c.name().parse::<CriterionId>().unwrap(), c);
        }
        assert_eq!("p2".parse::<CriterionId>().unwrap(), CriterionId::P2);
        assert!("D5".parse::<CriterionId>().is_err());
    }
}
