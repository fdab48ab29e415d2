//! Fifteen sparsity measures over non-negative coefficient vectors.
//!
//! Every measure is oriented so that a larger value means a sparser vector.
//! Evaluation always sorts the coefficients ascending first and accumulates
//! in sorted order, which makes every measure bit-exactly invariant under
//! permutation of its input.
//!
//! Logarithms are natural logarithms. `H_G` and `H_S'` skip zero
//! coefficients, and `0 * log 0` is taken to be `0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("coefficient vector must contain at least one value")]
    EmptyInput,
    #[error("coefficient {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },
    #[error("{measure} is undefined for this input: {reason}")]
    DegenerateInput {
        measure: MeasureId,
        reason: &'static str,
    },
    #[error("invalid parameters for {measure}: {reason}")]
    InvalidParams { measure: MeasureId, reason: String },
}

/// Non-negative coefficient magnitudes, `N >= 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct CoefficientVector {
    values: Vec<f64>,
}

impl CoefficientVector {
    /// Builds a vector from real values, taking absolute values.
    pub fn new(values: Vec<f64>) -> Result<Self, MeasureError> {
        if values.is_empty() {
            return Err(MeasureError::EmptyInput);
        }
        let mut values = values;
        for (index, v) in values.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(MeasureError::NonFinite { index, value: *v });
            }
            *v = v.abs();
        }
        Ok(Self { values })
    }

    /// Builds a vector from complex values given as `(re, im)` pairs.
    pub fn from_complex(pairs: &[(f64, f64)]) -> Result<Self, MeasureError> {
        Self::new(pairs.iter().map(|&(re, im)| re.hypot(im)).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ascending copy of the coefficients. Stable, so ties keep input order.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn l1(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn is_all_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    pub fn nonzero_count(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0.0).count()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.values
    }
}

impl TryFrom<Vec<f64>> for CoefficientVector {
    type Error = MeasureError;

    fn try_from(values: Vec<f64>) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl From<CoefficientVector> for Vec<f64> {
    fn from(c: CoefficientVector) -> Self {
        c.values
    }
}

/// The fifteen measures, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureId {
    L0,
    L0Eps,
    NegL1,
    NegLp,
    L2OverL1,
    NegTanh,
    NegLog,
    Kappa4,
    UTheta,
    NegLpNeg,
    Hg,
    Hs,
    HsPrime,
    Hoyer,
    Gini,
}

impl MeasureId {
    pub const ALL: [MeasureId; 15] = [
        MeasureId::L0,
        MeasureId::L0Eps,
        MeasureId::NegL1,
        MeasureId::NegLp,
        MeasureId::L2OverL1,
        MeasureId::NegTanh,
        MeasureId::NegLog,
        MeasureId::Kappa4,
        MeasureId::UTheta,
        MeasureId::NegLpNeg,
        MeasureId::Hg,
        MeasureId::Hs,
        MeasureId::HsPrime,
        MeasureId::Hoyer,
        MeasureId::Gini,
    ];

    /// Row position in table order.
    pub fn index(self) -> usize {
        self as usize
    }

    /// Command-line / serialization name.
    pub fn name(self) -> &'static str {
        match self {
            MeasureId::L0 => "l0",
            MeasureId::L0Eps => "l0-eps",
            MeasureId::NegL1 => "neg-l1",
            MeasureId::NegLp => "neg-lp",
            MeasureId::L2OverL1 => "l2-over-l1",
            MeasureId::NegTanh => "neg-tanh",
            MeasureId::NegLog => "neg-log",
            MeasureId::Kappa4 => "kappa4",
            MeasureId::UTheta => "u-theta",
            MeasureId::NegLpNeg => "neg-lp-neg",
            MeasureId::Hg => "hg",
            MeasureId::Hs => "hs",
            MeasureId::HsPrime => "hs-prime",
            MeasureId::Hoyer => "hoyer",
            MeasureId::Gini => "gini",
        }
    }

    /// Conventional mathematical label.
    pub fn label(self) -> &'static str {
        match self {
            MeasureId::L0 => "ℓ⁰",
            MeasureId::L0Eps => "ℓ⁰_ε",
            MeasureId::NegL1 => "−ℓ¹",
            MeasureId::NegLp => "−ℓᵖ",
            MeasureId::L2OverL1 => "ℓ²/ℓ¹",
            MeasureId::NegTanh => "−tanh",
            MeasureId::NegLog => "−log",
            MeasureId::Kappa4 => "κ₄",
            MeasureId::UTheta => "u_θ",
            MeasureId::NegLpNeg => "−ℓᵖ₋",
            MeasureId::Hg => "H_G",
            MeasureId::Hs => "H_S",
            MeasureId::HsPrime => "H_S′",
            MeasureId::Hoyer => "Hoyer",
            MeasureId::Gini => "Gini",
        }
    }

    /// Whether the measure is a sum of per-coefficient terms.
    pub fn is_separable(self) -> bool {
        !matches!(
            self,
            MeasureId::L2OverL1
                | MeasureId::Kappa4
                | MeasureId::UTheta
                | MeasureId::Hs
                | MeasureId::Hoyer
                | MeasureId::Gini
        )
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MeasureId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown measure `{s}`"))
    }
}

/// Free parameters of the parameterised measures.
///
/// Only the fields used by a given measure are validated; the rest are
/// ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureParams {
    /// Threshold for `ℓ⁰_ε`, > 0.
    pub epsilon: f64,
    /// Exponent for `−ℓᵖ`, in (0, 1).
    pub p_frac: f64,
    /// Exponent for `−ℓᵖ₋`, < 0.
    pub p_neg: f64,
    /// Scale for `−tanh`, > 0.
    pub a: f64,
    /// Power for `−tanh`, > 0.
    pub b: f64,
    /// Window fraction for `u_θ`, in (0, 1).
    pub theta: f64,
}

impl Default for MeasureParams {
    fn default() -> Self {
        Self {
            epsilon: 1.0,
            p_frac: 0.5,
            p_neg: -1.0,
            a: 1.0,
            b: 1.0,
            theta: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureSpec {
    pub id: MeasureId,
    pub params: MeasureParams,
}

impl MeasureSpec {
    pub fn new(id: MeasureId, params: MeasureParams) -> Self {
        Self { id, params }
    }

    /// The measure with default parameters.
    pub fn with_defaults(id: MeasureId) -> Self {
        Self::new(id, MeasureParams::default())
    }

    pub fn validate(&self) -> Result<(), MeasureError> {
        let p = &self.params;
        let bad = |reason: String| {
            Err(MeasureError::InvalidParams {
                measure: self.id,
                reason,
            })
        };
        match self.id {
            MeasureId::L0Eps if !(p.epsilon > 0.0 && p.epsilon.is_finite()) => {
                bad(format!("epsilon must be positive, got {}", p.epsilon))
            }
            MeasureId::NegLp if !(p.p_frac > 0.0 && p.p_frac < 1.0) => {
                bad(format!("p must lie in (0, 1), got {}", p.p_frac))
            }
            MeasureId::NegLpNeg if !(p.p_neg < 0.0 && p.p_neg.is_finite()) => {
                bad(format!("p must be negative, got {}", p.p_neg))
            }
            MeasureId::NegTanh
                if !(p.a > 0.0 && p.b > 0.0 && p.a.is_finite() && p.b.is_finite()) =>
            {
                bad(format!("a and b must be positive, got a={} b={}", p.a, p.b))
            }
            MeasureId::UTheta if !(p.theta > 0.0 && p.theta < 1.0) => {
                bad(format!("theta must lie in (0, 1), got {}", p.theta))
            }
            _ => Ok(()),
        }
    }
}

impl From<MeasureId> for MeasureSpec {
    fn from(id: MeasureId) -> Self {
        Self::with_defaults(id)
    }
}

fn degenerate(measure: MeasureId, reason: &'static str) -> MeasureError {
    MeasureError::DegenerateInput { measure, reason }
}

fn wrong_family(measure: MeasureId, family: &str) -> MeasureError {
    MeasureError::InvalidParams {
        measure,
        reason: format!("not a {family} measure"),
    }
}

/// Evaluates the measure named by `spec` on `c`.
pub fn evaluate(spec: &MeasureSpec, c: &CoefficientVector) -> Result<f64, MeasureError> {
    spec.validate()?;
    match spec.id {
        MeasureId::L0 | MeasureId::L0Eps => count_measures(spec, c),
        MeasureId::NegL1 | MeasureId::NegLp | MeasureId::NegLpNeg => norm_measures(spec, c),
        MeasureId::L2OverL1 | MeasureId::Kappa4 | MeasureId::Hoyer => ratio_measures(spec, c),
        MeasureId::NegTanh
        | MeasureId::NegLog
        | MeasureId::Hg
        | MeasureId::Hs
        | MeasureId::HsPrime => separable_measures(spec, c),
        MeasureId::UTheta => u_theta(spec, c),
        MeasureId::Gini => gini(c),
    }
}

/// `ℓ⁰` (number of zeros) and `ℓ⁰_ε` (number of coefficients `<= ε`).
pub fn count_measures(spec: &MeasureSpec, c: &CoefficientVector) -> Result<f64, MeasureError> {
    spec.validate()?;
    let sorted = c.sorted();
    let count = match spec.id {
        MeasureId::L0 => sorted.iter().filter(|&&v| v == 0.0).count(),
        MeasureId::L0Eps => sorted.iter().filter(|&&v| v <= spec.params.epsilon).count(),
        id => return Err(wrong_family(id, "count")),
    };
    Ok(count as f64)
}

/// `−ℓ¹`, `−ℓᵖ` with `0 < p < 1`, and `−ℓᵖ₋` with `p < 0` over nonzero entries.
pub fn norm_measures(spec: &MeasureSpec, c: &CoefficientVector) -> Result<f64, MeasureError> {
    spec.validate()?;
    let sorted = c.sorted();
    match spec.id {
        MeasureId::NegL1 => Ok(-sorted.iter().sum::<f64>()),
        MeasureId::NegLp => {
            let p = spec.params.p_frac;
            let s: f64 = sorted.iter().map(|v| v.powf(p)).sum();
            Ok(-s.powf(1.0 / p))
        }
        MeasureId::NegLpNeg => {
            if c.is_all_zero() {
                return Err(degenerate(
                    spec.id,
                    "needs at least one nonzero coefficient",
                ));
            }
            let p = spec.params.p_neg;
            Ok(-sorted
                .iter()
                .filter(|&&v| v != 0.0)
                .map(|v| v.powf(p))
                .sum::<f64>())
        }
        id => Err(wrong_family(id, "norm")),
    }
}

/// `ℓ²/ℓ¹`, `κ₄` and the Hoyer measure.
pub fn ratio_measures(spec: &MeasureSpec, c: &CoefficientVector) -> Result<f64, MeasureError> {
    spec.validate()?;
    if !matches!(
        spec.id,
        MeasureId::L2OverL1 | MeasureId::Kappa4 | MeasureId::Hoyer
    ) {
        return Err(wrong_family(spec.id, "ratio"));
    }
    if c.is_all_zero() {
        return Err(degenerate(
            spec.id,
            "needs at least one nonzero coefficient",
        ));
    }
    let sorted = c.sorted();
    let s1: f64 = sorted.iter().sum();
    let s2: f64 = sorted.iter().map(|v| v * v).sum();
    match spec.id {
        MeasureId::L2OverL1 => Ok(s2.sqrt() / s1),
        MeasureId::Kappa4 => {
            let s4: f64 = sorted.iter().map(|v| (v * v) * (v * v)).sum();
            Ok(s4 / (s2 * s2))
        }
        _ => {
            let n = sorted.len();
            if n < 2 {
                return Err(degenerate(spec.id, "needs at least two coefficients"));
            }
            let root_n = (n as f64).sqrt();
            Ok((root_n - s1 / s2.sqrt()) / (root_n - 1.0))
        }
    }
}

/// `−tanh_{a,b}`, `−log`, and the entropy measures `H_G`, `H_S`, `H_S'`.
pub fn separable_measures(spec: &MeasureSpec, c: &CoefficientVector) -> Result<f64, MeasureError> {
    spec.validate()?;
    let sorted = c.sorted();
    let nonzero = || sorted.iter().copied().filter(|&v| v != 0.0);
    match spec.id {
        MeasureId::NegTanh => {
            let MeasureParams { a, b, .. } = spec.params;
            Ok(-sorted.iter().map(|v| (a * v).powf(b).tanh()).sum::<f64>())
        }
        MeasureId::NegLog => Ok(-sorted.iter().map(|v| (v * v).ln_1p()).sum::<f64>()),
        MeasureId::Hg => {
            if c.is_all_zero() {
                return Err(degenerate(
                    spec.id,
                    "needs at least one nonzero coefficient",
                ));
            }
            // log c² written as 2 log c so tiny coefficients do not underflow
            Ok(-nonzero().map(|v| 2.0 * v.ln()).sum::<f64>())
        }
        MeasureId::Hs => {
            let s2: f64 = sorted.iter().map(|v| v * v).sum();
            if s2 == 0.0 {
                return Err(degenerate(spec.id, "needs nonzero energy"));
            }
            Ok(-nonzero()
                .map(|v| v * v / s2)
                .filter(|&t| t > 0.0)
                .map(|t| t * 2.0 * t.ln())
                .sum::<f64>())
        }
        MeasureId::HsPrime => Ok(-nonzero().map(|v| v * 2.0 * v.ln()).sum::<f64>()),
        id => Err(wrong_family(id, "separable")),
    }
}

/// Window width `⌈θN⌉` used by `u_θ`.
pub fn u_theta_window(theta: f64, n: usize) -> usize {
    ((theta * n as f64).ceil() as usize).max(1)
}

/// `u_θ`: one minus the narrowest range covering `⌈θN⌉` sorted coefficients,
/// relative to the full range.
pub fn u_theta(spec: &MeasureSpec, c: &CoefficientVector) -> Result<f64, MeasureError> {
    spec.validate()?;
    if spec.id != MeasureId::UTheta {
        return Err(wrong_family(spec.id, "range"));
    }
    let sorted = c.sorted();
    let n = sorted.len();
    let w = u_theta_window(spec.params.theta, n);
    if w >= n {
        return Err(degenerate(spec.id, "window ⌈θN⌉ must be smaller than N"));
    }
    let range = sorted[n - 1] - sorted[0];
    if range == 0.0 {
        return Err(degenerate(spec.id, "constant vector has zero range"));
    }
    let narrowest = sorted
        .windows(w)
        .map(|win| win[w - 1] - win[0])
        .fold(f64::INFINITY, f64::min);
    Ok(1.0 - narrowest / range)
}

/// Gini index of the sorted coefficients.
///
/// Uses the algebraically equivalent paired form
/// `Σ_{k≤N/2} (N+1−2k)(c_(N+1−k) − c_(k)) / (N‖c‖₁)`, whose terms are all
/// non-negative; a constant vector therefore yields exactly `0`.
pub fn gini(c: &CoefficientVector) -> Result<f64, MeasureError> {
    if c.is_all_zero() {
        return Err(degenerate(MeasureId::Gini, "needs nonzero total"));
    }
    let sorted = c.sorted();
    let n = sorted.len();
    let total: f64 = sorted.iter().sum();
    let spread: f64 = (0..n / 2)
        .map(|k| (n - 1 - 2 * k) as f64 * (sorted[n - 1 - k] - sorted[k]))
        .sum();
    Ok(spread / (n as f64 * total))
}

/// Cumulative share of total value against cumulative share of coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LorenzCurve {
    pub points: Vec<(f64, f64)>,
}

impl LorenzCurve {
    /// Twice the trapezoid area between the diagonal and the curve.
    pub fn twice_area(&self) -> f64 {
        let under: f64 = self
            .points
            .windows(2)
            .map(|w| (w[1].0 - w[0].0) * (w[0].1 + w[1].1) / 2.0)
            .sum();
        1.0 - 2.0 * under
    }
}

pub fn lorenz_curve(c: &CoefficientVector) -> Result<LorenzCurve, MeasureError> {
    if c.is_all_zero() {
        return Err(degenerate(MeasureId::Gini, "needs nonzero total"));
    }
    let sorted = c.sorted();
    let n = sorted.len();
    let total: f64 = sorted.iter().sum();
    let mut points = Vec::with_capacity(n + 1);
    points.push((0.0, 0.0));
    let mut running = 0.0;
    for (k, v) in sorted.iter().enumerate() {
        running += v;
        let share = if k + 1 == n {
            1.0
        } else {
            (running / total).min(1.0)
        };
        points.push(((k + 1) as f64 / n as f64, share));
    }
    Ok(LorenzCurve { points })
}
