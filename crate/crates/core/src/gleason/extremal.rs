//! Convex structure of the state space: pure states are exactly the rank-one
//! projectors, and every other state splits nontrivially.

use serde::{Deserialize, Serialize};

use super::DensityOperator;
use crate::error::{LabError, Result};
use crate::linalg::{LabRng, Matrix};
use crate::spectral::eig_hermitian;

/// Second eigenvalue at or below this counts as rank one.
pub const EXTREMAL_TOL: f64 = 1e-8;

pub fn is_extremal(t: &DensityOperator) -> bool {
    let values = eig_hermitian(t.matrix())
        .expect("certified Hermitian")
        .values()
        .to_vec();
    values.get(1).is_none_or(|&s| s <= EXTREMAL_TOL)
}

/// `T = w T₁ + (1 - w) T₂` with `0 < w < 1` and `T₁ ≠ T₂`.
#[derive(Debug, Clone)]
pub struct ConvexSplit {
    pub weight: f64,
    pub first: DensityOperator,
    pub second: DensityOperator,
}

impl ConvexSplit {
    /// `|T - (w T₁ + (1 - w) T₂)|_F`.
    pub fn residual(&self, t: &DensityOperator) -> f64 {
        let w = self.weight;
        let mix = &self.first.matrix().scale(w) + &self.second.matrix().scale(1.0 - w);
        mix.distance(t.matrix())
    }
}

/// Split off the top eigenprojector: `T₁ = u₁⟨u₁|`, `T₂ = (T - s₁T₁)/(1 - s₁)`.
/// `None` for pure states.
pub fn convex_split(t: &DensityOperator) -> Result<Option<ConvexSplit>> {
    if is_extremal(t) {
        return Ok(None);
    }
    let eig = eig_hermitian(t.matrix())?;
    let (u, s) = eig.pairs().next().expect("nonempty");
    let first = DensityOperator::pure(u)?;
    let rest = (t.matrix() - &first.matrix().scale(s)).scale(1.0 / (1.0 - s));
    let second = DensityOperator::new(rest)?;
    Ok(Some(ConvexSplit {
        weight: s,
        first,
        second,
    }))
}

/// `Σ w_r T_r` for nonnegative weights summing to one.
pub fn convex_mix(ts: &[DensityOperator], ws: &[f64]) -> Result<DensityOperator> {
    if ts.is_empty() || ts.len() != ws.len() {
        return Err(LabError::InvalidWeights(format!(
            "{} states, {} weights",
            ts.len(),
            ws.len()
        )));
    }
    if let Some(w) = ws.iter().find(|w| w.is_nan() || **w < 0.0) {
        return Err(LabError::InvalidWeights(format!("weight {w} is negative")));
    }
    let total: f64 = ws.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(LabError::InvalidWeights(format!("weights sum to {total}")));
    }
    let n = ts[0].dim();
    let algebra = ts.iter().fold(ts[0].algebra(), |a, t| a.join(t.algebra()));
    let mut m = Matrix::zeros(n, n, algebra);
    for (t, &w) in ts.iter().zip(ws) {
        if t.dim() != n {
            return Err(LabError::DimensionMismatch {
                expected: n,
                found: t.dim(),
            });
        }
        m = &m + &t.matrix().scale(w);
    }
    DensityOperator::new(m)
}

/// Outcome of the convex unit lemma on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    /// `Σ p = 1` and `Σ p q = 1`, each within `1e-12`.
    pub hypothesis: bool,
    /// Every `q` within `1e-9` of `1`.
    pub conclusion: bool,
    /// `max |q - 1|`.
    pub max_deviation: f64,
}

/// For `p ∈ (0,1)` and `q ∈ [0,1]`: `Σ p = Σ p q = 1` forces every `q = 1`.
pub fn convex_unit_lemma(ps: &[f64], qs: &[f64]) -> Result<LemmaCheck> {
    if ps.len() < 2 || ps.len() != qs.len() {
        return Err(LabError::PreconditionViolation(format!(
            "need two lists of equal length at least 2, got {} and {}",
            ps.len(),
            qs.len()
        )));
    }
    if let Some(p) = ps.iter().find(|p| !(**p > 0.0 && **p < 1.0)) {
        return Err(LabError::PreconditionViolation(format!(
            "p = {p} is outside (0, 1)"
        )));
    }
    if let Some(q) = qs.iter().find(|q| !(0.0..=1.0).contains(*q)) {
        return Err(LabError::PreconditionViolation(format!(
            "q = {q} is outside [0, 1]"
        )));
    }
    let sum_p: f64 = ps.iter().sum();
    let sum_pq: f64 = ps.iter().zip(qs).map(|(p, q)| p * q).sum();
    let max_deviation = qs.iter().map(|q| 1.0 - q).fold(0.0, f64::max);
    Ok(LemmaCheck {
        hypothesis: (sum_p - 1.0).abs() <= 1e-12 && (sum_pq - 1.0).abs() <= 1e-12,
        conclusion: max_deviation <= 1e-9,
        max_deviation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaSamplerReport {
    pub draws: usize,
    /// Draws satisfying the hypothesis.
    pub hits: usize,
    /// Hits whose `max |q - 1|` exceeds the conclusion tolerance.
    pub violations: usize,
    /// Largest `max |q - 1|` among hits.
    pub max_deviation: f64,
}

/// Rejection sampler: random `p` on the simplex, `q_m = 1 - δ_m` with `δ_m` zero
/// or log-uniform in `[1e-16, 1]`, so that the hypothesis is hit often.
pub fn lemma_sampler(draws: usize, seed: u64, conclusion_tol: f64) -> LemmaSamplerReport {
    let mut rng = LabRng::seed_from(seed);
    let mut report = LemmaSamplerReport {
        draws,
        hits: 0,
        violations: 0,
        max_deviation: 0.0,
    };
    for _ in 0..draws {
        let len = rng.int_in(2, 6);
        let raw: Vec<f64> = (0..len).map(|_| rng.uniform_in(0.05, 1.0)).collect();
        let total: f64 = raw.iter().sum();
        let ps: Vec<f64> = raw.iter().map(|x| x / total).collect();
        let qs: Vec<f64> = (0..len)
            .map(|_| {
                if rng.uniform() < 0.5 {
                    1.0
                } else {
                    1.0 - 10f64.powf(-rng.uniform_in(0.0, 16.0))
                }
            })
            .collect();
        let check = convex_unit_lemma(&ps, &qs).expect("sampled inside the domain");
        if check.hypothesis {
            report.hits += 1;
            report.max_deviation = report.max_deviation.max(check.max_deviation);
            if check.max_deviation > conclusion_tol {
                report.violations += 1;
            }
        }
    }
    report
}
