//! The `log n - (n-1)/n` formula, bounds on its gap to the exact KL
//! divergence, and two KL estimators driven by the base probability of the
//! selected outcome.
//!
//! Every expression containing `(1 - eps)^n` goes through
//! [`pow_one_minus`]/[`one_minus_pow_one_minus`] so the `n = 1e6`,
//! `eps = 1e-5` corner stays accurate.

use serde::Serialize;

use crate::bon::{bon_pmf, check_n, epsilon_infinity, exact_kl};
use crate::error::{Error, Result};
use crate::numeric::{log_expm1_ratio, one_minus_pow_one_minus, pow_one_minus, stable_sum};
use crate::policy::{BasePolicy, ContextEnsemble};

/// Absolute slack used when checking report invariants.
pub const INVARIANT_SLACK: f64 = 1e-10;

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEps(eps))
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a >= 0.0 && a < b && b <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInterval { a, b })
    }
}

/// `(n - 1) / n`.
fn offset(n: u64) -> f64 {
    (n - 1) as f64 / n as f64
}

/// `log n - (n - 1)/n`.
pub fn analytical_formula(n: u64) -> Result<f64> {
    check_n(n)?;
    Ok((n as f64).ln() - offset(n))
}

/// Gap upper bound `2 n (n-1) exp(-H_2(p))`.
pub fn gap_upper_bound(p: &BasePolicy, n: u64) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    Ok(2.0 * nf * (nf - 1.0) * p.collision_probability())
}

/// Gap upper bound `2 n (n-1) delta` for policies with every probability at most `delta`.
pub fn gap_upper_uniform_delta(delta: f64, n: u64) -> Result<f64> {
    check_n(n)?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidDelta(delta));
    }
    let nf = n as f64;
    Ok(2.0 * nf * (nf - 1.0) * delta)
}

/// Lower bound on the gap from the top-reward outcome alone: `g_n(1 - eps_inf, 1)`.
///
/// Evaluated as
/// `(1-(1-e)^n) (log(n e / (1-(1-e)^n)) - (n-1)/n) - (n-1)(1-e)^n log(1-e)`.
pub fn gap_lower_bound(eps_inf: f64, n: u64) -> Result<f64> {
    check_n(n)?;
    check_eps(eps_inf)?;
    if n == 1 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let hit = one_minus_pow_one_minus(eps_inf, n);
    let miss = pow_one_minus(eps_inf, n);
    let head = hit * ((nf * eps_inf / hit).ln() - offset(n));
    let tail = if miss == 0.0 { 0.0 } else { (nf - 1.0) * miss * (-eps_inf).ln_1p() };
    Ok(head - tail)
}

/// Weaker closed-form lower bound `(1 - e^{-n eps}) log(n eps) - 1`.
///
/// This can be negative, in which case it is valid but vacuous; the value is
/// returned as is.
pub fn gap_lower_simple(eps_inf: f64, n: u64) -> Result<f64> {
    check_n(n)?;
    check_eps(eps_inf)?;
    let x = n as f64 * eps_inf;
    Ok(-(-x).exp_m1() * x.ln() - 1.0)
}

/// Alternate estimator `log((1 - (1 - eps)^n) / eps)`.
pub fn alternate_estimator(eps: f64, n: u64) -> Result<f64> {
    check_n(n)?;
    check_eps(eps)?;
    if n == 1 {
        return Ok(0.0);
    }
    Ok((one_minus_pow_one_minus(eps, n) / eps).ln())
}

/// Proposed estimator:
/// `(1-e)^n (log n + (n-1) log(1-e) - (n-1)/n) + (1-(1-e)^n) log((1-(1-e)^n)/e)`.
pub fn proposed_estimator(eps: f64, n: u64) -> Result<f64> {
    check_n(n)?;
    check_eps(eps)?;
    if n == 1 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let miss = pow_one_minus(eps, n);
    let hit = one_minus_pow_one_minus(eps, n);
    let formula_regime = if miss == 0.0 {
        0.0
    } else {
        miss * (nf.ln() + (nf - 1.0) * (-eps).ln_1p() - offset(n))
    };
    Ok(formula_regime + hit * (hit / eps).ln())
}

/// KL upper bound in terms of the top-reward probability; the same
/// expression as [`proposed_estimator`] evaluated at `eps_inf`.
pub fn thm4_bound(eps_inf: f64, n: u64) -> Result<f64> {
    proposed_estimator(eps_inf, n)
}

/// Which per-outcome estimator [`expected_estimator`] averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorKind {
    Alternate,
    Proposed,
}

impl EstimatorKind {
    pub fn eval(self, eps: f64, n: u64) -> Result<f64> {
        match self {
            EstimatorKind::Alternate => alternate_estimator(eps, n),
            EstimatorKind::Proposed => proposed_estimator(eps, n),
        }
    }
}

/// `E_{y ~ pi_n} estimator(p(y), n)`, summed exactly over the support.
pub fn expected_estimator(p: &BasePolicy, n: u64, which: EstimatorKind) -> Result<f64> {
    let pmf = bon_pmf(p, n)?;
    let terms = pmf
        .probs
        .iter()
        .zip(p.probs())
        .filter(|(q, _)| **q > 0.0)
        .map(|(q, &eps)| which.eval(eps, n).map(|v| q * v))
        .collect::<Result<Vec<f64>>>()?;
    Ok(stable_sum(terms))
}

/// `g_n(a, b)`: the contribution of the reward interval `[a, b]` to the
/// gap between the formula and the exact KL.
///
/// Uses `g_n(a, b) = b^n G_n(x)` with `x = ln(b / a)` and
/// `G_n(x) = A (phi(x) - phi(n x) - (n-1)/n) + (n-1) x e^{-n x}`,
/// `A = 1 - e^{-n x}`, `phi(y) = ln((1 - e^{-y}) / y)`.
pub fn g_n(a: f64, b: f64, n: u64) -> Result<f64> {
    check_n(n)?;
    check_interval(a, b)?;
    if n == 1 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let scale = (nf * b.ln()).exp();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let shape = if a == 0.0 {
        nf.ln() - offset(n)
    } else {
        let x = -(-(b - a) / b).ln_1p();
        let nx = nf * x;
        let mass = -(-nx).exp_m1();
        let diff = log_expm1_ratio(x) - log_expm1_ratio(nx);
        mass * (diff - offset(n)) + (nf - 1.0) * x * (-nx).exp()
    };
    Ok(scale * shape)
}

/// Closed form of `int_a^b n v^(n-1) log(n v^(n-1)) dv`.
pub fn integral_closed_form(a: f64, b: f64, n: u64) -> Result<f64> {
    check_n(n)?;
    check_interval(a, b)?;
    if n == 1 {
        return Ok(0.0);
    }
    let nf = n as f64;
    let bn = b.powf(nf);
    let an = a.powf(nf);
    let a_term = if a == 0.0 { 0.0 } else { an * a.ln() };
    let mass = bn - an;
    Ok(mass * nf.ln() + (nf - 1.0) * (bn * b.ln() - a_term) - offset(n) * mass)
}

/// Everything computed for one `(policy, n)` pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KlReport {
    pub n: u64,
    pub exact_kl: f64,
    pub formula: f64,
    pub alt_estimator_expected: f64,
    pub proposed_estimator_expected: f64,
    pub gap_upper: f64,
    pub gap_lower: f64,
    pub gap_lower_simple: f64,
    pub thm4_bound: f64,
    pub eps_inf: f64,
}

impl KlReport {
    /// Checks the ordering relations every report must satisfy.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::InvariantViolation { n: self.n, what: what.into() });
        let values = [
            self.exact_kl,
            self.formula,
            self.alt_estimator_expected,
            self.proposed_estimator_expected,
            self.gap_upper,
            self.gap_lower,
            self.gap_lower_simple,
            self.thm4_bound,
            self.eps_inf,
        ];
        if values.iter().any(|v| !v.is_finite()) {
            return fail("non-finite value");
        }
        let gap = self.formula - self.exact_kl;
        let s = INVARIANT_SLACK;
        if self.exact_kl > self.formula + s {
            return fail("exact KL exceeds the formula");
        }
        if gap > self.gap_upper + s {
            return fail("gap exceeds the Renyi-2 upper bound");
        }
        if gap < self.gap_lower - s {
            return fail("gap below the top-outcome lower bound");
        }
        if self.gap_lower < -s {
            return fail("top-outcome lower bound is negative");
        }
        if self.exact_kl > self.thm4_bound + s {
            return fail("exact KL exceeds the eps_inf bound");
        }
        if self.exact_kl > self.alt_estimator_expected + s {
            return fail("exact KL exceeds the expected alternate estimator");
        }
        Ok(())
    }
}

/// Build the full report for one policy and `n`.
pub fn kl_report(p: &BasePolicy, n: u64) -> Result<KlReport> {
    let eps_inf = epsilon_infinity(p);
    Ok(KlReport {
        n,
        exact_kl: exact_kl(p, n)?,
        formula: analytical_formula(n)?,
        alt_estimator_expected: expected_estimator(p, n, EstimatorKind::Alternate)?,
        proposed_estimator_expected: expected_estimator(p, n, EstimatorKind::Proposed)?,
        gap_upper: gap_upper_bound(p, n)?,
        gap_lower: gap_lower_bound(eps_inf, n)?,
        gap_lower_simple: gap_lower_simple(eps_inf, n)?,
        thm4_bound: thm4_bound(eps_inf, n)?,
        eps_inf,
    })
}

/// Context-weighted average of the exact KL.
pub fn ensemble_kl(e: &ContextEnsemble, n: u64) -> Result<f64> {
    let terms = e
        .contexts()
        .iter()
        .map(|(c, p)| exact_kl(p, n).map(|kl| c.weight * kl))
        .collect::<Result<Vec<f64>>>()?;
    Ok(stable_sum(terms))
}
