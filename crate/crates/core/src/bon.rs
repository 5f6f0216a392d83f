//! Exact best-of-n policy: PMF, KL divergence to the base policy and
//! expected reward.
//!
//! For reward-sorted outcomes with CDF pair `(F, F^-)` the best-of-n
//! probability of outcome `y` is `F(y)^n - F^-(y)^n`: the maximum of `n`
//! i.i.d. uniforms lands in `[F^-(y), F(y))` exactly when the best draw is `y`.
//! Everything here works from `ln F` and `ln(F^- / F)` so that `n` up to 1e7
//! with `F` near one neither underflows nor cancels.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{stable_sum, CompensatedSum, ZERO_MASS};
use crate::policy::BasePolicy;

/// The best-of-n distribution, aligned with the reward-ascending outcomes of
/// its base policy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedPolicy {
    pub n: u64,
    pub probs: Vec<f64>,
}

pub(crate) fn check_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidN)
    } else {
        Ok(())
    }
}

/// `ln(F^n - (F^-)^n)` for outcome `i`; negative infinity on underflow.
fn ln_bon_mass(p: &BasePolicy, i: usize, n: u64) -> f64 {
    let cdf = p.cdf();
    let nf = n as f64;
    let head = nf * cdf.ln_upper()[i];
    let ratio = cdf.ln_ratio()[i];
    if ratio == f64::NEG_INFINITY {
        head
    } else {
        head + (-(nf * ratio).exp_m1()).ln()
    }
}

/// Exact best-of-n PMF `F(y)^n - F^-(y)^n`.
pub fn bon_pmf(p: &BasePolicy, n: u64) -> Result<DerivedPolicy> {
    check_n(n)?;
    if n == 1 {
        return Ok(DerivedPolicy { n, probs: p.probs().to_vec() });
    }
    let probs = (0..p.len()).map(|i| ln_bon_mass(p, i, n).exp()).collect();
    Ok(DerivedPolicy { n, probs })
}

/// `KL(pi_n || p)` in nats for a single context.
pub fn exact_kl(p: &BasePolicy, n: u64) -> Result<f64> {
    check_n(n)?;
    if n == 1 {
        return Ok(0.0);
    }
    let mut acc = CompensatedSum::new();
    for (i, &base) in p.probs().iter().enumerate() {
        let ln_q = ln_bon_mass(p, i, n);
        let q = ln_q.exp();
        if q < ZERO_MASS {
            continue;
        }
        acc.add(q * (ln_q - base.ln()));
    }
    Ok(acc.value())
}

/// `E_{y ~ pi_n} r(y)`.
pub fn expected_reward(p: &BasePolicy, n: u64) -> Result<f64> {
    let pmf = bon_pmf(p, n)?;
    Ok(stable_sum(pmf.probs.iter().zip(p.rewards()).map(|(q, r)| q * r)))
}

/// Base probability of the highest-reward outcome.
pub fn epsilon_infinity(p: &BasePolicy) -> f64 {
    *p.probs().last().expect("policy is non-empty")
}
