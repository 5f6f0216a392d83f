//! Finite reward-annotated base policies, their reward-ordered CDFs and
//! entropies.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{stable_sum, CompensatedSum};

/// Tolerance on the probability sum accepted at ingestion.
pub const INGEST_SUM_TOLERANCE: f64 = 1e-9;

/// One outcome of a base policy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub id: String,
    pub prob: f64,
    pub reward: f64,
}

impl Outcome {
    pub fn new(id: impl Into<String>, prob: f64, reward: f64) -> Self {
        Outcome { id: id.into(), prob, reward }
    }
}

impl<S: Into<String>> From<(S, f64, f64)> for Outcome {
    fn from((id, prob, reward): (S, f64, f64)) -> Self {
        Outcome::new(id, prob, reward)
    }
}

/// Deterministic tie-breaking for tables with repeated rewards.
///
/// Every outcome whose reward is shared with another outcome receives an
/// additive perturbation drawn uniformly from `(0, eps)` by a ChaCha8 stream
/// seeded with `seed`, in input order. Outcomes with a unique reward are left
/// untouched.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jitter {
    pub eps: f64,
    pub seed: u64,
}

/// Reward-ascending cumulative probabilities `F(y)` and `F^-(y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdfPair {
    f_upper: Vec<f64>,
    f_lower: Vec<f64>,
    // ln F(y), via log1p of the upper tail once F passes 1/2
    ln_upper: Vec<f64>,
    // ln(F^-(y) / F(y)) = log1p(-p(y) / F(y)); -inf for the lowest reward
    ln_ratio: Vec<f64>,
}

impl CdfPair {
    fn from_probs(probs: &[f64]) -> Self {
        let l = probs.len();
        let mut tails = vec![0.0; l];
        let mut acc = CompensatedSum::new();
        for i in (0..l).rev() {
            tails[i] = acc.value();
            acc.add(probs[i]);
        }

        let mut f_upper = Vec::with_capacity(l);
        let mut f_lower = Vec::with_capacity(l);
        let mut ln_upper = Vec::with_capacity(l);
        let mut ln_ratio = Vec::with_capacity(l);
        let mut acc = CompensatedSum::new();
        let mut prev = 0.0;
        for (i, &p) in probs.iter().enumerate() {
            acc.add(p);
            let f = if i + 1 == l { 1.0 } else { acc.value().min(1.0) };
            f_lower.push(prev);
            f_upper.push(f);
            ln_upper.push(if f < 0.5 { f.ln() } else { (-tails[i]).ln_1p() });
            ln_ratio.push(if i == 0 { f64::NEG_INFINITY } else { (-(p / f).min(1.0)).ln_1p() });
            prev = f;
        }
        CdfPair { f_upper, f_lower, ln_upper, ln_ratio }
    }

    /// `F(y)`: probability that a base draw has reward `<= r(y)`.
    pub fn f_upper(&self) -> &[f64] {
        &self.f_upper
    }

    /// `F^-(y)`: probability that a base draw has reward `< r(y)`.
    pub fn f_lower(&self) -> &[f64] {
        &self.f_lower
    }

    /// `ln F(y)`, accurate near `F = 1`.
    pub fn ln_upper(&self) -> &[f64] {
        &self.ln_upper
    }

    /// `ln(F^-(y) / F(y))`; negative infinity for the lowest-reward outcome.
    pub fn ln_ratio(&self) -> &[f64] {
        &self.ln_ratio
    }

    pub fn len(&self) -> usize {
        self.f_upper.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f_upper.is_empty()
    }
}

/// A validated base policy `p(y|x)` over a finite support, sorted by reward.
///
/// Invariants: non-empty, all probabilities strictly positive and summing to
/// one, rewards pairwise distinct and ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct BasePolicy {
    outcomes: Vec<Outcome>,
    probs: Vec<f64>,
    cdf: CdfPair,
}

impl BasePolicy {
    pub fn new<I, O>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = O>,
        O: Into<Outcome>,
    {
        validate_policy(raw.into_iter().map(Into::into).collect())
    }

    /// Outcomes in reward-ascending order.
    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    /// Probabilities in reward-ascending order.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn rewards(&self) -> impl Iterator<Item = f64> + '_ {
        self.outcomes.iter().map(|o| o.reward)
    }

    pub fn cdf(&self) -> &CdfPair {
        &self.cdf
    }

    /// Support size.
    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }

    pub fn max_prob(&self) -> f64 {
        self.probs.iter().copied().fold(0.0, f64::max)
    }

    /// Collision probability `sum p(y)^2`, i.e. `exp(-H_2)`.
    pub fn collision_probability(&self) -> f64 {
        stable_sum(self.probs.iter().map(|p| p * p))
    }
}

/// Validate a raw outcome table and sort it by reward.
///
/// Zero-probability rows are dropped (the policy is represented on its
/// support). After the sum check the probabilities are renormalized.
pub fn validate_policy(raw: Vec<Outcome>) -> Result<BasePolicy> {
    validate_policy_with(raw, None)
}

/// [`validate_policy`] with optional deterministic tie-breaking.
pub fn validate_policy_with(raw: Vec<Outcome>, jitter: Option<Jitter>) -> Result<BasePolicy> {
    if raw.is_empty() {
        return Err(Error::EmptyPolicy);
    }
    let mut seen = HashSet::with_capacity(raw.len());
    for o in &raw {
        if !seen.insert(o.id.as_str()) {
            return Err(Error::DuplicateOutcomeId(o.id.clone()));
        }
        if !(o.prob >= 0.0) || !o.prob.is_finite() {
            return Err(Error::NonPositiveProb { id: o.id.clone(), prob: o.prob });
        }
        if !o.reward.is_finite() {
            return Err(Error::NonFiniteReward { id: o.id.clone(), reward: o.reward });
        }
    }

    let mut outcomes: Vec<Outcome> = raw.into_iter().filter(|o| o.prob > 0.0).collect();
    if outcomes.is_empty() {
        return Err(Error::EmptyPolicy);
    }

    let sum = stable_sum(outcomes.iter().map(|o| o.prob));
    if (sum - 1.0).abs() > INGEST_SUM_TOLERANCE {
        return Err(Error::ProbSumMismatch { sum, tolerance: INGEST_SUM_TOLERANCE });
    }

    if let Some(j) = jitter {
        apply_jitter(&mut outcomes, j)?;
    }

    outcomes.sort_by(|a, b| a.reward.partial_cmp(&b.reward).expect("finite rewards"));
    if let Some(w) = outcomes.windows(2).find(|w| w[0].reward == w[1].reward) {
        return Err(Error::DuplicateReward {
            first: w[0].id.clone(),
            second: w[1].id.clone(),
            reward: w[0].reward,
        });
    }

    for o in &mut outcomes {
        o.prob /= sum;
    }
    let probs: Vec<f64> = outcomes.iter().map(|o| o.prob).collect();
    let cdf = CdfPair::from_probs(&probs);
    Ok(BasePolicy { outcomes, probs, cdf })
}

fn apply_jitter(outcomes: &mut [Outcome], jitter: Jitter) -> Result<()> {
    if !(jitter.eps > 0.0) || !jitter.eps.is_finite() {
        return Err(Error::InvalidJitter(jitter.eps));
    }
    let mut sorted: Vec<f64> = outcomes.iter().map(|o| o.reward).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite rewards"));
    let tied = |r: f64| {
        let lo = sorted.partition_point(|&x| x < r);
        sorted.get(lo + 1).is_some_and(|&x| x == r)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(jitter.seed);
    let flags: Vec<bool> = outcomes.iter().map(|o| tied(o.reward)).collect();
    for (o, is_tied) in outcomes.iter_mut().zip(flags) {
        if is_tied {
            // open interval (0, eps)
            let u: f64 = rng.random_range(f64::EPSILON..1.0);
            o.reward += u * jitter.eps;
        }
    }
    Ok(())
}

/// The reward-ordered CDF pair of a policy.
pub fn cdf_pair(p: &BasePolicy) -> CdfPair {
    p.cdf.clone()
}

/// Rényi entropy of order `alpha` in nats: `ln(sum p^alpha) / (1 - alpha)`.
pub fn renyi_entropy(p: &BasePolicy, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::InvalidAlpha(alpha));
    }
    let power_sum = if alpha == 2.0 {
        p.collision_probability()
    } else {
        stable_sum(p.probs.iter().map(|q| q.powf(alpha)))
    };
    Ok(power_sum.ln() / (1.0 - alpha))
}

/// Shannon entropy of a Bernoulli(x) in nats, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfRange(x));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.ln() - (1.0 - x) * (-x).ln_1p())
}

/// A prompt/context with its probability under the context distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Context {
    pub id: String,
    pub weight: f64,
}

/// A finite collection of contexts, each with its own base policy.
#[derive(Debug, Clone, PartialEq)]
pub struct ContextEnsemble {
    contexts: Vec<(Context, BasePolicy)>,
}

impl ContextEnsemble {
    /// Validates ids and weights; weights are renormalized after a 1e-9 sum check.
    pub fn new(mut contexts: Vec<(Context, BasePolicy)>) -> Result<Self> {
        if contexts.is_empty() {
            return Err(Error::EmptyEnsemble);
        }
        let mut seen = HashSet::new();
        for (c, _) in &contexts {
            if !seen.insert(c.id.clone()) {
                return Err(Error::DuplicateContextId(c.id.clone()));
            }
            if !(0.0..=1.0).contains(&c.weight) {
                return Err(Error::InvalidContextWeight { id: c.id.clone(), weight: c.weight });
            }
        }
        let total = stable_sum(contexts.iter().map(|(c, _)| c.weight));
        if (total - 1.0).abs() > INGEST_SUM_TOLERANCE {
            return Err(Error::ContextWeightMismatch(total));
        }
        for (c, _) in &mut contexts {
            c.weight /= total;
        }
        Ok(ContextEnsemble { contexts })
    }

    pub fn contexts(&self) -> &[(Context, BasePolicy)] {
        &self.contexts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy(rows: &[(&str, f64, f64)]) -> Result<BasePolicy> {
        BasePolicy::new(rows.iter().map(|&(id, p, r)| (id, p, r)))
    }

    #[test]
    fn example_one_policy_is_valid() {
        let p = policy(&[("b", 0.5, 1.0), ("a", 0.5, 0.0)]).unwrap();
        let ids: Vec<_> = p.outcomes().iter().map(|o| o.id.as_str()).collect();
        assert_eq!(ids, ["a", "b"]);
    }

    #[test]
    fn point_mass_is_valid() {
        let p = policy(&[("a", 1.0, 0.0)]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.cdf().f_upper(), &[1.0]);
        assert_eq!(p.cdf().f_lower(), &[0.0]);
    }

    #[test]
    fn duplicate_reward_rejected() {
        let err = policy(&[("a", 0.5, 1.0), ("b", 0.5, 1.0)]).unwrap_err();
        assert!(matches!(err, Error::DuplicateReward { .. }));
    }

    #[test]
    fn other_validation_errors() {
        assert_eq!(policy(&[]).unwrap_err(), Error::EmptyPolicy);
        assert!(matches!(
            policy(&[("a", -0.1, 0.0), ("b", 1.1, 1.0)]).unwrap_err(),
            Error::NonPositiveProb { .. }
        ));
        assert!(matches!(
            policy(&[("a", f64::NAN, 0.0)]).unwrap_err(),
            Error::NonPositiveProb { .. }
        ));
        assert!(matches!(
            policy(&[("a", 0.5, 0.0), ("b", 0.4, 1.0)]).unwrap_err(),
            Error::ProbSumMismatch { .. }
        ));
        assert_eq!(
            policy(&[("a", 0.5, 0.0), ("a", 0.5, 1.0)]).unwrap_err(),
            Error::DuplicateOutcomeId("a".into())
        );
        assert!(matches!(
            policy(&[("a", 1.0, f64::INFINITY)]).unwrap_err(),
            Error::NonFiniteReward { .. }
        ));
    }

    #[test]
    fn zero_probability_rows_are_stripped() {
        let p = policy(&[("a", 0.5, 0.0), ("z", 0.0, 0.0), ("b", 0.5, 1.0)]).unwrap();
        assert_eq!(p.len(), 2);
        assert!(policy(&[("z", 0.0, 0.0)]).is_err());
    }

    #[test]
    fn loose_sum_is_renormalized() {
        let p = policy(&[("a", 0.5 + 4e-10, 0.0), ("b", 0.5, 1.0)]).unwrap();
        assert!((p.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cdf_examples() {
        let p = policy(&[("a", 0.5, 0.0), ("b", 0.5, 1.0)]).unwrap();
        let c = cdf_pair(&p);
        assert_eq!(c.f_upper(), &[0.5, 1.0]);
        assert_eq!(c.f_lower(), &[0.0, 0.5]);

        let p = policy(&[("a", 0.25, 0.0), ("b", 0.25, 1.0), ("c", 0.25, 2.0), ("d", 0.25, 3.0)])
            .unwrap();
        assert_eq!(p.cdf().f_upper(), &[0.25, 0.5, 0.75, 1.0]);

        let p = policy(&[("c", 0.6, 2.0), ("a", 0.1, 0.0), ("b", 0.3, 1.0)]).unwrap();
        let want = [0.1, 0.4, 1.0];
        for (got, want) in p.cdf().f_upper().iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn log_cdf_near_one_is_accurate() {
        let p = policy(&[("a", 1.0 - 1e-5, 0.0), ("b", 1e-5, 1.0)]).unwrap();
        let want = (-1e-5f64).ln_1p();
        assert!((p.cdf().ln_upper()[0] - want).abs() < 1e-20);
        assert_eq!(p.cdf().ln_upper()[1], 0.0);
        assert!((p.cdf().ln_ratio()[1] - (-1e-5f64).ln_1p()).abs() < 1e-20);
    }

    #[test]
    fn renyi_examples() {
        let uniform = BasePolicy::new((0..100).map(|i| (format!("y{i}"), 0.01, i as f64))).unwrap();
        assert!((renyi_entropy(&uniform, 2.0).unwrap() - 100f64.ln()).abs() < 1e-12);
        let point = policy(&[("a", 1.0, 0.0)]).unwrap();
        assert_eq!(renyi_entropy(&point, 2.0).unwrap(), 0.0);
        let two = policy(&[("a", 0.5, 0.0), ("b", 0.5, 1.0)]).unwrap();
        assert!((renyi_entropy(&two, 2.0).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((renyi_entropy(&two, 0.5).unwrap() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn renyi_rejects_bad_alpha() {
        let two = policy(&[("a", 0.5, 0.0), ("b", 0.5, 1.0)]).unwrap();
        for alpha in [0.0, -1.0, 1.0, f64::NAN] {
            assert!(matches!(renyi_entropy(&two, alpha), Err(Error::InvalidAlpha(_))));
        }
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.5).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        // -0.125 ln 0.125 - 0.875 ln 0.875
        assert!((binary_entropy(0.125).unwrap() - 0.376_770_161_256_436_75).abs() < 1e-12);
        assert!(matches!(binary_entropy(1.5), Err(Error::OutOfRange(_))));
        assert!(matches!(binary_entropy(-0.1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn jitter_breaks_ties_deterministically() {
        let rows = vec![
            Outcome::new("a", 0.25, 1.0),
            Outcome::new("b", 0.25, 1.0),
            Outcome::new("c", 0.5, 3.0),
        ];
        let j = Jitter { eps: 1e-6, seed: 42 };
        let p1 = validate_policy_with(rows.clone(), Some(j)).unwrap();
        let p2 = validate_policy_with(rows.clone(), Some(j)).unwrap();
        assert_eq!(p1, p2);
        for o in p1.outcomes() {
            match o.id.as_str() {
                "c" => assert_eq!(o.reward, 3.0),
                _ => assert!(o.reward > 1.0 && o.reward < 1.0 + 1e-6),
            }
        }
        assert!(validate_policy(rows.clone()).is_err());
        assert!(matches!(
            validate_policy_with(rows, Some(Jitter { eps: 0.0, seed: 0 })),
            Err(Error::InvalidJitter(_))
        ));
    }

    #[test]
    fn ensemble_validation() {
        let p = policy(&[("a", 1.0, 0.0)]).unwrap();
        let ctx = |id: &str, w: f64| (Context { id: id.into(), weight: w }, p.clone());
        assert!(ContextEnsemble::new(vec![ctx("x", 0.3), ctx("y", 0.7)]).is_ok());
        assert_eq!(ContextEnsemble::new(vec![]).unwrap_err(), Error::EmptyEnsemble);
        assert!(matches!(
            ContextEnsemble::new(vec![ctx("x", 0.5), ctx("x", 0.5)]),
            Err(Error::DuplicateContextId(_))
        ));
        assert!(matches!(
            ContextEnsemble::new(vec![ctx("x", 0.5), ctx("y", 0.4)]),
            Err(Error::ContextWeightMismatch(_))
        ));
    }
}
