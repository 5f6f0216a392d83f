//! Exact analysis of the best-of-n policy over finite reward-annotated
//! distributions.
//!
//! Given a base policy `p` (outcomes with probabilities and distinct
//! rewards), the best-of-n policy draws `n` i.i.d. outcomes from `p` and keeps
//! the one with the highest reward. This crate computes its PMF and KL
//! divergence to `p` exactly, the widely quoted `log n - (n-1)/n` formula,
//! upper and lower bounds on the gap between the two, two KL estimators that
//! only need the base probability of the selected outcome, and a seeded
//! Monte Carlo sampler to cross-check the exact PMF.
//!
//! ```
//! use bon_core::{bon_pmf, exact_kl, analytical_formula, BasePolicy};
//!
//! let p = BasePolicy::new([("tails", 0.5, 0.0), ("heads", 0.5, 1.0)]).unwrap();
//! let pmf = bon_pmf(&p, 3).unwrap();
//! assert!((pmf.probs[0] - 0.125).abs() < 1e-15);
//! assert!(exact_kl(&p, 3).unwrap() < analytical_formula(3).unwrap());
//! ```

pub mod bon;
pub mod bounds;
pub mod dist_file;
pub mod error;
pub mod numeric;
pub mod policy;
pub mod sampling;

pub use bon::{bon_pmf, epsilon_infinity, exact_kl, expected_reward, DerivedPolicy};
pub use bounds::{
    alternate_estimator, analytical_formula, ensemble_kl, expected_estimator, g_n,
    gap_lower_bound, gap_lower_simple, gap_upper_bound, gap_upper_uniform_delta,
    integral_closed_form, kl_report, proposed_estimator, thm4_bound, EstimatorKind, KlReport,
};
pub use error::{Error, Result};
pub use policy::{
    binary_entropy, cdf_pair, renyi_entropy, validate_policy, validate_policy_with, BasePolicy,
    CdfPair, Context, ContextEnsemble, Jitter, Outcome,
};
pub use sampling::{epsilon_n_samples, sample_best_of_n, McReport};
