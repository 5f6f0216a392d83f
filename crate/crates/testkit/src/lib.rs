//! Reference oracles shared by the test suites.
//!
//! Nothing in here calls into the closed-form machinery of `bon-core`: the
//! enumeration oracle walks every ordered draw tuple, the quadrature oracle
//! integrates numerically, and the suite generator only produces raw
//! `(outcome_id, prob, reward)` rows.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Raw outcome row: `(outcome_id, prob, reward)`.
pub type RawRow = (String, f64, f64);

/// Seed used by every randomized acceptance suite.
pub const SUITE_SEED: u64 = 0x5eed_b0f1_2024_0001;

/// The n-grid used by the seeded random-policy suites.
pub const SUITE_N_GRID: [u64; 8] = [1, 2, 3, 5, 10, 100, 1_000, 10_000];

/// Best-of-n PMF by walking all `L^n` ordered draw tuples.
///
/// Each tuple carries weight `prod probs[k_j]` and is won by the draw with
/// the largest reward. Rewards must be distinct.
pub fn enumerate_bon_pmf(probs: &[f64], rewards: &[f64], n: u32) -> Vec<f64> {
    let l = probs.len();
    assert!(l > 0 && rewards.len() == l);
    let mut out = vec![0.0; l];
    let mut idx = vec![0usize; n as usize];
    loop {
        let mut weight = 1.0;
        let mut winner = idx[0];
        for &k in &idx {
            weight *= probs[k];
            if rewards[k] > rewards[winner] {
                winner = k;
            }
        }
        out[winner] += weight;

        // odometer increment
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < l {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Direct `sum q log(q / p)` with the `0 log 0 = 0` convention.
pub fn kl_direct(q: &[f64], p: &[f64]) -> f64 {
    q.iter()
        .zip(p)
        .filter(|(qi, _)| **qi > 0.0)
        .map(|(qi, pi)| qi * (qi / pi).ln())
        .sum()
}

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature with absolute tolerance `tol`.
///
/// The interval is pre-split into `pieces` equal panels, each refined
/// independently with a share of the tolerance.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64, pieces: usize) -> f64 {
    let pieces = pieces.max(1);
    let h = (b - a) / pieces as f64;
    let share = tol / pieces as f64;
    (0..pieces)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == pieces { b } else { lo + h };
            let (fa, fb) = (f(lo), f(hi));
            let fm = f(0.5 * (lo + hi));
            let whole = simpson(fa, fm, fb, lo, hi);
            adapt(&f, lo, hi, fa, fm, fb, whole, share, 48)
        })
        .sum()
}

/// Integrand `n v^(n-1) log(n v^(n-1))`, continuously extended by 0 at v = 0.
pub fn order_stat_integrand(n: u32) -> impl Fn(f64) -> f64 {
    let nf = n as f64;
    move |v: f64| {
        if n == 1 {
            return 0.0;
        }
        if v <= 0.0 {
            return 0.0;
        }
        let dens = nf * v.powi(n as i32 - 1);
        if dens == 0.0 {
            0.0
        } else {
            dens * (nf.ln() + (nf - 1.0) * v.ln())
        }
    }
}

/// Quadrature oracle for `int_a^b n v^(n-1) log(n v^(n-1)) dv`.
pub fn integral_by_quadrature(a: f64, b: f64, n: u32) -> f64 {
    // the steep part for large n sits near b; more panels keep the recursion shallow
    let pieces = 8 + n as usize;
    adaptive_simpson(order_stat_integrand(n), a, b, 1e-10, pieces)
}

/// A policy with probabilities uniform on the simplex and rewards a random
/// permutation of `1..=l`.
pub fn random_policy<R: Rng>(rng: &mut R, l: usize) -> Vec<RawRow> {
    let mut weights: Vec<f64> = (0..l)
        .map(|_| {
            let u: f64 = rng.random();
            -(1.0 - u).ln()
        })
        .collect();
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    let mut rewards: Vec<f64> = (1..=l).map(|r| r as f64).collect();
    rewards.shuffle(rng);
    weights
        .into_iter()
        .zip(rewards)
        .enumerate()
        .map(|(i, (p, r))| (format!("y{i}"), p, r))
        .collect()
}

/// `count` seeded random policies with support size drawn from `min_l..=max_l`.
pub fn policy_suite(seed: u64, count: usize, min_l: usize, max_l: usize) -> Vec<Vec<RawRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let l = rng.random_range(min_l..=max_l);
            random_policy(&mut rng, l)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sums_to_one() {
        let pmf = enumerate_bon_pmf(&[0.2, 0.3, 0.5], &[3.0, 1.0, 2.0], 3);
        assert!((pmf.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn uniform_four_two_draws() {
        let pmf = enumerate_bon_pmf(&[0.25; 4], &[0.0, 1.0, 2.0, 3.0], 2);
        for (got, want) in pmf.iter().zip([1.0, 3.0, 5.0, 7.0]) {
            assert!((got - want / 16.0).abs() < 1e-15);
        }
    }

    #[test]
    fn quadrature_polynomial() {
        let v = adaptive_simpson(|x| x * x * x, 0.0, 2.0, 1e-12, 1);
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn quadrature_full_interval_matches_known_value() {
        // int_0^1 2v log(2v) dv = log 2 - 1/2
        let v = integral_by_quadrature(0.0, 1.0, 2);
        assert!((v - (2f64.ln() - 0.5)).abs() < 1e-9);
    }

    #[test]
    fn suite_is_reproducible() {
        assert_eq!(policy_suite(7, 3, 2, 5), policy_suite(7, 3, 2, 5));
    }
}
