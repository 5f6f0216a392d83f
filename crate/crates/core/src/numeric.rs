//! Stable building blocks for power and log expressions that appear with
//! `n` up to 1e7 and probabilities down to 1e-5 and below.

/// Below this magnitude of `n * log1p(-eps)` the series `n * eps` replaces
/// `1 - (1 - eps)^n`.
pub const SERIES_THRESHOLD: f64 = 1e-12;

/// Probabilities below this are treated as exact zeros in `q log q` terms.
pub const ZERO_MASS: f64 = 1e-300;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Compensated sum of an iterator.
pub fn stable_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}

/// `(1 - eps)^n` as `exp(n log1p(-eps))`.
pub fn pow_one_minus(eps: f64, n: u64) -> f64 {
    if eps >= 1.0 {
        return 0.0;
    }
    (n as f64 * (-eps).ln_1p()).exp()
}

/// `1 - (1 - eps)^n` without cancellation.
pub fn one_minus_pow_one_minus(eps: f64, n: u64) -> f64 {
    if eps >= 1.0 {
        return 1.0;
    }
    let x = n as f64 * (-eps).ln_1p();
    if x.abs() < SERIES_THRESHOLD {
        n as f64 * eps
    } else {
        -x.exp_m1()
    }
}

/// `b^n - a^n` given `ln b` and `ln a` (`ln a = -inf` for `a = 0`).
///
/// Computed as `exp(n ln b) * (-expm1(n (ln a - ln b)))`.
pub fn pow_diff_from_logs(ln_b: f64, ln_a: f64, n: u64) -> f64 {
    let nf = n as f64;
    let upper = (nf * ln_b).exp();
    if ln_a == f64::NEG_INFINITY {
        upper
    } else {
        upper * -(nf * (ln_a - ln_b)).exp_m1()
    }
}

/// `x log x` with `0 log 0 = 0`.
pub fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `ln((1 - e^{-y}) / y)` for `y > 0`, accurate for small `y`.
pub(crate) fn log_expm1_ratio(y: f64) -> f64 {
    if y == f64::INFINITY {
        return f64::NEG_INFINITY;
    }
    if y <= 1.0 {
        (-(-y).exp_m1() / y).ln()
    } else {
        (-(-y).exp_m1()).ln() - y.ln()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_lost_digits() {
        let mut xs = vec![1.0];
        xs.extend(std::iter::repeat(1e-16).take(10_000));
        let naive: f64 = xs.iter().sum();
        let stable = stable_sum(xs.iter().copied());
        assert_eq!(naive, 1.0);
        assert!((stable - (1.0 + 1e-12)).abs() < 1e-15);
    }

    #[test]
    fn pow_helpers_edge_values() {
        assert_eq!(pow_one_minus(1.0, 5), 0.0);
        assert_eq!(one_minus_pow_one_minus(1.0, 5), 1.0);
        assert!((pow_one_minus(0.5, 3) - 0.125).abs() < 1e-16);
        assert!((one_minus_pow_one_minus(0.5, 3) - 0.875).abs() < 1e-16);
    }

    #[test]
    fn series_branch_for_tiny_products() {
        let eps = 1e-15;
        let got = one_minus_pow_one_minus(eps, 10);
        assert!((got - 1e-14).abs() < 1e-28);
    }

    #[test]
    fn large_n_small_eps_regime() {
        // (1 - 1e-5)^(1e6) = exp(1e6 * log1p(-1e-5))
        let want = (1e6f64 * (-1e-5f64).ln_1p()).exp();
        assert_eq!(pow_one_minus(1e-5, 1_000_000), want);
        assert!((want - (-10.00005f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn pow_diff_matches_naive_in_safe_range() {
        let (a, b) = (0.3f64, 0.7f64);
        let got = pow_diff_from_logs(b.ln(), a.ln(), 4);
        assert!((got - (b.powi(4) - a.powi(4))).abs() < 1e-15);
        assert_eq!(pow_diff_from_logs(0.0, f64::NEG_INFINITY, 9), 1.0);
    }

    #[test]
    fn log_expm1_ratio_small_argument() {
        // ln((1 - e^{-y})/y) = -y/2 + y^2/24 + O(y^4)
        let y = 1e-6;
        assert!((log_expm1_ratio(y) - (-y / 2.0 + y * y / 24.0)).abs() < 3e-16);
        assert!((log_expm1_ratio(2.0) - ((1.0 - (-2f64).exp()) / 2.0).ln()).abs() < 1e-15);
    }
}
