//! Kolmogorov–Smirnov statistics, correlations and running moments.

/// Mean and variance accumulator that merges in a fixed order.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    pub count: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    pub fn merge(&mut self, other: &Moments) {
        self.count += other.count;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.count as f64
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        let n = self.count as f64;
        let var = (self.sum_sq / n - self.mean().powi(2)).max(0.0) * n / (n - 1.0);
        (var / n).sqrt()
    }
}

/// Two-sided statistic `sup |F_n - F|`; sorts `samples` in place.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
    }
    d
}

/// Asymptotic p-value `Q(√n D) = 2 Σ (-1)^{k-1} exp(-2k²λ²)`.
pub fn kolmogorov_pvalue(d: f64, n: usize) -> f64 {
    let lambda = (n as f64).sqrt() * d;
    if lambda < 0.2 {
        return 1.0;
    }
    let mut acc = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        acc += if k % 2 == 1 { term } else { -term };
        if term < 1e-18 {
            break;
        }
    }
    (2.0 * acc).clamp(0.0, 1.0)
}

/// The 5% critical value `1.36/√n`.
pub fn ks_threshold(n: usize) -> f64 {
    1.36 / (n as f64).sqrt()
}

pub fn pearson_correlation(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_uniform_grid_has_small_statistic() {
        let mut v: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let d = ks_statistic(&mut v, |x| x);
        assert!((d - 0.0005).abs() < 1e-12);
        assert!(kolmogorov_pvalue(d, 1000) > 0.99);
    }

    #[test]
    fn constant_samples_fail() {
        let mut v = vec![0.5; 500];
        let d = ks_statistic(&mut v, |x| x);
        assert!(d >= 0.5);
        assert!(kolmogorov_pvalue(d, 500) < 1e-10);
    }

    #[test]
    fn pvalue_at_critical_value_is_five_percent() {
        let n = 100_000;
        let p = kolmogorov_pvalue(ks_threshold(n), n);
        assert!((p - 0.05).abs() < 0.002, "{p}");
    }

    #[test]
    fn moments_and_correlation() {
        let mut m = Moments::default();
        for x in [1.0, 2.0, 3.0, 4.0] {
            m.push(x);
        }
        assert_eq!(m.mean(), 2.5);
        assert!((m.std_error() - (5.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-15);
        let x = [1.0, 2.0, 3.0];
        assert!((pearson_correlation(&x, &[2.0, 4.0, 6.0]) - 1.0).abs() < 1e-15);
    }
}
