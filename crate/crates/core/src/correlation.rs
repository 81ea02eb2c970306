//! The q-ary symmetric correlation model `Y = X + U` and the binomial
//! arithmetic behind radius selection.
//!
//! A symbol of U is zero with probability `1 - p` and each nonzero value
//! with probability `p/(q-1)`, so the number of positions where x and y
//! differ is Binomial(n, p).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf::{Field, Symbol};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrelationError {
    #[error("error probability {p} outside [0, {max})")]
    BadProbability { p: f64, max: f64 },
}

#[derive(Debug, Clone)]
pub struct CorrelationModel {
    field: Field,
    p: f64,
    seed: u64,
}

impl CorrelationModel {
    pub fn new(field: Field, p: f64, seed: u64) -> Result<Self, CorrelationError> {
        let max = 1.0 - 1.0 / field.size() as f64;
        if !(0.0..max).contains(&p) {
            return Err(CorrelationError::BadProbability { p, max });
        }
        Ok(CorrelationModel { field, p, seed })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// `H_q(U)` for this model.
    pub fn entropy(&self) -> f64 {
        conditional_entropy(self.p, self.field.size())
    }

    /// Side information for `x`, drawn from a generator seeded with the
    /// model seed. Returns `y` and the number of differing positions.
    pub fn sample_side_info(&self, x: &[Symbol]) -> (Vec<Symbol>, usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        self.sample_side_info_with(x, &mut rng)
    }

    /// As [`Self::sample_side_info`], drawing from a caller-owned generator.
    pub fn sample_side_info_with<R: Rng>(&self, x: &[Symbol], rng: &mut R) -> (Vec<Symbol>, usize) {
        let q = self.field.size() as Symbol;
        let mut e = 0;
        let y = x
            .iter()
            .map(|&xi| {
                if rng.gen::<f64>() < self.p {
                    e += 1;
                    xi ^ rng.gen_range(1..q)
                } else {
                    xi
                }
            })
            .collect();
        (y, e)
    }
}

/// `x` with exactly `weight` positions replaced by a different symbol,
/// positions uniform without replacement and values uniform on the nonzero
/// elements.
pub fn add_exact_errors<R: Rng>(x: &[Symbol], weight: usize, q: usize, rng: &mut R) -> Vec<Symbol> {
    assert!(weight <= x.len());
    let mut y = x.to_vec();
    for j in rand::seq::index::sample(rng, x.len(), weight) {
        y[j] ^= rng.gen_range(1..q as Symbol);
    }
    y
}

/// `H_q(U) = -p log_q p - (1-p) log_q (1-p) + p log_q (q-1)`.
pub fn conditional_entropy(p: f64, q: usize) -> f64 {
    let xlogx = |v: f64| if v <= 0.0 { 0.0 } else { v * v.ln() };
    let lnq = (q as f64).ln();
    let h = -(xlogx(p) + xlogx(1.0 - p)) / lnq + p * ((q - 1) as f64).ln() / lnq;
    h.clamp(0.0, 1.0)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    c: f64,
}

impl CompensatedSum {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// Binomial(n, p) with probabilities evaluated in log space.
#[derive(Debug, Clone)]
pub struct Binomial {
    n: usize,
    p: f64,
    pmf: Vec<f64>,
    /// `upper[t] = Pr[e > t]`, `upper[n] = 0`.
    upper: Vec<f64>,
    /// `lower[l] = Pr[e < l]`, `lower[0] = 0`.
    lower: Vec<f64>,
}

impl Binomial {
    pub fn new(n: usize, p: f64) -> Self {
        assert!((0.0..=1.0).contains(&p), "probability out of range");
        let pmf = binomial_pmf(n, p);

        let mut upper = vec![0.0; n + 1];
        let mut acc = CompensatedSum::default();
        for t in (0..n).rev() {
            acc.add(pmf[t + 1]);
            upper[t] = acc.value();
        }
        let mut lower = vec![0.0; n + 2];
        let mut acc = CompensatedSum::default();
        for l in 1..=n + 1 {
            acc.add(pmf[l - 1]);
            lower[l] = acc.value();
        }
        Binomial {
            n,
            p,
            pmf,
            upper,
            lower,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn pmf(&self, i: usize) -> f64 {
        self.pmf.get(i).copied().unwrap_or(0.0)
    }

    /// `Pr[e > t]`.
    pub fn upper_tail(&self, t: usize) -> f64 {
        self.upper.get(t).copied().unwrap_or(0.0)
    }

    /// `Pr[e < l]`.
    pub fn lower_tail(&self, l: usize) -> f64 {
        self.lower[l.min(self.n + 1)]
    }

    /// `Pr[l <= e <= h]`.
    pub fn window_mass(&self, l: usize, h: usize) -> f64 {
        let mut acc = CompensatedSum::default();
        for i in l..=h.min(self.n) {
            acc.add(self.pmf[i]);
        }
        acc.value()
    }

    /// Smallest `T` with `Pr[e > T] < eps`.
    pub fn radius(&self, eps: f64) -> usize {
        (0..=self.n)
            .find(|&t| self.upper[t] < eps)
            .unwrap_or(self.n)
    }
}

/// All probabilities `Pr[e = i]`, `0 <= i <= n`.
pub fn binomial_pmf(n: usize, p: f64) -> Vec<f64> {
    if p == 0.0 || p == 1.0 {
        let mut v = vec![0.0; n + 1];
        v[if p == 0.0 { 0 } else { n }] = 1.0;
        return v;
    }
    let mut ln_fact = vec![0.0; n + 1];
    let mut acc = CompensatedSum::default();
    for (i, f) in ln_fact.iter_mut().enumerate().skip(1) {
        acc.add((i as f64).ln());
        *f = acc.value();
    }
    let (lp, lq) = (p.ln(), (-p).ln_1p());
    (0..=n)
        .map(|i| {
            let ln = ln_fact[n] - ln_fact[i] - ln_fact[n - i] + i as f64 * lp + (n - i) as f64 * lq;
            ln.exp()
        })
        .collect()
}

/// Smallest `T` with `Pr[Binomial(n, p) > T] < eps`.
pub fn binomial_tail_t(n: usize, p: f64, eps: f64) -> usize {
    Binomial::new(n, p).radius(eps)
}

/// How the error-count window `[l, h]` of the feedback protocol is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowPolicy {
    /// Each tail outside the window has mass below `eps/2`.
    #[default]
    EqualSplit,
    /// A caller-supplied window.
    Fixed { l: usize, h: usize },
}

/// A window `[l, h]` with `Pr[l <= e <= h] > 1 - eps` under the default
/// policy; `Fixed` windows are returned unchanged (clamped to `n`).
pub fn binomial_window(n: usize, p: f64, eps: f64, policy: WindowPolicy) -> (usize, usize) {
    match policy {
        WindowPolicy::Fixed { l, h } => (l.min(n), h.min(n)),
        WindowPolicy::EqualSplit => {
            let b = Binomial::new(n, p);
            let half = eps / 2.0;
            let l = (0..=n).take_while(|&l| b.lower_tail(l) < half).last().unwrap_or(0);
            (l, b.radius(half))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{One, ToPrimitive, Zero};

    fn exact_upper_tail(n: usize, pnum: i64, pden: i64, t: usize) -> BigRational {
        let p = BigRational::new(pnum.into(), pden.into());
        let q = BigRational::one() - &p;
        let mut binom = BigInt::one();
        let mut total = BigRational::zero();
        for i in 0..=n {
            if i > 0 {
                binom = binom * BigInt::from(n - i + 1) / BigInt::from(i);
            }
            if i > t {
                let term = BigRational::from_integer(binom.clone())
                    * num_traits::pow(p.clone(), i)
                    * num_traits::pow(q.clone(), n - i);
                total += term;
            }
        }
        total
    }

    #[test]
    fn tails_match_exact_rationals() {
        for &(n, num, den) in &[(40usize, 3i64, 10i64), (63, 1, 5), (100, 41, 100)] {
            let b = Binomial::new(n, num as f64 / den as f64);
            for t in (0..n).step_by(3) {
                let exact = exact_upper_tail(n, num, den, t).to_f64().unwrap();
                let got = b.upper_tail(t);
                assert!(
                    (got - exact).abs() <= 1e-10 * exact + 1e-300,
                    "n={n} t={t}: {got} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn radius_is_minimal() {
        for &(n, p, eps) in &[(255usize, 0.3, 1e-4), (1023, 0.2, 1e-4), (1000, 0.2, 1e-5)] {
            let b = Binomial::new(n, p);
            let t = b.radius(eps);
            assert!(b.upper_tail(t) < eps);
            assert!(b.upper_tail(t - 1) >= eps);
        }
    }

    #[test]
    fn radius_monotone_on_grid() {
        for &n in &[63usize, 255] {
            for pi in 1..10 {
                let p = pi as f64 * 0.05;
                let mut prev = usize::MAX;
                for &eps in &[1e-6, 1e-5, 1e-4, 1e-3, 1e-2] {
                    let t = binomial_tail_t(n, p, eps);
                    assert!(t <= prev);
                    prev = t;
                }
                assert!(binomial_tail_t(n, p, 1e-3) <= binomial_tail_t(n, p + 0.01, 1e-3));
                assert!(binomial_tail_t(n, p, 1e-3) <= binomial_tail_t(n + 10, p, 1e-3));
            }
        }
    }

    #[test]
    fn degenerate_probabilities() {
        assert_eq!(binomial_tail_t(100, 0.0, 1e-3), 0);
        assert_eq!(binomial_tail_t(100, 1.0, 1e-3), 100);
        assert_eq!(binomial_window(100, 1e-9, 1e-3, WindowPolicy::EqualSplit).0, 0);
    }

    #[test]
    fn window_covers_and_contains_mode() {
        for &(n, p) in &[(255usize, 0.34), (255, 0.05), (1023, 0.2), (15, 0.3)] {
            let eps = 1e-3;
            let (l, h) = binomial_window(n, p, eps, WindowPolicy::EqualSplit);
            let b = Binomial::new(n, p);
            assert!(b.window_mass(l, h) > 1.0 - eps);
            let mode = (n as f64 * p).floor() as usize;
            assert!(l <= mode && mode <= h);
        }
        let b = Binomial::new(255, 0.34);
        assert!(b.window_mass(3, 171) > 1.0 - 1e-3);
    }

    #[test]
    fn entropy_limits_and_concavity() {
        assert_eq!(conditional_entropy(0.0, 256), 0.0);
        assert!((conditional_entropy(0.5, 2) - 1.0).abs() < 1e-15);
        assert!((conditional_entropy(1.0 - 1.0 / 256.0, 256) - 1.0).abs() < 1e-12);
        for &q in &[2usize, 16, 256] {
            let pmax = 1.0 - 1.0 / q as f64;
            let grid: Vec<f64> = (0..=40).map(|i| pmax * i as f64 / 40.0).collect();
            for w in grid.windows(3) {
                let mid = conditional_entropy(w[1], q);
                let chord = 0.5 * (conditional_entropy(w[0], q) + conditional_entropy(w[2], q));
                assert!(mid >= chord - 1e-12);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic_and_calibrated() {
        let f = Field::new(8).unwrap();
        let model = CorrelationModel::new(f, 0.3, 42).unwrap();
        let n = 100_000;
        let x: Vec<Symbol> = (0..n).map(|i| (i % 256) as Symbol).collect();
        let (y, e) = model.sample_side_info(&x);
        assert_eq!(model.sample_side_info(&x), (y.clone(), e));
        assert_eq!(e, x.iter().zip(&y).filter(|(a, b)| a != b).count());

        let sigma = (n as f64 * 0.3 * 0.7).sqrt();
        assert!((e as f64 - 0.3 * n as f64).abs() < 3.0 * sigma);

        // chi-square over the 255 nonzero noise values
        let mut counts = [0usize; 256];
        for (a, b) in x.iter().zip(&y) {
            if a != b {
                counts[(a ^ b) as usize] += 1;
            }
        }
        let expect = e as f64 / 255.0;
        let chi2: f64 = counts[1..]
            .iter()
            .map(|&c| (c as f64 - expect).powi(2) / expect)
            .sum();
        // 254 degrees of freedom; 0.999 quantile is about 330
        assert!(chi2 < 330.0, "chi2 = {chi2}");
    }

    #[test]
    fn zero_noise_and_bad_probability() {
        let f = Field::new(4).unwrap();
        let model = CorrelationModel::new(f.clone(), 0.0, 7).unwrap();
        let x: Vec<Symbol> = (0..15).collect();
        assert_eq!(model.sample_side_info(&x), (x.clone(), 0));
        assert!(CorrelationModel::new(f, 15.0 / 16.0, 0).is_err());
    }

    #[test]
    fn exact_errors_have_exact_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = vec![5 as Symbol; 255];
        for w in [0, 1, 50, 255] {
            let y = add_exact_errors(&x, w, 256, &mut rng);
            assert_eq!(x.iter().zip(&y).filter(|(a, b)| a != b).count(), w);
        }
    }
}
