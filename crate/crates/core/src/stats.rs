//! Small descriptive statistics used by the experiment harness.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng as _;

use crate::rng::Rng;

/// Mean and unbiased sample variance; `(0, 0)` for empty input and variance
/// `0` for a single observation.
pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss: f64 = xs.iter().map(|x| (x - mean).powi(2)).sum();
    (mean, ss / (n - 1) as f64)
}

/// Mean and its standard error.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let (m, v) = mean_var(xs);
    (m, if xs.is_empty() { 0.0 } else { (v / xs.len() as f64).sqrt() })
}

/// Binomial proportion and its standard error.
pub fn proportion(successes: usize, trials: usize) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 0.0);
    }
    let p = successes as f64 / trials as f64;
    (p, (p * (1.0 - p) / trials as f64).sqrt())
}

/// Standard error of the unbiased sample variance under a normal-theory
/// approximation using the fourth central moment.
pub fn variance_se(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    if xs.len() < 4 {
        return f64::INFINITY;
    }
    let (m, v) = mean_var(xs);
    let m4 = xs.iter().map(|x| (x - m).powi(4)).sum::<f64>() / n;
    ((m4 - v * v * (n - 3.0) / (n - 1.0)) / n).max(0.0).sqrt()
}

/// Total variation distance between two empirical distributions given as counts.
pub fn tv_counts<K: Ord + Clone>(a: &BTreeMap<K, usize>, b: &BTreeMap<K, usize>) -> f64 {
    let na: usize = a.values().sum();
    let nb: usize = b.values().sum();
    if na == 0 || nb == 0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    let keys: BTreeSet<&K> = a.keys().chain(b.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| {
            let pa = a.get(k).copied().unwrap_or(0) as f64 / na as f64;
            let pb = b.get(k).copied().unwrap_or(0) as f64 / nb as f64;
            (pa - pb).abs()
        })
        .sum::<f64>()
}

/// Total variation distance between two probability vectors over the same keys.
pub fn tv_probs<K: Ord>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let keys: BTreeSet<&K> = a.keys().chain(b.keys()).collect();
    0.5 * keys
        .into_iter()
        .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}

/// Merge every key whose pooled mass is below `min_mass` into `other`.
pub fn lump_rare<K: Ord + Clone>(
    a: &BTreeMap<K, usize>,
    b: &BTreeMap<K, usize>,
    min_mass: f64,
    other: K,
) -> (BTreeMap<K, usize>, BTreeMap<K, usize>) {
    let na = a.values().sum::<usize>().max(1) as f64;
    let nb = b.values().sum::<usize>().max(1) as f64;
    let keep: BTreeSet<K> = a
        .keys()
        .chain(b.keys())
        .filter(|k| {
            let pa = a.get(*k).copied().unwrap_or(0) as f64 / na;
            let pb = b.get(*k).copied().unwrap_or(0) as f64 / nb;
            pa.max(pb) >= min_mass
        })
        .cloned()
        .collect();
    let lump = |m: &BTreeMap<K, usize>| {
        let mut out = BTreeMap::new();
        for (k, &c) in m {
            let key = if keep.contains(k) { k.clone() } else { other.clone() };
            *out.entry(key).or_insert(0) += c;
        }
        out
    };
    (lump(a), lump(b))
}

/// Bootstrap standard error of the two-sample TV distance, resampling each
/// side multinomially from its own empirical law.
pub fn tv_bootstrap_se<K: Ord + Clone>(
    a: &BTreeMap<K, usize>,
    b: &BTreeMap<K, usize>,
    rounds: usize,
    rng: &mut Rng,
) -> f64 {
    let resample = |m: &BTreeMap<K, usize>, rng: &mut Rng| -> BTreeMap<K, usize> {
        let keys: Vec<&K> = m.keys().collect();
        let mut cum = Vec::with_capacity(keys.len());
        let mut total = 0usize;
        for k in &keys {
            total += m[*k];
            cum.push(total);
        }
        let mut out: BTreeMap<K, usize> = BTreeMap::new();
        for _ in 0..total {
            let u = rng.random_range(0..total);
            let i = cum.partition_point(|&c| c <= u);
            *out.entry(keys[i].clone()).or_insert(0) += 1;
        }
        out
    };
    let reps: Vec<f64> = (0..rounds).map(|_| tv_counts(&resample(a, rng), &resample(b, rng))).collect();
    mean_var(&reps).1.sqrt()
}

/// Ordinary least squares fit `y = a + b x`; returns `(a, b, R^2)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    assert_eq!(x.len(), y.len());
    let (mx, _) = mean_var(x);
    let (my, _) = mean_var(y);
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    if sxx == 0.0 {
        return (my, 0.0, 0.0);
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { (sxy * sxy) / (sxx * syy) };
    (my - slope * mx, slope, r2)
}

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: usize) -> f64 {
    let mut sum = 0.0;
    for i in (1..=n).rev() {
        sum += 1.0 / i as f64;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;

    #[test]
    fn moments() {
        let (m, v) = mean_var(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((v - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(mean_se(&[]), (0.0, 0.0));
        assert_eq!(proportion(3, 4).0, 0.75);
    }

    #[test]
    fn tv() {
        let a: BTreeMap<u8, usize> = [(0, 5), (1, 5)].into();
        let b: BTreeMap<u8, usize> = [(1, 10)].into();
        assert_eq!(tv_counts(&a, &b), 0.5);
        assert_eq!(tv_counts(&a, &a), 0.0);
        let p: BTreeMap<u8, f64> = [(0, 0.25), (1, 0.75)].into();
        let q: BTreeMap<u8, f64> = [(2, 1.0)].into();
        assert_eq!(tv_probs(&p, &q), 1.0);
    }

    #[test]
    fn lumping() {
        let a: BTreeMap<u32, usize> = [(0, 9990), (1, 5), (2, 5)].into();
        let b: BTreeMap<u32, usize> = [(0, 10000)].into();
        let (la, lb) = lump_rare(&a, &b, 1e-3, 99);
        assert_eq!(la, [(0, 9990), (99, 10)].into());
        assert_eq!(lb, [(0, 10000)].into());
    }

    #[test]
    fn bootstrap_positive() {
        let a: BTreeMap<u8, usize> = [(0, 50), (1, 50)].into();
        let b: BTreeMap<u8, usize> = [(0, 40), (1, 60)].into();
        let se = tv_bootstrap_se(&a, &b, 200, &mut rng_from_seed(1));
        assert!(se > 0.01 && se < 0.2);
    }

    #[test]
    fn regression() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y = [3.0, 5.0, 7.0, 9.0];
        let (a, b, r2) = linear_fit(&x, &y);
        assert!((a - 1.0).abs() < 1e-12 && (b - 2.0).abs() < 1e-12 && (r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(0), 0.0);
        assert!((harmonic(4) - 25.0 / 12.0).abs() < 1e-15);
    }
}
