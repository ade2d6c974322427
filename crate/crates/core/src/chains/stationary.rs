use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Limit law of the conditioned chain with constant rates, solved by the
/// forward balance recursion `π_{i+1} q_{i+1} = π_i p_i` and compared with
/// the closed form `π_i = (i+λ) λ^(i-1) / (2 e^λ i!)`.
#[derive(Clone, Debug, Serialize)]
pub struct StationaryLaw<T> {
    pub lambda: f64,
    #[serde(skip)]
    pub numeric: Vec<T>,
    pub numeric_f64: Vec<f64>,
    pub closed_form: Vec<f64>,
    /// Total variation between the two over `0..=cutoff`.
    pub tv_gap: f64,
    /// Largest relative gap over states `i >= 1`.
    pub max_rel_gap_positive: f64,
    /// `π_0` from the closed form, `1/(2e^λ)`.
    pub pi0_closed_form: f64,
    /// `π_0` as the starting value `1/(1+λ)` of the two-term recurrence.
    pub pi0_recurrence: f64,
    /// Largest global-balance residual of the numeric solution below the cutoff.
    pub balance_residual: f64,
    /// Closed-form mass beyond the cutoff.
    pub tail: f64,
}

impl<T: Scalar> StationaryLaw<T> {
    pub fn cutoff(&self) -> usize {
        self.numeric.len() - 1
    }
}

pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Closed-form value at state `i`, evaluated in log space.
pub fn closed_form(lambda: f64, i: usize) -> f64 {
    let mut log_fact = 0.0;
    for j in 2..=i {
        log_fact += (j as f64).ln();
    }
    let log = (i as f64 + lambda).ln() + (i as f64 - 1.0) * lambda.ln() - std::f64::consts::LN_2 - lambda - log_fact;
    log.exp()
}

fn closed_form_tail(lambda: f64, cutoff: usize) -> f64 {
    let mut tail = 0.0;
    for i in cutoff + 1..cutoff + 2000 {
        let t = closed_form(lambda, i);
        tail += t;
        if t < tail * 1e-18 {
            break;
        }
    }
    tail
}

/// Smallest cutoff whose closed-form tail is below [`TAIL_TOLERANCE`].
pub fn default_cutoff(lambda: f64) -> usize {
    let mut c = 1;
    while closed_form_tail(lambda, c) >= TAIL_TOLERANCE {
        c += 1;
    }
    c
}

/// Up-probabilities `p_i` and down-probabilities `q_i` of the limit chain.
fn transition<T: Scalar>(rho: &T, tau: &T, i: usize) -> (T, T) {
    if i == 0 {
        return (T::one(), T::zero());
    }
    let ti = tau.clone() * T::from_int(i as i64);
    let denom = ti.clone() + rho.clone();
    (rho.clone() / denom.clone(), ti / denom)
}

pub fn stationary_birth_death<T: Scalar>(rho: T, tau: T, cutoff: usize) -> Result<StationaryLaw<T>> {
    if rho <= T::zero() || tau <= T::zero() {
        return Err(Error::InvalidParameter("rates must be positive".into()));
    }
    if cutoff == 0 {
        return Err(Error::InvalidParameter("cutoff must be positive".into()));
    }
    let lambda = (rho.clone() / tau.clone()).to_f64_lossy();
    let tail = closed_form_tail(lambda, cutoff);
    if !(tail < TAIL_TOLERANCE) {
        return Err(Error::NonConvergent { cutoff, tail });
    }
    let mut weights: Vec<T> = vec![T::one()];
    for i in 0..cutoff {
        let (p, _) = transition(&rho, &tau, i);
        let (_, q) = transition(&rho, &tau, i + 1);
        let next = weights[i].clone() * p / q;
        weights.push(next);
    }
    let total = weights.iter().fold(T::zero(), |acc, w| acc + w.clone());
    let numeric: Vec<T> = weights.into_iter().map(|w| w / total.clone()).collect();
    let numeric_f64: Vec<f64> = numeric.iter().map(Scalar::to_f64_lossy).collect();
    let closed: Vec<f64> = (0..=cutoff).map(|i| closed_form(lambda, i)).collect();
    let tv_gap = 0.5 * numeric_f64.iter().zip(&closed).map(|(a, b)| (a - b).abs()).sum::<f64>();
    let max_rel_gap_positive = numeric_f64
        .iter()
        .zip(&closed)
        .skip(1)
        .filter(|(_, &b)| b > 0.0)
        .map(|(a, b)| ((a - b) / b).abs())
        .fold(0.0, f64::max);
    let mut balance_residual: f64 = 0.0;
    let probs: Vec<(f64, f64)> = (0..=cutoff)
        .map(|i| {
            let (p, q) = transition(&rho, &tau, i);
            (p.to_f64_lossy(), q.to_f64_lossy())
        })
        .collect();
    for i in 0..cutoff {
        let inflow = if i == 0 { 0.0 } else { numeric_f64[i - 1] * probs[i - 1].0 } + numeric_f64[i + 1] * probs[i + 1].1;
        balance_residual = balance_residual.max((inflow - numeric_f64[i]).abs());
    }
    Ok(StationaryLaw {
        lambda,
        numeric,
        numeric_f64,
        closed_form: closed,
        tv_gap,
        max_rel_gap_positive,
        pi0_closed_form: 0.5 * (-lambda).exp(),
        pi0_recurrence: 1.0 / (1.0 + lambda),
        balance_residual,
        tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::One;

    #[test]
    fn unit_lambda() {
        let law = stationary_birth_death(1.0, 1.0, default_cutoff(1.0)).unwrap();
        assert!((law.numeric_f64[1] - (-1.0f64).exp()).abs() < 1e-10);
        assert!((law.numeric_f64.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(law.balance_residual < 1e-10);
    }

    #[test]
    fn exact_rationals() {
        let law = stationary_birth_death(Rational::one(), Rational::one(), 20).unwrap();
        // π_1 = (1+λ) π_0 exactly.
        assert_eq!(law.numeric[1], law.numeric[0].clone() * Rational::from_int(2));
        let sum = law.numeric.iter().fold(Rational::from_int(0), |a, b| a + b);
        assert!(sum.is_one());
    }

    #[test]
    fn small_lambda_concentrates() {
        let law = stationary_birth_death(1e-4, 1.0, 10).unwrap();
        assert!(law.numeric_f64[0] + law.numeric_f64[1] > 0.9999);
    }

    #[test]
    fn short_cutoff_rejected() {
        assert!(matches!(stationary_birth_death(2.0, 1.0, 3), Err(Error::NonConvergent { .. })));
    }
}
