//! Two-state chain whose one-step matrices tend to the identity while the
//! distribution keeps oscillating.
//!
//! For `2^(2k-1) < n <= 2^(2k)` the step moves mass from state 1 to state 2
//! with probability `1/n`; for `2^(2k) < n <= 2^(2k+1)` it moves mass back.
//! Each block halves the mass it drains, so the state-1 mass alternates
//! between roughly 1/3 and 2/3 at block ends.

use rand::Rng as _;
use serde::Serialize;

use crate::rng::rng_from_seed;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    /// Drains state 1 into state 2.
    Forward,
    /// Drains state 2 into state 1.
    Backward,
}

pub fn block_kind(n: u64) -> BlockKind {
    assert!(n >= 2);
    // Position of the highest set bit of n - 1 gives the dyadic block.
    let b = 63 - (n - 1).leading_zeros();
    if b % 2 == 1 {
        BlockKind::Forward
    } else {
        BlockKind::Backward
    }
}

pub fn step_matrix<T: Scalar>(n: u64) -> [[T; 2]; 2] {
    let inv = T::ratio(1, n as i64);
    let stay = T::one() - inv.clone();
    match block_kind(n) {
        BlockKind::Forward => [[stay, inv], [T::zero(), T::one()]],
        BlockKind::Backward => [[T::one(), T::zero()], [inv, stay]],
    }
}

/// `sup_i Σ_j a_ij`, the row-sum norm without absolute values.
pub fn row_sum_norm<T: Scalar>(a: &[[T; 2]; 2]) -> T {
    let r0 = a[0][0].clone() + a[0][1].clone();
    let r1 = a[1][0].clone() + a[1][1].clone();
    if r0 >= r1 {
        r0
    } else {
        r1
    }
}

/// `sup_i Σ_j |a_ij|`.
pub fn abs_row_sum_norm<T: Scalar>(a: &[[T; 2]; 2]) -> T {
    let r = |i: usize| a[i][0].abs() + a[i][1].abs();
    let (r0, r1) = (r(0), r(1));
    if r0 >= r1 {
        r0
    } else {
        r1
    }
}

fn minus_identity<T: Scalar>(p: &[[T; 2]; 2]) -> [[T; 2]; 2] {
    [
        [p[0][0].clone() - T::one(), p[0][1].clone()],
        [p[1][0].clone(), p[1][1].clone() - T::one()],
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockEnd<T> {
    pub n: u64,
    pub kind: BlockKind,
    #[serde(skip)]
    pub dist: [T; 2],
    pub state1: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OscillatorRun<T> {
    pub steps: u64,
    pub blocks: Vec<BlockEnd<T>>,
    /// Every `P_n` had unit row sums.
    pub stochastic: bool,
    /// `‖P_n − I‖ <= 1/n` held for every `n` with the signed row-sum norm.
    pub norm_bound_signed: bool,
    /// Same with absolute values; the actual value is `2/n`.
    pub norm_bound_abs: bool,
    /// A sampled trajectory's state at each block end, when seeded.
    pub sample_path: Vec<u8>,
}

impl<T: Scalar> OscillatorRun<T> {
    /// Differences in state-1 mass between consecutive block ends.
    pub fn gaps(&self) -> Vec<(u64, T)> {
        self.blocks.windows(2).map(|w| (w[1].n, (w[1].dist[0].clone() - w[0].dist[0].clone()).abs())).collect()
    }
}

/// Exact evolution of the row distribution from `(1, 0)` over `P_2 .. P_steps`.
pub fn oscillator<T: Scalar>(steps: u64) -> OscillatorRun<T> {
    let mut x = [T::one(), T::zero()];
    let mut blocks = Vec::new();
    let (mut stochastic, mut signed, mut abs) = (true, true, true);
    for n in 2..=steps {
        let p = step_matrix::<T>(n);
        for row in &p {
            stochastic &= row[0].clone() + row[1].clone() == T::one();
        }
        let d = minus_identity(&p);
        let bound = T::ratio(1, n as i64);
        signed &= row_sum_norm(&d) <= bound;
        abs &= abs_row_sum_norm(&d) <= bound;
        x = [
            x[0].clone() * p[0][0].clone() + x[1].clone() * p[1][0].clone(),
            x[0].clone() * p[0][1].clone() + x[1].clone() * p[1][1].clone(),
        ];
        if n.is_power_of_two() {
            let state1 = x[0].to_f64_lossy();
            blocks.push(BlockEnd { n, kind: block_kind(n), dist: x.clone(), state1 });
        }
    }
    OscillatorRun { steps, blocks, stochastic, norm_bound_signed: signed, norm_bound_abs: abs, sample_path: Vec::new() }
}

/// Exact `f64` run plus one sampled trajectory recorded at block ends.
pub fn oscillator_demo(steps: u64, seed: u64) -> OscillatorRun<f64> {
    let mut run = oscillator::<f64>(steps);
    let mut rng = rng_from_seed(seed);
    let mut state = 0u8;
    for n in 2..=steps {
        let leave = 1.0 / n as f64;
        state = match (block_kind(n), state) {
            (BlockKind::Forward, 0) if rng.random::<f64>() < leave => 1,
            (BlockKind::Backward, 1) if rng.random::<f64>() < leave => 0,
            (_, s) => s,
        };
        if n.is_power_of_two() {
            run.sample_path.push(state);
        }
    }
    run
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn block_layout() {
        assert_eq!(block_kind(2), BlockKind::Backward);
        assert_eq!(block_kind(3), BlockKind::Forward);
        assert_eq!(block_kind(4), BlockKind::Forward);
        assert_eq!(block_kind(5), BlockKind::Backward);
        assert_eq!(block_kind(8), BlockKind::Backward);
        assert_eq!(block_kind(9), BlockKind::Forward);
        assert_eq!(block_kind(16), BlockKind::Forward);
        assert_eq!(block_kind(17), BlockKind::Backward);
    }

    #[test]
    fn exact_masses() {
        let run = oscillator::<Rational>(16);
        // After n=4: mass 1 halved once. After n=8: 1/2 + 1/4. After n=16: 3/8.
        let masses: Vec<Rational> = run.blocks.iter().map(|b| b.dist[0].clone()).collect();
        assert_eq!(masses[1], Rational::ratio(1, 2));
        assert_eq!(masses[2], Rational::ratio(3, 4));
        assert_eq!(masses[3], Rational::ratio(3, 8));
        assert!(run.stochastic && run.norm_bound_signed && !run.norm_bound_abs);
    }

    #[test]
    fn norms() {
        let d = minus_identity(&step_matrix::<Rational>(6));
        assert_eq!(row_sum_norm(&d), Rational::from_int(0));
        assert_eq!(abs_row_sum_norm(&d), Rational::ratio(2, 6));
    }

    #[test]
    fn demo_records_blocks() {
        let run = oscillator_demo(1 << 10, 3);
        assert_eq!(run.blocks.len(), 10);
        assert_eq!(run.sample_path.len(), 10);
    }
}
