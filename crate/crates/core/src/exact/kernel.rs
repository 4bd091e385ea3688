//! One-step transition kernel of the degree chain.
//!
//! Over one coarse time step `T -> T+1`, `m` edges are added one at a
//! time; at sub-step `r` the tracked vertex (current degree `κ`) gains an
//! endpoint with probability `κ / (2Tm + 2(r-1) + 1)`. The kernel row is
//! the distribution of the total increment `j = 0..m` after the `m`
//! sub-steps. The closed products for `j = 0`, `j = 1` and `j = m` are
//! kept as independent checks on the DP.

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

/// Kernel row: `probs[j]` is the probability that a degree-`k` vertex
/// gains exactly `j` endpoints during step `time -> time + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionRow<S> {
    pub k: u64,
    pub time: u64,
    pub m: u32,
    pub probs: Vec<S>,
}

fn sub_step_den(time: u64, m: u32, r: u32) -> u64 {
    2 * time * m as u64 + 2 * (r as u64 - 1) + 1
}

/// Sub-step DP, writing the `m + 1` increment probabilities into `buf`.
/// `scratch` is a reusable buffer of the same length. Hot path for the
/// network-degree sweep, hence the out-parameters.
pub fn transition_probs_into<S: Scalar>(
    k: u64,
    time: u64,
    m: u32,
    buf: &mut Vec<S>,
    scratch: &mut Vec<S>,
) {
    let len = m as usize + 1;
    buf.clear();
    buf.resize(len, S::zero());
    buf[0] = S::one();
    for r in 1..=m {
        let den = sub_step_den(time, m, r);
        scratch.clear();
        scratch.resize(len, S::zero());
        for j in 0..r as usize {
            if buf[j].is_zero() {
                continue;
            }
            let gain = S::ratio(k + j as u64, den);
            scratch[j + 1] = scratch[j + 1].clone() + buf[j].clone() * gain.clone();
            scratch[j] = scratch[j].clone() + buf[j].clone() * (S::one() - gain);
        }
        std::mem::swap(buf, scratch);
    }
}

/// The kernel row for degree `k` at time `time` (order `m`).
///
/// Requires `1 <= time` and `m <= k <= 2 * time * m`; the degree of any
/// vertex is at least `m` and at most twice the edge count.
pub fn transition_row<S: Scalar>(k: u64, time: u64, m: u32) -> Result<TransitionRow<S>> {
    if time < 1 {
        return Err(invalid("time must be >= 1"));
    }
    if m < 1 {
        return Err(invalid("m must be >= 1"));
    }
    if k < m as u64 || k > 2 * time * m as u64 {
        return Err(invalid(format!(
            "degree k = {k} outside [{}, {}] at time {time}",
            m,
            2 * time * m as u64
        )));
    }
    let mut probs: Vec<S> = Vec::new();
    let mut scratch: Vec<S> = Vec::new();
    transition_probs_into(k, time, m, &mut probs, &mut scratch);

    #[cfg(debug_assertions)]
    {
        let checks: &[(usize, S)] = &[
            (0, row_prob_none::<S>(k, time, m)),
            (1, row_prob_one::<S>(k, time, m)),
            (m as usize, row_prob_all::<S>(k, time, m)),
        ];
        for (j, expect) in checks {
            debug_assert!(
                crate::scalar::rel_close(probs[*j].to_f64(), expect.to_f64(), 1e-9),
                "kernel DP disagrees with closed product at j = {j}"
            );
        }
    }

    Ok(TransitionRow { k, time, m, probs })
}

/// Closed product for `j = 0`: no endpoint gained at any sub-step.
pub fn row_prob_none<S: Scalar>(k: u64, time: u64, m: u32) -> S {
    S::product_complements((1..=m).map(|r| (k, sub_step_den(time, m, r))))
}

/// Closed sum for `j = 1`: exactly one endpoint, gained at sub-step `b`.
pub fn row_prob_one<S: Scalar>(k: u64, time: u64, m: u32) -> S {
    let mut total = S::zero();
    for b in 1..=m {
        let before = S::product_complements((1..b).map(|q| (k, sub_step_den(time, m, q))));
        let hit = S::ratio(k, sub_step_den(time, m, b));
        let after =
            S::product_complements((b + 1..=m).map(|r| (k + 1, sub_step_den(time, m, r))));
        total = total + before * hit * after;
    }
    total
}

/// Closed product for `j = m`: an endpoint gained at every sub-step.
pub fn row_prob_all<S: Scalar>(k: u64, time: u64, m: u32) -> S {
    let mut acc = S::one();
    for r in 1..=m {
        acc = acc * S::ratio(k + r as u64 - 1, sub_step_den(time, m, r));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    type Rat = BigRational;

    fn rat(n: u64, d: u64) -> Rat {
        <Rat as Scalar>::ratio(n, d)
    }

    #[test]
    fn k2_t1_m1() {
        let row = transition_row::<Rat>(2, 1, 1).unwrap();
        assert_eq!(row.probs, vec![rat(1, 3), rat(2, 3)]);
    }

    #[test]
    fn k2_t1_m2() {
        let row = transition_row::<Rat>(2, 1, 2).unwrap();
        assert_eq!(row.probs, vec![rat(3, 7), rat(2, 5), rat(6, 35)]);
        assert_eq!(row.probs.iter().cloned().sum::<Rat>(), rat(1, 1));
    }

    #[test]
    fn dp_matches_closed_products_exactly() {
        for m in 1..=4u32 {
            for time in 1..=6u64 {
                for k in m as u64..=2 * time * m as u64 {
                    let row = transition_row::<Rat>(k, time, m).unwrap();
                    assert_eq!(row.probs[0], row_prob_none::<Rat>(k, time, m));
                    assert_eq!(row.probs[1], row_prob_one::<Rat>(k, time, m));
                    assert_eq!(row.probs[m as usize], row_prob_all::<Rat>(k, time, m));
                }
            }
        }
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(transition_row::<f64>(0, 1, 1).is_err());
        assert!(transition_row::<f64>(3, 1, 1).is_err());
        assert!(transition_row::<f64>(2, 0, 1).is_err());
    }

    proptest! {
        #[test]
        fn rows_are_stochastic(m in 1u32..=4, time in 1u64..=50, k_off in 0u64..=20) {
            let k_max = 2 * time * m as u64;
            let k = (m as u64 + k_off).min(k_max);
            let row = transition_row::<Rat>(k, time, m).unwrap();
            let sum: Rat = row.probs.iter().cloned().sum();
            prop_assert_eq!(sum, rat(1, 1));
            for p in &row.probs {
                prop_assert!(*p >= <Rat as Scalar>::zero());
            }
        }

        #[test]
        fn float_rows_sum_to_one(m in 1u32..=4, time in 1u64..=1000, k_off in 0u64..=30) {
            let k = (m as u64 + k_off).min(2 * time * m as u64);
            let row = transition_row::<f64>(k, time, m).unwrap();
            let sum: f64 = row.probs.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
        }
    }
}
