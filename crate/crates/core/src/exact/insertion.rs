//! Degree distribution of a vertex at its own insertion time.
//!
//! While vertex `I` is being added, its `m` edges are placed one at a
//! time. At sub-step `r` (fine time `t = (I-1)m + r`) the group's running
//! degree `d` counts the out-endpoints placed so far plus 2 per loop; the
//! new edge becomes a loop with probability `(d + 1) / (2t - 1)` (the
//! group's `d` endpoints plus the new edge's own source endpoint), and
//! otherwise lands on an older vertex. The sub-step DP below is the
//! normative definition; the closed forms for the no-loop and all-loop
//! endpoints and the last-loop decomposition for the interior are kept as
//! independent checks.

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::scalar::Scalar;

use super::VertexDegreeLaw;

fn fine_den(vertex: u64, m: u32, r: u32) -> u64 {
    // 2t - 1 at fine time t = (vertex-1)*m + r.
    2 * ((vertex - 1) * m as u64 + r as u64) - 1
}

/// The law of `k_I(I)`: the vertex degree right after its own insertion,
/// supported on `m ..= 2m`. For `I = 1` every sub-step loops (the loop
/// probability is 1), giving the point mass at `2m`.
pub fn insertion_distribution<S: Scalar>(vertex: u64, m: u32) -> Result<VertexDegreeLaw<S>> {
    if vertex < 1 {
        return Err(invalid("vertex index must be >= 1"));
    }
    if m < 1 {
        return Err(invalid("m must be >= 1"));
    }
    let dp = insertion_dp::<S>(vertex, m, m);
    let mut masses = BTreeMap::new();
    for (d, p) in dp.into_iter().enumerate() {
        if !p.is_zero() {
            masses.insert(d as u64, p);
        }
    }
    Ok(VertexDegreeLaw {
        vertex,
        time: vertex,
        m,
        masses,
    })
}

/// Running-degree distribution after the first `steps` sub-steps of the
/// insertion of `vertex`; index = degree. Also the ingredient of the
/// last-loop decomposition check.
fn insertion_dp<S: Scalar>(vertex: u64, m: u32, steps: u32) -> Vec<S> {
    let max_d = 2 * steps as usize;
    let mut cur = vec![S::zero(); max_d + 1];
    cur[0] = S::one();
    for r in 1..=steps {
        let den = fine_den(vertex, m, r);
        let mut next = vec![S::zero(); max_d + 1];
        for d in 0..2 * (r as usize - 1) + 1 {
            if cur[d].is_zero() {
                continue;
            }
            let loop_p = S::ratio(d as u64 + 1, den);
            next[d + 2] = next[d + 2].clone() + cur[d].clone() * loop_p.clone();
            next[d + 1] = next[d + 1].clone() + cur[d].clone() * (S::one() - loop_p);
        }
        cur = next;
    }
    cur
}

/// Closed form for the no-loop endpoint `k = m`:
/// `Π_{r=1..m} (1 - r / (2(I-1)m + 2(r-1) + 1))`.
pub fn insertion_no_loop_prob<S: Scalar>(vertex: u64, m: u32) -> S {
    S::product_complements((1..=m).map(|r| (r as u64, fine_den(vertex, m, r))))
}

/// Closed form for the all-loops endpoint `k = 2m`:
/// `Π_{r=1..m} (2(r-1) + 1) / (2(I-1)m + 2(r-1) + 1)`.
pub fn insertion_all_loops_prob<S: Scalar>(vertex: u64, m: u32) -> S {
    let mut acc = S::one();
    for r in 1..=m {
        acc = acc * S::ratio(2 * (r as u64 - 1) + 1, fine_den(vertex, m, r));
    }
    acc
}

/// Last-loop decomposition for the interior `m < k < 2m`: sum over the
/// sub-step `r` carrying the final loop of (probability the running
/// degree is `k - (m - r) - 2` after `r - 1` sub-steps) x (loop at `r`)
/// x (no loop afterwards).
pub fn insertion_last_loop_sum<S: Scalar>(k: u64, vertex: u64, m: u32) -> Result<S> {
    if !(k > m as u64 && k < 2 * m as u64) {
        return Err(invalid("last-loop decomposition applies for m < k < 2m"));
    }
    let mut total = S::zero();
    let r_min = (k - m as u64) as u32;
    for r in r_min..=m {
        let d_before = k - (m as u64 - r as u64) - 2;
        let prefix = insertion_dp::<S>(vertex, m, r - 1);
        let at_d = prefix
            .get(d_before as usize)
            .cloned()
            .unwrap_or_else(S::zero);
        if at_d.is_zero() {
            continue;
        }
        let hit = S::ratio(k - (m as u64 - r as u64) - 1, fine_den(vertex, m, r));
        let tail = S::product_complements(
            (r + 1..=m).map(|q| (k - (m as u64 - r as u64) + (q as u64 - r as u64), fine_den(vertex, m, q))),
        );
        total = total + at_d * hit * tail;
    }
    Ok(total)
}
