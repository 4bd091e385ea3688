//! Static construction: uniform random chord pairings and the map from a
//! pairing to the multigraph, which realizes the same distribution as the
//! dynamic process.

use rand::Rng;

use crate::error::{invalid, Result};
use crate::process::{coarsen, GraphState};

/// A perfect matching on the points `0..2L`, stored as the partner array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    pub partner: Vec<u32>,
}

impl Pairing {
    pub fn points(&self) -> usize {
        self.partner.len()
    }

    /// Build from explicit pairs (0-based points); validates the matching.
    pub fn from_pairs(points: usize, pairs: &[(u32, u32)]) -> Result<Pairing> {
        if pairs.len() * 2 != points {
            return Err(invalid("pair list does not cover all points"));
        }
        let mut partner = vec![u32::MAX; points];
        for &(a, b) in pairs {
            if a == b || a as usize >= points || b as usize >= points {
                return Err(invalid("malformed pair"));
            }
            if partner[a as usize] != u32::MAX || partner[b as usize] != u32::MAX {
                return Err(invalid("point matched twice"));
            }
            partner[a as usize] = b;
            partner[b as usize] = a;
        }
        Ok(Pairing { partner })
    }

    pub fn check(&self) -> Result<()> {
        let n = self.partner.len();
        if n % 2 != 0 {
            return Err(invalid("odd number of points"));
        }
        for (i, &p) in self.partner.iter().enumerate() {
            if p as usize >= n || p as usize == i || self.partner[p as usize] as usize != i {
                return Err(invalid(format!("partner array broken at point {i}")));
            }
        }
        Ok(())
    }
}

/// Uniformly random perfect matching of `0..points`.
///
/// Sequential pairing: take any unmatched point and match it to a uniform
/// choice among the rest; every matching arises with probability
/// `1/(points-1)!!`.
pub fn sample_pairing<R: Rng + ?Sized>(points: usize, rng: &mut R) -> Result<Pairing> {
    if points < 2 || points % 2 != 0 {
        return Err(invalid(format!(
            "point count must be even and >= 2, got {points}"
        )));
    }
    let mut partner = vec![0u32; points];
    let mut pool: Vec<u32> = (0..points as u32).collect();
    while !pool.is_empty() {
        let a = pool[0];
        let j = rng.random_range(1..pool.len());
        let b = pool[j];
        pool.swap_remove(j);
        pool.swap_remove(0);
        partner[a as usize] = b;
        partner[b as usize] = a;
    }
    Ok(Pairing { partner })
}

/// The chord-diagram map. Scan points left to right; each right endpoint
/// closes a fine vertex, and each chord becomes an edge from the fine
/// vertex of its right endpoint to the fine vertex of its left endpoint.
/// Blocks of `m` fine vertices are then identified.
pub fn pairing_to_graph(pairing: &Pairing, m: u32) -> Result<GraphState> {
    pairing.check()?;
    let points = pairing.points();
    let chords = points / 2;
    if m == 0 || chords % m as usize != 0 {
        return Err(invalid(format!(
            "m = {m} does not divide the chord count {chords}"
        )));
    }

    // Fine vertex of point p = number of right endpoints strictly before p.
    let mut label = vec![0u32; points];
    let mut rights = 0u32;
    for p in 0..points {
        label[p] = rights;
        if (pairing.partner[p] as usize) < p {
            rights += 1;
        }
    }

    let mut fine = GraphState::with_capacity(chords as u64);
    fine.degrees.resize(chords, 0);
    for p in 0..points {
        let l = pairing.partner[p] as usize;
        if l < p {
            let src = label[p];
            let dst = label[l];
            fine.endpoints.push(src);
            fine.endpoints.push(dst);
            fine.degrees[src as usize] += 1;
            fine.degrees[dst as usize] += 1;
            fine.t += 1;
        }
    }
    coarsen(&fine, m)
}
