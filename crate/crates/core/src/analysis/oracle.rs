use std::ops::ControlFlow;

use crate::cliques::{CliqueId, CliqueSet};
use crate::error::{Error, Result};

/// Largest r-clique count [`brute_force_kappa`] accepts.
pub const BRUTE_FORCE_CAP: usize = 20;

/// κ by exhaustive search: for each r-clique, the best minimum s-degree over
/// every r-clique subset containing it, where an s-clique counts only if all
/// of its r-cliques are in the subset. Exponential; refuses sets larger than
/// [`BRUTE_FORCE_CAP`].
pub fn brute_force_kappa(cs: &CliqueSet<'_>) -> Result<Vec<u32>> {
    let n = cs.len();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge {
            count: n,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let mut s_masks: Vec<u32> = Vec::new();
    for id in 0..n as CliqueId {
        cs.for_each_s_clique(id, |_, others| {
            let mask = others.iter().fold(1u32 << id, |m, &o| m | (1u32 << o));
            s_masks.push(mask);
            ControlFlow::Continue(())
        });
    }
    s_masks.sort_unstable();
    s_masks.dedup();

    let mut best = vec![0u32; n];
    let mut degree = vec![0u32; n];
    for subset in 1u32..(1u32 << n) {
        degree.iter_mut().for_each(|d| *d = 0);
        for &s in &s_masks {
            if s & subset == s {
                let mut bits = s;
                while bits != 0 {
                    degree[bits.trailing_zeros() as usize] += 1;
                    bits &= bits - 1;
                }
            }
        }
        let members = || (0..n).filter(move |&i| subset & (1 << i) != 0);
        let min = members().map(|i| degree[i]).min().unwrap_or(0);
        for i in members() {
            best[i] = best[i].max(min);
        }
    }
    Ok(best)
}
