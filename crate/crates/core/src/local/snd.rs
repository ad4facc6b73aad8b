use std::time::Instant;

use rayon::prelude::*;

use super::{ratio, recompute, should_stop, DecompositionResult, EngineDescriptor, EngineOptions, IterationStats, CHUNK_SIZE};
use crate::cliques::{CliqueId, CliqueSet};
use crate::error::Result;
use crate::hindex::HIndexAccumulator;

/// Synchronous engine: `τ₀ = d_s`, `τ_{t+1} = U τ_t`, every read from the
/// previous pass's snapshot. The output is independent of thread count and
/// processing order.
pub fn snd(cs: &CliqueSet<'_>, opts: &EngineOptions) -> Result<DecompositionResult> {
    snd_observed(cs, opts, &mut |_, _| {})
}

/// [`snd`], calling `observer` with the statistics and τ after every pass.
pub fn snd_observed(
    cs: &CliqueSet<'_>,
    opts: &EngineOptions,
    observer: &mut dyn FnMut(&IterationStats, &[u32]),
) -> Result<DecompositionResult> {
    opts.validate()?;
    let pool = opts.pool()?;
    let n = cs.len();
    let mut tau: Vec<u32> = cs.s_degrees().to_vec();
    let mut stats = Vec::new();
    let early_exit = opts.early_exit;

    let converged = loop {
        let started = Instant::now();
        let prev = tau;
        let compute = |acc: &mut HIndexAccumulator, id: usize| {
            let cap = if early_exit { prev[id] } else { cs.s_degree(id as CliqueId) };
            recompute(cs, id as CliqueId, cap, |o| prev[o as usize], acc)
        };
        tau = match &pool {
            None => {
                let mut acc = HIndexAccumulator::new();
                (0..n).map(|id| compute(&mut acc, id)).collect()
            }
            Some(pool) => pool.install(|| {
                (0..n)
                    .into_par_iter()
                    .with_min_len(CHUNK_SIZE)
                    .map_init(HIndexAccumulator::new, |acc, id| compute(acc, id))
                    .collect()
            }),
        };

        let (updated, increases) = prev
            .iter()
            .zip(&tau)
            .fold((0, 0), |(u, i), (&old, &new)| (u + (old != new) as usize, i + (new > old) as usize));
        let pass = IterationStats {
            iteration: stats.len() + 1,
            recomputed: n,
            updated,
            increases,
            active_ratio: ratio(n, n),
            elapsed_secs: started.elapsed().as_secs_f64(),
        };
        observer(&pass, &tau);
        let stop = should_stop(opts, &pass);
        stats.push(pass);
        if let Some(converged) = stop {
            break converged;
        }
    };

    Ok(DecompositionResult {
        iterations: stats.iter().filter(|s| s.updated > 0).count(),
        passes: stats.len(),
        converged,
        kappa: tau,
        stats,
        engine: EngineDescriptor {
            name: "snd",
            decomposition: cs.decomposition(),
            order: None,
            threads: opts.threads,
            notify: false,
            stop_active_ratio: opts.stop_active_ratio,
            max_iterations: opts.max_iterations,
        },
    })
}
