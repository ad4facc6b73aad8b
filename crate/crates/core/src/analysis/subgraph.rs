use std::collections::VecDeque;

use crate::cliques::{CliqueId, CliqueSet};
use crate::error::{Error, Result};

/// The connected set of cliques around `id` whose κ is at least κ(`id`),
/// connected through shared s-cliques. For cores this is the max-core of a
/// vertex, for trusses the max-truss of an edge. Sorted by id.
pub fn max_subgraph(cs: &CliqueSet<'_>, kappa: &[u32], id: CliqueId) -> Result<Vec<CliqueId>> {
    if kappa.len() != cs.len() {
        return Err(Error::LengthMismatch {
            left: kappa.len(),
            right: cs.len(),
        });
    }
    cs.check(id)?;
    let floor = kappa[id as usize];
    let mut seen = vec![false; cs.len()];
    seen[id as usize] = true;
    let mut queue = VecDeque::from([id]);
    let mut members = Vec::new();
    while let Some(cur) = queue.pop_front() {
        members.push(cur);
        for next in cs.neighbor_cliques(cur) {
            let i = next as usize;
            if !seen[i] && kappa[i] >= floor {
                seen[i] = true;
                queue.push_back(next);
            }
        }
    }
    members.sort_unstable();
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliques::Decomposition;
    use crate::generators::{complete_graph, disjoint_union};
    use crate::peeling::peel;

    #[test]
    fn complete_graph_is_its_own_max_core() {
        let g = complete_graph(4);
        let cs = CliqueSet::new(&g, Decomposition::Core);
        let kappa = peel(&cs);
        assert_eq!(max_subgraph(&cs, &kappa, 2).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn stays_inside_its_component() {
        let g = disjoint_union(&complete_graph(3), &complete_graph(3));
        let cs = CliqueSet::new(&g, Decomposition::Core);
        let kappa = peel(&cs);
        assert_eq!(max_subgraph(&cs, &kappa, 4).unwrap(), vec![3, 4, 5]);
    }

    #[test]
    fn rejects_bad_input() {
        let g = complete_graph(3);
        let cs = CliqueSet::new(&g, Decomposition::Core);
        assert!(max_subgraph(&cs, &[2, 2, 2], 3).is_err());
        assert!(max_subgraph(&cs, &[2, 2], 0).is_err());
    }
}
