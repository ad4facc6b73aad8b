//! CSV and JSON artifacts. Column layouts do not depend on the engine, so
//! outputs of different runs diff cleanly.

use std::io::Write;

use serde::Serialize;

use crate::analysis::DegreeLevels;
use crate::cliques::{CliqueId, CliqueSet, Decomposition};
use crate::error::{Error, Result};
use crate::graph::LoadStats;
use crate::local::{EngineDescriptor, IterationStats};

#[derive(Serialize)]
struct KappaRow {
    clique_id: CliqueId,
    vertices: String,
    kappa: u32,
}

/// Space-separated original labels of a clique's vertices.
pub fn clique_label(cs: &CliqueSet<'_>, id: CliqueId) -> String {
    let g = cs.graph();
    cs.vertices(id)
        .iter()
        .map(|&v| g.label(v).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// `clique_id,vertices,kappa`, one row per clique in id order.
pub fn write_kappa_csv<W: Write>(cs: &CliqueSet<'_>, kappa: &[u32], out: W) -> Result<()> {
    if kappa.len() != cs.len() {
        return Err(Error::LengthMismatch {
            left: kappa.len(),
            right: cs.len(),
        });
    }
    let mut w = csv::Writer::from_writer(out);
    for (id, &k) in kappa.iter().enumerate() {
        let id = id as CliqueId;
        w.serialize(KappaRow {
            clique_id: id,
            vertices: clique_label(cs, id),
            kappa: k,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// One line of an estimate report; `error` is set when the anchor could
/// not be resolved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateRow {
    pub anchor: String,
    pub estimate: Option<u32>,
    pub exact: Option<u32>,
    pub error: Option<String>,
}

/// `anchor,estimate,exact,error`; absent values are empty cells.
pub fn write_estimates_csv<W: Write>(rows: &[EstimateRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// `level,size`.
pub fn write_levels_csv<W: Write>(levels: &DegreeLevels, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["level", "size"])?;
    for (level, size) in levels.histogram() {
        w.write_record([level.to_string(), size.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Everything about a decomposition run except the per-clique values.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub input: String,
    pub decomposition: Decomposition,
    pub engine: String,
    /// Settings of a local engine; absent for peeling.
    pub engine_options: Option<EngineDescriptor>,
    pub load: Option<LoadStats>,
    pub vertices: usize,
    pub edges: usize,
    pub r_cliques: usize,
    pub s_cliques: u64,
    pub iterations: usize,
    pub passes: usize,
    pub converged: bool,
    pub stats: Vec<IterationStats>,
    pub setup_secs: f64,
    pub wall_secs: f64,
}

pub fn write_summary_json<W: Write>(summary: &RunSummary, out: W) -> Result<()> {
    serde_json::to_writer_pretty(out, summary)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::degree_levels;
    use crate::graph::{load_edge_list, LoadOptions};

    #[test]
    fn kappa_csv_uses_original_labels() {
        let (g, _) = load_edge_list("10 20\n20 30\n10 30\n".as_bytes(), &LoadOptions::default()).unwrap();
        let cs = CliqueSet::new(&g, Decomposition::Truss);
        let mut buf = Vec::new();
        write_kappa_csv(&cs, &[1, 1, 1], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("clique_id,vertices,kappa"));
        assert_eq!(text.lines().count(), 4);
        assert!(text.contains("10 20,1"));
        assert!(write_kappa_csv(&cs, &[1], Vec::new()).is_err());
    }

    #[test]
    fn estimate_rows_leave_missing_cells_empty() {
        let rows = [
            EstimateRow { anchor: "7".into(), estimate: Some(3), exact: Some(3), error: None },
            EstimateRow { anchor: "9".into(), estimate: None, exact: None, error: Some("unknown vertex".into()) },
        ];
        let mut buf = Vec::new();
        write_estimates_csv(&rows, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "anchor,estimate,exact,error\n7,3,3,\n9,,,unknown vertex\n"
        );
    }

    #[test]
    fn levels_csv() {
        let g = crate::generators::complete_graph(4);
        let levels = degree_levels(&CliqueSet::new(&g, Decomposition::Core));
        let mut buf = Vec::new();
        write_levels_csv(&levels, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "level,size\n0,4\n");
    }
}
