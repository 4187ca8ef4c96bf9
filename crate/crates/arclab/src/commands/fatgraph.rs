use std::collections::BTreeSet;

use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::formats;
use crate::json::float;
use crate::{read_json, FatgraphAction, FatgraphArgs, Report};

fn parse_subset(s: &str, edges: usize) -> CliResult<BTreeSet<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let e: usize = t.parse().map_err(|_| CliError::usage(format!("bad edge {t:?}")))?;
            if e >= edges {
                return Err(CliError::validation(format!("no edge {e}")));
            }
            Ok(e)
        })
        .collect()
}

pub fn fatgraph(args: &FatgraphArgs) -> CliResult<Report> {
    let doc = formats::parse_fatgraph(&read_json(&args.input)?)?;
    let g = &doc.graph;
    let out = match args.action {
        FatgraphAction::Boundaries => {
            let cycles = g.boundary_cycles();
            let mut out = json!({
                "vertices": g.num_vertices(),
                "edges": g.num_edges(),
                "cycles": cycles,
                "boundaryCount": cycles.len(),
                "euler": g.euler_characteristic(),
                "genus": g.genus(),
            });
            if let Some(w) = &doc.weights {
                out["lengths"] = json!(g.boundary_lengths(w)?.into_iter().map(float).collect::<Vec<_>>());
            }
            out
        }
        FatgraphAction::Recurrent => {
            let subset = match &args.subset {
                Some(s) => parse_subset(s, g.num_edges())?,
                None => (0..g.num_edges()).collect(),
            };
            let rec = g.recurrent_part(&subset)?;
            let rest: Vec<usize> = subset.difference(&rec).copied().collect();
            json!({ "subset": subset, "recurrent": rec, "nonRecurrent": rest })
        }
        FatgraphAction::Whitehead => {
            let e = args.edge.ok_or_else(|| CliError::usage("whitehead needs --edge"))?;
            let h = g.whitehead_move(e)?;
            json!({
                "edge": e,
                "fatgraph": formats::fatgraph_json(&h, doc.relaxed),
                "genus": h.genus(),
                "boundaryCount": h.boundary_cycles().len(),
            })
        }
    };
    Ok(Report::json(out))
}
