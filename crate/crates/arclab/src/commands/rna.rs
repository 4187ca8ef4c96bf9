use arclab_core::rna::{
    achiral_surface, binary_bondings, binary_reduction, chiral_surface, Bonding, FoldSurfaceReport, Side,
    MAX_SWEEP_M,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::formats;
use crate::{read_text, svg, Context, Model, Report, RnaCommand};

fn surface_json(r: &FoldSurfaceReport) -> Value {
    let (fg, fb) = r.capped_type();
    json!({
        "g": r.genus,
        "b": r.boundary_count,
        "chi": r.euler_characteristic,
        "capped": r.capped_count,
        "pseudoknots": r.pseudoknot_cycles,
        "F": { "g": fg, "b": fb },
        "cycles": r.cycles.iter().map(|c| json!({
            "bonds": c.bonds.iter().map(|(i, j)| [i, j]).collect::<Vec<_>>(),
            "segments": c.segments,
            "touchesEnd": c.touches_end,
            "capped": c.capped,
        })).collect::<Vec<_>>(),
    })
}

fn analyze(input: &std::path::Path, model: Model) -> CliResult<Report> {
    let doc = formats::parse_bonding(&read_text(input)?)?;
    let achiral = match model {
        Model::Auto => doc.sides.is_some(),
        Model::Chiral => false,
        Model::Achiral => true,
    };
    let mut bonding = doc.bonding.clone();
    let mut sides = doc.sides.clone();
    let mut out = json!({ "m": bonding.m(), "bonds": bonding.len() });
    out["secondary"] = json!(bonding.is_secondary_structure());
    // non-binary secondary input is split into a binary one first
    if bonding.is_secondary_structure() && !bonding.is_binary()? {
        let red = binary_reduction(&bonding)?;
        sides = sides.map(|s| {
            let mut t = vec![Side::Above; red.bonding.m() + 1];
            for (old, copies) in red.site_map.iter().enumerate() {
                for &c in copies {
                    t[c] = s[old];
                }
            }
            t
        });
        out["reduced"] = json!(true);
        out["siteMap"] = json!(red.site_map);
        out["reducedBonding"] = json!(red.bonding.bonds().iter().map(|(i, j)| [i, j]).collect::<Vec<_>>());
        bonding = red.bonding;
    } else {
        out["reduced"] = json!(false);
    }
    let report = if achiral {
        let s = sides.unwrap_or_else(|| vec![Side::Above; bonding.m() + 1]);
        achiral_surface(&bonding, &s)?
    } else {
        chiral_surface(&bonding)?
    };
    out["model"] = json!(if achiral { "achiral" } else { "chiral" });
    if let Value::Object(o) = surface_json(&report) {
        if let Some(m) = out.as_object_mut() { m.extend(o) }
    }
    out["notes"] = json!({
        "capping": "a boundary cycle is capped unless it is a pseudo-knot; see README",
        "reduction": "sites split left bonds first, then right bonds, keeping nesting",
    });
    let svg = svg::bonding_svg(&bonding, doc.sides.as_deref().filter(|_| !out["reduced"].as_bool().unwrap_or(false)));
    Ok(Report { json: out, svg: Some(svg) })
}

/// Genus zero exactly for secondary structures, and lengthening or spacing
/// a helix keeps the capped surface type.
fn sweep_one(b: &Bonding) -> CliResult<(bool, bool)> {
    let r = chiral_surface(b)?;
    let planar = (r.genus == 0) == b.is_secondary_structure();
    let gb = r.capped_type();
    let mut helix = true;
    for run in b.helices() {
        let (i, j) = run[0];
        helix &= chiral_surface(&b.elongate((i, j))?)?.capped_type() == gb;
        if run.len() > 1 {
            helix &= chiral_surface(&b.insert_site(i + 1))?.capped_type() == gb;
        }
    }
    Ok((planar, helix))
}

fn sweep(max_m: usize, min_gap: usize, ctx: &Context) -> CliResult<Report> {
    if max_m > MAX_SWEEP_M {
        return Err(CliError::usage(format!("--max-m is at most {MAX_SWEEP_M}")));
    }
    let all: Vec<Bonding> = (0..=max_m).flat_map(|m| binary_bondings(m, min_gap)).collect();
    let results: Vec<CliResult<(bool, bool)>> = ctx.pool()?.install(|| all.par_iter().map(sweep_one).collect());
    let mut planar_fail = Vec::new();
    let mut helix_fail = Vec::new();
    for (b, r) in all.iter().zip(results) {
        let (p, h) = r?;
        let bonds: Vec<[usize; 2]> = b.bonds().iter().map(|&(i, j)| [i, j]).collect();
        if !p {
            planar_fail.push(json!({ "m": b.m(), "bonds": bonds.clone() }));
        }
        if !h {
            helix_fail.push(json!({ "m": b.m(), "bonds": bonds }));
        }
    }
    let out = json!({
        "maxM": max_m,
        "minGap": min_gap,
        "bondings": all.len(),
        "planarity": planar_fail.is_empty(),
        "helixInvariance": helix_fail.is_empty(),
        "planarityFailures": planar_fail,
        "helixFailures": helix_fail,
    });
    Ok(Report::json(out))
}

pub fn rna(cmd: &RnaCommand, ctx: &Context) -> CliResult<Report> {
    match cmd {
        RnaCommand::Analyze { input, model } => analyze(input, *model),
        RnaCommand::Sweep { max_m, min_gap } => sweep(*max_m, *min_gap, ctx),
    }
}
