use arclab_core::arc_complex::{
    enumerate_tableaux, example5_complex, polygon_arc_complex, polygon_chords, tableau_complex, Homology,
    SimplicialComplex,
};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};
use crate::formats;
use crate::json::int;
use crate::{read_json, ArcComplexArgs, Context, Report, TableauxArgs};

fn homology_json(h: &Homology) -> Value {
    json!(h
        .groups
        .iter()
        .enumerate()
        .map(|(k, g)| json!({
            "degree": h.min_degree + k as i64,
            "rank": g.rank,
            "torsion": g.torsion.iter().map(int).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>())
}

fn complex_report(k: &SimplicialComplex, with_homology: bool, with_facets: bool) -> Value {
    let mut out = json!({
        "dimension": k.dimension(),
        "fVector": k.f_vector(),
        "euler": k.euler_characteristic(),
        "pure": k.is_pure(),
        "pseudomanifold": k.is_pseudomanifold(),
        "connected": k.is_connected(),
    });
    if with_homology {
        let h = k.chain_complex(false).homology();
        out["betti"] = json!(h.betti_numbers());
        out["homology"] = homology_json(&h);
        out["reducedBetti"] = json!(k.reduced_homology().betti_numbers());
        out["sphereHomology"] = json!(k.has_sphere_homology(k.dimension()));
    }
    if with_facets {
        out["facets"] = formats::complex_json(k)["facets"].clone();
    }
    out
}

/// Vertex ids, or chords `i-j` of the `n`-gon.
fn parse_face(s: &str, polygon: Option<usize>) -> CliResult<Vec<u32>> {
    let chords = polygon.map(polygon_chords);
    let mut face: Vec<u32> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.split_once('-') {
            Some((a, b)) => {
                let chords = chords.as_ref().ok_or_else(|| CliError::usage("chords `i-j` need --polygon"))?;
                let (a, b): (usize, usize) = (
                    a.parse().map_err(|_| CliError::usage(format!("bad chord {t:?}")))?,
                    b.parse().map_err(|_| CliError::usage(format!("bad chord {t:?}")))?,
                );
                let c = (a.min(b), a.max(b));
                chords
                    .iter()
                    .position(|&x| x == c)
                    .map(|p| p as u32)
                    .ok_or_else(|| CliError::validation(format!("{t} is not a diagonal")))
            }
            None => t.parse().map_err(|_| CliError::usage(format!("bad vertex {t:?}"))),
        })
        .collect::<CliResult<_>>()?;
    face.sort_unstable();
    face.dedup();
    Ok(face)
}

fn one_complex(k: &SimplicialComplex, args: &ArcComplexArgs, polygon: Option<usize>) -> CliResult<Value> {
    let mut out = complex_report(k, args.homology, args.facets);
    if let Some(n) = polygon {
        out = json!({ "polygon": n, "chords": polygon_chords(n).iter().map(|(a, b)| [a, b]).collect::<Vec<_>>() })
            .as_object()
            .cloned()
            .map(|mut m: Map<String, Value>| {
                m.extend(out.as_object().cloned().unwrap_or_default());
                Value::Object(m)
            })
            .unwrap_or(out);
    }
    if let Some(f) = &args.link {
        let face = parse_face(f, polygon)?;
        let link = k.link(&face)?;
        let mut r = complex_report(&link, args.homology, args.facets);
        r["face"] = json!(face);
        r["expectedSphereDimension"] = json!(k.dimension() - face.len() as i64);
        out["link"] = r;
    }
    if args.suspend {
        out["suspension"] = complex_report(&k.suspension()?, args.homology, args.facets);
    }
    Ok(out)
}

fn parse_range(s: &str) -> CliResult<(usize, usize)> {
    let (a, b) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .ok_or_else(|| CliError::usage(format!("range must look like 4..9, got {s:?}")))?;
    let a = a.trim().parse().map_err(|_| CliError::usage(format!("bad range {s:?}")))?;
    let b = b.trim().parse().map_err(|_| CliError::usage(format!("bad range {s:?}")))?;
    if a > b {
        return Err(CliError::usage(format!("empty range {s:?}")));
    }
    Ok((a, b))
}

pub fn arc_complex(args: &ArcComplexArgs, ctx: &Context) -> CliResult<Report> {
    if let Some(n) = args.polygon {
        let k = polygon_arc_complex(n)?;
        return Ok(Report::json(one_complex(&k, args, Some(n))?));
    }
    if let Some(r) = &args.range {
        let (a, b) = parse_range(r)?;
        let reports: Vec<CliResult<Value>> = ctx.pool()?.install(|| {
            (a..=b)
                .into_par_iter()
                .map(|n| one_complex(&polygon_arc_complex(n)?, args, Some(n)))
                .collect()
        });
        let reports = reports.into_iter().collect::<CliResult<Vec<_>>>()?;
        return Ok(Report::json(json!({ "polygons": reports })));
    }
    if let Some(p) = &args.input {
        let k = formats::parse_complex(&read_json(p)?)?;
        return Ok(Report::json(one_complex(&k, args, None)?));
    }
    Err(CliError::usage("give --polygon N, --range A..B or --input FILE"))
}

pub fn tableaux(args: &TableauxArgs) -> CliResult<Report> {
    let max = args.max_edges.unwrap_or(2 * args.s as usize + 2);
    let en = enumerate_tableaux(args.s, max)?;
    let top = en.counts.keys().last().copied().unwrap_or(0);
    let mut out = json!({
        "s": args.s,
        "maxEdges": max,
        "cellsByDimension": en.count_vector(top),
        "total": en.tableaux.len(),
    });
    if let Some(w) = &en.warning {
        out["warning"] = json!(w);
    }
    if args.list {
        out["tableaux"] = json!(en.tableaux.iter().map(|t| json!({"dimension": t.dimension(), "code": t.encode()})).collect::<Vec<_>>());
    }
    Ok(Report::json(out))
}

pub fn example5() -> CliResult<Report> {
    let ex = example5_complex();
    let cc = &ex.complex;
    let boundaries: Map<String, Value> = ex
        .names
        .iter()
        .flatten()
        .map(|n| (n.clone(), json!(ex.boundary_of(n).iter().map(|(c, f)| json!([c, f])).collect::<Vec<_>>())))
        .collect();
    let (tc, _) = tableau_complex(3)?;
    let out = json!({
        "cells": cc.ranks,
        "euler": cc.euler_characteristic(),
        "boundarySquaredZero": cc.is_chain_complex(),
        "homology": homology_json(&cc.homology()),
        "threeSphere": cc.homology().is_unreduced_sphere(3),
        "tableauCells": tc.complex.ranks,
        "names": ex.names,
        "boundaries": boundaries,
    });
    Ok(Report::json(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faces_and_ranges() {
        assert_eq!(parse_face("0-2, 3-5", Some(6)).unwrap(), vec![0, 8]);
        assert_eq!(parse_face("4,1", None).unwrap(), vec![1, 4]);
        assert!(parse_face("0-1", Some(6)).is_err());
        assert_eq!(parse_range("4..9").unwrap(), (4, 9));
        assert_eq!(parse_range("4..=9").unwrap(), (4, 9));
        assert!(parse_range("9..4").is_err());
    }
}
