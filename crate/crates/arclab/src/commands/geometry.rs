use std::path::Path;

use arclab_core::geom::LightConePoint;
use arclab_core::solver::{solve_arithmetic_problem, SolverConfig};
use arclab_core::triangulation::{convex_hull_cell, IdealTriangulation, TriangulationError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{emit_edges, Emit};
use crate::error::{CliError, CliResult};
use crate::formats::{self, TriangulationDoc};
use crate::json::{self, EdgeData, Number};
use crate::{read_json, svg, Context, FlipArgs, HullArgs, Report};

fn read_triangulation(path: &Path) -> CliResult<TriangulationDoc> {
    formats::parse_triangulation(&read_json(path)?)
}

/// Boundary vertices of a triangulated disk in cyclic order, or `None` when
/// the surface is not a polygon.
fn polygon_order(t: &IdealTriangulation) -> Option<Vec<usize>> {
    let top = t.topology();
    if top.boundary_components != 1 || top.punctures != 0 || top.genus != 0 {
        return None;
    }
    let mut next = vec![usize::MAX; t.num_vertices()];
    for e in 0..t.num_edges() {
        if let [s] = t.edge_sides(e) {
            let (a, b) = t.side_endpoints(*s);
            next[a] = b;
        }
    }
    let mut order = vec![0];
    while order.len() < t.num_vertices() {
        let v = next[*order.last()?];
        if v == usize::MAX || v == 0 {
            return None;
        }
        order.push(v);
    }
    Some(order)
}

/// Diagonals as pairs of positions around the polygon.
fn polygon_chords(t: &IdealTriangulation) -> Option<(usize, Vec<(usize, usize)>)> {
    let order = polygon_order(t)?;
    let mut pos = vec![0; order.len()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let chords = t
        .interior_edges()
        .map(|e| {
            let (a, b) = t.edge_endpoints(e);
            (pos[a].min(pos[b]), pos[a].max(pos[b]))
        })
        .collect();
    Some((order.len(), chords))
}

fn triangulation_svg(t: &IdealTriangulation) -> Option<String> {
    polygon_chords(t).map(|(n, c)| svg::polygon_svg(n, &c))
}

fn add_diagonals(out: &mut Value, t: &IdealTriangulation) {
    if let Some((_, chords)) = polygon_chords(t) {
        out["diagonals"] = json!(chords.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>());
    }
}

/// Diagonals of `t` listed by their ids after renumbering with `perm`, so
/// vertex positions stay those of the input polygon.
fn add_renumbered_diagonals(out: &mut Value, t: &IdealTriangulation, perm: &[usize]) -> Option<String> {
    let (n, chords) = polygon_chords(t)?;
    let mut by_id: Vec<(usize, (usize, usize))> = t.interior_edges().map(|e| perm[e]).zip(chords).collect();
    by_id.sort_unstable();
    let chords: Vec<(usize, usize)> = by_id.into_iter().map(|(_, c)| c).collect();
    out["diagonals"] = json!(chords.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>());
    Some(svg::polygon_svg(n, &chords))
}

pub fn flip(args: &FlipArgs) -> CliResult<Report> {
    let doc = read_triangulation(&args.input)?;
    match doc.lambda()? {
        EdgeData::Exact(l) => flip_seq(&doc.triangulation, l, &args.edges),
        EdgeData::Float(l) => flip_seq(&doc.triangulation, l, &args.edges),
    }
}

fn flip_seq<T: Emit>(t: &IdealTriangulation, lam: &[T], edges: &[usize]) -> CliResult<Report> {
    let mut t = t.clone();
    let mut lam = lam.to_vec();
    for &e in edges {
        if e >= t.num_edges() {
            return Err(CliError::validation(format!("no edge {e}")));
        }
        let (t2, l2) = t.flip_edge(&lam, e)?;
        t = t2;
        lam = l2;
    }
    let (nt, perm) = formats::normalize(&t)?;
    let lam = formats::permute_edge_data(&T::into_data(lam), &perm);
    let mut out = json!({
        "flips": edges,
        "exact": T::is_exact(),
        "triangulation": formats::triangulation_json(&nt, Some(&lam)),
        "topology": formats::topology_json(&nt),
    });
    let svg = add_renumbered_diagonals(&mut out, &t, &perm);
    Ok(Report { json: out, svg })
}

pub fn coords(path: &Path) -> CliResult<Report> {
    let doc = read_triangulation(path)?;
    let t = &doc.triangulation;
    let mut out = match doc.lambda()? {
        EdgeData::Exact(l) => coords_report(t, l)?,
        EdgeData::Float(l) => coords_report(t, l)?,
    };
    out["topology"] = formats::topology_json(t);
    add_diagonals(&mut out, t);
    Ok(Report { json: out, svg: triangulation_svg(t) })
}

fn coords_report<T: Emit>(t: &IdealTriangulation, lam: &[T]) -> CliResult<Value> {
    let x = t.simplicial_coords(lam)?;
    let nonnegative = x.iter().all(|v| !v.is_negative());
    let cycles = match t.no_vanishing_cycle(&x) {
        Ok(b) => json!(b),
        Err(TriangulationError::TooLarge(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let mut out = json!({
        "exact": T::is_exact(),
        "E": emit_edges(&x),
        "nonnegative": nonnegative,
        "noVanishingCycle": cycles,
        "triangleInequalities": t.triangle_inequalities_hold(lam),
    });
    match t.lemma5_check(lam) {
        Ok(b) => out["boundedByFour"] = json!(b),
        Err(TriangulationError::PreconditionViolated(why)) => {
            out["boundedByFour"] = Value::Null;
            out["boundedByFourSkipped"] = json!(why);
        }
        Err(TriangulationError::TooLarge(_)) => out["boundedByFour"] = Value::Null,
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

fn solver_config(v: Option<&Value>, ctx: &Context) -> CliResult<SolverConfig> {
    let mut cfg = SolverConfig::default();
    let set_tol = |cfg: &mut SolverConfig, t: f64| {
        cfg.tol_constraint = t;
        cfg.tol_energy = 1e-4 * t;
    };
    if let Some(t) = ctx.env_tolerance {
        set_tol(&mut cfg, t);
    }
    if let Some(c) = v {
        let num = |k: &str| -> CliResult<Option<f64>> {
            c.get(k).map(|x| json::parse_number(x).map(|n| n.to_f64())).transpose()
        };
        if let Some(x) = num("step")? {
            cfg.step = x;
        }
        if let Some(x) = num("tolConstraint")? {
            cfg.tol_constraint = x;
        }
        if let Some(x) = num("tolEnergy")? {
            cfg.tol_energy = x;
        }
        if let Some(x) = json::usize_field(c, "maxIters")? {
            cfg.max_iters = x;
        }
    }
    if let Some(t) = ctx.flag_tolerance {
        set_tol(&mut cfg, t);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn config_json(cfg: &SolverConfig) -> Value {
    json!({
        "step": json::float(cfg.step),
        "tolConstraint": json::float(cfg.tol_constraint),
        "tolEnergy": json::float(cfg.tol_energy),
        "maxIters": cfg.max_iters,
    })
}

/// Input `{"triangulation": .., "X": {edge: value}, "config": {..}}`.
pub fn solve(path: &Path, ctx: &Context) -> CliResult<Report> {
    let v = read_json(path)?;
    let doc = formats::parse_triangulation(v.get("triangulation").ok_or_else(|| CliError::validation("missing \"triangulation\""))?)?;
    let t = &doc.triangulation;
    let xs = json::parse_edge_values(v.get("X").ok_or_else(|| CliError::validation("missing \"X\""))?, t.num_edges(), "X")?;
    let x: Vec<f64> = xs.iter().map(Number::to_f64).collect();
    // exact coordinates get an exact cycle test
    let (method, passed) = match EdgeData::from_numbers(xs) {
        EdgeData::Exact(q) => ("exact", t.no_vanishing_cycle(&q).ok()),
        EdgeData::Float(_) => ("float with 1e-12 slack", t.no_vanishing_cycle(&x).ok()),
    };
    let cycle_check = json!({ "method": method, "passed": passed });
    let cfg = solver_config(v.get("config"), ctx)?;
    let sol = solve_arithmetic_problem(t, &x, &cfg)?;
    let back = t.simplicial_coords(&sol.lambda)?;
    let err = t
        .interior_edges()
        .map(|e| (back[e] - x[e]).abs() / x[e].abs().max(1.0))
        .fold(0.0, f64::max);
    let out = json!({
        "lambda": emit_edges(&sol.lambda),
        "iters": sol.iters,
        "finalEnergy": json::float(sol.final_energy),
        "maxCoordinateError": json::float(err),
        "zeroCoordinates": t.interior_edges().filter(|&e| x[e] == 0.0).collect::<Vec<_>>(),
        "cycleCheck": cycle_check,
        "config": config_json(&cfg),
    });
    Ok(Report { json: out, svg: triangulation_svg(t) })
}

fn random_points(n: usize, seed: u64) -> Vec<LightConePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
    angles.sort_by(f64::total_cmp);
    angles.iter().map(|&a| LightConePoint::from_angle(a, rng.gen_range(0.5..2.0))).collect()
}

pub fn hull(args: &HullArgs, ctx: &Context) -> CliResult<Report> {
    let (points, generated) = match (&args.input, args.random) {
        (Some(p), None) => (formats::parse_points(&read_json(p)?)?, false),
        (None, Some(n)) => (random_points(n, ctx.seed), true),
        _ => return Err(CliError::usage("give a points file or --random N, not both")),
    };
    let cell = convex_hull_cell(&points)?;
    let chords: Vec<(usize, usize)> = cell.iter().copied().collect();
    let mut out = json!({
        "n": points.len(),
        "cell": chords.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
    });
    if generated {
        out["seed"] = json!(ctx.seed);
        out["points"] = formats::points_json(&points)["points"].clone();
    }
    Ok(Report { json: out, svg: Some(svg::polygon_svg(points.len(), &chords)) })
}

pub fn delaunay(path: &Path) -> CliResult<Report> {
    let doc = read_triangulation(path)?;
    match doc.lambda()? {
        EdgeData::Exact(l) => delaunay_report(&doc.triangulation, l),
        EdgeData::Float(l) => delaunay_report(&doc.triangulation, l),
    }
}

fn delaunay_report<T: Emit>(t: &IdealTriangulation, lam: &[T]) -> CliResult<Report> {
    let res = t.delaunay_flip_search(lam)?;
    let x = res.triangulation.simplicial_coords(&res.lambda)?;
    let (nt, perm) = formats::normalize(&res.triangulation)?;
    let lam = formats::permute_edge_data(&T::into_data(res.lambda.clone()), &perm);
    let x = formats::permute_edge_data(&T::into_data(x), &perm);
    let mut arcs: Vec<usize> = res.arc_family.iter().map(|&e| perm[e]).collect();
    arcs.sort_unstable();
    let mut out = json!({
        "flips": res.flips,
        "arcFamily": arcs,
        "E": x.to_json(),
        "triangulation": formats::triangulation_json(&nt, Some(&lam)),
    });
    let svg = add_renumbered_diagonals(&mut out, &res.triangulation, &perm);
    Ok(Report { json: out, svg })
}

pub fn wp_form(path: &Path) -> CliResult<Report> {
    let doc = read_triangulation(path)?;
    let t = &doc.triangulation;
    let m = match &doc.lambda {
        Some(EdgeData::Exact(l)) => t.wp_form(l)?,
        Some(EdgeData::Float(l)) => t.wp_form(l)?,
        None => t.wp_form(&vec![1.0; t.num_edges()])?,
    };
    Ok(Report::json(json!({ "edges": t.num_edges(), "matrix": m })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_boundary_order() {
        let t = IdealTriangulation::polygon_fan(6);
        assert_eq!(polygon_order(&t), Some(vec![0, 1, 2, 3, 4, 5]));
        assert_eq!(polygon_order(&IdealTriangulation::punctured_torus()), None);
    }
}
