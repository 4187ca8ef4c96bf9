//! File formats: triangulations, light-cone points, arc diagrams, fatgraphs,
//! simplicial complexes (all JSON) and bondings (plain text).

use std::collections::BTreeSet;

use arclab_core::arc_complex::SimplicialComplex;
use arclab_core::fatgraph::Fatgraph;
use arclab_core::geom::{LightConePoint, MinkowskiVector};
use arclab_core::operad::RibbonArcDiagram;
use arclab_core::rna::{Bonding, Side};
use arclab_core::scalar::Rational;
use arclab_core::triangulation::{GluingSpec, IdealTriangulation};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::json::{self, EdgeData, Number};

/// A triangulation with an optional decoration.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangulationDoc {
    pub triangulation: IdealTriangulation,
    pub lambda: Option<EdgeData>,
}

impl TriangulationDoc {
    pub fn lambda(&self) -> CliResult<&EdgeData> {
        self.lambda.as_ref().ok_or_else(|| CliError::validation("the triangulation has no \"lambda\" decoration"))
    }
}

/// Slot `3t + k` is side `k` of triangle `t`; interior edges are glued in
/// edge-id order.
pub fn gluing_spec(t: &IdealTriangulation) -> GluingSpec {
    let slot = |s: arclab_core::triangulation::Side| (3 * s.triangle + s.index) as u64;
    let triangles = (0..t.num_triangles()).map(|i| [0, 1, 2].map(|k| (3 * i + k) as u64)).collect();
    let mut gluing = Vec::new();
    let mut bordered = false;
    for e in 0..t.num_edges() {
        match t.edge_sides(e) {
            [a, b] => gluing.push((slot(*a), slot(*b), false)),
            _ => bordered = true,
        }
    }
    GluingSpec { triangles, gluing, bordered }
}

/// Renumbers edges the way [`parse_triangulation`] would: glued edges first,
/// then boundary edges in order of appearance. Returns `perm[old] = new`.
pub fn normalize(t: &IdealTriangulation) -> CliResult<(IdealTriangulation, Vec<usize>)> {
    let n = IdealTriangulation::from_gluing(&gluing_spec(t))?;
    let mut perm = vec![usize::MAX; t.num_edges()];
    for tri in 0..t.num_triangles() {
        for (a, b) in t.triangle_edges(tri).into_iter().zip(n.triangle_edges(tri)) {
            perm[a] = b;
        }
    }
    Ok((n, perm))
}

fn permute<T: Clone>(values: &[T], perm: &[usize]) -> Vec<T> {
    let mut out = values.to_vec();
    for (old, &new) in perm.iter().enumerate() {
        out[new] = values[old].clone();
    }
    out
}

pub fn permute_edge_data(d: &EdgeData, perm: &[usize]) -> EdgeData {
    match d {
        EdgeData::Exact(v) => EdgeData::Exact(permute(v, perm)),
        EdgeData::Float(v) => EdgeData::Float(permute(v, perm)),
    }
}

fn preset(v: &Value) -> CliResult<IdealTriangulation> {
    let name = v["preset"].as_str().ok_or_else(|| CliError::validation("\"preset\" must be a string"))?;
    let t = match name {
        "torus" | "punctured-torus" => IdealTriangulation::punctured_torus(),
        "sphere" | "four-punctured-sphere" => IdealTriangulation::four_punctured_sphere(),
        "polygon" => {
            let n = json::usize_field(v, "n")?.ok_or_else(|| CliError::validation("polygon preset needs \"n\""))?;
            match v.get("diagonals") {
                None | Some(Value::Null) => {
                    if n < 3 {
                        return Err(CliError::validation("a polygon needs n >= 3"));
                    }
                    IdealTriangulation::polygon_fan(n)
                }
                Some(d) => {
                    let diags = pairs(d, "diagonals")?;
                    IdealTriangulation::polygon(n, &diags)?
                }
            }
        }
        other => return Err(CliError::validation(format!("unknown preset {other:?}"))),
    };
    Ok(normalize(&t)?.0)
}

fn pairs(v: &Value, what: &str) -> CliResult<Vec<(usize, usize)>> {
    v.as_array()
        .ok_or_else(|| CliError::validation(format!("{what}: expected an array of pairs")))?
        .iter()
        .map(|p| match json::u64_list(p, what)?.as_slice() {
            [a, b] => Ok((*a as usize, *b as usize)),
            _ => Err(CliError::validation(format!("{what}: expected pairs"))),
        })
        .collect()
}

/// `{"triangles": [[slot; 3]], "gluing": [[slot, slot]], "lambda": {...}}`,
/// or `{"preset": "torus" | "sphere" | "polygon", "n": .., "diagonals": ..}`.
/// Unpaired slots become boundary edges. A third gluing entry `true` marks
/// a twisted (orientation-preserving) gluing, which is rejected.
pub fn parse_triangulation(v: &Value) -> CliResult<TriangulationDoc> {
    let triangulation = if v.get("preset").is_some() {
        preset(v)?
    } else {
        let tris = v
            .get("triangles")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::validation("triangulation needs \"triangles\" or \"preset\""))?;
        let triangles = tris
            .iter()
            .map(|t| {
                json::u64_list(t, "triangles")?
                    .try_into()
                    .map_err(|_| CliError::validation("every triangle lists three slots"))
            })
            .collect::<CliResult<Vec<[u64; 3]>>>()?;
        let mut gluing = Vec::new();
        for g in v.get("gluing").and_then(Value::as_array).map(Vec::as_slice).unwrap_or_default() {
            let a = g.as_array().ok_or_else(|| CliError::validation("gluing: expected [slot, slot]"))?;
            let slot = |x: &Value| x.as_u64().ok_or_else(|| CliError::validation("gluing: slots are integers"));
            match a.as_slice() {
                [s, t] => gluing.push((slot(s)?, slot(t)?, false)),
                [s, t, Value::Bool(tw)] => gluing.push((slot(s)?, slot(t)?, *tw)),
                _ => return Err(CliError::validation("gluing: expected [slot, slot] or [slot, slot, twisted]")),
            }
        }
        IdealTriangulation::from_gluing(&GluingSpec { triangles, gluing, bordered: true })?
    };
    let lambda = match v.get("lambda") {
        None | Some(Value::Null) => None,
        Some(l) => {
            let d = EdgeData::from_numbers(json::parse_edge_values(l, triangulation.num_edges(), "lambda")?);
            match &d {
                EdgeData::Exact(x) => triangulation.check_decoration(x)?,
                EdgeData::Float(x) => triangulation.check_decoration(x)?,
            }
            Some(d)
        }
    };
    Ok(TriangulationDoc { triangulation, lambda })
}

/// Inverse of [`parse_triangulation`] for normalized triangulations.
pub fn triangulation_json(t: &IdealTriangulation, lambda: Option<&EdgeData>) -> Value {
    let spec = gluing_spec(t);
    let mut out = json!({
        "triangles": spec.triangles,
        "gluing": spec.gluing.iter().map(|(a, b, _)| [a, b]).collect::<Vec<_>>(),
    });
    if let Some(l) = lambda {
        out["lambda"] = l.to_json();
    }
    out
}

pub fn topology_json(t: &IdealTriangulation) -> Value {
    let top = t.topology();
    json!({
        "genus": top.genus,
        "punctures": top.punctures,
        "boundaryComponents": top.boundary_components,
        "boundaryVertices": top.boundary_vertices,
        "eulerCharacteristic": top.euler_characteristic,
        "edges": t.num_edges(),
        "triangles": t.num_triangles(),
    })
}

/// `{"points": [[x, y, z], ...]}` or `{"angles": [[theta, r], ...]}`.
pub fn parse_points(v: &Value) -> CliResult<Vec<LightConePoint>> {
    let floats = |p: &Value, n: usize, what: &str| -> CliResult<Vec<f64>> {
        let a = p.as_array().filter(|a| a.len() == n);
        let a = a.ok_or_else(|| CliError::validation(format!("{what}: expected {n} numbers per point")))?;
        a.iter().map(|x| json::parse_number(x).map(|n| n.to_f64())).collect()
    };
    if let Some(ps) = v.get("points").and_then(Value::as_array) {
        ps.iter()
            .map(|p| {
                let c = floats(p, 3, "points")?;
                Ok(LightConePoint::new(MinkowskiVector::new(c[0], c[1], c[2]))?)
            })
            .collect()
    } else if let Some(ps) = v.get("angles").and_then(Value::as_array) {
        ps.iter()
            .map(|p| {
                let c = floats(p, 2, "angles")?;
                if !(c[1] > 0.0) {
                    return Err(CliError::validation("angles: radius must be positive"));
                }
                Ok(LightConePoint::from_angle(c[0], c[1]))
            })
            .collect()
    } else {
        Err(CliError::validation("expected \"points\" or \"angles\""))
    }
}

pub fn points_json(points: &[LightConePoint]) -> Value {
    json!({
        "points": points.iter().map(|p| {
            let v = p.vector();
            vec![json::float(v.x), json::float(v.y), json::float(v.z)]
        }).collect::<Vec<_>>()
    })
}

/// `{"boundaries": [[slot, ...]], "arcs": [[slot, slot, num, den]]}`.
/// Boundary 0 is the output boundary.
pub fn parse_diagram(v: &Value) -> CliResult<RibbonArcDiagram> {
    let bounds = v
        .get("boundaries")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::validation("diagram needs \"boundaries\""))?
        .iter()
        .map(|b| json::u64_list(b, "boundaries"))
        .collect::<CliResult<Vec<_>>>()?;
    let arcs = v
        .get("arcs")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::validation("diagram needs \"arcs\""))?
        .iter()
        .map(|a| {
            let a = a.as_array().ok_or_else(|| CliError::validation("arcs: expected arrays"))?;
            let slot = |x: &Value| x.as_u64().ok_or_else(|| CliError::validation("arcs: slots are integers"));
            let w = match a.as_slice() {
                [_, _, num, den] => json::make_rational(json::parse_bigint(num)?, json::parse_bigint(den)?)?,
                [_, _, w] => match json::parse_number(w)? {
                    Number::Exact(q) => q,
                    Number::Float(_) => return Err(CliError::validation("arcs: weights must be exact")),
                },
                _ => return Err(CliError::validation("arcs: expected [slot, slot, num, den]")),
            };
            Ok((slot(&a[0])?, slot(&a[1])?, w))
        })
        .collect::<CliResult<Vec<(u64, u64, Rational)>>>()?;
    Ok(RibbonArcDiagram::from_slots(&bounds, &arcs)?)
}

pub fn diagram_json(d: &RibbonArcDiagram) -> Value {
    let (bounds, arcs) = d.to_slots();
    json!({
        "boundaries": bounds,
        "arcs": arcs.iter().map(|(s, t, w)| json!([s, t, json::int(w.numer()), json::int(w.denom())])).collect::<Vec<_>>(),
    })
}

/// A bonding file: header `m=<int>`, then one bond `i j` per line with an
/// optional `side=a|b` (above or below the backbone). `#` starts a comment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BondingDoc {
    pub bonding: Bonding,
    /// Per-site tags when any bond carries a side; both ends of a bond get
    /// its tag and unbonded sites are above.
    pub sides: Option<Vec<Side>>,
}

pub fn parse_bonding(text: &str) -> CliResult<BondingDoc> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or_else(|| CliError::validation("empty bonding file"))?;
    let m: usize = header
        .strip_prefix("m=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| CliError::validation(format!("expected header \"m=<int>\", got {header:?}")))?;
    let mut pairs = Vec::new();
    let mut tags = Vec::new();
    for (k, line) in lines {
        let bad = || CliError::validation(format!("line {k}: expected \"i j [side=a|b]\", got {line:?}"));
        let toks: Vec<&str> = line.split_whitespace().collect();
        let (i, j, side) = match toks.as_slice() {
            [i, j] => (i, j, None),
            [i, j, s] => (i, j, Some(*s)),
            _ => return Err(bad()),
        };
        let i: usize = i.parse().map_err(|_| bad())?;
        let j: usize = j.parse().map_err(|_| bad())?;
        let side = match side {
            None => None,
            Some("side=a") => Some(Side::Above),
            Some("side=b") => Some(Side::Below),
            Some(_) => return Err(bad()),
        };
        pairs.push((i, j));
        tags.push(side);
    }
    let bonding = Bonding::new(m, &pairs)?;
    let sides = tags.iter().any(Option::is_some).then(|| {
        let mut s = vec![Side::Above; m + 1];
        for (&(i, j), t) in pairs.iter().zip(&tags) {
            let t = t.unwrap_or(Side::Above);
            s[i] = t;
            s[j] = t;
        }
        s
    });
    Ok(BondingDoc { bonding, sides })
}

pub fn bonding_text(doc: &BondingDoc) -> String {
    let mut out = format!("m={}\n", doc.bonding.m());
    for &(i, j) in doc.bonding.bonds() {
        match &doc.sides {
            None => out.push_str(&format!("{i} {j}\n")),
            Some(s) => {
                let tag = if s[i] == Side::Below { "b" } else { "a" };
                out.push_str(&format!("{i} {j} side={tag}\n"));
            }
        }
    }
    out
}

/// `{"rotations": [[half-edge, ...]], "pairing": [[h1, h2]], "weights": {..},
/// "relaxed": false}`. Edge `e` is the `e`-th pair.
#[derive(Debug, Clone, PartialEq)]
pub struct FatgraphDoc {
    pub graph: Fatgraph,
    pub weights: Option<Vec<f64>>,
    pub relaxed: bool,
}

pub fn parse_fatgraph(v: &Value) -> CliResult<FatgraphDoc> {
    let rotations = v
        .get("rotations")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::validation("fatgraph needs \"rotations\""))?
        .iter()
        .map(|r| Ok(json::u64_list(r, "rotations")?.into_iter().map(|h| h as usize).collect()))
        .collect::<CliResult<Vec<Vec<usize>>>>()?;
    let pairing = pairs(v.get("pairing").ok_or_else(|| CliError::validation("fatgraph needs \"pairing\""))?, "pairing")?;
    let relaxed = v.get("relaxed").and_then(Value::as_bool).unwrap_or(false);
    let graph = Fatgraph::new(rotations, pairing, relaxed)?;
    let weights = match v.get("weights") {
        None | Some(Value::Null) => None,
        Some(w) => Some(json::parse_edge_values(w, graph.num_edges(), "weights")?.iter().map(Number::to_f64).collect()),
    };
    Ok(FatgraphDoc { graph, weights, relaxed })
}

pub fn fatgraph_json(g: &Fatgraph, relaxed: bool) -> Value {
    let mut out = json!({
        "rotations": g.rotations(),
        "pairing": g.edges().iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(),
    });
    if relaxed {
        out["relaxed"] = json!(true);
    }
    out
}

/// `{"facets": [[vertex, ...]]}`.
pub fn parse_complex(v: &Value) -> CliResult<SimplicialComplex> {
    let facets = v
        .get("facets")
        .and_then(Value::as_array)
        .ok_or_else(|| CliError::validation("complex needs \"facets\""))?
        .iter()
        .map(|f| {
            let f = json::u64_list(f, "facets")?;
            if f.is_empty() || f.iter().collect::<BTreeSet<_>>().len() != f.len() {
                return Err(CliError::validation("facets must be nonempty sets of vertices"));
            }
            f.into_iter()
                .map(|x| u32::try_from(x).map_err(|_| CliError::validation("vertex id too large")))
                .collect()
        })
        .collect::<CliResult<Vec<Vec<u32>>>>()?;
    Ok(SimplicialComplex::from_facets(facets))
}

pub fn complex_json(k: &SimplicialComplex) -> Value {
    json!({ "facets": k.facets() })
}
