use arclab_core::operad::{
    associativity_check, equivariance_check, glue, parallel_associativity_check, unit_check, OperadError,
    RibbonArcDiagram,
};
use arclab_core::scalar::{ratio, Rational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::formats;
use crate::json::rational;
use crate::{read_json, svg, Context, OperadCommand, Report};

fn diagram_report(d: &RibbonArcDiagram) -> Value {
    let c = d.canonical();
    let (g, b) = c.topological_type();
    json!({
        "canonical": formats::diagram_json(&c),
        "arity": c.arity(),
        "arcs": c.num_arcs(),
        "type": { "genus": g, "boundaries": b },
        "boundaryWeights": (0..=c.arity()).map(|k| rational(&c.boundary_weight(k))).collect::<Vec<_>>(),
    })
}

fn weighted(v: &[(Rational, usize)]) -> Value {
    json!(v.iter().map(|(w, n)| json!({ "weight": rational(w), "count": n })).collect::<Vec<_>>())
}

fn named(name: &str) -> CliResult<RibbonArcDiagram> {
    Ok(match name {
        "identity" => RibbonArcDiagram::identity(),
        "bv" => RibbonArcDiagram::bv_half(),
        "dot" => RibbonArcDiagram::dot_product_half(),
        "star" => RibbonArcDiagram::star_product_half(),
        _ => return Err(CliError::usage(format!("unknown diagram {name:?}; try identity, bv, dot or star"))),
    })
}

fn random_diagram(rng: &mut ChaCha8Rng) -> RibbonArcDiagram {
    loop {
        let nb = rng.gen_range(2..=3);
        let na = rng.gen_range(1..=4);
        let mut slots: Vec<Vec<usize>> = vec![Vec::new(); nb];
        for a in 0..na {
            for _ in 0..2 {
                slots[rng.gen_range(0..nb)].push(a);
            }
        }
        for s in &mut slots {
            s.shuffle(rng);
        }
        let w = (0..na).map(|_| ratio(rng.gen_range(1..=8), rng.gen_range(1..=8))).collect();
        if let Ok(d) = RibbonArcDiagram::validate(slots, w) {
            return d;
        }
    }
}

fn random_perm(rng: &mut ChaCha8Rng, arity: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=arity).collect();
    p.shuffle(rng);
    p.insert(0, 0);
    p
}

/// One axiom case; `Ok(None)` on success, otherwise the failed law.
fn axiom_case(seed: u64, case: usize) -> Result<Option<Value>, OperadError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case as u64);
    let (a, b, c) = (random_diagram(&mut rng), random_diagram(&mut rng), random_diagram(&mut rng));
    let i = rng.gen_range(1..=a.arity());
    let j = rng.gen_range(1..=b.arity());
    let fail = |law: &str| {
        Some(json!({
            "case": case,
            "law": law,
            "a": formats::diagram_json(&a),
            "b": formats::diagram_json(&b),
            "c": formats::diagram_json(&c),
            "i": i,
            "j": j,
        }))
    };
    if !glue(&a, i, &b)?.seam_balanced() {
        return Ok(fail("seam balance"));
    }
    if !unit_check(&a)? {
        return Ok(fail("unit"));
    }
    if !associativity_check(&a, &b, &c, i, j)? {
        return Ok(fail("associativity"));
    }
    if a.arity() >= 2 {
        let k = rng.gen_range(2..=a.arity());
        let i2 = rng.gen_range(1..k);
        if !parallel_associativity_check(&a, &b, &c, i2, k)? {
            return Ok(fail("parallel associativity"));
        }
    }
    let (sigma, tau) = (random_perm(&mut rng, a.arity()), random_perm(&mut rng, b.arity()));
    if !equivariance_check(&a, i, &b, &sigma, &tau)? {
        return Ok(fail("equivariance"));
    }
    Ok(None)
}

pub fn operad(cmd: &OperadCommand, ctx: &Context) -> CliResult<Report> {
    match cmd {
        OperadCommand::Show(a) => {
            let d = formats::parse_diagram(&read_json(&a.input)?)?;
            Ok(Report { json: diagram_report(&d), svg: Some(svg::diagram_svg(&d.canonical())) })
        }
        OperadCommand::Named { name } => {
            let d = named(name)?;
            Ok(Report { json: diagram_report(&d), svg: Some(svg::diagram_svg(&d)) })
        }
        OperadCommand::Glue { x, i, y } => {
            let (x, y) = (formats::parse_diagram(&read_json(x)?)?, formats::parse_diagram(&read_json(y)?)?);
            let r = glue(&x, *i, &y)?;
            let mut out = diagram_report(&r.diagram);
            out["seamWeight"] = rational(&r.seam_weight);
            out["subBands"] = weighted(&r.sub_bands);
            out["annuli"] = weighted(&r.annuli);
            out["inessential"] = json!(r.inessential.iter().map(rational).collect::<Vec<_>>());
            out["seamBalanced"] = json!(r.seam_balanced());
            Ok(Report { json: out, svg: Some(svg::diagram_svg(&r.diagram)) })
        }
        OperadCommand::Axioms { cases } => {
            let results: Vec<Result<Option<Value>, OperadError>> =
                ctx.pool()?.install(|| (0..*cases).into_par_iter().map(|k| axiom_case(ctx.seed, k)).collect());
            let mut failures = Vec::new();
            for r in results {
                if let Some(f) = r? {
                    failures.push(f);
                }
            }
            if !failures.is_empty() {
                return Err(CliError::validation(format!("{} of {cases} cases failed", failures.len()))
                    .with_details(json!({ "failures": failures })));
            }
            Ok(Report::json(json!({ "cases": cases, "seed": ctx.seed, "passed": true })))
        }
    }
}
