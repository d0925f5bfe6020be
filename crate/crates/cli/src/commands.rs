use std::fs;
use std::path::Path;

use serde_json::{json, Value};
use zonomorse::coxeter::{generate_patch, FiniteType, TypeTag};
use zonomorse::error::{Error, Result};
use zonomorse::homology::{betti, BettiReport, SimplicialComplex, PROXY_CAVEAT};
use zonomorse::morse::{build_registry, descending_link, descending_link_available, sub_morse, subdivide, HeightTable, HorizontalRegistry};
use zonomorse::scalar::Vector;
use zonomorse::spherical::{
    build_building, expected_chambers, generic_pole, hemisphere_complexes, pole_at_barycenter, pole_at_vertex, realize, thick_descending_link, AngleClass,
    BuildingSpec, THICK_HEIGHT_ASSUMPTION,
};
use zonomorse::suites::{generators_for, height_table, run_suite, SuiteReport, Status};
use zonomorse::zonotope::{Richness, Zonotope};

use crate::config::{Scenario, SCHEMA_VERSION};
use crate::render::Output;

fn show(vs: &[Vector]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn list<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    parts.join(" ")
}

pub fn patch(t: FiniteType, radius: usize) -> Result<Output> {
    let p = generate_patch(TypeTag::affine(t), radius)?;
    let mut f = vec![0usize; p.dim() + 1];
    for s in &p.simplices {
        f[s.len() - 1] += 1;
    }
    let vertices: Vec<Value> = (0..p.vertices.len())
        .map(|v| json!({"id": v, "coords": p.vertices[v], "type": p.vertex_type[v], "special": p.special[v]}))
        .collect();
    let mut out = Output::new(
        json!({"type": TypeTag::affine(t).to_string(), "radius": radius, "alcoves": p.alcoves.len(), "f_vector": f, "vertices": vertices}),
        vec!["id", "coords", "type", "special", "star_complete"],
    );
    for v in 0..p.vertices.len() {
        out.row(vec![v.to_string(), p.vertices[v].to_string(), p.vertex_type[v].to_string(), p.special[v].to_string(), p.star_complete(&[v]).to_string()]);
    }
    Ok(out)
}

pub fn zonotope(t: FiniteType, level: Richness) -> Result<Output> {
    let g = generators_for(t, level)?;
    let ambient = generate_patch(TypeTag::affine(t), 1)?.system.ambient;
    let z = Zonotope::new_in(ambient, &g.vectors)?;
    let facets: Vec<Value> = z.facets.iter().map(|f| json!({"normal": f.wall.normal, "offset": f.wall.offset.to_string()})).collect();
    let mut out = Output::new(
        json!({
            "type": TypeTag::affine(t).to_string(),
            "richness": level,
            "generators": g.vectors,
            "w_invariant": g.w_invariant,
            "lines": z.lines,
            "vertices": z.vertices,
            "facets": facets,
        }),
        vec!["vertex", "coords"],
    );
    for (i, v) in z.vertices.iter().enumerate() {
        out.row(vec![i.to_string(), v.to_string()]);
    }
    Ok(out)
}

fn registry_summary(table: &HeightTable, reg: &HorizontalRegistry) -> Value {
    let reliable_max = reg.positive().filter(|&i| reg.reliable[i]).map(|i| reg.dp[i]).max().unwrap_or(0);
    json!({
        "horizontal_simplices": reg.len(),
        "positive_height": reg.positive().count(),
        "eligible": reg.positive().filter(|&i| reg.eligible[i]).count(),
        "reliable": reg.positive().filter(|&i| reg.reliable[i]).count(),
        "max_depth": reg.max_dp(),
        "max_reliable_depth": reliable_max,
        "patch_simplices": table.patch.simplices.len(),
    })
}

pub fn morse(t: FiniteType, radius: usize, level: Richness) -> Result<Output> {
    let table = height_table(t, radius, level)?;
    let reg = build_registry(&table)?;
    let horizontal: Vec<Value> = (0..reg.len())
        .map(|i| {
            json!({
                "carrier": table.patch.coords(&reg.simplices[i]),
                "h2": reg.h2[i].to_string(),
                "sigma_min": reg.sigma_min[i].map(|m| table.patch.coords(&reg.simplices[m])),
                "depth": reg.dp[i],
                "reliable": reg.reliable[i],
            })
        })
        .collect();
    let heights: Vec<Value> = (0..table.patch.vertices.len())
        .map(|v| json!({"coords": table.patch.vertices[v], "h2": table.h2[v].to_string(), "projection": table.proj[v]}))
        .collect();
    let mut out = Output::new(
        json!({
            "type": TypeTag::affine(t).to_string(),
            "radius": radius,
            "richness": level,
            "summary": registry_summary(&table, &reg),
            "heights": heights,
            "horizontal": horizontal,
        }),
        vec!["vertex", "coords", "h2", "gradient"],
    );
    for v in 0..table.patch.vertices.len() {
        let g = table.vertex_gradient(v).map(|g| g.to_string()).unwrap_or_default();
        out.row(vec![v.to_string(), table.patch.vertices[v].to_string(), table.h2[v].to_string(), g]);
    }
    Ok(out)
}

pub fn subdivide_cmd(t: FiniteType, radius: usize, level: Richness) -> Result<Output> {
    let table = height_table(t, radius, level)?;
    let reg = build_registry(&table)?;
    let sub = subdivide(&table, &reg)?;
    let mut out = Output::new(
        json!({
            "type": TypeTag::affine(t).to_string(),
            "radius": radius,
            "richness": level,
            "summary": registry_summary(&table, &reg),
            "f_vector": sub.complex.f_vector(),
            "flag": sub.complex.is_flag(),
            "maximal_simplices": sub.maximal.len(),
        }),
        vec!["vertex", "carrier", "h2", "depth", "dim"],
    );
    for v in 0..reg.len() {
        let m = sub_morse(&reg, v);
        out.row(vec![v.to_string(), show(&table.patch.coords(&reg.simplices[v])), m.h2.to_string(), m.dp.to_string(), m.dim.to_string()]);
    }
    Ok(out)
}

pub fn desclinks(t: FiniteType, radius: usize, level: Richness, q: Option<u32>) -> Result<Output> {
    let table = height_table(t, radius, level)?;
    let reg = build_registry(&table)?;
    let mut links = Vec::new();
    let mut out = Output::new(Value::Null, vec!["carrier", "h2", "depth", "dim", "own_minimal_face", "matches", "reduced_betti"]);
    let mut skipped = 0;
    match q {
        None => {
            let sub = subdivide(&table, &reg)?;
            for v in reg.positive() {
                if !descending_link_available(&table, &reg, &sub, v) {
                    skipped += 1;
                    continue;
                }
                let d = descending_link(&table, &reg, &sub, v)?;
                let b = betti(&d.direct)?;
                let carrier = table.patch.coords(&reg.simplices[v]);
                out.row(vec![
                    show(&carrier),
                    d.value.h2.to_string(),
                    d.value.dp.to_string(),
                    d.value.dim.to_string(),
                    d.sigma_is_min.to_string(),
                    d.matches().to_string(),
                    list(&b.reduced_betti),
                ]);
                links.push(json!({"carrier": carrier, "value": d.value, "own_minimal_face": d.sigma_is_min, "matches": d.matches(), "betti": b}));
            }
        }
        Some(q) => {
            for v in reg.positive().filter(|&v| reg.sigma_min[v] == Some(v)) {
                let d = match thick_descending_link(&table, &reg, v, q) {
                    Err(Error::InsufficientRadius(_)) => {
                        skipped += 1;
                        continue;
                    }
                    r => r?,
                };
                let m = sub_morse(&reg, v);
                let carrier = table.patch.coords(&reg.simplices[v]);
                out.row(vec![
                    show(&carrier),
                    m.h2.to_string(),
                    m.dp.to_string(),
                    m.dim.to_string(),
                    "true".into(),
                    d.matches().to_string(),
                    list(&d.report.reduced_betti),
                ]);
                let factors: Vec<String> = d.factors.iter().map(|f| f.spec.to_string()).collect();
                links.push(json!({"carrier": carrier, "value": m, "thick_factors": factors, "matches": d.matches(), "betti": d.report}));
            }
        }
    }
    let mut assumptions = vec![PROXY_CAVEAT];
    if q.is_some() {
        assumptions.push(THICK_HEIGHT_ASSUMPTION);
    }
    out.structured = json!({
        "type": TypeTag::affine(t).to_string(),
        "radius": radius,
        "richness": level,
        "q": q,
        "skipped_incomplete": skipped,
        "links": links,
        "assumptions": assumptions,
    });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PoleKind {
    Vertex,
    Barycenter,
    Generic,
    All,
}

fn betti_json(label: &str, r: &BettiReport, out: &mut Output) -> Value {
    out.row(vec![label.to_string(), list(&r.f_vector), list(&r.reduced_betti), format!("{:?}", r.verdict)]);
    json!(r)
}

pub fn spherical(spec: &BuildingSpec, pole: PoleKind, vertex_type: usize, seed: u64) -> Result<Output> {
    let b = build_building(spec)?;
    if vertex_type >= b.rank {
        return Err(Error::InvalidConfig(format!("vertex type {vertex_type} out of range for rank {}", b.rank)));
    }
    let axioms = b.check_axioms()?;
    let rb = realize(b)?;
    let mut out = Output::new(Value::Null, vec!["complex", "f_vector", "reduced_betti", "verdict"]);
    let whole = betti_json("building", &betti(&rb.building.complex())?, &mut out);
    let kinds = match pole {
        PoleKind::All => vec![PoleKind::Vertex, PoleKind::Barycenter, PoleKind::Generic],
        k => vec![k],
    };
    let mut poles = Vec::new();
    for k in kinds {
        let (name, p) = match k {
            PoleKind::Vertex => ("vertex", pole_at_vertex(&rb.building, vertex_type)),
            PoleKind::Barycenter => ("barycenter", pole_at_barycenter(&rb.building)),
            _ => ("generic", generic_pole(&rb, seed)),
        };
        let h = hemisphere_complexes(&rb, &p)?;
        let count = |c| h.pole.classes.iter().filter(|&&x| x == c).count();
        let closed = betti_json(&format!("closed hemisphere, pole at {name}"), &betti(&h.closed)?, &mut out);
        let open = betti_json(&format!("open hemisphere, pole at {name}"), &betti(&h.open)?, &mut out);
        poles.push(json!({
            "kind": name,
            "pole": p,
            "acute": count(AngleClass::Acute),
            "equatorial": count(AngleClass::Equatorial),
            "obtuse": count(AngleClass::Obtuse),
            "horizontal_factors": h.horizontal_factors,
            "vertical_factors": h.vertical_factors,
            "vertical_dim": h.vertical_dim(),
            "join_identity": h.join_identity,
            "closed": closed,
            "open": open,
        }));
    }
    out.structured = json!({
        "building": spec.to_string(),
        "chambers": rb.building.chambers.len(),
        "expected_chambers": expected_chambers(spec),
        "vertices": rb.building.vertex_type.len(),
        "axiom_checks": axioms,
        "homology": whole,
        "poles": poles,
        "seed": seed,
        "assumptions": [PROXY_CAVEAT],
    });
    Ok(out)
}

/// Homology of a building or of a complex given as a JSON list of simplices.
pub fn homology(spec: Option<&BuildingSpec>, complex: Option<&Path>) -> Result<Output> {
    let k = match (spec, complex) {
        (Some(s), None) => build_building(s)?.complex(),
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| Error::InvalidConfig(format!("{}: {e}", p.display())))?;
            let simplices: Vec<Vec<usize>> = serde_json::from_str(&text).map_err(|e| Error::InvalidConfig(format!("{}: {e}", p.display())))?;
            SimplicialComplex::from_maximal(simplices)
        }
        _ => return Err(Error::InvalidConfig("give exactly one of --building and --complex".into())),
    };
    let r = betti(&k)?;
    let mut out = Output::new(json!(r), vec!["degree", "reduced_betti"]);
    for (i, b) in r.reduced_betti.iter().enumerate() {
        out.row(vec![(i as i64 - 1).to_string(), b.to_string()]);
    }
    Ok(out)
}

pub fn worst(reports: &[SuiteReport]) -> Status {
    reports.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
}

/// Runs the scenario's suites and assembles the report.
pub fn run(s: &Scenario) -> Result<(Output, Vec<SuiteReport>)> {
    let mut reports = Vec::new();
    for name in &s.suites {
        reports.push(run_suite(name, &s.options)?);
    }
    let mut out = Output::new(
        json!({
            "schema_version": SCHEMA_VERSION,
            "config": s.config,
            "options": s.options,
            "suites": reports,
            "status": worst(&reports),
            "assumptions": [THICK_HEIGHT_ASSUMPTION, PROXY_CAVEAT],
        }),
        vec!["suite", "section", "key", "value"],
    );
    for r in &reports {
        out.row(vec![r.name.clone(), "status".into(), String::new(), serde_json::to_value(r.status).unwrap().as_str().unwrap_or_default().to_string()]);
        for (k, v) in &r.counters {
            out.row(vec![r.name.clone(), "counter".into(), k.clone(), v.to_string()]);
        }
        for (k, v) in &r.observations {
            out.row(vec![r.name.clone(), "observation".into(), k.clone(), v.clone()]);
        }
        for b in &r.betti {
            out.row(vec![r.name.clone(), "betti".into(), b.label.clone(), list(&b.reduced_betti)]);
        }
        for w in &r.witnesses {
            out.row(vec![r.name.clone(), "witness".into(), String::new(), w.clone()]);
        }
    }
    Ok((out, reports))
}
