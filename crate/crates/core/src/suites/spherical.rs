use super::{height_table, show, SuiteOptions, SuiteReport, Tally};
use crate::coxeter::FiniteType;
use crate::error::Error;
use crate::homology::betti;
use crate::morse::build_registry;
use crate::spherical::{
    build_building, generic_pole, hemisphere_complexes, pole_at_barycenter, pole_at_vertex, realize, thick_descending_link, BuildingSpec,
};
use crate::zonotope::Richness;

/// Number of positive roots of the rank-2 and rank-1 models.
fn positive_roots(spec: &BuildingSpec) -> Option<u32> {
    match spec {
        BuildingSpec::A1 { .. } => Some(1),
        BuildingSpec::A2 { .. } => Some(3),
        BuildingSpec::C2 { .. } => Some(4),
        _ => None,
    }
}

fn thickness(spec: &BuildingSpec) -> Option<u32> {
    match spec {
        BuildingSpec::A1 { q } | BuildingSpec::A2 { q } | BuildingSpec::C2 { q } => Some(*q),
        _ => None,
    }
}

/// Whole buildings have homology only in the top degree, of rank `q^N`;
/// for rank 2 that rank is also `E - V + 1` of the connected incidence graph.
pub fn solomon_tits(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("solomon-tits");
    let mut specs: Vec<BuildingSpec> = vec![
        BuildingSpec::A2 { q: 2 },
        BuildingSpec::C2 { q: 2 },
        BuildingSpec::A2 { q: 3 },
        BuildingSpec::A1 { q: 2 },
        BuildingSpec::A1 { q: 3 },
        BuildingSpec::A1 { q: 5 },
    ];
    if let Some(q) = opts.q {
        for extra in [BuildingSpec::A1 { q }, BuildingSpec::A2 { q }, BuildingSpec::C2 { q }] {
            if !specs.contains(&extra) {
                specs.push(extra);
            }
        }
    }
    for spec in specs {
        let ctx = spec.to_string();
        let b = match build_building(&spec) {
            Err(Error::UnsupportedSpec(_)) if opts.q.is_some() => {
                t.note(format!("{ctx} skipped"), "no model of this thickness");
                continue;
            }
            r => r,
        };
        let Some(b) = t.check(&ctx, b) else { continue };
        let Some(axioms) = t.check(&ctx, b.check_axioms()) else { continue };
        t.add("axiom_checks", axioms as u64);
        let k = b.complex();
        let Some(r) = t.check(&ctx, betti(&k)) else { continue };
        t.betti(&ctx, &r);
        t.bump("buildings");
        let d = b.dim() as isize;
        let expected = thickness(&spec).zip(positive_roots(&spec)).map(|(q, n)| (q as usize).pow(n));
        let f = k.f_vector();
        let graph_rank = if d == 1 { Some(f[1] + 1 - f[0]) } else { None };
        let ok = r.is_spherical(d) && Some(r.b(d)) == expected && graph_rank.is_none_or(|g| g == r.b(d));
        if !ok {
            t.contradiction(format!("{ctx}: reduced Betti numbers {:?}, f-vector {f:?}, expected rank {expected:?} in degree {d}", r.reduced_betti));
        }
    }
    t.finish()
}

/// Closed and open hemisphere complexes for poles at a vertex, at a chamber
/// barycenter and in generic position.
pub fn hemispheres(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("hemispheres");
    t.seed(opts.seed);
    for name in ["A2(2)", "A2(3)", "C2(2)", "A1(2)*A1(2)"] {
        let spec: BuildingSpec = name.parse().expect("built-in spec");
        let Some(rb) = t.check(name, build_building(&spec).and_then(realize)) else { continue };
        let d = rb.building.dim() as isize;
        let poles = [
            ("vertex", pole_at_vertex(&rb.building, 0)),
            ("barycenter", pole_at_barycenter(&rb.building)),
            ("generic", generic_pole(&rb, opts.seed)),
        ];
        for (kind, pole) in poles {
            let ctx = format!("{name}, pole at {kind} {pole}");
            let Some(h) = t.check(&ctx, hemisphere_complexes(&rb, &pole)) else { continue };
            t.bump("poles");
            let vd = h.vertical_dim();
            let (Some(closed), Some(open)) = (t.check(&ctx, betti(&h.closed)), t.check(&ctx, betti(&h.open))) else { continue };
            t.betti(format!("{ctx} closed"), &closed);
            t.betti(format!("{ctx} open"), &open);
            if !(closed.is_spherical(d) && closed.b(d) > 0) {
                t.contradiction(format!("{ctx}: closed hemisphere complex has reduced Betti numbers {:?}", closed.reduced_betti));
            }
            if !(open.is_spherical(vd) && open.b(vd) > 0) {
                t.contradiction(format!("{ctx}: open hemisphere complex has reduced Betti numbers {:?}, vertical dimension {vd}", open.reduced_betti));
            }
            if !h.join_identity {
                t.contradiction(format!("{ctx}: the building is not the join of its horizontal and vertical parts"));
            }
            if !h.horizontal_factors.is_empty() {
                t.bump("with_horizontal_factor");
            }
        }
    }
    t.finish()
}

/// Descending links in thick links, assembled from thin heights moved along
/// retractions.
pub fn thick_desclinks(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("thick-desclinks");
    let q = opts.q.unwrap_or(2);
    let level = opts.richness.unwrap_or(Richness::AlmostRich);
    let r = opts.radius.unwrap_or(10);
    t.note("assumption", crate::spherical::THICK_HEIGHT_ASSUMPTION);

    // the tree: q lower neighbours out of q + 1, a wedge of q - 1 copies of S^0
    let ctx = format!("~A1 R={r} {level} q={q}");
    if let Some(reg) = t.check(&ctx, height_table(FiniteType::A1, r, level).and_then(|tb| build_registry(&tb).map(|g| (tb, g)))) {
        let (table, reg) = reg;
        for v in reg.positive().filter(|&v| reg.simplices[v].len() == 1) {
            let x = show(&table.patch.coords(&reg.simplices[v]));
            if !reg.eligible[v] {
                t.bump("tree_skipped_near_boundary");
                continue;
            }
            match thick_descending_link(&table, &reg, v, q) {
                Err(Error::InsufficientRadius(_)) => t.bump("tree_skipped_near_boundary"),
                Err(e) => t.error(&format!("{ctx} at {x}"), e),
                Ok(d) => {
                    t.bump("tree_vertices");
                    if !d.matches() || !d.report.is_spherical(0) || d.report.b(0) != q as usize - 1 {
                        t.contradiction(format!("{ctx}: descending link at {x} has reduced Betti numbers {:?}", d.report.reduced_betti));
                    }
                }
            }
        }
        if t.report.counter("tree_vertices") == 0 {
            t.fail(format!("{ctx}: no positive-height vertex has a computable link"));
        }
    }

    // Ã2: circles
    let ctx = format!("~A2 R={r} {level} q={q}");
    if let Err(e @ Error::UnsupportedSpec(_)) = build_building(&BuildingSpec::A2 { q }) {
        t.note("plane", &format!("skipped: {e}"));
        return t.finish();
    }
    if let Some((table, reg)) = t.check(&ctx, height_table(FiniteType::A2, r, level).and_then(|tb| build_registry(&tb).map(|g| (tb, g)))) {
        let mut top = false;
        for v in reg.positive().filter(|&v| reg.sigma_min[v] == Some(v)) {
            let x = show(&table.patch.coords(&reg.simplices[v]));
            match thick_descending_link(&table, &reg, v, q) {
                Err(Error::InsufficientRadius(_)) => t.bump("plane_skipped_near_boundary"),
                Err(e) => t.error(&format!("{ctx} at {x}"), e),
                Ok(d) => {
                    t.bump(match reg.simplices[v].len() {
                        1 => "plane_vertices",
                        2 => "plane_edges",
                        _ => "plane_triangles",
                    });
                    if d.report.b(1) > 0 {
                        top = true;
                    }
                    t.set_max("max_top_betti", d.report.b(1) as u64);
                    if !d.matches() || !d.report.is_spherical(1) {
                        t.contradiction(format!("{ctx}: descending link at {x} has reduced Betti numbers {:?}", d.report.reduced_betti));
                    }
                }
            }
        }
        let (nv, ne) = (t.report.counter("plane_vertices"), t.report.counter("plane_edges"));
        if nv < 5 || ne < 2 {
            t.fail(format!("{ctx}: only {nv} vertices and {ne} horizontal edges checked"));
        }
        if !top {
            t.fail(format!("{ctx}: no descending link with nonzero top homology"));
        }
    }
    t.finish()
}
