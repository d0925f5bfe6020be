use num_traits::Zero;

use super::{height_table, show, SuiteOptions, SuiteReport, Tally};
use crate::coxeter::FiniteType;
use crate::homology::betti;
use crate::morse::{build_registry, descending_link, descending_link_available, filtration_check, sub_morse, subdivide, HeightTable, HorizontalRegistry};
use crate::zonotope::Richness;

fn default_radius(t: FiniteType) -> usize {
    match t {
        FiniteType::A1 => 10,
        FiniteType::A2 => 10,
        FiniteType::G2 => 24,
        _ => 12,
    }
}

fn plan(opts: &SuiteOptions, types: &[FiniteType]) -> Vec<(FiniteType, usize)> {
    let ts = opts.types.clone().unwrap_or_else(|| types.to_vec());
    ts.into_iter().map(|t| (t, opts.radius.unwrap_or_else(|| default_radius(t)))).collect()
}

fn setup(t: &mut Tally, ctx: &str, ty: FiniteType, r: usize, level: Richness) -> Option<(HeightTable, HorizontalRegistry)> {
    let table = t.check(ctx, height_table(ty, r, level))?;
    let reg = t.check(ctx, build_registry(&table))?;
    Some((table, reg))
}

fn max_reliable_dp(reg: &HorizontalRegistry) -> usize {
    reg.positive().filter(|&i| reg.reliable[i]).map(|i| reg.dp[i]).max().unwrap_or(0)
}

/// Minimal faces exist uniquely and wedge, moves are acyclic, and depths
/// do not change when the patch grows by one layer.
pub fn depth(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("depth");
    let level = opts.richness.unwrap_or(Richness::AlmostRich);
    for (ty, r) in plan(opts, &[FiniteType::A2, FiniteType::C2, FiniteType::G2]) {
        let ctx = format!("~{ty} R={r} {level}");
        let Some((table, reg)) = setup(&mut t, &ctx, ty, r, level) else { continue };
        let ctx1 = format!("~{ty} R={} {level}", r + 1);
        let Some((table1, reg1)) = setup(&mut t, &ctx1, ty, r + 1, level) else { continue };
        let pos: Vec<usize> = reg.positive().collect();
        t.add("horizontal_simplices", reg.len() as u64);
        t.add("positive_height", pos.len() as u64);
        t.add("minimal_faces", pos.iter().filter(|&&i| reg.sigma_min[i].is_some()).count() as u64);
        t.add("proper_minimal_faces", pos.iter().filter(|&&i| reg.sigma_min[i].is_some_and(|m| m != i)).count() as u64);
        t.add("moves", reg.moves.iter().map(|m| m.len() as u64).sum());
        t.add("reliable", pos.iter().filter(|&&i| reg.reliable[i]).count() as u64);
        let (m0, m1) = (max_reliable_dp(&reg), max_reliable_dp(&reg1));
        t.note(format!("{ctx} max depth"), m0);
        t.note(format!("{ctx1} max depth"), m1);
        t.set_max("max_depth", m0 as u64);
        if m0 != m1 {
            t.fail(format!("~{ty} {level}: max depth {m0} at R={r} but {m1} at R={}", r + 1));
        }
        for &i in &pos {
            if !reg.reliable[i] {
                continue;
            }
            let coords = table.patch.coords(&reg.simplices[i]);
            let mut s1: Vec<usize> = coords.iter().filter_map(|c| table1.patch.vertex_id(c)).collect();
            s1.sort_unstable();
            t.bump("depths_compared");
            match reg1.id(&s1) {
                Some(j) if reg1.dp[j] == reg.dp[i] => {}
                other => t.fail(format!(
                    "{ctx}: depth of {} is {} but {:?} one layer further",
                    show(&coords),
                    reg.dp[i],
                    other.map(|j| reg1.dp[j])
                )),
            }
        }
    }
    t.finish()
}

/// Adjacent vertices of the subdivision have different values.
pub fn no_critical_edges(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("no-critical-edges");
    let level = opts.richness.unwrap_or(Richness::AlmostRich);
    for (ty, r) in plan(opts, &[FiniteType::A2, FiniteType::C2]) {
        let ctx = format!("~{ty} R={r} {level}");
        let Some((table, reg)) = setup(&mut t, &ctx, ty, r, level) else { continue };
        let Some(sub) = t.check(&ctx, subdivide(&table, &reg)) else { continue };
        for e in sub.complex.of_dim(1) {
            t.bump("edges");
            let (a, b) = (sub_morse(&reg, e[0]), sub_morse(&reg, e[1]));
            if a.h2 == b.h2 {
                t.bump("equal_height_edges");
            }
            if a == b {
                t.contradiction(format!(
                    "{ctx}: barycenters of {} and {} share the value {a:?}",
                    show(&table.patch.coords(&reg.simplices[e[0]])),
                    show(&table.patch.coords(&reg.simplices[e[1]]))
                ));
            }
        }
    }
    t.finish()
}

/// Directly computed descending links equal the predicted joins; links
/// at simplices that are not their own minimal face are acyclic.
pub fn descending_join(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("descending-join");
    let level = opts.richness.unwrap_or(Richness::AlmostRich);
    for (ty, r) in plan(opts, &[FiniteType::A2, FiniteType::C2]) {
        let ctx = format!("~{ty} R={r} {level}");
        let Some((table, reg)) = setup(&mut t, &ctx, ty, r, level) else { continue };
        let Some(sub) = t.check(&ctx, subdivide(&table, &reg)) else { continue };
        let dim = table.patch.dim() as isize;
        for v in 0..reg.len() {
            if reg.h2[v].is_zero() {
                t.bump("ground_vertices");
                continue;
            }
            if !descending_link_available(&table, &reg, &sub, v) {
                t.bump("skipped_incomplete_star");
                continue;
            }
            let Some(d) = t.check(&ctx, descending_link(&table, &reg, &sub, v)) else { continue };
            t.bump("links");
            let coords = table.patch.coords(&reg.simplices[v]);
            if !d.matches() {
                t.contradiction(format!("{ctx}: descending link at the barycenter of {} differs from the predicted join", show(&coords)));
            }
            let Some(b) = t.check(&ctx, betti(&d.direct)) else { continue };
            if d.sigma_is_min {
                t.bump("own_minimal_face");
                if b.is_spherical(dim - 1) {
                    t.bump("spherical");
                }
            } else {
                t.bump("proper_minimal_face");
                if b.is_acyclic() {
                    t.bump("acyclic");
                } else {
                    t.contradiction(format!("{ctx}: descending link at {} has reduced Betti numbers {:?}", show(&coords), b.reduced_betti));
                }
            }
        }
    }
    t.finish()
}

/// Vertices entering the sublevel filtration together are independent and
/// meet the previous stage in their descending links.
pub fn filtration(opts: &SuiteOptions) -> SuiteReport {
    let mut t = Tally::new("filtration");
    let level = opts.richness.unwrap_or(Richness::AlmostRich);
    for (ty, r) in plan(opts, &[FiniteType::A2]) {
        let ctx = format!("~{ty} R={r} {level}");
        let Some((table, reg)) = setup(&mut t, &ctx, ty, r, level) else { continue };
        let Some(sub) = t.check(&ctx, subdivide(&table, &reg)) else { continue };
        let f = filtration_check(&reg, &sub);
        t.add("stages", f.stages as u64);
        t.add("vertices", f.vertices as u64);
        t.set_max("widest_stage", f.widest_stage as u64);
        if !f.new_vertices_independent {
            t.contradiction(format!("{ctx}: two vertices entering at the same stage are adjacent"));
        }
        for &v in &f.mismatches {
            t.contradiction(format!(
                "{ctx}: relative link of the barycenter of {} is not its descending link",
                show(&table.patch.coords(&reg.simplices[v]))
            ));
        }
    }
    t.finish()
}
