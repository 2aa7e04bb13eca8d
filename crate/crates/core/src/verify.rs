//! The verification suite: every structural claim about the five
//! designs, checked against freshly constructed objects and the
//! brute-force search oracle.
//!
//! Checks are grouped into scopes. `theorem` covers the automorphism
//! group orders, the equality of constructed and searched groups, and
//! the semidirect towers; `orbits` the orbit tables and
//! flag-transitivity; `pyramidal` the sharp transitivity of C₂³(O);
//! `fano` the exhaustive bijection scan and the G_δ constructions;
//! `all` additionally runs the duality/complement comparisons and the
//! remaining structural invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::design::{
    build_type, canonical_o, delta_consistency, extract_delta, CliqueType, Design,
};
use crate::fano::{canonical_fano, find_bijection_of_index, g_delta, g_delta_generators};
use crate::geometry::{Geometry, PointSet};
use crate::group::{
    c2_case_tower, c2_cubed, c2_cubed_with, constructed_aut_o, default_seven_subset,
    flag_transitive, full_automorphism_group, g_of_z, identify, point_orbits, pyramidal_check,
    stabilizer_of_center, verify_semidirect, GroupName, PermGroup,
};

/// What `verify` should run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Scope {
    All,
    Theorem,
    Orbits,
    Pyramidal,
    Fano,
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Scope::All),
            "theorem" => Ok(Scope::Theorem),
            "orbits" => Ok(Scope::Orbits),
            "pyramidal" => Ok(Scope::Pyramidal),
            "fano" => Ok(Scope::Fano),
            other => Err(format!(
                "unknown scope {other:?}; expected all, theorem, orbits, pyramidal or fano"
            )),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::All => "all",
            Scope::Theorem => "theorem",
            Scope::Orbits => "orbits",
            Scope::Pyramidal => "pyramidal",
            Scope::Fano => "fano",
        })
    }
}

/// One named comparison; `pass` records `expected == actual`.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Check {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let pass = expected == actual;
        Check {
            name: name.into(),
            expected,
            actual,
            pass,
        }
    }

    fn holds(name: impl Into<String>, actual: bool) -> Check {
        Check::new(name, true, actual)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub scope: String,
    pub overall: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall
    }

    /// One line per check plus a trailing summary, mirroring the JSON.
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!(
                "[{mark}] {}: expected {}, got {}\n",
                c.name, c.expected, c.actual
            ));
        }
        let status = if self.overall { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "overall: {status} ({} checks, scope {})\n",
            self.checks.len(),
            self.scope
        ));
        out
    }
}

/// Canonical designs and cached search results shared across checks.
struct Context {
    designs: BTreeMap<CliqueType, Design>,
    auts: BTreeMap<CliqueType, PermGroup>,
}

impl Context {
    fn new() -> Context {
        Context {
            designs: CliqueType::ALL
                .into_iter()
                .map(|t| (t, build_type(t)))
                .collect(),
            auts: BTreeMap::new(),
        }
    }

    fn design(&self, t: CliqueType) -> &Design {
        &self.designs[&t]
    }

    fn aut(&mut self, t: CliqueType) -> &PermGroup {
        let designs = &self.designs;
        self.auts
            .entry(t)
            .or_insert_with(|| full_automorphism_group(&designs[&t]))
    }
}

/// Runs the requested scope and collects the per-check outcomes.
pub fn run(scope: Scope) -> VerificationReport {
    let mut ctx = Context::new();
    let mut checks = Vec::new();
    match scope {
        Scope::Theorem => theorem_checks(&mut ctx, &mut checks),
        Scope::Orbits => orbit_checks(&mut ctx, &mut checks),
        Scope::Pyramidal => pyramidal_checks(&mut ctx, &mut checks),
        Scope::Fano => fano_checks(&mut checks),
        Scope::All => {
            theorem_checks(&mut ctx, &mut checks);
            orbit_checks(&mut ctx, &mut checks);
            pyramidal_checks(&mut ctx, &mut checks);
            fano_checks(&mut checks);
            duality_checks(&mut ctx, &mut checks);
            structure_checks(&mut ctx, &mut checks);
        }
    }
    VerificationReport {
        scope: scope.to_string(),
        overall: checks.iter().all(|c| c.pass),
        checks,
    }
}

/// Group orders by search, constructed == searched, and the semidirect
/// decompositions with their named factors.
fn theorem_checks(ctx: &mut Context, checks: &mut Vec<Check>) {
    for (t, order) in [
        (CliqueType::C1, 20160),
        (CliqueType::C2, 576),
        (CliqueType::C3, 96),
        (CliqueType::C4, 168),
        (CliqueType::NC, 168),
    ] {
        checks.push(Check::new(
            format!("searched-aut-order-{t}"),
            order,
            ctx.aut(t).order(),
        ));
    }
    checks.push(Check::new(
        "aut-C1-is-GL(4,2)",
        GroupName::GL42,
        identify(ctx.aut(CliqueType::C1)),
    ));

    let o = canonical_o();
    // single-center types: the constructions generate the whole group
    for t in [CliqueType::C3, CliqueType::C4] {
        let d = ctx.design(t).clone();
        let constructed = constructed_aut_o(&d, o).expect("centered construction");
        checks.push(Check::holds(
            format!("constructed-equals-searched-{t}"),
            &constructed == ctx.aut(t),
        ));
        let n = c2_cubed(&d, o).expect("alpha group");
        let h = g_of_z(&d, o, default_seven_subset(o)).expect("G(Z)");
        checks.push(Check::holds(
            format!("semidirect-C23-GZ-{t}"),
            verify_semidirect(&constructed, &n, &h) == Ok(true),
        ));
        let gz_name = if t == CliqueType::C3 {
            GroupName::A4
        } else {
            GroupName::C7RtimesC3
        };
        checks.push(Check::new(format!("named-factors-{t}"), format!("{}+{}", GroupName::C2xC2xC2, gz_name), format!("{}+{}", identify(&n), identify(&h))));
    }

    // C1: the constructions generate the stabilizer of one center
    {
        let d = ctx.design(CliqueType::C1).clone();
        let constructed = constructed_aut_o(&d, o).expect("centered construction");
        checks.push(Check::new("constructed-aut-o-order-C1", 1344, constructed.order()));
        let searched = ctx.aut(CliqueType::C1).clone();
        let stab = stabilizer_of_center(&searched, &d, o).expect("O is a block");
        checks.push(Check::holds(
            "constructed-equals-searched-stabilizer-C1",
            constructed == stab,
        ));
    }

    // C2: the two-level tower
    {
        let d = ctx.design(CliqueType::C2).clone();
        let tower = c2_case_tower(&d).expect("type C2");
        checks.push(Check::holds(
            "constructed-equals-searched-C2",
            &tower.aut_full == ctx.aut(CliqueType::C2),
        ));
        checks.push(Check::new(
            "aut-pointwise-order-C2",
            96,
            tower.aut_pointwise.order(),
        ));
        checks.push(Check::new(
            "aut-pointwise-name-C2",
            GroupName::C22RtimesS4,
            identify(&tower.aut_pointwise),
        ));
        checks.push(Check::holds(
            "semidirect-klein-GZ-C2",
            verify_semidirect(&tower.aut_pointwise, &tower.klein, &tower.g_z) == Ok(true),
        ));
        checks.push(Check::holds(
            "semidirect-pointwise-S3-C2",
            verify_semidirect(&tower.aut_full, &tower.aut_pointwise, &tower.s3) == Ok(true),
        ));
        checks.push(Check::new(
            "alpha-product-order-C2",
            3,
            tower.alpha_l.compose(&tower.alpha_l_prime).order(),
        ));
        checks.push(Check::new("gz-name-C2", GroupName::S4, identify(&tower.g_z)));
    }
}

fn orbit_sizes<T>(orbits: &[Vec<T>]) -> String {
    let sizes: Vec<String> = orbits.iter().map(|o| o.len().to_string()).collect();
    sizes.join("+")
}

/// Orbit tables of the full groups and flag-transitivity of C1.
fn orbit_checks(ctx: &mut Context, checks: &mut Vec<Check>) {
    let expected: [(CliqueType, &str, &str); 5] = [
        (CliqueType::C1, "15", "15"),
        (CliqueType::C2, "12+3", "12+3"),
        (CliqueType::C3, "8+6+1", "8+6+1"),
        (CliqueType::C4, "8+7", "14+1"),
        (CliqueType::NC, "14+1", "8+7"),
    ];
    for (t, points, blocks) in expected {
        let d = ctx.design(t).clone();
        let g = ctx.aut(t).clone();
        checks.push(Check::new(
            format!("point-orbits-{t}"),
            points,
            orbit_sizes(&point_orbits(&g)),
        ));
        checks.push(Check::new(
            format!("block-orbits-{t}"),
            blocks,
            orbit_sizes(&crate::group::block_orbits(&g, &d).expect("automorphisms")),
        ));
    }
    let c1 = ctx.design(CliqueType::C1).clone();
    let g = ctx.aut(CliqueType::C1).clone();
    checks.push(Check::holds(
        "flag-transitive-C1",
        flag_transitive(&c1, &g) == Ok(true),
    ));
}

/// Sharp transitivity of C₂³(O) on the canonical center, C1–C4.
fn pyramidal_checks(ctx: &mut Context, checks: &mut Vec<Check>) {
    for t in [CliqueType::C1, CliqueType::C2, CliqueType::C3, CliqueType::C4] {
        let d = ctx.design(t).clone();
        checks.push(Check::holds(
            format!("pyramidal-{t}"),
            pyramidal_check(&d, canonical_o()) == Ok(true),
        ));
    }
}

/// The exhaustive 5040-bijection scan and the G_δ constructions.
fn fano_checks(checks: &mut Vec<Check>) {
    let src = canonical_fano((1u8..=7).collect()).expect("seven labels");
    let dst = canonical_fano((1u8..=7).collect()).expect("seven labels");

    let mut histogram: BTreeMap<u32, usize> = BTreeMap::new();
    let mut map = [0u8, 1, 2, 3, 4, 5, 6];
    loop {
        let d = crate::fano::FanoBijection::new(src.clone(), dst.clone(), map)
            .expect("bijective map");
        *histogram.entry(d.index()).or_insert(0) += 1;
        if !crate::fano::next_permutation(&mut map) {
            break;
        }
    }
    let observed: Vec<String> = histogram
        .iter()
        .map(|(idx, count)| format!("{idx}:{count}"))
        .collect();
    checks.push(Check::new(
        "bijection-index-histogram",
        "0:1344 1:2352 3:1176 7:168",
        observed.join(" "),
    ));

    for (idx, order, name) in [
        (0u32, 21, GroupName::C7RtimesC3),
        (1, 12, GroupName::A4),
        (3, 24, GroupName::S4),
        (7, 168, GroupName::GL32),
    ] {
        let d = find_bijection_of_index(&src, &dst, idx).expect("realizable index");
        let g = g_delta(&d);
        checks.push(Check::new(format!("g-delta-order-index-{idx}"), order, g.order()));
        checks.push(Check::new(format!("g-delta-name-index-{idx}"), name, identify(&g)));
        if idx != 7 {
            let gens = g_delta_generators(&d).expect("supported index");
            let generated = PermGroup::generate(7, &gens).expect("generators on 7 points");
            checks.push(Check::holds(
                format!("generators-match-filter-index-{idx}"),
                generated == g,
            ));
        }
    }

    // two bijections are collineation-related iff they share an index:
    // the orbit partition of the 168×168 action must be the four index
    // classes
    let collineations = src.collineations();
    let gens = collineations.reduced_generators();
    let mut class_of: BTreeMap<[u8; 7], u32> = BTreeMap::new();
    let mut map = [0u8, 1, 2, 3, 4, 5, 6];
    let mut order = Vec::new();
    loop {
        order.push(map);
        if !crate::fano::next_permutation(&mut map) {
            break;
        }
    }
    let mut orbits_match = true;
    for &start in &order {
        if class_of.contains_key(&start) {
            continue;
        }
        let idx = crate::fano::FanoBijection::new(src.clone(), dst.clone(), start)
            .expect("bijective map")
            .index();
        let mut frontier = vec![start];
        class_of.insert(start, idx);
        while let Some(m) = frontier.pop() {
            for g in &gens {
                for f in &gens {
                    // neighbor g∘δ∘f, with f acting first
                    let mut next = [0u8; 7];
                    for i in 0..7u8 {
                        let fi = f.apply(i + 1) - 1;
                        next[i as usize] = g.apply(m[fi as usize] + 1) - 1;
                    }
                    if let std::collections::btree_map::Entry::Vacant(e) = class_of.entry(next) {
                        e.insert(idx);
                        frontier.push(next);
                    }
                }
            }
        }
    }
    for &m in &order {
        let d = crate::fano::FanoBijection::new(src.clone(), dst.clone(), m).expect("bijective");
        if class_of[&m] != d.index() {
            orbits_match = false;
            break;
        }
    }
    checks.push(Check::holds(
        "equivalence-classes-are-index-classes",
        orbits_match && class_of.len() == 5040,
    ));
}

/// Duality and complement: classification swaps/fixed points and
/// preservation of the automorphism group order.
fn duality_checks(ctx: &mut Context, checks: &mut Vec<Check>) {
    checks.push(Check::new(
        "dual-C4-classifies-as",
        CliqueType::NC,
        ctx.design(CliqueType::C4)
            .dual()
            .classify()
            .map(|t| t.to_string())
            .unwrap_or_else(|e| e.to_string()),
    ));
    checks.push(Check::new(
        "dual-NC-classifies-as",
        CliqueType::C4,
        ctx.design(CliqueType::NC)
            .dual()
            .classify()
            .map(|t| t.to_string())
            .unwrap_or_else(|e| e.to_string()),
    ));
    for t in [CliqueType::C1, CliqueType::C2, CliqueType::C3] {
        checks.push(Check::new(
            format!("self-dual-{t}"),
            t,
            ctx.design(t)
                .dual()
                .classify()
                .map(|t| t.to_string())
                .unwrap_or_else(|e| e.to_string()),
        ));
    }
    for t in CliqueType::ALL {
        let d = ctx.design(t).clone();
        let base = ctx.aut(t).order();
        let dual_order = full_automorphism_group(&d.dual()).order();
        let comp_order = full_automorphism_group(&d.complement()).order();
        checks.push(Check::new(
            format!("aut-order-preserved-{t}"),
            format!("{base}={base}={base}"),
            format!("{base}={dual_order}={comp_order}"),
        ));
    }
}

/// Remaining structural invariants: classification pairs, the Fisher
/// bound, cross-Z δ consistency, and Z-independence of C₂³.
fn structure_checks(ctx: &mut Context, checks: &mut Vec<Check>) {
    let expected = [
        (CliqueType::C1, 15, 35),
        (CliqueType::C2, 3, 19),
        (CliqueType::C3, 1, 11),
        (CliqueType::C4, 1, 7),
        (CliqueType::NC, 0, 7),
    ];
    for (t, centers, lines) in expected {
        let d = ctx.design(t);
        checks.push(Check::new(
            format!("centers-{t}"),
            centers,
            d.center_points().expect("valid clique").len(),
        ));
        checks.push(Check::new(
            format!("internal-lines-{t}"),
            lines,
            d.internal_lines().expect("valid clique").len(),
        ));
    }
    let geometry = Geometry::p4_15();
    checks.push(Check::new("p4-15-point-count", 6435, geometry.points().count()));
    for t in CliqueType::ALL {
        let d = ctx.design(t);
        checks.push(Check::holds(
            format!("no-16th-clique-point-{t}"),
            geometry
                .extension_points(d.blocks())
                .expect("valid points")
                .is_empty(),
        ));
    }
    let o = canonical_o();
    let sevens: Vec<PointSet> = (1..=8u8)
        .map(|drop| o.difference(PointSet::singleton(drop)))
        .collect();
    for t in [CliqueType::C1, CliqueType::C2, CliqueType::C3, CliqueType::C4] {
        let d = ctx.design(t).clone();
        let mut consistent = true;
        let mut indices = std::collections::BTreeSet::new();
        for &z in &sevens {
            let d_z = extract_delta(&d, o, z).expect("centered");
            indices.insert(d_z.index());
            for &zp in &sevens {
                let d_zp = extract_delta(&d, o, zp).expect("centered");
                if delta_consistency(o, z, zp, &d_z, &d_zp) != Ok(true) {
                    consistent = false;
                }
            }
        }
        checks.push(Check::holds(format!("delta-consistency-{t}"), consistent));
        checks.push(Check::new(
            format!("extracted-index-z-independent-{t}"),
            1,
            indices.len(),
        ));
        let reference = c2_cubed(&d, o).expect("centered");
        let z_free = sevens
            .iter()
            .all(|&z| c2_cubed_with(&d, o, z).expect("centered") == reference);
        checks.push(Check::holds(format!("c23-z-independent-{t}"), z_free));
    }
}
