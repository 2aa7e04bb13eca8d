//! Orbit structure, pyramidality and flag-transitivity of group
//! actions on a design.
//!
//! A group acts on the points [n] directly and on the blocks through
//! images of point sets; both orbit partitions are reported with
//! sizes descending. Pyramidality asks for sharp transitivity of
//! C₂³(O) on the center block, flag-transitivity for a single orbit
//! on incident point–block pairs.

use serde::Serialize;

use crate::design::{Design, DesignError};
use crate::geometry::PointSet;
use crate::group::constructions::c2_cubed;
use crate::group::{identify, PermGroup, Permutation};

fn check_action(g: &PermGroup, design: &Design) -> Result<(), DesignError> {
    if g.degree() != design.n() {
        return Err(DesignError::DegreeMismatch(g.degree(), design.n()));
    }
    for e in g.generators() {
        if !design.is_automorphism(e) {
            return Err(DesignError::NotAnAutomorphism(e.to_string()));
        }
    }
    Ok(())
}

/// The permutation of 0-based block indices induced by a ground
/// permutation.
fn block_action(design: &Design, e: &Permutation) -> Vec<usize> {
    design
        .blocks()
        .iter()
        .map(|&b| {
            design
                .blocks()
                .iter()
                .position(|&c| c == e.apply_to_set(b))
                .expect("validated automorphism")
        })
        .collect()
}

/// Orbit partition of the 1-based block indices, largest orbit first
/// (ties by smallest member), members ascending.
pub fn block_orbits(g: &PermGroup, design: &Design) -> Result<Vec<Vec<usize>>, DesignError> {
    check_action(g, design)?;
    let n = design.blocks().len();
    let actions: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|e| block_action(design, e))
        .collect();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut frontier = vec![start];
        while let Some(b) = frontier.pop() {
            for action in &actions {
                let img = action[b];
                if !seen[img] {
                    seen[img] = true;
                    orbit.push(img);
                    frontier.push(img);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit.iter().map(|&i| i + 1).collect::<Vec<usize>>());
    }
    orbits.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    Ok(orbits)
}

/// Orbit partition of the points under the group, largest orbit first.
pub fn point_orbits(g: &PermGroup) -> Vec<Vec<u8>> {
    g.point_orbits()
}

/// Whether C₂³(O) witnesses 7-pyramidality: it must fix every point
/// outside O and act sharply transitively on O — exactly one element
/// maps i to j for each ordered pair in O×O.
pub fn pyramidal_check(design: &Design, o: PointSet) -> Result<bool, DesignError> {
    let group = c2_cubed(design, o)?;
    for e in group.elements() {
        for p in o.complement(design.n()).iter() {
            if e.apply(p) != p {
                return Ok(false);
            }
        }
    }
    for i in o.iter() {
        for j in o.iter() {
            let movers = group.elements().iter().filter(|e| e.apply(i) == j).count();
            if movers != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the group is transitive on incident (point, block) pairs.
pub fn flag_transitive(design: &Design, g: &PermGroup) -> Result<bool, DesignError> {
    check_action(g, design)?;
    let total: usize = design.blocks().iter().map(|b| b.len() as usize).sum();
    if total == 0 {
        return Ok(true);
    }
    let actions: Vec<(Vec<usize>, &Permutation)> = g
        .generators()
        .iter()
        .map(|e| (block_action(design, e), e))
        .collect();
    let start = (
        design.blocks()[0].elems()[0],
        0usize,
    );
    let mut seen = std::collections::HashSet::new();
    seen.insert(start);
    let mut frontier = vec![start];
    while let Some((p, b)) = frontier.pop() {
        for (blocks, e) in &actions {
            let flag = (e.apply(p), blocks[b]);
            if seen.insert(flag) {
                frontier.push(flag);
            }
        }
    }
    Ok(seen.len() == total)
}

/// A serializable summary of a group acting on a design.
#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub order: usize,
    pub name: String,
    pub generators: Vec<String>,
    pub point_orbits: Vec<Vec<u8>>,
    pub block_orbits: Vec<Vec<usize>>,
}

/// Builds the report from the canonical reduced generators, so the
/// output depends only on the element set.
pub fn group_report(design: &Design, g: &PermGroup) -> Result<GroupReport, DesignError> {
    let block_orbits = block_orbits(g, design)?;
    Ok(GroupReport {
        order: g.order(),
        name: identify(g).to_string(),
        generators: g
            .reduced_generators()
            .iter()
            .map(|e| e.to_string())
            .collect(),
        point_orbits: g.point_orbits(),
        block_orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{build_type, canonical_o, extract_delta, CliqueType};
    use crate::group::constructions::alpha_l;
    use crate::group::full_automorphism_group;

    fn sizes<T>(orbits: &[Vec<T>]) -> Vec<usize> {
        orbits.iter().map(|o| o.len()).collect()
    }

    #[test]
    fn orbit_tables_for_all_types() {
        let expected: [(CliqueType, &[usize], &[usize]); 5] = [
            (CliqueType::C1, &[15], &[15]),
            (CliqueType::C2, &[12, 3], &[12, 3]),
            (CliqueType::C3, &[8, 6, 1], &[8, 6, 1]),
            (CliqueType::C4, &[8, 7], &[14, 1]),
            (CliqueType::NC, &[14, 1], &[8, 7]),
        ];
        for (t, points, blocks) in expected {
            let d = build_type(t);
            let g = full_automorphism_group(&d);
            assert_eq!(sizes(&point_orbits(&g)), points, "{t} points");
            assert_eq!(sizes(&block_orbits(&g, &d).unwrap()), blocks, "{t} blocks");
        }
    }

    #[test]
    fn c3_fixed_point_and_block() {
        let d = build_type(CliqueType::C3);
        let g = full_automorphism_group(&d);
        let points = point_orbits(&g);
        // the fixed point is the element of O off every Z-side orbit
        assert_eq!(points.last().unwrap().len(), 1);
        let blocks = block_orbits(&g, &d).unwrap();
        assert_eq!(blocks.last().unwrap(), &vec![1], "the center block is fixed");
    }

    #[test]
    fn flag_transitivity() {
        let c1 = build_type(CliqueType::C1);
        assert_eq!(flag_transitive(&c1, &full_automorphism_group(&c1)), Ok(true));
        let c4 = build_type(CliqueType::C4);
        assert_eq!(flag_transitive(&c4, &full_automorphism_group(&c4)), Ok(false));
        let trivial = PermGroup::trivial(15);
        assert_eq!(flag_transitive(&c1, &trivial), Ok(false));
    }

    #[test]
    fn pyramidality_of_centered_types() {
        for t in [CliqueType::C1, CliqueType::C2, CliqueType::C3, CliqueType::C4] {
            let d = build_type(t);
            assert_eq!(pyramidal_check(&d, canonical_o()), Ok(true), "{t}");
        }
        // a non-center errors out during extraction
        let nc = build_type(CliqueType::NC);
        assert!(pyramidal_check(&nc, nc.blocks()[0]).is_err());
    }

    #[test]
    fn unique_transposer_is_the_common_line_alpha() {
        let d = build_type(CliqueType::C4);
        let o = canonical_o();
        let group = c2_cubed(&d, o).unwrap();
        let (i, j) = (1u8, 2u8);
        let z_i = o.difference(PointSet::singleton(i));
        let z_j = o.difference(PointSet::singleton(j));
        let d_i = extract_delta(&d, o, z_i).unwrap();
        let d_j = extract_delta(&d, o, z_j).unwrap();
        let shared: Vec<PointSet> = d_i
            .target()
            .points()
            .iter()
            .copied()
            .filter(|p| d_j.target().points().contains(p))
            .collect();
        assert_eq!(shared.len(), 3);
        let transposers: Vec<&Permutation> = group
            .elements()
            .iter()
            .filter(|e| e.apply(i) == j)
            .collect();
        assert_eq!(transposers.len(), 1);
        let alpha = alpha_l(&d, o, z_i, [shared[0], shared[1], shared[2]]).unwrap();
        assert_eq!(transposers[0], &alpha);
        assert_eq!(alpha.apply(j), i);
    }

    #[test]
    fn actions_reject_non_automorphisms() {
        let d = build_type(CliqueType::C4);
        let swap = Permutation::parse("(9,10)", 15).unwrap();
        assert!(!d.is_automorphism(&swap));
        let g = PermGroup::generate(15, &[swap]).unwrap();
        assert!(matches!(
            block_orbits(&g, &d),
            Err(DesignError::NotAnAutomorphism(_))
        ));
        assert!(matches!(
            flag_transitive(&d, &g),
            Err(DesignError::NotAnAutomorphism(_))
        ));
    }

    #[test]
    fn report_shape() {
        let d = build_type(CliqueType::C4);
        let g = full_automorphism_group(&d);
        let report = group_report(&d, &g).unwrap();
        assert_eq!(report.order, 168);
        assert_eq!(report.name, "Unknown", "AGL-type group is not in the catalog");
        let regenerated = PermGroup::generate(
            15,
            &report
                .generators
                .iter()
                .map(|s| Permutation::parse(s, 15).unwrap())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(regenerated, g);
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with("{\"order\":168,\"name\":"));
        assert!(json.contains("\"point_orbits\":"));
    }
}
