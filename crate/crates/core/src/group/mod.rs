//! Permutation groups on small ground sets, with full element enumeration.
//!
//! Every group handled here has order at most |GL(4,2)| = 20160, so the
//! engine simply materializes all elements. Normality, intersections,
//! semidirect checks and small-group identification then become exact
//! set operations instead of stabilizer-chain algorithms.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::geometry::PointSet;

mod actions;
mod constructions;
mod identify;
mod search;

pub use actions::{
    block_orbits, flag_transitive, group_report, point_orbits, pyramidal_check, GroupReport,
};
pub use constructions::{
    alpha_l, c2_case_tower, c2_cubed, c2_cubed_with, constructed_aut_o, default_seven_subset,
    g_of_z, stabilizer_of_center, C2Tower,
};
pub use identify::{identify, Fingerprint, GroupName};
pub use search::{full_automorphism_group, naive_automorphism_search};

/// Largest supported ground set, shared with the geometry layer.
pub const MAX_DEGREE: u8 = crate::geometry::MAX_GROUND;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("degree {0} outside 1..={MAX_DEGREE}")]
    BadDegree(u8),
    #[error("images are not a bijection on 1..={0}")]
    NotABijection(u8),
    #[error("permutations act on different ground sets ({0} vs {1})")]
    MixedDegrees(u8, u8),
    #[error("element set is not a group (not closed, or missing identity)")]
    NotAGroup,
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,
    #[error("cannot parse cycle notation: {0}")]
    Parse(String),
}

/// A permutation of \[n\], 1-based: `images[i-1]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: u8) -> Permutation {
        Permutation {
            images: (1..=degree).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Permutation, GroupError> {
        let n = images.len() as u8;
        if n == 0 || n > MAX_DEGREE {
            return Err(GroupError::BadDegree(n));
        }
        let mut seen = 0u64;
        for &v in &images {
            if v < 1 || v > n || seen & (1 << (v - 1)) != 0 {
                return Err(GroupError::NotABijection(n));
            }
            seen |= 1 << (v - 1);
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of \[degree\] from disjoint cycles.
    pub fn from_cycles(degree: u8, cycles: &[Vec<u8>]) -> Result<Permutation, GroupError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GroupError::BadDegree(degree));
        }
        let mut images: Vec<u8> = (1..=degree).collect();
        let mut moved = 0u64;
        for cycle in cycles {
            for &e in cycle {
                if e < 1 || e > degree {
                    return Err(GroupError::NotABijection(degree));
                }
                if moved & (1 << (e - 1)) != 0 {
                    return Err(GroupError::Parse(format!("element {e} appears twice")));
                }
                moved |= 1 << (e - 1);
            }
            for (k, &e) in cycle.iter().enumerate() {
                images[e as usize - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.images[i as usize - 1]
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    /// Composition `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing mixed degrees");
        Permutation {
            images: other.images.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v as usize - 1] = k as u8 + 1;
        }
        Permutation { images }
    }

    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        h.compose(self).compose(&h.inverse())
    }

    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1, lcm)
    }

    fn cycle_lengths(&self) -> Vec<u64> {
        self.cycles().into_iter().map(|c| c.len() as u64).collect()
    }

    /// Nontrivial cycles, each starting at its minimal element, sorted by
    /// that minimum.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.degree();
        let mut visited = 0u64;
        let mut out = Vec::new();
        for i in 1..=n {
            if visited & (1 << (i - 1)) != 0 || self.apply(i) == i {
                continue;
            }
            let mut cycle = vec![i];
            visited |= 1 << (i - 1);
            let mut j = self.apply(i);
            while j != i {
                visited |= 1 << (j - 1);
                cycle.push(j);
                j = self.apply(j);
            }
            out.push(cycle);
        }
        out
    }

    /// Image of a subset of \[degree\] under the point action.
    pub fn apply_to_set(&self, s: PointSet) -> PointSet {
        let mut mask = 0u64;
        for e in s.iter() {
            mask |= 1 << (self.apply(e) - 1);
        }
        PointSet::from_mask(mask)
    }

    /// Parses disjoint cycle notation, e.g. `"(1,2)(3,4)"`; `""` and
    /// `"()"` denote the identity.
    pub fn parse(s: &str, degree: u8) -> Result<Permutation, GroupError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "()" {
            return if degree == 0 || degree > MAX_DEGREE {
                Err(GroupError::BadDegree(degree))
            } else {
                Ok(Permutation::identity(degree))
            };
        }
        if !t.starts_with('(') || !t.ends_with(')') {
            return Err(GroupError::Parse(format!("expected (..)(..): {s}")));
        }
        let mut cycles = Vec::new();
        for part in t[1..t.len() - 1].split(")(") {
            let cycle: Vec<u8> = part
                .split(',')
                .map(|tok| {
                    tok.parse::<u8>()
                        .map_err(|_| GroupError::Parse(format!("bad element {tok:?}")))
                })
                .collect::<Result<_, _>>()?;
            if cycle.is_empty() {
                return Err(GroupError::Parse("empty cycle".into()));
            }
            cycles.push(cycle);
        }
        Permutation::from_cycles(degree, &cycles)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, e) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{e}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A permutation group given by generators, with the full element list
/// materialized and kept sorted.
#[derive(Clone)]
pub struct PermGroup {
    degree: u8,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
}

impl PermGroup {
    pub fn trivial(degree: u8) -> PermGroup {
        PermGroup {
            degree,
            elements: vec![Permutation::identity(degree)],
            generators: Vec::new(),
        }
    }

    /// Closure of the generators under composition; terminates because
    /// all groups here are finite (and small).
    pub fn generate(degree: u8, gens: &[Permutation]) -> Result<PermGroup, GroupError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GroupError::BadDegree(degree));
        }
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::MixedDegrees(degree, g.degree()));
            }
        }
        let elements = closure(degree, gens);
        Ok(PermGroup {
            degree,
            elements,
            generators: gens.to_vec(),
        })
    }

    /// Wraps an element set as a group, verifying it really is one: a
    /// canonical generating set is extracted greedily from the sorted
    /// elements and its closure must reproduce the set exactly.
    pub fn from_elements(degree: u8, elems: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(GroupError::BadDegree(degree));
        }
        let mut elements = elems;
        for g in &elements {
            if g.degree() != degree {
                return Err(GroupError::MixedDegrees(degree, g.degree()));
            }
        }
        elements.sort();
        elements.dedup();
        let generators = greedy_generators(degree, &elements)?;
        Ok(PermGroup {
            degree,
            elements,
            generators,
        })
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// All elements, sorted by image tables.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Canonical generating set derived greedily from the sorted element
    /// list; independent of how the group was produced.
    pub fn reduced_generators(&self) -> Vec<Permutation> {
        greedy_generators(self.degree, &self.elements).expect("closed element set")
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, ambient: &PermGroup) -> bool {
        self.degree == ambient.degree && self.elements.iter().all(|g| ambient.contains(g))
    }

    /// Normality via conjugation of generators by generators; sufficient
    /// because both element sets are closed.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> Result<bool, GroupError> {
        if !self.is_subgroup_of(ambient) {
            return Err(GroupError::NotASubgroup);
        }
        for g in outer_gens(ambient) {
            for n in outer_gens(self) {
                if !self.contains(&n.conjugate_by(g)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Intersection as sorted-list merge; automatically a group.
    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup, GroupError> {
        if self.degree != other.degree {
            return Err(GroupError::MixedDegrees(self.degree, other.degree));
        }
        let common: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|g| other.contains(g))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, common)
    }

    pub fn is_abelian(&self) -> bool {
        let gens = outer_gens(self);
        gens.iter()
            .all(|a| gens.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn element_order_multiset(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for g in &self.elements {
            *m.entry(g.order()).or_insert(0) += 1;
        }
        m
    }

    /// Derived subgroup: normal closure of the commutators of generator
    /// pairs.
    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = outer_gens(self);
        let mut seed = Vec::new();
        for a in gens {
            for b in gens {
                let c = a.commutator(b);
                if !c.is_identity() {
                    seed.push(c);
                }
            }
        }
        normal_closure(self.degree, gens, seed)
    }

    /// Orbits of the natural action on 1..=degree, sorted by size
    /// descending, ties by smallest element; orbit members ascending.
    pub fn point_orbits(&self) -> Vec<Vec<u8>> {
        let gens = outer_gens(self);
        let mut seen = 0u64;
        let mut orbits = Vec::new();
        for start in 1..=self.degree {
            if seen & (1 << (start - 1)) != 0 {
                continue;
            }
            let mut orbit = vec![start];
            seen |= 1 << (start - 1);
            let mut k = 0;
            while k < orbit.len() {
                let e = orbit[k];
                for g in gens {
                    let img = g.apply(e);
                    if seen & (1 << (img - 1)) == 0 {
                        seen |= 1 << (img - 1);
                        orbit.push(img);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        orbits
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree={}, order={})", self.degree, self.order())
    }
}

/// Generators to iterate when the stored list may be empty (trivial
/// group): fall back to the identity.
fn outer_gens(g: &PermGroup) -> &[Permutation] {
    if g.generators.is_empty() {
        &g.elements[..1]
    } else {
        &g.generators
    }
}

fn closure(degree: u8, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut frontier = vec![Permutation::identity(degree)];
    seen.insert(frontier[0].clone());
    while let Some(g) = frontier.pop() {
        for h in gens {
            let gh = g.compose(h);
            if seen.insert(gh.clone()) {
                frontier.push(gh);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    elements
}

/// Greedy canonical generators: walk the sorted elements and keep each
/// one not yet generated. Errors if the closure of the kept elements is
/// not exactly the input set (i.e. the input was not a group).
fn greedy_generators(degree: u8, sorted: &[Permutation]) -> Result<Vec<Permutation>, GroupError> {
    if sorted.is_empty() || !sorted.iter().any(|g| g.is_identity()) {
        return Err(GroupError::NotAGroup);
    }
    let mut gens: Vec<Permutation> = Vec::new();
    let mut span = vec![Permutation::identity(degree)];
    for g in sorted {
        if span.binary_search(g).is_err() {
            gens.push(g.clone());
            span = closure(degree, &gens);
            if span.len() > sorted.len() {
                return Err(GroupError::NotAGroup);
            }
        }
    }
    if span.as_slice() != sorted {
        return Err(GroupError::NotAGroup);
    }
    Ok(gens)
}

/// Smallest subgroup containing `seed` and normalized by `ambient_gens`.
fn normal_closure(degree: u8, ambient_gens: &[Permutation], seed: Vec<Permutation>) -> PermGroup {
    let mut gens = seed;
    let mut elements = closure(degree, &gens);
    loop {
        let mut grew = false;
        let snapshot: Vec<Permutation> = gens.clone();
        for t in &snapshot {
            for a in ambient_gens {
                let c = t.conjugate_by(a);
                if elements.binary_search(&c).is_err() {
                    gens.push(c);
                    elements = closure(degree, &gens);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    PermGroup {
        degree,
        elements,
        generators: gens,
    }
}

/// True iff G = N ⋊ H: N and H are subgroups of G, N is normal, the
/// intersection is trivial, and |N|·|H| = |G|.
pub fn verify_semidirect(g: &PermGroup, n: &PermGroup, h: &PermGroup) -> Result<bool, GroupError> {
    if !n.is_subgroup_of(g) || !h.is_subgroup_of(g) {
        return Err(GroupError::NotASubgroup);
    }
    Ok(n.is_normal_in(g)?
        && n.intersection(h)?.order() == 1
        && n.order() * h.order() == g.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: u8) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // with points x,y,z,x',y',z',p numbered 1..7, the classical
        // check: (1,2,3)(4,5,6) then (1,7,4)(6,2,3) composes to the
        // 7-cycle (1,3,7,4,5,2,6)
        let f = p("(1,2,3)(4,5,6)", 7);
        let g = p("(1,7,4)(6,2,3)", 7);
        let gf = g.compose(&f);
        assert_eq!(gf, p("(1,3,7,4,5,2,6)", 7));
        assert_eq!(gf.order(), 7);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let a = p("(1,2)(3,4)(5,6)(9,10)", 15);
        assert_eq!(a.to_string(), "(1,2)(3,4)(5,6)(9,10)");
        assert_eq!(Permutation::parse(&a.to_string(), 15).unwrap(), a);
        assert_eq!(Permutation::identity(7).to_string(), "()");
        assert_eq!(p("()", 7), Permutation::identity(7));
        assert_eq!(p("(2,3,1)", 3).to_string(), "(1,2,3)");
        assert!(Permutation::parse("(1,2)(2,3)", 7).is_err());
        assert!(Permutation::parse("(0,1)", 7).is_err());
        assert!(Permutation::parse("(1,8)", 7).is_err());
    }

    #[test]
    fn inverse_and_order() {
        let a = p("(1,2,3,4)", 5);
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(5));
        assert_eq!(a.order(), 4);
        assert_eq!(p("(1,2)(3,4,5)", 5).order(), 6);
    }

    #[test]
    fn apply_to_set_moves_elements() {
        let a = p("(1,9)(2,10)", 15);
        let s = PointSet::from_elems([1, 2, 3]).unwrap();
        assert_eq!(a.apply_to_set(s), PointSet::from_elems([3, 9, 10]).unwrap());
    }

    #[test]
    fn generate_trivial_and_cyclic() {
        assert_eq!(PermGroup::generate(5, &[]).unwrap().order(), 1);
        let c7 = PermGroup::generate(7, &[p("(1,2,3,4,5,6,7)", 7)]).unwrap();
        assert_eq!(c7.order(), 7);
        assert!(c7.is_abelian());
    }

    #[test]
    fn generate_s3_and_orbits() {
        let g = PermGroup::generate(4, &[p("(1,2)", 4), p("(1,2,3)", 4)]).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.point_orbits(), vec![vec![1, 2, 3], vec![4]]);
        assert_eq!(g.derived_subgroup().order(), 3);
    }

    #[test]
    fn from_elements_rejects_non_groups() {
        let klein = vec![
            Permutation::identity(4),
            p("(1,2)(3,4)", 4),
            p("(1,3)(2,4)", 4),
            p("(1,4)(2,3)", 4),
        ];
        let g = PermGroup::from_elements(4, klein.clone()).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian());

        let broken = vec![Permutation::identity(4), p("(1,2,3)", 4)]; // missing (1,3,2)
        assert_eq!(
            PermGroup::from_elements(4, broken),
            Err(GroupError::NotAGroup)
        );
        assert_eq!(
            PermGroup::from_elements(4, vec![p("(1,2)", 4)]),
            Err(GroupError::NotAGroup)
        );
    }

    #[test]
    fn reduced_generators_are_canonical_and_regenerate() {
        let g = PermGroup::generate(4, &[p("(1,2,3,4)", 4), p("(1,3)", 4)]).unwrap();
        assert_eq!(g.order(), 8); // dihedral
        let gens = g.reduced_generators();
        let h = PermGroup::generate(4, &gens).unwrap();
        assert_eq!(h, g);
        // derived from the sorted element list only
        let g2 = PermGroup::from_elements(4, g.elements().to_vec()).unwrap();
        assert_eq!(g2.reduced_generators(), gens);
    }

    #[test]
    fn semidirect_s3_over_c3() {
        let g = PermGroup::generate(3, &[p("(1,2)", 3), p("(1,2,3)", 3)]).unwrap();
        let n = PermGroup::generate(3, &[p("(1,2,3)", 3)]).unwrap();
        let h = PermGroup::generate(3, &[p("(1,2)", 3)]).unwrap();
        assert!(verify_semidirect(&g, &n, &h).unwrap());
        // C2 is not normal in S3
        assert!(!verify_semidirect(&g, &h, &n).unwrap());
        let foreign = PermGroup::generate(3, &[p("(1,3)", 3)]).unwrap();
        assert!(n.is_normal_in(&g).unwrap());
        assert!(foreign.is_subgroup_of(&g));
        let other_degree = PermGroup::trivial(4);
        assert_eq!(
            verify_semidirect(&g, &other_degree, &h),
            Err(GroupError::NotASubgroup)
        );
    }

    #[test]
    fn intersection_of_subgroups() {
        let s4 = PermGroup::generate(4, &[p("(1,2)", 4), p("(1,2,3,4)", 4)]).unwrap();
        assert_eq!(s4.order(), 24);
        let a4 = s4.derived_subgroup();
        assert_eq!(a4.order(), 12);
        let c2 = PermGroup::generate(4, &[p("(1,2)", 4)]).unwrap();
        assert_eq!(a4.intersection(&c2).unwrap().order(), 1);
        assert!(a4.is_normal_in(&s4).unwrap());
    }
}
