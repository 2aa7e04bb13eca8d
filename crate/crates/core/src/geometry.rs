//! Subset-coded projective geometry over GF(2).
//!
//! Points of PG(n-1,2) are identified with non-empty subsets of
//! \[n\] = {1,..,n}: a non-zero vector corresponds to its support, and the
//! third point on the line through X and Y is the symmetric difference
//! X △ Y. For 3m ≤ n, the 2m-subsets of \[n\] form the subgeometry P_m(n);
//! two of them are collinear exactly when they meet in m elements. The
//! main instance here is P_4(15), whose 15-cliques are the block sets of
//! the symmetric (15,8,4)-designs.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest supported ground set.
pub const MAX_GROUND: u8 = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("element {0} outside 1..={MAX_GROUND}")]
    ElementOutOfRange(u8),
    #[error("duplicate element {0}")]
    DuplicateElement(u8),
    #[error("element list must be strictly increasing")]
    NotStrictlyIncreasing,
    #[error("empty set is not a projective point")]
    EmptyPoint,
    #[error("degenerate line: the two points coincide")]
    DegenerateLine,
    #[error("expected a {expected}-subset, got {got} elements")]
    WrongCardinality { expected: u32, got: u32 },
    #[error("point {0} is not a subset of the ground set [{1}]")]
    NotInGroundSet(PointSet, u8),
    #[error("invalid geometry: need 1 <= m and 3m <= n <= {MAX_GROUND}, got n={n}, m={m}")]
    InvalidParameters { n: u8, m: u8 },
    #[error("labeling is not a permutation of 1..=15")]
    BadLabeling,
    #[error("triple is not closed under symmetric difference")]
    NotALine,
}

/// A subset of the ground set \[n\], n ≤ 64, stored as a bitmask
/// (bit i-1 ↔ element i). This is the atom for points of PG(n-1,2)
/// and blocks of designs. Serialized form is the strictly increasing
/// list of 1-based elements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PointSet {
    mask: u64,
}

impl PointSet {
    pub const EMPTY: PointSet = PointSet { mask: 0 };

    pub fn from_mask(mask: u64) -> PointSet {
        PointSet { mask }
    }

    /// Builds a set from 1-based elements; rejects out-of-range and
    /// duplicate elements.
    pub fn from_elems<I: IntoIterator<Item = u8>>(elems: I) -> Result<PointSet, GeometryError> {
        let mut mask = 0u64;
        for e in elems {
            if e == 0 || e > MAX_GROUND {
                return Err(GeometryError::ElementOutOfRange(e));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(GeometryError::DuplicateElement(e));
            }
            mask |= bit;
        }
        Ok(PointSet { mask })
    }

    /// The full ground set \[n\] as a set.
    pub fn full(n: u8) -> PointSet {
        debug_assert!((1..=MAX_GROUND).contains(&n));
        PointSet {
            mask: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        }
    }

    pub fn singleton(e: u8) -> PointSet {
        debug_assert!((1..=MAX_GROUND).contains(&e));
        PointSet { mask: 1u64 << (e - 1) }
    }

    pub fn mask(self) -> u64 {
        self.mask
    }

    pub fn len(self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, e: u8) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.mask & (1u64 << (e - 1)) != 0
    }

    pub fn is_subset_of(self, other: PointSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet { mask: self.mask | other.mask }
    }

    pub fn intersect(self, other: PointSet) -> PointSet {
        PointSet { mask: self.mask & other.mask }
    }

    pub fn difference(self, other: PointSet) -> PointSet {
        PointSet { mask: self.mask & !other.mask }
    }

    pub fn sym_diff(self, other: PointSet) -> PointSet {
        PointSet { mask: self.mask ^ other.mask }
    }

    /// Complement within the ground set \[n\]. Computed, never stored.
    pub fn complement(self, n: u8) -> PointSet {
        PointSet { mask: PointSet::full(n).mask & !self.mask }
    }

    /// Elements in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u8> {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let e = rest.trailing_zeros() as u8 + 1;
                rest &= rest - 1;
                Some(e)
            }
        })
    }

    pub fn elems(self) -> Vec<u8> {
        self.iter().collect()
    }

    /// The unique element of a singleton set.
    pub fn sole_element(self) -> Option<u8> {
        if self.len() == 1 {
            Some(self.mask.trailing_zeros() as u8 + 1)
        } else {
            None
        }
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<PointSet, D::Error> {
        let elems = Vec::<u8>::deserialize(deserializer)?;
        if !elems.windows(2).all(|w| w[0] < w[1]) {
            return Err(D::Error::custom("element list must be strictly increasing"));
        }
        PointSet::from_elems(elems).map_err(D::Error::custom)
    }
}

/// The third point on the line of PG(n-1,2) joining X and Y, i.e. X △ Y.
///
/// The triple {X, Y, X △ Y} is closed under this operation:
/// `third_point(X, third_point(X, Y)?) == Y`.
pub fn third_point(x: PointSet, y: PointSet) -> Result<PointSet, GeometryError> {
    if x.is_empty() || y.is_empty() {
        return Err(GeometryError::EmptyPoint);
    }
    if x == y {
        return Err(GeometryError::DegenerateLine);
    }
    Ok(x.sym_diff(y))
}

/// A line of P_m(n): three pairwise distinct points, each the symmetric
/// difference of the other two. Stored as a sorted triple so that equal
/// lines compare equal.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct Line {
    points: [PointSet; 3],
}

impl Line {
    pub fn new(a: PointSet, b: PointSet, c: PointSet) -> Result<Line, GeometryError> {
        if a.is_empty() || b.is_empty() || c.is_empty() {
            return Err(GeometryError::EmptyPoint);
        }
        if a == b || a == c || b == c {
            return Err(GeometryError::DegenerateLine);
        }
        if a.sym_diff(b) != c {
            return Err(GeometryError::NotALine);
        }
        let mut points = [a, b, c];
        points.sort();
        Ok(Line { points })
    }

    pub fn through(a: PointSet, b: PointSet) -> Result<Line, GeometryError> {
        let c = third_point(a, b)?;
        Line::new(a, b, c)
    }

    pub fn points(&self) -> &[PointSet; 3] {
        &self.points
    }

    pub fn contains(&self, p: PointSet) -> bool {
        self.points.contains(&p)
    }
}

/// The subgeometry P_m(n) of PG(n-1,2) on the 2m-subsets of \[n\].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Geometry {
    n: u8,
    m: u8,
}

impl Geometry {
    /// Requires 1 ≤ m and 3m ≤ n ≤ 64; the 2m-subsets carry no line at
    /// all when 3m > n.
    pub fn new(n: u8, m: u8) -> Result<Geometry, GeometryError> {
        if m < 1 || n > MAX_GROUND || 3 * (m as u16) > n as u16 {
            return Err(GeometryError::InvalidParameters { n, m });
        }
        Ok(Geometry { n, m })
    }

    /// The main instance P_4(15).
    pub fn p4_15() -> Geometry {
        Geometry { n: 15, m: 4 }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    /// Block weight 2m of the points of this geometry.
    pub fn point_weight(&self) -> u32 {
        2 * self.m as u32
    }

    pub fn is_point(&self, x: PointSet) -> bool {
        x.is_subset_of(PointSet::full(self.n)) && x.len() == self.point_weight()
    }

    fn check_point(&self, x: PointSet) -> Result<(), GeometryError> {
        if x.len() != self.point_weight() {
            return Err(GeometryError::WrongCardinality {
                expected: self.point_weight(),
                got: x.len(),
            });
        }
        if !x.is_subset_of(PointSet::full(self.n)) {
            return Err(GeometryError::NotInGroundSet(x, self.n));
        }
        Ok(())
    }

    /// All points of the geometry, in increasing mask order.
    pub fn points(&self) -> impl Iterator<Item = PointSet> {
        weight_masks(self.n, self.point_weight()).map(PointSet::from_mask)
    }

    /// Two distinct points are collinear iff they meet in m elements
    /// (equivalently, their symmetric difference has 2m elements).
    pub fn collinear(&self, x: PointSet, y: PointSet) -> Result<bool, GeometryError> {
        self.check_point(x)?;
        self.check_point(y)?;
        if x == y {
            return Err(GeometryError::DegenerateLine);
        }
        Ok(x.intersect(y).len() == self.m as u32)
    }

    /// All lines {X, Y, X △ Y} fully contained in `set`.
    pub fn lines_within(&self, set: &[PointSet]) -> Result<Vec<Line>, GeometryError> {
        for &x in set {
            self.check_point(x)?;
        }
        let mut lines = std::collections::BTreeSet::new();
        for (i, &x) in set.iter().enumerate() {
            for &y in &set[i + 1..] {
                if x == y || x.intersect(y).len() != self.m as u32 {
                    continue;
                }
                let z = x.sym_diff(y);
                if set.contains(&z) {
                    lines.insert(Line::new(x, y, z).expect("closed triple"));
                }
            }
        }
        Ok(lines.into_iter().collect())
    }

    /// Points of the geometry outside `clique` that are collinear with
    /// every member. Empty for a maximal clique; by the Fisher bound no
    /// n-clique of the collinearity graph extends.
    pub fn extension_points(&self, clique: &[PointSet]) -> Result<Vec<PointSet>, GeometryError> {
        for &x in clique {
            self.check_point(x)?;
        }
        let m = self.m as u32;
        Ok(self
            .points()
            .filter(|&p| {
                !clique.contains(&p) && clique.iter().all(|&b| p.intersect(b).len() == m)
            })
            .collect())
    }
}

/// All masks of the given weight over \[n\], in increasing numeric order
/// (Gosper's hack).
pub fn weight_masks(n: u8, weight: u32) -> impl Iterator<Item = u64> {
    let limit = PointSet::full(n).mask();
    let mut cur = if weight == 0 || weight > n as u32 {
        None
    } else {
        Some((1u64 << weight) - 1)
    };
    std::iter::from_fn(move || {
        let v = cur?;
        if v > limit {
            cur = None;
            return None;
        }
        // next mask with the same popcount
        let c = v & v.wrapping_neg();
        let r = v + c;
        cur = if c == 0 || r == 0 {
            None
        } else {
            Some((((r ^ v) >> 2) / c) | r)
        };
        Some(v)
    })
}

/// Supports of the 15 non-zero codewords of the \[15,4\] binary simplex
/// code whose generator-matrix columns are the non-zero vectors of
/// GF(2)^4 in binary counting order 1..15, placed at ground positions
/// per `labeling` (column j goes to position labeling[j-1]).
///
/// The result is a maximal singular subspace of P_4(15): 15 pairwise
/// collinear 8-subsets closed under symmetric difference, isomorphic to
/// PG(3,2). Codewords are listed in the counting order of their defining
/// vectors.
pub fn simplex_subspace(labeling: &[u8]) -> Result<Vec<PointSet>, GeometryError> {
    if labeling.len() != 15 {
        return Err(GeometryError::BadLabeling);
    }
    let mut seen = [false; 16];
    for &l in labeling {
        if !(1..=15).contains(&l) || seen[l as usize] {
            return Err(GeometryError::BadLabeling);
        }
        seen[l as usize] = true;
    }
    let mut out = Vec::with_capacity(15);
    for u in 1u16..=15 {
        let mut mask = 0u64;
        for j in 1u16..=15 {
            if (u & j).count_ones() % 2 == 1 {
                mask |= 1u64 << (labeling[j as usize - 1] - 1);
            }
        }
        out.push(PointSet::from_mask(mask));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(elems: &[u8]) -> PointSet {
        PointSet::from_elems(elems.iter().copied()).unwrap()
    }

    #[test]
    fn third_point_by_hand() {
        assert_eq!(third_point(ps(&[1, 2]), ps(&[2, 3])).unwrap(), ps(&[1, 3]));
        let x = ps(&[1, 2, 3, 4, 5, 6, 7, 8]);
        let y = ps(&[1, 2, 3, 4, 9, 10, 11, 12]);
        assert_eq!(
            third_point(x, y).unwrap(),
            ps(&[5, 6, 7, 8, 9, 10, 11, 12])
        );
    }

    #[test]
    fn third_point_involution() {
        let x = ps(&[1, 2]);
        let y = ps(&[3, 4, 5]);
        let z = third_point(x, y).unwrap();
        assert_eq!(third_point(x, z).unwrap(), y);
    }

    #[test]
    fn third_point_errors() {
        let x = ps(&[1, 2]);
        assert_eq!(third_point(x, x), Err(GeometryError::DegenerateLine));
        assert_eq!(
            third_point(x, PointSet::EMPTY),
            Err(GeometryError::EmptyPoint)
        );
    }

    #[test]
    fn collinearity_in_p4_15() {
        let g = Geometry::p4_15();
        let x = ps(&[1, 2, 3, 4, 5, 6, 7, 8]);
        assert!(g.collinear(x, ps(&[1, 2, 3, 4, 9, 10, 11, 12])).unwrap());
        assert!(!g.collinear(x, ps(&[1, 2, 3, 9, 10, 11, 12, 13])).unwrap());
        let y = ps(&[5, 6, 7, 8, 9, 10, 11, 12]);
        assert!(g.collinear(x, y).unwrap());
        assert_eq!(x.sym_diff(y).len(), 8);
    }

    #[test]
    fn collinear_rejects_wrong_weight() {
        let g = Geometry::p4_15();
        let err = g.collinear(ps(&[1, 2, 3]), ps(&[1, 2, 3, 4, 5, 6, 7, 8]));
        assert!(matches!(err, Err(GeometryError::WrongCardinality { .. })));
    }

    #[test]
    fn geometry_needs_lines() {
        assert!(Geometry::new(15, 4).is_ok());
        assert!(matches!(
            Geometry::new(11, 4),
            Err(GeometryError::InvalidParameters { .. })
        ));
    }

    #[test]
    fn point_count_of_p4_15() {
        assert_eq!(Geometry::p4_15().points().count(), 6435);
    }

    #[test]
    fn two_noncollinear_points_span_no_line() {
        let g = Geometry::p4_15();
        let s = [ps(&[1, 2, 3, 4, 5, 6, 7, 8]), ps(&[1, 2, 3, 9, 10, 11, 12, 13])];
        assert!(g.lines_within(&s).unwrap().is_empty());
    }

    #[test]
    fn simplex_subspace_identity_labeling() {
        let identity: Vec<u8> = (1..=15).collect();
        let s = simplex_subspace(&identity).unwrap();
        assert_eq!(s.len(), 15);
        assert!(s.iter().all(|p| p.len() == 8));

        // every ground element lies in exactly 8 members, whose
        // intersection is that singleton
        for i in 1..=15u8 {
            let through: Vec<_> = s.iter().copied().filter(|p| p.contains(i)).collect();
            assert_eq!(through.len(), 8);
            let inter = through
                .iter()
                .copied()
                .reduce(|a, b| a.intersect(b))
                .unwrap();
            assert_eq!(inter, PointSet::singleton(i));
        }
    }

    #[test]
    fn simplex_subspace_is_singular_and_line_closed() {
        let identity: Vec<u8> = (1..=15).collect();
        let s = simplex_subspace(&identity).unwrap();
        let g = Geometry::p4_15();
        for (i, &a) in s.iter().enumerate() {
            for &b in &s[i + 1..] {
                assert!(g.collinear(a, b).unwrap());
                assert!(s.contains(&a.sym_diff(b)));
            }
        }
        assert_eq!(g.lines_within(&s).unwrap().len(), 35);
    }

    // independent oracle for the 35-line count: raw triple enumeration,
    // no use of lines_within
    #[test]
    fn simplex_line_count_by_triple_enumeration() {
        let identity: Vec<u8> = (1..=15).collect();
        let s = simplex_subspace(&identity).unwrap();
        let mut count = 0;
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                for k in j + 1..s.len() {
                    if s[i].sym_diff(s[j]) == s[k] {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 35);
    }

    #[test]
    fn simplex_subspace_rejects_bad_labeling() {
        assert_eq!(
            simplex_subspace(&[1; 15]),
            Err(GeometryError::BadLabeling)
        );
        assert_eq!(simplex_subspace(&[1, 2, 3]), Err(GeometryError::BadLabeling));
    }

    #[test]
    fn simplex_subspace_does_not_extend() {
        let identity: Vec<u8> = (1..=15).collect();
        let s = simplex_subspace(&identity).unwrap();
        let g = Geometry::p4_15();
        assert!(g.extension_points(&s).unwrap().is_empty());
    }

    #[test]
    fn pointset_display_and_json() {
        let p = ps(&[1, 2, 3, 4, 9, 10, 11, 12]);
        assert_eq!(p.to_string(), "{1,2,3,4,9,10,11,12}");
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            "[1,2,3,4,9,10,11,12]"
        );
        let q: PointSet = serde_json::from_str("[1,2,3,4,9,10,11,12]").unwrap();
        assert_eq!(p, q);
        assert!(serde_json::from_str::<PointSet>("[2,1]").is_err());
        assert!(serde_json::from_str::<PointSet>("[1,1]").is_err());
    }

    #[test]
    fn weight_mask_enumeration_is_increasing() {
        let masks: Vec<u64> = weight_masks(6, 3).collect();
        assert_eq!(masks.len(), 20);
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
    }
}
