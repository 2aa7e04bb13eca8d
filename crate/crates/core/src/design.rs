//! Symmetric designs as block lists, and the five (15,8,4) types.
//!
//! A symmetric design here is n blocks over n points, all blocks the
//! same size k, any two meeting in exactly λ = k(k−1)/(n−1) points.
//! For (15,8,4) the blocks are points of 𝒫₄(15) and the design axioms
//! say exactly that they form a 15-clique of the collinearity graph.
//! The five isomorphism types C1–C4 and NC are constructed from a
//! center block O, a 7-subset Z ⊂ O and a Fano bijection
//! δ : ℱ_O → ℱ_Z between quartic planes; the index of δ decides the
//! type, and NC arises as the dual of C4.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

use crate::fano::{find_bijection_of_index, quartic_fano, FanoBijection, FanoError, FanoPlane};
use crate::geometry::{Geometry, GeometryError, Line, PointSet};
use crate::group::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DesignError {
    #[error("a design on {n} points needs exactly {n} blocks, got {got}")]
    WrongBlockCount { n: u8, got: usize },
    #[error("block {index} has {got} points, expected {expected}")]
    WrongBlockSize { index: usize, got: u32, expected: u32 },
    #[error("block {index} is not a subset of the ground set [{n}]")]
    BlockOutOfRange { index: usize, n: u8 },
    #[error("design axiom violated: blocks {i} and {j} intersect in {got} points, expected {expected}")]
    IntersectionViolation {
        i: usize,
        j: usize,
        got: u32,
        expected: u32,
    },
    #[error("no symmetric design parameters fit block size {k} on {n} points")]
    BadParameters { n: u8, k: u32 },
    #[error("point {point} lies in {got} blocks, expected {expected}")]
    BadReplication { point: u8, got: usize, expected: u32 },
    #[error("{0} is not a block of the design")]
    NotABlock(PointSet),
    #[error("{0} is not a center point of the design")]
    NotACenter(PointSet),
    #[error("blocks are not points of a P_m(n) geometry; lines and centers are undefined")]
    NotAClique,
    #[error("classification applies to (15,8,4) designs; got n={n}, block size {k}")]
    NotClassifiable { n: u8, k: u32 },
    #[error("invariant pair (centers={centers}, lines={lines}) matches none of the five types")]
    UnknownInvariant { centers: usize, lines: usize },
    #[error("{0} is not a 7-element subset of {1}")]
    NotASevenSubset(PointSet, PointSet),
    #[error("the bijection is not between the quartic planes of the complement of O and of Z")]
    WrongPlanes,
    #[error("the two extracted bijections do not share a source plane")]
    MismatchedSources,
    #[error("unknown design type {0:?}; expected one of C1, C2, C3, C4, NC")]
    UnknownType(String),
    #[error("{0:?} is not a line of the plane F_Z")]
    NotALine([PointSet; 3]),
    #[error("expected a design of type {expected}, got {got}")]
    WrongDesignType {
        expected: CliqueType,
        got: CliqueType,
    },
    #[error("permutation {0} does not map the block set to itself")]
    NotAnAutomorphism(String),
    #[error("permutation degree {0} does not match the design on [{1}]")]
    DegreeMismatch(u8, u8),
    #[error("structural guarantee violated: {0}")]
    Structure(String),
    #[error(transparent)]
    Fano(#[from] FanoError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

/// The five isomorphism types of symmetric (15,8,4)-designs, named by
/// the clique structure of their block sets in 𝒫₄(15): C1–C4 are
/// centered with 15, 3, 1, 1 center points; NC is non-centered.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum CliqueType {
    C1,
    C2,
    C3,
    C4,
    NC,
}

impl CliqueType {
    pub const ALL: [CliqueType; 5] = [
        CliqueType::C1,
        CliqueType::C2,
        CliqueType::C3,
        CliqueType::C4,
        CliqueType::NC,
    ];

    /// The index of the defining Fano bijection for the centered types;
    /// NC is not built directly from a bijection.
    pub fn bijection_index(self) -> Option<u32> {
        match self {
            CliqueType::C1 => Some(7),
            CliqueType::C2 => Some(3),
            CliqueType::C3 => Some(1),
            CliqueType::C4 => Some(0),
            CliqueType::NC => None,
        }
    }
}

impl fmt::Display for CliqueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CliqueType::C1 => "C1",
            CliqueType::C2 => "C2",
            CliqueType::C3 => "C3",
            CliqueType::C4 => "C4",
            CliqueType::NC => "NC",
        })
    }
}

impl FromStr for CliqueType {
    type Err = DesignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "C1" => Ok(CliqueType::C1),
            "C2" => Ok(CliqueType::C2),
            "C3" => Ok(CliqueType::C3),
            "C4" => Ok(CliqueType::C4),
            "NC" => Ok(CliqueType::NC),
            _ => Err(DesignError::UnknownType(s.to_string())),
        }
    }
}

/// A symmetric (n, k, λ) design: n blocks over the points \[n\], pairwise
/// intersections of constant size λ. Block order is meaningful for
/// I/O and duality; equality compares ordered block lists.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Design {
    n: u8,
    blocks: Vec<PointSet>,
}

impl Design {
    pub fn new(n: u8, blocks: Vec<PointSet>) -> Result<Design, DesignError> {
        if !(2..=64).contains(&n) || blocks.is_empty() {
            return Err(DesignError::BadParameters {
                n,
                k: blocks.first().map_or(0, |b| b.len()),
            });
        }
        if blocks.len() != n as usize {
            return Err(DesignError::WrongBlockCount {
                n,
                got: blocks.len(),
            });
        }
        let full = PointSet::full(n);
        let k = blocks[0].len();
        for (index, b) in blocks.iter().enumerate() {
            if !b.is_subset_of(full) {
                return Err(DesignError::BlockOutOfRange { index, n });
            }
            if b.len() != k {
                return Err(DesignError::WrongBlockSize {
                    index,
                    got: b.len(),
                    expected: k,
                });
            }
        }
        let lambda_num = k * (k - 1);
        let denom = (n - 1) as u32;
        if k < 2 || k >= n as u32 || !lambda_num.is_multiple_of(denom) {
            return Err(DesignError::BadParameters { n, k });
        }
        let lambda = lambda_num / denom;
        if lambda == 0 {
            return Err(DesignError::BadParameters { n, k });
        }
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                let got = blocks[i].intersect(blocks[j]).len();
                if got != lambda {
                    return Err(DesignError::IntersectionViolation {
                        i,
                        j,
                        got,
                        expected: lambda,
                    });
                }
            }
        }
        // replication is forced by the axioms above; checked anyway
        for point in 1..=n {
            let got = blocks
                .iter()
                .filter(|b| b.contains(point))
                .count();
            if got != k as usize {
                return Err(DesignError::BadReplication {
                    point,
                    got,
                    expected: k,
                });
            }
        }
        Ok(Design { n, blocks })
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn blocks(&self) -> &[PointSet] {
        &self.blocks
    }

    pub fn block_size(&self) -> u32 {
        self.blocks[0].len()
    }

    pub fn lambda(&self) -> u32 {
        self.block_size() * (self.block_size() - 1) / (self.n - 1) as u32
    }

    pub fn is_block(&self, b: PointSet) -> bool {
        self.blocks.contains(&b)
    }

    /// The design with points and blocks swapped: block j of the dual
    /// is the set of (1-based) indices of blocks containing point j,
    /// i.e. the incidence matrix is transposed.
    pub fn dual(&self) -> Design {
        let blocks: Vec<PointSet> = (1..=self.n)
            .map(|point| {
                let mut mask = 0u64;
                for (i, b) in self.blocks.iter().enumerate() {
                    if b.contains(point) {
                        mask |= 1 << i;
                    }
                }
                PointSet::from_mask(mask)
            })
            .collect();
        Design::new(self.n, blocks).expect("dual of a symmetric design is a symmetric design")
    }

    /// The design whose blocks are the complements in \[n\]; turns a
    /// (15,8,4) design into a (15,7,3) design and back.
    pub fn complement(&self) -> Design {
        let blocks = self.blocks.iter().map(|b| b.complement(self.n)).collect();
        Design::new(self.n, blocks).expect("complement of a symmetric design is symmetric")
    }

    /// Applies a ground-set permutation to every block, keeping block
    /// order; the result is an isomorphic design.
    pub fn relabel(&self, pi: &Permutation) -> Design {
        assert_eq!(pi.degree(), self.n, "permutation degree must match the ground set");
        let blocks = self.blocks.iter().map(|b| pi.apply_to_set(*b)).collect();
        Design::new(self.n, blocks).expect("relabeling preserves the design axioms")
    }

    /// Whether the permutation maps the block set onto itself.
    pub fn is_automorphism(&self, pi: &Permutation) -> bool {
        pi.degree() == self.n && self.blocks.iter().all(|&b| self.is_block(pi.apply_to_set(b)))
    }

    /// The n×n 0/1 incidence matrix; row i = block i, column j = point j.
    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        self.blocks
            .iter()
            .map(|b| (1..=self.n).map(|p| u8::from(b.contains(p))).collect())
            .collect()
    }

    fn geometry(&self) -> Result<Geometry, DesignError> {
        if self.block_size() != 2 * self.lambda() {
            return Err(DesignError::NotAClique);
        }
        Geometry::new(self.n, self.lambda() as u8).map_err(DesignError::Geometry)
    }

    /// Lines of 𝒫_m(n) lying inside the block set.
    pub fn internal_lines(&self) -> Result<Vec<Line>, DesignError> {
        Ok(self.geometry()?.lines_within(&self.blocks)?)
    }

    /// Blocks O such that the line through O and any other block stays
    /// in the block set, i.e. O △ B is a block for every block B ≠ O.
    pub fn center_points(&self) -> Result<Vec<PointSet>, DesignError> {
        self.geometry()?;
        Ok(self
            .blocks
            .iter()
            .copied()
            .filter(|&o| {
                self.blocks
                    .iter()
                    .all(|&b| b == o || self.is_block(o.sym_diff(b)))
            })
            .collect())
    }

    /// Decides the isomorphism type from the pair (center count,
    /// internal line count), which separates the five types:
    /// (15,35), (3,19), (1,11), (1,7), (0,7).
    pub fn classify(&self) -> Result<CliqueType, DesignError> {
        if self.n != 15 || self.block_size() != 8 {
            return Err(DesignError::NotClassifiable {
                n: self.n,
                k: self.block_size(),
            });
        }
        let centers = self.center_points()?.len();
        let lines = self.internal_lines()?.len();
        match (centers, lines) {
            (15, 35) => Ok(CliqueType::C1),
            (3, 19) => Ok(CliqueType::C2),
            (1, 11) => Ok(CliqueType::C3),
            (1, 7) => Ok(CliqueType::C4),
            (0, 7) => Ok(CliqueType::NC),
            (centers, lines) => Err(DesignError::UnknownInvariant { centers, lines }),
        }
    }
}

impl<'de> Deserialize<'de> for Design {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u8,
            blocks: Vec<PointSet>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Design::new(raw.n, raw.blocks).map_err(serde::de::Error::custom)
    }
}

/// The canonical center block {1,…,8}.
pub fn canonical_o() -> PointSet {
    PointSet::from_elems(1..=8).expect("static set")
}

/// The canonical 7-subset {1,…,7} of the canonical center.
pub fn canonical_z() -> PointSet {
    PointSet::from_elems(1..=7).expect("static set")
}

/// Builds the centered design on \[15\] with center O from a bijection
/// δ : ℱ_O → ℱ_Z: blocks are O, then for each source point X in plane
/// order the pair X∪δ(X), X∪(O∖δ(X)). The index of δ decides the type
/// (7, 3, 1, 0 → C1, C2, C3, C4).
pub fn build_centered(
    o: PointSet,
    z: PointSet,
    d: &FanoBijection<PointSet, PointSet>,
) -> Result<Design, DesignError> {
    if o.len() != 8 || !o.is_subset_of(PointSet::full(15)) {
        return Err(DesignError::NotABlock(o));
    }
    if z.len() != 7 || !z.is_subset_of(o) {
        return Err(DesignError::NotASevenSubset(z, o));
    }
    let f_o = quartic_fano(o.complement(15))?;
    let f_z = quartic_fano(z)?;
    if d.source() != &f_o || d.target() != &f_z {
        return Err(DesignError::WrongPlanes);
    }
    let mut blocks = Vec::with_capacity(15);
    blocks.push(o);
    for (i, &x) in f_o.points().iter().enumerate() {
        let image = f_z.points()[d.apply_index(i as u8) as usize];
        blocks.push(x.union(image));
        blocks.push(x.union(o.difference(image)));
    }
    Design::new(15, blocks)
}

/// The canonical representative of each type: C1–C4 via build_centered
/// with O = {1..8}, Z = {1..7} and the first bijection of the matching
/// index; NC as the dual of C4. Deterministic.
pub fn build_type(t: CliqueType) -> Design {
    match t.bijection_index() {
        Some(idx) => {
            let o = canonical_o();
            let z = canonical_z();
            let f_o = quartic_fano(o.complement(15)).expect("canonical ground");
            let f_z = quartic_fano(z).expect("canonical ground");
            let d = find_bijection_of_index(&f_o, &f_z, idx).expect("all indices realizable");
            build_centered(o, z, &d).expect("centered construction yields a design")
        }
        None => build_type(CliqueType::C4).dual(),
    }
}

/// Reads the bijection δ_Z back out of a block set centered at O: each
/// non-center block splits as X ∪ W with X ⊆ Oᶜ and W ⊆ O, the X's
/// form a plane, and δ_Z(X) is the W-part lying inside Z. Source and
/// target planes are rebuilt from the blocks with points in ascending
/// order, so extractions for different Z share the source plane.
pub fn extract_delta(
    design: &Design,
    o: PointSet,
    z: PointSet,
) -> Result<FanoBijection<PointSet, PointSet>, DesignError> {
    if design.n() != 15 || design.block_size() != 8 {
        return Err(DesignError::NotClassifiable {
            n: design.n(),
            k: design.block_size(),
        });
    }
    if !design.is_block(o) {
        return Err(DesignError::NotABlock(o));
    }
    if z.len() != 7 || !z.is_subset_of(o) {
        return Err(DesignError::NotASevenSubset(z, o));
    }
    let oc = o.complement(15);
    let mut halves: BTreeMap<PointSet, Vec<PointSet>> = BTreeMap::new();
    for &b in design.blocks() {
        if b == o {
            continue;
        }
        halves.entry(b.intersect(oc)).or_default().push(b.intersect(o));
    }
    if halves.len() != 7 {
        return Err(DesignError::NotACenter(o));
    }
    let mut source_points = Vec::with_capacity(7);
    let mut images = Vec::with_capacity(7);
    for (&x, ws) in &halves {
        let [w0, w1] = ws.as_slice() else {
            return Err(DesignError::NotACenter(o));
        };
        if w0.sym_diff(*w1) != o {
            return Err(DesignError::NotACenter(o));
        }
        let in_z = match (w0.is_subset_of(z), w1.is_subset_of(z)) {
            (true, false) => *w0,
            (false, true) => *w1,
            _ => return Err(DesignError::NotACenter(o)),
        };
        source_points.push(x);
        images.push(in_z);
    }
    let mut target_points = images.clone();
    target_points.sort_unstable();
    let source = plane_from_points(source_points)?;
    let target = plane_from_points(target_points)?;
    let mut map = [0u8; 7];
    for (i, w) in images.iter().enumerate() {
        map[i] = target.point_index(w).expect("image is a target point");
    }
    Ok(FanoBijection::new(source, target, map)?)
}

/// Closes a 7-point family under symmetric difference into a quartic
/// plane; fails if the family is not line-closed.
fn plane_from_points(points: Vec<PointSet>) -> Result<FanoPlane<PointSet>, FanoError> {
    let mut lines = Vec::new();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let d = points[a].sym_diff(points[b]);
            if let Some(c) = points.iter().position(|&p| p == d) {
                if c > b {
                    lines.push([a as u8, b as u8, c as u8]);
                }
            }
        }
    }
    FanoPlane::new(points, lines)
}

/// Checks the compatibility of two extractions from one block set:
/// δ_{Z′}(X) equals δ_Z(X) exactly when δ_Z(X) lies on the common line
/// of ℱ_Z and ℱ_{Z′} (the points inside the 6-set Z∩Z′), and equals
/// O∖δ_Z(X) otherwise.
pub fn delta_consistency(
    o: PointSet,
    z: PointSet,
    z_prime: PointSet,
    d_z: &FanoBijection<PointSet, PointSet>,
    d_z_prime: &FanoBijection<PointSet, PointSet>,
) -> Result<bool, DesignError> {
    for s in [z, z_prime] {
        if s.len() != 7 || !s.is_subset_of(o) {
            return Err(DesignError::NotASevenSubset(s, o));
        }
    }
    if d_z.source() != d_z_prime.source() {
        return Err(DesignError::MismatchedSources);
    }
    let common = z.intersect(z_prime);
    for i in 0..7u8 {
        let w = d_z.target().points()[d_z.apply_index(i) as usize];
        let w_prime = d_z_prime.target().points()[d_z_prime.apply_index(i) as usize];
        let expected = if w.is_subset_of(common) {
            w
        } else {
            o.difference(w)
        };
        if w_prime != expected {
            return Ok(false);
        }
    }
    Ok(true)
}
