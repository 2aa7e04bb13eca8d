//! Brute-force search for the full automorphism group of a design.
//!
//! Two independent searches are provided: the main backtracking search
//! with bitmask constraint propagation, and a deliberately naive
//! filtered search used to cross-check it. Both return the full
//! element set, so downstream structure checks are exact.

use crate::design::Design;
use crate::group::{PermGroup, Permutation};

/// Per-block candidate masks: `cand[b]` has bit c set while block b
/// could still map onto block c under the partial point assignment.
const MAX_BLOCKS: usize = 64;

struct Search<'a> {
    n: usize,
    /// containing[p] = bitmask of blocks containing point p (1-based).
    containing: Vec<u64>,
    design: &'a Design,
    images: Vec<u8>,
    used: u64,
    found: Vec<Permutation>,
}

impl Search<'_> {
    fn run(&mut self) {
        let nb = self.design.blocks().len();
        let full = if nb == 64 { u64::MAX } else { (1u64 << nb) - 1 };
        let cand = [full; MAX_BLOCKS];
        self.rec(1, &cand[..nb]);
    }

    fn rec(&mut self, p: usize, cand: &[u64]) {
        if p > self.n {
            let pi = Permutation::from_images(self.images.clone())
                .expect("assigned images form a bijection");
            debug_assert!(self
                .design
                .blocks()
                .iter()
                .all(|&b| self.design.is_block(pi.apply_to_set(b))));
            self.found.push(pi);
            return;
        }
        let mut next = [0u64; MAX_BLOCKS];
        let in_blocks = self.containing[p];
        for q in 1..=self.n as u8 {
            if self.used >> q & 1 == 1 {
                continue;
            }
            let img_blocks = self.containing[q as usize];
            let mut ok = true;
            for (b, &c) in cand.iter().enumerate() {
                // a block through p must map onto a block through q,
                // a block avoiding p onto a block avoiding q
                let narrowed = if in_blocks >> b & 1 == 1 {
                    c & img_blocks
                } else {
                    c & !img_blocks
                };
                if narrowed == 0 {
                    ok = false;
                    break;
                }
                next[b] = narrowed;
            }
            if !ok {
                continue;
            }
            self.images[p - 1] = q;
            self.used |= 1 << q;
            self.rec(p + 1, &next[..cand.len()]);
            self.used &= !(1 << q);
        }
    }
}

/// All permutations of \[n\] mapping the block set onto itself, found by
/// backtracking over point images. Each tentative image narrows every
/// block's candidate set; a block with no candidates left kills the
/// branch, and at full depth the nonempty candidate sets certify that
/// every block maps onto a block.
pub fn full_automorphism_group(design: &Design) -> PermGroup {
    let n = design.n() as usize;
    let mut containing = vec![0u64; n + 1];
    for (i, b) in design.blocks().iter().enumerate() {
        for p in b.iter() {
            containing[p as usize] |= 1 << i;
        }
    }
    let mut search = Search {
        n,
        containing,
        design,
        images: vec![0; n],
        used: 0,
        found: Vec::new(),
    };
    search.run();
    PermGroup::from_elements(design.n(), search.found).expect("automorphisms form a group")
}

/// A second, deliberately simple search kept structurally different
/// from the main one: extends point images in plain order and only
/// prunes by per-block existence — after each assignment, every block
/// restricted to the assigned points must look like some block
/// restricted to the image points. Used as a cross-check oracle.
pub fn naive_automorphism_search(design: &Design) -> PermGroup {
    let n = design.n();
    let masks: Vec<u64> = design.blocks().iter().map(|b| b.mask()).collect();
    let mut found = Vec::new();
    let mut images: Vec<u8> = vec![0; n as usize];
    rec_naive(design, &masks, &mut images, 0, 0, &mut found);
    PermGroup::from_elements(n, found).expect("automorphisms form a group")
}

fn rec_naive(
    design: &Design,
    masks: &[u64],
    images: &mut Vec<u8>,
    depth: usize,
    image_set: u64,
    found: &mut Vec<Permutation>,
) {
    if depth == design.n() as usize {
        found.push(Permutation::from_images(images.clone()).expect("bijection"));
        return;
    }
    // element e is bit e-1 of a PointSet mask; point depth+1 is bit depth
    for q in 1..=design.n() {
        if image_set >> (q - 1) & 1 == 1 {
            continue;
        }
        images[depth] = q;
        let image_set2 = image_set | 1 << (q - 1);
        let viable = masks.iter().all(|&b| {
            let mut pattern = 0u64;
            for (i, &v) in images[..=depth].iter().enumerate() {
                if b >> i & 1 == 1 {
                    pattern |= 1 << (v - 1);
                }
            }
            masks.iter().any(|&c| c & image_set2 == pattern)
        });
        if viable {
            rec_naive(design, masks, images, depth + 1, image_set2, found);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{build_type, CliqueType};

    #[test]
    fn searched_orders_for_fast_types() {
        assert_eq!(full_automorphism_group(&build_type(CliqueType::C4)).order(), 168);
        assert_eq!(full_automorphism_group(&build_type(CliqueType::NC)).order(), 168);
        assert_eq!(full_automorphism_group(&build_type(CliqueType::C3)).order(), 96);
    }

    #[test]
    fn searched_order_c2() {
        assert_eq!(full_automorphism_group(&build_type(CliqueType::C2)).order(), 576);
    }

    #[test]
    fn searched_order_c1() {
        assert_eq!(full_automorphism_group(&build_type(CliqueType::C1)).order(), 20160);
    }

    #[test]
    fn both_searches_agree() {
        for t in [CliqueType::C4, CliqueType::C3] {
            let d = build_type(t);
            assert_eq!(full_automorphism_group(&d), naive_automorphism_search(&d), "{t}");
        }
    }

    #[test]
    fn automorphisms_of_complement_coincide() {
        let d = build_type(CliqueType::C3);
        assert_eq!(
            full_automorphism_group(&d),
            full_automorphism_group(&d.complement())
        );
    }

    #[test]
    fn relabeled_design_has_conjugate_group() {
        let pi = Permutation::parse("(1,15)(2,14)(3,13)(4,12)(5,11)(6,10)(7,9)", 15).unwrap();
        let d = build_type(CliqueType::C4);
        let g = full_automorphism_group(&d);
        let h = full_automorphism_group(&d.relabel(&pi));
        assert_eq!(g.order(), h.order());
        let conjugated: Vec<Permutation> =
            g.elements().iter().map(|e| e.conjugate_by(&pi)).collect();
        assert_eq!(PermGroup::from_elements(15, conjugated).unwrap(), h);
    }
}
