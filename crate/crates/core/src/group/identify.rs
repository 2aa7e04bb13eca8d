//! Small-group identification by invariant fingerprints.
//!
//! The catalog holds exactly the isomorphism types that occur in this
//! crate (automorphism groups of the five designs and their distinguished
//! subgroups). A group is matched by the tuple (order, abelianness,
//! element-order multiset, derived-subgroup order, number of normal Sylow
//! subgroups); this is not a certified isomorphism test, but the tuple
//! separates every catalog entry from all other groups of the same order
//! that could plausibly appear, and `Unknown` is returned rather than a
//! guess.

use std::collections::BTreeMap;
use std::fmt;

use super::PermGroup;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupName {
    Trivial,
    C2,
    C3,
    C7,
    C2xC2,
    C2xC2xC2,
    S3,
    A4,
    S4,
    C7RtimesC3,
    GL32,
    C22RtimesS4,
    GL42,
    Unknown,
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupName::Trivial => "Trivial",
            GroupName::C2 => "C2",
            GroupName::C3 => "C3",
            GroupName::C7 => "C7",
            GroupName::C2xC2 => "C2xC2",
            GroupName::C2xC2xC2 => "C2xC2xC2",
            GroupName::S3 => "S3",
            GroupName::A4 => "A4",
            GroupName::S4 => "S4",
            GroupName::C7RtimesC3 => "C7:C3",
            GroupName::GL32 => "GL(3,2)",
            GroupName::C22RtimesS4 => "C2^2:S4",
            GroupName::GL42 => "GL(4,2)",
            GroupName::Unknown => "Unknown",
        };
        write!(f, "{s}")
    }
}

/// The invariants used for identification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub element_orders: BTreeMap<u64, usize>,
    pub derived_order: usize,
    pub normal_sylows: usize,
}

impl Fingerprint {
    pub fn of(g: &PermGroup) -> Fingerprint {
        let element_orders = g.element_order_multiset();
        Fingerprint {
            order: g.order(),
            abelian: g.is_abelian(),
            derived_order: g.derived_subgroup().order(),
            normal_sylows: normal_sylow_count(g.order(), &element_orders),
            element_orders,
        }
    }
}

/// Number of primes p dividing |G| whose Sylow p-subgroup is normal. A
/// Sylow p-subgroup of order p^k is normal iff it is unique, iff the
/// elements of p-power order number exactly p^k.
fn normal_sylow_count(order: usize, element_orders: &BTreeMap<u64, usize>) -> usize {
    let mut count = 0;
    let mut rest = order;
    let mut p = 2usize;
    while rest > 1 {
        if rest.is_multiple_of(p) {
            let mut pk = 1usize;
            while rest.is_multiple_of(p) {
                rest /= p;
                pk *= p;
            }
            let p_elements: usize = element_orders
                .iter()
                .filter(|(o, _)| is_power_of(**o, p as u64))
                .map(|(_, c)| c)
                .sum();
            if p_elements == pk {
                count += 1;
            }
        }
        p += 1;
    }
    count
}

fn is_power_of(mut o: u64, p: u64) -> bool {
    while o.is_multiple_of(p) {
        o /= p;
    }
    o == 1
}

fn spectrum(pairs: &[(u64, usize)]) -> BTreeMap<u64, usize> {
    pairs.iter().copied().collect()
}

/// Reference fingerprints, frozen from independent constructions of each
/// catalog group (symmetric groups on few letters, cyclic groups, the
/// Fano collineation group, the alternating group A8, and the order-96
/// center-line stabilizer arising for the C2 design).
fn catalog() -> Vec<(GroupName, Fingerprint)> {
    let entry = |name, order, abelian, orders: &[(u64, usize)], derived, sylows| {
        (
            name,
            Fingerprint {
                order,
                abelian,
                element_orders: spectrum(orders),
                derived_order: derived,
                normal_sylows: sylows,
            },
        )
    };
    vec![
        entry(GroupName::Trivial, 1, true, &[(1, 1)], 1, 0),
        entry(GroupName::C2, 2, true, &[(1, 1), (2, 1)], 1, 1),
        entry(GroupName::C3, 3, true, &[(1, 1), (3, 2)], 1, 1),
        entry(GroupName::C7, 7, true, &[(1, 1), (7, 6)], 1, 1),
        entry(GroupName::C2xC2, 4, true, &[(1, 1), (2, 3)], 1, 1),
        entry(GroupName::C2xC2xC2, 8, true, &[(1, 1), (2, 7)], 1, 1),
        entry(GroupName::S3, 6, false, &[(1, 1), (2, 3), (3, 2)], 3, 1),
        entry(GroupName::A4, 12, false, &[(1, 1), (2, 3), (3, 8)], 4, 1),
        entry(
            GroupName::S4,
            24,
            false,
            &[(1, 1), (2, 9), (3, 8), (4, 6)],
            12,
            0,
        ),
        entry(
            GroupName::C7RtimesC3,
            21,
            false,
            &[(1, 1), (3, 14), (7, 6)],
            7,
            1,
        ),
        entry(
            GroupName::GL32,
            168,
            false,
            &[(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)],
            168,
            0,
        ),
        entry(
            GroupName::C22RtimesS4,
            96,
            false,
            &[(1, 1), (2, 27), (3, 32), (4, 36)],
            48,
            0,
        ),
        entry(
            GroupName::GL42,
            20160,
            false,
            &[
                (1, 1),
                (2, 315),
                (3, 1232),
                (4, 3780),
                (5, 1344),
                (6, 5040),
                (7, 5760),
                (15, 2688),
            ],
            20160,
            0,
        ),
    ]
}

/// Catalog name of the group, or `Unknown`.
pub fn identify(g: &PermGroup) -> GroupName {
    let fp = Fingerprint::of(g);
    for (name, reference) in catalog() {
        if fp == reference {
            return name;
        }
    }
    GroupName::Unknown
}

#[cfg(test)]
mod tests {
    use super::super::{PermGroup, Permutation};
    use super::*;

    fn p(s: &str, n: u8) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn identifies_small_reference_groups() {
        assert_eq!(identify(&PermGroup::trivial(3)), GroupName::Trivial);
        let c2 = PermGroup::generate(2, &[p("(1,2)", 2)]).unwrap();
        assert_eq!(identify(&c2), GroupName::C2);
        let c3 = PermGroup::generate(3, &[p("(1,2,3)", 3)]).unwrap();
        assert_eq!(identify(&c3), GroupName::C3);
        let c7 = PermGroup::generate(7, &[p("(1,2,3,4,5,6,7)", 7)]).unwrap();
        assert_eq!(identify(&c7), GroupName::C7);
        let klein = PermGroup::generate(4, &[p("(1,2)(3,4)", 4), p("(1,3)(2,4)", 4)]).unwrap();
        assert_eq!(identify(&klein), GroupName::C2xC2);
        let e8 = PermGroup::generate(
            6,
            &[p("(1,2)", 6), p("(3,4)", 6), p("(5,6)", 6)],
        )
        .unwrap();
        assert_eq!(identify(&e8), GroupName::C2xC2xC2);
        let s3 = PermGroup::generate(3, &[p("(1,2)", 3), p("(1,2,3)", 3)]).unwrap();
        assert_eq!(identify(&s3), GroupName::S3);
        let a4 = PermGroup::generate(4, &[p("(1,2)(3,4)", 4), p("(1,2,3)", 4)]).unwrap();
        assert_eq!(identify(&a4), GroupName::A4);
        let s4 = PermGroup::generate(4, &[p("(1,2)", 4), p("(1,2,3,4)", 4)]).unwrap();
        assert_eq!(identify(&s4), GroupName::S4);
    }

    #[test]
    fn identifies_frobenius_21() {
        // x -> x+1 and x -> 2x on Z/7, written on points 1..7
        let g = PermGroup::generate(
            7,
            &[p("(1,2,3,4,5,6,7)", 7), p("(2,3,5)(4,7,6)", 7)],
        )
        .unwrap();
        assert_eq!(g.order(), 21);
        assert_eq!(identify(&g), GroupName::C7RtimesC3);
        assert_eq!(
            g.element_order_multiset(),
            spectrum(&[(1, 1), (3, 14), (7, 6)])
        );
    }

    #[test]
    fn off_catalog_groups_are_unknown() {
        let c4 = PermGroup::generate(4, &[p("(1,2,3,4)", 4)]).unwrap();
        assert_eq!(identify(&c4), GroupName::Unknown);
        let d4 = PermGroup::generate(4, &[p("(1,2,3,4)", 4), p("(1,3)", 4)]).unwrap();
        assert_eq!(identify(&d4), GroupName::Unknown);
        let c6 = PermGroup::generate(5, &[p("(1,2)(3,4,5)", 5)]).unwrap();
        assert_eq!(identify(&c6), GroupName::Unknown);
    }

    #[test]
    fn fingerprint_separates_same_order_pairs() {
        // C2^3 vs D4: same order, different spectra
        let e8 = PermGroup::generate(
            6,
            &[p("(1,2)", 6), p("(3,4)", 6), p("(5,6)", 6)],
        )
        .unwrap();
        let d4 = PermGroup::generate(4, &[p("(1,2,3,4)", 4), p("(1,3)", 4)]).unwrap();
        assert_ne!(
            Fingerprint::of(&e8).element_orders,
            Fingerprint::of(&d4).element_orders
        );
        // S3 vs C6
        let s3 = PermGroup::generate(3, &[p("(1,2)", 3), p("(1,2,3)", 3)]).unwrap();
        let c6 = PermGroup::generate(5, &[p("(1,2)(3,4,5)", 5)]).unwrap();
        assert_ne!(Fingerprint::of(&s3), Fingerprint::of(&c6));
    }
}
