//! The five symmetric (15,8,4)-designs.
//!
//! A symmetric (15,8,4)-design is equivalent to a 15-clique of the
//! collinearity graph of the geometry P_4(15), whose points are the
//! 8-subsets of a 15-element ground set. This crate builds the five
//! isomorphism types (C1, C2, C3, C4, NC) from bijections of the Fano
//! plane onto its quartic relabeling, classifies arbitrary designs,
//! computes automorphism groups both from explicit generators and by
//! exhaustive backtracking, and checks the structural facts relating
//! them (semidirect decompositions, orbit partitions, duality,
//! pyramidality).

pub mod design;
pub mod fano;
pub mod geometry;
pub mod group;
pub mod verify;

pub use design::{
    build_centered, build_type, canonical_o, canonical_z, delta_consistency, extract_delta,
    CliqueType, Design, DesignError,
};
pub use fano::{
    canonical_fano, find_bijection_of_index, g_delta, g_delta_generators,
    induced_ground_permutation, quartic_fano, FanoBijection, FanoError, FanoPlane,
};
pub use geometry::{third_point, Geometry, GeometryError, Line, PointSet};
pub use group::{
    alpha_l, block_orbits, c2_case_tower, c2_cubed, c2_cubed_with, constructed_aut_o,
    default_seven_subset, flag_transitive, full_automorphism_group, g_of_z, group_report,
    identify, naive_automorphism_search, point_orbits, pyramidal_check, stabilizer_of_center,
    verify_semidirect, C2Tower, GroupError, GroupName, GroupReport, PermGroup, Permutation,
};
pub use verify::{Check, Scope, VerificationReport};
