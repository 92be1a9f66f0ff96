//! Brute-force checks that do not use the closed-form theory.

pub mod lattice;
pub mod local;
pub mod subgroups;

pub use local::{count_maximal_orders_local, LocalLatticeVertex};
pub use subgroups::{enumerate_torsion_elements, find_subgroup, verify_witness, SubgroupWitness};
