//! Deciding whether a Littlewood-Richardson polynomial `C^nu_{lambda,mu}`
//! vanishes.
//!
//! The decision reduces to rational feasibility of an explicit polytope
//! whose integer points are the row statistics of edge-labeled tableaux
//! ([`polytope`]), solved exactly by [`lp`]. Two brute-force oracles check
//! it: enumeration of edge-labeled tableaux ([`tableau`]) and expansion of
//! factorial Schur products from plus diagrams ([`schur`]).

pub mod error;
pub mod lp;
pub mod partition;
pub mod poly;
pub mod polytope;
pub mod schur;
pub mod tableau;
mod ypoly;

pub use error::{Error, Result};
pub use partition::{parse_partition, Partition, SkewShape};
pub use polytope::{
    build_constraints, decide_classical_vanishing, decide_vanishing, decide_vanishing_with, dilate_check,
    ConstraintSystem, DecideOptions, VanishingVerdict,
};
pub use tableau::{enumerate_tableaux, reconstruct_witness, EdgeLabeledTableau, ReadingWord, RowStatistics};
