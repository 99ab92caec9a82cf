//! Combinatorics of compactified Picard varieties of nodal curves, read off
//! their dual graphs: Basic Inequality bounds, (stably) balanced
//! multidegrees, the degree class group, and the d-special strata of the
//! moduli space of stable curves.

pub mod balance;
pub mod degree_class;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod smith;
pub mod strata;

pub use balance::{
    basic_bounds, classify, enumerate_balanced, reflect_twist, twist, BalanceClass, BalancedSet, BasicBounds,
    Multidegree,
};
pub use degree_class::{
    class_group, class_representatives, same_class, semibalanced_representative, twister_lattice, ClassLabel,
    DegreeClassGroup, TwisterLattice,
};
pub use error::{Error, Result};
pub use graph::{DualGraph, GraphFile, StabilityClass, Subcurve, SubcurveInvariants, Vertex, VertexSet};
pub use strata::{
    divisor_lattice, enumerate_special_vine_generators, gcd_invariant, is_d_general, positive_degree_representative,
    stratum_containment, GcdInvariant, Method, StratumLattice, VineGenerator,
};
