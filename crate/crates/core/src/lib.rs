//! Executable category-theoretic disjointness.
//!
//! This crate makes a family of constructions on finite categories runnable
//! and exhaustively checkable:
//!
//! - [`relcore`]: dense binary relations with symmetric, reflexive-transitive
//!   and neighborhood-basis topological closures;
//! - [`fincat`]: explicitly tabulated categories, functors and law
//!   validation with witnesses;
//! - [`disjoint`]: disjointness relations on conterminous morphism pairs,
//!   their axioms, pullbacks, and the wide subcategory of overlap-monic
//!   morphisms on which the relation becomes an orthogonality relation;
//! - [`lattice`], [`causal`], [`chiral`]: finite patches of the 2D lightcone
//!   lattice as discrete spacetime models, with causal and chiral
//!   reachability, hierarchy classifiers, Cauchy sets, the quotient to
//!   bundles of chains, and a scalar transport demo;
//! - [`suites`]: randomized theorem suites checking the characterisations of
//!   overlap-monics on generated patch categories, with counterexample
//!   reporting;
//! - [`dot`]: graph exports.
//!
//! Everything is immutable after construction and all checks are pure, so
//! suite instances can be distributed across threads freely.

pub mod causal;
pub mod chiral;
pub mod disjoint;
pub mod dot;
pub mod fincat;
pub mod lattice;
pub mod relcore;
pub mod suites;
