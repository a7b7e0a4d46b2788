//! Exact computations with finite lattices, posets and the representation
//! theory of the monoid of binary relations on a finite set.
//!
//! The crate is organised bottom-up:
//!
//! * [`correspondence`]: Boolean matrices and their composition.
//! * [`poset`]: finite posets, ideals, automorphisms, canonical forms and
//!   enumeration up to isomorphism.
//! * [`lattice`]: finite lattices, irreducible elements and the derived
//!   subsets `ΛE`, `Ĝ`, `G` together with reduction sequences.
//! * [`functor`]: formal sums of maps `X → T`, the idempotents `u_a`, the
//!   basis `B_X` and representation matrices of relations.
//! * [`dimension`]: closed-form dimension counts and the Jacobson radical.
//! * [`oracle`]: exact linear algebra used to certify the basis results
//!   independently of the closed forms.
//!
//! Coefficient-carrying types are generic over [`Scalar`]; the aliases below
//! fix the exact choices used throughout the engine.

pub mod catalog;
pub mod correspondence;
pub mod dimension;
pub mod error;
pub mod functor;
pub mod lattice;
pub mod oracle;
pub mod perm;
pub mod poset;
pub mod scalar;

pub use correspondence::Correspondence;
pub use error::{Axiom, Error, Result};
pub use lattice::{GData, Irreducibles, Lattice};
pub use perm::{Perm, PermGroup};
pub use poset::Poset;
pub use scalar::{DivScalar, Scalar};

/// Integer coefficients of formal sums.
pub type Coeff = num_bigint::BigInt;
/// Exact rationals used for representation matrices.
pub type Rational = num_rational::BigRational;
/// A formal sum of maps with integer coefficients.
pub type MapSum = functor::FormalMapSum<Coeff>;
/// Integer matrix, used by the rank oracle.
pub type IntMatrix = oracle::Matrix<Coeff>;
/// Rational matrix, used for representation matrices.
pub type RationalMatrix = oracle::Matrix<Rational>;
