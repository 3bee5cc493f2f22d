//! Hochschild cohomology of equivariant matrix factorization categories
//! `MF(K^N, Gamma_w, w)` for diagonal polynomials `w`, computed exactly.
//!
//! The pipeline is: [`diagpoly::DiagonalPolynomial`] gives the character
//! lattice ([`charlat`]), presented through a Smith decomposition
//! ([`intlat`]); the finite group ker(chi) indexes the sectors summed by
//! [`hhengine`].

pub mod charlat;
pub mod diagpoly;
pub mod error;
pub mod hhengine;
pub mod intlat;

pub use charlat::{enumerate_ker_chi, CharacterLattice, GroupElement, Phase, Weight, Z0};
pub use diagpoly::{jacobi_basis, DiagonalPolynomial, JacobiBasisElement, Restriction};
pub use error::{Error, Result};
pub use hhengine::{
    hh_bruteforce, hh_dimension, hh_range, verify_proposition, DegreeCheck, DegreeResult, EngineKind,
    HHContribution, HHEngine, HHReport, PropositionReport, PropositionStatus, Summand,
};
pub use intlat::{cokernel, smith_normal_form, AbelianGroupStructure, IntMatrix, SmithDecomposition};
