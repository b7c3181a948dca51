//! Exact computation with K-theoretic Schur P- and Q-functions: shifted
//! shapes, tableau enumeration, sparse `ℤ[β]` polynomial arithmetic,
//! basis expansions, dual functions and identity verification.

pub mod genfun;
pub mod identities;
pub mod polyring;
pub mod shapes;
pub mod tableaux;
