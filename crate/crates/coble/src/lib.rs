//! Exact-arithmetic machinery for the moduli of marked cubic surfaces.
//!
//! A marked smooth cubic surface is the blow-up of the projective plane in six
//! points in general position. This crate implements the classical invariant
//! theory attached to that picture, entirely over the rationals and entirely
//! exactly:
//!
//! - [`plane`]: six-point configurations, general position, the naive
//!   `(w, x, y, z)` coordinates and their special self-maps;
//! - [`gamma`]: Coble's 40 irrational invariants, their canonical symbols,
//!   power sums and the sampled relation spaces of the gamma variety;
//! - [`weyl`]: `W(E6)` as a permutation group of the 27 line labels together
//!   with its signed permutation action on the invariants;
//! - [`clebsch`]: Clebsch's invariant vector in the weighted projective space
//!   `P(1,2,3,4,5)`, from power sums and from pentahedral coefficients;
//! - [`surface`]: explicit cubic surfaces as 20 exact coefficients, including
//!   the Galois descent of the pentahedral family (the equation problem);
//! - [`twist`]: rational descent spaces of twisted gamma varieties, cubic
//!   relation transport, bounded point search and surface recovery;
//! - [`exact`]: the substrate of big rationals, univariate polynomials,
//!   quotient-ring arithmetic, dense exact linear algebra and LLL reduction.

pub mod clebsch;
pub mod exact;
pub mod gamma;
pub mod plane;
pub mod surface;
pub mod twist;
pub mod weyl;
