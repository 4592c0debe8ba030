//! Self-contained special functions: Bessel functions of four kinds for
//! real order and complex argument, half-integer closed forms, Jacobi and
//! associated Legendre polynomials, and terminating Gauss sums.
//!
//! Everything here is pure and deterministic; nothing requires external
//! tables or global state.

mod bessel;
mod dd;
pub mod gamma;
mod orthopoly;

pub use bessel::{
    bessel, bessel_checked, bessel_half_integer, cospi, j_half_real, sinpi, sph_jn_all, sph_yn_all,
    BesselKind, BesselValue,
};
pub use gamma::{gamma, gamma_ratio, ln_gamma};
pub use orthopoly::{assoc_legendre, hypergeom_terminating, jacobi_poly};
