//! Hecke-Baxter operators on principal series of GL(n, ℝ).
//!
//! The crate evaluates Archimedean L-factors in closed form and checks, by
//! Monte-Carlo integration over the group, that convolution with the kernel
//! `Q̂_s = Δ_W · Q_s` multiplies every ε-spherical vector by `L(s | ε, γ)`.

pub mod character;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod exterior;
pub mod fourier;
pub mod hecke;
pub mod matrix;
pub mod mc;
pub mod quadrature;
pub mod signature;
pub mod special;

pub use character::{borel_character, rho, SpectralParams};
pub use decompose::{cartan_decompose, iwasawa_decompose, CartanFactors, DecompositionResiduals, IwasawaFactors};
pub use error::{Error, Result};
pub use exterior::{
    delta_w, delta_w_charpoly_oracle, delta_w_polynomial, epsilon_spherical, minor_matrix_element, phi_basis,
    MultilinearPolynomial, SphericalVector,
};
pub use matrix::{RealSquareMatrix, MAX_DIM};
pub use signature::{binomial, Signature};
pub use special::{gamma_integral_oracle, gl_c_l_factor, l_factor, log_gamma, LFactorValue};
