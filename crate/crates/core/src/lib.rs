//! Numerical toolkit for Hardy spaces of vector-valued Dirichlet series.
//!
//! A Dirichlet polynomial `D = sum a_n n^{-s}` with coefficients in `C^d` is
//! identified, through `n = 2^{alpha_1} 3^{alpha_2} ...`, with a polynomial
//! `sum c_alpha z^alpha` on the polytorus. The crate provides that
//! correspondence ([`bohr`]), Hardy-norm estimators on the torus and along
//! vertical lines ([`norms`]), translations ([`translations`]), Poisson
//! kernels ([`poisson`]), partial-sum experiments ([`partial_sums`]) and a set
//! of identities and inequalities checked numerically ([`analysis`]).

pub mod analysis;
pub mod bohr;
pub mod coeff;
pub mod dirichlet;
mod error;
pub mod gallery;
pub mod json;
pub mod multi_index;
pub mod norms;
pub mod partial_sums;
pub mod poisson;
pub mod power;
pub mod sampling;
pub mod sieve;
pub mod translations;

pub use bohr::{bohr_lift, bohr_transform, factorize, index_of, partial_sum, restrict};
pub use coeff::{CoeffSpaceSpec, CoeffVector, NormTag};
pub use dirichlet::DirichletPoly;
pub use error::{Error, Result};
pub use multi_index::MultiIndex;
pub use norms::{Method, NormEstimate};
pub use power::PowerPoly;
pub use sampling::{SamplerConfig, Scheme};
