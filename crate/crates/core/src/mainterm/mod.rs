//! Weights, Mellin-Barnes kernels, Voronoi summation and the Dirichlet
//! series behind the main term of the fourth moment.

mod dirichlet;
mod kernels;
mod voronoi;
mod weights;

pub use dirichlet::*;
pub use kernels::*;
pub use voronoi::*;
pub use weights::*;
