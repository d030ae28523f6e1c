//! Virtual roots of monic polynomials and what they give for free: root
//! brackets, intermediate values, extrema, sign tables and complex square
//! roots.

mod csqrt;
mod ops;
mod quartic;
mod sign_table;
mod triangle;

pub use csqrt::{complex_sqrt_cover, ComplexSqrtCover};
pub use ops::{
    budan_fourier_index, interval_extrema, ivt_witness, rescale_roots, rescaled_poly, BudanFourier,
    Extrema, IvtWitness, Rescaled,
};
pub use quartic::{quartic_system, Inequality};
pub use sign_table::{sign_table, Region, Resolution, SignTable};
pub use triangle::{
    algebraic_from_json, algebraic_to_json, interval_min_abs, virtual_root_bound, virtual_roots,
    ExtendedBound, VirtualRootTriangle,
};
