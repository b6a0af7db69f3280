//! Exact dense linear algebra over Q(ζₙ).

mod fourier;
mod matrix;
mod modular;
mod spectral;

pub use fourier::{
    assert_block_triangular, build_b_s, build_c_s, change_of_basis, fourier_basis, fourier_basis_inverse,
    fourier_vector,
    truncated_circulant, verify_c1_recurrence, BasisSpec, TriangularReport,
};
pub use matrix::ExactMatrix;
pub(crate) use matrix::MODULAR_THRESHOLD;
pub use spectral::{eei_sides, verify_eei, verify_integer_spectrum};
