//! Dense square matrices over exact rings, the transfer matrices built
//! from cards, and exact characteristic polynomials.

mod charpoly;
mod dense;
mod transfer;

pub use charpoly::{
    char_poly, char_poly_faddeev_leverrier, char_poly_with, determinant, CHARPOLY_MAX_DIM,
};
pub use dense::{
    mat_mul, mat_pow, trace, trace_of_product, trace_power, Entry, ExactMatrix, Matrix, PolyMatrix,
};
pub use transfer::{
    build_transfer, diagonal_trace, q_transfer_matrix, transfer_matrix, transfer_matrix_with,
    MatrixEntries, MatrixJson, TransferMatrix, Variant,
};
