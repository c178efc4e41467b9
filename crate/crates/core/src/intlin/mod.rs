//! Exact integer linear algebra (Hermite/Smith normal forms, lattices) and
//! the finitely generated abelian group calculus built on top of it.

mod abelian;
mod lattice;
mod matrix;

pub use abelian::{
    lie_cube, multisets, sym2_tensor, sym2_tensor_multiplication, sym2_tensor_self, sym_power,
    tensor_and_tor, AbelianMap, FgAbelian, PresentedAbelian, SmithBasis,
};
pub use lattice::{preimage_lattice, Lattice};
pub use matrix::{hermite_normal_form, left_kernel, smith_normal_form, solve_left, Hnf, IntMatrix, Snf};
