//! Reduced Grothendieck group of a weighted projective curve: Euler form,
//! Auslander–Reiten translation, rank, degree and slope, averaged Euler
//! form and Riemann–Roch, orbifold Euler characteristic and the orbifold
//! fundamental group.

mod lattice;
mod pi1;
mod signature;

pub use lattice::{hom_existence, tau_matrix, KClass, KLattice, LatticeKind, Slope};
pub use pi1::{fundamental_group_presentation, Generator, Presentation, Relator};
pub use signature::Signature;

use num_rational::BigRational;

/// Builds the curve lattice of a signature.
pub fn build_lattice(sig: &Signature) -> KLattice {
    KLattice::curve(sig)
}

/// `χ = (2 - 2g) - Σ(1 - 1/a_i)`.
pub fn orbifold_euler_char(sig: &Signature) -> BigRational {
    sig.orbifold_euler_char()
}
