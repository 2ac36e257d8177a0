//! Numerical toolkit for quantum systems with `k` linear constraints and
//! quadratic Hamiltonians on `n` degrees of freedom.
//!
//! The crate provides, in closed form wherever one exists:
//!
//! * real and complex symplectic linear algebra — the form `omega`,
//!   isotropic constraint planes, gauge surfaces, measure Jacobians
//!   ([`subspace`]);
//! * Gaussian and quasi-Gaussian wave functions together with the exact
//!   action of the linear field operators `Omega(Y)` and the Weyl unitaries
//!   ([`states`]), and the complex-germ algebra attached to them ([`germ`]);
//! * the constrained inner product, gauge equivalence, projection to Dirac
//!   wave functions and the Dirac inner product ([`inner`]);
//! * reduction and classical flow of quadratic Hamiltonians compatible with
//!   the constraints, with Gaussian evolution by germ transport
//!   ([`dynamics`]);
//! * stability analysis of the reduced classical system, normal modes, the
//!   ground Gaussian and the eigenfunction ladder ([`stability`]);
//! * an independent brute-force oracle (grid quadrature and truncated-basis
//!   evolution) that cross-checks every closed form ([`oracle`]).
//!
//! Conventions fixed across the crate: phase vectors are stored in
//! `(P, Q)` block order; `omega((P,Q),(P',Q')) = sum_j (P_j Q'_j - P'_j Q_j)`;
//! the operator of a phase vector is
//! `Omega(P,Q) = sum_j (P_j xi_j - Q_j (1/i) d/dxi_j)`; `hbar = 1`.

pub mod error;
pub mod linalg;
pub mod germ;
pub mod phase;
pub mod poly;
pub mod states;
pub mod subspace;

pub use error::{CqsError, Result};
pub use germ::{check_germ, germ_to_matrix, h_germ, h_germ_to_matrix, r_perp_and_r_minus, s_germ, ComplexGerm, GermKind};
pub use phase::{positivity_form, symplectic_form, symplectic_form_real, ComplexPhaseVector, PhaseVector};
pub use poly::{Polynomial, DEGREE_CAP};
pub use states::{make_gaussian, omega_op_apply, weyl_apply, GaussianState, QuasiGaussianState};
pub use subspace::{
    find_gauge_surface, is_isotropic, linear_map_jacobian, pairing_constant, skew_complement,
    triple_decompose, ComplexSubspace, ConstraintPlane, GaugeSurface, RealSubspace,
};
