//! Exact tensor calculus on the flat cone ℝⁿ \ {0} over the round sphere,
//! used as an independent oracle for the cone constructions.

pub mod cases;
pub mod cheeger_tian;
pub mod expr;
pub mod harmonic;
pub mod identities;
pub mod ode;
pub mod ops;

pub use cheeger_tian::{cheeger_tian_example, CheegerTianReport};
pub use cases::{build_case_tensor, verify_case, CaseInput, CaseReport};
pub use expr::{FieldExpr, Proportionality, RadialMonomialTerm, RadialPoly};
pub use harmonic::harmonic_polynomial;
pub use identities::{check_sym_gradient_family, standard_identities};
pub use ode::{ode_grid, ode_residual, ode_residual_fd, OdeBranch, OdeCase, OdeReport};
pub use ops::{bianchi_op, divergence, laplacian, partial_derivative, sym_gradient, trace};
