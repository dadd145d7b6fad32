//! Numerical toolkit for gradient Einstein-type structures on hypersurfaces
//! of warped products `I ×_f M(c)`.
//!
//! The pipeline is: an [`Ambient`] and an [`AngleProfile`] give a
//! [`RotationalSurface`] by quadrature; attaching `(α, u, μ, λ)` gives an
//! [`EinsteinTypeStructure`], whose residuals, solved fields, Bochner sides
//! and hypothesis margins are evaluated in closed form and checked against
//! the finite-difference routines in [`oracle`].

// NaN-rejecting guards are written as `!(x > 0.0)`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ambient;
pub mod einstein;
pub mod expr;
pub mod fixtures;
pub mod geometry;
pub mod jet;
pub mod ode;
pub mod oracle;
pub mod rotational;
pub mod scenario;

pub use ambient::{Ambient, AmbientError, AmbientSectional, LogDerivatives};
pub use einstein::{
    BochnerEval, Convention, EinsteinTypeStructure, EquationReport, MarginRow, PointEval, RadialU,
    ResidualReport, ScalarField, Solved, StructureError, UMap,
};
pub use expr::{EvalError, Expression, ParseError};
pub use fixtures::{make_fixture, Fixture, FixtureError, FixtureParams, PrintedForms};
pub use geometry::{AxiTensor, PointGeometry, SurfaceKind};
pub use jet::Jet2;
pub use oracle::{OracleError, OracleRecord};
pub use rotational::{
    build_surface, AngleProfile, Hypersurface, RotationalSurface, SliceSurface, SurfaceError,
    TauConvention,
};
pub use scenario::{Scenario, ScenarioError};
