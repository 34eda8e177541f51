//! Exact postulation checks for generic unions of lines, fat linear spaces,
//! collinear points and sundials in projective space.
//!
//! Two independent routes are kept side by side:
//!
//! * [`ledger`] holds every closed-form count: Hilbert polynomials of fat
//!   linear spaces, expected `h0`/`h1`, the square-case parameters and the
//!   auxiliary schedules used by the Horace induction, and the quadric
//!   admissibility criterion.
//! * [`scheme`] samples concrete generic geometry over a prime field and
//!   writes down the linear conditions each component imposes on degree-`d`
//!   forms; [`linalg`] computes exact ranks of those condition matrices.
//!
//! [`engine`] ties the two together into verdicts and audits.

pub mod config;
pub mod engine;
pub mod error;
pub mod ledger;
pub mod linalg;
pub mod scheme;

pub use config::{ComponentKind, ComponentSpec, Constraint, Hypersurface, Ruling, SchemeConfig};
pub use engine::{PostulationVerdict, TrialOptions};
pub use error::{Error, Result};
pub use ledger::{AmbientParams, ChecklistReport, ExpectedCounts, ProofSchedule};
pub use linalg::{DenseMatrix, PrimeField};
pub use scheme::{MonomialBasis, QuadricScheme};
