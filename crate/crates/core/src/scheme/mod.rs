//! Concrete generic geometry and the condition matrices it produces.

mod basis;
mod horace;
mod quadric;
mod rows;
mod sample;

pub use basis::{enumerate_basis, MonomialBasis};
pub use horace::{horace_split, HoraceSplit, TraceScheme};
pub use quadric::{quadric_h0, quadric_rows, QuadricScheme};
pub use rows::{assemble_matrix, assemble_with, Row, RowBuilder, SundialRows};
pub use sample::{sample_config, sample_config_with, span_rank, Geometry, Point, SampledComponent, MAX_SAMPLE_ATTEMPTS};
