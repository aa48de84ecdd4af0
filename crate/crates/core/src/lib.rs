//! Broadcasting on series-parallel and planar graph families under the
//! telephone model: constructors, explicit schedules, an exact solver and
//! structural certificates.

pub mod cli;
pub mod error;
pub mod families;
pub mod graph;
pub mod io;
pub mod schemes;
pub mod solver;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
pub use families::{Family, FamilySpec};
pub use graph::{Graph, LabeledGraph, Role};
pub use schemes::{validate_schedule, Call, Schedule, Violation};
pub use tree::RootedTree;
