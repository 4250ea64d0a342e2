//! Book drawings of graphs.
//!
//! A k-page book drawing places the vertices of a graph on a line (the spine)
//! and each edge in one of k half-planes (pages); two edges on a common page
//! cross when their endpoints alternate along the spine. This crate provides
//! the data model, exact and heuristic crossing counters, construction
//! heuristics for spine orders and page assignments, local search schemes, a
//! small exact solver, benchmark graph generators, and an experiment harness
//! that writes result tables.

pub mod crossings;
pub mod drawing;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod heuristics;
pub mod local_search;
pub mod oracle;
pub mod seeds;

pub use crossings::{
    count_crossings, count_crossings_reference, crossings_of_edge, edges_cross, vertex_move_delta,
};
pub use drawing::{BookDrawing, DrawingError, PageAssignment, VertexOrder};
pub use graph::{Graph, GraphError};
pub use heuristics::{HeuristicCombo, LocalSearchParams, LsName, NameError, PaName, VoName};
pub use local_search::{AnnealingSchedule, ScheduleError};
pub use oracle::{
    exact_book_crossing_number, exact_book_crossing_number_with_guard, exact_pa,
    exact_pa_with_guard, OracleError, SizeGuard,
};
