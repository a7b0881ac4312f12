//! Construction, verification and lower-bound certification of minimal
//! `(n,6,6,2)` lottery designs: ticket sets of size six such that every draw
//! of six balls from `n` matches some ticket in at least two numbers.

pub mod bounds;
pub mod constructions;
pub mod design;
pub mod error;
pub mod pipeline;
pub mod ticket_file;
pub mod toe_oracle;
mod vertex_set;

pub use bounds::{best_partition_upper, covering_upper, furedi_lower, upper_bound_search, CoveringTable, PartitionWitness};
pub use constructions::{assemble, config_for, piece_blocks, Configuration, PieceKind};
pub use design::{DegreeHistogram, Design, FootReport, Method, PairCoverage, ShannonSubhypergraph, Verdict};
pub use error::{BoundsError, ConstructionError, DesignError, TicketFileError, ToeError};
pub use vertex_set::{VertexSet, MAX_VERTICES};
