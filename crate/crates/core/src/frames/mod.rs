//! 3-frames of odd unimodular lattices and the codes they carry.

mod classify;
mod graph;
pub mod perm;
mod search;

pub use classify::{
    classify_lattice, classify_lattice_with, classify_length, ClassificationReport, ClassifiedCode,
    ClassifyMethod, ClassifyOptions, CodeRow, LatticeClassification, LengthReport,
};
pub use graph::{build_gamma, build_gamma_with, FrameGraph};
pub use search::{
    count_cliques, enumerate_frames, enumerate_frames_with, FrameEnumeration, FrameOrbit,
    SearchOptions,
};
