//! Perfect matching complexes of ladders and polygonal line tilings, with
//! discrete Morse element pairings, fold reductions and exact homology.

pub mod complex;
pub mod error;
pub mod families;
pub mod graph;
pub mod homology;
pub mod matchings;
pub mod morse;
pub mod verify;

pub use complex::{
    aux_graph_xn, compare_complexes, complex_equal, f_vector, independence_complex,
    perfect_matching_complex, perfect_matching_complex_capped, reduced_euler_characteristic,
    ComplexComparison, Face, SimplicialComplex, DEFAULT_FACE_CAP,
};
pub use error::{Error, Result};
pub use families::{
    cycle, even_tiling, grid_2xn, grid_mxn, odd_tiling_alternate, odd_tiling_simple, path,
    triangle_tiling, FamilyDescriptor,
};
pub use graph::{Edge, EdgeId, Graph, GraphBuilder, Vertex, VertexId};
pub use homology::{
    boundary_matrices, boundary_matrix, homology_consistent_with, reduced_betti, smith_normal_form,
    BettiReport, BoundaryMatrix, IntMatrix, SmithForm,
};
pub use matchings::{
    enumerate_bad_matchings, enumerate_perfect_matchings, is_extendable, is_matching,
    ExtendabilityResult, Matching, MatchingOracle,
};
pub use morse::{
    element_pairing_sequence, fold_reduce, fold_sequence_grid, infer_homotopy_type,
    morse_euler_check, run_schedule, verify_acyclic, verify_partial_pairing, CriticalCells,
    Evidence, HomotopyKind, HomotopyTypeReport, MorseReport, PairingOutcome, PairingSchedule,
    PartialPairing,
};
pub use verify::{run_job, Job, JobReport, Status, VerifyConfig};
