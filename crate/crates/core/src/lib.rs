pub mod closure;
pub mod conformance;
pub mod dsu;
pub mod grading;
pub mod io;
pub mod linalg;
pub mod named;
pub mod partition;
pub mod random;
pub mod relations;
pub mod tensor_maps;

pub use closure::{
    amalgamated_closure, contains, generate_closure, kronecker_product, search, Bounds, ClosureError, ClosureSet,
    MembershipAnswer, Trace,
};
pub use grading::{class_membership, is_pi_graded, ker_partition, GradingError, GradingPartition, SeparatingClass};
pub use linalg::{RatMatrix, SpMatrix};
pub use partition::{CanonicalForm, CompositionResult, Corner, PartitionError, PointRef, Side, SpatialPartition};
pub use relations::{
    check_relation, check_relation_closure, emit_relations, ring_matrix, MatrixModel, RelationError, RelationSet,
};
pub use tensor_maps::{
    delta, hom_dim, s_map, verify_functoriality, Dims, FunctorialityReport, SizeCap, TensorMapError,
};
