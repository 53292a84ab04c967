//! Equivariant formal group law structures: the coefficient zigzag for
//! cyclic p-groups, the orientation diagrams over it with their
//! comultiplication and counit maps, and the nodes for general finite abelian
//! groups.

pub mod cyclic;
pub mod general;
pub mod nodes;
pub mod serialize;

pub use cyclic::{
    build_coefficient_zigzag, e_name, u_name, w_name, Certificate, CoefficientMap, CyclicParams, Descent, DescentStage,
    Position, RelationCheck, ZigzagDiagram,
};
pub use general::{build_general_nodes, coordinate_name, euler_name, GeneralNode, GeneralNodes};
pub use nodes::{
    slot_letters, slot_variable, CoefficientAction, DeltaCorruption, DiagramNode, DiagramOptions, EfglData,
    EpsilonConvention, MapKind, NodeComponent, NodeMap,
};
