use thiserror::Error;

use crate::graph::GraphError;
use crate::semiring::SemiringError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands belong to different graphs")]
    CrossGraph,
    #[error("monomial needs r(p) = r(q)")]
    RangeMismatch,
    #[error("vertex {0:?} is a sink; CK2 applies only at regular vertices")]
    SinkExpansion(String),
    #[error("graph has cycles; use the bounded equality search instead of the sink normal form")]
    CyclicGraph,
    #[error("coefficient semiring {0} has no multiplicative inverses")]
    NotSemifield(String),
    #[error("element has ghost factors")]
    NotReal,
    #[error("element is zero")]
    ZeroElement,
    #[error("empty input")]
    EmptyInput,
    #[error("cycle {0:?} has no exit")]
    ExitlessCycle(Vec<String>),
    #[error("basis vector index overflowed")]
    IndexOverflow,
    #[error("malformed basis vector: {0}")]
    MalformedBasisVector(String),
    #[error("{what} of size {size} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
}
