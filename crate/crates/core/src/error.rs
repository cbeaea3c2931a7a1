use thiserror::Error;

use crate::digraph::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group spec syntax error at byte {position}: {message}")]
    GroupSyntax { position: usize, message: String },
    #[error("torsion factor Z/{0} is below 2")]
    TorsionTooSmall(i64),
    #[error("free exponent Z^{0} must be at least 1")]
    FreeExponentTooSmall(i64),
    #[error("element has {found} coordinates, group expects {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("element coordinate {index} = {value} is not reduced modulo {modulus}")]
    NotCanonical {
        index: usize,
        value: i64,
        modulus: i64,
    },
    #[error("cannot parse element {0:?}")]
    ElementSyntax(String),
    #[error("group has free rank {0}; it is infinite")]
    InfiniteGroup(usize),
    #[error("arithmetic overflow")]
    Overflow,

    #[error("line {line}: {message}")]
    GraphSyntax { line: usize, message: String },
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge id {0:?}")]
    DuplicateEdge(String),
    #[error("edge {edge:?} references undeclared vertex {vertex:?}")]
    UndeclaredVertex { edge: String, vertex: String },
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge id {0:?}")]
    UnknownEdge(String),

    #[error("labeling line {line}: {message}")]
    LabelSyntax { line: usize, message: String },
    #[error("id {0:?} names both a vertex and an edge")]
    AmbiguousId(String),
    #[error("vertex {0:?} is unlabeled")]
    MissingVertexLabel(String),
    #[error("edge {0:?} is unlabeled")]
    MissingEdgeLabel(String),

    #[error("labeling is not balanced")]
    Unbalanced(Box<Witness>),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("family {family} does not belong to {mode} mode")]
    FamilyModeMismatch {
        family: &'static str,
        mode: &'static str,
    },
}
