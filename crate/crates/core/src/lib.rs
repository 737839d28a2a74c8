//! Leavitt path algebras `L_S(Γ)` over commutative semirings.

pub mod analysis;
pub mod constructive;
pub mod deciders;
pub mod element;
pub mod equality;
pub mod error;
pub mod expr;
pub mod graph;
pub mod oracle;
pub mod random;
pub mod repr;
pub mod semiring;

pub use constructive::{
    extract_real, line_graph_matrix_iso, loop_laurent_eval, real_to_vertex, rose_leavitt_check, Laurent, MatrixOverS,
    ReductionCertificate,
};
pub use deciders::{decide_congruence_simple, decide_ideal_simple, Answer, Question, SimplenessVerdict, Witness};
pub use element::{Element, Lpa, Monomial, RealElement, TermKey};
pub use equality::{ck2_expand, eq, eq_with, sink_normal_form, EqConfig, EqVerdict, EqualityTrace};
pub use error::AlgebraError;
pub use expr::{format_element, parse_expression, ParseError};
pub use graph::{load_graph, EdgeId, Graph, GraphError, GraphId, Path, VertexId};
pub use repr::{rep_apply, separate, BasisVector, Separation};
pub use semiring::{
    check_axioms, classify, AxiomReport, Bit, Classification, Flags, Law, MaxPlus, Numeric, PrimeField, Scalar,
    Semiring, SemiringError,
};

pub type Booleans = Numeric<Bit>;
pub type Naturals = Numeric<num_bigint::BigUint>;
pub type Rationals = Numeric<num_rational::BigRational>;
pub type Tropical = Numeric<MaxPlus>;
