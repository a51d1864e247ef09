//! Exact computer algebra for partially commutative Lie algebras.
//!
//! A finite simple graph `G` on vertices `a1..an` presents a Lie algebra in
//! which `[ai,aj] = 0` exactly when `{i,j}` is an edge. This crate computes
//! in two finite-dimensional quotients of that algebra — the metabelian
//! variety and the nilpotent quotients of a fixed class — with exact
//! arithmetic over the rationals or GF(p), and analyzes centralizers and
//! direct-sum decompositions.
//!
//! Entry points:
//! - [`graph::Graph`] — the defining graph and its combinatorics.
//! - [`metabelian::MetabelianEngine`] — canonical bases and normal forms in
//!   the metabelian quotient.
//! - [`nilpotent::StructureTable`] — bases and structure constants of the
//!   class-`m` nilpotent quotient.
//! - [`analysis`] — centralizer descriptions, decomposability, and verified
//!   direct-sum splittings.

pub mod analysis;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod lyndon;
pub mod metabelian;
pub mod nilpotent;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod term;

pub use analysis::{
    compare_centralizers, complement_component_split, centralizer_computed,
    centralizer_predicted, is_decomposable, search_decomposition, search_table, split,
    structured_centralizer_suite, verify_split, verify_split_metabelian, verify_subspace_split,
    CentralizerComparison, CentralizerDescription, DecomposabilityCertificate, Decomposition,
    ExhaustionCertificate, SearchOutcome, SplitKind, SplitSetting, SubspaceSplit, VerifyReport,
    DEFAULT_SEARCH_DIM_CAP,
};
pub use error::AlgebraError;
pub use graph::{Gen, Graph, GraphError, VertexSet};
pub use linalg::Subspace;
pub use metabelian::{
    MetabelianBasisMonomial, MetabelianEngine, MetabelianWindow, RelationComponent,
};
pub use nilpotent::{build_structure, truncated_free, DimReport, StructureTable, DEFAULT_DIM_CAP};
pub use parse::{parse_expr, ParseError};
pub use poly::{BasisKey, Context, LiePoly, Variety};
pub use scalar::{FieldTag, Scalar, ScalarError};
pub use term::{LeftNormedWord, LieExpr, LieTerm, MultiDegree, TermError};
