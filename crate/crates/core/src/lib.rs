pub mod consistency;
pub mod equivalence;
pub mod factored;
pub mod lattice;
pub mod matrix;
pub mod multiquiver;
pub mod orbital;
pub mod parse;
pub mod poly;
pub mod problem;
pub mod render;
pub mod report;
pub mod shift;
pub mod vertex;

pub use consistency::{
    check_binary, check_non_symmetric, check_symmetric, check_ternary, symmetrize, unsymmetrize, FactoredSolution,
    SolutionTuple, TupleError,
};
pub use equivalence::{
    apply_linear, apply_substitution, check_equivalence, find_signed_permutation, AutomorphismSpec, EquivalenceError,
};
pub use factored::{factor, FactoredPoly};
pub use matrix::Matrix;
pub use multiquiver::{build_solution, factor_by_residue, symmetrized_solution, validate_beta, MultiquiverError};
pub use orbital::{decompose, support_pair, verify_orbital, OrbitalError, OrbitalPiece, Support};
pub use parse::{parse_poly, parse_rational, ParseError};
pub use poly::{int, rat, Monomial, Poly, PolyError, Rational};
pub use problem::{Problem, ProblemError};
pub use render::{render_svg, RenderOptions};
pub use report::{CheckReport, Failure, Relation};
pub use shift::{
    is_fixed_by_shift, same_orbit, stabilizer_lattice, OrbitId, OrbitRelation, ShiftSystem, Sign, StabilizerLattice,
};
pub use vertex::{
    classify, decode, encode, random_config, validate, ClassEntry, ClassificationRecord, ConfigError, VertexConfig,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub struct Polynomials;
    #[doc = include_str!("../../../book/src/orbits.md")]
    pub struct Orbits;
    #[doc = include_str!("../../../book/src/consistency.md")]
    pub struct Consistency;
    #[doc = include_str!("../../../book/src/decomposition.md")]
    pub struct Decomposition;
    #[doc = include_str!("../../../book/src/configurations.md")]
    pub struct Configurations;
    #[doc = include_str!("../../../book/src/multiquiver.md")]
    pub struct Multiquiver;
    #[doc = include_str!("../../../book/src/equivalence.md")]
    pub struct Equivalence;
}
