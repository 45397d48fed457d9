//! Primitive-group analysis, the bounded classification searches and the claim suites.

pub mod affine;
pub mod arith;
pub mod claims;
pub mod corpus;
pub mod search;

pub use affine::{affine_analysis, frobenius_decomposition, is_frobenius, AffineAnalysis, FrobeniusDecomposition};
pub use arith::{abelian_survey, degree_bound, power23_solutions, AbelianSurvey, DegreeBound};
pub use claims::{verify, ClaimReport, Status, VerifyParams, CLAIM_IDS};
pub use search::{gammal1_search, gammal1_sweep, gl2_search, irreducible_subgroups_gl2, SearchRow, Stabilizer, Verdict};
