//! Exact-arithmetic certification of vanishing and rank bounds for
//! non-unipotent monodromy eigenspaces of central hyperplane arrangements,
//! together with spectrum combinatorics for sums of two plane curve
//! singularities and determinant identities for the simple root lattices.
//!
//! Everything is computed over cyclotomic fields with rational coefficients;
//! no floating point is used anywhere.

pub mod ade;
pub mod analyze;
pub mod arrangement;
pub mod certify;
pub mod cyclo;
pub mod eigenvalue;
pub mod error;
pub mod io;
pub mod lattice;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod rho;
pub mod tscomb;

pub use ade::{
    det_recursive, dynkin_matrix, monodromy_det, monodromy_det_with_modulus, spectral_numbers,
    verify_coincidence, AdeFamily, AdeType, CoincidenceReport, SpectralData,
};
pub use analyze::{analyze, AnalyzeConfig, EigenEntry, Report, Verdict};
pub use arrangement::{build_boolean, build_g31, build_gm1, build_gmm, Arrangement, Hyperplane};
pub use certify::{prop24_certify, replay, thm24_certify, Certificate};
pub use cyclo::{cyclotomic_polynomial, divisors, euler_phi, CycloElement};
pub use eigenvalue::{candidate_eigenvalues, unipotent_dim, Eigenvalue};
pub use error::{AdeError, ArrangementError, ExactError, FormatError, TsError, VanishingError};
pub use io::{
    arrangement_from_json, arrangement_to_json, lattice_to_json, oracle_table_from_json,
    oracle_table_to_json, report_to_json, witness_rules_from_json, witness_rules_to_json,
};
pub use lattice::{Edge, Incidence, Lattice, LatticeOptions, LocalType};
pub use matrix::{bezout_projectors, companion, MatrixK, Rref};
pub use oracle::{local_vanishing_oracle, LocalVerdict, OracleConfig, OracleEntry, RuleKind};
pub use poly::PolyQ;
pub use rational::Rational;
pub use rho::{default_witness_rules, rho_bound, RhoOutcome, WitnessRule};
pub use tscomb::{
    cone_pair_rank, cone_sections_rank, h1_rank_monomial_pair, invariant_rank,
    invariant_rank_closed, one_var_spectrum, product_with_linear_rank, total_rank_sum_of_two,
    ts_tensor, EigenSpectrum, Generators, MonomialPairConfig,
};
