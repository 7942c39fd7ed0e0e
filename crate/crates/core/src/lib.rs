//! Exact flag polynomials, f-polynomials and extremal face counts of
//! Minkowski sums of standard simplices, with a brute-force face-lattice
//! oracle to check them against.
//!
//! Polynomial code is generic over the coefficient ring; the aliases below
//! fix the arbitrary-precision defaults.

pub mod constructions;
pub mod corpus;
pub mod error;
pub mod extremal;
pub mod facelattice;
pub mod masterpoly;
pub mod minkflag;
pub mod polyring;
pub mod simplexflag;

pub use constructions::{
    flag_free_join, flag_hypercube, flag_p_action, flag_prism, flag_product, flag_pyramid, simplex_chain_data,
    strict_chain_poly, AbstractFlag, ChainDatum, FlagFamily, FlagSource, SimplexSource, SupportSet,
};
pub use error::{Error, Result};
pub use extremal::{
    asympt_discrep_limit, asympt_max_faces_limit, chains0d, closed_max_faces, discrep_lower_L, discrep_window,
    discrepancy, exact_location_triple, f_d_count, gen_binom, is_simple_k2, max_discrepancy, max_faces,
    nearest_integer, predicted_argmaxes, DiscrepancyWindow, ExtremalResult,
};
pub use facelattice::{
    enumerate_chains, enumerate_faces, face_leq, flag_poly_by_counting, is_face, FaceChain, FaceLattice, MinkFace,
    OracleConfig, SetFamily,
};
pub use masterpoly::{master_chains, master_family, r_vector, MasterChainData, MasterConfig, MasterFamily, RVector};
pub use minkflag::{
    f_d, f_poly_closed_k2, f_poly_minkowski, f_poly_set_form, flag2_closed_k2, flag_minkowski, K2Profile,
};
pub use polyring::{Coefficient, ExponentVector, Polynomial};
pub use simplexflag::{f_simplex, flag_simplex, VariableWindow};

/// Polynomial with arbitrary-precision integer coefficients.
pub type Poly = Polynomial<num_bigint::BigInt>;

/// Flag polynomial with arbitrary-precision integer coefficients.
pub type Flag = AbstractFlag<num_bigint::BigInt>;

/// Discrepancy window in double precision.
pub type Window = DiscrepancyWindow<f64>;
