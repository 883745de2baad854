//! Algebraic curves attached to monomials `c·x^t`: construction, singular
//! points, multiplicities and tangent cones, and the checks that tie point
//! counts back to planarity.

mod bset;
mod build;
mod embed;
mod poly;
mod singular;
mod unipoly;

use thiserror::Error;

use crate::gf2::FieldError;
use crate::planar::PlanarError;

pub use bset::{
    b_set, count_points_offdiag, count_points_offdiag_by_eval, planar_curve_crosscheck, special_factor_l1,
    BSetEntry, BSetReport, Crosscheck, OffdiagCount, SpecialFactor,
};
pub use build::{
    build_f, build_g, build_h, build_numerator_f, build_numerator_g, build_numerator_h, decompose_exponent,
    ExponentShape, MAX_EXPONENT,
};
pub use embed::SubfieldEmbedding;
pub use poly::{BivarPoly, HomogPoly3, SparsePoly};
pub use singular::{
    affine_chart, cone_squarefree_check, default_ext_degree, multiplicity_at, singular_points, tangent_cone_at,
    verify_table4, AffinePoint, ConeClaim, CurveFields, InfinityPoint, InfinityType, IntersectionHint,
    SingularReport, SingularReportJson, Table4Check,
};
pub use unipoly::{form_gcd, BinaryForm, FormGcdShape, UniPoly};

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Planar(#[from] PlanarError),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division leaves a nonzero remainder")]
    NotExact,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("F_2^{m} is not an extension of F_2^{n} within the supported range")]
    BadExtension { n: u32, m: u32 },
    #[error("exponent {0} is not of the form 2^k·l + 1 with k ≥ 1 and l odd")]
    BadExponent(u64),
    #[error("exponent {0} is outside 1..={max}", max = build::MAX_EXPONENT)]
    ExponentTooLarge(u64),
    #[error("exponent {0} is a power of two; the curve is not defined")]
    PowerOfTwoExponent(u64),
    #[error("the curve parameter a must be nonzero")]
    ZeroParameter,
    #[error("a = 1 with l = 1 makes every point of the diagonal singular")]
    Degenerate,
    #[error("no a ≠ 1 in A_n with a + 1 a (2^{k}−1)-th power exists in F_2^{n}")]
    NoSolution { k: u32, n: u32 },
}
