//! The relative difference set `D = {x + 2√f(x) : x ∈ Γ}` in `GR(4, n)` and
//! its additive character sums, in exact Gaussian-integer arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gr4::{RingCtx, RingElement, RingError};
use crate::planar::FuncTable;

/// Largest degree for which the full difference multiset is materialized.
pub const MAX_RDS_DEGREE: u32 = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RdsError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("difference multiset is limited to n <= {MAX_RDS_DEGREE}, got n = {0}")]
    TooLarge(u32),
    #[error("|{s}|^2 = {norm}, expected 2^{n}")]
    NotJacobiNorm { s: GaussianInt, norm: i64, n: u32 },
    #[error("{s} has norm 2^{n} but not the expected two-square shape")]
    UnexpectedShape { s: GaussianInt, n: u32 },
}

/// `re + ω·im` with `ω² = −1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };
    pub const ONE: GaussianInt = GaussianInt { re: 1, im: 0 };

    pub const fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    /// `ω^k` for `k` mod 4.
    pub fn omega_pow(k: u8) -> Self {
        match k & 3 {
            0 => GaussianInt::new(1, 0),
            1 => GaussianInt::new(0, 1),
            2 => GaussianInt::new(-1, 0),
            _ => GaussianInt::new(0, -1),
        }
    }

    pub fn conj(self) -> Self {
        GaussianInt::new(self.re, -self.im)
    }

    /// `|s|² = re² + im²`.
    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    /// Sum of `ω^{k}` over the given exponent counts `[#0, #1, #2, #3]`.
    pub fn from_exponent_counts(c: [i64; 4]) -> Self {
        GaussianInt::new(c[0] - c[2], c[1] - c[3])
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussianInt::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        GaussianInt::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussianInt::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

/// `D` in field-bit order: entry `i` lies over the field element with bit pattern `i`.
#[derive(Clone, Debug)]
pub struct DiffSet {
    ring: Arc<RingCtx>,
    elements: Vec<RingElement>,
}

impl DiffSet {
    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.ring
    }

    pub fn elements(&self) -> &[RingElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `f` transported to `Γ`: `x ↦ ι(f(ι⁻¹(x)))`.
pub fn transport(f: &FuncTable, ring: &RingCtx, x: RingElement) -> Result<RingElement, RingError> {
    let a = ring.gamma_to_field(x)?;
    Ok(ring.field_to_gamma(f.eval(a)))
}

pub fn build_diffset(f: &FuncTable, ring: &Arc<RingCtx>) -> Result<DiffSet, RdsError> {
    ring.check_field(f.ctx())?;
    let elements = ring
        .gamma()
        .iter()
        .map(|&x| {
            let fx = transport(f, ring, x)?;
            Ok(ring.add(x, ring.double(ring.teich_sqrt(fx)?)))
        })
        .collect::<Result<Vec<_>, RingError>>()?;
    Ok(DiffSet {
        ring: ring.clone(),
        elements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RdsReport {
    pub is_rds: bool,
    /// Number of units hit exactly `k` times, keyed by `k`.
    pub unit_hits: BTreeMap<u32, u64>,
    /// Differences landing in `2R ∖ {0}`.
    pub forbidden_hits: u64,
    /// Size of the difference multiset, `2^n(2^n − 1)`.
    pub total: u64,
}

/// Counts the multiset `{d1 − d2 : d1 ≠ d2}` over all of `R`.
pub fn verify_rds(d: &DiffSet) -> Result<RdsReport, RdsError> {
    let ring = &d.ring;
    let n = ring.degree();
    if n > MAX_RDS_DEGREE {
        return Err(RdsError::TooLarge(n));
    }
    let mut counts = vec![0u32; ring.size() as usize];
    let mut total = 0u64;
    for (i, &d1) in d.elements.iter().enumerate() {
        for (j, &d2) in d.elements.iter().enumerate() {
            if i != j {
                counts[ring.sub(d1, d2).index() as usize] += 1;
                total += 1;
            }
        }
    }
    let mut unit_hits = BTreeMap::new();
    let mut forbidden_hits = 0u64;
    for (idx, &c) in counts.iter().enumerate() {
        let y = RingElement::from_index(idx as u64);
        if y.is_in_2r() {
            if !y.is_zero() {
                forbidden_hits += c as u64;
            }
        } else {
            *unit_hits.entry(c).or_insert(0u64) += 1;
        }
    }
    let is_rds = forbidden_hits == 0 && unit_hits.keys().all(|&k| k == 1);
    Ok(RdsReport {
        is_rds,
        unit_hits,
        forbidden_hits,
        total,
    })
}

/// `S_a = Σ_{d ∈ D} ω^{T(a·d)}`.
pub fn char_sum(d: &DiffSet, a: RingElement) -> GaussianInt {
    let ring = &d.ring;
    let mut counts = [0i64; 4];
    for &x in &d.elements {
        counts[ring.trace(ring.mul(a, x)) as usize] += 1;
    }
    GaussianInt::from_exponent_counts(counts)
}

/// All `S_a`, indexed by the base-4 index of `a`.
pub fn all_char_sums(d: &DiffSet) -> Vec<GaussianInt> {
    (0..d.ring.size())
        .into_par_iter()
        .map(|i| char_sum(d, RingElement::from_index(i)))
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProfileHistogram {
    /// `a` with `|S_a|² = 4^n`.
    #[serde(rename = "4^n")]
    pub full: u64,
    #[serde(rename = "0")]
    pub zero: u64,
    #[serde(rename = "2^n")]
    pub half: u64,
    /// Everything else.
    pub other: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharProfile {
    pub ok: bool,
    pub failing_a: Vec<RingElement>,
    pub histogram: ProfileHistogram,
    /// `Σ_a |S_a|²`.
    pub parseval_total: u128,
}

/// Checks `|S_a|² = 4^n` at `a = 0`, `0` on `2R ∖ {0}` and `2^n` on units.
pub fn char_profile_check(d: &DiffSet) -> CharProfile {
    let n = d.ring.degree();
    let sums = all_char_sums(d);
    let four_n = 1i64 << (2 * n);
    let two_n = 1i64 << n;
    let mut failing_a = Vec::new();
    let mut histogram = ProfileHistogram::default();
    let mut parseval_total = 0u128;
    for (i, s) in sums.iter().enumerate() {
        let a = RingElement::from_index(i as u64);
        let norm = s.norm();
        parseval_total += norm as u128;
        match norm {
            x if x == four_n => histogram.full += 1,
            0 => histogram.zero += 1,
            x if x == two_n => histogram.half += 1,
            _ => histogram.other += 1,
        }
        let expected = if a.is_zero() {
            four_n
        } else if a.is_in_2r() {
            0
        } else {
            two_n
        };
        if norm != expected {
            failing_a.push(a);
        }
    }
    CharProfile {
        ok: failing_a.is_empty(),
        failing_a,
        histogram,
        parseval_total,
    }
}

/// Branch of the two-square decomposition `|s|² = 2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobiShape {
    /// `(±2^{(n−1)/2}, ±2^{(n−1)/2})`.
    OddDiagonal,
    /// `(±2^{n/2}, 0)`.
    EvenReal,
    /// `(0, ±2^{n/2})`.
    EvenImaginary,
}

pub fn jacobi_decomposition_check(s: GaussianInt, n: u32) -> Result<JacobiShape, RdsError> {
    let norm = s.norm();
    if norm != 1i64 << n {
        return Err(RdsError::NotJacobiNorm { s, norm, n });
    }
    if n % 2 == 1 {
        let h = 1i64 << ((n - 1) / 2);
        if s.re.abs() == h && s.im.abs() == h {
            return Ok(JacobiShape::OddDiagonal);
        }
    } else {
        let h = 1i64 << (n / 2);
        if s.re.abs() == h && s.im == 0 {
            return Ok(JacobiShape::EvenReal);
        }
        if s.re == 0 && s.im.abs() == h {
            return Ok(JacobiShape::EvenImaginary);
        }
    }
    Err(RdsError::UnexpectedShape { s, n })
}

/// Serializable summary of the character criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RdsJsonReport {
    pub planar_equiv: bool,
    pub failing_a: Vec<String>,
    pub profile_histogram: ProfileHistogram,
}

impl RdsJsonReport {
    pub fn from_profile(p: &CharProfile, n: u32) -> Self {
        RdsJsonReport {
            planar_equiv: p.ok,
            failing_a: p.failing_a.iter().map(|a| a.to_coeff_string(n)).collect(),
            profile_histogram: p.histogram.clone(),
        }
    }
}
