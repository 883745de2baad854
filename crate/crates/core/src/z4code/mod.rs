//! The Z4 code `C_f` with parity-check rows `(1, …, 1)` and `(d_x)_{x∈Γ}`,
//! its dual, Lee weights, the Gray map and the binary companion code `D_f`.

mod binary;
mod kernel;
mod macwilliams;

pub use binary::{binary_df, min_hamming_distance_df, BinaryDf};
pub use kernel::{enumerate_code, kernel_generator_matrix, Z4Matrix};
pub use macwilliams::{lee_distribution_from_swe, macwilliams_transform, swe_of_dual, swe_of_words, Swe};

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::gr4::{RingCtx, RingElement};
use crate::planar::FuncTable;
use crate::rds::{build_diffset, GaussianInt, RdsError};

/// Largest degree for which the `4^{n+1}` dual words are enumerated.
pub const MAX_DUAL_DEGREE: u32 = 8;
/// Largest degree for the MacWilliams route (dense enumerators of degree `2^n`).
pub const MAX_MACWILLIAMS_DEGREE: u32 = 5;
/// Largest degree for direct enumeration of `C_f`.
pub const MAX_ENUMERATION_DEGREE: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error(transparent)]
    Rds(#[from] RdsError),
    #[error("{what} is limited to n <= {max}, got n = {n}")]
    TooLarge { what: &'static str, n: u32, max: u32 },
    #[error("kernel over Z4 is not free: row {row} reduces to a nonzero multiple of 2")]
    NonFree { row: usize },
    #[error("expected rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("inconsistent enumerator: {0}")]
    Inconsistent(String),
    #[error("f(0) must be 0 for the binary code")]
    NonzeroAtZero,
    #[error("no codeword of weight <= 5 exists")]
    DistanceAboveFive,
    #[error("puncture position {pos} out of range for length {len}")]
    BadPosition { pos: usize, len: usize },
}

/// A word over Z4; every entry lies in `0..4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z4Word(pub Vec<u8>);

impl Z4Word {
    pub fn zeros(n: usize) -> Self {
        Z4Word(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Z4Word) -> Z4Word {
        Z4Word(self.0.iter().zip(&other.0).map(|(a, b)| (a + b) & 3).collect())
    }

    pub fn sub(&self, other: &Z4Word) -> Z4Word {
        Z4Word(self.0.iter().zip(&other.0).map(|(a, b)| (a + 4 - b) & 3).collect())
    }

    pub fn dot(&self, other: &Z4Word) -> u8 {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0u32, |s, (a, b)| s + (*a as u32) * (*b as u32)) as u8
            & 3
    }

    /// `(n0, n1, n2)`: counts of 0, of ±1 and of 2.
    pub fn composition(&self) -> (usize, usize, usize) {
        let mut c = (0, 0, 0);
        for &e in &self.0 {
            match e & 3 {
                0 => c.0 += 1,
                2 => c.2 += 1,
                _ => c.1 += 1,
            }
        }
        c
    }
}

pub const LEE: [u32; 4] = [0, 1, 2, 1];

pub fn lee_weight(w: &Z4Word) -> u32 {
    w.0.iter().map(|&e| LEE[(e & 3) as usize]).sum()
}

/// `N − Re(Σ ω^{c_i})`, evaluated in Gaussian integers.
pub fn lee_weight_by_character(w: &Z4Word) -> u32 {
    let s = w
        .0
        .iter()
        .fold(GaussianInt::ZERO, |acc, &e| acc + GaussianInt::omega_pow(e));
    (w.len() as i64 - s.re) as u32
}

pub fn hamming_weight(w: &Z4Word) -> u32 {
    w.0.iter().filter(|&&e| e & 3 != 0).count() as u32
}

pub fn lee_distance(u: &Z4Word, v: &Z4Word) -> u32 {
    lee_weight(&u.sub(v))
}

const GRAY: [[u8; 2]; 4] = [[0, 0], [0, 1], [1, 1], [1, 0]];

/// Entrywise `0→00, 1→01, 2→11, 3→10`.
pub fn gray_map(w: &Z4Word) -> Vec<u8> {
    w.0.iter().flat_map(|&e| GRAY[(e & 3) as usize]).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Lee,
    Hamming,
}

/// Histogram `weight → count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub metric: Metric,
    pub counts: BTreeMap<u64, u64>,
}

impl WeightDistribution {
    pub fn new(metric: Metric) -> Self {
        WeightDistribution {
            metric,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_pairs(metric: Metric, pairs: &[(u64, u64)]) -> Self {
        let mut d = WeightDistribution::new(metric);
        for &(w, c) in pairs {
            d.add(w, c);
        }
        d
    }

    pub fn add(&mut self, weight: u64, count: u64) {
        if count > 0 {
            *self.counts.entry(weight).or_insert(0) += count;
        }
    }

    pub fn merge(&mut self, other: &WeightDistribution) {
        for (&w, &c) in &other.counts {
            self.add(w, c);
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Smallest nonzero weight.
    pub fn min_nonzero(&self) -> Option<u64> {
        self.counts.keys().copied().find(|&w| w > 0)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("weight,frequency\n");
        for (w, c) in &self.counts {
            let _ = writeln!(s, "{w},{c}");
        }
        s
    }
}

/// The closed-form Lee weight distribution of the dual code for planar `f`.
pub fn expected_dual_table(n: u32) -> WeightDistribution {
    let p = |e: u32| 1u64 << e;
    let q = p(n);
    let pairs = if n % 2 == 1 {
        let s = p((n - 1) / 2);
        [
            (0, 1),
            (q - s, p(n + 1) * (q - 1)),
            (q, p(n + 2) - 2),
            (q + s, p(n + 1) * (q - 1)),
            (2 * q, 1),
        ]
    } else {
        let s = p(n / 2);
        [
            (0, 1),
            (q - s, q * (q - 1)),
            (q, p(n + 1) * (q + 1) - 2),
            (q + s, q * (q - 1)),
            (2 * q, 1),
        ]
    };
    WeightDistribution::from_pairs(Metric::Lee, &pairs)
}

/// Parity-check rows of `C_f` over `R_n`: all ones, then `d_x` in field-bit order.
#[derive(Clone, Debug)]
pub struct ParityCheck {
    ring: Arc<RingCtx>,
    pub d: Vec<RingElement>,
}

impl ParityCheck {
    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.d.len()
    }

    /// The `(n+1) × N` matrix over Z4: the all-ones row, then coefficient `j` of each `d_x`.
    pub fn z4_matrix(&self) -> Z4Matrix {
        let n = self.ring.degree();
        let mut rows = vec![vec![1u8; self.d.len()]];
        for j in 0..n {
            rows.push(self.d.iter().map(|x| x.coeff(j)).collect());
        }
        Z4Matrix::from_rows(rows)
    }

    /// Dual codeword `c_{a,b} = (T(a·d_x) + b)_x`.
    pub fn dual_codeword(&self, a: RingElement, b: u8) -> Z4Word {
        Z4Word(
            self.d
                .iter()
                .map(|&x| (self.ring.trace(self.ring.mul(a, x)) + b) & 3)
                .collect(),
        )
    }

    /// All `4^{n+1}` dual codewords, `a` by base-4 index then `b`.
    pub fn dual_codewords(&self) -> impl Iterator<Item = Z4Word> + '_ {
        (0..self.ring.size()).flat_map(move |i| {
            let a = RingElement::from_index(i);
            (0..4u8).map(move |b| self.dual_codeword(a, b))
        })
    }

    /// Generator matrix of `C_f`, checked to be free of rank `N − n − 1`.
    pub fn code_generator(&self) -> Result<Z4Matrix, CodeError> {
        let g = kernel_generator_matrix(&self.z4_matrix())?;
        let expected = self.d.len() - self.ring.degree() as usize - 1;
        if g.nrows() != expected {
            return Err(CodeError::RankMismatch {
                expected,
                got: g.nrows(),
            });
        }
        Ok(g)
    }
}

pub fn parity_check_cf(f: &FuncTable, ring: &Arc<RingCtx>) -> Result<ParityCheck, CodeError> {
    let d = build_diffset(f, ring)?;
    Ok(ParityCheck {
        ring: ring.clone(),
        d: d.elements().to_vec(),
    })
}

fn guard(what: &'static str, n: u32, max: u32) -> Result<(), CodeError> {
    if n > max {
        Err(CodeError::TooLarge { what, n, max })
    } else {
        Ok(())
    }
}

/// Lee weight distribution of the `4^{n+1}` dual words, counted per `a` from
/// the value histogram of `T(a·d_x)`.
pub fn dual_lee_distribution(h: &ParityCheck) -> Result<WeightDistribution, CodeError> {
    use rayon::prelude::*;
    let ring = &h.ring;
    guard("dual enumeration", ring.degree(), MAX_DUAL_DEGREE)?;
    let per_a: Vec<[u64; 4]> = (0..ring.size())
        .into_par_iter()
        .map(|i| {
            let a = RingElement::from_index(i);
            let mut cnt = [0u64; 4];
            for &x in &h.d {
                cnt[ring.trace(ring.mul(a, x)) as usize] += 1;
            }
            cnt
        })
        .collect();
    let mut dist = WeightDistribution::new(Metric::Lee);
    for cnt in per_a {
        for b in 0..4usize {
            let w: u64 = (0..4).map(|v| cnt[v] * LEE[(v + b) & 3] as u64).sum();
            dist.add(w, 1);
        }
    }
    Ok(dist)
}

/// Exact Lee weight distribution of a list of words.
pub fn lee_distribution_of_words<'a>(words: impl IntoIterator<Item = &'a Z4Word>) -> WeightDistribution {
    let mut d = WeightDistribution::new(Metric::Lee);
    for w in words {
        d.add(lee_weight(w) as u64, 1);
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinLee {
    pub distance: u64,
    /// A codeword of minimum weight, when the code was enumerated.
    pub witness: Option<Z4Word>,
}

/// Minimum Lee distance of `C_f`: direct enumeration for `n ≤ 3`, otherwise
/// through the MacWilliams transform of the dual enumerator.
pub fn min_lee_distance_cf(h: &ParityCheck) -> Result<MinLee, CodeError> {
    let n = h.ring.degree();
    if n <= MAX_ENUMERATION_DEGREE {
        let words = enumerate_code(&h.code_generator()?);
        let witness = words
            .into_iter()
            .filter(|w| lee_weight(w) > 0)
            .min_by_key(lee_weight)
            .ok_or_else(|| CodeError::Inconsistent("code has no nonzero word".into()))?;
        return Ok(MinLee {
            distance: lee_weight(&witness) as u64,
            witness: Some(witness),
        });
    }
    guard("MacWilliams route", n, MAX_MACWILLIAMS_DEGREE)?;
    let dual = swe_of_dual(h)?;
    let code = macwilliams_transform(&dual, h.ring.size() * 4)?;
    let distance = lee_distribution_from_swe(&code)
        .min_nonzero()
        .ok_or_else(|| CodeError::Inconsistent("code has no nonzero word".into()))?;
    Ok(MinLee {
        distance,
        witness: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BinaryParams {
    pub length: usize,
    pub size: usize,
    pub min_distance: u32,
}

/// Parameters of the Gray image of `words`, optionally punctured at one
/// binary coordinate. Distances are taken over all pairs since the image
/// need not be linear.
pub fn gray_params(words: &[Z4Word], puncture: Option<usize>) -> Result<BinaryParams, CodeError> {
    let len = words.first().map_or(0, |w| 2 * w.len());
    if let Some(pos) = puncture {
        if pos >= len {
            return Err(CodeError::BadPosition { pos, len });
        }
    }
    if len > 128 {
        return Err(CodeError::TooLarge {
            what: "Gray parameter enumeration",
            n: len as u32,
            max: 128,
        });
    }
    let pack = |w: &Z4Word| -> u128 {
        let bits = gray_map(w);
        let mut v = 0u128;
        let mut k = 0;
        for (i, &b) in bits.iter().enumerate() {
            if Some(i) == puncture {
                continue;
            }
            v |= (b as u128) << k;
            k += 1;
        }
        v
    };
    let mut images: Vec<u128> = words.iter().map(pack).collect();
    images.sort_unstable();
    images.dedup();
    let mut d = u32::MAX;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            d = d.min((images[i] ^ images[j]).count_ones());
        }
    }
    Ok(BinaryParams {
        length: len - puncture.is_some() as usize,
        size: images.len(),
        min_distance: d,
    })
}

/// `(length, size, min distance)` of the Gray image of `C_f` punctured at `pos`.
pub fn punctured_gray_params(h: &ParityCheck, pos: Option<usize>) -> Result<BinaryParams, CodeError> {
    guard("code enumeration", h.ring.degree(), MAX_ENUMERATION_DEGREE)?;
    let words = enumerate_code(&h.code_generator()?);
    gray_params(&words, pos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{FieldCtx, FieldElement};

    fn ring(n: u32) -> Arc<RingCtx> {
        Arc::new(RingCtx::new(Arc::new(FieldCtx::new(n).unwrap())).unwrap())
    }

    #[test]
    fn lee_examples() {
        let w = Z4Word(vec![1, 2, 3, 0]);
        assert_eq!(lee_weight(&w), 4);
        assert_eq!(lee_weight_by_character(&w), 4);
        assert_eq!(lee_weight(&Z4Word::zeros(5)), 0);
    }

    #[test]
    fn gray_examples() {
        assert_eq!(gray_map(&Z4Word::zeros(3)), vec![0; 6]);
        let twos = Z4Word(vec![2; 4]);
        assert_eq!(gray_map(&twos), vec![1; 8]);
        assert_eq!(gray_map(&Z4Word(vec![0, 1, 2, 3])), vec![0, 0, 0, 1, 1, 1, 1, 0]);
    }

    #[test]
    fn parity_check_of_zero_on_z4() {
        let r = ring(1);
        let h = parity_check_cf(&FuncTable::zero(r.field().clone()), &r).unwrap();
        assert_eq!(h.z4_matrix().rows(), &[vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn trivial_dual_words() {
        let r = ring(3);
        let h = parity_check_cf(&FuncTable::zero(r.field().clone()), &r).unwrap();
        assert_eq!(h.length(), 8);
        assert_eq!(h.dual_codeword(RingElement::ZERO, 0), Z4Word::zeros(8));
        let ones = h.dual_codeword(RingElement::ZERO, 1);
        assert_eq!(ones, Z4Word(vec![1; 8]));
        assert_eq!(lee_weight(&ones), 8);
        assert_eq!(h.dual_codewords().count(), 256);
    }

    #[test]
    fn closed_form_tables_sum_to_dual_size() {
        for n in 1..=10 {
            assert_eq!(expected_dual_table(n).total(), 1u64 << (2 * n + 2), "n={n}");
        }
    }

    #[test]
    fn dual_distribution_fast_path_matches_words() {
        let r = ring(3);
        let f = FuncTable::monomial(r.field().clone(), 3, FieldElement::ONE);
        let h = parity_check_cf(&f, &r).unwrap();
        let words: Vec<Z4Word> = h.dual_codewords().collect();
        assert_eq!(dual_lee_distribution(&h).unwrap(), lee_distribution_of_words(&words));
    }

    #[test]
    fn csv_format() {
        let d = WeightDistribution::from_pairs(Metric::Lee, &[(6, 112), (0, 1)]);
        assert_eq!(d.to_csv(), "weight,frequency\n0,1\n6,112\n");
    }

    #[test]
    fn gray_params_reject_bad_position() {
        let words = vec![Z4Word::zeros(2), Z4Word(vec![1, 1])];
        assert!(matches!(gray_params(&words, Some(4)), Err(CodeError::BadPosition { .. })));
        let p = gray_params(&words, None).unwrap();
        assert_eq!((p.length, p.size, p.min_distance), (4, 2, 2));
    }
}
