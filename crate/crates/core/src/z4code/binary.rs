//! The binary code `D_f` with parity-check columns `(α^i, f(α^i))`, `0 ≤ i < 2^n − 1`.

use std::collections::HashSet;

use super::CodeError;
use crate::gf2::FieldElement;
use crate::planar::FuncTable;

/// Parity-check matrix of `D_f`; column `i` packs `α^i` in the low `n` bits
/// and `f(α^i)` in the high `n` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryDf {
    pub n: u32,
    pub columns: Vec<u64>,
}

impl BinaryDf {
    /// The `2n × (2^n − 1)` matrix, one row of bits per coordinate.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..2 * self.n)
            .map(|r| self.columns.iter().map(|c| ((c >> r) & 1) as u8).collect())
            .collect()
    }
}

pub fn binary_df(f: &FuncTable) -> Result<BinaryDf, CodeError> {
    let ctx = f.ctx();
    if !f.eval(FieldElement::ZERO).is_zero() {
        return Err(CodeError::NonzeroAtZero);
    }
    let n = ctx.degree();
    let mut x = FieldElement::ONE;
    let mut columns = Vec::with_capacity(ctx.group_order() as usize);
    for _ in 0..ctx.group_order() {
        columns.push(x.bits() as u64 | ((f.eval(x).bits() as u64) << n));
        x = ctx.mul(x, ctx.alpha());
    }
    Ok(BinaryDf { n, columns })
}

/// Minimum Hamming distance of `D_f`, searching for the fewest columns that
/// sum to zero. Columns are distinct and nonzero, so the answer is at least 3.
///
/// Once no set of 3 or 4 columns sums to zero, any collision between a
/// 3-sum and a 2-sum involves disjoint index sets, so the weight-5 test is a
/// plain lookup.
pub fn min_hamming_distance_df(f: &FuncTable) -> Result<u32, CodeError> {
    let df = binary_df(f)?;
    let cols = &df.columns;
    let set: HashSet<u64> = cols.iter().copied().collect();
    let m = cols.len();

    let mut pair_sums = HashSet::with_capacity(m * m / 2);
    let mut weight4 = false;
    for i in 0..m {
        for j in (i + 1)..m {
            let s = cols[i] ^ cols[j];
            if set.contains(&s) {
                return Ok(3);
            }
            // Two distinct pairs with one common index would force equal columns.
            if !pair_sums.insert(s) {
                weight4 = true;
            }
        }
    }
    if weight4 {
        return Ok(4);
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let s = cols[i] ^ cols[j];
            for &c in &cols[(j + 1)..] {
                if pair_sums.contains(&(s ^ c)) {
                    return Ok(5);
                }
            }
        }
    }
    Err(CodeError::DistanceAboveFive)
}
