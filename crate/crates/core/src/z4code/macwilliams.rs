//! Symmetrized weight enumerators and the Z4 MacWilliams identity
//!
//! `swe_C(W, X, Y) = |C⊥|⁻¹ · swe_{C⊥}(W + 2X + Y, W − Y, W − 2X + Y)`
//!
//! where `W`, `X`, `Y` count entries equal to 0, ±1 and 2.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{ToPrimitive, Zero};

use super::{guard, CodeError, Metric, ParityCheck, WeightDistribution, Z4Word, MAX_MACWILLIAMS_DEGREE};
use crate::gr4::RingElement;

/// Symmetrized weight enumerator: `(n0, n1, n2) → count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Swe {
    pub length: usize,
    pub counts: BTreeMap<(usize, usize, usize), BigUint>,
}

impl Swe {
    pub fn new(length: usize) -> Self {
        Swe {
            length,
            counts: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, key: (usize, usize, usize), count: u64) {
        debug_assert_eq!(key.0 + key.1 + key.2, self.length);
        if count > 0 {
            *self.counts.entry(key).or_insert_with(BigUint::zero) += count;
        }
    }

    pub fn size(&self) -> BigUint {
        self.counts.values().sum()
    }
}

pub fn swe_of_words<'a>(words: impl IntoIterator<Item = &'a Z4Word>, length: usize) -> Swe {
    let mut s = Swe::new(length);
    for w in words {
        s.add(w.composition(), 1);
    }
    s
}

/// Enumerator of the dual of `C_f`, from the value counts of `T(a·d_x)`.
pub fn swe_of_dual(h: &ParityCheck) -> Result<Swe, CodeError> {
    let ring = h.ring();
    guard("dual enumerator", ring.degree(), MAX_MACWILLIAMS_DEGREE)?;
    let mut s = Swe::new(h.length());
    for i in 0..ring.size() {
        let a = RingElement::from_index(i);
        let mut cnt = [0usize; 4];
        for &x in &h.d {
            cnt[ring.trace(ring.mul(a, x)) as usize] += 1;
        }
        for b in 0..4usize {
            let n0 = cnt[(4 - b) & 3];
            let n2 = cnt[(6 - b) & 3];
            s.add((n0, h.length() - n0 - n2, n2), 1);
        }
    }
    Ok(s)
}

/// Dense homogeneous polynomial in `W, X, Y`; entry `(i, j)` is the
/// coefficient of `W^i X^j Y^{deg−i−j}`.
#[derive(Clone)]
struct HPoly {
    deg: usize,
    c: Vec<BigInt>,
}

impl HPoly {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.deg + 1) + j
    }

    fn one() -> Self {
        HPoly {
            deg: 0,
            c: vec![BigInt::from(1)],
        }
    }

    fn linear(w: i64, x: i64, y: i64) -> Self {
        let mut p = HPoly {
            deg: 1,
            c: vec![BigInt::zero(); 4],
        };
        let (iw, ix, iy) = (p.idx(1, 0), p.idx(0, 1), p.idx(0, 0));
        p.c[iw] = w.into();
        p.c[ix] = x.into();
        p.c[iy] = y.into();
        p
    }

    fn mul(&self, o: &HPoly) -> HPoly {
        let deg = self.deg + o.deg;
        let mut r = HPoly {
            deg,
            c: vec![BigInt::zero(); (deg + 1) * (deg + 1)],
        };
        for i1 in 0..=self.deg {
            for j1 in 0..=(self.deg - i1) {
                let a = &self.c[self.idx(i1, j1)];
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=o.deg {
                    for j2 in 0..=(o.deg - i2) {
                        let b = &o.c[o.idx(i2, j2)];
                        if b.is_zero() {
                            continue;
                        }
                        let k = r.idx(i1 + i2, j1 + j2);
                        r.c[k] += a * b;
                    }
                }
            }
        }
        r
    }

    fn powers(&self, max: usize) -> Vec<HPoly> {
        let mut out = vec![HPoly::one()];
        for k in 1..=max {
            out.push(out[k - 1].mul(self));
        }
        out
    }
}

/// Applies the MacWilliams identity to the enumerator of a code of size
/// `code_size`, producing the enumerator of its dual. Fails unless every
/// resulting coefficient is a nonnegative integer.
pub fn macwilliams_transform(swe: &Swe, code_size: u64) -> Result<Swe, CodeError> {
    if swe.size() != BigUint::from(code_size) {
        return Err(CodeError::Inconsistent(format!(
            "enumerator counts {} words, expected {code_size}",
            swe.size()
        )));
    }
    let n = swe.length;
    let p0 = HPoly::linear(1, 2, 1).powers(n);
    let p1 = HPoly::linear(1, 0, -1).powers(n);
    let p2 = HPoly::linear(1, -2, 1).powers(n);
    let mut acc = HPoly {
        deg: n,
        c: vec![BigInt::zero(); (n + 1) * (n + 1)],
    };
    for (&(n0, n1, n2), count) in &swe.counts {
        let term = p0[n0].mul(&p1[n1]).mul(&p2[n2]);
        let count = BigInt::from_biguint(Sign::Plus, count.clone());
        for (a, t) in acc.c.iter_mut().zip(&term.c) {
            if !t.is_zero() {
                *a += t * &count;
            }
        }
    }
    let divisor = BigInt::from(code_size);
    let mut out = Swe::new(n);
    for i in 0..=n {
        for j in 0..=(n - i) {
            let v = &acc.c[acc.idx(i, j)];
            if v.is_zero() {
                continue;
            }
            let (q, r) = (v / &divisor, v % &divisor);
            if !r.is_zero() || q.sign() == Sign::Minus {
                return Err(CodeError::Inconsistent(format!(
                    "coefficient of W^{i} X^{j} Y^{} is {v}/{code_size}",
                    n - i - j
                )));
            }
            out.counts.insert((i, j, n - i - j), q.magnitude().clone());
        }
    }
    Ok(out)
}

/// Lee weight of a word with composition `(n0, n1, n2)` is `n1 + 2·n2`.
pub fn lee_distribution_from_swe(swe: &Swe) -> WeightDistribution {
    let mut d = WeightDistribution::new(Metric::Lee);
    for (&(_, n1, n2), c) in &swe.counts {
        let c = c.to_u64().expect("weight count fits in u64");
        d.add((n1 + 2 * n2) as u64, c);
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_code_transforms_to_full_space() {
        for n in 1..=4 {
            let zero = Z4Word::zeros(n);
            let s = swe_of_words([&zero], n);
            let full = macwilliams_transform(&s, 1).unwrap();
            assert_eq!(full.size(), BigUint::from(4u64.pow(n as u32)));
            // Each coordinate independently: one 0, two ±1, one 2.
            for (&(a, b, c), cnt) in &full.counts {
                let multinom = (1..=n).product::<usize>()
                    / ((1..=a).product::<usize>() * (1..=b).product::<usize>() * (1..=c).product::<usize>());
                assert_eq!(cnt, &BigUint::from((multinom << b) as u64));
            }
        }
    }

    #[test]
    fn transform_is_involutive_on_repetition_code() {
        let words: Vec<Z4Word> = (0..4u8).map(|b| Z4Word(vec![b; 3])).collect();
        let s = swe_of_words(&words, 3);
        let dual = macwilliams_transform(&s, 4).unwrap();
        assert_eq!(dual.size(), BigUint::from(16u32));
        let back = macwilliams_transform(&dual, 16).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn size_mismatch_rejected() {
        let s = swe_of_words([&Z4Word::zeros(2)], 2);
        assert!(macwilliams_transform(&s, 2).is_err());
    }
}
