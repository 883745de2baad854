//! The Galois ring `GR(4, n)` as `Z4[X]/(h)`, where `h` is the Hensel lift of
//! the binary field modulus.
//!
//! Elements pack one residue mod 4 per two bits (coefficient `i` at bits
//! `2i, 2i+1`), so the packed integer is also the base-4 index of the element.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::gf2::{FieldCtx, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not in the Teichmüller set")]
    NotTeichmuller(RingElement),
    #[error("Hensel lift failed its order check for modulus 0x{0:x}")]
    LiftFailed(u32),
    #[error("ring mismatch between contexts of degree {0} and {1}")]
    Mismatch(u32, u32),
    #[error("cannot parse ring element from {0:?}")]
    Parse(String),
}

const LO: u128 = 0x5555_5555_5555_5555_5555_5555_5555_5555;
const HI: u128 = LO << 1;

#[inline]
fn packed_add(a: u128, b: u128) -> u128 {
    ((a & LO) + (b & LO)) ^ ((a ^ b) & HI)
}

#[inline]
fn packed_neg(a: u128) -> u128 {
    a ^ ((a & LO) << 1)
}

#[inline]
fn packed_scale(a: u128, s: u8) -> u128 {
    match s & 3 {
        0 => 0,
        1 => a,
        2 => (a & LO) << 1,
        _ => packed_neg(a),
    }
}

/// An element of `GR(4, n)`: `n` coefficients mod 4.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement(u64);

impl RingElement {
    pub const ZERO: RingElement = RingElement(0);
    pub const ONE: RingElement = RingElement(1);

    /// Element with base-4 index `idx` (coefficient `i` is digit `i`).
    pub const fn from_index(idx: u64) -> Self {
        RingElement(idx)
    }

    pub const fn index(self) -> u64 {
        self.0
    }

    pub fn from_coeffs(coeffs: &[u8]) -> Self {
        let mut v = 0u64;
        for (i, &c) in coeffs.iter().enumerate() {
            v |= ((c & 3) as u64) << (2 * i);
        }
        RingElement(v)
    }

    #[inline]
    pub fn coeff(self, i: u32) -> u8 {
        ((self.0 >> (2 * i)) & 3) as u8
    }

    pub fn coeffs(self, n: u32) -> Vec<u8> {
        (0..n).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Reduction mod 2 as a field bit pattern.
    #[inline]
    pub fn residue_bits(self) -> u32 {
        compact_lanes(self.0 & LO as u64)
    }

    /// True iff every coefficient is even, i.e. the element lies in `2R`.
    pub fn is_in_2r(self) -> bool {
        self.0 & (LO as u64) == 0
    }

    /// Lifts a field bit pattern to the element with 0/1 coefficients.
    pub fn lift_bits(bits: u32) -> Self {
        RingElement(spread_lanes(bits))
    }

    /// Comma-separated coefficient vector `c0,c1,…,c_{n−1}`.
    pub fn to_coeff_string(self, n: u32) -> String {
        self.coeffs(n)
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_coeffs(s: &str) -> Result<Self, RingError> {
        let mut cs = Vec::new();
        for part in s.split(',') {
            match part.trim().parse::<u8>() {
                Ok(c) if c < 4 => cs.push(c),
                _ => return Err(RingError::Parse(s.to_string())),
            }
        }
        if cs.len() > 24 {
            return Err(RingError::Parse(s.to_string()));
        }
        Ok(RingElement::from_coeffs(&cs))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut v = self.0;
        let mut first = true;
        loop {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", v & 3)?;
            first = false;
            v >>= 2;
            if v == 0 {
                break;
            }
        }
        Ok(())
    }
}

impl Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn spread_lanes(bits: u32) -> u64 {
    let mut v = 0u64;
    let mut b = bits;
    while b != 0 {
        let i = b.trailing_zeros();
        v |= 1u64 << (2 * i);
        b &= b - 1;
    }
    v
}

fn compact_lanes(v: u64) -> u32 {
    let mut out = 0u32;
    let mut x = v;
    while x != 0 {
        let i = x.trailing_zeros();
        out |= 1 << (i / 2);
        x &= x - 1;
    }
    out
}

/// JSON dump proving two runs used identical ring structures.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RingCtxDump {
    pub n: u32,
    pub field_modulus: String,
    pub lifted_modulus: String,
    pub beta: String,
    pub teichmuller_table_sha256: String,
}

/// `GR(4, n)` together with its Teichmüller set and the isomorphism
/// `(Γ, ⊕, ·) ≅ F_{2^n}` pinned by `β ↦ α`.
pub struct RingCtx {
    n: u32,
    field: Arc<FieldCtx>,
    /// Coefficients `h_0 … h_{n−1}` of the monic lifted modulus.
    lifted_low: u64,
    /// `X^n mod h`, i.e. `−(h − X^n)`.
    x_pow_n: u128,
    beta: RingElement,
    /// `field_to_gamma[bits]` is the Teichmüller element over that residue.
    field_to_gamma: Vec<RingElement>,
    /// `T(X^i)` for `i < n`.
    basis_traces: Vec<u8>,
}

impl fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingCtx")
            .field("n", &self.n)
            .field("lifted_modulus", &self.lifted_modulus_string())
            .finish()
    }
}

/// Graeffe step: `h(X^2) = (−1)^n f(X) f(−X)` mod 4, for a binary `f` of degree `n`.
/// Returns the `n + 1` coefficients of `h`, lowest first.
pub fn graeffe_lift(modulus: u32, n: u32) -> Vec<u8> {
    let coeff = |i: u32| -> i64 { ((modulus >> i) & 1) as i64 };
    let even: Vec<i64> = (0..=n / 2).map(|i| coeff(2 * i)).collect();
    let odd: Vec<i64> = (0..=n / 2).map(|i| if 2 * i + 1 <= n { coeff(2 * i + 1) } else { 0 }).collect();
    let square = |p: &[i64]| -> Vec<i64> {
        let mut r = vec![0i64; 2 * p.len()];
        for (i, &a) in p.iter().enumerate() {
            for (j, &b) in p.iter().enumerate() {
                r[i + j] += a * b;
            }
        }
        r
    };
    let e2 = square(&even);
    let o2 = square(&odd);
    let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
    (0..=n as usize)
        .map(|i| {
            let y_o2 = if i >= 1 { o2.get(i - 1).copied().unwrap_or(0) } else { 0 };
            let v = sign * (e2.get(i).copied().unwrap_or(0) - y_o2);
            v.rem_euclid(4) as u8
        })
        .collect()
}

impl RingCtx {
    pub fn new(field: Arc<FieldCtx>) -> Result<Self, RingError> {
        let n = field.degree();
        let h = graeffe_lift(field.modulus(), n);
        if h[n as usize] != 1 {
            return Err(RingError::LiftFailed(field.modulus()));
        }
        let lifted_low = RingElement::from_coeffs(&h[..n as usize]).0;
        let x_pow_n = packed_neg(lifted_low as u128);
        let mut ctx = RingCtx {
            n,
            field: field.clone(),
            lifted_low,
            x_pow_n,
            beta: RingElement::ZERO,
            field_to_gamma: Vec::new(),
            basis_traces: Vec::new(),
        };
        let alpha = field.alpha();
        let beta = ctx.teich_project(RingElement::lift_bits(alpha.bits()));
        let order = field.group_order() as u64;
        if ctx.pow(beta, order) != RingElement::ONE || beta.residue_bits() != alpha.bits() {
            return Err(RingError::LiftFailed(field.modulus()));
        }
        ctx.beta = beta;

        let mut table = vec![RingElement::ZERO; field.size()];
        let mut g = RingElement::ONE;
        let mut a = FieldElement::ONE;
        for i in 0..order {
            if i > 0 && g == RingElement::ONE {
                return Err(RingError::LiftFailed(field.modulus()));
            }
            table[a.bits() as usize] = g;
            g = ctx.mul(g, beta);
            a = field.mul(a, alpha);
        }
        ctx.field_to_gamma = table;
        ctx.basis_traces = (0..n)
            .map(|i| ctx.trace_by_frobenius(RingElement(1u64 << (2 * i))))
            .collect();
        Ok(ctx)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn field(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    /// Number of elements, `4^n`.
    pub fn size(&self) -> u64 {
        1u64 << (2 * self.n)
    }

    /// Generator of `Γ*`, the Teichmüller lift of `α`.
    pub fn beta(&self) -> RingElement {
        self.beta
    }

    /// Coefficients of the monic lifted modulus, lowest first, `n + 1` entries.
    pub fn lifted_modulus(&self) -> Vec<u8> {
        let mut c = RingElement(self.lifted_low).coeffs(self.n);
        c.push(1);
        c
    }

    pub fn lifted_modulus_string(&self) -> String {
        self.lifted_modulus()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> {
        (0..self.size()).map(RingElement)
    }

    /// Teichmüller elements in field-bit order: entry `i` lies over the
    /// field element with bit pattern `i`.
    pub fn gamma(&self) -> &[RingElement] {
        &self.field_to_gamma
    }

    pub fn scalar(&self, s: u8) -> RingElement {
        RingElement((s & 3) as u64)
    }

    #[inline]
    pub fn add(&self, a: RingElement, b: RingElement) -> RingElement {
        RingElement(packed_add(a.0 as u128, b.0 as u128) as u64)
    }

    #[inline]
    pub fn neg(&self, a: RingElement) -> RingElement {
        RingElement(packed_neg(a.0 as u128) as u64)
    }

    #[inline]
    pub fn sub(&self, a: RingElement, b: RingElement) -> RingElement {
        self.add(a, self.neg(b))
    }

    /// Multiplication by a scalar of `Z4`.
    #[inline]
    pub fn scale(&self, a: RingElement, s: u8) -> RingElement {
        RingElement(packed_scale(a.0 as u128, s) as u64)
    }

    #[inline]
    pub fn double(&self, a: RingElement) -> RingElement {
        self.scale(a, 2)
    }

    pub fn mul(&self, a: RingElement, b: RingElement) -> RingElement {
        let n = self.n;
        let bw = b.0 as u128;
        let mut acc = 0u128;
        let mut av = a.0;
        while av != 0 {
            let lane = av.trailing_zeros() / 2;
            let s = ((av >> (2 * lane)) & 3) as u8;
            acc = packed_add(acc, packed_scale(bw << (2 * lane), s));
            av &= !(3u64 << (2 * lane));
        }
        if n >= 1 {
            for d in (n..=2 * n.saturating_sub(1)).rev() {
                let c = ((acc >> (2 * d)) & 3) as u8;
                if c != 0 {
                    acc &= !(3u128 << (2 * d));
                    acc = packed_add(acc, packed_scale(self.x_pow_n << (2 * (d - n)), c));
                }
            }
        }
        RingElement(acc as u64)
    }

    pub fn pow(&self, a: RingElement, mut e: u64) -> RingElement {
        let mut base = a;
        let mut acc = RingElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `y^{2^n}`, the Teichmüller component of `y`.
    pub fn teich_project(&self, y: RingElement) -> RingElement {
        let mut x = y;
        for _ in 0..self.n {
            x = self.mul(x, x);
        }
        x
    }

    /// Membership in `Γ` by lookup over the residue.
    pub fn is_teichmuller(&self, x: RingElement) -> bool {
        self.field_to_gamma
            .get(x.residue_bits() as usize)
            .is_some_and(|&g| g == x)
    }

    fn require_gamma(&self, x: RingElement) -> Result<(), RingError> {
        if self.is_teichmuller(x) {
            Ok(())
        } else {
            Err(RingError::NotTeichmuller(x))
        }
    }

    /// The unique `g ∈ Γ` with `g² = x`, computed as `x^{2^{n−1}}`.
    pub fn teich_sqrt(&self, x: RingElement) -> Result<RingElement, RingError> {
        self.require_gamma(x)?;
        let mut g = x;
        for _ in 0..self.n.saturating_sub(1) {
            g = self.mul(g, g);
        }
        Ok(g)
    }

    /// Field addition on `Γ`: `x ⊕ y = x + y + 2√(xy)`.
    pub fn oplus(&self, x: RingElement, y: RingElement) -> Result<RingElement, RingError> {
        self.require_gamma(x)?;
        self.require_gamma(y)?;
        let root = self.teich_sqrt(self.mul(x, y))?;
        Ok(self.add(self.add(x, y), self.double(root)))
    }

    /// Unique `(a, b) ∈ Γ × Γ` with `y = a + 2b`.
    pub fn decompose(&self, y: RingElement) -> (RingElement, RingElement) {
        let a = self.teich_project(y);
        let diff = self.sub(y, a);
        debug_assert!(diff.is_in_2r());
        let b_bits = compact_lanes(diff.0 & HI as u64);
        (a, self.field_to_gamma[b_bits as usize])
    }

    /// The Frobenius automorphism `a + 2b ↦ a² + 2b²`.
    pub fn frobenius(&self, y: RingElement) -> RingElement {
        let (a, b) = self.decompose(y);
        self.add(self.mul(a, a), self.double(self.mul(b, b)))
    }

    /// Absolute trace `Σ_{i<n} φ^i(y)` computed from the definition.
    pub fn trace_by_frobenius(&self, y: RingElement) -> u8 {
        let mut acc = RingElement::ZERO;
        let mut x = y;
        for _ in 0..self.n {
            acc = self.add(acc, x);
            x = self.frobenius(x);
        }
        assert!(acc.0 < 4, "trace left Z4: {acc}");
        acc.0 as u8
    }

    /// Absolute trace `T: R_n → Z4`, via its values on the basis `X^i`.
    #[inline]
    pub fn trace(&self, y: RingElement) -> u8 {
        let mut s = 0u32;
        let mut v = y.0;
        while v != 0 {
            let lane = v.trailing_zeros() / 2;
            s += ((v >> (2 * lane)) & 3) as u32 * self.basis_traces[lane as usize] as u32;
            v &= !(3u64 << (2 * lane));
        }
        (s & 3) as u8
    }

    /// `T(X^i)` for `i < n`.
    pub fn basis_traces(&self) -> &[u8] {
        &self.basis_traces
    }

    pub fn gamma_to_field(&self, x: RingElement) -> Result<FieldElement, RingError> {
        self.require_gamma(x)?;
        Ok(FieldElement::from_bits(x.residue_bits()))
    }

    pub fn field_to_gamma(&self, a: FieldElement) -> RingElement {
        self.field_to_gamma[a.bits() as usize]
    }

    pub fn dump(&self) -> RingCtxDump {
        let mut h = Sha256::new();
        for g in &self.field_to_gamma {
            h.update(g.0.to_le_bytes());
        }
        RingCtxDump {
            n: self.n,
            field_modulus: format!("0x{:x}", self.field.modulus()),
            lifted_modulus: self.lifted_modulus_string(),
            beta: self.beta.to_coeff_string(self.n),
            teichmuller_table_sha256: h
                .finalize()
                .iter()
                .map(|b| format!("{b:02x}"))
                .collect(),
        }
    }

    pub fn check_field(&self, field: &FieldCtx) -> Result<(), RingError> {
        if self.field.same_field(field) {
            Ok(())
        } else {
            Err(RingError::Mismatch(self.n, field.degree()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u32) -> RingCtx {
        RingCtx::new(Arc::new(FieldCtx::new(n).unwrap())).unwrap()
    }

    #[test]
    fn z4_as_degree_one_ring() {
        let r = ring(1);
        assert_eq!(r.gamma(), &[RingElement::ZERO, RingElement::ONE]);
        for y in r.elements() {
            assert_eq!(r.trace(y), y.coeff(0));
        }
        let three = r.scalar(3);
        assert_eq!(r.decompose(three), (RingElement::ONE, RingElement::ONE));
    }

    #[test]
    fn gamma_sizes_and_orders() {
        let r2 = ring(2);
        assert_eq!(r2.gamma().len(), 4);
        assert_eq!(r2.pow(r2.beta(), 3), RingElement::ONE);
        let r3 = ring(3);
        for &x in r3.gamma() {
            assert_eq!(r3.pow(x, 8), x);
        }
        for i in 1..7 {
            assert_ne!(r3.pow(r3.beta(), i), RingElement::ONE);
        }
    }

    #[test]
    fn lifted_modulus_reduces_to_field_modulus() {
        for n in 1..=12 {
            let r = ring(n);
            let bits = r
                .lifted_modulus()
                .iter()
                .enumerate()
                .fold(0u32, |acc, (i, &c)| acc | (((c & 1) as u32) << i));
            assert_eq!(bits, r.field().modulus(), "n={n}");
        }
    }

    #[test]
    fn beta_is_x_for_primitive_moduli() {
        for n in 2..=8 {
            let r = ring(n);
            assert_eq!(r.beta(), RingElement::from_coeffs(&[0, 1]), "n={n}");
        }
    }

    #[test]
    fn basic_arithmetic() {
        let r = ring(3);
        for x in r.elements() {
            assert_eq!(r.add(x, r.neg(x)), RingElement::ZERO);
        }
        assert_eq!(r.mul(r.scalar(2), r.scalar(2)), RingElement::ZERO);
        let b = r.beta();
        assert_eq!(r.mul(b, r.pow(b, 6)), RingElement::ONE);
    }

    #[test]
    fn teich_sqrt_examples() {
        let r = ring(3);
        let b = r.beta();
        assert_eq!(r.teich_sqrt(RingElement::ZERO), Ok(RingElement::ZERO));
        assert_eq!(r.teich_sqrt(RingElement::ONE), Ok(RingElement::ONE));
        assert_eq!(r.teich_sqrt(r.mul(b, b)), Ok(b));
        assert_eq!(r.teich_sqrt(r.pow(b, 5)), Ok(r.pow(b, 6)));
        assert!(matches!(r.teich_sqrt(r.scalar(2)), Err(RingError::NotTeichmuller(_))));
    }

    #[test]
    fn oplus_examples() {
        let r = ring(2);
        for &x in r.gamma() {
            assert_eq!(r.oplus(x, RingElement::ZERO), Ok(x));
            assert_eq!(r.oplus(x, x), Ok(RingElement::ZERO));
        }
        let f = r.field().clone();
        let s = r.oplus(RingElement::ONE, r.beta()).unwrap();
        assert!(r.is_teichmuller(s));
        let expected = r.field_to_gamma(f.add(FieldElement::ONE, f.alpha()));
        assert_eq!(s, expected);
        assert!(r.oplus(r.scalar(3), RingElement::ONE).is_err());
    }

    #[test]
    fn decompose_examples() {
        let r = ring(3);
        assert_eq!(r.decompose(RingElement::ZERO), (RingElement::ZERO, RingElement::ZERO));
        let b = r.beta();
        assert_eq!(r.decompose(r.double(b)), (RingElement::ZERO, b));
        for y in r.elements() {
            let (a, bb) = r.decompose(y);
            assert!(r.is_teichmuller(a) && r.is_teichmuller(bb));
            assert_eq!(r.add(a, r.double(bb)), y);
        }
    }

    #[test]
    fn frobenius_order_and_trace_of_one() {
        let r = ring(3);
        assert_eq!(r.trace(RingElement::ONE), 3);
        for y in r.elements() {
            let mut x = y;
            for _ in 0..3 {
                x = r.frobenius(x);
            }
            assert_eq!(x, y);
        }
    }

    #[test]
    fn membership_matches_power_test() {
        for n in 1..=4 {
            let r = ring(n);
            for y in r.elements() {
                assert_eq!(r.is_teichmuller(y), r.pow(y, 1 << n) == y, "n={n} y={y}");
            }
        }
    }

    #[test]
    fn trace_matches_definition() {
        for n in 1..=4 {
            let r = ring(n);
            for y in r.elements() {
                assert_eq!(r.trace(y), r.trace_by_frobenius(y));
            }
        }
    }

    #[test]
    fn coefficient_strings() {
        let r = ring(3);
        assert_eq!(r.beta().to_coeff_string(3), "0,1,0");
        assert_eq!(RingElement::parse_coeffs("0,1,0").unwrap(), r.beta());
        assert!(RingElement::parse_coeffs("0,4").is_err());
        let d = r.dump();
        assert_eq!(d.n, 3);
        assert_eq!(d.field_modulus, "0xb");
        assert_eq!(d.teichmuller_table_sha256.len(), 64);
    }
}
