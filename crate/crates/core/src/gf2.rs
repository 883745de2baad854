//! Binary extension fields `F_{2^n}` in polynomial basis.
//!
//! Elements are bit patterns: bit `i` is the coefficient of `X^i` relative to
//! the context modulus. Every context built with [`FieldCtx::new`] uses the
//! modulus published in `assets/moduli.txt`, so all derived tables are
//! reproducible bit for bit.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 24;

/// Discrete-log tables are built eagerly up to this degree.
const EAGER_TABLE_DEGREE: u32 = 20;

/// The shipped moduli table.
pub const MODULI_TABLE: &str = include_str!("../assets/moduli.txt");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree {0} out of range 1..={MAX_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("no modulus for degree {0} in the moduli table")]
    MissingModulus(u32),
    #[error("malformed moduli table line {line}: {reason}")]
    MalformedTable { line: usize, reason: String },
    #[error("modulus 0x{modulus:x} is not irreducible of degree {n}")]
    ReducibleModulus { n: u32, modulus: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("0x{bits:x} is not a reduced element of F_2^{n}")]
    NotReduced { bits: u32, n: u32 },
    #[error("{m} does not divide the extension degree {n}")]
    NotASubfield { m: u32, n: u32 },
    #[error("{elem} does not lie in the subfield F_2^{m}")]
    NotInSubfield { elem: FieldElement, m: u32 },
    #[error("cannot parse field element from {0:?}")]
    Parse(String),
    #[error("field mismatch: F_2^{left_n} (0x{left_mod:x}) vs F_2^{right_n} (0x{right_mod:x})")]
    Mismatch {
        left_n: u32,
        left_mod: u32,
        right_n: u32,
        right_mod: u32,
    },
}

/// An element of `F_{2^n}` as its coefficient bit pattern.
///
/// The value carries no reference to its context; [`FieldCtx::elem`] checks
/// that a raw pattern is reduced.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a raw bit pattern without range checking.
    pub const fn from_bits(bits: u32) -> Self {
        FieldElement(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.0)
    }
}

impl FromStr for FieldElement {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let hex = t
            .strip_prefix("0x")
            .or_else(|| t.strip_prefix("0X"))
            .ok_or_else(|| FieldError::Parse(s.to_string()))?;
        u32::from_str_radix(hex, 16)
            .map(FieldElement)
            .map_err(|_| FieldError::Parse(s.to_string()))
    }
}

impl serde::Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct LogTables {
    // exp has length 2·(2^n − 1) so sums of two logs index it directly.
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Arithmetic context for `F_{2^n}`. Immutable after construction.
pub struct FieldCtx {
    n: u32,
    modulus: u32,
    alpha: FieldElement,
    order: u32,
    order_factors: Vec<u32>,
    tables: OnceLock<LogTables>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("n", &self.n)
            .field("modulus", &format_args!("0x{:x}", self.modulus))
            .field("alpha", &self.alpha)
            .finish()
    }
}

/// Parses the moduli table text into `(n, modulus)` pairs.
pub fn parse_moduli_table(text: &str) -> Result<Vec<(u32, u32)>, FieldError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: &str| FieldError::MalformedTable {
            line: idx + 1,
            reason: reason.to_string(),
        };
        let mut parts = line.split_whitespace();
        let n = parts
            .next()
            .and_then(|p| p.strip_prefix("n="))
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(|| bad("expected n=<degree>"))?;
        let modulus = parts
            .next()
            .and_then(|p| p.strip_prefix("modulus=0x"))
            .and_then(|v| u32::from_str_radix(v, 16).ok())
            .ok_or_else(|| bad("expected modulus=0x<hex>"))?;
        if parts.next().is_some() {
            return Err(bad("trailing tokens"));
        }
        out.push((n, modulus));
    }
    Ok(out)
}

/// Modulus for degree `n` from the shipped table.
pub fn table_modulus(n: u32) -> Result<u32, FieldError> {
    parse_moduli_table(MODULI_TABLE)?
        .into_iter()
        .find(|&(d, _)| d == n)
        .map(|(_, m)| m)
        .ok_or(FieldError::MissingModulus(n))
}

impl FieldCtx {
    /// Field of degree `n` with the tabulated modulus.
    pub fn new(n: u32) -> Result<Self, FieldError> {
        if n == 0 || n > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(n));
        }
        Self::with_modulus(n, table_modulus(n)?)
    }

    /// Field of degree `n` with an explicit modulus (bit `n` must be set).
    pub fn with_modulus(n: u32, modulus: u32) -> Result<Self, FieldError> {
        if n == 0 || n > MAX_DEGREE {
            return Err(FieldError::DegreeOutOfRange(n));
        }
        if poly_degree(modulus as u64) != Some(n) || !is_irreducible(modulus as u64) {
            return Err(FieldError::ReducibleModulus { n, modulus });
        }
        let order = (1u32 << n) - 1;
        let mut ctx = FieldCtx {
            n,
            modulus,
            alpha: FieldElement::ONE,
            order,
            order_factors: prime_factors(order),
            tables: OnceLock::new(),
        };
        ctx.alpha = (1..=order)
            .map(FieldElement)
            .find(|&g| ctx.has_full_order(g))
            .expect("a finite field has a primitive element");
        if n <= EAGER_TABLE_DEGREE {
            let _ = ctx.tables.set(ctx.build_tables());
        }
        Ok(ctx)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The fixed multiplicative generator (first in increasing integer order).
    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    /// Number of elements, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Order of the multiplicative group, `2^n − 1`.
    pub fn group_order(&self) -> u32 {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size() as u32).map(FieldElement)
    }

    /// Checked conversion from a raw bit pattern.
    pub fn elem(&self, bits: u32) -> Result<FieldElement, FieldError> {
        if (bits as u64) < (1u64 << self.n) {
            Ok(FieldElement(bits))
        } else {
            Err(FieldError::NotReduced { bits, n: self.n })
        }
    }

    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.n == other.n && self.modulus == other.modulus
    }

    pub fn check_same(&self, other: &FieldCtx) -> Result<(), FieldError> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(FieldError::Mismatch {
                left_n: self.n,
                left_mod: self.modulus,
                right_n: other.n,
                right_mod: other.modulus,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match self.tables.get() {
            Some(t) => FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElement(self.reduce(clmul(a.0, b.0))),
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(match self.tables.get() {
            Some(t) => FieldElement(t.exp[(self.order - t.log[a.0 as usize]) as usize]),
            None => self.pow(a, (self.order - 1) as u64),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `e` reduced modulo `2^n − 1` for nonzero `a` and `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let e = e % self.order as u64;
        if let Some(t) = self.tables.get() {
            let l = (t.log[a.0 as usize] as u64 * e) % self.order as u64;
            return FieldElement(t.exp[l as usize]);
        }
        let mut base = a;
        let mut acc = FieldElement::ONE;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `a^{2^i}`.
    pub fn frobenius(&self, a: FieldElement, i: u32) -> FieldElement {
        let mut x = a;
        for _ in 0..(i % self.n) {
            x = self.square(x);
        }
        x
    }

    /// Unique square root, `a^{2^{n−1}}`.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        self.frobenius(a, self.n - 1)
    }

    /// Discrete logarithm to base [`alpha`](Self::alpha); `None` for zero.
    /// Above degree 20 the first call builds the tables.
    pub fn dlog(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let t = self.tables.get_or_init(|| self.build_tables());
        Some(t.log[a.0 as usize])
    }

    /// Whether `a` lies in the subfield `F_{2^m}` (`m | n`).
    pub fn in_subfield(&self, a: FieldElement, m: u32) -> Result<bool, FieldError> {
        self.check_divides(m)?;
        Ok(self.frobenius(a, m) == a)
    }

    /// Absolute trace of the subfield `F_{2^m}`: `a + a^2 + … + a^{2^{m−1}}`.
    pub fn trace_abs(&self, a: FieldElement, m: u32) -> Result<u8, FieldError> {
        if !self.in_subfield(a, m)? {
            return Err(FieldError::NotInSubfield { elem: a, m });
        }
        let mut acc = FieldElement::ZERO;
        let mut x = a;
        for _ in 0..m {
            acc = self.add(acc, x);
            x = self.square(x);
        }
        debug_assert!(acc.0 <= 1);
        Ok(acc.0 as u8)
    }

    /// All elements of the subfield `F_{2^m}`, ascending by bit pattern.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<FieldElement>, FieldError> {
        self.check_divides(m)?;
        let step = (self.order / ((1u32 << m) - 1)) as u64;
        let gen = self.pow(self.alpha, step);
        let mut out = Vec::with_capacity(1 << m);
        out.push(FieldElement::ZERO);
        let mut x = FieldElement::ONE;
        for _ in 0..((1u32 << m) - 1) {
            out.push(x);
            x = self.mul(x, gen);
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut ord = self.order;
        for &p in &self.order_factors {
            while ord % p == 0 && self.pow(a, (ord / p) as u64) == FieldElement::ONE {
                ord /= p;
            }
        }
        Some(ord)
    }

    fn has_full_order(&self, g: FieldElement) -> bool {
        if self.pow_by_squaring(g, self.order as u64) != FieldElement::ONE {
            return false;
        }
        self.order_factors
            .iter()
            .all(|&p| self.pow_by_squaring(g, (self.order / p) as u64) != FieldElement::ONE)
    }

    fn pow_by_squaring(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.0;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.reduce(clmul(acc, base));
            }
            base = self.reduce(clmul(base, base));
            e >>= 1;
        }
        FieldElement(acc)
    }

    fn check_divides(&self, m: u32) -> Result<(), FieldError> {
        if m == 0 || self.n % m != 0 {
            Err(FieldError::NotASubfield { m, n: self.n })
        } else {
            Ok(())
        }
    }

    fn build_tables(&self) -> LogTables {
        let q = self.order as usize;
        let mut exp = vec![0u32; 2 * q];
        let mut log = vec![0u32; q + 1];
        let mut x = 1u32;
        for i in 0..q {
            exp[i] = x;
            exp[i + q] = x;
            log[x as usize] = i as u32;
            x = self.reduce(clmul(x, self.alpha.0));
        }
        LogTables { exp, log }
    }

    #[inline]
    fn reduce(&self, mut p: u64) -> u32 {
        let n = self.n;
        let m = self.modulus as u64;
        let mut d = 63 - p.leading_zeros().min(63);
        while p >> n != 0 {
            if (p >> d) & 1 == 1 {
                p ^= m << (d - n);
            }
            d -= 1;
        }
        p as u32
    }
}

#[inline]
fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut r = 0u64;
    while b != 0 {
        let i = b.trailing_zeros();
        r ^= a << i;
        b &= b - 1;
    }
    r
}

/// Parity of `C(m, k)`: 1 iff every binary digit of `k` is at most the
/// corresponding digit of `m`.
pub fn binomial_parity(m: u64, k: u64) -> u8 {
    (k & m == k) as u8
}

fn poly_degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

fn poly_mulmod(a: u64, b: u64, f: u64) -> u64 {
    let df = poly_degree(f).expect("nonzero modulus");
    let mut r = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> df) & 1 == 1 {
            a ^= f;
        }
    }
    r
}

fn poly_rem(mut a: u64, f: u64) -> u64 {
    let df = poly_degree(f).expect("nonzero modulus");
    while let Some(da) = poly_degree(a) {
        if da < df {
            break;
        }
        a ^= f << (da - df);
    }
    a
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Rabin-style test: `f` of degree `n` is irreducible iff
/// `gcd(X^{2^i} − X, f) = 1` for all `1 ≤ i ≤ n/2`.
fn is_irreducible(f: u64) -> bool {
    let Some(n) = poly_degree(f) else { return false };
    if n == 0 {
        return false;
    }
    let mut x_pow = 0b10u64; // X
    for _ in 1..=n / 2 {
        x_pow = poly_mulmod(x_pow, x_pow, f);
        if poly_gcd(f, x_pow ^ 0b10) != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut v: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v % p == 0 {
            out.push(p);
            while v % p == 0 {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(b: u32) -> FieldElement {
        FieldElement::from_bits(b)
    }

    #[test]
    fn degree_one_field() {
        let f = FieldCtx::new(1).unwrap();
        assert_eq!(f.modulus(), 0b11);
        assert_eq!(f.size(), 2);
        assert_eq!(f.alpha(), FieldElement::ONE);
    }

    #[test]
    fn small_moduli_and_generators() {
        let f3 = FieldCtx::new(3).unwrap();
        assert_eq!(f3.modulus(), 0b1011);
        assert_eq!(f3.alpha(), fe(0b10));
        assert_eq!(f3.order_of(f3.alpha()), Some(7));
        let f4 = FieldCtx::new(4).unwrap();
        assert_eq!(f4.modulus(), 0b10011);
        assert_eq!(f4.alpha(), fe(0b10));
        assert_eq!(f4.order_of(f4.alpha()), Some(15));
    }

    #[test]
    fn every_table_modulus_is_irreducible() {
        for (n, m) in parse_moduli_table(MODULI_TABLE).unwrap() {
            assert_eq!(poly_degree(m as u64), Some(n));
            assert!(is_irreducible(m as u64), "n={n}");
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        // X^4 + X^2 + 1 = (X^2 + X + 1)^2
        assert!(matches!(
            FieldCtx::with_modulus(4, 0b10101),
            Err(FieldError::ReducibleModulus { .. })
        ));
        assert!(matches!(FieldCtx::new(0), Err(FieldError::DegreeOutOfRange(0))));
        assert!(matches!(FieldCtx::new(25), Err(FieldError::DegreeOutOfRange(25))));
    }

    #[test]
    fn f4_multiplication() {
        let f = FieldCtx::new(2).unwrap();
        assert_eq!(f.mul(fe(0b10), fe(0b10)), fe(0b11));
        let a = fe(0b10);
        assert_eq!(f.add(a, a), FieldElement::ZERO);
    }

    #[test]
    fn pow_and_inverse() {
        for n in 1..=8 {
            let f = FieldCtx::new(n).unwrap();
            assert_eq!(f.pow(f.alpha(), f.group_order() as u64), FieldElement::ONE);
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
            assert_eq!(f.inv(FieldElement::ZERO), Err(FieldError::ZeroInverse));
            assert_eq!(f.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        }
    }

    #[test]
    fn table_free_arithmetic_matches_tables() {
        let f = FieldCtx::new(8).unwrap();
        for a in f.elements().step_by(7) {
            for b in f.elements().step_by(11) {
                assert_eq!(f.mul(a, b).bits(), f.reduce(clmul(a.bits(), b.bits())));
            }
        }
    }

    #[test]
    fn large_field_without_eager_tables() {
        let f = FieldCtx::new(24).unwrap();
        assert!(f.tables.get().is_none());
        let a = fe(0x123457);
        let inv = f.inv(a).unwrap();
        assert_eq!(f.mul(a, inv), FieldElement::ONE);
        assert_eq!(f.sqrt(f.square(a)), a);
        assert_eq!(f.order_of(f.alpha()), Some(f.group_order()));
    }

    #[test]
    fn traces() {
        let f3 = FieldCtx::new(3).unwrap();
        assert_eq!(f3.trace_abs(FieldElement::ONE, 3), Ok(1));
        let f4 = FieldCtx::new(4).unwrap();
        assert_eq!(f4.trace_abs(FieldElement::ONE, 2), Ok(0));
        let omega = f4.pow(f4.alpha(), 5);
        assert_eq!(f4.order_of(omega), Some(3));
        assert_eq!(f4.trace_abs(omega, 2), Ok(1));
        assert!(matches!(
            f4.trace_abs(f4.alpha(), 2),
            Err(FieldError::NotInSubfield { .. })
        ));
        assert!(matches!(f4.trace_abs(omega, 3), Err(FieldError::NotASubfield { .. })));
    }

    #[test]
    fn subfields() {
        let f = FieldCtx::new(4).unwrap();
        assert_eq!(f.subfield_elements(1).unwrap(), vec![FieldElement::ZERO, FieldElement::ONE]);
        assert_eq!(f.subfield_elements(4).unwrap().len(), 16);
        let sub = f.subfield_elements(2).unwrap();
        assert_eq!(sub.len(), 4);
        for &a in &sub {
            for &b in &sub {
                assert!(sub.contains(&f.add(a, b)));
                assert!(sub.contains(&f.mul(a, b)));
            }
        }
        assert!(f.subfield_elements(3).is_err());
    }

    #[test]
    fn binomial_parity_examples() {
        assert_eq!(binomial_parity(5, 2), 0);
        assert_eq!(binomial_parity(5, 4), 1);
        assert_eq!(binomial_parity(17, 0), 1);
    }

    #[test]
    fn element_text_round_trip() {
        let a: FieldElement = "0x1f".parse().unwrap();
        assert_eq!(a, fe(31));
        assert_eq!(a.to_string(), "0x1f");
        assert!("1f".parse::<FieldElement>().is_err());
        let f = FieldCtx::new(4).unwrap();
        assert!(f.elem(16).is_err());
    }

    #[test]
    fn malformed_table_lines() {
        assert!(parse_moduli_table("n=3 modulus=b").is_err());
        assert!(parse_moduli_table("n=3 modulus=0xb extra").is_err());
        assert_eq!(parse_moduli_table("# c\n\nn=3 modulus=0xb").unwrap(), vec![(3, 0xb)]);
    }
}
