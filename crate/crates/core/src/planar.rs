//! Planarity and APN predicates, the exhaustive planar-monomial search and
//! the coefficient sets `A_n`.

use std::fmt::Write as _;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gf2::{FieldCtx, FieldElement, FieldError};

/// Largest degree for which the monomial search runs exhaustively.
pub const MAX_EXHAUSTIVE_SEARCH_DEGREE: u32 = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("epsilon must be nonzero")]
    ZeroEpsilon,
    #[error("coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("table has {got} entries, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("table entry at 0x{x:x} disagrees with its monomial descriptor")]
    DescriptorMismatch { x: u32 },
    #[error("exhaustive search is limited to n <= {MAX_EXHAUSTIVE_SEARCH_DEGREE}, got n = {0}")]
    SearchTooLarge(u32),
    #[error("exponent {t} outside 1..={max}")]
    ExponentOutOfRange { t: u64, max: u64 },
    #[error("function table line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// The monomial `x ↦ c·x^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub t: u64,
    pub c: FieldElement,
}

/// A function `F_{2^n} → F_{2^n}` stored as its table of values.
#[derive(Clone, Debug)]
pub struct FuncTable {
    ctx: Arc<FieldCtx>,
    values: Vec<FieldElement>,
    monomial: Option<Monomial>,
}

impl FuncTable {
    /// Validates the length and that every value is reduced.
    pub fn new(ctx: Arc<FieldCtx>, values: Vec<FieldElement>) -> Result<Self, PlanarError> {
        if values.len() != ctx.size() {
            return Err(PlanarError::WrongLength {
                expected: ctx.size(),
                got: values.len(),
            });
        }
        for v in &values {
            ctx.elem(v.bits())?;
        }
        Ok(FuncTable {
            ctx,
            values,
            monomial: None,
        })
    }

    /// Attaches a monomial descriptor after checking every table entry.
    pub fn with_descriptor(
        ctx: Arc<FieldCtx>,
        values: Vec<FieldElement>,
        m: Monomial,
    ) -> Result<Self, PlanarError> {
        let mut f = FuncTable::new(ctx, values)?;
        for x in f.ctx.elements() {
            if f.values[x.bits() as usize] != monomial_value(&f.ctx, m, x) {
                return Err(PlanarError::DescriptorMismatch { x: x.bits() });
            }
        }
        f.monomial = Some(m);
        Ok(f)
    }

    /// The table of `c·x^t` (with `0^t = 0` for `t ≥ 1`).
    pub fn monomial(ctx: Arc<FieldCtx>, t: u64, c: FieldElement) -> Self {
        let m = Monomial { t, c };
        let values = ctx.elements().map(|x| monomial_value(&ctx, m, x)).collect();
        FuncTable {
            ctx,
            values,
            monomial: Some(m),
        }
    }

    pub fn zero(ctx: Arc<FieldCtx>) -> Self {
        let values = vec![FieldElement::ZERO; ctx.size()];
        FuncTable {
            ctx,
            values,
            monomial: None,
        }
    }

    pub fn from_fn(ctx: Arc<FieldCtx>, f: impl Fn(FieldElement) -> FieldElement) -> Self {
        let values = ctx.elements().map(f).collect();
        FuncTable {
            ctx,
            values,
            monomial: None,
        }
    }

    /// A uniformly random table.
    pub fn random<R: Rng + ?Sized>(ctx: Arc<FieldCtx>, rng: &mut R) -> Self {
        let size = ctx.size() as u32;
        let values = (0..size)
            .map(|_| FieldElement::from_bits(rng.gen_range(0..size)))
            .collect();
        FuncTable {
            ctx,
            values,
            monomial: None,
        }
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn descriptor(&self) -> Option<Monomial> {
        self.monomial
    }

    #[inline]
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.values[x.bits() as usize]
    }

    /// Short description for reports: `"t,0x<c>"` for monomials, otherwise `"table"`.
    pub fn describe(&self) -> String {
        match self.monomial {
            Some(m) => format!("{},{}", m.t, m.c),
            None => "table".to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "planar2 n={} modulus=0x{:x}\n",
            self.ctx.degree(),
            self.ctx.modulus()
        );
        for v in &self.values {
            let _ = writeln!(s, "{:x}", v.bits());
        }
        s
    }

    /// Parses the text format written by [`FuncTable::to_text`].
    pub fn parse(text: &str) -> Result<Self, PlanarError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(PlanarError::Parse {
            line: 1,
            reason: "empty input".into(),
        })?;
        let bad_header = |reason: &str| PlanarError::Parse {
            line: 1,
            reason: reason.to_string(),
        };
        let mut parts = header.split_whitespace();
        if parts.next() != Some("planar2") {
            return Err(bad_header("header must start with \"planar2\""));
        }
        let mut n = None;
        let mut modulus = None;
        for p in parts {
            if let Some(v) = p.strip_prefix("n=") {
                n = v.parse::<u32>().ok();
            } else if let Some(v) = p.strip_prefix("modulus=") {
                modulus = v
                    .strip_prefix("0x")
                    .and_then(|h| u32::from_str_radix(h, 16).ok());
            }
        }
        let n = n.ok_or_else(|| bad_header("missing or invalid n="))?;
        let modulus = modulus.ok_or_else(|| bad_header("missing or invalid modulus=0x…"))?;
        let ctx = Arc::new(FieldCtx::with_modulus(n, modulus)?);
        let mut values = Vec::with_capacity(ctx.size());
        for (i, line) in lines {
            let l = line.trim();
            let h = l.strip_prefix("0x").unwrap_or(l);
            let bits = u32::from_str_radix(h, 16).map_err(|_| PlanarError::Parse {
                line: i + 1,
                reason: format!("not a hex value: {l:?}"),
            })?;
            let v = ctx.elem(bits).map_err(|e| PlanarError::Parse {
                line: i + 1,
                reason: e.to_string(),
            })?;
            values.push(v);
        }
        FuncTable::new(ctx, values)
    }
}

fn monomial_value(ctx: &FieldCtx, m: Monomial, x: FieldElement) -> FieldElement {
    if x.is_zero() && m.t > 0 {
        FieldElement::ZERO
    } else {
        ctx.mul(m.c, ctx.pow(x, m.t))
    }
}

/// A colliding pair of the delta map for one `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub epsilon: FieldElement,
    pub x1: FieldElement,
    pub x2: FieldElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlanarityReport {
    pub planar: bool,
    pub witnesses: Vec<Witness>,
}

/// The table of `x ↦ f(x+ε) + f(x) + εx`.
pub fn delta_map(f: &FuncTable, eps: FieldElement) -> Result<Vec<FieldElement>, PlanarError> {
    if eps.is_zero() {
        return Err(PlanarError::ZeroEpsilon);
    }
    let ctx = &f.ctx;
    Ok(ctx
        .elements()
        .map(|x| {
            let d = ctx.add(f.eval(ctx.add(x, eps)), f.eval(x));
            ctx.add(d, ctx.mul(eps, x))
        })
        .collect())
}

fn first_collision(values: &[FieldElement]) -> Option<(u32, u32)> {
    let mut seen = vec![u32::MAX; values.len()];
    for (x, v) in values.iter().enumerate() {
        let slot = &mut seen[v.bits() as usize];
        if *slot != u32::MAX {
            return Some((*slot, x as u32));
        }
        *slot = x as u32;
    }
    None
}

/// Full planarity report with one colliding pair for every failing `ε`.
pub fn is_planar(f: &FuncTable) -> PlanarityReport {
    let witnesses: Vec<Witness> = f
        .ctx
        .elements()
        .skip(1)
        .filter_map(|eps| {
            let map = delta_map(f, eps).expect("nonzero epsilon");
            first_collision(&map).map(|(a, b)| Witness {
                epsilon: eps,
                x1: FieldElement::from_bits(a),
                x2: FieldElement::from_bits(b),
            })
        })
        .collect();
    PlanarityReport {
        planar: witnesses.is_empty(),
        witnesses,
    }
}

/// Reusable scratch for repeated permutation tests of one field size.
struct PermScratch {
    stamp: Vec<u32>,
    round: u32,
}

impl PermScratch {
    fn new(size: usize) -> Self {
        PermScratch {
            stamp: vec![0; size],
            round: 0,
        }
    }

    fn is_perm(&mut self, image: impl Iterator<Item = u32>) -> bool {
        self.round += 1;
        if self.round == u32::MAX {
            self.stamp.fill(0);
            self.round = 1;
        }
        for v in image {
            let s = &mut self.stamp[v as usize];
            if *s == self.round {
                return false;
            }
            *s = self.round;
        }
        true
    }
}

fn planar_on(values: &[FieldElement], ctx: &FieldCtx, eps: &[FieldElement], scratch: &mut PermScratch) -> bool {
    eps.iter().all(|&e| {
        scratch.is_perm(ctx.elements().map(|x| {
            let d = values[ctx.add(x, e).bits() as usize].bits() ^ values[x.bits() as usize].bits();
            d ^ ctx.mul(e, x).bits()
        }))
    })
}

/// Planarity with early exit at the first failing `ε`.
pub fn is_planar_fast(f: &FuncTable) -> bool {
    let eps: Vec<FieldElement> = f.ctx.elements().skip(1).collect();
    planar_on(&f.values, &f.ctx, &eps, &mut PermScratch::new(f.ctx.size()))
}

/// Whether `x ↦ f(x+ε) + f(x)` is 2-to-1 for every `ε ≠ 0`.
pub fn is_apn(f: &FuncTable) -> bool {
    let ctx = &f.ctx;
    let mut count = vec![0u32; ctx.size()];
    ctx.elements().skip(1).all(|eps| {
        count.fill(0);
        for x in ctx.elements() {
            count[(f.eval(ctx.add(x, eps)).bits() ^ f.eval(x).bits()) as usize] += 1;
        }
        count.iter().all(|&c| c == 0 || c == 2)
    })
}

/// Planarity in the odd-characteristic sense: `x ↦ f(x+ε) − f(x)` bijective
/// for every `ε ≠ 0`. Never holds over a binary field since `x` and `x+ε`
/// share an image.
pub fn is_planar_classical(f: &FuncTable) -> bool {
    let ctx = &f.ctx;
    let mut scratch = PermScratch::new(ctx.size());
    ctx.elements().skip(1).all(|eps| {
        scratch.is_perm(
            ctx.elements()
                .map(|x| f.eval(ctx.add(x, eps)).bits() ^ f.eval(x).bits()),
        )
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    /// Tests only `epsilons` nonzero shifts drawn with a seeded generator.
    /// Results are necessary conditions, not proofs of planarity.
    Sampled { epsilons: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Restrict the search to one exponent.
    pub t: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Exhaustive,
            t: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialHit {
    pub t: u64,
    /// Planar coefficients in generator-power order `α^0, α^1, …`.
    pub cs: Vec<FieldElement>,
    /// Generator exponents of `cs`.
    pub c_log: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: u32,
    pub exhaustive: bool,
    pub hits: Vec<MonomialHit>,
}

impl SearchResult {
    pub fn get(&self, t: u64) -> Option<&MonomialHit> {
        self.hits.iter().find(|h| h.t == t)
    }

    pub fn contains(&self, t: u64, c: FieldElement) -> bool {
        self.get(t).is_some_and(|h| h.cs.contains(&c))
    }
}

/// For each exponent `1 ≤ t ≤ 2^n − 2`, the coefficients `c` making `c·x^t`
/// planar. Exponents without planar coefficients are omitted.
pub fn search_planar_monomials(ctx: &Arc<FieldCtx>, opts: &SearchOptions) -> Result<SearchResult, PlanarError> {
    let n = ctx.degree();
    let t_max = (ctx.size() as u64).saturating_sub(2);
    let exhaustive = opts.mode == SearchMode::Exhaustive;
    if exhaustive && n > MAX_EXHAUSTIVE_SEARCH_DEGREE {
        return Err(PlanarError::SearchTooLarge(n));
    }
    let ts: Vec<u64> = match opts.t {
        Some(t) if t == 0 || t > t_max => {
            return Err(PlanarError::ExponentOutOfRange { t, max: t_max })
        }
        Some(t) => vec![t],
        None => (1..=t_max).collect(),
    };
    let mut eps: Vec<FieldElement> = ctx.elements().skip(1).collect();
    if let SearchMode::Sampled { epsilons, seed } = opts.mode {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        eps.shuffle(&mut rng);
        eps.truncate(epsilons.max(1));
    }
    let coeffs: Vec<FieldElement> = (0..ctx.group_order())
        .map(|i| ctx.pow(ctx.alpha(), i as u64))
        .collect();

    let mut hits: Vec<MonomialHit> = ts
        .par_iter()
        .map_init(
            || PermScratch::new(ctx.size()),
            |scratch, &t| {
                let powers: Vec<FieldElement> = ctx
                    .elements()
                    .map(|x| monomial_value(ctx, Monomial { t, c: FieldElement::ONE }, x))
                    .collect();
                let mut hit = MonomialHit {
                    t,
                    cs: Vec::new(),
                    c_log: Vec::new(),
                };
                let mut values = vec![FieldElement::ZERO; ctx.size()];
                for (i, &c) in coeffs.iter().enumerate() {
                    for (v, &p) in values.iter_mut().zip(&powers) {
                        *v = ctx.mul(c, p);
                    }
                    if planar_on(&values, ctx, &eps, scratch) {
                        hit.cs.push(c);
                        hit.c_log.push(i as u32);
                    }
                }
                hit
            },
        )
        .filter(|h| !h.cs.is_empty())
        .collect();
    hits.sort_by_key(|h| h.t);
    Ok(SearchResult {
        n,
        exhaustive,
        hits,
    })
}

/// `A_n = { ε^{2−t} / c : ε ≠ 0 }`, ascending by bit pattern.
pub fn a_set(ctx: &FieldCtx, t: u64, c: FieldElement) -> Result<Vec<FieldElement>, PlanarError> {
    if c.is_zero() {
        return Err(PlanarError::ZeroCoefficient);
    }
    let order = ctx.group_order() as i128;
    let e = (2 - t as i128).rem_euclid(order) as u64;
    let c_inv = ctx.inv(c)?;
    let mut out: Vec<FieldElement> = ctx
        .elements()
        .skip(1)
        .map(|eps| ctx.mul(ctx.pow(eps, e), c_inv))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `gcd(t − 2, 2^n − 1)` with `t − 2` read modulo `2^n − 1`.
pub fn gcd_t_minus_2(n: u32, t: u64) -> u64 {
    let m = (1u64 << n) - 1;
    let r = (t as i128 - 2).rem_euclid(m as i128) as u64;
    gcd(r, m)
}

/// When `gcd(t − 2, 2^n − 1) = 1` and `t` is not a power of two, checks by
/// exhaustive search over `c` that no `c·x^t` is planar. Otherwise vacuously true.
pub fn coprime_filter_check(ctx: &Arc<FieldCtx>, t: u64) -> bool {
    if t.is_power_of_two() || gcd_t_minus_2(ctx.degree(), t) != 1 {
        return true;
    }
    let mut scratch = PermScratch::new(ctx.size());
    let eps: Vec<FieldElement> = ctx.elements().skip(1).collect();
    ctx.elements().skip(1).all(|c| {
        let f = FuncTable::monomial(ctx.clone(), t, c);
        !planar_on(&f.values, ctx, &eps, &mut scratch)
    })
}

/// Which known family, if any, an exponent belongs to at degree `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentClass {
    /// `t = 2^k`.
    PowerOfTwo,
    /// `t = 2^{n/2} + 1`, `n` even.
    HalfPlusOne,
    /// `t = 2^{n/3}(2^{n/3} + 1)`, `n` divisible by 6.
    ThirdFamily,
    Unexplained,
}

pub fn classify_exponent(n: u32, t: u64) -> ExponentClass {
    if t.is_power_of_two() {
        ExponentClass::PowerOfTwo
    } else if n % 2 == 0 && t == (1u64 << (n / 2)) + 1 {
        ExponentClass::HalfPlusOne
    } else if n % 6 == 0 && t == (1u64 << (n / 3)) * ((1u64 << (n / 3)) + 1) {
        ExponentClass::ThirdFamily
    } else {
        ExponentClass::Unexplained
    }
}

/// For even `n`, the exponent `2^{n/2} + 1` together with the coefficients
/// `c ∈ F_{2^{n/2}}^*` of trace zero over `F_2`.
pub fn half_plus_one_coefficients(ctx: &FieldCtx) -> Option<(u64, Vec<FieldElement>)> {
    let n = ctx.degree();
    if n % 2 != 0 {
        return None;
    }
    let k = n / 2;
    let cs = ctx
        .subfield_elements(k)
        .ok()?
        .into_iter()
        .filter(|&c| !c.is_zero() && ctx.trace_abs(c, k) == Ok(0))
        .collect();
    Some(((1u64 << k) + 1, cs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(n).unwrap())
    }

    #[test]
    fn delta_map_of_zero_is_scaling() {
        let k = field(3);
        let f = FuncTable::zero(k.clone());
        let d = delta_map(&f, FieldElement::ONE).unwrap();
        assert_eq!(d, k.elements().collect::<Vec<_>>());
        assert_eq!(delta_map(&f, FieldElement::ZERO), Err(PlanarError::ZeroEpsilon));
    }

    #[test]
    fn cube_on_f4() {
        let k = field(2);
        let f = FuncTable::monomial(k.clone(), 3, FieldElement::ONE);
        let w = k.alpha();
        let d = delta_map(&f, w).unwrap();
        let w1 = k.add(w, FieldElement::ONE);
        assert_eq!(d[0], d[w1.bits() as usize]);
        let r = is_planar(&f);
        assert!(!r.planar);
        assert!(r.witnesses.iter().any(|x| x.epsilon == w));
        assert!(!is_planar_fast(&f));
    }

    #[test]
    fn known_planar_examples() {
        let k = field(4);
        assert!(is_planar(&FuncTable::monomial(k.clone(), 5, FieldElement::ONE)).planar);
        assert!(is_planar(&FuncTable::monomial(k.clone(), 2, k.alpha())).planar);
        assert!(is_planar(&FuncTable::zero(k)).planar);
    }

    #[test]
    fn apn_examples() {
        let k = field(4);
        assert!(is_apn(&FuncTable::monomial(k.clone(), 3, FieldElement::ONE)));
        assert!(!is_apn(&FuncTable::monomial(k.clone(), 1, FieldElement::ONE)));
        assert!(!is_apn(&FuncTable::monomial(k, 5, FieldElement::ONE)));
    }

    #[test]
    fn descriptor_is_checked() {
        let k = field(3);
        let f = FuncTable::monomial(k.clone(), 3, k.alpha());
        let ok = FuncTable::with_descriptor(k.clone(), f.values().to_vec(), f.descriptor().unwrap());
        assert!(ok.is_ok());
        let bad = FuncTable::with_descriptor(k.clone(), f.values().to_vec(), Monomial { t: 5, c: k.alpha() });
        assert!(matches!(bad, Err(PlanarError::DescriptorMismatch { .. })));
        assert!(matches!(
            FuncTable::new(k.clone(), vec![FieldElement::ZERO; 3]),
            Err(PlanarError::WrongLength { .. })
        ));
        assert!(FuncTable::new(k, vec![FieldElement::from_bits(8); 8]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let k = field(3);
        let f = FuncTable::monomial(k, 6, FieldElement::from_bits(3));
        let g = FuncTable::parse(&f.to_text()).unwrap();
        assert_eq!(g.values(), f.values());
        assert!(FuncTable::parse("planar2 n=3 modulus=0xb\n1\n").is_err());
        assert!(FuncTable::parse("other n=3 modulus=0xb\n").is_err());
    }

    #[test]
    fn a_set_examples() {
        let k = field(2);
        assert_eq!(a_set(&k, 3, FieldElement::ONE).unwrap().len(), 3);
        let k4 = field(4);
        let c = k4.alpha();
        assert_eq!(a_set(&k4, 2, c).unwrap(), vec![k4.inv(c).unwrap()]);
        assert_eq!(a_set(&k4, 3, FieldElement::ZERO), Err(PlanarError::ZeroCoefficient));
    }

    #[test]
    fn a_set_cardinality() {
        for n in 1..=6 {
            let k = field(n);
            let m = (1u64 << n) - 1;
            for t in 1..=(1u64 << n).saturating_sub(2) {
                let got = a_set(&k, t, FieldElement::ONE).unwrap().len() as u64;
                assert_eq!(got, m / gcd_t_minus_2(n, t), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn exponent_classes() {
        assert_eq!(classify_exponent(4, 8), ExponentClass::PowerOfTwo);
        assert_eq!(classify_exponent(4, 5), ExponentClass::HalfPlusOne);
        assert_eq!(classify_exponent(6, 20), ExponentClass::ThirdFamily);
        assert_eq!(classify_exponent(6, 9), ExponentClass::HalfPlusOne);
        assert_eq!(classify_exponent(5, 5), ExponentClass::Unexplained);
    }

    #[test]
    fn coprime_filter_examples() {
        assert!(coprime_filter_check(&field(4), 3));
        assert!(coprime_filter_check(&field(4), 4));
        assert!(coprime_filter_check(&field(5), 7));
    }

    #[test]
    fn sampled_search_is_superset_and_labeled() {
        let k = field(4);
        let full = search_planar_monomials(&k, &SearchOptions::default()).unwrap();
        assert!(full.exhaustive);
        let opts = SearchOptions {
            mode: SearchMode::Sampled { epsilons: 3, seed: 7 },
            t: None,
        };
        let sampled = search_planar_monomials(&k, &opts).unwrap();
        assert!(!sampled.exhaustive);
        for h in &full.hits {
            for &c in &h.cs {
                assert!(sampled.contains(h.t, c));
            }
        }
    }

    #[test]
    fn search_guards() {
        let k = field(8);
        assert_eq!(
            search_planar_monomials(&k, &SearchOptions::default()),
            Err(PlanarError::SearchTooLarge(8))
        );
        let k3 = field(3);
        let opts = SearchOptions {
            mode: SearchMode::Exhaustive,
            t: Some(7),
        };
        assert!(matches!(
            search_planar_monomials(&k3, &opts),
            Err(PlanarError::ExponentOutOfRange { .. })
        ));
    }
}
