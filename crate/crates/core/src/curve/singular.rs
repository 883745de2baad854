//! Singular points of `H_{t,a}` for odd `t = 2^k·ℓ + 1`, with multiplicities,
//! tangent cones and the checks on their homogeneous parts.
//!
//! Points at infinity are handled in the chart `Y = 1` through `G_{t,a}(X, Z)`,
//! affine points through `F_{t,a}(X, Y)`. Coordinates are searched in an
//! extension `F_{2^M}` of the coefficient field `F_{2^n}`; roots come from
//! splitting univariate polynomials, so the report can state whether every
//! candidate over the algebraic closure was seen.

use std::sync::Arc;

use serde::Serialize;

use super::build::{build_f, build_g, build_numerator_f, build_numerator_g, decompose_exponent, ExponentShape};
use super::embed::SubfieldEmbedding;
use super::poly::{BivarPoly, HomogPoly3, SparsePoly};
use super::unipoly::{form_gcd, BinaryForm, UniPoly};
use super::CurveError;
use crate::gf2::{binomial_parity, FieldCtx, FieldElement, MAX_DEGREE};

/// Multiplicity of `p` at `pt`: the lowest degree of a nonzero homogeneous
/// part of `p(X + u, Y + v)`. Zero when `pt` is off the curve; `None` for `p = 0`.
pub fn multiplicity_at(p: &BivarPoly, pt: [FieldElement; 2]) -> Option<u32> {
    p.shift(&pt).min_degree()
}

/// The tangent cone: the lowest nonzero homogeneous part of `p` at `pt`.
pub fn tangent_cone_at(p: &BivarPoly, pt: [FieldElement; 2]) -> BivarPoly {
    let s = p.shift(&pt);
    match s.min_degree() {
        Some(m) => s.homogeneous_part(m),
        None => s,
    }
}

/// `p` shifted to `pt` and split into homogeneous parts `0..=deg`.
fn parts_at(p: &BivarPoly, pt: [FieldElement; 2]) -> Vec<BivarPoly> {
    let s = p.shift(&pt);
    let d = s.total_degree().unwrap_or(0);
    (0..=d).map(|i| s.homogeneous_part(i)).collect()
}

fn part(parts: &[BivarPoly], i: i64, ctx: &Arc<FieldCtx>) -> BivarPoly {
    if i < 0 {
        return BivarPoly::zero(ctx.clone());
    }
    parts
        .get(i as usize)
        .cloned()
        .unwrap_or_else(|| BivarPoly::zero(ctx.clone()))
}

/// Which gcd condition a cone check enforces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConeClaim {
    /// `gcd(f, ∂f/∂X) = gcd(f, ∂f/∂Y) = 1` (affine points).
    Coprime,
    /// `gcd(f, ∂f/∂X) ∈ F[Z]` and `gcd(f, ∂f/∂Z) ∈ F[X]` (points at infinity).
    PureVariables,
}

/// Checks a binary form of degree `degree` for the given gcd condition.
pub fn cone_squarefree_check(form: &BivarPoly, degree: u32, claim: ConeClaim) -> bool {
    if form.is_zero() {
        return false;
    }
    let ctx = form.ctx();
    let f = BinaryForm::from_bivar(form, degree);
    let dx = BinaryForm::from_bivar(&form.partial(0), degree - 1);
    let dy = BinaryForm::from_bivar(&form.partial(1), degree - 1);
    let gx = form_gcd(&f, &dx, ctx);
    let gy = form_gcd(&f, &dy, ctx);
    match claim {
        ConeClaim::Coprime => gx.is_one() && gy.is_one(),
        ConeClaim::PureVariables => gx.only_second() && gy.only_first(),
    }
}

/// Which intersection-number evaluation the local data supports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionHint {
    /// Squarefree tangent cone: `I_P(A,B) = m_P(A)·m_P(B)`.
    ProductOfMultiplicities,
    /// Tangent cone coprime to the next homogeneous part: `I_P(A,B) = 0`.
    CoprimeNextPart,
    /// Cone `L^m` with `L` dividing the next part exactly once: `I_P(A,B) ∈ {0, m}`.
    SimpleTangentLine,
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InfinityType {
    A,
    B,
    C,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinityPoint {
    /// The point `(u : 1 : 0)`.
    pub u: FieldElement,
    pub m_g: u32,
    pub m_gt: u32,
    pub point_type: InfinityType,
    /// All three partials of `H̃` vanish at the point.
    pub partials_vanish: bool,
    pub cone_squarefree: bool,
    /// `∂G̃_{2^k+1}/∂X = (u^{ℓ−1} Z)^{2^k}`, plus `a·Z^{2^k}` when `ℓ = 1`.
    pub derivative_identity: bool,
    /// `G̃_i = XZ·G_{i−2} + Z(u+1)·G_{i−1}` for every `i`.
    pub recurrence_ok: bool,
    pub hint: IntersectionHint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffinePoint {
    pub u: FieldElement,
    pub v: FieldElement,
    pub diag: bool,
    /// Multiplicity of `F_{t,a}`.
    pub m_curve: u32,
    /// Multiplicity of `F̃_{t,a}`.
    pub m_num: u32,
    /// `F̃`, `∂F̃/∂X` and `∂F̃/∂Y` all vanish at the point.
    pub verified: bool,
    /// `(u+1)^{t−1} + u^{t−1} = a`.
    pub first_order_condition: bool,
    /// The three inequations defining the set `B_n`.
    pub b_conditions: bool,
    pub cone_squarefree: bool,
    /// `F̃_i = (X+Y)·F_{i−1} + (u+v)·F_i` for every `i`.
    pub recurrence_ok: bool,
    pub hint: IntersectionHint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularReport {
    pub t: u64,
    pub k: u32,
    pub l: u64,
    /// The curve parameter, in `F_{2^n}`.
    pub a: FieldElement,
    pub n: u32,
    /// Degree of the search field `F_{2^M}`; point coordinates live there.
    pub ext: u32,
    pub infinity: Vec<InfinityPoint>,
    pub affine: Vec<AffinePoint>,
    pub infinity_max: u64,
    pub affine_max: u64,
    /// All `ℓ` roots of `u^ℓ = 1` lie in `F_{2^M}`.
    pub infinity_complete: bool,
    /// `(u+1)^ℓ + u^ℓ + a^{2^{−k}}` splits over `F_{2^M}`.
    pub affine_complete: bool,
    /// Solutions of the first two affine conditions are closed under `u ↦ u+1`.
    pub pairing_ok: bool,
}

impl SingularReport {
    pub fn search_complete(&self) -> bool {
        self.infinity_complete && self.affine_complete
    }

    pub fn offdiag_count(&self) -> usize {
        self.affine.iter().filter(|p| !p.diag).count()
    }

    pub fn bounds_ok(&self) -> bool {
        self.infinity.len() as u64 <= self.infinity_max
            && self.offdiag_count() as u64 <= self.affine_max
            && self.infinity.iter().all(|p| p.partials_vanish)
    }

    /// Multiplicities at affine points passing the `B_n` inequations: `2^k`
    /// for `F̃`, and `2^k − 1` (diagonal) or `2^k` (off-diagonal) for `F`.
    pub fn affine_multiplicities_ok(&self) -> bool {
        let q = 1u32 << self.k;
        self.affine
            .iter()
            .filter(|p| p.b_conditions)
            .all(|p| p.m_num == q && p.m_curve == if p.diag { q - 1 } else { q })
    }

    /// Every affine point passes the `B_n` inequations, i.e. `a ∈ B_n` as far
    /// as the search field can tell.
    pub fn in_b_set(&self) -> bool {
        self.affine.iter().all(|p| p.b_conditions)
    }

    /// Every per-point check passed.
    pub fn all_checks_ok(&self) -> bool {
        self.bounds_ok()
            && verify_table4(self).ok
            && self.affine_multiplicities_ok()
            && self.pairing_ok
            && self.infinity.iter().all(|p| p.cone_squarefree && p.recurrence_ok && p.derivative_identity)
            && self.affine.iter().all(|p| {
                p.verified
                    && p.first_order_condition
                    && p.recurrence_ok
                    && (p.cone_squarefree || !p.b_conditions)
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table4Check {
    pub ok: bool,
    /// Points whose multiplicity pair matches no row, or `u = 1` not in row A.
    pub mismatches: Vec<FieldElement>,
}

/// Checks every point at infinity against the rows
/// A `(1,0)`: `(2^k+1, 2^k−1)`, B: `(2^k+1, 2^k)`, C: `(2^k, 2^k−1)`.
pub fn verify_table4(report: &SingularReport) -> Table4Check {
    let q = 1u32 << report.k;
    let mismatches: Vec<FieldElement> = report
        .infinity
        .iter()
        .filter(|p| {
            let pair = (p.m_gt, p.m_g);
            let ok = match p.point_type {
                InfinityType::A => p.u == FieldElement::ONE && pair == (q + 1, q - 1),
                InfinityType::B => p.u != FieldElement::ONE && pair == (q + 1, q),
                InfinityType::C => p.u != FieldElement::ONE && pair == (q, q - 1),
                InfinityType::Unclassified => false,
            };
            !ok
        })
        .map(|p| p.u)
        .collect();
    Table4Check {
        ok: mismatches.is_empty(),
        mismatches,
    }
}

/// Default search degree `M`: among multiples `n·L ≤ 24`, the one maximizing
/// the number of `d ∈ 1..ℓ` dividing `L` (the degrees over `F_{2^n}` of
/// factors of the degree-`(ℓ−1)` affine polynomial) plus one if `F_{2^M}`
/// contains the `ℓ`-th roots of unity; ties go to the smaller `M`.
pub fn default_ext_degree(n: u32, t: u64) -> Result<u32, CurveError> {
    let shape = decompose_exponent(t)?;
    if n == 0 || n > MAX_DEGREE {
        return Err(CurveError::BadExtension { n, m: n });
    }
    let l = shape.l;
    let ord = multiplicative_order_of_two(l);
    let mut best = (0u32, n);
    for mult in 1..=(MAX_DEGREE / n) {
        let m = n * mult;
        let divisors = (1..l.max(2)).filter(|&d| mult as u64 % d == 0).count() as u32;
        let unity = u32::from(ord.is_some_and(|o| m as u64 % o == 0));
        let score = divisors + unity;
        if score > best.0 {
            best = (score, m);
        }
    }
    Ok(best.1)
}

fn multiplicative_order_of_two(l: u64) -> Option<u64> {
    if l == 1 {
        return Some(1);
    }
    if l % 2 == 0 {
        return None;
    }
    let mut x = 2 % l;
    let mut k = 1;
    while x != 1 {
        x = x * 2 % l;
        k += 1;
    }
    Some(k)
}

/// Coefficient and search fields for one curve family.
pub struct CurveFields {
    pub shape: ExponentShape,
    pub small: Arc<FieldCtx>,
    pub big: Arc<FieldCtx>,
    pub emb: SubfieldEmbedding,
}

impl CurveFields {
    pub fn new(small: Arc<FieldCtx>, t: u64, ext: Option<u32>) -> Result<Self, CurveError> {
        let shape = decompose_exponent(t)?;
        let n = small.degree();
        let m = match ext {
            Some(m) => m,
            None => default_ext_degree(n, t)?,
        };
        if m == 0 || m > MAX_DEGREE || m % n != 0 {
            return Err(CurveError::BadExtension { n, m });
        }
        let (big, emb) = if m == n {
            (small.clone(), SubfieldEmbedding::identity(small.clone()))
        } else {
            let big = Arc::new(FieldCtx::new(m)?);
            let emb = SubfieldEmbedding::new(small.clone(), big.clone())?;
            (big, emb)
        };
        Ok(CurveFields { shape, small, big, emb })
    }

    /// `a^{2^{−k}}` computed in `F_{2^n}` as `a^{2^{(n−k) mod n}}`.
    pub fn a_root(&self, a: FieldElement) -> FieldElement {
        let n = self.small.degree();
        let e = (n - self.shape.k % n) % n;
        self.small.frobenius(a, e)
    }

    /// `(x+1)^ℓ + x^ℓ + c` over the search field.
    pub fn affine_poly(&self, c_big: FieldElement) -> UniPoly {
        let l = self.shape.l;
        let mut coeffs: Vec<FieldElement> = (0..l)
            .map(|i| {
                if binomial_parity(l, i) == 1 {
                    FieldElement::ONE
                } else {
                    FieldElement::ZERO
                }
            })
            .collect();
        coeffs[0] = self.big.add(coeffs[0], c_big);
        UniPoly::new(self.big.clone(), coeffs)
    }
}

fn pow_big(ctx: &FieldCtx, x: FieldElement, e: u64) -> FieldElement {
    ctx.pow(x, e)
}

/// Singular points of `H_{t,a}` (as singular points of its numerator) with
/// coordinates in `F_{2^M}`.
pub fn singular_points(fields: &CurveFields, a: FieldElement) -> Result<SingularReport, CurveError> {
    let ExponentShape { t, k, l } = fields.shape;
    if a.is_zero() {
        return Err(CurveError::ZeroParameter);
    }
    let c = fields.a_root(a);
    debug_assert_eq!(fields.small.frobenius(c, k % fields.small.degree()), a);
    if l == 1 && c == FieldElement::ONE {
        return Err(CurveError::Degenerate);
    }
    let big = &fields.big;
    let emb = &fields.emb;
    let a_big = emb.map(a);

    let infinity = infinity_points(fields, a_big)?;
    let infinity_complete = infinity.1;
    let infinity = infinity.0;

    let q = fields.affine_poly(emb.map(c));
    let roots = q.roots();
    let affine_complete = q.strip_roots(&roots).degree().unwrap_or(0) == 0;
    let pairing_ok = roots
        .iter()
        .all(|&u| roots.binary_search(&big.add(u, FieldElement::ONE)).is_ok());

    let ft = build_numerator_f(big, t, a_big)?;
    let f = build_f(big, t, a_big)?;
    let mut affine = Vec::new();
    for &u in &roots {
        for &v in &roots {
            let third = pow_big(big, big.add(u, FieldElement::ONE), l)
                == pow_big(big, big.add(v, FieldElement::ONE), l);
            if third {
                affine.push(affine_point(fields, &ft, &f, a_big, u, v));
            }
        }
    }

    Ok(SingularReport {
        t,
        k,
        l,
        a,
        n: fields.small.degree(),
        ext: big.degree(),
        infinity,
        affine,
        infinity_max: l,
        affine_max: (l - 1) * (l.saturating_sub(2)) / 2,
        infinity_complete,
        affine_complete,
        pairing_ok,
    })
}

fn infinity_points(fields: &CurveFields, a_big: FieldElement) -> Result<(Vec<InfinityPoint>, bool), CurveError> {
    let ExponentShape { t, k, l } = fields.shape;
    let big = &fields.big;
    let q = 1u32 << k;
    let unity = UniPoly::x_pow(big.clone(), l as usize).add(&UniPoly::constant(big.clone(), FieldElement::ONE));
    let us = unity.roots();
    let complete = us.len() as u64 == l;

    let gt = build_numerator_g(big, t, a_big)?;
    let g = build_g(big, t, a_big)?;
    let ht = super::build::build_numerator_h(big, t, a_big)?;
    let partials: Vec<SparsePoly<3>> = (0..3).map(|i| ht.poly().partial(i)).collect();

    let mut out = Vec::new();
    for &u in &us {
        let pt = [u, FieldElement::ZERO];
        let gt_parts = parts_at(&gt, pt);
        let g_parts = parts_at(&g, pt);
        let m_gt = gt.shift(&pt).min_degree().unwrap_or(u32::MAX);
        let m_g = g.shift(&pt).min_degree().unwrap_or(u32::MAX);
        let point_type = if u == FieldElement::ONE {
            InfinityType::A
        } else if m_gt == q + 1 {
            InfinityType::B
        } else if m_gt == q {
            InfinityType::C
        } else {
            InfinityType::Unclassified
        };

        let partials_vanish = partials
            .iter()
            .all(|p| p.eval(&[u, FieldElement::ONE, FieldElement::ZERO]).is_zero());

        let x = BivarPoly::var(big.clone(), 0);
        let z = BivarPoly::var(big.clone(), 1);
        let xz = x.mul(&z);
        let zu = z.scale(big.add(u, FieldElement::ONE));
        let recurrence_ok = (0..gt_parts.len().max(g_parts.len() + 2)).all(|i| {
            let i = i as i64;
            let lhs = part(&gt_parts, i, big);
            let rhs = xz.mul(&part(&g_parts, i - 2, big)).add(&zu.mul(&part(&g_parts, i - 1, big)));
            lhs == rhs
        });

        let cone = part(&gt_parts, (q + 1) as i64, big);
        let cone_squarefree = cone_squarefree_check(&cone, q + 1, ConeClaim::PureVariables);
        let mut expected_dx = z.scale(big.pow(u, l - 1)).pow(q as u64);
        if l == 1 {
            // t = 2^k + 1: the term a(X+1)Z^{t−1} has degree 2^k + 1 and adds a·Z^{2^k}.
            expected_dx = expected_dx.add(&z.pow(q as u64).scale(a_big));
        }
        let derivative_identity = cone.partial(0) == expected_dx;

        let hint = match point_type {
            InfinityType::A | InfinityType::B if cone_squarefree => IntersectionHint::ProductOfMultiplicities,
            InfinityType::C => {
                let next = part(&g_parts, q as i64, big);
                if next.divide_exact(&z).is_err() {
                    IntersectionHint::CoprimeNextPart
                } else {
                    IntersectionHint::Unresolved
                }
            }
            _ => IntersectionHint::Unresolved,
        };

        out.push(InfinityPoint {
            u,
            m_g,
            m_gt,
            point_type,
            partials_vanish,
            cone_squarefree,
            derivative_identity,
            recurrence_ok,
            hint,
        });
    }
    Ok((out, complete))
}

/// `x^{2^{−k}}` by repeated square roots.
fn frobenius_inverse(ctx: &FieldCtx, x: FieldElement, k: u32) -> FieldElement {
    (0..k).fold(x, |y, _| ctx.sqrt(y))
}

fn affine_point(
    fields: &CurveFields,
    ft: &BivarPoly,
    f: &BivarPoly,
    a_big: FieldElement,
    u: FieldElement,
    v: FieldElement,
) -> AffinePoint {
    let ExponentShape { t, k, .. } = fields.shape;
    let big = &fields.big;
    let q = 1u32 << k;
    let one = FieldElement::ONE;
    let pt = [u, v];
    let diag = u == v;

    let verified = ft.eval(&pt).is_zero() && ft.partial(0).eval(&pt).is_zero() && ft.partial(1).eval(&pt).is_zero();
    let g = |x: FieldElement, e: u64| big.add(big.pow(big.add(x, one), e), big.pow(x, e));
    let first_order_condition = g(u, t - 1) == a_big;
    let tq = t - q as u64;
    let b_conditions = !g(u, tq).is_zero() && !g(u, tq - 1).is_zero() && !g(v, tq - 1).is_zero();

    let ft_parts = parts_at(ft, pt);
    let f_parts = parts_at(f, pt);
    let m_num = ft.shift(&pt).min_degree().unwrap_or(u32::MAX);
    let m_curve = f.shift(&pt).min_degree().unwrap_or(u32::MAX);

    let x = BivarPoly::var(big.clone(), 0);
    let y = BivarPoly::var(big.clone(), 1);
    let s = x.add(&y);
    let uv = big.add(u, v);
    let recurrence_ok = (0..ft_parts.len().max(f_parts.len() + 1)).all(|i| {
        let i = i as i64;
        let lhs = part(&ft_parts, i, big);
        let rhs = s.mul(&part(&f_parts, i - 1, big)).add(&part(&f_parts, i, big).scale(uv));
        lhs == rhs
    });

    let cone = part(&ft_parts, (q + 1) as i64, big);
    let cone_squarefree = cone_squarefree_check(&cone, q + 1, ConeClaim::Coprime);

    let hint = if diag {
        let next = part(&f_parts, q as i64, big);
        if m_curve == q - 1 && !next.is_zero() && next.divide_exact(&s).is_err() {
            IntersectionHint::CoprimeNextPart
        } else {
            IntersectionHint::Unresolved
        }
    } else {
        let lead = part(&f_parts, q as i64, big);
        let a1 = frobenius_inverse(big, lead.coeff([q, 0]), k);
        let a2 = frobenius_inverse(big, lead.coeff([0, q]), k);
        let line = x.scale(a1).add(&y.scale(a2));
        let next = part(&f_parts, (q + 1) as i64, big);
        if m_curve != q || line.is_zero() || line.pow(q as u64) != lead {
            IntersectionHint::Unresolved
        } else {
            match next.divide_exact(&line) {
                Err(_) => IntersectionHint::CoprimeNextPart,
                Ok(rest) if rest.divide_exact(&line).is_err() => IntersectionHint::SimpleTangentLine,
                Ok(_) => IntersectionHint::Unresolved,
            }
        }
    };

    AffinePoint {
        u,
        v,
        diag,
        m_curve,
        m_num,
        verified,
        first_order_condition,
        b_conditions,
        cone_squarefree,
        recurrence_ok,
        hint,
    }
}

/// Serializable form of a singular report.
#[derive(Clone, Debug, Serialize)]
pub struct SingularReportJson {
    pub t: u64,
    pub k: u32,
    pub l: u64,
    pub a: FieldElement,
    pub field: FieldJson,
    pub infinity: Vec<InfinityJson>,
    pub affine: Vec<AffineJson>,
    pub bounds: BoundsJson,
    pub search_complete_up_to: u32,
    pub search_complete: bool,
    pub table4_ok: bool,
    pub all_checks_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldJson {
    pub n: u32,
    #[serde(rename = "M")]
    pub m: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct InfinityJson {
    pub u: FieldElement,
    #[serde(rename = "mG")]
    pub m_g: u32,
    #[serde(rename = "mGt")]
    pub m_gt: u32,
    #[serde(rename = "type")]
    pub point_type: InfinityType,
    pub cone_squarefree: bool,
    pub hint: IntersectionHint,
}

#[derive(Clone, Debug, Serialize)]
pub struct AffineJson {
    pub u: FieldElement,
    pub v: FieldElement,
    pub diag: bool,
    pub m_curve: u32,
    pub m_num: u32,
    pub cone_squarefree: bool,
    pub hint: IntersectionHint,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsJson {
    pub infinity_max: u64,
    pub affine_max: u64,
}

impl From<&SingularReport> for SingularReportJson {
    fn from(r: &SingularReport) -> Self {
        SingularReportJson {
            t: r.t,
            k: r.k,
            l: r.l,
            a: r.a,
            field: FieldJson { n: r.n, m: r.ext },
            infinity: r
                .infinity
                .iter()
                .map(|p| InfinityJson {
                    u: p.u,
                    m_g: p.m_g,
                    m_gt: p.m_gt,
                    point_type: p.point_type,
                    cone_squarefree: p.cone_squarefree,
                    hint: p.hint,
                })
                .collect(),
            affine: r
                .affine
                .iter()
                .map(|p| AffineJson {
                    u: p.u,
                    v: p.v,
                    diag: p.diag,
                    m_curve: p.m_curve,
                    m_num: p.m_num,
                    cone_squarefree: p.cone_squarefree,
                    hint: p.hint,
                })
                .collect(),
            bounds: BoundsJson {
                infinity_max: r.infinity_max,
                affine_max: r.affine_max,
            },
            search_complete_up_to: r.ext,
            search_complete: r.search_complete(),
            table4_ok: verify_table4(r).ok,
            all_checks_ok: r.all_checks_ok(),
        }
    }
}

/// `H(X, Y, 1)` for a homogeneous `H`, the affine chart used for `F_{t,a}`.
pub fn affine_chart(h: &HomogPoly3) -> BivarPoly {
    h.dehomogenize(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(n).unwrap())
    }

    #[test]
    fn default_ext_choices() {
        assert_eq!(default_ext_degree(6, 13).unwrap(), 12);
        assert_eq!(default_ext_degree(8, 13).unwrap(), 16);
        assert_eq!(default_ext_degree(6, 11).unwrap(), 24);
        assert!(default_ext_degree(6, 12).is_err());
    }

    #[test]
    fn simple_point_multiplicity() {
        let k = small(4);
        let x = BivarPoly::var(k.clone(), 0);
        let y = BivarPoly::var(k.clone(), 1);
        let p = x.add(&y.pow(3));
        assert_eq!(multiplicity_at(&p, [FieldElement::ZERO; 2]), Some(1));
        assert_eq!(multiplicity_at(&p, [FieldElement::ONE, FieldElement::ZERO]), Some(0));
        let node = x.mul(&y).add(&x.pow(3));
        assert_eq!(multiplicity_at(&node, [FieldElement::ZERO; 2]), Some(2));
        assert_eq!(tangent_cone_at(&node, [FieldElement::ZERO; 2]), x.mul(&y));
    }

    #[test]
    fn repeated_cone_factor_rejected() {
        let k = small(4);
        let x = BivarPoly::var(k.clone(), 0);
        let z = BivarPoly::var(k.clone(), 1);
        let sq = x.add(&z).pow(2);
        assert!(!cone_squarefree_check(&sq, 2, ConeClaim::PureVariables));
        assert!(!cone_squarefree_check(&sq, 2, ConeClaim::Coprime));
        let good = x.pow(3).add(&z.pow(3));
        assert!(cone_squarefree_check(&good, 3, ConeClaim::Coprime));
    }

    #[test]
    fn t13_n6_report() {
        let k = small(6);
        let fields = CurveFields::new(k.clone(), 13, None).unwrap();
        let a = k.pow(k.alpha(), 5);
        let r = singular_points(&fields, a).unwrap();
        assert_eq!((r.k, r.l, r.ext), (2, 3, 12));
        assert!(r.infinity_complete);
        assert_eq!(r.infinity.len(), 3);
        assert!(r.bounds_ok());
        assert!(verify_table4(&r).ok, "{:?}", r.infinity);
        for p in &r.infinity {
            assert_eq!(fields.big.pow(p.u, 3), FieldElement::ONE);
            assert!(p.recurrence_ok && p.cone_squarefree && p.derivative_identity);
        }
        for p in &r.affine {
            assert!(p.verified && p.first_order_condition && p.recurrence_ok);
        }
    }

    #[test]
    fn no_affine_points_when_first_order_condition_fails() {
        let k = small(6);
        let fields = CurveFields::new(k.clone(), 13, Some(6)).unwrap();
        let values: Vec<FieldElement> = k
            .elements()
            .map(|u| k.add(k.pow(k.add(u, FieldElement::ONE), 12), k.pow(u, 12)))
            .collect();
        let a = k.elements().skip(1).find(|a| !values.contains(a)).unwrap();
        let r = singular_points(&fields, a).unwrap();
        assert!(r.affine.is_empty());
    }

    #[test]
    fn search_field_guard() {
        let k = small(6);
        assert!(matches!(CurveFields::new(k.clone(), 13, Some(8)), Err(CurveError::BadExtension { .. })));
        assert!(matches!(CurveFields::new(k, 14, None), Err(CurveError::BadExponent(14))));
    }
}
