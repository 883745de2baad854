//! Coefficient sets `A_n ⊇ B_n`, off-diagonal point counts, and the linear
//! factor of `F_{t,a}` for `t = 2^k + 1`.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::build::{build_f, build_numerator_f, decompose_exponent};
use super::poly::BivarPoly;
use super::singular::{singular_points, CurveFields, SingularReport};
use super::CurveError;
use crate::gf2::{FieldCtx, FieldElement};
use crate::planar::{a_set, is_planar_fast, FuncTable};

#[derive(Clone, Debug, Serialize)]
pub struct BSetEntry {
    pub a: FieldElement,
    pub member: bool,
    /// Affine singular points found for this `a`.
    pub affine_points: usize,
    pub search_complete: bool,
    /// Set when the singular-point analysis refused this `a`.
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BSetReport {
    pub t: u64,
    pub n: u32,
    pub c: FieldElement,
    /// Degree of the search field.
    pub ext: u32,
    pub members: Vec<FieldElement>,
    pub entries: Vec<BSetEntry>,
    /// Every analysis was complete over the algebraic closure.
    pub complete_all: bool,
    #[serde(skip)]
    pub reports: Vec<SingularReport>,
}

/// `B_n`: the `a ∈ A_n` such that every affine singular point of `F̃_{t,a}`
/// satisfies `(u+1)^{t−2^k} ≠ u^{t−2^k}`, `(u+1)^{t−2^k−1} ≠ u^{t−2^k−1}`
/// and `(v+1)^{t−2^k−1} ≠ v^{t−2^k−1}`. Singular points are searched in
/// `F_{2^M}`; `complete_all` says whether that search saw all of them.
pub fn b_set(small: &Arc<FieldCtx>, t: u64, c: FieldElement, ext: Option<u32>) -> Result<BSetReport, CurveError> {
    let fields = CurveFields::new(small.clone(), t, ext)?;
    let an = a_set(small, t, c)?;
    let results: Vec<(FieldElement, Result<SingularReport, CurveError>)> =
        an.par_iter().map(|&a| (a, singular_points(&fields, a))).collect();

    let mut entries = Vec::with_capacity(results.len());
    let mut reports = Vec::new();
    let mut members = Vec::new();
    for (a, r) in results {
        match r {
            Ok(rep) => {
                let member = rep.in_b_set();
                if member {
                    members.push(a);
                }
                entries.push(BSetEntry {
                    a,
                    member,
                    affine_points: rep.affine.len(),
                    search_complete: rep.search_complete(),
                    error: None,
                });
                reports.push(rep);
            }
            Err(e @ CurveError::Degenerate) => entries.push(BSetEntry {
                a,
                member: false,
                affine_points: 0,
                search_complete: true,
                error: Some(e.to_string()),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(BSetReport {
        t,
        n: small.degree(),
        c,
        ext: fields.big.degree(),
        complete_all: entries.iter().all(|e| e.search_complete),
        members,
        entries,
        reports,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OffdiagCount {
    pub a: FieldElement,
    /// Ordered pairs `(u, v)`, `u ≠ v`, over `F_{2^n}` with `F̃_{t,a}(u, v) = 0`.
    pub count: u64,
}

/// Splits `F̃_{t,a}` into `P(X) + P(Y)`; its variables are separated.
fn separated_part(ft: &BivarPoly) -> Vec<(u32, FieldElement)> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (e, &c) in ft.terms() {
        match (e[0], e[1]) {
            (i, 0) => xs.push((i, c)),
            (0, j) => ys.push((j, c)),
            _ => panic!("F̃ has a mixed term"),
        }
    }
    // The constant term is shared; both sides carry the same univariate part.
    let mut xs_nc: Vec<_> = xs.iter().filter(|(i, _)| *i > 0).copied().collect();
    let mut ys_nc: Vec<_> = ys.iter().filter(|(j, _)| *j > 0).copied().collect();
    xs_nc.sort_unstable();
    ys_nc.sort_unstable();
    assert_eq!(xs_nc, ys_nc, "F̃ is not symmetric");
    xs_nc
}

/// Off-diagonal points of `F̃_{t,a}` over `F_{2^n}` for every `a ∈ A_n`,
/// counting collisions of the separated univariate part.
pub fn count_points_offdiag(small: &Arc<FieldCtx>, t: u64, c: FieldElement) -> Result<Vec<OffdiagCount>, CurveError> {
    let an = a_set(small, t, c)?;
    an.par_iter()
        .map(|&a| {
            let ft = build_numerator_f(small, t, a)?;
            let part = separated_part(&ft);
            let mut seen: HashMap<FieldElement, u64> = HashMap::new();
            for x in small.elements() {
                let v = part
                    .iter()
                    .fold(FieldElement::ZERO, |acc, &(e, k)| small.add(acc, small.mul(k, small.pow(x, e as u64))));
                *seen.entry(v).or_default() += 1;
            }
            let count = seen.values().map(|&m| m * (m - 1)).sum();
            Ok(OffdiagCount { a, count })
        })
        .collect()
}

/// The same counts by evaluating `F̃_{t,a}` at every pair; quadratic in the field size.
pub fn count_points_offdiag_by_eval(
    small: &Arc<FieldCtx>,
    t: u64,
    c: FieldElement,
) -> Result<Vec<OffdiagCount>, CurveError> {
    let an = a_set(small, t, c)?;
    an.par_iter()
        .map(|&a| {
            let ft = build_numerator_f(small, t, a)?;
            let mut count = 0;
            for x in small.elements() {
                for y in small.elements() {
                    if x != y && ft.eval(&[x, y]).is_zero() {
                        count += 1;
                    }
                }
            }
            Ok(OffdiagCount { a, count })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Crosscheck {
    pub t: u64,
    pub c: FieldElement,
    pub planar: bool,
    /// Every `a ∈ A_n` gives a curve without off-diagonal rational points.
    pub curves_empty: bool,
    pub counts: Vec<OffdiagCount>,
}

impl Crosscheck {
    pub fn agrees(&self) -> bool {
        self.planar == self.curves_empty
    }
}

/// `c·x^t` is planar exactly when no `F̃_{t,a}`, `a ∈ A_n`, has a rational
/// point off the diagonal.
pub fn planar_curve_crosscheck(small: &Arc<FieldCtx>, t: u64, c: FieldElement) -> Result<Crosscheck, CurveError> {
    let planar = is_planar_fast(&FuncTable::monomial(small.clone(), t, c));
    let counts = count_points_offdiag(small, t, c)?;
    Ok(Crosscheck {
        t,
        c,
        planar,
        curves_empty: counts.iter().all(|x| x.count == 0),
        counts,
    })
}

#[derive(Clone, Debug)]
pub struct SpecialFactor {
    pub t: u64,
    pub epsilon: FieldElement,
    pub a: FieldElement,
    pub b: FieldElement,
    /// `F_{t,a} / (X + Y + b)`.
    pub quotient: BivarPoly,
}

/// For `t = 2^k + 1`: the first `ε` in generator order whose `a = ε^{2−t}/c`
/// differs from 1 and makes `a + 1 = b^{2^k−1}` solvable, with the factor
/// `X + Y + b` of `F_{t,a} = (X+Y)^{2^k−1} + a + 1` divided out.
pub fn special_factor_l1(small: &Arc<FieldCtx>, k: u32, c: FieldElement) -> Result<SpecialFactor, CurveError> {
    if k == 0 || k >= 16 {
        return Err(CurveError::BadExponent((1u64 << k.min(63)) + 1));
    }
    let t = (1u64 << k) + 1;
    decompose_exponent(t)?;
    let inv_c = small.inv(c)?;
    let q = (1u64 << k) - 1;
    let order = small.group_order() as u64;
    let two_minus_t = (order - (t - 2) % order) % order;
    let mut eps = FieldElement::ONE;
    for _ in 0..order {
        let a = small.mul(small.pow(eps, two_minus_t), inv_c);
        if a != FieldElement::ONE {
            let target = small.add(a, FieldElement::ONE);
            if let Some(b) = small.elements().skip(1).find(|&b| small.pow(b, q) == target) {
                let f = build_f(small, t, a)?;
                let x = BivarPoly::var(small.clone(), 0);
                let y = BivarPoly::var(small.clone(), 1);
                let s = x.add(&y);
                let expected = s.pow(q).add(&BivarPoly::constant(small.clone(), target));
                assert_eq!(f, expected, "F_{{t,a}} differs from (X+Y)^(2^k-1) + a + 1");
                let d = s.add(&BivarPoly::constant(small.clone(), b));
                let quotient = f.divide_exact(&d)?;
                assert_eq!(quotient.mul(&d), f);
                return Ok(SpecialFactor {
                    t,
                    epsilon: eps,
                    a,
                    b,
                    quotient,
                });
            }
        }
        eps = small.mul(eps, small.alpha());
    }
    Err(CurveError::NoSolution { k, n: small.degree() })
}
