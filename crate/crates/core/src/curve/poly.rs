//! Sparse multivariate polynomials over a binary field.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::CurveError;
use crate::gf2::{binomial_parity, FieldCtx, FieldElement};

/// Polynomial in `V` variables; exponent vectors are ordered lexicographically,
/// which is the monomial order used by [`SparsePoly::divide_exact`].
#[derive(Clone)]
pub struct SparsePoly<const V: usize> {
    ctx: Arc<FieldCtx>,
    terms: BTreeMap<[u32; V], FieldElement>,
}

/// Polynomial in `X, Y` (or `X, Z` for the chart at infinity).
pub type BivarPoly = SparsePoly<2>;

impl<const V: usize> PartialEq for SparsePoly<V> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.terms == other.terms
    }
}

impl<const V: usize> Eq for SparsePoly<V> {}

impl<const V: usize> fmt::Debug for SparsePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<const V: usize> fmt::Display for SparsePoly<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["X", "Y", "Z"];
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&x| x == 0);
            if *c != FieldElement::ONE || is_const {
                write!(f, "{c}")?;
            }
            for (v, &x) in e.iter().enumerate() {
                let name = NAMES.get(v).copied().unwrap_or("W");
                match x {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    _ => write!(f, "{name}^{x}")?,
                }
            }
        }
        Ok(())
    }
}

impl<const V: usize> SparsePoly<V> {
    pub fn zero(ctx: Arc<FieldCtx>) -> Self {
        SparsePoly {
            ctx,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: Arc<FieldCtx>, c: FieldElement) -> Self {
        Self::monomial(ctx, [0; V], c)
    }

    pub fn one(ctx: Arc<FieldCtx>) -> Self {
        Self::constant(ctx, FieldElement::ONE)
    }

    pub fn monomial(ctx: Arc<FieldCtx>, exps: [u32; V], c: FieldElement) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(exps, c);
        p
    }

    /// The variable with index `i`.
    pub fn var(ctx: Arc<FieldCtx>, i: usize) -> Self {
        let mut e = [0; V];
        e[i] = 1;
        Self::monomial(ctx, e, FieldElement::ONE)
    }

    pub fn from_terms(ctx: Arc<FieldCtx>, terms: impl IntoIterator<Item = ([u32; V], FieldElement)>) -> Self {
        let mut p = Self::zero(ctx);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<[u32; V], FieldElement> {
        &self.terms
    }

    pub fn coeff(&self, exps: [u32; V]) -> FieldElement {
        self.terms.get(&exps).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c·X^exps` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: [u32; V], c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert(FieldElement::ZERO);
        *entry = self.ctx.add(*entry, c);
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Lowest total degree of a term.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.total_degree() == self.min_degree()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&e, &c) in &o.terms {
            r.add_term(e, c);
        }
        r
    }

    pub fn scale(&self, s: FieldElement) -> Self {
        let mut r = Self::zero(self.ctx.clone());
        for (&e, &c) in &self.terms {
            r.add_term(e, self.ctx.mul(c, s));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.ctx.clone());
        for (e1, &c1) in &self.terms {
            for (e2, &c2) in &o.terms {
                let mut e = [0; V];
                for i in 0..V {
                    e[i] = e1[i] + e2[i];
                }
                r.add_term(e, self.ctx.mul(c1, c2));
            }
        }
        r
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElement; V]) -> FieldElement {
        let ctx = &self.ctx;
        self.terms.iter().fold(FieldElement::ZERO, |acc, (e, &c)| {
            let t = (0..V).fold(c, |t, i| ctx.mul(t, ctx.pow(point[i], e[i] as u64)));
            ctx.add(acc, t)
        })
    }

    /// Formal partial derivative; in characteristic 2 odd exponents survive.
    pub fn partial(&self, var: usize) -> Self {
        let mut r = Self::zero(self.ctx.clone());
        for (&e, &c) in &self.terms {
            if e[var] % 2 == 1 {
                let mut d = e;
                d[var] -= 1;
                r.add_term(d, c);
            }
        }
        r
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.ctx.clone(),
            self.terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(&e, &c)| (e, c)),
        )
    }

    /// Substitutes `X_i ↦ X_i + s_i`.
    pub fn shift(&self, s: &[FieldElement; V]) -> Self {
        let ctx = &self.ctx;
        let mut r = Self::zero(ctx.clone());
        for (e, &c) in &self.terms {
            // Expand Π (X_i + s_i)^{e_i} via Lucas: binom(e_i, j) is odd iff j ⊆ e_i.
            let mut partial: Vec<([u32; V], FieldElement)> = vec![([0; V], c)];
            for i in 0..V {
                let mut next = Vec::new();
                let ei = e[i];
                for (pe, pc) in &partial {
                    let mut j = ei;
                    loop {
                        if binomial_parity(ei as u64, j as u64) == 1 {
                            let coef = ctx.mul(*pc, ctx.pow(s[i], (ei - j) as u64));
                            if !coef.is_zero() {
                                let mut ne = *pe;
                                ne[i] = j;
                                next.push((ne, coef));
                            }
                        }
                        if j == 0 {
                            break;
                        }
                        j = (j - 1) & ei;
                    }
                }
                partial = next;
            }
            for (pe, pc) in partial {
                r.add_term(pe, pc);
            }
        }
        r
    }

    /// Applies `f` to every coefficient (e.g. a field embedding).
    pub fn map_coeffs(&self, ctx: Arc<FieldCtx>, f: impl Fn(FieldElement) -> FieldElement) -> Self {
        Self::from_terms(ctx, self.terms.iter().map(|(&e, &c)| (e, f(c))))
    }

    /// Exact quotient `self / d`; fails if the remainder is nonzero.
    pub fn divide_exact(&self, d: &Self) -> Result<Self, CurveError> {
        let (&lead_e, &lead_c) = d.terms.iter().next_back().ok_or(CurveError::DivisionByZero)?;
        let lead_inv = self.ctx.inv(lead_c).expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut q = Self::zero(self.ctx.clone());
        while let Some((&e, &c)) = rem.terms.iter().next_back() {
            if (0..V).any(|i| e[i] < lead_e[i]) {
                return Err(CurveError::NotExact);
            }
            let mut qe = [0; V];
            for i in 0..V {
                qe[i] = e[i] - lead_e[i];
            }
            let qc = self.ctx.mul(c, lead_inv);
            q.add_term(qe, qc);
            for (de, &dc) in &d.terms {
                let mut te = [0; V];
                for i in 0..V {
                    te[i] = de[i] + qe[i];
                }
                rem.add_term(te, self.ctx.mul(dc, qc));
            }
        }
        debug_assert!(q.mul(d) == *self);
        Ok(q)
    }
}

impl BivarPoly {
    /// Both variables swapped.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.ctx.clone(), self.terms.iter().map(|(e, &c)| ([e[1], e[0]], c)))
    }
}

/// Homogeneous polynomial in `X, Y, Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly3 {
    poly: SparsePoly<3>,
    degree: u32,
}

impl HomogPoly3 {
    pub fn new(poly: SparsePoly<3>) -> Result<Self, CurveError> {
        if !poly.is_homogeneous() {
            return Err(CurveError::NotHomogeneous);
        }
        let degree = poly.total_degree().unwrap_or(0);
        Ok(HomogPoly3 { poly, degree })
    }

    pub fn poly(&self) -> &SparsePoly<3> {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Sets variable `var` to 1, giving a polynomial in the remaining two
    /// variables in their original order.
    pub fn dehomogenize(&self, var: usize) -> BivarPoly {
        BivarPoly::from_terms(
            self.poly.ctx().clone(),
            self.poly.terms().iter().map(|(e, &c)| {
                let rest: Vec<u32> = (0..3).filter(|&i| i != var).map(|i| e[i]).collect();
                ([rest[0], rest[1]], c)
            }),
        )
    }

    /// Whether swapping `X` and `Y` leaves the polynomial unchanged.
    pub fn is_symmetric_xy(&self) -> bool {
        self.poly
            .terms()
            .iter()
            .all(|(e, c)| self.poly.coeff([e[1], e[0], e[2]]) == *c)
    }
}
