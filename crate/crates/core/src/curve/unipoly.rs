//! Dense univariate polynomials over a binary field, with root finding and
//! gcds of binary forms.

use std::sync::Arc;

use crate::gf2::{FieldCtx, FieldElement};

use super::poly::BivarPoly;

/// Coefficients lowest first, without trailing zeros.
#[derive(Clone, Debug)]
pub struct UniPoly {
    ctx: Arc<FieldCtx>,
    c: Vec<FieldElement>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx) && self.c == other.c
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    pub fn new(ctx: Arc<FieldCtx>, mut c: Vec<FieldElement>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { ctx, c }
    }

    pub fn zero(ctx: Arc<FieldCtx>) -> Self {
        UniPoly { ctx, c: Vec::new() }
    }

    pub fn constant(ctx: Arc<FieldCtx>, a: FieldElement) -> Self {
        UniPoly::new(ctx, vec![a])
    }

    /// `x^e`.
    pub fn x_pow(ctx: Arc<FieldCtx>, e: usize) -> Self {
        let mut c = vec![FieldElement::ZERO; e + 1];
        c[e] = FieldElement::ONE;
        UniPoly { ctx, c }
    }

    /// `x + r`.
    pub fn linear(ctx: Arc<FieldCtx>, r: FieldElement) -> Self {
        UniPoly::new(ctx, vec![r, FieldElement::ONE])
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> FieldElement {
        self.c.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn eval(&self, x: FieldElement) -> FieldElement {
        self.c
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &a| self.ctx.add(self.ctx.mul(acc, x), a))
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(FieldElement::ZERO);
                let b = o.c.get(i).copied().unwrap_or(FieldElement::ZERO);
                self.ctx.add(a, b)
            })
            .collect();
        UniPoly::new(self.ctx.clone(), c)
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(self.ctx.clone());
        }
        let mut c = vec![FieldElement::ZERO; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = self.ctx.add(c[i + j], self.ctx.mul(a, b));
            }
        }
        UniPoly::new(self.ctx.clone(), c)
    }

    pub fn scale(&self, s: FieldElement) -> UniPoly {
        UniPoly::new(self.ctx.clone(), self.c.iter().map(|&a| self.ctx.mul(a, s)).collect())
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = self.ctx.inv(d.lead()).expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let mut q = vec![FieldElement::ZERO; self.c.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let coef = self.ctx.mul(r[top], inv);
            if !coef.is_zero() {
                let shift = top - dd;
                q[shift] = coef;
                for (i, &b) in d.c.iter().enumerate() {
                    r[shift + i] = self.ctx.add(r[shift + i], self.ctx.mul(coef, b));
                }
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (UniPoly::new(self.ctx.clone(), q), UniPoly::new(self.ctx.clone(), r))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.ctx.inv(self.lead()).expect("nonzero"))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| if i % 2 == 1 { a } else { FieldElement::ZERO })
            .collect();
        UniPoly::new(self.ctx.clone(), c)
    }

    pub fn mulmod(&self, o: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(o).rem(m)
    }

    /// `self^{2^e} mod m`.
    pub fn square_iter_mod(&self, e: u32, m: &UniPoly) -> UniPoly {
        let mut r = self.rem(m);
        for _ in 0..e {
            r = r.mulmod(&r, m);
        }
        r
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Distinct roots lying in the coefficient field, ascending.
    pub fn roots(&self) -> Vec<FieldElement> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let m = self.ctx.degree();
        let x = UniPoly::x_pow(self.ctx.clone(), 1);
        let frob = x.square_iter_mod(m, self);
        let split = self.gcd(&frob.add(&x));
        let mut out = Vec::new();
        split_roots(&split, &mut out);
        out.sort_unstable();
        out
    }

    /// Roots by evaluating at every field element; an independent route for tests.
    pub fn roots_by_scan(&self) -> Vec<FieldElement> {
        self.ctx.elements().filter(|&x| self.eval(x).is_zero()).collect()
    }

    /// Divides out each given root as often as it occurs; returns what is left.
    pub fn strip_roots(&self, roots: &[FieldElement]) -> UniPoly {
        let mut p = self.clone();
        for &r in roots {
            let lin = UniPoly::linear(self.ctx.clone(), r);
            loop {
                let (q, rem) = p.divrem(&lin);
                if !rem.is_zero() || p.degree().unwrap_or(0) == 0 {
                    break;
                }
                p = q;
            }
        }
        p
    }
}

/// Splits a product of distinct linear factors with the trace map
/// `Tr(βx) = Σ (βx)^{2^i}`.
fn split_roots(g: &UniPoly, out: &mut Vec<FieldElement>) {
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            let g = g.monic();
            out.push(g.c[0]);
        }
        Some(_) => {
            let ctx = g.ctx.clone();
            let m = ctx.degree();
            let mut beta = FieldElement::ONE;
            for _ in 0..ctx.group_order() {
                let bx = UniPoly::new(ctx.clone(), vec![FieldElement::ZERO, beta]);
                let mut term = bx.rem(g);
                let mut tr = term.clone();
                for _ in 1..m {
                    term = term.mulmod(&term, g);
                    tr = tr.add(&term);
                }
                let h = g.gcd(&tr);
                let dh = h.degree().unwrap_or(0);
                if dh > 0 && Some(dh) < g.degree() {
                    split_roots(&h, out);
                    split_roots(&g.divrem(&h).0, out);
                    return;
                }
                beta = ctx.mul(beta, ctx.alpha());
            }
            unreachable!("trace splitting failed on a split squarefree polynomial");
        }
    }
}

/// A binary form `Σ c_i X^i W^{d−i}` of degree `d` in two variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u32,
    /// `coeffs[i]` multiplies `X^i W^{d−i}`.
    pub coeffs: Vec<FieldElement>,
}

impl BinaryForm {
    /// From a homogeneous bivariate polynomial; the first variable plays `X`.
    pub fn from_bivar(p: &BivarPoly, degree: u32) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; degree as usize + 1];
        for (e, &c) in p.terms() {
            assert_eq!(e[0] + e[1], degree, "form is not homogeneous of degree {degree}");
            coeffs[e[0] as usize] = c;
        }
        BinaryForm { degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Power of the second variable dividing the form.
    fn w_valuation(&self) -> u32 {
        // The coefficient of X^d W^0 is last; W divides iff it is zero, and so on.
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count() as u32
    }

    /// The polynomial in `x = X/W`.
    fn dehomogenize(&self, ctx: &Arc<FieldCtx>) -> UniPoly {
        UniPoly::new(ctx.clone(), self.coeffs.clone())
    }

    /// Squarefree over the algebraic closure: `W² ∤ f` and `f(x, 1)` squarefree.
    pub fn is_squarefree(&self, ctx: &Arc<FieldCtx>) -> bool {
        if self.is_zero() {
            return false;
        }
        self.w_valuation() <= 1 && {
            let f = self.dehomogenize(ctx);
            f.degree() == Some(0) || f.is_squarefree()
        }
    }
}

/// `gcd` of two binary forms, as `(power of X, power of W, degree of the rest)`:
/// the gcd is `X^a W^b · h` with `h` coprime to `X` and `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormGcdShape {
    pub x_power: u32,
    pub w_power: u32,
    pub other_degree: u32,
}

impl FormGcdShape {
    pub fn is_one(&self) -> bool {
        self.x_power == 0 && self.w_power == 0 && self.other_degree == 0
    }

    /// The gcd involves only the second variable.
    pub fn only_second(&self) -> bool {
        self.x_power == 0 && self.other_degree == 0
    }

    /// The gcd involves only the first variable.
    pub fn only_first(&self) -> bool {
        self.w_power == 0 && self.other_degree == 0
    }
}

/// Gcd of binary forms by dehomogenizing: `W` factors are tracked through the
/// valuation, the rest through a univariate gcd. `gcd(f, 0) = f`.
pub fn form_gcd(f: &BinaryForm, g: &BinaryForm, ctx: &Arc<FieldCtx>) -> FormGcdShape {
    let shape_of = |h: &BinaryForm| -> FormGcdShape {
        let w = h.w_valuation();
        let u = h.dehomogenize(ctx);
        let xp = u.c.iter().take_while(|c| c.is_zero()).count() as u32;
        let d = u.degree().unwrap_or(0) as u32;
        FormGcdShape {
            x_power: xp,
            w_power: w,
            other_degree: d - xp,
        }
    };
    if g.is_zero() {
        return shape_of(f);
    }
    if f.is_zero() {
        return shape_of(g);
    }
    let w = f.w_valuation().min(g.w_valuation());
    let u = f.dehomogenize(ctx).gcd(&g.dehomogenize(ctx));
    let xp = u.c.iter().take_while(|c| c.is_zero()).count() as u32;
    let d = u.degree().unwrap_or(0) as u32;
    FormGcdShape {
        x_power: xp,
        w_power: w,
        other_degree: d - xp,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(n).unwrap())
    }

    #[test]
    fn divrem_and_gcd() {
        let k = ctx(4);
        let a = k.alpha();
        let p = UniPoly::linear(k.clone(), a).mul(&UniPoly::linear(k.clone(), FieldElement::ONE));
        let q = UniPoly::linear(k.clone(), a).mul(&UniPoly::linear(k.clone(), k.square(a)));
        assert_eq!(p.gcd(&q), UniPoly::linear(k.clone(), a));
        let (quo, rem) = p.divrem(&UniPoly::linear(k.clone(), a));
        assert!(rem.is_zero());
        assert_eq!(quo, UniPoly::linear(k, FieldElement::ONE));
    }

    #[test]
    fn roots_agree_with_scan() {
        let k = ctx(8);
        let mut p = UniPoly::constant(k.clone(), FieldElement::ONE);
        for i in [0u64, 3, 17, 100, 200] {
            p = p.mul(&UniPoly::linear(k.clone(), k.pow(k.alpha(), i)));
        }
        // x^2 + x + β is irreducible when Tr(β) = 1 and contributes no roots.
        let beta = k.elements().find(|&b| k.trace_abs(b, 8).unwrap() == 1).unwrap();
        let irr = UniPoly::new(k.clone(), vec![beta, FieldElement::ONE, FieldElement::ONE]);
        let p = p.mul(&irr);
        assert_eq!(p.roots(), p.roots_by_scan());
        assert_eq!(p.roots().len(), 5);
    }

    #[test]
    fn roots_of_unity() {
        let k = ctx(12);
        let mut p = UniPoly::x_pow(k.clone(), 5);
        p = p.add(&UniPoly::constant(k.clone(), FieldElement::ONE));
        assert_eq!(p.roots().len(), 5);
        let k6 = ctx(6);
        let q = UniPoly::x_pow(k6.clone(), 5).add(&UniPoly::constant(k6, FieldElement::ONE));
        assert_eq!(q.roots(), vec![FieldElement::ONE]);
    }

    #[test]
    fn strip_repeated_roots() {
        let k = ctx(3);
        let l = UniPoly::linear(k.clone(), k.alpha());
        let p = l.mul(&l).mul(&l);
        assert_eq!(p.roots(), vec![k.alpha()]);
        assert_eq!(p.strip_roots(&[k.alpha()]).degree(), Some(0));
    }

    #[test]
    fn form_gcds() {
        let k = ctx(3);
        let one = FieldElement::ONE;
        let zero = FieldElement::ZERO;
        // (X + W)^2 = X^2 + W^2
        let sq = BinaryForm { degree: 2, coeffs: vec![one, zero, one] };
        assert!(!sq.is_squarefree(&k));
        let xw = BinaryForm { degree: 2, coeffs: vec![zero, one, zero] };
        assert!(xw.is_squarefree(&k));
        let w2 = BinaryForm { degree: 2, coeffs: vec![one, zero, zero] };
        assert!(!w2.is_squarefree(&k));
        let g = form_gcd(&xw, &w2, &k);
        assert_eq!(g, FormGcdShape { x_power: 0, w_power: 1, other_degree: 0 });
        assert!(g.only_second());
        let zero_form = BinaryForm { degree: 1, coeffs: vec![zero, zero] };
        assert_eq!(form_gcd(&sq, &zero_form, &k).other_degree, 2);
    }
}
