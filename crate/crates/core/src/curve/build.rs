//! The curves `F_{t,a}`, `H_{t,a}`, `G_{t,a}` and their numerators.

use std::sync::Arc;

use super::poly::{BivarPoly, HomogPoly3, SparsePoly};
use super::CurveError;
use crate::gf2::{binomial_parity, FieldCtx, FieldElement};

/// Largest exponent accepted by the curve constructions.
pub const MAX_EXPONENT: u64 = 1 << 16;

/// `t = 2^k·ℓ + 1` with `ℓ` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExponentShape {
    pub t: u64,
    pub k: u32,
    pub l: u64,
}

pub fn decompose_exponent(t: u64) -> Result<ExponentShape, CurveError> {
    if t < 3 || t % 2 == 0 {
        return Err(CurveError::BadExponent(t));
    }
    let k = (t - 1).trailing_zeros();
    Ok(ExponentShape {
        t,
        k,
        l: (t - 1) >> k,
    })
}

fn check_t(t: u64) -> Result<(), CurveError> {
    if t == 0 || t > MAX_EXPONENT {
        Err(CurveError::ExponentTooLarge(t))
    } else {
        Ok(())
    }
}

/// `F̃_{t,a} = (X+1)^t + (Y+1)^t + X^t + Y^t + a(X+Y)`, expanded with Lucas parities.
pub fn build_numerator_f(ctx: &Arc<FieldCtx>, t: u64, a: FieldElement) -> Result<BivarPoly, CurveError> {
    check_t(t)?;
    let mut p = BivarPoly::zero(ctx.clone());
    for j in 0..t {
        if binomial_parity(t, j) == 1 {
            p.add_term([j as u32, 0], FieldElement::ONE);
            p.add_term([0, j as u32], FieldElement::ONE);
        }
    }
    p.add_term([1, 0], a);
    p.add_term([0, 1], a);
    Ok(p)
}

fn x_plus_y(ctx: &Arc<FieldCtx>) -> BivarPoly {
    BivarPoly::var(ctx.clone(), 0).add(&BivarPoly::var(ctx.clone(), 1))
}

/// `F_{t,a} = F̃_{t,a} / (X+Y)`, of degree at most `t − 2`.
pub fn build_f(ctx: &Arc<FieldCtx>, t: u64, a: FieldElement) -> Result<BivarPoly, CurveError> {
    build_numerator_f(ctx, t, a)?.divide_exact(&x_plus_y(ctx))
}

/// `H̃_{t,a} = (X+Z)^t + (Y+Z)^t + X^t + Y^t + a(X+Y)Z^{t−1}`.
pub fn build_numerator_h(ctx: &Arc<FieldCtx>, t: u64, a: FieldElement) -> Result<HomogPoly3, CurveError> {
    check_t(t)?;
    let t32 = t as u32;
    let mut p = SparsePoly::<3>::zero(ctx.clone());
    for j in 0..t {
        if binomial_parity(t, j) == 1 {
            let j = j as u32;
            p.add_term([j, 0, t32 - j], FieldElement::ONE);
            p.add_term([0, j, t32 - j], FieldElement::ONE);
        }
    }
    p.add_term([1, 0, t32 - 1], a);
    p.add_term([0, 1, t32 - 1], a);
    HomogPoly3::new(p)
}

/// `H_{t,a} = H̃_{t,a} / (Z^{2^j}(X+Y))` where `2^j` is the exact power of 2 dividing `t`.
pub fn build_h(ctx: &Arc<FieldCtx>, t: u64, a: FieldElement) -> Result<HomogPoly3, CurveError> {
    if t.is_power_of_two() {
        return Err(CurveError::PowerOfTwoExponent(t));
    }
    let num = build_numerator_h(ctx, t, a)?;
    let zpow = 1u32 << t.trailing_zeros();
    let mut den = SparsePoly::<3>::var(ctx.clone(), 0).add(&SparsePoly::<3>::var(ctx.clone(), 1));
    den = den.mul(&SparsePoly::<3>::monomial(ctx.clone(), [0, 0, zpow], FieldElement::ONE));
    let h = HomogPoly3::new(num.poly().divide_exact(&den)?)?;
    debug_assert_eq!(h.degree() as u64, t - 1 - zpow as u64);
    Ok(h)
}

/// `G_{t,a}(X, Z) = H_{t,a}(X, 1, Z)`.
pub fn build_g(ctx: &Arc<FieldCtx>, t: u64, a: FieldElement) -> Result<BivarPoly, CurveError> {
    Ok(build_h(ctx, t, a)?.dehomogenize(1))
}

/// `G̃_{t,a}(X, Z) = H̃_{t,a}(X, 1, Z)`; for odd `t` this equals `Z(X+1)·G_{t,a}`.
pub fn build_numerator_g(ctx: &Arc<FieldCtx>, t: u64, a: FieldElement) -> Result<BivarPoly, CurveError> {
    Ok(build_numerator_h(ctx, t, a)?.dehomogenize(1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(n).unwrap())
    }

    fn numerator_by_powers(k: &Arc<FieldCtx>, t: u64, a: FieldElement) -> BivarPoly {
        let x = BivarPoly::var(k.clone(), 0);
        let y = BivarPoly::var(k.clone(), 1);
        let one = BivarPoly::one(k.clone());
        x.add(&one)
            .pow(t)
            .add(&y.add(&one).pow(t))
            .add(&x.pow(t))
            .add(&y.pow(t))
            .add(&x.add(&y).scale(a))
    }

    #[test]
    fn numerator_matches_power_expansion() {
        let k = ctx(6);
        for t in [3u64, 5, 6, 11, 13, 20] {
            let a = k.pow(k.alpha(), t);
            assert_eq!(build_numerator_f(&k, t, a).unwrap(), numerator_by_powers(&k, t, a), "t={t}");
        }
    }

    #[test]
    fn small_exponent_shapes() {
        let k = ctx(4);
        let a = k.alpha();
        let a1 = k.add(a, FieldElement::ONE);
        let s = x_plus_y(&k);
        let f5 = build_f(&k, 5, a).unwrap();
        assert_eq!(f5, s.pow(3).add(&BivarPoly::constant(k.clone(), a1)));
        let f3 = build_f(&k, 3, a).unwrap();
        assert_eq!(f3, s.add(&BivarPoly::constant(k.clone(), a1)));
        for t in 3..40u64 {
            if let Ok(f) = build_f(&k, t, a) {
                assert!(f.total_degree().unwrap_or(0) as u64 <= t - 2);
            }
        }
    }

    #[test]
    fn diagonal_vanishes_at_a_one() {
        let k = ctx(4);
        for t in [3u64, 5, 7, 13] {
            let f = build_numerator_f(&k, t, FieldElement::ONE).unwrap();
            for x in k.elements() {
                assert!(f.eval(&[x, x]).is_zero());
            }
        }
    }

    #[test]
    fn h_dehomogenizes_to_f() {
        let k = ctx(6);
        let a = k.pow(k.alpha(), 5);
        for t in [5u64, 6, 13, 20] {
            let h = build_h(&k, t, a).unwrap();
            assert_eq!(h.dehomogenize(2), build_f(&k, t, a).unwrap(), "t={t}");
            assert!(h.is_symmetric_xy());
            assert_eq!(h.degree() as u64, t - 1 - (1u64 << t.trailing_zeros()));
        }
        let h6 = build_h(&k, 6, a).unwrap();
        let x = SparsePoly::<3>::var(k.clone(), 0);
        let y = SparsePoly::<3>::var(k.clone(), 1);
        let z = SparsePoly::<3>::var(k.clone(), 2);
        let s = x.add(&y);
        let expected = s.pow(3).add(&s.mul(&z.pow(2))).add(&z.pow(3).scale(a));
        assert_eq!(h6.poly(), &expected);
        assert!(matches!(build_h(&k, 8, a), Err(CurveError::PowerOfTwoExponent(8))));
    }

    #[test]
    fn numerator_g_factors_for_odd_t() {
        let k = ctx(6);
        let a = k.pow(k.alpha(), 9);
        for t in [5u64, 11, 13] {
            let g = build_g(&k, t, a).unwrap();
            let gt = build_numerator_g(&k, t, a).unwrap();
            let x = BivarPoly::var(k.clone(), 0);
            let z = BivarPoly::var(k.clone(), 1);
            let den = z.mul(&x.add(&BivarPoly::one(k.clone())));
            assert_eq!(gt, den.mul(&g));
        }
    }

    #[test]
    fn exponent_shapes() {
        assert_eq!(decompose_exponent(13).unwrap(), ExponentShape { t: 13, k: 2, l: 3 });
        assert_eq!(decompose_exponent(11).unwrap(), ExponentShape { t: 11, k: 1, l: 5 });
        assert_eq!(decompose_exponent(5).unwrap(), ExponentShape { t: 5, k: 2, l: 1 });
        assert!(decompose_exponent(6).is_err());
        assert!(decompose_exponent(1).is_err());
    }
}
