use std::sync::Arc;

use proptest::prelude::*;

use planar2::curve::{
    build_f, build_h, build_numerator_f, multiplicity_at, singular_points, BivarPoly, CurveFields, UniPoly,
};
use planar2::gf2::{FieldCtx, FieldElement};

fn ctx(n: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(n).unwrap())
}

fn poly(k: &Arc<FieldCtx>, terms: &[(u32, u32, u32)]) -> BivarPoly {
    let mask = (1u32 << k.degree()) - 1;
    BivarPoly::from_terms(
        k.clone(),
        terms.iter().map(|&(i, j, c)| ([i, j], FieldElement::from_bits(c & mask))),
    )
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
    proptest::collection::vec((0u32..6, 0u32..6, any::<u32>()), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn shift_round_trip_and_evaluation(p in terms(), u in any::<u32>(), v in any::<u32>(), x in any::<u32>(), y in any::<u32>()) {
        let k = ctx(6);
        let p = poly(&k, &p);
        let e = |b: u32| FieldElement::from_bits(b & 63);
        let s = [e(u), e(v)];
        let q = p.shift(&s);
        prop_assert_eq!(q.shift(&s), p.clone());
        let pt = [e(x), e(y)];
        prop_assert_eq!(q.eval(&pt), p.eval(&[k.add(pt[0], s[0]), k.add(pt[1], s[1])]));
        prop_assert_eq!(multiplicity_at(&p, s) == Some(0), !p.eval(&s).is_zero());
    }

    #[test]
    fn exact_division_round_trip(a in terms(), b in terms()) {
        let k = ctx(5);
        let (a, b) = (poly(&k, &a), poly(&k, &b));
        prop_assume!(!b.is_zero());
        let prod = a.mul(&b);
        prop_assert_eq!(prod.divide_exact(&b).unwrap(), a);
    }

    #[test]
    fn roots_agree_with_scan(coeffs in proptest::collection::vec(any::<u32>(), 1..9)) {
        let k = ctx(8);
        let p = UniPoly::new(k.clone(), coeffs.iter().map(|&c| FieldElement::from_bits(c & 255)).collect());
        prop_assume!(!p.is_zero());
        prop_assert_eq!(p.roots(), p.roots_by_scan());
    }

    #[test]
    fn curve_is_symmetric_and_divides(t in 3u64..40, a in 1u32..64) {
        let k = ctx(6);
        let a = FieldElement::from_bits(a);
        let f = build_f(&k, t, a).unwrap();
        prop_assert_eq!(f.swap_vars(), f.clone());
        let s = BivarPoly::var(k.clone(), 0).add(&BivarPoly::var(k.clone(), 1));
        prop_assert_eq!(f.mul(&s), build_numerator_f(&k, t, a).unwrap());
        if !t.is_power_of_two() {
            prop_assert_eq!(build_h(&k, t, a).unwrap().dehomogenize(2), f);
        }
    }
}

/// Every reported singular point is a zero of the numerator and its
/// partials, for a spread of exponents and parameters.
#[test]
fn singular_points_are_singular() {
    let k = ctx(4);
    for t in [7u64, 9, 11, 13, 19, 21] {
        let fields = CurveFields::new(k.clone(), t, None).unwrap();
        for a in k.elements().skip(2) {
            let r = singular_points(&fields, a).unwrap();
            assert!(r.pairing_ok, "t={t} a={a}");
            assert!(r.infinity.iter().all(|p| p.partials_vanish), "t={t} a={a}");
            for p in &r.affine {
                assert!(p.verified && p.first_order_condition && p.recurrence_ok, "t={t} a={a} {p:?}");
            }
            assert!(r.infinity.iter().all(|p| p.recurrence_ok), "t={t} a={a}");
        }
    }
}
