use std::sync::Arc;

use proptest::prelude::*;

use planar2::gf2::{FieldCtx, FieldElement, MAX_DEGREE};
use planar2::RingCtx;

fn ctx(n: u32) -> Arc<FieldCtx> {
    Arc::new(FieldCtx::new(n).unwrap())
}

fn elem(n: u32, bits: u32) -> FieldElement {
    FieldElement::from_bits(bits & ((1u32 << n) - 1))
}

/// Shift-and-add product reduced by the modulus, independent of the tables.
fn schoolbook_mul(k: &FieldCtx, a: FieldElement, b: FieldElement) -> FieldElement {
    let n = k.degree();
    let m = k.modulus() as u64;
    let mut acc = 0u64;
    for i in 0..n {
        if (b.bits() >> i) & 1 == 1 {
            acc ^= (a.bits() as u64) << i;
        }
    }
    for i in (n..2 * n).rev() {
        if (acc >> i) & 1 == 1 {
            acc ^= m << (i - n);
        }
    }
    FieldElement::from_bits(acc as u32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(n in 1u32..=MAX_DEGREE, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let k = ctx(n);
        let (a, b, c) = (elem(n, a), elem(n, b), elem(n, c));
        prop_assert_eq!(k.mul(a, b), schoolbook_mul(&k, a, b));
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(k.mul(a, b), c), k.mul(a, k.mul(b, c)));
        if !a.is_zero() {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), FieldElement::ONE);
        }
        prop_assert_eq!(k.square(k.sqrt(a)), a);
        prop_assert_eq!(k.frobenius(a, n), a);
        prop_assert_eq!(k.pow(a, 1u64 << n), a);
    }

    #[test]
    fn trace_is_linear_and_binary(n in 1u32..=16, a in any::<u32>(), b in any::<u32>()) {
        let k = ctx(n);
        let (a, b) = (elem(n, a), elem(n, b));
        let ta = k.trace_abs(a, n).unwrap();
        let tb = k.trace_abs(b, n).unwrap();
        prop_assert!(ta <= 1);
        prop_assert_eq!(k.trace_abs(k.add(a, b), n).unwrap(), ta ^ tb);
        prop_assert_eq!(k.trace_abs(k.square(a), n).unwrap(), ta);
    }

    #[test]
    fn teichmuller_field_is_isomorphic(n in 1u32..=8, a in any::<u32>(), b in any::<u32>()) {
        let r = RingCtx::new(ctx(n)).unwrap();
        let k = r.field().clone();
        let (a, b) = (elem(n, a), elem(n, b));
        let (x, y) = (r.field_to_gamma(a), r.field_to_gamma(b));
        prop_assert!(r.is_teichmuller(x));
        prop_assert_eq!(r.gamma_to_field(r.oplus(x, y).unwrap()).unwrap(), k.add(a, b));
        prop_assert_eq!(r.gamma_to_field(r.mul(x, y)).unwrap(), k.mul(a, b));
        prop_assert_eq!(r.mul(r.teich_sqrt(x).unwrap(), r.teich_sqrt(x).unwrap()), x);
    }

    #[test]
    fn ring_decomposition_and_trace(n in 1u32..=10, i in any::<u64>(), j in any::<u64>()) {
        let r = RingCtx::new(ctx(n)).unwrap();
        let y = planar2::RingElement::from_index(i % r.size());
        let z = planar2::RingElement::from_index(j % r.size());
        let (a, b) = r.decompose(y);
        prop_assert!(r.is_teichmuller(a) && r.is_teichmuller(b));
        prop_assert_eq!(r.add(a, r.double(b)), y);
        prop_assert_eq!(r.trace(y), r.trace_by_frobenius(y));
        prop_assert_eq!(r.trace(r.add(y, z)), (r.trace(y) + r.trace(z)) % 4);
        prop_assert_eq!(r.teich_project(r.teich_project(y)), r.teich_project(y));
    }
}
