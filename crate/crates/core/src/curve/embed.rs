use std::collections::HashMap;
use std::sync::Arc;

use super::CurveError;
use crate::gf2::{FieldCtx, FieldElement};

/// Field embedding `F_{2^n} → F_{2^M}` for `n | M`, sending `α_n` to the
/// first root of the small modulus among the powers of
/// `α_M^{(2^M−1)/(2^n−1)}`.
#[derive(Debug)]
pub struct SubfieldEmbedding {
    small: Arc<FieldCtx>,
    big: Arc<FieldCtx>,
    image: Vec<FieldElement>,
    preimage: HashMap<FieldElement, FieldElement>,
}

impl SubfieldEmbedding {
    pub fn new(small: Arc<FieldCtx>, big: Arc<FieldCtx>) -> Result<Self, CurveError> {
        let (n, m) = (small.degree(), big.degree());
        if m % n != 0 {
            return Err(CurveError::BadExtension { n, m });
        }
        let step = (big.group_order() / small.group_order()) as u64;
        let gen = big.pow(big.alpha(), step);
        let modulus = small.modulus();
        let is_root = |r: FieldElement| {
            let mut acc = FieldElement::ZERO;
            for i in (0..=n).rev() {
                acc = big.mul(acc, r);
                if (modulus >> i) & 1 == 1 {
                    acc = big.add(acc, FieldElement::ONE);
                }
            }
            acc.is_zero()
        };
        let mut r = gen;
        let mut root = None;
        for _ in 0..small.group_order() {
            if is_root(r) {
                root = Some(r);
                break;
            }
            r = big.mul(r, gen);
        }
        let root = root.ok_or(CurveError::BadExtension { n, m })?;
        let basis: Vec<FieldElement> = (0..n).map(|i| big.pow(root, i as u64)).collect();
        let image: Vec<FieldElement> = (0..small.size() as u32)
            .map(|bits| {
                (0..n)
                    .filter(|i| (bits >> i) & 1 == 1)
                    .fold(FieldElement::ZERO, |acc, i| big.add(acc, basis[i as usize]))
            })
            .collect();
        let preimage = image
            .iter()
            .enumerate()
            .map(|(i, &y)| (y, FieldElement::from_bits(i as u32)))
            .collect();
        Ok(SubfieldEmbedding {
            small,
            big,
            image,
            preimage,
        })
    }

    /// The identity embedding of a field into itself.
    pub fn identity(field: Arc<FieldCtx>) -> Self {
        let image: Vec<FieldElement> = field.elements().collect();
        let preimage = image.iter().map(|&y| (y, y)).collect();
        SubfieldEmbedding {
            small: field.clone(),
            big: field,
            image,
            preimage,
        }
    }

    pub fn small(&self) -> &Arc<FieldCtx> {
        &self.small
    }

    pub fn big(&self) -> &Arc<FieldCtx> {
        &self.big
    }

    pub fn map(&self, a: FieldElement) -> FieldElement {
        self.image[a.bits() as usize]
    }

    /// Preimage of an element of the image, `None` outside the subfield.
    pub fn pull(&self, y: FieldElement) -> Option<FieldElement> {
        self.preimage.get(&y).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let small = Arc::new(FieldCtx::new(4).unwrap());
        let big = Arc::new(FieldCtx::new(12).unwrap());
        let e = SubfieldEmbedding::new(small.clone(), big.clone()).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e.map(small.mul(a, b)), big.mul(e.map(a), e.map(b)));
                assert_eq!(e.map(small.add(a, b)), big.add(e.map(a), e.map(b)));
            }
            assert_eq!(e.pull(e.map(a)), Some(a));
            assert!(big.in_subfield(e.map(a), 4).unwrap());
        }
        assert_eq!(e.pull(big.alpha()), None);
    }

    #[test]
    fn rejects_non_divisor() {
        let small = Arc::new(FieldCtx::new(4).unwrap());
        let big = Arc::new(FieldCtx::new(6).unwrap());
        assert!(SubfieldEmbedding::new(small, big).is_err());
    }

    #[test]
    fn identity() {
        let k = Arc::new(FieldCtx::new(5).unwrap());
        let e = SubfieldEmbedding::identity(k.clone());
        for a in k.elements() {
            assert_eq!(e.map(a), a);
        }
    }
}
