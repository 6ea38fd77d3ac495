//! The additive character chi(x) = exp(2 pi i Tr(c x) / p).
//!
//! `c` is a nonzero twist; c = 1 gives the canonical character. Every
//! character value is a p-th root of unity, so sums of character values are
//! accumulated as integer counts per phase and only converted to complex
//! numbers at the end ([`AdditiveCharacter::combine`]).

use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::scalar::{czero, Scalar};

#[derive(Clone, Debug)]
pub struct AdditiveCharacter<T> {
    field: Arc<FieldSpec>,
    twist: Elem,
    // phase[x] = Tr(c x) in [0, p)
    phase: Vec<u32>,
    // roots[j] = exp(2 pi i j / p)
    roots: Vec<Complex<T>>,
}

impl<T: Scalar> AdditiveCharacter<T> {
    pub fn canonical(field: Arc<FieldSpec>) -> Self {
        Self::twisted(field, Elem::ONE).expect("1 is nonzero")
    }

    /// The character x -> chi(c x).
    pub fn twisted(field: Arc<FieldSpec>, twist: Elem) -> Result<Self> {
        if twist.is_zero() {
            return Err(Error::ZeroParameter);
        }
        field.elem(twist.0)?;
        let p = field.p() as usize;
        let phase = field
            .elements()
            .map(|x| field.trace(field.mul(twist, x)))
            .collect();
        let tau = T::PI() + T::PI();
        let roots = (0..p)
            .map(|j| {
                let theta = tau * T::of_usize(j) / T::of_usize(p);
                Complex::new(theta.cos(), theta.sin())
            })
            .collect();
        Ok(Self {
            field,
            twist,
            phase,
            roots,
        })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn twist(&self) -> Elem {
        self.twist
    }

    /// Integer phase j with chi(x) = exp(2 pi i j / p).
    #[inline]
    pub fn phase(&self, x: Elem) -> u32 {
        self.phase[x.index()]
    }

    #[inline]
    pub fn root(&self, j: u32) -> Complex<T> {
        self.roots[j as usize]
    }

    #[inline]
    pub fn value(&self, x: Elem) -> Complex<T> {
        self.roots[self.phase[x.index()] as usize]
    }

    /// sum_j counts[j] exp(2 pi i j / p).
    pub fn combine(&self, counts: &[i64]) -> Complex<T> {
        debug_assert_eq!(counts.len(), self.roots.len());
        counts
            .iter()
            .zip(&self.roots)
            .fold(czero(), |acc, (&c, &w)| acc + w * T::of_i64(c))
    }

    /// sum over x of weight(x) chi(arg(x)), with integer weights.
    pub fn weighted_sum(
        &self,
        terms: impl IntoIterator<Item = (i64, Elem)>,
    ) -> Complex<T> {
        let mut counts = vec![0i64; self.roots.len()];
        for (w, x) in terms {
            counts[self.phase(x) as usize] += w;
        }
        self.combine(&counts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chi(p: u64, k: u32) -> AdditiveCharacter<f64> {
        AdditiveCharacter::canonical(Arc::new(FieldSpec::new(p, k, None).unwrap()))
    }

    #[test]
    fn examples() {
        let c3 = chi(3, 1);
        let v = c3.value(Elem::ZERO);
        assert!((v.re - 1.0).abs() < 1e-15 && v.im.abs() < 1e-15);
        let v = c3.value(Elem::ONE);
        assert!((v.re + 0.5).abs() < 1e-12);
        assert!((v.im - 0.866_025_403_784_438_6).abs() < 1e-12);
        let c5 = chi(5, 1);
        let s: Complex<f64> = c5.field().clone().elements().map(|x| c5.value(x)).sum();
        assert!(s.norm() < 1e-12);
    }

    #[test]
    fn zero_twist_rejected() {
        let f = Arc::new(FieldSpec::prime(5).unwrap());
        assert_eq!(
            AdditiveCharacter::<f64>::twisted(f, Elem::ZERO).unwrap_err(),
            Error::ZeroParameter
        );
    }

    #[test]
    fn character_properties() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2), (3, 3), (11, 1), (13, 1)] {
            let c = chi(p, k);
            let f = c.field().clone();
            let total: Complex<f64> = f.elements().map(|x| c.value(x)).sum();
            assert!(total.norm() < 1e-9, "{p}^{k}");
            let eta_total: i64 = f.units().map(|x| f.eta(x) as i64).sum();
            assert_eq!(eta_total, 0);
            assert!(f.elements().any(|x| (c.value(x) - 1.0).norm() > 1e-6));
            for x in f.elements() {
                assert!((c.value(x).norm() - 1.0).abs() < 1e-12);
                let prod = c.value(x) * c.value(f.neg(x));
                assert!((prod - 1.0).norm() < 1e-12);
                for y in f.elements() {
                    let lhs = c.value(f.add(x, y));
                    assert!((lhs - c.value(x) * c.value(y)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn f32_character_agrees_with_f64() {
        let f = Arc::new(FieldSpec::new(7, 2, None).unwrap());
        let a = AdditiveCharacter::<f32>::canonical(f.clone());
        let b = AdditiveCharacter::<f64>::canonical(f.clone());
        for x in f.elements() {
            let (u, v) = (a.value(x), b.value(x));
            assert!((u.re as f64 - v.re).abs() < 1e-6 && (u.im as f64 - v.im).abs() < 1e-6);
        }
    }
}
