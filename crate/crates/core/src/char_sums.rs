//! Gauss, Kloosterman and Salie sums by direct O(q) summation.

use num_complex::Complex;
use serde::Serialize;

use crate::character::AdditiveCharacter;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::scalar::Scalar;
use crate::tolerance::DEFAULT_TOLERANCE;

/// A character sum together with the magnitude cap it is expected to obey.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CharSumResult<T> {
    pub value: Complex<T>,
    pub magnitude: T,
    pub bound: T,
    pub within_bound: bool,
}

impl<T: Scalar> CharSumResult<T> {
    fn new(value: Complex<T>, bound: T) -> Self {
        let magnitude = value.norm();
        Self {
            value,
            magnitude,
            bound,
            within_bound: magnitude <= bound + T::of_f64(DEFAULT_TOLERANCE),
        }
    }
}

/// G = sum_{s != 0} eta(s) chi(s); |G| = sqrt(q).
pub fn gauss_sum<T: Scalar>(chi: &AdditiveCharacter<T>) -> CharSumResult<T> {
    let f = chi.field();
    let value = chi.weighted_sum(f.units().map(|s| (f.eta(s) as i64, s)));
    CharSumResult::new(value, T::of_usize(f.order()).sqrt())
}

fn twisted_inverse_sum<T: Scalar>(
    chi: &AdditiveCharacter<T>,
    a: Elem,
    b: Elem,
    with_eta: bool,
) -> Result<CharSumResult<T>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroParameter);
    }
    let f = chi.field();
    f.elem(a.0)?;
    f.elem(b.0)?;
    let terms = f.units().map(|s| {
        let arg = f.add(f.mul(a, s), f.mul(b, f.inv(s).expect("unit")));
        let w = if with_eta { f.eta(s) as i64 } else { 1 };
        (w, arg)
    });
    let value = chi.weighted_sum(terms);
    Ok(CharSumResult::new(
        value,
        T::of_f64(2.0) * T::of_usize(f.order()).sqrt(),
    ))
}

/// K(a, b) = sum_{s != 0} chi(a s + b / s); |K| <= 2 sqrt(q).
pub fn kloosterman<T: Scalar>(
    chi: &AdditiveCharacter<T>,
    a: Elem,
    b: Elem,
) -> Result<CharSumResult<T>> {
    twisted_inverse_sum(chi, a, b, false)
}

/// S(a, b) = sum_{s != 0} eta(s) chi(a s + b / s); |S| <= 2 sqrt(q).
pub fn salie<T: Scalar>(
    chi: &AdditiveCharacter<T>,
    a: Elem,
    b: Elem,
) -> Result<CharSumResult<T>> {
    twisted_inverse_sum(chi, a, b, true)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::FieldSpec;

    fn chi(p: u64, k: u32) -> AdditiveCharacter<f64> {
        AdditiveCharacter::canonical(Arc::new(FieldSpec::new(p, k, None).unwrap()))
    }

    fn close(z: Complex<f64>, re: f64, im: f64) -> bool {
        (z.re - re).abs() < 1e-6 && (z.im - im).abs() < 1e-6
    }

    #[test]
    fn gauss_examples() {
        let g3 = gauss_sum(&chi(3, 1));
        assert!(close(g3.value, 0.0, 1.732_050_8), "{:?}", g3.value);
        assert!((g3.magnitude - 3f64.sqrt()).abs() < 1e-9);
        let g5 = gauss_sum(&chi(5, 1));
        let expect = 2.0 * (std::f64::consts::TAU / 5.0).cos()
            - 2.0 * (2.0 * std::f64::consts::TAU / 5.0).cos();
        assert!(close(g5.value, expect, 0.0));
        assert!(close(g5.value, 2.236_068_0, 0.0));
        assert!(g5.within_bound);
    }

    #[test]
    fn kloosterman_examples() {
        let k5 = kloosterman(&chi(5, 1), Elem(1), Elem(1)).unwrap();
        let expect = 2.0 + 2.0 * (2.0 * std::f64::consts::TAU / 5.0).cos();
        assert!(close(k5.value, expect, 0.0));
        assert!(close(k5.value, 0.381_966_0, 0.0));
        let k3 = kloosterman(&chi(3, 1), Elem(1), Elem(1)).unwrap();
        assert!(close(k3.value, -1.0, 0.0));
        assert!(k3.within_bound);
        assert_eq!((k3.bound - 2.0 * 3f64.sqrt()).abs() < 1e-12, true);
    }

    #[test]
    fn salie_examples() {
        let s3 = salie(&chi(3, 1), Elem(1), Elem(1)).unwrap();
        assert!(close(s3.value, 0.0, -1.732_050_8), "{:?}", s3.value);
        assert_eq!(
            salie(&chi(5, 1), Elem(1), Elem(0)).unwrap_err(),
            Error::ZeroParameter
        );
        assert_eq!(
            kloosterman(&chi(5, 1), Elem(0), Elem(2)).unwrap_err(),
            Error::ZeroParameter
        );
    }

    #[test]
    fn kloosterman_symmetry_and_scaling() {
        for (p, k) in [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2)] {
            let c = chi(p, k);
            let f = c.field().clone();
            for a in f.units() {
                for b in f.units() {
                    let kab = kloosterman(&c, a, b).unwrap();
                    let kba = kloosterman(&c, b, a).unwrap();
                    assert!((kab.value - kba.value).norm() < 1e-9);
                    // Kloosterman sums are real
                    assert!(kab.value.im.abs() < 1e-9);
                    let s = salie(&c, a, b).unwrap();
                    for cc in [Elem(2), f.neg(Elem::ONE)] {
                        let ca = f.mul(cc, a);
                        let cb = f.mul(f.inv(cc).unwrap(), b);
                        let k2 = kloosterman(&c, ca, cb).unwrap();
                        let s2 = salie(&c, ca, cb).unwrap();
                        assert!((k2.magnitude - kab.magnitude).abs() < 1e-9);
                        assert!((s2.magnitude - s.magnitude).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn f32_gauss_sum() {
        let f = Arc::new(FieldSpec::prime(13).unwrap());
        let g = gauss_sum(&AdditiveCharacter::<f32>::canonical(f));
        assert!((g.magnitude * g.magnitude - 13.0).abs() < 1e-4);
    }
}
