//! Fourier analysis on F_q^d.
//!
//! Normalization: `E^(m) = q^{-d} sum_x chi(-m.x) E(x)`, inversion
//! `f(x) = sum_m chi(m.x) f^(m)`.
//!
//! [`Fourier`] bundles everything that depends only on `(F_q, d, chi)`: the
//! one-dimensional kernel `chi(-m x)`, the sphere table, the Gauss sum, and
//! the closed form of the sphere transforms
//!
//! ```text
//! S_t^(m) = q^{-1} delta_0(m)
//!         + q^{-d-1} eta^d(-1) G^d sum_{r != 0} eta^d(r) chi(t r + ||m|| / (4 r)).
//! ```
//!
//! The second term depends on `m` only through `||m||`, so it is tabulated
//! once per `(t, ||m||)`.

use num_complex::Complex;
use serde::Serialize;

use crate::char_sums::gauss_sum;
use crate::character::AdditiveCharacter;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::geometry::{build_spheres, Space, SphereTable, VecD};
use crate::pointset::PointSet;
use crate::scalar::{czero, powi, Scalar};

/// Fourier coefficients of a function on F_q^d, one per frequency index.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    q: usize,
    dim: usize,
    values: Vec<Complex<T>>,
}

impl<T: Scalar> Spectrum<T> {
    #[inline]
    pub fn at(&self, m: usize) -> Complex<T> {
        self.values[m]
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn zeros(space: &Space) -> Self {
        Self {
            q: space.q(),
            dim: space.dim(),
            values: vec![czero(); space.size()],
        }
    }

    pub fn from_values(space: &Space, values: Vec<Complex<T>>) -> Result<Self> {
        if values.len() != space.size() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a space of size {}",
                values.len(),
                space.size()
            )));
        }
        Ok(Self {
            q: space.q(),
            dim: space.dim(),
            values,
        })
    }

    /// sum_m |f^(m)|^2.
    pub fn energy(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }
}

/// Per-(F_q, d, chi) transform engine.
#[derive(Clone, Debug)]
pub struct Fourier<T> {
    space: Space,
    spheres: SphereTable,
    chi: AdditiveCharacter<T>,
    // kernel[m * q + x] = chi(-m x)
    kernel: Vec<Complex<T>>,
    gauss: Complex<T>,
    // closed-form S_t^(m) for m != 0 with ||m|| = r, at index t * q + r
    sphere_nonzero: Vec<Complex<T>>,
    // closed-form S_t^(0), per t
    sphere_origin: Vec<Complex<T>>,
}

impl<T: Scalar> Fourier<T> {
    pub fn new(space: Space, chi: AdditiveCharacter<T>) -> Result<Self> {
        if chi.field().as_ref() != space.field().as_ref() {
            return Err(Error::DimensionMismatch(
                "character and space are over different fields".into(),
            ));
        }
        space.require_fourier_budget()?;
        let field = space.field().clone();
        let q = space.q();
        let d = space.dim();

        let mut kernel = Vec::with_capacity(q * q);
        for m in field.elements() {
            for x in field.elements() {
                kernel.push(chi.value(field.neg(field.mul(m, x))));
            }
        }

        let gauss = gauss_sum(&chi).value;
        let eta_d = |x: Elem| -> i64 {
            let e = field.eta(x) as i64;
            if d % 2 == 0 {
                e * e
            } else {
                e
            }
        };
        let prefactor = gauss.powi(d as i32)
            * T::of_i64(eta_d(field.neg(Elem::ONE)))
            * powi::<T>(q, -(d as i32) - 1);
        let four_inv: Vec<Elem> = field
            .elements()
            .map(|s| {
                if s.is_zero() {
                    Elem::ZERO
                } else {
                    field
                        .inv(field.mul(field.from_int(4), s))
                        .expect("4 s is a unit in odd characteristic")
                }
            })
            .collect();
        let p = field.p() as usize;
        let mut twisted = Vec::with_capacity(q * q);
        let mut counts = vec![0i64; p];
        for t in field.elements() {
            for r in field.elements() {
                counts.iter_mut().for_each(|c| *c = 0);
                for s in field.units() {
                    let ph = chi.phase(field.mul(t, s)) + chi.phase(field.mul(r, four_inv[s.index()]));
                    counts[ph as usize % p] += eta_d(s);
                }
                twisted.push(chi.combine(&counts));
            }
        }
        let q_inv = T::one() / T::of_usize(q);
        // ||0|| = 0, so the origin uses the r = 0 column
        let sphere_origin = (0..q)
            .map(|t| prefactor * twisted[t * q] + q_inv)
            .collect();
        let sphere_nonzero = twisted.into_iter().map(|k| prefactor * k).collect();

        let spheres = build_spheres(&space);
        Ok(Self {
            space,
            spheres,
            chi,
            kernel,
            gauss,
            sphere_nonzero,
            sphere_origin,
        })
    }

    pub fn canonical(space: Space) -> Result<Self> {
        let chi = AdditiveCharacter::canonical(space.field().clone());
        Self::new(space, chi)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn spheres(&self) -> &SphereTable {
        &self.spheres
    }

    pub fn character(&self) -> &AdditiveCharacter<T> {
        &self.chi
    }

    pub fn gauss(&self) -> Complex<T> {
        self.gauss
    }

    /// Applies the separable transform in place: one q x q kernel pass per
    /// axis, O(d q^{d+1}) total.
    fn transform(&self, data: &mut [Complex<T>], inverse: bool) {
        let q = self.space.q();
        let mut line = vec![czero::<T>(); q];
        let mut out = vec![czero::<T>(); q];
        let mut stride = 1;
        for _axis in 0..self.space.dim() {
            let block = stride * q;
            for base in (0..data.len()).step_by(block) {
                for low in 0..stride {
                    let start = base + low;
                    for (x, slot) in line.iter_mut().enumerate() {
                        *slot = data[start + x * stride];
                    }
                    for (m, o) in out.iter_mut().enumerate() {
                        let row = &self.kernel[m * q..(m + 1) * q];
                        let mut acc = czero::<T>();
                        for (k, v) in row.iter().zip(&line) {
                            if v.re != T::zero() || v.im != T::zero() {
                                acc = acc + if inverse { k.conj() * v } else { k * v };
                            }
                        }
                        *o = acc;
                    }
                    for (m, v) in out.iter().enumerate() {
                        data[start + m * stride] = *v;
                    }
                }
            }
            stride = block;
        }
    }

    /// E^(m) for every m.
    pub fn dft_set(&self, set: &PointSet) -> Result<Spectrum<T>> {
        set.check_space(&self.space)?;
        let mut data = vec![czero::<T>(); self.space.size()];
        for x in set.iter() {
            data[x] = Complex::new(T::one(), T::zero());
        }
        self.dft_values(data)
    }

    /// Transform of an arbitrary complex function given by its values.
    pub fn dft_values(&self, mut data: Vec<Complex<T>>) -> Result<Spectrum<T>> {
        if data.len() != self.space.size() {
            return Err(Error::DimensionMismatch("function length != q^d".into()));
        }
        self.transform(&mut data, false);
        let scale = powi::<T>(self.space.q(), -(self.space.dim() as i32));
        data.iter_mut().for_each(|z| *z = *z * scale);
        Spectrum::from_values(&self.space, data)
    }

    /// f(x) = sum_m chi(m.x) f^(m).
    pub fn inverse_dft(&self, spectrum: &Spectrum<T>) -> Result<Vec<Complex<T>>> {
        if spectrum.len() != self.space.size() || spectrum.dim() != self.space.dim() {
            return Err(Error::DimensionMismatch("spectrum does not match space".into()));
        }
        let mut data = spectrum.values.clone();
        self.transform(&mut data, true);
        Ok(data)
    }

    /// Closed-form S_t^(m).
    pub fn sphere_ft_closed(&self, t: Elem, m: &VecD) -> Complex<T> {
        if m.is_zero() {
            self.sphere_origin[t.index()]
        } else {
            self.sphere_ft_by_norm(t, self.space.norm(m))
        }
    }

    /// Closed-form S_t^(m) by frequency index.
    #[inline]
    pub fn sphere_ft_at(&self, t: Elem, m: usize) -> Complex<T> {
        if m == 0 {
            self.sphere_origin[t.index()]
        } else {
            self.sphere_ft_by_norm(t, self.spheres.radius(m))
        }
    }

    /// S_t^(m) for any nonzero m with ||m|| = r.
    #[inline]
    pub fn sphere_ft_by_norm(&self, t: Elem, r: Elem) -> Complex<T> {
        self.sphere_nonzero[t.index() * self.space.q() + r.index()]
    }

    /// Closed form of sum_t S_t^(m) conj(S_t^(m')):
    /// q^{-1} delta(m) delta(m') + q^{-d-1} sum_{s != 0} chi(s (||m|| - ||m'||)).
    pub fn sphere_ft_correlation(&self, m: &VecD, m2: &VecD) -> Complex<T> {
        let f = self.space.field();
        let q = self.space.q();
        let diff = f.sub(self.space.norm(m), self.space.norm(m2));
        let sum = self.chi.weighted_sum(f.units().map(|s| (1, f.mul(s, diff))));
        let delta = if m.is_zero() && m2.is_zero() {
            T::one() / T::of_usize(q)
        } else {
            T::zero()
        };
        sum * powi::<T>(q, -(self.space.dim() as i32) - 1) + delta
    }

    /// sum_t S_t^(m) conj(S_t^(m')) evaluated term by term from the closed
    /// form of each S_t^.
    pub fn sphere_ft_correlation_direct(&self, m: &VecD, m2: &VecD) -> Complex<T> {
        self.space
            .field()
            .elements()
            .map(|t| self.sphere_ft_closed(t, m) * self.sphere_ft_closed(t, m2).conj())
            .fold(czero(), |a, b| a + b)
    }

    /// Max over m of |sum_x chi(m.x) - q^d delta_0(m)|, by direct summation
    /// over all m when q^d <= 10^4 and over a strided sample of m otherwise.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.space.size();
        let step = if n <= 10_000 { 1 } else { n / 1_000 + 1 };
        let f = self.space.field();
        let mut mc = vec![Elem::ZERO; self.space.dim()];
        let mut xc = vec![Elem::ZERO; self.space.dim()];
        let mut worst = 0f64;
        for m in (0..n).step_by(step) {
            self.space.decode_into(m, &mut mc);
            let sum = self.chi.weighted_sum((0..n).map(|x| {
                self.space.decode_into(x, &mut xc);
                let dot = mc
                    .iter()
                    .zip(&xc)
                    .fold(Elem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)));
                (1, dot)
            }));
            let expect = if m == 0 { n as f64 } else { 0.0 };
            let r = (sum.re.as_f64() - expect).hypot(sum.im.as_f64());
            worst = worst.max(r);
        }
        worst
    }

    /// |q^d sum_m |E^(m)|^2 - |E||, the Plancherel residual at integer scale.
    pub fn plancherel_residual(&self, spectrum: &Spectrum<T>, card: usize) -> f64 {
        let scaled = spectrum.energy().as_f64() * self.space.size() as f64;
        (scaled - card as f64).abs()
    }
}

/// Rounds inverse-transform output to a 0/1 indicator, failing if any value
/// is farther than `tolerance` from 0 or 1.
pub fn to_indicator<T: Scalar>(
    space: &Space,
    values: &[Complex<T>],
    tolerance: f64,
) -> Result<PointSet> {
    let mut set = PointSet::empty(space);
    let mut residual = 0f64;
    for (x, v) in values.iter().enumerate() {
        let re = v.re.as_f64();
        let bit = if re >= 0.5 { 1.0 } else { 0.0 };
        residual = residual.max((re - bit).abs()).max(v.im.as_f64().abs());
        if bit == 1.0 {
            set.insert(x);
        }
    }
    if residual.is_nan() || residual > tolerance {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance,
        });
    }
    Ok(set)
}

/// Maximum of |S_t^(m)| over one class of (t, m != 0), against its cap.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayClass {
    pub pairs: u64,
    pub max_abs: f64,
    pub cap: f64,
    pub pass: bool,
}

/// Split of all (t, m != 0) into the exceptional class (d even, t = 0,
/// ||m|| = 0), capped by q^{-d/2}, and everything else, capped by
/// 2 q^{-(d+1)/2}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayAudit {
    pub exceptional: DecayClass,
    pub generic: DecayClass,
}

impl DecayAudit {
    pub fn pass(&self) -> bool {
        self.exceptional.pass && self.generic.pass
    }
}

/// Runs the decay classification over the closed-form sphere transforms.
/// Comparisons are made at scale q^d with absolute `tolerance`.
pub fn decay_audit<T: Scalar>(fourier: &Fourier<T>, tolerance: f64) -> DecayAudit {
    let space = fourier.space();
    let q = space.q();
    let d = space.dim();
    let qd = space.size() as f64;
    let cards = fourier.spheres().cards();
    let exc_cap = (q as f64).powf(-(d as f64) / 2.0);
    let gen_cap = 2.0 * (q as f64).powf(-(d as f64 + 1.0) / 2.0);
    let mut exc = DecayClass {
        pairs: 0,
        max_abs: 0.0,
        cap: exc_cap,
        pass: true,
    };
    let mut gen = DecayClass {
        pairs: 0,
        max_abs: 0.0,
        cap: gen_cap,
        pass: true,
    };
    for t in space.field().elements() {
        for r in space.field().elements() {
            // number of nonzero m with ||m|| = r
            let count = cards[r.index()] - usize::from(r.is_zero());
            if count == 0 {
                continue;
            }
            let v = fourier.sphere_ft_by_norm(t, r).norm().as_f64();
            let class = if d % 2 == 0 && t.is_zero() && r.is_zero() {
                &mut exc
            } else {
                &mut gen
            };
            class.pairs += count as u64;
            class.max_abs = class.max_abs.max(v);
            if v * qd > class.cap * qd + tolerance {
                class.pass = false;
            }
        }
    }
    DecayAudit {
        exceptional: exc,
        generic: gen,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::FieldSpec;

    fn fourier(p: u64, k: u32, d: usize) -> Fourier<f64> {
        let f = Arc::new(FieldSpec::new(p, k, None).unwrap());
        Fourier::canonical(Space::new(f, d).unwrap()).unwrap()
    }

    // Independent oracle: q^{-d} sum_{x in E} chi(-m.x), accumulated as
    // integer phase counts, no separability.
    fn brute_dft(fr: &Fourier<f64>, set: &PointSet) -> Vec<Complex<f64>> {
        let sp = fr.space();
        let f = sp.field().clone();
        let chi = fr.character();
        let qd = sp.size() as f64;
        (0..sp.size())
            .map(|m| {
                let mv = sp.decode(m);
                let s = chi.weighted_sum(set.iter().map(|x| {
                    let xv = sp.decode(x);
                    (1, f.neg(sp.dot(&mv, &xv)))
                }));
                s / qd
            })
            .collect()
    }

    #[test]
    fn full_space_transform_is_delta() {
        let fr = fourier(5, 1, 2);
        let spec = fr.dft_set(&PointSet::full(fr.space())).unwrap();
        for m in 0..25 {
            let expect = if m == 0 { 1.0 } else { 0.0 };
            assert!((spec.at(m) - expect).norm() < 1e-12);
        }
        let back = fr.inverse_dft(&spec).unwrap();
        assert!(back.iter().all(|v| (v - 1.0).norm() < 1e-12));
    }

    #[test]
    fn singleton_is_flat() {
        let fr = fourier(3, 2, 2);
        let e = PointSet::from_indices(fr.space(), [17]).unwrap();
        let spec = fr.dft_set(&e).unwrap();
        let flat = 1.0 / 81.0;
        assert!(spec.values().iter().all(|z| (z.norm() - flat).abs() < 1e-12));
    }

    #[test]
    fn zero_spectrum_inverts_to_zero() {
        let fr = fourier(5, 1, 2);
        let z = Spectrum::<f64>::zeros(fr.space());
        assert!(fr.inverse_dft(&z).unwrap().iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn separable_dft_matches_brute_force() {
        for (p, k, d) in [(3, 1, 2), (5, 1, 2), (3, 2, 2), (3, 1, 3), (7, 1, 2)] {
            let fr = fourier(p, k, d);
            let n = fr.space().size();
            let e = PointSet::from_indices(fr.space(), (0..n).filter(|i| i % 3 == 1 || i % 7 == 0))
                .unwrap();
            let a = fr.dft_set(&e).unwrap();
            let b = brute_dft(&fr, &e);
            for m in 0..n {
                assert!((a.at(m) - b[m]).norm() * n as f64 <= 1e-9, "{p}^{k} d={d} m={m}");
            }
        }
    }

    #[test]
    fn sphere_closed_form_matches_direct_dft_small() {
        let fr = fourier(3, 1, 2);
        let sp = fr.space().clone();
        for t in sp.field().elements() {
            let s = PointSet::from_indices(&sp, fr.spheres().members(t).iter().map(|&i| i as usize))
                .unwrap();
            let direct = brute_dft(&fr, &s);
            for m in 0..sp.size() {
                let closed = fr.sphere_ft_closed(t, &sp.decode(m));
                assert!((closed - direct[m]).norm() * 9.0 < 1e-9, "t={t:?} m={m}");
            }
            let at_zero = fr.sphere_ft_closed(t, &VecD::zero(2));
            assert!((at_zero.re - s.card() as f64 / 9.0).abs() < 1e-12);
        }
    }

    #[test]
    fn decay_examples() {
        let fr = fourier(3, 1, 3);
        let cap = 2.0 / 9.0;
        for t in fr.space().field().elements() {
            for m in 1..27 {
                assert!(fr.sphere_ft_at(t, m).norm() <= cap + 1e-12);
            }
        }
        let a = decay_audit(&fr, 1e-6);
        assert!(a.pass());
        assert_eq!(a.exceptional.pairs, 0);
        assert_eq!(a.generic.pairs, 3 * 26);

        let fr = fourier(5, 1, 2);
        let a = decay_audit(&fr, 1e-6);
        assert!(a.pass());
        // S_0 \ {0} has 8 points
        assert_eq!(a.exceptional.pairs, 8);
        assert!(a.exceptional.max_abs <= 0.2 + 1e-12);
        let m = VecD::new(vec![Elem(1), Elem(2)]);
        assert!(fr.sphere_ft_closed(Elem::ZERO, &m).norm() <= 0.2 + 1e-12);

        let a = decay_audit(&fourier(7, 1, 2), 1e-6);
        assert!(a.pass());
        assert_eq!(a.exceptional.pairs, 0);
    }

    #[test]
    fn correlation_examples() {
        let fr = fourier(3, 1, 2);
        let sp = fr.space().clone();
        let z = VecD::zero(2);
        let v = fr.sphere_ft_correlation(&z, &z);
        let expect = 1.0 / 3.0 + 2.0 / 27.0;
        assert!((v.re - expect).abs() < 1e-12 && v.im.abs() < 1e-12);
        // ||(1,0)|| = 1, ||(1,1)|| = 2
        let a = VecD::new(vec![Elem(1), Elem(0)]);
        let b = VecD::new(vec![Elem(1), Elem(1)]);
        let v = fr.sphere_ft_correlation(&a, &b);
        assert!((v.re + 1.0 / 27.0).abs() < 1e-12);
        for m in 0..9 {
            for m2 in 0..9 {
                let (a, b) = (sp.decode(m), sp.decode(m2));
                let c = fr.sphere_ft_correlation(&a, &b);
                let d = fr.sphere_ft_correlation_direct(&a, &b);
                assert!((c - d).norm() * 9.0 < 1e-9);
            }
        }
    }

    #[test]
    fn indicator_rounding() {
        let fr = fourier(5, 1, 2);
        let e = PointSet::from_indices(fr.space(), [0, 3, 9, 24]).unwrap();
        let back = fr.inverse_dft(&fr.dft_set(&e).unwrap()).unwrap();
        assert_eq!(to_indicator(fr.space(), &back, 1e-6).unwrap(), e);
        let mut noisy = back.clone();
        noisy[1] += Complex::new(0.01, 0.0);
        assert!(matches!(
            to_indicator(fr.space(), &noisy, 1e-6),
            Err(Error::ResidualTooLarge { .. })
        ));
    }

    #[test]
    fn orthogonality_and_budget() {
        assert!(fourier(3, 2, 2).orthogonality_residual() < 1e-9);
        let f = Arc::new(FieldSpec::prime(11).unwrap());
        let big = Space::new(f, 6).unwrap();
        assert!(matches!(
            Fourier::<f64>::canonical(big),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn f32_engine_runs() {
        let f = Arc::new(FieldSpec::prime(5).unwrap());
        let fr = Fourier::<f32>::canonical(Space::new(f, 2).unwrap()).unwrap();
        let e = PointSet::from_indices(fr.space(), [1, 2, 8]).unwrap();
        let spec = fr.dft_set(&e).unwrap();
        assert!(fr.plancherel_residual(&spec, 3) < 1e-4);
        let back = fr.inverse_dft(&spec).unwrap();
        assert_eq!(to_indicator(fr.space(), &back, 1e-4).unwrap(), e);
    }
}
