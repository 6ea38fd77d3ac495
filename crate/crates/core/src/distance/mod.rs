//! Distance sets, the counting function nu(t), and spherical maxima.

mod props;

pub use props::*;

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::fourier::{Fourier, Spectrum};
use crate::geometry::Space;
use crate::pointset::PointSet;
use crate::scalar::{czero, Scalar};

/// Budget on |E| |F| for brute-force pair enumeration.
pub const PAIR_BUDGET: u128 = 100_000_000;

/// nu(t) = #{(x, y) in E x F : ||x - y|| = t}, indexed by t.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuTable {
    pub counts: Vec<u64>,
}

impl NuTable {
    pub fn get(&self, t: Elem) -> u64 {
        self.counts[t.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Radii with nu(t) > 0.
    pub fn support(&self) -> Vec<Elem> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(t, _)| Elem(t as u32))
            .collect()
    }

    /// sum_t nu(t)^2.
    pub fn sum_sq(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128 * c as u128).sum()
    }

    /// sum_{t != 0} nu(t)^2.
    pub fn sum_sq_nonzero(&self) -> u128 {
        self.counts[1..].iter().map(|&c| c as u128 * c as u128).sum()
    }
}

/// Coordinates of every member, flattened, for pair loops.
fn member_coords(space: &Space, set: &PointSet) -> Vec<Elem> {
    let d = space.dim();
    let mut out = vec![Elem::ZERO; set.card() * d];
    for (row, x) in out.chunks_mut(d).zip(set.iter()) {
        space.decode_into(x, row);
    }
    out
}

#[inline]
fn pair_radius(field: &FieldSpec, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem::ZERO, |acc, (&x, &y)| {
        field.add(acc, field.square(field.sub(x, y)))
    })
}

fn check_pair(space: &Space, e: &PointSet, f: &PointSet) -> Result<()> {
    e.check_space(space)?;
    f.check_space(space)
}

fn for_each_pair_radius(space: &Space, e: &PointSet, f: &PointSet, mut visit: impl FnMut(Elem) -> bool) {
    let d = space.dim();
    let field = space.field();
    let ec = member_coords(space, e);
    let fc = member_coords(space, f);
    for a in ec.chunks(d) {
        for b in fc.chunks(d) {
            if !visit(pair_radius(field, a, b)) {
                return;
            }
        }
    }
}

/// Delta(E, F) = { ||x - y|| : x in E, y in F }, ascending by index.
pub fn distance_set(space: &Space, e: &PointSet, f: &PointSet) -> Result<Vec<Elem>> {
    check_pair(space, e, f)?;
    let q = space.q();
    let mut seen = vec![false; q];
    let mut found = 0;
    for_each_pair_radius(space, e, f, |r| {
        if !seen[r.index()] {
            seen[r.index()] = true;
            found += 1;
        }
        found < q
    });
    Ok(seen
        .iter()
        .enumerate()
        .filter(|(_, &s)| s)
        .map(|(t, _)| Elem(t as u32))
        .collect())
}

/// |Delta(E, F)|.
pub fn distance_count(space: &Space, e: &PointSet, f: &PointSet) -> Result<usize> {
    distance_set(space, e, f).map(|v| v.len())
}

/// nu by enumerating all pairs.
pub fn nu_brute(space: &Space, e: &PointSet, f: &PointSet) -> Result<NuTable> {
    check_pair(space, e, f)?;
    let pairs = e.card() as u128 * f.card() as u128;
    if pairs > PAIR_BUDGET {
        return Err(Error::BudgetExceeded {
            what: "|E||F| pair enumeration",
            size: pairs,
            limit: PAIR_BUDGET,
        });
    }
    let mut counts = vec![0u64; space.q()];
    for_each_pair_radius(space, e, f, |r| {
        counts[r.index()] += 1;
        true
    });
    Ok(NuTable { counts })
}

/// nu(t) = q^{2d} sum_m S_t^(m) conj(E^(m)) F^(m), before rounding.
///
/// The sphere transform depends on m only through delta_0(m) and ||m||, so
/// the products conj(E^) F^ are first summed per sphere.
pub fn nu_fourier_values<T: Scalar>(
    fourier: &Fourier<T>,
    e_hat: &Spectrum<T>,
    f_hat: &Spectrum<T>,
) -> Vec<Complex<T>> {
    let space = fourier.space();
    let q = space.q();
    let field = space.field();
    let spheres = fourier.spheres();
    let mut per_radius = vec![czero::<T>(); q];
    for m in 1..space.size() {
        let r = spheres.radius(m).index();
        per_radius[r] = per_radius[r] + e_hat.at(m).conj() * f_hat.at(m);
    }
    let origin = e_hat.at(0).conj() * f_hat.at(0);
    let scale = T::of_usize(space.size()).powi(2);
    field
        .elements()
        .map(|t| {
            let mut acc = fourier.sphere_ft_at(t, 0) * origin;
            for r in field.elements() {
                acc = acc + fourier.sphere_ft_by_norm(t, r) * per_radius[r.index()];
            }
            acc * scale
        })
        .collect()
}

/// Largest distance of any entry of `values` from the nearest integer,
/// including imaginary parts.
pub fn integer_residual<T: Scalar>(values: &[Complex<T>]) -> f64 {
    values.iter().fold(0f64, |acc, v| {
        let re = v.re.as_f64();
        acc.max((re - re.round()).abs()).max(v.im.as_f64().abs())
    })
}

/// nu through the Fourier identity, rounded to integers. Fails with
/// `ResidualTooLarge` if any entry is not within `tolerance` of an integer.
pub fn nu_fourier<T: Scalar>(
    fourier: &Fourier<T>,
    e: &PointSet,
    f: &PointSet,
    tolerance: f64,
) -> Result<NuTable> {
    let e_hat = fourier.dft_set(e)?;
    let f_hat = fourier.dft_set(f)?;
    nu_from_spectra(fourier, &e_hat, &f_hat, tolerance)
}

pub fn nu_from_spectra<T: Scalar>(
    fourier: &Fourier<T>,
    e_hat: &Spectrum<T>,
    f_hat: &Spectrum<T>,
    tolerance: f64,
) -> Result<NuTable> {
    let values = nu_fourier_values(fourier, e_hat, f_hat);
    let residual = integer_residual(&values);
    if residual.is_nan() || residual > tolerance {
        return Err(Error::ResidualTooLarge {
            residual,
            tolerance,
        });
    }
    let counts = values
        .iter()
        .map(|v| {
            let r = v.re.as_f64().round();
            if r < 0.0 {
                Err(Error::ResidualTooLarge {
                    residual: -r,
                    tolerance,
                })
            } else {
                Ok(r as u64)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NuTable { counts })
}

/// M(E) = max_r sum_{m in S_r} |E^(m)|^2 and M*(E), the same over r != 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphericalMax<T> {
    pub value_all: T,
    pub value_star: T,
    pub argmax_all: Elem,
    pub argmax_star: Elem,
    /// sum_{m in S_r} |E^(m)|^2 for every r.
    pub per_radius: Vec<T>,
}

pub fn spherical_max<T: Scalar>(fourier: &Fourier<T>, e_hat: &Spectrum<T>) -> SphericalMax<T> {
    let space = fourier.space();
    let spheres = fourier.spheres();
    let mut per_radius = vec![T::zero(); space.q()];
    for (m, z) in e_hat.values().iter().enumerate() {
        let r = spheres.radius(m).index();
        per_radius[r] = per_radius[r] + z.norm_sqr();
    }
    let argmax = |from: usize| {
        (from..per_radius.len()).fold(from, |best, r| {
            if per_radius[r] > per_radius[best] {
                r
            } else {
                best
            }
        })
    };
    let a_all = argmax(0);
    let a_star = if per_radius.len() > 1 { argmax(1) } else { 0 };
    SphericalMax {
        value_all: per_radius[a_all],
        value_star: if per_radius.len() > 1 {
            per_radius[a_star]
        } else {
            T::zero()
        },
        argmax_all: Elem(a_all as u32),
        argmax_star: Elem(a_star as u32),
        per_radius,
    }
}

/// sum_{m in S_0} conj(E^(m)) F^(m), including m = 0.
pub fn zero_sphere_pairing<T: Scalar>(
    fourier: &Fourier<T>,
    e_hat: &Spectrum<T>,
    f_hat: &Spectrum<T>,
) -> Complex<T> {
    fourier
        .spheres()
        .members(Elem::ZERO)
        .iter()
        .fold(czero(), |acc, &m| {
            acc + e_hat.at(m as usize).conj() * f_hat.at(m as usize)
        })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::FieldSpec;
    use crate::geometry::VecD;

    fn space(p: u64, k: u32, d: usize) -> Space {
        Space::new(Arc::new(FieldSpec::new(p, k, None).unwrap()), d).unwrap()
    }

    #[test]
    fn distance_set_examples() {
        let s = space(3, 1, 2);
        let one = PointSet::from_indices(&s, [4]).unwrap();
        assert_eq!(distance_set(&s, &one, &one).unwrap(), vec![Elem(0)]);
        let full = PointSet::full(&s);
        assert_eq!(distance_count(&s, &full, &full).unwrap(), 3);
        let empty = PointSet::empty(&s);
        assert!(distance_set(&s, &empty, &full).unwrap().is_empty());

        let s5 = space(5, 1, 2);
        let line = PointSet::from_indices(
            &s5,
            (0..5).map(|t| s5.encode(&VecD::new(vec![Elem(t), Elem(2 * t % 5)])).unwrap()),
        )
        .unwrap();
        assert_eq!(distance_set(&s5, &line, &line).unwrap(), vec![Elem(0)]);
        let nu = nu_brute(&s5, &line, &line).unwrap();
        assert_eq!(nu.counts, vec![25, 0, 0, 0, 0]);

        let other = space(3, 1, 3);
        assert!(matches!(
            distance_set(&s, &PointSet::full(&other), &full),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn nu_brute_examples() {
        let s = space(3, 1, 2);
        // (0,0) and (1,0)
        let e = PointSet::from_indices(&s, [0, 1]).unwrap();
        assert_eq!(nu_brute(&s, &e, &e).unwrap().counts, vec![2, 2, 0]);
        let full = PointSet::full(&s);
        let nu = nu_brute(&s, &full, &full).unwrap();
        assert_eq!(nu.total(), 81);
        assert_eq!(nu.support().len(), 3);
    }

    #[test]
    fn nu_fourier_examples() {
        let fr = Fourier::<f64>::canonical(space(5, 1, 2)).unwrap();
        let s = fr.space().clone();
        let full = PointSet::full(&s);
        let nu = nu_fourier(&fr, &full, &full, 1e-6).unwrap();
        let cards = fr.spheres().cards();
        let expect: Vec<u64> = cards.iter().map(|&c| 25 * c as u64).collect();
        assert_eq!(nu.counts, expect);
        let empty = PointSet::empty(&s);
        assert_eq!(nu_fourier(&fr, &empty, &full, 1e-6).unwrap().counts, vec![0; 5]);
        let e = PointSet::from_indices(&s, [0, 3, 7, 11, 12, 20]).unwrap();
        let f = PointSet::from_indices(&s, [1, 2, 3, 4, 19, 24]).unwrap();
        assert_eq!(
            nu_fourier(&fr, &e, &f, 1e-6).unwrap(),
            nu_brute(&s, &e, &f).unwrap()
        );
        assert!(matches!(
            nu_fourier(&fr, &e, &f, 1e-30),
            Err(Error::ResidualTooLarge { .. })
        ));
    }

    #[test]
    fn spherical_max_examples() {
        let fr = Fourier::<f64>::canonical(space(5, 1, 2)).unwrap();
        let s = fr.space().clone();
        let full = fr.dft_set(&PointSet::full(&s)).unwrap();
        let m = spherical_max(&fr, &full);
        assert!((m.value_all - 1.0).abs() < 1e-12);
        assert!(m.value_star.abs() < 1e-12);
        assert_eq!(m.argmax_all, Elem::ZERO);

        let single = fr.dft_set(&PointSet::from_indices(&s, [6]).unwrap()).unwrap();
        let m = spherical_max(&fr, &single);
        let max_card = *fr.spheres().cards().iter().max().unwrap() as f64;
        assert!((m.value_all - max_card / 625.0).abs() < 1e-12);
        assert!(m.value_star <= m.value_all);
    }
}
