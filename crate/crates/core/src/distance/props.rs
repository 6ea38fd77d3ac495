//! Checks of the L^2 and spherical-sum inequalities on concrete sets.
//!
//! Every check returns [`Inequality`] records rather than a bare boolean so
//! callers can report slack. Sides are compared at integer scale: quantities
//! built from |E^|^2 are multiplied by q^{2d} first.

use num_complex::Complex;
use serde::Serialize;

use super::{distance_count, nu_brute, spherical_max, zero_sphere_pairing, NuTable, SphericalMax};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::fourier::{Fourier, Spectrum};
use crate::geometry::Space;
use crate::pointset::PointSet;
use crate::scalar::Scalar;

/// `lhs <= rhs`, accepted up to an absolute tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Inequality {
    pub lhs: f64,
    pub rhs: f64,
    /// rhs - lhs
    pub slack: f64,
    pub holds: bool,
}

impl Inequality {
    pub fn check(lhs: f64, rhs: f64, tolerance: f64) -> Self {
        Self {
            lhs,
            rhs,
            slack: rhs - lhs,
            holds: lhs <= rhs + tolerance,
        }
    }

    /// Exact comparison of integers.
    pub fn exact(lhs: u128, rhs: u128) -> Self {
        Self {
            lhs: lhs as f64,
            rhs: rhs as f64,
            slack: rhs as f64 - lhs as f64,
            holds: lhs <= rhs,
        }
    }
}

/// Everything the pair checks need about (E, F), computed once.
#[derive(Clone, Debug)]
pub struct PairAnalysis<T> {
    pub card_e: usize,
    pub card_f: usize,
    pub nu: NuTable,
    pub delta: usize,
    pub e_hat: Spectrum<T>,
    pub f_hat: Spectrum<T>,
    pub max_e: SphericalMax<T>,
    /// sum_{m in S_0} conj(E^(m)) F^(m)
    pub zero_pairing: Complex<T>,
}

impl<T: Scalar> PairAnalysis<T> {
    pub fn new(fourier: &Fourier<T>, e: &PointSet, f: &PointSet) -> Result<Self> {
        let space = fourier.space();
        let nu = nu_brute(space, e, f)?;
        let e_hat = fourier.dft_set(e)?;
        let f_hat = fourier.dft_set(f)?;
        Ok(Self::from_parts(fourier, e, f, nu, e_hat, f_hat))
    }

    pub fn from_parts(
        fourier: &Fourier<T>,
        e: &PointSet,
        f: &PointSet,
        nu: NuTable,
        e_hat: Spectrum<T>,
        f_hat: Spectrum<T>,
    ) -> Self {
        let delta = nu.support().len();
        let max_e = spherical_max(fourier, &e_hat);
        let zero_pairing = zero_sphere_pairing(fourier, &e_hat, &f_hat);
        Self {
            card_e: e.card(),
            card_f: f.card(),
            nu,
            delta,
            e_hat,
            f_hat,
            max_e,
            zero_pairing,
        }
    }

    fn product(&self) -> u128 {
        self.card_e as u128 * self.card_f as u128
    }
}

/// Both L^2 bounds on sum_t nu(t)^2.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct L2Report {
    /// sum nu^2 <= q^{-1}|E|^2|F|^2 + q^{2d}|F| M(E)
    pub l1: Inequality,
    /// sum nu^2 <= q^{-1}|E|^2|F|^2 + q^{3d}|sum_{S_0} conj(E^) F^|^2 + q^{2d}|F| M*(E)
    pub l2: Inequality,
}

impl L2Report {
    pub fn holds(&self) -> bool {
        self.l1.holds && self.l2.holds
    }
}

pub fn l2_bounds_from<T: Scalar>(space: &Space, a: &PairAnalysis<T>, tolerance: f64) -> L2Report {
    let q = space.q() as f64;
    let qd = space.size() as f64;
    let ef = a.product() as f64;
    let lhs = a.nu.sum_sq() as f64;
    let base = ef * ef / q;
    let cf = a.card_f as f64;
    let l1 = base + qd * qd * cf * a.max_e.value_all.as_f64();
    let pairing = a.zero_pairing.norm_sqr().as_f64();
    let l2 = base + qd * qd * qd * pairing + qd * qd * cf * a.max_e.value_star.as_f64();
    L2Report {
        l1: Inequality::check(lhs, l1, tolerance),
        l2: Inequality::check(lhs, l2, tolerance),
    }
}

pub fn l2_bounds_check<T: Scalar>(
    fourier: &Fourier<T>,
    e: &PointSet,
    f: &PointSet,
    tolerance: f64,
) -> Result<L2Report> {
    let a = PairAnalysis::new(fourier, e, f)?;
    Ok(l2_bounds_from(fourier.space(), &a, tolerance))
}

/// The two nu(0) inequalities for even d.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvenCorReport {
    /// |E|^2|F|^2 / 36 <= (|E||F| - nu(0))^2
    pub mass_off_zero: Inequality,
    /// q^{3d}|sum_{S_0} conj(E^) F^|^2 - nu(0)^2 <= q^{-1}|E|^2|F|^2
    pub zero_sphere: Inequality,
}

impl EvenCorReport {
    pub fn holds(&self) -> bool {
        self.mass_off_zero.holds && self.zero_sphere.holds
    }
}

/// Hypotheses: d even and |E||F| >= 16 q^d.
pub fn evencor_hypothesis(space: &Space, card_e: usize, card_f: usize) -> Result<()> {
    if space.dim() % 2 != 0 {
        return Err(Error::HypothesisNotMet(format!(
            "d = {} is odd",
            space.dim()
        )));
    }
    let need = 16u128 * space.size() as u128;
    let have = card_e as u128 * card_f as u128;
    if have < need {
        let feasible = if need > (space.size() as u128).pow(2) {
            " (infeasible: 16 q^d > q^{2d})"
        } else {
            ""
        };
        return Err(Error::HypothesisNotMet(format!(
            "|E||F| = {have} < 16 q^d = {need}{feasible}"
        )));
    }
    Ok(())
}

pub fn evencor_from<T: Scalar>(
    space: &Space,
    a: &PairAnalysis<T>,
    tolerance: f64,
) -> Result<EvenCorReport> {
    evencor_hypothesis(space, a.card_e, a.card_f)?;
    let ef = a.product();
    let nu0 = a.nu.get(Elem::ZERO) as u128;
    let off = ef - nu0;
    // 36 (|E||F| - nu0)^2 >= |E|^2|F|^2, kept exact
    let mass_off_zero = Inequality {
        holds: ef * ef <= 36 * off * off,
        ..Inequality::check((ef * ef) as f64 / 36.0, (off * off) as f64, 0.0)
    };
    let q = space.q() as f64;
    let qd = space.size() as f64;
    let lhs = qd.powi(3) * a.zero_pairing.norm_sqr().as_f64() - (nu0 * nu0) as f64;
    let rhs = (ef * ef) as f64 / q;
    Ok(EvenCorReport {
        mass_off_zero,
        zero_sphere: Inequality::check(lhs, rhs, tolerance),
    })
}

pub fn nu0_even_checks<T: Scalar>(
    fourier: &Fourier<T>,
    e: &PointSet,
    f: &PointSet,
    tolerance: f64,
) -> Result<EvenCorReport> {
    evencor_hypothesis(fourier.space(), e.card(), f.card())?;
    let a = PairAnalysis::new(fourier, e, f)?;
    evencor_from(fourier.space(), &a, tolerance)
}

/// The two Cauchy-Schwarz lower bounds on |Delta(E, F)|, in multiplied-out
/// form so empty sets need no special case:
/// |E|^2|F|^2 <= |Delta| sum_t nu^2 and
/// (|E||F| - nu(0))^2 <= |Delta| sum_{t != 0} nu^2.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchySchwarzReport {
    pub all_radii: Inequality,
    pub nonzero_radii: Inequality,
    /// sum_t nu(t) == |E||F|
    pub total_matches: bool,
}

impl CauchySchwarzReport {
    pub fn holds(&self) -> bool {
        self.all_radii.holds && self.nonzero_radii.holds && self.total_matches
    }
}

pub fn cauchy_schwarz_check(nu: &NuTable, card_e: usize, card_f: usize, delta: usize) -> CauchySchwarzReport {
    let ef = card_e as u128 * card_f as u128;
    let nu0 = nu.get(Elem::ZERO) as u128;
    let off = ef.saturating_sub(nu0);
    let delta = delta as u128;
    CauchySchwarzReport {
        all_radii: Inequality::exact(ef * ef, delta * nu.sum_sq()),
        nonzero_radii: Inequality::exact(off * off, delta * nu.sum_sq_nonzero()),
        total_matches: nu.total() as u128 == ef
            && nu.counts[1..].iter().map(|&c| c as u128).sum::<u128>() == off,
    }
}

fn scaled_max<T: Scalar>(space: &Space, v: T) -> f64 {
    let qd = space.size() as f64;
    v.as_f64() * qd * qd
}

/// M(E) <= q^{-d}|E| and M*(E) <= M(E), at scale q^{2d}.
pub fn spherical_trivial_check<T: Scalar>(
    space: &Space,
    max: &SphericalMax<T>,
    card: usize,
    tolerance: f64,
) -> (Inequality, Inequality) {
    let all = scaled_max(space, max.value_all);
    let star = scaled_max(space, max.value_star);
    (
        Inequality::check(all, space.size() as f64 * card as f64, tolerance),
        Inequality::check(star, all, tolerance),
    )
}

/// M*(E) <= sqrt(3) q^{-3} |E|^{3/2} for E in F_q^2, at scale q^4.
pub fn restriction_check<T: Scalar>(
    fourier: &Fourier<T>,
    e: &PointSet,
    tolerance: f64,
) -> Result<Inequality> {
    let space = fourier.space();
    if space.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "restriction bound is stated for d = 2, got d = {}",
            space.dim()
        )));
    }
    let max = spherical_max(fourier, &fourier.dft_set(e)?);
    Ok(restriction_from(space, &max, e.card(), tolerance))
}

pub fn restriction_from<T: Scalar>(
    space: &Space,
    max: &SphericalMax<T>,
    card: usize,
    tolerance: f64,
) -> Inequality {
    let q = space.q() as f64;
    let lhs = scaled_max(space, max.value_star);
    let rhs = 3f64.sqrt() * q * (card as f64).powf(1.5);
    Inequality::check(lhs, rhs, tolerance)
}

/// Which spherical maximum a spherical-sum bound applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SphericalQuantity {
    /// M(E), odd d >= 3
    All,
    /// M*(E), even d >= 2
    Star,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SphSumReport {
    pub quantity: SphericalQuantity,
    /// q^{2d} q^{-d} |E|
    pub trivial_cap: f64,
    /// q^{2d} (2 q^{-d-1}|E| + 2 q^{-(3d+1)/2}|E|^2)
    pub decay_cap: f64,
    /// scaled quantity <= min of the two caps
    pub bound: Inequality,
}

/// M(E) (odd d) or M*(E) (even d) <= min{q^{-d}|E|, 2q^{-d-1}|E| + 2q^{-(3d+1)/2}|E|^2}.
pub fn sph_sum_bound_check<T: Scalar>(
    fourier: &Fourier<T>,
    e: &PointSet,
    tolerance: f64,
) -> Result<SphSumReport> {
    let max = spherical_max(fourier, &fourier.dft_set(e)?);
    sph_sum_from(fourier.space(), &max, e.card(), tolerance)
}

pub fn sph_sum_from<T: Scalar>(
    space: &Space,
    max: &SphericalMax<T>,
    card: usize,
    tolerance: f64,
) -> Result<SphSumReport> {
    let d = space.dim();
    if d < 2 {
        return Err(Error::DimensionMismatch("spherical-sum bound needs d >= 2".into()));
    }
    let (quantity, value) = if d % 2 == 1 {
        (SphericalQuantity::All, max.value_all)
    } else {
        (SphericalQuantity::Star, max.value_star)
    };
    let q = space.q() as f64;
    let qd = space.size() as f64;
    let n = card as f64;
    let trivial_cap = qd * n;
    let decay_cap = 2.0 * qd / q * n + 2.0 * q.powf((d as f64 - 1.0) / 2.0) * n * n;
    let lhs = scaled_max(space, value);
    Ok(SphSumReport {
        quantity,
        trivial_cap,
        decay_cap,
        bound: Inequality::check(lhs, trivial_cap.min(decay_cap), tolerance),
    })
}

/// Ebar x A, with A as the last coordinate.
pub fn compose_product(space: &Space, ebar: &PointSet, a: &[Elem]) -> Result<PointSet> {
    let d = space.dim();
    if d < 2 || ebar.dim() != d - 1 || ebar.universe() * space.q() != space.size() {
        return Err(Error::DimensionMismatch(format!(
            "base set has d = {}, product space has d = {d}",
            ebar.dim()
        )));
    }
    let stride = ebar.universe();
    let mut out = PointSet::empty(space);
    for &s in a {
        space.field().elem(s.0)?;
        for x in ebar.iter() {
            out.insert(x + stride * s.index());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProductReport {
    pub card_base: usize,
    pub card_factor: usize,
    /// q^{2d} M(Ebar x A) <= q^{2d} 2 q^{-d-1} |A|^2 |Ebar|
    pub bound: Inequality,
}

/// M(Ebar x A) <= 2 q^{-d-1} |A|^2 |Ebar|.
pub fn product_bound_check<T: Scalar>(
    fourier: &Fourier<T>,
    ebar: &PointSet,
    a: &[Elem],
    tolerance: f64,
) -> Result<ProductReport> {
    let space = fourier.space();
    let mut factor = a.to_vec();
    factor.sort_unstable();
    factor.dedup();
    let e = compose_product(space, ebar, &factor)?;
    let max = spherical_max(fourier, &fourier.dft_set(&e)?);
    let qd = space.size() as f64;
    let q = space.q() as f64;
    let na = factor.len() as f64;
    let rhs = 2.0 * qd / q * na * na * ebar.card() as f64;
    Ok(ProductReport {
        card_base: ebar.card(),
        card_factor: factor.len(),
        bound: Inequality::check(scaled_max(space, max.value_all), rhs, tolerance),
    })
}

/// |Delta(E,F)| computed by pair enumeration alongside the analysis.
pub fn measured_delta(space: &Space, e: &PointSet, f: &PointSet) -> Result<usize> {
    distance_count(space, e, f)
}
