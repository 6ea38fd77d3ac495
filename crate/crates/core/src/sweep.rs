//! The verification sweep: every check over a grid of fields, dimensions and
//! seeded instances, collected into one [`ReportDocument`].

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{monotonicity_audit, verify_with_measured, TheoremId};
use crate::char_sums::{gauss_sum, kloosterman, salie};
use crate::character::AdditiveCharacter;
use crate::distance::{
    cauchy_schwarz_check, evencor_from, evencor_hypothesis, l2_bounds_from, nu_brute,
    nu_from_spectra, product_bound_check, restriction_from, spherical_trivial_check,
    sph_sum_from, Inequality, PairAnalysis,
};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldSpec};
use crate::fourier::{decay_audit, to_indicator, Fourier};
use crate::geometry::{sphere_card_bound_check, Space};
use crate::pointset::PointSet;
use crate::report::{CheckRecord, ReportDocument, RuntimeInfo, Verdict};
use crate::setgen::{derive_seed, isotropic_set, product_set, random_set, SplitMix64};
use crate::tolerance::DEFAULT_TOLERANCE;

/// Cap on |E| and |F| for randomly sized sweep instances.
pub const SWEEP_SET_CAP: usize = 2_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// (p, k) pairs.
    pub fields: Vec<(u64, u32)>,
    pub dims: Vec<usize>,
    /// Random instances per (field, d).
    pub instances: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Worker threads; 0 means one per available core.
    #[serde(skip)]
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            fields: vec![(3, 1), (5, 1), (7, 1), (3, 2)],
            dims: vec![2, 3],
            instances: 100,
            seed: 0,
            tolerance: DEFAULT_TOLERANCE,
            jobs: 0,
        }
    }
}

pub type SweepReport = ReportDocument<SweepConfig>;

impl SweepConfig {
    /// Builds every field and space, rejecting anything outside the budgets.
    pub fn validate(&self) -> Result<Vec<Space>> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::OutOfRange(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.fields.is_empty() || self.dims.is_empty() {
            return Err(Error::OutOfRange("no fields or no dimensions".into()));
        }
        let mut spaces = Vec::new();
        for &(p, k) in &self.fields {
            let field = Arc::new(FieldSpec::new(p, k, None)?);
            for &d in &self.dims {
                let space = Space::new(field.clone(), d)?;
                space.require_fourier_budget()?;
                spaces.push(space);
            }
        }
        Ok(spaces)
    }
}

fn scope_key(space: &Space, scope: &str, check: &str) -> String {
    let f = space.field();
    format!(
        "p{:05}k{}d{}/{scope}/{check}",
        f.p(),
        f.k(),
        space.dim()
    )
}

fn base_record(space: &Space, scope: &str, check: &str, anchor: &str) -> CheckRecord {
    let f = space.field();
    CheckRecord::new(scope_key(space, scope, check), check, anchor)
        .param("p", f.p())
        .param("k", f.k())
        .param("q", f.q())
        .param("d", space.dim())
}

fn ineq(rec: CheckRecord, i: &Inequality) -> CheckRecord {
    rec.passed(i.holds)
        .slack(i.slack)
        .param("lhs", i.lhs)
        .param("rhs", i.rhs)
}

fn timed(start: Instant, mut recs: Vec<CheckRecord>) -> Vec<CheckRecord> {
    let us = start.elapsed().as_micros() as u64;
    recs.iter_mut().for_each(|r| r.runtime_us = us);
    recs
}

fn error_record(rec: CheckRecord, err: &Error) -> CheckRecord {
    let v = match err {
        Error::HypothesisNotMet(_) => Verdict::Unmet,
        _ => Verdict::Fail,
    };
    let rec = rec.verdict(v).detail(err.to_string());
    match err {
        Error::ResidualTooLarge { residual, .. } => rec.residual(*residual),
        _ => rec,
    }
}

/// Checks that depend on the field only.
fn field_checks(field: &Arc<FieldSpec>, dim_for_key: &Space, tol: f64) -> Vec<CheckRecord> {
    let start = Instant::now();
    let q = field.order();
    let mut out = Vec::new();
    let mut chars = vec![(1u32, AdditiveCharacter::<f64>::canonical(field.clone()))];
    if let Ok(c) = AdditiveCharacter::twisted(field.clone(), field.from_int(2)) {
        chars.push((2, c));
    }
    let scope = "field";
    for (c, chi) in &chars {
        let g = gauss_sum(chi);
        let residual = (g.magnitude * g.magnitude - q as f64).abs();
        out.push(
            base_record(dim_for_key, scope, &format!("gauss_magnitude_c{c}"), "|G|^2 = q")
                .param("twist", *c)
                .residual(residual)
                .passed(residual <= tol),
        );
    }
    // Exhaustive over a, b != 0 up to q = 81, sampled above.
    let chi = &chars[0].1;
    let units: Vec<Elem> = field.units().collect();
    let pairs: Vec<(Elem, Elem)> = if q <= 81 {
        units
            .iter()
            .flat_map(|&a| units.iter().map(move |&b| (a, b)))
            .collect()
    } else {
        let mut rng = SplitMix64::new(q as u64);
        (0..400)
            .map(|_| {
                let a = units[rng.below(units.len() as u64) as usize];
                let b = units[rng.below(units.len() as u64) as usize];
                (a, b)
            })
            .collect()
    };
    let cap = 2.0 * (q as f64).sqrt();
    for (name, anchor, sum) in [
        ("kloosterman_bound", "|K(a,b)| <= 2 sqrt(q)", kloosterman::<f64> as fn(_, _, _) -> _),
        ("salie_bound", "|S(a,b)| <= 2 sqrt(q)", salie::<f64>),
    ] {
        let worst = pairs
            .iter()
            .map(|&(a, b)| sum(chi, a, b).map(|r| r.magnitude).unwrap_or(f64::NAN))
            .fold(0f64, f64::max);
        out.push(
            base_record(dim_for_key, scope, name, anchor)
                .param("pairs", pairs.len())
                .param("max_abs", worst)
                .slack(cap - worst)
                .passed(worst <= cap + tol),
        );
    }
    timed(start, out)
}

/// Checks on the transform engine for one (field, d).
fn space_checks(fourier: &Fourier<f64>, tol: f64, seed: u64) -> Vec<CheckRecord> {
    let start = Instant::now();
    let space = fourier.space();
    let scope = "space";
    let mut out = Vec::new();
    let qd = space.size() as f64;

    // closed-form sphere transform against the DFT of each enumerated sphere
    let mut worst = 0f64;
    for t in space.field().elements() {
        let members = fourier.spheres().members(t).iter().map(|&x| x as usize);
        let set = PointSet::from_indices(space, members).expect("sphere in range");
        let spec = fourier.dft_set(&set).expect("budget checked");
        for (m, z) in spec.values().iter().enumerate() {
            worst = worst.max((*z - fourier.sphere_ft_at(t, m)).norm());
        }
    }
    out.push(
        base_record(space, scope, "sphere_ft_closed_form", "sphere transform closed form")
            .residual(worst * qd)
            .passed(worst * qd <= tol),
    );

    let mut rng = SplitMix64::new(seed);
    let mut worst = 0f64;
    for _ in 0..32 {
        let m = space.decode(rng.below(space.size() as u64) as usize);
        let m2 = space.decode(rng.below(space.size() as u64) as usize);
        let a = fourier.sphere_ft_correlation(&m, &m2);
        let b = fourier.sphere_ft_correlation_direct(&m, &m2);
        worst = worst.max((a - b).norm());
    }
    out.push(
        base_record(space, scope, "sphere_ft_correlation", "sum over radii of sphere transform products")
            .residual(worst * qd)
            .passed(worst * qd <= tol),
    );

    let r = fourier.orthogonality_residual();
    out.push(
        base_record(space, scope, "orthogonality", "character orthogonality")
            .residual(r)
            .passed(r <= tol),
    );

    let audit = decay_audit(fourier, tol);
    out.push(
        base_record(space, scope, "sphere_ft_decay_exceptional", "sphere transform decay, t = 0 and ||m|| = 0")
            .param("pairs", audit.exceptional.pairs)
            .param("max_abs", audit.exceptional.max_abs)
            .slack((audit.exceptional.cap - audit.exceptional.max_abs) * qd)
            .passed(audit.exceptional.pass),
    );
    out.push(
        base_record(space, scope, "sphere_ft_decay_generic", "sphere transform decay, remaining (t, m)")
            .param("pairs", audit.generic.pairs)
            .param("max_abs", audit.generic.max_abs)
            .slack((audit.generic.cap - audit.generic.max_abs) * qd)
            .passed(audit.generic.pass),
    );

    out.push(
        base_record(space, scope, "sphere_cardinality", "|S_t| <= 2 q^{d-1}")
            .param("cards", fourier.spheres().cards())
            .passed(sphere_card_bound_check(fourier.spheres())),
    );

    let rec = base_record(space, scope, "isotropic_witness", "isotropic set has one distance");
    out.push(match isotropic_set(space) {
        Ok(e) => {
            let delta = crate::distance::distance_count(space, &e, &e).unwrap_or(0);
            let expect = space.q().pow(space.dim() as u32 / 2);
            rec.param("card", e.card())
                .param("delta", delta)
                .passed(e.card() == expect && delta == 1)
        }
        Err(err) => rec.verdict(Verdict::Unmet).detail(err.to_string()),
    });

    // the nu identity does not depend on the nontrivial character
    let rec = base_record(space, scope, "twist_invariance", "distance counts under a twisted character");
    let field = space.field();
    let twisted = AdditiveCharacter::<f64>::twisted(field.clone(), field.from_int(2))
        .and_then(|chi| Fourier::new(space.clone(), chi));
    out.push(match twisted {
        Ok(tf) => {
            let n = space.size().min(SWEEP_SET_CAP);
            let e = random_set(space, 1 + rng.below(n as u64) as usize, rng.next_u64()).expect("n <= q^d");
            let f = random_set(space, 1 + rng.below(n as u64) as usize, rng.next_u64()).expect("n <= q^d");
            let brute = nu_brute(space, &e, &f);
            let spec = tf.dft_set(&e).and_then(|eh| Ok((eh, tf.dft_set(&f)?)));
            match (brute, spec) {
                (Ok(brute), Ok((eh, fh))) => match nu_from_spectra(&tf, &eh, &fh, tol) {
                    Ok(nu) => rec.passed(nu == brute),
                    Err(err) => error_record(rec, &err),
                },
                (Err(err), _) | (_, Err(err)) => error_record(rec, &err),
            }
        }
        Err(err) => error_record(rec, &err),
    });

    let q = space.q() as u64;
    let d = space.dim();
    let top = space.size() as u64;
    for theorem in TheoremId::ALL {
        let mut bad = None;
        for ne in [1, 2, q, top / 2, top] {
            let na = (theorem == TheoremId::Main3).then_some(ne.min(q));
            if let Some(b) = monotonicity_audit(theorem, q, d, ne, na) {
                bad = Some((ne, b));
                break;
            }
        }
        let rec = base_record(space, scope, &format!("monotone_{}", theorem.as_str().to_lowercase()), "bound nondecreasing in |F|")
            .param("theorem", theorem.as_str());
        out.push(match bad {
            None => rec.passed(true),
            Some((ne, (nf, a, b))) => rec
                .passed(false)
                .detail(format!("|E| = {ne}: value drops from {a} to {b} at |F| = {nf}")),
        });
    }
    timed(start, out)
}

fn random_card(rng: &mut SplitMix64, lo: usize, hi: usize) -> usize {
    lo + rng.below((hi - lo + 1) as u64) as usize
}

/// Sizes with |E||F| >= 16 q^d, if the space is large enough to allow it.
fn feasible_sizes(rng: &mut SplitMix64, space: &Space) -> Option<(usize, usize)> {
    let n = space.size();
    let need = 16 * n;
    let cap = n.min(SWEEP_SET_CAP);
    if cap * cap < need {
        return None;
    }
    let ne = random_card(rng, need.div_ceil(cap), cap);
    let nf = random_card(rng, need.div_ceil(ne), cap);
    Some((ne, nf))
}

struct Instance<'a> {
    fourier: &'a Fourier<f64>,
    index: usize,
    tol: f64,
}

impl Instance<'_> {
    fn scope(&self) -> String {
        format!("i{:05}", self.index)
    }

    fn record(&self, check: &str, anchor: &str) -> CheckRecord {
        base_record(self.fourier.space(), &self.scope(), check, anchor).param("instance", self.index)
    }

    fn run(&self, seed: u64) -> Vec<CheckRecord> {
        let start = Instant::now();
        let fr = self.fourier;
        let space = fr.space();
        let tol = self.tol;
        let mut rng = SplitMix64::new(seed);
        let cap = space.size().min(SWEEP_SET_CAP);
        let ne = random_card(&mut rng, 1, cap);
        let nf = random_card(&mut rng, 1, cap);
        let e = random_set(space, ne, rng.next_u64()).expect("n <= q^d");
        let f = random_set(space, nf, rng.next_u64()).expect("n <= q^d");
        let mut out = Vec::new();

        let analysis = match PairAnalysis::new(fr, &e, &f) {
            Ok(a) => a,
            Err(err) => {
                out.push(error_record(self.record("pair_analysis", "pair analysis"), &err));
                return timed(start, out);
            }
        };
        let sizes = |r: CheckRecord| r.param("card_e", ne).param("card_f", nf);

        let rec = sizes(self.record("nu_identity", "nu through the Fourier identity"));
        out.push(match nu_from_spectra(fr, &analysis.e_hat, &analysis.f_hat, tol) {
            Ok(nu) => {
                let same = nu == analysis.nu;
                rec.passed(same).detail(if same { String::new() } else { format!("brute {:?} vs fourier {:?}", analysis.nu.counts, nu.counts) })
            }
            Err(err) => error_record(rec, &err),
        });

        let cs = cauchy_schwarz_check(&analysis.nu, ne, nf, analysis.delta);
        out.push(
            sizes(self.record("nu_totals", "sum_t nu(t) = |E||F|")).passed(cs.total_matches),
        );
        out.push(ineq(
            sizes(self.record("cauchy_schwarz_all", "|E|^2|F|^2 <= |Delta| sum nu^2")),
            &cs.all_radii,
        ));
        out.push(ineq(
            sizes(self.record("cauchy_schwarz_nonzero", "(|E||F| - nu(0))^2 <= |Delta| sum_{t != 0} nu^2")),
            &cs.nonzero_radii,
        ));

        let l2 = l2_bounds_from(space, &analysis, tol);
        out.push(ineq(sizes(self.record("l2_bound_m", "sum nu^2 bound with M(E)")), &l2.l1));
        out.push(ineq(
            sizes(self.record("l2_bound_m_star", "sum nu^2 bound with M*(E) and the zero sphere")),
            &l2.l2,
        ));

        let (triv, star) = spherical_trivial_check(space, &analysis.max_e, ne, tol);
        out.push(ineq(sizes(self.record("spherical_max_trivial", "M(E) <= q^{-d}|E|")), &triv));
        out.push(ineq(sizes(self.record("spherical_max_order", "M*(E) <= M(E)")), &star));

        let rec = sizes(self.record("sph_sum_bound", "spherical sum bound"));
        out.push(match sph_sum_from(space, &analysis.max_e, ne, tol) {
            Ok(r) => ineq(rec, &r.bound).param("quantity", format!("{:?}", r.quantity)),
            Err(err) => error_record(rec, &err),
        });

        if space.dim() == 2 {
            let r = restriction_from(space, &analysis.max_e, ne, tol);
            out.push(ineq(sizes(self.record("restriction", "M*(E) <= sqrt(3) q^{-3} |E|^{3/2}")), &r));
        }

        let rec = sizes(self.record("fourier_inversion", "inverse transform recovers E"));
        out.push(match fr.inverse_dft(&analysis.e_hat).and_then(|v| to_indicator(space, &v, tol)) {
            Ok(back) => rec.passed(back == e),
            Err(err) => error_record(rec, &err),
        });
        let pr = fr.plancherel_residual(&analysis.e_hat, ne);
        out.push(
            sizes(self.record("plancherel", "q^d sum |E^|^2 = |E|"))
                .residual(pr)
                .passed(pr <= tol),
        );

        for theorem in [TheoremId::Main1, TheoremId::Main2D2Nonsquare, TheoremId::Shparlinski, TheoremId::Dietmann] {
            out.push(self.bound_record(theorem, &e, &f, analysis.delta as u64));
        }

        // even-dimension statements need |E||F| >= 16 q^d
        let rec = self.record("evencor", "(|E||F| - nu(0))^2 >= |E|^2|F|^2 / 36 for even d");
        match feasible_sizes(&mut rng, space).filter(|_| space.dim() % 2 == 0) {
            Some((ne2, nf2)) => {
                let e2 = random_set(space, ne2, rng.next_u64()).expect("n <= q^d");
                let f2 = random_set(space, nf2, rng.next_u64()).expect("n <= q^d");
                let a2 = PairAnalysis::new(fr, &e2, &f2);
                match a2.and_then(|a| evencor_from(space, &a, tol).map(|r| (a, r))) {
                    Ok((a, r)) => {
                        out.push(ineq(rec.param("card_e", ne2).param("card_f", nf2), &r.mass_off_zero));
                        let second = self
                            .record("evencor_zero_sphere", "zero-sphere pairing against nu(0) for even d")
                            .param("card_e", ne2)
                            .param("card_f", nf2);
                        out.push(ineq(second, &r.zero_sphere));
                        for theorem in [TheoremId::Main2, TheoremId::Main2D2] {
                            out.push(self.bound_record(theorem, &e2, &f2, a.delta as u64));
                        }
                        let (small, large) = if ne2 <= nf2 { (&e2, &f2) } else { (&f2, &e2) };
                        let delta = crate::distance::distance_count(space, small, large).unwrap_or(0);
                        out.push(self.bound_record(TheoremId::Corollary, small, large, delta as u64));
                    }
                    Err(err) => out.push(error_record(rec, &err)),
                }
            }
            None => {
                let why = evencor_hypothesis(space, cap, cap)
                    .err()
                    .unwrap_or_else(|| Error::HypothesisNotMet("no feasible sizes".into()));
                out.push(rec.verdict(Verdict::Unmet).detail(why.to_string()));
                for theorem in [TheoremId::Main2, TheoremId::Main2D2, TheoremId::Corollary] {
                    out.push(self.bound_record(theorem, &e, &f, analysis.delta as u64));
                }
            }
        }

        // product sets
        let q = space.q();
        let na = random_card(&mut rng, 1, q);
        let a: Vec<Elem> = random_set(&Space::new(space.field().clone(), 1).expect("q <= budget"), na, rng.next_u64())
            .expect("n <= q")
            .iter()
            .map(|x| Elem(x as u32))
            .collect();
        let base = Space::new(space.field().clone(), space.dim().saturating_sub(1).max(1)).expect("smaller space");
        if space.dim() >= 2 {
            let nb = random_card(&mut rng, 0, base.size().min(SWEEP_SET_CAP));
            let ebar = random_set(&base, nb, rng.next_u64()).expect("n <= q^{d-1}");
            let factor_len = random_card(&mut rng, 0, q);
            let factor = &a[..factor_len.min(a.len())];
            let rec = self
                .record("product_bound", "M(Ebar x A) <= 2 q^{-d-1} |A|^2 |Ebar|")
                .param("card_base", nb)
                .param("card_factor", factor.len());
            out.push(match product_bound_check(fr, &ebar, factor, tol) {
                Ok(r) => ineq(rec, &r.bound),
                Err(err) => error_record(rec, &err),
            });
        }
        let prod = product_set(space, &a).expect("nonempty factor");
        let delta = crate::distance::distance_count(space, &prod, &f).unwrap_or(0);
        out.push(self.bound_record(TheoremId::Main3, &prod, &f, delta as u64).param("card_a", na));

        timed(start, out)
    }

    fn bound_record(&self, theorem: TheoremId, e: &PointSet, f: &PointSet, measured: u64) -> CheckRecord {
        let space = self.fourier.space();
        let r = verify_with_measured(space, e, f, theorem, measured);
        let rec = self
            .record(&format!("bound_{}", theorem.as_str().to_lowercase()), "lower bound on |Delta(E,F)|")
            .param("theorem", theorem.as_str())
            .param("card_e", r.card_e)
            .param("card_f", r.card_f)
            .param("bound", r.bound_value)
            .param("measured", r.measured);
        if !r.hypotheses_met {
            rec.verdict(Verdict::Unmet).detail(r.detail)
        } else {
            rec.passed(r.pass).slack(r.slack())
        }
    }
}

enum Task {
    Field(Arc<FieldSpec>, Space),
    Space(usize),
    Instance(usize, usize),
}

/// Runs the sweep. Configuration problems are returned as errors; check
/// failures are recorded in the report.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let started = Instant::now();
    let spaces = config.validate()?;
    let fouriers: Vec<Fourier<f64>> = spaces
        .into_iter()
        .map(Fourier::canonical)
        .collect::<Result<_>>()?;

    let mut tasks = Vec::new();
    let mut seen_fields: Vec<Arc<FieldSpec>> = Vec::new();
    for (s, fr) in fouriers.iter().enumerate() {
        let field = fr.space().field();
        if !seen_fields.iter().any(|f| f == field) {
            seen_fields.push(field.clone());
            let key_space = Space::new(field.clone(), 1)?;
            tasks.push(Task::Field(field.clone(), key_space));
        }
        tasks.push(Task::Space(s));
        tasks.extend((0..config.instances).map(|i| Task::Instance(s, i)));
    }

    let seed_for = |fr: &Fourier<f64>, label: u64| {
        let f = fr.space().field();
        derive_seed(
            config.seed,
            &[f.p() as u64, f.k() as u64, fr.space().dim() as u64, label],
        )
    };
    let tol = config.tolerance;
    let run = || -> Vec<CheckRecord> {
        tasks
            .par_iter()
            .flat_map_iter(|task| match task {
                Task::Field(field, key) => field_checks(field, key, tol),
                Task::Space(s) => {
                    let fr = &fouriers[*s];
                    space_checks(fr, tol, seed_for(fr, u64::MAX))
                }
                Task::Instance(s, i) => {
                    let fr = &fouriers[*s];
                    Instance {
                        fourier: fr,
                        index: *i,
                        tol,
                    }
                    .run(seed_for(fr, *i as u64))
                }
            })
            .collect()
    };
    let jobs = if config.jobs == 0 {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    } else {
        config.jobs
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    let records = pool.install(run);
    Ok(ReportDocument::new(
        config.clone(),
        records,
        RuntimeInfo {
            jobs,
            total_ms: started.elapsed().as_millis() as u64,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SweepConfig {
        SweepConfig {
            fields: vec![(3, 1), (5, 1)],
            dims: vec![2, 3],
            instances: 4,
            seed: 11,
            tolerance: DEFAULT_TOLERANCE,
            jobs: 2,
        }
    }

    #[test]
    fn small_sweep_is_green_and_keys_are_unique() {
        let r = run_sweep(&small()).unwrap();
        let fails: Vec<_> = r
            .records
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .collect();
        assert!(fails.is_empty(), "{fails:#?}");
        assert_eq!(r.exit_code(), 0);
        let mut keys: Vec<_> = r.records.iter().map(|r| r.key.as_str()).collect();
        let n = keys.len();
        keys.dedup();
        assert_eq!(keys.len(), n);
    }

    #[test]
    fn config_errors() {
        let mut c = small();
        c.fields = vec![(2, 1)];
        assert_eq!(run_sweep(&c).unwrap_err(), Error::EvenCharacteristic(2));
        let mut c = small();
        c.tolerance = 0.0;
        assert!(run_sweep(&c).is_err());
        let mut c = small();
        c.dims = vec![13];
        assert!(matches!(run_sweep(&c), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn tiny_tolerance_fails() {
        let mut c = small();
        c.fields = vec![(5, 1)];
        c.dims = vec![2];
        c.tolerance = 1e-30;
        let r = run_sweep(&c).unwrap();
        assert_eq!(r.exit_code(), 1);
        assert!(r.summary.failures_by_check.contains_key("nu_identity"));
    }

    #[test]
    fn jobs_do_not_change_results() {
        let mut a = small();
        a.jobs = 1;
        let mut b = small();
        b.jobs = 3;
        let ra = run_sweep(&a).unwrap().without_runtime();
        let rb = run_sweep(&b).unwrap().without_runtime();
        assert_eq!(ra.to_json(), rb.to_json());
    }
}
