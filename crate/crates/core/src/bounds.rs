//! Explicit lower bounds on |Delta(E, F)| and their comparison with measured
//! distance sets.
//!
//! Evaluators take cardinalities only. Case splits of the form
//! `|E| < q^{j/2}` are decided in integers as `|E|^2 < q^j`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::distance_count;
use crate::error::{Error, Result};
use crate::geometry::Space;
use crate::pointset::PointSet;
use crate::tolerance::BOUND_TOLERANCE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremId {
    Main1,
    Main2,
    Main2D2,
    Main2D2Nonsquare,
    Main3,
    Corollary,
    Shparlinski,
    Dietmann,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::Main1,
        TheoremId::Main2,
        TheoremId::Main2D2,
        TheoremId::Main2D2Nonsquare,
        TheoremId::Main3,
        TheoremId::Corollary,
        TheoremId::Shparlinski,
        TheoremId::Dietmann,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Main1 => "MAIN1",
            TheoremId::Main2 => "MAIN2",
            TheoremId::Main2D2 => "MAIN2_D2",
            TheoremId::Main2D2Nonsquare => "MAIN2_D2_NONSQUARE",
            TheoremId::Main3 => "MAIN3",
            TheoremId::Corollary => "COROLLARY",
            TheoremId::Shparlinski => "SHPARLINSKI",
            TheoremId::Dietmann => "DIETMANN",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == up)
            .ok_or_else(|| Error::Parse(format!("unknown theorem id {s:?}")))
    }
}

fn pow(q: u64, e: u32) -> u128 {
    (q as u128).pow(e)
}

/// n < q^{j/2}
fn below_half_power(n: u64, q: u64, j: u32) -> bool {
    (n as u128) * (n as u128) < pow(q, j)
}

fn half_power(q: u64, j: u32) -> f64 {
    (q as f64).powf(j as f64 / 2.0)
}

fn check_card(what: &str, n: u64, q: u64, d: usize) -> Result<()> {
    let size = pow(q, d as u32);
    if n as u128 > size {
        return Err(Error::OutOfRange(format!("{what} = {n} exceeds q^d = {size}")));
    }
    Ok(())
}

fn check_q(q: u64) -> Result<()> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::OutOfRange(format!("q = {q} is not an odd prime power")));
    }
    Ok(())
}

/// Which branch of a three-way case split on |E| applies.
pub fn case_of(q: u64, d: usize, ne: u64) -> u8 {
    let d = d as u32;
    if below_half_power(ne, q, d - 1) {
        1
    } else if below_half_power(ne, q, d + 1) {
        2
    } else {
        3
    }
}

/// The odd-dimension bound, branch `case` (1, 2 or 3).
pub fn main1_case_value(case: u8, q: u64, d: usize, ne: u64, nf: u64) -> f64 {
    let qf = q as f64;
    let (ne, nf) = (ne as f64, nf as f64);
    let second = match case {
        1 => ne * nf / (8.0 * qf.powi(d as i32 - 1)),
        2 => nf / (8.0 * half_power(q, d as u32 - 1)),
        _ => ne * nf / (2.0 * qf.powi(d as i32)),
    };
    (qf / 2.0).min(second)
}

/// Odd d >= 3, 1 <= |E| <= q^d.
pub fn bound_main1(q: u64, d: usize, ne: u64, nf: u64) -> Result<f64> {
    check_q(q)?;
    if d % 2 == 0 {
        return Err(Error::EvenDimension(d));
    }
    if d < 3 {
        return Err(Error::OutOfRange(format!("d = {d}, need d >= 3")));
    }
    if ne == 0 {
        return Err(Error::OutOfRange("|E| = 0, need |E| >= 1".into()));
    }
    check_card("|E|", ne, q, d)?;
    check_card("|F|", nf, q, d)?;
    Ok(main1_case_value(case_of(q, d, ne), q, d, ne, nf))
}

/// The even-dimension bound, branch `case`, without its hypothesis gate.
pub fn main2_case_value(case: u8, q: u64, d: usize, ne: u64, nf: u64) -> f64 {
    let qf = q as f64;
    let (ne, nf) = (ne as f64, nf as f64);
    let inner = match case {
        1 => qf,
        2 => qf.min(nf / (2.0 * half_power(q, d as u32 - 1))),
        _ => qf.min(2.0 * ne * nf / qf.powi(d as i32)),
    };
    inner / 144.0
}

fn product_hypothesis(q: u64, d: usize, ne: u64, nf: u64) -> Result<()> {
    let need = 16 * pow(q, d as u32);
    let have = ne as u128 * nf as u128;
    if have < need {
        return Err(Error::HypothesisNotMet(format!(
            "|E||F| = {have} < 16 q^d = {need}"
        )));
    }
    Ok(())
}

/// Even d, |E||F| >= 16 q^d.
pub fn bound_main2(q: u64, d: usize, ne: u64, nf: u64) -> Result<f64> {
    check_q(q)?;
    if d % 2 == 1 {
        return Err(Error::OddDimension(d));
    }
    check_card("|E|", ne, q, d)?;
    check_card("|F|", nf, q, d)?;
    product_hypothesis(q, d, ne, nf)?;
    Ok(main2_case_value(case_of(q, d, ne), q, d, ne, nf))
}

/// d = 2, |E||F| >= 16 q^2.
pub fn bound_main2_d2(q: u64, ne: u64, nf: u64) -> Result<f64> {
    check_q(q)?;
    check_card("|E|", ne, q, 2)?;
    check_card("|F|", nf, q, 2)?;
    product_hypothesis(q, 2, ne, nf)?;
    let qf = q as f64;
    let second = (ne as f64).sqrt() * nf as f64 / (3f64.sqrt() * qf);
    Ok((qf / 2.0).min(second) / 72.0)
}

/// True iff -1 is a square in F_q.
pub fn minus_one_is_square(q: u64) -> bool {
    q % 4 == 1
}

/// d = 2 and -1 a nonsquare; no size hypothesis.
pub fn bound_main2_d2_nonsquare(q: u64, ne: u64, nf: u64) -> Result<f64> {
    check_q(q)?;
    if minus_one_is_square(q) {
        return Err(Error::MinusOneIsSquare(q as u32));
    }
    check_card("|E|", ne, q, 2)?;
    check_card("|F|", nf, q, 2)?;
    let qf = q as f64;
    let second = (ne as f64).sqrt() * nf as f64 / (2.0 * (3f64.sqrt() + 1.0) * qf);
    Ok((qf / 2.0).min(second))
}

/// E = A^d with |A| = `na`.
pub fn bound_main3(q: u64, d: usize, na: u64, nf: u64) -> Result<f64> {
    check_q(q)?;
    if d < 2 {
        return Err(Error::OutOfRange(format!("d = {d}, need d >= 2")));
    }
    if na > q {
        return Err(Error::OutOfRange(format!("|A| = {na} exceeds q = {q}")));
    }
    check_card("|F|", nf, q, d)?;
    let qf = q as f64;
    // |E|^{1 - 1/d} = |A|^{d-1}
    let second = (na as f64).powi(d as i32 - 1) * nf as f64 / (4.0 * qf.powi(d as i32 - 1));
    Ok((qf / 2.0).min(second))
}

/// Constant used for the `>>` in the corollary.
pub fn corollary_constant(d: usize) -> f64 {
    if d % 2 == 0 {
        1.0 / 144.0
    } else {
        1.0 / 8.0
    }
}

/// c * min{q, |F| / q^{(d-1)/2}}, or c * min{q, |E|^{1/2}|F| / q} for d = 2.
/// Hypotheses: |E||F| >= 16 q^d and |E| <= |F|.
pub fn bound_corollary(q: u64, d: usize, ne: u64, nf: u64) -> Result<f64> {
    check_q(q)?;
    check_card("|E|", ne, q, d)?;
    check_card("|F|", nf, q, d)?;
    product_hypothesis(q, d, ne, nf)?;
    if ne > nf {
        return Err(Error::HypothesisNotMet(format!("|E| = {ne} > |F| = {nf}")));
    }
    let qf = q as f64;
    let second = if d == 2 {
        (ne as f64).sqrt() * nf as f64 / qf
    } else {
        nf as f64 / half_power(q, d as u32 - 1)
    };
    Ok(corollary_constant(d) * qf.min(second))
}

/// |E||F| q / (q^{d+1} + |E||F|).
pub fn bound_shparlinski(q: u64, d: usize, ne: u64, nf: u64) -> f64 {
    let ef = ne as f64 * nf as f64;
    let qf = q as f64;
    ef * qf / (qf.powi(d as i32 + 1) + ef)
}

/// The log-loss bound, with its hypotheses |F| >= |E| and
/// |E||F| >= (900 + ln q) q^d.
pub fn bound_dietmann(q: u64, d: usize, ne: u64, nf: u64) -> Result<f64> {
    check_q(q)?;
    if nf < ne {
        return Err(Error::HypothesisNotMet(format!("|F| = {nf} < |E| = {ne}")));
    }
    let qf = q as f64;
    let lq = qf.ln();
    let need = (900.0 + lq) * qf.powi(d as i32);
    let have = ne as f64 * nf as f64;
    if have < need {
        return Err(Error::HypothesisNotMet(format!(
            "|E||F| = {have} < (900 + ln q) q^d = {need:.1}"
        )));
    }
    let second = if d == 2 {
        (ne as f64).sqrt() * nf as f64 / (qf * lq)
    } else {
        nf as f64 / (half_power(q, d as u32 - 1) * lq)
    };
    Ok(qf.min(second))
}

/// Both prior-work values for one size pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Baselines {
    pub shparlinski: f64,
    pub dietmann: f64,
    pub dietmann_met: bool,
    pub dietmann_detail: String,
}

pub fn bound_baselines(q: u64, d: usize, ne: u64, nf: u64) -> Baselines {
    let shparlinski = bound_shparlinski(q, d, ne, nf);
    match bound_dietmann(q, d, ne, nf) {
        Ok(v) => Baselines {
            shparlinski,
            dietmann: v,
            dietmann_met: true,
            dietmann_detail: String::new(),
        },
        Err(e) => Baselines {
            shparlinski,
            dietmann: 0.0,
            dietmann_met: false,
            dietmann_detail: e.to_string(),
        },
    }
}

/// Evaluates `theorem` on cardinalities. For MAIN3, `ne` must be |A|^d and
/// `na` is passed separately.
pub fn evaluate(theorem: TheoremId, q: u64, d: usize, ne: u64, nf: u64, na: Option<u64>) -> Result<f64> {
    match theorem {
        TheoremId::Main1 => bound_main1(q, d, ne, nf),
        TheoremId::Main2 => bound_main2(q, d, ne, nf),
        TheoremId::Main2D2 | TheoremId::Main2D2Nonsquare if d != 2 => Err(Error::HypothesisNotMet(
            format!("d = {d}, the bound is for d = 2"),
        )),
        TheoremId::Main2D2 => bound_main2_d2(q, ne, nf),
        TheoremId::Main2D2Nonsquare => bound_main2_d2_nonsquare(q, ne, nf),
        TheoremId::Main3 => {
            let na = na.ok_or_else(|| Error::HypothesisNotMet("E is not a product set A^d".into()))?;
            bound_main3(q, d, na, nf)
        }
        TheoremId::Corollary => bound_corollary(q, d, ne, nf),
        TheoremId::Shparlinski => Ok(bound_shparlinski(q, d, ne, nf)),
        TheoremId::Dietmann => bound_dietmann(q, d, ne, nf),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem_id: TheoremId,
    pub q: u64,
    pub d: usize,
    pub card_e: u64,
    pub card_f: u64,
    pub hypotheses_met: bool,
    pub detail: String,
    pub bound_value: f64,
    pub measured: u64,
    pub pass: bool,
}

impl BoundReport {
    /// pass iff the hypotheses hold and measured >= bound - 1e-9.
    pub fn new(
        theorem_id: TheoremId,
        q: u64,
        d: usize,
        card_e: u64,
        card_f: u64,
        value: Result<f64>,
        measured: u64,
    ) -> Self {
        let (hypotheses_met, detail, bound_value) = match value {
            Ok(v) => (true, String::new(), v.max(0.0)),
            Err(e) => (false, e.to_string(), 0.0),
        };
        let pass = hypotheses_met && measured as f64 >= bound_value - BOUND_TOLERANCE;
        Self {
            theorem_id,
            q,
            d,
            card_e,
            card_f,
            hypotheses_met,
            detail,
            bound_value,
            measured,
            pass,
        }
    }

    pub fn slack(&self) -> f64 {
        self.measured as f64 - self.bound_value
    }
}

/// If `set` equals A^d for some A, returns |A|.
pub fn product_factor(space: &Space, set: &PointSet) -> Option<u64> {
    let q = space.q();
    let d = space.dim();
    let mut proj = vec![vec![false; q]; d];
    let mut coords = vec![crate::field::Elem::ZERO; d];
    for x in set.iter() {
        space.decode_into(x, &mut coords);
        for (row, c) in proj.iter_mut().zip(&coords) {
            row[c.index()] = true;
        }
    }
    if proj.iter().any(|row| row != &proj[0]) {
        return None;
    }
    let na = proj[0].iter().filter(|&&b| b).count() as u64;
    (na.pow(d as u32) == set.card() as u64).then_some(na)
}

/// Measures |Delta(E, F)| and evaluates `theorem`. Unmet hypotheses give a
/// report with `hypotheses_met = false`; only set/space mismatches are errors.
pub fn verify_bound(space: &Space, e: &PointSet, f: &PointSet, theorem: TheoremId) -> Result<BoundReport> {
    let measured = distance_count(space, e, f)? as u64;
    Ok(verify_with_measured(space, e, f, theorem, measured))
}

pub fn verify_with_measured(
    space: &Space,
    e: &PointSet,
    f: &PointSet,
    theorem: TheoremId,
    measured: u64,
) -> BoundReport {
    let q = space.q() as u64;
    let d = space.dim();
    let (ne, nf) = (e.card() as u64, f.card() as u64);
    let na = match theorem {
        TheoremId::Main3 => product_factor(space, e),
        _ => None,
    };
    let value = evaluate(theorem, q, d, ne, nf, na).map_err(|err| match err {
        Error::EvenDimension(_) | Error::OddDimension(_) | Error::MinusOneIsSquare(_) => {
            Error::HypothesisNotMet(err.to_string())
        }
        other => other,
    });
    BoundReport::new(theorem, q, d, ne, nf, value, measured)
}

/// Checks that the bound is nondecreasing in |F| on the integer grid
/// 0..=q^d wherever it is defined; returns the first decreasing step.
pub fn monotonicity_audit(theorem: TheoremId, q: u64, d: usize, ne: u64, na: Option<u64>) -> Option<(u64, f64, f64)> {
    let top = pow(q, d as u32) as u64;
    let mut prev: Option<f64> = None;
    for nf in 0..=top {
        let Ok(v) = evaluate(theorem, q, d, ne, nf, na) else {
            continue;
        };
        if let Some(p) = prev {
            if v < p - BOUND_TOLERANCE {
                return Some((nf, p, v));
            }
        }
        prev = Some(v);
    }
    None
}

/// Values of two adjacent case formulas at a breakpoint of the split.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseBoundary {
    pub theorem_id: TheoremId,
    /// ceil(q^{j/2})
    pub ne: u64,
    pub lower_case: u8,
    pub lower_value: f64,
    pub upper_value: f64,
}

/// Evaluates both neighbouring branches at |E| = ceil(q^{(d-1)/2}) and
/// ceil(q^{(d+1)/2}). Diagnostic only: the cases are not claimed continuous.
pub fn case_split_audit(theorem: TheoremId, q: u64, d: usize, nf: u64) -> Vec<CaseBoundary> {
    let eval: fn(u8, u64, usize, u64, u64) -> f64 = match theorem {
        TheoremId::Main1 => main1_case_value,
        TheoremId::Main2 => main2_case_value,
        _ => return Vec::new(),
    };
    [d as u32 - 1, d as u32 + 1]
        .into_iter()
        .zip([1u8, 2])
        .map(|(j, lower)| {
            let mut ne = half_power(q, j).ceil() as u64;
            while below_half_power(ne, q, j) {
                ne += 1;
            }
            while ne > 0 && !below_half_power(ne - 1, q, j) {
                ne -= 1;
            }
            CaseBoundary {
                theorem_id: theorem,
                ne,
                lower_case: lower,
                lower_value: eval(lower, q, d, ne, nf),
                upper_value: eval(lower + 1, q, d, ne, nf),
            }
        })
        .collect()
}

/// One row of the odd-dimension comparison against prior bounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BaselineRow {
    pub q: u64,
    pub d: usize,
    pub ne: u64,
    pub nf: u64,
    pub main1: f64,
    pub shparlinski: f64,
    pub dietmann_met: bool,
    /// main1 - shparlinski
    pub margin: f64,
    pub main1_exceeds: bool,
}

pub fn baseline_row(q: u64, d: usize, ne: u64, nf: u64) -> Result<BaselineRow> {
    let main1 = bound_main1(q, d, ne, nf)?;
    let base = bound_baselines(q, d, ne, nf);
    Ok(BaselineRow {
        q,
        d,
        ne,
        nf,
        main1,
        shparlinski: base.shparlinski,
        dietmann_met: base.dietmann_met,
        margin: main1 - base.shparlinski,
        main1_exceeds: main1 > base.shparlinski,
    })
}

/// Rows for |E| = q^{(d-1)/2} - 1, |F| = q^{(d+1)/2} over the given q.
pub fn baseline_table(d: usize, qs: &[u64]) -> Result<Vec<BaselineRow>> {
    if d % 2 == 0 {
        return Err(Error::EvenDimension(d));
    }
    qs.iter()
        .map(|&q| {
            let ne = pow(q, (d as u32 - 1) / 2) as u64 - 1;
            let nf = pow(q, (d as u32 + 1) / 2) as u64;
            baseline_row(q, d, ne, nf)
        })
        .collect()
}

pub fn render_baseline_csv(rows: &[BaselineRow]) -> String {
    let mut out = String::from("q,d,ne,nf,main1,shparlinski,dietmann_met,margin,main1_exceeds\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.6},{:.6},{},{:.6},{}\n",
            r.q, r.d, r.ne, r.nf, r.main1, r.shparlinski, r.dietmann_met, r.margin, r.main1_exceeds
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-9
    }

    #[test]
    fn main1_examples() {
        assert!(close(bound_main1(5, 3, 4, 100).unwrap(), 2.0));
        assert!(close(bound_main1(5, 3, 5, 100).unwrap(), 2.5));
        assert!(close(bound_main1(3, 3, 27, 27).unwrap(), 1.5));
        assert_eq!(bound_main1(5, 2, 4, 4), Err(Error::EvenDimension(2)));
        assert!(matches!(bound_main1(5, 3, 0, 4), Err(Error::OutOfRange(_))));
        assert!(matches!(bound_main1(5, 3, 126, 4), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn case_boundaries_use_lower_case_exactly() {
        // q^{(d-1)/2} = 5 and q^{(d+1)/2} = 25 at q = 5, d = 3
        assert_eq!(case_of(5, 3, 4), 1);
        assert_eq!(case_of(5, 3, 5), 2);
        assert_eq!(case_of(5, 3, 24), 2);
        assert_eq!(case_of(5, 3, 25), 3);
        // q^{1/2} ~ 2.236 and q^{3/2} ~ 11.18 at q = 5, d = 2
        assert_eq!(case_of(5, 2, 2), 1);
        assert_eq!(case_of(5, 2, 3), 2);
        assert_eq!(case_of(5, 2, 11), 2);
        assert_eq!(case_of(5, 2, 12), 3);
    }

    #[test]
    fn main2_examples() {
        // |E| = 20 >= q^{3/2}: third branch
        assert!(close(bound_main2(5, 2, 20, 20).unwrap(), 5.0 / 144.0));
        // second branch: q = 9, |E| = 25 in [3, 27)
        assert!(close(bound_main2(9, 2, 25, 52).unwrap(), (52.0 / 6.0) / 144.0));
        assert!(matches!(bound_main2(3, 2, 9, 9), Err(Error::HypothesisNotMet(_))));
        assert!(close(bound_main2(3, 4, 81, 81).unwrap(), 3.0 / 144.0));
        assert_eq!(bound_main2(3, 3, 27, 27), Err(Error::OddDimension(3)));
    }

    #[test]
    fn main2_d2_examples() {
        let v = bound_main2_d2_nonsquare(7, 25, 30).unwrap();
        assert!(close(v, 3.5));
        assert!(5.0 * 30.0 / (2.0 * (3f64.sqrt() + 1.0) * 7.0) > 3.9);
        assert_eq!(bound_main2_d2_nonsquare(5, 25, 25), Err(Error::MinusOneIsSquare(5)));
        assert!(close(bound_main2_d2(5, 20, 20).unwrap(), 2.5 / 72.0));
        assert!(matches!(bound_main2_d2(5, 10, 20), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn main3_examples() {
        assert!(close(bound_main3(7, 2, 3, 30).unwrap(), 90.0 / 28.0));
        assert_eq!(bound_main3(7, 2, 0, 30).unwrap(), 0.0);
        assert!(close(bound_main3(3, 3, 2, 27).unwrap(), 1.5));
        assert!(matches!(bound_main3(3, 3, 4, 27), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn baselines() {
        // q^{d+1} = 125 at q = 5, d = 2
        let b = bound_baselines(5, 2, 25, 25);
        assert!(close(b.shparlinski, 3125.0 / 750.0));
        assert!(!b.dietmann_met);
        assert_eq!(b.dietmann, 0.0);
        let (q, d) = (3u64, 2usize);
        let n = q.pow(d as u32);
        let expect = (q as f64).powi(2 * d as i32 + 1)
            / ((q as f64).powi(d as i32 + 1) + (q as f64).powi(2 * d as i32));
        assert!(close(bound_shparlinski(q, d, n, n), expect));
        for q in [3u64, 5, 7, 9, 11, 13] {
            for d in 2..5usize {
                let n = q.pow(d as u32);
                if n < 900 {
                    assert!(!bound_baselines(q, d, n, n).dietmann_met);
                }
            }
        }
    }

    #[test]
    fn report_pass_rule() {
        let r = BoundReport::new(TheoremId::Main1, 5, 3, 4, 100, Ok(2.0), 2);
        assert!(r.pass);
        let r = BoundReport::new(TheoremId::Main1, 5, 3, 4, 100, Ok(2.0 + 1e-12), 2);
        assert!(r.pass);
        let r = BoundReport::new(TheoremId::Main1, 5, 3, 4, 100, Ok(2.5), 2);
        assert!(!r.pass);
        let r = BoundReport::new(
            TheoremId::Main2,
            3,
            2,
            9,
            9,
            Err(Error::HypothesisNotMet("x".into())),
            3,
        );
        assert!(!r.hypotheses_met && !r.pass);
    }

    #[test]
    fn theorem_id_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.as_str().parse::<TheoremId>().unwrap(), t);
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(json, format!("\"{}\"", t.as_str()));
        }
        assert!("MAIN9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn monotone_in_f() {
        for t in TheoremId::ALL {
            for (q, d) in [(3u64, 2usize), (5, 2), (7, 2), (3, 3), (5, 3), (3, 4)] {
                let top = q.pow(d as u32);
                for ne in [1, 2, q, top / 2, top] {
                    let na = (t == TheoremId::Main3).then_some(ne.min(q));
                    assert_eq!(monotonicity_audit(t, q, d, ne, na), None, "{t} q={q} d={d} ne={ne}");
                }
            }
        }
    }

    #[test]
    fn case_split_audit_points() {
        let rows = case_split_audit(TheoremId::Main1, 5, 3, 100);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].ne, 5);
        assert_eq!(rows[1].ne, 25);
        let rows = case_split_audit(TheoremId::Main2, 5, 2, 100);
        assert_eq!(rows[0].ne, 3);
        assert_eq!(rows[1].ne, 12);
        assert!(case_split_audit(TheoremId::Main3, 5, 2, 100).is_empty());
    }

    #[test]
    fn baseline_table_crossover() {
        let rows = baseline_table(3, &[5, 7, 9, 11]).unwrap();
        assert!(close(rows[0].main1, 0.5));
        assert!(close(rows[0].shparlinski, 500.0 / 725.0));
        assert!(!rows[0].main1_exceeds);
        // q^2 - 7q - 1 > 0 from q = 8 on
        assert!(!rows[1].main1_exceeds);
        assert!(rows[2].main1_exceeds);
        assert!(rows[3].main1_exceeds);
    }
}
