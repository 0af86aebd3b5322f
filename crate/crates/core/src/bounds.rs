//! Lower and upper bounds on `N(eps, d)` and `disp*(n, d)`.
//!
//! Logarithms are natural except in the AHR bound, which uses `log2 d`.
//! Bounds whose absolute constant is not known are evaluated with a
//! configurable stand-in (default 1) and carry `constant_known = false`.

use std::f64::consts::E;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::geometry::format_coord;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Target {
    #[serde(rename = "N(eps,d)")]
    MinPoints,
    #[serde(rename = "disp*(n,d)")]
    MinDispersion,
}

/// Which half of the `k`-indexed bound produced the value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    /// `eps >= d^{-k^2/(k+1)}`: `c eps^{-(k+1)/k}`.
    #[serde(rename = "i")]
    One,
    /// `eps < d^{-k^2/(k+1)}`: `c' d^{k/(k+1)} / eps`.
    #[serde(rename = "ii")]
    Two,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub direction: Direction,
    pub target: Target,
    /// Never negative; a formula that goes negative is reported as 0.
    pub value: f64,
    pub valid: bool,
    /// Violated validity conditions, empty when `valid`.
    pub violated: Vec<String>,
    pub constant_known: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<Part>,
    /// For the `k`-indexed bound: whether `d >= (k+1)^2`, which implies the
    /// dimension condition.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sufficient_dimension: Option<bool>,
}

impl BoundReport {
    fn new(name: &str, direction: Direction, value: f64, violated: Vec<String>, constant_known: bool) -> Self {
        Self {
            name: name.to_string(),
            direction,
            target: Target::MinPoints,
            value: value.max(0.0),
            valid: violated.is_empty(),
            violated,
            constant_known,
            k_used: None,
            part: None,
            sufficient_dimension: None,
        }
    }

    /// Valid and free of stand-in constants.
    pub fn is_rigorous(&self) -> bool {
        self.valid && self.constant_known
    }
}

/// Stand-ins for absolute constants that are not known explicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StandInConstants {
    /// `c` in `N > c log d / (eps^2 log(1/eps))`.
    pub large_eps_c: f64,
    /// `C` in `N <= C log d log(1/eps) / eps^2`.
    pub upper_log_c: f64,
    /// `c` in `N <= c d^2 log d / eps`.
    pub bukh_chao_upper_c: f64,
}

impl Default for StandInConstants {
    fn default() -> Self {
        Self {
            large_eps_c: 1.0,
            upper_log_c: 1.0,
            bukh_chao_upper_c: 1.0,
        }
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Parameter(format!("eps must lie in (0,1), got {eps}")));
    }
    Ok(())
}

fn check_dim(d: usize, min: usize) -> Result<()> {
    if d < min {
        return Err(Error::Parameter(format!("dimension must be at least {min}, got {d}")));
    }
    Ok(())
}

/// Every lower bound on `N(eps, d)` from the literature handled here, in a
/// fixed order: elementary, Dumitrescu, AHR, Bukh–Chao, large-eps.
pub fn lower_bound_catalog(eps: f64, d: usize, constants: &StandInConstants) -> Result<Vec<BoundReport>> {
    check_eps(eps)?;
    check_dim(d, 1)?;
    let df = d as f64;
    let mut out = Vec::with_capacity(5);

    // disp* >= 1/(n+1)
    out.push(BoundReport::new(
        "elementary",
        Direction::Lower,
        1.0 / eps - 1.0,
        vec![],
        true,
    ));

    // disp* >= 5/(4(n+5)); false at d = 1, where disp*(n,1) = 1/(n+1).
    let mut violated = vec![];
    if d < 2 {
        violated.push(format!("d >= 2 fails: d = {d}"));
    }
    out.push(BoundReport::new(
        "dumitrescu",
        Direction::Lower,
        5.0 / (4.0 * eps) - 5.0,
        violated,
        true,
    ));

    let mut violated = vec![];
    if d < 2 {
        violated.push(format!("d >= 2 fails: d = {d}"));
    }
    if eps >= 0.25 {
        violated.push(format!("eps < 1/4 fails: eps = {eps}"));
    }
    out.push(BoundReport::new(
        "ahr",
        Direction::Lower,
        df.log2() / (8.0 * eps),
        violated,
        true,
    ));

    // eps <= (8d)^{-d}, compared in log space to avoid underflow.
    let mut violated = vec![];
    if eps.ln() > -df * (8.0 * df).ln() {
        violated.push(format!("eps <= (8d)^(-d) fails: eps = {eps}, d = {d}"));
    }
    out.push(BoundReport::new(
        "bukh-chao",
        Direction::Lower,
        df / (E * eps),
        violated,
        true,
    ));

    let mut violated = vec![];
    if d < 2 {
        violated.push(format!("d >= 2 fails: d = {d}"));
    }
    let lo = 1.0 / (4.0 * df.sqrt());
    if !(eps > lo && eps < 0.25) {
        violated.push(format!("eps in (1/(4 sqrt d), 1/4) = ({lo}, 0.25) fails: eps = {eps}"));
    }
    let value = constants.large_eps_c * df.ln() / (eps * eps * (1.0 / eps).ln());
    out.push(BoundReport::new("large-eps", Direction::Lower, value, violated, false));
    Ok(out)
}

/// Bukh–Chao: `disp*(n, d) >= (1/e) (2d/n) (1 - 4d / n^{1/d})`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DispersionLowerBound {
    pub value: f64,
    /// The formula is `<= 0` and says nothing.
    pub trivial: bool,
}

pub fn bc_dispersion_lower(n: usize, d: usize) -> Result<DispersionLowerBound> {
    if n == 0 || d == 0 {
        return Err(Error::Parameter("need n >= 1 and d >= 1".into()));
    }
    let (nf, df) = (n as f64, d as f64);
    let value = (1.0 / E) * (2.0 * df / nf) * (1.0 - 4.0 * df / nf.powf(1.0 / df));
    Ok(DispersionLowerBound {
        value,
        trivial: value <= 0.0,
    })
}

/// `disp*(n, d) >= 1/(n+1)`.
pub fn elementary_dispersion_lower(n: usize) -> f64 {
    1.0 / (n as f64 + 1.0)
}

/// `disp*(n, d) >= 5/(4(n+5))`, for `d >= 2`.
pub fn dumitrescu_dispersion_lower(n: usize) -> f64 {
    5.0 / (4.0 * (n as f64 + 5.0))
}

fn k_power(k: usize) -> f64 {
    (k as f64).powi(k as i32)
}

/// `1/(16 e k^k (k+1)) eps^{-(k+1)/k}`.
pub fn part_one_value(eps: f64, k: usize) -> f64 {
    let kf = k as f64;
    eps.powf(-(kf + 1.0) / kf) / (16.0 * E * k_power(k) * (kf + 1.0))
}

/// `1/(64 e k^k (k+1)) d^{k/(k+1)} / eps`.
pub fn part_two_value(eps: f64, d: usize, k: usize) -> f64 {
    let kf = k as f64;
    (d as f64).powf(kf / (kf + 1.0)) / eps / (64.0 * E * k_power(k) * (kf + 1.0))
}

/// `d^{-k^2/(k+1)}`, where the `k`-th bound switches from part (i) to (ii).
pub fn part_threshold(d: usize, k: usize) -> f64 {
    let kf = k as f64;
    (d as f64).powf(-kf * kf / (kf + 1.0))
}

/// Relative slack when comparing `eps` against [`part_threshold`], so that
/// `eps` given as the exact decimal threshold is not pushed to part (ii) by
/// rounding in `powf`.
const THRESHOLD_SLACK: f64 = 1e-12;

/// The `k`-th lower bound with explicit constants. Validity problems are
/// flagged in the report, never raised.
pub fn theorem_main_bound(eps: f64, d: usize, k: usize) -> Result<BoundReport> {
    check_eps(eps)?;
    check_dim(d, 1)?;
    if k == 0 {
        return Err(Error::Parameter("k must be at least 1".into()));
    }
    let kf = k as f64;
    let df = d as f64;
    let mut violated = vec![];
    let eps_max = 2f64.powi(-(k as i32) - 2);
    if eps >= eps_max {
        violated.push(format!("eps < 2^(-k-2) fails: eps = {eps}, 2^(-{}) = {eps_max}", k + 2));
    }
    let needed = df.powf(kf / (kf + 1.0)) + kf;
    if df < needed {
        violated.push(format!("d >= d^(k/(k+1)) + k fails: {d} < {needed}"));
    }
    let threshold = part_threshold(d, k);
    let (part, value) = if eps >= threshold * (1.0 - THRESHOLD_SLACK) {
        (Part::One, part_one_value(eps, k))
    } else {
        (Part::Two, part_two_value(eps, d, k))
    };
    let mut report = BoundReport::new("main", Direction::Lower, value, violated, true);
    report.k_used = Some(k);
    report.part = Some(part);
    report.sufficient_dimension = Some(d >= (k + 1) * (k + 1));
    Ok(report)
}

/// The `k` with `eps ∈ [d^{-k}, d^{-(k-1)})`.
pub fn select_k(eps: f64, d: usize) -> Result<usize> {
    check_eps(eps)?;
    check_dim(d, 2)?;
    let df = d as f64;
    let mut k = 1usize;
    while eps < 1.0 / df.powi(k as i32) {
        k += 1;
    }
    Ok(k)
}

/// Best `k`-indexed bound: `k` from [`select_k`]; if that report is not
/// valid, the valid report of largest value over `k' = 1..=k` (larger `k'`
/// on ties), or an explicit no-valid-bound report.
pub fn best_main_bound(eps: f64, d: usize) -> Result<BoundReport> {
    let k = select_k(eps, d)?;
    let first = theorem_main_bound(eps, d, k)?;
    if first.valid {
        return Ok(first);
    }
    let mut best: Option<BoundReport> = None;
    for kp in 1..k {
        let report = theorem_main_bound(eps, d, kp)?;
        if report.valid && best.as_ref().is_none_or(|b| report.value >= b.value) {
            best = Some(report);
        }
    }
    Ok(best.unwrap_or_else(|| {
        BoundReport::new(
            "main",
            Direction::Lower,
            0.0,
            vec![format!("no k in 1..={k} satisfies the validity conditions")],
            true,
        )
    }))
}

/// Upper bounds on `N(eps, d)`; both constants are stand-ins.
pub fn upper_bound_catalog(eps: f64, d: usize, constants: &StandInConstants) -> Result<Vec<BoundReport>> {
    check_eps(eps)?;
    check_dim(d, 2)?;
    let df = d as f64;
    Ok(vec![
        BoundReport::new(
            "upper-log",
            Direction::Upper,
            constants.upper_log_c * df.ln() * (1.0 / eps).ln() / (eps * eps),
            vec![],
            false,
        ),
        BoundReport::new(
            "bukh-chao-upper",
            Direction::Upper,
            constants.bukh_chao_upper_c * df * df * df.ln() / eps,
            vec![],
            false,
        ),
    ])
}

/// Exact `N(eps, 1)`: equispaced points reach dispersion `1/(n+1)`, and no
/// `n`-point set in `[0,1]` does better, so this is the least `n` with
/// `1/(n+1) <= eps`, i.e. `ceil(1/eps) - 1`.
pub fn n_exact_1d(eps: f64) -> Result<u64> {
    check_eps(eps)?;
    let fits = |n: u64| 1.0 / (n as f64 + 1.0) <= eps;
    let mut n = ((1.0 / eps).ceil() - 1.0).max(0.0) as u64;
    while n > 0 && fits(n - 1) {
        n -= 1;
    }
    while !fits(n) {
        n += 1;
    }
    Ok(n)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionRow {
    pub eps: f64,
    pub winner: String,
    /// `k` of the winning bound, when it is the `k`-indexed one.
    pub k: Option<usize>,
    pub value: f64,
    pub rigorous: bool,
    /// `k` chosen by [`best_main_bound`] at this `eps`, whether or not it
    /// won.
    pub main_k: Option<usize>,
}

/// For each `eps` on a log-spaced grid (ascending), the largest of the
/// `k`-indexed bound and the rigorous catalog bounds.
pub fn region_scan(d: usize, eps_min: f64, eps_max: f64, steps: usize) -> Result<Vec<RegionRow>> {
    if !(eps_min > 0.0 && eps_min < eps_max && eps_max < 1.0) {
        return Err(Error::Parameter(format!(
            "need 0 < eps_min < eps_max < 1, got [{eps_min}, {eps_max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::Parameter(format!("steps must be at least 2, got {steps}")));
    }
    check_dim(d, 1)?;
    let (la, lb) = (eps_min.ln(), eps_max.ln());
    let constants = StandInConstants::default();
    (0..steps)
        .map(|i| {
            let eps = match i {
                0 => eps_min,
                _ if i == steps - 1 => eps_max,
                _ => (la + (lb - la) * i as f64 / (steps - 1) as f64).exp(),
            };
            let main = if d >= 2 { Some(best_main_bound(eps, d)?) } else { None };
            let main_k = main.as_ref().and_then(|m| m.k_used);
            let candidates = main
                .into_iter()
                .chain(lower_bound_catalog(eps, d, &constants)?)
                .filter(BoundReport::is_rigorous);
            let mut winner: Option<BoundReport> = None;
            for report in candidates {
                if winner.as_ref().is_none_or(|w| report.value > w.value) {
                    winner = Some(report);
                }
            }
            Ok(match winner {
                Some(w) => RegionRow {
                    eps,
                    winner: w.name,
                    k: w.k_used,
                    value: w.value,
                    rigorous: true,
                    main_k,
                },
                None => RegionRow {
                    eps,
                    winner: "none".into(),
                    k: None,
                    value: 0.0,
                    rigorous: false,
                    main_k,
                },
            })
        })
        .collect()
}

/// CSV with header `eps,winner,k,value,rigorous`; numbers use 17
/// significant digits, an absent `k` is an empty field.
pub fn regions_to_csv(rows: &[RegionRow]) -> String {
    let mut out = String::from("eps,winner,k,value,rigorous\n");
    for row in rows {
        let k = row.k.map(|k| k.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_coord(row.eps),
            row.winner,
            k,
            format_coord(row.value),
            row.rigorous
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn find<'a>(reports: &'a [BoundReport], name: &str) -> &'a BoundReport {
        reports.iter().find(|r| r.name == name).unwrap()
    }

    #[test]
    fn catalog_examples() {
        let c = StandInConstants::default();
        let cat = lower_bound_catalog(0.1, 100, &c).unwrap();
        let ahr = find(&cat, "ahr");
        assert!((ahr.value - 8.3048).abs() < 1e-4);
        assert!(ahr.valid);
        assert!((find(&cat, "elementary").value - 9.0).abs() < 1e-12);
        assert!(!find(&cat, "large-eps").constant_known);
        assert!(!find(&cat, "bukh-chao").valid);

        let cat = lower_bound_catalog(0.3, 100, &c).unwrap();
        assert!(!find(&cat, "ahr").valid);
        assert_eq!(find(&cat, "dumitrescu").value, 0.0);

        assert!(lower_bound_catalog(1.0, 100, &c).is_err());
        assert!(lower_bound_catalog(0.0, 100, &c).is_err());
    }

    #[test]
    fn bukh_chao_lower_window() {
        let c = StandInConstants::default();
        // (8*2)^-2 = 1/256
        let cat = lower_bound_catalog(1.0 / 256.0, 2, &c).unwrap();
        assert!(find(&cat, "bukh-chao").valid);
        let cat = lower_bound_catalog(1.0 / 255.0, 2, &c).unwrap();
        assert!(!find(&cat, "bukh-chao").valid);
    }

    #[test]
    fn bukh_chao_dispersion() {
        let b = bc_dispersion_lower(1_000_000, 2).unwrap();
        assert!(rel(b.value, 1.4598e-6) < 1e-4);
        assert!(!b.trivial);
        let b = bc_dispersion_lower(10, 2).unwrap();
        assert!(b.value < 0.0 && b.trivial);
        // approaches 2d/(e n) from below
        let mut last_ratio = 0.0;
        for n in [1e6, 1e8, 1e10, 1e12] {
            let v = bc_dispersion_lower(n as usize, 2).unwrap().value;
            let ratio = v / (4.0 / (E * n));
            assert!(ratio < 1.0 && ratio > last_ratio);
            last_ratio = ratio;
        }
        assert!(last_ratio > 0.9999);
    }

    #[test]
    fn main_bound_examples() {
        let r = theorem_main_bound(1e-8, 1_000_000, 2).unwrap();
        assert_eq!(r.part, Some(Part::One));
        assert!(r.valid);
        assert!(rel(r.value, 1e12 / (192.0 * E)) < 1e-9);
        assert!(rel(r.value, 1.9158e9) < 1e-3);

        let r = theorem_main_bound(1e-9, 1_000_000, 2).unwrap();
        assert_eq!(r.part, Some(Part::Two));
        assert!(rel(r.value, 1e13 / (768.0 * E)) < 1e-9);
        assert!(rel(r.value, 4.7896e9) < 1e-3);

        let r = theorem_main_bound(0.2, 4, 1).unwrap();
        assert!(!r.valid);
        assert!(r.violated.iter().any(|v| v.contains("2^(-k-2)")));
    }

    #[test]
    fn best_bound_examples() {
        let r = best_main_bound(1e-8, 1_000_000).unwrap();
        assert_eq!((r.k_used, r.part), (Some(2), Some(Part::One)));

        let r = best_main_bound(1e-4, 1_000_000).unwrap();
        assert_eq!((r.k_used, r.part), (Some(1), Some(Part::Two)));
        assert!(rel(r.value, 1e7 / (128.0 * E)) < 1e-9);
        assert!(rel(r.value, 2.8735e4) < 1e-3);

        let r = best_main_bound(0.3, 4).unwrap();
        assert!(!r.valid);
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn k_selection_brackets_eps() {
        for d in [2usize, 10, 1000, 1_000_000] {
            for e in 1..60 {
                let eps = 10f64.powf(-e as f64 / 4.0);
                let k = select_k(eps, d).unwrap();
                let df = d as f64;
                assert!(eps >= 1.0 / df.powi(k as i32));
                assert!(k == 1 || eps < 1.0 / df.powi(k as i32 - 1));
            }
        }
        assert_eq!(select_k(1e-12, 1_000_000).unwrap(), 2);
    }

    #[test]
    fn fallback_to_smaller_k() {
        // d = 10, eps = 0.07: step 1 picks k = 2, but 0.07 >= 2^-4; k = 1 is valid.
        let r = best_main_bound(0.07, 10).unwrap();
        assert!(r.valid);
        assert_eq!(r.k_used, Some(1));
        // d = 3, eps = 0.2: k = 2 from step 1, and 0.2 >= 2^-3 rules out k = 1 too.
        let r = best_main_bound(0.2, 3).unwrap();
        assert!(!r.valid);
        assert_eq!(r.k_used, None);
    }

    #[test]
    fn upper_examples() {
        let c = StandInConstants::default();
        let up = upper_bound_catalog(0.1, 100, &c).unwrap();
        assert!(rel(up[0].value, 1060.45) < 1e-3);
        assert!(rel(up[0].value, 100f64.ln() * 10f64.ln() / 0.01) < 1e-12);
        assert!(rel(up[1].value, 4.6052e5) < 1e-4);
        assert!(up.iter().all(|r| !r.constant_known && r.direction == Direction::Upper));
        let up2 = upper_bound_catalog(0.05, 100, &c).unwrap();
        assert!(up2[0].value >= up[0].value && up2[1].value >= up[1].value);
    }

    #[test]
    fn exact_one_dimensional() {
        assert_eq!(n_exact_1d(0.1).unwrap(), 9);
        assert_eq!(n_exact_1d(0.25).unwrap(), 3);
        assert_eq!(n_exact_1d(1.0 / 3.0).unwrap(), 2);
        assert_eq!(n_exact_1d(0.9).unwrap(), 1);
        assert_eq!(n_exact_1d(0.5).unwrap(), 1);
        assert!(n_exact_1d(1.0).is_err());
    }

    #[test]
    fn region_rows() {
        let rows = region_scan(1_000_000, 1e-12, 1e-2, 11).unwrap();
        assert_eq!(rows.len(), 11);
        assert_eq!(rows[0].eps, 1e-12);
        assert_eq!(rows[10].eps, 1e-2);
        for pair in rows.windows(2) {
            assert!(pair[0].eps < pair[1].eps);
            assert!(pair[0].main_k >= pair[1].main_k);
        }
        let csv = regions_to_csv(&rows);
        assert!(csv.starts_with("eps,winner,k,value,rigorous\n"));
        assert_eq!(csv.lines().count(), 12);
        assert!(region_scan(10, 1e-3, 1e-2, 1).is_err());
        assert!(region_scan(10, 1e-2, 1e-3, 5).is_err());
    }
}
