//! Closed-form code selection and compression rates.
//!
//! Everything here is arithmetic on code parameters and binomial
//! probabilities; nothing is simulated. RS codes are planned with the
//! asymptotic list radius `n(1 - √(k/n))`, BCH codes with the radius
//! `(n/2)(1 - √(1 - 2D))` of a binary list decoder at relative distance D.
//! A plan also reports what the runtime RS decoder reaches at a finite
//! interpolation multiplicity, which is usually less.

use std::io;

use thiserror::Error;

use crate::bchcode::{bch_ladder, BchParams};
use crate::correlation::{binomial_window, conditional_entropy, Binomial, WindowPolicy};
use crate::crc::CrcSpec;
use crate::gf::Field;
use crate::listdecode::gs_radius;
use crate::rscode::CodeError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no {family} code of length {n} reaches radius {radius}")]
    Infeasible { family: Family, n: usize, radius: usize },
    #[error(transparent)]
    Code(#[from] CodeError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Rs,
    Bch,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Rs => "RS",
            Family::Bch => "BCH",
        })
    }
}

/// Planning radius `n(1 - √(k/n))` of an (n, k) RS code.
pub fn rs_planning_radius(n: usize, k: usize) -> f64 {
    n as f64 * (1.0 - (k as f64 / n as f64).sqrt())
}

/// Largest k with `n(1 - √(k/n)) >= t`, i.e. `⌊(n-t)²/n⌋` clamped to `[1, n]`.
pub fn choose_rs(n: usize, t: usize) -> Result<usize, PlanError> {
    if t >= n {
        return Err(PlanError::InvalidParameters(format!("radius {t} >= length {n}")));
    }
    Ok(((n - t) * (n - t) / n).clamp(1, n))
}

/// `n - 2t`, the largest MDS dimension with `d_min >= 2t + 1`, if positive.
pub fn choose_rs_unique(n: usize, t: usize) -> Option<usize> {
    n.checked_sub(2 * t).filter(|&k| k >= 1)
}

/// `(n/2)(1 - √(1 - 2D))`; defined for `D <= 1/2`.
pub fn wu_radius(n: usize, d: f64) -> Option<f64> {
    (d <= 0.5).then(|| n as f64 / 2.0 * (1.0 - (1.0 - 2.0 * d).sqrt()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BchChoice {
    pub n: usize,
    pub list: BchParams,
    /// Planning radius of `list`.
    pub tau: f64,
    /// Highest-rate code with `⌊(δ-1)/2⌋ >= T`, if any.
    pub unique: Option<BchParams>,
}

/// BCH ladder entries whose relative distance is inside the domain of the
/// list radius formula, `δ/n <= 1/2`. The repetition code is excluded.
fn usable_bch(m: u32) -> Result<(usize, Vec<BchParams>), PlanError> {
    let n = (1usize << m) - 1;
    let ladder = bch_ladder(m)?
        .into_iter()
        .filter(|p| 2 * p.delta <= n)
        .collect();
    Ok((n, ladder))
}

fn pick_bch(n: usize, ladder: &[BchParams], t: usize) -> Option<(BchParams, f64)> {
    ladder.iter().find_map(|p| {
        let tau = wu_radius(n, p.delta as f64 / n as f64)?;
        (tau >= t as f64).then_some((*p, tau))
    })
}

/// The highest-rate BCH code of length `2^m - 1` whose planning radius is at
/// least `t`, plus the best unique-decoding alternative.
pub fn choose_bch(m: u32, t: usize) -> Result<BchChoice, PlanError> {
    let (n, ladder) = usable_bch(m)?;
    let (list, tau) = pick_bch(n, &ladder, t).ok_or(PlanError::Infeasible {
        family: Family::Bch,
        n,
        radius: t,
    })?;
    let unique = ladder.iter().copied().find(|p| (p.delta - 1) / 2 >= t);
    Ok(BchChoice { n, list, tau, unique })
}

/// `H_q(p) + 1/L + log_q(L)/n`.
pub fn theoretical_rate(n: usize, p: f64, q: usize, list_size: usize) -> f64 {
    assert!(list_size >= 1);
    let l = list_size as f64;
    conditional_entropy(p, q) + 1.0 / l + l.ln() / (q as f64).ln() / n as f64
}

/// Degree m with `q = 2^m`, if q is a supported power of two.
fn degree_of(q: usize) -> Result<u32, PlanError> {
    if q < 2 || !q.is_power_of_two() {
        return Err(PlanError::InvalidParameters(format!("q = {q} is not a power of two")));
    }
    let m = q.trailing_zeros();
    Field::new(m).map_err(CodeError::from)?;
    Ok(m)
}

/// Locator-field degree for a code family at (q, n).
fn family_degree(q: usize, n: usize, family: Family) -> Result<u32, PlanError> {
    match family {
        Family::Rs => {
            let m = degree_of(q)?;
            if n != q - 1 {
                return Err(PlanError::InvalidParameters(format!("RS length must be q-1 = {}", q - 1)));
            }
            Ok(m)
        }
        Family::Bch => {
            if q != 2 {
                return Err(PlanError::InvalidParameters("BCH codes are binary (q = 2)".into()));
            }
            degree_of(n + 1)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniqueAlt {
    pub k: usize,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatePlan {
    pub q: usize,
    pub n: usize,
    pub p: f64,
    pub eps: f64,
    pub family: Family,
    /// Locator field degree (GF(2^m) for both families).
    pub m: u32,
    pub t_eps: usize,
    pub k: usize,
    /// BCH designed (Bose) distance; `None` for RS.
    pub delta: Option<usize>,
    /// Planning radius of the chosen code.
    pub tau: f64,
    /// Radius of the runtime RS decoder at `runtime_multiplicity`.
    pub runtime_radius: Option<usize>,
    pub runtime_multiplicity: usize,
    pub crc_id: u8,
    /// CRC symbols, in code symbols (bits for BCH).
    pub rho: usize,
    pub rate_no_crc: f64,
    pub rate_with_crc: f64,
    pub unique_alt: Option<UniqueAlt>,
    pub h_cond: f64,
    pub gap: f64,
}

impl RatePlan {
    /// Whether the runtime decoder covers `T_ε` at the planned code.
    pub fn runtime_reaches_t_eps(&self) -> bool {
        self.runtime_radius.is_some_and(|r| r >= self.t_eps)
    }
}

/// Multiplicity used for the runtime radius reported by [`plan`].
pub const DEFAULT_MULTIPLICITY: usize = 4;

/// Compose tail bound, code choice and CRC budget.
pub fn plan(q: usize, n: usize, p: f64, eps: f64, family: Family) -> Result<RatePlan, PlanError> {
    plan_with(q, n, p, eps, family, DEFAULT_MULTIPLICITY)
}

pub fn plan_with(
    q: usize,
    n: usize,
    p: f64,
    eps: f64,
    family: Family,
    multiplicity: usize,
) -> Result<RatePlan, PlanError> {
    if !(0.0..1.0).contains(&p) || !(eps > 0.0 && eps < 1.0) {
        return Err(PlanError::InvalidParameters(format!("p = {p}, eps = {eps}")));
    }
    let m = family_degree(q, n, family)?;
    let t_eps = Binomial::new(n, p).radius(eps);
    let nf = n as f64;
    let (k, delta, tau, unique_alt, crc, runtime_radius) = match family {
        Family::Rs => {
            let k = choose_rs(n, t_eps)?;
            let unique = choose_rs_unique(n, t_eps).map(|k| UniqueAlt {
                k,
                rate: (n - k) as f64 / nf,
            });
            let runtime = gs_radius(n, k, multiplicity).ok();
            let crc = CrcSpec::default_for(&Field::new(m).map_err(CodeError::from)?);
            (k, None, rs_planning_radius(n, k), unique, crc, runtime)
        }
        Family::Bch => {
            let choice = choose_bch(m, t_eps)?;
            let unique = choice.unique.map(|u| UniqueAlt {
                k: u.k,
                rate: (n - u.k) as f64 / nf,
            });
            let crc = CrcSpec::crc12();
            (choice.list.k, Some(choice.list.delta), choice.tau, unique, crc, None)
        }
    };
    let rho = crc.rho();
    let rate_no_crc = (n - k) as f64 / nf;
    let rate_with_crc = (n - k + rho) as f64 / nf;
    let h_cond = conditional_entropy(p, q);
    Ok(RatePlan {
        q,
        n,
        p,
        eps,
        family,
        m,
        t_eps,
        k,
        delta,
        tau,
        runtime_radius,
        runtime_multiplicity: multiplicity,
        crc_id: crc.id(),
        rho,
        rate_no_crc,
        rate_with_crc,
        unique_alt,
        h_cond,
        gap: rate_with_crc - h_cond,
    })
}

/// One code of a feedback ladder: used for error counts from `first` on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rung {
    pub first: usize,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeedbackSchedule {
    pub n: usize,
    pub p: f64,
    pub l: usize,
    pub h: usize,
    /// `ks[i - l]` is the dimension of the code used when `e = i`.
    pub ks: Vec<usize>,
    /// Distinct codes in ladder order (strictly decreasing k).
    pub rungs: Vec<Rung>,
    pub rho: usize,
    /// `Σ_{i=l}^{h} Pr[e = i](1 - k_i/n)`.
    pub expected_rate: f64,
    /// `expected_rate` plus the one-time CRC, `ρ/n · Pr[l <= e <= h]`.
    pub expected_rate_with_crc: f64,
}

impl FeedbackSchedule {
    /// Build from a rule giving the dimension for each error count.
    pub fn from_rule(
        n: usize,
        p: f64,
        window: (usize, usize),
        rho: usize,
        mut k_of: impl FnMut(usize) -> Result<usize, PlanError>,
    ) -> Result<Self, PlanError> {
        let (l, h) = window;
        if l > h || h >= n {
            return Err(PlanError::InvalidParameters(format!("window [{l}, {h}] for n = {n}")));
        }
        let binom = Binomial::new(n, p);
        let ks = (l..=h).map(&mut k_of).collect::<Result<Vec<_>, _>>()?;
        let mut rungs: Vec<Rung> = Vec::new();
        for (i, &k) in (l..=h).zip(&ks) {
            match rungs.last() {
                Some(r) if r.k == k => {}
                Some(r) if r.k < k => {
                    return Err(PlanError::InvalidParameters("ladder dimensions must not increase".into()))
                }
                _ => rungs.push(Rung { first: i, k }),
            }
        }
        let nf = n as f64;
        let expected_rate = (l..=h)
            .zip(&ks)
            .map(|(i, &k)| binom.pmf(i) * (n - k) as f64 / nf)
            .sum();
        let mass = binom.window_mass(l, h);
        Ok(FeedbackSchedule {
            n,
            p,
            l,
            h,
            expected_rate_with_crc: expected_rate + rho as f64 / nf * mass,
            expected_rate,
            ks,
            rungs,
            rho,
        })
    }

    /// Dimension used at error count `i` (clamped into the window).
    pub fn k_at(&self, i: usize) -> usize {
        self.ks[i.clamp(self.l, self.h) - self.l]
    }
}

/// Ladder from the planning radius of `family`.
pub fn plan_feedback(
    q: usize,
    n: usize,
    p: f64,
    eps: f64,
    family: Family,
    policy: WindowPolicy,
) -> Result<FeedbackSchedule, PlanError> {
    let m = family_degree(q, n, family)?;
    let window = binomial_window(n, p, eps, policy);
    match family {
        Family::Rs => {
            let rho = CrcSpec::default_for(&Field::new(m).map_err(CodeError::from)?).rho();
            FeedbackSchedule::from_rule(n, p, window, rho, |i| choose_rs(n, i))
        }
        Family::Bch => {
            let (n, ladder) = usable_bch(m)?;
            FeedbackSchedule::from_rule(n, p, window, CrcSpec::crc12().rho(), |i| {
                pick_bch(n, &ladder, i)
                    .map(|(c, _)| c.k)
                    .ok_or(PlanError::Infeasible {
                        family,
                        n,
                        radius: i,
                    })
            })
        }
    }
}

/// RS ladder from the radius the runtime decoder reaches at
/// `multiplicity`: `k_i` is the largest k with `gs_radius(n, k, m) >= i`.
pub fn plan_feedback_runtime(
    q: usize,
    n: usize,
    p: f64,
    eps: f64,
    policy: WindowPolicy,
    multiplicity: usize,
) -> Result<FeedbackSchedule, PlanError> {
    let m = family_degree(q, n, Family::Rs)?;
    let window = binomial_window(n, p, eps, policy);
    let radii: Vec<usize> = (1..=n)
        .map(|k| gs_radius(n, k, multiplicity).map_err(|e| PlanError::InvalidParameters(e.to_string())))
        .collect::<Result<_, _>>()?;
    let rho = CrcSpec::default_for(&Field::new(m).map_err(CodeError::from)?).rho();
    FeedbackSchedule::from_rule(n, p, window, rho, |i| {
        (1..=n)
            .rev()
            .find(|&k| radii[k - 1] >= i)
            .ok_or(PlanError::Infeasible {
                family: Family::Rs,
                n,
                radius: i,
            })
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub p: f64,
    pub h_cond: f64,
    pub rate_list: Option<f64>,
    pub rate_list_crc: Option<f64>,
    pub rate_unique: Option<f64>,
    pub rate_feedback: Option<f64>,
    pub gap_list: Option<f64>,
    pub gap_feedback: Option<f64>,
    pub feasible_unique: bool,
}

pub const SWEEP_HEADER: [&str; 9] = [
    "p",
    "h_cond",
    "rate_list",
    "rate_list_crc",
    "rate_unique",
    "rate_feedback",
    "gap_list",
    "gap_feedback",
    "feasible_unique",
];

/// `0.01, 0.02, …, max` (two-decimal grid).
pub fn default_grid(max: f64) -> Vec<f64> {
    (1..=(max * 100.0).round() as usize)
        .map(|i| i as f64 / 100.0)
        .collect()
}

/// Rates per grid point. Feedback uses the equal-split window; its rate
/// includes the one-time CRC so it compares with `rate_list_crc`.
pub fn sweep(q: usize, n: usize, eps: f64, family: Family, grid: &[f64]) -> Result<Vec<SweepRow>, PlanError> {
    family_degree(q, n, family)?;
    let mut rows = Vec::with_capacity(grid.len());
    for &p in grid {
        let h_cond = conditional_entropy(p, q);
        let plan = match plan(q, n, p, eps, family) {
            Ok(pl) => Some(pl),
            Err(PlanError::Infeasible { .. }) => None,
            Err(e) => return Err(e),
        };
        let fb = match plan_feedback(q, n, p, eps, family, WindowPolicy::EqualSplit) {
            Ok(s) => Some(s.expected_rate_with_crc),
            Err(PlanError::Infeasible { .. }) | Err(PlanError::InvalidParameters(_)) => None,
            Err(e) => return Err(e),
        };
        let unique = match family {
            Family::Rs => {
                let t = Binomial::new(n, p).radius(eps);
                choose_rs_unique(n, t).map(|k| (n - k) as f64 / n as f64)
            }
            Family::Bch => {
                let t = Binomial::new(n, p).radius(eps);
                let (n, ladder) = usable_bch(family_degree(q, n, family)?)?;
                ladder
                    .iter()
                    .find(|c| (c.delta - 1) / 2 >= t)
                    .map(|c| (n - c.k) as f64 / n as f64)
            }
        };
        rows.push(SweepRow {
            p,
            h_cond,
            rate_list: plan.as_ref().map(|pl| pl.rate_no_crc),
            rate_list_crc: plan.as_ref().map(|pl| pl.rate_with_crc),
            rate_unique: unique,
            rate_feedback: fb,
            gap_list: plan.as_ref().map(|pl| pl.rate_with_crc - h_cond),
            gap_feedback: fb.map(|r| r - h_cond),
            feasible_unique: unique.is_some(),
        });
    }
    Ok(rows)
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "INFEASIBLE".to_string(), |x| format!("{x:.6}"))
}

pub fn write_sweep_csv<W: io::Write>(rows: &[SweepRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SWEEP_HEADER)?;
    for r in rows {
        w.write_record([
            format!("{:.2}", r.p),
            format!("{:.6}", r.h_cond),
            cell(r.rate_list),
            cell(r.rate_list_crc),
            cell(r.rate_unique),
            cell(r.rate_feedback),
            cell(r.gap_list),
            cell(r.gap_feedback),
            r.feasible_unique.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
