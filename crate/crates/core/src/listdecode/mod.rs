//! Guruswami-Sudan list decoding of Reed-Solomon codes.
//!
//! Interpolation finds the minimal `Q(x, y)` in the (1, k-1)-weighted order
//! with a zero of multiplicity `m` at every `(α^j, r_j)`; factorization then
//! recovers each message polynomial `f` with `(y - f) | Q`. With weighted
//! degree below `m(n - t)`, every codeword within distance `t` of `r` is
//! such a factor, so the list is complete up to `t`.
//!
//! The decoding radius at a given multiplicity is computed from the exact
//! interpolation constraint count rather than from a closed-form bound.
//! Exhaustive list decoders used as test oracles live in [`oracle`].

mod factor;
mod interpolate;
pub mod oracle;

pub use oracle::{
    brute_force_list, coset_ball, min_weight_coset_list, CodewordTable, LinearCode,
};

use thiserror::Error;

use crate::gf::{hamming_distance, Poly, Symbol};
use crate::rscode::{check_len, check_symbols, CodeError, RsCode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ListDecodeError {
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("list holds {found} candidates, more than the limit of {max}")]
    ListOverflow { found: usize, max: usize },
    #[error("interpolation at multiplicity {multiplicity} costs {work}, above the bound {bound}")]
    WorkBoundExceeded { multiplicity: usize, work: u64, bound: u64 },
    #[error("radius {requested} exceeds the supported radius {supported}")]
    RadiusUnsupported { requested: usize, supported: usize },
    #[error("oracle instance too large: {work} steps (limit {limit})")]
    InstanceTooLarge { work: u64, limit: u64 },
    #[error("interpolation produced a polynomial above the degree bound")]
    InterpolationFailure,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GsConfig {
    pub multiplicity: usize,
    pub max_list: usize,
    /// Refuse interpolation when constraints × monomials exceeds this.
    pub work_bound: u64,
    /// Use Berlekamp-Massey when the GS radius does not beat the unique
    /// decoding radius.
    pub unique_shortcut: bool,
}

impl Default for GsConfig {
    fn default() -> Self {
        GsConfig {
            multiplicity: 1,
            max_list: 64,
            work_bound: 1 << 28,
            unique_shortcut: true,
        }
    }
}

impl GsConfig {
    pub fn with_multiplicity(multiplicity: usize) -> Self {
        GsConfig {
            multiplicity,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<(), ListDecodeError> {
        if self.multiplicity == 0 {
            return Err(ListDecodeError::InvalidConfig("multiplicity must be >= 1".into()));
        }
        if self.max_list == 0 {
            return Err(ListDecodeError::InvalidConfig("max_list must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    pub distance: usize,
    pub word: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListDecodeResult {
    /// Ascending by distance, then lexicographically by word.
    pub candidates: Vec<Candidate>,
    pub radius_used: usize,
}

impl ListDecodeResult {
    pub fn words(&self) -> impl Iterator<Item = &[Symbol]> {
        self.candidates.iter().map(|c| c.word.as_slice())
    }
}

/// Interpolation sizes for decoding radius `radius` at one multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InterpolationCost {
    pub multiplicity: usize,
    pub radius: usize,
    /// Bound on the (1, k-1)-weighted degree, `m(n - radius) - 1`.
    pub weighted_degree: usize,
    pub y_degree: usize,
    /// `n · m(m+1)/2` linear conditions.
    pub constraints: u64,
    /// Monomials of weighted degree within the bound and y-degree within
    /// `y_degree`.
    pub monomials: u64,
}

impl InterpolationCost {
    pub fn work(&self) -> u64 {
        self.constraints.saturating_mul(self.monomials)
    }
}

/// Monomials `x^a y^b` with `a + v·b <= d` and `b <= ycap`.
fn monomial_count(d: u64, v: u64, ycap: u64) -> u64 {
    let l = (d / v).min(ycap);
    (l + 1) * (d + 1) - v * l * (l + 1) / 2
}

fn constraint_count(n: usize, m: usize) -> u64 {
    n as u64 * (m as u64 * (m as u64 + 1) / 2)
}

/// Radius guaranteed by interpolation at multiplicity `m` before clamping;
/// `None` when no positive radius is reached. Requires `2 <= k < n`.
fn raw_radius(n: usize, k: usize, m: usize) -> Option<usize> {
    let v = (k - 1) as u64;
    let c = constraint_count(n, m);
    // smallest D with more monomials than constraints
    let (mut lo, mut hi) = (0u64, c);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if monomial_count(mid, v, u64::MAX) > c {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let agree = (lo + 1).div_ceil(m as u64);
    (n as u64).checked_sub(agree).map(|t| t as usize)
}

fn check_params(n: usize, k: usize) -> Result<(), ListDecodeError> {
    if k == 0 || k > n {
        return Err(CodeError::InvalidParameters(format!("need 1 <= k <= n, got k={k}, n={n}")).into());
    }
    Ok(())
}

/// Decoding radius of [`gs_list_decode`] at multiplicity `m`: the largest
/// `t` for which interpolation with weighted degree below `m(n - t)` is
/// guaranteed to exist, and never less than `⌊(n-k)/2⌋`.
pub fn gs_radius(n: usize, k: usize, m: usize) -> Result<usize, ListDecodeError> {
    check_params(n, k)?;
    if m == 0 {
        return Err(ListDecodeError::InvalidConfig("multiplicity must be >= 1".into()));
    }
    let unique = (n - k) / 2;
    Ok(match k {
        _ if k == n => 0,
        1 => n - 1,
        _ => raw_radius(n, k, m).unwrap_or(0).max(unique),
    })
}

/// The closed-form estimate `n - 1 - ⌊√((k-1)·n·(1 + 1/m))⌋`, clamped at
/// `⌊(n-k)/2⌋`. Never larger than [`gs_radius`].
pub fn gs_radius_estimate(n: usize, k: usize, m: usize) -> Result<usize, ListDecodeError> {
    check_params(n, k)?;
    if m == 0 {
        return Err(ListDecodeError::InvalidConfig("multiplicity must be >= 1".into()));
    }
    let prod = ((k - 1) * n * (m + 1) / m) as u64;
    let t = (n as u64 - 1).saturating_sub(prod.isqrt()) as usize;
    Ok(t.max((n - k) / 2))
}

/// The asymptotic planning radius: the largest integer strictly below
/// `n(1 - √(k/n))`, or the unique radius if that is larger.
pub fn gs_radius_limit(n: usize, k: usize) -> Result<usize, ListDecodeError> {
    check_params(n, k)?;
    if k == 1 {
        return Ok(n - 1);
    }
    let nk = (n * k) as u64;
    let t = (n as u64).saturating_sub(nk.isqrt() + 1) as usize;
    Ok(t.max((n - k) / 2))
}

/// Supremum of [`gs_radius`] over all multiplicities: the largest integer
/// strictly below `n - √(n(k-1))`.
pub fn gs_radius_sup(n: usize, k: usize) -> Result<usize, ListDecodeError> {
    check_params(n, k)?;
    if k == 1 {
        return Ok(n - 1);
    }
    let nk = (n * (k - 1)) as u64;
    let t = (n as u64).saturating_sub(nk.isqrt() + 1) as usize;
    Ok(t.max((n - k) / 2))
}

/// Interpolation sizes for decoding up to `radius` at multiplicity `m`, or
/// `None` if that multiplicity cannot reach `radius`.
pub fn interpolation_cost(n: usize, k: usize, m: usize, radius: usize) -> Option<InterpolationCost> {
    if k < 2 || k >= n || m == 0 || radius >= n {
        return None;
    }
    let weighted = (m * (n - radius)).checked_sub(1)? as u64;
    let v = (k - 1) as u64;
    let constraints = constraint_count(n, m);
    if monomial_count(weighted, v, u64::MAX) <= constraints {
        return None;
    }
    let mut y_degree = 0;
    while monomial_count(weighted, v, y_degree) <= constraints {
        y_degree += 1;
    }
    Some(InterpolationCost {
        multiplicity: m,
        radius,
        weighted_degree: weighted as usize,
        y_degree: y_degree as usize,
        constraints,
        monomials: monomial_count(weighted, v, y_degree),
    })
}

/// Smallest multiplicity whose interpolation reaches `radius`, with its
/// cost. Fails if `radius` is beyond [`gs_radius_sup`] or if the cost at
/// the required multiplicity would exceed `work_bound`.
pub fn min_multiplicity(
    n: usize,
    k: usize,
    radius: usize,
    work_bound: u64,
) -> Result<InterpolationCost, ListDecodeError> {
    check_params(n, k)?;
    let limit = gs_radius_sup(n, k)?;
    if radius > limit {
        return Err(ListDecodeError::RadiusUnsupported {
            requested: radius,
            supported: limit,
        });
    }
    if k == n || k == 1 || radius <= (n - k) / 2 {
        // no interpolation needed; report the trivial multiplicity
        return Ok(InterpolationCost {
            multiplicity: 1,
            radius,
            weighted_degree: 0,
            y_degree: 0,
            constraints: 0,
            monomials: 0,
        });
    }
    let mut m = 1;
    loop {
        if let Some(cost) = interpolation_cost(n, k, m, radius) {
            if cost.work() > work_bound {
                return Err(ListDecodeError::WorkBoundExceeded {
                    multiplicity: m,
                    work: cost.work(),
                    bound: work_bound,
                });
            }
            return Ok(cost);
        }
        // a lower bound on the work at this multiplicity already exceeds the budget
        let floor = constraint_count(n, m).saturating_mul(constraint_count(n, m));
        if floor > work_bound {
            return Err(ListDecodeError::WorkBoundExceeded {
                multiplicity: m,
                work: floor,
                bound: work_bound,
            });
        }
        m += 1;
    }
}

/// All codewords within `gs_radius(n, k, cfg.multiplicity)` of `r`.
pub fn gs_list_decode(
    r: &[Symbol],
    code: &RsCode,
    cfg: &GsConfig,
) -> Result<ListDecodeResult, ListDecodeError> {
    cfg.validate()?;
    let radius = gs_radius(code.n(), code.k(), cfg.multiplicity)?;
    decode_at(r, code, cfg, radius)
}

/// All codewords within `radius` of `r`; `radius` must not exceed the
/// decoder's radius at `cfg.multiplicity`.
pub fn gs_list_decode_within(
    r: &[Symbol],
    code: &RsCode,
    cfg: &GsConfig,
    radius: usize,
) -> Result<ListDecodeResult, ListDecodeError> {
    cfg.validate()?;
    let supported = gs_radius(code.n(), code.k(), cfg.multiplicity)?;
    if radius > supported {
        return Err(ListDecodeError::RadiusUnsupported {
            requested: radius,
            supported,
        });
    }
    decode_at(r, code, cfg, radius)
}

fn decode_at(
    r: &[Symbol],
    code: &RsCode,
    cfg: &GsConfig,
    radius: usize,
) -> Result<ListDecodeResult, ListDecodeError> {
    let (n, k) = (code.n(), code.k());
    let f = code.field();
    check_len(n, r.len())?;
    check_symbols(r, f.size())?;

    let words: Vec<Vec<Symbol>> = if k == n {
        vec![r.to_vec()]
    } else if k == 1 {
        (0..f.size() as Symbol).map(|c| vec![c; n]).collect()
    } else {
        let unique = code.unique_radius();
        let raw = raw_radius(n, k, cfg.multiplicity).unwrap_or(0);
        if radius <= unique && (cfg.unique_shortcut || raw < radius) {
            code.unique_decode(r)?.into_iter().collect()
        } else {
            interpolate_and_factor(r, code, cfg, radius)?
        }
    };

    let mut candidates: Vec<Candidate> = words
        .into_iter()
        .map(|word| Candidate {
            distance: hamming_distance(&word, r),
            word,
        })
        .filter(|c| c.distance <= radius)
        .collect();
    candidates.sort();
    candidates.dedup();
    if candidates.len() > cfg.max_list {
        return Err(ListDecodeError::ListOverflow {
            found: candidates.len(),
            max: cfg.max_list,
        });
    }
    Ok(ListDecodeResult {
        candidates,
        radius_used: radius,
    })
}

fn interpolate_and_factor(
    r: &[Symbol],
    code: &RsCode,
    cfg: &GsConfig,
    radius: usize,
) -> Result<Vec<Vec<Symbol>>, ListDecodeError> {
    let (n, k) = (code.n(), code.k());
    let f = code.field();
    let cost = interpolation_cost(n, k, cfg.multiplicity, radius).ok_or(
        ListDecodeError::RadiusUnsupported {
            requested: radius,
            supported: raw_radius(n, k, cfg.multiplicity).unwrap_or(0),
        },
    )?;
    if cost.work() > cfg.work_bound {
        return Err(ListDecodeError::WorkBoundExceeded {
            multiplicity: cfg.multiplicity,
            work: cost.work(),
            bound: cfg.work_bound,
        });
    }
    let x_exps: Vec<usize> = (0..n).collect();
    let q = interpolate::interpolate(&x_exps, r, cfg.multiplicity, k - 1, cost.y_degree, f);
    match q.weighted_degree(k - 1) {
        Some(d) if d <= cost.weighted_degree => {}
        _ => return Err(ListDecodeError::InterpolationFailure),
    }
    Ok(factor::roth_ruckenstein(&q, k, f)
        .into_iter()
        .map(|msg| code.evaluate(&Poly::from_coeffs(msg)))
        .collect())
}
