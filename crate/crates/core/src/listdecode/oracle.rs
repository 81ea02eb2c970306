//! Exhaustive list decoding and coset enumeration for small codes.
//!
//! These are reference implementations used to validate the algebraic
//! decoders; every entry point refuses instances above a fixed work limit.

use std::collections::BTreeSet;

use super::{Candidate, ListDecodeError, ListDecodeResult};
use crate::bchcode::BchCode;
use crate::gf::{hamming_weight, Field, Symbol};
use crate::rscode::{check_len, CodeError, RsCode};

/// Largest codebook `brute_force_list` will enumerate.
pub const MAX_CODEBOOK: f64 = (1u64 << 24) as f64;
/// Largest number of patterns the coset enumerators will visit.
pub const MAX_COSET_WORK: f64 = (1u64 << 26) as f64;

/// What the oracles need to know about a linear code.
pub trait LinearCode {
    /// Field of the codeword symbols.
    fn symbol_field(&self) -> &Field;
    fn block_len(&self) -> usize;
    fn dimension(&self) -> usize;
    /// `k` linearly independent codewords.
    fn basis(&self) -> Vec<Vec<Symbol>>;
    fn syndrome_of(&self, x: &[Symbol]) -> Result<Vec<Symbol>, CodeError>;
    /// Some vector with syndrome `s`.
    fn coset_member(&self, s: &[Symbol]) -> Result<Vec<Symbol>, CodeError>;
}

impl LinearCode for RsCode {
    fn symbol_field(&self) -> &Field {
        self.field()
    }
    fn block_len(&self) -> usize {
        self.n()
    }
    fn dimension(&self) -> usize {
        self.k()
    }
    fn basis(&self) -> Vec<Vec<Symbol>> {
        self.generator_matrix()
    }
    fn syndrome_of(&self, x: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        self.syndrome(x)
    }
    fn coset_member(&self, s: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        self.coset_representative(s)
    }
}

impl LinearCode for BchCode {
    fn symbol_field(&self) -> &Field {
        BchCode::symbol_field(self)
    }
    fn block_len(&self) -> usize {
        self.n()
    }
    fn dimension(&self) -> usize {
        self.k()
    }
    fn basis(&self) -> Vec<Vec<Symbol>> {
        self.generator_matrix()
    }
    fn syndrome_of(&self, x: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        self.syndrome(x)
    }
    fn coset_member(&self, s: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        self.coset_representative(s)
    }
}

/// Every codeword of a small code, stored flat.
#[derive(Debug, Clone)]
pub struct CodewordTable {
    n: usize,
    words: Vec<Symbol>,
}

impl CodewordTable {
    pub fn new<C: LinearCode + ?Sized>(code: &C) -> Result<Self, ListDecodeError> {
        let f = code.symbol_field();
        let (n, k, q) = (code.block_len(), code.dimension(), f.size());
        let total = (q as f64).powi(k as i32);
        if total > MAX_CODEBOOK {
            return Err(ListDecodeError::InstanceTooLarge {
                work: total as u64,
                limit: MAX_CODEBOOK as u64,
            });
        }
        let total = total as usize;
        // scaled[i][a] = a · basis_i
        let scaled: Vec<Vec<Vec<Symbol>>> = code
            .basis()
            .iter()
            .map(|b| {
                (0..q as Symbol)
                    .map(|a| b.iter().map(|&s| f.mul(a, s)).collect())
                    .collect()
            })
            .collect();
        let mut words = Vec::with_capacity(total * n);
        let mut digits = vec![0 as Symbol; k];
        let mut cw = vec![0 as Symbol; n];
        for _ in 0..total {
            words.extend_from_slice(&cw);
            // mixed-radix increment; cw tracks Σ digit_i · basis_i
            for i in 0..k {
                let old = digits[i];
                let new = (old + 1) % q as Symbol;
                digits[i] = new;
                for (c, &s) in cw.iter_mut().zip(&scaled[i][(old ^ new) as usize]) {
                    *c ^= s;
                }
                if new != 0 {
                    break;
                }
            }
        }
        Ok(CodewordTable { n, words })
    }

    pub fn len(&self) -> usize {
        self.words.len() / self.n.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Symbol]> {
        self.words.chunks_exact(self.n)
    }

    /// All codewords within `radius` of `r`.
    pub fn list(&self, r: &[Symbol], radius: usize) -> Result<ListDecodeResult, ListDecodeError> {
        check_len(self.n, r.len())?;
        let mut candidates = Vec::new();
        for w in self.iter() {
            let mut d = 0;
            for (a, b) in w.iter().zip(r) {
                if a != b {
                    d += 1;
                    if d > radius {
                        break;
                    }
                }
            }
            if d <= radius {
                candidates.push(Candidate {
                    distance: d,
                    word: w.to_vec(),
                });
            }
        }
        candidates.sort();
        Ok(ListDecodeResult {
            candidates,
            radius_used: radius,
        })
    }
}

/// Exact list of codewords within `radius` of `r` by enumerating the code.
pub fn brute_force_list<C: LinearCode + ?Sized>(
    r: &[Symbol],
    code: &C,
    radius: usize,
) -> Result<ListDecodeResult, ListDecodeError> {
    CodewordTable::new(code)?.list(r, radius)
}

/// Row-reduce `basis` to identity on some `k` columns drawn from `allowed`,
/// in order. `None` if those columns have rank below `k`.
fn systematic_on(
    basis: &[Vec<Symbol>],
    allowed: &[usize],
    f: &Field,
) -> Option<(Vec<usize>, Vec<Vec<Symbol>>)> {
    let k = basis.len();
    let mut rows = basis.to_vec();
    let mut pivots = Vec::with_capacity(k);
    for &col in allowed {
        if pivots.len() == k {
            break;
        }
        let rank = pivots.len();
        let Some(p) = (rank..k).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = f.inv(rows[rank][col]);
        for v in rows[rank].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let factor = row[col];
                for (x, &pv) in row.iter_mut().zip(&pivot) {
                    *x ^= f.mul(factor, pv);
                }
            }
        }
        pivots.push(col);
    }
    (pivots.len() == k).then_some((pivots, rows))
}

/// Greedy family of pairwise disjoint information sets.
fn disjoint_information_sets(basis: &[Vec<Symbol>], n: usize, f: &Field) -> Vec<(Vec<usize>, Vec<Vec<Symbol>>)> {
    let mut free: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    while let Some((pivots, rows)) = systematic_on(basis, &free, f) {
        free.retain(|c| !pivots.contains(c));
        out.push((pivots, rows));
    }
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Every vector of weight at most `max_weight` with syndrome `s`, ascending
/// by weight then lexicographically.
///
/// With `t` disjoint information sets, such a vector has weight at most
/// `⌊max_weight / t⌋` on one of them; each coset member is determined by its
/// values on an information set, so enumerating those light patterns finds
/// them all.
pub fn coset_ball<C: LinearCode + ?Sized>(
    s: &[Symbol],
    code: &C,
    max_weight: usize,
) -> Result<Vec<Vec<Symbol>>, ListDecodeError> {
    let f = code.symbol_field();
    let (n, k, q) = (code.block_len(), code.dimension(), f.size());
    let a = code.coset_member(s)?;
    if k == 0 {
        return Ok(if hamming_weight(&a) <= max_weight { vec![a] } else { vec![] });
    }
    let sets = disjoint_information_sets(&code.basis(), n, f);
    let per_set = max_weight / sets.len();
    let per_set = per_set.min(k);
    let work: f64 = sets.len() as f64
        * (0..=per_set)
            .map(|w| binomial(k, w) * ((q - 1) as f64).powi(w as i32))
            .sum::<f64>();
    if work > MAX_COSET_WORK {
        return Err(ListDecodeError::InstanceTooLarge {
            work: work as u64,
            limit: MAX_COSET_WORK as u64,
        });
    }

    let mut found = BTreeSet::new();
    for (pivots, rows) in &sets {
        // coset member vanishing on the information set
        let mut base = a.clone();
        for (row, &p) in rows.iter().zip(pivots) {
            let c = a[p];
            if c != 0 {
                for (x, &v) in base.iter_mut().zip(row) {
                    *x ^= f.mul(c, v);
                }
            }
        }
        let scaled: Vec<Vec<Vec<Symbol>>> = rows
            .iter()
            .map(|row| {
                (0..q as Symbol)
                    .map(|c| row.iter().map(|&v| f.mul(c, v)).collect())
                    .collect()
            })
            .collect();
        extend_patterns(&mut base, &scaled, 0, per_set, max_weight, &mut found);
    }
    let mut out: Vec<Vec<Symbol>> = found.into_iter().collect();
    out.sort_by(|x, y| hamming_weight(x).cmp(&hamming_weight(y)).then_with(|| x.cmp(y)));
    Ok(out)
}

fn extend_patterns(
    u: &mut Vec<Symbol>,
    scaled: &[Vec<Vec<Symbol>>],
    start: usize,
    remaining: usize,
    max_weight: usize,
    found: &mut BTreeSet<Vec<Symbol>>,
) {
    if hamming_weight(u) <= max_weight {
        found.insert(u.clone());
    }
    if remaining == 0 {
        return;
    }
    for i in start..scaled.len() {
        for row in &scaled[i][1..] {
            xor_into(u, row);
            extend_patterns(u, scaled, i + 1, remaining - 1, max_weight, found);
            xor_into(u, row);
        }
    }
}

fn xor_into(u: &mut [Symbol], v: &[Symbol]) {
    for (a, &b) in u.iter_mut().zip(v) {
        *a ^= b;
    }
}

/// The `count` lowest-weight vectors with syndrome `s`, lexicographic
/// tie-break.
pub fn min_weight_coset_list<C: LinearCode + ?Sized>(
    s: &[Symbol],
    code: &C,
    count: usize,
) -> Result<Vec<Vec<Symbol>>, ListDecodeError> {
    let n = code.block_len();
    for w in 0..=n {
        let ball = coset_ball(s, code, w)?;
        if ball.len() >= count || w == n {
            return Ok(ball.into_iter().take(count).collect());
        }
    }
    unreachable!()
}
