//! Narrow-sense Reed-Solomon codes of full length `n = q - 1`.
//!
//! The parity-check matrix is `H[i][j] = α^{(i+1)j}` for `0 <= i < n-k`, so
//! `H·xᵀ` is the vector of evaluations `x(α^1), …, x(α^{n-k})`. Codes of the
//! same length over the same field are nested: the parity-check matrix of a
//! higher-rate code is a prefix of the rows of every lower-rate one.

use std::sync::OnceLock;

use thiserror::Error;

use crate::gf::{Field, GfError, Poly, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("symbol {symbol} is not an element of the symbol alphabet (size {alphabet})")]
    InvalidSymbol { symbol: Symbol, alphabet: usize },
    #[error("invalid code parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<(), CodeError> {
    if expected == got {
        Ok(())
    } else {
        Err(CodeError::LengthMismatch { expected, got })
    }
}

pub(crate) fn check_symbols(x: &[Symbol], alphabet: usize) -> Result<(), CodeError> {
    match x.iter().find(|&&s| s as usize >= alphabet) {
        Some(&symbol) => Err(CodeError::InvalidSymbol { symbol, alphabet }),
        None => Ok(()),
    }
}

#[derive(Debug)]
pub struct RsCode {
    field: Field,
    n: usize,
    k: usize,
    /// Inverse of the leftmost `(n-k) x (n-k)` block of H; built on first use.
    coset_basis: OnceLock<Vec<Vec<Symbol>>>,
}

impl Clone for RsCode {
    fn clone(&self) -> Self {
        RsCode {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            coset_basis: OnceLock::new(),
        }
    }
}

impl PartialEq for RsCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.k == other.k
    }
}

impl Eq for RsCode {}

impl RsCode {
    pub fn new(field: Field, k: usize) -> Result<Self, CodeError> {
        let n = field.order();
        if k < 1 || k > n {
            return Err(CodeError::InvalidParameters(format!(
                "need 1 <= k <= n = {n}, got k = {k}"
            )));
        }
        Ok(RsCode {
            field,
            n,
            k,
            coset_basis: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of parity checks, `n - k`.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    /// MDS: `n - k + 1`.
    pub fn d_min(&self) -> usize {
        self.n - self.k + 1
    }

    /// Unique-decoding radius `⌊(d_min - 1)/2⌋`.
    pub fn unique_radius(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn parity_check_matrix(&self) -> Vec<Vec<Symbol>> {
        (0..self.redundancy())
            .map(|i| (0..self.n).map(|j| self.field.exp((i + 1) * j)).collect())
            .collect()
    }

    pub fn generator_matrix(&self) -> Vec<Vec<Symbol>> {
        (0..self.k)
            .map(|i| (0..self.n).map(|j| self.field.exp(i * j)).collect())
            .collect()
    }

    fn check_word(&self, x: &[Symbol]) -> Result<(), CodeError> {
        check_len(self.n, x.len())?;
        check_symbols(x, self.field.size())
    }

    /// `H · xᵀ`.
    pub fn syndrome(&self, x: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        self.check_word(x)?;
        Ok(self.syndrome_rows_unchecked(x, 0, self.redundancy()))
    }

    /// Rows `start..end` of the parity-check matrix applied to `x`, i.e.
    /// `x(α^{start+1}), …, x(α^{end})`. Rows past `n - k` are rows of
    /// lower-rate codes in the same nested family.
    pub fn syndrome_rows(
        &self,
        x: &[Symbol],
        start: usize,
        end: usize,
    ) -> Result<Vec<Symbol>, CodeError> {
        self.check_word(x)?;
        if start > end || end > self.n {
            return Err(CodeError::InvalidParameters(format!(
                "row range {start}..{end} outside 0..{}",
                self.n
            )));
        }
        Ok(self.syndrome_rows_unchecked(x, start, end))
    }

    fn syndrome_rows_unchecked(&self, x: &[Symbol], start: usize, end: usize) -> Vec<Symbol> {
        let f = &self.field;
        let order = f.order();
        let mut s = vec![0; end - start];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0 {
                continue;
            }
            let lx = f.log(xj).unwrap();
            for (idx, si) in s.iter_mut().enumerate() {
                let i = start + idx;
                *si ^= f.exp((lx + ((i + 1) * j) % order) % order);
            }
        }
        s
    }

    pub fn is_codeword(&self, x: &[Symbol]) -> bool {
        self.syndrome(x)
            .map(|s| s.iter().all(|&v| v == 0))
            .unwrap_or(false)
    }

    /// Evaluation encoding `c_j = u(α^j)`.
    pub fn encode(&self, u: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        check_len(self.k, u.len())?;
        check_symbols(u, self.field.size())?;
        Ok(self.evaluate(&Poly::from_coeffs(u.to_vec())))
    }

    /// Codeword of a message polynomial of degree `< k`.
    pub(crate) fn evaluate(&self, u: &Poly) -> Vec<Symbol> {
        (0..self.n)
            .map(|j| u.eval(self.field.exp(j), &self.field))
            .collect()
    }

    /// The vector `a` with `H·aᵀ = s` returned by left-to-right Gaussian
    /// elimination with free variables zeroed. Any `n - k` columns of H are
    /// independent, so the pivots are exactly the first `n - k` columns and
    /// `a` is supported there.
    pub fn coset_representative(&self, s: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
        check_len(self.redundancy(), s.len())?;
        check_symbols(s, self.field.size())?;
        let inv = self.coset_basis.get_or_init(|| self.leading_block_inverse());
        let f = &self.field;
        let mut a = vec![0; self.n];
        for (ai, row) in a.iter_mut().zip(inv) {
            *ai = row.iter().zip(s).fold(0, |acc, (&m, &v)| acc ^ f.mul(m, v));
        }
        Ok(a)
    }

    fn leading_block_inverse(&self) -> Vec<Vec<Symbol>> {
        let r = self.redundancy();
        let f = &self.field;
        let mut m: Vec<Vec<Symbol>> = (0..r)
            .map(|i| {
                let mut row: Vec<Symbol> = (0..r).map(|j| f.exp((i + 1) * j)).collect();
                row.extend((0..r).map(|j| (i == j) as Symbol));
                row
            })
            .collect();
        for col in 0..r {
            let p = (col..r)
                .find(|&i| m[i][col] != 0)
                .expect("Vandermonde block is invertible");
            m.swap(col, p);
            let inv = f.inv(m[col][col]);
            for v in m[col].iter_mut() {
                *v = f.mul(*v, inv);
            }
            let pivot = m[col].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != col && row[col] != 0 {
                    let factor = row[col];
                    for (x, &p) in row.iter_mut().zip(&pivot) {
                        *x ^= f.mul(factor, p);
                    }
                }
            }
        }
        m.into_iter().map(|row| row[r..].to_vec()).collect()
    }

    /// Bounded-distance decoding up to `⌊(d_min-1)/2⌋` errors with
    /// Berlekamp-Massey, Chien search and Forney's formula. `Ok(None)` means
    /// no codeword lies within that radius (or the decoder detected failure).
    pub fn unique_decode(&self, r: &[Symbol]) -> Result<Option<Vec<Symbol>>, CodeError> {
        let synd = self.syndrome(r)?;
        if synd.iter().all(|&s| s == 0) {
            return Ok(Some(r.to_vec()));
        }
        let f = &self.field;
        let t = self.unique_radius();

        let locator = berlekamp_massey(&synd, f);
        let nerr = match locator.degree() {
            Some(d) if d >= 1 && d <= t => d,
            _ => return Ok(None),
        };

        // Chien search: position j is in error iff Λ(α^{-j}) = 0
        let order = f.order();
        let positions: Vec<usize> = (0..self.n)
            .filter(|&j| locator.eval(f.exp((order - j % order) % order), f) == 0)
            .collect();
        if positions.len() != nerr {
            return Ok(None);
        }

        // Ω(x) = S(x) Λ(x) mod x^{n-k}, with S(x) = Σ S_{i+1} x^i
        let s_poly = Poly::from_coeffs(synd.clone());
        let omega = Poly::from_coeffs(
            s_poly
                .mul(&locator, f)
                .coeffs()
                .iter()
                .take(synd.len())
                .copied()
                .collect(),
        );
        let dlocator = locator.derivative();
        let mut corrected = r.to_vec();
        for &j in &positions {
            let xinv = f.exp((order - j % order) % order);
            let denom = dlocator.eval(xinv, f);
            if denom == 0 {
                return Ok(None);
            }
            // narrow sense (first root α^1): e_j = Ω(X^{-1}) / Λ'(X^{-1})
            corrected[j] ^= f.div(omega.eval(xinv, f), denom);
        }
        if self.is_codeword(&corrected) {
            Ok(Some(corrected))
        } else {
            Ok(None)
        }
    }
}

/// Shortest LFSR (error locator) generating the syndrome sequence.
pub(crate) fn berlekamp_massey(synd: &[Symbol], f: &Field) -> Poly {
    let mut c = vec![1 as Symbol];
    let mut b = vec![1 as Symbol];
    let mut l = 0usize;
    let mut shift = 1usize;
    let mut last_d: Symbol = 1;
    for i in 0..synd.len() {
        let mut d = synd[i];
        for j in 1..=l.min(c.len() - 1) {
            d ^= f.mul(c[j], synd[i - j]);
        }
        if d == 0 {
            shift += 1;
            continue;
        }
        let coef = f.div(d, last_d);
        let mut next = c.clone();
        if next.len() < b.len() + shift {
            next.resize(b.len() + shift, 0);
        }
        for (j, &bj) in b.iter().enumerate() {
            next[j + shift] ^= f.mul(coef, bj);
        }
        if 2 * l <= i {
            l = i + 1 - l;
            b = c;
            last_d = d;
            shift = 1;
        } else {
            shift += 1;
        }
        c = next;
    }
    c.truncate(l + 1);
    Poly::from_coeffs(c)
}
