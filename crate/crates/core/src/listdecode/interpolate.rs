//! Koetter's iterative interpolation under the (1, k-1)-weighted degree order.

use crate::gf::{Field, Symbol};

/// Bivariate polynomial as `rows[l]` = coefficients (in x) of `y^l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BiPoly {
    pub rows: Vec<Vec<Symbol>>,
}

impl BiPoly {
    fn y_power(l: usize, y_degree: usize) -> Self {
        let mut rows = vec![Vec::new(); y_degree + 1];
        rows[l] = vec![1];
        BiPoly { rows }
    }

    fn trim(&mut self) {
        for r in self.rows.iter_mut() {
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    #[cfg(test)]
    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&c| c == 0))
    }

    /// Largest `i + weight·l` over nonzero terms `x^i y^l`.
    pub fn weighted_degree(&self, weight: usize) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(l, r)| {
                r.iter()
                    .rposition(|&c| c != 0)
                    .map(|i| i + weight * l)
            })
            .max()
    }

    /// Hasse derivative `D_{a,b}` evaluated at `(α^x_exp, y)`. Binomial
    /// coefficients are reduced mod 2 (Lucas: `C(i,a)` is odd iff a ⊆ i).
    fn hasse_at(&self, a: usize, b: usize, x_exp: usize, y: Symbol, f: &Field) -> Symbol {
        let order = f.order();
        let mut acc = 0;
        let mut ypow: Symbol = 1;
        for (l, row) in self.rows.iter().enumerate().skip(b) {
            if l > b {
                ypow = f.mul(ypow, y);
            }
            if l & b != b || row.len() <= a {
                continue;
            }
            if ypow == 0 && l > b {
                break;
            }
            let mut inner = 0;
            let mut e = 0usize;
            for (i, &c) in row.iter().enumerate().skip(a) {
                if c != 0 && i & a == a {
                    inner ^= f.mul_exp(c, e);
                }
                e += x_exp;
                if e >= order {
                    e -= order;
                }
            }
            acc ^= f.mul(inner, ypow);
        }
        acc
    }

    /// `self += c · other`.
    fn add_scaled(&mut self, other: &BiPoly, c: Symbol, f: &Field) {
        for (dst, src) in self.rows.iter_mut().zip(&other.rows) {
            if dst.len() < src.len() {
                dst.resize(src.len(), 0);
            }
            for (d, &s) in dst.iter_mut().zip(src) {
                *d ^= f.mul(s, c);
            }
        }
    }

    /// `self *= (x - x0)`.
    fn mul_linear(&mut self, x0: Symbol, f: &Field) {
        for row in self.rows.iter_mut() {
            if row.is_empty() {
                continue;
            }
            row.push(0);
            for i in (0..row.len()).rev() {
                let below = if i > 0 { row[i - 1] } else { 0 };
                row[i] = below ^ f.mul(row[i], x0);
            }
        }
    }
}

/// Minimal nonzero bivariate polynomial (in the weighted order) with y-degree
/// at most `y_degree` that has a zero of multiplicity `multiplicity` at every
/// point `(α^{x_exps[j]}, ys[j])`.
pub(crate) fn interpolate(
    x_exps: &[usize],
    ys: &[Symbol],
    multiplicity: usize,
    weight: usize,
    y_degree: usize,
    f: &Field,
) -> BiPoly {
    let mut group: Vec<BiPoly> = (0..=y_degree).map(|l| BiPoly::y_power(l, y_degree)).collect();
    let mut order_key: Vec<(usize, usize)> = (0..=y_degree).map(|l| (weight * l, l)).collect();
    let mut disc = vec![0 as Symbol; y_degree + 1];

    for (&xe, &y) in x_exps.iter().zip(ys) {
        let x0 = f.exp(xe);
        // (a-1, b) must precede (a, b) for each point
        for b in 0..multiplicity {
            for a in 0..multiplicity - b {
                let mut best: Option<usize> = None;
                for (j, poly) in group.iter().enumerate() {
                    disc[j] = poly.hasse_at(a, b, xe, y, f);
                    if disc[j] != 0 && best.is_none_or(|bj| order_key[j] < order_key[bj]) {
                        best = Some(j);
                    }
                }
                let Some(star) = best else { continue };
                let pivot = group[star].clone();
                let inv = f.inv(disc[star]);
                for (j, poly) in group.iter_mut().enumerate() {
                    if j != star && disc[j] != 0 {
                        poly.add_scaled(&pivot, f.mul(disc[j], inv), f);
                    }
                }
                group[star].mul_linear(x0, f);
                order_key[star].0 += 1;
            }
        }
    }
    let best = (0..group.len()).min_by_key(|&j| order_key[j]).unwrap();
    let mut q = group.swap_remove(best);
    q.trim();
    q
}
