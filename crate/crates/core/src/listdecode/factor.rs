//! Roth-Ruckenstein search for the y-roots `f(x)`, `deg f < k`, of `Q(x, y)`.

use super::interpolate::BiPoly;
use crate::gf::{Field, Symbol};

fn strip_x(q: &mut BiPoly) {
    let shift = q
        .rows
        .iter()
        .filter_map(|r| r.iter().position(|&c| c != 0))
        .min()
        .unwrap_or(0);
    if shift > 0 {
        for r in q.rows.iter_mut() {
            if r.len() > shift {
                r.drain(..shift);
            } else {
                r.clear();
            }
        }
    }
    for r in q.rows.iter_mut() {
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    while q.rows.last().is_some_and(|r| r.is_empty()) {
        q.rows.pop();
    }
}

/// `Q(x, x·y + γ)` with the common power of x removed.
fn substitute(q: &BiPoly, gamma: Symbol, f: &Field) -> BiPoly {
    let deg = q.rows.len();
    let mut rows = Vec::with_capacity(deg);
    for t in 0..deg {
        let width = q.rows[t..].iter().map(Vec::len).max().unwrap_or(0);
        let mut acc = vec![0 as Symbol; width + t];
        // (xy + γ)^l contributes C(l, t) γ^{l-t} x^t y^t; C(l, t) is odd iff t ⊆ l
        for l in t..deg {
            if l & t != t {
                continue;
            }
            let g = f.pow(gamma, l - t);
            if g == 0 {
                continue;
            }
            for (i, &c) in q.rows[l].iter().enumerate() {
                acc[i + t] ^= f.mul(c, g);
            }
        }
        rows.push(acc);
    }
    let mut out = BiPoly { rows };
    strip_x(&mut out);
    out
}

/// All `f` with `deg f < k` and `(y - f(x)) | Q(x, y)`, as coefficient
/// vectors of length `k`.
pub(crate) fn roth_ruckenstein(q: &BiPoly, k: usize, f: &Field) -> Vec<Vec<Symbol>> {
    let mut q = q.clone();
    strip_x(&mut q);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(k);
    search(&q, k, &mut prefix, &mut out, f);
    out
}

fn search(q: &BiPoly, k: usize, prefix: &mut Vec<Symbol>, out: &mut Vec<Vec<Symbol>>, f: &Field) {
    if prefix.len() == k {
        if q.rows.first().is_none_or(|r| r.is_empty()) {
            out.push(prefix.clone());
        }
        return;
    }
    let c: Vec<Symbol> = q.rows.iter().map(|r| r.first().copied().unwrap_or(0)).collect();
    for gamma in 0..f.size() as Symbol {
        let v = c.iter().rev().fold(0, |acc, &ci| f.mul(acc, gamma) ^ ci);
        if v != 0 {
            continue;
        }
        prefix.push(gamma);
        search(&substitute(q, gamma, f), k, prefix, out, f);
        prefix.pop();
    }
}
