use super::{Field, GfError, Symbol};

/// `M · v` for a row-major matrix.
pub fn mat_vec(rows: &[Vec<Symbol>], v: &[Symbol], f: &Field) -> Vec<Symbol> {
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&a, &b)| acc ^ f.mul(a, b))
        })
        .collect()
}

/// One solution `a` of `H · aᵀ = s` by Gauss-Jordan elimination.
///
/// Pivots are taken column by column from the left; every non-pivot (free)
/// variable is set to zero, so the result is a deterministic function of the
/// inputs. Rank-deficient systems are fine as long as they are consistent.
pub fn solve_linear(
    rows: &[Vec<Symbol>],
    s: &[Symbol],
    f: &Field,
) -> Result<Vec<Symbol>, GfError> {
    if rows.len() != s.len() {
        return Err(GfError::DimensionMismatch {
            expected: rows.len(),
            got: s.len(),
        });
    }
    let ncols = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
        return Err(GfError::DimensionMismatch {
            expected: ncols,
            got: bad.len(),
        });
    }
    // augmented matrix
    let mut aug: Vec<Vec<Symbol>> = rows
        .iter()
        .zip(s)
        .map(|(r, &b)| {
            let mut v = r.clone();
            v.push(b);
            v
        })
        .collect();

    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == aug.len() {
            break;
        }
        let Some(p) = (rank..aug.len()).find(|&r| aug[r][col] != 0) else {
            continue;
        };
        aug.swap(rank, p);
        let inv = f.inv(aug[rank][col]);
        for v in aug[rank].iter_mut() {
            *v = f.mul(*v, inv);
        }
        let pivot_row = aug[rank].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x ^= f.mul(factor, p);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if aug[rank..].iter().any(|row| row[ncols] != 0) {
        return Err(GfError::Inconsistent);
    }
    let mut a = vec![0; ncols];
    for (r, &col) in pivots.iter().enumerate() {
        a[col] = aug[r][ncols];
    }
    Ok(a)
}
