//! Small dense exact linear algebra over `Q`.

use crate::Q;
use num_traits::Zero;

/// Solves `a x = b` for square or overdetermined consistent systems.
///
/// Returns `None` when the system is inconsistent or underdetermined.
pub(crate) fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][col].is_zero()) else {
            return None;
        };
        m.swap(pivot_row, p);
        let inv = Q::from_integer(1.into()) / m[pivot_row][col].clone();
        for x in m[pivot_row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != pivot_row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=cols {
                    let sub = &factor * &m[pivot_row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    // remaining rows must be consistent
    if m[pivot_row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|c| m[pivots[c]][cols].clone()).collect())
}

/// Row-echelon basis of a subspace, kept in reduced form for membership tests.
#[derive(Debug, Clone, Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<(usize, Vec<Q>)>,
}

impl EchelonBasis {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub(crate) fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let f = v[*pivot].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Q::from_integer(1.into()) / v[pivot].clone();
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let f = row[pivot].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }
}
