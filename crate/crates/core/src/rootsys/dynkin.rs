//! Dynkin diagram identification of a base of simple roots.

use super::data::{self, Root};
use super::{RootError, Series, SimpleFactor};

fn dot(a: &Root, b: &Root) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `a_ij = 2 (α_i, α_j) / (α_j, α_j)`.
pub(crate) fn cartan_matrix(simple: &[Root]) -> Vec<Vec<i64>> {
    simple
        .iter()
        .map(|ai| {
            simple
                .iter()
                .map(|aj| 2 * dot(ai, aj) / dot(aj, aj))
                .collect()
        })
        .collect()
}

/// Splits a base into irreducible components and names each one.
///
/// Every name is confirmed by an explicit Cartan matrix isomorphism with the
/// embedded root data; a failure there is a bug, not bad input.
pub(crate) fn identify(simple: &[Root]) -> Result<Vec<SimpleFactor>, RootError> {
    let mut factors = Vec::new();
    for comp in components(simple) {
        let roots: Vec<Root> = comp.iter().map(|&i| simple[i].clone()).collect();
        let factor = classify_connected(&roots)?;
        let canonical = cartan_matrix(&data::simple_roots(factor.series(), factor.rank()));
        if !isomorphic(&cartan_matrix(&roots), &canonical) {
            return Err(RootError::Internal(format!(
                "Cartan matrix of component does not match {factor}"
            )));
        }
        factors.push(factor);
    }
    Ok(factors)
}

fn components(simple: &[Root]) -> Vec<Vec<usize>> {
    let n = simple.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            let cur = comp[i];
            for j in 0..n {
                if !seen[j] && dot(&simple[cur], &simple[j]) != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn classify_connected(roots: &[Root]) -> Result<SimpleFactor, RootError> {
    let n = roots.len();
    let cartan = cartan_matrix(roots);
    let bond = |i: usize, j: usize| cartan[i][j] * cartan[j][i];
    let degree: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && bond(i, j) != 0).count())
        .collect();
    let max_bond = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| bond(i, j))
        .max()
        .unwrap_or(0);
    let unexpected = || RootError::Internal(format!("unrecognised Dynkin diagram {cartan:?}"));
    let factor = match max_bond {
        0 if n == 1 => SimpleFactor::new(Series::A, 1),
        3 => SimpleFactor::new(Series::G2, 2),
        2 => {
            let norms: Vec<i64> = roots.iter().map(|r| dot(r, r)).collect();
            let long = *norms.iter().max().unwrap();
            let long_count = norms.iter().filter(|&&x| x == long).count();
            if n == 2 {
                SimpleFactor::new(Series::B, 2)
            } else if n == 4 && long_count == 2 {
                SimpleFactor::new(Series::F4, 4)
            } else if n - long_count == 1 {
                SimpleFactor::new(Series::B, n)
            } else if long_count == 1 {
                SimpleFactor::new(Series::C, n)
            } else {
                return Err(unexpected());
            }
        }
        1 => {
            let Some(center) = (0..n).find(|&i| degree[i] == 3) else {
                return SimpleFactor::new(Series::A, n);
            };
            let mut arms: Vec<usize> = (0..n)
                .filter(|&j| j != center && bond(center, j) != 0)
                .map(|j| arm_length(&cartan, center, j))
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => SimpleFactor::new(Series::D, n),
                [1, 2, 2] => SimpleFactor::new(Series::E6, 6),
                [1, 2, 3] => SimpleFactor::new(Series::E7, 7),
                [1, 2, 4] => SimpleFactor::new(Series::E8, 8),
                _ => return Err(unexpected()),
            }
        }
        _ => return Err(unexpected()),
    };
    factor.map_err(|_| unexpected())
}

fn arm_length(cartan: &[Vec<i64>], center: usize, first: usize) -> usize {
    let n = cartan.len();
    let mut prev = center;
    let mut cur = first;
    let mut len = 1;
    loop {
        let next: Vec<usize> = (0..n)
            .filter(|&j| j != cur && j != prev && cartan[cur][j] != 0)
            .collect();
        match next.as_slice() {
            [j] => {
                prev = cur;
                cur = *j;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Backtracking search for a permutation `p` with `a[i][j] = b[p(i)][p(j)]`.
pub(crate) fn isomorphic(a: &[Vec<i64>], b: &[Vec<i64>]) -> bool {
    fn extend(a: &[Vec<i64>], b: &[Vec<i64>], perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = perm.len();
        if i == a.len() {
            return true;
        }
        for cand in 0..b.len() {
            if used[cand] {
                continue;
            }
            let consistent = perm
                .iter()
                .enumerate()
                .all(|(k, &pk)| a[i][k] == b[cand][pk] && a[k][i] == b[pk][cand]);
            if consistent && a[i][i] == b[cand][cand] {
                used[cand] = true;
                perm.push(cand);
                if extend(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[cand] = false;
            }
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::with_capacity(a.len()), &mut vec![false; b.len()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identifies_every_embedded_type() {
        let mut cases = vec![(Series::G2, 2), (Series::F4, 4), (Series::E6, 6), (Series::E7, 7), (Series::E8, 8)];
        cases.extend((1..=6).map(|n| (Series::A, n)));
        cases.extend((2..=6).map(|n| (Series::B, n)));
        cases.extend((3..=6).map(|n| (Series::C, n)));
        cases.extend((4..=6).map(|n| (Series::D, n)));
        for (s, n) in cases {
            let f = identify(&data::simple_roots(s, n)).unwrap();
            assert_eq!(f, vec![SimpleFactor::new(s, n).unwrap()]);
        }
    }

    #[test]
    fn isomorphism_respects_arrow_direction() {
        let b3 = cartan_matrix(&data::simple_roots(Series::B, 3));
        let c3 = cartan_matrix(&data::simple_roots(Series::C, 3));
        assert!(isomorphic(&b3, &b3));
        assert!(!isomorphic(&b3, &c3));
    }

    #[test]
    fn reversed_base_still_identified() {
        let mut simple = data::simple_roots(Series::D, 5);
        simple.reverse();
        assert_eq!(identify(&simple).unwrap(), vec![SimpleFactor::new(Series::D, 5).unwrap()]);
    }
}
