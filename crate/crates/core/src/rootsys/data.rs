//! Embedded root data in the standard orthogonal models.
//!
//! Coordinates are stored doubled so that the half-integral roots of `F4`
//! and `E8` are integer vectors.
//!
//! | series | model            | simple roots                                   |
//! |--------|------------------|------------------------------------------------|
//! | A_n    | R^{n+1}, Σx = 0  | e_i − e_{i+1}                                  |
//! | B_n    | R^n              | e_i − e_{i+1}, e_n                             |
//! | C_n    | R^n              | e_i − e_{i+1}, 2e_n                            |
//! | D_n    | R^n              | e_i − e_{i+1}, e_{n−1} + e_n                   |
//! | G2     | R^3, Σx = 0      | e_1 − e_2, −2e_1 + e_2 + e_3                   |
//! | F4     | R^4              | e_2 − e_3, e_3 − e_4, e_4, ½(e_1−e_2−e_3−e_4)  |
//! | E8     | R^8              | ½(e_1+e_8−e_2−⋯−e_7), e_1+e_2, e_{i}−e_{i−1}   |
//! | E7, E6 | R^8              | E8 roots orthogonal to e_7+e_8 (and e_7−e_6)   |

use super::Series;

pub(crate) type Root = Vec<i64>;

pub(crate) fn model_dim(series: Series, rank: usize) -> usize {
    match series {
        Series::A => rank + 1,
        Series::B | Series::C | Series::D => rank,
        Series::G2 => 3,
        Series::F4 => 4,
        Series::E6 | Series::E7 | Series::E8 => 8,
    }
}

fn unit(dim: usize, i: usize, scale: i64) -> Root {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

fn add(a: &Root, b: &Root) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &Root) -> Root {
    a.iter().map(|x| -x).collect()
}

fn dot(a: &Root, b: &Root) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `±e_i ± e_j` for `i < j` (doubled coordinates).
fn long_pairs(dim: usize, upto: usize) -> Vec<Root> {
    let mut out = Vec::new();
    for i in 0..upto {
        for j in (i + 1)..upto {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = vec![0; dim];
                v[i] = si;
                v[j] = sj;
                out.push(v);
            }
        }
    }
    out
}

fn e8_roots() -> Vec<Root> {
    let mut roots = long_pairs(8, 8);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            roots.push((0..8).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
        }
    }
    roots
}

pub(crate) fn roots(series: Series, rank: usize) -> Vec<Root> {
    let n = rank;
    let dim = model_dim(series, rank);
    match series {
        Series::A => {
            let mut out = Vec::new();
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        out.push(add(&unit(dim, i, 2), &unit(dim, j, -2)));
                    }
                }
            }
            out
        }
        Series::B | Series::C | Series::D => {
            let mut out = long_pairs(dim, n);
            let scale = match series {
                Series::B => 2,
                Series::C => 4,
                _ => 0,
            };
            if scale != 0 {
                for i in 0..n {
                    out.push(unit(dim, i, scale));
                    out.push(unit(dim, i, -scale));
                }
            }
            out
        }
        Series::G2 => {
            let mut out = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        out.push(add(&unit(3, i, 2), &unit(3, j, -2)));
                    }
                }
                let long: Root = (0..3).map(|k| if k == i { 4 } else { -2 }).collect();
                out.push(neg(&long));
                out.push(long);
            }
            out
        }
        Series::F4 => {
            let mut out = long_pairs(4, 4);
            for i in 0..4 {
                out.push(unit(4, i, 2));
                out.push(unit(4, i, -2));
            }
            for mask in 0u32..16 {
                out.push((0..4).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
            }
            out
        }
        Series::E8 => e8_roots(),
        Series::E7 | Series::E6 => {
            let theta = add(&unit(8, 6, 2), &unit(8, 7, 2));
            let alpha8 = add(&unit(8, 6, 2), &unit(8, 5, -2));
            e8_roots()
                .into_iter()
                .filter(|r| dot(r, &theta) == 0)
                .filter(|r| series == Series::E7 || dot(r, &alpha8) == 0)
                .collect()
        }
    }
}

pub(crate) fn simple_roots(series: Series, rank: usize) -> Vec<Root> {
    let n = rank;
    let dim = model_dim(series, rank);
    let diff = |i: usize, j: usize| add(&unit(dim, i, 2), &unit(dim, j, -2));
    match series {
        Series::A => (0..n).map(|i| diff(i, i + 1)).collect(),
        Series::B | Series::C | Series::D => {
            let mut out: Vec<Root> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
            out.push(match series {
                Series::B => unit(dim, n - 1, 2),
                Series::C => unit(dim, n - 1, 4),
                _ => add(&unit(dim, n - 2, 2), &unit(dim, n - 1, 2)),
            });
            out
        }
        Series::G2 => vec![diff(0, 1), vec![-4, 2, 2]],
        Series::F4 => vec![diff(1, 2), diff(2, 3), unit(4, 3, 2), vec![1, -1, -1, -1]],
        Series::E6 | Series::E7 | Series::E8 => {
            let mut out = vec![
                vec![1, -1, -1, -1, -1, -1, -1, 1],
                add(&unit(8, 0, 2), &unit(8, 1, 2)),
            ];
            for i in 1..7 {
                out.push(diff(i, i - 1));
            }
            out.truncate(n);
            out
        }
    }
}
