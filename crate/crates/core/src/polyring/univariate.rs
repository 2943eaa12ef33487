//! Dense univariate polynomials and Sturm sequences.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::format_rational;
use crate::Q;

/// `Σ c_i t^i`, stored without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        let mut v = vec![Q::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Sturm sequence `p, p', -rem(p, p'), …`.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        if self.is_zero() {
            return seq;
        }
        let mut next = self.derivative();
        while !next.is_zero() {
            let prev = seq.last().expect("nonempty").clone();
            seq.push(next.clone());
            next = -&prev.div_rem(&next).1;
        }
        seq
    }

    /// Number of distinct real roots in `(a, b]`, for `a < b`.
    pub fn count_roots(&self, a: &Q, b: &Q) -> usize {
        let seq = self.sturm_sequence();
        let v = |t: &Q| sign_changes(seq.iter().map(|p| p.eval(t)));
        v(a).saturating_sub(v(b))
    }

    /// Whether `p(t) > 0` for every `t` in `[a, b]`, decided exactly.
    pub fn positive_on(&self, a: &Q, b: &Q) -> bool {
        if !self.eval(a).is_positive() || !self.eval(b).is_positive() {
            return false;
        }
        self.count_roots(a, b) == 0
    }
}

fn sign_changes(values: impl Iterator<Item = Q>) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for v in values.filter(|v| !v.is_zero()) {
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            changes += 1;
        }
        last = Some(pos);
    }
    changes
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        self + &-o
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

/// `1 + 2*t^2 - 1/2*t^3` style, increasing powers.
impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(usize, &Q)> = self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in terms.into_iter().enumerate() {
            let abs = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if power.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{}*{power}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}
