//! Quotients of graded polynomial rings by an ideal given through relations.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::groebner::{buchberger, groebner_basis, reduce};
use super::poly::{GradedPoly, Monomial, Variables};
use super::PolyError;
use crate::linalg::EchelonBasis;
use crate::Q;

/// Longest nonvanishing product of positive-degree generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CupLength {
    Finite(usize),
    /// Powers of the augmentation ideal stabilise at a nonzero subspace, so
    /// products of arbitrary length survive.
    Unbounded,
}

impl CupLength {
    pub fn at_least(&self, m: usize) -> bool {
        match self {
            CupLength::Finite(n) => *n >= m,
            CupLength::Unbounded => true,
        }
    }
}

impl fmt::Display for CupLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CupLength::Finite(n) => write!(f, "{n}"),
            CupLength::Unbounded => write!(f, "unbounded"),
        }
    }
}

impl Serialize for CupLength {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            CupLength::Finite(n) => s.serialize_u64(*n as u64),
            CupLength::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

/// `Q[vars] / (relations)` with a reduced Gröbner basis and, when finite
/// dimensional, its basis of standard monomials.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    vars: Arc<Variables>,
    relations: Vec<GradedPoly>,
    basis: Vec<GradedPoly>,
    standard: Option<Vec<Monomial>>,
}

impl QuotientRing {
    /// Requires homogeneous relations.
    pub fn new(vars: &Arc<Variables>, relations: Vec<GradedPoly>) -> Result<Self, PolyError> {
        let relations = relations
            .iter()
            .map(|r| r.map_vars(vars))
            .collect::<Result<Vec<_>, _>>()?;
        let basis = groebner_basis(&relations)?;
        Ok(Self::finish(vars, relations, basis))
    }

    /// For specialisations of homogeneous ideals, which are no longer graded.
    pub(crate) fn new_inhomogeneous(vars: &Arc<Variables>, relations: Vec<GradedPoly>) -> Self {
        let basis = buchberger(&relations);
        Self::finish(vars, relations, basis)
    }

    fn finish(vars: &Arc<Variables>, relations: Vec<GradedPoly>, basis: Vec<GradedPoly>) -> Self {
        let mut ring = Self {
            vars: vars.clone(),
            relations,
            basis,
            standard: None,
        };
        if ring.has_pure_powers() {
            ring.standard = Some(ring.enumerate_standard());
        }
        ring
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    pub fn relations(&self) -> &[GradedPoly] {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &[GradedPoly] {
        &self.basis
    }

    fn leads(&self) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().filter_map(|g| g.leading().map(|(m, _)| m))
    }

    fn has_pure_powers(&self) -> bool {
        (0..self.vars.len()).all(|i| {
            self.leads()
                .any(|m| m.exps().iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
        })
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        !self.leads().any(|l| l.divides(m))
    }

    fn enumerate_standard(&self) -> Vec<Monomial> {
        let mut found = BTreeSet::new();
        let one = Monomial::one(self.vars.len());
        if !self.is_standard(&one) {
            return Vec::new();
        }
        let mut stack = vec![one];
        while let Some(m) = stack.pop() {
            if !found.insert(m.clone()) {
                continue;
            }
            for i in 0..self.vars.len() {
                let next = m.times_var(&self.vars, i);
                if self.is_standard(&next) && !found.contains(&next) {
                    stack.push(next);
                }
            }
        }
        found.into_iter().collect()
    }

    pub fn is_finite_dimensional(&self) -> bool {
        self.standard.is_some()
    }

    /// Standard monomials in increasing term order.
    pub fn standard_monomials(&self) -> Result<&[Monomial], PolyError> {
        self.standard.as_deref().ok_or(PolyError::NotFiniteDimensional)
    }

    pub fn dimension(&self) -> Result<usize, PolyError> {
        Ok(self.standard_monomials()?.len())
    }

    /// Remainder modulo the Gröbner basis; `p` may use any table whose
    /// variables all belong to the ring.
    pub fn normal_form(&self, p: &GradedPoly) -> Result<GradedPoly, PolyError> {
        let p = if Arc::ptr_eq(p.vars(), &self.vars) {
            p.clone()
        } else {
            p.map_vars(&self.vars)?
        };
        Ok(reduce(&p, &self.basis))
    }

    pub fn is_zero_class(&self, p: &GradedPoly) -> Result<bool, PolyError> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Betti numbers `b_0, b_2, b_4, …` (entry `i` counts real degree `2i`).
    pub fn hilbert_series(&self) -> Result<Vec<usize>, PolyError> {
        let standard = self.standard_monomials()?;
        let top = standard.iter().map(Monomial::weight).max().unwrap_or(0) as usize;
        let mut out = vec![0; if standard.is_empty() { 0 } else { top + 1 }];
        for m in standard {
            out[m.weight() as usize] += 1;
        }
        Ok(out)
    }

    /// Real degree of the top nonzero graded piece.
    pub fn top_degree(&self) -> Result<u32, PolyError> {
        let standard = self.standard_monomials()?;
        Ok(2 * standard.iter().map(Monomial::weight).max().unwrap_or(0))
    }

    /// Pairing with the fundamental class: the coefficient of the unique
    /// top-degree standard monomial in the normal form of `p`.
    pub fn top_evaluate(&self, p: &GradedPoly) -> Result<Q, PolyError> {
        let standard = self.standard_monomials()?;
        let top_weight = standard.iter().map(Monomial::weight).max().unwrap_or(0);
        let tops: Vec<&Monomial> = standard.iter().filter(|m| m.weight() == top_weight).collect();
        let [top] = tops.as_slice() else {
            return Err(PolyError::TopNotOneDimensional(tops.len()));
        };
        if !p.is_zero() && p.degree() != Some(2 * top_weight) {
            return Err(PolyError::DegreeMismatch {
                expected: 2 * top_weight,
                found: p.to_string(),
            });
        }
        Ok(self.normal_form(p)?.coefficient(top))
    }

    /// Coordinates of the normal form in the standard monomial basis.
    pub fn coordinates(&self, p: &GradedPoly) -> Result<Vec<Q>, PolyError> {
        let standard = self.standard_monomials()?;
        let nf = self.normal_form(p)?;
        Ok(standard.iter().map(|m| nf.coefficient(m)).collect())
    }

    /// Largest `m` with `I^m ≠ 0`, where `I` is the ideal generated by the
    /// variables. Computed through the descending chain of subspaces
    /// `I^{m+1} = span{w·x_i : w ∈ I^m}`.
    pub fn cup_length(&self) -> Result<CupLength, PolyError> {
        let standard = self.standard_monomials()?;
        let gens: Vec<GradedPoly> = (0..self.vars.len()).map(|i| GradedPoly::var(&self.vars, i)).collect();
        let index: HashMap<&Monomial, usize> = standard.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let coords = |p: &GradedPoly| {
            let mut v = vec![Q::zero(); standard.len()];
            for (m, c) in p.terms() {
                v[index[m]] = c.clone();
            }
            v
        };
        let span = |elements: &[GradedPoly]| {
            let mut echelon = EchelonBasis::new();
            let mut kept = Vec::new();
            for w in elements {
                for g in &gens {
                    let p = reduce(&(w * g), &self.basis);
                    if echelon.insert(coords(&p)) {
                        kept.push(p);
                    }
                }
            }
            kept
        };
        let all: Vec<GradedPoly> = standard
            .iter()
            .map(|m| GradedPoly::term(&self.vars, m.clone(), num_traits::One::one()))
            .collect();
        let mut current = span(&all);
        let mut m = 0;
        loop {
            if current.is_empty() {
                return Ok(CupLength::Finite(m));
            }
            m += 1;
            let next = span(&current);
            if next.len() == current.len() {
                return Ok(CupLength::Unbounded);
            }
            current = next;
        }
    }
}
