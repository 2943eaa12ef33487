//! Small quantum cohomology presentations.
//!
//! Rings are presented as quotients of a polynomial ring that includes the
//! quantum variable `q`, which comes last in the variable table and carries
//! positive even degree. Below the minimal Chern number quantum and classical
//! products agree, so no separate star-product is needed.
//!
//! Sign convention for `Gr_k(N)`: `y_N + (-1)^{N-k} q = 0`, `deg q = 2N`.
//! For `k = 1` this is `x^N = q`, the count of one line through two points
//! of `CP^{N-1}`. The opposite convention is the substitution `q -> -q`.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{self, bundle_relations, chern_relations, p_k, y_sequence, CohomologyError};
use crate::polyring::{CupLength, GradedPoly, PolyError, QuotientRing, Variables};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuantumError {
    #[error("the bundle presentation needs 2(k+1) = N-1; got k = {k}, N = {n}")]
    Hypothesis { k: usize, n: usize },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("relation {0} is not homogeneous for the declared degree of q")]
    NotHomogeneous(String),
    #[error("specialisation at q = {value} has dimension {got}, classical ring has {expected}")]
    NotFlat { value: String, got: usize, expected: usize },
    #[error("class ({u}, {v}) does not carry the {family} invariant")]
    ClassMismatch { u: i64, v: i64, family: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuantumKind {
    Grassmannian,
    Bundle,
}

/// A relation together with a short description of where it comes from.
#[derive(Debug, Clone)]
pub struct QuantumRelation {
    pub poly: GradedPoly,
    pub source: &'static str,
}

#[derive(Debug, Clone)]
pub struct QuantumRing {
    kind: QuantumKind,
    k: usize,
    n: usize,
    q_degree: u32,
    relations: Vec<QuantumRelation>,
    ring: QuotientRing,
    classical: QuotientRing,
}

impl QuantumRing {
    fn build(
        kind: QuantumKind,
        k: usize,
        n: usize,
        vars: &Arc<Variables>,
        relations: Vec<QuantumRelation>,
        classical: QuotientRing,
    ) -> Result<Self, QuantumError> {
        for r in &relations {
            if !r.poly.is_homogeneous() {
                return Err(QuantumError::NotHomogeneous(r.poly.to_string()));
            }
        }
        let q_degree = vars.degree(vars.len() - 1);
        let ring = QuotientRing::new(vars, relations.iter().map(|r| r.poly.clone()).collect())?;
        Ok(Self {
            kind,
            k,
            n,
            q_degree,
            relations,
            ring,
            classical,
        })
    }

    pub fn kind(&self) -> QuantumKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Real degree of `q`.
    pub fn q_degree(&self) -> u32 {
        self.q_degree
    }

    pub fn relations(&self) -> &[QuantumRelation] {
        &self.relations
    }

    /// The quotient including `q` as a variable.
    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn classical_ring(&self) -> &QuotientRing {
        &self.classical
    }

    fn q_index(&self) -> usize {
        self.ring.vars().len() - 1
    }

    /// Relations with `q = 0`, in the classical variable table.
    pub fn q_zero_relations(&self) -> Vec<GradedPoly> {
        let target = self.ring.vars().without(self.q_index());
        self.relations
            .iter()
            .map(|r| r.poly.eliminate(self.q_index(), &Q::zero(), &target))
            .collect()
    }
}

fn q_vars(mut vars: Vec<(String, u32)>, q_degree: u32) -> Arc<Variables> {
    vars.push(("q".into(), q_degree));
    Variables::new(vars).expect("even positive degrees")
}

fn sign(e: usize) -> Q {
    if e % 2 == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `QH*(Gr_k(N))`: `y_{N-k+1} = ⋯ = y_{N-1} = 0`, `y_N + (-1)^{N-k} q = 0`.
pub fn quantum_grassmannian(k: usize, n: usize) -> Result<QuantumRing, QuantumError> {
    let classical = cohomology::grassmannian_ring(k, n)?;
    let base = cohomology::grassmannian_vars(k);
    let names: Vec<(String, u32)> = (0..base.len()).map(|i| (base.name(i).to_string(), base.degree(i))).collect();
    let vars = q_vars(names, 2 * n as u32);
    let q = GradedPoly::var(&vars, k);
    let y = y_sequence(&vars, k, n);
    let mut relations: Vec<QuantumRelation> = (n - k + 1..n)
        .map(|j| QuantumRelation {
            poly: y[j].clone(),
            source: "classical Grassmannian relation, undeformed",
        })
        .collect();
    relations.push(QuantumRelation {
        poly: &y[n] + &q.scale(&sign(n - k)),
        source: "quantum Grassmannian relation (Siebert-Tian, Witten)",
    });
    QuantumRing::build(QuantumKind::Grassmannian, k, n, &vars, relations, classical)
}

/// Quantum ring of the `CP^k`-bundle `M` over `Gr_k(N)` with `2(k+1) = N-1`:
/// `f·P_k = q`, `y_{N-k+1} = ⋯ = y_{N-1} = 0`, `y_N = (-1)^{k+1} q^2 f`.
pub fn quantum_bundle_ring(k: usize, n: usize) -> Result<QuantumRing, QuantumError> {
    check_hypothesis(k, n)?;
    let classical = cohomology::bundle_ring(k, n)?;
    let base = cohomology::bundle_vars(k);
    let names: Vec<(String, u32)> = (0..base.len()).map(|i| (base.name(i).to_string(), base.degree(i))).collect();
    let vars = q_vars(names, 2 * (k as u32 + 1));
    let f = GradedPoly::var(&vars, 0);
    let q = GradedPoly::var(&vars, k + 1);
    let y = y_sequence(&vars, k, n);
    let mut relations = vec![QuantumRelation {
        poly: &(&f * &p_k(&vars, k)) - &q,
        source: "fibre-line deformation of f*P_k",
    }];
    relations.extend((n - k + 1..n).map(|j| QuantumRelation {
        poly: y[j].clone(),
        source: "Grassmannian relation, no quantum correction",
    }));
    relations.push(QuantumRelation {
        poly: &y[n] - &(&q.pow(2) * &f).scale(&sign(k + 1)),
        source: "section-class deformation of y_N",
    });
    QuantumRing::build(QuantumKind::Bundle, k, n, &vars, relations, classical)
}

fn check_hypothesis(k: usize, n: usize) -> Result<(), QuantumError> {
    if k >= 1 && 2 * (k + 1) + 1 == n {
        Ok(())
    } else {
        Err(QuantumError::Hypothesis { k, n })
    }
}

/// Classical relation sets agree term by term after `q = 0`.
pub fn q_zero_matches_classical(ring: &QuantumRing) -> Result<bool, QuantumError> {
    let classical = match ring.kind {
        QuantumKind::Grassmannian => chern_relations(ring.k, ring.n)?,
        QuantumKind::Bundle => bundle_relations(ring.k, ring.n)?,
    };
    let specialised = ring.q_zero_relations();
    if specialised.len() != classical.len() {
        return Ok(false);
    }
    for (a, b) in specialised.iter().zip(&classical) {
        if a.map_vars(b.vars())? != *b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Substitutes `q = value`. At `0` this is the classical ring; otherwise the
/// deformation must be flat (same dimension).
pub fn specialize_q(ring: &QuantumRing, value: &Q) -> Result<QuotientRing, QuantumError> {
    if value.is_zero() {
        return Ok(ring.classical.clone());
    }
    let qi = ring.q_index();
    let target = ring.ring.vars().without(qi);
    let rels: Vec<GradedPoly> = ring
        .relations
        .iter()
        .map(|r| r.poly.eliminate(qi, value, &target))
        .collect();
    let special = QuotientRing::new_inhomogeneous(&target, rels);
    let expected = ring.classical.dimension()?;
    let got = special.dimension().unwrap_or(usize::MAX);
    if got != expected {
        return Err(QuantumError::NotFlat {
            value: crate::rational::format_rational(value),
            got,
            expected,
        });
    }
    Ok(special)
}

/// Cup-length of the specialisation `q = 1`.
pub fn quantum_cup_length(ring: &QuantumRing) -> Result<CupLength, QuantumError> {
    Ok(specialize_q(ring, &Q::one())?.cup_length()?)
}

/// `u·[u] + v·[v]` in `H_2(M) = Z ⊕ Z`, with `[u]` a line in a fibre and
/// `[v]` a line in a copy of the Grassmannian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HomologyClass {
    pub u_coeff: i64,
    pub v_coeff: i64,
    pub chern_value: i64,
}

impl HomologyClass {
    /// `c_1 = (k+1) u + (N-1) v`.
    pub fn new(k: usize, n: usize, u: i64, v: i64) -> Self {
        Self {
            u_coeff: u,
            v_coeff: v,
            chern_value: (k as i64 + 1) * u + (n as i64 - 1) * v,
        }
    }

    pub fn name(&self) -> &'static str {
        match (self.u_coeff, self.v_coeff) {
            (1, 0) => "fibre line",
            (2, 0) => "double fibre line",
            (0, 1) => "section line",
            (-1, 1) => "exceptional",
            (-2, 2) => "double exceptional",
            _ => "other",
        }
    }
}

/// Classes `a[u] + b[v]`, `a ∈ [-2, 2]`, `b ∈ [0, 2]`, with
/// `0 < c_1 ≤ 2(k+1)`: the only classes allowed by the dimension condition.
pub fn contributing_classes(k: usize, n: usize) -> Result<Vec<HomologyClass>, QuantumError> {
    check_hypothesis(k, n)?;
    let bound = 2 * (k as i64 + 1);
    let mut out: Vec<HomologyClass> = (0..=2)
        .flat_map(|b| (-2..=2).map(move |a| HomologyClass::new(k, n, a, b)))
        .filter(|c| c.chern_value > 0 && c.chern_value <= bound)
        .collect();
    out.sort_by_key(|c| (c.v_coeff, c.u_coeff.abs()));
    Ok(out)
}

/// Families of three-point invariants entering the relations of `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GwFamily {
    /// `Φ_u(f^l, x_{k+1-l}, pt)`.
    FibrePullback,
    /// `Φ_u(f^k, f, pt)`.
    FibrePoint,
    /// `Φ_u(x_p, y_{j-p}, w)`.
    FibreOldRelation,
    /// `Φ_{2u}(x_p, y_{j-p}, w)`.
    DoubleFibre,
    /// `Φ_v(x_p, y_{N-1-p}, w)`.
    SectionSubtop,
    /// `Φ_v(x_k, y_{N-k}, [u])`.
    SectionFibre,
    /// `Φ_v(x_k, y_{N-k}, [v])`.
    SectionSection,
    /// Any invariant in class `[v] - [u]`.
    Exceptional,
    /// Any invariant in class `2([v] - [u])`.
    DoubleExceptional,
}

impl GwFamily {
    pub const ALL: [GwFamily; 9] = [
        GwFamily::FibrePullback,
        GwFamily::FibrePoint,
        GwFamily::FibreOldRelation,
        GwFamily::DoubleFibre,
        GwFamily::SectionSubtop,
        GwFamily::SectionFibre,
        GwFamily::SectionSection,
        GwFamily::Exceptional,
        GwFamily::DoubleExceptional,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GwFamily::FibrePullback => "fibre-pullback",
            GwFamily::FibrePoint => "fibre-point",
            GwFamily::FibreOldRelation => "fibre-old-relation",
            GwFamily::DoubleFibre => "double-fibre",
            GwFamily::SectionSubtop => "section-subtop",
            GwFamily::SectionFibre => "section-fibre",
            GwFamily::SectionSection => "section-section",
            GwFamily::Exceptional => "exceptional",
            GwFamily::DoubleExceptional => "double-exceptional",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// `(u, v)` coefficients of the curve class.
    pub fn class(self) -> (i64, i64) {
        match self {
            GwFamily::FibrePullback | GwFamily::FibrePoint | GwFamily::FibreOldRelation => (1, 0),
            GwFamily::DoubleFibre => (2, 0),
            GwFamily::SectionSubtop | GwFamily::SectionFibre | GwFamily::SectionSection => (0, 1),
            GwFamily::Exceptional => (-1, 1),
            GwFamily::DoubleExceptional => (-2, 2),
        }
    }
}

/// A tabulated invariant with the reason it takes that value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GwValue {
    #[serde(serialize_with = "crate::rational::serialize_rational")]
    pub value: Q,
    pub provenance: &'static str,
}

/// Looks up the stored value; the class must be the one the family lives in.
pub fn gw_invariant(k: usize, n: usize, class: &HomologyClass, family: GwFamily) -> Result<GwValue, QuantumError> {
    check_hypothesis(k, n)?;
    if (class.u_coeff, class.v_coeff) != family.class() {
        return Err(QuantumError::ClassMismatch {
            u: class.u_coeff,
            v: class.v_coeff,
            family: family.name(),
        });
    }
    let (value, provenance) = match family {
        GwFamily::FibrePullback => (Q::zero(), "fibre curves cannot meet a pulled-back cycle and f^l by dimension"),
        GwFamily::FibrePoint => (Q::one(), "one line through two points of the fibre CP^k"),
        GwFamily::FibreOldRelation => (Q::zero(), "pulled-back cycles have empty triple intersection by dimension"),
        GwFamily::DoubleFibre => (Q::zero(), "perturbed double fibre curves stay near a fibre line"),
        GwFamily::SectionSubtop => (Q::zero(), "no minimal-degree base curve meets both cycles for j = N-1"),
        GwFamily::SectionFibre => (sign(k + 1), "unique section curve through the fibre line, sign (-1)^(k+1)"),
        GwFamily::SectionSection => (sign(k + 1), "unique holomorphic section through a point, sign (-1)^(k+1)"),
        GwFamily::Exceptional => (Q::zero(), "no holomorphic sphere: intersection with the big singular orbit"),
        GwFamily::DoubleExceptional => (Q::zero(), "empty moduli space; bubbles would lie in the exceptional class"),
    };
    Ok(GwValue { value, provenance })
}
