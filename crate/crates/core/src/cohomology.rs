//! Concrete cohomology rings and topological numbers.
//!
//! * `H*(Gr_k(N)) = Q[x_1..x_k] / (y_{N-k+1}, …, y_N)` where the `y_j` are
//!   the Chern classes of the complementary bundle, determined by
//!   `Σ_{i=0}^{j} x_i y_{j-i} = 0` with `x_0 = y_0 = 1` and `x_i = 0` for
//!   `i > k`.
//! * The `CP^k`-bundle `M` over `Gr_k(N)`, with the extra degree-2 generator
//!   `f` and relation `f · P_k`, `P_k = f^k - x_1 f^{k-1} + ⋯ + (-1)^k x_k`.
//! * Sphere bundles over a base ring: adjoin `f` with `f (f - x_0) = 0`.
//! * Borel's formula `Π(1 - t^{s_i}) / Π(1 - t^{r_i})` for `G/Z(v)`.

use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::polyring::{GradedPoly, PolyError, QuotientRing, UniPoly, Variables};
use crate::rootsys::GroupType;
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("need 1 <= k < N, got k = {k}, N = {n}")]
    InvalidParameters { k: usize, n: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("inconsistent degree data: {0}")]
    InconsistentDegrees(String),
    #[error("{0} must be a class of degree 2")]
    NotDegreeTwo(String),
    #[error("base ring already has a variable named {0}")]
    NameClash(String),
}

fn check_kn(k: usize, n: usize) -> Result<(), CohomologyError> {
    if k >= 1 && k < n {
        Ok(())
    } else {
        Err(CohomologyError::InvalidParameters { k, n })
    }
}

fn x_vars(k: usize, with_f: bool) -> Arc<Variables> {
    let mut vars: Vec<(String, u32)> = Vec::new();
    if with_f {
        vars.push(("f".into(), 2));
    }
    vars.extend((1..=k).map(|i| (format!("x{i}"), 2 * i as u32)));
    Variables::new(vars).expect("even positive degrees")
}

/// Generators `x_1..x_k` with `deg x_i = 2i`.
pub fn grassmannian_vars(k: usize) -> Arc<Variables> {
    x_vars(k, false)
}

/// Generators `f, x_1..x_k`.
pub fn bundle_vars(k: usize) -> Arc<Variables> {
    x_vars(k, true)
}

/// `y_0, y_1, …, y_n` over a table containing `x1..xk`.
pub(crate) fn y_sequence(vars: &Arc<Variables>, k: usize, n: usize) -> Vec<GradedPoly> {
    let x: Vec<GradedPoly> = (1..=k)
        .map(|i| GradedPoly::var_named(vars, &format!("x{i}")).expect("x_i present"))
        .collect();
    let mut y = vec![GradedPoly::one(vars)];
    for j in 1..=n {
        let mut acc = GradedPoly::zero(vars);
        for i in 1..=j.min(k) {
            acc = &acc - &(&x[i - 1] * &y[j - i]);
        }
        y.push(acc);
    }
    y
}

/// `y_1, …, y_N` in `Q[x_1..x_k]`.
pub fn chern_classes(k: usize, n: usize) -> Result<Vec<GradedPoly>, CohomologyError> {
    check_kn(k, n)?;
    Ok(y_sequence(&grassmannian_vars(k), k, n).split_off(1))
}

/// The relations `y_{N-k+1}, …, y_N`.
pub fn chern_relations(k: usize, n: usize) -> Result<Vec<GradedPoly>, CohomologyError> {
    check_kn(k, n)?;
    Ok(y_sequence(&grassmannian_vars(k), k, n).split_off(n - k + 1))
}

pub fn grassmannian_ring(k: usize, n: usize) -> Result<QuotientRing, CohomologyError> {
    let rels = chern_relations(k, n)?;
    Ok(QuotientRing::new(&grassmannian_vars(k), rels)?)
}

/// `P_k = f^k - x_1 f^{k-1} + ⋯ + (-1)^k x_k` over a table containing `f`
/// and `x1..xk`.
pub fn p_k(vars: &Arc<Variables>, k: usize) -> GradedPoly {
    let f = GradedPoly::var_named(vars, "f").expect("f present");
    let mut out = f.pow(k as u32);
    for i in 1..=k {
        let xi = GradedPoly::var_named(vars, &format!("x{i}")).expect("x_i present");
        let term = &xi * &f.pow((k - i) as u32);
        out = if i % 2 == 1 { &out - &term } else { &out + &term };
    }
    out
}

/// Classical relations of `M`: `f · P_k`, then `y_{N-k+1}, …, y_N`.
pub fn bundle_relations(k: usize, n: usize) -> Result<Vec<GradedPoly>, CohomologyError> {
    check_kn(k, n)?;
    let vars = bundle_vars(k);
    let f = GradedPoly::var(&vars, 0);
    let mut rels = vec![&f * &p_k(&vars, k)];
    rels.extend(y_sequence(&vars, k, n).split_off(n - k + 1));
    Ok(rels)
}

pub fn bundle_ring(k: usize, n: usize) -> Result<QuotientRing, CohomologyError> {
    let rels = bundle_relations(k, n)?;
    Ok(QuotientRing::new(&bundle_vars(k), rels)?)
}

/// Adjoins `f` of degree 2 with the single relation `f (f - x0)`.
pub fn sphere_bundle_ring(base: &QuotientRing, x0: &GradedPoly) -> Result<QuotientRing, CohomologyError> {
    if base.vars().index("f").is_some() {
        return Err(CohomologyError::NameClash("f".into()));
    }
    base.dimension()?;
    if !x0.is_zero() && x0.degree() != Some(2) {
        return Err(CohomologyError::NotDegreeTwo(format!("x0 = {x0}")));
    }
    let mut names: Vec<(String, u32)> = vec![("f".into(), 2)];
    names.extend(
        base.vars()
            .names()
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), base.vars().degree(i))),
    );
    let vars = Variables::new(names)?;
    let f = GradedPoly::var(&vars, 0);
    let x0 = x0.map_vars(&vars)?;
    let mut rels = base
        .relations()
        .iter()
        .map(|r| r.map_vars(&vars))
        .collect::<Result<Vec<_>, _>>()?;
    rels.push(&f * &(&f - &x0));
    Ok(QuotientRing::new(&vars, rels)?)
}

/// Degrees entering Borel's formula for `G / Z(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorelDegrees {
    pub group_type: GroupType,
    pub s_degrees: Vec<u32>,
    pub r_degrees: Vec<u32>,
}

fn doubled_degrees(g: &GroupType) -> Vec<u32> {
    let mut out: Vec<u32> = g
        .factors()
        .iter()
        .flat_map(|f| f.invariant_degrees())
        .map(|d| 2 * d)
        .collect();
    out.extend(std::iter::repeat(2).take(g.torus_rank()));
    out.sort_unstable();
    out
}

impl BorelDegrees {
    /// Degrees for `G` and a subgroup `Z` of the same rank.
    pub fn new(group: &GroupType, centralizer: &GroupType) -> Result<Self, CohomologyError> {
        if group.rank() != centralizer.rank() {
            return Err(CohomologyError::InconsistentDegrees(format!(
                "rank {} of {group} differs from rank {} of {centralizer}",
                group.rank(),
                centralizer.rank()
            )));
        }
        let bd = Self {
            group_type: group.clone(),
            s_degrees: doubled_degrees(group),
            r_degrees: doubled_degrees(centralizer),
        };
        if bd.weyl_product() != weyl_order(group) {
            return Err(CohomologyError::InconsistentDegrees(format!(
                "degree table of {group} disagrees with its Weyl group order"
            )));
        }
        Ok(bd)
    }

    /// `Π s_i / 2`.
    pub fn weyl_product(&self) -> u128 {
        self.s_degrees.iter().map(|&s| (s / 2) as u128).product()
    }
}

fn weyl_order(g: &GroupType) -> u128 {
    g.factors().iter().map(|f| f.weyl_group_order()).product()
}

fn one_minus_t_pow(k: u32) -> UniPoly {
    let mut p = UniPoly::monomial(-Q::one(), k as usize);
    p = &p + &UniPoly::constant(Q::one());
    p
}

/// `Π(1 - t^{s_i}) / Π(1 - t^{r_i})`, which must divide exactly.
pub fn borel_poincare(bd: &BorelDegrees) -> Result<UniPoly, CohomologyError> {
    if bd.s_degrees.len() != bd.r_degrees.len() {
        return Err(CohomologyError::InconsistentDegrees("different numbers of degrees".into()));
    }
    let num = bd
        .s_degrees
        .iter()
        .fold(UniPoly::constant(Q::one()), |acc, &s| &acc * &one_minus_t_pow(s));
    let den = bd
        .r_degrees
        .iter()
        .fold(UniPoly::constant(Q::one()), |acc, &r| &acc * &one_minus_t_pow(r));
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(CohomologyError::InconsistentDegrees(format!(
            "{den} does not divide {num}"
        )));
    }
    Ok(quot)
}

/// Coefficients of `t^0, t^2, t^4, …`; `None` if an odd power occurs or a
/// coefficient is not a nonnegative integer.
pub fn even_betti(p: &UniPoly) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if i % 2 == 1 {
            if !c.is_zero() {
                return None;
            }
            continue;
        }
        if !c.is_integer() || c.is_negative() {
            return None;
        }
        out.push(c.to_integer().try_into().ok()?);
    }
    Some(out)
}

/// First Chern class of `M` and its minimal Chern number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub first_chern: GradedPoly,
    pub minimal_chern_number: u64,
}

impl ChernData {
    /// Value of a degree-2 class `a·f + b·x_1` on `u·[u] + v·[v]`, where
    /// `[u]` is the line in a fibre (`f = 1, x_1 = 0`) and `[v]` a line in a
    /// copy of the Grassmannian (`f = 0, x_1 = 1`).
    pub fn evaluate(class: &GradedPoly, u: i64, v: i64) -> Q {
        let vars = class.vars();
        let coeff = |name: &str| {
            vars.index(name)
                .map(|i| class.coefficient(GradedPoly::var(vars, i).leading().expect("variable").0))
                .unwrap_or_else(Q::zero)
        };
        coeff("f") * Q::from_integer(u.into()) + coeff("x1") * Q::from_integer(v.into())
    }
}

/// `c_1(M) = (N-1) x_1 + (k+1) f`, minimal Chern number `gcd(N-1, k+1)`.
pub fn chern_data(k: usize, n: usize) -> Result<ChernData, CohomologyError> {
    check_kn(k, n)?;
    let vars = bundle_vars(k);
    let f = GradedPoly::var(&vars, 0);
    let x1 = GradedPoly::var(&vars, 1);
    let c1 = &x1.scale(&Q::from_integer((n as i64 - 1).into())) + &f.scale(&Q::from_integer((k as i64 + 1).into()));
    Ok(ChernData {
        first_chern: c1,
        minimal_chern_number: ((n - 1) as u64).gcd(&(k as u64 + 1)),
    })
}

fn binomial(m: u32, j: u32) -> Q {
    let mut c = Q::one();
    for i in 0..j {
        c = c * Q::from_integer((m - i).into()) / Q::from_integer((i + 1).into());
    }
    c
}

/// `p(t) = ⟨(x + t α x0)^m, [top]⟩` where `2m` is the top degree of `base`.
pub fn cone_polynomial(
    base: &QuotientRing,
    x: &GradedPoly,
    alpha: &Q,
    x0: &GradedPoly,
) -> Result<UniPoly, CohomologyError> {
    for (name, p) in [("x", x), ("x0", x0)] {
        if !p.is_zero() && p.degree() != Some(2) {
            return Err(CohomologyError::NotDegreeTwo(format!("{name} = {p}")));
        }
    }
    let vars = base.vars();
    let x = x.map_vars(vars)?;
    let x0 = x0.map_vars(vars)?;
    let m = base.top_degree()? / 2;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut alpha_pow = Q::one();
    for j in 0..=m {
        let class = &x.pow(m - j) * &x0.pow(j);
        coeffs.push(binomial(m, j) * &alpha_pow * base.top_evaluate(&class)?);
        alpha_pow *= alpha;
    }
    Ok(UniPoly::new(coeffs))
}

/// Whether `α > 0` and `(x + t α x0)^m > 0` for all `t ∈ [0, 1]`, decided
/// with a Sturm sequence.
pub fn symplectic_cone_check(
    base: &QuotientRing,
    x: &GradedPoly,
    alpha: &Q,
    x0: &GradedPoly,
) -> Result<bool, CohomologyError> {
    let p = cone_polynomial(base, x, alpha, x0)?;
    if !alpha.is_positive() {
        return Ok(false);
    }
    Ok(p.positive_on(&Q::zero(), &Q::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::rational::q_int;

    #[test]
    fn whitney_recursion_examples() {
        let rels = chern_relations(2, 4).unwrap();
        let shown: Vec<String> = rels.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["-x1^3 + 2*x1*x2", "x1^4 - 3*x1^2*x2 + x2^2"]);
        for m in 1..=6 {
            let y = &chern_classes(1, 7).unwrap()[m - 1];
            let sign = if m % 2 == 0 { "" } else { "-" };
            let expected = if m == 1 { format!("{sign}x1") } else { format!("{sign}x1^{m}") };
            assert_eq!(y.to_string(), expected);
        }
        assert_eq!(chern_classes(3, 5).unwrap()[0].to_string(), "-x1");
        assert!(chern_relations(3, 3).is_err());
        assert!(chern_relations(0, 3).is_err());
    }

    #[test]
    fn small_rings() {
        let g = grassmannian_ring(1, 2).unwrap();
        assert_eq!(g.hilbert_series().unwrap(), [1, 1]);
        assert_eq!(grassmannian_ring(2, 4).unwrap().hilbert_series().unwrap(), [1, 1, 2, 1, 1]);
        let m = bundle_ring(1, 2).unwrap();
        assert_eq!(m.hilbert_series().unwrap(), [1, 2, 1]);
        assert_eq!(p_k(&bundle_vars(1), 1).to_string(), "f - x1");
        assert_eq!(bundle_ring(1, 5).unwrap().dimension().unwrap(), 10);
    }

    #[test]
    fn sphere_bundles() {
        let base = grassmannian_ring(1, 2).unwrap();
        let x = parse_poly(base.vars(), "x1").unwrap();
        let twisted = sphere_bundle_ring(&base, &x).unwrap();
        assert_eq!(twisted.hilbert_series().unwrap(), [1, 2, 1]);
        let rels: Vec<String> = twisted.relations().iter().map(ToString::to_string).collect();
        assert_eq!(rels, ["x1^2", "f^2 - f*x1"]);
        let trivial = sphere_bundle_ring(&base, &GradedPoly::zero(base.vars())).unwrap();
        assert_eq!(trivial.dimension().unwrap(), 4);
        let bad = parse_poly(base.vars(), "x1^2").unwrap();
        assert!(sphere_bundle_ring(&base, &bad).is_err());
    }

    #[test]
    fn borel_examples() {
        let su2 = GroupType::su(2);
        let p = borel_poincare(&BorelDegrees::new(&su2, &GroupType::torus(1)).unwrap()).unwrap();
        assert_eq!(p, UniPoly::from_ints(&[1, 0, 1]));
        let su3 = GroupType::su(3);
        let z = GroupType::special_unitary_blocks(&[2, 1]);
        let p = borel_poincare(&BorelDegrees::new(&su3, &z).unwrap()).unwrap();
        assert_eq!(even_betti(&p).unwrap(), [1, 1, 1]);
        let bad = BorelDegrees {
            group_type: su2,
            s_degrees: vec![4],
            r_degrees: vec![6],
        };
        assert!(matches!(borel_poincare(&bad), Err(CohomologyError::InconsistentDegrees(_))));
    }

    #[test]
    fn chern_numbers() {
        let c = chern_data(1, 5).unwrap();
        assert_eq!(c.first_chern.to_string(), "2*f + 4*x1");
        assert_eq!(c.minimal_chern_number, 2);
        let c = chern_data(2, 7).unwrap();
        assert_eq!(c.first_chern.to_string(), "3*f + 6*x1");
        assert_eq!(c.minimal_chern_number, 3);
        assert_eq!(chern_data(1, 2).unwrap().minimal_chern_number, 1);
        assert_eq!(ChernData::evaluate(&c.first_chern, 1, 0), q_int(3));
        assert_eq!(ChernData::evaluate(&c.first_chern, 0, 1), q_int(6));
    }

    #[test]
    fn cone_examples() {
        let base = grassmannian_ring(1, 2).unwrap();
        let x = parse_poly(base.vars(), "x1").unwrap();
        assert!(symplectic_cone_check(&base, &x, &q_int(1), &x).unwrap());
        assert_eq!(cone_polynomial(&base, &x, &q_int(1), &x).unwrap(), UniPoly::from_ints(&[1, 1]));
        assert!(!symplectic_cone_check(&base, &x, &q_int(-1), &x).unwrap());
        let zero = GradedPoly::zero(base.vars());
        assert!(!symplectic_cone_check(&base, &-&x, &q_int(1), &zero).unwrap());
    }
}
