//! Root systems of compact Lie groups and centralizers of Cartan elements.
//!
//! The centralizer `Z(v)` of an element `v` of a Cartan subalgebra is the
//! connected subgroup whose roots are exactly the roots vanishing on `v`.
//! Its local type is read off from the Dynkin diagram of that subsystem.

mod data;
mod dynkin;
mod group_type;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg;
use crate::Q;
use data::Root;

pub use group_type::{GroupType, Series, SimpleFactor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("invalid simple type {series:?} of rank {rank}")]
    InvalidType { series: Series, rank: usize },
    #[error("cannot parse group type {0:?}")]
    ParseGroup(String),
    #[error("Cartan element has {got} coordinates, the model space has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("coordinates of an A-series or G2 block must sum to zero")]
    NotZeroSum,
    #[error("internal root system failure: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Block {
    factor: SimpleFactor,
    offset: usize,
    len: usize,
}

impl Block {
    fn zero_sum(&self) -> bool {
        matches!(self.factor.series(), Series::A | Series::G2)
    }
}

/// A root system in orthogonal coordinates, possibly a direct sum of simple
/// systems in disjoint coordinate blocks plus root-free torus coordinates.
#[derive(Debug, Clone)]
pub struct RootSystem {
    blocks: Vec<Block>,
    torus_rank: usize,
    dim: usize,
    roots: Vec<Root>,
    simple: Vec<Root>,
}

/// Builds the standard root system of a simple type.
pub fn build_root_system(series: Series, rank: usize) -> Result<RootSystem, RootError> {
    let factor = SimpleFactor::new(series, rank)?;
    Ok(RootSystem::from_parts(&[factor], 0))
}

impl RootSystem {
    /// Direct sum realising a group type; each torus factor gets one extra
    /// coordinate on which no root depends.
    pub fn for_type(group: &GroupType) -> Self {
        Self::from_parts(group.factors(), group.torus_rank())
    }

    fn from_parts(factors: &[SimpleFactor], torus_rank: usize) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0;
        for &factor in factors {
            let len = data::model_dim(factor.series(), factor.rank());
            blocks.push(Block { factor, offset, len });
            offset += len;
        }
        let dim = offset + torus_rank;
        let embed = |r: Root, b: &Block| {
            let mut v = vec![0; dim];
            v[b.offset..b.offset + b.len].copy_from_slice(&r);
            v
        };
        let mut roots = Vec::new();
        let mut simple = Vec::new();
        for b in &blocks {
            let (s, n) = (b.factor.series(), b.factor.rank());
            roots.extend(data::roots(s, n).into_iter().map(|r| embed(r, b)));
            simple.extend(data::simple_roots(s, n).into_iter().map(|r| embed(r, b)));
        }
        Self {
            blocks,
            torus_rank,
            dim,
            roots,
            simple,
        }
    }

    /// Series of a simple system, `None` for direct sums.
    pub fn series(&self) -> Option<Series> {
        match self.blocks.as_slice() {
            [b] if self.torus_rank == 0 => Some(b.factor.series()),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.simple.len() + self.torus_rank
    }

    /// Dimension of the coordinate model.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn group_type(&self) -> GroupType {
        GroupType::new(self.blocks.iter().map(|b| b.factor).collect(), self.torus_rank)
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> Vec<Vec<Q>> {
        self.roots.iter().map(|r| halve(r)).collect()
    }

    pub fn simple_roots(&self) -> Vec<Vec<Q>> {
        self.simple.iter().map(|r| halve(r)).collect()
    }

    fn is_single_a(&self) -> bool {
        self.series() == Some(Series::A)
    }

    /// Coefficients of a root in the basis of simple roots.
    pub fn simple_coefficients(&self, root: &[Q]) -> Option<Vec<Q>> {
        let cols: Vec<Vec<Q>> = self.simple_roots();
        let a: Vec<Vec<Q>> = (0..self.dim)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        linalg::solve(&a, root)
    }
}

fn halve(r: &Root) -> Vec<Q> {
    r.iter().map(|&x| Q::new(x.into(), 2.into())).collect()
}

fn pairing_is_zero(root: &Root, v: &[Q]) -> bool {
    root.iter()
        .zip(v)
        .fold(Q::zero(), |acc, (&r, x)| acc + x * Q::from_integer(r.into()))
        .is_zero()
}

/// An element of the Cartan subalgebra in the coordinate model of a root
/// system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanElement {
    coords: Vec<Q>,
}

impl CartanElement {
    pub fn new(rs: &RootSystem, coords: Vec<Q>) -> Result<Self, RootError> {
        if coords.len() != rs.dim {
            return Err(RootError::DimensionMismatch {
                expected: rs.dim,
                got: coords.len(),
            });
        }
        for b in rs.blocks.iter().filter(|b| b.zero_sum()) {
            let sum: Q = coords[b.offset..b.offset + b.len].iter().sum();
            if !sum.is_zero() {
                return Err(RootError::NotZeroSum);
            }
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    fn check(&self, rs: &RootSystem) -> Result<(), RootError> {
        if self.coords.len() == rs.dim {
            Ok(())
        } else {
            Err(RootError::DimensionMismatch {
                expected: rs.dim,
                got: self.coords.len(),
            })
        }
    }
}

/// No root vanishes on `v`.
pub fn is_regular(rs: &RootSystem, v: &CartanElement) -> Result<bool, RootError> {
    v.check(rs)?;
    Ok(!rs.roots.iter().any(|r| pairing_is_zero(r, &v.coords)))
}

fn lex_positive(r: &Root) -> bool {
    r.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn sum(a: &Root, b: &Root) -> Root {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn diff(a: &Root, b: &Root) -> Root {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Simple system of a closed subsystem with respect to lexicographic
/// positivity. Entries of a root are bounded by 4 in absolute value, so this
/// is the same as pairing with `(10^{d-1}, …, 10, 1)`.
fn simple_system(subsystem: &[Root]) -> Vec<Root> {
    let positive: Vec<&Root> = subsystem.iter().filter(|r| lex_positive(r)).collect();
    let set: HashSet<&Root> = positive.iter().copied().collect();
    positive
        .iter()
        .filter(|r| !positive.iter().any(|a| set.contains(&diff(r, a))))
        .map(|r| (*r).clone())
        .collect()
}

fn check_closed(subsystem: &[Root], all: &HashSet<&Root>) -> Result<(), RootError> {
    let set: HashSet<&Root> = subsystem.iter().collect();
    for a in subsystem {
        let minus: Root = a.iter().map(|x| -x).collect();
        if !set.contains(&minus) {
            return Err(RootError::Internal("vanishing roots not closed under negation".into()));
        }
        for b in subsystem {
            let s = sum(a, b);
            if all.contains(&s) && !set.contains(&s) {
                return Err(RootError::Internal("vanishing roots not closed under addition".into()));
            }
        }
    }
    Ok(())
}

/// Local type of the centralizer `Z(v)`.
///
/// For a simple system of type `A_n` the result carries the block sizes of
/// `S(U_{n_1} × ⋯ × U_{n_k})`, given by the multiplicities of equal
/// coordinates of `v`.
pub fn centralizer_type(rs: &RootSystem, v: &CartanElement) -> Result<GroupType, RootError> {
    v.check(rs)?;
    let vanishing: Vec<Root> = rs
        .roots
        .iter()
        .filter(|r| pairing_is_zero(r, &v.coords))
        .cloned()
        .collect();
    let all: HashSet<&Root> = rs.roots.iter().collect();
    check_closed(&vanishing, &all)?;
    let simple = simple_system(&vanishing);
    let factors = dynkin::identify(&simple)?;
    let ss_rank: usize = factors.iter().map(SimpleFactor::rank).sum();
    if ss_rank != simple.len() {
        return Err(RootError::Internal("simple system rank mismatch".into()));
    }
    let local = GroupType::new(factors, rs.rank() - ss_rank);
    if !rs.is_single_a() {
        return Ok(local);
    }
    let mut counts: BTreeMap<&Q, usize> = BTreeMap::new();
    for x in &v.coords {
        *counts.entry(x).or_default() += 1;
    }
    let blocks: Vec<usize> = counts.into_values().collect();
    let presented = GroupType::special_unitary_blocks(&blocks);
    if presented != local {
        return Err(RootError::Internal(format!(
            "block form {presented} disagrees with Dynkin type {local}"
        )));
    }
    Ok(presented)
}

/// A point in the open face of the closed Weyl chamber on which exactly the
/// simple roots in `mask` vanish.
fn face_point(rs: &RootSystem, mask: u32) -> CartanElement {
    let n = rs.simple.len();
    let gram: Vec<Vec<Q>> = rs
        .simple
        .iter()
        .map(|a| {
            rs.simple
                .iter()
                .map(|b| Q::from_integer(a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>().into()))
                .collect()
        })
        .collect();
    let rhs: Vec<Q> = (0..n)
        .map(|k| if mask >> k & 1 == 1 { Q::zero() } else { Q::one() })
        .collect();
    let c = linalg::solve(&gram, &rhs).expect("Gram matrix of a base is invertible");
    let mut coords = vec![Q::zero(); rs.dim];
    for (ck, alpha) in c.iter().zip(&rs.simple) {
        for (x, &a) in coords.iter_mut().zip(alpha) {
            *x += ck * Q::from_integer(a.into());
        }
    }
    CartanElement { coords }
}

/// Centralizer type of the face cut out by each subset of simple roots,
/// indexed by the subset bitmask.
pub fn centralizer_lattice(rs: &RootSystem) -> Result<Vec<GroupType>, RootError> {
    let n = rs.simple.len();
    (0..1u32 << n)
        .map(|mask| centralizer_type(rs, &face_point(rs, mask)))
        .collect()
}

/// Every centralizer type of a Cartan element, up to conjugacy.
pub fn enumerate_centralizer_types(rs: &RootSystem) -> Result<BTreeSet<GroupType>, RootError> {
    Ok(centralizer_lattice(rs)?.into_iter().collect())
}

/// Pairs `(Z(v), Z(w))` of centralizer types with `Z(v) ⊆ Z(w)` up to
/// conjugacy. Nested Levi subsystems are conjugate to nested standard ones,
/// so subset pairs of simple roots suffice.
pub fn nested_centralizer_pairs(rs: &RootSystem) -> Result<BTreeSet<(GroupType, GroupType)>, RootError> {
    let lattice = centralizer_lattice(rs)?;
    let mut out = BTreeSet::new();
    for (big, zw) in lattice.iter().enumerate() {
        let big = big as u32;
        let mut sub = big;
        loop {
            out.insert((lattice[sub as usize].local(), zw.local()));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & big;
        }
    }
    Ok(out)
}

type SubsystemSet = Arc<BTreeSet<Vec<SimpleFactor>>>;

/// Semisimple subsystems of full rank of a simple type, as sorted factor
/// lists, obtained by repeatedly deleting a node from an extended Dynkin
/// diagram (Borel–de Siebenthal). Includes the type itself.
pub fn maximal_rank_subsystems(factor: SimpleFactor) -> SubsystemSet {
    static CACHE: OnceLock<Mutex<HashMap<SimpleFactor, SubsystemSet>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&factor) {
        return hit.clone();
    }
    let result = Arc::new(compute_subsystems(factor));
    cache
        .lock()
        .expect("cache poisoned")
        .insert(factor, result.clone());
    result
}

fn one_step(factor: SimpleFactor) -> Vec<Vec<SimpleFactor>> {
    let rs = build_root_system(factor.series(), factor.rank()).expect("canonical factor");
    let highest = rs
        .roots
        .iter()
        .max_by_key(|r| {
            let c = rs.simple_coefficients(&halve(r)).expect("root in span of base");
            c.iter().sum::<Q>()
        })
        .expect("nonempty root system")
        .clone();
    let mut extended = rs.simple.clone();
    extended.push(highest.iter().map(|x| -x).collect());
    let mut out = Vec::new();
    for skip in 0..extended.len() {
        let rest: Vec<Root> = extended
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, r)| r.clone())
            .collect();
        let mut types = dynkin::identify(&rest).expect("extended diagram minus a node is a base");
        types.sort();
        out.push(types);
    }
    out
}

fn compute_subsystems(factor: SimpleFactor) -> BTreeSet<Vec<SimpleFactor>> {
    let mut seen = BTreeSet::new();
    let mut queue = vec![vec![factor]];
    while let Some(current) = queue.pop() {
        if !seen.insert(current.clone()) {
            continue;
        }
        for (i, &c) in current.iter().enumerate() {
            for replacement in one_step(c) {
                let mut next: Vec<SimpleFactor> = current
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, f)| *f)
                    .collect();
                next.extend(replacement);
                next.sort();
                if !seen.contains(&next) {
                    queue.push(next);
                }
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_int;

    fn v(rs: &RootSystem, xs: &[i64]) -> CartanElement {
        CartanElement::new(rs, xs.iter().map(|&x| q_int(x)).collect()).unwrap()
    }

    fn f(s: Series, n: usize) -> SimpleFactor {
        SimpleFactor::new(s, n).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, n) in [
            (Series::A, 1),
            (Series::A, 4),
            (Series::B, 3),
            (Series::C, 4),
            (Series::D, 5),
            (Series::G2, 2),
            (Series::F4, 4),
            (Series::E6, 6),
            (Series::E7, 7),
            (Series::E8, 8),
        ] {
            let rs = build_root_system(s, n).unwrap();
            assert_eq!(rs.root_count(), 2 * f(s, n).positive_root_count(), "{s:?}{n}");
            assert_eq!(rs.rank(), n);
        }
        assert!(build_root_system(Series::D, 3).is_err());
        assert!(build_root_system(Series::E6, 5).is_err());
    }

    #[test]
    fn roots_are_nonnegative_or_nonpositive_combinations() {
        for (s, n) in [(Series::B, 3), (Series::G2, 2), (Series::F4, 4), (Series::E6, 6)] {
            let rs = build_root_system(s, n).unwrap();
            for r in rs.roots() {
                let c = rs.simple_coefficients(&r).unwrap();
                assert!(c.iter().all(|x| x.is_integer()));
                let nonneg = c.iter().all(|x| *x >= Q::zero());
                let nonpos = c.iter().all(|x| *x <= Q::zero());
                assert!(nonneg || nonpos, "{s:?}: {r:?}");
            }
        }
    }

    #[test]
    fn a2_examples() {
        let rs = build_root_system(Series::A, 2).unwrap();
        assert!(is_regular(&rs, &v(&rs, &[1, 0, -1])).unwrap());
        assert!(!is_regular(&rs, &v(&rs, &[1, 1, -2])).unwrap());
        let z = centralizer_type(&rs, &v(&rs, &[1, 1, -2])).unwrap();
        assert_eq!(z.to_string(), "S(U2×U1)");
        assert_eq!(centralizer_type(&rs, &v(&rs, &[1, 0, -1])).unwrap(), GroupType::torus(2));
        assert_eq!(centralizer_type(&rs, &v(&rs, &[0, 0, 0])).unwrap(), GroupType::su(3));
        assert_eq!(
            CartanElement::new(&rs, vec![q_int(1), q_int(1)]),
            Err(RootError::DimensionMismatch { expected: 3, got: 2 })
        );
        assert_eq!(CartanElement::new(&rs, vec![q_int(1); 3]), Err(RootError::NotZeroSum));
    }

    #[test]
    fn enumerations_of_small_types() {
        let a2 = enumerate_centralizer_types(&build_root_system(Series::A, 2).unwrap()).unwrap();
        let expected: BTreeSet<GroupType> =
            [GroupType::torus(2), GroupType::u(2), GroupType::su(3)].into_iter().collect();
        assert_eq!(a2, expected);
        let g2 = enumerate_centralizer_types(&build_root_system(Series::G2, 2).unwrap()).unwrap();
        let expected: BTreeSet<GroupType> = [
            GroupType::torus(2),
            GroupType::su(2).product(&GroupType::torus(1)),
            GroupType::simple(Series::G2, 2).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(g2, expected);
    }

    #[test]
    fn e8_and_f4_centralizers() {
        let e8 = enumerate_centralizer_types(&build_root_system(Series::E8, 8).unwrap()).unwrap();
        assert!(e8.contains(&"E7xT1".parse().unwrap()));
        assert!(e8.contains(&"SO14xT1".parse().unwrap()));
        assert!(e8.iter().all(|g| g.rank() == 8));
        let f4 = enumerate_centralizer_types(&build_root_system(Series::F4, 4).unwrap()).unwrap();
        assert!(f4.contains(&"SO7xT1".parse().unwrap()));
        assert!(f4.contains(&"Sp3xT1".parse().unwrap()));
    }

    #[test]
    fn product_systems() {
        let so4 = RootSystem::for_type(&GroupType::so(4));
        assert_eq!(so4.rank(), 2);
        let types = enumerate_centralizer_types(&so4).unwrap();
        assert_eq!(types.len(), 3);
        let mixed = RootSystem::for_type(&"SU2xT1".parse().unwrap());
        let z = centralizer_type(&mixed, &v(&mixed, &[1, -1, 5])).unwrap();
        assert_eq!(z, GroupType::torus(2));
    }

    #[test]
    fn borel_de_siebenthal_subsystems() {
        let b2 = maximal_rank_subsystems(f(Series::B, 2));
        assert!(b2.contains(&vec![f(Series::A, 1), f(Series::A, 1)]));
        assert!(!maximal_rank_subsystems(f(Series::A, 2)).contains(&vec![f(Series::A, 1), f(Series::A, 1)]));
        let g2 = maximal_rank_subsystems(f(Series::G2, 2));
        assert!(g2.contains(&vec![f(Series::A, 2)]));
        assert!(g2.contains(&vec![f(Series::A, 1), f(Series::A, 1)]));
        let e8 = maximal_rank_subsystems(f(Series::E8, 8));
        assert!(e8.contains(&vec![f(Series::A, 8)]));
        assert!(e8.contains(&vec![f(Series::D, 8)]));
        let mut a1x8 = vec![f(Series::A, 1); 8];
        a1x8.sort();
        assert!(e8.contains(&a1x8));
    }

    #[test]
    fn nested_pairs_of_a3() {
        let rs = build_root_system(Series::A, 3).unwrap();
        let pairs = nested_centralizer_pairs(&rs).unwrap();
        let zv = GroupType::special_unitary_blocks(&[1, 1, 2]).local();
        let zmax = GroupType::special_unitary_blocks(&[2, 2]).local();
        assert!(pairs.contains(&(zv.clone(), zmax.clone())));
        assert!(!pairs.contains(&(zmax, zv)));
    }
}
