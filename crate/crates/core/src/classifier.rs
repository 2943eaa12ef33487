//! Orbit-type bookkeeping for cohomogeneity-one Hamiltonian actions.
//!
//! A quintuple `(G, Z_v, Z_max, G_max, G_m)` records the group, the
//! centralizer of a generic moment value, the centralizer over a singular
//! orbit, the singular isotropy group and the principal isotropy group.
//! Everything is handled at the level of local types.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg;
use crate::rational::format_rational;
use crate::rootsys::{
    build_root_system, centralizer_type, enumerate_centralizer_types, nested_centralizer_pairs, CartanElement,
    GroupType, RootError, RootSystem, Series,
};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("{zv} is not contained in both {zmin} and {zmax}")]
    NotContained { zv: String, zmin: String, zmax: String },
    #[error("two one-dimensional projective fibres cannot occur (Kirwan convexity)")]
    CaseIvcExcluded,
    #[error("quintuple is not admissible: {0}")]
    NotAdmissible(InadmissibleReason),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CaseLabel {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseLabel::I => "I",
            CaseLabel::II => "II",
            CaseLabel::III => "III",
            CaseLabel::IV => "IV",
        };
        write!(f, "{s}")
    }
}

/// Which centralizers coincide with the generic one.
pub fn case_of(zv: &GroupType, zmin: &GroupType, zmax: &GroupType) -> Result<CaseLabel, ClassifierError> {
    if !zv.embeds_in(zmin) || !zv.embeds_in(zmax) {
        return Err(ClassifierError::NotContained {
            zv: zv.to_string(),
            zmin: zmin.to_string(),
            zmax: zmax.to_string(),
        });
    }
    Ok(match (zmin == zv, zmax == zv) {
        (true, true) => CaseLabel::I,
        (true, false) => CaseLabel::II,
        (false, true) => CaseLabel::III,
        (false, false) => CaseLabel::IV,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseIvSubcase {
    /// Both projective fibres of dimension at least 2.
    IVa,
    /// One fibre `CP^1`, the other `CP^l` with `l ≥ 2`.
    IVb,
}

/// Splits case IV by the complex dimensions of `Z_max/Z_v` and `Z_min/Z_v`.
pub fn case_iv_subcase(
    zv: &GroupType,
    zmin: &GroupType,
    zmax: &GroupType,
) -> Result<(CaseIvSubcase, usize, usize), ClassifierError> {
    if case_of(zv, zmin, zmax)? != CaseLabel::IV {
        return Err(ClassifierError::Degenerate("not in case IV".into()));
    }
    let l = (zmax.dim() - zv.dim()) / 2;
    let k = (zmin.dim() - zv.dim()) / 2;
    match (k.min(l), k.max(l)) {
        (1, 1) => Err(ClassifierError::CaseIvcExcluded),
        (1, _) => Ok((CaseIvSubcase::IVb, k, l)),
        _ => Ok((CaseIvSubcase::IVa, k, l)),
    }
}

/// A compact simple group up to covering, as opposed to its local type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AmbientForm {
    SU(usize),
    SO(usize),
    Sp(usize),
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl AmbientForm {
    pub fn group_type(&self) -> GroupType {
        match *self {
            AmbientForm::SU(n) => GroupType::su(n),
            AmbientForm::SO(n) => GroupType::so(n),
            AmbientForm::Sp(n) => GroupType::sp(n),
            AmbientForm::G2 => GroupType::simple(Series::G2, 2).expect("G2"),
            AmbientForm::F4 => GroupType::simple(Series::F4, 4).expect("F4"),
            AmbientForm::E6 => GroupType::simple(Series::E6, 6).expect("E6"),
            AmbientForm::E7 => GroupType::simple(Series::E7, 7).expect("E7"),
            AmbientForm::E8 => GroupType::simple(Series::E8, 8).expect("E8"),
        }
    }

    /// Simple forms of rank at most `max_rank`, skipping coverings of forms
    /// already listed under a smaller index (`Sp(1) = SU(2)`).
    pub fn all(max_rank: usize) -> Vec<Self> {
        let mut out: Vec<Self> = (2..=max_rank + 1).map(AmbientForm::SU).collect();
        out.extend((3..=2 * max_rank + 1).map(AmbientForm::SO));
        out.extend((2..=max_rank).map(AmbientForm::Sp));
        for (form, rank) in [
            (AmbientForm::G2, 2),
            (AmbientForm::F4, 4),
            (AmbientForm::E6, 6),
            (AmbientForm::E7, 7),
            (AmbientForm::E8, 8),
        ] {
            if rank <= max_rank {
                out.push(form);
            }
        }
        out
    }

    /// Isotropy group `K` of a compact rank-one symmetric space `G/K` and
    /// the stabilizer of `K` on the unit sphere of the isotropy
    /// representation, if `G/K` exists.
    pub fn rank_one_isotropy(&self) -> Option<(GroupType, GroupType)> {
        match *self {
            AmbientForm::SO(n) if n >= 3 => Some((GroupType::so(n - 1), GroupType::so(n - 2))),
            AmbientForm::SU(n) if n >= 2 => Some((GroupType::u(n - 1), GroupType::u(n - 2))),
            AmbientForm::Sp(n) if n >= 2 => Some((
                GroupType::sp(n - 1).product(&GroupType::sp(1)),
                GroupType::sp(n - 2).product(&GroupType::sp(1)),
            )),
            AmbientForm::F4 => Some((GroupType::spin(9), GroupType::spin(7))),
            _ => None,
        }
    }
}

impl fmt::Display for AmbientForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AmbientForm::SU(n) => write!(f, "SU({n})"),
            AmbientForm::SO(n) => write!(f, "SO({n})"),
            AmbientForm::Sp(n) => write!(f, "Sp({n})"),
            AmbientForm::G2 => write!(f, "G2"),
            AmbientForm::F4 => write!(f, "F4"),
            AmbientForm::E6 => write!(f, "E6"),
            AmbientForm::E7 => write!(f, "E7"),
            AmbientForm::E8 => write!(f, "E8"),
        }
    }
}

impl Serialize for AmbientForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A transitive action of `acting_group` on `S^{sphere_dim}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereAction {
    pub name: String,
    pub acting_group: GroupType,
    pub stabilizer: GroupType,
    pub sphere_dim: usize,
    pub citation: &'static str,
}

const MSB: &str = "Montgomery-Samelson, Borel: compact groups acting transitively on spheres";

/// Transitive sphere actions with acting group of rank at most `max_rank`.
pub fn sphere_actions(max_rank: usize) -> Vec<SphereAction> {
    let mut out = Vec::new();
    let mut push = |name: String, acting: GroupType, stab: GroupType, dim: usize| {
        if acting.rank() <= max_rank {
            out.push(SphereAction {
                name,
                acting_group: acting,
                stabilizer: stab,
                sphere_dim: dim,
                citation: MSB,
            });
        }
    };
    push("SO(2)/Z_p".into(), GroupType::so(2), GroupType::trivial(), 1);
    for n in 3..=2 * max_rank + 1 {
        push(format!("SO({n})/SO({})", n - 1), GroupType::so(n), GroupType::so(n - 1), n - 1);
    }
    for n in 1..=max_rank {
        push(format!("U({n})/U({})", n - 1), GroupType::u(n), GroupType::u(n - 1), 2 * n - 1);
    }
    for n in 2..=max_rank + 1 {
        push(format!("SU({n})/SU({})", n - 1), GroupType::su(n), GroupType::su(n - 1), 2 * n - 1);
    }
    for n in 1..=max_rank {
        let sp1 = GroupType::sp(1);
        push(format!("Sp({n})/Sp({})", n - 1), GroupType::sp(n), GroupType::sp(n - 1), 4 * n - 1);
        push(
            format!("Sp({n})Sp(1)/Sp({})Sp(1)", n - 1),
            GroupType::sp(n).product(&sp1),
            GroupType::sp(n - 1).product(&sp1),
            4 * n - 1,
        );
        push(
            format!("Sp({n})U(1)/Sp({})U(1)", n - 1),
            GroupType::sp(n).product(&GroupType::torus(1)),
            GroupType::sp(n - 1).product(&GroupType::torus(1)),
            4 * n - 1,
        );
    }
    push("G2/SU(3)".into(), GroupType::simple(Series::G2, 2).expect("G2"), GroupType::su(3), 6);
    push("Spin(7)/G2".into(), GroupType::spin(7), GroupType::simple(Series::G2, 2).expect("G2"), 7);
    push("Spin(9)/Spin(7)".into(), GroupType::spin(9), GroupType::spin(7), 15);
    out
}

/// A row `(A, B)` with `G_max = A·K`, `G_m = B·K` for a common factor `K`
/// acting trivially on the sphere.
pub fn match_sphere(gmax: &GroupType, gm: &GroupType) -> Option<SphereAction> {
    sphere_actions(gmax.rank()).into_iter().find(|row| {
        match (gmax.quotient_factor(&row.acting_group), gm.quotient_factor(&row.stabilizer)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Quintuple {
    pub g: GroupType,
    pub zv: GroupType,
    pub zmax: GroupType,
    pub gmax: GroupType,
    pub gm: GroupType,
    /// Global form of `G` when it is simple and known.
    pub ambient: Option<AmbientForm>,
}

impl Quintuple {
    pub fn new(g: GroupType, zv: GroupType, zmax: GroupType, gmax: GroupType, gm: GroupType) -> Self {
        Self {
            g,
            zv,
            zmax,
            gmax,
            gm,
            ambient: None,
        }
    }

    pub fn with_ambient(mut self, form: AmbientForm) -> Self {
        self.ambient = Some(form);
        self
    }

    fn members(&self) -> [&GroupType; 5] {
        [&self.g, &self.zv, &self.zmax, &self.gmax, &self.gm]
    }

    /// Local types only, ambient form dropped.
    pub fn local(&self) -> Self {
        let [g, zv, zmax, gmax, gm] = self.members().map(GroupType::local);
        Self::new(g, zv, zmax, gmax, gm)
    }

    /// Every member times a common factor.
    pub fn times(&self, h: &GroupType) -> Self {
        let [g, zv, zmax, gmax, gm] = self.members().map(|x| x.product(h));
        Self::new(g, zv, zmax, gmax, gm)
    }
}

impl fmt::Display for Quintuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = match self.ambient {
            Some(form) => form.to_string(),
            None => self.g.to_string(),
        };
        write!(f, "({g}, {}, {}, {}, {})", self.zv, self.zmax, self.gmax, self.gm)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InadmissibleReason {
    /// `Z_v ⊆ Z_max` is not a nested pair of centralizers in `G`.
    NotNestedCentralizers,
    /// `Z_max = G_max`.
    ZmaxEqualsGmax,
    /// `Z_v` is not `G_m` times a circle.
    ZvNotGmTimesCircle,
    /// `G_max / G_m` is not a sphere from the table.
    NotSphere,
    /// `G_max` does not fit inside `Z_max`.
    GmaxNotInZmax,
}

impl fmt::Display for InadmissibleReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            InadmissibleReason::NotNestedCentralizers => "Z_v ⊆ Z_max are not nested centralizers of G",
            InadmissibleReason::ZmaxEqualsGmax => "Z_max equals G_max",
            InadmissibleReason::ZvNotGmTimesCircle => "Z_v is not G_m times a circle",
            InadmissibleReason::NotSphere => "G_max/G_m is not a sphere in the table",
            InadmissibleReason::GmaxNotInZmax => "G_max is not contained in Z_max",
        };
        write!(f, "{s}")
    }
}

type PairSet = Arc<BTreeSet<(GroupType, GroupType)>>;

fn nested_pairs(g: &GroupType) -> Result<PairSet, RootError> {
    static CACHE: OnceLock<Mutex<HashMap<GroupType, PairSet>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = g.local();
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let pairs = Arc::new(nested_centralizer_pairs(&RootSystem::for_type(&key))?);
    cache.lock().expect("cache poisoned").insert(key, pairs.clone());
    Ok(pairs)
}

/// Checks the definition, returning the first violated condition.
pub fn check_admissible(q: &Quintuple) -> Result<Result<SphereAction, InadmissibleReason>, RootError> {
    let pairs = nested_pairs(&q.g)?;
    if !pairs.contains(&(q.zv.local(), q.zmax.local())) {
        return Ok(Err(InadmissibleReason::NotNestedCentralizers));
    }
    if q.zmax == q.gmax {
        return Ok(Err(InadmissibleReason::ZmaxEqualsGmax));
    }
    if q.zv != q.gm.product(&GroupType::torus(1)) {
        return Ok(Err(InadmissibleReason::ZvNotGmTimesCircle));
    }
    let Some(row) = match_sphere(&q.gmax, &q.gm) else {
        return Ok(Err(InadmissibleReason::NotSphere));
    };
    if !q.gmax.embeds_in(&q.zmax) {
        return Ok(Err(InadmissibleReason::GmaxNotInZmax));
    }
    Ok(Ok(row))
}

pub fn is_admissible(q: &Quintuple) -> Result<bool, RootError> {
    Ok(check_admissible(q)?.is_ok())
}

/// No splitting `G = G_1·G_2` with a coadjoint stabilizer `H_1 ⊆ G_1`
/// dividing all members such that the `G_2` remainder is admissible.
pub fn is_effective(q: &Quintuple) -> Result<bool, ClassifierError> {
    if let Err(reason) = check_admissible(q)? {
        return Err(ClassifierError::NotAdmissible(reason));
    }
    let factors = q.g.factors();
    let torus = q.g.torus_rank();
    for mask in 0u32..(1 << factors.len()) {
        for t1 in 0..=torus {
            let chosen: Vec<_> = (0..factors.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| factors[i])
                .collect();
            let g1 = GroupType::new(chosen, t1);
            if g1.is_finite() || g1 == q.g {
                continue;
            }
            let g2 = q.g.quotient_factor(&g1).expect("g1 is a factor of g");
            for h1 in enumerate_centralizer_types(&RootSystem::for_type(&g1))? {
                let rest: Option<Vec<GroupType>> = [&q.zv, &q.zmax, &q.gmax, &q.gm]
                    .iter()
                    .map(|x| x.quotient_factor(&h1))
                    .collect();
                let Some(rest) = rest else { continue };
                let reduced = Quintuple::new(g2.clone(), rest[0].clone(), rest[1].clone(), rest[2].clone(), rest[3].clone());
                if is_admissible(&reduced)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Members of the list of effective admissible quintuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KnownQuintuple {
    /// `(SO(2k+1), SO(2k-1)×S^1, SO(2k+1), SO(2k), SO(2k-1))`, `k ≥ 2`.
    Odd(usize),
    /// `(SO(3), S^1, SO(3), SO(2), Z_p)`.
    So3,
    /// `(SO(2k+2), SO(2k)×S^1, SO(2k+2), SO(2k+1), SO(2k))`, `k ≥ 1`.
    Even(usize),
    /// `(SU(2), U(1), SU(2), U(1), Z_p)`.
    Su2,
}

impl KnownQuintuple {
    pub fn label(&self) -> String {
        match self {
            KnownQuintuple::Odd(k) => format!("1 (k={k})"),
            KnownQuintuple::So3 => "1a".into(),
            KnownQuintuple::Even(k) => format!("2 (k={k})"),
            KnownQuintuple::Su2 => "3".into(),
        }
    }

    pub fn quintuple(&self) -> Quintuple {
        let circle = GroupType::torus(1);
        match *self {
            KnownQuintuple::Odd(k) => {
                let n = 2 * k + 1;
                Quintuple::new(
                    GroupType::so(n),
                    GroupType::so(n - 2).product(&circle),
                    GroupType::so(n),
                    GroupType::so(n - 1),
                    GroupType::so(n - 2),
                )
                .with_ambient(AmbientForm::SO(n))
            }
            KnownQuintuple::So3 => Quintuple::new(
                GroupType::so(3),
                circle.clone(),
                GroupType::so(3),
                GroupType::so(2),
                GroupType::trivial(),
            )
            .with_ambient(AmbientForm::SO(3)),
            KnownQuintuple::Even(k) => {
                let n = 2 * k + 2;
                Quintuple::new(
                    GroupType::so(n),
                    GroupType::so(n - 2).product(&circle),
                    GroupType::so(n),
                    GroupType::so(n - 1),
                    GroupType::so(n - 2),
                )
                .with_ambient(AmbientForm::SO(n))
            }
            KnownQuintuple::Su2 => Quintuple::new(
                GroupType::su(2),
                GroupType::u(1),
                GroupType::su(2),
                GroupType::u(1),
                GroupType::trivial(),
            )
            .with_ambient(AmbientForm::SU(2)),
        }
    }

    /// All list members with `rank G ≤ max_rank`.
    pub fn catalogue(max_rank: usize) -> Vec<Self> {
        let mut out = vec![KnownQuintuple::So3, KnownQuintuple::Su2];
        out.extend((2..=max_rank).map(KnownQuintuple::Odd));
        out.extend((1..max_rank).map(KnownQuintuple::Even));
        out.sort();
        out
    }

    /// Whether a form belongs to the families the list covers.
    pub fn covers(form: AmbientForm) -> bool {
        matches!(form, AmbientForm::SO(_) | AmbientForm::SU(2))
    }

    pub fn identify(q: &Quintuple) -> Option<Self> {
        let rank = q.g.rank().max(1);
        Self::catalogue(rank)
            .into_iter()
            .find(|known| known.quintuple() == *q && known.quintuple().ambient == q.ambient)
    }
}

/// Result of the quintuple search.
#[derive(Debug, Clone, Serialize)]
pub struct EnumeratedQuintuple {
    pub quintuple: Quintuple,
    pub sphere: String,
    pub sphere_dim: usize,
    pub catalogue_label: Option<String>,
    pub citation: &'static str,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct EnumerationStats {
    /// Admissible and effective before the normal-slice condition.
    pub admissible_effective: usize,
    /// Removed by the normal-slice condition.
    pub removed_by_slice_condition: usize,
}

const LIST_CITATION: &str =
    "list of effective admissible quintuples for cohomogeneity-one Hamiltonian actions";

/// Joins nested centralizer pairs of every simple form of rank at most
/// `max_rank` with the sphere table, keeps admissible effective quintuples
/// and then applies the normal-slice condition: a transitive sphere action
/// on the fibre over a singular orbit forces `Z_max = G` with `G ⊃ G_max`
/// a compact rank-one symmetric pair whose isotropy-sphere stabilizer is
/// `G_m`.
pub fn enumerate_quintuples_with_stats(
    max_rank: usize,
) -> Result<(Vec<EnumeratedQuintuple>, EnumerationStats), ClassifierError> {
    let mut stats = EnumerationStats::default();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for form in AmbientForm::all(max_rank) {
        let g = form.group_type();
        let pairs = nested_pairs(&g)?;
        for (zv, zmax) in pairs.iter() {
            if zv.torus_rank() == 0 {
                continue;
            }
            let gm = GroupType::new(zv.factors().to_vec(), zv.torus_rank() - 1);
            for row in sphere_actions(g.rank()) {
                let Some(common) = gm.quotient_factor(&row.stabilizer) else {
                    continue;
                };
                let gmax = row.acting_group.product(&common);
                let q = Quintuple::new(g.clone(), zv.clone(), zmax.clone(), gmax, gm.clone()).with_ambient(form);
                if check_admissible(&q)?.is_err() || !is_effective(&q)? {
                    continue;
                }
                let key = (form, format!("{}", q.local()));
                if !seen.insert(key) {
                    continue;
                }
                stats.admissible_effective += 1;
                let slice_ok = q.zmax == g
                    && form
                        .rank_one_isotropy()
                        .is_some_and(|(k, s)| q.gmax == k && q.gm == s);
                if !slice_ok {
                    stats.removed_by_slice_condition += 1;
                    continue;
                }
                let row = match_sphere(&q.gmax, &q.gm).expect("admissible implies a sphere row");
                out.push(EnumeratedQuintuple {
                    catalogue_label: KnownQuintuple::identify(&q).map(|k| k.label()),
                    sphere: row.name,
                    sphere_dim: row.sphere_dim,
                    quintuple: q,
                    citation: LIST_CITATION,
                });
            }
        }
    }
    Ok((out, stats))
}

pub fn enumerate_quintuples(max_rank: usize) -> Result<Vec<EnumeratedQuintuple>, ClassifierError> {
    Ok(enumerate_quintuples_with_stats(max_rank)?.0)
}

/// Solution of the linear system for the shift `α` in the blow-down case.
#[derive(Debug, Clone, Serialize)]
pub struct AlphaSolution {
    #[serde(serialize_with = "ser_vec")]
    pub v: Vec<Q>,
    #[serde(serialize_with = "ser_vec")]
    pub alpha: Vec<Q>,
    #[serde(serialize_with = "ser_vec")]
    pub v_plus_alpha: Vec<Q>,
    #[serde(serialize_with = "ser_vec")]
    pub v_minus_alpha: Vec<Q>,
    pub type_v: GroupType,
    pub type_v_plus_alpha: GroupType,
    pub type_v_minus_alpha: GroupType,
    /// Role of `Z(v+α)` as forced by the equations: it is `S(U_1×U_{l+1})`.
    pub plus_role_from_equations: &'static str,
    /// Role assigned to `Z(v+α)` in the geometric statement.
    pub plus_role_stated: &'static str,
    /// `(l+2)α_1 = l(x_1-x_2)`, `α_2 = α_1 - x_1 + x_2`, `α_3 = α_2 + x_2 - x_3`.
    #[serde(serialize_with = "ser_vec")]
    pub closed_form_candidate: Vec<Q>,
    pub closed_form_satisfies_sum: bool,
}

fn ser_vec<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

/// Solves `α_1 + α_2 + l α_3 = 0`, `x_2 + α_2 = x_3 + α_3`,
/// `x_1 - α_1 = x_2 - α_2` for `v = (x_1, x_2, x_3, …, x_3)` in `su(l+2)`
/// and checks the three centralizer types with the root system `A_{l+1}`.
pub fn solve_alpha(l: usize, x1: &Q, x2: &Q, x3: &Q) -> Result<AlphaSolution, ClassifierError> {
    if l < 2 {
        return Err(ClassifierError::Degenerate(format!("need l >= 2, got {l}")));
    }
    let lq = Q::from_integer((l as i64).into());
    if !(x1 + x2 + &lq * x3).is_zero() {
        return Err(ClassifierError::Degenerate("x1 + x2 + l*x3 must vanish".into()));
    }
    if x1 == x2 {
        return Err(ClassifierError::Degenerate("x1 = x2".into()));
    }
    let one = Q::one();
    let zero = Q::zero();
    let a = vec![
        vec![one.clone(), one.clone(), lq.clone()],
        vec![zero.clone(), one.clone(), -one.clone()],
        vec![one.clone(), -one.clone(), zero.clone()],
    ];
    let b = vec![zero.clone(), x3 - x2, x1 - x2];
    let sol = linalg::solve(&a, &b).expect("the system has determinant l + 2");
    let spread = |a1: &Q, a2: &Q, a3: &Q| {
        let mut v = vec![a1.clone(), a2.clone()];
        v.extend(std::iter::repeat(a3.clone()).take(l));
        v
    };
    let v = spread(x1, x2, x3);
    let alpha = spread(&sol[0], &sol[1], &sol[2]);
    let plus_common = x2 + &sol[1];
    let minus_common = x1 - &sol[0];
    if plus_common.is_zero() || minus_common.is_zero() {
        return Err(ClassifierError::Degenerate("v ± α collapses to zero".into()));
    }
    let vp: Vec<Q> = v.iter().zip(&alpha).map(|(a, b)| a + b).collect();
    let vm: Vec<Q> = v.iter().zip(&alpha).map(|(a, b)| a - b).collect();
    let rs = build_root_system(Series::A, l + 1)?;
    let ty = |x: &[Q]| -> Result<GroupType, ClassifierError> {
        Ok(centralizer_type(&rs, &CartanElement::new(&rs, x.to_vec())?)?)
    };
    let (tv, tp, tm) = (ty(&v)?, ty(&vp)?, ty(&vm)?);
    let want_v = GroupType::special_unitary_blocks(&[1, 1, l]);
    let want_p = GroupType::special_unitary_blocks(&[1, l + 1]);
    let want_m = GroupType::special_unitary_blocks(&[2, l]);
    if tv != want_v || tp != want_p || tm != want_m {
        return Err(ClassifierError::Degenerate(format!(
            "centralizers {tv}, {tp}, {tm} do not have the expected shapes"
        )));
    }
    let c1 = &lq * (x1 - x2) / Q::from_integer((l as i64 + 2).into());
    let c2 = &c1 - x1 + x2;
    let c3 = &c2 + x2 - x3;
    let closed_form_satisfies_sum = (&c1 + &c2 + &lq * &c3).is_zero();
    Ok(AlphaSolution {
        v,
        alpha,
        v_plus_alpha: vp,
        v_minus_alpha: vm,
        type_v: tv,
        type_v_plus_alpha: tp,
        type_v_minus_alpha: tm,
        plus_role_from_equations: "Z_min",
        plus_role_stated: "Z_max",
        closed_form_candidate: spread(&c1, &c2, &c3),
        closed_form_satisfies_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_int;

    fn su_blocks(b: &[usize]) -> GroupType {
        GroupType::special_unitary_blocks(b)
    }

    #[test]
    fn case_labels() {
        let t2 = GroupType::torus(2);
        assert_eq!(case_of(&t2, &t2, &t2).unwrap(), CaseLabel::I);
        let zv = su_blocks(&[1, 1, 2]);
        assert_eq!(case_of(&zv, &zv, &su_blocks(&[2, 2])).unwrap(), CaseLabel::II);
        assert_eq!(case_of(&zv, &su_blocks(&[1, 3]), &zv).unwrap(), CaseLabel::III);
        assert_eq!(case_of(&zv, &su_blocks(&[1, 3]), &su_blocks(&[2, 2])).unwrap(), CaseLabel::IV);
        assert!(case_of(&GroupType::su(3), &t2, &t2).is_err());
    }

    #[test]
    fn case_iv_subcases() {
        let zv = su_blocks(&[1, 1, 2]);
        let (sub, k, l) = case_iv_subcase(&zv, &su_blocks(&[1, 3]), &su_blocks(&[2, 2])).unwrap();
        assert_eq!(sub, CaseIvSubcase::IVb);
        assert_eq!((k, l), (2, 1));
        let zv = su_blocks(&[1, 1]).product(&GroupType::torus(1));
        let u2t = GroupType::u(2).product(&GroupType::torus(0));
        assert!(matches!(
            case_iv_subcase(&GroupType::torus(2), &GroupType::u(2), &u2t),
            Err(ClassifierError::CaseIvcExcluded) | Err(ClassifierError::Degenerate(_))
        ));
        let _ = zv;
    }

    #[test]
    fn sphere_table_dimensions() {
        for row in sphere_actions(5) {
            assert_eq!(row.acting_group.dim() - row.stabilizer.dim(), row.sphere_dim, "{}", row.name);
        }
    }

    #[test]
    fn sphere_table_matches_data_file() {
        let recorded = include_str!("../data/sphere_actions.json");
        let current = serde_json::to_string_pretty(&sphere_actions(4)).unwrap() + "\n";
        assert_eq!(recorded, current);
    }

    #[test]
    fn catalogue_items_are_admissible_and_effective() {
        for item in KnownQuintuple::catalogue(4) {
            let q = item.quintuple();
            assert!(is_admissible(&q).unwrap(), "{}", item.label());
            assert!(is_effective(&q).unwrap(), "{}", item.label());
        }
    }

    #[test]
    fn common_factor_is_not_effective() {
        let q = KnownQuintuple::Odd(2).quintuple().local().times(&GroupType::su(2));
        assert!(is_admissible(&q).unwrap());
        assert!(!is_effective(&q).unwrap());
    }

    #[test]
    fn zmax_equal_gmax_rejected() {
        let mut q = KnownQuintuple::Odd(2).quintuple();
        q.zmax = q.gmax.clone();
        assert_eq!(check_admissible(&q).unwrap().unwrap_err(), InadmissibleReason::NotNestedCentralizers);
        let q = Quintuple::new(GroupType::su(2), GroupType::u(1), GroupType::u(1), GroupType::u(1), GroupType::trivial());
        assert_eq!(check_admissible(&q).unwrap().unwrap_err(), InadmissibleReason::ZmaxEqualsGmax);
    }

    #[test]
    fn alpha_example() {
        let s = solve_alpha(2, &q_int(3), &q_int(1), &q_int(-2)).unwrap();
        let shown: Vec<String> = s.alpha.iter().map(format_rational).collect();
        assert_eq!(shown, ["0", "-2", "1", "1"]);
        assert_eq!(s.type_v_plus_alpha.to_string(), "S(U3×U1)");
        assert_eq!(s.type_v_minus_alpha.to_string(), "S(U2×U2)");
        let c: Vec<String> = s.closed_form_candidate.iter().map(format_rational).collect();
        assert_eq!(c, ["1", "-1", "2", "2"]);
        assert!(!s.closed_form_satisfies_sum);
        assert!(solve_alpha(2, &q_int(1), &q_int(1), &q_int(-1)).is_err());
        assert!(solve_alpha(2, &q_int(1), &q_int(2), &q_int(0)).is_err());
        assert!(solve_alpha(1, &q_int(1), &q_int(0), &q_int(-1)).is_err());
    }
}
