//! Compact group types up to local isomorphism.

use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use super::RootError;

/// Cartan–Killing series of a simple compact Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Series {
    /// Rank fixed by the exceptional series, `None` for the classical ones.
    pub fn fixed_rank(self) -> Option<usize> {
        match self {
            Series::E6 => Some(6),
            Series::E7 => Some(7),
            Series::E8 => Some(8),
            Series::F4 => Some(4),
            Series::G2 => Some(2),
            _ => None,
        }
    }

    /// Whether `(self, rank)` names a simple type in canonical form
    /// (A n≥1, B n≥2, C n≥3, D n≥4, exceptional ranks fixed).
    pub fn is_valid_rank(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B => rank >= 2,
            Series::C => rank >= 3,
            Series::D => rank >= 4,
            _ => self.fixed_rank() == Some(rank),
        }
    }
}

/// A simple factor `(series, rank)` in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleFactor {
    series: Series,
    rank: usize,
}

impl SimpleFactor {
    /// Canonical simple factor; low-rank coincidences are rejected, use
    /// [`GroupType::classical`] to normalise those.
    pub fn new(series: Series, rank: usize) -> Result<Self, RootError> {
        if series.is_valid_rank(rank) {
            Ok(Self { series, rank })
        } else {
            Err(RootError::InvalidType { series, rank })
        }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 2),
            Series::B | Series::C => n * (2 * n + 1),
            Series::D => n * (2 * n - 1),
            Series::E6 => 78,
            Series::E7 => 133,
            Series::E8 => 248,
            Series::F4 => 52,
            Series::G2 => 14,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        (self.dim() - self.rank) / 2
    }

    /// Degrees `d_i` of the basic invariant polynomials.
    pub fn invariant_degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match self.series {
            Series::A => (2..=n + 1).collect(),
            Series::B | Series::C => (1..=n).map(|i| 2 * i).collect(),
            Series::D => {
                let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Series::E6 => vec![2, 5, 6, 8, 9, 12],
            Series::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            Series::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            Series::F4 => vec![2, 6, 8, 12],
            Series::G2 => vec![2, 6],
        }
    }

    /// Order of the Weyl group, tabulated independently of the degrees.
    pub fn weyl_group_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (1u128 << n) * fact(n),
            Series::D => (1u128 << (n - 1)) * fact(n),
            Series::E6 => 51_840,
            Series::E7 => 2_903_040,
            Series::E8 => 696_729_600,
            Series::F4 => 1_152,
            Series::G2 => 12,
        }
    }

    fn sort_key(&self) -> (usize, Series) {
        (usize::MAX - self.rank, self.series)
    }
}

impl fmt::Display for SimpleFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rank;
        match self.series {
            Series::A => write!(f, "SU{}", n + 1),
            Series::B => write!(f, "SO{}", 2 * n + 1),
            Series::C => write!(f, "Sp{}", n),
            Series::D => write!(f, "SO{}", 2 * n),
            Series::E6 => write!(f, "E6"),
            Series::E7 => write!(f, "E7"),
            Series::E8 => write!(f, "E8"),
            Series::F4 => write!(f, "F4"),
            Series::G2 => write!(f, "G2"),
        }
    }
}

/// A compact connected group up to local isomorphism: a multiset of simple
/// factors together with a central torus.
///
/// For centralizers in `SU(n+1)` the block sizes of the `S(U_{n_1} × ⋯ ×
/// U_{n_k})` presentation are remembered for display. Equality, ordering and
/// hashing only look at the local type.
#[derive(Debug, Clone, Default)]
pub struct GroupType {
    factors: Vec<SimpleFactor>,
    torus_rank: usize,
    unitary_blocks: Option<Vec<usize>>,
}

impl GroupType {
    pub fn new(mut factors: Vec<SimpleFactor>, torus_rank: usize) -> Self {
        factors.sort_by_key(SimpleFactor::sort_key);
        Self {
            factors,
            torus_rank,
            unitary_blocks: None,
        }
    }

    /// The trivial (or finite) group.
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn torus(rank: usize) -> Self {
        Self::new(Vec::new(), rank)
    }

    pub fn simple(series: Series, rank: usize) -> Result<Self, RootError> {
        Ok(Self::new(vec![SimpleFactor::new(series, rank)?], 0))
    }

    /// Type of the classical group with Lie algebra of `series` at `rank`,
    /// normalising the low-rank coincidences `B1 = C1 = A1`, `C2 = B2`,
    /// `D1 = T1`, `D2 = A1 × A1`, `D3 = A3`.
    pub fn classical(series: Series, rank: usize) -> Self {
        match (series, rank) {
            (_, 0) => Self::trivial(),
            (Series::B | Series::C, 1) => Self::new(vec![a(1)], 0),
            (Series::C, 2) => Self::new(vec![SimpleFactor { series: Series::B, rank: 2 }], 0),
            (Series::D, 1) => Self::torus(1),
            (Series::D, 2) => Self::new(vec![a(1), a(1)], 0),
            (Series::D, 3) => Self::new(vec![a(3)], 0),
            _ => Self::new(vec![SimpleFactor { series, rank }], 0),
        }
    }

    /// `SO(n)`.
    pub fn so(n: usize) -> Self {
        if n % 2 == 1 {
            Self::classical(Series::B, n / 2)
        } else {
            Self::classical(Series::D, n / 2)
        }
    }

    /// `SU(n)`.
    pub fn su(n: usize) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            Self::new(vec![a(n - 1)], 0)
        }
    }

    /// `U(n)`.
    pub fn u(n: usize) -> Self {
        if n == 0 {
            Self::trivial()
        } else {
            Self::su(n).product(&Self::torus(1))
        }
    }

    /// `Sp(n)`.
    pub fn sp(n: usize) -> Self {
        Self::classical(Series::C, n)
    }

    /// `Spin(n)`, same local type as `SO(n)`.
    pub fn spin(n: usize) -> Self {
        Self::so(n)
    }

    /// `S(U_{n_1} × ⋯ × U_{n_k})` with the block sizes remembered.
    pub fn special_unitary_blocks(blocks: &[usize]) -> Self {
        let mut blocks: Vec<usize> = blocks.iter().copied().filter(|&b| b > 0).collect();
        blocks.sort_unstable_by(|x, y| y.cmp(x));
        let factors = blocks.iter().filter(|&&b| b >= 2).map(|&b| a(b - 1)).collect();
        let torus = blocks.len().saturating_sub(1);
        let mut g = Self::new(factors, torus);
        g.unitary_blocks = Some(blocks);
        g
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// Block sizes when the type is presented as `S(U × ⋯ × U)`.
    pub fn unitary_blocks(&self) -> Option<&[usize]> {
        self.unitary_blocks.as_deref()
    }

    /// Whether the type carries the `S(U_{n_1} × ⋯)` determinant constraint.
    pub fn has_determinant_constraint(&self) -> bool {
        self.unitary_blocks.as_ref().is_some_and(|b| b.len() > 1)
    }

    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(SimpleFactor::rank).sum()
    }

    pub fn rank(&self) -> usize {
        self.semisimple_rank() + self.torus_rank
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(SimpleFactor::dim).sum::<usize>() + self.torus_rank
    }

    pub fn is_torus(&self) -> bool {
        self.factors.is_empty()
    }

    /// Dimension zero: the identity component is trivial.
    pub fn is_finite(&self) -> bool {
        self.factors.is_empty() && self.torus_rank == 0
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1 && self.torus_rank == 0
    }

    /// Local direct product.
    pub fn product(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Self::new(factors, self.torus_rank + other.torus_rank)
    }

    /// Drops presentation data, keeping only the local type.
    pub fn local(&self) -> Self {
        Self::new(self.factors.clone(), self.torus_rank)
    }

    /// Multiset difference `self / other`, if `other` is a factor of `self`.
    pub fn quotient_factor(&self, other: &Self) -> Option<Self> {
        if other.torus_rank > self.torus_rank {
            return None;
        }
        let mut remaining = self.factors.clone();
        for f in &other.factors {
            let pos = remaining.iter().position(|g| g == f)?;
            remaining.remove(pos);
        }
        Some(Self::new(remaining, self.torus_rank - other.torus_rank))
    }

    /// Necessary conditions for `self` to be (locally) a closed subgroup of
    /// `other`: ranks and dimensions fit, the simple factors can be packed
    /// into the simple factors of `other`, and every packing that fills a
    /// factor's rank is one of its maximal-rank subsystems. Exact for
    /// containments between centralizers.
    pub fn embeds_in(&self, other: &Self) -> bool {
        if self.rank() > other.rank() || self.dim() > other.dim() {
            return false;
        }
        if self.dim() == other.dim() {
            return self == other;
        }
        let mut bins: Vec<Vec<SimpleFactor>> = vec![Vec::new(); other.factors.len()];
        pack(&self.factors, 0, &other.factors, &mut bins)
    }
}

fn a(rank: usize) -> SimpleFactor {
    SimpleFactor {
        series: Series::A,
        rank,
    }
}

fn pack(
    items: &[SimpleFactor],
    idx: usize,
    targets: &[SimpleFactor],
    bins: &mut [Vec<SimpleFactor>],
) -> bool {
    if idx == items.len() {
        return bins
            .iter()
            .zip(targets)
            .all(|(bin, target)| bin_fits(bin, target, true));
    }
    for t in 0..targets.len() {
        bins[t].push(items[idx]);
        if bin_fits(&bins[t], &targets[t], false) && pack(items, idx + 1, targets, bins) {
            bins[t].pop();
            return true;
        }
        bins[t].pop();
    }
    false
}

fn bin_fits(bin: &[SimpleFactor], target: &SimpleFactor, complete: bool) -> bool {
    let rank: usize = bin.iter().map(SimpleFactor::rank).sum();
    let dim: usize = bin.iter().map(SimpleFactor::dim).sum();
    if rank > target.rank() || dim > target.dim() {
        return false;
    }
    if !complete || rank < target.rank() {
        return true;
    }
    if bin.len() == 1 && bin[0] == *target {
        return true;
    }
    let mut key = bin.to_vec();
    key.sort();
    super::maximal_rank_subsystems(*target).contains(&key)
}

impl PartialEq for GroupType {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors && self.torus_rank == other.torus_rank
    }
}

impl Eq for GroupType {}

impl Hash for GroupType {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
        self.torus_rank.hash(state);
    }
}

impl PartialOrd for GroupType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupType {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim(), &self.factors, self.torus_rank).cmp(&(other.dim(), &other.factors, other.torus_rank))
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(blocks) = &self.unitary_blocks {
            if blocks.len() == 1 {
                return write!(f, "SU{}", blocks[0]);
            }
            if blocks.iter().all(|&b| b == 1) {
                return write!(f, "T{}", blocks.len() - 1);
            }
            let inner: Vec<String> = blocks.iter().map(|b| format!("U{b}")).collect();
            return write!(f, "S({})", inner.join("×"));
        }
        if self.is_finite() {
            return write!(f, "finite");
        }
        let mut parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        write!(f, "{}", parts.join("×"))
    }
}

impl Serialize for GroupType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Accepts products of `SU n`, `U n`, `SO n`, `Spin n`, `Sp n`, `T n`,
/// `S(U a × U b …)`, series names (`A2`, `E8`, …) and `finite`/`1`/`Zp`,
/// separated by `×`, `x` or `*`; parentheses around a size are optional.
impl FromStr for GroupType {
    type Err = RootError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || RootError::ParseGroup(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        if let Some(inner) = compact.strip_prefix("S(").and_then(|r| r.strip_suffix(')')) {
            let blocks = split_product(inner)
                .into_iter()
                .map(|item| {
                    let (name, n) = split_name(&item).ok_or_else(err)?;
                    if name != "U" {
                        return Err(err());
                    }
                    Ok(n)
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Self::special_unitary_blocks(&blocks));
        }
        let mut out = Self::trivial();
        for item in split_product(&compact) {
            out = out.product(&parse_item(&item).ok_or_else(err)?);
        }
        Ok(out)
    }
}

fn split_product(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' => {
                depth += 1;
                cur.push(c);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            'x' | '×' | '*' if depth == 0 => parts.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    parts.push(cur);
    parts
}

fn split_name(item: &str) -> Option<(String, usize)> {
    let item = item.replace(['(', ')', '_'], "");
    let pos = item.find(|c: char| c.is_ascii_digit())?;
    let (name, num) = item.split_at(pos);
    Some((name.to_string(), num.parse().ok()?))
}

fn parse_item(item: &str) -> Option<GroupType> {
    match item {
        "finite" | "1" | "Zp" | "Z_p" | "e" => return Some(GroupType::trivial()),
        "S1" | "S^1" => return Some(GroupType::torus(1)),
        _ => {}
    }
    let (name, n) = split_name(item)?;
    let g = match name.as_str() {
        "SU" => GroupType::su(n),
        "U" => GroupType::u(n),
        "SO" | "O" => GroupType::so(n),
        "Spin" => GroupType::spin(n),
        "Sp" => GroupType::sp(n),
        "T" => GroupType::torus(n),
        "A" => GroupType::classical(Series::A, n),
        "B" => GroupType::classical(Series::B, n),
        "C" => GroupType::classical(Series::C, n),
        "D" => GroupType::classical(Series::D, n),
        "E" if (6..=8).contains(&n) => {
            let series = [Series::E6, Series::E7, Series::E8][n - 6];
            GroupType::simple(series, n).ok()?
        }
        "F" if n == 4 => GroupType::simple(Series::F4, 4).ok()?,
        "G" if n == 2 => GroupType::simple(Series::G2, 2).ok()?,
        _ => return None,
    };
    Some(g)
}
