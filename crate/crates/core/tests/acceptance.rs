//! Acceptance gate: one PASS/FAIL line per criterion, each with a pinned
//! wall-clock limit. Oracles here are written independently of the library.

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use num_traits::{One, Signed, Zero};
use orbitcalc::classifier::{self, AmbientForm, KnownQuintuple};
use orbitcalc::cohomology::{self, BorelDegrees};
use orbitcalc::polyring::{GradedPoly, UniPoly};
use orbitcalc::quantum::{self, HomologyClass};
use orbitcalc::rootsys::{self, CartanElement, GroupType, RootSystem, Series, SimpleFactor};
use orbitcalc::Q;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Written straight to the process stdout so the lines survive output capture.
macro_rules! report {
    ($($arg:tt)*) => {{
        let mut out = std::io::stdout().lock();
        writeln!(out, $($arg)*).expect("stdout");
        out.flush().expect("stdout");
    }};
}

fn q(n: i64) -> Q {
    Q::from_integer(n.into())
}

// ---- independent oracles ----

fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `S(U_{n_1} × ⋯ × U_{n_r})` as a local type: `Π SU_{n_i}` and `T^{r-1}`.
fn su_blocks_local(parts: &[usize]) -> GroupType {
    let factors = parts
        .iter()
        .filter(|&&p| p > 1)
        .map(|&p| SimpleFactor::new(Series::A, p - 1).unwrap())
        .collect();
    GroupType::new(factors, parts.len() - 1)
}

/// `U_{n_1} × ⋯ × U_{n_r} × B_p` with `Σ n_i + p = n`.
fn b_series_types(n: usize) -> BTreeSet<GroupType> {
    let mut out = BTreeSet::new();
    for p in 0..=n {
        for lambda in partitions(n - p, n - p) {
            let mut factors: Vec<SimpleFactor> = lambda
                .iter()
                .filter(|&&m| m > 1)
                .map(|&m| SimpleFactor::new(Series::A, m - 1).unwrap())
                .collect();
            match p {
                0 => {}
                1 => factors.push(SimpleFactor::new(Series::A, 1).unwrap()),
                _ => factors.push(SimpleFactor::new(Series::B, p).unwrap()),
            }
            out.insert(GroupType::new(factors, lambda.len()));
        }
    }
    out
}

/// Coefficients of `[N choose k]_{t^2}` in powers of `t^2`: partitions
/// fitting in a `k × (N-k)` box, counted by size.
fn gaussian_binomial(k: usize, n: usize) -> Vec<usize> {
    fn count(size: usize, parts: usize, max_part: usize) -> usize {
        if size == 0 {
            return 1;
        }
        if parts == 0 || max_part == 0 {
            return 0;
        }
        (1..=max_part.min(size)).map(|first| count(size - first, parts - 1, first)).sum()
    }
    let top = k * (n - k);
    (0..=top).map(|s| count(s, k, n - k)).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn factorial(n: u128) -> u128 {
    (1..=n).product()
}

fn weyl_order_oracle(series: Series, rank: usize) -> u128 {
    let r = rank as u128;
    match series {
        Series::A => factorial(r + 1),
        Series::B | Series::C => (1u128 << r) * factorial(r),
        Series::D => (1u128 << (r - 1)) * factorial(r),
        Series::G2 => 12,
        Series::F4 => 1152,
        Series::E6 => 51_840,
        Series::E7 => 2_903_040,
        Series::E8 => 696_729_600,
    }
}

fn multiply_series(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn is_palindrome(v: &[usize]) -> bool {
    v.iter().eq(v.iter().rev())
}

// ---- criteria ----

fn centralizer_tables() -> Check {
    let types = |g: &GroupType| rootsys::enumerate_centralizer_types(&RootSystem::for_type(g)).unwrap();
    for n in [2usize, 3] {
        let g = GroupType::su(n + 1);
        let want: BTreeSet<GroupType> = partitions(n + 1, n + 1).iter().map(|p| su_blocks_local(p)).collect();
        let got = types(&g);
        ensure(got == want, || format!("A{n}: got {got:?}, want {want:?}"))?;
    }
    let got = types(&GroupType::so(5));
    let want = b_series_types(2);
    ensure(got == want, || format!("B2: got {got:?}, want {want:?}"))?;
    let g2 = GroupType::simple(Series::G2, 2).unwrap();
    let want: BTreeSet<GroupType> = [
        GroupType::torus(2),
        GroupType::new(vec![SimpleFactor::new(Series::A, 1).unwrap()], 1),
        g2.clone(),
    ]
    .into_iter()
    .collect();
    let got = types(&g2);
    ensure(got == want, || format!("G2: got {got:?}, want {want:?}"))
}

fn grassmannian_betti() -> Check {
    for k in 1..=3 {
        for n in k + 1..=8 {
            let got = cohomology::grassmannian_ring(k, n).unwrap().hilbert_series().unwrap();
            let want = gaussian_binomial(k, n);
            ensure(got == want, || format!("Gr({k},{n}): got {got:?}, want {want:?}"))?;
        }
    }
    Ok(())
}

fn borel_cross_check() -> Check {
    for k in 1..=3 {
        for n in k + 1..=7 {
            let bd = BorelDegrees::new(&GroupType::su(n), &GroupType::special_unitary_blocks(&[k, n - k]))
                .map_err(|e| e.to_string())?;
            let p = cohomology::borel_poincare(&bd).map_err(|e| e.to_string())?;
            let got = cohomology::even_betti(&p).ok_or_else(|| format!("odd terms in {p}"))?;
            let want = cohomology::grassmannian_ring(k, n).unwrap().hilbert_series().unwrap();
            ensure(got == want, || format!("SU({n})/S(U{k}×U{}): {got:?} vs {want:?}", n - k))?;
        }
    }
    let mut tables = Vec::new();
    for rank in 1..=8 {
        tables.push((Series::A, rank));
        if rank >= 2 {
            tables.push((Series::B, rank));
        }
        if rank >= 3 {
            tables.push((Series::C, rank));
        }
        if rank >= 4 {
            tables.push((Series::D, rank));
        }
    }
    tables.extend([(Series::G2, 2), (Series::F4, 4), (Series::E6, 6), (Series::E7, 7), (Series::E8, 8)]);
    for (series, rank) in tables {
        let f = SimpleFactor::new(series, rank).unwrap();
        let product: u128 = f.invariant_degrees().iter().map(|&d| d as u128).product();
        let oracle = weyl_order_oracle(series, rank);
        ensure(product == oracle && f.weyl_group_order() == oracle, || {
            format!("{series:?}{rank}: Π d_i = {product}, table {} , oracle {oracle}", f.weyl_group_order())
        })?;
        let g = GroupType::new(vec![f], 0);
        let bd = BorelDegrees::new(&g, &GroupType::torus(rank)).map_err(|e| e.to_string())?;
        ensure(bd.weyl_product() == oracle, || format!("{series:?}{rank}: Π s_i/2 = {}", bd.weyl_product()))?;
    }
    Ok(())
}

fn bundle_ring_shape() -> Check {
    for (k, n) in [(1, 2), (1, 5), (2, 4), (2, 5)] {
        let ring = cohomology::bundle_ring(k, n).unwrap();
        let dim = ring.dimension().unwrap();
        ensure(dim == (k + 1) * binomial(n, k), || format!("({k},{n}): dim {dim}"))?;
        let got = ring.hilbert_series().unwrap();
        let want = multiply_series(&gaussian_binomial(k, n), &vec![1; k + 1]);
        ensure(got == want, || format!("({k},{n}): series {got:?}, want {want:?}"))?;
        ensure(is_palindrome(&got), || format!("({k},{n}): {got:?} not palindromic"))?;
        if (k, n) == (1, 2) {
            ensure(got == [1, 2, 1], || format!("(1,2): {got:?}"))?;
        }
    }
    Ok(())
}

fn quantum_bundle_presentation() -> Check {
    let mut accepted = Vec::new();
    for k in 1..=2 {
        for n in k + 1..=12 {
            if quantum::quantum_bundle_ring(k, n).is_ok() {
                accepted.push((k, n));
            }
        }
    }
    ensure(accepted == [(1, 5), (2, 7)], || format!("accepted {accepted:?}"))?;
    for (k, n) in [(1usize, 5usize), (2, 7)] {
        let ring = quantum::quantum_bundle_ring(k, n).unwrap();
        ensure(ring.q_degree() == 2 * (k as u32 + 1), || format!("deg q = {}", ring.q_degree()))?;
        let qvars = ring.ring().vars();
        ensure(qvars.name(qvars.len() - 1) == "q", || "q is not the last variable".into())?;
        for r in ring.relations() {
            ensure(r.poly.is_homogeneous(), || format!("{} is not homogeneous", r.poly))?;
        }
        let classical = cohomology::bundle_relations(k, n).unwrap();
        let at_zero = ring.q_zero_relations();
        ensure(at_zero.len() == classical.len(), || "relation counts differ".into())?;
        for (a, b) in at_zero.iter().zip(&classical) {
            let b = b.map_vars(a.vars()).unwrap();
            ensure(a == &b, || format!("q=0 gives {a}, classical {b}"))?;
        }
        let dim = quantum::specialize_q(&ring, &q(1)).unwrap().dimension().unwrap();
        ensure(dim == (k + 1) * binomial(n, k), || format!("({k},{n}): dim at q=1 is {dim}"))?;
    }
    Ok(())
}

fn quantum_projective_space() -> Check {
    for n in 2..=5usize {
        let ring = quantum::quantum_grassmannian(1, n).unwrap();
        let vars = ring.ring().vars().clone();
        let x = GradedPoly::var_named(&vars, "x1").unwrap();
        let qv = GradedPoly::var_named(&vars, "q").unwrap();
        let want = &x.pow(n as u32) - &qv;
        let rels: Vec<&GradedPoly> = ring.relations().iter().map(|r| &r.poly).collect();
        ensure(rels.len() == 1 && rels[0].sign_normalized() == want, || {
            format!("N={n}: relations {:?}", rels.iter().map(|r| r.to_string()).collect::<Vec<_>>())
        })?;
        ensure(ring.q_degree() == 2 * n as u32, || format!("N={n}: deg q = {}", ring.q_degree()))?;
        // x^{N-1} · x = q: the point class times the hyperplane is q.
        let nf = ring.ring().normal_form(&x.pow(n as u32)).unwrap();
        ensure(nf == qv, || format!("N={n}: x^N reduces to {nf}"))?;
    }
    Ok(())
}

fn contributing_classes() -> Check {
    let want: BTreeSet<(i64, i64)> = [(1, 0), (2, 0), (0, 1), (-1, 1), (-2, 2)].into_iter().collect();
    for (k, n) in [(1usize, 5usize), (2, 7)] {
        let classes = quantum::contributing_classes(k, n).unwrap();
        let got: BTreeSet<(i64, i64)> = classes.iter().map(|c| (c.u_coeff, c.v_coeff)).collect();
        ensure(classes.len() == 5 && got == want, || format!("({k},{n}): {got:?}"))?;
        let c1 = cohomology::chern_data(k, n).unwrap().first_chern;
        for c in &classes {
            let pairing = cohomology::ChernData::evaluate(&c1, c.u_coeff, c.v_coeff);
            ensure(pairing == q(c.chern_value), || format!("c1 on ({},{}) is {pairing}", c.u_coeff, c.v_coeff))?;
            ensure(c.chern_value > 0 && c.chern_value <= 2 * (k as i64 + 1), || "c1 out of range".into())?;
        }
        let u = HomologyClass::new(k, n, 1, 0).chern_value;
        let v = HomologyClass::new(k, n, 0, 1).chern_value;
        ensure(u == k as i64 + 1 && v == 2 * (k as i64 + 1), || format!("c1[u] = {u}, c1[v] = {v}"))?;
    }
    Ok(())
}

fn classifier_list() -> Check {
    let found = classifier::enumerate_quintuples(4).map_err(|e| e.to_string())?;
    for item in &found {
        let qt = &item.quintuple;
        ensure(classifier::is_admissible(qt).unwrap(), || format!("{qt} not admissible"))?;
        ensure(classifier::is_effective(qt).unwrap(), || format!("{qt} not effective"))?;
        ensure(qt.gmax.dim() - qt.gm.dim() == item.sphere_dim, || format!("{qt}: sphere dimension"))?;
    }
    let covered: BTreeSet<String> = found
        .iter()
        .filter(|e| e.quintuple.ambient.is_some_and(KnownQuintuple::covers))
        .map(|e| e.quintuple.to_string())
        .collect();
    let expected: BTreeSet<String> = [
        KnownQuintuple::Odd(2),
        KnownQuintuple::Odd(3),
        KnownQuintuple::Odd(4),
        KnownQuintuple::So3,
        KnownQuintuple::Even(1),
        KnownQuintuple::Even(2),
        KnownQuintuple::Even(3),
        KnownQuintuple::Su2,
    ]
    .iter()
    .map(|k| k.quintuple().to_string())
    .collect();
    ensure(covered == expected, || format!("covered families: got {covered:?}, want {expected:?}"))?;
    for named in [KnownQuintuple::Odd(2), KnownQuintuple::So3, KnownQuintuple::Even(1), KnownQuintuple::Su2] {
        let s = named.quintuple().to_string();
        ensure(covered.contains(&s), || format!("missing {s}"))?;
    }
    let extras: Vec<String> = found
        .iter()
        .filter(|e| !e.quintuple.ambient.is_some_and(KnownQuintuple::covers))
        .map(|e| e.quintuple.to_string())
        .collect();
    report!("      outside the covered families: {}", extras.join(", "));
    ensure(
        !found.iter().any(|e| e.quintuple.ambient == Some(AmbientForm::SU(3)) && e.catalogue_label.is_some()),
        || "SU(3) matched an SO-family item".into(),
    )
}

fn alpha_round_trip() -> Check {
    let (l, x1, x2, x3) = (2usize, q(3), q(1), q(-2));
    let sol = classifier::solve_alpha(l, &x1, &x2, &x3).map_err(|e| e.to_string())?;
    let a = &sol.alpha;
    ensure(a.len() == l + 2, || format!("length {}", a.len()))?;
    ensure((&a[0] + &a[1] + q(l as i64) * &a[2]).is_zero(), || "α1 + α2 + lα3 ≠ 0".into())?;
    ensure(&x2 + &a[1] == &x3 + &a[2] && &x1 - &a[0] == &x2 - &a[1], || "shift equations fail".into())?;
    let rs = rootsys::build_root_system(Series::A, l + 1).unwrap();
    let v = vec![x1.clone(), x2.clone(), x3.clone(), x3.clone()];
    let ty = |x: Vec<Q>| rootsys::centralizer_type(&rs, &CartanElement::new(&rs, x).unwrap()).unwrap();
    let plus: Vec<Q> = v.iter().zip(a).map(|(x, y)| x + y).collect();
    let minus: Vec<Q> = v.iter().zip(a).map(|(x, y)| x - y).collect();
    ensure(ty(v.clone()) == su_blocks_local(&[1, 1, 2]), || format!("Z(v) = {}", ty(v.clone())))?;
    let got: BTreeSet<GroupType> = [ty(plus), ty(minus)].into_iter().collect();
    let want: BTreeSet<GroupType> = [su_blocks_local(&[1, 3]), su_blocks_local(&[2, 2])].into_iter().collect();
    ensure(got == want, || format!("Z(v±α) = {got:?}"))
}

fn cup_length_bound() -> Check {
    for (k, n) in [(1usize, 5usize), (2, 7)] {
        let ring = quantum::quantum_bundle_ring(k, n).unwrap();
        let cl = quantum::quantum_cup_length(&ring).unwrap();
        ensure(cl.at_least(k + 1), || format!("({k},{n}): cup-length {cl}"))?;
        // Witness: f^{k+1} survives at q = 1.
        let special = quantum::specialize_q(&ring, &q(1)).unwrap();
        let f = GradedPoly::var_named(special.vars(), "f").unwrap();
        ensure(!special.is_zero_class(&f.pow(k as u32 + 1)).unwrap(), || format!("({k},{n}): f^{} = 0", k + 1))?;
        report!("      ({k},{n}): cup-length {cl}");
    }
    Ok(())
}

fn cone_criterion() -> Check {
    let rings = [
        cohomology::grassmannian_ring(1, 3).unwrap(),
        cohomology::grassmannian_ring(2, 4).unwrap(),
    ];
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 100,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let strategy = (0usize..2, -5i64..=5, -5i64..=5, -5i64..=5, 1i64..=5, 1i64..=5);
    runner
        .run(&strategy, |(which, a, b, alpha_num, alpha_den, neg_den)| {
            let base = &rings[which];
            let vars = base.vars();
            let x1 = GradedPoly::var_named(vars, "x1").unwrap();
            let x = x1.scale(&q(a));
            let x0 = x1.scale(&q(b));
            let m = base.top_degree().unwrap() / 2;
            let alpha = Q::new(alpha_num.abs().max(1).into(), alpha_den.into());
            let non_positive = Q::new((-alpha_num.abs()).into(), neg_den.into());
            prop_assert!(!cohomology::symplectic_cone_check(base, &x, &non_positive, &x0).unwrap());
            if base.top_evaluate(&x.pow(m)).unwrap().is_positive() {
                let mut lambda = Q::one();
                let mut passed = false;
                for _ in 0..=10 {
                    if cohomology::symplectic_cone_check(base, &x.scale(&lambda), &alpha, &x0).unwrap() {
                        passed = true;
                        break;
                    }
                    lambda *= q(2);
                }
                prop_assert!(passed, "no λ ≤ 2^10 works for x = {x}, x0 = {x0}, α = {alpha}");
                let p: UniPoly = cohomology::cone_polynomial(base, &x.scale(&lambda), &alpha, &x0).unwrap();
                prop_assert!(p.eval(&Q::zero()).is_positive());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: fn() -> Check,
}

const CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, name: "centralizer types for A2, A3, B2, G2", limit: Duration::from_secs(1), check: centralizer_tables },
    Criterion { id: 2, name: "Grassmannian Betti numbers vs Gaussian binomials", limit: Duration::from_secs(10), check: grassmannian_betti },
    Criterion { id: 3, name: "Borel formula vs Grassmannian rings, Weyl orders", limit: Duration::from_secs(5), check: borel_cross_check },
    Criterion { id: 4, name: "CP^k-bundle ring dimension and Hilbert series", limit: Duration::from_secs(5), check: bundle_ring_shape },
    Criterion { id: 5, name: "quantum bundle ring hypothesis, grading, q=0, flatness", limit: Duration::from_secs(30), check: quantum_bundle_presentation },
    Criterion { id: 6, name: "quantum CP^{N-1}: x^N = q", limit: Duration::from_secs(2), check: quantum_projective_space },
    Criterion { id: 7, name: "five contributing classes and their Chern numbers", limit: Duration::from_secs(1), check: contributing_classes },
    Criterion { id: 8, name: "quintuple list up to rank 4", limit: Duration::from_secs(30), check: classifier_list },
    Criterion { id: 9, name: "shift vector round trip through centralizers", limit: Duration::from_secs(1), check: alpha_round_trip },
    Criterion { id: 10, name: "quantum cup-length at least k+1", limit: Duration::from_secs(60), check: cup_length_bound },
    Criterion { id: 11, name: "symplectic cone criterion, 100 random cases", limit: Duration::from_secs(10), check: cone_criterion },
];

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let result = (c.check)();
        let elapsed = start.elapsed();
        let verdict = match &result {
            Ok(()) if elapsed <= c.limit => Ok(()),
            Ok(()) => Err(format!("took {elapsed:.2?}, limit {:?}", c.limit)),
            Err(e) => Err(e.clone()),
        };
        match &verdict {
            Ok(()) => report!("PASS [{:>2}] {} ({elapsed:.2?} / {:?})", c.id, c.name, c.limit),
            Err(e) => {
                report!("FAIL [{:>2}] {} ({elapsed:.2?} / {:?}): {e}", c.id, c.name, c.limit);
                failures.push(c.id);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
