//! Command-line front end. Every subcommand produces a JSON document with
//! sorted keys; `--format text` renders the same document line by line.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::classifier::{self, ClassifierError, Quintuple};
use crate::cohomology::{self, BorelDegrees, CohomologyError};
use crate::polyring::{parse_poly, GradedPoly, PolyError, QuotientRing, Variables};
use crate::quantum::{self, GwFamily, QuantumError, QuantumKind, QuantumRing};
use crate::rational::{format_rational, parse_rational, parse_rational_list};
use crate::rootsys::{self, CartanElement, GroupType, RootError, RootSystem};
use crate::Q;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "orbitcalc", version, about = "Exact computations for coadjoint orbits and Hamiltonian actions")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the result to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Centralizer type of a Cartan element.
    Orbit {
        #[arg(long)]
        group: String,
        /// Comma-separated orthogonal coordinates, e.g. `1,1,-2`.
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// All centralizer types of a group, as local types.
    EnumerateOrbits {
        #[arg(long)]
        group: String,
    },
    /// Poincaré polynomial of `G / Z` from invariant degrees.
    Poincare {
        #[arg(long)]
        group: String,
        #[arg(long)]
        zv: String,
    },
    /// Cohomology ring of the Grassmannian `Gr_k(C^N)`.
    Ring(KnArgs),
    /// Cohomology ring of the `CP^k`-bundle over `Gr_k(C^N)`.
    BundleRing(KnArgs),
    /// Small quantum cohomology ring.
    Qring {
        #[command(flatten)]
        kn: KnArgs,
        #[arg(long, value_enum, default_value_t = QringKind::Bundle)]
        kind: QringKind,
        /// Also compute the cup-length of the ring at `q = 1`.
        #[arg(long)]
        cup_length: bool,
    },
    /// Positivity of `(x + t·α·x0)^m` on `[0, 1]` in `H*(Gr_k(C^N))`.
    ConeCheck {
        #[command(flatten)]
        kn: KnArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
    },
    /// Quintuple enumeration, case analysis or predicate checks.
    Classify(ClassifyArgs),
    /// Shift vector for the case with two projective fibres.
    SolveAlpha {
        #[arg(long)]
        l: usize,
        #[arg(long, allow_hyphen_values = true)]
        x1: String,
        #[arg(long, allow_hyphen_values = true)]
        x2: String,
        #[arg(long, allow_hyphen_values = true)]
        x3: String,
    },
}

#[derive(Debug, Args)]
pub struct KnArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QringKind {
    Bundle,
    Grassmannian,
}

/// Exactly one mode: `--max-rank`, the case triple `--zv --zmin --zmax`, or
/// a full quintuple `--g --zv --zmax --gmax --gm`.
#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub max_rank: Option<usize>,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub zv: Option<String>,
    #[arg(long)]
    pub zmin: Option<String>,
    #[arg(long)]
    pub zmax: Option<String>,
    #[arg(long)]
    pub gmax: Option<String>,
    #[arg(long)]
    pub gm: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    fn new(kind: &'static str, message: impl ToString) -> Self {
        Self {
            kind,
            message: message.to_string(),
        }
    }

    fn usage(message: impl ToString) -> Self {
        Self::new("usage", message)
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            "usage" | "parse" => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "error": { "kind": self.kind, "message": self.message },
        })
    }
}

macro_rules! error_kind {
    ($($ty:ty => $kind:literal),* $(,)?) => {
        $(impl From<$ty> for CliError {
            fn from(e: $ty) -> Self {
                CliError::new($kind, e)
            }
        })*
    };
}

error_kind! {
    RootError => "root-system",
    PolyError => "polynomial",
    CohomologyError => "cohomology",
    QuantumError => "quantum",
    ClassifierError => "classifier",
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return Outcome {
                code: 0,
                stdout: e.to_string(),
                stderr: String::new(),
            }
        }
        Err(e) => {
            let err = CliError::new("parse", e.to_string().trim_end());
            return failure(&err);
        }
    };
    match dispatch(&cli.command) {
        Ok(value) => {
            let body = render(&value, cli.format);
            match &cli.out {
                Some(path) => match std::fs::write(path, &body) {
                    Ok(()) => Outcome {
                        code: 0,
                        stdout: String::new(),
                        stderr: String::new(),
                    },
                    Err(e) => failure(&CliError::new("io", format!("{}: {e}", path.display()))),
                },
                None => Outcome {
                    code: 0,
                    stdout: body,
                    stderr: String::new(),
                },
            }
        }
        Err(e) => failure(&e),
    }
}

fn failure(e: &CliError) -> Outcome {
    Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("{}\n", serde_json::to_string_pretty(&e.to_json()).expect("json")),
    }
}

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(value).expect("json")),
        Format::Text => {
            let mut out = String::new();
            render_text(value, 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Null => Some("-".into()),
        Value::Bool(_) | Value::Number(_) => Some(v.to_string()),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            Some(items.iter().map(|i| scalar(i).expect("scalar")).collect::<Vec<_>>().join(", "))
        }
        _ => None,
    }
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{key}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render_text(v, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn document(command: &str, refs: &[&str], body: Value) -> Value {
    let mut map = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    map.insert("paper_refs".into(), json!(refs));
    Value::Object(map)
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn group(text: &str) -> Result<GroupType, CliError> {
    text.parse::<GroupType>().map_err(|e| CliError::new("parse", e))
}

fn rational(name: &str, text: &str) -> Result<Q, CliError> {
    parse_rational(text).map_err(|e| CliError::new("parse", format!("--{name}: {e}")))
}

fn poly(vars: &Arc<Variables>, name: &str, text: &str) -> Result<GradedPoly, CliError> {
    parse_poly(vars, text).map_err(|e| CliError::new("parse", format!("--{name}: {e}")))
}

const REF_CENTRALIZER: &str = "centralizer of a Cartan element: subsystem of roots vanishing on it";
const REF_BOREL: &str = "Borel: Poincaré series of G/H for H of maximal rank, ratio of invariant-degree products";
const REF_GRASSMANNIAN: &str = "Grassmannian cohomology: Chern classes of the tautological and quotient bundles, Whitney sum relation";
const REF_BUNDLE: &str = "CP^k-bundle over Gr_k(C^N): relation f·P_k together with the Grassmannian relations";
const REF_QUANTUM: &str = "small quantum cohomology of the CP^k-bundle with 2(k+1) = N-1, relations deformed by q";
const REF_QGR: &str = "Siebert-Tian presentation of the quantum cohomology of Grassmannians";
const REF_CONE: &str = "symplectic cone criterion: positivity of (x + t·α·x0)^m on [0, 1] for the blown-up class";
const REF_CASES: &str = "four cases for the centralizers over the two ends of a cohomogeneity-one moment image";
const REF_QUINTUPLES: &str = "effective admissible quintuples for cohomogeneity-one Hamiltonian actions";
const REF_MSB: &str = "Montgomery-Samelson, Borel: compact groups acting transitively on spheres";
const REF_ALPHA: &str = "linear system for the shift α in the case of two projective fibres CP^1 and CP^l";

pub fn dispatch(cmd: &Command) -> Result<Value, CliError> {
    match cmd {
        Command::Orbit { group: g, v } => orbit(g, v),
        Command::EnumerateOrbits { group: g } => {
            let g = group(g)?;
            let types = rootsys::enumerate_centralizer_types(&RootSystem::for_type(&g))?;
            let names: Vec<String> = types.iter().map(ToString::to_string).collect();
            Ok(document(
                "enumerate-orbits",
                &[REF_CENTRALIZER],
                json!({ "group": g.to_string(), "count": names.len(), "types": names }),
            ))
        }
        Command::Poincare { group: g, zv } => poincare(g, zv),
        Command::Ring(kn) => {
            let ring = cohomology::grassmannian_ring(kn.k, kn.n)?;
            Ok(document("ring", &[REF_GRASSMANNIAN], ring_json(kn, &ring)?))
        }
        Command::BundleRing(kn) => {
            let ring = cohomology::bundle_ring(kn.k, kn.n)?;
            let mut body = ring_json(kn, &ring)?;
            let chern = cohomology::chern_data(kn.k, kn.n)?;
            body["first_chern_class"] = json!(chern.first_chern.to_string());
            body["minimal_chern_number"] = json!(chern.minimal_chern_number);
            Ok(document("bundle-ring", &[REF_BUNDLE, REF_GRASSMANNIAN], body))
        }
        Command::Qring { kn, kind, cup_length } => qring(kn, *kind, *cup_length),
        Command::ConeCheck { kn, x, alpha, x0 } => cone_check(kn, x, alpha, x0),
        Command::Classify(args) => classify(args),
        Command::SolveAlpha { l, x1, x2, x3 } => {
            let sol = classifier::solve_alpha(*l, &rational("x1", x1)?, &rational("x2", x2)?, &rational("x3", x3)?)?;
            Ok(document("solve-alpha", &[REF_ALPHA, REF_CENTRALIZER], to_value(&sol)))
        }
    }
}

fn orbit(g: &str, v: &str) -> Result<Value, CliError> {
    let g = group(g)?;
    let coords = parse_rational_list(v).map_err(|e| CliError::new("parse", format!("--v: {e}")))?;
    let rs = RootSystem::for_type(&g);
    let elem = CartanElement::new(&rs, coords)?;
    let ty = rootsys::centralizer_type(&rs, &elem)?;
    let regular = rootsys::is_regular(&rs, &elem)?;
    Ok(document(
        "orbit",
        &[REF_CENTRALIZER],
        json!({
            "group": g.to_string(),
            "v": elem.coords().iter().map(format_rational).collect::<Vec<_>>(),
            "type": ty.to_string(),
            "regular": regular,
            "orbit_dimension": g.dim() - ty.dim(),
        }),
    ))
}

fn poincare(g: &str, zv: &str) -> Result<Value, CliError> {
    let g = group(g)?;
    let z = group(zv)?;
    if !z.embeds_in(&g) {
        return Err(CliError::new("precondition", format!("{z} does not embed in {g}")));
    }
    let bd = BorelDegrees::new(&g, &z)?;
    let p = cohomology::borel_poincare(&bd)?;
    let betti = cohomology::even_betti(&p)
        .ok_or_else(|| CliError::new("cohomology", format!("{p} has odd or non-integral terms")))?;
    let degrees: Vec<usize> = (0..betti.len()).map(|i| 2 * i).collect();
    Ok(document(
        "poincare",
        &[REF_BOREL],
        json!({
            "group": g.to_string(),
            "centralizer": z.to_string(),
            "s_degrees": bd.s_degrees,
            "r_degrees": bd.r_degrees,
            "weyl_product": bd.weyl_product().to_string(),
            "polynomial": p.to_string(),
            "coefficients": betti,
            "degrees": degrees,
        }),
    ))
}

fn generators(vars: &Variables) -> Value {
    (0..vars.len())
        .map(|i| json!({ "name": vars.name(i), "degree": vars.degree(i) }))
        .collect()
}

fn strings(polys: &[GradedPoly]) -> Vec<String> {
    polys.iter().map(|p| p.sign_normalized().to_string()).collect()
}

fn ring_json(kn: &KnArgs, ring: &QuotientRing) -> Result<Value, CliError> {
    let betti = ring.hilbert_series()?;
    Ok(json!({
        "k": kn.k,
        "N": kn.n,
        "generators": generators(ring.vars()),
        "relations": strings(ring.relations()),
        "groebner_basis": ring.groebner_basis().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "betti": betti,
        "dimension": ring.dimension()?,
        "top_degree": ring.top_degree()?,
    }))
}

fn qring(kn: &KnArgs, kind: QringKind, cup_length: bool) -> Result<Value, CliError> {
    let ring: QuantumRing = match kind {
        QringKind::Bundle => quantum::quantum_bundle_ring(kn.k, kn.n)?,
        QringKind::Grassmannian => quantum::quantum_grassmannian(kn.k, kn.n)?,
    };
    let relations: Vec<Value> = ring
        .relations()
        .iter()
        .map(|r| json!({ "relation": r.poly.sign_normalized().to_string(), "source": r.source }))
        .collect();
    let specialized = quantum::specialize_q(&ring, &Q::from_integer(1.into()))?;
    let mut body = json!({
        "kind": to_value(&ring.kind()),
        "k": kn.k,
        "N": kn.n,
        "q_degree": ring.q_degree(),
        "generators": generators(ring.ring().vars()),
        "relations": relations,
        "q_zero_matches_classical": quantum::q_zero_matches_classical(&ring)?,
        "dimension_at_q_1": specialized.dimension()?,
    });
    if cup_length {
        body["cup_length"] = to_value(&quantum::quantum_cup_length(&ring)?);
    }
    let mut refs = vec![REF_QGR];
    if ring.kind() == QuantumKind::Bundle {
        refs = vec![REF_QUANTUM, REF_BUNDLE];
        let classes = quantum::contributing_classes(kn.k, kn.n)?;
        body["contributing_classes"] = classes
            .iter()
            .map(|c| json!({ "u": c.u_coeff, "v": c.v_coeff, "c1": c.chern_value, "name": c.name() }))
            .collect();
        let mut gw = Vec::new();
        for family in GwFamily::ALL {
            let (u, v) = family.class();
            let class = quantum::HomologyClass::new(kn.k, kn.n, u, v);
            let value = quantum::gw_invariant(kn.k, kn.n, &class, family)?;
            gw.push(json!({
                "family": family.name(),
                "u": u,
                "v": v,
                "value": format_rational(&value.value),
                "provenance": value.provenance,
            }));
        }
        body["gw_invariants"] = Value::Array(gw);
    }
    Ok(document("qring", &refs, body))
}

fn cone_check(kn: &KnArgs, x: &str, alpha: &str, x0: &str) -> Result<Value, CliError> {
    let base = cohomology::grassmannian_ring(kn.k, kn.n)?;
    let x = poly(base.vars(), "x", x)?;
    let x0 = poly(base.vars(), "x0", x0)?;
    let alpha = rational("alpha", alpha)?;
    let p = cohomology::cone_polynomial(&base, &x, &alpha, &x0)?;
    let passes = cohomology::symplectic_cone_check(&base, &x, &alpha, &x0)?;
    Ok(document(
        "cone-check",
        &[REF_CONE, REF_GRASSMANNIAN],
        json!({
            "k": kn.k,
            "N": kn.n,
            "x": x.to_string(),
            "x0": x0.to_string(),
            "alpha": format_rational(&alpha),
            "cone_polynomial": p.to_string(),
            "passes": passes,
        }),
    ))
}

fn classify(a: &ClassifyArgs) -> Result<Value, CliError> {
    let quintuple_mode = a.g.is_some() || a.gmax.is_some() || a.gm.is_some();
    let case_mode = a.zmin.is_some();
    match (a.max_rank, case_mode, quintuple_mode) {
        (Some(r), false, false) if a.zv.is_none() && a.zmax.is_none() => enumerate(r),
        (None, true, false) => {
            let (Some(zv), Some(zmin), Some(zmax)) = (&a.zv, &a.zmin, &a.zmax) else {
                return Err(CliError::usage("case analysis needs --zv, --zmin and --zmax"));
            };
            let (zv, zmin, zmax) = (group(zv)?, group(zmin)?, group(zmax)?);
            let case = classifier::case_of(&zv, &zmin, &zmax)?;
            let mut body = json!({
                "zv": zv.to_string(),
                "zmin": zmin.to_string(),
                "zmax": zmax.to_string(),
                "case": case.to_string(),
            });
            if case == classifier::CaseLabel::IV {
                match classifier::case_iv_subcase(&zv, &zmin, &zmax) {
                    Ok((sub, k, l)) => {
                        body["subcase"] = to_value(&sub);
                        body["fibre_dimensions"] = json!({ "zmin": k, "zmax": l });
                    }
                    Err(ClassifierError::CaseIvcExcluded) => body["subcase"] = json!("IVc (excluded)"),
                    Err(e) => return Err(e.into()),
                }
            }
            Ok(document("classify", &[REF_CASES], body))
        }
        (None, false, true) => {
            let need = |o: &Option<String>, name: &str| {
                o.as_deref()
                    .ok_or_else(|| CliError::usage(format!("quintuple check needs --{name}")))
                    .and_then(group)
            };
            let q = Quintuple::new(
                need(&a.g, "g")?,
                need(&a.zv, "zv")?,
                need(&a.zmax, "zmax")?,
                need(&a.gmax, "gmax")?,
                need(&a.gm, "gm")?,
            );
            let check = classifier::check_admissible(&q)?;
            let mut body = json!({
                "quintuple": to_value(&q),
                "admissible": check.is_ok(),
            });
            match check {
                Ok(row) => {
                    body["sphere"] = json!(row.name);
                    body["effective"] = json!(classifier::is_effective(&q)?);
                }
                Err(reason) => body["reason"] = to_value(&reason),
            }
            Ok(document("classify", &[REF_QUINTUPLES, REF_MSB], body))
        }
        _ => Err(CliError::usage(
            "use one of: --max-rank R | --zv --zmin --zmax | --g --zv --zmax --gmax --gm",
        )),
    }
}

fn enumerate(max_rank: usize) -> Result<Value, CliError> {
    if max_rank < 2 {
        return Err(CliError::new("precondition", "--max-rank must be at least 2"));
    }
    let (items, stats) = classifier::enumerate_quintuples_with_stats(max_rank)?;
    Ok(document(
        "classify",
        &[REF_QUINTUPLES, REF_MSB, REF_CENTRALIZER],
        json!({
            "max_rank": max_rank,
            "count": items.len(),
            "quintuples": to_value(&items),
            "stats": to_value(&stats),
        }),
    ))
}
