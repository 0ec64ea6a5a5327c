//! Spec-file ingestion, report assembly, and the census driver behind the
//! `bielliptic` binary.
//!
//! Input documents are strict JSON: objects, strings, and integers only,
//! with rationals written as strings so nothing ever passes through a
//! float. Machine reports serialize with sorted keys, so a given input and
//! tool version always produce identical bytes.

use bielliptic::classify::{
    classify_canonical, classify_intermediate_cover, BrauerClassification, ClassifyError,
};
use bielliptic::exact::{parse_rational, rational_string, AmbientTag, QuadElement, Rational};
use bielliptic::isogeny::{
    generating_isogeny, hom_module, EllipticCurve, HomKind, Isogeny, IsogenyError,
};
use bielliptic::lattice::{Lattice, MultiplierRing, TorsionPoint};
use bielliptic::surface::{
    validate, SurfaceInvariants, SurfacePoints, SurfaceSpec, ValidatedSurface,
};
use serde::Deserialize;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Failures surfaced by the commands, split by exit code: invalid input is
/// exit 1, an exhausted generator search is exit 2.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 1,
            CliError::Limit(_) => 2,
        }
    }

    fn invalid(msg: impl Into<String>) -> CliError {
        CliError::Invalid(msg.into())
    }
}

fn classify_err(e: ClassifyError) -> CliError {
    match e {
        ClassifyError::Isogeny(IsogenyError::NoGeneratorFound) => CliError::Limit(
            "no generating isogeny found within the search bound; \
             the endomorphism order has class number > 1"
                .to_string(),
        ),
        other => CliError::Invalid(other.to_string()),
    }
}

// ---------------------------------------------------------------------------
// input documents

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    #[serde(rename = "type")]
    pub surface_type: u8,
    pub curve_a: CurveDoc,
    pub curve_b: CurveDoc,
    #[serde(default)]
    pub points: PointsDoc,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub ambient: AmbientDoc,
    /// Two columns, each a pair of rational strings in the frame {1, ω}.
    pub basis: [[String; 2]; 2],
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientDoc {
    pub kind: String,
    #[serde(default)]
    pub d: Option<u64>,
    #[serde(default)]
    pub id: Option<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDoc {
    #[serde(default)]
    pub tau: Option<[String; 2]>,
    #[serde(default)]
    pub theta1: Option<[String; 2]>,
    #[serde(default)]
    pub theta2: Option<[String; 2]>,
    #[serde(default)]
    pub epsilon: Option<[String; 2]>,
    #[serde(default)]
    pub eta: Option<[String; 2]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub curve_a: CurveDoc,
    pub curve_b: CurveDoc,
}

fn ambient_from_doc(doc: &AmbientDoc, field: &str) -> Result<AmbientTag, CliError> {
    match doc.kind.as_str() {
        "quadratic" => {
            let d = doc
                .d
                .ok_or_else(|| CliError::invalid(format!("{field}.ambient: quadratic needs d")))?;
            if doc.id.is_some() {
                return Err(CliError::invalid(format!(
                    "{field}.ambient: quadratic takes no id"
                )));
            }
            AmbientTag::quadratic(d)
                .map_err(|e| CliError::invalid(format!("{field}.ambient: {e}")))
        }
        "formal" => {
            let id = doc
                .id
                .clone()
                .ok_or_else(|| CliError::invalid(format!("{field}.ambient: formal needs id")))?;
            if doc.d.is_some() {
                return Err(CliError::invalid(format!(
                    "{field}.ambient: formal takes no d"
                )));
            }
            Ok(AmbientTag::formal(id))
        }
        other => Err(CliError::invalid(format!(
            "{field}.ambient.kind: expected \"quadratic\" or \"formal\", got {other:?}"
        ))),
    }
}

fn rational_at(s: &str, field: String) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::invalid(format!("{field}: {e}")))
}

/// A curve plus the user-supplied basis vectors, kept to interpret point
/// coordinates given against that basis.
struct IngestedCurve {
    curve: EllipticCurve,
    user_basis: [QuadElement; 2],
}

fn curve_from_doc(doc: &CurveDoc, field: &str) -> Result<IngestedCurve, CliError> {
    let ambient = ambient_from_doc(&doc.ambient, field)?;
    let mut vectors = Vec::new();
    for (i, col) in doc.basis.iter().enumerate() {
        let x = rational_at(&col[0], format!("{field}.basis[{i}][0]"))?;
        let y = rational_at(&col[1], format!("{field}.basis[{i}][1]"))?;
        vectors.push(QuadElement::new(ambient.clone(), x, y));
    }
    let lattice = Lattice::from_basis(ambient, &vectors[0], &vectors[1])
        .map_err(|e| CliError::invalid(format!("{field}.basis: {e}")))?;
    let curve =
        EllipticCurve::new(lattice).map_err(|e| CliError::invalid(format!("{field}: {e}")))?;
    Ok(IngestedCurve {
        curve,
        user_basis: [vectors[0].clone(), vectors[1].clone()],
    })
}

/// A point name, its user coordinates, and the canonical point.
struct IngestedPoint {
    name: &'static str,
    user: [String; 2],
    point: TorsionPoint,
}

fn point_from_doc(
    coords: &Option<[String; 2]>,
    name: &'static str,
    host: &IngestedCurve,
) -> Result<IngestedPoint, CliError> {
    let raw = coords
        .as_ref()
        .ok_or_else(|| CliError::invalid(format!("points.{name}: missing")))?;
    let c1 = rational_at(&raw[0], format!("points.{name}[0]"))?;
    let c2 = rational_at(&raw[1], format!("points.{name}[1]"))?;
    // coordinates refer to the user basis; lift, then reduce against the
    // canonical lattice
    let lift = host.user_basis[0]
        .scale(&c1)
        .add(&host.user_basis[1].scale(&c2))
        .expect("user basis vectors share an ambient");
    let point = host
        .curve
        .lattice()
        .reduce_point(&lift)
        .map_err(|e| CliError::invalid(format!("points.{name}: {e}")))?;
    Ok(IngestedPoint {
        name,
        user: raw.clone(),
        point,
    })
}

fn reject_extra_points(doc: &PointsDoc, allowed: &[&str]) -> Result<(), CliError> {
    let present = [
        ("tau", doc.tau.is_some()),
        ("theta1", doc.theta1.is_some()),
        ("theta2", doc.theta2.is_some()),
        ("epsilon", doc.epsilon.is_some()),
        ("eta", doc.eta.is_some()),
    ];
    for (name, is_present) in present {
        if is_present && !allowed.contains(&name) {
            return Err(CliError::invalid(format!(
                "points.{name}: not a point of this surface type"
            )));
        }
    }
    Ok(())
}

/// The fully ingested, validated surface plus the point echo data.
pub struct IngestedSpec {
    surface: ValidatedSurface,
    points: Vec<IngestedPoint>,
}

impl IngestedSpec {
    pub fn surface(&self) -> &ValidatedSurface {
        &self.surface
    }
}

pub fn ingest_spec(doc: &SpecDoc) -> Result<IngestedSpec, CliError> {
    let a = curve_from_doc(&doc.curve_a, "curve_a")?;
    let b = curve_from_doc(&doc.curve_b, "curve_b")?;
    let (points, ingested) = match doc.surface_type {
        1 => {
            reject_extra_points(&doc.points, &["tau"])?;
            let tau = point_from_doc(&doc.points.tau, "tau", &a)?;
            (
                SurfacePoints::Type1 {
                    tau: tau.point.clone(),
                },
                vec![tau],
            )
        }
        2 => {
            reject_extra_points(&doc.points, &["theta1", "theta2", "tau"])?;
            let theta1 = point_from_doc(&doc.points.theta1, "theta1", &a)?;
            let theta2 = point_from_doc(&doc.points.theta2, "theta2", &b)?;
            let tau = point_from_doc(&doc.points.tau, "tau", &a)?;
            (
                SurfacePoints::Type2 {
                    theta1: theta1.point.clone(),
                    theta2: theta2.point.clone(),
                    tau: tau.point.clone(),
                },
                vec![theta1, theta2, tau],
            )
        }
        3 => {
            reject_extra_points(&doc.points, &["epsilon"])?;
            let epsilon = point_from_doc(&doc.points.epsilon, "epsilon", &a)?;
            (
                SurfacePoints::Type3 {
                    epsilon: epsilon.point.clone(),
                },
                vec![epsilon],
            )
        }
        5 => {
            reject_extra_points(&doc.points, &["eta"])?;
            let eta = point_from_doc(&doc.points.eta, "eta", &a)?;
            (
                SurfacePoints::Type5 {
                    eta: eta.point.clone(),
                },
                vec![eta],
            )
        }
        _ => {
            reject_extra_points(&doc.points, &[])?;
            (SurfacePoints::None, Vec::new())
        }
    };
    let surface = validate(SurfaceSpec {
        surface_type: doc.surface_type,
        curve_a: a.curve.clone(),
        curve_b: b.curve.clone(),
        points,
    })
    .map_err(|e| CliError::invalid(e.to_string()))?;
    Ok(IngestedSpec {
        surface,
        points: ingested,
    })
}

pub fn parse_spec_file(path: &Path) -> Result<SpecDoc, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------------------
// report values

fn rational_pair(a: &Rational, b: &Rational) -> Value {
    json!([rational_string(a), rational_string(b)])
}

fn element_value(e: &QuadElement) -> Value {
    rational_pair(e.a(), e.b())
}

fn point_value(p: &TorsionPoint) -> Value {
    rational_pair(&p.coords().0, &p.coords().1)
}

fn ambient_value(amb: &AmbientTag) -> Value {
    match amb {
        AmbientTag::Quadratic { d } => json!({"kind": "quadratic", "d": d}),
        AmbientTag::Formal { id } => json!({"kind": "formal", "id": id}),
    }
}

fn lattice_value(l: &Lattice) -> Value {
    let [v1, v2] = l.basis();
    json!([element_value(&v1), element_value(&v2)])
}

fn curve_value(c: &EllipticCurve) -> Value {
    json!({
        "ambient": ambient_value(c.ambient()),
        "basis": lattice_value(c.lattice()),
    })
}

fn classification_value(out: &BrauerClassification) -> Value {
    let witnesses: Vec<Value> = out
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "label": w.label,
                "point": point_value(&w.evaluated_point),
                "trivial": w.is_trivial,
            })
        })
        .collect();
    json!({
        "brauer_group": out.brauer_group.label(),
        "hom_rank": out.hom_rank,
        "kernel_order": out.kernel_order,
        "map_kind": out.map_kind.label(),
        "rule": out.rule,
        "witnesses": witnesses,
    })
}

fn invariants_value(inv: &SurfaceInvariants) -> Value {
    let mut m = Map::new();
    m.insert("brauer_group".into(), json!(inv.brauer_group.label()));
    m.insert(
        "fiber_multiplicities".into(),
        json!(inv.fiber_multiplicities),
    );
    m.insert("group_g".into(), json!(inv.group_g));
    m.insert("group_order".into(), json!(inv.group_order));
    m.insert("h2_torsion".into(), json!(inv.h2_torsion.label()));
    m.insert("lambda".into(), json!(inv.lambda));
    m.insert(
        "num_pullback".into(),
        json!({"a0": inv.num_pullback.0, "b0": inv.num_pullback.1}),
    );
    m.insert("ord_canonical".into(), json!(inv.ord_canonical));
    if let Some(sigma) = inv.sigma_action {
        m.insert("sigma_action".into(), json!(sigma));
    }
    if let Some(cover) = &inv.intermediate_cover {
        m.insert(
            "intermediate_cover".into(),
            json!({
                "cover_type": cover.cover_type,
                "ord_canonical": cover.cover_ord_canonical,
                "num_pullback": {"a0": cover.num_pullback.0, "b0": cover.num_pullback.1},
            }),
        );
    }
    m.insert("surface_type".into(), json!(inv.surface_type));
    Value::Object(m)
}

/// The canonicalized spec document: parsing it again is a fixed point.
fn canonical_spec_value(spec: &IngestedSpec) -> Value {
    let s = spec.surface.spec();
    let mut points = Map::new();
    for p in &spec.points {
        points.insert(p.name.into(), point_value(&p.point));
    }
    json!({
        "type": s.surface_type,
        "curve_a": curve_value(&s.curve_a),
        "curve_b": curve_value(&s.curve_b),
        "points": Value::Object(points),
    })
}

fn points_echo_value(spec: &IngestedSpec) -> Value {
    let mut m = Map::new();
    for p in &spec.points {
        m.insert(
            p.name.into(),
            json!({
                "user": [p.user[0], p.user[1]],
                "canonical": point_value(&p.point),
            }),
        );
    }
    Value::Object(m)
}

// ---------------------------------------------------------------------------
// commands

pub fn classify_report(spec: &IngestedSpec) -> Result<Value, CliError> {
    let surface = &spec.surface;
    let out = classify_canonical(surface).map_err(classify_err)?;
    let mut report = Map::new();
    report.insert("classification".into(), classification_value(&out));
    if matches!(surface.surface_type(), 2 | 3) {
        let cover_out = classify_intermediate_cover(surface).map_err(classify_err)?;
        let cover = surface
            .invariants()
            .intermediate_cover
            .expect("types 2 and 3 carry a cover");
        report.insert(
            "intermediate_cover".into(),
            json!({
                "cover_type": cover.cover_type,
                "kernel_order": cover_out.kernel_order,
                "map_kind": cover_out.map_kind.label(),
                "num_pullback": {"a0": cover.num_pullback.0, "b0": cover.num_pullback.1},
                "rule": cover_out.rule,
            }),
        );
    }
    report.insert(
        "invariants".into(),
        invariants_value(&surface.invariants()),
    );
    report.insert("points".into(), points_echo_value(spec));
    report.insert("spec_canonical".into(), canonical_spec_value(spec));
    report.insert("version".into(), json!(VERSION));
    Ok(Value::Object(report))
}

fn classification_text(report: &Value) -> String {
    let c = &report["classification"];
    let mut s = String::new();
    let _ = writeln!(s, "verdict:       {}", c["map_kind"].as_str().unwrap());
    let _ = writeln!(s, "kernel order:  {}", c["kernel_order"]);
    let _ = writeln!(s, "brauer group:  {}", c["brauer_group"].as_str().unwrap());
    let _ = writeln!(s, "hom rank:      {}", c["hom_rank"]);
    let _ = writeln!(s, "rule:          {}", c["rule"].as_str().unwrap());
    let witnesses = c["witnesses"].as_array().unwrap();
    if !witnesses.is_empty() {
        let _ = writeln!(s, "witnesses:");
        for w in witnesses {
            let point = w["point"].as_array().unwrap();
            let _ = writeln!(
                s,
                "  {:<24} point ({}, {})  trivial={}",
                w["label"].as_str().unwrap(),
                point[0].as_str().unwrap(),
                point[1].as_str().unwrap(),
                w["trivial"]
            );
        }
    }
    if let Some(cover) = report.get("intermediate_cover") {
        let _ = writeln!(
            s,
            "type-1 cover:  {} (kernel {})",
            cover["map_kind"].as_str().unwrap(),
            cover["kernel_order"]
        );
    }
    s
}

pub fn cmd_classify(path: &Path, as_json: bool) -> Result<String, CliError> {
    let doc = parse_spec_file(path)?;
    let spec = ingest_spec(&doc)?;
    let report = classify_report(&spec)?;
    if as_json {
        Ok(report.to_string())
    } else {
        let mut s = format!("surface type:  {}\n", spec.surface.surface_type());
        s.push_str(&classification_text(&report));
        Ok(s)
    }
}

pub fn cmd_invariants(path: &Path, as_json: bool) -> Result<String, CliError> {
    let doc = parse_spec_file(path)?;
    let spec = ingest_spec(&doc)?;
    let inv = spec.surface.invariants();
    let value = invariants_value(&inv);
    if as_json {
        let mut report = Map::new();
        report.insert("invariants".into(), value);
        report.insert("version".into(), json!(VERSION));
        Ok(Value::Object(report).to_string())
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "surface type:    {}", inv.surface_type);
        let _ = writeln!(s, "group G:         {}", inv.group_g);
        let _ = writeln!(s, "ord(canonical):  {}", inv.ord_canonical);
        let _ = writeln!(s, "lambda:          {}", inv.lambda);
        let _ = writeln!(s, "H2 torsion:      {}", inv.h2_torsion.label());
        let _ = writeln!(s, "brauer group:    {}", inv.brauer_group.label());
        let _ = writeln!(
            s,
            "fibers:          ({})",
            inv.fiber_multiplicities
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        let _ = writeln!(
            s,
            "cover pullback:  a0 -> {}*a0, b0 -> {}*b0",
            inv.num_pullback.0, inv.num_pullback.1
        );
        if let Some(sigma) = inv.sigma_action {
            let _ = writeln!(s, "sigma action:    {sigma}");
        }
        if let Some(cover) = &inv.intermediate_cover {
            let _ = writeln!(
                s,
                "type-1 cover:    ord {} pullback a0 -> {}*a0, b0 -> {}*b0",
                cover.cover_ord_canonical, cover.num_pullback.0, cover.num_pullback.1
            );
        }
        Ok(s)
    }
}

fn hom_report(b: &EllipticCurve, a: &EllipticCurve) -> Result<Value, CliError> {
    let hom = hom_module(b, a);
    let mut report = Map::new();
    report.insert(
        "end_b".into(),
        match b.endomorphism_ring() {
            MultiplierRing::Order(o) => json!({"kind": "order", "basis": lattice_value(o)}),
            MultiplierRing::Integers => json!({"kind": "integers"}),
        },
    );
    let hom_value = match hom.kind() {
        HomKind::Rank2(l) => json!({"kind": "rank2", "basis": lattice_value(l)}),
        HomKind::Rank1(c) => json!({"kind": "rank1", "generator": rational_string(c)}),
        HomKind::Zero => json!({"kind": "zero"}),
    };
    report.insert("hom".into(), hom_value);
    let (search, isogeny_value) = if hom.rank() == 0 {
        ("not-applicable", Value::Null)
    } else {
        match generating_isogeny(&hom) {
            Ok(psi) => ("found", isogeny_json(&psi)),
            Err(IsogenyError::NoGeneratorFound) => ("not-found", Value::Null),
            Err(e) => return Err(CliError::invalid(e.to_string())),
        }
    };
    report.insert("generating_isogeny".into(), isogeny_value);
    report.insert("generator_search".into(), json!(search));
    report.insert("version".into(), json!(VERSION));
    Ok(Value::Object(report))
}

fn isogeny_json(phi: &Isogeny) -> Value {
    json!({
        "source": curve_value(phi.source()),
        "target": curve_value(phi.target()),
        "multiplier": element_value(phi.multiplier()),
        "degree": phi.degree(),
    })
}

pub fn cmd_hom(path: &Path, as_json: bool) -> Result<String, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let raw: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
    let (a, b) = if raw.get("type").is_some() {
        let doc: SpecDoc = serde_json::from_value(raw)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
        let spec = ingest_spec(&doc)?;
        (
            spec.surface.curve_a().clone(),
            spec.surface.curve_b().clone(),
        )
    } else {
        let doc: PairDoc = serde_json::from_value(raw)
            .map_err(|e| CliError::invalid(format!("{}: {e}", path.display())))?;
        (
            curve_from_doc(&doc.curve_a, "curve_a")?.curve,
            curve_from_doc(&doc.curve_b, "curve_b")?.curve,
        )
    };
    let report = hom_report(&b, &a)?;
    if as_json {
        Ok(report.to_string())
    } else {
        let mut s = String::new();
        let hom = &report["hom"];
        match hom["kind"].as_str().unwrap() {
            "rank2" => {
                let basis = hom["basis"].as_array().unwrap();
                let fmt = |v: &Value| {
                    let p = v.as_array().unwrap();
                    format!("({}, {})", p[0].as_str().unwrap(), p[1].as_str().unwrap())
                };
                let _ = writeln!(s, "hom rank:   2");
                let _ = writeln!(s, "hom basis:  {} and {}", fmt(&basis[0]), fmt(&basis[1]));
            }
            "rank1" => {
                let _ = writeln!(s, "hom rank:   1");
                let _ = writeln!(
                    s,
                    "generator:  {}",
                    hom["generator"].as_str().unwrap()
                );
            }
            _ => {
                let _ = writeln!(s, "hom rank:   0");
            }
        }
        match report["generator_search"].as_str().unwrap() {
            "found" => {
                let iso = &report["generating_isogeny"];
                let m = iso["multiplier"].as_array().unwrap();
                let _ = writeln!(
                    s,
                    "generator:  multiplier ({}, {}) of degree {}",
                    m[0].as_str().unwrap(),
                    m[1].as_str().unwrap(),
                    iso["degree"]
                );
            }
            "not-found" => {
                let _ = writeln!(
                    s,
                    "generator:  none found (class number > 1); the basis above generates"
                );
            }
            _ => {}
        }
        let end = &report["end_b"];
        if end["kind"] == "order" {
            let basis = end["basis"].as_array().unwrap();
            let fmt = |v: &Value| {
                let p = v.as_array().unwrap();
                format!("({}, {})", p[0].as_str().unwrap(), p[1].as_str().unwrap())
            };
            let _ = writeln!(s, "end(B):     order with basis {} and {}", fmt(&basis[0]), fmt(&basis[1]));
        } else {
            let _ = writeln!(s, "end(B):     integers");
        }
        Ok(s)
    }
}

// ---------------------------------------------------------------------------
// census

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurvePreset {
    /// The maximal order of the quadratic field.
    Max,
    /// The order of conductor 2.
    Conductor2,
}

impl CurvePreset {
    pub fn parse(s: &str) -> Result<CurvePreset, CliError> {
        match s {
            "max" => Ok(CurvePreset::Max),
            "conductor2" => Ok(CurvePreset::Conductor2),
            other => Err(CliError::invalid(format!(
                "unknown curve preset {other:?}; expected \"max\" or \"conductor2\""
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CurvePreset::Max => "max",
            CurvePreset::Conductor2 => "conductor2",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CensusParams {
    pub surface_type: u8,
    pub d: u64,
    pub preset: CurvePreset,
    pub verbose: bool,
}

#[derive(Debug, Clone)]
pub struct CensusOutcome {
    pub domain: Vec<(String, &'static str)>,
    pub counts: BTreeMap<&'static str, u64>,
}

fn preset_curve(d: u64, preset: CurvePreset) -> Result<EllipticCurve, CliError> {
    let amb = AmbientTag::quadratic(d).map_err(|e| CliError::invalid(e.to_string()))?;
    let one = QuadElement::one(amb.clone());
    let omega = QuadElement::omega(amb.clone());
    let delta = if d % 4 == 3 {
        let half = Rational::new(1.into(), 2.into());
        QuadElement::new(amb.clone(), half.clone(), half)
    } else {
        omega
    };
    let second = match preset {
        CurvePreset::Max => delta,
        CurvePreset::Conductor2 => delta.scale(&Rational::from(num_bigint::BigInt::from(2))),
    };
    let lat = Lattice::from_basis(amb, &one, &second)
        .map_err(|e| CliError::invalid(e.to_string()))?;
    EllipticCurve::new(lat).map_err(|e| CliError::invalid(e.to_string()))
}

fn coord_label(p: &TorsionPoint) -> String {
    format!(
        "({},{})",
        rational_string(&p.coords().0),
        rational_string(&p.coords().1)
    )
}

/// Enumerate every valid torsion choice for the fixed curves and classify
/// each one.
pub fn run_census(params: &CensusParams) -> Result<CensusOutcome, CliError> {
    let curve = preset_curve(params.d, params.preset)?;
    let a = curve.clone();
    let b = curve;
    let mut specs: Vec<(String, SurfaceSpec)> = Vec::new();
    match params.surface_type {
        1 => {
            for tau in a.torsion_points(2).into_iter().filter(|p| !p.is_zero()) {
                specs.push((
                    format!("tau={}", coord_label(&tau)),
                    SurfaceSpec {
                        surface_type: 1,
                        curve_a: a.clone(),
                        curve_b: b.clone(),
                        points: SurfacePoints::Type1 { tau },
                    },
                ));
            }
        }
        2 => {
            for theta1 in a.torsion_points(2).into_iter().filter(|p| !p.is_zero()) {
                for theta2 in b.torsion_points(2).into_iter().filter(|p| !p.is_zero()) {
                    for tau in a
                        .torsion_points(2)
                        .into_iter()
                        .filter(|p| !p.is_zero() && *p != theta1)
                    {
                        specs.push((
                            format!(
                                "theta1={} theta2={} tau={}",
                                coord_label(&theta1),
                                coord_label(&theta2),
                                coord_label(&tau)
                            ),
                            SurfaceSpec {
                                surface_type: 2,
                                curve_a: a.clone(),
                                curve_b: b.clone(),
                                points: SurfacePoints::Type2 {
                                    theta1: theta1.clone(),
                                    theta2: theta2.clone(),
                                    tau,
                                },
                            },
                        ));
                    }
                }
            }
        }
        3 => {
            for epsilon in a.torsion_points(4).into_iter().filter(|p| p.order() == 4) {
                specs.push((
                    format!("epsilon={}", coord_label(&epsilon)),
                    SurfaceSpec {
                        surface_type: 3,
                        curve_a: a.clone(),
                        curve_b: b.clone(),
                        points: SurfacePoints::Type3 { epsilon },
                    },
                ));
            }
        }
        5 => {
            for eta in a.torsion_points(3).into_iter().filter(|p| !p.is_zero()) {
                specs.push((
                    format!("eta={}", coord_label(&eta)),
                    SurfaceSpec {
                        surface_type: 5,
                        curve_a: a.clone(),
                        curve_b: b.clone(),
                        points: SurfacePoints::Type5 { eta },
                    },
                ));
            }
        }
        other => {
            return Err(CliError::invalid(format!(
                "census enumerates torsion data; type {other} has none"
            )));
        }
    }
    let mut domain = Vec::with_capacity(specs.len());
    let mut counts: BTreeMap<&'static str, u64> = BTreeMap::new();
    for (label, spec) in specs {
        let surface = validate(spec).map_err(|e| {
            CliError::invalid(format!("inconsistent census domain ({label}): {e}"))
        })?;
        let out = classify_canonical(&surface).map_err(classify_err)?;
        *counts.entry(out.map_kind.label()).or_insert(0) += 1;
        domain.push((label, out.map_kind.label()));
    }
    Ok(CensusOutcome { domain, counts })
}

pub fn cmd_census(params: &CensusParams, as_json: bool) -> Result<String, CliError> {
    let outcome = run_census(params)?;
    if as_json {
        let mut report = Map::new();
        let counts: Map<String, Value> = outcome
            .counts
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        report.insert("counts".into(), Value::Object(counts));
        report.insert("d".into(), json!(params.d));
        report.insert("domain_size".into(), json!(outcome.domain.len()));
        report.insert("preset".into(), json!(params.preset.label()));
        if params.verbose {
            let specs: Vec<Value> = outcome
                .domain
                .iter()
                .map(|(label, kind)| json!({"label": label, "map_kind": kind}))
                .collect();
            report.insert("specs".into(), json!(specs));
        }
        report.insert("type".into(), json!(params.surface_type));
        report.insert("version".into(), json!(VERSION));
        Ok(Value::Object(report).to_string())
    } else {
        let mut s = format!(
            "census type={} d={} preset={} domain={}\n",
            params.surface_type,
            params.d,
            params.preset.label(),
            outcome.domain.len()
        );
        for (kind, count) in &outcome.counts {
            let _ = writeln!(s, "{kind}: {count}");
        }
        if params.verbose {
            for (label, kind) in &outcome.domain {
                let _ = writeln!(s, "{label} -> {kind}");
            }
        }
        Ok(s)
    }
}
