//! JSON file formats for seminorm specs, polytopes, certificates, reports
//! and probe traces.
//!
//! Numbers are exact: integers are plain JSON integers of any size, and
//! non-integral rationals are written `{"num": p, "den": q}`. Spec files accept
//! integers only. Syntax errors report line and column; structural errors
//! report the path of the offending value (e.g. `$.terms[1].weights[0]`).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde_json::{Map, Number, Value};

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Integer, LatticeVector, RatVector, Rational};
use crate::geometry::{convex_hull, Polytope};
use crate::reconstruct::{
    CertificationReport, Counterexample, ExposureCertificate, RayProbe, TraceStep,
};
use crate::seminorm::SeminormSpec;

pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })
}

fn err(path: &str, message: impl Into<String>) -> Error {
    Error::Parse { location: path.to_string(), message: message.into() }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| err(path, format!("missing field \"{key}\"")))
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| err(path, "expected an array"))
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

pub fn integer_from(v: &Value, path: &str) -> Result<Integer> {
    match v {
        Value::Number(n) if is_integer_literal(&n.to_string()) => {
            Integer::from_str(&n.to_string()).map_err(|e| err(path, e.to_string()))
        }
        _ => Err(err(path, format!("expected an integer, found {v}"))),
    }
}

pub fn rational_from(v: &Value, path: &str) -> Result<Rational> {
    if let Some(obj) = v.as_object() {
        let num = integer_from(field(obj, "num", path)?, &format!("{path}.num"))?;
        let den = integer_from(field(obj, "den", path)?, &format!("{path}.den"))?;
        if !den.is_positive() {
            return Err(err(&format!("{path}.den"), "denominator must be positive"));
        }
        return Ok(Rational::new(num, den));
    }
    integer_from(v, path).map(Rational::from_integer)
}

fn usize_from(v: &Value, path: &str) -> Result<usize> {
    let i = integer_from(v, path)?;
    usize::try_from(&i).map_err(|_| err(path, format!("expected a nonnegative count, found {i}")))
}

fn u64_from(v: &Value, path: &str) -> Result<u64> {
    let i = integer_from(v, path)?;
    u64::try_from(&i).map_err(|_| err(path, format!("expected a nonnegative count, found {i}")))
}

pub fn lattice_from(v: &Value, path: &str) -> Result<LatticeVector> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, c)| integer_from(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()
        .map(LatticeVector)
}

pub fn rat_vector_from(v: &Value, path: &str) -> Result<RatVector> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, c)| rational_from(c, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()
        .map(RatVector)
}

fn list_from<T>(v: &Value, path: &str, item: impl Fn(&Value, &str) -> Result<T>) -> Result<Vec<T>> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| item(x, &format!("{path}[{i}]")))
        .collect()
}

pub fn integer_value(i: &Integer) -> Value {
    Value::Number(Number::from_str(&i.to_string()).expect("integers are valid JSON numbers"))
}

pub fn rational_value(q: &Rational) -> Value {
    if q.is_integer() {
        integer_value(q.numer())
    } else {
        let mut m = Map::new();
        m.insert("num".into(), integer_value(q.numer()));
        m.insert("den".into(), integer_value(q.denom()));
        Value::Object(m)
    }
}

pub fn lattice_value(v: &LatticeVector) -> Value {
    Value::Array(v.0.iter().map(integer_value).collect())
}

pub fn rat_vector_value(v: &RatVector) -> Value {
    Value::Array(v.0.iter().map(rational_value).collect())
}

fn obj(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn check_dim(path: &str, expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(err(path, format!("dimension mismatch: expected {expected}, got {found}")))
    }
}

fn wrap(path: &str, r: Result<SeminormSpec>) -> Result<SeminormSpec> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => err(path, other.to_string()),
    })
}

fn spec_node(v: &Value, path: &str) -> Result<SeminormSpec> {
    let o = object(v, path)?;
    let kind = field(o, "kind", path)?
        .as_str()
        .ok_or_else(|| err(&format!("{path}.kind"), "expected a string"))?;
    let dim = o.get("dim").map(|d| usize_from(d, &format!("{path}.dim"))).transpose()?;
    let spec = match kind {
        "vertices" => {
            let points = list_from(field(o, "points", path)?, &format!("{path}.points"), lattice_from)?;
            let d = dim.or_else(|| points.first().map(LatticeVector::dim)).unwrap_or(0);
            for (i, p) in points.iter().enumerate() {
                check_dim(&format!("{path}.points[{i}]"), d, p.dim())?;
            }
            wrap(path, SeminormSpec::vertices(d, points))?
        }
        "weighted_l1" | "weighted_linf" => {
            let weights = list_from(field(o, "weights", path)?, &format!("{path}.weights"), integer_from)?;
            if kind == "weighted_l1" {
                wrap(path, SeminormSpec::weighted_l1(weights))?
            } else {
                wrap(path, SeminormSpec::weighted_linf(weights))?
            }
        }
        "sum" | "max" => {
            let terms = list_from(field(o, "terms", path)?, &format!("{path}.terms"), spec_node)?;
            if kind == "sum" {
                wrap(path, SeminormSpec::sum(terms))?
            } else {
                wrap(path, SeminormSpec::max(terms))?
            }
        }
        "pullback" => {
            let rows = list_from(field(o, "matrix", path)?, &format!("{path}.matrix"), lattice_from)?;
            let matrix = IntMatrix::new(rows).map_err(|e| err(&format!("{path}.matrix"), e.to_string()))?;
            let inner = spec_node(field(o, "inner", path)?, &format!("{path}.inner"))?;
            wrap(path, SeminormSpec::pullback(matrix, inner))?
        }
        "table" => {
            let d = dim.ok_or_else(|| err(path, "table needs \"dim\""))?;
            let mut entries = BTreeMap::new();
            let items = array(field(o, "entries", path)?, &format!("{path}.entries"))?;
            for (i, e) in items.iter().enumerate() {
                let ep = format!("{path}.entries[{i}]");
                let eo = object(e, &ep)?;
                let point = lattice_from(field(eo, "point", &ep)?, &format!("{ep}.point"))?;
                check_dim(&format!("{ep}.point"), d, point.dim())?;
                let value = integer_from(field(eo, "value", &ep)?, &format!("{ep}.value"))?;
                if entries.insert(point, value).is_some() {
                    return Err(err(&ep, "duplicate table point"));
                }
            }
            wrap(path, SeminormSpec::table(d, entries))?
        }
        other => return Err(err(&format!("{path}.kind"), format!("unknown kind {other:?}"))),
    };
    if let Some(d) = dim {
        check_dim(path, d, spec.dim())?;
    }
    Ok(spec)
}

/// Parses a seminorm spec file. The root object must carry `"dim"`.
pub fn spec_from_str(text: &str) -> Result<SeminormSpec> {
    let v = parse_document(text)?;
    let root = object(&v, "$")?;
    if !root.contains_key("dim") {
        return Err(err("$", "missing field \"dim\" at the root"));
    }
    spec_node(&v, "$")
}

pub fn spec_value(spec: &SeminormSpec) -> Value {
    let ints = |w: &[Integer]| Value::Array(w.iter().map(integer_value).collect());
    let dim = integer_value(&Integer::from(spec.dim()));
    match spec {
        SeminormSpec::Vertices { points, .. } => obj(vec![
            ("kind", "vertices".into()),
            ("dim", dim),
            ("points", Value::Array(points.iter().map(lattice_value).collect())),
        ]),
        SeminormSpec::WeightedL1 { weights } | SeminormSpec::WeightedLinf { weights } => obj(vec![
            ("kind", spec.kind().into()),
            ("dim", dim),
            ("weights", ints(weights)),
        ]),
        SeminormSpec::Sum { terms, .. } | SeminormSpec::Max { terms, .. } => obj(vec![
            ("kind", spec.kind().into()),
            ("dim", dim),
            ("terms", Value::Array(terms.iter().map(spec_value).collect())),
        ]),
        SeminormSpec::Pullback { matrix, inner } => obj(vec![
            ("kind", "pullback".into()),
            ("dim", dim),
            ("matrix", Value::Array(matrix.rows().iter().map(lattice_value).collect())),
            ("inner", spec_value(inner)),
        ]),
        SeminormSpec::Table { entries, .. } => obj(vec![
            ("kind", "table".into()),
            ("dim", dim),
            (
                "entries",
                Value::Array(
                    entries
                        .iter()
                        .map(|(p, v)| obj(vec![("point", lattice_value(p)), ("value", integer_value(v))]))
                        .collect(),
                ),
            ),
        ]),
    }
}

pub fn polytope_value(p: &Polytope) -> Value {
    let facets = p
        .facets()
        .iter()
        .map(|f| obj(vec![("normal", lattice_value(&f.normal)), ("offset", rational_value(&f.offset))]))
        .collect();
    let mut entries = vec![
        ("dim", integer_value(&Integer::from(p.dim()))),
        ("affine_dim", integer_value(&Integer::from(p.affine_dim()))),
        ("vertices", Value::Array(p.vertices().iter().map(rat_vector_value).collect())),
        ("facets", Value::Array(facets)),
    ];
    if !p.is_full_dimensional() {
        entries.push(("span", Value::Array(p.span().iter().map(rat_vector_value).collect())));
    }
    obj(entries)
}

fn polytope_from_value(v: &Value, path: &str) -> Result<Polytope> {
    let o = object(v, path)?;
    let dim = usize_from(field(o, "dim", path)?, &format!("{path}.dim"))?;
    let vertices = list_from(field(o, "vertices", path)?, &format!("{path}.vertices"), rat_vector_from)?;
    for (i, x) in vertices.iter().enumerate() {
        check_dim(&format!("{path}.vertices[{i}]"), dim, x.dim())?;
    }
    if vertices.is_empty() {
        return Err(err(&format!("{path}.vertices"), "polytope needs at least one vertex"));
    }
    let p = convex_hull(&vertices).map_err(|e| err(path, e.to_string()))?;
    if let Some(fs) = o.get("facets") {
        for (i, f) in array(fs, &format!("{path}.facets"))?.iter().enumerate() {
            let fp = format!("{path}.facets[{i}]");
            let fo = object(f, &fp)?;
            let normal = lattice_from(field(fo, "normal", &fp)?, &format!("{fp}.normal"))?;
            check_dim(&format!("{fp}.normal"), dim, normal.dim())?;
            let offset = rational_from(field(fo, "offset", &fp)?, &format!("{fp}.offset"))?;
            let violated = p.vertices().iter().any(|x| x.dot_lattice(&normal).expect("checked") > offset);
            if violated {
                return Err(err(&fp, "facet inequality is violated by a listed vertex"));
            }
        }
    }
    if let Some(ad) = o.get("affine_dim") {
        let ad = usize_from(ad, &format!("{path}.affine_dim"))?;
        if ad != p.affine_dim() {
            return Err(err(
                &format!("{path}.affine_dim"),
                format!("declared {ad} but the vertices span {}", p.affine_dim()),
            ));
        }
    }
    Ok(p)
}

/// Parses a polytope file. The vertex list is authoritative and canonicalised;
/// any listed facets must be valid inequalities for it.
pub fn polytope_from_str(text: &str) -> Result<Polytope> {
    polytope_from_value(&parse_document(text)?, "$")
}

/// Parses a point list: `{"points": [...]}`, `{"vertices": [...]}` or a bare array.
pub fn points_from_str(text: &str) -> Result<Vec<RatVector>> {
    let v = parse_document(text)?;
    let (list, path) = match &v {
        Value::Array(_) => (&v, "$".to_string()),
        Value::Object(o) => {
            let key = ["points", "vertices"]
                .into_iter()
                .find(|k| o.contains_key(*k))
                .ok_or_else(|| err("$", "expected \"points\" or \"vertices\""))?;
            (&o[key], format!("$.{key}"))
        }
        _ => return Err(err("$", "expected an array or an object")),
    };
    let pts = list_from(list, &path, rat_vector_from)?;
    let Some(d) = pts.first().map(RatVector::dim) else {
        return Err(err(&path, "point list is empty"));
    };
    for (i, p) in pts.iter().enumerate() {
        check_dim(&format!("{path}[{i}]"), d, p.dim())?;
    }
    Ok(pts)
}

fn opt_rational(v: &Option<Rational>) -> Value {
    v.as_ref().map(rational_value).unwrap_or(Value::Null)
}

pub fn probe_value(p: &RayProbe) -> Value {
    obj(vec![
        ("n", integer_value(&Integer::from(p.n))),
        ("direction", lattice_value(&p.direction)),
        ("offset", lattice_value(&p.offset)),
        ("x_n", lattice_value(&p.x_n)),
        ("value", integer_value(&p.value)),
        ("diffs", lattice_value(&p.diffs)),
        ("residual", integer_value(&p.residual)),
        ("lambda_n", opt_rational(&p.lambda_n)),
        ("z_sq", opt_rational(&p.z_sq)),
    ])
}

fn probe_from(v: &Value, path: &str) -> Result<RayProbe> {
    let o = object(v, path)?;
    let get = |k: &str| field(o, k, path);
    let sub = |k: &str| format!("{path}.{k}");
    let opt = |k: &str| -> Result<Option<Rational>> {
        match o.get(k) {
            None | Some(Value::Null) => Ok(None),
            Some(x) => rational_from(x, &sub(k)).map(Some),
        }
    };
    Ok(RayProbe {
        n: u64_from(get("n")?, &sub("n"))?,
        direction: lattice_from(get("direction")?, &sub("direction"))?,
        offset: lattice_from(get("offset")?, &sub("offset"))?,
        x_n: lattice_from(get("x_n")?, &sub("x_n"))?,
        value: integer_from(get("value")?, &sub("value"))?,
        diffs: lattice_from(get("diffs")?, &sub("diffs"))?,
        residual: integer_from(get("residual")?, &sub("residual"))?,
        lambda_n: opt("lambda_n")?,
        z_sq: opt("z_sq")?,
    })
}

pub fn certificate_value(c: &ExposureCertificate) -> Value {
    obj(vec![
        ("vertex", lattice_value(&c.vertex)),
        ("direction", lattice_value(&c.direction)),
        ("n_star", integer_value(&Integer::from(c.n_star))),
        ("window", integer_value(&Integer::from(c.window))),
        ("probes", Value::Array(c.probes.iter().map(probe_value).collect())),
    ])
}

fn certificate_from(v: &Value, path: &str) -> Result<ExposureCertificate> {
    let o = object(v, path)?;
    let sub = |k: &str| format!("{path}.{k}");
    Ok(ExposureCertificate {
        vertex: lattice_from(field(o, "vertex", path)?, &sub("vertex"))?,
        direction: lattice_from(field(o, "direction", path)?, &sub("direction"))?,
        n_star: u64_from(field(o, "n_star", path)?, &sub("n_star"))?,
        window: usize_from(field(o, "window", path)?, &sub("window"))?,
        probes: list_from(field(o, "probes", path)?, &sub("probes"), probe_from)?,
    })
}

pub fn certificates_value(certs: &[ExposureCertificate]) -> Value {
    obj(vec![("certificates", Value::Array(certs.iter().map(certificate_value).collect()))])
}

pub fn certificates_from_str(text: &str) -> Result<Vec<ExposureCertificate>> {
    let v = parse_document(text)?;
    let o = object(&v, "$")?;
    list_from(field(o, "certificates", "$")?, "$.certificates", certificate_from)
}

pub fn report_value(r: &CertificationReport) -> Value {
    let ce = r
        .counterexample
        .as_ref()
        .map(|c| {
            obj(vec![
                ("point", lattice_value(&c.point)),
                ("oracle_value", integer_value(&c.oracle_value)),
                ("support_value", rational_value(&c.support_value)),
            ])
        })
        .unwrap_or(Value::Null);
    obj(vec![
        ("pass", Value::Bool(r.pass)),
        ("radius", integer_value(&Integer::from(r.radius))),
        ("checked_count", integer_value(&Integer::from(r.checked_count))),
        ("counterexample", ce),
        ("hull_equality", r.hull_equality.map(Value::Bool).unwrap_or(Value::Null)),
    ])
}

pub fn report_from_str(text: &str) -> Result<CertificationReport> {
    let v = parse_document(text)?;
    let o = object(&v, "$")?;
    let pass = field(o, "pass", "$")?.as_bool().ok_or_else(|| err("$.pass", "expected a boolean"))?;
    let counterexample = match field(o, "counterexample", "$")? {
        Value::Null => None,
        c => {
            let co = object(c, "$.counterexample")?;
            Some(Counterexample {
                point: lattice_from(field(co, "point", "$.counterexample")?, "$.counterexample.point")?,
                oracle_value: integer_from(
                    field(co, "oracle_value", "$.counterexample")?,
                    "$.counterexample.oracle_value",
                )?,
                support_value: rational_from(
                    field(co, "support_value", "$.counterexample")?,
                    "$.counterexample.support_value",
                )?,
            })
        }
    };
    let hull_equality = match o.get("hull_equality") {
        None | Some(Value::Null) => None,
        Some(b) => Some(b.as_bool().ok_or_else(|| err("$.hull_equality", "expected a boolean"))?),
    };
    Ok(CertificationReport {
        pass,
        radius: u64_from(field(o, "radius", "$")?, "$.radius")?,
        checked_count: u64_from(field(o, "checked_count", "$")?, "$.checked_count")?,
        counterexample,
        hull_equality,
    })
}

pub fn trace_value(y0: &LatticeVector, steps: &[TraceStep]) -> Value {
    let rows = steps
        .iter()
        .map(|s| {
            obj(vec![
                ("probe", probe_value(&s.probe)),
                ("argmax", rat_vector_value(&s.argmax)),
                ("gap", rational_value(&s.gap)),
                ("bound_sq", rational_value(&s.bound_sq)),
            ])
        })
        .collect();
    obj(vec![("y0", lattice_value(y0)), ("steps", Value::Array(rows))])
}

pub fn trace_from_str(text: &str) -> Result<(LatticeVector, Vec<TraceStep>)> {
    let v = parse_document(text)?;
    let o = object(&v, "$")?;
    let y0 = lattice_from(field(o, "y0", "$")?, "$.y0")?;
    let steps = list_from(field(o, "steps", "$")?, "$.steps", |s, path| {
        let so = object(s, path)?;
        let sub = |k: &str| format!("{path}.{k}");
        Ok(TraceStep {
            probe: probe_from(field(so, "probe", path)?, &sub("probe"))?,
            argmax: rat_vector_from(field(so, "argmax", path)?, &sub("argmax"))?,
            gap: rational_from(field(so, "gap", path)?, &sub("gap"))?,
            bound_sq: rational_from(field(so, "bound_sq", path)?, &sub("bound_sq"))?,
        })
    })?;
    Ok((y0, steps))
}

fn is_scalar(v: &Value) -> bool {
    !v.is_array() && !v.is_object()
        || v.as_object().is_some_and(|o| o.values().all(|x| !x.is_array() && !x.is_object()))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, x, indent);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) if map.values().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('{');
            for (i, (k, x)) in map.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{}: ", Value::String(k.clone()));
                write_value(out, x, indent);
            }
            out.push('}');
        }
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::String(k.clone()));
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => {
            let _ = write!(out, "{scalar}");
        }
    }
}

/// Deterministic pretty printer: scalar arrays stay on one line. Newline-terminated.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

/// `"p/q"`, or the plain integer.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
