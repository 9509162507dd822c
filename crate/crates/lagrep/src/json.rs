//! JSON schemas for polynomials, matrices, relations and objects.
//!
//! A polynomial is an object from exponents (as strings) to nonzero
//! integer coefficients, `{"2": 2, "1": -3, "0": 2}` (coefficients beyond
//! 64 bits are written as decimal strings); readers also accept
//! the text form `"2t^2 - 3t + 2"`. A matrix is
//! `{"rows": r, "cols": c, "entries": [[poly, …], …]}`.

use lagrep_core::alexander::{AlexanderResult, Ambiguity, TwoStrandInvariant};
use lagrep_core::diskhomology::DiskObject;
use lagrep_core::lagrangian::Relation;
use lagrep_core::{LambdaMatrix, LaurentPoly};
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

fn bad(what: &str, v: &Value) -> CliError {
    CliError::Parse(format!("expected {what}, got {v}"))
}

pub fn poly_to_json(p: &LaurentPoly) -> Value {
    let coeff = |c: i128| i64::try_from(c).map_or_else(|_| json!(c.to_string()), |c| json!(c));
    let map: Map<String, Value> = p.terms().map(|(e, c)| (e.to_string(), coeff(c))).collect();
    Value::Object(map)
}

pub fn poly_from_json(v: &Value) -> CliResult<LaurentPoly> {
    match v {
        Value::String(s) => s.parse().map_err(|e| CliError::Parse(format!("bad polynomial {s:?}: {e}"))),
        Value::Object(map) => {
            let terms = map
                .iter()
                .map(|(k, c)| {
                    let e: i32 = k.parse().map_err(|_| CliError::Parse(format!("bad exponent {k:?}")))?;
                    let c = match c {
                        Value::String(s) => s.parse::<i128>().ok(),
                        other => other.as_i64().map(i128::from),
                    }
                    .ok_or_else(|| bad("an integer coefficient", c))?;
                    Ok((e, c))
                })
                .collect::<CliResult<Vec<_>>>()?;
            Ok(LaurentPoly::from_terms(terms))
        }
        other => Err(bad("a polynomial", other)),
    }
}

pub fn matrix_to_json(m: &LambdaMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(poly_to_json).collect())).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": entries })
}

fn usize_field(v: &Value, key: &str) -> CliResult<usize> {
    v.get(key).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| bad(&format!("a count {key:?}"), v))
}

fn bool_field(v: &Value, key: &str) -> CliResult<bool> {
    v.get(key).and_then(Value::as_bool).ok_or_else(|| bad(&format!("a flag {key:?}"), v))
}

pub fn matrix_from_json(v: &Value) -> CliResult<LambdaMatrix> {
    let (rows, cols) = (usize_field(v, "rows")?, usize_field(v, "cols")?);
    let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("an entries array", v))?;
    if entries.len() != rows {
        return Err(CliError::Parse(format!("matrix declares {rows} rows but has {}", entries.len())));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row.as_array().ok_or_else(|| bad("a row array", row))?;
        if row.len() != cols {
            return Err(CliError::Parse(format!("matrix declares {cols} columns but a row has {}", row.len())));
        }
        for x in row {
            flat.push(poly_from_json(x)?);
        }
    }
    LambdaMatrix::new(rows, cols, flat).map_err(|e| CliError::Parse(e.to_string()))
}

/// The serialisable content of a relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDump {
    pub source_rank: usize,
    pub target_rank: usize,
    pub m: LambdaMatrix,
    pub m_prime: LambdaMatrix,
    pub certified_saturated: bool,
    pub lagrangian_checked: bool,
}

impl RelationDump {
    /// Runs the Lagrangian check, so `lagrangian_checked` is a verdict.
    pub fn of(rel: &Relation) -> CliResult<Self> {
        Ok(Self {
            source_rank: rel.source().rank(),
            target_rank: rel.target().rank(),
            m: rel.m(),
            m_prime: rel.m_prime(),
            certified_saturated: rel.gens().certified_free_basis(),
            lagrangian_checked: rel.is_lagrangian()?,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source_rank": self.source_rank,
            "target_rank": self.target_rank,
            "M": matrix_to_json(&self.m),
            "Mprime": matrix_to_json(&self.m_prime),
            "certified_saturated": self.certified_saturated,
            "lagrangian_checked": self.lagrangian_checked,
        })
    }

    pub fn from_json(v: &Value) -> CliResult<Self> {
        let field = |k: &str| v.get(k).ok_or_else(|| bad(&format!("a field {k:?}"), v));
        let dump = Self {
            source_rank: usize_field(v, "source_rank")?,
            target_rank: usize_field(v, "target_rank")?,
            m: matrix_from_json(field("M")?)?,
            m_prime: matrix_from_json(field("Mprime")?)?,
            certified_saturated: bool_field(v, "certified_saturated")?,
            lagrangian_checked: bool_field(v, "lagrangian_checked")?,
        };
        if dump.m.rows() != dump.source_rank || dump.m_prime.rows() != dump.target_rank || dump.m.cols() != dump.m_prime.cols() {
            return Err(CliError::Parse("relation blocks do not match the declared ranks".into()));
        }
        Ok(dump)
    }
}

/// Debugging dump of an object: signs, Gram matrices and the eliminated
/// boundary relation, if any.
pub fn object_to_json(obj: &DiskObject) -> Value {
    json!({
        "eps": obj.eps().to_string(),
        "rank": obj.rank(),
        "disk_rank": obj.disk_rank(),
        "gram": matrix_to_json(obj.module().gram()),
        "disk_gram": matrix_to_json(obj.disk_gram()),
        "boundary_relation": obj.relation().map(|b| Value::Array(b.iter().map(poly_to_json).collect())),
        "eliminated_index": obj.eliminated_index(),
    })
}

/// `{"alexander": text, "ambiguity": "exact"}`, or with ambiguity
/// `"up_to_divisor"` and the bound in `"divisor_bound"`.
pub fn alexander_to_json(r: &AlexanderResult) -> Value {
    match &r.ambiguity {
        Ambiguity::Exact => json!({ "alexander": r.poly.to_string(), "ambiguity": "exact" }),
        Ambiguity::UpToDivisor(d) => json!({
            "alexander": r.poly.to_string(),
            "ambiguity": "up_to_divisor",
            "divisor_bound": d.to_string(),
        }),
    }
}

pub fn alexander_from_json(v: &Value) -> CliResult<AlexanderResult> {
    let text = |k: &str| v.get(k).ok_or_else(|| bad(&format!("a field {k:?}"), v)).and_then(poly_from_json);
    let ambiguity = match v.get("ambiguity").and_then(Value::as_str) {
        Some("exact") => Ambiguity::Exact,
        Some("up_to_divisor") => Ambiguity::UpToDivisor(text("divisor_bound")?),
        _ => return Err(bad("an ambiguity tag", v)),
    };
    Ok(AlexanderResult { poly: text("alexander")?, ambiguity })
}

pub fn two_strand_to_json(inv: &TwoStrandInvariant) -> Value {
    json!({ "m1": inv.m1().to_string(), "m2": inv.m2().to_string() })
}

/// Pretty JSON with a trailing newline; keys are sorted, so equal values
/// render to equal bytes.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values built here always serialise");
    s.push('\n');
    s
}
