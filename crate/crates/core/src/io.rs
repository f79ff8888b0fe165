//! JSON file formats. Scalars are always exact strings such as `"3/4"` or
//! `"1+-1*sqrt(2)"`; plain JSON integers are accepted on input.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::classify::{BalanceViolation, CspVerdict, GateViolation, HardnessNote, Outcome, Verdict};
use crate::error::{Error, Result};
use crate::evaluate::{SignatureGrid, Slot};
use crate::matrix::Matrix;
use crate::scalar::TowerScalar;
use crate::signature::{Signature, DEFAULT_ARITY_CAP};
use crate::transform::OrthoCandidate;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    fn parse(&self) -> Result<TowerScalar> {
        match self {
            ScalarText::Text(s) => s.parse(),
            ScalarText::Int(n) => Ok(TowerScalar::from_int(*n)),
        }
    }
}

fn scalar_text(v: &TowerScalar) -> ScalarText {
    ScalarText::Text(v.to_string())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum SignatureText {
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        arity: Option<usize>,
        values: Vec<ScalarText>,
    },
    Symmetric {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        symmetric: Vec<ScalarText>,
    },
}

impl SignatureText {
    fn name(&self) -> Option<&str> {
        match self {
            SignatureText::Table { name, .. } | SignatureText::Symmetric { name, .. } => {
                name.as_deref()
            }
        }
    }

    fn build(&self, arity_cap: usize) -> Result<Signature> {
        let label = self.name().unwrap_or("<unnamed>");
        let sig = match self {
            SignatureText::Table { arity, values, .. } => {
                let vals = parse_all(values, label)?;
                let sig = Signature::from_values(vals)
                    .map_err(|e| Error::InvalidSignature(format!("`{label}`: {e}")))?;
                if let Some(n) = arity {
                    if *n != sig.arity() {
                        return Err(Error::InvalidSignature(format!(
                            "`{label}` declares arity {n} but has {} values",
                            sig.values().len()
                        )));
                    }
                }
                sig
            }
            SignatureText::Symmetric { symmetric, .. } => {
                Signature::symmetric(&parse_all(symmetric, label)?)
                    .map_err(|e| Error::InvalidSignature(format!("`{label}`: {e}")))?
            }
        };
        if sig.arity() > arity_cap {
            return Err(Error::CapExceeded(format!(
                "`{label}` has arity {} above the cap {arity_cap}",
                sig.arity()
            )));
        }
        Ok(sig)
    }
}

fn parse_all(values: &[ScalarText], label: &str) -> Result<Vec<TowerScalar>> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.parse()
                .map_err(|e| Error::Parse(format!("`{label}` value {i}: {}", e.detail())))
        })
        .collect()
}

fn table_text(name: Option<&str>, sig: &Signature) -> SignatureText {
    SignatureText::Table {
        name: name.map(str::to_string),
        arity: Some(sig.arity()),
        values: sig.values().iter().map(scalar_text).collect(),
    }
}

/// A signature as a JSON object `{"name", "arity", "values"}`.
pub fn signature_to_json(name: Option<&str>, sig: &Signature) -> Value {
    serde_json::to_value(table_text(name, sig)).expect("serializable")
}

pub fn signature_from_json(text: &str) -> Result<(Option<String>, Signature)> {
    let st: SignatureText = serde_json::from_str(text)?;
    let sig = st.build(DEFAULT_ARITY_CAP)?;
    Ok((st.name().map(str::to_string), sig))
}

fn signature_from_value(v: Value, arity_cap: usize) -> Result<(Option<String>, Signature)> {
    let st: SignatureText = serde_json::from_value(v)?;
    let sig = st.build(arity_cap)?;
    Ok((st.name().map(str::to_string), sig))
}

/// A named, ordered set of signatures: a JSON array of signature objects,
/// an object `{"signatures": [...]}`, or a single signature object.
/// Unnamed entries are called `f0`, `f1`, ... by position.
pub fn fnset_from_json(text: &str, arity_cap: usize) -> Result<Vec<(String, Signature)>> {
    let value: Value = serde_json::from_str(text)?;
    let items = match value {
        Value::Array(items) => items,
        Value::Object(mut map) if map.contains_key("signatures") => match map.remove("signatures") {
            Some(Value::Array(items)) => items,
            _ => {
                return Err(Error::Parse("`signatures` must be an array".into()));
            }
        },
        obj @ Value::Object(_) => vec![obj],
        _ => return Err(Error::Parse("expected a signature object or an array".into())),
    };
    let mut out: Vec<(String, Signature)> = Vec::with_capacity(items.len());
    for (k, item) in items.into_iter().enumerate() {
        let (name, sig) = signature_from_value(item, arity_cap)?;
        let name = name.unwrap_or_else(|| format!("f{k}"));
        if out.iter().any(|(n, _)| *n == name) {
            return Err(Error::Parse(format!("duplicate signature name `{name}`")));
        }
        out.push((name, sig));
    }
    Ok(out)
}

pub fn fnset_to_json(set: &[(String, Signature)]) -> Value {
    Value::Array(
        set.iter()
            .map(|(n, s)| signature_to_json(Some(n), s))
            .collect(),
    )
}

#[derive(Serialize, Deserialize)]
struct MatrixText {
    rows: Vec<Vec<ScalarText>>,
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    let rows = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(scalar_text).collect())
        .collect();
    serde_json::to_value(MatrixText { rows }).expect("serializable")
}

pub fn matrix_from_json(text: &str) -> Result<Matrix> {
    matrix_from_value(serde_json::from_str(text)?)
}

fn matrix_from_value(v: Value) -> Result<Matrix> {
    let mt: MatrixText = serde_json::from_value(v)?;
    let rows = mt
        .rows
        .iter()
        .map(|r| r.iter().map(ScalarText::parse).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

#[derive(Serialize, Deserialize)]
struct VertexText {
    sig: String,
}

#[derive(Serialize, Deserialize)]
struct GridText {
    signatures: BTreeMap<String, Value>,
    vertices: Vec<VertexText>,
    #[serde(default)]
    edges: Vec<[Slot; 2]>,
    #[serde(default)]
    dangling: Vec<Slot>,
}

pub fn grid_to_json(grid: &SignatureGrid) -> Value {
    let gt = GridText {
        signatures: grid
            .signatures()
            .iter()
            .map(|(n, s)| (n.clone(), signature_to_json(None, s)))
            .collect(),
        vertices: grid
            .vertices()
            .iter()
            .map(|v| VertexText { sig: v.clone() })
            .collect(),
        edges: grid.edges().to_vec(),
        dangling: grid.dangling().to_vec(),
    };
    serde_json::to_value(gt).expect("serializable")
}

pub fn grid_from_json(text: &str, arity_cap: usize) -> Result<SignatureGrid> {
    grid_from_value(serde_json::from_str(text)?, arity_cap)
}

fn grid_from_value(v: Value, arity_cap: usize) -> Result<SignatureGrid> {
    let gt: GridText = serde_json::from_value(v)?;
    let mut table = BTreeMap::new();
    for (name, v) in gt.signatures {
        let (_, sig) = signature_from_value(v, arity_cap)
            .map_err(|e| Error::InvalidGrid(format!("signature `{name}`: {e}")))?;
        table.insert(name, sig);
    }
    SignatureGrid::new(
        table,
        gt.vertices.into_iter().map(|v| v.sig).collect(),
        gt.edges,
        gt.dangling,
    )
}

#[derive(Serialize, Deserialize)]
struct CandidateText {
    rows: Vec<Vec<ScalarText>>,
    source: String,
}

#[derive(Serialize, Deserialize)]
struct ViolationText {
    signature: usize,
    r: usize,
    row_positions: Vec<usize>,
    rows: (usize, usize),
}

#[derive(Serialize, Deserialize)]
struct CspText {
    tractable: bool,
    affine: bool,
    product: bool,
}

#[derive(Serialize, Deserialize)]
struct VerdictText {
    outcome: String,
    memberships: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    witness: Option<CandidateText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hardness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    violation: Option<ViolationText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    csp: Option<CspText>,
}

pub fn verdict_to_json(v: &Verdict) -> Value {
    let vt = VerdictText {
        outcome: match v.outcome {
            Outcome::Tractable => "tractable".into(),
            Outcome::Hard => "hard".into(),
        },
        memberships: v.memberships().iter().map(|s| s.to_string()).collect(),
        witness: v.transform.as_ref().map(|c| CandidateText {
            rows: c
                .v
                .to_rows()
                .iter()
                .map(|r| r.iter().map(scalar_text).collect())
                .collect(),
            source: c.source.clone(),
        }),
        hardness: v.hardness.map(|h| h.name().to_string()),
        violation: v.violation.as_ref().map(|(k, bv)| ViolationText {
            signature: *k,
            r: bv.r(),
            row_positions: bv.row_positions.clone(),
            rows: bv.rows,
        }),
        csp: v.csp.map(|c| CspText {
            tractable: c.tractable(),
            affine: c.affine,
            product: c.product,
        }),
    };
    serde_json::to_value(vt).expect("serializable")
}

pub fn verdict_from_json(text: &str) -> Result<Verdict> {
    let vt: VerdictText = serde_json::from_str(text)?;
    let outcome = match vt.outcome.as_str() {
        "tractable" => Outcome::Tractable,
        "hard" => Outcome::Hard,
        o => return Err(Error::Parse(format!("unknown outcome `{o}`"))),
    };
    let has = |m: &str| vt.memberships.iter().any(|s| s == m);
    let transform = match vt.witness {
        Some(c) => Some(OrthoCandidate {
            v: Matrix::from_rows(
                c.rows
                    .iter()
                    .map(|r| r.iter().map(ScalarText::parse).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            )?,
            source: c.source,
        }),
        None => None,
    };
    let hardness = match vt.hardness.as_deref() {
        None => None,
        Some("proven-by-theorem") => Some(HardnessNote::ProvenByTheorem),
        Some("no-candidate-passed") => Some(HardnessNote::NoCandidatePassed),
        Some(h) => return Err(Error::Parse(format!("unknown hardness note `{h}`"))),
    };
    Ok(Verdict {
        outcome,
        tensor: has("tensor"),
        affine: has("affine"),
        transform,
        hardness,
        violation: vt.violation.map(|v| {
            (
                v.signature,
                BalanceViolation {
                    row_positions: v.row_positions,
                    rows: v.rows,
                },
            )
        }),
        csp: vt.csp.map(|c| CspVerdict {
            affine: c.affine,
            product: c.product,
        }),
    })
}

/// A gate violation: the gate as a grid file fragment plus the offending view.
pub fn gate_violation_to_json(w: &GateViolation) -> Value {
    let m = w
        .function
        .matrix_view(&w.violation.row_positions)
        .expect("positions from the same function")
        .matrix;
    let (i, j) = w.violation.rows;
    let row = |r: usize| Value::Array(m.row(r).iter().map(|v| Value::String(v.to_string())).collect());
    serde_json::json!({
        "gate": grid_to_json(&w.grid),
        "function": signature_to_json(None, &w.function),
        "r": w.violation.r(),
        "row_positions": w.violation.row_positions,
        "rows": [i, j],
        "row_values": [row(i), row(j)],
    })
}

/// Caps and budgets read from a `--config` file; absent keys keep defaults.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub arity_cap: usize,
    pub edge_cap: usize,
    pub max_vertices: usize,
    pub max_dangling: usize,
    pub balance_arity_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            arity_cap: DEFAULT_ARITY_CAP,
            edge_cap: crate::evaluate::DEFAULT_EDGE_CAP,
            max_vertices: 2,
            max_dangling: 4,
            balance_arity_cap: 8,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}
