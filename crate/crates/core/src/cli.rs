//! Command-line front end. Every command prints JSON on stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classes::{
    adjacency, input_partition, is_affine, is_product_type, is_tensor_closure_t, parity,
    vector_representation,
};
use crate::classify::{check_nonnegative, classify_with, search_blockrank_violation, ClassifyOptions};
use crate::error::{Error, Result};
use crate::evaluate::{eval_auto_with, eval_with_method, Limits, Method};
use crate::gadgets::{compress, tetrahedron, tetrahedron_input, triangle, triangle_input};
use crate::io::{
    fnset_from_json, gate_violation_to_json, grid_from_json, matrix_from_json, matrix_to_json,
    signature_to_json, verdict_to_json, Config,
};
use crate::scalar::TowerScalar;
use crate::signature::Signature;
use crate::transform::{apply, ortho_candidates, transformable_to_p};

#[derive(Parser, Debug)]
#[command(name = "holant", version, about = "Classify and evaluate Boolean Holant problems exactly")]
struct Cli {
    /// JSON file with caps and search budgets.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Compact JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide tractability of a signature set (exit 0 tractable, 2 hard).
    Classify {
        fnset: PathBuf,
        /// Also report the counting-CSP verdict.
        #[arg(long)]
        csp_verdict: bool,
    },
    /// Evaluate a signature grid.
    Eval {
        grid: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Irreducible tensor factorization of each signature.
    Factor { fnset: PathBuf },
    /// Class membership of a signature set.
    Member {
        #[arg(long, value_enum)]
        class: ClassArg,
        fnset: PathBuf,
    },
    /// Parity, adjacency and input partition of each signature.
    Parity { fnset: PathBuf },
    /// Evaluate a named gadget.
    Gadget {
        #[command(subcommand)]
        which: GadgetCmd,
    },
    /// Search small gates for an unbalanced signature matrix.
    Witness {
        fnset: PathBuf,
        #[arg(long)]
        max_vertices: Option<usize>,
        #[arg(long)]
        max_dangling: Option<usize>,
    },
    /// Vector representation of each signature.
    Vecrep { fnset: PathBuf },
    /// Apply a 2x2 matrix to each signature, or list orthogonal candidates.
    Transform {
        fnset: PathBuf,
        /// Matrix file `{"rows": [[..],[..]]}`; without it, candidates are listed.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum GadgetCmd {
    /// Triangle on `(x,0,0,y,0,z,w,0)` scaled by `diag(1, α)`.
    Triangle {
        #[arg(long, default_value = "1")]
        x: String,
        #[arg(long, default_value = "1")]
        y: String,
        #[arg(long, default_value = "1")]
        z: String,
        #[arg(long, default_value = "1")]
        w: String,
        #[arg(long, default_value = "1")]
        alpha: String,
    },
    /// Tetrahedron on `M = [[1,0,0,a],[0,b,c,0],[0,c,b,0],[a,0,0,1]]`.
    Tetrahedron {
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, default_value = "1")]
        b: String,
        #[arg(long, default_value = "1")]
        c: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Brute,
    Contract,
    Affine,
    Product,
    Binary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    Tensor,
    Affine,
    Product,
    HolographicProduct,
}

/// Run with process arguments and standard streams; returns the exit code.
pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 1;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match execute(&cli) {
        Ok((value, code)) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&value)
            } else {
                serde_json::to_string(&value)
            }
            .expect("serializable");
            let _ = writeln!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_set(path: &Path, cfg: &Config) -> Result<Vec<(String, Signature)>> {
    fnset_from_json(&read(path)?, cfg.arity_cap).map_err(|e| at(path, e))
}

/// Prefix parse errors with the file they came from.
fn at(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::Json(j) => Error::Parse(format!("{}: {j}", path.display())),
        Error::InvalidGrid(m) => Error::InvalidGrid(format!("{}: {m}", path.display())),
        e => e,
    }
}

/// Non-negativity check that reports the signature by name.
fn require_nonnegative(set: &[(String, Signature)]) -> Result<()> {
    for (name, f) in set {
        if let Some(index) = f.first_negative() {
            return Err(Error::NegativeValue {
                name: name.clone(),
                index,
                value: f.get(index).to_string(),
            });
        }
    }
    Ok(())
}

fn sigs(set: &[(String, Signature)]) -> Vec<Signature> {
    set.iter().map(|(_, s)| s.clone()).collect()
}

fn scalar_arg(name: &str, text: &str) -> Result<TowerScalar> {
    text.parse()
        .map_err(|e| Error::InvalidArgument(format!("--{name}: {e}")))
}

fn execute(cli: &Cli) -> Result<(Value, i32)> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(|e| at(p, e))?,
        None => Config::default(),
    };
    let limits = Limits {
        edge_cap: cfg.edge_cap,
        arity_cap: cfg.arity_cap,
    };
    match &cli.command {
        Command::Classify { fnset, csp_verdict } => {
            let set = load_set(fnset, &cfg)?;
            require_nonnegative(&set)?;
            let opts = ClassifyOptions {
                csp_verdict: *csp_verdict,
                balance_arity_cap: cfg.balance_arity_cap,
            };
            let verdict = classify_with(&sigs(&set), &opts)?;
            let code = if verdict.is_tractable() { 0 } else { 2 };
            Ok((verdict_to_json(&verdict), code))
        }
        Command::Eval { grid, method } => {
            let g = grid_from_json(&read(grid)?, cfg.arity_cap).map_err(|e| at(grid, e))?;
            let (value, used) = match method {
                MethodArg::Auto => eval_auto_with(&g, &limits)?,
                m => {
                    let method = match m {
                        MethodArg::Brute => Method::Brute,
                        MethodArg::Contract => Method::Contract,
                        MethodArg::Affine => Method::Affine,
                        MethodArg::Product => Method::Product,
                        MethodArg::Binary => Method::Binary,
                        MethodArg::Auto => unreachable!(),
                    };
                    (eval_with_method(&g, method, &limits)?, method)
                }
            };
            let mut obj = json!({});
            if matches!(method, MethodArg::Auto) {
                obj["method"] = Value::String(used.name().to_string());
            }
            if value.arity() == 0 {
                obj["value"] = Value::String(value.get(0).to_string());
            } else {
                obj["function"] = signature_to_json(None, &value);
            }
            Ok((obj, 0))
        }
        Command::Factor { fnset } => {
            let set = load_set(fnset, &cfg)?;
            let mut out = Vec::new();
            for (name, f) in &set {
                let fz = f.factorize()?;
                out.push(json!({
                    "name": name,
                    "scalar": fz.scalar.to_string(),
                    "factors": fz.factors.iter().map(|fac| json!({
                        "positions": fac.positions,
                        "signature": signature_to_json(None, &fac.signature),
                    })).collect::<Vec<_>>(),
                }));
            }
            Ok((Value::Array(out), 0))
        }
        Command::Member { class, fnset } => {
            let set = load_set(fnset, &cfg)?;
            let (label, per, all) = match class {
                ClassArg::Tensor => {
                    let per: Vec<bool> = set.iter().map(|(_, f)| is_tensor_closure_t(f)).collect();
                    let all = per.iter().all(|b| *b);
                    ("tensor", per, all)
                }
                ClassArg::Affine => {
                    let per: Vec<bool> = set.iter().map(|(_, f)| is_affine(f).is_some()).collect();
                    let all = per.iter().all(|b| *b);
                    ("affine", per, all)
                }
                ClassArg::Product => {
                    let per: Vec<bool> =
                        set.iter().map(|(_, f)| is_product_type(f).is_some()).collect();
                    let all = per.iter().all(|b| *b);
                    ("product", per, all)
                }
                ClassArg::HolographicProduct => {
                    let fs = sigs(&set);
                    check_nonnegative(&fs)?;
                    let per = fs
                        .iter()
                        .map(|f| transformable_to_p(std::slice::from_ref(f)).map(|c| c.is_some()))
                        .collect::<Result<Vec<_>>>()?;
                    let joint = transformable_to_p(&fs)?;
                    let mut obj = json!({
                        "class": "holographic-product",
                        "member": joint.is_some(),
                        "signatures": set.iter().zip(&per).map(|((n, _), m)| json!({"name": n, "member": m})).collect::<Vec<_>>(),
                    });
                    if let Some(c) = joint {
                        obj["witness"] = matrix_to_json(&c.v);
                    }
                    return Ok((obj, 0));
                }
            };
            Ok((
                json!({
                    "class": label,
                    "member": all,
                    "signatures": set.iter().zip(&per).map(|((n, _), m)| json!({"name": n, "member": m})).collect::<Vec<_>>(),
                }),
                0,
            ))
        }
        Command::Parity { fnset } => {
            let set = load_set(fnset, &cfg)?;
            let mut out = Vec::new();
            for (name, f) in &set {
                let p = parity(f)?;
                let part = input_partition(f)?;
                out.push(json!({
                    "name": name,
                    "parity": p,
                    "adjacency": adjacency(f),
                    "input_partition": part,
                }));
            }
            Ok((Value::Array(out), 0))
        }
        Command::Gadget { which } => gadget(which),
        Command::Witness {
            fnset,
            max_vertices,
            max_dangling,
        } => {
            let set = load_set(fnset, &cfg)?;
            require_nonnegative(&set)?;
            let mv = max_vertices.unwrap_or(cfg.max_vertices);
            let md = max_dangling.unwrap_or(cfg.max_dangling);
            let found = search_blockrank_violation(&sigs(&set), mv, md)?;
            let mut obj = json!({ "max_vertices": mv, "max_dangling": md });
            obj["violation"] = match found {
                Some(w) => gate_violation_to_json(&w),
                None => Value::Null,
            };
            Ok((obj, 0))
        }
        Command::Vecrep { fnset } => {
            let set = load_set(fnset, &cfg)?;
            require_nonnegative(&set)?;
            let mut out = Vec::new();
            for (name, f) in &set {
                let rep = vector_representation(f)?;
                out.push(json!({
                    "name": name,
                    "representation": rep.map(|r| r.iter().map(|s| signature_to_json(None, s)).collect::<Vec<_>>()),
                }));
            }
            Ok((Value::Array(out), 0))
        }
        Command::Transform { fnset, matrix } => {
            let set = load_set(fnset, &cfg)?;
            match matrix {
                Some(p) => {
                    let t = matrix_from_json(&read(p)?).map_err(|e| at(p, e))?;
                    let out = set
                        .iter()
                        .map(|(n, f)| Ok(signature_to_json(Some(n), &apply(&t, f)?)))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((Value::Array(out), 0))
                }
                None => {
                    let fs = sigs(&set);
                    check_nonnegative(&fs)?;
                    let cands = ortho_candidates(&fs)?;
                    let first = transformable_to_p(&fs)?;
                    Ok((
                        json!({
                            "candidates": cands.iter().map(|c| json!({
                                "source": c.source,
                                "rows": matrix_to_json(&c.v)["rows"],
                            })).collect::<Vec<_>>(),
                            "transformable": first.as_ref().map(|c| json!({
                                "source": c.source,
                                "rows": matrix_to_json(&c.v)["rows"],
                            })),
                        }),
                        0,
                    ))
                }
            }
        }
    }
}

fn gadget(which: &GadgetCmd) -> Result<(Value, i32)> {
    match which {
        GadgetCmd::Triangle { x, y, z, w, alpha } => {
            let (x, y, z, w, al) = (
                scalar_arg("x", x)?,
                scalar_arg("y", y)?,
                scalar_arg("z", z)?,
                scalar_arg("w", w)?,
                scalar_arg("alpha", alpha)?,
            );
            let g = triangle(&triangle_input(x.clone(), y.clone(), z.clone(), w.clone()), &al)?;
            let a2 = &al * &al;
            let a4 = &a2 * &a2;
            let a6 = &a4 * &a2;
            let first = x.pow(3)? + &a6 * &y.pow(3)?;
            let third = (&x + &(&a2 * &y)) * &a4 * &z * &w;
            let weights: Vec<String> = (0..=3)
                .map(|k| g.get((1usize << k) - 1).to_string())
                .collect();
            Ok((
                json!({
                    "gadget": "triangle",
                    "signature": signature_to_json(None, &g),
                    "symmetric": weights,
                    "formula": [first.to_string(), "0", third.to_string(), "0"],
                }),
                0,
            ))
        }
        GadgetCmd::Tetrahedron { a, b, c } => {
            let (a, b, c) = (scalar_arg("a", a)?, scalar_arg("b", b)?, scalar_arg("c", c)?);
            let g = tetrahedron(&tetrahedron_input(a.clone(), b.clone(), c.clone()))?;
            let m = g.leading_view(2)?.matrix;
            let one = TowerScalar::one();
            let abc = &a * &b * &c;
            let four = TowerScalar::from_int(4);
            let two = TowerScalar::from_int(2);
            let fx = &one + &(&four * &abc) + &two * &(&a * &a) * &(&b * &b) + c.pow(4)?;
            let fy = &two * &(&c * &c) + &four * &abc + a.pow(4)? + b.pow(4)?;
            let fz = &two * &(&a * &a + &b * &b) * &c + &two * &a * &b * &(&one + &(&c * &c));
            let compressed = compress(&m)?;
            Ok((
                json!({
                    "gadget": "tetrahedron",
                    "signature": signature_to_json(None, &g),
                    "matrix": matrix_to_json(&m)["rows"],
                    "x": m.get(0, 0).to_string(),
                    "y": m.get(0, 3).to_string(),
                    "z": m.get(1, 1).to_string(),
                    "formula": { "x": fx.to_string(), "y": fy.to_string(), "z": fz.to_string() },
                    "compressed": matrix_to_json(&compressed.matrix)["rows"],
                    "compressed_det": compressed.det().to_string(),
                }),
                0,
            ))
        }
    }
}
