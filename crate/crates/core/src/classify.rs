//! The complexity classifier for non-negative Holant problems and the
//! block-rank-one / balance diagnostics behind it.

use std::collections::BTreeMap;

use crate::classes::{block_rank_one, is_affine, is_product_type, is_tensor_closure_t};
use crate::error::{Error, Result};
use crate::evaluate::{eval_contract_with, Limits, SignatureGrid, Slot};
use crate::signature::{subsets_of_size, Signature};
use crate::transform::{pinning_gram, transformable_to_p, OrthoCandidate};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Tractable,
    Hard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardnessNote {
    /// All three conditions fail and some Gram matrix pins the only possible
    /// orthogonal basis, which was tried and failed.
    ProvenByTheorem,
    /// All three conditions fail on the candidates tried, but no Gram matrix
    /// pins the basis; the candidate set may be incomplete.
    NoCandidatePassed,
}

impl HardnessNote {
    pub fn name(self) -> &'static str {
        match self {
            HardnessNote::ProvenByTheorem => "proven-by-theorem",
            HardnessNote::NoCandidatePassed => "no-candidate-passed",
        }
    }
}

/// A signature matrix `M` with rows indexed by `row_positions` that has two
/// rows neither dependent nor orthogonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceViolation {
    pub row_positions: Vec<usize>,
    pub rows: (usize, usize),
}

impl BalanceViolation {
    pub fn r(&self) -> usize {
        self.row_positions.len()
    }
}

/// Tractability of the counting CSP over the same set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CspVerdict {
    pub affine: bool,
    pub product: bool,
}

impl CspVerdict {
    pub fn tractable(&self) -> bool {
        self.affine || self.product
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub tensor: bool,
    pub affine: bool,
    /// Orthogonal basis taking every signature into product type.
    pub transform: Option<OrthoCandidate>,
    pub hardness: Option<HardnessNote>,
    /// First balance violation among the input signatures, with the index of
    /// the signature it belongs to.
    pub violation: Option<(usize, BalanceViolation)>,
    pub csp: Option<CspVerdict>,
}

impl Verdict {
    /// Membership names: `tensor`, `affine`, and `product` when the identity
    /// works or `holographic-product` for any other basis.
    pub fn memberships(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.tensor {
            out.push("tensor");
        }
        if self.affine {
            out.push("affine");
        }
        match &self.transform {
            Some(c) if c.v == crate::matrix::Matrix::identity(2) => out.push("product"),
            Some(_) => out.push("holographic-product"),
            None => {}
        }
        out
    }

    pub fn is_tractable(&self) -> bool {
        self.outcome == Outcome::Tractable
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Also report the counting-CSP verdict.
    pub csp_verdict: bool,
    /// Largest arity for which the balance diagnostic is computed.
    pub balance_arity_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            csp_verdict: false,
            balance_arity_cap: 8,
        }
    }
}

pub fn check_nonnegative(fs: &[Signature]) -> Result<()> {
    for (k, f) in fs.iter().enumerate() {
        if let Some(index) = f.first_negative() {
            return Err(Error::NegativeValue {
                name: format!("#{k}"),
                index,
                value: f.get(index).to_string(),
            });
        }
    }
    Ok(())
}

pub fn classify(fs: &[Signature]) -> Result<Verdict> {
    classify_with(fs, &ClassifyOptions::default())
}

/// Tractable iff the set lies in the tensor closure of arity-≤2 functions,
/// in the affine class, or in `H𝒫` for an orthogonal `H`.
pub fn classify_with(fs: &[Signature], opts: &ClassifyOptions) -> Result<Verdict> {
    check_nonnegative(fs)?;
    let tensor = fs.iter().all(is_tensor_closure_t);
    let affine = fs.iter().all(|f| is_affine(f).is_some());
    let transform = transformable_to_p(fs)?;
    let tractable = tensor || affine || transform.is_some();
    let hardness = if tractable {
        None
    } else if pinning_gram(fs)?.is_some() {
        Some(HardnessNote::ProvenByTheorem)
    } else {
        Some(HardnessNote::NoCandidatePassed)
    };
    let violation = fs
        .iter()
        .enumerate()
        .filter(|(_, f)| f.arity() <= opts.balance_arity_cap)
        .find_map(|(k, f)| check_balance(f).map(|v| (k, v)));
    let csp = opts.csp_verdict.then(|| csp_verdict(fs));
    Ok(Verdict {
        outcome: if tractable { Outcome::Tractable } else { Outcome::Hard },
        tensor,
        affine,
        transform,
        hardness,
        violation,
        csp,
    })
}

/// The counting CSP is tractable iff the set is affine or product-type.
pub fn csp_verdict(fs: &[Signature]) -> CspVerdict {
    CspVerdict {
        affine: fs.iter().all(|f| is_affine(f).is_some()),
        product: fs.iter().all(|f| is_product_type(f).is_some()),
    }
}

/// Every `M_[r]`-style view of `f`, with rows indexed by any `r`-subset of
/// positions (`1 ≤ r < n`), checked for block-rank-one. Row order within a
/// subset does not matter, so each subset is tested once.
pub fn check_balance(f: &Signature) -> Option<BalanceViolation> {
    let n = f.arity();
    for r in 1..n {
        for rows in subsets_of_size(n, r) {
            let view = f.matrix_view(&rows).expect("valid positions");
            if let Some(pair) = block_rank_one(&view.matrix) {
                return Some(BalanceViolation {
                    row_positions: rows,
                    rows: pair,
                });
            }
        }
    }
    None
}

/// A gate whose function has an unbalanced signature matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateViolation {
    pub grid: SignatureGrid,
    pub function: Signature,
    pub violation: BalanceViolation,
}

/// Search connected gates over `fs` with at most `max_vertices` vertices and
/// between one and `max_dangling` dangling edges for a realizable function
/// with an unbalanced signature matrix. Gates are visited by vertex count,
/// then vertex multiset, then slot matching (dangling before paired).
pub fn search_blockrank_violation(
    fs: &[Signature],
    max_vertices: usize,
    max_dangling: usize,
) -> Result<Option<GateViolation>> {
    check_nonnegative(fs)?;
    let names: Vec<String> = (0..fs.len()).map(|k| format!("f{k}")).collect();
    let table: BTreeMap<String, Signature> = names.iter().cloned().zip(fs.iter().cloned()).collect();
    let limits = Limits::default();
    for k in 1..=max_vertices {
        for multiset in multisets(fs.len(), k) {
            let slots: Vec<Slot> = multiset
                .iter()
                .enumerate()
                .flat_map(|(v, &s)| (0..fs[s].arity()).map(move |p| (v, p)))
                .collect();
            let vertices: Vec<String> = multiset.iter().map(|&s| names[s].clone()).collect();
            let mut found = None;
            let mut visit = |edges: &[[Slot; 2]], dangling: &[Slot]| -> Result<bool> {
                if dangling.is_empty() || !connected(k, edges) {
                    return Ok(false);
                }
                let grid = SignatureGrid::new(
                    table.clone(),
                    vertices.clone(),
                    edges.to_vec(),
                    dangling.to_vec(),
                )?;
                let function = eval_contract_with(&grid, &limits)?;
                if let Some(violation) = check_balance(&function) {
                    found = Some(GateViolation {
                        grid,
                        function,
                        violation,
                    });
                    return Ok(true);
                }
                Ok(false)
            };
            let mut used = vec![false; slots.len()];
            matchings(&slots, &mut used, 0, max_dangling, &mut Vec::new(), &mut Vec::new(), &mut visit)?;
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}

/// Nondecreasing `k`-tuples over `0..m`.
fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..m {
            cur.push(s);
            rec(m, k, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Enumerate partial matchings of `slots`; unmatched slots dangle. Stops
/// when `visit` returns true.
fn matchings(
    slots: &[Slot],
    used: &mut [bool],
    from: usize,
    max_dangling: usize,
    edges: &mut Vec<[Slot; 2]>,
    dangling: &mut Vec<Slot>,
    visit: &mut dyn FnMut(&[[Slot; 2]], &[Slot]) -> Result<bool>,
) -> Result<bool> {
    let Some(i) = (from..slots.len()).find(|&i| !used[i]) else {
        return visit(edges, dangling);
    };
    used[i] = true;
    if dangling.len() < max_dangling {
        dangling.push(slots[i]);
        if matchings(slots, used, i + 1, max_dangling, edges, dangling, visit)? {
            return Ok(true);
        }
        dangling.pop();
    }
    for j in i + 1..slots.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        edges.push([slots[i], slots[j]]);
        if matchings(slots, used, i + 1, max_dangling, edges, dangling, visit)? {
            return Ok(true);
        }
        edges.pop();
        used[j] = false;
    }
    used[i] = false;
    Ok(false)
}

fn connected(k: usize, edges: &[[Slot; 2]]) -> bool {
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    for [(a, _), (b, _)] in edges {
        let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
        parent[ra] = rb;
    }
    let r0 = find(&mut parent, 0);
    (1..k).all(|v| find(&mut parent, v) == r0)
}
