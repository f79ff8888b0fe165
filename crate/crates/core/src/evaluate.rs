//! Exact Holant evaluation of signature grids.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::classes::{is_affine, is_product_type, is_tensor_closure_t};
use crate::error::{Error, Result};
use crate::gf2::{solve_rank, Equation};
use crate::scalar::TowerScalar;
use crate::signature::{gather, Signature, DEFAULT_ARITY_CAP};

/// Default cap on the number of edge variables summed by brute force.
pub const DEFAULT_EDGE_CAP: usize = 24;

/// An endpoint: `(vertex, slot)`.
pub type Slot = (usize, usize);

/// A graph whose vertices carry named signatures; dangling edges (in their
/// listed order) become the inputs of the realized function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureGrid {
    signatures: BTreeMap<String, Signature>,
    vertices: Vec<String>,
    edges: Vec<[Slot; 2]>,
    dangling: Vec<Slot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Contract,
    Affine,
    Product,
    Binary,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Contract => "contract",
            Method::Affine => "affine",
            Method::Product => "product",
            Method::Binary => "binary",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "brute" => Method::Brute,
            "contract" => Method::Contract,
            "affine" => Method::Affine,
            "product" => Method::Product,
            "binary" => Method::Binary,
            _ => return Err(Error::InvalidArgument(format!("unknown method `{s}`"))),
        })
    }
}

/// Size limits for the evaluators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum edge variables (internal plus dangling) for brute force.
    pub edge_cap: usize,
    /// Maximum arity of an intermediate factor during contraction.
    pub arity_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            edge_cap: DEFAULT_EDGE_CAP,
            arity_cap: DEFAULT_ARITY_CAP,
        }
    }
}

impl SignatureGrid {
    pub fn new(
        signatures: BTreeMap<String, Signature>,
        vertices: Vec<String>,
        edges: Vec<[Slot; 2]>,
        dangling: Vec<Slot>,
    ) -> Result<Self> {
        let grid = SignatureGrid {
            signatures,
            vertices,
            edges,
            dangling,
        };
        grid.validate()?;
        Ok(grid)
    }

    fn validate(&self) -> Result<()> {
        let mut used: Vec<Vec<bool>> = Vec::with_capacity(self.vertices.len());
        for (v, name) in self.vertices.iter().enumerate() {
            let sig = self.signatures.get(name).ok_or_else(|| {
                Error::InvalidGrid(format!("vertex {v} uses unknown signature `{name}`"))
            })?;
            used.push(vec![false; sig.arity()]);
        }
        let endpoints = self
            .edges
            .iter()
            .flat_map(|e| e.iter())
            .chain(self.dangling.iter());
        for &(v, s) in endpoints {
            let slots = used
                .get_mut(v)
                .ok_or_else(|| Error::InvalidGrid(format!("no vertex {v}")))?;
            match slots.get_mut(s) {
                None => {
                    return Err(Error::InvalidGrid(format!(
                        "vertex {v} has no slot {s} (arity {})",
                        slots.len()
                    )))
                }
                Some(true) => {
                    return Err(Error::InvalidGrid(format!("slot ({v}, {s}) used twice")))
                }
                Some(u) => *u = true,
            }
        }
        for (v, slots) in used.iter().enumerate() {
            if let Some(s) = slots.iter().position(|u| !u) {
                return Err(Error::InvalidGrid(format!("slot ({v}, {s}) is not connected")));
            }
        }
        Ok(())
    }

    pub fn signatures(&self) -> &BTreeMap<String, Signature> {
        &self.signatures
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[Slot; 2]] {
        &self.edges
    }

    pub fn dangling(&self) -> &[Slot] {
        &self.dangling
    }

    pub fn is_closed(&self) -> bool {
        self.dangling.is_empty()
    }

    pub fn signature_of(&self, v: usize) -> &Signature {
        &self.signatures[&self.vertices[v]]
    }

    /// Distinct signatures actually placed on vertices, in name order.
    pub fn used_signatures(&self) -> Vec<(&str, &Signature)> {
        self.signatures
            .iter()
            .filter(|(name, _)| self.vertices.contains(name))
            .map(|(n, s)| (n.as_str(), s))
            .collect()
    }

    /// Variable of every slot: internal edges are `0..m`, dangling edges
    /// `m..m+d` in their listed order.
    fn slot_vars(&self) -> Vec<Vec<usize>> {
        let mut vars: Vec<Vec<usize>> = (0..self.vertices.len())
            .map(|v| vec![usize::MAX; self.signature_of(v).arity()])
            .collect();
        for (e, [(v1, s1), (v2, s2)]) in self.edges.iter().enumerate() {
            vars[*v1][*s1] = e;
            vars[*v2][*s2] = e;
        }
        let m = self.edges.len();
        for (d, &(v, s)) in self.dangling.iter().enumerate() {
            vars[v][s] = m + d;
        }
        vars
    }

    fn require_closed(&self, method: Method) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "the {method} evaluator needs a closed grid; this one has {} dangling edges",
                self.dangling.len()
            )))
        }
    }
}

/// Holant value (closed grid) or realized function (open grid), by summing
/// over every edge assignment.
pub fn eval_brute(grid: &SignatureGrid) -> Result<Signature> {
    eval_brute_with(grid, &Limits::default())
}

pub fn eval_brute_with(grid: &SignatureGrid, limits: &Limits) -> Result<Signature> {
    let m = grid.edges.len();
    let d = grid.dangling.len();
    if m + d > limits.edge_cap {
        return Err(Error::CapExceeded(format!(
            "{} edge variables exceed the brute-force cap {}; use the contraction evaluator",
            m + d,
            limits.edge_cap
        )));
    }
    let vars = grid.slot_vars();
    let total = m + d;
    let mut values = vec![TowerScalar::zero(); 1 << d];
    for x in 0usize..1 << total {
        let mut term = TowerScalar::one();
        for (v, vs) in vars.iter().enumerate() {
            let idx = vs.iter().fold(0usize, |acc, &e| (acc << 1) | (x >> e & 1));
            let val = grid.signature_of(v).get(idx);
            if val.is_zero() {
                term = TowerScalar::zero();
                break;
            }
            term *= val;
        }
        if term.is_zero() {
            continue;
        }
        // dangling variable k is the k-th output bit, first most significant
        let out = (0..d).fold(0usize, |acc, k| (acc << 1) | (x >> (m + k) & 1));
        values[out] += &term;
    }
    Signature::new(d, values)
}

#[derive(Clone, Debug)]
struct Tensor {
    vars: Vec<usize>,
    sig: Signature,
    /// Smallest vertex id merged into this tensor.
    id: usize,
}

/// Remove repeated variables (self-loops) by summing over their diagonal.
fn close_loops(mut t: Tensor) -> Result<Tensor> {
    loop {
        let dup = (0..t.vars.len())
            .find_map(|i| (i + 1..t.vars.len()).find(|&j| t.vars[j] == t.vars[i]).map(|j| (i, j)));
        let Some((i, j)) = dup else {
            return Ok(t);
        };
        t.sig = t.sig.connect(i, j)?;
        t.vars.remove(j);
        t.vars.remove(i);
    }
}

fn contract_pair(a: &Tensor, b: &Tensor) -> Result<Tensor> {
    let shared: Vec<usize> = a.vars.iter().copied().filter(|v| b.vars.contains(v)).collect();
    let out: Vec<usize> = a
        .vars
        .iter()
        .chain(b.vars.iter())
        .copied()
        .filter(|v| !shared.contains(v))
        .collect();
    let all: Vec<usize> = out.iter().chain(shared.iter()).copied().collect();
    let width = all.len();
    let pos_in = |vars: &[usize]| -> Vec<usize> {
        vars.iter()
            .map(|v| all.iter().position(|w| w == v).expect("variable present"))
            .collect()
    };
    let (pa, pb) = (pos_in(&a.vars), pos_in(&b.vars));
    let ns = shared.len();
    let mut values = Vec::with_capacity(1 << out.len());
    for o in 0usize..1 << out.len() {
        let mut acc = TowerScalar::zero();
        for s in 0usize..1 << ns {
            let x = (o << ns) | s;
            let va = a.sig.get(gather(x, width, &pa));
            if va.is_zero() {
                continue;
            }
            let vb = b.sig.get(gather(x, width, &pb));
            if vb.is_zero() {
                continue;
            }
            acc += &(va * vb);
        }
        values.push(acc);
    }
    Ok(Tensor {
        vars: out,
        sig: Signature::new(width - ns, values)?,
        id: a.id.min(b.id),
    })
}

/// Same value as [`eval_brute`], by greedy pairwise contraction.
pub fn eval_contract(grid: &SignatureGrid) -> Result<Signature> {
    eval_contract_with(grid, &Limits::default())
}

/// Contracts, at every step, the pair of tensors sharing a variable whose
/// result has the smallest arity; ties go to the lowest vertex ids.
pub fn eval_contract_with(grid: &SignatureGrid, limits: &Limits) -> Result<Signature> {
    let vars = grid.slot_vars();
    let mut tensors: Vec<Tensor> = vars
        .into_iter()
        .enumerate()
        .map(|(v, vs)| {
            close_loops(Tensor {
                vars: vs,
                sig: grid.signature_of(v).clone(),
                id: v,
            })
        })
        .collect::<Result<_>>()?;
    let mut order: Vec<(usize, usize)> = Vec::new();
    loop {
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let shared = tensors[i].vars.iter().filter(|v| tensors[j].vars.contains(v)).count();
                if shared == 0 {
                    continue;
                }
                let arity = tensors[i].vars.len() + tensors[j].vars.len() - 2 * shared;
                let key = (arity, tensors[i].id.min(tensors[j].id), i, j);
                if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
        }
        let Some((arity, _, i, j)) = best else {
            break;
        };
        order.push((tensors[i].id, tensors[j].id));
        if arity > limits.arity_cap {
            return Err(Error::CapExceeded(format!(
                "intermediate arity {arity} exceeds cap {} after contraction order {order:?}",
                limits.arity_cap
            )));
        }
        let b = tensors.remove(j);
        let a = tensors.remove(i);
        tensors.push(contract_pair(&a, &b)?);
    }
    // remaining tensors share no variables: multiply them out
    tensors.sort_by_key(|t| t.id);
    let mut acc = Tensor {
        vars: Vec::new(),
        sig: Signature::constant(TowerScalar::one()),
        id: 0,
    };
    for t in tensors {
        if acc.vars.len() + t.vars.len() > limits.arity_cap {
            return Err(Error::CapExceeded(format!(
                "output arity {} exceeds cap {}",
                acc.vars.len() + t.vars.len(),
                limits.arity_cap
            )));
        }
        acc.sig = acc.sig.tensor(&t.sig);
        acc.vars.extend(t.vars);
    }
    // position p of acc holds dangling edge acc.vars[p] - m
    let m = grid.edges.len();
    let perm: Vec<usize> = acc.vars.iter().map(|v| v - m).collect();
    acc.sig.permute(&perm)
}

/// Holant of a closed grid whose signatures are all non-negative affine:
/// the product of magnitudes times the size of the joint solution space.
pub fn eval_affine(grid: &SignatureGrid) -> Result<Signature> {
    grid.require_closed(Method::Affine)?;
    let vars = grid.slot_vars();
    let m = grid.edges.len();
    let mut lambda = TowerScalar::one();
    let mut equations = Vec::new();
    for (v, vs) in vars.iter().enumerate() {
        let sig = grid.signature_of(v);
        let w = is_affine(sig)
            .filter(|w| w.sign.is_zero())
            .ok_or_else(|| {
                Error::Precondition(format!(
                    "vertex {v} (`{}`) is not a non-negative affine signature",
                    grid.vertices[v]
                ))
            })?;
        if w.lambda.is_zero() {
            return Signature::new(0, vec![TowerScalar::zero()]);
        }
        lambda *= &w.lambda;
        let n = sig.arity();
        for (mask, rhs) in w.constraints() {
            let mut eq = Equation::new(m);
            for (slot, &var) in vs.iter().enumerate() {
                if mask >> (n - 1 - slot) & 1 == 1 {
                    eq.toggle(var);
                }
            }
            eq.set_rhs(rhs);
            equations.push(eq);
        }
    }
    let value = match solve_rank(equations) {
        None => TowerScalar::zero(),
        Some(rank) => &lambda * &TowerScalar::from_int(2).pow((m - rank) as i64)?,
    };
    Ok(Signature::constant(value))
}

/// Parity union-find: `value(node) = value(root) ⊕ offset(node)`.
struct ParityUnion {
    parent: Vec<usize>,
    offset: Vec<bool>,
}

impl ParityUnion {
    fn new(n: usize) -> Self {
        ParityUnion {
            parent: (0..n).collect(),
            offset: vec![false; n],
        }
    }

    fn find(&mut self, i: usize) -> (usize, bool) {
        let p = self.parent[i];
        if p == i {
            return (i, false);
        }
        let (r, o) = self.find(p);
        self.parent[i] = r;
        self.offset[i] ^= o;
        (r, self.offset[i])
    }

    /// Impose `value(a) ⊕ value(b) = diff`; false on contradiction.
    fn union(&mut self, a: usize, b: usize, diff: bool) -> bool {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        if ra == rb {
            return oa ^ ob == diff;
        }
        self.parent[rb] = ra;
        self.offset[rb] = oa ^ ob ^ diff;
        true
    }
}

/// Holant of a closed grid of product-type signatures.
pub fn eval_product(grid: &SignatureGrid) -> Result<Signature> {
    grid.require_closed(Method::Product)?;
    let vars = grid.slot_vars();
    let m = grid.edges.len();
    let mut scalar = TowerScalar::one();
    // (slot variables, weight at u, weight at ū) per equality-type factor
    let mut factors: Vec<(Vec<(usize, bool)>, TowerScalar, TowerScalar)> = Vec::new();
    for (v, vs) in vars.iter().enumerate() {
        let fz = is_product_type(grid.signature_of(v)).ok_or_else(|| {
            Error::Precondition(format!(
                "vertex {v} (`{}`) is not product-type",
                grid.vertices[v]
            ))
        })?;
        scalar *= &fz.scalar;
        for fac in &fz.factors {
            let g = &fac.signature;
            let k = g.arity();
            let u = g.support()[0];
            let full = (1usize << k) - 1;
            let slots = fac
                .positions
                .iter()
                .enumerate()
                .map(|(i, &p)| (vs[p], u >> (k - 1 - i) & 1 == 1))
                .collect();
            factors.push((slots, g.get(u).clone(), g.get(u ^ full).clone()));
        }
    }
    if scalar.is_zero() {
        return Ok(Signature::constant(TowerScalar::zero()));
    }
    // nodes: edge variables 0..m, then one flip bit per factor
    let mut uf = ParityUnion::new(m + factors.len());
    for (f, (slots, _, _)) in factors.iter().enumerate() {
        for &(var, bit) in slots {
            if !uf.union(var, m + f, bit) {
                return Ok(Signature::constant(TowerScalar::zero()));
            }
        }
    }
    let mut weights: BTreeMap<usize, [TowerScalar; 2]> = BTreeMap::new();
    for (f, (_, wu, wbar)) in factors.iter().enumerate() {
        let (root, off) = uf.find(m + f);
        let entry = weights
            .entry(root)
            .or_insert_with(|| [TowerScalar::one(), TowerScalar::one()]);
        for (t, w) in entry.iter_mut().enumerate() {
            // the factor takes ū exactly when root bit ⊕ offset is 1
            let flipped = (t == 1) ^ off;
            *w *= if flipped { wbar } else { wu };
        }
    }
    let mut value = scalar;
    for [w0, w1] in weights.values() {
        value *= &(w0 + w1);
    }
    Ok(Signature::constant(value))
}

/// Holant of a closed grid whose signatures factor into pieces of arity at
/// most two: the factor graph is a union of paths and cycles.
pub fn eval_binary(grid: &SignatureGrid) -> Result<Signature> {
    grid.require_closed(Method::Binary)?;
    let vars = grid.slot_vars();
    let m = grid.edges.len();
    let mut scalar = TowerScalar::one();
    let mut pieces: Vec<(Signature, Vec<usize>)> = Vec::new();
    for (v, vs) in vars.iter().enumerate() {
        let sig = grid.signature_of(v);
        if !is_tensor_closure_t(sig) {
            return Err(Error::Precondition(format!(
                "vertex {v} (`{}`) does not factor into arity-2 pieces",
                grid.vertices[v]
            )));
        }
        if sig.is_zero() {
            return Ok(Signature::constant(TowerScalar::zero()));
        }
        let fz = sig.factorize()?;
        scalar *= &fz.scalar;
        for fac in fz.factors {
            let pv = fac.positions.iter().map(|&p| vs[p]).collect();
            pieces.push((fac.signature, pv));
        }
    }
    // occurrences of each variable: (piece, local slot)
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m];
    for (p, (_, pv)) in pieces.iter().enumerate() {
        for (s, &var) in pv.iter().enumerate() {
            occ[var].push((p, s));
        }
    }
    let other_end = |var: usize, here: (usize, usize)| -> (usize, usize) {
        if occ[var][0] == here {
            occ[var][1]
        } else {
            occ[var][0]
        }
    };
    // 2x2 matrix of a binary piece entered through slot `s`
    let entry = |p: usize, s: usize, a: usize, b: usize| -> &TowerScalar {
        let sig = &pieces[p].0;
        if s == 0 {
            sig.get(a << 1 | b)
        } else {
            sig.get(b << 1 | a)
        }
    };
    let mut visited = vec![false; pieces.len()];
    let mut value = scalar;
    // paths start at unary pieces
    for start in 0..pieces.len() {
        if visited[start] || pieces[start].0.arity() != 1 {
            continue;
        }
        visited[start] = true;
        let mut vec = [pieces[start].0.get(0).clone(), pieces[start].0.get(1).clone()];
        let mut at = other_end(pieces[start].1[0], (start, 0));
        loop {
            let (p, s) = at;
            visited[p] = true;
            if pieces[p].0.arity() == 1 {
                let u = &pieces[p].0;
                value *= &(&vec[0] * u.get(0) + &vec[1] * u.get(1));
                break;
            }
            vec = [
                &vec[0] * entry(p, s, 0, 0) + &vec[1] * entry(p, s, 1, 0),
                &vec[0] * entry(p, s, 0, 1) + &vec[1] * entry(p, s, 1, 1),
            ];
            let out = 1 - s;
            at = other_end(pieces[p].1[out], (p, out));
        }
    }
    // what remains are cycles of binary pieces
    for start in 0..pieces.len() {
        if visited[start] {
            continue;
        }
        let mut mat = [
            [TowerScalar::one(), TowerScalar::zero()],
            [TowerScalar::zero(), TowerScalar::one()],
        ];
        let mut at = (start, 0);
        loop {
            let (p, s) = at;
            visited[p] = true;
            let next = std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    &mat[r][0] * entry(p, s, 0, c) + &mat[r][1] * entry(p, s, 1, c)
                })
            });
            mat = next;
            let out = 1 - s;
            at = other_end(pieces[p].1[out], (p, out));
            if at == (start, 0) {
                break;
            }
        }
        value *= &(&mat[0][0] + &mat[1][1]);
    }
    Ok(Signature::constant(value))
}

/// Evaluate with the cheapest applicable method; returns the method used.
pub fn eval_auto(grid: &SignatureGrid) -> Result<(Signature, Method)> {
    eval_auto_with(grid, &Limits::default())
}

pub fn eval_auto_with(grid: &SignatureGrid, limits: &Limits) -> Result<(Signature, Method)> {
    if grid.is_closed() {
        let sigs: Vec<&Signature> = grid.used_signatures().into_iter().map(|(_, s)| s).collect();
        if sigs
            .iter()
            .all(|s| is_affine(s).is_some_and(|w| w.sign.is_zero()))
        {
            return Ok((eval_affine(grid)?, Method::Affine));
        }
        if sigs.iter().all(|s| is_product_type(s).is_some()) {
            return Ok((eval_product(grid)?, Method::Product));
        }
        if sigs.iter().all(|s| is_tensor_closure_t(s)) {
            return Ok((eval_binary(grid)?, Method::Binary));
        }
    }
    Ok((eval_contract_with(grid, limits)?, Method::Contract))
}

pub fn eval_with_method(grid: &SignatureGrid, method: Method, limits: &Limits) -> Result<Signature> {
    match method {
        Method::Brute => eval_brute_with(grid, limits),
        Method::Contract => eval_contract_with(grid, limits),
        Method::Affine => eval_affine(grid),
        Method::Product => eval_product(grid),
        Method::Binary => eval_binary(grid),
    }
}

/// Assemble a grid from `(name, signature)` pairs, vertex names, and
/// endpoint lists. Convenience for code that builds gadgets.
pub fn grid(
    signatures: &[(&str, Signature)],
    vertices: &[&str],
    edges: &[[Slot; 2]],
    dangling: &[Slot],
) -> Result<SignatureGrid> {
    SignatureGrid::new(
        signatures
            .iter()
            .map(|(n, s)| (n.to_string(), s.clone()))
            .collect(),
        vertices.iter().map(|v| v.to_string()).collect(),
        edges.to_vec(),
        dangling.to_vec(),
    )
}

/// A cycle of `k` vertices carrying the binary signature `f`, slot 0 of
/// each vertex joined to slot 1 of the next.
pub fn cycle(f: &Signature, k: usize) -> Result<SignatureGrid> {
    let names = vec!["f"; k];
    let edges: Vec<[Slot; 2]> = (0..k).map(|i| [(i, 0), ((i + 1) % k, 1)]).collect();
    grid(&[("f", f.clone())], &names, &edges, &[])
}
