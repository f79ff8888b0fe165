#![allow(dead_code)]

//! Brute-force class oracles and random instance generators shared by the
//! integration tests. The oracles follow the class definitions directly and
//! share no code with the library's membership tests.

use std::collections::BTreeMap;

use holant::evaluate::Slot;
use holant::{Matrix, Signature, SignatureGrid, TowerScalar};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(v: i64) -> TowerScalar {
    TowerScalar::from_int(v)
}

pub fn sym(w: &[i64]) -> Signature {
    Signature::symmetric_ints(w).unwrap()
}

fn bit(x: usize, n: usize, pos: usize) -> usize {
    (x >> (n - 1 - pos)) & 1
}

/// All set partitions of `0..n`, blocks in increasing order.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for b in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[b].push(k);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![k]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Whether `f` equals the tensor product of its restrictions to the blocks,
/// read off a fixed support point `x*`:
/// `f(x) f(x*)^{k-1} = Π_B f(x* with block B replaced by x_B)`.
fn splits_over(f: &Signature, blocks: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let n = f.arity();
    let star = (0..1usize << n).find(|&x| !f.get(x).is_zero())?;
    let mask = |b: &[usize]| b.iter().fold(0usize, |m, &p| m | (1 << (n - 1 - p)));
    let base = f.get(star).pow(blocks.len() as i64 - 1).unwrap();
    let mut supports: Vec<Vec<usize>> = vec![Vec::new(); blocks.len()];
    for x in 0..1usize << n {
        let mut prod = int(1);
        for b in blocks {
            let m = mask(b);
            prod = &prod * f.get((star & !m) | (x & m));
        }
        if f.get(x) * &base != prod {
            return None;
        }
    }
    for (k, b) in blocks.iter().enumerate() {
        let m = mask(b);
        for x in 0..1usize << n {
            if x & !m == star & !m && !f.get(x).is_zero() {
                supports[k].push(x & m);
            }
        }
    }
    Some(supports)
}

/// `f` is a tensor product of functions whose supports each lie in some
/// complementary pair `{u, ū}`; the zero function counts as a member.
pub fn oracle_product(f: &Signature) -> bool {
    if f.is_zero() {
        return true;
    }
    let n = f.arity();
    set_partitions(n).iter().any(|blocks| match splits_over(f, blocks) {
        None => false,
        Some(supports) => blocks.iter().zip(&supports).all(|(b, s)| {
            let m = b.iter().fold(0usize, |m, &p| m | (1 << (n - 1 - p)));
            s.len() <= 2 && (s.len() < 2 || s[0] ^ s[1] == m)
        }),
    })
}

/// `f` is a tensor product of functions of arity at most 2.
pub fn oracle_tensor(f: &Signature) -> bool {
    if f.is_zero() {
        return true;
    }
    set_partitions(f.arity())
        .iter()
        .filter(|p| p.iter().all(|b| b.len() <= 2))
        .any(|blocks| splits_over(f, blocks).is_some())
}

/// Non-negative affine membership: the support is closed under
/// `a ⊕ b ⊕ c` and the function is constant on it.
pub fn oracle_affine(f: &Signature) -> bool {
    if f.is_zero() {
        return true;
    }
    if !f.is_nonnegative() {
        return oracle_affine_signed(f);
    }
    let supp: Vec<usize> = (0..1usize << f.arity()).filter(|&x| !f.get(x).is_zero()).collect();
    let closed = supp
        .iter()
        .all(|&a| supp.iter().all(|&b| supp.iter().all(|&c| supp.contains(&(a ^ b ^ c)))));
    closed && supp.iter().all(|&x| f.get(x) == f.get(supp[0]))
}

/// Signed affine membership: affine support, constant magnitude, and a sign
/// pattern equal to `(-1)^q` for some GF(2) quadratic `q`, found by
/// enumerating every quadratic.
pub fn oracle_affine_signed(f: &Signature) -> bool {
    let n = f.arity();
    let supp: Vec<usize> = (0..1usize << n).filter(|&x| !f.get(x).is_zero()).collect();
    let closed = supp
        .iter()
        .all(|&a| supp.iter().all(|&b| supp.iter().all(|&c| supp.contains(&(a ^ b ^ c)))));
    if !closed || !supp.iter().all(|&x| f.get(x).abs() == f.get(supp[0]).abs()) {
        return false;
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let terms = 1 + n + pairs.len();
    (0..1usize << terms).any(|coef| {
        supp.iter().all(|&x| {
            let mut q = coef & 1;
            for i in 0..n {
                q ^= (coef >> (1 + i)) & bit(x, n, i);
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                q ^= (coef >> (1 + n + k)) & bit(x, n, i) & bit(x, n, j);
            }
            let want_negative = q == 1;
            f.get(x).is_negative() == want_negative
        })
    })
}

/// Every signature of arity `n` with entries drawn from `values`.
pub fn all_signatures(n: usize, values: &[i64]) -> impl Iterator<Item = Signature> + '_ {
    let len = 1usize << n;
    let total = values.len().pow(len as u32);
    (0..total).map(move |mut code| {
        let mut v = Vec::with_capacity(len);
        for _ in 0..len {
            v.push(values[code % values.len()]);
            code /= values.len();
        }
        Signature::from_ints(&v).unwrap()
    })
}

/// A random affine subspace of `{0,1}^n` as a membership mask.
pub fn random_affine_support(rng: &mut Rng8, n: usize) -> Vec<bool> {
    let dim = rng.gen_range(0..=n);
    let mut span = vec![0usize];
    while span.len() < 1 << dim {
        let v = rng.gen_range(1..1usize << n);
        if !span.contains(&v) {
            let more: Vec<usize> = span.iter().map(|s| s ^ v).collect();
            span.extend(more);
        }
    }
    let offset = rng.gen_range(0..1usize << n);
    let mut mask = vec![false; 1 << n];
    for s in span {
        mask[s ^ offset] = true;
    }
    mask
}

/// `Π s_i(x_i)` masked by `mask`, with each unary drawn from `1..=5`.
pub fn masked_unary_product(rng: &mut Rng8, n: usize, mask: &[bool]) -> Signature {
    let units: Vec<[i64; 2]> = (0..n).map(|_| [rng.gen_range(1..=5), rng.gen_range(1..=5)]).collect();
    let v: Vec<i64> = (0..1usize << n)
        .map(|x| {
            if mask[x] {
                (0..n).map(|i| units[i][bit(x, n, i)]).product()
            } else {
                0
            }
        })
        .collect();
    Signature::from_ints(&v).unwrap()
}

/// Random table with entries in `0..=max`.
pub fn random_signature(rng: &mut Rng8, n: usize, max: i64) -> Signature {
    let v: Vec<i64> = (0..1usize << n).map(|_| rng.gen_range(0..=max)).collect();
    Signature::from_ints(&v).unwrap()
}

/// Random affine-class signature: affine support times a positive constant.
pub fn random_affine(rng: &mut Rng8, n: usize) -> Signature {
    let mask = random_affine_support(rng, n);
    let c = rng.gen_range(1..=3);
    Signature::from_ints(&mask.iter().map(|&m| if m { c } else { 0 }).collect::<Vec<_>>()).unwrap()
}

/// Random product-type signature: a tensor product over a random partition
/// of weighted complementary pairs, permuted into place.
pub fn random_product(rng: &mut Rng8, n: usize) -> Signature {
    let mut f = Signature::constant(int(rng.gen_range(1..=2)));
    let mut k = 0;
    while k < n {
        let size = rng.gen_range(1..=(n - k));
        let u = rng.gen_range(0..1usize << size);
        let ubar = u ^ ((1 << size) - 1);
        let mut v = vec![0i64; 1 << size];
        v[u] = rng.gen_range(1..=3);
        v[ubar] = rng.gen_range(0..=3);
        f = f.tensor(&Signature::from_ints(&v).unwrap());
        k += size;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    f.permute(&perm).unwrap()
}

/// Random tensor product of arity-1 and arity-2 pieces.
pub fn random_binary_type(rng: &mut Rng8, n: usize) -> Signature {
    let mut f = Signature::constant(int(1));
    let mut k = 0;
    while k < n {
        let size = if n - k >= 2 { rng.gen_range(1..=2) } else { 1 };
        f = f.tensor(&random_signature(rng, size, 3));
        k += size;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    f.permute(&perm).unwrap()
}

/// Random closed grid: vertex arities in `1..=max_arity`, total slots even
/// and at most `2 * max_edges`, slots paired uniformly (self-loops and
/// parallel edges allowed). Each vertex gets its own signature from `make`.
pub fn random_closed_grid(
    rng: &mut Rng8,
    max_edges: usize,
    max_arity: usize,
    make: &mut dyn FnMut(&mut Rng8, usize) -> Signature,
) -> SignatureGrid {
    random_grid(rng, max_edges, max_arity, 0, make)
}

/// Random grid with `dangling` dangling edges.
pub fn random_grid(
    rng: &mut Rng8,
    max_edges: usize,
    max_arity: usize,
    dangling: usize,
    make: &mut dyn FnMut(&mut Rng8, usize) -> Signature,
) -> SignatureGrid {
    loop {
        let k = rng.gen_range(1..=4);
        let arities: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=max_arity)).collect();
        let slots: usize = arities.iter().sum();
        if slots < dangling || !(slots - dangling).is_multiple_of(2) || (slots - dangling) / 2 > max_edges {
            continue;
        }
        let mut all: Vec<Slot> = arities
            .iter()
            .enumerate()
            .flat_map(|(v, &a)| (0..a).map(move |s| (v, s)))
            .collect();
        all.shuffle(rng);
        let open: Vec<Slot> = all[..dangling].to_vec();
        let edges: Vec<[Slot; 2]> = all[dangling..].chunks(2).map(|c| [c[0], c[1]]).collect();
        let mut sigs = BTreeMap::new();
        let mut names = Vec::new();
        for (v, &a) in arities.iter().enumerate() {
            let name = format!("v{v}");
            sigs.insert(name.clone(), make(rng, a));
            names.push(name);
        }
        return SignatureGrid::new(sigs, names, edges, open).unwrap();
    }
}

/// Replace every signature of a grid by `map(signature)`.
pub fn map_grid(g: &SignatureGrid, map: impl Fn(usize, &Signature) -> Signature) -> SignatureGrid {
    let mut sigs = BTreeMap::new();
    let mut names = Vec::new();
    for v in 0..g.vertices().len() {
        let name = format!("w{v}");
        sigs.insert(name.clone(), map(v, g.signature_of(v)));
        names.push(name);
    }
    SignatureGrid::new(sigs, names, g.edges().to_vec(), g.dangling().to_vec()).unwrap()
}

pub fn mat(rows: &[[TowerScalar; 2]; 2]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

/// `H = V diag(1/|v_1|, 1/|v_2|)`, the orthonormal version of a basis with
/// orthogonal columns.
pub fn normalize_columns(v: &Matrix) -> Matrix {
    let mut out = v.clone();
    for c in 0..2 {
        let col = v.column(c);
        let norm = (&col[0] * &col[0] + &col[1] * &col[1]).sqrt().unwrap();
        for r in 0..2 {
            out.set(r, c, v.get(r, c).checked_div(&norm).unwrap());
        }
    }
    out
}
