//! Membership tests for the tractable function classes and the structural
//! conditions used by the classifier.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2;
use crate::matrix::Matrix;
use crate::scalar::TowerScalar;
use crate::signature::{Factorization, Signature};

/// Bit mask of an assignment, position 0 in the most significant of `n` bits.
fn pos_bit(n: usize, pos: usize) -> usize {
    1 << (n - 1 - pos)
}

/// A GF(2) polynomial of degree at most two in `x_1..x_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Quadratic {
    pub constant: bool,
    /// Positions with a linear term.
    pub linear: Vec<usize>,
    /// Position pairs `(i, j)`, `i < j`, with a product term.
    pub pairs: Vec<(usize, usize)>,
}

impl Quadratic {
    pub fn is_zero(&self) -> bool {
        !self.constant && self.linear.is_empty() && self.pairs.is_empty()
    }

    /// Evaluate on the assignment with table index `x` of arity `n`.
    pub fn eval(&self, n: usize, x: usize) -> bool {
        let b = |p: usize| x & pos_bit(n, p) != 0;
        let mut v = self.constant;
        for &i in &self.linear {
            v ^= b(i);
        }
        for &(i, j) in &self.pairs {
            v ^= b(i) && b(j);
        }
        v
    }
}

/// Certificate that `f(x) = λ·(−1)^{q(x)}` on an affine support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineWitness {
    pub arity: usize,
    /// A support point (table index).
    pub offset: usize,
    /// Reduced GF(2) basis of `supp(f) ⊕ offset`, as table-index masks.
    pub basis: Vec<usize>,
    pub lambda: TowerScalar,
    pub sign: Quadratic,
}

impl AffineWitness {
    /// Support points in increasing order; empty for the zero function.
    pub fn support(&self) -> Vec<usize> {
        if self.lambda.is_zero() {
            return Vec::new();
        }
        let mut pts: Vec<usize> = (0..1usize << self.basis.len())
            .map(|c| {
                self.basis
                    .iter()
                    .enumerate()
                    .fold(self.offset, |x, (k, b)| if c >> k & 1 == 1 { x ^ b } else { x })
            })
            .collect();
        pts.sort_unstable();
        pts
    }

    /// Linear equations `(mask, rhs)` cutting out the support: `x` is in the
    /// support iff `popcount(x & mask)` has parity `rhs` for every pair.
    pub fn constraints(&self) -> Vec<(usize, bool)> {
        let reduced = gf2::reduced_basis(self.basis.iter().copied());
        gf2::orthogonal_complement(&reduced, self.arity)
            .into_iter()
            .map(|a| (a, gf2::dot(a, self.offset)))
            .collect()
    }

    /// The table this witness describes.
    pub fn reconstruct(&self) -> Signature {
        let n = self.arity;
        let mut values = vec![TowerScalar::zero(); 1 << n];
        for x in self.support() {
            values[x] = if self.sign.eval(n, x) {
                -self.lambda.clone()
            } else {
                self.lambda.clone()
            };
        }
        Signature::new(n, values).expect("arity already validated")
    }
}

/// Membership in the real affine class.
pub fn is_affine(f: &Signature) -> Option<AffineWitness> {
    let n = f.arity();
    let support = f.support();
    let Some(&x0) = support.first() else {
        return Some(AffineWitness {
            arity: n,
            offset: 0,
            basis: Vec::new(),
            lambda: TowerScalar::zero(),
            sign: Quadratic::default(),
        });
    };
    let reduced = gf2::reduced_basis(support.iter().map(|&x| x ^ x0));
    let r = reduced.len();
    if support.len() != 1 << r {
        return None;
    }
    let lambda = f.get(x0).abs();
    if support.iter().any(|&x| f.get(x).abs() != lambda) {
        return None;
    }
    // coordinates over the basis are read off the pivot bits
    let mut signs = vec![0u8; 1 << r];
    for &x in &support {
        let d = x ^ x0;
        let c = reduced
            .iter()
            .enumerate()
            .fold(0usize, |c, (k, &(p, _))| c | ((d >> p & 1) << k));
        signs[c] = u8::from(f.get(x).is_negative());
    }
    // algebraic normal form by the GF(2) Möbius transform
    for k in 0..r {
        for c in 0..1usize << r {
            if c >> k & 1 == 1 {
                signs[c] ^= signs[c ^ (1 << k)];
            }
        }
    }
    if (0..1usize << r).any(|c| signs[c] == 1 && c.count_ones() > 2) {
        return None;
    }
    // substitute c_k = x_{p_k} ⊕ x0_{p_k} and collect terms over x
    let pos_of = |bit: usize| n - 1 - bit;
    let off = |k: usize| x0 >> reduced[k].0 & 1 == 1;
    let mut constant = false;
    let mut linear = vec![false; n];
    let mut pairs = vec![vec![false; n]; n];
    for c in (0..1usize << r).filter(|&c| signs[c] == 1) {
        let ks: Vec<usize> = (0..r).filter(|k| c >> k & 1 == 1).collect();
        match ks[..] {
            [] => constant ^= true,
            [k] => {
                linear[pos_of(reduced[k].0)] ^= true;
                constant ^= off(k);
            }
            [k, l] => {
                let (i, j) = (pos_of(reduced[k].0), pos_of(reduced[l].0));
                pairs[i.min(j)][i.max(j)] ^= true;
                if off(l) {
                    linear[i] ^= true;
                }
                if off(k) {
                    linear[j] ^= true;
                }
                constant ^= off(k) && off(l);
            }
            _ => unreachable!(),
        }
    }
    let sign = Quadratic {
        constant,
        linear: (0..n).filter(|&i| linear[i]).collect(),
        pairs: (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| pairs[i][j])
            .collect(),
    };
    Some(AffineWitness {
        arity: n,
        offset: x0,
        basis: reduced.into_iter().map(|(_, b)| b).collect(),
        lambda,
        sign,
    })
}

/// Support of `g` lies in a complementary pair `{u, ū}`.
pub fn is_equality_type(g: &Signature) -> bool {
    let s = g.support();
    match s.len() {
        0 | 1 => true,
        2 => s[0] ^ s[1] == (1 << g.arity()) - 1,
        _ => false,
    }
}

/// Membership in the product-type class; the identically-zero function is
/// a member with an empty factor list and zero scalar.
pub fn is_product_type(f: &Signature) -> Option<Factorization> {
    if f.is_zero() {
        return Some(zero_factorization(f.arity()));
    }
    let fz = f.factorize().ok()?;
    fz.factors
        .iter()
        .all(|fac| is_equality_type(&fac.signature))
        .then_some(fz)
}

/// Membership in the tensor closure of arity-≤2 functions.
pub fn is_tensor_closure_t(f: &Signature) -> bool {
    f.is_zero()
        || f
            .factorize()
            .map(|fz| fz.factors.iter().all(|fac| fac.signature.arity() <= 2))
            .unwrap_or(false)
}

fn zero_factorization(arity: usize) -> Factorization {
    Factorization {
        arity,
        scalar: TowerScalar::zero(),
        factors: Vec::new(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// `Some(Even)` / `Some(Odd)` when the support is confined to one weight
/// parity, `None` when it mixes both.
pub fn parity(f: &Signature) -> Result<Option<Parity>> {
    let s = f.support();
    if s.is_empty() {
        return Err(Error::ZeroSignature);
    }
    let odd = s.iter().filter(|x| x.count_ones() % 2 == 1).count();
    Ok(match odd {
        0 => Some(Parity::Even),
        k if k == s.len() => Some(Parity::Odd),
        _ => None,
    })
}

/// Two support points at Hamming distance one.
pub fn adjacency(f: &Signature) -> bool {
    let n = f.arity();
    f.support()
        .iter()
        .any(|&x| (0..n).any(|p| x & (1 << p) == 0 && !f.get(x | 1 << p).is_zero()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PairTag {
    /// `f` vanishes whenever the two inputs differ.
    #[serde(rename = "E")]
    Equal,
    /// `f` vanishes whenever the two inputs agree.
    #[serde(rename = "N")]
    NotEqual,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputPartition {
    /// Classes in order of their smallest member; members increasing.
    pub classes: Vec<Vec<usize>>,
    /// Tag of every related pair `(i, j, tag)`, `i < j`.
    pub pairs: Vec<(usize, usize, PairTag)>,
}

pub fn input_partition(f: &Signature) -> Result<InputPartition> {
    let n = f.arity();
    let support = f.support();
    if support.is_empty() {
        return Err(Error::ZeroSignature);
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (bi, bj) = (pos_bit(n, i), pos_bit(n, j));
            let same = |x: &usize| (x & bi == 0) == (x & bj == 0);
            let tag = if support.iter().all(same) {
                PairTag::Equal
            } else if !support.iter().any(same) {
                PairTag::NotEqual
            } else {
                continue;
            };
            pairs.push((i, j, tag));
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(i);
    }
    Ok(InputPartition { classes, pairs })
}

/// `None` when every two rows are linearly dependent or orthogonal;
/// otherwise the lexicographically first offending row pair.
pub fn block_rank_one(m: &Matrix) -> Option<(usize, usize)> {
    let rows: Vec<&[TowerScalar]> = (0..m.rows()).map(|r| m.row(r)).collect();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if !dependent(rows[i], rows[j]) && !dot(rows[i], rows[j]).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

fn dot(a: &[TowerScalar], b: &[TowerScalar]) -> TowerScalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

fn dependent(a: &[TowerScalar], b: &[TowerScalar]) -> bool {
    let Some(k) = a.iter().position(|v| !v.is_zero()) else {
        return true;
    };
    a.iter()
        .zip(b)
        .all(|(x, y)| (x * &b[k]) == (y * &a[k]))
}

/// Unary factors `s_1..s_n` with `f(x) = s_1(x_1)···s_n(x_n)` on the support.
///
/// Returns `None` when some marginal `f^[t]` fails to be block-rank-one, or
/// when the multiplicative solve needs a root other than an iterated square
/// root. Every returned representation has been checked pointwise.
pub fn vector_representation(f: &Signature) -> Result<Option<Vec<Signature>>> {
    if let Some(index) = f.first_negative() {
        return Err(Error::NegativeValue {
            name: "f".into(),
            index,
            value: f.get(index).to_string(),
        });
    }
    let n = f.arity();
    let support = f.support();
    if support.is_empty() {
        return Err(Error::ZeroSignature);
    }
    for t in 2..=n {
        let view = f.marginal(t)?.leading_view(t - 1)?;
        if block_rank_one(&view.matrix).is_some() {
            return Ok(None);
        }
    }
    let Some(ratios) = solve_ratios(f, &support)? else {
        return Ok(None);
    };
    let x0 = support[0];
    let bit = |x: usize, i: usize| x & pos_bit(n, i) != 0;
    // f(x0) = c · ∏_{i: x0_i = 1} r_i
    let mut c = f.get(x0).clone();
    for (i, r) in ratios.iter().enumerate() {
        if bit(x0, i) {
            c = c.checked_div(r)?;
        }
    }
    let mut reps: Vec<Signature> = ratios
        .iter()
        .map(|r| Signature::unary(TowerScalar::one(), r.clone()))
        .collect();
    if n == 0 {
        return Ok(Some(reps));
    }
    reps[0] = reps[0].scale(&c);
    let ok = support.iter().all(|&x| {
        let prod: TowerScalar = (0..n)
            .map(|i| reps[i].get(usize::from(bit(x, i))).clone())
            .product();
        prod == *f.get(x)
    });
    Ok(ok.then_some(reps))
}

/// Solve `f(x)/f(x0) = ∏ r_i^{x_i − x0_i}` over the support for positive
/// `r_i`; unconstrained ratios are 1.
fn solve_ratios(f: &Signature, support: &[usize]) -> Result<Option<Vec<TowerScalar>>> {
    let n = f.arity();
    let x0 = support[0];
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    // rows: exponent vector over r, with the combination of support points
    // (as exponents of their ratios f(x)/f(x0)) that produced it
    let mut pivots: Vec<(usize, Vec<BigRational>, Vec<BigRational>)> = Vec::new();
    let mut points: Vec<usize> = Vec::new();
    for &x in &support[1..] {
        if pivots.len() == n {
            break;
        }
        let mut row: Vec<BigRational> = (0..n)
            .map(|i| {
                let b = |y: usize| i64::from(y & pos_bit(n, i) != 0);
                q(b(x) - b(x0))
            })
            .collect();
        let k = points.len();
        let mut comb: Vec<BigRational> = vec![BigRational::zero(); k + 1];
        comb[k] = BigRational::one();
        for (p, prow, pcomb) in &pivots {
            if row[*p].is_zero() {
                continue;
            }
            let factor = row[*p].clone();
            for i in 0..n {
                row[i] = &row[i] - &factor * &prow[i];
            }
            for (j, c) in pcomb.iter().enumerate() {
                comb[j] = &comb[j] - &factor * c;
            }
        }
        let Some(p) = row.iter().position(|v| !v.is_zero()) else {
            continue;
        };
        let lead = row[p].clone();
        for v in row.iter_mut() {
            *v = &*v / &lead;
        }
        for v in comb.iter_mut() {
            *v = &*v / &lead;
        }
        for (_, prow, pcomb) in pivots.iter_mut() {
            if prow[p].is_zero() {
                continue;
            }
            let factor = prow[p].clone();
            for i in 0..n {
                prow[i] = &prow[i] - &factor * &row[i];
            }
            pcomb.resize(k + 1, BigRational::zero());
            for (j, c) in comb.iter().enumerate() {
                pcomb[j] = &pcomb[j] - &factor * c;
            }
        }
        points.push(x);
        pivots.push((p, row, comb));
    }
    let base = f.get(x0);
    let ratio_of: Vec<TowerScalar> = points
        .iter()
        .map(|&x| f.get(x).checked_div(base))
        .collect::<Result<_>>()?;
    // free coordinates take ratio 1; pivot rows still mention them with
    // coefficient, which contributes nothing
    let mut ratios = vec![TowerScalar::one(); n];
    for (p, _, comb) in &pivots {
        let mut acc = TowerScalar::one();
        for (j, e) in comb.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            match rational_power(&ratio_of[j], e)? {
                Some(v) => acc = &acc * &v,
                None => return Ok(None),
            }
        }
        ratios[*p] = acc;
    }
    Ok(Some(ratios))
}

/// `base^e` for a positive base and a rational exponent whose denominator
/// is a power of two.
fn rational_power(base: &TowerScalar, e: &BigRational) -> Result<Option<TowerScalar>> {
    let (num, den) = (e.numer(), e.denom());
    let Some(num) = num.to_i64() else {
        return Ok(None);
    };
    let den_bits = den.bits();
    if !(den.is_one() || (den.is_positive() && den.is_even() && *den == BigInt::one() << (den_bits - 1))) {
        return Ok(None);
    }
    let mut v = base.pow(num)?;
    for _ in 1..den_bits {
        v = v.sqrt()?;
    }
    Ok(Some(v))
}
