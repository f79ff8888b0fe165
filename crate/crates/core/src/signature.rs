//! Signatures: dense value tables of Boolean functions.
//!
//! Entry `x ∈ {0,1}^n` lives at the index whose most significant bit is `x_1`.
//! Positions are 0-based throughout the API.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::TowerScalar;

/// Hard limit on table arity; tables are dense.
pub const MAX_ARITY: usize = 24;

/// Default arity cap used by loaders and the contraction engine.
pub const DEFAULT_ARITY_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    arity: usize,
    values: Vec<TowerScalar>,
}

/// A matrix view of a signature: rows indexed by the assignments to
/// `row_positions` (first listed position most significant), columns by the
/// remaining positions in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixView {
    pub row_positions: Vec<usize>,
    pub col_positions: Vec<usize>,
    pub matrix: Matrix,
}

/// An irreducible tensor factor placed on a set of positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub signature: Signature,
    /// Positions of the original signature, increasing.
    pub positions: Vec<usize>,
}

/// `f = scalar · ⊗ factors`, each factor normalized so its first nonzero
/// entry is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub arity: usize,
    pub scalar: TowerScalar,
    pub factors: Vec<Factor>,
}

#[inline]
pub(crate) fn bit(index: usize, arity: usize, pos: usize) -> usize {
    (index >> (arity - 1 - pos)) & 1
}

/// Read the bits of `index` at `positions` into a sub-index (first position
/// most significant).
pub(crate) fn gather(index: usize, arity: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .fold(0, |acc, &p| (acc << 1) | bit(index, arity, p))
}

/// Write the bits of `sub` (over `positions`) into an index of width `arity`.
pub(crate) fn scatter(sub: usize, arity: usize, positions: &[usize]) -> usize {
    let k = positions.len();
    positions.iter().enumerate().fold(0, |acc, (i, &p)| {
        acc | (((sub >> (k - 1 - i)) & 1) << (arity - 1 - p))
    })
}

fn check_positions(arity: usize, positions: &[usize]) -> Result<()> {
    let mut seen = vec![false; arity];
    for &p in positions {
        if p >= arity {
            return Err(Error::InvalidArgument(format!(
                "position {p} out of range for arity {arity}"
            )));
        }
        if seen[p] {
            return Err(Error::InvalidArgument(format!("position {p} repeated")));
        }
        seen[p] = true;
    }
    Ok(())
}

fn complement(arity: usize, positions: &[usize]) -> Vec<usize> {
    (0..arity).filter(|p| !positions.contains(p)).collect()
}

impl Signature {
    pub fn new(arity: usize, values: Vec<TowerScalar>) -> Result<Self> {
        if arity > MAX_ARITY {
            return Err(Error::InvalidSignature(format!(
                "arity {arity} exceeds the hard limit {MAX_ARITY}"
            )));
        }
        if values.len() != 1 << arity {
            return Err(Error::InvalidSignature(format!(
                "arity {arity} needs {} values, got {}",
                1usize << arity,
                values.len()
            )));
        }
        Ok(Signature { arity, values })
    }

    /// Table of length `2^n`; the arity is inferred.
    pub fn from_values(values: Vec<TowerScalar>) -> Result<Self> {
        let len = values.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidSignature(format!(
                "table length {len} is not a power of two"
            )));
        }
        Signature::new(len.trailing_zeros() as usize, values)
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Signature::from_values(values.iter().map(|&v| TowerScalar::from_int(v)).collect())
    }

    /// Symmetric signature `[f_0, ..., f_n]`.
    pub fn symmetric(weights: &[TowerScalar]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidSignature("empty symmetric signature".into()));
        }
        let n = weights.len() - 1;
        if n > MAX_ARITY {
            return Err(Error::InvalidSignature(format!(
                "arity {n} exceeds the hard limit {MAX_ARITY}"
            )));
        }
        let values = (0..1usize << n)
            .map(|i| weights[i.count_ones() as usize].clone())
            .collect();
        Signature::new(n, values)
    }

    pub fn symmetric_ints(weights: &[i64]) -> Result<Self> {
        Signature::symmetric(&weights.iter().map(|&v| TowerScalar::from_int(v)).collect::<Vec<_>>())
    }

    /// The equality function `=_n`.
    pub fn equality(n: usize) -> Self {
        let mut w = vec![TowerScalar::zero(); n + 1];
        w[0] = TowerScalar::one();
        w[n] = TowerScalar::one();
        Signature::symmetric(&w).expect("equality arity within limit")
    }

    pub fn unary(a: TowerScalar, b: TowerScalar) -> Self {
        Signature {
            arity: 1,
            values: vec![a, b],
        }
    }

    /// Arity-0 signature holding one value.
    pub fn constant(v: TowerScalar) -> Self {
        Signature {
            arity: 0,
            values: vec![v],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[TowerScalar] {
        &self.values
    }

    pub fn get(&self, index: usize) -> &TowerScalar {
        &self.values[index]
    }

    /// Value at an explicit assignment `x_1..x_n`.
    pub fn at(&self, bits: &[u8]) -> &TowerScalar {
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
        &self.values[idx]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(TowerScalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        let mut by_weight: Vec<Option<&TowerScalar>> = vec![None; self.arity + 1];
        self.values.iter().enumerate().all(|(i, v)| {
            let w = i.count_ones() as usize;
            match by_weight[w] {
                Some(u) => u == v,
                None => {
                    by_weight[w] = Some(v);
                    true
                }
            }
        })
    }

    /// Index of the first negative entry, if any.
    pub fn first_negative(&self) -> Option<usize> {
        self.values.iter().position(TowerScalar::is_negative)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    pub fn scale(&self, s: &TowerScalar) -> Signature {
        Signature {
            arity: self.arity,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    /// Pointwise map of the table.
    pub fn map(&self, f: impl Fn(&TowerScalar) -> TowerScalar) -> Signature {
        Signature {
            arity: self.arity,
            values: self.values.iter().map(f).collect(),
        }
    }

    /// `(f ⊗ g)(x, y) = f(x) g(y)`.
    pub fn tensor(&self, other: &Signature) -> Signature {
        let mut values = Vec::with_capacity(self.values.len() * other.values.len());
        for a in &self.values {
            for b in &other.values {
                values.push(a * b);
            }
        }
        Signature {
            arity: self.arity + other.arity,
            values,
        }
    }

    /// `f_π(x_1..x_n) = f(x_{π(1)}..x_{π(n)})`, with `perm[k] = π(k)`.
    pub fn permute(&self, perm: &[usize]) -> Result<Signature> {
        if perm.len() != self.arity {
            return Err(Error::InvalidArgument(format!(
                "permutation of length {} for arity {}",
                perm.len(),
                self.arity
            )));
        }
        check_positions(self.arity, perm)
            .map_err(|_| Error::InvalidArgument(format!("{perm:?} is not a permutation")))?;
        let n = self.arity;
        let values = (0..1usize << n)
            .map(|y| self.values[gather(y, n, perm)].clone())
            .collect();
        Ok(Signature { arity: n, values })
    }

    /// `f^{x_pos = value}`.
    pub fn pin(&self, pos: usize, value: u8) -> Result<Signature> {
        if self.arity == 0 {
            return Err(Error::InvalidArgument("cannot pin an arity-0 signature".into()));
        }
        check_positions(self.arity, &[pos])?;
        let rest = complement(self.arity, &[pos]);
        let base = scatter(value as usize & 1, self.arity, &[pos]);
        let values = (0..1usize << rest.len())
            .map(|r| self.values[base | scatter(r, self.arity, &rest)].clone())
            .collect();
        Signature::new(self.arity - 1, values)
    }

    /// Contract each position in `positions` with the unary `u`.
    pub fn derive(&self, positions: &[usize], u: &Signature) -> Result<Signature> {
        if u.arity != 1 {
            return Err(Error::InvalidArgument("derivative needs a unary signature".into()));
        }
        check_positions(self.arity, positions)?;
        if positions.len() == self.arity {
            return Err(Error::InvalidArgument(
                "derivative over every input; use full contraction instead".into(),
            ));
        }
        let n = self.arity;
        let rest = complement(n, positions);
        let k = positions.len();
        let weights: Vec<TowerScalar> = (0..1usize << k)
            .map(|s| {
                (0..k)
                    .map(|i| &u.values[(s >> (k - 1 - i)) & 1])
                    .product()
            })
            .collect();
        let values = (0..1usize << rest.len())
            .map(|r| {
                let base = scatter(r, n, &rest);
                (0..1usize << k)
                    .filter(|&s| !weights[s].is_zero())
                    .map(|s| &self.values[base | scatter(s, n, positions)] * &weights[s])
                    .sum()
            })
            .collect();
        Signature::new(rest.len(), values)
    }

    /// Join inputs `i` and `j` with an edge: sum over `x_i = x_j`.
    pub fn connect(&self, i: usize, j: usize) -> Result<Signature> {
        if i == j {
            return Err(Error::InvalidArgument("cannot connect a position to itself".into()));
        }
        check_positions(self.arity, &[i, j])?;
        let n = self.arity;
        let rest = complement(n, &[i, j]);
        let values = (0..1usize << rest.len())
            .map(|r| {
                let base = scatter(r, n, &rest);
                &self.values[base] + &self.values[base | scatter(3, n, &[i, j])]
            })
            .collect();
        Signature::new(n - 2, values)
    }

    /// Rows indexed by assignments to `rows` (in the given order), columns
    /// by the remaining positions in increasing order.
    pub fn matrix_view(&self, rows: &[usize]) -> Result<MatrixView> {
        check_positions(self.arity, rows)?;
        let n = self.arity;
        let cols = complement(n, rows);
        let (nr, nc) = (1usize << rows.len(), 1usize << cols.len());
        let mut data = Vec::with_capacity(nr * nc);
        for r in 0..nr {
            let base = scatter(r, n, rows);
            for c in 0..nc {
                data.push(self.values[base | scatter(c, n, &cols)].clone());
            }
        }
        Ok(MatrixView {
            row_positions: rows.to_vec(),
            col_positions: cols,
            matrix: Matrix::new(nr, nc, data)?,
        })
    }

    /// `M_[r](f)`: rows indexed by the first `r` inputs.
    pub fn leading_view(&self, r: usize) -> Result<MatrixView> {
        if r > self.arity {
            return Err(Error::InvalidArgument(format!(
                "cannot take {r} row inputs of an arity-{} signature",
                self.arity
            )));
        }
        self.matrix_view(&(0..r).collect::<Vec<_>>())
    }

    /// `f^[t]`: sum out inputs `t+1..n` (1-based `t`).
    pub fn marginal(&self, t: usize) -> Result<Signature> {
        if t == 0 || t > self.arity {
            return Err(Error::InvalidArgument(format!(
                "marginal t={t} outside 1..={}",
                self.arity
            )));
        }
        let tail = 1usize << (self.arity - t);
        let values = self
            .values
            .chunks(tail)
            .map(|chunk| chunk.iter().sum())
            .collect();
        Signature::new(t, values)
    }

    /// Indices of nonzero entries, increasing.
    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len())
            .filter(|&i| !self.values[i].is_zero())
            .collect()
    }

    /// `A_i(f) = M_i(f) M_i(f)^T`.
    pub fn gram(&self, i: usize) -> Result<Matrix> {
        let m = self.matrix_view(&[i])?.matrix;
        m.mul(&m.transpose())
    }

    /// `B_ij = M_ij^T M_ij`, where the columns of `M_ij` are the pinned
    /// vectors `f^{x_i=a, x_j=b}` for `ab = 00, 01, 10, 11`.
    pub fn gram_pair(&self, i: usize, j: usize) -> Result<Matrix> {
        if i == j {
            return Err(Error::InvalidArgument("gram_pair needs distinct positions".into()));
        }
        let m = self.matrix_view(&[i, j])?.matrix;
        m.mul(&m.transpose())
    }

    /// Irreducible tensor factorization.
    pub fn factorize(&self) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroSignature);
        }
        let mut scalar = TowerScalar::one();
        let mut factors = Vec::new();
        let mut rest = self.clone();
        let mut rest_positions: Vec<usize> = (0..self.arity).collect();
        while rest.arity > 0 {
            let m = rest.arity;
            let split = (1..m).find_map(|size| {
                subsets_of_size(m - 1, size - 1).into_iter().find_map(|sub| {
                    let block: Vec<usize> =
                        std::iter::once(0).chain(sub.iter().map(|&p| p + 1)).collect();
                    let view = rest.matrix_view(&block).ok()?;
                    rank_one_pivot(&view.matrix).map(|pivot| (view, pivot))
                })
            });
            match split {
                None => {
                    let (f, s) = normalize(rest);
                    scalar = &scalar * &s;
                    factors.push(Factor {
                        signature: f,
                        positions: rest_positions,
                    });
                    break;
                }
                Some((view, (r0, c0))) => {
                    let mat = &view.matrix;
                    let left = Signature::from_values(mat.column(c0))?;
                    let pivot = mat.get(r0, c0).clone();
                    let right = Signature::from_values(
                        mat.row(r0)
                            .iter()
                            .map(|v| v.checked_div(&pivot))
                            .collect::<Result<Vec<_>>>()?,
                    )?;
                    let (f, s) = normalize(left);
                    scalar = &scalar * &s;
                    factors.push(Factor {
                        signature: f,
                        positions: view.row_positions.iter().map(|&p| rest_positions[p]).collect(),
                    });
                    rest_positions = view.col_positions.iter().map(|&p| rest_positions[p]).collect();
                    rest = right;
                }
            }
        }
        if self.arity == 0 {
            scalar = self.values[0].clone();
        }
        Ok(Factorization {
            arity: self.arity,
            scalar,
            factors,
        })
    }
}

/// Scale so the first nonzero entry is 1; returns the removed factor.
fn normalize(f: Signature) -> (Signature, TowerScalar) {
    match f.values.iter().find(|v| !v.is_zero()).cloned() {
        Some(lead) if !lead.is_one() => {
            let inv = lead.recip().expect("nonzero lead");
            (f.scale(&inv), lead)
        }
        _ => (f, TowerScalar::one()),
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// For a rank-one matrix, a nonzero pivot; `None` otherwise (including zero).
pub(crate) fn rank_one_pivot(m: &Matrix) -> Option<(usize, usize)> {
    let (r0, c0) = (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !m.get(r, c).is_zero())?;
    let p = m.get(r0, c0);
    for r in 0..m.rows() {
        let a = m.get(r, c0);
        for c in 0..m.cols() {
            let lhs = m.get(r, c) * p;
            let rhs = a * m.get(r0, c);
            if lhs != rhs {
                return None;
            }
        }
    }
    Some((r0, c0))
}

impl Factorization {
    /// Rebuild the full table: `scalar · ⊗ factors` placed on their positions.
    pub fn reassemble(&self) -> Signature {
        let n = self.arity;
        let values = (0..1usize << n)
            .map(|x| {
                self.factors
                    .iter()
                    .fold(self.scalar.clone(), |acc, f| {
                        &acc * f.signature.get(gather(x, n, &f.positions))
                    })
            })
            .collect();
        Signature { arity: n, values }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig(v: &[i64]) -> Signature {
        Signature::from_ints(v).unwrap()
    }

    fn sym(v: &[i64]) -> Signature {
        Signature::symmetric_ints(v).unwrap()
    }

    fn or3() -> Signature {
        sym(&[0, 1, 1, 1])
    }

    #[test]
    fn symmetric_constructor_fills_by_weight() {
        assert_eq!(sym(&[15, 10, 0, 10]), sig(&[15, 10, 10, 0, 10, 0, 0, 10]));
        assert_eq!(Signature::equality(3), sig(&[1, 0, 0, 0, 0, 0, 0, 1]));
        assert!(Signature::from_ints(&[1, 2, 3]).is_err());
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(sig(&[1, 0]).tensor(&sig(&[0, 1])), sig(&[0, 1, 0, 0]));
        assert_eq!(sig(&[1, 1]).tensor(&sig(&[1, 1])), sig(&[1, 1, 1, 1]));
        let f = sig(&[1, 2]);
        let g = sym(&[1, 0, 1]);
        let t = f.tensor(&g);
        assert_eq!(t.arity(), 3);
        for x in 0..2 {
            for y in 0..4 {
                assert_eq!(*t.get(x * 4 + y), f.get(x) * g.get(y));
            }
        }
    }

    #[test]
    fn permute_examples() {
        assert_eq!(sig(&[0, 1, 0, 0]).permute(&[1, 0]).unwrap(), sig(&[0, 0, 1, 0]));
        let s = sym(&[3, 1, 4, 1]);
        assert_eq!(s.permute(&[2, 0, 1]).unwrap(), s);
        assert!(s.permute(&[0, 0, 1]).is_err());
        assert!(s.permute(&[0, 1]).is_err());
    }

    #[test]
    fn pin_examples() {
        assert_eq!(or3().pin(0, 0).unwrap(), sig(&[0, 1, 1, 1]));
        assert_eq!(Signature::equality(2).pin(0, 1).unwrap(), sig(&[0, 1]));
        assert_eq!(sym(&[15, 10, 0, 10]).pin(0, 1).unwrap(), sym(&[10, 0, 10]));
        assert!(Signature::constant(TowerScalar::one()).pin(0, 0).is_err());
    }

    #[test]
    fn derive_examples() {
        assert_eq!(Signature::equality(2).derive(&[1], &sig(&[1, 1])).unwrap(), sig(&[1, 1]));
        assert_eq!(Signature::equality(3).derive(&[2], &sig(&[3, 5])).unwrap(), sym(&[3, 0, 5]));
        assert_eq!(or3().derive(&[1, 2], &sig(&[1, 0])).unwrap(), sig(&[0, 1]));
        assert!(or3().derive(&[0, 1, 2], &sig(&[1, 0])).is_err());
    }

    #[test]
    fn connect_examples() {
        assert_eq!(Signature::equality(3).connect(0, 1).unwrap(), sig(&[1, 1]));
        let loop_value = sig(&[0, 1, 1, 0]).connect(0, 1).unwrap();
        assert_eq!(loop_value.arity(), 0);
        assert!(loop_value.get(0).is_zero());
        assert_eq!(sym(&[1, 0, 1, 0, 1]).connect(0, 1).unwrap(), sig(&[2, 0, 0, 2]));
        assert!(or3().connect(1, 1).is_err());
    }

    #[test]
    fn matrix_view_examples() {
        let m = or3().leading_view(1).unwrap().matrix;
        assert_eq!(m, Matrix::from_ints(&[&[0, 1, 1, 1], &[1, 1, 1, 1]]));
        let e4 = Signature::equality(4).leading_view(2).unwrap().matrix;
        let mut expect = Matrix::zeros(4, 4);
        expect.set(0, 0, TowerScalar::one());
        expect.set(3, 3, TowerScalar::one());
        assert_eq!(e4, expect);
        // f_0000 top-left, f_0011 top-right, f_1100 bottom-left, f_1111 bottom-right
        let f = sig(&(0..16).collect::<Vec<_>>());
        let v = f.leading_view(2).unwrap().matrix;
        assert_eq!(*v.get(0, 0), TowerScalar::from_int(0b0000));
        assert_eq!(*v.get(0, 3), TowerScalar::from_int(0b0011));
        assert_eq!(*v.get(1, 2), TowerScalar::from_int(0b0110));
        assert_eq!(*v.get(3, 0), TowerScalar::from_int(0b1100));
        assert_eq!(*v.get(3, 3), TowerScalar::from_int(0b1111));
    }

    #[test]
    fn marginal_examples() {
        assert_eq!(Signature::equality(2).marginal(1).unwrap(), sig(&[1, 1]));
        assert_eq!(or3().marginal(2).unwrap(), sig(&[1, 2, 2, 2]));
        assert_eq!(or3().marginal(3).unwrap(), or3());
        assert!(or3().marginal(0).is_err());
    }

    #[test]
    fn support_examples() {
        assert_eq!(Signature::equality(3).support(), vec![0b000, 0b111]);
        assert_eq!(sym(&[0, 1, 0, 0]).support(), vec![0b001, 0b010, 0b100]);
        let s = sym(&[15, 10, 0, 10]).support();
        let expect: Vec<usize> = (0..8usize).filter(|i| i.count_ones() != 2).collect();
        assert_eq!(s, expect);
    }

    #[test]
    fn factorize_examples() {
        let f = sig(&[0, 1, 0, 0]).factorize().unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.factors[0].signature, sig(&[1, 0]));
        assert_eq!(f.factors[0].positions, vec![0]);
        assert_eq!(f.factors[1].signature, sig(&[0, 1]));
        assert_eq!(f.factors[1].positions, vec![1]);

        let e3 = Signature::equality(3).factorize().unwrap();
        assert_eq!(e3.factors.len(), 1);
        assert_eq!(e3.factors[0].positions, vec![0, 1, 2]);

        let t = sig(&[1, 1]).tensor(&sym(&[1, 0, 1]));
        let ft = t.factorize().unwrap();
        assert_eq!(ft.factors.len(), 2);
        assert_eq!(ft.factors[0].positions, vec![0]);
        assert_eq!(ft.factors[1].positions, vec![1, 2]);
        assert_eq!(ft.reassemble(), t);

        assert!(matches!(sig(&[0, 0]).factorize(), Err(Error::ZeroSignature)));
    }

    #[test]
    fn factorize_interleaved_positions() {
        // f(x1,x2,x3) = [x1 = x3] * u(x2)
        let f = Signature::equality(2)
            .tensor(&sig(&[2, 3]))
            .permute(&[0, 2, 1])
            .unwrap();
        let fz = f.factorize().unwrap();
        assert_eq!(fz.factors.len(), 2);
        assert_eq!(fz.factors[0].positions, vec![0, 2]);
        assert_eq!(fz.factors[1].positions, vec![1]);
        assert_eq!(fz.reassemble(), f);
    }

    #[test]
    fn gram_examples() {
        assert_eq!(or3().gram(0).unwrap(), Matrix::from_ints(&[&[3, 3], &[3, 4]]));
        assert_eq!(Signature::equality(2).gram(0).unwrap(), Matrix::identity(2));
        let t = sig(&[1, 0]).tensor(&sig(&[1, 0]));
        assert_eq!(t.gram(0).unwrap(), Matrix::from_ints(&[&[1, 0], &[0, 0]]));
    }

    #[test]
    fn gram_pair_examples() {
        let b = Signature::equality(3).gram_pair(0, 1).unwrap();
        let mut expect = Matrix::zeros(4, 4);
        expect.set(0, 0, TowerScalar::one());
        expect.set(3, 3, TowerScalar::one());
        assert_eq!(b, expect);

        // pinned pairs of [1,0,1,0,1]: 00,11 -> (1,0,0,1); 01,10 -> (0,1,1,0)
        let b = sym(&[1, 0, 1, 0, 1]).gram_pair(0, 1).unwrap();
        assert_eq!(
            b,
            Matrix::from_ints(&[&[2, 0, 0, 2], &[0, 2, 2, 0], &[0, 2, 2, 0], &[2, 0, 0, 2]])
        );
        assert!(b.is_symmetric());
    }

    fn small_sig() -> impl Strategy<Value = Signature> {
        (0usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(-3i64..=3, 1 << n)
                .prop_map(|v| Signature::from_ints(&v).unwrap())
        })
    }

    fn product_sig() -> impl Strategy<Value = Signature> {
        // tensor products of small random blocks, then a random permutation
        proptest::collection::vec(
            (1usize..=3).prop_flat_map(|n| proptest::collection::vec(0i64..=3, 1 << n)),
            1..=3,
        )
        .prop_flat_map(|blocks| {
            let f = blocks
                .iter()
                .map(|b| Signature::from_ints(b).unwrap())
                .fold(Signature::constant(TowerScalar::one()), |acc, b| acc.tensor(&b));
            let n = f.arity();
            (Just(f), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
        .prop_map(|(f, perm)| f.permute(&perm).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn factorize_reassembles(f in small_sig()) {
            prop_assume!(!f.is_zero());
            let fz = f.factorize().unwrap();
            prop_assert_eq!(fz.reassemble(), f);
            for factor in &fz.factors {
                let g = &factor.signature;
                // irreducible: no bipartition containing position 0 is rank one
                for size in 1..g.arity() {
                    for sub in subsets_of_size(g.arity() - 1, size - 1) {
                        let block: Vec<usize> = std::iter::once(0).chain(sub.iter().map(|p| p + 1)).collect();
                        prop_assert!(rank_one_pivot(&g.matrix_view(&block).unwrap().matrix).is_none());
                    }
                }
            }
        }

        #[test]
        fn factorize_products(f in product_sig()) {
            prop_assume!(!f.is_zero());
            prop_assert_eq!(f.factorize().unwrap().reassemble(), f);
        }

        #[test]
        fn permute_inverse(f in small_sig(), seed in any::<u64>()) {
            let n = f.arity();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let mut inv = vec![0; n];
            for (k, &p) in perm.iter().enumerate() {
                inv[p] = k;
            }
            prop_assert_eq!(f.permute(&perm).unwrap().permute(&inv).unwrap(), f);
        }

        #[test]
        fn view_readback(f in small_sig(), mask in any::<u8>()) {
            let n = f.arity();
            let rows: Vec<usize> = (0..n).filter(|p| mask >> p & 1 == 1).collect();
            let view = f.matrix_view(&rows).unwrap();
            for r in 0..view.matrix.rows() {
                for c in 0..view.matrix.cols() {
                    let idx = scatter(r, n, &view.row_positions) | scatter(c, n, &view.col_positions);
                    prop_assert_eq!(view.matrix.get(r, c), f.get(idx));
                }
            }
        }

        #[test]
        fn gram_is_psd_shaped(f in small_sig()) {
            prop_assume!(f.arity() >= 1);
            let a = f.gram(0).unwrap();
            prop_assert!(a.is_symmetric());
            prop_assert!(a.get(0, 0).sign() >= 0 && a.get(1, 1).sign() >= 0);
            prop_assert!(a.det().unwrap().sign() >= 0);
            if f.is_nonnegative() {
                prop_assert!(a.entries().iter().all(|v| v.sign() >= 0));
            }
        }

        #[test]
        fn marginal_composes(f in small_sig()) {
            let n = f.arity();
            for t in 1..=n {
                for s in 1..=t {
                    prop_assert_eq!(f.marginal(t).unwrap().marginal(s).unwrap(), f.marginal(s).unwrap());
                }
            }
        }

        #[test]
        fn connect_matches_equality_contraction(f in small_sig()) {
            prop_assume!(f.arity() >= 2);
            // contracting positions 0,1 with =_2: sum_{a,b} f(a,b,..) [a = b]
            let n = f.arity();
            let direct = f.connect(0, 1).unwrap();
            let eq = Signature::equality(2);
            let rest = n - 2;
            let values: Vec<TowerScalar> = (0..1usize << rest)
                .map(|r| {
                    (0..4usize)
                        .map(|ab| f.get((ab << rest) | r) * eq.get(ab))
                        .sum()
                })
                .collect();
            prop_assert_eq!(direct, Signature::new(rest, values).unwrap());
        }
    }
}
