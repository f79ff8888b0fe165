//! Small GF(2) linear algebra over bit rows.

/// A row of GF(2) coefficients packed into 64-bit words, plus a right-hand side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Equation {
    bits: Vec<u64>,
    rhs: bool,
}

impl Equation {
    pub fn new(nvars: usize) -> Self {
        Equation {
            bits: vec![0; nvars.div_ceil(64).max(1)],
            rhs: false,
        }
    }

    pub fn toggle(&mut self, var: usize) {
        self.bits[var / 64] ^= 1 << (var % 64);
    }

    pub fn set_rhs(&mut self, rhs: bool) {
        self.rhs = rhs;
    }

    fn get(&self, var: usize) -> bool {
        self.bits[var / 64] >> (var % 64) & 1 == 1
    }

    fn xor(&mut self, other: &Equation) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        self.rhs ^= other.rhs;
    }

    fn lowest(&self) -> Option<usize> {
        self.bits
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

/// Rank of a linear system, or `None` when it is inconsistent.
pub(crate) fn solve_rank(equations: Vec<Equation>) -> Option<usize> {
    let mut pivots: Vec<(usize, Equation)> = Vec::new();
    for mut eq in equations {
        for (p, row) in &pivots {
            if eq.get(*p) {
                eq.xor(row);
            }
        }
        match eq.lowest() {
            Some(p) => {
                for (_, row) in pivots.iter_mut() {
                    if row.get(p) {
                        row.xor(&eq);
                    }
                }
                pivots.push((p, eq));
            }
            None if eq.rhs => return None,
            None => {}
        }
    }
    Some(pivots.len())
}

/// Reduced row-echelon basis of the span of `vectors` (bit masks).
/// Each returned pair is `(pivot bit, vector)`; a pivot bit appears in
/// exactly one basis vector.
pub(crate) fn reduced_basis(vectors: impl IntoIterator<Item = usize>) -> Vec<(usize, usize)> {
    let mut basis: Vec<(usize, usize)> = Vec::new();
    for mut v in vectors {
        for &(p, b) in &basis {
            if v >> p & 1 == 1 {
                v ^= b;
            }
        }
        if v == 0 {
            continue;
        }
        let p = v.trailing_zeros() as usize;
        for (_, b) in basis.iter_mut() {
            if *b >> p & 1 == 1 {
                *b ^= v;
            }
        }
        basis.push((p, v));
    }
    basis
}

/// Basis of `{a : a·b = 0 for every b in basis}` within `width` bits.
pub(crate) fn orthogonal_complement(basis: &[(usize, usize)], width: usize) -> Vec<usize> {
    let pivot_mask = basis.iter().fold(0usize, |m, &(p, _)| m | 1 << p);
    (0..width)
        .filter(|&f| pivot_mask >> f & 1 == 0)
        .map(|f| {
            // free bit f set; each pivot bit p set iff basis vector with pivot p has bit f
            basis
                .iter()
                .fold(1usize << f, |a, &(p, b)| if b >> f & 1 == 1 { a | 1 << p } else { a })
        })
        .collect()
}

pub(crate) fn dot(a: usize, b: usize) -> bool {
    (a & b).count_ones() % 2 == 1
}
