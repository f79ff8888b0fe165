//! Holographic transformations and orthogonal basis candidates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::classes::is_product_type;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::TowerScalar;
use crate::signature::Signature;

/// `T^{⊗n} f`, with `f` read as a column vector.
pub fn apply(t: &Matrix, f: &Signature) -> Result<Signature> {
    if t.rows() != 2 || t.cols() != 2 {
        return Err(Error::InvalidArgument("transform must be a 2x2 matrix".into()));
    }
    let n = f.arity();
    let mut values = f.values().to_vec();
    for pos in 0..n {
        let bit = 1usize << (n - 1 - pos);
        for x in (0..values.len()).filter(|x| x & bit == 0) {
            let (v0, v1) = (&values[x], &values[x | bit]);
            let w0 = t.get(0, 0) * v0 + t.get(0, 1) * v1;
            let w1 = t.get(1, 0) * v0 + t.get(1, 1) * v1;
            values[x] = w0;
            values[x | bit] = w1;
        }
    }
    Signature::new(n, values)
}

/// A 2x2 matrix with nonzero, mutually orthogonal columns that need not
/// have unit length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoCandidate {
    pub v: Matrix,
    /// Which Gram matrix produced it, e.g. `identity`, `f0:A1`, `f0:B02[00,11]`.
    pub source: String,
}

impl OrthoCandidate {
    pub fn identity() -> Self {
        OrthoCandidate {
            v: Matrix::identity(2),
            source: "identity".into(),
        }
    }

    pub fn columns(&self) -> [[TowerScalar; 2]; 2] {
        let m = &self.v;
        [
            [m.get(0, 0).clone(), m.get(1, 0).clone()],
            [m.get(0, 1).clone(), m.get(1, 1).clone()],
        ]
    }

    /// Same pair of column directions, in either order.
    pub fn same_basis(&self, other: &OrthoCandidate) -> bool {
        let [a, b] = self.columns();
        let [c, d] = other.columns();
        (parallel(&a, &c) && parallel(&b, &d)) || (parallel(&a, &d) && parallel(&b, &c))
    }
}

fn parallel(a: &[TowerScalar; 2], b: &[TowerScalar; 2]) -> bool {
    &a[0] * &b[1] == &a[1] * &b[0]
}

/// Scale a rational column to a primitive integer vector; irrational
/// columns are left as they are. Either way the first nonzero coordinate
/// ends up positive.
fn canonical_column(col: [TowerScalar; 2]) -> [TowerScalar; 2] {
    let col = match (col[0].as_rational(), col[1].as_rational()) {
        (Some(a), Some(b)) => {
            let den = a.denom().lcm(b.denom());
            let (x, y) = (a.numer() * (&den / a.denom()), b.numer() * (&den / b.denom()));
            let g = x.gcd(&y);
            let g = if g.is_zero() { BigInt::one() } else { g };
            [scalar_of(x / &g), scalar_of(y / &g)]
        }
        _ => col,
    };
    let lead_negative = col.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative());
    if lead_negative {
        [-col[0].clone(), -col[1].clone()]
    } else {
        col
    }
}

fn scalar_of(n: BigInt) -> TowerScalar {
    TowerScalar::from_rational(num_rational::BigRational::from_integer(n))
}

/// Unnormalized eigenbasis of a symmetric 2x2 matrix with distinct
/// eigenvalues, larger eigenvalue first; `None` for a multiple of the identity.
pub fn eigenbasis(a: &Matrix) -> Result<Option<Matrix>> {
    if a.rows() != 2 || !a.is_symmetric() {
        return Err(Error::InvalidArgument("eigenbasis needs a symmetric 2x2 matrix".into()));
    }
    let (p, q, r) = (a.get(0, 0), a.get(0, 1), a.get(1, 1));
    if q.is_zero() {
        return Ok(if p == r {
            None
        } else if p > r {
            Some(Matrix::identity(2))
        } else {
            Some(Matrix::from_ints(&[&[0, -1], &[1, 0]]))
        });
    }
    // eigenvalues (p + r ± √Δ)/2, eigenvector (2q, r − p ± √Δ)
    let diff = r - p;
    let disc = &diff * &diff + TowerScalar::from_int(4) * q * q;
    let root = disc.sqrt()?;
    let two_q = q + q;
    let hi = canonical_column([two_q.clone(), &diff + &root]);
    let lo = canonical_column([two_q, &diff - &root]);
    // orient so the determinant is positive
    let det = &hi[0] * &lo[1] - &hi[1] * &lo[0];
    let lo = if det.is_negative() {
        [-lo[0].clone(), -lo[1].clone()]
    } else {
        lo
    };
    Ok(Some(Matrix::from_rows(vec![
        vec![hi[0].clone(), lo[0].clone()],
        vec![hi[1].clone(), lo[1].clone()],
    ])?))
}

const PAIR_LABELS: [&str; 4] = ["00", "01", "10", "11"];

/// The `{00, 11}` and `{01, 10}` blocks of `B_ij`.
const CORNERS: [(usize, usize); 2] = [(0, 3), (1, 2)];

/// Orthogonal candidates read off the Gram matrices `A_i(f)` and the two
/// corner blocks of `B_ij(f)` (arity three and up), deduplicated; the
/// identity comes first.
pub fn ortho_candidates(fs: &[Signature]) -> Result<Vec<OrthoCandidate>> {
    let mut out = vec![OrthoCandidate::identity()];
    let mut push = |v: Matrix, source: String| {
        let c = OrthoCandidate { v, source };
        if !out.iter().any(|o| o.same_basis(&c)) {
            out.push(c);
        }
    };
    for (k, f) in fs.iter().enumerate() {
        let n = f.arity();
        for i in 0..n {
            if let Some(v) = eigenbasis(&f.gram(i)?)? {
                push(v, format!("f{k}:A{i}"));
            }
        }
        if n < 3 {
            continue;
        }
        for i in 0..n {
            for j in i + 1..n {
                let b = f.gram_pair(i, j)?;
                for (s, t) in CORNERS {
                    let block = Matrix::from_rows(vec![
                        vec![b.get(s, s).clone(), b.get(s, t).clone()],
                        vec![b.get(t, s).clone(), b.get(t, t).clone()],
                    ])?;
                    if let Some(v) = eigenbasis(&block)? {
                        push(v, format!("f{k}:B{i}{j}[{},{}]", PAIR_LABELS[s], PAIR_LABELS[t]));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The first candidate `V` with `Vᵀ f` product-type for every `f`.
pub fn transformable_to_p(fs: &[Signature]) -> Result<Option<OrthoCandidate>> {
    for cand in ortho_candidates(fs)? {
        let vt = cand.v.transpose();
        let mut all = true;
        for f in fs {
            if is_product_type(&apply(&vt, f)?).is_none() {
                all = false;
                break;
            }
        }
        if all {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

/// A signature and position whose Gram matrix has distinct eigenvalues and
/// whose position sits in an irreducible factor of arity at least two.
///
/// Under any orthogonal `H` with `Hᵀ f` product-type, such a Gram matrix is
/// `H D Hᵀ` with `D` diagonal, so its eigenbasis determines `H` up to column
/// scaling and order. A failed candidate search is then conclusive.
pub fn pinning_gram(fs: &[Signature]) -> Result<Option<(usize, usize)>> {
    for (k, f) in fs.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let fz = f.factorize()?;
        for factor in fz.factors.iter().filter(|fac| fac.positions.len() >= 2) {
            for &i in &factor.positions {
                if eigenbasis(&f.gram(i)?)?.is_some() {
                    return Ok(Some((k, i)));
                }
            }
        }
    }
    Ok(None)
}
