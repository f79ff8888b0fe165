//! Named gadget constructions, evaluated as signature grids, and the
//! algebraic preconditions used for interpolation.

use crate::error::{Error, Result};
use crate::evaluate::{eval_contract, grid};
use crate::matrix::Matrix;
use crate::scalar::TowerScalar;
use crate::signature::Signature;
use crate::transform::apply;

fn require_arity(f: &Signature, n: usize) -> Result<()> {
    if f.arity() == n {
        Ok(())
    } else {
        Err(Error::PatternMismatch(format!(
            "expected arity {n}, got {}",
            f.arity()
        )))
    }
}

fn require_zero(f: &Signature, indices: &[usize], pattern: &str) -> Result<()> {
    for &i in indices {
        if !f.get(i).is_zero() {
            return Err(Error::PatternMismatch(format!(
                "entry {i:0w$b} is {} but {pattern} requires 0",
                f.get(i),
                w = f.arity()
            )));
        }
    }
    Ok(())
}

/// The signature `(x, 0, 0, y, 0, z, w, 0)`.
pub fn triangle_input(x: TowerScalar, y: TowerScalar, z: TowerScalar, w: TowerScalar) -> Signature {
    let o = TowerScalar::zero;
    Signature::new(3, vec![x, o(), o(), y, o(), z, w, o()]).expect("arity 3")
}

/// Three copies of `f_α = diag(1, α)^{⊗3} f` on a triangle, one dangling
/// edge per vertex. Vertex `k` reads `(d_k, e_k, e_{k-1})` where `e_k`
/// joins vertex `k` to vertex `k + 1`.
pub fn triangle(f: &Signature, alpha: &TowerScalar) -> Result<Signature> {
    require_arity(f, 3)?;
    require_zero(f, &[1, 2, 4, 7], "the (x,0,0,y,0,z,w,0) pattern")?;
    let t = Matrix::from_rows(vec![
        vec![TowerScalar::one(), TowerScalar::zero()],
        vec![TowerScalar::zero(), alpha.clone()],
    ])?;
    let fa = apply(&t, f)?;
    let g = grid(
        &[("f", fa)],
        &["f", "f", "f"],
        &[[(0, 1), (1, 2)], [(1, 1), (2, 2)], [(2, 1), (0, 2)]],
        &[(0, 0), (1, 0), (2, 0)],
    )?;
    eval_contract(&g)
}

/// The arity-4 signature with `M_[2] = [[1,0,0,a],[0,b,c,0],[0,c,b,0],[a,0,0,1]]`.
pub fn tetrahedron_input(a: TowerScalar, b: TowerScalar, c: TowerScalar) -> Signature {
    let mut v = vec![TowerScalar::zero(); 16];
    v[0b0000] = TowerScalar::one();
    v[0b1111] = TowerScalar::one();
    v[0b0011] = a.clone();
    v[0b1100] = a;
    v[0b0101] = b.clone();
    v[0b1010] = b;
    v[0b0110] = c.clone();
    v[0b1001] = c;
    Signature::new(4, v).expect("arity 4")
}

/// Four copies of `f` on the complete graph `K_4`, one dangling edge per
/// vertex.
pub fn tetrahedron(f: &Signature) -> Result<Signature> {
    require_arity(f, 4)?;
    let pattern = "the tetrahedron input pattern";
    let zeros: Vec<usize> = (0..16usize).filter(|x| x.count_ones() % 2 == 1).collect();
    require_zero(f, &zeros, pattern)?;
    let pairs = [(0b0000, 0b1111), (0b0011, 0b1100), (0b0101, 0b1010), (0b0110, 0b1001)];
    for (u, v) in pairs {
        if f.get(u) != f.get(v) {
            return Err(Error::PatternMismatch(format!(
                "entries {u:04b} = {} and {v:04b} = {} must agree for {pattern}",
                f.get(u),
                f.get(v)
            )));
        }
    }
    if !f.get(0).is_one() {
        return Err(Error::PatternMismatch(format!(
            "entry 0000 is {} but {pattern} requires 1",
            f.get(0)
        )));
    }
    // edges of K_4: e01 e02 e03 e12 e13 e23; slot 0 of each vertex dangles
    let edges = [
        [(0, 1), (1, 2)],
        [(0, 2), (2, 1)],
        [(0, 3), (3, 3)],
        [(1, 3), (2, 3)],
        [(1, 1), (3, 2)],
        [(2, 2), (3, 1)],
    ];
    let g = grid(
        &[("f", f.clone())],
        &["f", "f", "f", "f"],
        &edges,
        &[(0, 0), (3, 0), (1, 0), (2, 0)],
    )?;
    eval_contract(&g)
}

/// The 3x3 reduction `A M B` of a 4x4 matrix with equal middle rows and
/// equal middle columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompressedMatrix {
    pub matrix: Matrix,
}

impl CompressedMatrix {
    pub fn det(&self) -> TowerScalar {
        self.matrix.det().expect("square")
    }
}

pub fn compress(m: &Matrix) -> Result<CompressedMatrix> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::InvalidArgument("compress needs a 4x4 matrix".into()));
    }
    for k in 0..4 {
        if m.get(1, k) != m.get(2, k) {
            return Err(Error::Precondition(format!(
                "rows 1 and 2 differ in column {k}: {} vs {}",
                m.get(1, k),
                m.get(2, k)
            )));
        }
        if m.get(k, 1) != m.get(k, 2) {
            return Err(Error::Precondition(format!(
                "columns 1 and 2 differ in row {k}: {} vs {}",
                m.get(k, 1),
                m.get(k, 2)
            )));
        }
    }
    let half = TowerScalar::ratio(1, 2);
    let o = TowerScalar::zero;
    let a = Matrix::from_rows(vec![
        vec![TowerScalar::one(), o(), o(), o()],
        vec![o(), half.clone(), half, o()],
        vec![o(), o(), o(), TowerScalar::one()],
    ])?;
    let b = Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
    Ok(CompressedMatrix {
        matrix: a.mul(m)?.mul(&b)?,
    })
}

/// The unaries `diag(α, β)^s g` for `s = 0..=n`, and whether every two of
/// them are linearly independent.
pub fn vandermonde_demo(
    alpha: &TowerScalar,
    beta: &TowerScalar,
    g: &Signature,
    n: usize,
) -> Result<(Vec<Signature>, bool)> {
    if g.arity() != 1 {
        return Err(Error::InvalidArgument("g must be unary".into()));
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::InvalidArgument("α and β must be nonzero".into()));
    }
    let (a, b) = (g.get(0), g.get(1));
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidArgument("both entries of g must be nonzero".into()));
    }
    let mut sigs = Vec::with_capacity(n + 1);
    let (mut pa, mut pb) = (a.clone(), b.clone());
    for _ in 0..=n {
        sigs.push(Signature::unary(pa.clone(), pb.clone()));
        pa = &pa * alpha;
        pb = &pb * beta;
    }
    let independent = (0..=n).all(|s| {
        (s + 1..=n).all(|t| {
            let (u, v) = (&sigs[s], &sigs[t]);
            !(u.get(0) * v.get(1) - u.get(1) * v.get(0)).is_zero()
        })
    });
    Ok((sigs, independent))
}

/// `M_[2](f)` is zero outside its four corners and the corner matrix is
/// nonsingular.
pub fn can_interpolate_eq4(f: &Signature) -> bool {
    if f.arity() != 4 {
        return false;
    }
    let corners = [0b0000, 0b0011, 0b1100, 0b1111];
    if (0..16).any(|i| !corners.contains(&i) && !f.get(i).is_zero()) {
        return false;
    }
    let det = f.get(0b0000) * f.get(0b1111) - f.get(0b0011) * f.get(0b1100);
    !det.is_zero()
}
