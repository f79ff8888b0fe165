//! Triangle and tetrahedron gadgets, the compressed matrix, and the
//! Vandermonde condition used for interpolation.
//!
//! `cargo run --example gadgets`

use holant::gadgets::{
    can_interpolate_eq4, compress, tetrahedron, tetrahedron_input, triangle, triangle_input,
    vandermonde_demo,
};
use holant::{Signature, TowerScalar};

fn main() -> holant::Result<()> {
    let q = TowerScalar::from_int;
    let f = triangle_input(q(1), q(2), q(3), q(4));
    println!("triangle on (1,0,0,2,0,3,4,0): {}", triangle(&f, &q(1))?);
    println!("  with alpha = 1/2:            {}", triangle(&f, &TowerScalar::ratio(1, 2))?);

    for (a, b, c) in [(1, 1, 1), (1, 2, 0), (2, 1, 3)] {
        let g = tetrahedron(&tetrahedron_input(q(a), q(b), q(c)))?;
        let m = g.leading_view(2)?.matrix;
        let mt = compress(&m)?;
        println!(
            "tetrahedron a={a} b={b} c={c}: x={} y={} z={}  det of compressed = {}",
            m.get(0, 0),
            m.get(0, 3),
            m.get(1, 1),
            mt.det()
        );
    }

    let g = Signature::from_ints(&[1, 1])?;
    for (alpha, beta, n) in [(1, 2, 4), (1, -1, 2), (2, 2, 1)] {
        let (_, ok) = vandermonde_demo(&q(alpha), &q(beta), &g, n)?;
        println!("diag({alpha},{beta})^s [1,1], s <= {n}: pairwise independent = {ok}");
    }
    println!("=4 interpolable: {}", can_interpolate_eq4(&Signature::equality(4)));
    Ok(())
}
