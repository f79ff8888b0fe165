//! Holographic transformations: orthogonal candidates, product-type
//! witnesses, and invariance of the Holant value.
//!
//! `cargo run --example holographic`

use holant::evaluate::{eval_brute, grid};
use holant::transform::{apply, eigenbasis, ortho_candidates, transformable_to_p};
use holant::{Matrix, Signature, TowerScalar};

fn main() -> holant::Result<()> {
    let f = Signature::symmetric_ints(&[15, 10, 0, 10])?;
    println!("f = [15,10,0,10], gram A_0 =\n{}", f.gram(0)?);
    println!("eigenbasis:\n{}", eigenbasis(&f.gram(0)?)?.expect("distinct eigenvalues"));
    for c in ortho_candidates(std::slice::from_ref(&f))? {
        let [a, b] = c.columns();
        println!("candidate {:<16} ({}, {}), ({}, {})", c.source, a[0], a[1], b[0], b[1]);
    }
    let w = transformable_to_p(std::slice::from_ref(&f))?.expect("transformable");
    let g = apply(&w.v.transpose(), &f)?;
    println!("V^T f = {g}  (support on 000 and 111 only)");

    // orthogonal transforms leave closed grids unchanged
    let h = Matrix::from_rows(vec![
        vec![TowerScalar::ratio(3, 5), TowerScalar::ratio(-4, 5)],
        vec![TowerScalar::ratio(4, 5), TowerScalar::ratio(3, 5)],
    ])?;
    let theta = grid(
        &[("f", f.clone())],
        &["f", "f"],
        &[[(0, 0), (1, 0)], [(0, 1), (1, 1)], [(0, 2), (1, 2)]],
        &[],
    )?;
    let rotated = grid(
        &[("f", apply(&h, &f)?)],
        &["f", "f"],
        &[[(0, 0), (1, 0)], [(0, 1), (1, 1)], [(0, 2), (1, 2)]],
        &[],
    )?;
    println!(
        "theta graph: {} before, {} after rotating by (3/5,4/5),(-4/5,3/5)",
        eval_brute(&theta)?,
        eval_brute(&rotated)?
    );

    let or3 = Signature::symmetric_ints(&[0, 1, 1, 1])?;
    println!(
        "OR3 transformable to product type: {}",
        transformable_to_p(&[or3])?.is_some()
    );
    Ok(())
}
