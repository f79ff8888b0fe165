//! Signature tables, matrix views and irreducible tensor factorization.
//!
//! `cargo run --example factorize`

use holant::classes::{is_affine, is_product_type, is_tensor_closure_t};
use holant::Signature;

fn main() -> holant::Result<()> {
    let eq2 = Signature::equality(2);
    let u = Signature::from_ints(&[1, 3])?;
    let f = eq2.tensor(&u).permute(&[0, 2, 1])?.scale(&5.into());
    println!("f = 5 * (=2 on x0,x2) (x) [1,3] on x1");
    println!("values: {f}");

    let fz = f.factorize()?;
    println!("scalar {}", fz.scalar);
    for factor in &fz.factors {
        println!("  positions {:?}: {}", factor.positions, factor.signature);
    }
    assert_eq!(fz.reassemble(), f);

    let view = f.matrix_view(&[1])?;
    println!("M with row position 1:\n{}", view.matrix);

    println!("tensor closure: {}", is_tensor_closure_t(&f));
    println!("product type:   {}", is_product_type(&f).is_some());
    match is_affine(&f) {
        Some(w) => println!("affine: offset {:0b}, basis {:?}", w.offset, w.basis),
        None => println!("affine: no"),
    }

    let or3 = Signature::symmetric_ints(&[0, 1, 1, 1])?;
    println!("OR3 factors: {}", or3.factorize()?.factors.len());
    println!("OR3 pinned x0=0: {}", or3.pin(0, 0)?);
    println!("OR3 marginal f^[2]: {}", or3.marginal(2)?);
    println!("OR3 gram at 0:\n{}", or3.gram(0)?);
    Ok(())
}
