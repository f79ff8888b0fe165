//! Vector representations of non-negative signatures.
//!
//! `cargo run --example vector_representation`

use holant::classes::vector_representation;
use holant::Signature;

fn show(label: &str, f: &Signature) -> holant::Result<()> {
    match vector_representation(f)? {
        Some(units) => {
            let parts: Vec<String> = units.iter().map(|u| u.to_string()).collect();
            println!("{label:<24} {}", parts.join(" "));
        }
        None => println!("{label:<24} none"),
    }
    Ok(())
}

fn main() -> holant::Result<()> {
    show("[1,0,2]", &Signature::symmetric_ints(&[1, 0, 2])?)?;
    show("=3", &Signature::equality(3))?;
    show("[1,2] (x) [3,5]", &Signature::from_ints(&[1, 2])?.tensor(&Signature::from_ints(&[3, 5])?))?;
    // unaries [1,2],[1,3],[1,5] masked by the even-weight subspace
    let mut v = vec![0i64; 8];
    for x in 0..8usize {
        if x.count_ones() % 2 == 0 {
            let pick = |bit: usize, b: i64| if (x >> (2 - bit)) & 1 == 1 { b } else { 1 };
            v[x] = pick(0, 2) * pick(1, 3) * pick(2, 5);
        }
    }
    show("even mask of [1,2][1,3][1,5]", &Signature::from_ints(&v)?)?;
    show("OR3", &Signature::symmetric_ints(&[0, 1, 1, 1])?)?;
    show("[1,1,2]", &Signature::symmetric_ints(&[1, 1, 2])?)?;
    Ok(())
}
