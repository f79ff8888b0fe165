//! Evaluating signature grids with every available method.
//!
//! `cargo run --example evaluate`

use holant::evaluate::{cycle, eval_auto, eval_with_method, grid, Limits};
use holant::{Method, Signature, SignatureGrid};

fn report(label: &str, g: &SignatureGrid) -> holant::Result<()> {
    let (value, method) = eval_auto(g)?;
    print!("{label:<28} auto[{method}] = {value}");
    for m in [Method::Brute, Method::Contract, Method::Affine, Method::Product, Method::Binary] {
        if m == method {
            continue;
        }
        if let Ok(v) = eval_with_method(g, m, &Limits::default()) {
            assert_eq!(v, value);
            print!("  {m}={v}");
        }
    }
    println!();
    Ok(())
}

fn main() -> holant::Result<()> {
    // perfect matchings of K4
    let exact_one = Signature::symmetric_ints(&[0, 1, 0, 0])?;
    let k4 = grid(
        &[("e", exact_one)],
        &["e"; 4],
        &[
            [(0, 0), (1, 0)],
            [(0, 1), (2, 0)],
            [(0, 2), (3, 0)],
            [(1, 1), (2, 1)],
            [(1, 2), (3, 1)],
            [(2, 2), (3, 2)],
        ],
        &[],
    )?;
    report("K4 Exact-One", &k4)?;

    report("3-cycle of =2", &cycle(&Signature::equality(2), 3)?)?;
    report("10-cycle of [1,0,2]", &cycle(&Signature::symmetric_ints(&[1, 0, 2])?, 10)?)?;
    report("5-cycle of [1,1,2]", &cycle(&Signature::symmetric_ints(&[1, 1, 2])?, 5)?)?;

    let even4 = Signature::symmetric_ints(&[1, 0, 1, 0, 1])?;
    let mixed = grid(
        &[("h", even4), ("eq", Signature::equality(2))],
        &["h", "h", "eq", "eq"],
        &[
            [(0, 0), (1, 0)],
            [(0, 1), (1, 1)],
            [(0, 2), (2, 0)],
            [(2, 1), (1, 2)],
            [(0, 3), (3, 0)],
            [(3, 1), (1, 3)],
        ],
        &[],
    )?;
    report("[1,0,1,0,1] with =2", &mixed)?;

    // an open gate realizes a function of its dangling edges
    let path = grid(
        &[("g", Signature::symmetric_ints(&[1, 0, 2])?)],
        &["g", "g", "g"],
        &[[(0, 1), (1, 0)], [(1, 1), (2, 0)]],
        &[(0, 0), (2, 1)],
    )?;
    let (f, m) = eval_auto(&path)?;
    println!("path gate [{m}] realizes {f}");
    Ok(())
}
