//! Searching small gates for a function whose signature matrix is not
//! block-rank-one.
//!
//! `cargo run --example balance_witness`

use holant::classify::{check_balance, search_blockrank_violation};
use holant::Signature;

fn main() -> holant::Result<()> {
    let sym = |w: &[i64]| Signature::symmetric_ints(w).unwrap();
    let sets = [
        ("OR3", vec![sym(&[0, 1, 1, 1])], 1),
        ("[15,10,0,10]", vec![sym(&[15, 10, 0, 10])], 1),
        ("=3", vec![Signature::equality(3)], 3),
        ("[1,0,1,0,1]", vec![sym(&[1, 0, 1, 0, 1])], 2),
    ];
    for (label, fs, budget) in sets {
        match search_blockrank_violation(&fs, budget, 4)? {
            Some(w) => {
                println!(
                    "{label:<14} gate with {} vertices realizes {}",
                    w.grid.vertices().len(),
                    w.function
                );
                println!(
                    "{:<14} rows {:?} of M over positions {:?} are neither parallel nor orthogonal",
                    "", w.violation.rows, w.violation.row_positions
                );
            }
            None => println!("{label:<14} balanced up to {budget} vertices"),
        }
    }
    let f = sym(&[2, 1, 1]);
    println!("[2,1,1] direct check: {:?}", check_balance(&f).map(|v| v.rows));
    Ok(())
}
