//! Tractability verdicts for a table of signature sets.
//!
//! `cargo run --example classify`

use holant::classify::{classify_with, ClassifyOptions};
use holant::Signature;

fn main() -> holant::Result<()> {
    let sym = |w: &[i64]| Signature::symmetric_ints(w).unwrap();
    let table: Vec<(&str, Vec<Signature>)> = vec![
        ("{=3}", vec![Signature::equality(3)]),
        ("{[1,0,1,0,1]}", vec![sym(&[1, 0, 1, 0, 1])]),
        ("{[15,10,0,10]}", vec![sym(&[15, 10, 0, 10])]),
        ("{OR3}", vec![sym(&[0, 1, 1, 1])]),
        ("{Exact-One3}", vec![sym(&[0, 1, 0, 0])]),
        ("{[1,0,2], OR3}", vec![sym(&[1, 0, 2]), sym(&[0, 1, 1, 1])]),
        ("{[1,1,2]}", vec![sym(&[1, 1, 2])]),
    ];
    let opts = ClassifyOptions {
        csp_verdict: true,
        ..ClassifyOptions::default()
    };
    for (label, fs) in table {
        let v = classify_with(&fs, &opts)?;
        print!("{label:<16} {:?} {:?}", v.outcome, v.memberships());
        if let Some(c) = v.transform.as_ref().filter(|c| c.source != "identity") {
            let [a, b] = c.columns();
            print!(" basis ({},{}),({},{}) from {}", a[0], a[1], b[0], b[1], c.source);
        }
        if let Some(h) = v.hardness {
            print!(" [{}]", h.name());
        }
        if let Some(csp) = v.csp {
            print!(" csp-tractable={}", csp.tractable());
        }
        println!();
    }
    Ok(())
}
