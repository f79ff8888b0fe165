//! Exact arithmetic in towers of real quadratic extensions.
//!
//! `cargo run --example tower_arithmetic`

use holant::TowerScalar;

fn main() -> holant::Result<()> {
    let two = TowerScalar::from_int(2);
    let r2 = two.sqrt()?;
    let r3 = TowerScalar::from_int(3).sqrt()?;
    println!("sqrt(2)            = {r2}");
    println!("sqrt(2)^2          = {}", &r2 * &r2);

    // sqrt(2) + sqrt(3) lives two levels deep
    let s = &r2 + &r3;
    println!("sqrt(2)+sqrt(3)    = {s}  (depth {})", s.depth());
    println!("its square         = {}", &s * &s);
    println!("1/(sqrt2+sqrt3)    = {}", s.recip()?);

    // 5 + 2 sqrt(6) is a square in Q(sqrt2, sqrt3) but not in Q(sqrt6)
    let sq = &s * &s;
    println!("sqrt of it in Q(sqrt2,sqrt3) = {}", sq.sqrt()?);
    let t: TowerScalar = "5+2*sqrt(6)".parse()?;
    println!("sqrt of it in Q(sqrt6)       = {} (depth {})", t.sqrt()?, t.sqrt()?.depth());

    // signs are decided exactly, however close the value is to zero
    let tiny = &r2 - &TowerScalar::ratio(665_857, 470_832);
    println!("sqrt2 - 665857/470832 has sign {} (~{:.3e})", tiny.sign(), tiny.to_f64());

    let nested: TowerScalar = "1+1*sqrt(2+1*sqrt(2))".parse()?;
    println!("parsed nested radical: {nested} ~ {:.12}", nested.to_f64());
    Ok(())
}
