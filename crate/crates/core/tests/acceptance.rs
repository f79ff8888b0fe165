//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use holant::classes::{is_affine, is_product_type, is_tensor_closure_t, vector_representation};
use holant::classify::{classify, search_blockrank_violation};
use holant::evaluate::{eval_affine, eval_binary, eval_brute, eval_contract, eval_product};
use holant::gadgets::{compress, tetrahedron, tetrahedron_input, triangle, triangle_input};
use holant::transform::apply;
use holant::{Matrix, Outcome, Signature, TowerScalar};
use rand::Rng;

struct Report {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Report {
    Report { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Report {
    Report { ok: false, detail: detail.into() }
}

fn rational(rng: &mut Rng8, max: i64) -> TowerScalar {
    let d = rng.gen_range(1..=12);
    TowerScalar::ratio(rng.gen_range(0..=max * d), d)
}

fn signed_rational(rng: &mut Rng8, max: i64) -> TowerScalar {
    let d = rng.gen_range(1..=12);
    let n = rng.gen_range(-max * d..=max * d);
    TowerScalar::ratio(n, d)
}

fn tetra_formulas(a: &TowerScalar, b: &TowerScalar, c: &TowerScalar) -> [TowerScalar; 3] {
    let p = |s: &TowerScalar, e: i64| s.pow(e).unwrap();
    let abc = a * b * c;
    let x = int(1) + int(4) * &abc + int(2) * p(a, 2) * p(b, 2) + p(c, 4);
    let y = int(2) * p(c, 2) + int(4) * &abc + p(a, 4) + p(b, 4);
    let z = int(2) * (p(a, 2) + p(b, 2)) * c + int(2) * a * b * (int(1) + p(c, 2));
    [x, y, z]
}

fn two_positive(a: &TowerScalar, b: &TowerScalar, c: &TowerScalar) -> bool {
    [a, b, c].iter().filter(|s| s.is_positive()).count() >= 2
}

fn criterion_1() -> Report {
    let mut rng = rng(101);
    let mut done = 0;
    while done < 25 {
        let (a, b, c) = (rational(&mut rng, 5), rational(&mut rng, 5), rational(&mut rng, 5));
        if !two_positive(&a, &b, &c) {
            continue;
        }
        let g = match tetrahedron(&tetrahedron_input(a.clone(), b.clone(), c.clone())) {
            Ok(g) => g,
            Err(e) => return fail(format!("a={a} b={b} c={c}: {e}")),
        };
        let m = g.leading_view(2).unwrap().matrix;
        let [x, y, z] = tetra_formulas(&a, &b, &c);
        let o = int(0);
        let want = [
            [&x, &o, &o, &y],
            [&o, &z, &z, &o],
            [&o, &z, &z, &o],
            [&y, &o, &o, &x],
        ];
        for (r, row) in want.iter().enumerate() {
            for (k, w) in row.iter().enumerate() {
                if m.get(r, k) != *w {
                    return fail(format!("a={a} b={b} c={c}: M[{r}][{k}] = {} but formula gives {w}", m.get(r, k)));
                }
            }
        }
        done += 1;
    }
    pass("25 samples exact")
}

fn criterion_2() -> Report {
    let mut rng = rng(202);
    for _ in 0..25 {
        let x = signed_rational(&mut rng, 4);
        let y = signed_rational(&mut rng, 4);
        let z = signed_rational(&mut rng, 4);
        let w = signed_rational(&mut rng, 4);
        let mut alpha = signed_rational(&mut rng, 3);
        while alpha.is_zero() {
            alpha = signed_rational(&mut rng, 3);
        }
        let g = match triangle(&triangle_input(x.clone(), y.clone(), z.clone(), w.clone()), &alpha) {
            Ok(g) => g,
            Err(e) => return fail(e.to_string()),
        };
        let p = |s: &TowerScalar, e: i64| s.pow(e).unwrap();
        let first = p(&x, 3) + p(&alpha, 6) * p(&y, 3);
        let third = (&x + &(p(&alpha, 2) * &y)) * p(&alpha, 4) * &z * &w;
        let want = Signature::symmetric(&[first, int(0), third, int(0)]).unwrap();
        if g != want {
            return fail(format!("x={x} y={y} z={z} w={w} alpha={alpha}: got {g}, want {want}"));
        }
    }
    pass("25 samples exact")
}

fn criterion_3() -> Report {
    let mut rng = rng(303);
    let (mut singular, mut done) = (0, 0);
    while done < 50 {
        let a = rational(&mut rng, 3);
        let c = rational(&mut rng, 3);
        // half the samples are drawn on the surface (a^2 - b^2)^2 = (1 - c^2)^2
        let b = if done % 2 == 0 {
            let sq = &a * &a - &(int(1) - &c * &c);
            let sq = if sq.is_negative() { &a * &a + &(int(1) - &c * &c) } else { sq };
            if sq.is_negative() {
                continue;
            }
            sq.sqrt().unwrap()
        } else {
            rational(&mut rng, 3)
        };
        if !two_positive(&a, &b, &c) {
            continue;
        }
        let g = tetrahedron(&tetrahedron_input(a.clone(), b.clone(), c.clone())).unwrap();
        let det = compress(&g.leading_view(2).unwrap().matrix).unwrap().det();
        let lhs = (int(1) - &c * &c).pow(2).unwrap();
        let rhs = (&a * &a - &b * &b).pow(2).unwrap();
        if det.is_zero() != (lhs == rhs) {
            return fail(format!("a={a} b={b} c={c}: det={det}, condition {}", lhs == rhs));
        }
        singular += det.is_zero() as usize;
        done += 1;
    }
    pass(format!("50 samples, {singular} singular"))
}

fn criterion_4() -> Report {
    type Solver = fn(&holant::SignatureGrid) -> holant::Result<Signature>;
    type Maker = fn(&mut Rng8, usize) -> Signature;
    let classes: [(&str, Maker, Solver); 3] = [
        ("affine", random_affine, eval_affine),
        ("product", random_product, eval_product),
        ("binary", random_binary_type, eval_binary),
    ];
    let mut rng = rng(404);
    for (name, make, solve) in classes {
        let mut make = make;
        for k in 0..100 {
            let g = random_closed_grid(&mut rng, 8, 4, &mut make);
            let want = eval_brute(&g).unwrap();
            match solve(&g) {
                Ok(v) if v == want => {}
                Ok(v) => return fail(format!("{name} grid {k}: solver {v}, brute {want}")),
                Err(e) => return fail(format!("{name} grid {k}: {e}")),
            }
        }
    }
    let mut general = |r: &mut Rng8, n: usize| random_signature(r, n, 3);
    for k in 0..100 {
        let g = random_closed_grid(&mut rng, 8, 4, &mut general);
        let (a, b) = (eval_contract(&g).unwrap(), eval_brute(&g).unwrap());
        if a != b {
            return fail(format!("general grid {k}: contract {a}, brute {b}"));
        }
    }
    pass("3 x 100 class grids + 100 general grids")
}

/// Subdivide every edge with `=2` and transform the two sides by `T` and
/// `T^-1`.
fn two_sided(g: &holant::SignatureGrid, t: &Matrix) -> holant::SignatureGrid {
    use std::collections::BTreeMap;
    let tinv = t.inverse_2x2().unwrap();
    let tt = t.transpose();
    let mut sigs = BTreeMap::new();
    let mut names = Vec::new();
    for v in 0..g.vertices().len() {
        let name = format!("w{v}");
        sigs.insert(name.clone(), apply(&tt, g.signature_of(v)).unwrap());
        names.push(name);
    }
    sigs.insert("eq".to_string(), apply(&tinv, &Signature::equality(2)).unwrap());
    let mut edges = Vec::new();
    for (k, [p, q]) in g.edges().iter().enumerate() {
        let mid = g.vertices().len() + k;
        names.push("eq".to_string());
        edges.push([*p, (mid, 0)]);
        edges.push([(mid, 1), *q]);
    }
    holant::SignatureGrid::new(sigs, names, edges, vec![]).unwrap()
}

fn criterion_5() -> Report {
    let mut rng = rng(505);
    let h = mat(&[
        [TowerScalar::ratio(3, 5), TowerScalar::ratio(-4, 5)],
        [TowerScalar::ratio(4, 5), TowerScalar::ratio(3, 5)],
    ]);
    let mut general = |r: &mut Rng8, n: usize| random_signature(r, n, 3);
    for k in 0..50 {
        let g = random_closed_grid(&mut rng, 6, 3, &mut general);
        let want = eval_contract(&g).unwrap();
        let mut nonzero = || loop {
            let d = signed_rational(&mut rng, 3);
            if !d.is_zero() {
                return d;
            }
        };
        let (d1, d2) = (nonzero(), nonzero());
        let t = mat(&[[d1, int(0)], [int(0), d2]]);
        let got = eval_contract(&two_sided(&g, &t)).unwrap();
        if got != want {
            return fail(format!("grid {k}: two-sided diag transform gives {got}, original {want}"));
        }
        let rotated = map_grid(&g, |_, f| apply(&h, f).unwrap());
        let got = eval_contract(&rotated).unwrap();
        if got != want {
            return fail(format!("grid {k}: orthogonal transform gives {got}, original {want}"));
        }
    }
    pass("50 grids, diagonal two-sided and orthogonal")
}

/// Checks a verdict against the brute-force oracles: claimed memberships
/// must be confirmed and refused ones refuted.
fn cross_check(fs: &[Signature], outcome: Outcome, members: &[&str]) -> Result<(), String> {
    let v = classify(fs).map_err(|e| e.to_string())?;
    if v.outcome != outcome {
        return Err(format!("outcome {:?}", v.outcome));
    }
    let got = v.memberships();
    for m in members {
        if !got.contains(m) {
            return Err(format!("memberships {got:?} lack {m}"));
        }
    }
    let all_affine = fs.iter().all(oracle_affine);
    let all_product = fs.iter().all(oracle_product);
    let all_tensor = fs.iter().all(oracle_tensor);
    if v.affine != all_affine || got.contains(&"product") != all_product || v.tensor != all_tensor {
        return Err(format!(
            "memberships {got:?} disagree with oracles affine={all_affine} product={all_product} tensor={all_tensor}"
        ));
    }
    if let Some(c) = &v.transform {
        let hm = normalize_columns(&c.v);
        for f in fs {
            let g = apply(&hm.transpose(), f).map_err(|e| e.to_string())?;
            if !oracle_product(&g) {
                return Err(format!("H^T f = {g} is not product type"));
            }
            if apply(&hm, &g).map_err(|e| e.to_string())? != *f {
                return Err("H is not orthogonal".into());
            }
        }
    } else {
        // no rotation by a Pythagorean angle or a coordinate swap helps either
        for (p, q, r) in [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (1, 0, 1), (0, 1, 1)] {
            let hm = mat(&[
                [TowerScalar::ratio(p, r), TowerScalar::ratio(-q, r)],
                [TowerScalar::ratio(q, r), TowerScalar::ratio(p, r)],
            ]);
            if fs.iter().all(|f| oracle_product(&apply(&hm.transpose(), f).unwrap())) {
                return Err(format!("rotation ({p}/{r},{q}/{r}) reaches product type"));
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Report {
    let or3 = sym(&[0, 1, 1, 1]);
    let table: Vec<(&str, Vec<Signature>, Outcome, Vec<&str>)> = vec![
        ("{=3}", vec![Signature::equality(3)], Outcome::Tractable, vec!["affine", "product"]),
        ("{[1,0,1,0,1]}", vec![sym(&[1, 0, 1, 0, 1])], Outcome::Tractable, vec!["affine"]),
        ("{[15,10,0,10]}", vec![sym(&[15, 10, 0, 10])], Outcome::Tractable, vec!["holographic-product"]),
        ("{OR3}", vec![or3.clone()], Outcome::Hard, vec![]),
        ("{[0,1,0,0]}", vec![sym(&[0, 1, 0, 0])], Outcome::Hard, vec![]),
        ("{[1,0,2], OR3}", vec![sym(&[1, 0, 2]), or3], Outcome::Hard, vec![]),
    ];
    for (label, fs, outcome, members) in &table {
        if let Err(e) = cross_check(fs, *outcome, members) {
            return fail(format!("{label}: {e}"));
        }
    }
    let v = classify(&[sym(&[15, 10, 0, 10])]).unwrap();
    let [c1, c2] = v.transform.unwrap().columns();
    let cols: Vec<String> = [c1, c2].iter().map(|c| format!("({},{})", c[0], c[1])).collect();
    if cols != ["(2,1)", "(-1,2)"] {
        return fail(format!("witness columns {cols:?}"));
    }
    pass("6 fixtures, oracles agree")
}

fn criterion_7() -> Report {
    let mut count = 0;
    for n in 0..=3 {
        for f in all_signatures(n, &[0, 1, 2]) {
            let a = is_affine(&f).is_some();
            if a != oracle_affine(&f) {
                return fail(format!("is_affine({f}) = {a}"));
            }
            let p = is_product_type(&f).is_some();
            if p != oracle_product(&f) {
                return fail(format!("is_product_type({f}) = {p}"));
            }
            let t = is_tensor_closure_t(&f);
            if t != oracle_tensor(&f) {
                return fail(format!("is_tensor_closure_t({f}) = {t}"));
            }
            count += 1;
        }
    }
    pass(format!("{count} signatures"))
}

fn criterion_8() -> Report {
    for (label, f) in [("OR3", sym(&[0, 1, 1, 1])), ("[15,10,0,10]", sym(&[15, 10, 0, 10]))] {
        match search_blockrank_violation(&[f], 1, 4) {
            Ok(Some(w)) if w.violation.r() == 1 && w.grid.vertices().len() == 1 => {}
            Ok(Some(w)) => return fail(format!("{label}: violation at r={} with {} vertices", w.violation.r(), w.grid.vertices().len())),
            Ok(None) => return fail(format!("{label}: no violation found")),
            Err(e) => return fail(format!("{label}: {e}")),
        }
    }
    match search_blockrank_violation(&[Signature::equality(3)], 3, 4) {
        Ok(None) => pass("OR3 and [15,10,0,10] at r=1, =3 clean up to 3 vertices"),
        Ok(Some(w)) => fail(format!("=3: unexpected violation {}", w.function)),
        Err(e) => fail(e.to_string()),
    }
}

fn criterion_9() -> Report {
    let mut rng = rng(909);
    let mut missing = Vec::new();
    for k in 0..50 {
        let n = rng.gen_range(1..=4);
        let mask = random_affine_support(&mut rng, n);
        let f = masked_unary_product(&mut rng, n, &mask);
        match vector_representation(&f) {
            Ok(Some(units)) => {
                let ok = units.len() == n
                    && units.iter().all(|u| u.arity() == 1 && u.is_nonnegative())
                    && (0..1usize << n).all(|x| {
                        f.get(x).is_zero()
                            || *f.get(x)
                                == (0..n).map(|i| units[i].get((x >> (n - 1 - i)) & 1).clone()).product()
                    });
                if !ok {
                    return fail(format!("sample {k}: representation of {f} does not verify"));
                }
            }
            Ok(None) => missing.push(format!("{f}")),
            Err(e) => return fail(format!("sample {k}: {e}")),
        }
    }
    let or3 = vector_representation(&sym(&[0, 1, 1, 1]));
    if !matches!(or3, Ok(None)) {
        return fail(format!("OR3 gives {or3:?}"));
    }
    if missing.is_empty() {
        pass("50 samples verified, OR3 none")
    } else {
        fail(format!(
            "{} of 50 samples have no representation under the block-rank-one gate, e.g. {}",
            missing.len(),
            missing[0]
        ))
    }
}

fn main() {
    let criteria: [(&str, fn() -> Report, u64); 9] = [
        ("tetrahedron closed forms", criterion_1, 5),
        ("triangle closed form", criterion_2, 2),
        ("compressed determinant criterion", criterion_3, 2),
        ("evaluator cross-validation", criterion_4, 60),
        ("holographic invariance", criterion_5, 30),
        ("classifier fixture table", criterion_6, 10),
        ("class oracle equivalence", criterion_7, 120),
        ("block-rank-one witnesses", criterion_8, 10),
        ("vector representation", criterion_9, 10),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let report = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let ok = report.ok && in_time;
        failed += !ok as usize;
        println!(
            "{} {}. {name}: {} ({:.2} s, limit {limit} s{})",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            report.detail,
            elapsed.as_secs_f64(),
            if in_time { "" } else { ", over time" }
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
