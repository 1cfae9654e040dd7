// cargo run --example parity_dsos
use dcsos::dsos::{dsos_parity_improved, dsos_parity_monomial, dsos_polynomial, ParityAlgorithm};
use dcsos::poly::{int, ParitySplit};
use dcsos::{Exponent, Monomial};

fn show(label: &str, d: &dcsos::dsos::DsosDecomposition) {
    println!("{label}");
    for t in &d.positive {
        println!("  + {} * ({})^2", t.weight, t.base);
    }
    for t in &d.negative {
        println!("  - {} * ({})^2", t.weight, t.base);
    }
}

fn main() -> dcsos::Result<()> {
    let m = Monomial::new(int(-2), Exponent::new(vec![3, 5]));

    // odd part chosen by hand: o = x1^3 x2, e = x2^2
    let split = ParitySplit::explicit(&m.exponent, &Exponent::new(vec![3, 1]))?;
    show("three squares, o = x1^3*x2, s = 1", &dsos_parity_monomial(&m, &int(1), &split)?);
    show("three squares, minimal o", &dsos_parity_monomial(&m, &int(1), &ParitySplit::minimal(&m.exponent))?);
    show("procedure D", &dsos_parity_improved(&m));

    let p = dcsos::parse("x1*x2*x3*x4 - 3*x1^3 + x2", 4)?;
    let d = dsos_polynomial(&p, &ParityAlgorithm::Improved)?;
    show(&format!("improved parity on {p}"), &d);
    Ok(())
}
