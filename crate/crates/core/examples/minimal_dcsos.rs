// cargo run --example minimal_dcsos
use dcsos::dcsos::{dcsos_minimal_direct, dcsos_minimal_monomial, dcsos_polynomial, DcsosAlgorithm};
use dcsos::poly::int;
use dcsos::{Exponent, Monomial};

fn main() -> dcsos::Result<()> {
    let m = Monomial::new(int(-2), Exponent::new(vec![3, 1, 2]));

    let d = dcsos_minimal_monomial(&m)?;
    println!("subset expansion: {} + {} terms, degree {}", d.g.len(), d.h.len(), d.degree());
    for t in &d.g {
        println!("  g: {} * {}", t.weight, t.cert);
    }
    for t in &d.h {
        println!("  h: {} * {}", t.weight, t.cert);
    }

    let d = dcsos_minimal_direct(&m)?;
    println!("direct formulation: {} terms, degree {}", d.square_count(), d.degree());

    let p = dcsos::parse("x1^3 - x1*x2 + 4", 2)?;
    let d = dcsos_polynomial(&p, DcsosAlgorithm::Minimal)?;
    let (g, h) = d.components();
    println!("{p} = ({g}) - ({h})");
    Ok(())
}
