// cargo run --example parity_dcsos
use dcsos::dcsos::{dcsos_parity_monomial, multiply_left_to_right, procedure_m, procedure_s};
use dcsos::poly::int;
use dcsos::{Exponent, Monomial};

fn main() -> dcsos::Result<()> {
    let m = Monomial::new(int(3), Exponent::new(vec![1, 2]));
    let d = dcsos_parity_monomial(&m, false);
    println!("{}", m.to_polynomial());
    for t in &d.g {
        println!("  g: {} * {}", t.weight, t.cert);
    }
    for t in &d.h {
        println!("  h: {} * {}", t.weight, t.cert);
    }

    // multiplication order decides the component degree
    let alpha = Exponent::new(vec![3, 1, 2, 2, 1, 1]);
    println!("{alpha}: {} items after procedure S", procedure_s(&alpha).len());
    let balanced = procedure_m(procedure_s(&alpha))?;
    let chained = multiply_left_to_right(procedure_s(&alpha))?;
    println!("  procedure M   degree {}", balanced.degree());
    println!("  left to right degree {}", chained.degree());
    Ok(())
}
