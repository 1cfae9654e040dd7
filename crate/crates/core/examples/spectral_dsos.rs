// cargo run --example spectral_dsos
use dcsos::parser::{format, Style};
use dcsos::spectral::{direct_spectral, spectral_decompose, Basis, BasisKind};

fn main() -> dcsos::Result<()> {
    let p = dcsos::parse("2 + 2*x1 + 2*x2^3 + 2*x1^2*x2", 2)?;

    let direct = direct_spectral(&p)?;
    println!("direct basis: lambda+ = {}, lambda- = {}", direct.lambda_plus, direct.lambda_minus);
    println!("  v+ = {:.6?}", direct.v_plus);
    println!("  v- = {:.6?}", direct.v_minus);

    let r = spectral_decompose(&p, &BasisKind::Minimal)?;
    let names: Vec<String> = r.basis.polynomials().iter().map(|b| b.to_string()).collect();
    println!("minimal basis {names:?}");
    println!("  eigenvalues {:.4?}", r.eigen.values);
    println!("  jacobi sweeps {}, reconstruction residual {:.1e}", r.eigen.sweeps, r.eigen.reconstruction_residual(&r.gram.to_f64()));
    for t in &r.decomposition.positive {
        println!("  + {:.6} * ({})^2", dcsos::poly::rational_to_f64(&t.weight), format(&t.base, Style::Decimal));
    }
    for t in &r.decomposition.negative {
        println!("  - {:.6} * ({})^2", dcsos::poly::rational_to_f64(&t.weight), format(&t.base, Style::Decimal));
    }

    // any valid basis works; the full one is just longer
    let full = Basis::full(2, 2);
    let r = spectral_decompose(&p, &BasisKind::Custom(full))?;
    println!("full basis: {} elements, {} squares", r.basis.len(), r.decomposition.square_count());
    Ok(())
}
