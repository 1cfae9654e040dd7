// cargo run --example verify_audit
use dcsos::cli::{Algorithm, Params};
use dcsos::poly::rat;
use dcsos::verify::audit;

fn main() -> dcsos::Result<()> {
    let p = dcsos::parse("x1^2*x2 - 3*x1*x2^3 + x3", 3)?;
    let params = Params::default();
    for algo in Algorithm::ALL {
        let d = algo.decompose(&p, &params)?;
        let r = audit(&p, &d, &algo.tag(&params));
        println!("{:<24} {} squares, degree {}, {}", algo.id(), r.square_count, r.component_degree, if r.passed() { "PASS" } else { "FAIL" });
    }

    // a perturbed weight is caught by the expansion check
    let algo = Algorithm::DcsosMinimal;
    let mut d = algo.decompose(&p, &params)?;
    d.perturb_weight(0, &rat(1, 1000));
    println!("\nperturbed:\n{}", audit(&p, &d, &algo.tag(&params)));
    Ok(())
}
