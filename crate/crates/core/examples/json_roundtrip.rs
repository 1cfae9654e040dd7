// cargo run --example json_roundtrip
use dcsos::cli::{Algorithm, DecompositionDoc, Params};
use dcsos::verify::audit;

fn main() -> dcsos::Result<()> {
    let p = dcsos::parse("x1^3 - 2*x1*x2 + 1/3", 2)?;
    let algo = Algorithm::DsosSpectralMinimal;
    let params = Params::default();
    let d = algo.decompose(&p, &params)?;
    let report = audit(&p, &d, &algo.tag(&params));

    let json = serde_json::to_string_pretty(&DecompositionDoc::new(&p, algo, &d, Some(&report))).unwrap();
    println!("{json}");

    let doc: DecompositionDoc = serde_json::from_str(&json).unwrap();
    let (p2, algo2, d2) = doc.decode()?;
    let again = audit(&p2, &d2, &algo2.tag(&params));
    println!("decoded equal: {}, report equal: {}", d2 == d, again == report);
    Ok(())
}
