// cargo run --example parse_and_format
use dcsos::parser::{format, parse_expr, Style};

fn main() -> dcsos::Result<()> {
    let ast = parse_expr("(x1 - x2)^2 * x3 + 1/2")?;
    let n = ast.min_nvars();
    let p = ast.to_polynomial(n)?;
    println!("nvars   {n}");
    println!("plain   {}", format(&p, Style::Plain));
    println!("latex   {}", format(&p, Style::Latex));
    println!("degree  {}  terms {}", p.degree(), p.num_terms());

    for bad in ["x1 / x2", "2x1", "0.5*x1", "x0"] {
        match dcsos::parse(bad, 2) {
            Ok(p) => println!("{bad:>8} -> {p}"),
            Err(e) => println!("{bad:>8} -> {e}"),
        }
    }
    Ok(())
}
