// cargo run --example factorization_identity
use dcsos::dcsos::{inclusion_exclusion_power, multinomial_sum};

fn main() {
    for n in 1..=4 {
        for m in 1..=6u32 {
            let lhs = inclusion_exclusion_power(n, m);
            let rhs = multinomial_sum(n, m);
            let shown = if lhs.num_terms() <= 4 { lhs.to_string() } else { format!("{} terms", lhs.num_terms()) };
            println!("n={n} m={m}  {}  {shown}", if lhs == rhs { "ok " } else { "BAD" });
        }
    }
}
