// cargo run --release --example bench_corpus
use dcsos::cli::{cmd_bench, CorpusParams, RunConfig};

fn main() -> dcsos::Result<()> {
    let cfg = RunConfig {
        corpus: CorpusParams {
            count: 20,
            min_nvars: 3,
            max_nvars: 3,
            min_degree: 6,
            max_degree: 6,
            ..CorpusParams::default()
        },
        timing: false,
        ..RunConfig::default()
    };
    print!("{}", cmd_bench(&cfg)?.text);
    Ok(())
}
