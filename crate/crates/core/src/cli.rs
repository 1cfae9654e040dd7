//! Command implementations behind the `dcsos` binary.
//!
//! Commands return their output as strings so they can be driven from tests
//! and examples; the binary only handles argument parsing, I/O and exit codes.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dcsos::{dcsos_polynomial, CertTerm, ConvexCertificate, DcsosAlgorithm, DcsosDecomposition};
use crate::dsos::{dsos_polynomial, DsosDecomposition, Exactness, ParityAlgorithm, SquareTerm};
use crate::error::{Error, Result};
use crate::parser::{format, parse, parse_expr, Style};
use crate::poly::{Exponent, ParityRule, Polynomial, Rational};
use crate::spectral::{direct_spectral, dsos_spectral, spectral_decompose, BasisKind};
use crate::verify::{audit, AlgoTag, Decomposition, VerificationReport};

/// Environment variable holding the default output format (`text` or `json`).
pub const FORMAT_ENV: &str = "DCSOS_FORMAT";

/// Decomposition algorithms selectable by id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    DsosParity,
    DsosParityImproved,
    DsosSpectralDirect,
    DsosSpectralMinimal,
    DcsosParity,
    DcsosParityImproved,
    DcsosMinimal,
    DcsosDirect,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::DsosParity,
        Algorithm::DsosParityImproved,
        Algorithm::DsosSpectralDirect,
        Algorithm::DsosSpectralMinimal,
        Algorithm::DcsosParity,
        Algorithm::DcsosParityImproved,
        Algorithm::DcsosMinimal,
        Algorithm::DcsosDirect,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::DsosParity => "dsos-parity",
            Algorithm::DsosParityImproved => "dsos-parity-improved",
            Algorithm::DsosSpectralDirect => "dsos-spectral-direct",
            Algorithm::DsosSpectralMinimal => "dsos-spectral-minimal",
            Algorithm::DcsosParity => "dcsos-parity",
            Algorithm::DcsosParityImproved => "dcsos-parity-improved",
            Algorithm::DcsosMinimal => "dcsos-minimal",
            Algorithm::DcsosDirect => "dcsos-direct",
        }
    }

    pub fn is_dcsos(&self) -> bool {
        matches!(
            self,
            Algorithm::DcsosParity | Algorithm::DcsosParityImproved | Algorithm::DcsosMinimal | Algorithm::DcsosDirect
        )
    }

    pub fn tag(&self, params: &Params) -> AlgoTag {
        match self {
            Algorithm::DsosParity => AlgoTag::DsosParity(params.rule.clone()),
            Algorithm::DsosParityImproved => AlgoTag::DsosParityImproved,
            Algorithm::DsosSpectralDirect => AlgoTag::DsosSpectralDirect,
            Algorithm::DsosSpectralMinimal => AlgoTag::DsosSpectralMinimal,
            Algorithm::DcsosParity => AlgoTag::DcsosParity,
            Algorithm::DcsosParityImproved => AlgoTag::DcsosParityImproved,
            Algorithm::DcsosMinimal => AlgoTag::DcsosMinimal,
            Algorithm::DcsosDirect => AlgoTag::DcsosDirect,
        }
    }

    /// Runs the algorithm. Spectral routes return the trivial exact
    /// decomposition for constant inputs.
    pub fn decompose(&self, p: &Polynomial, params: &Params) -> Result<Decomposition> {
        let dcsos = |a| dcsos_polynomial(p, a).map(Decomposition::Dcsos);
        match self {
            Algorithm::DsosParity => dsos_polynomial(
                p,
                &ParityAlgorithm::Basic {
                    s: params.s.clone(),
                    rule: params.rule.clone(),
                },
            )
            .map(Decomposition::Dsos),
            Algorithm::DsosParityImproved => dsos_polynomial(p, &ParityAlgorithm::Improved).map(Decomposition::Dsos),
            Algorithm::DsosSpectralDirect => {
                if p.degree() == 0 {
                    Ok(Decomposition::Dsos(DsosDecomposition::constant(p.nvars(), &p.constant_term())))
                } else {
                    Ok(Decomposition::Dsos(direct_spectral(p)?.decomposition))
                }
            }
            Algorithm::DsosSpectralMinimal => dsos_spectral(p, &BasisKind::Minimal).map(Decomposition::Dsos),
            Algorithm::DcsosParity => dcsos(DcsosAlgorithm::Parity),
            Algorithm::DcsosParityImproved => dcsos(DcsosAlgorithm::ParityImproved),
            Algorithm::DcsosMinimal => dcsos(DcsosAlgorithm::Minimal),
            Algorithm::DcsosDirect => dcsos(DcsosAlgorithm::Direct),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .iter()
            .copied()
            .find(|a| a.id() == s)
            .ok_or_else(|| {
                let ids: Vec<&str> = Algorithm::ALL.iter().map(|a| a.id()).collect();
                Error::Parameter(format!("unknown algorithm '{s}' (expected one of {})", ids.join(", ")))
            })
    }
}

/// Extra algorithm parameters (only the basic parity DSOS uses them).
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub s: Rational,
    pub rule: ParityRule,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            s: Rational::one(),
            rule: ParityRule::Minimal,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Parameter(format!("unknown output format '{other}'"))),
        }
    }
}

/// Random corpus shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusParams {
    pub count: usize,
    pub min_nvars: usize,
    pub max_nvars: usize,
    pub min_degree: u32,
    pub max_degree: u32,
    pub max_terms: usize,
    /// Per-variable exponent cap.
    pub max_exponent: Option<u32>,
    /// Coefficients are nonzero integers in `[−coeff_max, coeff_max]`.
    pub coeff_max: i64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            count: 200,
            min_nvars: 1,
            max_nvars: 4,
            min_degree: 1,
            max_degree: 8,
            max_terms: 8,
            max_exponent: None,
            coeff_max: 9,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Decompose,
    Verify,
    Bench,
}

/// Everything a command needs.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub algorithm: Algorithm,
    /// Number of variables; inferred from the input when `None`.
    pub nvars: Option<usize>,
    pub params: Params,
    pub seed: u64,
    pub format: OutputFormat,
    pub corpus: CorpusParams,
    /// Restricts `bench` to these algorithms (all when empty).
    pub bench_algorithms: Vec<Algorithm>,
    /// Omit wall-clock columns so `bench` output is byte-identical across runs.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Decompose,
            algorithm: Algorithm::DcsosMinimal,
            nvars: None,
            params: Params::default(),
            seed: 1,
            format: OutputFormat::Text,
            corpus: CorpusParams::default(),
            bench_algorithms: Vec::new(),
            timing: true,
        }
    }
}

/// Output of a command plus whether it succeeded (audit passed).
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    pub success: bool,
}

/// Parses `text` with an explicit or inferred number of variables.
pub fn parse_input(text: &str, nvars: Option<usize>) -> Result<Polynomial> {
    match nvars {
        Some(n) => parse(text, n),
        None => {
            let ast = parse_expr(text)?;
            ast.to_polynomial(ast.min_nvars().max(1))
        }
    }
}

/// Parses a parity split such as `x1^3*x2` into an exponent over `nvars` variables.
pub fn parse_split(text: &str, nvars: usize) -> Result<Exponent> {
    let p = parse(text, nvars)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((e, c)), None) if c.is_one() => Ok(e.clone()),
        _ => Err(Error::Parameter(format!("split '{text}' is not a monic monomial"))),
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Serialization(format!("malformed rational '{text}'"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// `num/den`, denominator always present.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Serialized certificate tree. Variables are 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertDoc {
    AffineSquare { base: String },
    EvenPower { var: usize, exponent: u32 },
    Scale { factor: String, child: Box<CertDoc> },
    Sum { children: Vec<CertDoc> },
    Power { child: Box<CertDoc>, exponent: u32 },
}

impl CertDoc {
    pub fn from_cert(c: &ConvexCertificate) -> Self {
        match c {
            ConvexCertificate::AffineSquare(l) => CertDoc::AffineSquare {
                base: format(l, Style::Plain),
            },
            ConvexCertificate::EvenPower { var, exponent } => CertDoc::EvenPower {
                var: var + 1,
                exponent: *exponent,
            },
            ConvexCertificate::Scale(k, child) => CertDoc::Scale {
                factor: rational_string(k),
                child: Box::new(Self::from_cert(child)),
            },
            ConvexCertificate::Sum(children) => CertDoc::Sum {
                children: children.iter().map(Self::from_cert).collect(),
            },
            ConvexCertificate::Power(child, k) => CertDoc::Power {
                child: Box::new(Self::from_cert(child)),
                exponent: *k,
            },
        }
    }

    pub fn to_cert(&self, nvars: usize) -> Result<ConvexCertificate> {
        let c = match self {
            CertDoc::AffineSquare { base } => ConvexCertificate::AffineSquare(parse(base, nvars)?),
            CertDoc::EvenPower { var, exponent } => {
                if *var == 0 {
                    return Err(Error::Serialization("variables are numbered from 1".into()));
                }
                ConvexCertificate::EvenPower {
                    var: var - 1,
                    exponent: *exponent,
                }
            }
            CertDoc::Scale { factor, child } => {
                ConvexCertificate::Scale(parse_rational(factor)?, Box::new(child.to_cert(nvars)?))
            }
            CertDoc::Sum { children } => ConvexCertificate::Sum(
                children.iter().map(|c| c.to_cert(nvars)).collect::<Result<_>>()?,
            ),
            CertDoc::Power { child, exponent } => ConvexCertificate::Power(Box::new(child.to_cert(nvars)?), *exponent),
        };
        c.validate(nvars)?;
        Ok(c)
    }
}

/// One weighted square (`base`) or certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDoc {
    pub weight: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertDoc>,
    /// Human-readable rendering of the certificate; ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

/// Eigen-information reported by the spectral routes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_plus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_minus: Option<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub eigenvalues: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
}

/// JSON form of a decomposition with its audit report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionDoc {
    pub input: String,
    pub algorithm: String,
    pub nvars: usize,
    #[serde(default = "default_exactness")]
    pub exactness: Exactness,
    pub positive: Vec<TermDoc>,
    pub negative: Vec<TermDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectral: Option<SpectralDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<serde_json::Value>,
}

fn default_exactness() -> Exactness {
    Exactness::Exact
}

fn square_docs(ts: &[SquareTerm]) -> Vec<TermDoc> {
    ts.iter()
        .map(|t| TermDoc {
            weight: rational_string(&t.weight),
            base: Some(format(&t.base, Style::Plain)),
            certificate: None,
            text: None,
        })
        .collect()
}

fn cert_docs(ts: &[CertTerm]) -> Vec<TermDoc> {
    ts.iter()
        .map(|t| TermDoc {
            weight: rational_string(&t.weight),
            base: None,
            certificate: Some(CertDoc::from_cert(&t.cert)),
            text: Some(t.cert.to_string()),
        })
        .collect()
}

impl DecompositionDoc {
    pub fn new(p: &Polynomial, algorithm: Algorithm, d: &Decomposition, report: Option<&VerificationReport>) -> Self {
        let (exactness, positive, negative) = match d {
            Decomposition::Dsos(d) => (d.exactness, square_docs(&d.positive), square_docs(&d.negative)),
            Decomposition::Dcsos(d) => (Exactness::Exact, cert_docs(&d.g), cert_docs(&d.h)),
        };
        DecompositionDoc {
            input: format(p, Style::Plain),
            algorithm: algorithm.id().to_string(),
            nvars: p.nvars(),
            exactness,
            positive,
            negative,
            spectral: None,
            report: report.map(|r| serde_json::to_value(r).expect("report serializes")),
        }
    }

    /// Rebuilds `(input, algorithm, decomposition)`.
    pub fn decode(&self) -> Result<(Polynomial, Algorithm, Decomposition)> {
        let p = parse(&self.input, self.nvars)?;
        let algorithm: Algorithm = self.algorithm.parse()?;
        let n = self.nvars;
        let d = if algorithm.is_dcsos() {
            let side = |ts: &[TermDoc]| -> Result<Vec<CertTerm>> {
                ts.iter()
                    .map(|t| {
                        let cert = t
                            .certificate
                            .as_ref()
                            .ok_or_else(|| Error::Serialization("DCSOS term without certificate".into()))?
                            .to_cert(n)?;
                        Ok(CertTerm {
                            weight: parse_rational(&t.weight)?,
                            cert,
                        })
                    })
                    .collect()
            };
            Decomposition::Dcsos(DcsosDecomposition {
                nvars: n,
                g: side(&self.positive)?,
                h: side(&self.negative)?,
            })
        } else {
            let side = |ts: &[TermDoc]| -> Result<Vec<SquareTerm>> {
                ts.iter()
                    .map(|t| {
                        let base = t
                            .base
                            .as_ref()
                            .ok_or_else(|| Error::Serialization("DSOS term without base".into()))?;
                        Ok(SquareTerm {
                            weight: parse_rational(&t.weight)?,
                            base: parse(base, n)?,
                        })
                    })
                    .collect()
            };
            Decomposition::Dsos(DsosDecomposition {
                nvars: n,
                positive: side(&self.positive)?,
                negative: side(&self.negative)?,
                exactness: self.exactness,
            })
        };
        Ok((p, algorithm, d))
    }
}

fn spectral_doc(p: &Polynomial, algorithm: Algorithm) -> Option<SpectralDoc> {
    if p.degree() == 0 {
        return None;
    }
    match algorithm {
        Algorithm::DsosSpectralDirect => direct_spectral(p).ok().map(|r| SpectralDoc {
            lambda_plus: Some(r.lambda_plus),
            lambda_minus: Some(r.lambda_minus),
            eigenvalues: Vec::new(),
            basis: r.basis.elements().iter().map(|e| e.to_string()).collect(),
        }),
        Algorithm::DsosSpectralMinimal => spectral_decompose(p, &BasisKind::Minimal).ok().map(|r| SpectralDoc {
            lambda_plus: None,
            lambda_minus: None,
            eigenvalues: r.eigen.values.clone(),
            basis: r.basis.elements().iter().map(|e| e.to_string()).collect(),
        }),
        _ => None,
    }
}

fn weight_text(w: &Rational, style: Style) -> String {
    if w.is_one() {
        return String::new();
    }
    match style {
        Style::Decimal => format!("{} * ", format(&Polynomial::constant(1, w.clone()), Style::Decimal)),
        _ => format!("{w} * "),
    }
}

fn render_text(p: &Polynomial, algorithm: Algorithm, d: &Decomposition, spectral: Option<&SpectralDoc>, report: &VerificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "input:      {}", format(p, Style::Plain));
    let _ = writeln!(out, "algorithm:  {}", algorithm.id());
    let (s1, s2) = d.components();
    let (pos, neg): (Vec<String>, Vec<String>) = match d {
        Decomposition::Dsos(d) => {
            let _ = writeln!(
                out,
                "exactness:  {}",
                if d.exactness == Exactness::Exact { "exact" } else { "floating" }
            );
            let style = match d.exactness {
                Exactness::Exact => Style::Plain,
                Exactness::Floating => Style::Decimal,
            };
            let f = |ts: &[SquareTerm]| {
                ts.iter()
                    .map(|t| format!("{}({})^2", weight_text(&t.weight, style), format(&t.base, style)))
                    .collect()
            };
            (f(&d.positive), f(&d.negative))
        }
        Decomposition::Dcsos(d) => {
            let f = |ts: &[CertTerm]| {
                ts.iter()
                    .map(|t| format!("{}{}", weight_text(&t.weight, Style::Plain), t.cert))
                    .collect()
            };
            (f(&d.g), f(&d.h))
        }
    };
    if let Some(sp) = spectral {
        if let (Some(lp), Some(lm)) = (sp.lambda_plus, sp.lambda_minus) {
            let _ = writeln!(out, "eigenvalues: lambda+ = {lp}, lambda- = {lm}");
        } else if !sp.eigenvalues.is_empty() {
            let vals: Vec<String> = sp.eigenvalues.iter().map(|v| format!("{v:.6}")).collect();
            let _ = writeln!(out, "eigenvalues: {}", vals.join(", "));
        }
    }
    let mut section = |name: &str, terms: &[String], comp: &Polynomial| {
        let noun = if terms.len() == 1 { "term" } else { "terms" };
        let _ = writeln!(out, "{name} ({} {noun}, degree {}):", terms.len(), comp.degree());
        for t in terms {
            let _ = writeln!(out, "  {t}");
        }
    };
    section("positive", &pos, &s1);
    section("negative", &neg, &s2);
    let _ = writeln!(out, "{report}");
    out
}

/// Decomposes `input` and audits the result.
pub fn cmd_decompose(cfg: &RunConfig, input: &str) -> Result<CommandOutput> {
    let p = parse_input(input.trim(), cfg.nvars)?;
    let d = cfg.algorithm.decompose(&p, &cfg.params)?;
    let report = audit(&p, &d, &cfg.algorithm.tag(&cfg.params));
    let spectral = spectral_doc(&p, cfg.algorithm);
    let text = match cfg.format {
        OutputFormat::Text => render_text(&p, cfg.algorithm, &d, spectral.as_ref(), &report),
        OutputFormat::Json => {
            let mut doc = DecompositionDoc::new(&p, cfg.algorithm, &d, Some(&report));
            doc.spectral = spectral;
            serde_json::to_string_pretty(&doc).map_err(|e| Error::Serialization(e.to_string()))? + "\n"
        }
    };
    Ok(CommandOutput {
        text,
        success: report.passed(),
    })
}

fn strip_elapsed(v: &serde_json::Value) -> serde_json::Value {
    let mut v = v.clone();
    if let Some(o) = v.as_object_mut() {
        o.remove("elapsed_ms");
    }
    v
}

/// Re-audits a serialized decomposition. The audit uses the parameters in
/// `cfg` (relevant only for `dsos-parity` with an explicit split).
pub fn cmd_verify(cfg: &RunConfig, json: &str) -> Result<CommandOutput> {
    let doc: DecompositionDoc = serde_json::from_str(json).map_err(|e| Error::Serialization(e.to_string()))?;
    let (p, algorithm, d) = doc.decode()?;
    let report = audit(&p, &d, &algorithm.tag(&cfg.params));
    let fresh = serde_json::to_value(&report).expect("report serializes");
    let stored_matches = doc
        .report
        .as_ref()
        .map(|stored| strip_elapsed(stored) == strip_elapsed(&fresh));
    let text = match cfg.format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "input:      {}", doc.input);
            let _ = writeln!(out, "algorithm:  {}", algorithm.id());
            let _ = writeln!(out, "{report}");
            match stored_matches {
                Some(true) => out.push_str("stored report: identical\n"),
                Some(false) => out.push_str("stored report: DIFFERS\n"),
                None => {}
            }
            out
        }
        OutputFormat::Json => {
            let v = serde_json::json!({
                "input": doc.input,
                "algorithm": algorithm.id(),
                "report": fresh,
                "stored_report_matches": stored_matches,
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    };
    Ok(CommandOutput {
        text,
        success: report.passed() && stored_matches != Some(false),
    })
}

fn random_exponent(rng: &mut ChaCha8Rng, n: usize, degree: u32, cap: Option<u32>) -> Exponent {
    let mut alpha = vec![0u32; n];
    for _ in 0..degree {
        let open: Vec<usize> = (0..n).filter(|&i| cap.is_none_or(|c| alpha[i] < c)).collect();
        if open.is_empty() {
            break;
        }
        alpha[open[rng.gen_range(0..open.len())]] += 1;
    }
    Exponent::new(alpha)
}

/// Seeded random corpus. The first monomial of each polynomial has the
/// target degree, the others any degree up to it.
pub fn generate_corpus(params: &CorpusParams, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(params.count);
    for _ in 0..params.count {
        let n = rng.gen_range(params.min_nvars..=params.max_nvars);
        let d = rng.gen_range(params.min_degree..=params.max_degree);
        let k = rng.gen_range(1..=params.max_terms.max(1));
        let mut terms = std::collections::BTreeMap::new();
        for t in 0..k {
            let deg = if t == 0 { d } else { rng.gen_range(0..=d) };
            let e = random_exponent(&mut rng, n, deg, params.max_exponent);
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-params.coeff_max..=params.coeff_max);
            }
            terms.entry(e).or_insert_with(|| Rational::from_integer(c.into()));
        }
        out.push(Polynomial::from_terms(n, terms).expect("exponents have n entries"));
    }
    out
}

/// Per-algorithm aggregate over a corpus.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub instances: usize,
    pub errors: usize,
    pub audit_passed: usize,
    pub max_degree: u32,
    /// Instances whose component degree equals `2⌈deg(p)/2⌉`.
    pub minimal_degree: usize,
    pub total_squares: usize,
    pub max_squares: usize,
    pub millis: f64,
}

/// Runs every selected algorithm on the corpus, auditing each result.
pub fn run_bench(cfg: &RunConfig) -> (Vec<Polynomial>, Vec<BenchRow>) {
    let corpus = generate_corpus(&cfg.corpus, cfg.seed);
    let algos: Vec<Algorithm> = if cfg.bench_algorithms.is_empty() {
        Algorithm::ALL.to_vec()
    } else {
        cfg.bench_algorithms.clone()
    };
    let rows = algos
        .iter()
        .map(|&a| {
            let start = Instant::now();
            let results: Vec<Option<VerificationReport>> = corpus
                .par_iter()
                .map(|p| {
                    a.decompose(p, &cfg.params)
                        .ok()
                        .map(|d| audit(p, &d, &a.tag(&cfg.params)))
                })
                .collect();
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let mut row = BenchRow {
                algorithm: a,
                instances: corpus.len(),
                errors: 0,
                audit_passed: 0,
                max_degree: 0,
                minimal_degree: 0,
                total_squares: 0,
                max_squares: 0,
                millis,
            };
            for (p, r) in corpus.iter().zip(&results) {
                match r {
                    None => row.errors += 1,
                    Some(r) => {
                        row.audit_passed += r.passed() as usize;
                        row.max_degree = row.max_degree.max(r.component_degree);
                        row.minimal_degree += (r.component_degree == 2 * p.degree().div_ceil(2)) as usize;
                        row.total_squares += r.square_count;
                        row.max_squares = row.max_squares.max(r.square_count);
                    }
                }
            }
            row
        })
        .collect();
    (corpus, rows)
}

pub fn cmd_bench(cfg: &RunConfig) -> Result<CommandOutput> {
    let c = &cfg.corpus;
    if c.min_nvars == 0 || c.min_nvars > c.max_nvars || c.min_degree > c.max_degree || c.max_terms == 0 || c.coeff_max < 1 {
        return Err(Error::Parameter("invalid corpus parameters".into()));
    }
    let (corpus, rows) = run_bench(cfg);
    let success = rows.iter().all(|r| r.errors == 0 && r.audit_passed == r.instances);
    let text = match cfg.format {
        OutputFormat::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "corpus: {} polynomials, seed {}, nvars {}..={}, degree {}..={}, <= {} terms",
                corpus.len(),
                cfg.seed,
                c.min_nvars,
                c.max_nvars,
                c.min_degree,
                c.max_degree,
                c.max_terms
            );
            let _ = write!(
                out,
                "{:<24} {:>8} {:>8} {:>10} {:>12} {:>10} {:>10}",
                "algorithm", "audit", "max deg", "min-degree", "squares", "max sq", "errors"
            );
            if cfg.timing {
                let _ = write!(out, " {:>10}", "wall ms");
            }
            out.push('\n');
            for r in &rows {
                let _ = write!(
                    out,
                    "{:<24} {:>8} {:>8} {:>10} {:>12} {:>10} {:>10}",
                    r.algorithm.id(),
                    format!("{}/{}", r.audit_passed, r.instances),
                    r.max_degree,
                    format!("{}/{}", r.minimal_degree, r.instances),
                    r.total_squares,
                    r.max_squares,
                    r.errors
                );
                if cfg.timing {
                    let _ = write!(out, " {:>10.1}", r.millis);
                }
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let rows_json: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut v = serde_json::json!({
                        "algorithm": r.algorithm.id(),
                        "instances": r.instances,
                        "audit_passed": r.audit_passed,
                        "errors": r.errors,
                        "max_degree": r.max_degree,
                        "minimal_degree": r.minimal_degree,
                        "total_squares": r.total_squares,
                        "max_squares": r.max_squares,
                    });
                    if cfg.timing {
                        v["wall_ms"] = serde_json::json!(r.millis);
                    }
                    v
                })
                .collect();
            let v = serde_json::json!({
                "seed": cfg.seed,
                "count": corpus.len(),
                "rows": rows_json,
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    };
    Ok(CommandOutput { text, success })
}
