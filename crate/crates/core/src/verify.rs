//! Independent checks of decompositions.
//!
//! [`audit`] re-expands the term lists, compares against the input, measures
//! the component degrees and square counts from the expanded polynomials and
//! checks them against the bound associated with the producing algorithm. DCSOS
//! components are additionally spot-checked for convexity and nonnegativity on
//! seeded random points.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dcsos::{DcsosDecomposition, Expander};
use crate::dsos::{DsosDecomposition, Exactness};
use crate::poly::{hessian, parity_separate, rational_to_f64, ParityRule, Polynomial, Rational};
use crate::spectral::{jacobi_eigen, ZERO_EIGEN_TOL};

/// Relative tolerance for floating decompositions: `1e−6 · (1 + max|c_α|)`.
pub const FLOAT_TOL: f64 = 1e-6;
pub const CONVEXITY_POINTS: usize = 100;
pub const CONVEXITY_BOX: f64 = 2.0;
pub const HESSIAN_EIG_TOL: f64 = 1e-8;
pub const VALUE_TOL: f64 = 1e-12;
const DEFAULT_SEED: u64 = 0x00d5_05c5_05de_c0de;

/// Either kind of decomposition.
#[derive(Clone, Debug, PartialEq)]
pub enum Decomposition {
    Dsos(DsosDecomposition),
    Dcsos(DcsosDecomposition),
}

impl Decomposition {
    pub fn nvars(&self) -> usize {
        match self {
            Decomposition::Dsos(d) => d.nvars,
            Decomposition::Dcsos(d) => d.nvars,
        }
    }

    pub fn square_count(&self) -> usize {
        match self {
            Decomposition::Dsos(d) => d.square_count(),
            Decomposition::Dcsos(d) => d.square_count(),
        }
    }

    pub fn is_exact(&self) -> bool {
        match self {
            Decomposition::Dsos(d) => d.exactness == Exactness::Exact,
            Decomposition::Dcsos(_) => true,
        }
    }

    /// Expanded `(s₁, s₂)`.
    pub fn components(&self) -> (Polynomial, Polynomial) {
        match self {
            Decomposition::Dsos(d) => {
                let side = |ts: &[crate::dsos::SquareTerm]| {
                    ts.iter()
                        .fold(Polynomial::zero(d.nvars), |acc, t| &acc + &t.expand())
                };
                (side(&d.positive), side(&d.negative))
            }
            Decomposition::Dcsos(d) => {
                let mut ex = Expander::new(d.nvars);
                let mut side = |ts: &[crate::dcsos::CertTerm]| {
                    ts.iter().fold(Polynomial::zero(d.nvars), |acc, t| {
                        &acc + &ex.expand(&t.cert).scale(&t.weight)
                    })
                };
                let g = side(&d.g);
                let h = side(&d.h);
                (g, h)
            }
        }
    }

    /// Number of weights, counting both sides.
    pub fn weight_count(&self) -> usize {
        self.square_count()
    }

    /// Adds `delta` to the `index`-th weight (positive/g side first).
    pub fn perturb_weight(&mut self, index: usize, delta: &Rational) {
        match self {
            Decomposition::Dsos(d) => {
                let np = d.positive.len();
                let t = if index < np {
                    &mut d.positive[index]
                } else {
                    &mut d.negative[index - np]
                };
                t.weight += delta;
            }
            Decomposition::Dcsos(d) => {
                let ng = d.g.len();
                let t = if index < ng {
                    &mut d.g[index]
                } else {
                    &mut d.h[index - ng]
                };
                t.weight += delta;
            }
        }
    }
}

/// `Σ s₁ − Σ s₂` expanded exactly (floating results are dyadic rationals).
pub fn expand_decomposition(d: &Decomposition) -> Polynomial {
    let (a, b) = d.components();
    &a - &b
}

/// Producing algorithm, which fixes the degree and square-count bounds.
#[derive(Clone, Debug, PartialEq)]
pub enum AlgoTag {
    /// Three squares per monomial with the given split rule.
    DsosParity(ParityRule),
    DsosParityImproved,
    /// Spectral decomposition over a caller-supplied basis.
    DsosSpectral { basis_degree: u32, basis_len: usize },
    DsosSpectralDirect,
    DsosSpectralMinimal,
    DcsosParity,
    DcsosParityImproved,
    DcsosMinimal,
    DcsosDirect,
}

impl AlgoTag {
    pub fn is_dcsos(&self) -> bool {
        matches!(
            self,
            AlgoTag::DcsosParity | AlgoTag::DcsosParityImproved | AlgoTag::DcsosMinimal | AlgoTag::DcsosDirect
        )
    }
}

/// `= n` or `≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Exactly(u64),
    AtMost(u64),
}

impl Bound {
    pub fn admits(&self, v: u64) -> bool {
        match *self {
            Bound::Exactly(b) => v == b,
            Bound::AtMost(b) => v <= b,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exactly(b) => write!(f, "= {b}"),
            Bound::AtMost(b) => write!(f, "<= {b}"),
        }
    }
}

fn half_ceil(d: u32) -> u32 {
    d.div_ceil(2)
}

/// Degree bound for the improved parity DCSOS of a single monomial.
pub fn improved_parity_bound(deg: u32) -> u32 {
    match deg {
        0 => 0,
        1 => 2,
        d => 1 << (32 - (d - 1).leading_zeros()),
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Component-degree bound claimed for `tag` on input `p`.
pub fn degree_bound(p: &Polynomial, tag: &AlgoTag) -> Result<Bound, String> {
    let d = p.degree();
    let per_monomial_max = |f: &dyn Fn(u32) -> u32| p.monomials().map(|m| f(m.degree())).max().unwrap_or(0);
    Ok(match tag {
        AlgoTag::DsosParity(rule) => {
            let mut worst = 0;
            for m in p.monomials() {
                let split = parity_separate(&m, rule).map_err(|e| e.to_string())?;
                worst = worst.max(m.degree() + split.odd_part.degree());
            }
            Bound::AtMost(worst as u64)
        }
        AlgoTag::DsosParityImproved
        | AlgoTag::DsosSpectralMinimal
        | AlgoTag::DcsosMinimal
        | AlgoTag::DcsosDirect => Bound::Exactly(2 * half_ceil(d) as u64),
        AlgoTag::DsosSpectral { basis_degree, .. } => Bound::AtMost(2 * *basis_degree as u64),
        AlgoTag::DsosSpectralDirect => Bound::AtMost(2 * d as u64),
        AlgoTag::DcsosParity => Bound::AtMost(per_monomial_max(&|k| if k == 0 { 0 } else { 1 << half_ceil(k) }) as u64),
        AlgoTag::DcsosParityImproved => Bound::AtMost(per_monomial_max(&improved_parity_bound) as u64),
    })
}

/// Square-count bound claimed for `tag` on input `p`.
pub fn square_bound(p: &Polynomial, tag: &AlgoTag) -> Bound {
    let j = p.num_terms() as u64;
    let n = p.nvars() as u64;
    let per_monomial = |f: &dyn Fn(&crate::poly::Monomial) -> u64| p.monomials().map(|m| f(&m)).sum::<u64>();
    match tag {
        AlgoTag::DsosParity(_) => Bound::Exactly(3 * j),
        AlgoTag::DsosParityImproved => {
            Bound::AtMost(per_monomial(&|m| 1u64 << half_ceil(m.exponent.odd_indices().len() as u32)))
        }
        AlgoTag::DsosSpectral { basis_len, .. } => Bound::AtMost(*basis_len as u64),
        AlgoTag::DsosSpectralDirect => {
            if p.degree() == 0 {
                Bound::AtMost(1)
            } else {
                Bound::Exactly(2)
            }
        }
        AlgoTag::DsosSpectralMinimal => {
            let half = half_ceil(p.degree()) as u64;
            Bound::AtMost((2 * j).min(binomial(n + half, n)))
        }
        AlgoTag::DcsosParity | AlgoTag::DcsosParityImproved => Bound::AtMost(4 * j),
        AlgoTag::DcsosMinimal | AlgoTag::DcsosDirect => {
            Bound::AtMost(per_monomial(&|m| 1u64 << (2 * half_ceil(m.degree()))))
        }
    }
}

/// Outcome of the expansion comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MatchKind {
    /// Residual polynomial is identically zero.
    Exact,
    /// Floating decomposition within tolerance; largest coefficient residual.
    Numeric { residual: f64 },
    Failed { residual: f64 },
}

/// Result of [`audit`]. Equality ignores `elapsed`.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub exact_match: MatchKind,
    pub component_degree: u32,
    pub degree_bound_claimed: Option<Bound>,
    pub square_count: usize,
    pub square_bound_claimed: Bound,
    /// Smallest Hessian eigenvalue seen over both components (DCSOS only).
    pub convexity_min_eig: Option<f64>,
    /// Smallest component value seen (DCSOS only).
    pub convexity_min_value: Option<f64>,
    pub convexity_seed: Option<u64>,
    pub violations: Vec<String>,
    #[serde(serialize_with = "ser_millis", rename = "elapsed_ms")]
    pub elapsed: Duration,
}

fn ser_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

impl PartialEq for VerificationReport {
    fn eq(&self, other: &Self) -> bool {
        self.exact_match == other.exact_match
            && self.component_degree == other.component_degree
            && self.degree_bound_claimed == other.degree_bound_claimed
            && self.square_count == other.square_count
            && self.square_bound_claimed == other.square_bound_claimed
            && self.convexity_min_eig == other.convexity_min_eig
            && self.convexity_min_value == other.convexity_min_value
            && self.convexity_seed == other.convexity_seed
            && self.violations == other.violations
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match &self.exact_match {
            MatchKind::Exact => "exact".to_string(),
            MatchKind::Numeric { residual } => format!("numeric (max residual {residual:.3e})"),
            MatchKind::Failed { residual } => format!("FAILED (max residual {residual:.3e})"),
        };
        writeln!(f, "expansion:        {m}")?;
        match &self.degree_bound_claimed {
            Some(b) => writeln!(f, "component degree: {} (bound {b})", self.component_degree)?,
            None => writeln!(f, "component degree: {}", self.component_degree)?,
        }
        writeln!(f, "squares:          {} (bound {})", self.square_count, self.square_bound_claimed)?;
        if let (Some(e), Some(v), Some(seed)) = (self.convexity_min_eig, self.convexity_min_value, self.convexity_seed) {
            writeln!(f, "convexity:        min eig {e:.3e}, min value {v:.3e} (seed {seed})")?;
        }
        if self.passed() {
            write!(f, "audit:            PASS")
        } else {
            write!(f, "audit:            FAIL ({})", self.violations.join("; "))
        }
    }
}

/// Audit settings.
#[derive(Clone, Debug)]
pub struct AuditOptions {
    /// Seed for the convexity points; derived from the input when `None`.
    pub seed: Option<u64>,
    pub points: usize,
    pub check_convexity: bool,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            seed: None,
            points: CONVEXITY_POINTS,
            check_convexity: true,
        }
    }
}

/// FNV-1a, used to derive a per-input seed that is stable across builds.
fn fnv1a(text: &str) -> u64 {
    text.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn default_seed(p: &Polynomial) -> u64 {
    DEFAULT_SEED ^ fnv1a(&p.to_string())
}

/// Audits `d` against `p` with default options.
pub fn audit(p: &Polynomial, d: &Decomposition, tag: &AlgoTag) -> VerificationReport {
    audit_with(p, d, tag, &AuditOptions::default())
}

pub fn audit_with(p: &Polynomial, d: &Decomposition, tag: &AlgoTag, opts: &AuditOptions) -> VerificationReport {
    let start = Instant::now();
    let mut violations = Vec::new();

    if d.nvars() != p.nvars() {
        violations.push(format!(
            "decomposition has {} variables, input has {}",
            d.nvars(),
            p.nvars()
        ));
        return VerificationReport {
            exact_match: MatchKind::Failed { residual: f64::INFINITY },
            component_degree: 0,
            degree_bound_claimed: None,
            square_count: d.square_count(),
            square_bound_claimed: square_bound(p, tag),
            convexity_min_eig: None,
            convexity_min_value: None,
            convexity_seed: None,
            violations,
            elapsed: start.elapsed(),
        };
    }

    let (s1, s2) = d.components();
    let residual = &(&s1 - &s2) - p;
    let max_res = rational_to_f64(&residual.max_abs_coeff());
    let exact_match = if residual.is_zero() {
        MatchKind::Exact
    } else if !d.is_exact() {
        let tol = FLOAT_TOL * (1.0 + rational_to_f64(&p.max_abs_coeff()));
        if max_res <= tol {
            MatchKind::Numeric { residual: max_res }
        } else {
            violations.push(format!("expansion residual {max_res:.3e} exceeds {tol:.3e}"));
            MatchKind::Failed { residual: max_res }
        }
    } else {
        violations.push(format!("exact expansion differs from input (max residual {max_res:.3e})"));
        MatchKind::Failed { residual: max_res }
    };

    let component_degree = s1.degree().max(s2.degree());
    let degree_bound_claimed = match degree_bound(p, tag) {
        Ok(b) => {
            if !b.admits(component_degree as u64) {
                violations.push(format!("component degree {component_degree} violates bound {b}"));
            }
            Some(b)
        }
        Err(e) => {
            violations.push(format!("degree bound unavailable: {e}"));
            None
        }
    };

    let square_count = d.square_count();
    let square_bound_claimed = square_bound(p, tag);
    if !square_bound_claimed.admits(square_count as u64) {
        violations.push(format!("square count {square_count} violates bound {square_bound_claimed}"));
    }

    let weights_positive = match d {
        Decomposition::Dsos(d) => d.positive.iter().chain(&d.negative).all(|t| t.weight.is_positive()),
        Decomposition::Dcsos(d) => d.g.iter().chain(&d.h).all(|t| t.weight.is_positive()),
    };
    if !weights_positive {
        violations.push("non-positive weight".into());
    }

    let (mut convexity_min_eig, mut convexity_min_value, mut convexity_seed) = (None, None, None);
    if let Decomposition::Dcsos(dc) = d {
        for t in dc.g.iter().chain(&dc.h) {
            if let Err(e) = t.cert.validate(dc.nvars) {
                violations.push(format!("malformed certificate: {e}"));
            }
        }
        if opts.check_convexity {
            let seed = opts.seed.unwrap_or_else(|| default_seed(p));
            let (eig, val) = convexity_spot_check(&[&s1, &s2], seed, opts.points);
            if eig.min_eig < -HESSIAN_EIG_TOL * eig.scale.max(1.0) {
                violations.push(format!("component Hessian eigenvalue {:.3e} below tolerance", eig.min_eig));
            }
            if val.min_value < -VALUE_TOL * val.scale.max(1.0) {
                violations.push(format!("component value {:.3e} is negative", val.min_value));
            }
            convexity_min_eig = Some(eig.min_eig);
            convexity_min_value = Some(val.min_value);
            convexity_seed = Some(seed);
        }
    }

    VerificationReport {
        exact_match,
        component_degree,
        degree_bound_claimed,
        square_count,
        square_bound_claimed,
        convexity_min_eig,
        convexity_min_value,
        convexity_seed,
        violations,
        elapsed: start.elapsed(),
    }
}

/// Polynomial with `f64` coefficients for fast evaluation.
struct FloatPoly {
    terms: Vec<(Vec<u32>, f64)>,
}

impl FloatPoly {
    fn new(p: &Polynomial) -> Self {
        FloatPoly {
            terms: p
                .terms()
                .map(|(e, c)| (e.as_slice().to_vec(), rational_to_f64(c)))
                .collect(),
        }
    }

    /// Value and `Σ |c_α x^α|` (the rounding scale) at `x`.
    fn eval(&self, x: &[f64]) -> (f64, f64) {
        let mut v = 0.0;
        let mut mag = 0.0;
        for (alpha, c) in &self.terms {
            let mut t = *c;
            for (xi, &a) in x.iter().zip(alpha) {
                if a > 0 {
                    t *= xi.powi(a as i32);
                }
            }
            v += t;
            mag += t.abs();
        }
        (v, mag)
    }
}

/// Smallest value found and the magnitude scale at that point.
#[derive(Clone, Copy, Debug)]
pub struct SpotMin {
    pub min_eig: f64,
    pub min_value: f64,
    pub scale: f64,
}

/// Samples `points` uniform points in `[−2, 2]ⁿ` and returns the smallest
/// Hessian eigenvalue and the smallest value over all given polynomials.
///
/// Thresholds are applied relative to the evaluation scale `Σ|c_α x^α|`,
/// since expanded components of high degree have large cancelling terms.
pub fn convexity_spot_check(polys: &[&Polynomial], seed: u64, points: usize) -> (SpotMin, SpotMin) {
    let mut eig = SpotMin {
        min_eig: f64::INFINITY,
        min_value: f64::INFINITY,
        scale: 0.0,
    };
    let mut val = eig;
    let Some(first) = polys.first() else {
        return (eig, val);
    };
    let n = first.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts: Vec<Vec<f64>> = (0..points)
        .map(|_| (0..n).map(|_| rng.gen_range(-CONVEXITY_BOX..=CONVEXITY_BOX)).collect())
        .collect();
    for p in polys {
        let fp = FloatPoly::new(p);
        let hp: Vec<Vec<FloatPoly>> = hessian(p)
            .iter()
            .map(|row| row.iter().map(FloatPoly::new).collect())
            .collect();
        for x in &pts {
            let (v, mag) = fp.eval(x);
            if v / mag.max(1.0) < val.min_value / val.scale.max(1.0) {
                val.min_value = v;
                val.scale = mag;
            }
            if n == 0 {
                continue;
            }
            let mut hmag = 0.0f64;
            let h: Vec<Vec<f64>> = hp
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| {
                            let (v, m) = e.eval(x);
                            hmag = hmag.max(m);
                            v
                        })
                        .collect()
                })
                .collect();
            let lmin = match jacobi_eigen(&h, ZERO_EIGEN_TOL) {
                Ok(ed) => ed.values.last().copied().unwrap_or(0.0),
                Err(_) => f64::NEG_INFINITY,
            };
            if lmin / hmag.max(1.0) < eig.min_eig / eig.scale.max(1.0) {
                eig.min_eig = lmin;
                eig.scale = hmag;
            }
        }
    }
    if eig.min_eig == f64::INFINITY {
        eig.min_eig = 0.0;
    }
    if val.min_value == f64::INFINITY {
        val.min_value = 0.0;
    }
    (eig, val)
}
