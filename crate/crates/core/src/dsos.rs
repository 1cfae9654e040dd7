//! Parity-based difference-of-SOS decompositions.
//!
//! A monomial `c·x^α` is split as `o(x)·e(x)²`; a DSOS form of the odd part
//! `o` is multiplied by `e²` and scaled by `c`. Polynomials are handled term
//! by term.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{int, rat, Exponent, Monomial, ParityRule, ParitySplit, Polynomial, Rational};

/// `weight · base²` with `weight > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareTerm {
    pub weight: Rational,
    pub base: Polynomial,
}

impl SquareTerm {
    pub fn new(weight: Rational, base: Polynomial) -> Self {
        debug_assert!(weight.is_positive());
        SquareTerm { weight, base }
    }

    pub fn expand(&self) -> Polynomial {
        self.base.square().scale(&self.weight)
    }
}

/// Whether a decomposition reproduces its input exactly or only up to rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exactness {
    Exact,
    /// Weights and bases were obtained from double-precision computations
    /// (stored exactly as dyadic rationals).
    Floating,
}

/// `Σ positive − Σ negative`, each part a weighted sum of squares.
#[derive(Clone, Debug, PartialEq)]
pub struct DsosDecomposition {
    pub nvars: usize,
    pub positive: Vec<SquareTerm>,
    pub negative: Vec<SquareTerm>,
    pub exactness: Exactness,
}

impl DsosDecomposition {
    pub fn empty(nvars: usize) -> Self {
        DsosDecomposition {
            nvars,
            positive: Vec::new(),
            negative: Vec::new(),
            exactness: Exactness::Exact,
        }
    }

    /// The constant `c` as `|c|·1²` on the side given by its sign.
    pub fn constant(nvars: usize, c: &Rational) -> Self {
        let mut d = Self::empty(nvars);
        if !c.is_zero() {
            let t = SquareTerm::new(c.abs(), Polynomial::one(nvars));
            if c.is_positive() {
                d.positive.push(t);
            } else {
                d.negative.push(t);
            }
        }
        d
    }

    pub fn square_count(&self) -> usize {
        self.positive.len() + self.negative.len()
    }

    /// Multiplies every weight by `|c|`, swapping the parts when `c < 0`.
    pub fn scale(mut self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::empty(self.nvars);
        }
        let mag = c.abs();
        for t in self.positive.iter_mut().chain(self.negative.iter_mut()) {
            t.weight *= &mag;
        }
        if c.is_negative() {
            std::mem::swap(&mut self.positive, &mut self.negative);
        }
        self
    }

    /// Multiplies every base by the monomial `x^e`, i.e. the value by `x^{2e}`.
    pub fn shift_bases(mut self, e: &Exponent) -> Self {
        for t in self.positive.iter_mut().chain(self.negative.iter_mut()) {
            t.base = t.base.shift(e);
        }
        self
    }

    pub fn append(&mut self, other: DsosDecomposition) {
        if other.exactness == Exactness::Floating {
            self.exactness = Exactness::Floating;
        }
        self.positive.extend(other.positive);
        self.negative.extend(other.negative);
    }
}

/// Product of two DSOS decompositions: every pair of squares multiplies,
/// like-signed pairs land in the positive part and mixed pairs in the negative.
pub fn dsos_product(a: &DsosDecomposition, b: &DsosDecomposition) -> Result<DsosDecomposition> {
    if a.exactness != Exactness::Exact || b.exactness != Exactness::Exact {
        return Err(Error::Precondition(
            "dsos_product requires exact decompositions".into(),
        ));
    }
    if a.nvars != b.nvars {
        return Err(Error::Dimension {
            expected: a.nvars,
            found: b.nvars,
        });
    }
    let cross = |xs: &[SquareTerm], ys: &[SquareTerm], out: &mut Vec<SquareTerm>| {
        for x in xs {
            for y in ys {
                out.push(SquareTerm::new(&x.weight * &y.weight, &x.base * &y.base));
            }
        }
    };
    let mut d = DsosDecomposition::empty(a.nvars);
    cross(&a.positive, &b.positive, &mut d.positive);
    cross(&a.negative, &b.negative, &mut d.positive);
    cross(&a.positive, &b.negative, &mut d.negative);
    cross(&a.negative, &b.positive, &mut d.negative);
    Ok(d)
}

/// Three-square decomposition of `c·o·e²` from
/// `o = (o + s)²/(2s) − (o² + s²)/(2s)`.
pub fn dsos_parity_monomial(m: &Monomial, s: &Rational, split: &ParitySplit) -> Result<DsosDecomposition> {
    if !s.is_positive() {
        return Err(Error::Parameter(format!("s must be positive, got {s}")));
    }
    if split.recombine() != m.exponent {
        return Err(Error::Separation(format!(
            "split o = {}, e = {} does not reproduce {}",
            split.odd_part, split.even_root, m.exponent
        )));
    }
    let n = m.nvars();
    if m.coeff.is_zero() {
        return Ok(DsosDecomposition::empty(n));
    }
    let o = Polynomial::monomial(Rational::one(), split.odd_part.clone());
    let e = Polynomial::monomial(Rational::one(), split.even_root.clone());
    let oe = &o * &e;
    let two_s = s * int(2);
    let mut d = DsosDecomposition::empty(n);
    d.positive.push(SquareTerm::new(
        two_s.recip(),
        &oe + &e.scale(s),
    ));
    d.negative.push(SquareTerm::new(two_s.recip(), oe));
    d.negative.push(SquareTerm::new(s / int(2), e));
    Ok(d.scale(&m.coeff))
}

/// Pairing used by Procedure D: consecutive variables in ascending index
/// order, the last one paired with the constant 1 when the count is odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarPair {
    Two(usize, usize),
    WithOne(usize),
}

pub fn procedure_d_pairs(o: &Exponent) -> Vec<VarPair> {
    let vars: Vec<usize> = (0..o.nvars()).filter(|&i| o.get(i) == 1).collect();
    vars.chunks(2)
        .map(|c| match *c {
            [i, j] => VarPair::Two(i, j),
            [i] => VarPair::WithOne(i),
            _ => unreachable!(),
        })
        .collect()
}

fn pair_dsos(nvars: usize, pair: VarPair) -> DsosDecomposition {
    let half = rat(1, 2);
    let xi = |i| Polynomial::var(nvars, i);
    let (a, b) = match pair {
        VarPair::Two(i, j) => (xi(i), xi(j)),
        VarPair::WithOne(i) => (xi(i), Polynomial::one(nvars)),
    };
    let mut d = DsosDecomposition::empty(nvars);
    d.positive.push(SquareTerm::new(Rational::one(), (&a + &b).scale(&half)));
    d.negative.push(SquareTerm::new(Rational::one(), (&a - &b).scale(&half)));
    d
}

/// DSOS form of a squarefree monomial `o` with components of degree `2⌈deg(o)/2⌉`.
pub fn procedure_d(o: &Exponent) -> Result<DsosDecomposition> {
    if !o.is_squarefree() {
        return Err(Error::Precondition(format!("{o} is not squarefree")));
    }
    let n = o.nvars();
    let mut acc = DsosDecomposition::constant(n, &Rational::one());
    for pair in procedure_d_pairs(o) {
        acc = dsos_product(&acc, &pair_dsos(n, pair))?;
    }
    Ok(acc)
}

/// Minimal-degree parity DSOS: components have degree exactly `2⌈deg(m)/2⌉`.
pub fn dsos_parity_improved(m: &Monomial) -> DsosDecomposition {
    let split = ParitySplit::minimal(&m.exponent);
    // minimal odd part is squarefree by construction
    let od = procedure_d(&split.odd_part).expect("minimal odd part is squarefree");
    od.shift_bases(&split.even_root).scale(&m.coeff)
}

/// Parity algorithm selection for whole polynomials.
#[derive(Clone, Debug, PartialEq)]
pub enum ParityAlgorithm {
    /// Three squares per monomial with parameter `s > 0` and the given split rule.
    /// An explicit rule only applies to single-monomial inputs.
    Basic { s: Rational, rule: ParityRule },
    /// Procedure D on the minimal odd part.
    Improved,
}

impl ParityAlgorithm {
    pub fn basic() -> Self {
        ParityAlgorithm::Basic {
            s: Rational::one(),
            rule: ParityRule::Minimal,
        }
    }
}

/// Term-by-term DSOS decomposition, concatenated in grlex order.
pub fn dsos_polynomial(p: &Polynomial, algo: &ParityAlgorithm) -> Result<DsosDecomposition> {
    if let ParityAlgorithm::Basic { s, rule } = algo {
        if !s.is_positive() {
            return Err(Error::Parameter(format!("s must be positive, got {s}")));
        }
        if matches!(rule, ParityRule::Explicit(_)) && p.num_terms() > 1 {
            return Err(Error::Parameter(
                "an explicit parity split only applies to a single monomial".into(),
            ));
        }
    }
    let monomials: Vec<Monomial> = p.monomials().collect();
    let parts: Vec<Result<DsosDecomposition>> = monomials
        .par_iter()
        .map(|m| match algo {
            ParityAlgorithm::Basic { s, rule } => {
                let split = crate::poly::parity_separate(m, rule)?;
                dsos_parity_monomial(m, s, &split)
            }
            ParityAlgorithm::Improved => Ok(dsos_parity_improved(m)),
        })
        .collect();
    let mut d = DsosDecomposition::empty(p.nvars());
    for part in parts {
        d.append(part?);
    }
    Ok(d)
}
