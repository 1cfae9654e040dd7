//! Difference-of-convex-SOS (DCSOS) decompositions.
//!
//! Components are carried as [`ConvexCertificate`] trees whose grammar only
//! admits nonnegative convex polynomials: squares of affine forms, even pure
//! powers, nonnegative scalings, sums, and integer powers of such terms.
//! Convexity is therefore guaranteed by construction and never decided.
//!
//! Monomials are split into elementary factors (`x_i x_j`, `x_i`, `x_i²`),
//! which are then combined either pairwise through
//!
//! `(p₁−p₂)(q₁−q₂) = ½[(p₁+q₁)² + (p₂+q₂)²] − ½[(p₁+q₂)² + (p₂+q₁)²]`
//!
//! or all at once through the inclusion–exclusion identity
//!
//! `∏ pᵢ = (1/n!) Σ_{A ⊆ [n]} (−1)^{|A|+n} (Σ_{j∈A} pⱼ)ⁿ`,
//!
//! which keeps the component degree at `2⌈deg(m)/2⌉`.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::dsos::{procedure_d_pairs, VarPair};
use crate::error::{Error, Result};
use crate::parser::{format, Style};
use crate::poly::{int, rat, Exponent, Monomial, ParitySplit, Polynomial, Rational};

/// Largest `2⌈deg/2⌉` accepted by the direct formulation (`2^M − 1` terms).
pub const MAX_DIRECT_FACTORS: usize = 16;
/// Largest number of Procedure S items accepted by the minimal-degree construction.
pub const MAX_MINIMAL_ITEMS: usize = 8;

/// Syntactic proof that a polynomial is nonnegative and convex on `Rⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConvexCertificate {
    /// `ℓ(x)²` for an affine `ℓ`.
    AffineSquare(Polynomial),
    /// `x_var^exponent` with an even exponent `≥ 2`.
    EvenPower { var: usize, exponent: u32 },
    /// `c · child` with `c ≥ 0`.
    Scale(Rational, Box<ConvexCertificate>),
    Sum(Vec<ConvexCertificate>),
    /// `child^k`, `k ≥ 1`; convex since `child` is nonnegative and convex.
    Power(Box<ConvexCertificate>, u32),
}

impl ConvexCertificate {
    pub fn affine_square(l: Polynomial) -> Result<Self> {
        if l.degree() > 1 {
            return Err(Error::Precondition(format!("{l} is not affine")));
        }
        Ok(ConvexCertificate::AffineSquare(l))
    }

    pub fn even_power(var: usize, exponent: u32) -> Result<Self> {
        if exponent < 2 || exponent % 2 != 0 {
            return Err(Error::Precondition(format!(
                "exponent {exponent} is not a positive even integer"
            )));
        }
        Ok(ConvexCertificate::EvenPower { var, exponent })
    }

    pub fn scale(c: Rational, child: ConvexCertificate) -> Result<Self> {
        if c.is_negative() {
            return Err(Error::Precondition(format!("negative scale {c}")));
        }
        Ok(ConvexCertificate::Scale(c, Box::new(child)))
    }

    pub fn sum(children: Vec<ConvexCertificate>) -> Self {
        ConvexCertificate::Sum(children)
    }

    pub fn power(child: ConvexCertificate, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Precondition("power exponent must be at least 1".into()));
        }
        Ok(ConvexCertificate::Power(Box::new(child), k))
    }

    /// Re-checks the grammar on a tree built without the smart constructors.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        match self {
            ConvexCertificate::AffineSquare(l) => {
                if l.nvars() != nvars {
                    return Err(Error::Dimension {
                        expected: nvars,
                        found: l.nvars(),
                    });
                }
                if l.degree() > 1 {
                    return Err(Error::Precondition(format!("{l} is not affine")));
                }
                Ok(())
            }
            ConvexCertificate::EvenPower { var, exponent } => {
                if *var >= nvars {
                    return Err(Error::Dimension {
                        expected: nvars,
                        found: var + 1,
                    });
                }
                Self::even_power(*var, *exponent).map(|_| ())
            }
            ConvexCertificate::Scale(c, child) => {
                if c.is_negative() {
                    return Err(Error::Precondition(format!("negative scale {c}")));
                }
                child.validate(nvars)
            }
            ConvexCertificate::Sum(children) => {
                children.iter().try_for_each(|c| c.validate(nvars))
            }
            ConvexCertificate::Power(child, k) => {
                if *k == 0 {
                    return Err(Error::Precondition("power exponent must be at least 1".into()));
                }
                child.validate(nvars)
            }
        }
    }

    /// Degree of the denoted polynomial. Leading forms of nonnegative terms
    /// cannot cancel, so this is exact.
    pub fn degree(&self) -> u32 {
        match self {
            ConvexCertificate::AffineSquare(l) => 2 * l.degree(),
            ConvexCertificate::EvenPower { exponent, .. } => *exponent,
            ConvexCertificate::Scale(c, child) => {
                if c.is_zero() {
                    0
                } else {
                    child.degree()
                }
            }
            ConvexCertificate::Sum(children) => {
                children.iter().map(Self::degree).max().unwrap_or(0)
            }
            ConvexCertificate::Power(child, k) => k * child.degree(),
        }
    }

    pub fn expand(&self, nvars: usize) -> Polynomial {
        Expander::new(nvars).expand(self)
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexCertificate::AffineSquare(l) => {
                let s = format(l, Style::Plain);
                if l.num_terms() == 1 && !s.contains('*') && !s.starts_with('-') {
                    write!(f, "{s}^2")
                } else {
                    write!(f, "({s})^2")
                }
            }
            ConvexCertificate::EvenPower { var, exponent } => write!(f, "x{}^{}", var + 1, exponent),
            ConvexCertificate::Scale(c, child) => {
                write!(f, "{c}*")?;
                child.write(f)
            }
            ConvexCertificate::Sum(children) => {
                write!(f, "(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    c.write(f)?;
                }
                write!(f, ")")
            }
            ConvexCertificate::Power(child, k) => {
                child.write_atom(f)?;
                write!(f, "^{k}")
            }
        }
    }

    fn write_atom(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexCertificate::Sum(_) => self.write(f),
            _ => {
                write!(f, "(")?;
                self.write(f)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for ConvexCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f)
    }
}

/// Expands certificates, caching power nodes (which repeat heavily across
/// the subset terms of the minimal-degree constructions).
pub struct Expander {
    nvars: usize,
    cache: HashMap<ConvexCertificate, Polynomial>,
}

impl Expander {
    pub fn new(nvars: usize) -> Self {
        Expander {
            nvars,
            cache: HashMap::new(),
        }
    }

    pub fn expand(&mut self, c: &ConvexCertificate) -> Polynomial {
        match c {
            ConvexCertificate::AffineSquare(l) => l.square(),
            ConvexCertificate::EvenPower { var, exponent } => {
                let mut alpha = vec![0; self.nvars];
                alpha[*var] = *exponent;
                Polynomial::monomial(Rational::one(), Exponent::new(alpha))
            }
            ConvexCertificate::Scale(k, child) => self.expand(child).scale(k),
            ConvexCertificate::Sum(children) => {
                let mut acc = Polynomial::zero(self.nvars);
                for ch in children {
                    acc = &acc + &self.expand(ch);
                }
                acc
            }
            ConvexCertificate::Power(child, k) => {
                if let Some(p) = self.cache.get(c) {
                    return p.clone();
                }
                let p = self.expand(child).pow(*k);
                self.cache.insert(c.clone(), p.clone());
                p
            }
        }
    }
}

/// `weight · cert` with `weight > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertTerm {
    pub weight: Rational,
    pub cert: ConvexCertificate,
}

impl CertTerm {
    pub fn new(weight: Rational, cert: ConvexCertificate) -> Self {
        debug_assert!(weight.is_positive());
        CertTerm { weight, cert }
    }

    /// Like [`CertTerm::new`], moving top-level scale factors into the weight.
    pub fn normalized(weight: Rational, cert: ConvexCertificate) -> Self {
        match cert {
            ConvexCertificate::Scale(c, child) if c.is_positive() => Self::normalized(weight * c, *child),
            cert => Self::new(weight, cert),
        }
    }
}

/// `Σ g − Σ h` with both sides convex sums of squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcsosDecomposition {
    pub nvars: usize,
    pub g: Vec<CertTerm>,
    pub h: Vec<CertTerm>,
}

impl DcsosDecomposition {
    pub fn empty(nvars: usize) -> Self {
        DcsosDecomposition {
            nvars,
            g: Vec::new(),
            h: Vec::new(),
        }
    }

    /// `|c|·1²` on the side given by the sign of `c`.
    pub fn constant(nvars: usize, c: &Rational) -> Self {
        let mut d = Self::empty(nvars);
        if !c.is_zero() {
            let t = CertTerm::new(
                c.abs(),
                ConvexCertificate::AffineSquare(Polynomial::one(nvars)),
            );
            if c.is_positive() {
                d.g.push(t);
            } else {
                d.h.push(t);
            }
        }
        d
    }

    pub fn square_count(&self) -> usize {
        self.g.len() + self.h.len()
    }

    /// Largest certificate degree over both sides.
    pub fn degree(&self) -> u32 {
        self.g
            .iter()
            .chain(&self.h)
            .map(|t| t.cert.degree())
            .max()
            .unwrap_or(0)
    }

    /// Multiplies every weight by `|c|`, swapping `g` and `h` when `c < 0`.
    pub fn scale(mut self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::empty(self.nvars);
        }
        let mag = c.abs();
        for t in self.g.iter_mut().chain(self.h.iter_mut()) {
            t.weight *= &mag;
        }
        if c.is_negative() {
            std::mem::swap(&mut self.g, &mut self.h);
        }
        self
    }

    pub fn negate(mut self) -> Self {
        std::mem::swap(&mut self.g, &mut self.h);
        self
    }

    pub fn append(&mut self, other: DcsosDecomposition) {
        self.g.extend(other.g);
        self.h.extend(other.h);
    }

    /// `(Σ g, Σ h)` expanded exactly.
    pub fn components(&self) -> (Polynomial, Polynomial) {
        let mut ex = Expander::new(self.nvars);
        let mut side = |ts: &[CertTerm]| {
            let mut acc = Polynomial::zero(self.nvars);
            for t in ts {
                acc = &acc + &ex.expand(&t.cert).scale(&t.weight);
            }
            acc
        };
        let g = side(&self.g);
        let h = side(&self.h);
        (g, h)
    }

    pub fn value(&self) -> Polynomial {
        let (g, h) = self.components();
        &g - &h
    }
}

/// One side of a decomposition as a single certificate; `None` when empty.
fn component_cert(terms: &[CertTerm]) -> Option<ConvexCertificate> {
    let mut children: Vec<ConvexCertificate> = terms
        .iter()
        .map(|t| {
            if t.weight.is_one() {
                t.cert.clone()
            } else {
                ConvexCertificate::Scale(t.weight.clone(), Box::new(t.cert.clone()))
            }
        })
        .collect();
    match children.len() {
        0 => None,
        1 => children.pop(),
        _ => Some(ConvexCertificate::Sum(children)),
    }
}

fn sum_of(parts: Vec<&ConvexCertificate>) -> Option<ConvexCertificate> {
    match parts.len() {
        0 => None,
        1 => Some(parts[0].clone()),
        _ => Some(ConvexCertificate::Sum(parts.into_iter().cloned().collect())),
    }
}

fn power_of(c: ConvexCertificate, k: u32) -> ConvexCertificate {
    if k == 1 {
        c
    } else {
        ConvexCertificate::Power(Box::new(c), k)
    }
}

/// Which form of `x_i x_j` is used for odd pairs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum XyForm {
    /// `¼(x_i+x_j)² − ¼(x_i−x_j)²`
    #[default]
    Quarter,
    /// `½(x_i+x_j)² − ½(x_i² + x_j²)`
    Half,
}

/// The three elementary factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    Xy(usize, usize),
    /// `x_i`, treated as `x_i · 1`.
    XAlone(usize),
    /// `x_i^{exponent}` with an even exponent.
    Even(usize, u32),
}

pub fn elementary_pair(nvars: usize, kind: Elementary, form: XyForm) -> Result<DcsosDecomposition> {
    let check = |i: usize| {
        if i >= nvars {
            Err(Error::Dimension {
                expected: nvars,
                found: i + 1,
            })
        } else {
            Ok(())
        }
    };
    let mut d = DcsosDecomposition::empty(nvars);
    let (a, b, sq_a, sq_b) = match kind {
        Elementary::Even(i, k) => {
            check(i)?;
            d.g.push(CertTerm::new(Rational::one(), ConvexCertificate::even_power(i, k)?));
            return Ok(d);
        }
        Elementary::Xy(i, j) => {
            check(i)?;
            check(j)?;
            if i == j {
                return Err(Error::Precondition("x_i x_j needs two distinct variables".into()));
            }
            (
                Polynomial::var(nvars, i),
                Polynomial::var(nvars, j),
                ConvexCertificate::EvenPower { var: i, exponent: 2 },
                ConvexCertificate::EvenPower { var: j, exponent: 2 },
            )
        }
        Elementary::XAlone(i) => {
            check(i)?;
            (
                Polynomial::var(nvars, i),
                Polynomial::one(nvars),
                ConvexCertificate::EvenPower { var: i, exponent: 2 },
                ConvexCertificate::AffineSquare(Polynomial::one(nvars)),
            )
        }
    };
    match form {
        XyForm::Quarter => {
            let q = rat(1, 4);
            d.g.push(CertTerm::new(q.clone(), ConvexCertificate::AffineSquare(&a + &b)));
            d.h.push(CertTerm::new(q, ConvexCertificate::AffineSquare(&a - &b)));
        }
        XyForm::Half => {
            let h = rat(1, 2);
            d.g.push(CertTerm::new(h.clone(), ConvexCertificate::AffineSquare(&a + &b)));
            d.h.push(CertTerm::new(h.clone(), sq_a));
            d.h.push(CertTerm::new(h, sq_b));
        }
    }
    Ok(d)
}

/// Product of two DCSOS decompositions `a = p₁ − p₂`, `b = q₁ − q₂`:
/// `½[(p₁+q₁)² + (p₂+q₂)²] − ½[(p₁+q₂)² + (p₂+q₁)²]`.
///
/// Terms whose inner sum is empty (both parts zero) are dropped.
pub fn dcsos_product(a: &DcsosDecomposition, b: &DcsosDecomposition) -> Result<DcsosDecomposition> {
    if a.nvars != b.nvars {
        return Err(Error::Dimension {
            expected: a.nvars,
            found: b.nvars,
        });
    }
    let p1 = component_cert(&a.g);
    let p2 = component_cert(&a.h);
    let q1 = component_cert(&b.g);
    let q2 = component_cert(&b.h);
    let half = rat(1, 2);
    let square = |x: &Option<ConvexCertificate>, y: &Option<ConvexCertificate>| {
        let parts: Vec<&ConvexCertificate> = x.iter().chain(y.iter()).collect();
        sum_of(parts).map(|s| CertTerm::new(half.clone(), power_of(s, 2)))
    };
    let mut d = DcsosDecomposition::empty(a.nvars);
    d.g.extend(square(&p1, &q1));
    d.g.extend(square(&p2, &q2));
    d.h.extend(square(&p1, &q2));
    d.h.extend(square(&p2, &q1));
    Ok(d)
}

/// Options for Procedure S.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SeparationOptions {
    /// Emit one `x_i^{2⌊α_i/2⌋}` item per variable instead of repeated `x_i²` items.
    pub fold_even: bool,
    pub xy_form: XyForm,
}

/// DCSOS factor tagged with its component degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorkItem {
    pub degree: u32,
    pub value: DcsosDecomposition,
}

impl WorkItem {
    pub fn new(value: DcsosDecomposition) -> Self {
        WorkItem {
            degree: value.degree(),
            value,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WorkList {
    pub items: Vec<WorkItem>,
}

impl WorkList {
    pub fn new(values: Vec<DcsosDecomposition>) -> Self {
        WorkList {
            items: values.into_iter().map(WorkItem::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Elementary factors behind the items, in order.
    pub fn kinds(alpha: &Exponent, opts: &SeparationOptions) -> Vec<Elementary> {
        let split = ParitySplit::minimal(alpha);
        let mut kinds: Vec<Elementary> = procedure_d_pairs(&split.odd_part)
            .into_iter()
            .map(|p| match p {
                VarPair::Two(i, j) => Elementary::Xy(i, j),
                VarPair::WithOne(i) => Elementary::XAlone(i),
            })
            .collect();
        for (i, &e) in split.even_root.as_slice().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if opts.fold_even {
                kinds.push(Elementary::Even(i, 2 * e));
            } else {
                kinds.extend((0..e).map(|_| Elementary::Even(i, 2)));
            }
        }
        kinds
    }
}

/// Procedure S with default options (unfolded even part, quarter form).
pub fn procedure_s(alpha: &Exponent) -> WorkList {
    procedure_s_with(alpha, &SeparationOptions::default())
}

/// Splits `x^α` into elementary factors: odd variables paired as in
/// Procedure D, then the even part as `x_i²` items (or folded powers).
pub fn procedure_s_with(alpha: &Exponent, opts: &SeparationOptions) -> WorkList {
    let n = alpha.nvars();
    let values = WorkList::kinds(alpha, opts)
        .into_iter()
        .map(|k| elementary_pair(n, k, opts.xy_form).expect("indices come from alpha"))
        .collect();
    WorkList::new(values)
}

/// Procedure M: repeatedly multiplies the two lowest-degree items (stable
/// order on ties) and appends the product, until one item remains.
pub fn procedure_m(list: WorkList) -> Result<DcsosDecomposition> {
    let mut items = list.items;
    if items.is_empty() {
        return Err(Error::Precondition("Procedure M needs a nonempty list".into()));
    }
    loop {
        items.sort_by_key(|it| it.degree);
        if items.len() == 1 {
            return Ok(items.pop().unwrap().value);
        }
        let a = items.remove(0);
        let b = items.remove(0);
        items.push(WorkItem::new(dcsos_product(&a.value, &b.value)?));
    }
}

/// Multiplies items strictly in list order, `((L₁·L₂)·L₃)·…`.
pub fn multiply_left_to_right(list: WorkList) -> Result<DcsosDecomposition> {
    let mut it = list.items.into_iter();
    let mut acc = it
        .next()
        .ok_or_else(|| Error::Precondition("empty work list".into()))?
        .value;
    for item in it {
        acc = dcsos_product(&acc, &item.value)?;
    }
    Ok(acc)
}

/// Parity DCSOS of a monomial. `improved` selects Procedure M; otherwise
/// factors are multiplied left to right.
pub fn dcsos_parity_monomial(m: &Monomial, improved: bool) -> DcsosDecomposition {
    dcsos_parity_monomial_with(m, improved, &SeparationOptions::default())
}

pub fn dcsos_parity_monomial_with(m: &Monomial, improved: bool, opts: &SeparationOptions) -> DcsosDecomposition {
    if m.degree() == 0 {
        return DcsosDecomposition::constant(m.nvars(), &m.coeff);
    }
    let list = procedure_s_with(&m.exponent, opts);
    let d = if improved {
        procedure_m(list)
    } else {
        multiply_left_to_right(list)
    }
    .expect("nonconstant monomial gives a nonempty list");
    d.scale(&m.coeff)
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * int(k))
}

/// `∏ pᵢ = (1/n!) Σ_{∅≠B ⊆ [n]} (−1)^{|B|+n} (Σ_{j∈B} pⱼ)ⁿ`.
///
/// Terms are emitted in ascending subset-bitmask order; positive signs go to `g`.
pub fn multilinear_expand(ps: &[ConvexCertificate], nvars: usize) -> Result<DcsosDecomposition> {
    let n = ps.len();
    if n == 0 {
        return Err(Error::Precondition("empty product".into()));
    }
    if n > 20 {
        return Err(Error::Parameter(format!("{n} factors is too many to expand")));
    }
    let w = factorial(n).recip();
    let mut d = DcsosDecomposition::empty(nvars);
    for mask in 1u32..(1u32 << n) {
        let parts: Vec<&ConvexCertificate> = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| &ps[j]).collect();
        let size = parts.len();
        let term = CertTerm::normalized(w.clone(), power_of(sum_of(parts).unwrap(), n as u32));
        if (size + n) % 2 == 0 {
            d.g.push(term);
        } else {
            d.h.push(term);
        }
    }
    Ok(d)
}

/// Minimal-degree DCSOS of a monomial: components of degree exactly `2⌈deg(m)/2⌉`.
///
/// With Procedure S items `gᵢ − hᵢ`, expands `∏(gᵢ − hᵢ) = Σ_A (−1)^{|A|} ∏_{i∉A} gᵢ ∏_{j∈A} hⱼ`
/// and each product through [`multilinear_expand`]. Subsets selecting a zero
/// `hⱼ` are skipped.
pub fn dcsos_minimal_monomial(m: &Monomial) -> Result<DcsosDecomposition> {
    let n = m.nvars();
    if m.degree() == 0 {
        return Ok(DcsosDecomposition::constant(n, &m.coeff));
    }
    let list = procedure_s(&m.exponent);
    let r = list.len();
    if r > MAX_MINIMAL_ITEMS {
        return Err(Error::Parameter(format!(
            "degree {} needs {r} factors; at most {MAX_MINIMAL_ITEMS} are supported",
            m.degree()
        )));
    }
    let pairs: Vec<(ConvexCertificate, Option<ConvexCertificate>)> = list
        .items
        .iter()
        .map(|it| {
            (
                component_cert(&it.value.g).expect("elementary g is nonzero"),
                component_cert(&it.value.h),
            )
        })
        .collect();
    let mut d = DcsosDecomposition::empty(n);
    'subsets: for mask in 0u32..(1u32 << r) {
        let mut factors = Vec::with_capacity(r);
        for (i, (g, h)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                match h {
                    Some(h) => factors.push(h.clone()),
                    None => continue 'subsets,
                }
            } else {
                factors.push(g.clone());
            }
        }
        let part = multilinear_expand(&factors, n)?;
        if mask.count_ones() % 2 == 0 {
            d.append(part);
        } else {
            d.append(part.negate());
        }
    }
    Ok(d.scale(&m.coeff))
}

/// Minimal-degree DCSOS without Procedure S: `x^α = ∏ y_j` over the variable
/// list with multiplicity (padded by 1 when `|α|` is odd), expanded with the
/// identity for `M = 2⌈|α|/2⌉` affine factors. Each term is
/// `(Σ_{j∈A} y_j)^M`, certified as a power of an affine square.
pub fn dcsos_minimal_direct(m: &Monomial) -> Result<DcsosDecomposition> {
    let n = m.nvars();
    if m.degree() == 0 {
        return Ok(DcsosDecomposition::constant(n, &m.coeff));
    }
    let mut ys: Vec<Polynomial> = Vec::new();
    for (i, &a) in m.exponent.as_slice().iter().enumerate() {
        ys.extend((0..a).map(|_| Polynomial::var(n, i)));
    }
    if ys.len() % 2 == 1 {
        ys.push(Polynomial::one(n));
    }
    let big_m = ys.len();
    if big_m > MAX_DIRECT_FACTORS {
        return Err(Error::Parameter(format!(
            "degree {} needs {big_m} factors; at most {MAX_DIRECT_FACTORS} are supported",
            m.degree()
        )));
    }
    let w = factorial(big_m).recip();
    let mut d = DcsosDecomposition::empty(n);
    for mask in 1u32..(1u32 << big_m) {
        let mut s = Polynomial::zero(n);
        for (j, y) in ys.iter().enumerate() {
            if mask >> j & 1 == 1 {
                s = &s + y;
            }
        }
        let term = CertTerm::new(
            w.clone(),
            power_of(ConvexCertificate::AffineSquare(s), (big_m / 2) as u32),
        );
        // (−1)^{|A|+M} with M even
        if mask.count_ones() % 2 == 0 {
            d.g.push(term);
        } else {
            d.h.push(term);
        }
    }
    Ok(d.scale(&m.coeff))
}

/// Left side of the factorization identity, `Σ_{A⊆[n]} (−1)^{|A|} (Σ_{j∈A} x_j)^m`.
pub fn inclusion_exclusion_power(n: usize, m: u32) -> Polynomial {
    let mut acc = Polynomial::zero(n);
    for mask in 1u32..(1u32 << n) {
        let mut s = Polynomial::zero(n);
        for j in (0..n).filter(|j| mask >> j & 1 == 1) {
            s = &s + &Polynomial::var(n, j);
        }
        let t = s.pow(m);
        acc = if mask.count_ones() % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// Right side of the factorization identity,
/// `(−1)ⁿ Σ_{|α|=m, all αᵢ ≥ 1} (m choose α) x^α` (zero when `m < n`).
pub fn multinomial_sum(n: usize, m: u32) -> Polynomial {
    fn compositions(n: usize, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == n - 1 {
            if m >= 1 {
                let mut a = prefix.clone();
                a.push(m);
                out.push(a);
            }
            return;
        }
        for k in 1..=m {
            prefix.push(k);
            compositions(n, m - k, prefix, out);
            prefix.pop();
        }
    }
    let mut alphas = Vec::new();
    if n >= 1 {
        compositions(n, m, &mut Vec::new(), &mut alphas);
    }
    let sign = if n % 2 == 0 { int(1) } else { int(-1) };
    let terms = alphas.into_iter().map(|a| {
        let denom = a.iter().fold(Rational::one(), |acc, &k| acc * factorial(k as usize));
        (Exponent::new(a), &sign * factorial(m as usize) / denom)
    });
    Polynomial::from_terms(n, terms).expect("exponents have n entries")
}

/// Per-monomial DCSOS algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcsosAlgorithm {
    /// Procedure S pairing, multiplied left to right.
    Parity,
    /// Procedure S pairing, multiplied by Procedure M.
    ParityImproved,
    /// Inclusion–exclusion over Procedure S items.
    Minimal,
    /// Inclusion–exclusion over the variable list.
    Direct,
}

pub fn dcsos_monomial(m: &Monomial, algo: DcsosAlgorithm) -> Result<DcsosDecomposition> {
    match algo {
        DcsosAlgorithm::Parity => Ok(dcsos_parity_monomial(m, false)),
        DcsosAlgorithm::ParityImproved => Ok(dcsos_parity_monomial(m, true)),
        DcsosAlgorithm::Minimal => dcsos_minimal_monomial(m),
        DcsosAlgorithm::Direct => dcsos_minimal_direct(m),
    }
}

/// Term-by-term DCSOS decomposition, concatenated in grlex monomial order.
pub fn dcsos_polynomial(p: &Polynomial, algo: DcsosAlgorithm) -> Result<DcsosDecomposition> {
    let monomials: Vec<Monomial> = p.monomials().collect();
    let parts: Vec<Result<DcsosDecomposition>> = monomials
        .par_iter()
        .map(|m| dcsos_monomial(m, algo))
        .collect();
    let mut d = DcsosDecomposition::empty(p.nvars());
    for part in parts {
        d.append(part?);
    }
    Ok(d)
}
