//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a sparse map from [`Exponent`] to a nonzero [`Rational`]
//! coefficient over a fixed number of variables. Terms are kept in graded
//! lexicographic order, so two equal polynomials always have identical term
//! maps and iterate identically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact conversion of a finite double into a (dyadic) rational.
pub fn rational_from_f64(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

/// Nearest double to a rational.
pub fn rational_to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exponent vector `α` of a monomial `x^α`, one entry per variable.
///
/// Ordered by total degree first, then lexicographically with `x1` the most
/// significant variable (grlex).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(alpha: Vec<u32>) -> Self {
        Exponent(alpha)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    /// `x_i` with a 0-based variable index.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut alpha = vec![0; nvars];
        alpha[var] = 1;
        Exponent(alpha)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Total degree `|α|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    /// Product of monomials: exponents add.
    pub fn add(&self, other: &Exponent) -> Exponent {
        debug_assert_eq!(self.nvars(), other.nvars());
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `(x^α)^k`.
    pub fn scale(&self, k: u32) -> Exponent {
        Exponent(self.0.iter().map(|a| a * k).collect())
    }

    /// `α - β`, or `None` when `β` does not divide `α`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    /// `⌊α/2⌋` componentwise.
    pub fn half_floor(&self) -> Exponent {
        Exponent(self.0.iter().map(|a| a / 2).collect())
    }

    pub fn is_even(&self) -> bool {
        self.0.iter().all(|a| a % 2 == 0)
    }

    /// Indices of variables with odd exponent, ascending.
    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] % 2 == 1).collect()
    }

    /// Squarefree monomial `∏_{i ∈ vars} x_i`.
    pub fn from_indices(nvars: usize, vars: &[usize]) -> Exponent {
        let mut alpha = vec![0; nvars];
        for &v in vars {
            alpha[v] += 1;
        }
        Exponent(alpha)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&a| a <= 1)
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    /// `x1^3*x2`, or `1` for the constant monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A single term `c_α x^α`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    pub coeff: Rational,
    pub exponent: Exponent,
}

impl Monomial {
    pub fn new(coeff: Rational, exponent: Exponent) -> Self {
        Monomial { coeff, exponent }
    }

    pub fn degree(&self) -> u32 {
        self.exponent.degree()
    }

    pub fn nvars(&self) -> usize {
        self.exponent.nvars()
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::monomial(self.coeff.clone(), self.exponent.clone())
    }
}

/// Multivariate polynomial in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(c, Exponent::zero(nvars))
    }

    /// The variable `x_{var+1}` (0-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        Self::monomial(Rational::one(), Exponent::unit(nvars, var))
    }

    pub fn monomial(coeff: Rational, exponent: Exponent) -> Self {
        let mut p = Self::zero(exponent.nvars());
        if !coeff.is_zero() {
            p.terms.insert(exponent, coeff);
        }
        p
    }

    /// Collects terms, merging repeated exponents and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.nvars() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: e.nvars(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of monomials `J`.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    pub fn coeff(&self, e: &Exponent) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending grlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms
            .iter()
            .map(|(e, c)| Monomial::new(c.clone(), e.clone()))
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Exponent::zero(self.nvars))
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dims(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &Exponent) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (a.add(e), v.clone()))
                .collect(),
        }
    }

    /// `self^k` by repeated squaring; `p^0 = 1`.
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn square(&self) -> Polynomial {
        self * self
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &a) in point.iter().zip(e.as_slice()) {
                if a > 0 {
                    term *= num_traits::pow(x.clone(), a as usize);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Formal partial derivative `∂p/∂x_{var+1}`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let a = e.get(var);
            if a == 0 {
                continue;
            }
            let mut alpha = e.as_slice().to_vec();
            alpha[var] -= 1;
            out.add_term(Exponent(alpha), c * int(a as i64));
        }
        out
    }

    /// Same polynomial viewed in a larger variable universe (zero-padded exponents).
    pub fn embed(&self, nvars: usize) -> Result<Polynomial> {
        if nvars < self.nvars {
            return Err(Error::Dimension {
                expected: self.nvars,
                found: nvars,
            });
        }
        Ok(Polynomial {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut alpha = e.as_slice().to_vec();
                    alpha.resize(nvars, 0);
                    (Exponent(alpha), c.clone())
                })
                .collect(),
        })
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics when the variable counts differ; use [`Polynomial::checked_add`] otherwise.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format(self, crate::parser::Style::Plain))
    }
}

/// Arithmetic operations accepted by [`canonical_arith`].
#[derive(Clone, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Scales `p` by a constant; `q` is ignored.
    Scale(Rational),
    /// Raises `p` to a nonnegative power; `q` is ignored.
    Pow(u32),
}

/// Single entry point for exact polynomial arithmetic.
pub fn canonical_arith(p: &Polynomial, q: &Polynomial, op: &ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => p.checked_add(q),
        ArithOp::Sub => p.checked_sub(q),
        ArithOp::Mul => p.checked_mul(q),
        ArithOp::Scale(c) => Ok(p.scale(c)),
        ArithOp::Pow(k) => Ok(p.pow(*k)),
    }
}

/// Exact value of `p` at `point`.
pub fn evaluate(p: &Polynomial, point: &[Rational]) -> Result<Rational> {
    p.evaluate(point)
}

/// Symmetric matrix of second partial derivatives.
pub fn hessian(p: &Polynomial) -> Vec<Vec<Polynomial>> {
    let n = p.nvars();
    let grads: Vec<Polynomial> = (0..n).map(|i| p.derivative(i)).collect();
    let mut h = vec![vec![Polynomial::zero(n); n]; n];
    for i in 0..n {
        for j in i..n {
            let d = grads[i].derivative(j);
            h[j][i] = d.clone();
            h[i][j] = d;
        }
    }
    h
}

/// A monomial `x^α` written as `o(x)·e(x)²`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParitySplit {
    /// `o`
    pub odd_part: Exponent,
    /// `e`
    pub even_root: Exponent,
    /// `O(m)`: 0-based indices of variables with odd exponent in `x^α`.
    pub odd_index_set: Vec<usize>,
}

impl ParitySplit {
    /// The split with `o = ∏_{i ∈ O(m)} x_i`, of least possible degree.
    pub fn minimal(alpha: &Exponent) -> ParitySplit {
        let odd = alpha.odd_indices();
        let o = Exponent::from_indices(alpha.nvars(), &odd);
        let e = alpha.half_floor();
        ParitySplit {
            odd_part: o,
            even_root: e,
            odd_index_set: odd,
        }
    }

    /// Uses a caller-chosen odd part; `alpha / o` must be a perfect square.
    pub fn explicit(alpha: &Exponent, o: &Exponent) -> Result<ParitySplit> {
        if o.nvars() != alpha.nvars() {
            return Err(Error::Dimension {
                expected: alpha.nvars(),
                found: o.nvars(),
            });
        }
        let rest = alpha
            .checked_sub(o)
            .ok_or_else(|| Error::Separation(format!("{o} does not divide {alpha}")))?;
        if !rest.is_even() {
            return Err(Error::Separation(format!(
                "{alpha} / {o} = {rest} is not a perfect square"
            )));
        }
        Ok(ParitySplit {
            odd_part: o.clone(),
            even_root: rest.half_floor(),
            odd_index_set: alpha.odd_indices(),
        })
    }

    /// `o·e²` as an exponent.
    pub fn recombine(&self) -> Exponent {
        self.odd_part.add(&self.even_root.scale(2))
    }
}

/// How the odd part of a parity separation is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityRule {
    Minimal,
    Explicit(Exponent),
}

pub fn parity_separate(m: &Monomial, rule: &ParityRule) -> Result<ParitySplit> {
    match rule {
        ParityRule::Minimal => Ok(ParitySplit::minimal(&m.exponent)),
        ParityRule::Explicit(o) => ParitySplit::explicit(&m.exponent, o),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn e(a: &[u32]) -> Exponent {
        Exponent::new(a.to_vec())
    }

    #[test]
    fn difference_of_squares() {
        let p = &x(2, 0) + &x(2, 1);
        let q = &x(2, 0) - &x(2, 1);
        let expected = &x(2, 0).square() - &x(2, 1).square();
        assert_eq!(&p * &q, expected);
    }

    #[test]
    fn scale_by_zero_annihilates() {
        let p = &x(2, 0) * &x(2, 1);
        assert!(canonical_arith(&p, &p, &ArithOp::Scale(int(0))).unwrap().is_zero());
    }

    #[test]
    fn polarization_of_product() {
        let half = rat(1, 2);
        let a = (&x(2, 0) + &x(2, 1)).scale(&half);
        let b = (&x(2, 0) - &x(2, 1)).scale(&half);
        assert_eq!(&a.square() - &b.square(), &x(2, 0) * &x(2, 1));
    }

    #[test]
    fn mismatched_dims_rejected() {
        let err = canonical_arith(&x(2, 0), &x(3, 0), &ArithOp::Add).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 2, found: 3 });
        assert!(x(2, 0).evaluate(&[int(1)]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        let p = &x(2, 0).square() - &x(2, 1).square();
        assert_eq!(p.evaluate(&[int(3), int(2)]).unwrap(), int(5));
        assert_eq!(Polynomial::zero(3).evaluate(&[int(7), int(1), rat(1, 3)]).unwrap(), int(0));
        let m = Polynomial::monomial(int(-2), e(&[3, 5]));
        assert_eq!(m.evaluate(&[int(1), int(1)]).unwrap(), int(-2));
    }

    #[test]
    fn zero_polynomial_degree_is_zero() {
        assert_eq!(Polynomial::zero(3).degree(), 0);
    }

    #[test]
    fn pow_zero_is_one() {
        assert_eq!((&x(1, 0) + &Polynomial::one(1)).pow(0), Polynomial::one(1));
    }

    #[test]
    fn grlex_order() {
        let mut v = vec![e(&[2, 1]), e(&[0, 3]), e(&[1, 0]), e(&[0, 0]), e(&[0, 1])];
        v.sort();
        assert_eq!(v, vec![e(&[0, 0]), e(&[0, 1]), e(&[1, 0]), e(&[0, 3]), e(&[2, 1])]);
    }

    #[test]
    fn parity_minimal_case_one() {
        let s = ParitySplit::minimal(&e(&[4, 2]));
        assert_eq!(s.odd_part, e(&[0, 0]));
        assert_eq!(s.even_root, e(&[2, 1]));
        assert!(s.odd_index_set.is_empty());
    }

    #[test]
    fn parity_minimal_case_two() {
        let s = ParitySplit::minimal(&e(&[3, 5, 2]));
        assert_eq!(s.odd_part, e(&[1, 1, 0]));
        assert_eq!(s.even_root, e(&[1, 2, 1]));
        assert_eq!(s.odd_index_set, vec![0, 1]);
    }

    #[test]
    fn parity_explicit() {
        let m = Monomial::new(int(-2), e(&[3, 5]));
        let s = parity_separate(&m, &ParityRule::Explicit(e(&[3, 1]))).unwrap();
        assert_eq!(s.even_root, e(&[0, 2]));
        assert_eq!(s.recombine(), e(&[3, 5]));
    }

    #[test]
    fn parity_explicit_rejects_bad_odd_part() {
        let m = Monomial::new(int(1), e(&[3, 5]));
        assert!(matches!(
            parity_separate(&m, &ParityRule::Explicit(e(&[2, 1]))),
            Err(Error::Separation(_))
        ));
        assert!(matches!(
            parity_separate(&m, &ParityRule::Explicit(e(&[4, 1]))),
            Err(Error::Separation(_))
        ));
    }

    #[test]
    fn hessian_examples() {
        let h = hessian(&x(1, 0).square());
        assert_eq!(h, vec![vec![Polynomial::constant(1, int(2))]]);

        let h = hessian(&(&x(2, 0) * &x(2, 1)));
        let one = Polynomial::one(2);
        let zero = Polynomial::zero(2);
        assert_eq!(h, vec![vec![zero.clone(), one.clone()], vec![one, zero]]);

        let h = hessian(&x(1, 0).pow(4));
        assert_eq!(h[0][0], Polynomial::monomial(int(12), e(&[2])));
    }
}
