// Test oracles. Nothing here calls into the library's arithmetic: polynomials are
// plain exponent maps, so a bug in `Polynomial` cannot hide a bug elsewhere.
#![allow(dead_code)]

pub mod paper;

use std::collections::BTreeMap;

use dcsos::dcsos::{ConvexCertificate, DcsosDecomposition};
use dcsos::dsos::DsosDecomposition;
use dcsos::{Polynomial, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, Rational>,
}

pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

impl Oracle {
    pub fn zero(n: usize) -> Self {
        Oracle { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut o = Self::zero(n);
        o.push(vec![0; n], c);
        o
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        let mut o = Self::zero(n);
        o.push(e, Rational::one());
        o
    }

    /// `c · x^e` with `e` given densely.
    pub fn mono(c: Rational, e: &[u32]) -> Self {
        let mut o = Self::zero(e.len());
        o.push(e.to_vec(), c);
        o
    }

    fn push(&mut self, e: Vec<u32>, c: Rational) {
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn from_lib(p: &Polynomial) -> Self {
        let mut o = Self::zero(p.nvars());
        for (e, c) in p.terms() {
            o.push(e.as_slice().to_vec(), c.clone());
        }
        o
    }

    pub fn add(&self, other: &Oracle) -> Oracle {
        let mut r = self.clone();
        for (e, c) in &other.terms {
            r.push(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Oracle) -> Oracle {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Oracle {
        let mut r = Self::zero(self.n);
        for (e, v) in &self.terms {
            r.push(e.clone(), v * c);
        }
        r
    }

    pub fn mul(&self, other: &Oracle) -> Oracle {
        let mut r = Self::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                r.push(e, ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Oracle {
        let mut r = Oracle::constant(self.n, Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = r.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let m: f64 = e.iter().zip(x).map(|(&k, &v)| v.powi(k as i32)).product();
                c.to_f64().unwrap() * m
            })
            .sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.abs().to_f64().unwrap()).fold(0.0, f64::max)
    }
}

pub fn cert(c: &ConvexCertificate, n: usize) -> Oracle {
    match c {
        ConvexCertificate::AffineSquare(l) => {
            let l = Oracle::from_lib(l);
            l.mul(&l)
        }
        ConvexCertificate::EvenPower { var, exponent } => Oracle::var(n, *var).pow(*exponent),
        ConvexCertificate::Scale(s, child) => cert(child, n).scale(s),
        ConvexCertificate::Sum(cs) => cs.iter().fold(Oracle::zero(n), |acc, c| acc.add(&cert(c, n))),
        ConvexCertificate::Power(child, k) => cert(child, n).pow(*k),
    }
}

/// `(Σ g, Σ h)` of a DCSOS decomposition.
pub fn dcsos_parts(d: &DcsosDecomposition) -> (Oracle, Oracle) {
    let side = |ts: &[dcsos::dcsos::CertTerm]| {
        ts.iter()
            .fold(Oracle::zero(d.nvars), |acc, t| acc.add(&cert(&t.cert, d.nvars).scale(&t.weight)))
    };
    (side(&d.g), side(&d.h))
}

/// `(Σ w b², Σ w b²)` of a DSOS decomposition.
pub fn dsos_parts(d: &DsosDecomposition) -> (Oracle, Oracle) {
    let side = |ts: &[dcsos::dsos::SquareTerm]| {
        ts.iter().fold(Oracle::zero(d.nvars), |acc, t| {
            let b = Oracle::from_lib(&t.base);
            acc.add(&b.mul(&b).scale(&t.weight))
        })
    };
    (side(&d.positive), side(&d.negative))
}

/// Every expanded term of one side, for multiset comparisons.
pub fn dcsos_side_terms(ts: &[dcsos::dcsos::CertTerm], n: usize) -> Vec<Oracle> {
    ts.iter().map(|t| cert(&t.cert, n).scale(&t.weight)).collect()
}

/// True when `a` and `b` hold the same elements up to order.
pub fn same_multiset(a: &[Oracle], b: &[Oracle]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut used = vec![false; b.len()];
    a.iter().all(|x| {
        match (0..b.len()).find(|&j| !used[j] && b[j] == *x) {
            Some(j) => {
                used[j] = true;
                true
            }
            None => false,
        }
    })
}

/// `Σ_{A ⊆ [n]} (−1)^{|A|} (Σ_{j∈A} x_j)^m`, expanded by repeated multiplication.
pub fn subset_alternating_sum(n: usize, m: u32) -> Oracle {
    let mut total = Oracle::zero(n);
    for mask in 0u32..(1 << n) {
        let s = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(Oracle::zero(n), |acc, i| acc.add(&Oracle::var(n, i)));
        let sign = if mask.count_ones() % 2 == 0 { Rational::one() } else { -Rational::one() };
        total = total.add(&s.pow(m).scale(&sign));
    }
    total
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(−1)^n Σ_{|α|=m, all α_i ≥ 1} m!/α! x^α`, by enumerating compositions.
pub fn positive_multinomial_sum(n: usize, m: u32) -> Oracle {
    fn compositions(n: usize, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            if m >= 1 {
                prefix.push(m);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for k in 1..=m {
            prefix.push(k);
            compositions(n, m - k, prefix, out);
            prefix.pop();
        }
    }
    let mut all = Vec::new();
    compositions(n, m, &mut Vec::new(), &mut all);
    let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
    let mut r = Oracle::zero(n);
    for alpha in all {
        let denom = alpha.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a));
        let c = Rational::new(factorial(m), denom) * &sign;
        r.push(alpha, c);
    }
    r
}

pub fn factorial_i64(k: u32) -> i64 {
    (1..=k as i64).product()
}

/// Eigenvalues from nalgebra, sorted descending.
pub fn reference_eigenvalues(q: &[Vec<f64>]) -> Vec<f64> {
    let r = q.len();
    let m = nalgebra::DMatrix::from_fn(r, r, |i, j| q[i][j]);
    let mut v: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}


impl Oracle {
    pub fn derivative(&self, var: usize) -> Oracle {
        let mut r = Oracle::zero(self.n);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut f = e.clone();
                f[var] -= 1;
                r.push(f, c * Rational::from_integer(BigInt::from(e[var])));
            }
        }
        r
    }
}

/// Exact convexity probe at integer grid points `k / GRID` with `|k| ≤ 2·GRID`.
///
/// A component `f` is scaled by a positive integer so that `f` and its Hessian
/// become integer-valued at grid points; nonnegativity and positive
/// semidefiniteness (all principal minors `≥ 0`) are then decided exactly.
pub const GRID: i64 = 256;

pub struct ExactProbe {
    n: usize,
    degree: u32,
    value: Vec<(Vec<u32>, BigInt)>,
    hessian: Vec<Vec<Vec<(Vec<u32>, BigInt)>>>,
    /// `L · GRID^degree` as f64, to report unscaled magnitudes.
    scale: f64,
}

/// Smallest exact value and smallest principal minor sign seen, plus the
/// smallest floating eigenvalue for reporting.
#[derive(Clone, Copy, Debug)]
pub struct ProbeResult {
    pub min_value: f64,
    pub psd_everywhere: bool,
    pub min_eig: f64,
}

fn integer_terms(o: &Oracle, l: &BigInt) -> Vec<(Vec<u32>, BigInt)> {
    o.terms
        .iter()
        .map(|(e, c)| {
            let v = c * Rational::from_integer(l.clone());
            assert!(v.is_integer());
            (e.clone(), v.to_integer())
        })
        .collect()
}

impl ExactProbe {
    pub fn new(f: &Oracle) -> Self {
        use num_integer::Integer;
        let l = f.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let n = f.n;
        let hessian = (0..n)
            .map(|i| {
                let di = f.derivative(i);
                (0..n).map(|j| integer_terms(&di.derivative(j), &l)).collect()
            })
            .collect();
        let degree = f.degree();
        ExactProbe {
            n,
            degree,
            value: integer_terms(f, &l),
            hessian,
            scale: l.to_f64().unwrap() * (GRID as f64).powi(degree as i32),
        }
    }

    /// `Σ c·k^e·GRID^(degree − |e|)`, i.e. the scaled value at `k / GRID`.
    fn eval(&self, terms: &[(Vec<u32>, BigInt)], pows: &[Vec<BigInt>], grid: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (e, c) in terms {
            let mut t = c.clone();
            let mut d = 0u32;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= &pows[i][k as usize];
                    d += k;
                }
            }
            t *= &grid[(self.degree - d) as usize];
            acc += t;
        }
        acc
    }

    pub fn probe(&self, points: &[Vec<i64>]) -> ProbeResult {
        let grid: Vec<BigInt> = (0..=self.degree).map(|k| BigInt::from(GRID).pow(k)).collect();
        let mut out = ProbeResult {
            min_value: f64::INFINITY,
            psd_everywhere: true,
            min_eig: f64::INFINITY,
        };
        for pt in points {
            let pows: Vec<Vec<BigInt>> = pt
                .iter()
                .map(|&k| (0..=self.degree).map(|j| BigInt::from(k).pow(j)).collect())
                .collect();
            let v = self.eval(&self.value, &pows, &grid);
            out.min_value = out.min_value.min(v.to_f64().unwrap() / self.scale);
            if self.n == 0 || self.degree < 2 {
                out.min_eig = out.min_eig.min(0.0);
                continue;
            }
            // entries of the Hessian share the factor L·GRID^degree
            let h: Vec<Vec<BigInt>> = (0..self.n)
                .map(|i| (0..self.n).map(|j| self.eval(&self.hessian[i][j], &pows, &grid)).collect())
                .collect();
            for mask in 1usize..(1 << self.n) {
                let idx: Vec<usize> = (0..self.n).filter(|i| mask >> i & 1 == 1).collect();
                let sub: Vec<Vec<BigInt>> = idx.iter().map(|&i| idx.iter().map(|&j| h[i][j].clone()).collect()).collect();
                if determinant(&sub).is_negative() {
                    out.psd_everywhere = false;
                }
            }
            let hf: Vec<Vec<f64>> = h
                .iter()
                .map(|row| row.iter().map(|x| x.to_f64().unwrap() / self.scale).collect())
                .collect();
            out.min_eig = out.min_eig.min(*reference_eigenvalues(&hf).last().unwrap());
        }
        out
    }
}

/// Laplace expansion; matrices here are at most 4×4.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let r = m.len();
    if r == 1 {
        return m[0][0].clone();
    }
    let mut acc = BigInt::zero();
    for col in 0..r {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = &m[0][col] * determinant(&minor);
        if col % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    acc
}

/// `count` seeded grid points in `[−2, 2]ⁿ`.
pub fn grid_points(n: usize, count: usize, seed: u64) -> Vec<Vec<i64>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..n).map(|_| rng.gen_range(-2 * GRID..=2 * GRID)).collect())
        .collect()
}
