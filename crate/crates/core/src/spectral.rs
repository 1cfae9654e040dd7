//! Spectral DSOS decompositions through Gram matrices.
//!
//! A polynomial is written as `p = b(x)ᵀ Q b(x)` for a monomial vector `b`
//! and a symmetric rational matrix `Q`. Diagonalising `Q = P Λ Pᵀ` gives
//! `p = Σ λ_k y_k²` with `y = Pᵀ b`; positive eigenvalues form the first SOS
//! component and negative ones the second.
//!
//! Eigenvalues are generally irrational, so every decomposition produced here
//! is [`Exactness::Floating`]: doubles are stored exactly as dyadic rationals
//! and the result reproduces `p` up to rounding.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::dsos::{DsosDecomposition, Exactness, SquareTerm};
use crate::error::{Error, Result};
use crate::poly::{rat, rational_from_f64, rational_to_f64, Exponent, Polynomial, Rational};

/// Off-diagonal magnitude (relative to `max(1, max|Q_ij|)`) at which Jacobi sweeps stop.
pub const JACOBI_OFFDIAG_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;
/// Eigenvalues with `|λ| ≤ ZERO_EIGEN_TOL · max|λ|` are dropped.
pub const ZERO_EIGEN_TOL: f64 = 1e-9;
/// Eigenvector entries at or below this magnitude are treated as zero when forming `y = Pᵀb`.
const VECTOR_ENTRY_CUTOFF: f64 = 1e-14;

/// Ordered list of distinct monomials `b(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    nvars: usize,
    elements: Vec<Exponent>,
}

impl Basis {
    pub fn new(nvars: usize, elements: Vec<Exponent>) -> Result<Basis> {
        let mut seen = HashSet::new();
        for e in &elements {
            if e.nvars() != nvars {
                return Err(Error::Dimension {
                    expected: nvars,
                    found: e.nvars(),
                });
            }
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidBasis(format!("duplicate element {e}")));
            }
        }
        Ok(Basis { nvars, elements })
    }

    /// All monomials of degree at most `half_degree` (the full basis), in grlex order.
    pub fn full(nvars: usize, half_degree: u32) -> Basis {
        let mut elements = vec![Exponent::zero(nvars)];
        let mut frontier = elements.clone();
        for _ in 0..half_degree {
            let mut next = Vec::new();
            for e in &frontier {
                for v in 0..nvars {
                    let f = e.add(&Exponent::unit(nvars, v));
                    if !next.contains(&f) {
                        next.push(f);
                    }
                }
            }
            elements.extend(next.iter().cloned());
            frontier = next;
        }
        elements.sort();
        Basis { nvars, elements }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Exponent] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Largest element degree.
    pub fn degree(&self) -> u32 {
        self.elements.iter().map(Exponent::degree).max().unwrap_or(0)
    }

    pub fn position(&self, e: &Exponent) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    /// `b(x)` as polynomials.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements
            .iter()
            .map(|e| Polynomial::monomial(Rational::from_integer(1.into()), e.clone()))
            .collect()
    }

    fn ordered(nvars: usize, set: Vec<Exponent>) -> Basis {
        let mut elements = set;
        elements.sort();
        elements.dedup();
        Basis { nvars, elements }
    }
}

/// The basis `{1} ∪ {x^α : c_α ≠ 0}`: element 1 first, then the monomials of `p` in grlex order.
pub fn direct_basis(p: &Polynomial) -> Basis {
    let mut elements = vec![Exponent::zero(p.nvars())];
    elements.extend(p.terms().map(|(e, _)| e.clone()).filter(|e| !e.is_constant()));
    Basis {
        nvars: p.nvars(),
        elements,
    }
}

/// Index pair `(i, j)` with `b_i · b_j = x^monomial`, used to place `c_α` in `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignatedPair {
    pub monomial: Exponent,
    pub i: usize,
    pub j: usize,
}

/// Per-monomial minimal basis elements, as a pair of exponents whose product is `x^α`.
fn minimal_pair(alpha: &Exponent) -> (Exponent, Exponent) {
    let odd = alpha.odd_indices();
    let floor = alpha.half_floor();
    if odd.is_empty() {
        return (floor.clone(), floor);
    }
    let k = odd.len().div_ceil(2);
    let first = floor.add(&Exponent::from_indices(alpha.nvars(), &odd[..k]));
    let second = floor.add(&Exponent::from_indices(alpha.nvars(), &odd[k..]));
    (first, second)
}

/// Minimal basis of `p` (degree `≤ ⌈deg(p)/2⌉`) and the pair designated for each monomial.
pub fn minimal_basis_with_pairs(p: &Polynomial) -> (Basis, Vec<DesignatedPair>) {
    let pairs: Vec<(Exponent, Exponent, Exponent)> = p
        .terms()
        .map(|(e, _)| {
            let (a, b) = minimal_pair(e);
            (e.clone(), a, b)
        })
        .collect();
    let all = pairs
        .iter()
        .flat_map(|(_, a, b)| [a.clone(), b.clone()])
        .collect();
    let basis = Basis::ordered(p.nvars(), all);
    let designated = pairs
        .into_iter()
        .map(|(m, a, b)| {
            let i = basis.position(&a).unwrap();
            let j = basis.position(&b).unwrap();
            DesignatedPair {
                monomial: m,
                i: i.min(j),
                j: i.max(j),
            }
        })
        .collect();
    (basis, designated)
}

/// Union of per-monomial minimal bases: `{x^{α/2}}` for even monomials and
/// the two balanced elements `x^{⌊α/2⌋}·∏_{O₁} x_k`, `x^{⌊α/2⌋}·∏_{O₂} x_k` otherwise.
pub fn minimal_basis(p: &Polynomial) -> Basis {
    minimal_basis_with_pairs(p).0
}

/// Designated pairs for an arbitrary basis: the minimal-basis pair when both of
/// its elements are present, otherwise the first `(i ≤ j)` with `b_i·b_j = x^α`.
pub fn designate_pairs(p: &Polynomial, basis: &Basis) -> Result<Vec<DesignatedPair>> {
    if basis.nvars() != p.nvars() {
        return Err(Error::Dimension {
            expected: p.nvars(),
            found: basis.nvars(),
        });
    }
    let mut out = Vec::with_capacity(p.num_terms());
    'monomials: for (alpha, _) in p.terms() {
        let (a, b) = minimal_pair(alpha);
        if let (Some(i), Some(j)) = (basis.position(&a), basis.position(&b)) {
            out.push(DesignatedPair {
                monomial: alpha.clone(),
                i: i.min(j),
                j: i.max(j),
            });
            continue;
        }
        for (i, bi) in basis.elements().iter().enumerate() {
            if let Some(rest) = alpha.checked_sub(bi) {
                if let Some(j) = basis.position(&rest) {
                    out.push(DesignatedPair {
                        monomial: alpha.clone(),
                        i: i.min(j),
                        j: i.max(j),
                    });
                    continue 'monomials;
                }
            }
        }
        return Err(Error::InvalidBasis(format!(
            "monomial {alpha} is not a product of two basis elements"
        )));
    }
    Ok(out)
}

/// Symmetric rational Gram matrix indexed by basis positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    entries: Vec<Vec<Rational>>,
}

impl GramMatrix {
    pub fn from_entries(entries: Vec<Vec<Rational>>) -> Result<GramMatrix> {
        let r = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != r {
                return Err(Error::Dimension {
                    expected: r,
                    found: row.len(),
                });
            }
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Precondition(format!(
                        "Gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(GramMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(rational_to_f64).collect())
            .collect()
    }

    /// `b(x)ᵀ Q b(x)`.
    pub fn expand(&self, basis: &Basis) -> Polynomial {
        let mut terms = Vec::new();
        for (i, bi) in basis.elements().iter().enumerate() {
            for (j, bj) in basis.elements().iter().enumerate() {
                let q = &self.entries[i][j];
                if !q.is_zero() {
                    terms.push((bi.add(bj), q.clone()));
                }
            }
        }
        Polynomial::from_terms(basis.nvars(), terms).expect("basis elements share nvars")
    }
}

/// Builds `Q` additively: `c_α` on a diagonal pair, `c_α/2` on both mirrored
/// entries of an off-diagonal pair. Fails unless `p = bᵀQb` holds exactly.
pub fn gram_matrix(p: &Polynomial, basis: &Basis, pairs: &[DesignatedPair]) -> Result<GramMatrix> {
    let r = basis.len();
    let mut q = vec![vec![Rational::zero(); r]; r];
    let half = rat(1, 2);
    for (alpha, c) in p.terms() {
        let pair = pairs
            .iter()
            .find(|d| &d.monomial == alpha)
            .ok_or_else(|| Error::InvalidBasis(format!("no designated pair for {alpha}")))?;
        let (i, j) = (pair.i, pair.j);
        if i >= r || j >= r || basis.elements()[i].add(&basis.elements()[j]) != *alpha {
            return Err(Error::InvalidBasis(format!(
                "pair ({i}, {j}) does not produce {alpha}"
            )));
        }
        if i == j {
            q[i][i] += c;
        } else {
            let h = c * &half;
            q[i][j] += &h;
            q[j][i] += &h;
        }
    }
    let gram = GramMatrix { entries: q };
    if gram.expand(basis) != *p {
        return Err(Error::InvalidBasis(
            "designated pairs do not reproduce the polynomial".into(),
        ));
    }
    Ok(gram)
}

/// Spectral factors `Q = P Λ Pᵀ`, eigenvalues sorted in descending order.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenData {
    /// `vectors[i][k]` is entry `i` of eigenvector `k`.
    pub vectors: Vec<Vec<f64>>,
    pub values: Vec<f64>,
    /// Indices `k` with `|λ_k|` above the zero threshold.
    pub kept: Vec<usize>,
    pub sweeps: usize,
}

impl EigenData {
    /// `max |(P Λ Pᵀ − Q)_ij|`.
    pub fn reconstruction_residual(&self, q: &[Vec<f64>]) -> f64 {
        let r = self.values.len();
        let mut worst = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                let v: f64 = (0..r)
                    .map(|k| self.vectors[i][k] * self.values[k] * self.vectors[j][k])
                    .sum();
                worst = worst.max((v - q[i][j]).abs());
            }
        }
        worst
    }

    /// `max |(Pᵀ P − I)_ij|`.
    pub fn orthogonality_residual(&self) -> f64 {
        let r = self.values.len();
        let mut worst = 0.0f64;
        for a in 0..r {
            for b in 0..r {
                let v: f64 = (0..r).map(|i| self.vectors[i][a] * self.vectors[i][b]).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }
}

fn max_offdiag(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut m = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            m = m.max(a[i][j].abs());
        }
    }
    m
}

/// Cyclic Jacobi eigensolver for a symmetric matrix.
///
/// Sweeps over all `(p, q)` pairs until the largest off-diagonal entry is below
/// [`JACOBI_OFFDIAG_TOL`] (scaled by the matrix magnitude when it exceeds 1).
/// `zero_tol` is relative to the largest `|λ|`.
pub fn jacobi_eigen(q: &[Vec<f64>], zero_tol: f64) -> Result<EigenData> {
    let n = q.len();
    for (i, row) in q.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: row.len(),
            });
        }
        for j in 0..i {
            if (q[i][j] - q[j][i]).abs() > 1e-12 * (1.0 + q[i][j].abs()) {
                return Err(Error::Precondition(format!("matrix not symmetric at ({i}, {j})")));
            }
        }
    }
    let scale = q
        .iter()
        .flat_map(|r| r.iter())
        .fold(1.0f64, |m, v| m.max(v.abs()));
    let tol = JACOBI_OFFDIAG_TOL * scale;

    let mut a: Vec<Vec<f64>> = q.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }

    let mut sweeps = 0;
    while max_offdiag(&a) > tol {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::Numerical {
                sweeps,
                residual: max_offdiag(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for r in (p + 1)..n {
                let apr = a[p][r];
                if apr == 0.0 {
                    continue;
                }
                let theta = (a[r][r] - a[p][p]) / (2.0 * apr);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for row in a.iter_mut() {
                    let (akp, akr) = (row[p], row[r]);
                    row[p] = c * akp - s * akr;
                    row[r] = s * akp + c * akr;
                }
                for k in 0..n {
                    let (apk, ark) = (a[p][k], a[r][k]);
                    a[p][k] = c * apk - s * ark;
                    a[r][k] = s * apk + c * ark;
                }
                a[p][r] = 0.0;
                a[r][p] = 0.0;
                for row in v.iter_mut() {
                    let (vkp, vkr) = (row[p], row[r]);
                    row[p] = c * vkp - s * vkr;
                    row[r] = s * vkp + c * vkr;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[y][y].total_cmp(&a[x][x]));
    let values: Vec<f64> = order.iter().map(|&k| a[k][k]).collect();
    let vectors: Vec<Vec<f64>> = (0..n)
        .map(|i| order.iter().map(|&k| v[i][k]).collect())
        .collect();
    let biggest = values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let kept = (0..n)
        .filter(|&k| values[k].abs() > zero_tol * biggest)
        .collect();
    Ok(EigenData {
        vectors,
        values,
        kept,
        sweeps,
    })
}

/// Which basis feeds the spectral decomposition.
#[derive(Clone, Debug, PartialEq)]
pub enum BasisKind {
    Minimal,
    Custom(Basis),
}

/// Every intermediate of a spectral decomposition.
#[derive(Clone, Debug)]
pub struct SpectralResult {
    pub basis: Basis,
    pub gram: GramMatrix,
    pub eigen: EigenData,
    pub decomposition: DsosDecomposition,
}

fn float_poly(basis: &Basis, coeffs: impl Iterator<Item = f64>) -> Polynomial {
    let terms = basis
        .elements()
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| c.abs() > VECTOR_ENTRY_CUTOFF)
        .map(|(e, c)| (e.clone(), rational_from_f64(c)));
    Polynomial::from_terms(basis.nvars(), terms).expect("basis elements share nvars")
}

fn push_signed(d: &mut DsosDecomposition, lambda: f64, base: Polynomial) {
    if lambda == 0.0 || base.is_zero() {
        return;
    }
    let t = SquareTerm::new(rational_from_f64(lambda.abs()), base);
    if lambda > 0.0 {
        d.positive.push(t);
    } else {
        d.negative.push(t);
    }
}

/// Spectral decomposition over a minimal or caller-supplied basis, keeping all intermediates.
pub fn spectral_decompose(p: &Polynomial, basis_kind: &BasisKind) -> Result<SpectralResult> {
    let (basis, pairs) = match basis_kind {
        BasisKind::Minimal => minimal_basis_with_pairs(p),
        BasisKind::Custom(b) => {
            let pairs = designate_pairs(p, b)?;
            (b.clone(), pairs)
        }
    };
    let gram = gram_matrix(p, &basis, &pairs)?;
    let qf = gram.to_f64();
    let eigen = jacobi_eigen(&qf, ZERO_EIGEN_TOL)?;
    let mut d = DsosDecomposition::empty(p.nvars());
    d.exactness = Exactness::Floating;
    for &k in &eigen.kept {
        let y = float_poly(&basis, eigen.vectors.iter().map(|row| row[k]));
        push_signed(&mut d, eigen.values[k], y);
    }
    Ok(SpectralResult {
        basis,
        gram,
        eigen,
        decomposition: d,
    })
}

/// `p = Σ_{k ∈ K} λ_k y_k²`. Constant inputs give the exact `c·1²`.
pub fn dsos_spectral(p: &Polynomial, basis_kind: &BasisKind) -> Result<DsosDecomposition> {
    if p.degree() == 0 {
        return Ok(DsosDecomposition::constant(p.nvars(), &p.constant_term()));
    }
    Ok(spectral_decompose(p, basis_kind)?.decomposition)
}

/// Closed-form eigenpairs of the direct-basis Gram matrix.
#[derive(Clone, Debug)]
pub struct DirectSpectral {
    pub basis: Basis,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
    /// Unit eigenvector for `λ⁺`, first entry positive.
    pub v_plus: Vec<f64>,
    /// Unit eigenvector for `λ⁻`, first entry positive.
    pub v_minus: Vec<f64>,
    pub decomposition: DsosDecomposition,
}

/// Two-square decomposition over the direct basis.
///
/// The direct-basis Gram matrix is zero except for its first row and column,
/// so it has exactly two nonzero eigenvalues `λ± = (c₀ ± √Σc²)/2`.
pub fn direct_spectral(p: &Polynomial) -> Result<DirectSpectral> {
    if p.degree() == 0 {
        return Err(Error::Degenerate(
            "constant polynomial has no nonconstant monomial; use the trivial decomposition".into(),
        ));
    }
    let basis = direct_basis(p);
    let c0 = rational_to_f64(&p.constant_term());
    let rest: Vec<f64> = basis.elements()[1..]
        .iter()
        .map(|e| rational_to_f64(&p.coeff(e)))
        .collect();
    // sums of squares taken exactly before the single rounding of the square root
    let t_exact: Rational = p
        .terms()
        .filter(|(e, _)| !e.is_constant())
        .map(|(_, c)| c * c)
        .sum();
    let s_exact = &t_exact + p.constant_term() * p.constant_term();
    let t = rational_to_f64(&t_exact);
    let root = rational_to_f64(&s_exact).sqrt();

    // algebraically equivalent forms chosen to avoid cancellation
    let (lambda_plus, lambda_minus, vp_ratio, vm_ratio) = if c0 >= 0.0 {
        let lp = (c0 + root) / 2.0;
        (lp, -t / (4.0 * lp), 1.0 / (root + c0), (root + c0) / t)
    } else {
        let lm = (c0 - root) / 2.0;
        (-t / (4.0 * lm), lm, (root - c0) / t, 1.0 / (root - c0))
    };
    let mut vp = vec![1.0];
    vp.extend(rest.iter().map(|c| c * vp_ratio));
    let mut vm = vec![1.0];
    vm.extend(rest.iter().map(|c| -c * vm_ratio));

    let norm2 = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();
    let (np, nm) = (norm2(&vp), norm2(&vm));

    let mut d = DsosDecomposition::empty(p.nvars());
    d.exactness = Exactness::Floating;
    push_signed(&mut d, lambda_plus / np, float_poly(&basis, vp.iter().copied()));
    push_signed(&mut d, lambda_minus / nm, float_poly(&basis, vm.iter().copied()));

    let unit = |v: &[f64], n: f64| v.iter().map(|x| x / n.sqrt()).collect::<Vec<_>>();
    Ok(DirectSpectral {
        v_plus: unit(&vp, np),
        v_minus: unit(&vm, nm),
        basis,
        lambda_plus,
        lambda_minus,
        decomposition: d,
    })
}

/// Direct-basis spectral DSOS: exactly two squares, components of degree `≤ 2·deg(p)`.
pub fn dsos_spectral_direct(p: &Polynomial) -> Result<DsosDecomposition> {
    Ok(direct_spectral(p)?.decomposition)
}

/// Direct-basis Gram matrix (first row/column `c₀, c_i/2`, zero elsewhere).
pub fn direct_gram(p: &Polynomial) -> (Basis, GramMatrix) {
    let basis = direct_basis(p);
    let pairs = basis
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| !p.coeff(e).is_zero())
        .map(|(i, e)| DesignatedPair {
            monomial: e.clone(),
            i: 0,
            j: i,
        })
        .collect::<Vec<_>>();
    let gram = gram_matrix(p, &basis, &pairs).expect("direct basis is valid");
    (basis, gram)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::poly::int;

    fn e(a: &[u32]) -> Exponent {
        Exponent::new(a.to_vec())
    }

    fn elems(b: &Basis) -> Vec<Exponent> {
        b.elements().to_vec()
    }

    #[test]
    fn direct_basis_examples() {
        let b = direct_basis(&parse("5 + x1*x2", 2).unwrap());
        assert_eq!(elems(&b), vec![e(&[0, 0]), e(&[1, 1])]);
        let b = direct_basis(&parse("x1 + x1^2", 1).unwrap());
        assert_eq!(elems(&b), vec![e(&[0]), e(&[1]), e(&[2])]);
        let b = direct_basis(&parse("2+2*x1+2*x2^3+2*x1^2*x2", 2).unwrap());
        assert_eq!(elems(&b), vec![e(&[0, 0]), e(&[1, 0]), e(&[0, 3]), e(&[2, 1])]);
    }

    #[test]
    fn minimal_basis_examples() {
        assert_eq!(elems(&minimal_basis(&parse("x1^2", 1).unwrap())), vec![e(&[1])]);
        assert_eq!(
            elems(&minimal_basis(&parse("x1*x2^3", 2).unwrap())),
            vec![e(&[0, 2]), e(&[1, 1])]
        );
        assert_eq!(
            elems(&minimal_basis(&parse("x1^2 + x2^2 - 3*x1*x2", 2).unwrap())),
            vec![e(&[0, 1]), e(&[1, 0])]
        );
        assert_eq!(
            elems(&minimal_basis(&parse("x1^2*x2^6 - 2*x1^3*x2^100 + 10", 2).unwrap())),
            vec![e(&[0, 0]), e(&[1, 3]), e(&[1, 50]), e(&[2, 50])]
        );
    }

    #[test]
    fn gram_of_single_square() {
        let p = parse("x1^2", 1).unwrap();
        let (b, pairs) = minimal_basis_with_pairs(&p);
        let q = gram_matrix(&p, &b, &pairs).unwrap();
        assert_eq!(q.entries(), &[vec![int(1)]]);
    }

    #[test]
    fn gram_rejects_unrepresentable_monomial() {
        let p = parse("x1^3", 1).unwrap();
        let b = Basis::new(1, vec![e(&[0]), e(&[1])]).unwrap();
        assert!(matches!(designate_pairs(&p, &b), Err(Error::InvalidBasis(_))));
        assert!(matches!(gram_matrix(&p, &b, &[]), Err(Error::InvalidBasis(_))));
    }

    #[test]
    fn basis_rejects_duplicates() {
        assert!(Basis::new(1, vec![e(&[1]), e(&[1])]).is_err());
    }

    #[test]
    fn full_basis_size() {
        // C(2 + 2, 2)
        assert_eq!(Basis::full(2, 2).len(), 6);
        assert_eq!(Basis::full(3, 1).len(), 4);
    }

    #[test]
    fn jacobi_identity() {
        let i3 = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let ed = jacobi_eigen(&i3, ZERO_EIGEN_TOL).unwrap();
        assert_eq!(ed.values, vec![1.0, 1.0, 1.0]);
        assert!(ed.orthogonality_residual() < 1e-12);
        assert_eq!(ed.kept, vec![0, 1, 2]);
    }

    #[test]
    fn jacobi_drops_zero_eigenvalues() {
        let q = vec![vec![1.0, 1.0], vec![1.0, 1.0]];
        let ed = jacobi_eigen(&q, ZERO_EIGEN_TOL).unwrap();
        assert!((ed.values[0] - 2.0).abs() < 1e-12);
        assert_eq!(ed.kept, vec![0]);
    }

    #[test]
    fn direct_requires_nonconstant() {
        assert!(matches!(
            direct_spectral(&Polynomial::constant(2, int(3))),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn direct_linear_polynomial() {
        let r = direct_spectral(&parse("2*x1", 1).unwrap()).unwrap();
        assert!((r.lambda_plus - 1.0).abs() < 1e-15);
        assert!((r.lambda_minus + 1.0).abs() < 1e-15);
        assert_eq!(r.decomposition.square_count(), 2);
    }

    #[test]
    fn constant_spectral_is_trivial() {
        let d = dsos_spectral(&Polynomial::constant(2, int(-4)), &BasisKind::Minimal).unwrap();
        assert_eq!(d.exactness, Exactness::Exact);
        assert_eq!(d.negative, vec![SquareTerm::new(int(4), Polynomial::one(2))]);
    }
}
