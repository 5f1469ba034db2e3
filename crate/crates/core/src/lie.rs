//! The homogeneous model for null separation: SO(2m+2, C) with the split
//! quadratic form, sampling of the parabolic subgroups P and Q via the
//! explicit factorizations, the PQP membership test C_11 = 0, the affine
//! chart on G/P, and a numerical rank estimate of dim PQP.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

use crate::complex::Tolerances;
use crate::error::{Error, Result};

type CMatrix = DMatrix<Complex64>;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn cone() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// An element of SO(2m+2, C) preserving the block-antidiagonal form
/// J = [[0, I], [I, 0]] in (m+1)-blocks.
#[derive(Debug, Clone)]
pub struct SOElement {
    pub matrix: CMatrix,
    pub m: usize,
}

/// The split form J in (m+1)-blocks.
pub fn split_form(half: usize) -> CMatrix {
    let n = 2 * half;
    CMatrix::from_fn(n, n, |i, j| {
        if i + half == j || j + half == i {
            cone()
        } else {
            czero()
        }
    })
}

fn max_abs(mat: &CMatrix) -> f64 {
    mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl SOElement {
    pub fn new(matrix: CMatrix, m: usize, tol: &Tolerances) -> Result<Self> {
        let elem = SOElement { matrix, m };
        let r = elem.orthogonality_residual()?;
        if r.total > 100.0 * tol.eq_tol {
            return Err(Error::NotInGroup(r.total));
        }
        Ok(elem)
    }

    /// Construct without the residual check, for internal factors known to
    /// satisfy the form by construction.
    fn unchecked(matrix: CMatrix, m: usize) -> Self {
        SOElement { matrix, m }
    }

    pub fn size(&self) -> usize {
        2 * (self.m + 1)
    }

    pub fn identity(m: usize) -> Self {
        SOElement::unchecked(CMatrix::identity(2 * (m + 1), 2 * (m + 1)), m)
    }

    pub fn mul(&self, other: &SOElement) -> SOElement {
        SOElement::unchecked(&self.matrix * &other.matrix, self.m)
    }

    /// g^{-1} = J g^t J, a consequence of g^t J g = J.
    pub fn inverse(&self) -> SOElement {
        let j = split_form(self.m + 1);
        SOElement::unchecked(&j * self.matrix.transpose() * &j, self.m)
    }

    /// The top-left entry of the C block (global row m+1, column 0).
    pub fn c11(&self) -> Complex64 {
        self.matrix[(self.m + 1, 0)]
    }

    pub fn orthogonality_residual(&self) -> Result<OrthogonalityResidual> {
        let n = self.matrix.nrows();
        if n != self.matrix.ncols() || n < 6 || n % 2 != 0 || n != 2 * (self.m + 1) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: 2 * (self.m + 1),
            });
        }
        let half = self.m + 1;
        let j = split_form(half);
        let total = max_abs(&(self.matrix.transpose() * &j * &self.matrix - &j));
        let a = self.matrix.view((0, 0), (half, half)).into_owned();
        let b = self.matrix.view((0, half), (half, half)).into_owned();
        let c = self.matrix.view((half, 0), (half, half)).into_owned();
        let d = self.matrix.view((half, half), (half, half)).into_owned();
        Ok(OrthogonalityResidual {
            total,
            at_c: max_abs(&(a.transpose() * &c + c.transpose() * &a)),
            ad_cb: max_abs(&(a.transpose() * &d + c.transpose() * &b - CMatrix::identity(half, half))),
            bd_db: max_abs(&(b.transpose() * &d + d.transpose() * &b)),
        })
    }
}

/// Max-norm of g^t J g - J together with the three block constraints.
#[derive(Debug, Clone, Copy)]
pub struct OrthogonalityResidual {
    pub total: f64,
    /// |A^t C + C^t A|
    pub at_c: f64,
    /// |A^t D + C^t B - I|
    pub ad_cb: f64,
    /// |B^t D + D^t B|
    pub bd_db: f64,
}

/// Verdict of the PQP membership test.
#[derive(Debug, Clone, Copy)]
pub struct PQPVerdict {
    pub c11: Complex64,
    pub member: bool,
}

/// Membership in PQP = {C_11 = 0}, relative to the matrix max-norm.
pub fn pqp_member(g: &SOElement, tol: &Tolerances) -> Result<PQPVerdict> {
    let r = g.orthogonality_residual()?;
    if r.total > 1e-8 {
        return Err(Error::NotInGroup(r.total));
    }
    let c11 = g.c11();
    Ok(PQPVerdict {
        c11,
        member: c11.norm() <= tol.eq_tol * max_abs(&g.matrix),
    })
}

// ---------------------------------------------------------------------------
// Lie algebra bases and the matrix exponential

/// Basis of so(2k, C) for the split form: X = [[a, b], [c, -a^t]] with b, c
/// skew, in k x k blocks.
pub fn so_algebra_basis(k: usize) -> Vec<CMatrix> {
    let n = 2 * k;
    let mut basis = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let mut x = CMatrix::zeros(n, n);
            x[(i, j)] = cone();
            x[(k + j, k + i)] = -cone();
            basis.push(x);
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let mut x = CMatrix::zeros(n, n);
            x[(i, k + j)] = cone();
            x[(j, k + i)] = -cone();
            basis.push(x);
            let mut x = CMatrix::zeros(n, n);
            x[(k + i, j)] = cone();
            x[(k + j, i)] = -cone();
            basis.push(x);
        }
    }
    basis
}

/// Basis of the Lie algebra of P: elements of so(2m+2, C) whose first
/// column is proportional to e_1.
pub fn p_algebra_basis(m: usize) -> Vec<CMatrix> {
    let k = m + 1;
    let n = 2 * k;
    let mut basis = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if j == 0 && i > 0 {
                continue; // would move e_1 off its line
            }
            let mut x = CMatrix::zeros(n, n);
            x[(i, j)] = cone();
            x[(k + j, k + i)] = -cone();
            basis.push(x);
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let mut x = CMatrix::zeros(n, n);
            x[(i, k + j)] = cone();
            x[(j, k + i)] = -cone();
            basis.push(x);
        }
    }
    // the lower-left skew block must keep its first column zero
    for i in 1..k {
        for j in (i + 1)..k {
            let mut x = CMatrix::zeros(n, n);
            x[(k + i, j)] = cone();
            x[(k + j, i)] = -cone();
            basis.push(x);
        }
    }
    basis
}

/// Basis of the Lie algebra of Q: block upper-triangular elements of
/// so(2m+2, C).
pub fn q_algebra_basis(m: usize) -> Vec<CMatrix> {
    let k = m + 1;
    let n = 2 * k;
    let mut basis = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let mut x = CMatrix::zeros(n, n);
            x[(i, j)] = cone();
            x[(k + j, k + i)] = -cone();
            basis.push(x);
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            let mut x = CMatrix::zeros(n, n);
            x[(i, k + j)] = cone();
            x[(j, k + i)] = -cone();
            basis.push(x);
        }
    }
    basis
}

/// dim P = 2m^2 + m + 1.
pub fn dim_p(m: usize) -> usize {
    2 * m * m + m + 1
}

/// dim Q = (3m + 2)(m + 1) / 2.
pub fn dim_q(m: usize) -> usize {
    (3 * m + 2) * (m + 1) / 2
}

/// dim G = (m + 1)(2m + 1).
pub fn dim_g(m: usize) -> usize {
    (m + 1) * (2 * m + 1)
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn matrix_exp(x: &CMatrix) -> CMatrix {
    let n = x.nrows();
    let norm = max_abs(x) * (n as f64);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = x.map(|v| v / (2f64.powi(squarings as i32)));
    let mut term = CMatrix::identity(n, n);
    let mut sum = CMatrix::identity(n, n);
    for k in 1..64 {
        term = (&term * &scaled).map(|v| v / (k as f64));
        sum += &term;
        if max_abs(&term) < 1e-18 {
            break;
        }
    }
    let mut out = sum;
    for _ in 0..squarings {
        out = &out * &out;
    }
    out
}

// ---------------------------------------------------------------------------
// sampling

fn random_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_algebra_element<R: Rng>(basis: &[CMatrix], rng: &mut R) -> CMatrix {
    let n = basis[0].nrows();
    let mut x = CMatrix::zeros(n, n);
    for b in basis {
        let coeff = random_complex(rng);
        x += b.map(|v| v * coeff);
    }
    // keep the exponent's norm around 1 so products stay well-conditioned
    let norm = max_abs(&x);
    if norm > 1.0 {
        x = x.map(|v| v / norm);
    }
    x
}

/// A generic group element: the exponential of a random Lie-algebra element.
pub fn sample_g<R: Rng>(m: usize, rng: &mut R) -> SOElement {
    let k = m + 1;
    let x = random_algebra_element(&so_algebra_basis(k), rng);
    SOElement::unchecked(matrix_exp(&x), m)
}

/// Draw an element of P through the displayed two-factor product: the
/// (lambda, SO(2m)) block-diagonal factor times the unipotent (p, q) factor.
pub fn sample_p<R: Rng>(m: usize, rng: &mut R) -> SOElement {
    let k = m + 1;
    let n = 2 * k;

    let mut lambda = random_complex(rng);
    while lambda.norm() < 0.2 {
        lambda = random_complex(rng);
    }
    let so2m = matrix_exp(&random_algebra_element(&so_algebra_basis(m), rng));
    let p_vec: Vec<Complex64> = (0..m).map(|_| random_complex(rng)).collect();
    let q_vec: Vec<Complex64> = (0..m).map(|_| random_complex(rng)).collect();
    p_factors(m, lambda, &so2m, &p_vec, &q_vec, n)
}

fn p_factors(
    m: usize,
    lambda: Complex64,
    so2m: &CMatrix,
    p_vec: &[Complex64],
    q_vec: &[Complex64],
    n: usize,
) -> SOElement {
    let k = m + 1;
    // factor 1: lambda at (0,0), lambda^{-1} at (k,k), SO(2m) block spread
    // over the (x_1..x_m, y_1..y_m) coordinates
    let mut f1 = CMatrix::zeros(n, n);
    f1[(0, 0)] = lambda;
    f1[(k, k)] = cone() / lambda;
    for i in 0..m {
        for j in 0..m {
            f1[(1 + i, 1 + j)] = so2m[(i, j)];
            f1[(1 + i, k + 1 + j)] = so2m[(i, m + j)];
            f1[(k + 1 + i, 1 + j)] = so2m[(m + i, j)];
            f1[(k + 1 + i, k + 1 + j)] = so2m[(m + i, m + j)];
        }
    }
    // factor 2: [[1, -q^t, -p^t q, -p^t], [0, I, p, 0], [0, 0, 1, 0],
    // [0, 0, q, I]] in block sizes (1, m, 1, m)
    let mut f2 = CMatrix::identity(n, n);
    let ptq: Complex64 = p_vec.iter().zip(q_vec).map(|(a, b)| a * b).sum();
    f2[(0, k)] = -ptq;
    for i in 0..m {
        f2[(0, 1 + i)] = -q_vec[i];
        f2[(0, k + 1 + i)] = -p_vec[i];
        f2[(1 + i, k)] = p_vec[i];
        f2[(k + 1 + i, k)] = q_vec[i];
    }
    SOElement::unchecked(&f1 * &f2, m)
}

/// Draw an element of Q = {(A, AE; 0, (A^t)^{-1})} with A invertible
/// (condition number below 1e6) and E skew.
pub fn sample_q<R: Rng>(m: usize, rng: &mut R) -> SOElement {
    let k = m + 1;
    let n = 2 * k;
    let a = loop {
        let cand = CMatrix::from_fn(k, k, |_, _| random_complex(rng));
        let svd = cand.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin > 0.0 && smax / smin < 1e6 {
            break cand;
        }
    };
    let mut e = CMatrix::zeros(k, k);
    for i in 0..k {
        for j in (i + 1)..k {
            let v = random_complex(rng);
            e[(i, j)] = v;
            e[(j, i)] = -v;
        }
    }
    let d = a
        .transpose()
        .try_inverse()
        .expect("condition number already bounded");
    let b = &a * &e;
    let mut g = CMatrix::zeros(n, n);
    for i in 0..k {
        for j in 0..k {
            g[(i, j)] = a[(i, j)];
            g[(i, k + j)] = b[(i, j)];
            g[(k + i, k + j)] = d[(i, j)];
        }
    }
    SOElement::unchecked(g, m)
}

/// The affine chart (x, y) -> [[1,0,0,0],[x,I,0,0],[-x^t y, -y^t, 1, -x^t],
/// [y,0,0,I]] on G/P, in block sizes (1, m, 1, m). Vector addition
/// corresponds exactly to matrix multiplication.
pub fn affine_chart(x: &[Complex64], y: &[Complex64], m: usize) -> Result<SOElement> {
    if x.len() != m || y.len() != m {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: m,
        });
    }
    let k = m + 1;
    let n = 2 * k;
    let mut g = CMatrix::identity(n, n);
    let xty: Complex64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    g[(k, 0)] = -xty;
    for i in 0..m {
        g[(1 + i, 0)] = x[i];
        g[(k, 1 + i)] = -y[i];
        g[(k, k + 1 + i)] = -x[i];
        g[(k + 1 + i, 0)] = y[i];
    }
    Ok(SOElement::unchecked(g, m))
}

/// Null separation through both routes: the dot-product test
/// (x - x')^t (y - y') = 0 and the group-theoretic C_11 test on
/// chart(x', y')^{-1} chart(x, y). The two must agree.
pub fn null_related(
    x: &[Complex64],
    y: &[Complex64],
    xp: &[Complex64],
    yp: &[Complex64],
    m: usize,
    tol: &Tolerances,
) -> Result<bool> {
    let dot: Complex64 = x
        .iter()
        .zip(xp)
        .zip(y.iter().zip(yp))
        .map(|((a, ap), (b, bp))| (a - ap) * (b - bp))
        .sum();
    let direct = dot.norm() <= tol.eq_tol;
    let g = affine_chart(xp, yp, m)?.inverse().mul(&affine_chart(x, y, m)?);
    let verdict = pqp_member(&g, tol)?;
    if direct != verdict.member {
        return Err(Error::InternalConsistency(format!(
            "dot-product test ({}) disagrees with C_11 test ({}, C_11 = {})",
            direct, verdict.member, verdict.c11
        )));
    }
    Ok(direct)
}

/// Numerical rank of the differential of (p, q, p') -> p q p' at random
/// factors: the span of X g, p Y q p', p q Z p' over the Lie-algebra bases
/// of P, Q, P. Returns the modal rank over the trials together with every
/// observed value.
pub fn pqp_rank_estimate<R: Rng>(m: usize, trials: usize, rng: &mut R) -> Result<(usize, Vec<usize>)> {
    if !(2..=4).contains(&m) {
        return Err(Error::InvalidParameter("rank estimate supports m in {2, 3, 4}".into()));
    }
    if trials < 5 {
        return Err(Error::InvalidParameter("need at least 5 trials".into()));
    }
    let p_basis = p_algebra_basis(m);
    let q_basis = q_algebra_basis(m);
    let mut observed = Vec::with_capacity(trials);
    for _ in 0..trials {
        let p = sample_p(m, rng);
        let q = sample_q(m, rng);
        let p2 = sample_p(m, rng);
        let qp2 = q.mul(&p2).matrix;
        let pq = p.mul(&q).matrix;
        let mut columns: Vec<CMatrix> = Vec::new();
        for x in &p_basis {
            columns.push(x * &p.matrix * &qp2);
        }
        for y in &q_basis {
            columns.push(&p.matrix * y * &qp2);
        }
        for z in &p_basis {
            columns.push(&pq * z * &p2.matrix);
        }
        observed.push(numerical_rank(&columns));
    }
    let mut counts = std::collections::HashMap::new();
    for &r in &observed {
        *counts.entry(r).or_insert(0usize) += 1;
    }
    let modal = *counts
        .iter()
        .max_by_key(|(_, &c)| c)
        .map(|(r, _)| r)
        .unwrap();
    Ok((modal, observed))
}

/// Rank of the span of a list of matrices, flattened into columns, by SVD
/// with threshold 1e-8 times the largest singular value.
fn numerical_rank(columns: &[CMatrix]) -> usize {
    let rows = columns[0].len();
    let mut stacked = CMatrix::zeros(rows, columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            stacked[(i, j)] = v;
        }
    }
    let svd = stacked.svd(false, false);
    let smax = svd.singular_values.max();
    if smax == 0.0 {
        return 0;
    }
    svd.singular_values.iter().filter(|&&s| s > 1e-8 * smax).count()
}

/// Rank of the single-factor map p -> p, for sanity checks: equals dim P.
pub fn p_orbit_rank<R: Rng>(m: usize, rng: &mut R) -> usize {
    let p = sample_p(m, rng);
    let columns: Vec<CMatrix> = p_algebra_basis(m)
        .iter()
        .map(|x| x * &p.matrix)
        .collect();
    numerical_rank(&columns)
}
