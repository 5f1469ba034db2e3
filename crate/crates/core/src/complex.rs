//! Complex vectors with the symmetric (non-Hermitian) bilinear form,
//! projective points with scale-invariant equality, and the shared
//! tolerance policy.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute and relative tolerances shared by every module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute tolerance for residuals.
    pub eq_tol: f64,
    /// Tolerance for projective equality (normalized 2x2 minors).
    pub proj_tol: f64,
    /// Finite-difference step.
    pub fd_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eq_tol: 1e-10,
            proj_tol: 1e-9,
            fd_step: 1e-4,
        }
    }
}

impl Tolerances {
    pub fn new(eq_tol: f64, proj_tol: f64, fd_step: f64) -> Result<Self> {
        if eq_tol <= 0.0 || proj_tol <= 0.0 || fd_step <= 0.0 {
            return Err(Error::InvalidParameter(
                "tolerances must be strictly positive".into(),
            ));
        }
        Ok(Tolerances {
            eq_tol,
            proj_tol,
            fd_step,
        })
    }
}

/// Ordered list of complex scalars carrying the symmetric bilinear form
/// `<z,w> = sum z_i w_i` (no conjugation).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexVector {
    entries: Vec<Complex64>,
}

impl ComplexVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        ComplexVector { entries }
    }

    pub fn from_real(xs: &[f64]) -> Self {
        ComplexVector {
            entries: xs.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        ComplexVector {
            entries: vec![Complex64::new(0.0, 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    /// Real parts, as a real vector.
    pub fn re(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.re).collect()
    }

    /// Imaginary parts, as a real vector.
    pub fn im(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.im).collect()
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.entries.iter().all(|z| z.im.abs() <= tol)
    }

    pub fn add(&self, other: &ComplexVector) -> Result<ComplexVector> {
        self.check_dim(other)?;
        Ok(ComplexVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &ComplexVector) -> Result<ComplexVector> {
        self.check_dim(other)?;
        Ok(ComplexVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, lambda: Complex64) -> ComplexVector {
        ComplexVector {
            entries: self.entries.iter().map(|a| a * lambda).collect(),
        }
    }

    /// Hermitian norm `sqrt(sum |z_i|^2)`.
    pub fn norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    fn check_dim(&self, other: &ComplexVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

/// The symmetric bilinear form `<z,w> = sum z_i w_i`, with no conjugation.
pub fn bilinear(z: &ComplexVector, w: &ComplexVector) -> Result<Complex64> {
    if z.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: w.dim(),
        });
    }
    Ok(z.entries
        .iter()
        .zip(&w.entries)
        .map(|(a, b)| a * b)
        .sum())
}

/// Homogeneous complex coordinates modulo nonzero complex scale.
#[derive(Debug, Clone)]
pub struct ProjectivePoint {
    homogeneous: ComplexVector,
}

impl ProjectivePoint {
    pub fn new(homogeneous: ComplexVector) -> Result<Self> {
        if homogeneous.dim() < 2 {
            return Err(Error::InvalidParameter(
                "projective points need dimension >= 2".into(),
            ));
        }
        if homogeneous.norm() == 0.0 {
            return Err(Error::ZeroVector);
        }
        Ok(ProjectivePoint { homogeneous })
    }

    pub fn coords(&self) -> &ComplexVector {
        &self.homogeneous
    }

    pub fn dim(&self) -> usize {
        self.homogeneous.dim()
    }
}

/// Scale-invariant equality: all 2x2 minors of the stacked 2 x dim matrix
/// [P; Q] must vanish after normalizing each row to unit Hermitian norm.
pub fn proj_equal(p: &ProjectivePoint, q: &ProjectivePoint, tol: &Tolerances) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            left: p.dim(),
            right: q.dim(),
        });
    }
    let np = p.homogeneous.norm();
    let nq = q.homogeneous.norm();
    if np == 0.0 || nq == 0.0 {
        return Err(Error::ZeroVector);
    }
    let a = &p.homogeneous;
    let b = &q.homogeneous;
    let n = p.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let minor = (a.entry(i) * b.entry(j) - a.entry(j) * b.entry(i)) / (np * nq);
            if minor.norm() > tol.proj_tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Serde helper: a complex scalar serialized as a two-element `[re, im]` array.
#[derive(Serialize, Deserialize)]
pub struct ComplexPair(pub f64, pub f64);

impl From<Complex64> for ComplexPair {
    fn from(z: Complex64) -> Self {
        ComplexPair(z.re, z.im)
    }
}

impl From<ComplexPair> for Complex64 {
    fn from(p: ComplexPair) -> Self {
        Complex64::new(p.0, p.1)
    }
}

pub fn complex_to_json(z: Complex64) -> serde_json::Value {
    serde_json::json!([z.re, z.im])
}

pub fn vector_to_json(v: &ComplexVector) -> serde_json::Value {
    serde_json::Value::Array(v.entries().iter().map(|&z| complex_to_json(z)).collect())
}

pub fn vector_from_json(value: &serde_json::Value) -> Result<ComplexVector> {
    let arr = value
        .as_array()
        .ok_or_else(|| Error::Usage("expected a JSON array of [re,im] pairs".into()))?;
    let mut entries = Vec::with_capacity(arr.len());
    for item in arr {
        let pair = item
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Usage("each entry must be an [re,im] pair".into()))?;
        let re = pair[0]
            .as_f64()
            .ok_or_else(|| Error::Usage("non-numeric entry".into()))?;
        let im = pair[1]
            .as_f64()
            .ok_or_else(|| Error::Usage("non-numeric entry".into()))?;
        entries.push(Complex64::new(re, im));
    }
    Ok(ComplexVector::new(entries))
}
