//! Hull-membership testing: the real slice of the isotropic cone, exact
//! sphere-vs-obstacle predicates, the three-valued membership verdict, the
//! 2D simply-connected formula, and Newtonian potentials in even dimensions.

use num_complex::Complex64;

use crate::complex::{bilinear, ComplexVector, Tolerances};
use crate::error::{Error, Result};
use crate::region::{Obstacle, RegionExpr};

/// The real slice V(z) n R^n: an (n-2)-sphere {w : |w-x| = r, <w-x,u> = 0}
/// with center x = Re z, radius r = |Im z|, axis u = Im z / |Im z|, or the
/// single point x when Im z = 0.
#[derive(Debug, Clone)]
pub struct ConeSliceSphere {
    pub center: Vec<f64>,
    pub radius: f64,
    /// Unit axis; `None` when the slice degenerates to the point `center`.
    pub axis: Option<Vec<f64>>,
}

/// Outcome of a hull-membership query.
#[derive(Debug, Clone)]
pub enum HullVerdict {
    MemberCertified,
    ConeFailsObstacle { witness: String },
    ConeOkConnectivityUnverified { detail: String },
}

impl HullVerdict {
    pub fn code(&self) -> u8 {
        match self {
            HullVerdict::MemberCertified => 0,
            HullVerdict::ConeFailsObstacle { .. } => 1,
            HullVerdict::ConeOkConnectivityUnverified { .. } => 2,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Split V(z) n R^n into center/radius/axis form.
pub fn real_cone_slice(z: &ComplexVector) -> Result<ConeSliceSphere> {
    if z.dim() < 2 {
        return Err(Error::InvalidParameter("need dimension >= 2".into()));
    }
    let x = z.re();
    let y = z.im();
    let r = norm(&y);
    if r == 0.0 {
        return Ok(ConeSliceSphere {
            center: x,
            radius: 0.0,
            axis: None,
        });
    }
    let axis = y.iter().map(|v| v / r).collect();
    Ok(ConeSliceSphere {
        center: x,
        radius: r,
        axis: Some(axis),
    })
}

impl ConeSliceSphere {
    /// Euclidean distance from a real point to the slice, in closed form:
    /// with p - x = a u + q, q orthogonal to u, dist^2 = a^2 + (|q| - r)^2.
    pub fn distance_to_point(&self, p: &[f64]) -> f64 {
        let diff: Vec<f64> = p.iter().zip(&self.center).map(|(a, b)| a - b).collect();
        match &self.axis {
            None => norm(&diff),
            Some(u) => {
                let a = dot(&diff, u);
                let q_norm_sq = dot(&diff, &diff) - a * a;
                let q_norm = q_norm_sq.max(0.0).sqrt();
                (a * a + (q_norm - self.radius) * (q_norm - self.radius)).sqrt()
            }
        }
    }

    /// Exact containment in the open half-space {w : n.w > b}:
    /// min over the slice of n.w is n.x - r |n - (n.u) u|.
    pub fn inside_halfspace(&self, normal: &[f64], offset: f64) -> bool {
        let nx = dot(normal, &self.center);
        match &self.axis {
            None => nx > offset,
            Some(u) => {
                let nu = dot(normal, u);
                let tangential: Vec<f64> = normal
                    .iter()
                    .zip(u)
                    .map(|(ni, ui)| ni - nu * ui)
                    .collect();
                nx - self.radius * norm(&tangential) > offset
            }
        }
    }

    /// Points on the slice: center + r v with v a unit vector orthogonal to
    /// the axis, drawn from a deterministic Gaussian stream so the whole
    /// (n-2)-sphere is covered. Used by the sampling oracle.
    pub fn sample(&self, count: usize) -> Vec<Vec<f64>> {
        let n = self.center.len();
        let mut out = Vec::with_capacity(count);
        match &self.axis {
            None => {
                out.push(self.center.clone());
            }
            Some(u) => {
                let basis = orthonormal_complement(u);
                let mut state = 0x9e3779b97f4a7c15u64;
                let mut gauss = || {
                    // Box-Muller on a splitmix64 stream
                    state = state.wrapping_add(0x9e3779b97f4a7c15);
                    let mut z = state;
                    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                    z ^= z >> 31;
                    let u1 = ((z >> 11) as f64) / ((1u64 << 53) as f64);
                    state = state.wrapping_add(0x9e3779b97f4a7c15);
                    let mut w = state;
                    w = (w ^ (w >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                    w = (w ^ (w >> 27)).wrapping_mul(0x94d049bb133111eb);
                    w ^= w >> 31;
                    let u2 = ((w >> 11) as f64) / ((1u64 << 53) as f64);
                    (-2.0 * (u1.max(1e-300)).ln()).sqrt()
                        * (2.0 * std::f64::consts::PI * u2).cos()
                };
                for _ in 0..count {
                    let coeffs: Vec<f64> = basis.iter().map(|_| gauss()).collect();
                    let len = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-300);
                    let mut p = self.center.clone();
                    for (ck, e) in coeffs.iter().zip(&basis) {
                        for i in 0..n {
                            p[i] += self.radius * (ck / len) * e[i];
                        }
                    }
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Orthonormal basis of the hyperplane orthogonal to the unit vector u.
fn orthonormal_complement(u: &[f64]) -> Vec<Vec<f64>> {
    let n = u.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    for i in 0..n {
        let mut v = vec![0.0; n];
        v[i] = 1.0;
        // Gram-Schmidt against u and previously accepted vectors
        let proj = dot(&v, u);
        for j in 0..n {
            v[j] -= proj * u[j];
        }
        for b in &basis {
            let p = dot(&v, b);
            for j in 0..n {
                v[j] -= p * b[j];
            }
        }
        let len = norm(&v);
        if len > 1e-8 {
            basis.push(v.iter().map(|x| x / len).collect());
        }
        if basis.len() == n - 1 {
            break;
        }
    }
    basis
}

/// Exact avoidance of a point or ball obstacle by the cone slice.
pub fn sphere_avoids(slice: &ConeSliceSphere, obstacle: &Obstacle) -> bool {
    match obstacle {
        Obstacle::Point(p) => slice.distance_to_point(p) > 0.0,
        Obstacle::Ball { center, radius } => slice.distance_to_point(center) > *radius,
        Obstacle::HalfSpaceComplement { normal, offset } => {
            slice.inside_halfspace(normal, *offset)
        }
    }
}

fn cone_condition(z: &ComplexVector, obstacles: &[Obstacle]) -> Result<Option<usize>> {
    let slice = real_cone_slice(z)?;
    for (i, obs) in obstacles.iter().enumerate() {
        if !sphere_avoids(&slice, obs) {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Test whether z lies in the hull of U: the cone condition
/// V(z) n R^n contained in U is checked exactly obstacle by obstacle, and
/// connectivity to the basepoint is sampled along the straight segment.
pub fn hull_membership(
    z: &ComplexVector,
    region: &RegionExpr,
    basepoint: &[f64],
    samples: usize,
) -> Result<HullVerdict> {
    let n = region.dimension;
    if n % 2 != 0 || n < 4 {
        return Err(Error::OddDimension(n));
    }
    if z.dim() != n || basepoint.len() != n {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: n,
        });
    }
    if !region.contains(basepoint)? {
        return Err(Error::InvalidParameter(
            "basepoint must lie in the region".into(),
        ));
    }
    let obstacles = region.obstacles()?;
    if let Some(i) = cone_condition(z, &obstacles)? {
        return Ok(HullVerdict::ConeFailsObstacle {
            witness: obstacles[i].describe(),
        });
    }
    // straight segment w(t) = x0 + t (z - x0), t = 1/K .. 1
    let x0 = ComplexVector::from_real(basepoint);
    let dir = z.sub(&x0)?;
    let k = samples.max(1);
    for j in 1..=k {
        let t = (j as f64) / (k as f64);
        let w = x0.add(&dir.scale(Complex64::new(t, 0.0)))?;
        if let Some(i) = cone_condition(&w, &obstacles)? {
            return Ok(HullVerdict::ConeOkConnectivityUnverified {
                detail: format!(
                    "segment sample t = {}/{} violates the cone condition at {}",
                    j,
                    k,
                    obstacles[i].describe()
                ),
            });
        }
    }
    Ok(HullVerdict::MemberCertified)
}

/// Dimension-2 membership: z1 + i z2 in U and z1 - i z2 in the conjugate
/// of U. The caller asserts U is simply connected.
pub fn hull_membership_2d(z: &ComplexVector, region: &RegionExpr) -> Result<bool> {
    if region.dimension != 2 || z.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 2,
        });
    }
    let plus = z.entry(0) + Complex64::new(0.0, 1.0) * z.entry(1);
    let minus = z.entry(0) - Complex64::new(0.0, 1.0) * z.entry(1);
    // w in conj(U) iff conj(w) in U
    let in_u = region.contains(&[plus.re, plus.im])?;
    let in_conj_u = region.contains(&[minus.re, -minus.im])?;
    Ok(in_u && in_conj_u)
}

/// The 2D extension u~(z1, z2) = f(z1 + i z2) + g(z1 - i z2).
pub fn extend_2d<F, G>(f: F, g: G, z: &ComplexVector) -> Result<Complex64>
where
    F: Fn(Complex64) -> Option<Complex64>,
    G: Fn(Complex64) -> Option<Complex64>,
{
    if z.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 2,
        });
    }
    let i = Complex64::new(0.0, 1.0);
    let fv = f(z.entry(0) + i * z.entry(1))
        .ok_or_else(|| Error::Evaluation("f outside its declared domain".into()))?;
    let gv = g(z.entry(0) - i * z.entry(1))
        .ok_or_else(|| Error::Evaluation("g outside its declared domain".into()))?;
    Ok(fv + gv)
}

/// The Newtonian potential r_x(z) = 1 / <z-x, z-x>^(m-1) in R^(2m).
pub fn newtonian_potential(x: &[f64], z: &ComplexVector, tol: &Tolerances) -> Result<Complex64> {
    let n = x.len();
    if z.dim() != n {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: n,
        });
    }
    if n % 2 != 0 || n < 4 {
        return Err(Error::InvalidParameter(
            "newtonian_potential requires even dimension >= 4".into(),
        ));
    }
    let m = n / 2;
    let d = z.sub(&ComplexVector::from_real(x))?;
    let q = bilinear(&d, &d)?;
    if q.norm() <= tol.eq_tol * tol.eq_tol {
        return Err(Error::Singular(format!(
            "z lies on V(x): <z-x, z-x> = {}",
            q
        )));
    }
    Ok(Complex64::new(1.0, 0.0) / q.powu((m - 1) as u32))
}
