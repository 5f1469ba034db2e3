//! The concrete CP^3 <-> Gr_2(C^4) correspondence: twistor lines, the
//! incidence test, Pluecker/quadric machinery, the theta involution, the
//! tau fibration onto S^4, and inverse stereographic projection.

use num_complex::Complex64;

use crate::complex::{bilinear, ComplexVector, ProjectivePoint, Tolerances};
use crate::error::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The projective line in CP^3 attached to a base point z in C^4.
#[derive(Debug, Clone)]
pub struct TwistorLine {
    base: ComplexVector,
}

impl TwistorLine {
    pub fn new(base: ComplexVector) -> Result<Self> {
        if base.dim() != 4 {
            return Err(Error::DimensionMismatch {
                left: base.dim(),
                right: 4,
            });
        }
        Ok(TwistorLine { base })
    }

    pub fn base(&self) -> &ComplexVector {
        &self.base
    }

    pub fn at(&self, zeta: (Complex64, Complex64)) -> Result<ProjectivePoint> {
        embed_line(&self.base, zeta)
    }
}

/// A point of S^4 embedded in R^5.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    pub coords: [f64; 5],
}

impl SpherePoint {
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dist(&self, other: &SpherePoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Evaluate the line of `z` at homogeneous parameter `[zeta_1, zeta_2]`:
/// `[(z1+iz2)w1 + (iz3+z4)w2, (iz3-z4)w1 + (z1-iz2)w2, w1, w2]`.
pub fn embed_line(z: &ComplexVector, zeta: (Complex64, Complex64)) -> Result<ProjectivePoint> {
    if z.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 4,
        });
    }
    let (w1, w2) = zeta;
    if w1.norm() == 0.0 && w2.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let (z1, z2, z3, z4) = (z.entry(0), z.entry(1), z.entry(2), z.entry(3));
    ProjectivePoint::new(ComplexVector::new(vec![
        (z1 + I * z2) * w1 + (I * z3 + z4) * w2,
        (I * z3 - z4) * w1 + (z1 - I * z2) * w2,
        w1,
        w2,
    ]))
}

/// Result of the line-incidence test.
#[derive(Debug, Clone)]
pub struct Incidence {
    pub intersect: bool,
    pub point: Option<ProjectivePoint>,
    /// `<z-z', z-z'>`, the determinant of the 2x2 coefficient matrix.
    pub determinant: Complex64,
}

/// Two twistor lines meet iff the base points are null-separated.
/// When they do, a common point is found by solving the 2x2 linear system
/// shared by both parametrizations.
pub fn lines_intersect(z: &ComplexVector, zp: &ComplexVector, tol: &Tolerances) -> Result<Incidence> {
    let d = z.sub(zp)?;
    let det = bilinear(&d, &d)?;
    if det.norm() > tol.eq_tol {
        return Ok(Incidence {
            intersect: false,
            point: None,
            determinant: det,
        });
    }
    // Common points share the [zeta_1, zeta_2] parameter on both lines, so
    // they are the kernel of M = [[d1+i d2, i d3+d4], [i d3-d4, d1-i d2]].
    let m11 = d.entry(0) + I * d.entry(1);
    let m12 = I * d.entry(2) + d.entry(3);
    let m21 = I * d.entry(2) - d.entry(3);
    let m22 = d.entry(0) - I * d.entry(1);
    // Kernel vector from the larger row; rank 0 means z = z', use [1, 0].
    let r1 = m11.norm().max(m12.norm());
    let r2 = m21.norm().max(m22.norm());
    let zeta = if r1.max(r2) <= tol.eq_tol {
        (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    } else if r1 >= r2 {
        (-m12, m11)
    } else {
        (-m22, m21)
    };
    let point = embed_line(z, zeta)?;
    Ok(Incidence {
        intersect: true,
        point: Some(point),
        determinant: det,
    })
}

/// The antiholomorphic involution `theta[Z1,Z2,Z3,Z4] = [-Z2*, Z1*, -Z4*, Z3*]`.
pub fn theta(z: &ProjectivePoint) -> Result<ProjectivePoint> {
    if z.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 4,
        });
    }
    let c = z.coords();
    ProjectivePoint::new(ComplexVector::new(vec![
        -c.entry(1).conj(),
        c.entry(0).conj(),
        -c.entry(3).conj(),
        c.entry(2).conj(),
    ]))
}

/// The six 2x2 minors `phi_ij = Z_i W_j - Z_j W_i` of the 2x4 matrix [Z; W],
/// ordered (phi_12, phi_13, phi_14, phi_23, phi_24, phi_34).
pub fn pluecker_of_plane(z: &ProjectivePoint, w: &ProjectivePoint) -> Result<ProjectivePoint> {
    if z.dim() != 4 || w.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: w.dim(),
        });
    }
    let a = z.coords();
    let b = w.coords();
    let minor = |i: usize, j: usize| a.entry(i) * b.entry(j) - a.entry(j) * b.entry(i);
    let phi = vec![
        minor(0, 1),
        minor(0, 2),
        minor(0, 3),
        minor(1, 2),
        minor(1, 3),
        minor(2, 3),
    ];
    let norm: f64 = phi.iter().map(|p| p.norm_sqr()).sum::<f64>().sqrt();
    let scale = a.norm() * b.norm();
    if norm <= 1e-14 * scale.max(1.0) {
        return Err(Error::DependentInputs);
    }
    ProjectivePoint::new(ComplexVector::new(phi))
}

/// Pluecker coordinates of the plane attached to a real point x in R^4:
/// `(|x|^2, -ix3-x4, x1+ix2, -x1+ix2, ix3-x4, 1)`.
pub fn pluecker_of_real(x: &[f64; 4]) -> ProjectivePoint {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let nsq = x1 * x1 + x2 * x2 + x3 * x3 + x4 * x4;
    ProjectivePoint::new(ComplexVector::new(vec![
        Complex64::new(nsq, 0.0),
        Complex64::new(-x4, -x3),
        Complex64::new(x1, x2),
        Complex64::new(-x1, x2),
        Complex64::new(-x4, x3),
        Complex64::new(1.0, 0.0),
    ]))
    .expect("last coordinate is 1")
}

/// The quadric form `phi_12 phi_34 - phi_13 phi_24 + phi_14 phi_23` on a
/// given representative (no normalization).
pub fn quadric_form(phi: &ProjectivePoint) -> Result<Complex64> {
    if phi.dim() != 6 {
        return Err(Error::DimensionMismatch {
            left: phi.dim(),
            right: 6,
        });
    }
    let c = phi.coords();
    Ok(c.entry(0) * c.entry(5) - c.entry(1) * c.entry(4) + c.entry(2) * c.entry(3))
}

/// The quadric form normalized by the squared Hermitian norm of the
/// representative, making the residual scale-invariant.
pub fn quadric_residual(phi: &ProjectivePoint) -> Result<Complex64> {
    let q = quadric_form(phi)?;
    let n = phi.coords().norm();
    Ok(q / (n * n))
}

/// The RP^5 -> CP^5 embedding
/// `[xi] -> [xi0-xi5, -i xi3-xi4, xi1+i xi2, -xi1+i xi2, i xi3-xi4, xi0+xi5]`,
/// on which the quadric form restricts to the Lorentz form.
pub fn rp5_embed(xi: &[f64; 6]) -> Result<ProjectivePoint> {
    if xi.iter().all(|&v| v == 0.0) {
        return Err(Error::ZeroVector);
    }
    ProjectivePoint::new(ComplexVector::new(vec![
        Complex64::new(xi[0] - xi[5], 0.0),
        Complex64::new(-xi[4], -xi[3]),
        Complex64::new(xi[1], xi[2]),
        Complex64::new(-xi[1], xi[2]),
        Complex64::new(-xi[4], xi[3]),
        Complex64::new(xi[0] + xi[5], 0.0),
    ]))
}

/// The fibration tau: CP^3 -> S^4 by the explicit degree-(1,1) formula.
pub fn tau(z: &ProjectivePoint) -> Result<SpherePoint> {
    if z.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 4,
        });
    }
    let c = z.coords();
    let (z1, z2, z3, z4) = (c.entry(0), c.entry(1), c.entry(2), c.entry(3));
    let denom = z1.norm_sqr() + z2.norm_sqr() + z3.norm_sqr() + z4.norm_sqr();
    let t1 = z1 * z3.conj() + z2 * z4.conj() + z3 * z1.conj() + z4 * z2.conj();
    let t2 = I * (-z1 * z3.conj() + z2 * z4.conj() + z3 * z1.conj() - z4 * z2.conj());
    let t3 = I * (-z1 * z4.conj() - z2 * z3.conj() + z3 * z2.conj() + z4 * z1.conj());
    let t4 = z1 * z4.conj() - z2 * z3.conj() - z3 * z2.conj() + z4 * z1.conj();
    let t5 = -z1.norm_sqr() - z2.norm_sqr() + z3.norm_sqr() + z4.norm_sqr();
    Ok(SpherePoint {
        coords: [
            t1.re / denom,
            t2.re / denom,
            t3.re / denom,
            t4.re / denom,
            t5 / denom,
        ],
    })
}

/// Inverse stereographic projection R^4 -> S^4:
/// `x -> (2x, 1-|x|^2) / (1+|x|^2)`.
pub fn inverse_stereographic(x: &[f64; 4]) -> SpherePoint {
    let nsq: f64 = x.iter().map(|v| v * v).sum();
    let d = 1.0 + nsq;
    SpherePoint {
        coords: [
            2.0 * x[0] / d,
            2.0 * x[1] / d,
            2.0 * x[2] / d,
            2.0 * x[3] / d,
            (1.0 - nsq) / d,
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::proj_equal;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cv(entries: Vec<Complex64>) -> ComplexVector {
        ComplexVector::new(entries)
    }

    fn pp(entries: Vec<Complex64>) -> ProjectivePoint {
        ProjectivePoint::new(cv(entries)).unwrap()
    }

    fn one() -> Complex64 {
        c(1.0, 0.0)
    }

    fn zero() -> Complex64 {
        c(0.0, 0.0)
    }

    #[test]
    fn embed_line_at_poles() {
        let tol = Tolerances::default();
        let z = ComplexVector::zeros(4);
        let p = embed_line(&z, (one(), zero())).unwrap();
        let q = pp(vec![zero(), zero(), one(), zero()]);
        assert!(proj_equal(&p, &q, &tol).unwrap());
        let p = embed_line(&z, (zero(), one())).unwrap();
        let q = pp(vec![zero(), zero(), zero(), one()]);
        assert!(proj_equal(&p, &q, &tol).unwrap());
    }

    #[test]
    fn embed_line_worked_example() {
        // z = (1, i, 0, 0), zeta = [0, 1]: z1 - i z2 = 1 - i*i = 2.
        let tol = Tolerances::default();
        let z = cv(vec![one(), c(0.0, 1.0), zero(), zero()]);
        let p = embed_line(&z, (zero(), one())).unwrap();
        let q = pp(vec![zero(), c(2.0, 0.0), zero(), one()]);
        assert!(proj_equal(&p, &q, &tol).unwrap());
    }

    #[test]
    fn embed_line_rejects_zero_zeta() {
        let z = ComplexVector::zeros(4);
        assert!(embed_line(&z, (zero(), zero())).is_err());
    }

    #[test]
    fn intersect_null_pair() {
        let tol = Tolerances::default();
        let z = ComplexVector::zeros(4);
        let zp = cv(vec![one(), c(0.0, 1.0), zero(), zero()]);
        let inc = lines_intersect(&z, &zp, &tol).unwrap();
        assert!(inc.intersect);
        let expect = pp(vec![zero(), zero(), one(), zero()]);
        assert!(proj_equal(inc.point.as_ref().unwrap(), &expect, &tol).unwrap());
    }

    #[test]
    fn no_intersection_for_unit_separation() {
        let tol = Tolerances::default();
        let z = ComplexVector::zeros(4);
        let zp = ComplexVector::from_real(&[1.0, 0.0, 0.0, 0.0]);
        let inc = lines_intersect(&z, &zp, &tol).unwrap();
        assert!(!inc.intersect);
        assert!(inc.point.is_none());
    }

    #[test]
    fn distinct_real_points_never_intersect() {
        let tol = Tolerances::default();
        let x = ComplexVector::from_real(&[0.3, -1.2, 0.5, 2.0]);
        let xp = ComplexVector::from_real(&[1.0, 0.0, -0.7, 0.1]);
        assert!(!lines_intersect(&x, &xp, &tol).unwrap().intersect);
    }

    #[test]
    fn theta_substitution() {
        let tol = Tolerances::default();
        let p = theta(&pp(vec![one(), zero(), zero(), zero()])).unwrap();
        assert!(proj_equal(&p, &pp(vec![zero(), one(), zero(), zero()]), &tol).unwrap());
        let p = theta(&pp(vec![zero(), zero(), one(), zero()])).unwrap();
        assert!(proj_equal(&p, &pp(vec![zero(), zero(), zero(), one()]), &tol).unwrap());
    }

    #[test]
    fn theta_is_projective_involution() {
        let tol = Tolerances::default();
        let z = pp(vec![c(0.3, -1.1), c(2.0, 0.4), c(-0.5, 0.9), c(1.3, 0.2)]);
        let tt = theta(&theta(&z).unwrap()).unwrap();
        assert!(proj_equal(&tt, &z, &tol).unwrap());
    }

    #[test]
    fn pluecker_of_plane_basis() {
        let phi = pluecker_of_plane(
            &pp(vec![zero(), zero(), one(), zero()]),
            &pp(vec![zero(), zero(), zero(), one()]),
        )
        .unwrap();
        let c6 = phi.coords();
        assert!(c6.entry(5).norm() > 0.0);
        for i in 0..5 {
            assert!((c6.entry(i) / c6.entry(5)).norm() < 1e-15);
        }
    }

    #[test]
    fn pluecker_real_matches_plane_at_origin() {
        let tol = Tolerances::default();
        let plane = pluecker_of_plane(
            &pp(vec![zero(), zero(), one(), zero()]),
            &pp(vec![zero(), zero(), zero(), one()]),
        )
        .unwrap();
        let real = pluecker_of_real(&[0.0; 4]);
        assert!(proj_equal(&plane, &real, &tol).unwrap());
    }

    #[test]
    fn pluecker_of_plane_rejects_dependent() {
        let z = pp(vec![one(), zero(), zero(), zero()]);
        let w = pp(vec![c(2.0, 0.0), zero(), zero(), zero()]);
        assert!(pluecker_of_plane(&z, &w).is_err());
    }

    #[test]
    fn theta_plane_reality_conditions() {
        let z = pp(vec![c(0.7, -0.2), c(1.1, 0.8), c(-0.4, 0.5), c(0.9, -1.3)]);
        let phi = pluecker_of_plane(&z, &theta(&z).unwrap()).unwrap();
        let p = phi.coords();
        assert!((p.entry(0).conj() - p.entry(0)).norm() < 1e-12);
        assert!((p.entry(1).conj() - p.entry(4)).norm() < 1e-12);
        assert!((p.entry(2).conj() + p.entry(3)).norm() < 1e-12);
        assert!((p.entry(5).conj() - p.entry(5)).norm() < 1e-12);
    }

    #[test]
    fn pluecker_of_real_example() {
        // x = (1,0,0,0): phi = (1, 0, 1, -1, 0, 1).
        let phi = pluecker_of_real(&[1.0, 0.0, 0.0, 0.0]);
        let p = phi.coords();
        assert!((p.entry(0) - one()).norm() < 1e-15);
        assert!(p.entry(1).norm() < 1e-15);
        assert!((p.entry(2) - one()).norm() < 1e-15);
        assert!((p.entry(3) + one()).norm() < 1e-15);
        assert!(p.entry(4).norm() < 1e-15);
        assert!((p.entry(5) - one()).norm() < 1e-15);
    }

    #[test]
    fn quadric_vanishes_on_real_points() {
        let phi = pluecker_of_real(&[0.3, -1.5, 0.7, 2.2]);
        assert!(quadric_residual(&phi).unwrap().norm() < 1e-12);
    }

    #[test]
    fn quadric_residual_examples() {
        let dec = pp(vec![one(), zero(), zero(), zero(), zero(), zero()]);
        assert!(quadric_residual(&dec).unwrap().norm() < 1e-15);
        let nondec = pp(vec![one(), zero(), zero(), zero(), zero(), one()]);
        let r = quadric_residual(&nondec).unwrap();
        assert!((r - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn rp5_embed_examples() {
        let tol = Tolerances::default();
        let p = rp5_embed(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(proj_equal(&p, &pp(vec![one(), zero(), zero(), zero(), zero(), one()]), &tol).unwrap());
        let p = rp5_embed(&[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!(
            proj_equal(&p, &pp(vec![zero(), zero(), zero(), zero(), zero(), c(2.0, 0.0)]), &tol)
                .unwrap()
        );
        assert!(rp5_embed(&[0.0; 6]).is_err());
    }

    #[test]
    fn rp5_quadric_is_lorentz_form() {
        let xi = [0.4, -1.2, 0.8, 0.1, -0.6, 1.5];
        let p = rp5_embed(&xi).unwrap();
        let q = quadric_form(&p).unwrap();
        let lorentz = xi[0] * xi[0]
            - xi[1] * xi[1]
            - xi[2] * xi[2]
            - xi[3] * xi[3]
            - xi[4] * xi[4]
            - xi[5] * xi[5];
        assert!((q - c(lorentz, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn tau_pole_values() {
        let s = tau(&pp(vec![zero(), zero(), one(), zero()])).unwrap();
        assert!(s.dist(&SpherePoint { coords: [0.0, 0.0, 0.0, 0.0, 1.0] }) < 1e-14);
        let s = tau(&pp(vec![one(), zero(), zero(), zero()])).unwrap();
        assert!(s.dist(&SpherePoint { coords: [0.0, 0.0, 0.0, 0.0, -1.0] }) < 1e-14);
    }

    #[test]
    fn tau_is_scale_invariant() {
        let z = pp(vec![c(0.3, -1.1), c(2.0, 0.4), c(-0.5, 0.9), c(1.3, 0.2)]);
        let lambda = c(-0.7, 1.9);
        let scaled = ProjectivePoint::new(z.coords().scale(lambda)).unwrap();
        assert!(tau(&z).unwrap().dist(&tau(&scaled).unwrap()) < 1e-12);
    }

    #[test]
    fn inverse_stereographic_values() {
        let s = inverse_stereographic(&[0.0; 4]);
        assert!(s.dist(&SpherePoint { coords: [0.0, 0.0, 0.0, 0.0, 1.0] }) < 1e-15);
        let s = inverse_stereographic(&[1.0, 0.0, 0.0, 0.0]);
        assert!(s.dist(&SpherePoint { coords: [1.0, 0.0, 0.0, 0.0, 0.0] }) < 1e-15);
    }

    #[test]
    fn inverse_stereographic_approaches_south_pole() {
        let s = inverse_stereographic(&[1e3, 0.0, 0.0, 0.0]);
        assert!(s.dist(&SpherePoint { coords: [0.0, 0.0, 0.0, 0.0, -1.0] }) < 2e-3 + 2e-6);
        // at |x| = 1e3 the deviation of the last coordinate is ~2e-6
        assert!((s.coords[4] + 1.0).abs() < 2.0000005e-6 + 2e-6);
    }

    #[test]
    fn fibration_consistency_at_random_points() {
        let x = [0.3, -1.5, 0.7, 2.2];
        let z = ComplexVector::from_real(&x);
        for zeta in [
            (c(1.0, 0.0), c(0.0, 0.0)),
            (c(0.3, 0.4), c(-1.0, 0.2)),
            (c(0.0, 0.0), c(1.0, 0.0)),
        ] {
            let p = embed_line(&z, zeta).unwrap();
            assert!(tau(&p).unwrap().dist(&inverse_stereographic(&x)) < 1e-10);
        }
    }
}
