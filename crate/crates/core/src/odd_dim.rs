//! Odd-dimensional machinery: branch-tracked square-root continuation and
//! its monodromy, reduced harmonic hulls in C^3, Kelvin and Moebius
//! conformal transforms, and the rotated curved-extension cover witnessing
//! that R^3 minus a point has no harmonic hull.

use num_complex::Complex64;

use crate::complex::{bilinear, ComplexVector, Tolerances};
use crate::error::{Error, Result};

const RADICAND_FLOOR: f64 = 1e-8;

/// A sampled path in the complex plane for branch tracking.
#[derive(Debug, Clone)]
pub struct PathSpec {
    pub points: Vec<Complex64>,
}

impl PathSpec {
    pub fn from_points(points: Vec<Complex64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidParameter("path needs at least one sample".into()));
        }
        Ok(PathSpec { points })
    }

    /// Closed circular loop traversed once counterclockwise; the start point
    /// is repeated at the end.
    pub fn circle(center: Complex64, radius: f64, steps: usize) -> Result<Self> {
        if steps < 100 {
            return Err(Error::InvalidParameter(
                "loops need at least 100 steps for branch tracking".into(),
            ));
        }
        let points = (0..=steps)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * (k as f64) / (steps as f64);
                center + radius * Complex64::new(t.cos(), t.sin())
            })
            .collect();
        Ok(PathSpec { points })
    }
}

/// A branch of a square root at a point of the path.
#[derive(Debug, Clone)]
pub struct BranchValue {
    pub value: Complex64,
    pub position: Complex64,
    pub steps_tracked: usize,
}

/// Nearest-root continuation of sqrt along a sequence of radicand values.
/// Rejects steps where the two candidate roots are ambiguous from the
/// predecessor (within 10% relative distance of each other).
fn track_sqrt(radicands: &[Complex64], initial: Complex64) -> Result<Complex64> {
    let mut prev = initial;
    for (step, &q) in radicands.iter().enumerate().skip(1) {
        if q.norm() <= RADICAND_FLOOR {
            return Err(Error::BranchPointHit(q.norm()));
        }
        let w = q.sqrt();
        let d_plus = (w - prev).norm();
        let d_minus = (-w - prev).norm();
        let (near, far) = if d_plus <= d_minus {
            (d_plus, d_minus)
        } else {
            (d_minus, d_plus)
        };
        if far > 0.0 && near > 0.9 * far {
            return Err(Error::AmbiguousStep { step });
        }
        prev = if d_plus <= d_minus { w } else { -w };
    }
    Ok(prev)
}

/// Continue a branch of sqrt(g) along a path, starting from a consistent
/// initial branch value.
pub fn continue_sqrt<G>(g: G, path: &PathSpec, initial: &BranchValue, tol: &Tolerances) -> Result<BranchValue>
where
    G: Fn(Complex64) -> Complex64,
{
    let radicands: Vec<Complex64> = path.points.iter().map(|&p| g(p)).collect();
    let q0 = radicands[0];
    if q0.norm() <= RADICAND_FLOOR {
        return Err(Error::BranchPointHit(q0.norm()));
    }
    if (initial.value * initial.value - q0).norm() > tol.eq_tol * (1.0 + q0.norm()) {
        return Err(Error::InvalidParameter(
            "initial branch value is inconsistent with the radicand at the path start".into(),
        ));
    }
    let value = track_sqrt(&radicands, initial.value)?;
    Ok(BranchValue {
        value,
        position: *path.points.last().unwrap(),
        steps_tracked: initial.steps_tracked + path.points.len() - 1,
    })
}

/// Continue the branch of sqrt(z . z) along a closed loop in C^3 and return
/// the final/initial ratio of the Newtonian potential r = 1/sqrt(z . z),
/// which is +1 or -1.
pub fn newtonian_monodromy(loop_points: &[ComplexVector]) -> Result<Complex64> {
    if loop_points.is_empty() {
        return Err(Error::InvalidParameter("empty loop".into()));
    }
    let mut radicands = Vec::with_capacity(loop_points.len());
    for z in loop_points {
        if z.dim() != 3 {
            return Err(Error::DimensionMismatch {
                left: z.dim(),
                right: 3,
            });
        }
        let q = bilinear(z, z)?;
        if q.norm() <= RADICAND_FLOOR {
            return Err(Error::BranchPointHit(q.norm()));
        }
        radicands.push(q);
    }
    let initial = radicands[0].sqrt();
    let fin = track_sqrt(&radicands, initial)?;
    // r = 1/sqrt, so the ratio of r is the inverse ratio of the roots
    Ok(initial / fin)
}

/// The standard loop exposing the obstruction: the image of a zeta-plane
/// circle under F(zeta) = (zeta, zeta^2, 0).
pub fn monodromy_loop(center: Complex64, radius: f64, steps: usize) -> Result<Vec<ComplexVector>> {
    let path = PathSpec::circle(center, radius, steps)?;
    Ok(path
        .points
        .iter()
        .map(|&zeta| {
            ComplexVector::new(vec![zeta, zeta * zeta, Complex64::new(0.0, 0.0)])
        })
        .collect())
}

/// Membership in the reduced harmonic hull: for every obstacle x,
/// (z - x) . (z - x) must avoid the closed negative real axis.
pub fn reduced_hull_member_3d(
    z: &ComplexVector,
    obstacles: &[[f64; 3]],
    tol: &Tolerances,
) -> Result<bool> {
    if z.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 3,
        });
    }
    for x in obstacles {
        let d = z.sub(&ComplexVector::from_real(x))?;
        let q = bilinear(&d, &d)?;
        let off_axis = q.im.abs() > tol.eq_tol || q.re > 0.0;
        if !off_axis {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Kelvin-type conformal transform
/// F(X) = f((X1 - e|X|^2)/D, X2/D, X3/D) / sqrt(D),
/// D = 1 - 2 e X1 + e^2 |X|^2, harmonic wherever D > 0.
pub fn kelvin_transform<F>(f: F, epsilon: f64, x: &[f64; 3]) -> Result<f64>
where
    F: Fn(&[f64; 3]) -> Option<f64>,
{
    if epsilon == 0.0 {
        return Err(Error::InvalidParameter("epsilon must be nonzero".into()));
    }
    let nsq = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    let d = 1.0 - 2.0 * epsilon * x[0] + epsilon * epsilon * nsq;
    if d <= 0.0 {
        return Err(Error::Singular(format!("conformal factor D = {} <= 0", d)));
    }
    let arg = [(x[0] - epsilon * nsq) / d, x[1] / d, x[2] / d];
    let fv = f(&arg).ok_or_else(|| Error::Evaluation("f outside its declared domain".into()))?;
    Ok(fv / d.sqrt())
}

/// Result of the Moebius change of coordinates on C^3.
#[derive(Debug, Clone)]
pub struct MoebiusImage {
    pub image: ComplexVector,
    /// Principal square root of 1 + 2 e z1 + e^2 z^2.
    pub branch_scale: Complex64,
    /// True when |z|^2 < 1/(9 e^2), which pins Re(1 + 2 e z1 + e^2 z^2) > 0
    /// and makes the principal branch safe.
    pub branch_certified: bool,
}

/// The Moebius pair Z = ((z1 + e z^2)/den, z2/den, z3/den) with
/// den = 1 + 2 e z1 + e^2 z^2, together with the conformal-weight branch
/// scale. The inverse swaps the sign of epsilon-terms, and the product
/// identity (1 + 2 e z1 + e^2 z^2)(1 - 2 e Z1 + e^2 Z^2) = 1 holds.
pub fn moebius_pair(z: &ComplexVector, epsilon: f64, tol: &Tolerances) -> Result<MoebiusImage> {
    if z.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 3,
        });
    }
    let zsq = bilinear(z, z)?;
    let den = Complex64::new(1.0, 0.0) + 2.0 * epsilon * z.entry(0) + epsilon * epsilon * zsq;
    if den.norm() <= tol.eq_tol {
        return Err(Error::Singular("Moebius denominator vanishes".into()));
    }
    let image = ComplexVector::new(vec![
        (z.entry(0) + epsilon * zsq) / den,
        z.entry(1) / den,
        z.entry(2) / den,
    ]);
    let hermitian_sq = z.norm() * z.norm();
    let branch_certified = epsilon == 0.0 || hermitian_sq < 1.0 / (9.0 * epsilon * epsilon);
    Ok(MoebiusImage {
        image,
        branch_scale: den.sqrt(),
        branch_certified,
    })
}

/// Inverse of the Moebius map: same formula with the sign of the
/// epsilon-linear terms flipped.
pub fn moebius_inverse(zc: &ComplexVector, epsilon: f64, tol: &Tolerances) -> Result<ComplexVector> {
    if zc.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: zc.dim(),
            right: 3,
        });
    }
    let zsq = bilinear(zc, zc)?;
    let den = Complex64::new(1.0, 0.0) - 2.0 * epsilon * zc.entry(0) + epsilon * epsilon * zsq;
    if den.norm() <= tol.eq_tol {
        return Err(Error::Singular("Moebius denominator vanishes".into()));
    }
    Ok(ComplexVector::new(vec![
        (zc.entry(0) - epsilon * zsq) / den,
        zc.entry(1) / den,
        zc.entry(2) / den,
    ]))
}

type Rotation3 = [[f64; 3]; 3];

fn apply_transpose(a: &Rotation3, z: &ComplexVector) -> ComplexVector {
    // A^t z = A^{-1} z for orthogonal A
    let mut out = vec![Complex64::new(0.0, 0.0); 3];
    for (i, item) in out.iter_mut().enumerate() {
        for j in 0..3 {
            *item += a[j][i] * z.entry(j);
        }
    }
    ComplexVector::new(out)
}

fn det3(a: &Rotation3) -> f64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

fn check_rotation(a: &Rotation3, tol: &Tolerances) -> Result<()> {
    for i in 0..3 {
        for j in 0..3 {
            let mut dot = 0.0;
            for (row, _) in a.iter().enumerate() {
                dot += a[row][i] * a[row][j];
            }
            let expect = if i == j { 1.0 } else { 0.0 };
            if (dot - expect).abs() > tol.eq_tol {
                return Err(Error::NotARotation);
            }
        }
    }
    if (det3(a) - 1.0).abs() > 1e-8 {
        return Err(Error::NotARotation);
    }
    Ok(())
}

/// Membership in the rotated curved-extension chart:
/// apply A^{-1} to z, then require |z|^2 < 1/(9 e^2) and
/// z^2/(1 + 2 e z1 + e^2 z^2) off the closed negative real axis.
pub fn curved_extension_member(
    z: &ComplexVector,
    epsilon: f64,
    rotation: &Rotation3,
    tol: &Tolerances,
) -> Result<bool> {
    if epsilon == 0.0 {
        return Err(Error::InvalidParameter(
            "epsilon must be nonzero; use reduced_hull_member_3d for the flat chart".into(),
        ));
    }
    if z.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 3,
        });
    }
    check_rotation(rotation, tol)?;
    let w = apply_transpose(rotation, z);
    let hermitian_sq = w.norm() * w.norm();
    if hermitian_sq >= 1.0 / (9.0 * epsilon * epsilon) {
        return Ok(false);
    }
    let zsq = bilinear(&w, &w)?;
    let den = Complex64::new(1.0, 0.0) + 2.0 * epsilon * w.entry(0) + epsilon * epsilon * zsq;
    if den.norm() <= tol.eq_tol {
        return Ok(false);
    }
    let ratio = zsq / den;
    Ok(ratio.im.abs() > tol.eq_tol || ratio.re > 0.0)
}

/// A verified witness that z lies in the union cover of the hull of
/// R^3 minus the origin.
#[derive(Debug, Clone)]
pub enum CoverWitness {
    /// z already lies in the reduced hull; no rotation or epsilon needed.
    ReducedHull,
    /// z is covered by the chart rotated so Im z points along e1, with the
    /// stated epsilon.
    Rotated { rotation: Rotation3, epsilon: f64 },
}

/// Rotation with first column v (maps e1 to the unit vector v).
fn rotation_onto_e1(v: &[f64; 3]) -> Rotation3 {
    let mut cols: Vec<[f64; 3]> = vec![*v];
    for k in 0..3 {
        let mut e = [0.0; 3];
        e[k] = 1.0;
        for c in &cols {
            let p: f64 = (0..3).map(|i| e[i] * c[i]).sum();
            for i in 0..3 {
                e[i] -= p * c[i];
            }
        }
        let len: f64 = e.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1e-8 {
            for x in &mut e {
                *x /= len;
            }
            cols.push(e);
            if cols.len() == 3 {
                break;
            }
        }
    }
    let mut a = [[0.0; 3]; 3];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..3 {
            a[i][j] = col[i];
        }
    }
    if det3(&a) < 0.0 {
        for row in &mut a {
            row[2] = -row[2];
        }
    }
    a
}

/// Produce and verify a cover witness for a point of the hull of
/// R^3 minus the origin (z with z . z nonzero).
pub fn cover_witness(z: &ComplexVector, tol: &Tolerances) -> Result<CoverWitness> {
    if z.dim() != 3 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 3,
        });
    }
    let q = bilinear(z, z)?;
    if q.norm() <= tol.eq_tol {
        return Err(Error::InvalidParameter(
            "z . z = 0: the point is not in the hull".into(),
        ));
    }
    if reduced_hull_member_3d(z, &[[0.0; 3]], tol)? {
        return Ok(CoverWitness::ReducedHull);
    }
    // here q is on the negative real axis, so <x, y> = 0 and |x| < |y|
    let y = z.im();
    let y_norm: f64 = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    if y_norm <= tol.eq_tol {
        return Err(Error::InternalConsistency(
            "non-reduced point with vanishing imaginary part".into(),
        ));
    }
    let unit = [y[0] / y_norm, y[1] / y_norm, y[2] / y_norm];
    let rotation = rotation_onto_e1(&unit);
    let epsilon = 1.0 / (4.0 * z.norm());
    if !curved_extension_member(z, epsilon, &rotation, tol)? {
        return Err(Error::InternalConsistency(
            "constructed witness failed verification".into(),
        ));
    }
    Ok(CoverWitness::Rotated { rotation, epsilon })
}
