//! Bateman's contour-integral representation of 4D harmonic functions:
//! trapezoidal quadrature on circular contours, an independent
//! residue-calculus oracle for the rational built-ins, and a
//! finite-difference harmonicity certifier.

use num_complex::Complex64;
use rand::Rng;

use crate::complex::ComplexVector;
use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

fn i() -> Complex64 {
    Complex64::new(0.0, 1.0)
}

// ---------------------------------------------------------------------------
// dense polynomials in one complex variable, low degree

/// Coefficients in ascending order; the empty vector is the zero polynomial.
#[derive(Debug, Clone)]
pub struct Poly(pub Vec<Complex64>);

impl Poly {
    pub fn constant(c: Complex64) -> Poly {
        Poly(vec![c])
    }

    pub fn linear(c0: Complex64, c1: Complex64) -> Poly {
        Poly(vec![c0, c1])
    }

    pub fn degree(&self) -> usize {
        self.trimmed().0.len().saturating_sub(1)
    }

    fn trimmed(&self) -> Poly {
        let mut v = self.0.clone();
        while v.len() > 1 && v.last().map_or(false, |c| c.norm() == 0.0) {
            v.pop();
        }
        Poly(v)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.0
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::constant(Complex64::new(0.0, 0.0));
        }
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * (k as f64))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Complex64::new(0.0, 0.0); self.0.len() + other.0.len() - 1];
        for (a, &ca) in self.0.iter().enumerate() {
            for (b, &cb) in other.0.iter().enumerate() {
                out[a + b] += ca * cb;
            }
        }
        Poly(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(Complex64::new(1.0, 0.0));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Synthetic division by (z - r); the remainder is discarded.
    pub fn deflate(&self, r: Complex64) -> Poly {
        let t = self.trimmed();
        let n = t.0.len();
        if n <= 1 {
            return Poly::constant(Complex64::new(0.0, 0.0));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut carry = t.0[n - 1];
        for k in (0..n - 1).rev() {
            out[k] = carry;
            carry = t.0[k] + carry * r;
        }
        Poly(out)
    }

    /// All complex roots by Durand-Kerner iteration. Degrees here are <= 6.
    pub fn roots(&self) -> Vec<Complex64> {
        let t = self.trimmed();
        let deg = t.0.len() - 1;
        if deg == 0 {
            return vec![];
        }
        let lead = t.0[deg];
        let monic: Vec<Complex64> = t.0.iter().map(|&c| c / lead).collect();
        let seed = Complex64::new(0.4, 0.9);
        let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
        let eval = |z: Complex64| {
            monic
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
        };
        for _ in 0..500 {
            let mut max_step = 0.0f64;
            for k in 0..deg {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..deg {
                    if j != k {
                        denom *= roots[k] - roots[j];
                    }
                }
                if denom.norm() == 0.0 {
                    denom = Complex64::new(1e-300, 0.0);
                }
                let step = eval(roots[k]) / denom;
                roots[k] -= step;
                max_step = max_step.max(step.norm());
            }
            if max_step < 1e-14 {
                break;
            }
        }
        roots
    }
}

// ---------------------------------------------------------------------------
// integrands and contours

/// Built-in holomorphic integrands f(s, t, zeta). Each is rational in zeta
/// once the two affine-linear arguments are substituted, which is what the
/// residue oracle exploits.
#[derive(Debug, Clone, PartialEq)]
pub enum BatemanIntegrand {
    /// s^k t^l / zeta with k + l <= 4 (covers 1/zeta, s/zeta, t/zeta,
    /// s t/zeta, s^2/zeta, ...).
    MonomialOverZeta { k: u32, l: u32 },
    /// 1 / (zeta - a): globally holomorphic in (s, t).
    SimplePole { a: Complex64 },
    /// 1 / ((s - a)(t - b) zeta).
    SeparatedPoles { a: Complex64, b: Complex64 },
}

impl BatemanIntegrand {
    pub fn eval(&self, s: Complex64, t: Complex64, zeta: Complex64) -> Complex64 {
        match self {
            BatemanIntegrand::MonomialOverZeta { k, l } => s.powu(*k) * t.powu(*l) / zeta,
            BatemanIntegrand::SimplePole { a } => Complex64::new(1.0, 0.0) / (zeta - a),
            BatemanIntegrand::SeparatedPoles { a, b } => {
                Complex64::new(1.0, 0.0) / ((s - a) * (t - b) * zeta)
            }
        }
    }

    /// Numerator and denominator of zeta -> f(s(zeta), t(zeta), zeta)
    /// for the affine-linear arguments attached to z.
    pub fn rational_in_zeta(&self, z: &ComplexVector) -> Result<(Poly, Poly)> {
        let (s, t) = affine_lines(z)?;
        Ok(match self {
            BatemanIntegrand::MonomialOverZeta { k, l } => {
                if k + l > 4 {
                    return Err(Error::InvalidParameter(
                        "monomial built-ins require k + l <= 4".into(),
                    ));
                }
                (
                    s.pow(*k).mul(&t.pow(*l)),
                    Poly::linear(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
                )
            }
            BatemanIntegrand::SimplePole { a } => (
                Poly::constant(Complex64::new(1.0, 0.0)),
                Poly::linear(-a, Complex64::new(1.0, 0.0)),
            ),
            BatemanIntegrand::SeparatedPoles { a, b } => {
                let mut den = Poly(vec![s.0[0] - a, s.0[1]]);
                den = den.mul(&Poly(vec![t.0[0] - b, t.0[1]]));
                den = den.mul(&Poly::linear(
                    Complex64::new(0.0, 0.0),
                    Complex64::new(1.0, 0.0),
                ));
                (Poly::constant(Complex64::new(1.0, 0.0)), den)
            }
        })
    }

    /// Parse a CLI name: `1/zeta`, `s/zeta`, `t/zeta`, `st_over_zeta`,
    /// `s2_over_zeta`, `mono:k,l`, `pole:re,im`, `stpole:a_re,a_im,b_re,b_im`.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "1/zeta" | "one_over_zeta" => Ok(BatemanIntegrand::MonomialOverZeta { k: 0, l: 0 }),
            "s/zeta" | "s_over_zeta" => Ok(BatemanIntegrand::MonomialOverZeta { k: 1, l: 0 }),
            "t/zeta" | "t_over_zeta" => Ok(BatemanIntegrand::MonomialOverZeta { k: 0, l: 1 }),
            "st/zeta" | "st_over_zeta" => Ok(BatemanIntegrand::MonomialOverZeta { k: 1, l: 1 }),
            "s2/zeta" | "s2_over_zeta" => Ok(BatemanIntegrand::MonomialOverZeta { k: 2, l: 0 }),
            other => {
                if let Some(rest) = other.strip_prefix("mono:") {
                    let parts: Vec<&str> = rest.split(',').collect();
                    if parts.len() != 2 {
                        return Err(Error::Usage("mono:k,l expects two integers".into()));
                    }
                    let k = parts[0]
                        .trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Usage(e.to_string()))?;
                    let l = parts[1]
                        .trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Usage(e.to_string()))?;
                    if k + l > 4 {
                        return Err(Error::Usage("mono:k,l requires k + l <= 4".into()));
                    }
                    return Ok(BatemanIntegrand::MonomialOverZeta { k, l });
                }
                if let Some(rest) = other.strip_prefix("pole:") {
                    let v = parse_floats(rest, 2)?;
                    return Ok(BatemanIntegrand::SimplePole {
                        a: Complex64::new(v[0], v[1]),
                    });
                }
                if let Some(rest) = other.strip_prefix("stpole:") {
                    let v = parse_floats(rest, 4)?;
                    return Ok(BatemanIntegrand::SeparatedPoles {
                        a: Complex64::new(v[0], v[1]),
                        b: Complex64::new(v[2], v[3]),
                    });
                }
                Err(Error::Usage(format!("unknown integrand \"{}\"", other)))
            }
        }
    }

    /// The full built-in catalogue, used by the equivalence properties.
    pub fn catalogue() -> Vec<BatemanIntegrand> {
        let mut out = Vec::new();
        for k in 0..=4u32 {
            for l in 0..=(4 - k) {
                out.push(BatemanIntegrand::MonomialOverZeta { k, l });
            }
        }
        out.push(BatemanIntegrand::SimplePole {
            a: Complex64::new(0.3, 0.1),
        });
        out.push(BatemanIntegrand::SeparatedPoles {
            a: Complex64::new(7.0, 3.0),
            b: Complex64::new(-6.0, 4.0),
        });
        out
    }
}

fn parse_floats(text: &str, n: usize) -> Result<Vec<f64>> {
    let v: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Usage(e.to_string()))?;
    if v.len() != n {
        return Err(Error::Usage(format!("expected {} numbers", n)));
    }
    Ok(v)
}

/// The two affine-linear arguments of Bateman's integrand as polynomials in
/// zeta: s = (z1 + i z2) + (i z3 + z4) zeta, t = (i z3 - z4) + (z1 - i z2) zeta.
pub fn affine_lines(z: &ComplexVector) -> Result<(Poly, Poly)> {
    if z.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: z.dim(),
            right: 4,
        });
    }
    let (z1, z2, z3, z4) = (z.entry(0), z.entry(1), z.entry(2), z.entry(3));
    Ok((
        Poly::linear(z1 + i() * z2, i() * z3 + z4),
        Poly::linear(i() * z3 - z4, z1 - i() * z2),
    ))
}

/// Circular integration contour.
#[derive(Debug, Clone, Copy)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl Contour {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<Self> {
        if radius <= 0.0 {
            return Err(Error::InvalidParameter("contour radius must be positive".into()));
        }
        if nodes < 16 {
            return Err(Error::InvalidParameter("contour needs at least 16 nodes".into()));
        }
        Ok(Contour {
            center,
            radius,
            nodes,
        })
    }

    pub fn point(&self, theta: f64) -> Complex64 {
        self.center + self.radius * Complex64::new(theta.cos(), theta.sin())
    }
}

fn check_pole_margin(f: &BatemanIntegrand, contour: &Contour, z: &ComplexVector) -> Result<()> {
    let (_, den) = f.rational_in_zeta(z)?;
    // roots give the exact distances; the 4N sample of |den| is kept as a
    // backstop against root-finder failure
    for r in den.roots() {
        let gap = ((r - contour.center).norm() - contour.radius).abs();
        if gap <= 0.1 * contour.radius {
            return Err(Error::PoleNearContour(gap));
        }
    }
    let probes = 4 * contour.nodes;
    let mut min_abs = f64::INFINITY;
    for j in 0..probes {
        let zeta = contour.point(TWO_PI * (j as f64) / (probes as f64));
        min_abs = min_abs.min(den.eval(zeta).norm());
    }
    if min_abs < 1e-12 {
        return Err(Error::PoleNearContour(min_abs));
    }
    Ok(())
}

/// Trapezoidal quadrature of the contour integral over N equispaced nodes;
/// spectrally accurate for integrands holomorphic in an annulus around the
/// circle.
pub fn bateman_eval(f: &BatemanIntegrand, contour: &Contour, z: &ComplexVector) -> Result<Complex64> {
    check_pole_margin(f, contour, z)?;
    let (s, t) = affine_lines(z)?;
    let n = contour.nodes;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let theta = TWO_PI * (j as f64) / (n as f64);
        let zeta = contour.point(theta);
        // d zeta = i rho e^{i theta} d theta
        let dz = i() * contour.radius * Complex64::new(theta.cos(), theta.sin());
        sum += f.eval(s.eval(zeta), t.eval(zeta), zeta) * dz;
    }
    Ok(sum * Complex64::new(TWO_PI / (n as f64), 0.0))
}

/// 2 pi i times the sum of residues at poles strictly inside the contour.
/// Simple and double poles are supported; higher orders error out.
pub fn residue_oracle(
    f: &BatemanIntegrand,
    contour: &Contour,
    z: &ComplexVector,
) -> Result<Complex64> {
    let (num, den) = f.rational_in_zeta(z)?;
    let roots = den.roots();
    // cluster roots into multiplicity groups
    let cluster_tol = 1e-7 * (1.0 + contour.radius);
    let mut groups: Vec<(Complex64, usize)> = Vec::new();
    for r in roots {
        if let Some(g) = groups.iter_mut().find(|(c, _)| (*c - r).norm() < cluster_tol) {
            g.1 += 1;
        } else {
            groups.push((r, 1));
        }
    }
    let mut total = Complex64::new(0.0, 0.0);
    for (r, mult) in groups {
        let gap = ((r - contour.center).norm() - contour.radius).abs();
        if gap < 1e-8 * contour.radius {
            return Err(Error::PoleOnContour(gap));
        }
        if (r - contour.center).norm() > contour.radius {
            continue;
        }
        match mult {
            1 => {
                let dprime = den.derivative().eval(r);
                total += num.eval(r) / dprime;
            }
            2 => {
                // den = (zeta - r)^2 q(zeta); residue = (num/q)'(r)
                let q = den.deflate(r).deflate(r);
                let qr = q.eval(r);
                let qpr = q.derivative().eval(r);
                total += (num.derivative().eval(r) * qr - num.eval(r) * qpr) / (qr * qr);
            }
            k => return Err(Error::UnsupportedPoleOrder(k)),
        }
    }
    Ok(TWO_PI * i() * total)
}

/// Second-difference Laplacian: sum over axes of
/// (u(x + h e_i) - 2 u(x) + u(x - h e_i)) / h^2.
pub fn fd_laplacian<F>(u: F, x: &[f64], h: f64) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Result<Complex64>,
{
    let center = u(x)?;
    let mut total = Complex64::new(0.0, 0.0);
    let mut probe = x.to_vec();
    for idx in 0..x.len() {
        probe[idx] = x[idx] + h;
        let plus = u(&probe)?;
        probe[idx] = x[idx] - h;
        let minus = u(&probe)?;
        probe[idx] = x[idx];
        total += (plus - 2.0 * center + minus) / (h * h);
    }
    Ok(total)
}

/// Maximum finite-difference Laplacian residual of the Bateman integral over
/// random points of the box [lo, hi]^4.
pub fn harmonicity_certificate<R: Rng>(
    f: &BatemanIntegrand,
    contour: &Contour,
    lo: f64,
    hi: f64,
    count: usize,
    fd_step: f64,
    rng: &mut R,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..count {
        let x: Vec<f64> = (0..4).map(|_| rng.gen_range(lo..hi)).collect();
        let lap = fd_laplacian(
            |p| bateman_eval(f, contour, &ComplexVector::from_real(p)),
            &x,
            fd_step,
        )?;
        worst = worst.max(lap.norm());
    }
    Ok(worst)
}
