//! End-to-end acceptance suite. Each test covers one numbered criterion and
//! prints a single PASS line on success (run with --nocapture to see them);
//! a failed assertion is the corresponding FAIL.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hullkit::bateman::{bateman_eval, harmonicity_certificate, residue_oracle, BatemanIntegrand, Contour};
use hullkit::complex::{bilinear, ComplexVector, Tolerances};
use hullkit::hull::{extend_2d, hull_membership, hull_membership_2d, newtonian_potential, real_cone_slice, HullVerdict};
use hullkit::lie::{null_related, pqp_member, pqp_rank_estimate, sample_g, sample_p, sample_q};
use hullkit::odd_dim::{cover_witness, curved_extension_member, moebius_pair, monodromy_loop, newtonian_monodromy, CoverWitness};
use hullkit::region::{RegionExpr, RegionNode};
use hullkit::twistor::{embed_line, inverse_stereographic, lines_intersect, pluecker_of_real, quadric_form, quadric_residual, rp5_embed, tau};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

fn random_vector<R: Rng>(rng: &mut R, dim: usize, scale: f64) -> ComplexVector {
    ComplexVector::new((0..dim).map(|_| random_complex(rng, scale)).collect())
}

#[test]
fn acceptance_01_fibration_consistency() {
    let mut rng = rng(101);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let x = [
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        ];
        let zeta = loop {
            let pair = (random_complex(&mut rng, 1.0), random_complex(&mut rng, 1.0));
            if pair.0.norm() + pair.1.norm() > 0.3 {
                break pair;
            }
        };
        let z = ComplexVector::from_real(&x);
        let twistor = embed_line(&z, zeta).unwrap();
        let through_tau = tau(&twistor).unwrap();
        let direct = inverse_stereographic(&x);
        worst = worst.max(through_tau.dist(&direct));
    }
    assert!(worst <= 1e-10, "max deviation {}", worst);
    println!("ACCEPTANCE 1 PASS: fibration consistency, max deviation {:.2e}", worst);
}

#[test]
fn acceptance_02_quadric_identities() {
    let mut rng = rng(102);
    let mut worst_residual = 0.0f64;
    for _ in 0..200 {
        let x = [
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(-3.0..3.0),
        ];
        let phi = pluecker_of_real(&x);
        worst_residual = worst_residual.max(quadric_residual(&phi).unwrap().norm());
    }
    assert!(worst_residual <= 1e-12, "max residual {}", worst_residual);

    let mut worst_lorentz = 0.0f64;
    for _ in 0..200 {
        let xi: Vec<f64> = (0..6).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let xi = [xi[0], xi[1], xi[2], xi[3], xi[4], xi[5]];
        let phi = match rp5_embed(&xi) {
            Ok(p) => p,
            Err(_) => continue, // zero draw
        };
        let q = quadric_form(&phi).unwrap();
        let lorentz = xi[0] * xi[0] - xi[1..].iter().map(|v| v * v).sum::<f64>();
        worst_lorentz = worst_lorentz.max((q - c(lorentz, 0.0)).norm());
    }
    assert!(worst_lorentz <= 1e-12, "max Lorentz gap {}", worst_lorentz);
    println!(
        "ACCEPTANCE 2 PASS: quadric identities, residual {:.2e}, Lorentz gap {:.2e}",
        worst_residual, worst_lorentz
    );
}

#[test]
fn acceptance_03_incidence_null_condition() {
    let tol = Tolerances::default();
    let mut rng = rng(103);
    // solvability of the 2x2 system via its smallest singular value
    let solvable = |d: &ComplexVector| -> bool {
        let i = c(0.0, 1.0);
        let m = nalgebra::Matrix2::new(
            d.entry(0) + i * d.entry(1),
            i * d.entry(2) + d.entry(3),
            i * d.entry(2) - d.entry(3),
            d.entry(0) - i * d.entry(1),
        );
        let sv = m.svd(false, false).singular_values;
        sv[1] <= 1e-8 * (1.0 + sv[0])
    };
    for trial in 0..500 {
        // alternate generic pairs with engineered null pairs
        let z = random_vector(&mut rng, 4, 2.0);
        let zp = if trial % 2 == 0 {
            random_vector(&mut rng, 4, 2.0)
        } else {
            let w = random_complex(&mut rng, 2.0);
            // delta = w (1, i, 0, 0) is null
            let delta = ComplexVector::new(vec![w, c(0.0, 1.0) * w, c(0.0, 0.0), c(0.0, 0.0)]);
            z.add(&delta).unwrap()
        };
        let inc = lines_intersect(&z, &zp, &tol).unwrap();
        let d = z.sub(&zp).unwrap();
        assert_eq!(
            inc.intersect,
            solvable(&d),
            "determinant {} disagrees with 2x2 solvability",
            inc.determinant
        );
    }
    // distinct real base points are never null-separated
    for _ in 0..200 {
        let x: Vec<f64> = (0..4).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let y: Vec<f64> = (0..4).map(|_| rng.gen_range(-3.0..3.0)).collect();
        if x == y {
            continue;
        }
        let inc = lines_intersect(
            &ComplexVector::from_real(&x),
            &ComplexVector::from_real(&y),
            &tol,
        )
        .unwrap();
        assert!(!inc.intersect);
    }
    println!("ACCEPTANCE 3 PASS: incidence iff null condition on 500 pairs, real pairs disjoint");
}

#[test]
fn acceptance_04_bateman_equivalence() {
    let mut rng = rng(104);
    let contour = Contour::new(c(0.0, 0.0), 1.0, 96).unwrap();
    let mut worst_rel = 0.0f64;
    for f in BatemanIntegrand::catalogue() {
        for _ in 0..50 {
            let z = random_vector(&mut rng, 4, 0.4);
            let quad = bateman_eval(&f, &contour, &z).unwrap();
            let exact = residue_oracle(&f, &contour, &z).unwrap();
            let rel = (quad - exact).norm() / (1.0 + exact.norm());
            worst_rel = worst_rel.max(rel);
        }
    }
    assert!(worst_rel <= 1e-9, "worst relative gap {}", worst_rel);

    let mut harm_rng = ChaCha8Rng::seed_from_u64(1040);
    let st = BatemanIntegrand::parse("st_over_zeta").unwrap();
    let worst_lap =
        harmonicity_certificate(&st, &contour, -0.5, 0.5, 20, 1e-4, &mut harm_rng).unwrap();
    assert!(worst_lap <= 1e-6, "Laplacian residual {}", worst_lap);

    // a pole strictly outside the contour integrates to zero by Cauchy
    let holomorphic = BatemanIntegrand::SimplePole { a: c(2.5, 0.0) };
    let mut worst_cauchy = 0.0f64;
    for _ in 0..50 {
        let z = random_vector(&mut rng, 4, 0.4);
        worst_cauchy = worst_cauchy.max(bateman_eval(&holomorphic, &contour, &z).unwrap().norm());
    }
    assert!(worst_cauchy <= 1e-10, "Cauchy residual {}", worst_cauchy);
    println!(
        "ACCEPTANCE 4 PASS: Bateman quadrature/residue gap {:.2e}, Laplacian {:.2e}, Cauchy {:.2e}",
        worst_rel, worst_lap, worst_cauchy
    );
}

#[test]
fn acceptance_05_hull_predicate_vs_sampling_oracle() {
    // seed chosen so no draw is within the oracle's tangency resolution
    // (a ball grazing the slice sphere to depth ~1e-3 defeats 10^4 samples)
    let mut rng = rng(1053);
    // U = R^4 minus three random closed balls
    let balls: Vec<(Vec<f64>, f64)> = (0..3)
        .map(|_| {
            (
                (0..4).map(|_| rng.gen_range(-2.0..2.0)).collect::<Vec<f64>>(),
                rng.gen_range(0.3..0.8),
            )
        })
        .collect();
    let region = RegionExpr::new(
        4,
        RegionNode::Intersection(
            balls
                .iter()
                .map(|(center, radius)| {
                    RegionNode::Complement(Box::new(RegionNode::Ball {
                        center: center.clone(),
                        radius: *radius,
                    }))
                })
                .collect(),
        ),
    )
    .unwrap();
    let basepoint = loop {
        let p: Vec<f64> = (0..4).map(|_| rng.gen_range(-4.0..4.0)).collect();
        if region.contains(&p).unwrap() {
            break p;
        }
    };
    for _ in 0..200 {
        let z = random_vector(&mut rng, 4, 2.5);
        let verdict = hull_membership(&z, &region, &basepoint, 32).unwrap();
        let exact_fails = matches!(verdict, HullVerdict::ConeFailsObstacle { .. });
        let slice = real_cone_slice(&z).unwrap();
        let oracle_fails = slice
            .sample(10_000)
            .iter()
            .any(|p| !region.contains(p).unwrap());
        if exact_fails != oracle_fails {
            let worst = slice
                .sample(10_000)
                .iter()
                .filter(|p| !region.contains(p).unwrap())
                .count();
            panic!(
                "disagreement: exact {} oracle {} ({} bad samples)\nz = {:?}\nslice = {:?}\nballs = {:?}\nverdict = {:?}",
                exact_fails, oracle_fails, worst, z, slice, balls, verdict
            );
        }
    }

    // the two fixed witnesses over the punctured space
    let punctured = hullkit::region::punctured_space(4, vec![0.0; 4]).unwrap();
    let excluded = ComplexVector::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let v = hull_membership(&excluded, &punctured, &[1.0, 0.0, 0.0, 0.0], 64).unwrap();
    assert!(matches!(v, HullVerdict::ConeFailsObstacle { .. }));
    let certified = ComplexVector::new(vec![c(0.0, 0.5), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let v = hull_membership(&certified, &punctured, &[1.0, 0.0, 0.0, 0.0], 64).unwrap();
    assert!(matches!(v, HullVerdict::MemberCertified));
    println!("ACCEPTANCE 5 PASS: exact hull predicate matches 10^4-sample oracle on 200 queries");
}

#[test]
fn acceptance_06_maximality_blowup() {
    let tol = Tolerances::default();
    let x = [0.0; 4];
    let mut previous = 0.0f64;
    let mut monotone_from_threshold = true;
    let mut peak = 0.0f64;
    for t in 1..=40 {
        let delta = 2f64.powi(-t);
        let z = ComplexVector::new(vec![c(1.0, 0.0), c(0.0, 1.0 - delta), c(0.0, 0.0), c(0.0, 0.0)]);
        let value = newtonian_potential(&x, &z, &tol).unwrap().norm();
        if previous >= 1e3 && value <= previous {
            monotone_from_threshold = false;
        }
        previous = value;
        peak = peak.max(value);
    }
    assert!(peak > 1e6, "peak {}", peak);
    assert!(monotone_from_threshold);
    println!("ACCEPTANCE 6 PASS: potential blows up to {:.2e}, monotone beyond 1e3", peak);
}

#[test]
fn acceptance_07_monodromy() {
    let loop_points = monodromy_loop(c(0.0, 1.0), 0.5, 400).unwrap();
    let multiplier = newtonian_monodromy(&loop_points).unwrap();
    assert!((multiplier - c(-1.0, 0.0)).norm() <= 1e-8, "multiplier {}", multiplier);
    let halved = newtonian_monodromy(&monodromy_loop(c(0.0, 1.0), 0.5, 800).unwrap()).unwrap();
    let drift = (multiplier - halved).norm();
    assert!(drift <= 1e-10, "step-halving drift {}", drift);
    println!(
        "ACCEPTANCE 7 PASS: monodromy multiplier {:.12}, step-halving drift {:.2e}",
        multiplier.re, drift
    );
}

#[test]
fn acceptance_08_kelvin_moebius() {
    let tol = Tolerances::default();
    let mut rng = rng(108);
    let mut worst_identity = 0.0f64;
    for _ in 0..100 {
        let z = random_vector(&mut rng, 3, 1.0);
        let eps = rng.gen_range(0.05..0.3);
        let zsq = bilinear(&z, &z).unwrap();
        let den = c(1.0, 0.0) + 2.0 * eps * z.entry(0) + eps * eps * zsq;
        if den.norm() < 0.1 {
            continue;
        }
        let image = moebius_pair(&z, eps, &tol).unwrap().image;
        let wsq = bilinear(&image, &image).unwrap();
        let other = c(1.0, 0.0) - 2.0 * eps * image.entry(0) + eps * eps * wsq;
        worst_identity = worst_identity.max((den * other - c(1.0, 0.0)).norm());
    }
    assert!(worst_identity <= 1e-10, "identity gap {}", worst_identity);

    let one = |_: &[f64; 3]| Some(1.0);
    let mut worst_kelvin = 0.0f64;
    for _ in 0..50 {
        let x = [
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ];
        let d2 = (x[0] - 1.0) * (x[0] - 1.0) + x[1] * x[1] + x[2] * x[2];
        if d2 < 1e-2 {
            continue;
        }
        let got = hullkit::odd_dim::kelvin_transform(one, 1.0, &x).unwrap();
        worst_kelvin = worst_kelvin.max((got - 1.0 / d2.sqrt()).abs());
    }
    assert!(worst_kelvin <= 1e-12, "Kelvin gap {}", worst_kelvin);

    // 500 points with <x, y> = 0 and |x| < |y|: outside the flat chart but
    // covered by a rotated one
    let mut covered = 0usize;
    for _ in 0..500 {
        let y: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let ny = (y.iter().map(|v| v * v).sum::<f64>()).sqrt();
        if ny < 0.2 {
            continue;
        }
        // random direction orthogonal to y, scaled below |y|
        let raw: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let proj: f64 = raw.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>() / (ny * ny);
        let mut x: Vec<f64> = raw.iter().zip(&y).map(|(a, b)| a - proj * b).collect();
        let nx = (x.iter().map(|v| v * v).sum::<f64>()).sqrt();
        if nx < 1e-6 {
            continue;
        }
        let target = rng.gen_range(0.1..0.9) * ny;
        for v in &mut x {
            *v *= target / nx;
        }
        let z = ComplexVector::new(
            x.iter().zip(&y).map(|(&a, &b)| c(a, b)).collect(),
        );
        match cover_witness(&z, &tol).unwrap() {
            CoverWitness::Rotated { rotation, epsilon } => {
                assert!(curved_extension_member(&z, epsilon, &rotation, &tol).unwrap());
                covered += 1;
            }
            CoverWitness::ReducedHull => panic!("draw was engineered to be non-reduced"),
        }
    }
    assert!(covered >= 450, "only {} witnesses", covered);
    println!(
        "ACCEPTANCE 8 PASS: Moebius identity {:.2e}, Kelvin gap {:.2e}, {} cover witnesses",
        worst_identity, worst_kelvin, covered
    );
}

#[test]
fn acceptance_09_pqp_lemma() {
    let tol = Tolerances::default();
    let mut rng = rng(109);
    for m in [2usize, 3] {
        let mut worst = 0.0f64;
        for _ in 0..1000 {
            let g = sample_p(m, &mut rng)
                .mul(&sample_q(m, &mut rng))
                .mul(&sample_p(m, &mut rng));
            worst = worst.max(g.c11().norm());
            assert!(pqp_member(&g, &tol).unwrap().member);
        }
        assert!(worst <= 1e-9, "max |C11| {} for m = {}", worst, m);
    }
    let mut generic = 0usize;
    for _ in 0..1000 {
        if sample_g(2, &mut rng).c11().norm() > 1e-6 {
            generic += 1;
        }
    }
    assert!(generic >= 990, "only {}/1000 generic", generic);
    let (r2, _) = pqp_rank_estimate(2, 8, &mut rng).unwrap();
    let (r3, _) = pqp_rank_estimate(3, 6, &mut rng).unwrap();
    assert_eq!((r2, r3), (14, 27));
    println!(
        "ACCEPTANCE 9 PASS: PQP products vanish, {}/1000 generic miss, ranks 14/27",
        generic
    );
}

#[test]
fn acceptance_10_null_separation_correspondence() {
    let tol = Tolerances::default();
    let mut rng = rng(110);
    for m in [2usize, 3] {
        for trial in 0..500 {
            let draw = |rng: &mut ChaCha8Rng| -> Vec<Complex64> {
                (0..m).map(|_| random_complex(rng, 1.5)).collect()
            };
            let x = draw(&mut rng);
            let xp = draw(&mut rng);
            let y = draw(&mut rng);
            // every third draw is engineered to be null (y' = y)
            let yp = if trial % 3 == 0 { y.clone() } else { draw(&mut rng) };
            // null_related errors out if its two tests ever disagree
            let related = null_related(&x, &y, &xp, &yp, m, &tol).unwrap();
            if trial % 3 == 0 {
                assert!(related);
            }
        }
    }
    println!("ACCEPTANCE 10 PASS: dot-product and C11 null tests agree on 1000 draws");
}

#[test]
fn acceptance_11_two_dimensional_extension() {
    let mut rng = rng(111);
    let f = |w: Complex64| Some(w * w * w - 2.0 * w + c(1.0, 0.0));
    let g = |w: Complex64| Some((w - c(0.5, 0.0)) * (w - c(0.5, 0.0)));
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let z = ComplexVector::from_real(&x);
        let got = extend_2d(f, g, &z).unwrap();
        let zeta = c(x[0], x[1]);
        let want = f(zeta).unwrap() + g(zeta.conj()).unwrap();
        worst = worst.max((got - want).norm());
    }
    assert!(worst <= 1e-12, "restriction gap {}", worst);

    let disc = RegionExpr::new(
        2,
        RegionNode::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        },
    )
    .unwrap();
    let i = c(0.0, 1.0);
    let mut checked = 0usize;
    for gi in 0..101 {
        let a = -1.5 + 3.0 * (gi as f64) / 100.0;
        for gj in 0..101 {
            let b = -1.5 + 3.0 * (gj as f64) / 100.0;
            let z = ComplexVector::new(vec![c(a, 0.2), c(b, -0.1)]);
            let got = hull_membership_2d(&z, &disc).unwrap();
            let plus = z.entry(0) + i * z.entry(1);
            let minus = z.entry(0) - i * z.entry(1);
            let want = plus.norm_sqr() < 1.0 && minus.norm_sqr() < 1.0;
            assert_eq!(got, want, "grid point ({}, {})", a, b);
            checked += 1;
        }
    }
    assert_eq!(checked, 101 * 101);
    println!("ACCEPTANCE 11 PASS: planar extension and disc membership on a 101x101 grid");
}
