//! Command-line front end. Every subcommand reads JSON/CSV-ish flags, prints
//! a single JSON payload on stdout, and exits 0 on success, 1 on a domain
//! error, 2 on a usage error.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hullkit::bateman::{bateman_eval, harmonicity_certificate, BatemanIntegrand, Contour};
use hullkit::complex::{complex_to_json, vector_from_json, vector_to_json, ComplexVector, ProjectivePoint, Tolerances};
use hullkit::error::Error;
use hullkit::hull::{hull_membership, HullVerdict};
use hullkit::lie::{pqp_rank_estimate, sample_p, sample_q};
use hullkit::odd_dim::{curved_extension_member, monodromy_loop, newtonian_monodromy, reduced_hull_member_3d, cover_witness, CoverWitness, PathSpec};
use hullkit::region::RegionExpr;
use hullkit::twistor::{lines_intersect, pluecker_of_plane, pluecker_of_real, quadric_residual, tau};

#[derive(Parser)]
#[command(name = "hullkit", version, about = "Geometry of harmonic extension: hull membership, twistor incidence, contour integrals, branch tracking")]
struct Cli {
    /// Seed for every randomized subcommand.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hull membership queries and slice rasterization.
    Hull {
        #[command(subcommand)]
        command: HullCommand,
    },
    /// Contour-integral representation of 4D harmonic functions.
    Bateman {
        #[command(subcommand)]
        command: BatemanCommand,
    },
    /// Track the square root of the shifted quadratic around a loop and
    /// report the branch multiplier.
    Monodromy {
        /// Loop "center_re,center_im,radius,steps" in the parameter plane.
        #[arg(long = "loop")]
        loop_spec: String,
        /// Instead track log around the same loop (the 2D obstruction demo)
        /// and report the additive increment.
        #[arg(long, default_value_t = false)]
        demo_log: bool,
    },
    /// Reduced-hull membership in dimension 3, with cover witnesses.
    Oddhull {
        #[command(subcommand)]
        command: OddhullCommand,
    },
    /// Do the twistor lines of two points intersect?
    Incidence {
        /// Base point in C^4 as a JSON array of [re,im] pairs.
        #[arg(long)]
        z: String,
        /// Second base point in C^4.
        #[arg(long)]
        zp: String,
    },
    /// Fiber a projective twistor down to the 4-sphere.
    Tau {
        /// Homogeneous coordinates in C^4 as JSON [re,im] pairs.
        #[arg(long)]
        point: String,
    },
    /// Pluecker coordinates of a plane, with the quadric residual.
    Pluecker(PlueckerArgs),
    /// Parabolic-subgroup product experiments in SO(2m+2, C).
    Pqp {
        #[command(subcommand)]
        command: PqpCommand,
    },
}

#[derive(Subcommand)]
enum HullCommand {
    /// Decide hull membership of one complex point.
    Check {
        /// Region file per the JSON schema {"dimension": n, "region": ...}.
        #[arg(long)]
        domain: String,
        /// Query point in C^n as JSON [re,im] pairs.
        #[arg(long)]
        point: String,
        /// Real basepoint in the region, as a JSON array of reals.
        #[arg(long)]
        basepoint: String,
        /// Connectivity samples along the straight segment.
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Rasterize a 2-real-parameter affine slice of C^n into a CSV grid of
    /// verdict codes (0 certified, 1 cone fails, 2 connectivity unverified).
    Slice {
        #[arg(long)]
        domain: String,
        /// Slice origin in C^n as JSON [re,im] pairs.
        #[arg(long)]
        origin: String,
        /// First slice direction in C^n.
        #[arg(long)]
        dir1: String,
        /// Second slice direction in C^n.
        #[arg(long)]
        dir2: String,
        /// Real basepoint in the region.
        #[arg(long)]
        basepoint: String,
        /// Parameter range "lo,hi" applied to both axes.
        #[arg(long, default_value = "-2,2")]
        range: String,
        /// Grid resolution per axis.
        #[arg(long, default_value_t = 201)]
        grid: usize,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        /// Output CSV path; stdout when omitted.
        #[arg(long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
enum BatemanCommand {
    /// Evaluate the contour integral at one complex point.
    Eval {
        /// Built-in integrand name (e.g. "st_over_zeta", "mono:2,1",
        /// "pole:0.3,0.1").
        #[arg(long)]
        f: String,
        /// Contour "center_re,center_im,radius,nodes".
        #[arg(long, default_value = "0,0,1,64")]
        contour: String,
        /// Point in C^4 as JSON [re,im] pairs.
        #[arg(long)]
        point: String,
    },
    /// Max finite-difference Laplacian residual over random box points.
    Certify {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "0,0,1,64")]
        contour: String,
        /// Real box "lo,hi" for all four coordinates.
        #[arg(long = "box", default_value = "-0.2,0.2")]
        box_spec: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-4)]
        fd_step: f64,
    },
}

#[derive(Subcommand)]
enum OddhullCommand {
    /// Membership plus a verified cover witness for R^3 minus the origin;
    /// with --epsilon and --rotation, test the rotated curved chart instead.
    Check {
        /// Point in C^3 as JSON [re,im] pairs.
        #[arg(long)]
        point: String,
        #[arg(long)]
        epsilon: Option<f64>,
        /// Rotation as 9 comma-separated reals, row-major.
        #[arg(long)]
        rotation: Option<String>,
    },
}

#[derive(Args)]
struct PlueckerArgs {
    /// First spanning point of the plane, JSON [re,im] pairs in C^4.
    #[arg(long, conflicts_with = "real")]
    z: Option<String>,
    /// Second spanning point, required with --z.
    #[arg(long, requires = "z", conflicts_with = "real")]
    w: Option<String>,
    /// Real point "x1,x2,x3,x4": coordinates of the theta-stable plane.
    #[arg(long)]
    real: Option<String>,
}

#[derive(Subcommand)]
enum PqpCommand {
    /// Draw p q p' products and report the largest |C_11|.
    Sample {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        count: usize,
    },
    /// Numerical rank of the product-map differential (the dimension of PQP).
    Rank {
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

fn parse_reals(text: &str, expect: usize, what: &str) -> Result<Vec<f64>, Error> {
    let parts: Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse::<f64>()).collect();
    match parts {
        Ok(v) if v.len() == expect => Ok(v),
        Ok(v) => Err(Error::Usage(format!(
            "{} needs {} comma-separated numbers, got {}",
            what,
            expect,
            v.len()
        ))),
        Err(e) => Err(Error::Usage(format!("failed to parse {}: {}", what, e))),
    }
}

fn parse_vector(text: &str, what: &str) -> Result<ComplexVector, Error> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Usage(format!("{} is not valid JSON: {}", what, e)))?;
    vector_from_json(&value)
}

fn parse_real_array(text: &str, what: &str) -> Result<Vec<f64>, Error> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| Error::Usage(format!("{} is not valid JSON: {}", what, e)))?;
    value
        .as_array()
        .and_then(|a| a.iter().map(|x| x.as_f64()).collect::<Option<Vec<_>>>())
        .ok_or_else(|| Error::Usage(format!("{} must be a JSON array of numbers", what)))
}

fn parse_contour(text: &str) -> Result<Contour, Error> {
    let v = parse_reals(text, 4, "--contour")?;
    if v[3].fract() != 0.0 || v[3] < 1.0 {
        return Err(Error::Usage("contour node count must be a positive integer".into()));
    }
    Contour::new(Complex64::new(v[0], v[1]), v[2], v[3] as usize)
}

fn load_region(path: &str) -> Result<RegionExpr, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Usage(format!("cannot read region file {}: {}", path, e)))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Usage(format!("region file {} is not valid JSON: {}", path, e)))?;
    RegionExpr::from_json(&value)
}

fn verdict_to_json(v: &HullVerdict) -> Value {
    match v {
        HullVerdict::MemberCertified => json!({"verdict": "member_certified", "code": 0}),
        HullVerdict::ConeFailsObstacle { witness } => {
            json!({"verdict": "cone_fails_obstacle", "code": 1, "witness": witness})
        }
        HullVerdict::ConeOkConnectivityUnverified { detail } => {
            json!({"verdict": "cone_ok_connectivity_unverified", "code": 2, "detail": detail})
        }
    }
}

fn run(cli: Cli) -> Result<Value, Error> {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    match cli.command {
        Command::Hull { command } => match command {
            HullCommand::Check {
                domain,
                point,
                basepoint,
                samples,
            } => {
                let region = load_region(&domain)?;
                let z = parse_vector(&point, "--point")?;
                let x0 = parse_real_array(&basepoint, "--basepoint")?;
                let v = hull_membership(&z, &region, &x0, samples)?;
                Ok(verdict_to_json(&v))
            }
            HullCommand::Slice {
                domain,
                origin,
                dir1,
                dir2,
                basepoint,
                range,
                grid,
                samples,
                output,
            } => {
                let region = load_region(&domain)?;
                let o = parse_vector(&origin, "--origin")?;
                let d1 = parse_vector(&dir1, "--dir1")?;
                let d2 = parse_vector(&dir2, "--dir2")?;
                let x0 = parse_real_array(&basepoint, "--basepoint")?;
                let r = parse_reals(&range, 2, "--range")?;
                if grid < 2 {
                    return Err(Error::Usage("--grid must be at least 2".into()));
                }
                let mut csv = String::new();
                for i in 0..grid {
                    let a = r[0] + (r[1] - r[0]) * (i as f64) / ((grid - 1) as f64);
                    let mut row = Vec::with_capacity(grid);
                    for j in 0..grid {
                        let b = r[0] + (r[1] - r[0]) * (j as f64) / ((grid - 1) as f64);
                        let z = o
                            .add(&d1.scale(Complex64::new(a, 0.0)))?
                            .add(&d2.scale(Complex64::new(b, 0.0)))?;
                        let v = hull_membership(&z, &region, &x0, samples)?;
                        row.push(v.code().to_string());
                    }
                    csv.push_str(&row.join(","));
                    csv.push('\n');
                }
                match output {
                    Some(path) => {
                        fs::write(&path, &csv)
                            .map_err(|e| Error::Evaluation(format!("cannot write {}: {}", path, e)))?;
                        Ok(json!({"written": path, "grid": grid}))
                    }
                    None => {
                        print!("{}", csv);
                        Ok(json!({"grid": grid}))
                    }
                }
            }
        },
        Command::Bateman { command } => match command {
            BatemanCommand::Eval { f, contour, point } => {
                let integrand = BatemanIntegrand::parse(&f)?;
                let contour = parse_contour(&contour)?;
                let z = parse_vector(&point, "--point")?;
                let value = bateman_eval(&integrand, &contour, &z)?;
                Ok(json!({"value": complex_to_json(value)}))
            }
            BatemanCommand::Certify {
                f,
                contour,
                box_spec,
                count,
                fd_step,
            } => {
                let integrand = BatemanIntegrand::parse(&f)?;
                let contour = parse_contour(&contour)?;
                let b = parse_reals(&box_spec, 2, "--box")?;
                if b[0] >= b[1] {
                    return Err(Error::Usage("--box lo must be below hi".into()));
                }
                let worst =
                    harmonicity_certificate(&integrand, &contour, b[0], b[1], count, fd_step, &mut rng)?;
                Ok(json!({"max_laplacian_residual": worst, "count": count}))
            }
        },
        Command::Monodromy { loop_spec, demo_log } => {
            let v = parse_reals(&loop_spec, 4, "--loop")?;
            let steps = v[3] as usize;
            if v[3].fract() != 0.0 || steps == 0 {
                return Err(Error::Usage("loop step count must be a positive integer".into()));
            }
            if demo_log {
                // the planar obstruction: log around a loop gains 2 pi i per
                // winding of the loop about the origin
                let center = Complex64::new(v[0], v[1]);
                let path = PathSpec::circle(center, v[2], steps)?;
                let mut w = path.points[0].ln();
                for pair in path.points.windows(2) {
                    w += (pair[1] / pair[0]).ln();
                }
                let increment = w - path.points[0].ln();
                return Ok(json!({"increment": complex_to_json(increment)}));
            }
            let loop_points = monodromy_loop(Complex64::new(v[0], v[1]), v[2], steps)?;
            let multiplier = newtonian_monodromy(&loop_points)?;
            Ok(json!({"multiplier": complex_to_json(multiplier)}))
        }
        Command::Oddhull { command } => match command {
            OddhullCommand::Check {
                point,
                epsilon,
                rotation,
            } => {
                let z = parse_vector(&point, "--point")?;
                match (epsilon, rotation) {
                    (Some(eps), rot) => {
                        let a = match rot {
                            Some(text) => {
                                let r = parse_reals(&text, 9, "--rotation")?;
                                [
                                    [r[0], r[1], r[2]],
                                    [r[3], r[4], r[5]],
                                    [r[6], r[7], r[8]],
                                ]
                            }
                            None => [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
                        };
                        let member = curved_extension_member(&z, eps, &a, &tol)?;
                        Ok(json!({"member": member, "chart": "curved", "epsilon": eps}))
                    }
                    (None, Some(_)) => Err(Error::Usage(
                        "--rotation requires --epsilon".into(),
                    )),
                    (None, None) => {
                        let reduced = reduced_hull_member_3d(&z, &[[0.0, 0.0, 0.0]], &tol)?;
                        let witness = match cover_witness(&z, &tol) {
                            Ok(CoverWitness::ReducedHull) => json!({"kind": "reduced_hull"}),
                            Ok(CoverWitness::Rotated { rotation, epsilon }) => json!({
                                "kind": "rotated",
                                "rotation": rotation,
                                "epsilon": epsilon,
                            }),
                            Err(e) => json!({"kind": "none", "reason": e.to_string()}),
                        };
                        Ok(json!({"member": reduced, "witness": witness}))
                    }
                }
            }
        },
        Command::Incidence { z, zp } => {
            let z = parse_vector(&z, "--z")?;
            let zp = parse_vector(&zp, "--zp")?;
            let inc = lines_intersect(&z, &zp, &tol)?;
            Ok(json!({
                "intersect": inc.intersect,
                "point": inc.point.map(|p| vector_to_json(p.coords())),
                "determinant": complex_to_json(inc.determinant),
            }))
        }
        Command::Tau { point } => {
            let z = parse_vector(&point, "--point")?;
            let p = ProjectivePoint::new(z)?;
            let s = tau(&p)?;
            Ok(json!({"point": s.coords}))
        }
        Command::Pluecker(args) => {
            let phi = match (args.z, args.w, args.real) {
                (Some(z), Some(w), None) => {
                    let zp = ProjectivePoint::new(parse_vector(&z, "--z")?)?;
                    let wp = ProjectivePoint::new(parse_vector(&w, "--w")?)?;
                    pluecker_of_plane(&zp, &wp)?
                }
                (None, None, Some(text)) => {
                    let x = parse_reals(&text, 4, "--real")?;
                    pluecker_of_real(&[x[0], x[1], x[2], x[3]])
                }
                _ => {
                    return Err(Error::Usage(
                        "provide either --z and --w, or --real".into(),
                    ))
                }
            };
            let residual = quadric_residual(&phi)?;
            Ok(json!({
                "phi": vector_to_json(phi.coords()),
                "quadric_residual": complex_to_json(residual),
            }))
        }
        Command::Pqp { command } => match command {
            PqpCommand::Sample { m, count } => {
                if m < 2 {
                    return Err(Error::Usage("--m must be at least 2".into()));
                }
                let mut max_abs = 0.0f64;
                for _ in 0..count {
                    let g = sample_p(m, &mut rng)
                        .mul(&sample_q(m, &mut rng))
                        .mul(&sample_p(m, &mut rng));
                    max_abs = max_abs.max(g.c11().norm());
                }
                Ok(json!({"max_abs_c11": max_abs, "count": count, "m": m}))
            }
            PqpCommand::Rank { m, trials } => {
                let (rank, observed) = pqp_rank_estimate(m, trials, &mut rng)?;
                Ok(json!({
                    "rank": rank,
                    "expected": m * (2 * m + 3),
                    "observed": observed,
                }))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(payload) => {
            println!("{}", payload);
            ExitCode::SUCCESS
        }
        Err(err) => {
            let usage = matches!(err, Error::Usage(_));
            println!("{}", json!({"status": "error", "message": err.to_string()}));
            if usage {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
