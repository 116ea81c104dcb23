use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Value};

use sendov_core::corpus::{generate, random_sn, CorpusKind, CorpusParams};
use sendov_core::lp::{Tolerances, Verdict};
use sendov_core::majorization::{check_majorization, dbs_inequality, symmetric_mean_identity, tuple_w, tuple_z, ConvexFn};
use sendov_core::maximal_zero::{construct, lambda_bound, verify_0maximal, ZeroMaximalSpec};
use sendov_core::metrics::{delta_distance, directed_hausdorff, smale_ratio};
use sendov_core::normal_ops::{
    char_poly, compression_spectrum, gauss_lucas_weights, interlace_ratios, normal_from_roots, random_normal,
    spectral_radius, spectral_variation, NormalMatrix,
};
use sendov_core::suite;
use sendov_core::variation_first::{amatrix, bmatrix, cmatrix, dmatrix, extensibility, setup};
use sendov_core::variation_second::{fit_quadratic_growth, prop112_perturbation, prop113_inequality, Family};
use sendov_core::{Error, PolyJson, Polynomial};

use crate::parse;
use crate::report::{to_json, Check, Outcome};
use crate::Global;

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input: exit 2.
    Input(String),
    /// A library failure on well-formed input: exit 1.
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) | Self::Core(Error::Json(_)) => 2,
            Self::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Input(s) => write!(f, "{s}"),
            Self::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input<T>(r: std::result::Result<T, String>) -> CliResult<T> {
    r.map_err(CliError::Input)
}

fn read_poly(path: &Path) -> CliResult<(Polynomial, Value)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let doc: PolyJson =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: malformed polynomial JSON: {e}", path.display())))?;
    let p = doc.to_poly()?;
    let echo = json!({ "path": path.display().to_string(), "polynomial": doc });
    Ok((p, echo))
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn pairs(zs: &[Complex64]) -> Value {
    Value::Array(zs.iter().map(|&z| pair(z)).collect())
}

fn matrix(m: &DMatrix<Complex64>) -> Value {
    Value::Array((0..m.nrows()).map(|i| Value::Array((0..m.ncols()).map(|j| pair(m[(i, j)])).collect())).collect())
}

fn value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

// ---------------------------------------------------------------- metrics

#[derive(Subcommand, Debug)]
pub enum MetricsCmd {
    /// d(p): largest distance from a zero to the nearest critical point.
    D { poly: PathBuf },
    /// Bottleneck distance between the zero multisets of two polynomials.
    Delta { p: PathBuf, q: PathBuf },
    /// min |p(w)/(p'(0) w)| over critical points, for p(0) = 0.
    Smale { poly: PathBuf },
}

fn metrics(cmd: &MetricsCmd, g: &Global) -> CliResult<Outcome> {
    match cmd {
        MetricsCmd::D { poly } => {
            let (p, echo) = read_poly(poly)?;
            let (d, worst) = directed_hausdorff(&p)?;
            let zeros = p.find_roots()?.points();
            let mut checks = Vec::new();
            if zeros.iter().all(|z| z.norm() <= 1.0 + g.tol) {
                checks.push(Check::at_most("d <= 1 for zeros in the closed unit disk", d, 1.0 + 1e-9));
            }
            Ok(Outcome {
                inputs: echo,
                outputs: json!({ "value": d, "worst_zero": pair(worst), "zeros": pairs(&zeros) }),
                checks,
            })
        }
        MetricsCmd::Delta { p, q } => {
            let (pp, ep) = read_poly(p)?;
            let (qq, eq) = read_poly(q)?;
            let v = delta_distance(&pp, &qq)?;
            Ok(Outcome {
                inputs: json!({ "p": ep, "q": eq }),
                outputs: json!({ "value": v }),
                checks: Vec::new(),
            })
        }
        MetricsCmd::Smale { poly } => {
            let (p, echo) = read_poly(poly)?;
            let v = smale_ratio(&p)?;
            Ok(Outcome {
                inputs: echo,
                outputs: json!({ "value": v }),
                checks: vec![Check::at_most("ratio <= 4", v, 4.0)],
            })
        }
    }
}

// ---------------------------------------------------------------- varfirst

#[derive(Subcommand, Debug)]
pub enum VarfirstCmd {
    /// Decide whether the zero admits a direction increasing every critical distance.
    Extensible {
        poly: PathBuf,
        /// The zero `a` as `re` or `re,im`; snapped to the nearest computed zero.
        #[arg(long, allow_hyphen_values = true)]
        zero: String,
    },
    /// Emit the sensitivity matrices at a zero.
    Matrices {
        poly: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        zero: String,
        /// Comma list drawn from A, B, C, D.
        #[arg(long, default_value = "A,B,C,D")]
        emit: String,
    },
}

fn snap_zero(p: &Polynomial, spec: &str) -> CliResult<Complex64> {
    let a = input(parse::complex(spec))?;
    let zeros = p.find_roots()?.points();
    let nearest = zeros
        .iter()
        .copied()
        .min_by(|x, y| (x - a).norm().total_cmp(&(y - a).norm()))
        .unwrap_or(a);
    Ok(if (nearest - a).norm() <= 1e-6 { nearest } else { a })
}

fn varfirst(cmd: &VarfirstCmd, g: &Global) -> CliResult<Outcome> {
    match cmd {
        VarfirstCmd::Extensible { poly, zero } => {
            let (p, echo) = read_poly(poly)?;
            let a = snap_zero(&p, zero)?;
            let cert = extensibility(&p, a)?;
            let b = bmatrix(&setup(&p, a)?)?;
            let tol = Tolerances {
                feasibility: g.tol,
                ..Tolerances::default()
            };
            Ok(Outcome {
                inputs: json!({ "poly": echo, "zero": pair(a) }),
                outputs: json!({
                    "extensible": cert.verdict == Verdict::StrictlyFeasible,
                    "certificate": value(&cert),
                }),
                checks: vec![Check::flag("certificate verifies", cert.verify(&b, &tol))],
            })
        }
        VarfirstCmd::Matrices { poly, zero, emit } => {
            let (p, echo) = read_poly(poly)?;
            let a = snap_zero(&p, zero)?;
            let s = setup(&p, a)?;
            let mut out = serde_json::Map::new();
            out.insert("zeros".into(), pairs(&s.zeros));
            out.insert("critical_points".into(), pairs(&s.crit));
            out.insert("on_circle".into(), json!(s.r));
            out.insert("radius".into(), json!(s.radius));
            for name in emit.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let m = match name.to_ascii_uppercase().as_str() {
                    "A" => amatrix(&s)?,
                    "B" => bmatrix(&s)?,
                    "C" => cmatrix(&s)?,
                    "D" => dmatrix(&s)?,
                    other => return Err(CliError::Input(format!("unknown matrix '{other}' (expected A, B, C or D)"))),
                };
                out.insert(name.to_ascii_uppercase(), matrix(&m));
            }
            let n = s.degree();
            let prod = cmatrix(&s)? * dmatrix(&s)?;
            let dev = (prod - DMatrix::<Complex64>::identity(n - 1, n - 1))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            Ok(Outcome {
                inputs: json!({ "poly": echo, "zero": pair(a), "emit": emit }),
                outputs: Value::Object(out),
                checks: vec![Check::at_most("C·D = I", dev, g.tol)],
            })
        }
    }
}

// ---------------------------------------------------------------- varsecond

#[derive(Subcommand, Debug)]
pub enum VarsecondCmd {
    /// Fit d(p_a) = r + c2 a² + ... along a family.
    Fit {
        #[arg(long, default_value = "deg4")]
        family: String,
        /// `step:count` or a comma list of a values.
        #[arg(long, default_value = "1e-3:8")]
        grid: String,
    },
    /// Perturb the zero at the origin of z^n - z by ε₁ and compare with the bound.
    Prop112 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps1: f64,
        /// Phase of ε₁ in radians.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phase: f64,
        #[arg(long, default_value_t = 1.0)]
        kappa: f64,
    },
    /// sin(π/(2(n-1)))/sin(π/n) against n^{-1/(n-1)}.
    Prop113 {
        #[arg(long, default_value = "5..50")]
        n: String,
    },
}

fn varsecond(cmd: &VarsecondCmd, _g: &Global) -> CliResult<Outcome> {
    match cmd {
        VarsecondCmd::Fit { family, grid } => {
            let fam: Family = family.parse()?;
            let a = input(parse::grid(grid))?;
            let fit = fit_quadratic_growth(fam, &a)?;
            let predicted = fam.growth_constant();
            Ok(Outcome {
                inputs: json!({ "family": family, "grid": a }),
                outputs: json!({ "fit": value(&fit), "predicted_c2": predicted }),
                checks: vec![Check::at_most("fitted c2 matches the predicted constant", (fit.c2 - predicted).abs(), 0.01)],
            })
        }
        VarsecondCmd::Prop112 { n, eps1, phase, kappa } => {
            let mut eps = vec![Complex64::new(0.0, 0.0); *n];
            if let Some(e) = eps.first_mut() {
                *e = Complex64::from_polar(*eps1, *phase);
            }
            let out = prop112_perturbation(*n, &eps, *kappa)?;
            Ok(Outcome {
                inputs: json!({ "n": n, "eps1": eps1, "phase": phase, "kappa": kappa }),
                outputs: json!({ "lhs": out.lhs, "rhs": out.rhs, "holds": out.holds, "q": value(&out.q) }),
                checks: vec![Check::at_most("lhs - rhs", out.lhs - out.rhs, 0.0)],
            })
        }
        VarsecondCmd::Prop113 { n } => {
            let (lo, hi) = input(parse::range(n))?;
            let mut rows = Vec::new();
            let mut checks = Vec::new();
            for k in lo..=hi {
                let (l, r) = prop113_inequality(k)?;
                rows.push(json!({ "n": k, "lhs": l, "rhs": r }));
                checks.push(Check {
                    name: format!("n = {k}: lhs < rhs"),
                    pass: l < r,
                    value: l - r,
                    tolerance: 0.0,
                });
            }
            Ok(Outcome {
                inputs: json!({ "n": [lo, hi] }),
                outputs: Value::Array(rows),
                checks,
            })
        }
    }
}

// ---------------------------------------------------------------- zeromax

#[derive(Subcommand, Debug)]
pub enum ZeromaxCmd {
    /// Build a polynomial with a zero at 0 whose critical radius is extremal.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        theta: f64,
        /// Free parameter of the odd-degree family; ignored for even n.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda: f64,
    },
    /// Check the critical-radius, zero-circle and critical-circle conditions.
    Verify { poly: PathBuf },
}

fn zeromax(cmd: &ZeromaxCmd, g: &Global) -> CliResult<Outcome> {
    match cmd {
        ZeromaxCmd::Construct { n, theta, lambda } => {
            let spec = ZeroMaximalSpec {
                n: *n,
                theta: *theta,
                lambda: *lambda,
            };
            let p = construct(&spec)?;
            let rep = verify_0maximal(&p)?;
            Ok(Outcome {
                inputs: value(&spec),
                outputs: json!({
                    "polynomial": value(&PolyJson::from_poly(&p)?),
                    "lambda_bound": lambda_bound(*n),
                    "report": value(&rep),
                }),
                checks: vec![
                    Check::at_most("critical radius", rep.radius_deviation, g.tol),
                    Check::at_most("zeros on the unit circle", rep.zero_circle_deviation, g.tol),
                    Check::at_most("critical points on one circle", rep.critical_modulus_deviation, g.tol),
                ],
            })
        }
        ZeromaxCmd::Verify { poly } => {
            let (p, echo) = read_poly(poly)?;
            let rep = verify_0maximal(&p)?;
            Ok(Outcome {
                inputs: echo,
                outputs: value(&rep),
                checks: vec![
                    Check::at_most("critical radius", rep.radius_deviation, g.tol),
                    Check::at_most("zeros on the unit circle", rep.zero_circle_deviation, g.tol),
                    Check::at_most("critical points on one circle", rep.critical_modulus_deviation, g.tol),
                ],
            })
        }
    }
}

// ---------------------------------------------------------------- normal

#[derive(Args, Debug)]
pub struct NormalSource {
    poly: PathBuf,
    /// Conjugate by a seeded random unitary instead of the Fourier matrix.
    #[arg(long)]
    random_unitary: bool,
}

#[derive(Subcommand, Debug)]
pub enum NormalCmd {
    /// A normal matrix with the given zeros as spectrum and its compression.
    Compress {
        #[command(flatten)]
        src: NormalSource,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Spectral variation in both directions, for the file and for seeded trials.
    Svar {
        poly: PathBuf,
        /// Extra seeded root sets of the same degree in the closed unit disk.
        #[arg(long, default_value_t = 0)]
        trials: usize,
    },
    /// Spectral weights of a basis vector, checked at probe points.
    Glweights {
        #[command(flatten)]
        src: NormalSource,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// `re,im;re,im;...`; defaults to eight points on a circle enclosing the spectrum.
        #[arg(long, allow_hyphen_values = true)]
        probes: Option<String>,
    },
    /// Interlacing ratios for a compression.
    Interlace {
        #[command(flatten)]
        src: NormalSource,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

fn normal_matrix(src: &NormalSource, g: &Global) -> CliResult<(NormalMatrix, Vec<Complex64>, Value)> {
    let (p, echo) = read_poly(&src.poly)?;
    let roots = p.find_roots()?.points();
    let a = if src.random_unitary {
        random_normal(&roots, g.seed)?
    } else {
        normal_from_roots(&roots)?
    };
    Ok((a, roots, json!({ "poly": echo, "random_unitary": src.random_unitary })))
}

fn check_index(i: usize, n: usize) -> CliResult<()> {
    if i >= n {
        return Err(CliError::Input(format!("--index {i} out of range for dimension {n}")));
    }
    Ok(())
}

fn normal(cmd: &NormalCmd, g: &Global) -> CliResult<Outcome> {
    match cmd {
        NormalCmd::Compress { src, index } => {
            let (a, roots, echo) = normal_matrix(src, g)?;
            check_index(*index, a.dim())?;
            let sub = a.compression(*index)?;
            let pair = compression_spectrum(&a, *index)?;
            let mut checks = vec![Check::at_most("normality residual", a.normality_residual(), 1e-9)];
            if !src.random_unitary {
                let n = roots.len();
                let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
                let target = Polynomial::from_roots(&roots)?.derivative().scale(Complex64::new(sign / n as f64, 0.0));
                let got = char_poly(&sub)?;
                let dev = got
                    .coeffs()
                    .iter()
                    .zip(target.coeffs())
                    .map(|(x, y)| (x - y).norm())
                    .fold(0.0, f64::max);
                checks.push(Check::at_most("char_poly(A_[i]) = (-1)^{n-1} p'/n", dev, 1e-9));
            }
            Ok(Outcome {
                inputs: json!({ "source": echo, "index": index }),
                outputs: json!({
                    "matrix": matrix(a.entries()),
                    "compression": matrix(&sub),
                    "eig_full": pairs(&pair.eig_full),
                    "eig_sub": pairs(&pair.eig_sub),
                }),
                checks,
            })
        }
        NormalCmd::Svar { poly, trials } => {
            let (p, echo) = read_poly(poly)?;
            let roots = p.find_roots()?.points();
            let n = roots.len();
            let one = |roots: &[Complex64]| -> CliResult<(f64, f64, f64)> {
                let pair = compression_spectrum(&normal_from_roots(roots)?, 0)?;
                Ok((
                    spectral_variation(&pair.eig_full, &pair.eig_sub)?,
                    spectral_variation(&pair.eig_sub, &pair.eig_full)?,
                    spectral_radius(&pair.eig_full),
                ))
            };
            let (fwd, back, rho) = one(&roots)?;
            let (mut worst_fwd, mut worst_back) = (fwd - rho, back - rho);
            for r in random_sn(n, *trials, g.seed) {
                let (f, b, rho) = one(&r)?;
                worst_fwd = worst_fwd.max(f - rho);
                worst_back = worst_back.max(b - rho);
            }
            Ok(Outcome {
                inputs: json!({ "poly": echo, "trials": trials }),
                outputs: json!({
                    "s_a_compressed": fwd,
                    "s_compressed_a": back,
                    "spectral_radius": rho,
                    "max_excess_forward": worst_fwd,
                    "max_excess_backward": worst_back,
                }),
                checks: vec![
                    Check::at_most("s(A, A') - ρ(A)", worst_fwd, 1e-9),
                    Check::at_most("s(A', A) - ρ(A)", worst_back, 1e-9),
                ],
            })
        }
        NormalCmd::Glweights { src, index, probes } => {
            let (a, roots, echo) = normal_matrix(src, g)?;
            check_index(*index, a.dim())?;
            let probes = match probes {
                Some(s) => input(parse::points(s))?,
                None => {
                    let r = 2.0 * spectral_radius(&roots) + 1.0;
                    (0..8)
                        .map(|k| Complex64::from_polar(r, std::f64::consts::TAU * (k as f64 + 0.5) / 8.0))
                        .collect()
                }
            };
            let gl = gauss_lucas_weights(&a, *index, &probes)?;
            let sum: f64 = gl.weights.iter().sum();
            let min = gl.weights.iter().copied().fold(f64::INFINITY, f64::min);
            Ok(Outcome {
                inputs: json!({ "source": echo, "index": index, "probes": pairs(&probes) }),
                outputs: value(&gl),
                checks: vec![
                    Check::at_most("resolvent identity residual", gl.residual, g.tol),
                    Check::at_least_zero("weights nonnegative", min, 1e-12),
                    Check::at_most("weights sum to 1", (sum - 1.0).abs(), 1e-12),
                ],
            })
        }
        NormalCmd::Interlace { src, index } => {
            let (a, _, echo) = normal_matrix(src, g)?;
            check_index(*index, a.dim())?;
            let out = interlace_ratios(&a, *index)?;
            let min = out.values.iter().copied().fold(f64::INFINITY, f64::min);
            Ok(Outcome {
                inputs: json!({ "source": echo, "index": index }),
                outputs: value(&out),
                checks: vec![
                    Check::at_least_zero("ratios nonnegative", min, g.tol),
                    Check::at_most("ratios real", out.max_imag, g.tol),
                ],
            })
        }
    }
}

// ---------------------------------------------------------------- major

#[derive(Subcommand, Debug)]
pub enum MajorCmd {
    /// Search for a rectangularly stochastic R with W(α,k) = R Z(α,k).
    Check {
        poly: PathBuf,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Mean of a convex function over W(α,k) against its mean over Z(α,k).
    Dbs {
        poly: PathBuf,
        /// abs, re, im, pos_re, abs2, dist:x,y or maxlin:a1,b1,c1,a2,b2,c2.
        #[arg(long, default_value = "abs", allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

fn major(cmd: &MajorCmd, _g: &Global) -> CliResult<Outcome> {
    match cmd {
        MajorCmd::Check { poly, alpha, k } => {
            let (p, echo) = read_poly(poly)?;
            let alpha = input(parse::complex(alpha))?;
            let w = tuple_w(&p, alpha, *k)?;
            let z = tuple_z(&p, alpha, *k)?;
            let out = check_majorization(&w.values, &z.values)?;
            let identity = symmetric_mean_identity(&p, alpha, *k)?;
            let mut checks = vec![Check::flag("majorized", out.certificate().is_some())];
            if let Some(c) = out.certificate() {
                checks.push(Check::at_most("row sums", c.row_sum_residual, 1e-8));
                checks.push(Check::at_most("column sums", c.col_sum_residual, 1e-8));
                checks.push(Check::at_most("negative entries", c.neg_entry, 1e-9));
                checks.push(Check::at_most("reconstruction", c.reconstruction_residual, 1e-7));
            }
            checks.push(Check::at_most("symmetric means agree", identity, 1e-9));
            Ok(Outcome {
                inputs: json!({ "poly": echo, "alpha": pair(alpha), "k": k }),
                outputs: json!({ "w": pairs(&w.values), "z": pairs(&z.values), "outcome": value(&out) }),
                checks,
            })
        }
        MajorCmd::Dbs { poly, f, alpha, k } => {
            let (p, echo) = read_poly(poly)?;
            let func: ConvexFn = match f.parse() {
                Ok(func) => func,
                Err(e) => return Err(CliError::Input(e.to_string())),
            };
            let alpha = input(parse::complex(alpha))?;
            let w = tuple_w(&p, alpha, *k)?;
            let z = tuple_z(&p, alpha, *k)?;
            let (lhs, rhs) = dbs_inequality(&w.values, &z.values, &func)?;
            Ok(Outcome {
                inputs: json!({ "poly": echo, "f": f, "alpha": pair(alpha), "k": k }),
                outputs: json!({ "lhs": lhs, "rhs": rhs }),
                checks: vec![Check::at_most("mean over W - mean over Z", lhs - rhs, 1e-10)],
            })
        }
    }
}

// ---------------------------------------------------------------- suite, gen

#[derive(Subcommand, Debug)]
pub enum SuiteCmd {
    /// Every acceptance criterion at desk scale.
    #[command(name = "sendov-desk")]
    SendovDesk,
}

fn run_suite(cmd: &SuiteCmd) -> CliResult<Outcome> {
    match cmd {
        SuiteCmd::SendovDesk => {
            let outcomes = suite::run_all();
            let checks = outcomes
                .iter()
                .map(|o| Check {
                    name: format!("criterion {}: {}", o.id, o.name),
                    pass: o.pass,
                    value: o.value,
                    tolerance: o.tolerance,
                })
                .collect();
            Ok(Outcome {
                inputs: json!({ "suite": "sendov-desk" }),
                outputs: value(&outcomes),
                checks,
            })
        }
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// random_Sn, zero_maximal, deg4_family or roots_grid.
    kind: String,
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// θ, a or ρ values: `step:count` or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    lambda: f64,
    /// Output directory, created if missing.
    #[arg(long)]
    out: PathBuf,
}

fn gen(args: &GenArgs, g: &Global) -> CliResult<Outcome> {
    let kind: CorpusKind = args.kind.parse().map_err(|e: Error| CliError::Input(e.to_string()))?;
    let grid = match &args.grid {
        Some(s) => input(parse::grid(s))?,
        None if kind == CorpusKind::RandomSn => Vec::new(),
        None => return Err(CliError::Input(format!("--grid is required for {}", args.kind))),
    };
    let params = CorpusParams {
        n: args.n,
        count: args.count,
        grid: grid.clone(),
        lambda: args.lambda,
    };
    let items = generate(kind, &params, g.seed)?;
    std::fs::create_dir_all(&args.out).map_err(|e| CliError::Input(format!("{}: {e}", args.out.display())))?;
    let mut files = Vec::new();
    for item in &items {
        let path = args.out.join(&item.name);
        let text = to_json(&item.doc, g.json_indent) + "\n";
        std::fs::write(&path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        files.push(item.name.clone());
    }
    Ok(Outcome {
        inputs: json!({
            "kind": args.kind,
            "n": args.n,
            "count": args.count,
            "grid": grid,
            "lambda": args.lambda,
            "out": args.out.display().to_string(),
        }),
        outputs: json!({ "files": files }),
        checks: vec![Check::flag("files written", !files.is_empty())],
    })
}

pub fn run(cmd: &crate::Command, g: &Global) -> CliResult<Outcome> {
    use crate::Command::*;
    match cmd {
        Metrics(c) => metrics(c, g),
        Varfirst(c) => varfirst(c, g),
        Varsecond(c) => varsecond(c, g),
        Zeromax(c) => zeromax(c, g),
        Normal(c) => normal(c, g),
        Major(c) => major(c, g),
        Suite(c) => run_suite(c),
        Gen(a) => gen(a, g),
    }
}
