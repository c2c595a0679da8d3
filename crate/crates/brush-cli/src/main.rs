//! Command-line front end: multiplier evaluation, brush coefficient tables,
//! antiderivative traces, theta functional-equation checks, Bargmann mass
//! grids, Euler-spiral samples, continued-fraction convergents, and support
//! classification. Text goes to stdout, tables to stdout or a CSV path,
//! errors as one line on stderr.
//!
//! Exit codes: 2 for parse problems, 3 for domain violations, 4 for
//! numerical failures such as an eighth-root snap miss.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use brush_core::brush::{
    brush_coefficient, brush_spec, classify_support, AlphaSpec, BrushSpec, CotInput, SupportClass,
};
use brush_core::exact::{Int, Rat, ShiftClass, Sl2z};
use brush_core::gauss::gauss_sum_mu;
use brush_core::mu::mu_reduce;
use brush_core::spiral::{
    antiderivative_trace, continued_fraction_convergents, fresnel_s, CfTarget,
};
use brush_core::theta::{bargmann_grid, functional_equation_residual};
use brush_core::Error;
use clap::{Parser, Subcommand};
use num_complex::Complex64;

#[derive(Parser)]
#[command(
    name = "dirac-brush",
    version,
    about = "Exact fractional Fourier images of Dirac combs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eighth-root multiplier of a matrix/shift pair, with the Gauss-sum cross-check.
    Mu {
        /// Matrix entries "a,b,c,d" with ad - bc = 1.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Shift class "q,p" with (q,p) = (ab, cd) mod 2.
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        /// Emit one JSON object instead of text lines.
        #[arg(long)]
        json: bool,
    },
    /// Coefficient table of the brush with a given cotangent.
    Brush {
        /// Cotangent of the rotation half-angle as "p/q" ("p/0" for the comb itself).
        #[arg(long, allow_hyphen_values = true)]
        cot: String,
        /// Squared comb spacing as "u/v".
        #[arg(long, default_value = "1/1")]
        rsq: String,
        /// First slot index.
        #[arg(long, allow_negative_numbers = true)]
        kmin: i64,
        /// Last slot index.
        #[arg(long, allow_negative_numbers = true)]
        kmax: i64,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Antiderivative trace of the brush on [-xmax, xmax].
    Trace {
        /// Cotangent of the rotation half-angle as "p/q".
        #[arg(long, allow_hyphen_values = true)]
        cot: String,
        /// Squared comb spacing as "u/v".
        #[arg(long, default_value = "1/1")]
        rsq: String,
        /// Half-width of the trace window.
        #[arg(long, allow_negative_numbers = true)]
        xmax: f64,
        /// Sample count per half-axis (at least 2).
        #[arg(long)]
        samples: u32,
        /// Write CSV here; a directory gets trace_<p>_<q>.csv inside it.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Residual of the theta functional equation for a matrix/shift pair.
    Theta {
        /// Matrix entries "a,b,c,d" with ad - bc = 1.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        /// Shift class "q,p" with (q,p) = (ab, cd) mod 2.
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
        /// Argument "re,im".
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        /// Parameter "re,im" with im > 0.
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
    },
    /// Bargmann mass and phase of the comb on the grid [0, window]^2.
    Bargmann {
        /// Squared comb spacing as "u/v".
        #[arg(long, default_value = "1/1")]
        rsq: String,
        /// Grid extends from 0 to this value on both axes.
        #[arg(long, allow_negative_numbers = true)]
        window: f64,
        /// Grid step.
        #[arg(long, allow_negative_numbers = true)]
        step: f64,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Euler-spiral samples S(x) for x in [0, xmax].
    Fresnel {
        /// Upper end of the sample range.
        #[arg(long, allow_negative_numbers = true)]
        xmax: f64,
        /// Number of steps (rows = samples + 1).
        #[arg(long)]
        samples: u32,
        /// Write CSV here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Continued-fraction convergents of a classical target or a rational.
    Approx {
        /// One of sqrt2, sqrt3, golden, pi, or a rational "p/q".
        #[arg(long, allow_hyphen_values = true)]
        target: String,
        /// Number of convergents.
        #[arg(long)]
        depth: u32,
    },
    /// Whether the transformed comb is a discrete measure or dense.
    Classify {
        /// Cotangent "p/q", "p/0", or one of sqrt2, sqrt3, golden, pi.
        #[arg(long, allow_hyphen_values = true)]
        cot: String,
        /// Squared comb spacing as "u/v".
        #[arg(long, default_value = "1/1")]
        rsq: String,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: String) -> Self {
        Failure { code: 2, message }
    }

    fn domain(message: String) -> Self {
        Failure { code: 3, message }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::SnapMiss { .. }
            | Error::SignSnapMiss { .. }
            | Error::ProbeMismatch { .. }
            | Error::OracleMismatch { .. } => 4,
            _ => 3,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(f) = run(cli.cmd) {
        eprintln!("error: {}", f.message);
        std::process::exit(f.code);
    }
}

fn run(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Mu { matrix, shift, json } => cmd_mu(&matrix, &shift, json),
        Cmd::Brush {
            cot,
            rsq,
            kmin,
            kmax,
            csv,
        } => cmd_brush(&cot, &rsq, kmin, kmax, csv.as_deref()),
        Cmd::Trace {
            cot,
            rsq,
            xmax,
            samples,
            csv,
        } => cmd_trace(&cot, &rsq, xmax, samples, csv.as_deref()),
        Cmd::Theta {
            matrix,
            shift,
            z,
            tau,
        } => cmd_theta(&matrix, &shift, &z, &tau),
        Cmd::Bargmann {
            rsq,
            window,
            step,
            csv,
        } => cmd_bargmann(&rsq, window, step, csv.as_deref()),
        Cmd::Fresnel { xmax, samples, csv } => cmd_fresnel(xmax, samples, csv.as_deref()),
        Cmd::Approx { target, depth } => cmd_approx(&target, depth),
        Cmd::Classify { cot, rsq } => cmd_classify(&cot, &rsq),
    }
}

/// 12 significant digits, '.' separator, no negative zero.
fn sig(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

fn parse_i64(field: &str, ctx: &str) -> Result<i64, Failure> {
    field
        .trim()
        .parse::<i64>()
        .map_err(|_| Failure::parse(format!("{ctx}: expected an integer, got \"{field}\"")))
}

fn parse_f64(field: &str, ctx: &str) -> Result<f64, Failure> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Failure::parse(format!("{ctx}: expected a number, got \"{field}\"")))?;
    if !v.is_finite() {
        return Err(Failure::parse(format!("{ctx}: \"{field}\" is not finite")));
    }
    Ok(v)
}

fn parse_quad(s: &str, ctx: &str) -> Result<[i64; 4], Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Failure::parse(format!(
            "{ctx}: expected \"a,b,c,d\", got \"{s}\""
        )));
    }
    Ok([
        parse_i64(parts[0], ctx)?,
        parse_i64(parts[1], ctx)?,
        parse_i64(parts[2], ctx)?,
        parse_i64(parts[3], ctx)?,
    ])
}

fn parse_pair(s: &str, ctx: &str) -> Result<[i64; 2], Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::parse(format!(
            "{ctx}: expected \"q,p\", got \"{s}\""
        )));
    }
    Ok([parse_i64(parts[0], ctx)?, parse_i64(parts[1], ctx)?])
}

fn parse_complex(s: &str, ctx: &str) -> Result<Complex64, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::parse(format!(
            "{ctx}: expected \"re,im\", got \"{s}\""
        )));
    }
    Ok(Complex64::new(
        parse_f64(parts[0], ctx)?,
        parse_f64(parts[1], ctx)?,
    ))
}

/// "p/q" or a bare integer "p"; the numerator/denominator pair is returned
/// unreduced so a zero denominator can keep its meaning per command.
fn parse_ratio(s: &str, ctx: &str) -> Result<(i64, i64), Failure> {
    match s.split_once('/') {
        Some((num, den)) => Ok((parse_i64(num, ctx)?, parse_i64(den, ctx)?)),
        None => Ok((parse_i64(s, ctx)?, 1)),
    }
}

fn parse_rsq(s: &str) -> Result<Rat, Failure> {
    let (num, den) = parse_ratio(s, "--rsq")?;
    if den == 0 {
        return Err(Failure::parse("--rsq: denominator is zero".into()));
    }
    if num <= 0 || den < 0 {
        return Err(Failure::domain(format!("--rsq: {s} is not positive")));
    }
    Ok(Rat::new(Int::from(num), Int::from(den)))
}

fn parse_cot(s: &str) -> Result<CotInput, Failure> {
    match s {
        "sqrt2" | "sqrt3" | "golden" | "pi" => Ok(CotInput::Irrational),
        _ => {
            let (num, den) = parse_ratio(s, "--cot")?;
            if den == 0 {
                if num == 0 {
                    return Err(Failure::parse("--cot: 0/0 is not a cotangent".into()));
                }
                return Ok(CotInput::SinZero);
            }
            Ok(CotInput::Value(Rat::new(Int::from(num), Int::from(den))))
        }
    }
}

fn spec_for(cot: &str, rsq: &str) -> Result<BrushSpec, Failure> {
    let cot = parse_cot(cot)?;
    let r_sq = parse_rsq(rsq)?;
    let (a, b) = match classify_support(&cot, &r_sq)? {
        SupportClass::Discrete { a, b } => (a, b),
        SupportClass::Dense => {
            return Err(Failure::domain(
                "the image is dense: no coefficient table exists".into(),
            ))
        }
    };
    let alpha = AlphaSpec::new(a, b, r_sq, 0)?;
    Ok(brush_spec(alpha, None)?)
}

fn emit(table: String, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        None => {
            print!("{table}");
            Ok(())
        }
        Some(p) => std::fs::write(p, table)
            .map_err(|e| Failure::domain(format!("cannot write {}: {e}", p.display()))),
    }
}

fn cmd_mu(matrix: &str, shift: &str, json: bool) -> Result<(), Failure> {
    let [a, b, c, d] = parse_quad(matrix, "--matrix")?;
    let [q, p] = parse_pair(shift, "--shift")?;
    let m = Sl2z::from_i64(a, b, c, d)?;
    let s = ShiftClass::from_i64(q, p);
    if !brush_core::exact::shift_parity_check(&m, &s) {
        // A shift outside the parity class is a malformed request, not a
        // domain edge.
        return Err(Failure::parse(format!(
            "--shift: ({q},{p}) violates the parity class (ab, cd) mod 2"
        )));
    }
    let reduced = mu_reduce(&m, &s)?;
    let value = reduced.k8.value();
    let oracle = gauss_sum_mu(&m, &s)?;
    let agrees = oracle.snapped.k() == reduced.k8.k();
    if json {
        println!(
            "{{\"k8\":{},\"mu_re\":{:?},\"mu_im\":{:?},\"oracle_agrees\":{}}}",
            reduced.k8.k(),
            value.re,
            value.im,
            agrees
        );
    } else {
        println!("k8 {}", reduced.k8.k());
        println!("mu {} {}", sig(value.re), sig(value.im));
        println!("oracle {} {}", sig(oracle.value.re), sig(oracle.value.im));
        println!("oracle_agrees {agrees}");
    }
    Ok(())
}

fn cmd_brush(
    cot: &str,
    rsq: &str,
    kmin: i64,
    kmax: i64,
    csv: Option<&Path>,
) -> Result<(), Failure> {
    if kmin > kmax {
        return Err(Failure::domain(format!(
            "empty slot range: kmin {kmin} > kmax {kmax}"
        )));
    }
    let spec = spec_for(cot, rsq)?;
    let mut table = String::from("n,position,re,im\n");
    for n in kmin..=kmax {
        let coeff = brush_coefficient(&spec, &Int::from(n));
        let _ = writeln!(
            table,
            "{n},{},{},{}",
            sig(coeff.position),
            sig(coeff.value.re),
            sig(coeff.value.im)
        );
    }
    emit(table, csv)
}

fn cmd_trace(
    cot: &str,
    rsq: &str,
    xmax: f64,
    samples: u32,
    csv: Option<&Path>,
) -> Result<(), Failure> {
    let spec = spec_for(cot, rsq)?;
    let rows = antiderivative_trace(&spec, xmax, samples)?;
    let mut table = String::from("x,re,im\n");
    for row in rows {
        let _ = writeln!(table, "{},{},{}", sig(row.x), sig(row.re), sig(row.im));
    }
    let target = csv.map(|p| {
        if p.is_dir() {
            let (num, den) = parse_ratio(cot, "--cot").unwrap_or((0, 0));
            p.join(format!("trace_{num}_{den}.csv"))
        } else {
            p.to_path_buf()
        }
    });
    emit(table, target.as_deref())
}

fn cmd_theta(matrix: &str, shift: &str, z: &str, tau: &str) -> Result<(), Failure> {
    let [a, b, c, d] = parse_quad(matrix, "--matrix")?;
    let [q, p] = parse_pair(shift, "--shift")?;
    let m = Sl2z::from_i64(a, b, c, d)?;
    let s = ShiftClass::from_i64(q, p);
    let z = parse_complex(z, "--z")?;
    let tau = parse_complex(tau, "--tau")?;
    let fe = functional_equation_residual(&m, &s, z, tau, 1e-16)?;
    println!("lhs {} {}", sig(fe.lhs.re), sig(fe.lhs.im));
    println!("rhs {} {}", sig(fe.rhs.re), sig(fe.rhs.im));
    println!("residual {}", sig(fe.residual));
    Ok(())
}

fn cmd_bargmann(rsq: &str, window: f64, step: f64, csv: Option<&Path>) -> Result<(), Failure> {
    let r_sq = parse_rsq(rsq)?;
    if !(window > 0.0) {
        return Err(Failure::domain("window must be positive".into()));
    }
    let rows = bargmann_grid((0.0, window), (0.0, window), step, &r_sq)?;
    let mut table = String::from("re_z,im_z,mass,phase\n");
    for row in rows {
        let _ = writeln!(
            table,
            "{},{},{},{}",
            sig(row.re_z),
            sig(row.im_z),
            sig(row.mass),
            sig(row.phase)
        );
    }
    emit(table, csv)
}

fn cmd_fresnel(xmax: f64, samples: u32, csv: Option<&Path>) -> Result<(), Failure> {
    if !(xmax > 0.0) {
        return Err(Failure::domain("xmax must be positive".into()));
    }
    if samples < 1 {
        return Err(Failure::domain("samples must be at least 1".into()));
    }
    let mut table = String::from("x,re,im\n");
    for i in 0..=samples {
        let x = xmax * i as f64 / samples as f64;
        let v = fresnel_s(x, 1e-12)?;
        let _ = writeln!(table, "{},{},{}", sig(x), sig(v.re), sig(v.im));
    }
    emit(table, csv)
}

fn cmd_approx(target: &str, depth: u32) -> Result<(), Failure> {
    let target = match target {
        "sqrt2" => CfTarget::Sqrt2,
        "sqrt3" => CfTarget::Sqrt3,
        "golden" => CfTarget::Golden,
        "pi" => CfTarget::Pi,
        other => {
            let (num, den) = parse_ratio(other, "--target")?;
            if den == 0 {
                return Err(Failure::parse("--target: denominator is zero".into()));
            }
            CfTarget::Rational(Rat::new(Int::from(num), Int::from(den)))
        }
    };
    let convergents = continued_fraction_convergents(&target, depth)?;
    for c in convergents {
        println!("{} {}/{}", c.index, c.p, c.q);
    }
    Ok(())
}

fn cmd_classify(cot: &str, rsq: &str) -> Result<(), Failure> {
    let cot = parse_cot(cot)?;
    let r_sq = parse_rsq(rsq)?;
    match classify_support(&cot, &r_sq)? {
        SupportClass::Discrete { a, b } => println!("discrete a={a} b={b}"),
        SupportClass::Dense => println!("dense"),
    }
    Ok(())
}
