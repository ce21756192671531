use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;
use superstft::evolution::{evolution_quadrature, evolve, evolve_superosc, normalize, EvolutionPoint};
use superstft::kernels::{gabor_kernel, stft_superosc_closed, stft_superosc_limit, TFQuadruple};
use superstft::quadrature::{nodes_per_unit_from_env, QuadratureSpec};
use superstft::signals::{build_signal, Signal, Window};
use superstft::superosc::SuperoscParams;
use superstft::transforms::{linspace, stft_grid, stft_quadrature};
use superstft::verify::{self, Suite, VerifyConfig, DEFAULT_SEED};
use superstft::zak::{f_tilde, frame_check_with_tolerance, FRAME_TOLERANCE};
use superstft::{Error, C64};

#[derive(Parser)]
#[command(
    name = "superstft",
    version,
    about = "STFT, Zak and evolution tools for superoscillating signals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write V_g of a signal on a (u, eta) grid as CSV.
    Spectrogram(SpectrogramArgs),
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Scan the Zak transform and report a Gabor-frame verdict as JSON.
    ZakFrame(ZakFrameArgs),
    /// Write the free Schrödinger evolution on an (x, t) grid as CSV.
    Evolve(EvolveArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum WindowArg {
    Gaussian,
    Hermite,
}

#[derive(Args)]
struct WindowOpts {
    #[arg(long, value_enum, default_value = "gaussian")]
    window: WindowArg,
    /// Hermite order.
    #[arg(long, default_value_t = 0)]
    order: usize,
}

impl WindowOpts {
    fn build(&self) -> Window {
        match self.window {
            WindowArg::Gaussian => Window::gaussian(),
            WindowArg::Hermite => Window::hermite(self.order),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SignalArg {
    /// F_n(t, a) g(t - x).
    Superosc,
    /// e^{iat} g(t - x).
    Limit,
    /// g(t - x).
    Plain,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    Closed,
    Numeric,
    Both,
}

#[derive(Args)]
struct SpectrogramArgs {
    #[command(flatten)]
    window: WindowOpts,
    #[arg(long, value_enum, default_value = "superosc")]
    signal: SignalArg,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x: f64,
    /// Axis `lo:hi:count`.
    #[arg(long, default_value = "-3:3:61", value_parser = parse_axis, allow_hyphen_values = true)]
    u: Axis,
    /// Axis `lo:hi:count`.
    #[arg(long, default_value = "-3:3:61", value_parser = parse_axis, allow_hyphen_values = true)]
    eta: Axis,
    #[arg(long, value_enum, default_value = "closed")]
    mode: Mode,
    /// Output file, `-` for standard output.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// all, stft, kernels, hermite, zak, evolution or approx.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Report file, `-` for standard output.
    #[arg(long, default_value = "-")]
    json: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum ZakSignal {
    /// e^{-t²/2} F_n(t, a).
    SuperoscGaussian,
    /// The window itself.
    Window,
}

#[derive(Args)]
struct ZakFrameArgs {
    #[command(flatten)]
    window: WindowOpts,
    #[arg(long, value_enum, default_value = "window")]
    signal: ZakSignal,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 128)]
    resolution: usize,
    #[arg(long, default_value_t = FRAME_TOLERANCE)]
    tolerance: f64,
    /// Report file, `-` for standard output.
    #[arg(long, default_value = "-")]
    json: String,
}

#[derive(Args)]
struct EvolveArgs {
    #[command(flatten)]
    window: WindowOpts,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    x0: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    k0: f64,
    /// Times, `lo:hi:count` or a single value.
    #[arg(long, default_value = "0:1:11", value_parser = parse_axis, allow_hyphen_values = true)]
    t: Axis,
    /// Positions, `lo:hi:count` or a single value.
    #[arg(long, default_value = "-4:4:81", value_parser = parse_axis, allow_hyphen_values = true)]
    x: Axis,
    /// Divide the 2π of the unnormalized convention out.
    #[arg(long)]
    normalized: bool,
    /// Evolve F_n(y, a) mode by mode instead of a shifted window.
    #[arg(long)]
    superosc: bool,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Output file, `-` for standard output.
    #[arg(long, default_value = "-")]
    out: String,
}

#[derive(Debug, Clone, PartialEq)]
struct Axis(Vec<f64>);

fn parse_axis(s: &str) -> Result<Axis, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|_| format!("invalid number '{p}' in axis '{s}'"))
    };
    match parts.as_slice() {
        [v] => {
            let v = num(v)?;
            finite(v, s)?;
            Ok(Axis(vec![v]))
        }
        [lo, hi, count] => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            finite(lo, s)?;
            finite(hi, s)?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| format!("invalid count '{count}' in axis '{s}'"))?;
            if count == 0 {
                return Err(format!("axis '{s}' needs a positive count"));
            }
            if count > 1 && hi < lo {
                return Err(format!("axis '{s}' must have lo <= hi"));
            }
            Ok(Axis(linspace(lo, hi, count)))
        }
        _ => Err(format!("axis '{s}' must be lo:hi:count or a single value")),
    }
}

fn finite(v: f64, s: &str) -> Result<(), String> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(format!("axis '{s}' must be finite"))
    }
}

/// `%.17g` formatting.
fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (16 - exp) as usize, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Contract(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn sink(path: &str) -> Result<Box<dyn Write>, Failure> {
    if path == "-" {
        Ok(Box::new(io::stdout().lock()))
    } else {
        File::create(path)
            .map(|f| Box::new(io::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Failure::Usage(format!("cannot create '{path}': {e}")))
    }
}

fn csv_writer(path: &str) -> Result<csv::Writer<Box<dyn Write>>, Failure> {
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink(path)?))
}

fn base_quadrature(q: QuadratureSpec) -> Result<QuadratureSpec, Failure> {
    match nodes_per_unit_from_env()? {
        Some(n) => Ok(q.with_nodes_per_unit(n)?),
        None => Ok(q),
    }
}

fn closed_value(g: &Window, args: &SpectrogramArgs, p: &SuperoscParams, u: f64, eta: f64) -> Result<C64, Error> {
    match args.signal {
        SignalArg::Superosc => stft_superosc_closed(g, args.x, p, u, eta),
        SignalArg::Limit => stft_superosc_limit(g, args.x, args.a, u, eta),
        SignalArg::Plain => gabor_kernel(
            g,
            &TFQuadruple {
                x: args.x,
                omega: 0.0,
                u,
                eta,
            },
        ),
    }
}

fn cmd_spectrogram(args: &SpectrogramArgs) -> Result<(), Failure> {
    let g = args.window.build();
    let p = SuperoscParams::new(args.a, args.n)?;
    let sig = match args.signal {
        SignalArg::Superosc => build_signal(&g, args.x, &p),
        SignalArg::Limit => Signal::limit(g.clone(), args.x, args.a),
        SignalArg::Plain => Signal::plain(g.clone(), args.x),
    };
    let (us, etas) = (&args.u.0, &args.eta.0);
    let numeric = if args.mode == Mode::Closed {
        None
    } else {
        let shift = us.iter().fold(0.0f64, |m, u| m.max(u.abs()));
        let q = base_quadrature(stft_quadrature(&sig, &g, shift)?)?;
        Some(stft_grid(&sig, &g, us, etas, &q)?)
    };
    let mut w = csv_writer(&args.out)?;
    let mut header = vec!["u", "eta", "re", "im", "abs"];
    if args.mode == Mode::Both {
        header.push("abs_err");
    }
    w.write_record(&header)?;
    for (i, &u) in us.iter().enumerate() {
        for (j, &eta) in etas.iter().enumerate() {
            let closed = if args.mode == Mode::Numeric {
                None
            } else {
                Some(closed_value(&g, args, &p, u, eta)?)
            };
            let v = match (&numeric, closed) {
                (Some(grid), _) => grid.get(i, j),
                (None, Some(c)) => c,
                (None, None) => unreachable!("one of the modes is always computed"),
            };
            let mut row = vec![
                fmt_g17(u),
                fmt_g17(eta),
                fmt_g17(v.re),
                fmt_g17(v.im),
                fmt_g17(v.norm()),
            ];
            if let (Mode::Both, Some(c)) = (args.mode, closed) {
                row.push(fmt_g17((v - c).norm()));
            }
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let suites = Suite::parse_selection(&args.suite)?;
    let cfg = VerifyConfig::from_env(args.seed)?;
    let report = verify::run(&suites, &cfg)?;
    let mut out = sink(&args.json)?;
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    out.flush()?;
    for r in &report.suites {
        eprintln!(
            "{} {}/{} max_error={:e} tolerance={:e}",
            if r.pass { "PASS" } else { "FAIL" },
            r.suite,
            r.id,
            r.max_error,
            r.tolerance
        );
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_zak_frame(args: &ZakFrameArgs) -> Result<(), Failure> {
    if !(args.tolerance > 0.0 && args.tolerance.is_finite()) {
        return Err(Failure::Usage(format!(
            "tolerance must be positive, got {}",
            args.tolerance
        )));
    }
    let verdict = match args.signal {
        ZakSignal::SuperoscGaussian => {
            let p = SuperoscParams::new(args.a, args.n)?;
            let sig = f_tilde(&p);
            frame_check_with_tolerance(&sig, args.resolution, args.tolerance)?
        }
        ZakSignal::Window => frame_check_with_tolerance(&args.window.build(), args.resolution, args.tolerance)?,
    };
    let mut out = sink(&args.json)?;
    serde_json::to_writer_pretty(&mut out, &verdict)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn cmd_evolve(args: &EvolveArgs) -> Result<(), Failure> {
    let g = args.window.build();
    let p = if args.superosc {
        Some(SuperoscParams::new(args.a, args.n)?)
    } else {
        None
    };
    let q = base_quadrature(evolution_quadrature(&g))?;
    let mut w = csv_writer(&args.out)?;
    w.write_record(["x", "t", "re", "im", "abs", "accuracy_flag"])?;
    for &t in &args.t.0 {
        for &x in &args.x.0 {
            let (v, accurate) = match &p {
                Some(p) => (evolve_superosc(p, x, t), true),
                None => {
                    let pt = EvolutionPoint::new(x, t, args.x0, args.k0)?;
                    let e = evolve(&g, &pt, &q)?;
                    let v = if args.normalized { normalize(e.value) } else { e.value };
                    (v, e.accurate)
                }
            };
            w.write_record([
                fmt_g17(x),
                fmt_g17(t),
                fmt_g17(v.re),
                fmt_g17(v.im),
                fmt_g17(v.norm()),
                (if accurate { "0" } else { "1" }).to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Spectrogram(a) => cmd_spectrogram(a),
        Command::Verify(a) => cmd_verify(a),
        Command::ZakFrame(a) => cmd_zak_frame(a),
        Command::Evolve(a) => cmd_evolve(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        assert_eq!(parse_axis("-3:3:61").unwrap().0.len(), 61);
        assert_eq!(parse_axis("2000").unwrap().0, vec![2000.0]);
        assert_eq!(parse_axis("0:1:3").unwrap().0, vec![0.0, 0.5, 1.0]);
        assert!(parse_axis("1:0:3").is_err());
        assert!(parse_axis("0:1:0").is_err());
        assert!(parse_axis("a:b").is_err());
        assert!(parse_axis("nan").is_err());
    }

    #[test]
    fn g17_round_trip() {
        for v in [
            0.1,
            -1.0 / 3.0,
            1e-300,
            6.02214076e23,
            12345.678,
            1e16,
            1e17,
            2.0f64.sqrt(),
            -0.0,
        ] {
            let s = fmt_g17(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v} -> {s}");
        }
        assert_eq!(fmt_g17(0.5), "0.5");
        assert_eq!(fmt_g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(fmt_g17(100.0), "100");
        assert_eq!(fmt_g17(1e20), "1e+20");
    }
}
