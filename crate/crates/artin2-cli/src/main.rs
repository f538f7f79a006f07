//! CLI over the artin2 library: reduce coset representatives, evaluate
//! symbols, classify planes, and emit census / spectrum artifacts.
//!
//! Exit codes: 0 success, 2 parse error, 3 precision exhausted,
//! 4 degenerate plane, 5 enumeration budget exceeded, 1 anything else.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use artin2::error::Error;
use artin2::gf2f::FieldCtx;
use artin2::laurent::LaurentSeries;
use artin2::packets::{render_spectrum, spectrum_census, triangle, BernsteinPoint, Triangle};
use artin2::parse::parse_modulus;
use artin2::ramify::{
    census, classify_plane, conductor_from_filtration, conductor_paper, formal_degree_default,
    lower_filtration, rational_string, upper_breaks, FieldInfo, PlaneDescriptor,
};
use artin2::wpquot::{as_symbol, reduce_mod_wp, reduce_mod_wp_with_witness, Sign};

#[derive(Parser)]
#[command(name = "artin2", version, about = "Invariants of quadratic and biquadratic extensions of F_q((x)) in characteristic 2", long_about = None)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct FieldOpts {
    /// Residue degree f; the constant field is F_q with q = 2^f
    #[arg(long = "f", value_name = "F")]
    f: u32,

    /// Modulus polynomial over F_2, e.g. "g^3+g+1" (default: the smallest
    /// irreducible of degree f)
    #[arg(long, value_name = "POLY")]
    modulus: Option<String>,

    /// Precision cutoff for series arithmetic
    #[arg(long, default_value_t = 64)]
    precision: i64,

    /// Seed for randomized operations (reserved; every current output is
    /// deterministic)
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl FieldOpts {
    fn ctx(&self) -> Result<FieldCtx, Error> {
        if self.precision < 16 {
            return Err(Error::DomainError(format!(
                "precision must be at least 16, got {}",
                self.precision
            )));
        }
        match &self.modulus {
            None => FieldCtx::new(self.f),
            Some(text) => FieldCtx::with_modulus(self.f, parse_modulus(text)?),
        }
    }

    fn parse(&self, ctx: &FieldCtx, text: &str) -> Result<LaurentSeries, Error> {
        LaurentSeries::parse_with_prec(ctx, text, self.precision)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputKind {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Canonical representative of the coset of EXPR modulo ℘(K)
    Reduce {
        #[command(flatten)]
        field: FieldOpts,
        /// Verify and report the ℘-membership witness
        #[arg(long)]
        witness: bool,
        expr: String,
    },
    /// The symbol [a, b) and the character value chi_a(b)
    Symbol {
        #[command(flatten)]
        field: FieldOpts,
        a: String,
        b: String,
    },
    /// Break data, filtration, conductors and formal degree of span{a, b}
    Classify {
        #[command(flatten)]
        field: FieldOpts,
        a: String,
        b: String,
    },
    /// Tally all planes of V_nmax by break data
    Census {
        #[command(flatten)]
        field: FieldOpts,
        #[arg(long)]
        nmax: u64,
        /// Also emit the spectrum diagram after the census
        #[arg(long)]
        dot: bool,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputKind,
    },
    /// The commutative triangle at a Bernstein point; omit EXPR for a
    /// nonquadratic point, use "0" for the trivial one
    Triangle {
        #[command(flatten)]
        field: FieldOpts,
        expr: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputKind,
    },
    /// Tempered-dual component census (DOT by default, JSON on request)
    Spectrum {
        #[command(flatten)]
        field: FieldOpts,
        #[arg(long)]
        nmax: u64,
        #[arg(long, value_enum, default_value = "dot")]
        output: OutputKind,
    },
}

#[derive(Serialize)]
struct SegmentInfo {
    lo: i64,
    hi: Option<i64>,
    group: &'static str,
}

#[derive(Serialize)]
struct ClassifyReport {
    field: FieldInfo,
    a: String,
    b: String,
    case: String,
    breaks: Vec<u64>,
    upper_breaks: Vec<i64>,
    lower_breaks: Vec<i64>,
    filtration: Vec<SegmentInfo>,
    conductor_paper: u64,
    conductor_filtration: i64,
    formal_degree: String,
}

#[derive(Serialize)]
struct TriangleReport {
    eq_points: Vec<String>,
    irreps: Vec<String>,
    params: Vec<String>,
    bijections: Vec<TriangleRow>,
}

#[derive(Serialize)]
struct TriangleRow {
    eq_point: String,
    irrep: String,
    param: String,
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.cmd {
        Cmd::Reduce {
            field,
            witness,
            expr,
        } => {
            let ctx = field.ctx()?;
            let series = field.parse(&ctx, &expr)?;
            if witness {
                let red = reduce_mod_wp_with_witness(&ctx, &series)?;
                println!("{}", red.coset);
                match red.verify(&ctx, &series) {
                    Ok(prec) => {
                        println!("witness: ok (a + lift + wp(w) = 0 below x^{prec})")
                    }
                    Err(e) => println!("witness: FAILED ({e})"),
                }
            } else {
                println!("{}", reduce_mod_wp(&ctx, &series)?);
            }
        }
        Cmd::Symbol { field, a, b } => {
            let ctx = field.ctx()?;
            let a_coset = reduce_mod_wp(&ctx, &field.parse(&ctx, &a)?)?;
            let b_series = field.parse(&ctx, &b)?;
            let bit = as_symbol(&ctx, &a_coset, &b_series)?;
            println!("[a,b) = {}", bit as u8);
            println!("chi_a(b) = {}", Sign::from_bit(bit));
        }
        Cmd::Classify { field, a, b } => {
            let ctx = field.ctx()?;
            let a_coset = reduce_mod_wp(&ctx, &field.parse(&ctx, &a)?)?;
            let b_coset = reduce_mod_wp(&ctx, &field.parse(&ctx, &b)?)?;
            let plane = PlaneDescriptor::new(a_coset.clone(), b_coset.clone())?;
            let bd = classify_plane(&plane);
            let filt = lower_filtration(&bd);
            let report = ClassifyReport {
                field: FieldInfo::of(&ctx),
                a: a_coset.to_string(),
                b: b_coset.to_string(),
                case: bd.case_label().to_string(),
                breaks: bd.positive_breaks(),
                upper_breaks: upper_breaks(&bd),
                lower_breaks: filt.breaks(),
                filtration: filt
                    .segments()
                    .iter()
                    .map(|s| SegmentInfo {
                        lo: s.lo,
                        hi: s.hi,
                        group: match s.group {
                            artin2::ramify::GaloisSubgroup::V4 => "V4",
                            artin2::ramify::GaloisSubgroup::C2 => "C2",
                            artin2::ramify::GaloisSubgroup::Triv => "Triv",
                        },
                    })
                    .collect(),
                conductor_paper: conductor_paper(&bd),
                conductor_filtration: conductor_from_filtration(&filt).to_integer(),
                formal_degree: rational_string(&formal_degree_default(&bd, &ctx)),
            };
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
        }
        Cmd::Census {
            field,
            nmax,
            dot,
            output,
        } => {
            let ctx = field.ctx()?;
            match output {
                OutputKind::Dot => {
                    let spectrum = spectrum_census(&ctx, nmax)?;
                    print!("{}", render_spectrum(&spectrum));
                    return Ok(());
                }
                OutputKind::Json => {
                    let report = census(&ctx, nmax)?;
                    println!("{}", serde_json::to_string_pretty(&report).unwrap());
                }
                OutputKind::Text => print_census_table(&census(&ctx, nmax)?),
            }
            if dot {
                let spectrum = spectrum_census(&ctx, nmax)?;
                println!();
                print!("{}", render_spectrum(&spectrum));
            }
        }
        Cmd::Triangle {
            field,
            expr,
            output,
        } => {
            let ctx = field.ctx()?;
            let point = match expr {
                None => BernsteinPoint::Nonquadratic("z".into()),
                Some(text) => {
                    let coset = reduce_mod_wp(&ctx, &field.parse(&ctx, &text)?)?;
                    if coset.is_zero() {
                        BernsteinPoint::Trivial
                    } else {
                        BernsteinPoint::Quadratic(coset)
                    }
                }
            };
            let t = triangle(&point);
            match output {
                OutputKind::Json => print_triangle_json(&t),
                _ => print_triangle_text(&t),
            }
        }
        Cmd::Spectrum {
            field,
            nmax,
            output,
        } => {
            let ctx = field.ctx()?;
            let spectrum = spectrum_census(&ctx, nmax)?;
            match output {
                OutputKind::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&spectrum.report()).unwrap()
                    )
                }
                _ => print!("{}", render_spectrum(&spectrum)),
            }
        }
    }
    Ok(())
}

fn print_census_table(report: &artin2::ramify::CensusReport) {
    println!(
        "field F_2^{} (modulus {}), breaks <= {}",
        report.field.f, report.field.modulus, report.nmax
    );
    println!(
        "dim V_n = {} (rank-one count {}), {} planes",
        report.dim, report.dim_paper_eq2, report.total_planes
    );
    println!("case  breaks  count  cond(closed)  cond(sum)  degree");
    for t in &report.tallies {
        let breaks = t
            .breaks
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(",");
        println!(
            "{:<4}  {:<6}  {:>5}  {:>12}  {:>9}  {:>6}",
            t.case, breaks, t.count, t.conductor_paper, t.conductor_filtration, t.formal_degree
        );
    }
}

fn print_triangle_text(t: &Triangle) {
    println!("eq_points: {}", t.eq_points.join(", "));
    println!("irreps:    {}", t.irreps.join(", "));
    println!("params:    {}", t.params.join(", "));
    println!("bijections:");
    for ((e, i), (_, p)) in t.eq_to_irrep.iter().zip(&t.eq_to_param) {
        println!("  {e} <-> {i} <-> {p}");
    }
}

fn print_triangle_json(t: &Triangle) {
    let rows = t
        .eq_to_irrep
        .iter()
        .zip(&t.eq_to_param)
        .map(|((e, i), (_, p))| TriangleRow {
            eq_point: e.clone(),
            irrep: i.clone(),
            param: p.clone(),
        })
        .collect();
    let report = TriangleReport {
        eq_points: t.eq_points.clone(),
        irreps: t.irreps.clone(),
        params: t.params.clone(),
        bijections: rows,
    };
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::ParseError { .. } | Error::UnknownSymbol { .. } => 2,
        Error::PrecisionExhausted(_) => 3,
        Error::DegeneratePlane(_) => 4,
        Error::BudgetExceeded(_) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    // die quietly when a pipe downstream closes early (census | head)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
