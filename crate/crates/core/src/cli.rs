//! Command line front end. The binary only forwards to [`run`].
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 for
//! usage, parse, and domain errors.

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bijection::{phi, phi_inverse, BijectionTrace, Point};
use crate::census::{
    enumerate_class, verify_bijection, verify_identity, CensusReport, ClassFilter, IdentityMode,
};
use crate::decompose::decompose;
use crate::error::Error;
use crate::path::{Alphabet, LatticePath, PathClass};
use crate::render::{render_ascii, render_svg, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lattice-reflect",
    version,
    about = "Partial-reflection bijection between balanced lattice paths and unbalanced Dyck paths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map a balanced path to its unbalanced image.
    Map(MapArgs),
    /// Map an unbalanced path back to its balanced preimage.
    Invert(MapArgs),
    /// Show the peak decomposition of an up-starting balanced path.
    Decompose(DecomposeArgs),
    /// Run an exhaustive or arithmetic check and print a report.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// List every path of a given length and class, in rank order.
    Enumerate(EnumerateArgs),
    /// Draw a path as text, or as SVG with --svg.
    Render(RenderArgs),
    /// Time the exhaustive bijection sweep.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphabetArg {
    Ud,
    Ne,
}

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Self {
        match a {
            AlphabetArg::Ud => Alphabet::UD,
            AlphabetArg::Ne => Alphabet::NE,
        }
    }
}

#[derive(Debug, Args)]
pub struct PathInput {
    /// Path text, or `-` (the default) to read it from stdin.
    #[arg(default_value = "-", allow_hyphen_values = true)]
    pub path: String,
    #[arg(long, value_enum, default_value = "ud")]
    pub alphabet: AlphabetArg,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[command(flatten)]
    pub input: PathInput,
    /// Print the B/G points and reflection lines as well.
    #[arg(long)]
    pub trace: bool,
    /// Print a JSON object instead of plain text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: PathInput,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Sweep all paths of length 2n and check the map is a bijection.
    Bijection {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        partitions: usize,
        #[command(flatten)]
        out: ReportOutput,
    },
    /// Check the central binomial convolution identity for one n.
    Identity {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "arithmetic")]
        mode: ModeArg,
        #[command(flatten)]
        out: ReportOutput,
    },
}

#[derive(Debug, Args)]
pub struct ReportOutput {
    #[arg(long)]
    pub json: bool,
    /// Append the elapsed time (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Arithmetic,
    Structural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    All,
    Balanced,
    UpUnbalanced,
    DownUnbalanced,
    Unbalanced,
    Other,
}

impl From<ClassArg> for ClassFilter {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::All => ClassFilter::All,
            ClassArg::Balanced => PathClass::Balanced.into(),
            ClassArg::UpUnbalanced => PathClass::UpUnbalanced.into(),
            ClassArg::DownUnbalanced => PathClass::DownUnbalanced.into(),
            ClassArg::Unbalanced => ClassFilter::Unbalanced,
            ClassArg::Other => PathClass::Other.into(),
        }
    }
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long = "len")]
    pub len: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub class: ClassArg,
    #[arg(long, value_enum, default_value = "ud")]
    pub alphabet: AlphabetArg,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub input: PathInput,
    /// Annotate with the forward trace (balanced input) or inverse trace
    /// (unbalanced input).
    #[arg(long)]
    pub trace: bool,
    /// Write SVG to this file instead of printing text.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    pub cell_size: u32,
    #[arg(long)]
    pub axes: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    pub n: u32,
    /// Defaults to the number of worker threads.
    #[arg(long)]
    pub partitions: Option<usize>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdin, stdout) {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(stderr, "error: {}: {e}", e.variant_name());
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(stderr, "error: IoError: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn read_path(input: &PathInput, stdin: &mut dyn Read) -> Result<LatticePath, CliError> {
    let text = if input.path == "-" {
        let mut buf = String::new();
        stdin.read_to_string(&mut buf)?;
        buf
    } else {
        input.path.clone()
    };
    Ok(LatticePath::parse(&text, input.alphabet.into())?)
}

#[derive(Serialize)]
struct MapJson {
    input: String,
    output: String,
    class_in: &'static str,
    class_out: &'static str,
    b_points: Vec<(usize, i64)>,
    g_points: Vec<(usize, i64)>,
    lines: Vec<i64>,
    conjugated: bool,
}

fn pairs(points: &[Point]) -> Vec<(usize, i64)> {
    points.iter().map(|p| (p.index, p.height)).collect()
}

fn point_list(points: &[Point]) -> String {
    points
        .iter()
        .map(|p| format!("({},{})", p.index, p.height))
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_report(out: &mut dyn Write, report: &CensusReport, opts: &ReportOutput) -> std::io::Result<i32> {
    if opts.json {
        let mut v: serde_json::Value =
            serde_json::from_str(&report.to_json()).expect("report json is valid");
        if opts.timing {
            v["elapsed_ms"] = serde_json::json!(report.elapsed.as_secs_f64() * 1e3);
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("value serializes"))?;
    } else {
        out.write_all(report.to_kv_text().as_bytes())?;
        if opts.timing {
            writeln!(out, "elapsed_ms={:.3}", report.elapsed.as_secs_f64() * 1e3)?;
        }
    }
    Ok(report_exit_code(report))
}

/// 0 when every check in the report passed, 1 otherwise.
pub fn report_exit_code(report: &CensusReport) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

fn execute(cmd: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Map(args) => map_command(&args, stdin, out, false),
        Command::Invert(args) => map_command(&args, stdin, out, true),
        Command::Decompose(args) => {
            let alphabet: Alphabet = args.input.alphabet.into();
            let p = read_path(&args.input, stdin)?;
            let d = decompose(&p)?;
            if args.json {
                let parts: Vec<serde_json::Value> = d
                    .parts
                    .iter()
                    .map(|part| {
                        serde_json::json!({
                            "uprun_length": part.uprun_length,
                            "segment": part.segment.steps.format(alphabet),
                            "kind": part.segment.kind.name(),
                            "start_index": part.segment.start_index,
                        })
                    })
                    .collect();
                let peaks: Vec<(usize, i64)> = d.peaks.iter().map(|b| (b.index, b.height)).collect();
                let v = serde_json::json!({
                    "input": p.format(alphabet),
                    "parts": parts,
                    "peaks": peaks,
                });
                writeln!(out, "{v}")?;
            } else {
                for (i, part) in d.parts.iter().enumerate() {
                    let seg = &part.segment;
                    writeln!(
                        out,
                        "part {}: uprun={} segment={} kind={} start={} end={}",
                        i + 1,
                        part.uprun_length,
                        seg.steps.format(alphabet),
                        seg.kind.name(),
                        seg.start_index,
                        seg.end_index()
                    )?;
                }
                let peaks: Vec<String> = d
                    .peaks
                    .iter()
                    .map(|b| format!("({},{})", b.index, b.height))
                    .collect();
                writeln!(out, "peaks={}", peaks.join(" "))?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify { check } => match check {
            VerifyCommand::Bijection { n, partitions, out: opts } => {
                if partitions == 0 {
                    return Err(Error::Range("--partitions must be at least 1".into()).into());
                }
                let report = verify_bijection(n, partitions)?;
                Ok(write_report(out, &report, &opts)?)
            }
            VerifyCommand::Identity { n, mode, out: opts } => {
                let mode = match mode {
                    ModeArg::Arithmetic => IdentityMode::Arithmetic,
                    ModeArg::Structural => IdentityMode::Structural,
                };
                let report = verify_identity(n, mode)?;
                Ok(write_report(out, &report, &opts)?)
            }
        },
        Command::Enumerate(args) => {
            let alphabet: Alphabet = args.alphabet.into();
            for p in enumerate_class(args.len, ClassFilter::from(args.class))? {
                writeln!(out, "{}", p.format(alphabet))?;
            }
            Ok(EXIT_OK)
        }
        Command::Render(args) => {
            let p = read_path(&args.input, stdin)?;
            let mut spec = RenderSpec::new(p.clone()).cell_size(args.cell_size);
            spec.annotations.show_axes = args.axes;
            if args.trace {
                let trace = trace_for(&p)?;
                spec = spec.with_trace(trace);
            }
            match &args.svg {
                Some(file) => fs::write(file, render_svg(&spec))?,
                None => out.write_all(render_ascii(&spec)?.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Bench(args) => {
            let partitions = args
                .partitions
                .unwrap_or_else(rayon::current_num_threads)
                .max(1);
            let report = verify_bijection(args.n, partitions)?;
            let secs = report.elapsed.as_secs_f64();
            writeln!(out, "n={}", args.n)?;
            writeln!(out, "partitions={partitions}")?;
            writeln!(out, "paths={}", report.total_paths)?;
            writeln!(out, "elapsed_ms={:.3}", secs * 1e3)?;
            writeln!(
                out,
                "paths_per_sec={:.0}",
                (1u64 << (2 * args.n)) as f64 / secs.max(1e-9)
            )?;
            writeln!(out, "bijection_ok={}", report.bijection_ok.unwrap_or(false))?;
            Ok(report_exit_code(&report))
        }
    }
}

fn trace_for(p: &LatticePath) -> Result<BijectionTrace, Error> {
    if p.is_balanced() {
        phi(p).map(|(_, t)| t)
    } else {
        phi_inverse(p).map(|(_, t)| t)
    }
}

fn map_command(
    args: &MapArgs,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    inverse: bool,
) -> Result<i32, CliError> {
    let alphabet: Alphabet = args.input.alphabet.into();
    let p = read_path(&args.input, stdin)?;
    let (q, trace) = if inverse { phi_inverse(&p)? } else { phi(&p)? };
    if args.json {
        let v = MapJson {
            input: p.format(alphabet),
            output: q.format(alphabet),
            class_in: p.classify().name(),
            class_out: q.classify().name(),
            b_points: pairs(&trace.b_points),
            g_points: pairs(&trace.g_points),
            lines: trace.reflection_lines.clone(),
            conjugated: trace.conjugated,
        };
        writeln!(out, "{}", serde_json::to_string(&v).expect("map json serializes"))?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{}", q.format(alphabet))?;
    if args.trace {
        writeln!(out, "class_in={}", p.classify())?;
        writeln!(out, "class_out={}", q.classify())?;
        writeln!(out, "b_points={}", point_list(&trace.b_points))?;
        writeln!(out, "g_points={}", point_list(&trace.g_points))?;
        let lines: Vec<String> = trace.reflection_lines.iter().map(|l| l.to_string()).collect();
        writeln!(out, "lines={}", lines.join(" "))?;
        writeln!(out, "conjugated={}", trace.conjugated)?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut argv = vec!["lattice-reflect"];
        argv.extend_from_slice(args);
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut input, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn map_and_invert() {
        assert_eq!(call(&["map", "UDUD"], ""), (0, "UUDU\n".into(), String::new()));
        assert_eq!(call(&["invert", "UU"], ""), (0, "UD\n".into(), String::new()));
        assert_eq!(call(&["map", "-"], "UDUUDD\n"), (0, "UUDUUU\n".into(), String::new()));
        assert_eq!(call(&["map", "--alphabet", "ne", "NE"], "").1, "NN\n");
    }

    #[test]
    fn domain_errors_exit_two() {
        let (code, out, err) = call(&["map", "UU"], "");
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert_eq!(err, "error: NotBalanced: path does not end at height 0\n");
        let (code, _, err) = call(&["invert", "UX"], "");
        assert_eq!(code, 2);
        assert!(err.starts_with("error: ParseError:"), "{err}");
        assert_eq!(call(&["frobnicate"], "").0, 2);
        assert_eq!(call(&["verify", "bijection", "--n", "11"], "").0, 2);
    }

    #[test]
    fn json_matches_plain_output() {
        let (_, plain, _) = call(&["map", "UDUUDD"], "");
        let (_, json, _) = call(&["map", "--json", "UDUUDD"], "");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["output"].as_str().unwrap(), plain.trim_end());
        assert_eq!(v["b_points"], serde_json::json!([[4, 2], [1, 1]]));
        assert_eq!(v["class_out"], "up-unbalanced");
    }

    #[test]
    fn verify_identity_report() {
        let (code, out, _) = call(&["verify", "identity", "--n", "2", "--mode", "arithmetic"], "");
        assert_eq!(code, 0);
        assert!(out.contains("identity_lhs=16\n"));
        assert!(out.contains("identity_rhs=16\n"));
    }

    #[test]
    fn enumerate_streams_rank_order() {
        let (code, out, _) = call(&["enumerate", "--len", "2", "--class", "balanced"], "");
        assert_eq!(code, 0);
        assert_eq!(out, "UD\nDU\n");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("Usage"));
    }
}
