//! `sphtet`: volumes of spherical tetrahedra from the command line.
//!
//! The six values are given in edge order e1..e6, where e1, e2, e3 meet at a
//! common vertex and e4, e5, e6 are the edges opposite them (e1/e4, e2/e5 and
//! e3/e6 are the opposite pairs).

mod batch;
mod fmt;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use sphtet::gram::dual_angle_vector;
use sphtet::verifier::{random_valid_tetrahedron, run_suite, Suite};
use sphtet::{
    angles_from_lengths, is_spherical, lengths_from_angles, volume_from_angles, volume_from_lengths,
    Angles, Lengths, VolumeResult,
};

/// `println!` that tolerates a closed stdout (e.g. piped into `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

const PARSE_ERROR: u8 = 1;
const INVALID: u8 = 2;
const OVER_BOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "sphtet", version, about = "Volumes of spherical tetrahedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Tetrahedron {
    /// Dihedral angles θ1..θ6.
    #[arg(long, num_args = 6, value_name = "θ", allow_negative_numbers = true)]
    angles: Option<Vec<f64>>,
    /// Edge lengths l1..l6.
    #[arg(long, num_args = 6, value_name = "l", allow_negative_numbers = true, conflicts_with = "angles")]
    lengths: Option<Vec<f64>>,
    /// Read (and print) values in degrees instead of radians.
    #[arg(long)]
    degrees: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the volume.
    #[command(group(ArgGroup::new("input").required(true).args(["angles", "lengths"])))]
    Volume {
        #[command(flatten)]
        tetrahedron: Tetrahedron,
        /// Emit the full result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Convert angles to lengths or lengths to angles.
    #[command(group(ArgGroup::new("input").required(true).args(["angles", "lengths"])))]
    Convert {
        #[command(flatten)]
        tetrahedron: Tetrahedron,
    },
    /// Run a verification suite; a random tetrahedron is drawn from --seed
    /// when none is given.
    Verify {
        #[command(flatten)]
        tetrahedron: Tetrahedron,
        #[arg(long, default_value_t = Suite::Lemma)]
        suite: Suite,
        /// Monte-Carlo sample count.
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evaluate every record of a CSV file.
    Batch {
        #[arg(long)]
        input: PathBuf,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy)]
pub enum Mode {
    Angles,
    Lengths,
}

pub fn volume_of(mode: Mode, values: [f64; 6]) -> sphtet::Result<VolumeResult<f64>> {
    match mode {
        Mode::Angles => volume_from_angles(&Angles::new(values)),
        Mode::Lengths => volume_from_lengths(&Lengths::new(values)),
    }
}

trait New {
    fn new(values: [f64; 6]) -> Self;
}

impl New for Angles {
    fn new(values: [f64; 6]) -> Self {
        sphtet::DihedralAngles(values)
    }
}

impl New for Lengths {
    fn new(values: [f64; 6]) -> Self {
        sphtet::EdgeLengths(values)
    }
}

impl Tetrahedron {
    /// Mode and values in radians, if a tetrahedron was given.
    fn input(&self) -> Option<(Mode, [f64; 6])> {
        let (mode, raw) = match (&self.angles, &self.lengths) {
            (Some(a), _) => (Mode::Angles, a),
            (_, Some(l)) => (Mode::Lengths, l),
            _ => return None,
        };
        let mut values: [f64; 6] = raw.as_slice().try_into().expect("clap enforces six values");
        if self.degrees {
            values = values.map(f64::to_radians);
        }
        Some((mode, values))
    }

    fn output(&self, values: [f64; 6]) -> [f64; 6] {
        if self.degrees {
            values.map(f64::to_degrees)
        } else {
            values
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

/// Prints the error and the sphericity report of whatever Gram matrix the
/// input was checked against.
fn invalid(mode: Mode, values: [f64; 6], err: &sphtet::Error) -> ExitCode {
    eprintln!("error: {err}");
    let angles = match mode {
        Mode::Angles => Angles::new(values),
        Mode::Lengths => dual_angle_vector(&Lengths::new(values)),
    };
    let label = match mode {
        Mode::Angles => "validity report",
        Mode::Lengths => "validity report (dual angle vector)",
    };
    eprintln!("{label}: {}", json(&is_spherical(&angles)));
    ExitCode::from(INVALID)
}

fn volume(tetrahedron: &Tetrahedron, as_json: bool) -> ExitCode {
    let (mode, values) = tetrahedron.input().expect("clap requires an input");
    let result = match volume_of(mode, values) {
        Ok(r) => r,
        Err(e) => return invalid(mode, values, &e),
    };
    if as_json {
        out!("{}", json(&result));
    } else {
        out!("volume    {}", fmt::sig12(result.volume));
        out!("z0        {}", fmt::complex12(result.z0));
        out!("arg(-q2)  {}", fmt::sig12(result.arg_neg_q2));
        out!("det G     {}", fmt::sig12(result.det_g));
        for w in &result.warnings {
            out!("warning   {w}");
        }
    }
    ExitCode::SUCCESS
}

fn convert(tetrahedron: &Tetrahedron) -> ExitCode {
    let (mode, values) = tetrahedron.input().expect("clap requires an input");
    let converted = match mode {
        Mode::Angles => lengths_from_angles(&Angles::new(values)).map(|l| l.0),
        Mode::Lengths => angles_from_lengths(&Lengths::new(values)).map(|a| a.0),
    };
    match converted {
        Ok(v) => {
            let name = match mode {
                Mode::Angles => "lengths",
                Mode::Lengths => "angles",
            };
            out!("{name} {}", fmt::join12(&tetrahedron.output(v)));
            ExitCode::SUCCESS
        }
        Err(e) => invalid(mode, values, &e),
    }
}

fn verify(tetrahedron: &Tetrahedron, suite: Suite, n: u64, seed: u64) -> ExitCode {
    let angles = match tetrahedron.input() {
        None => random_valid_tetrahedron::<f64>(seed).0,
        Some((Mode::Angles, v)) => Angles::new(v),
        Some((Mode::Lengths, v)) => match angles_from_lengths(&Lengths::new(v)) {
            Ok(a) => a,
            Err(e) => return invalid(Mode::Lengths, v, &e),
        },
    };
    let report = run_suite(suite, &angles, n, seed);
    out!("{}", json(&report));
    if !is_spherical(&angles).valid {
        ExitCode::from(INVALID)
    } else if report.pass {
        ExitCode::SUCCESS
    } else {
        for name in report.failures() {
            eprintln!("over bound: {name}");
        }
        ExitCode::from(OVER_BOUND)
    }
}

fn run_batch(input: &Path, output: Option<&PathBuf>) -> ExitCode {
    let batch = match batch::run(input) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(PARSE_ERROR);
        }
    };
    let text = json(&batch.records);
    match output {
        None => out!("{text}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(PARSE_ERROR);
            }
        }
    }
    eprintln!("{}", batch.summary());
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(PARSE_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match &cli.command {
        Command::Volume { tetrahedron, json } => volume(tetrahedron, *json),
        Command::Convert { tetrahedron } => convert(tetrahedron),
        Command::Verify { tetrahedron, suite, n, seed } => verify(tetrahedron, *suite, *n, *seed),
        Command::Batch { input, output } => run_batch(input, output.as_ref()),
    }
}
