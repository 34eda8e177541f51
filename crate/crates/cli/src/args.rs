use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use postulation_core::linalg::DEFAULT_PRIME;
use postulation_core::{ComponentKind, SchemeConfig};

/// Exact postulation checks for generic lines, fat linear spaces, collinear
/// points and sundials in projective space.
#[derive(Debug, Parser)]
#[command(name = "postulate", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    JsonLines,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print expected dimensions and the exception classification.
    Expect(ConfigArgs),
    /// Sample the configuration and compare the observed rank with the expectation.
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the induction parameters and every inequality they must satisfy.
    Schedule {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Regenerate the parameter tables and compare them with the embedded values.
    Tables,
    /// Verify every configuration listed in a file, one per line.
    Sweep {
        /// Lines of the form `n=4 d=3 lines=2 [double_line] [fat r=1 m=2] [collinear=3] [sundials=1]`.
        file: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Dimension of the ambient projective space.
    #[arg(long)]
    pub n: u32,
    /// Degree of the forms.
    #[arg(long)]
    pub d: u32,
    /// Add one double line.
    #[arg(long)]
    pub double_line: bool,
    /// Number of generic lines.
    #[arg(long, default_value_t = 0)]
    pub lines: usize,
    /// Number of points on one generic line.
    #[arg(long, value_name = "Q")]
    pub collinear: Option<u32>,
    /// Number of generic sundials.
    #[arg(long, default_value_t = 0)]
    pub sundials: usize,
    /// A fat linear space of dimension R and multiplicity M (repeatable).
    #[arg(long, value_name = "R:M")]
    pub fat: Vec<FatArg>,
    /// A fat point of multiplicity M (repeatable).
    #[arg(long, value_name = "M")]
    pub fat_point: Vec<u32>,
}

impl ConfigArgs {
    pub fn to_config(&self) -> SchemeConfig {
        let mut c = SchemeConfig::new(self.n, self.d);
        if self.double_line {
            c = c.push(ComponentKind::DOUBLE_LINE, 1);
        }
        for f in &self.fat {
            c = c.push(ComponentKind::FatLinearSpace { dim: f.dim, mult: f.mult }, 1);
        }
        for &m in &self.fat_point {
            c = c.push(ComponentKind::FatPoint { mult: m }, 1);
        }
        c = c.push(ComponentKind::Line, self.lines).push(ComponentKind::Sundial, self.sundials);
        if let Some(q) = self.collinear.filter(|&q| q > 0) {
            c = c.push(ComponentKind::CollinearPoints { count: q }, 1);
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FatArg {
    pub dim: u32,
    pub mult: u32,
}

impl FromStr for FatArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (r, m) = s.split_once(':').ok_or_else(|| format!("expected R:M, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"));
        Ok(FatArg { dim: parse(r)?, mult: parse(m)? })
    }
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Independent samples; defaults to 3, or 7 when a defect is expected.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Base seed; trial seeds are derived from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Prime modulus for the rank computations.
    #[arg(long, env = "POSTULATE_PRIME", default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
}
