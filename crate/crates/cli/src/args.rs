use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pa_lcd::Variant;

#[derive(Parser, Debug)]
#[command(name = "pa-lcd", version, about = "Preferential-attachment graphs, exact oracles and experiments")]
pub struct Cli {
    /// Master seed. Drawn from OS entropy and recorded in the manifest when omitted.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads for replicate loops.
    #[arg(long, global = true, env = "PA_LCD_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write every n-pairing with the degree sequences of its graph.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate one graph and write its edge list.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value = "sequential", value_parser = parse_variant)]
        variant: Variant,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Evaluate a closed-form probability or bound.
    Oracle {
        #[command(subcommand)]
        formula: Formula,
    },
    /// Run an experiment and write its report.
    Experiment {
        #[command(subcommand)]
        name: Experiment,
    },
    /// Re-run a recorded command and check that its outputs are identical.
    Replay {
        #[arg(long)]
        manifest: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: pa_lcd::Error| e.to_string())
}

#[derive(Subcommand, Debug)]
pub enum Formula {
    /// Pr[D_k = 2k + s].
    ProbDk {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        s: u64,
    },
    /// Number of n-pairings with D_k = 2k + s.
    CountNs {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        s: u64,
    },
    /// Ratio Pr[D_k = 2k+s+1] / Pr[D_k = 2k+s].
    RatioF {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        s: u64,
    },
    /// Location of the mode of D_k.
    ModeS01 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// The negative root of f(s) = 1.
    ModeS02 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// exp(-l(l-1)/4n).
    TailBound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
    },
    /// Pr[d_{k+1} = d + 1 | D_k = 2k + s].
    CondProbDegree {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        s: u64,
        #[arg(long)]
        d: u64,
        /// Evaluate the exact pairing-count ratio instead of the closed form.
        #[arg(long)]
        counted: bool,
    },
    /// Leading term of the expected number of vertices with in-degree d.
    ExpectedCount {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        m: u64,
        #[arg(long)]
        d: u64,
    },
    /// sqrt(k/n) (1 - sqrt(k/n))^d.
    Lemma2 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        d: u64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Report path; a CSV twin and `<out>.manifest.json` are written beside it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "sequential", value_parser = parse_variant)]
    pub variant: Variant,
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    /// Mean fraction of vertices with in-degree d (total degree d + m).
    Fraction {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value_t = 50)]
        replicates: usize,
        /// Allowed relative error against the limiting fraction.
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Log-log least-squares exponent of the in-degree histogram.
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        dlo: u64,
        #[arg(long, default_value_t = 50)]
        dhi: u64,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        #[arg(long, default_value_t = 2.8)]
        gamma_lo: f64,
        #[arg(long, default_value_t = 3.2)]
        gamma_hi: f64,
        /// Also report the discrete Hill estimate with this lower cutoff.
        #[arg(long)]
        hill: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Rate of |N - mean N| >= sqrt(n ln n) across replicates.
    Concentration {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        d: u64,
        #[arg(long, default_value_t = 200)]
        replicates: usize,
        #[arg(long, default_value_t = 0.05)]
        max_rate: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Early-vertex sum ratios and the late-vertex bound chain.
    Sums {
        #[arg(long, value_delimiter = ',', default_values_t = [100_000u64, 1_000_000, 10_000_000])]
        n_grid: Vec<u64>,
        /// Custom series; requires --beta and --d as well.
        #[arg(long, requires_all = ["beta", "d"])]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, default_value_t = 0.1)]
        band_lo: f64,
        #[arg(long, default_value_t = 10.0)]
        band_hi: f64,
        #[command(flatten)]
        common: Common,
    },
    /// In-degree fraction at d = ceil(n^e) across a grid of n.
    Corollary {
        #[arg(long, value_delimiter = ',', default_values_t = [10_000usize, 100_000, 1_000_000])]
        n_grid: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 0.25)]
        e: f64,
        #[arg(long, default_value_t = 10)]
        replicates: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Supremum of alpha over an (alpha, beta) inequality system.
    Region {
        /// theorem1, theorem2-case1, theorem2-case2, theorem2-case3 or combined.
        #[arg(long, conflicts_with = "inequalities", required_unless_present = "inequalities")]
        system: Option<String>,
        /// File with one "a b cmp c" inequality per line.
        #[arg(long)]
        inequalities: Option<PathBuf>,
        /// Expected supremum, as a rational.
        #[arg(long)]
        expect: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

impl Experiment {
    pub fn common(&self) -> &Common {
        match self {
            Experiment::Fraction { common, .. }
            | Experiment::Gamma { common, .. }
            | Experiment::Concentration { common, .. }
            | Experiment::Sums { common, .. }
            | Experiment::Corollary { common, .. }
            | Experiment::Region { common, .. } => common,
        }
    }
}
