mod args;
mod experiment;
mod manifest;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use pa_lcd::oracles::{self, format_sig, DkQuery, ExactProb};
use pa_lcd::rng::entropy_seed;
use pa_lcd::{enumerate_pairings, generate, pairing_to_graph, ProcessParams};
use serde_json::{json, Value};

use args::{Cli, Command, Format, Formula};
use manifest::{digests, manifest_path, resolved_argv, suffixed, RunManifest};

type BoxResult<T> = Result<T, Box<dyn std::error::Error>>;

/// What a command produced.
struct Outcome {
    outputs: Vec<PathBuf>,
    parameters: Value,
    pass: bool,
}

fn main() -> ExitCode {
    let raw: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    match execute(cli, &raw, false) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads(threads: Option<usize>) {
    if let Some(t) = threads.filter(|&t| t > 0) {
        // A second call in the same process (replay) keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
}

/// Runs one command; `replaying` suppresses the manifest write.
fn execute(cli: Cli, raw: &[String], replaying: bool) -> BoxResult<bool> {
    configure_threads(cli.threads);
    let seed = cli.seed.unwrap_or_else(entropy_seed);
    let started = Instant::now();
    let outcome = match cli.command {
        Command::Replay { manifest } => return replay(&manifest),
        Command::Oracle { formula } => {
            println!("{}", oracle(&formula)?);
            return Ok(true);
        }
        Command::Enumerate { n, ref out } => enumerate(n, out)?,
        Command::Generate {
            n,
            m,
            variant,
            ref out,
            format,
        } => {
            let params = ProcessParams::new(n, m, variant, seed)?;
            write_graph(&params, out, format)?
        }
        Command::Experiment { ref name } => {
            let report = experiment::run(name, seed)?;
            for v in &report.verdicts {
                println!("{} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.name, v.detail);
            }
            let mut outputs = Vec::new();
            if let Some(out) = &name.common().out {
                let csv = csv_twin(out);
                fs::write(out, report.to_json()?)?;
                fs::write(&csv, report.to_csv()?)?;
                outputs = vec![out.clone(), csv];
            }
            Outcome {
                outputs,
                parameters: serde_json::to_value(&report.parameters)?,
                pass: report.all_pass(),
            }
        }
    };
    if !replaying {
        if let Some(first) = outcome.outputs.first() {
            let m = RunManifest {
                argv: resolved_argv(raw, seed),
                parameters: outcome.parameters,
                master_seed: seed,
                version: env!("CARGO_PKG_VERSION").to_string(),
                timestamp: chrono::Utc::now().to_rfc3339(),
                wall_clock_seconds: started.elapsed().as_secs_f64(),
                outputs: digests(&outcome.outputs)?,
            };
            fs::write(manifest_path(first), serde_json::to_string_pretty(&m)? + "\n")?;
        }
    }
    Ok(outcome.pass)
}

fn csv_twin(out: &Path) -> PathBuf {
    if out.extension().is_some_and(|e| e == "json") {
        out.with_extension("csv")
    } else {
        suffixed(out, ".csv")
    }
}

fn replay(path: &Path) -> BoxResult<bool> {
    let recorded: RunManifest = serde_json::from_str(&fs::read_to_string(path)?)?;
    let argv: Vec<String> = std::iter::once("pa-lcd".to_string())
        .chain(recorded.argv.iter().cloned())
        .collect();
    let cli = Cli::try_parse_from(&argv)?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err("a manifest cannot record a replay".into());
    }
    execute(cli, &argv, true)?;
    let mut identical = true;
    for (file, digest) in &recorded.outputs {
        let now = manifest::digest_file(Path::new(file))?;
        let same = &now == digest;
        identical &= same;
        println!("{} {file}", if same { "identical" } else { "DIFFERS" });
    }
    Ok(identical)
}

fn oracle(f: &Formula) -> BoxResult<String> {
    Ok(match *f {
        Formula::ProbDk { n, k, s } => oracles::prob_dk(DkQuery::new(n, k, s)?).to_string(),
        Formula::CountNs { n, k, s } => oracles::count_ns(DkQuery::new(n, k, s)?).to_string(),
        Formula::RatioF { n, k, s } => {
            ExactProb::Exact(oracles::ratio_f(n, k, s)?).to_string()
        }
        Formula::ModeS01 { n, k } => oracles::mode_s01(n, k)?.to_string(),
        Formula::ModeS02 { n, k } => oracles::mode_s02(n, k)?.to_string(),
        Formula::TailBound { n, l } => format_sig(oracles::tail_bound(n, l), 15),
        Formula::CondProbDegree {
            n,
            k,
            s,
            d,
            counted,
        } => {
            if counted {
                ExactProb::Exact(oracles::cond_prob_degree_from_counts(n, k, s, d)?).to_string()
            } else {
                oracles::cond_prob_degree(n, k, s, d)?.to_string()
            }
        }
        Formula::ExpectedCount { n, m, d } => format_sig(oracles::expected_count(n, m, d), 15),
        Formula::Lemma2 { n, k, d } => format_sig(oracles::lemma2_approx(n, k, d), 15),
    })
}

fn join(xs: impl IntoIterator<Item = impl ToString>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn enumerate(n: usize, out: &Path) -> BoxResult<Outcome> {
    let pairings = enumerate_pairings(n)?;
    let mut text = String::from("index,pairs,in_degrees,total_degrees\n");
    for (i, p) in pairings.iter().enumerate() {
        let g = pairing_to_graph(p);
        let pairs = join(p.pairs().iter().map(|(a, b)| format!("{a}-{b}")));
        let _ = writeln!(
            text,
            "{},{},{},{}",
            i + 1,
            pairs,
            join(g.in_degrees()),
            join(g.total_degrees())
        );
    }
    fs::write(out, text)?;
    Ok(Outcome {
        outputs: vec![out.to_path_buf()],
        parameters: json!({ "n": n, "pairings": pairings.len() }),
        pass: true,
    })
}

fn write_graph(params: &ProcessParams, out: &Path, format: Format) -> BoxResult<Outcome> {
    let g = generate(params, 0)?;
    let header = json!({
        "n": params.n,
        "m": params.m,
        "variant": params.variant.name(),
        "master_seed": params.master_seed,
        "edges": g.edge_count(),
        "vertex_base": 1,
        "version": env!("CARGO_PKG_VERSION"),
    });
    let outputs = match format {
        Format::Csv => {
            let mut text = String::with_capacity(g.edge_count() * 12);
            for &(s, t) in g.edges() {
                let _ = writeln!(text, "{},{}", s + 1, t + 1);
            }
            fs::write(out, text)?;
            let side = suffixed(out, ".header.json");
            fs::write(&side, serde_json::to_string_pretty(&header)? + "\n")?;
            vec![out.to_path_buf(), side]
        }
        Format::Json => {
            let edges: Vec<[u32; 2]> = g.edges().iter().map(|&(s, t)| [s + 1, t + 1]).collect();
            let doc = json!({ "header": header, "edges": edges });
            fs::write(out, serde_json::to_string(&doc)? + "\n")?;
            vec![out.to_path_buf()]
        }
    };
    Ok(Outcome {
        outputs,
        parameters: header,
        pass: true,
    })
}
