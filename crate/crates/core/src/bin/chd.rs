use std::collections::BTreeMap;
use std::error::Error;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use chdiag::epd::diagrams_per_shadow;
use chdiag::family::higher_genus_hard_diagram;
use chdiag::moves::{geometric_move_oracle, Move};
use chdiag::pipeline::{dedup_spherical_mirror, hard_rows, run_enumeration, hard_table, DiagramRecord, RunConfig};
use chdiag::render::render_svg;
use chdiag::shadows::shadow_levels;
use chdiag::EpdCode;

/// Number of worker threads; defaults to all cores.
const WORKERS_ENV: &str = "CHD_WORKERS";

#[derive(Parser)]
#[command(name = "chd", version, about = "Enumerate and classify marked graph diagrams of surface-links")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count prime reduced shadows for every crossing number up to N.
    Shadows {
        #[arg(long)]
        n: usize,
        /// Write the canonical codes of the N-crossing shadows, one hex line each.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate decorated diagrams over all N-crossing shadows and write JSONL records.
    Enumerate(EnumerateArgs),
    /// Classify one EPD code.
    Classify {
        #[arg(long)]
        epd: String,
        /// Family index used in the printed name.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Group records into classes up to sphere isotopy, mirror image and switch.
    Dedup {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print hard-diagram counts per (n, m) from JSONL files.
    Tables {
        #[arg(long = "in", num_args = 1.., required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Print the periodic hard diagram of genus 2k - 1.
    GenGenus {
        #[arg(long)]
        k: usize,
    },
    /// Draw a diagram as SVG.
    Render {
        #[arg(long)]
        epd: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Comma-separated marked-vertex counts (default: all).
    #[arg(long, value_delimiter = ',')]
    markers: Option<Vec<usize>>,
    /// Emit every admissible diagram.
    #[arg(long, conflicts_with = "hard_only")]
    all: bool,
    /// Emit hard diagrams only (default).
    #[arg(long)]
    hard_only: bool,
    #[arg(long)]
    out: PathBuf,
}

type Result<T> = std::result::Result<T, Box<dyn Error>>;

fn configure_workers() -> Result<()> {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v.parse().map_err(|_| format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn read_records(paths: &[PathBuf]) -> Result<Vec<DiagramRecord>> {
    let mut out = Vec::new();
    for p in paths {
        let reader = BufReader::new(File::open(p).map_err(|e| format!("{}: {e}", p.display()))?);
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let r: DiagramRecord =
                serde_json::from_str(&line).map_err(|e| format!("{}:{}: {e}", p.display(), i + 1))?;
            out.push(r);
        }
    }
    Ok(out)
}

/// Recomputes every record; returns how many disagree.
fn reverify(records: &[DiagramRecord]) -> usize {
    records
        .par_iter()
        .filter(|r| match r.verify() {
            Ok(()) => false,
            Err(e) => {
                eprintln!("verification failed: {e}");
                true
            }
        })
        .count()
}

fn shadows(n: usize, out: Option<PathBuf>) -> Result<bool> {
    let levels = shadow_levels(n)?;
    println!("n\tS");
    for level in &levels {
        println!("{}\t{}", level.n, level.len());
    }
    if let Some(path) = out {
        let mut w = BufWriter::new(File::create(&path)?);
        levels.last().unwrap().write_cache(&mut w)?;
        w.flush()?;
    }
    Ok(true)
}

fn enumerate(args: EnumerateArgs) -> Result<bool> {
    let config = RunConfig { n: args.n, markers: args.markers, all_admissible: args.all };
    let out = run_enumeration(&config)?;
    let mut w = BufWriter::new(File::create(&args.out)?);
    for r in &out.records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    let s = &out.summary;
    println!("n={} S={} diagrams={}", s.n, s.shadows, s.diagrams);
    let mut rows = BTreeMap::new();
    rows.insert(s.n, s.hard.clone());
    print!("{}", hard_table(&rows));
    let mut ok = true;
    if config.markers.is_none() && s.diagrams != s.shadows as u64 * diagrams_per_shadow(s.n as u32) {
        eprintln!("diagram count {} differs from S*(4^(n-1)+2^(n-1))", s.diagrams);
        ok = false;
    }
    let failed = reverify(&out.records);
    if failed > 0 {
        eprintln!("{failed} records failed re-verification");
        ok = false;
    }
    eprintln!("wrote {} records to {}", out.records.len(), args.out.display());
    Ok(ok)
}

fn classify(text: &str, index: usize) -> Result<bool> {
    let code: EpdCode = text.parse()?;
    let record = DiagramRecord::classify(&code, index)?;
    println!("{}", serde_json::to_string(&record)?);
    for k in Move::ALL {
        if let Some(w) = geometric_move_oracle(&code, k) {
            eprintln!("{k}: crossings {:?}, edges {:?}", w.crossings, w.edges);
        }
    }
    Ok(true)
}

fn dedup(input: PathBuf) -> Result<bool> {
    let records = read_records(&[input])?;
    let failed = reverify(&records);
    let mut buckets: BTreeMap<(usize, usize), Vec<DiagramRecord>> = BTreeMap::new();
    for r in records {
        buckets.entry((r.n, r.m)).or_default().push(r);
    }
    println!("n\tm\traw\tclasses");
    for ((n, m), bucket) in &buckets {
        let classes = dedup_spherical_mirror(bucket)?;
        println!("{n}\t{m}\t{}\t{}", bucket.len(), classes.len());
        for class in &classes {
            let names: Vec<&str> = class.iter().map(|&i| bucket[i].name.as_str()).collect();
            println!("  {}\t{}", names.join(" "), bucket[class[0]].epd);
        }
    }
    Ok(failed == 0)
}

fn tables(inputs: Vec<PathBuf>) -> Result<bool> {
    let records = read_records(&inputs)?;
    let failed = reverify(&records);
    print!("{}", hard_table(&hard_rows(&records)));
    if failed > 0 {
        eprintln!("{failed} records failed re-verification");
    }
    Ok(failed == 0)
}

fn gen_genus(k: usize) -> Result<bool> {
    let code = higher_genus_hard_diagram(k)?;
    let record = DiagramRecord::classify(&code, 0)?;
    println!("{}", serde_json::to_string(&record)?);
    let ok = record.hard && record.components == 1 && record.orientable && record.euler == 4 - 4 * k as i64;
    if !ok {
        eprintln!("generated diagram does not have the expected class");
    }
    Ok(ok)
}

fn render(text: &str, out: PathBuf) -> Result<bool> {
    let code: EpdCode = text.parse()?;
    std::fs::write(&out, render_svg(&code))?;
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    configure_workers()?;
    match cli.command {
        Command::Shadows { n, out } => shadows(n, out),
        Command::Enumerate(args) => enumerate(args),
        Command::Classify { epd, index } => classify(&epd, index),
        Command::Dedup { input } => dedup(input),
        Command::Tables { inputs } => tables(inputs),
        Command::GenGenus { k } => gen_genus(k),
        Command::Render { epd, out } => render(&epd, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
