use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lbpstego::analysis::{
    emit_csv, histogram_distance, pd_histogram, pearson, psnr, quality_index, rs_analysis,
    AnalysisError, ReportRow, RsMask,
};
use lbpstego::codec::{self, StegoError};
use lbpstego::sweep::{run_sweep, Method, SweepConfig, SweepError};
use lbpstego::{read_pgm, synthetic, write_pgm, GrayImage, PgmError, StegoParams};
use thiserror::Error;

const EXIT_CODES: &str = "\
Exit codes:
  0  success
  1  analysis or other failure
  2  invalid command line
  3  file could not be read or written
  4  malformed or unsupported PGM
  5  payload exceeds cover capacity
  6  corrupt stego stream (often a mu mismatch)
  7  output exists; pass --force to overwrite";

#[derive(Parser)]
#[command(
    name = "lbpstego",
    version,
    about = "Hide grayscale images in covers without disturbing their local binary patterns",
    after_help = EXIT_CODES
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a payload image into a cover image
    #[command(after_help = EXIT_CODES)]
    Embed {
        #[arg(long, value_name = "PGM")]
        cover: PathBuf,
        #[arg(long, value_name = "PGM")]
        payload: PathBuf,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        mu: Mu,
    },
    /// Recover the payload image from a stego image
    #[command(after_help = EXIT_CODES)]
    Extract {
        #[arg(long, value_name = "PGM")]
        stego: PathBuf,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        mu: Mu,
    },
    /// Print how many stream bytes a cover can carry
    #[command(after_help = EXIT_CODES)]
    Capacity {
        #[arg(long, value_name = "PGM")]
        cover: PathBuf,
        #[command(flatten)]
        mu: Mu,
    },
    /// Compare two images: PSNR, quality index, histogram distance
    #[command(after_help = EXIT_CODES)]
    Metrics {
        #[arg(long, value_name = "PGM")]
        a: PathBuf,
        #[arg(long, value_name = "PGM")]
        b: PathBuf,
        #[command(flatten)]
        csv: CsvOut,
    },
    /// Regular/singular group statistics of one image
    #[command(after_help = EXIT_CODES)]
    Rs {
        #[arg(long, value_name = "PGM")]
        image: PathBuf,
        /// Flip mask, e.g. 0110 or 0,-1,1,0
        #[arg(long, default_value = "0110")]
        mask: RsMask,
        #[command(flatten)]
        csv: CsvOut,
    },
    /// Horizontal pixel-difference histogram of one image
    #[command(after_help = EXIT_CODES)]
    Pdh {
        #[arg(long, value_name = "PGM")]
        image: PathBuf,
        #[command(flatten)]
        csv: CsvOut,
    },
    /// Sweep methods and embedding rates over a directory of covers
    #[command(after_help = EXIT_CODES)]
    Compare {
        /// Directory whose *.pgm files are used as covers
        #[arg(long, value_name = "DIR")]
        cover_dir: PathBuf,
        #[arg(long, value_name = "PGM")]
        payload: PathBuf,
        /// Percentages of each method's capacity, each in (0, 100]
        #[arg(long, value_delimiter = ',', default_value = "10,20,30,40,50")]
        rates: Vec<f64>,
        /// proposed, proposed-mu<N>, lsb<k>, lsbm, lsbmr
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "proposed,lsb1,lsbm,lsbmr"
        )]
        methods: Vec<String>,
        /// Seed for the random ±1 steps of LSB matching
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "0110")]
        mask: RsMask,
        /// mu used by a bare `proposed` method
        #[command(flatten)]
        mu: Mu,
        #[arg(long, value_name = "PATH")]
        csv: PathBuf,
        #[arg(long)]
        force: bool,
    },
    /// Write a set of synthetic photograph-like PGM covers
    #[command(after_help = EXIT_CODES)]
    Synth {
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 512)]
        size: usize,
        #[arg(long, default_value_t = 2019)]
        seed: u64,
        #[arg(long)]
        force: bool,
    },
}

#[derive(Args)]
struct Mu {
    /// Bits inserted per neighbor pixel (1..4); must match between embed and extract
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=4))]
    mu: u8,
}

impl Mu {
    fn params(&self) -> StegoParams {
        StegoParams::new(self.mu).expect("range checked by clap")
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_name = "PGM")]
    out: PathBuf,
    /// Overwrite an existing output file
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct CsvOut {
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Overwrite an existing CSV file
    #[arg(long)]
    force: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Pgm { path: PathBuf, source: PgmError },
    #[error(transparent)]
    Stego(#[from] StegoError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
    #[error("{0} exists; pass --force to overwrite")]
    Exists(PathBuf),
    #[error("{0}")]
    Other(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Pgm { .. } => 4,
            CliError::Stego(e) | CliError::Sweep(SweepError::Stego(e)) => match e {
                StegoError::Capacity { .. }
                | StegoError::CoverTooSmall { .. }
                | StegoError::PayloadDimensions { .. } => 5,
                StegoError::CorruptStream(_) => 6,
                _ => 1,
            },
            CliError::Exists(_) => 7,
            _ => 1,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_owned(),
        source,
    }
}

fn load(path: &Path) -> Result<GrayImage, CliError> {
    let bytes = fs::read(path).map_err(io_err(path))?;
    read_pgm(&bytes).map_err(|source| CliError::Pgm {
        path: path.to_owned(),
        source,
    })
}

fn save(path: &Path, bytes: &[u8], force: bool) -> Result<(), CliError> {
    if !force && path.exists() {
        return Err(CliError::Exists(path.to_owned()));
    }
    fs::write(path, bytes).map_err(io_err(path))
}

fn save_csv(csv: &CsvOut, rows: &[ReportRow]) -> Result<(), CliError> {
    match &csv.csv {
        Some(path) => save(path, &emit_csv(rows), csv.force),
        None => Ok(()),
    }
}

fn label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn fmt_db(v: f64) -> String {
    if v.is_infinite() {
        "inf".to_owned()
    } else {
        format!("{v:.2}")
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    let mut say = |line: String| {
        // stdout closing early (e.g. piped into head) is not an error worth reporting
        let _ = writeln!(out, "{line}");
    };
    match cli.command {
        Command::Embed {
            cover,
            payload,
            out,
            mu,
        } => {
            let cover_img = load(&cover)?;
            let payload_img = load(&payload)?;
            let stego = codec::embed(&cover_img, &payload_img, mu.params())?;
            save(&out.out, &write_pgm(&stego), out.force)?;
            say(format!(
                "embedded {}x{} payload, PSNR {} dB",
                payload_img.width(),
                payload_img.height(),
                fmt_db(psnr(&cover_img, &stego)?)
            ));
        }
        Command::Extract { stego, out, mu } => {
            let payload = codec::extract(&load(&stego)?, mu.params())?;
            save(&out.out, &write_pgm(&payload), out.force)?;
            say(format!(
                "extracted {}x{} payload",
                payload.width(),
                payload.height()
            ));
        }
        Command::Capacity { cover, mu } => {
            let img = load(&cover)?;
            let bytes = codec::capacity(&img, mu.params());
            let bpp = (bytes * 8) as f64 / img.pixel_count() as f64;
            say(format!("{bytes} bytes ({bpp:.2} bpp stream)"));
            say(format!(
                "{} payload pixels max after the {}-byte header",
                codec::max_payload_bytes(&img, mu.params()),
                codec::HEADER_LEN
            ));
        }
        Command::Metrics { a, b, csv } => {
            let (ia, ib) = (load(&a)?, load(&b)?);
            let name = label(&b);
            let pdh_a = pd_histogram(&ia)?;
            let pdh_b = pd_histogram(&ib)?;
            let as_f64 = |c: &[u64]| c.iter().map(|&v| v as f64).collect::<Vec<_>>();
            let metrics = [
                ("psnr", psnr(&ia, &ib)?),
                ("q_index", quality_index(&ia, &ib)?),
                ("hist_l1", histogram_distance(&ia, &ib)?),
                (
                    "pdh_corr",
                    pearson(&as_f64(pdh_a.counts()), &as_f64(pdh_b.counts())).unwrap_or(f64::NAN),
                ),
            ];
            for (metric, v) in metrics {
                say(format!(
                    "{metric:<8} {}",
                    lbpstego::analysis::format_value(v)
                ));
            }
            let rows: Vec<ReportRow> = metrics
                .iter()
                .map(|&(m, v)| ReportRow::new(name.as_str(), "pair", 0.0, m, v))
                .collect();
            save_csv(&csv, &rows)?;
        }
        Command::Rs { image, mask, csv } => {
            let s = rs_analysis(&load(&image)?, &mask)?;
            let name = label(&image);
            let values = [
                ("r_m", s.r_m),
                ("s_m", s.s_m),
                ("r_neg_m", s.r_neg_m),
                ("s_neg_m", s.s_neg_m),
            ];
            say(format!("mask {mask}"));
            for (metric, v) in values {
                say(format!("{metric:<8} {v:.6}"));
            }
            let rows: Vec<ReportRow> = values
                .iter()
                .map(|&(m, v)| ReportRow::new(name.as_str(), "rs", 0.0, m, v))
                .collect();
            save_csv(&csv, &rows)?;
        }
        Command::Pdh { image, csv } => {
            let pdh = pd_histogram(&load(&image)?)?;
            let name = label(&image);
            let mut rows = Vec::new();
            for (d, count) in pdh.window(255) {
                if count > 0 {
                    say(format!("{d:>4} {count}"));
                }
                rows.push(ReportRow::new(
                    name.as_str(),
                    "pdh",
                    0.0,
                    format!("pdh{d:+}"),
                    count as f64,
                ));
            }
            save_csv(&csv, &rows)?;
        }
        Command::Compare {
            cover_dir,
            payload,
            rates,
            methods,
            seed,
            mask,
            mu,
            csv,
            force,
        } => {
            if !force && csv.exists() {
                return Err(CliError::Exists(csv));
            }
            let methods = methods
                .iter()
                .map(|m| Method::parse(m, mu.params(), seed))
                .collect::<Result<Vec<_>, _>>()?;
            let mut paths: Vec<PathBuf> = fs::read_dir(&cover_dir)
                .map_err(io_err(&cover_dir))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|e| e.eq_ignore_ascii_case("pgm")))
                .collect();
            paths.sort();
            if paths.is_empty() {
                return Err(CliError::Other(format!(
                    "{}: no .pgm covers found",
                    cover_dir.display()
                )));
            }
            let covers = paths
                .iter()
                .map(|p| Ok((label(p), load(p)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            let payload_img = load(&payload)?;
            let rows = run_sweep(
                &covers,
                &payload_img,
                &SweepConfig {
                    rates,
                    methods,
                    mask,
                },
            )?;
            save(&csv, &emit_csv(&rows), true)?;
            say(format!(
                "{} rows for {} covers written to {}",
                rows.len(),
                covers.len(),
                csv.display()
            ));
        }
        Command::Synth {
            out_dir,
            count,
            size,
            seed,
            force,
        } => {
            fs::create_dir_all(&out_dir).map_err(io_err(&out_dir))?;
            for (name, img) in synthetic::corpus(count, size, seed) {
                let path = out_dir.join(format!("{name}.pgm"));
                save(&path, &write_pgm(&img), force)?;
            }
            say(format!("wrote {count} covers to {}", out_dir.display()));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lbpstego: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
