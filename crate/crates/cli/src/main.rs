use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use ccstego::analysis::{psnr, run_p_vs_m, run_p_vs_n, run_psnr_sweep, SweepOptions};
use ccstego::imaging::{load_bmp, rgb_to_ycbcr, save_bmp, synthetic_cover, RgbImage};
use ccstego::seqlib::{
    generate_ccc, read_code, validate_ccc, write_code, CompleteComplementaryCode,
};
use ccstego::stego::{Band, Scheme, StegoCodec, StegoParams};

#[derive(Parser)]
#[command(
    name = "ccstego",
    version,
    about = "Spread-spectrum image steganography over complete complementary codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate, validate or export spreading codes.
    #[command(subcommand)]
    Codes(CodesCommand),
    /// Hide a message in a 24-bit BMP cover.
    Embed(EmbedArgs),
    /// Recover a message from a stego BMP using its cover.
    Extract(ExtractArgs),
    /// PSNR between two BMP images of the same size.
    Psnr { a: PathBuf, b: PathBuf },
    /// Multi-trial experiment sweeps, written as CSV.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Write a deterministic synthetic cover image.
    Cover(CoverArgs),
}

#[derive(Subcommand)]
enum CodesCommand {
    /// Build the (N, N, N²) complete complementary code and validate it.
    Gen {
        /// Code order N, a power of two.
        #[arg(long, value_name = "N")]
        ccc: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check a code file.
    Validate { file: PathBuf },
    /// Write the code a scheme spreads with.
    Export {
        #[arg(long, default_value = "ccc")]
        scheme: Scheme,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct ShapeArgs {
    /// Embedding strength α.
    #[arg(long, default_value_t = 0.25)]
    alpha: f64,
    /// Channel count M.
    #[arg(long, default_value_t = 1)]
    channels: usize,
    /// Chip interval d.
    #[arg(long, default_value_t = 1)]
    chip_interval: usize,
    #[arg(long, default_value = "ccc", value_parser = ["ccc", "mseq", "gold"])]
    scheme: String,
    /// Zigzag band as fractions or percentages of all coefficients.
    #[arg(long, default_value = "0.1:0.5", value_name = "LO:HI")]
    band: String,
}

impl ShapeArgs {
    fn params(&self, key: &str, fragment_bytes: usize) -> Result<StegoParams> {
        let params = StegoParams {
            key: key.to_owned(),
            alpha: self.alpha,
            channels: self.channels,
            fragment_bytes,
            chip_interval: self.chip_interval,
            scheme: self.scheme.parse()?,
            band: self.band.parse::<Band>()?,
        };
        params.validate()?;
        Ok(params)
    }
}

#[derive(Args)]
struct KeyedArgs {
    /// Shared secret that selects the coefficients.
    #[arg(long, env = "CCSTEGO_KEY", hide_env_values = true)]
    key: String,
    /// Fragment length N in bytes; the message may hold up to M·N bytes.
    #[arg(long)]
    fragment_bytes: usize,
    #[command(flatten)]
    shape: ShapeArgs,
}

#[derive(Args)]
struct EmbedArgs {
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    message: PathBuf,
    /// Stego BMP to write.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    keyed: KeyedArgs,
    /// Also run the real-valued pipeline and report whether it round-trips
    /// exactly.
    #[arg(long)]
    bypass_quantization: bool,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long)]
    cover: PathBuf,
    #[arg(long)]
    stego: PathBuf,
    /// Recovered message; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    keyed: KeyedArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Cover BMP; a 512x512 synthetic cover when omitted.
    #[arg(long)]
    cover: Option<PathBuf>,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Master seed; trial t uses seed + t.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Extract from real-valued planes instead of the 8-bit image.
    #[arg(long)]
    bypass_quantization: bool,
    /// CSV output; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-trial CSV with collisions and margin violations.
    #[arg(long)]
    trials_out: Option<PathBuf>,
    #[command(flatten)]
    shape: ShapeArgs,
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Mean and std of PSNR for each N.
    PsnrVsN {
        #[arg(long = "n", default_value = "100..2000:100", value_name = "LIST")]
        n: String,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Mean extraction probability for each scheme and N.
    PVsN {
        #[arg(long, default_value = "ccc,mseq,gold")]
        schemes: String,
        #[arg(long = "n", default_value = "100..2000:100", value_name = "LIST")]
        n: String,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Mean extraction probability for each scheme and M at fixed N.
    PVsM {
        #[arg(long, default_value = "ccc,mseq,gold")]
        schemes: String,
        #[arg(long = "n", default_value_t = 2000)]
        n: usize,
        #[arg(long = "m", default_value = "1..8", value_name = "LIST")]
        m: String,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long, default_value_t = 512)]
    width: usize,
    #[arg(long, default_value_t = 512)]
    height: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

/// `100,500`, `1..8` (inclusive) and `100..2000:100` forms, comma separated.
fn parse_list(spec: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, rest)) = item.split_once("..") {
            let (hi, step) = rest.split_once(':').unwrap_or((rest, "1"));
            let (lo, hi, step): (usize, usize, usize) = (lo.parse()?, hi.parse()?, step.parse()?);
            if step == 0 || lo > hi {
                bail!("bad range {item:?}");
            }
            out.extend((lo..=hi).step_by(step));
        } else {
            out.push(
                item.parse()
                    .with_context(|| format!("bad list item {item:?}"))?,
            );
        }
    }
    if out.is_empty() {
        bail!("empty list {spec:?}");
    }
    Ok(out)
}

fn parse_schemes(spec: &str) -> Result<Vec<Scheme>> {
    spec.split(',')
        .map(|s| s.parse::<Scheme>().map_err(Into::into))
        .collect()
}

fn read_bmp(path: &Path) -> Result<RgbImage> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    load_bmp(&bytes).with_context(|| format!("decoding {}", path.display()))
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn report_code(code: &CompleteComplementaryCode) -> bool {
    let v = validate_ccc(code);
    let (m, n, l) = code.params();
    eprintln!(
        "({m},{n},{l}) code: {} A={} ({} family pairs x {} shifts)",
        if v.passed { "pass" } else { "FAIL" },
        v.amplitude,
        v.pairs_checked,
        v.shifts_checked
    );
    if let Some(bad) = v.first_violation {
        eprintln!(
            "first violation: families ({}, {}) shift {} sum {} expected {}",
            bad.family_a, bad.family_b, bad.shift, bad.value, bad.expected
        );
    }
    v.passed
}

fn write_code_to(code: &CompleteComplementaryCode, out: Option<&Path>) -> Result<()> {
    let mut buf = Vec::new();
    write_code(code, &mut buf)?;
    write_output(out, &buf)
}

fn cmd_codes(cmd: CodesCommand) -> Result<bool> {
    match cmd {
        CodesCommand::Gen { ccc, out } => {
            let code = generate_ccc(ccc)?;
            write_code_to(&code, out.as_deref())?;
            Ok(report_code(&code))
        }
        CodesCommand::Validate { file } => {
            let f = File::open(&file).with_context(|| format!("opening {}", file.display()))?;
            let code = read_code(BufReader::new(f))?;
            Ok(report_code(&code))
        }
        CodesCommand::Export { scheme, out } => {
            write_code_to(&scheme.code()?, out.as_deref())?;
            Ok(true)
        }
    }
}

fn cmd_embed(args: EmbedArgs) -> Result<bool> {
    let params = args
        .keyed
        .shape
        .params(&args.keyed.key, args.keyed.fragment_bytes)?;
    let codec = StegoCodec::new(params)?;
    let cover = read_bmp(&args.cover)?;
    let message =
        fs::read(&args.message).with_context(|| format!("reading {}", args.message.display()))?;
    let (stego, report) = codec.embed(&cover, &message)?;
    fs::write(&args.out, save_bmp(&stego))
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!("{}", report.to_json());
    if args.bypass_quantization {
        let planes = rgb_to_ycbcr(&cover);
        let recovered = codec
            .extract_planes(&planes, &codec.embed_planes(&planes, &message)?)?
            .message();
        let exact = recovered == message;
        eprintln!(
            "real-valued round trip: {}",
            if exact { "exact" } else { "MISMATCH" }
        );
        return Ok(exact);
    }
    Ok(true)
}

fn cmd_extract(args: ExtractArgs) -> Result<bool> {
    let params = args
        .keyed
        .shape
        .params(&args.keyed.key, args.keyed.fragment_bytes)?;
    let codec = StegoCodec::new(params)?;
    let cover = read_bmp(&args.cover)?;
    let stego = read_bmp(&args.stego)?;
    let message = codec.extract(&cover, &stego)?;
    write_output(args.out.as_deref(), &message)?;
    Ok(true)
}

type CsvWriter<'a> = &'a mut dyn FnMut(&mut dyn Write) -> ccstego::Result<()>;

fn write_sweep(args: &SweepArgs, rows: CsvWriter<'_>, trials: CsvWriter<'_>) -> Result<()> {
    let mut buf = Vec::new();
    rows(&mut buf)?;
    write_output(args.out.as_deref(), &buf)?;
    if let Some(path) = &args.trials_out {
        let f = File::create(path).with_context(|| format!("writing {}", path.display()))?;
        trials(&mut BufWriter::new(f))?;
    }
    Ok(())
}

macro_rules! emit {
    ($sweep:expr, $args:expr) => {{
        let s = $sweep;
        write_sweep($args, &mut |w| s.write_csv(w), &mut |w| {
            s.write_trials_csv(w)
        })?;
    }};
}

fn sweep_setup(args: &SweepArgs) -> Result<(RgbImage, StegoParams, SweepOptions)> {
    let base = args.shape.params("", 0)?;
    if args.trials == 0 {
        bail!("--trials must be at least 1");
    }
    let cover = match &args.cover {
        Some(p) => read_bmp(p)?,
        None => synthetic_cover(512, 512, args.seed),
    };
    let opts = SweepOptions {
        trials: args.trials,
        master_seed: args.seed,
        bypass_quantization: args.bypass_quantization,
    };
    Ok((cover, base, opts))
}

fn cmd_bench(cmd: BenchCommand) -> Result<bool> {
    match cmd {
        BenchCommand::PsnrVsN { n, sweep } => {
            let ns = parse_list(&n)?;
            let (cover, base, opts) = sweep_setup(&sweep)?;
            emit!(run_psnr_sweep(&cover, &base, &ns, &opts)?, &sweep);
        }
        BenchCommand::PVsN { schemes, n, sweep } => {
            let (schemes, ns) = (parse_schemes(&schemes)?, parse_list(&n)?);
            let (cover, base, opts) = sweep_setup(&sweep)?;
            emit!(run_p_vs_n(&cover, &schemes, &base, &ns, &opts)?, &sweep);
        }
        BenchCommand::PVsM {
            schemes,
            n,
            m,
            sweep,
        } => {
            let (schemes, ms) = (parse_schemes(&schemes)?, parse_list(&m)?);
            let (cover, base, opts) = sweep_setup(&sweep)?;
            emit!(run_p_vs_m(&cover, &schemes, &base, n, &ms, &opts)?, &sweep);
        }
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Codes(cmd) => cmd_codes(cmd),
        Command::Embed(args) => cmd_embed(args),
        Command::Extract(args) => cmd_extract(args),
        Command::Psnr { a, b } => {
            let (a, b) = (read_bmp(&a)?, read_bmp(&b)?);
            let db = psnr(&a, &b)?;
            if db.is_infinite() {
                println!("inf");
            } else {
                println!("{db:.4}");
            }
            Ok(true)
        }
        Command::Bench(cmd) => cmd_bench(cmd),
        Command::Cover(args) => {
            let img = synthetic_cover(args.width, args.height, args.seed);
            fs::write(&args.out, save_bmp(&img))
                .with_context(|| format!("writing {}", args.out.display()))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
