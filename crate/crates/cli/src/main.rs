//! `analyze <specfile>`: run analyses described by a filtration spec.
//!
//! Exit codes: 0 when the run completed and some report applied (or none was
//! requested), 2 when every report had a failing hypothesis, 3 when a report
//! is inconsistent, 1 on usage, parse or engine errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mgfilt_cli::{emit, parse_spec, run, Command, Format, THREADS_ENV};

#[derive(Parser, Debug)]
#[command(name = "analyze", version, about = "Analyze a multigraded filtration spec")]
struct Args {
    /// Path to the spec document.
    specfile: PathBuf,
    /// Pipeline to run; defaults to the document's `commands`.
    #[arg(long)]
    command: Option<Command>,
    /// Side of the box [0,N]^s.
    #[arg(long = "box", value_name = "N")]
    box_size: Option<i64>,
    /// Extra layers checked beyond the box.
    #[arg(long, value_name = "M")]
    margin: Option<i64>,
    /// Base offset of the polynomial fit.
    #[arg(long, value_name = "B")]
    offset: Option<i64>,
    /// table, structured or plotdata.
    #[arg(long, default_value = "table")]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Print per-stage wall-clock times to stderr.
    #[arg(long)]
    timing: bool,
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    match execute(&args) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn execute(args: &Args) -> mgfilt_cli::Result<u8> {
    let text = std::fs::read_to_string(&args.specfile).map_err(|source| mgfilt_cli::Error::Read {
        path: args.specfile.clone(),
        source,
    })?;
    let doc = parse_spec(&text)?;
    let mut settings = doc.settings;
    if let Some(b) = args.box_size {
        settings.box_size = b;
    }
    if let Some(m) = args.margin {
        settings.margin = m;
    }
    if let Some(o) = args.offset {
        settings.base_offset = o;
    }
    let commands = args.command.map(|c| vec![c]);
    let bundle = run(&doc, commands.as_deref(), settings)?;
    if args.timing {
        for (stage, t) in &bundle.timings.0 {
            eprintln!("{stage}: {:.3}s", t.as_secs_f64());
        }
    }
    let bytes = emit(&bundle, args.format);
    match &args.out {
        Some(path) => std::fs::write(path, bytes)?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
        }
    }
    Ok(bundle.exit_code() as u8)
}
