use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use oigb_cli::{run_source, Flags, OutputFormat};
use oigb_core::par::Execution;

/// Groebner bases, syzygies and free resolutions over polynomial OI-algebras.
#[derive(Parser, Debug)]
#[command(name = "oigb", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Log progress of the algorithms to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[arg(long, short, global = true, value_enum, env = "OIGB_OUTPUT", default_value = "text")]
    output: Format,
    /// Abort after this many critical pairs.
    #[arg(long, global = true)]
    pair_cap: Option<usize>,
    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a session script (`-` reads stdin).
    Run { script: PathBuf },
    /// Groebner basis of the given elements.
    Gb(Inline),
    /// Syzygies of the Groebner basis of the given elements.
    Syz {
        #[command(flatten)]
        inline: Inline,
        /// Basis symbol of the syzygy module.
        #[arg(long, default_value = "d")]
        symbol: String,
    },
    /// Free resolution up to homological degree `--degree`; prints ranks.
    Res {
        #[command(flatten)]
        inline: Inline,
        #[arg(long, short = 'k')]
        degree: usize,
        #[arg(long)]
        no_minimize: bool,
        /// Print the whole complex instead of its ranks.
        #[arg(long)]
        describe: bool,
    },
    /// Free resolution restricted to one width, as matrices.
    Restrict {
        #[command(flatten)]
        inline: Inline,
        #[arg(long, short = 'k')]
        degree: usize,
        #[arg(long, short)]
        width: usize,
        #[arg(long)]
        no_minimize: bool,
    },
}

/// A module defined on the command line.
#[derive(Args, Debug)]
struct Inline {
    /// Number of rows of variables.
    #[arg(long, default_value_t = 1)]
    rows: usize,
    #[arg(long, default_value = "x")]
    var: String,
    /// Generator widths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    widths: Vec<usize>,
    #[arg(long, default_value = "e")]
    basis: String,
    /// Twists, comma separated; zero when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    twists: Vec<i64>,
    /// Elements, e.g. "x(1,2)*x(1,1)*e(2,{2},1) + x(2,2)*x(2,1)*e(2,{1},2)".
    #[arg(required = true)]
    elements: Vec<String>,
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

impl Inline {
    /// Writes the definitions as script lines; the elements are `b1, b2, ...`.
    fn preamble(&self) -> (String, String) {
        let mut s = format!("P = makePolynomialOIAlgebra({}, {}, QQ);\n", self.rows, self.var);
        s += &format!("F = makeFreeOIModule({}, {{{}}}, P", self.basis, list(&self.widths));
        if !self.twists.is_empty() {
            s += &format!(", {{{}}}", list(&self.twists));
        }
        s += ");\n";
        let mut names = Vec::new();
        for (k, e) in self.elements.iter().enumerate() {
            s += &format!("b{} = {};\n", k + 1, e);
            names.push(format!("b{}", k + 1));
        }
        (s, format!("{{{}}}", names.join(", ")))
    }
}

fn minimize(no: bool) -> &'static str {
    if no {
        "false"
    } else {
        "true"
    }
}

fn source(command: &Command) -> Result<String> {
    Ok(match command {
        Command::Run { script } => {
            let mut s = String::new();
            if script.as_os_str() == "-" {
                io::stdin().read_to_string(&mut s).context("reading stdin")?;
            } else {
                s = std::fs::read_to_string(script).with_context(|| format!("reading {}", script.display()))?;
            }
            s
        }
        Command::Gb(inline) => {
            let (pre, names) = inline.preamble();
            format!("{pre}oiGB {names}\n")
        }
        Command::Syz { inline, symbol } => {
            let (pre, names) = inline.preamble();
            format!("{pre}G = oiGB {names};\noiSyz(G, {symbol})\n")
        }
        Command::Res {
            inline,
            degree,
            no_minimize,
            describe,
        } => {
            let (pre, names) = inline.preamble();
            let what = if *describe { "describe" } else { "ranks" };
            format!(
                "{pre}R = oiRes({names}, {degree}, Minimize => {});\n{what} R\n",
                minimize(*no_minimize)
            )
        }
        Command::Restrict {
            inline,
            degree,
            width,
            no_minimize,
        } => {
            let (pre, names) = inline.preamble();
            format!(
                "{pre}R = oiRes({names}, {degree}, Minimize => {});\nrestrict(R, {width})\n",
                minimize(*no_minimize)
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.global.verbose {
        log::LevelFilter::Info
    } else {
        log::LevelFilter::Warn
    };
    env_logger::Builder::new().filter_level(level).parse_env("OIGB_LOG").init();

    let src = match source(&cli.command) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut flags = Flags {
        verbose: cli.global.verbose,
        output: match cli.global.output {
            Format::Text => OutputFormat::Text,
            Format::Json => OutputFormat::Json,
        },
        ..Flags::default()
    };
    if let Some(cap) = cli.global.pair_cap {
        flags.pair_cap = cap;
    }
    if cli.global.sequential {
        flags.execution = Execution::Sequential;
    }

    let report = run_source(&src, &flags);
    let mut out = io::stdout().lock();
    let _ = out.write_all(report.render(flags.output).as_bytes());
    let _ = out.flush();
    match &report.error {
        None => ExitCode::SUCCESS,
        Some(e) => {
            match &cli.command {
                Command::Run { script } if script.as_os_str() != "-" => {
                    eprintln!("error: {}:{e}", script.display())
                }
                _ => eprintln!("error: {e}"),
            }
            ExitCode::FAILURE
        }
    }
}
