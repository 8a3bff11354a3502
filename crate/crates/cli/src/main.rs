use std::path::PathBuf;
use std::process::ExitCode;

use chern_galois::chern::Normalization;
use chern_galois::format::{parse, AnyDocument};
use chern_galois::pipeline::{run, Command, Options};
use chern_galois::{zoo, Error};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "chern-galois", version)]
#[command(about = "Exact checks for principal coalgebra extensions and their Chern-Galois characters")]
struct Cli {
    /// Seed for every pseudo-random choice
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Scaling of the Chern characters: paper | textbook
    #[arg(long, global = true, default_value = "paper")]
    normalization: Normalization,

    /// Largest n for which chg_{2n} is computed
    #[arg(long, global = true, default_value_t = 2)]
    max_degree: usize,

    /// Print per-step wall-clock times to stderr
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Source {
    /// Input document
    input: Option<PathBuf>,

    /// Use a built-in example instead of a file
    #[arg(long, conflicts_with = "input")]
    zoo: Option<String>,
}

impl Source {
    fn load(&self) -> Result<AnyDocument, Error> {
        match (&self.input, &self.zoo) {
            (_, Some(name)) => zoo::document(name),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
                parse(&text)
            }
            (None, None) => Err(Error::Input("give an input file or --zoo NAME".into())),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Algebra, coalgebra, coaction and corep axioms
    Validate(Source),
    /// The principality conditions, including a strong connection
    Principal(Source),
    /// Strong connection, splitting and their round trips
    Connection(Source),
    /// Coflatness, conditional expectations, projectivity and faithful flatness
    Certify(Source),
    /// The idempotent of a corepresentation and the module isomorphism
    Idempotent {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        corep: String,
    },
    /// chg_{2n} of a corepresentation, compared with ch_{2n}(E)
    Chg {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        corep: String,
        #[arg(long)]
        degree: usize,
    },
    /// Dimension of HC_n of the coinvariants
    Hc {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        degree: usize,
    },
    /// Every check above, for every corepresentation
    VerifyAll(Source),
    /// Built-in examples
    Zoo {
        #[command(subcommand)]
        action: ZooCmd,
    },
}

#[derive(Subcommand)]
enum ZooCmd {
    List,
    Dump { name: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options { seed: cli.seed, normalization: cli.normalization, max_degree: cli.max_degree };
    let (source, command) = match cli.command {
        Cmd::Zoo { action: ZooCmd::List } => {
            for name in zoo::NAMES {
                println!("{name}");
            }
            return ExitCode::SUCCESS;
        }
        Cmd::Zoo { action: ZooCmd::Dump { name } } => {
            return match zoo::document(&name) {
                Ok(doc) => {
                    print!("{}", doc.dump());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            };
        }
        Cmd::Validate(s) => (s, Command::Validate),
        Cmd::Principal(s) => (s, Command::Principal),
        Cmd::Connection(s) => (s, Command::Connection),
        Cmd::Certify(s) => (s, Command::Certify),
        Cmd::Idempotent { source, corep } => (source, Command::Idempotent { corep }),
        Cmd::Chg { source, corep, degree } => (source, Command::Chg { corep, degree }),
        Cmd::Hc { source, degree } => (source, Command::Hc { degree }),
        Cmd::VerifyAll(s) => (s, Command::VerifyAll),
    };
    let result = source.load().and_then(|doc| run(&command, &doc, &opts));
    match result {
        Ok(report) => {
            print!("{}", report.render());
            if cli.timings {
                for (step, t) in &report.timings {
                    eprintln!("{step}: {:.3} ms", t.as_secs_f64() * 1e3);
                }
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) if e.is_verdict() => {
            println!("[FAIL] {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
