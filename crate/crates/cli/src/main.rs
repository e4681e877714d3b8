use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use lck_cli::commands::{self, CliError};
use lck_cli::document::Document;
use lck_core::report::StructureReport;
use lck_core::structures::Convention;

#[derive(Parser)]
#[command(
    name = "lck",
    version,
    about = "Exact checks for lcs, lcK and Vaisman structures on Lie algebras"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conv {
    /// g(X,Y) = omega(X, JY)
    Def,
    /// g(X,Y) = omega(JX, Y)
    Thm,
}

impl From<Conv> for Convention {
    fn from(c: Conv) -> Self {
        match c {
            Conv::Def => Convention::Def,
            Conv::Thm => Convention::Thm,
        }
    }
}

#[derive(clap::Args)]
struct Input {
    /// Document path.
    doc: String,
    /// Specialize parameters first, e.g. `a=0,b=-1/2`.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Antisymmetry, Jacobi identity and closure of h.
    CheckAlgebra {
        #[command(flatten)]
        input: Input,
    },
    /// Nondegeneracy, Lee form and lcs identities of a 2-form.
    CheckLcs {
        #[command(flatten)]
        input: Input,
        /// Form name in the document, or a wedge expression.
        omega: String,
    },
    /// Integrability, compatibility, Lee field and metric of (omega, J).
    CheckLck {
        #[command(flatten)]
        input: Input,
        omega: String,
        /// Endomorphism name in the document.
        j: String,
        #[arg(long, value_enum, default_value_t = Conv::Def)]
        convention: Conv,
    },
    /// The lcK checks followed by the test nabla xi = 0.
    CheckVaisman {
        #[command(flatten)]
        input: Input,
        omega: String,
        j: String,
        #[arg(long, value_enum, default_value_t = Conv::Def)]
        convention: Conv,
    },
    /// Dimension of the twisted cohomology H^k_lambda.
    Cohomology {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        degree: usize,
    },
    /// lcs structure on R D + g from a coadjoint orbit.
    ConstructOrbit {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        /// Endomorphism name of the derivation D; zero if absent.
        #[arg(long)]
        derivation: Option<String>,
        /// Write the constructed algebra and forms as a document.
        #[arg(long)]
        emit: Option<String>,
    },
    /// Run a theorem suite: u2_classification, gl2_classification, reductive_identities.
    Suite { name: String },
    /// Check a catalog entry, or print it as a document with --emit.
    Catalog {
        id: String,
        #[arg(long)]
        emit: bool,
    },
}

fn load(input: &Input) -> Result<Document, CliError> {
    let src = std::fs::read_to_string(&input.doc).map_err(|e| CliError::Io {
        path: input.doc.clone(),
        source: e,
    })?;
    let doc = Document::from_json(&src)?;
    match &input.at {
        None => Ok(doc),
        Some(at) => {
            let at = commands::parse_at(at, &doc.params)?;
            Ok(doc.substitute(&at)?)
        }
    }
}

enum Output {
    Report(StructureReport),
    Text(String),
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    Ok(match &cli.command {
        Command::CheckAlgebra { input } => Output::Report(commands::check_algebra(&load(input)?)),
        Command::CheckLcs { input, omega } => {
            Output::Report(commands::check_lcs(&load(input)?, omega)?)
        }
        Command::CheckLck {
            input,
            omega,
            j,
            convention,
        } => Output::Report(commands::check_lck(
            &load(input)?,
            omega,
            j,
            (*convention).into(),
        )?),
        Command::CheckVaisman {
            input,
            omega,
            j,
            convention,
        } => Output::Report(commands::check_vaisman(
            &load(input)?,
            omega,
            j,
            (*convention).into(),
        )?),
        Command::Cohomology {
            input,
            lambda,
            degree,
        } => Output::Report(commands::cohomology(&load(input)?, lambda, *degree)?),
        Command::ConstructOrbit {
            input,
            phi,
            derivation,
            emit,
        } => {
            let out = commands::construct_orbit(&load(input)?, phi, derivation.as_deref())?;
            if let Some(path) = emit {
                std::fs::write(path, out.document.to_json()).map_err(|e| CliError::Io {
                    path: path.clone(),
                    source: e,
                })?;
            }
            Output::Report(out.report)
        }
        Command::Suite { name } => Output::Report(commands::suite(name)?),
        Command::Catalog { id, emit: true } => {
            Output::Text(commands::catalog_document(id)?.to_json())
        }
        Command::Catalog { id, emit: false } => Output::Report(commands::catalog_report(id)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = match run(&cli) {
        Ok(Output::Text(s)) => (s, ExitCode::SUCCESS),
        Ok(Output::Report(r)) => {
            let code = if r.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
            let text = match cli.format {
                Format::Text => format!("{r}\n"),
                Format::Json => serde_json::to_string_pretty(&r).expect("reports serialize") + "\n",
            };
            (text, code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut out = std::io::stdout().lock();
    if out
        .write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    code
}
