use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use kleinlens::geometry::mesh::IDENTITY_TOLERANCE;
use kleinlens::groups::DEFAULT_ORDER_CAP;
use kleinlens_cli::verify::{verify, VerifyArgs};
use kleinlens_cli::{
    classify, embed, filling, Construction, EmbedArgs, Format, Options, EXIT_SUCCESS,
    EXIT_VERIFICATION_FAILURE,
};

/// Lens spaces, Klein bottles and the groups in between.
///
/// Exit codes: 0 success, 1 verification failure, 2 usage error.
#[derive(Parser)]
#[command(name = "kleinlens", version)]
struct Cli {
    /// Residual bound for seams and exact identities.
    #[arg(long, global = true, default_value_t = IDENTITY_TOLERANCE)]
    tolerance: f64,
    /// Largest group order for which a multiplication table is built.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form, Klein-bottle and RP² verdicts, and Heegaard gluing of L(p,q).
    #[command(allow_negative_numbers = true)]
    Classify { p: i64, q: i64 },
    /// Homology, presentation and group structure of the filling of νK along (n, l).
    #[command(allow_negative_numbers = true)]
    Filling { n: i64, l: i64 },
    /// Builds and checks one Klein-bottle construction in L(4n, 2n±1).
    Embed {
        n: i64,
        /// `+` or `-`.
        sign: String,
        #[arg(value_enum)]
        construction: Construction,
        /// Grid size of the lens-model mesh.
        #[arg(default_value_t = 64)]
        resolution: usize,
        /// Directory for mesh, metadata and curve files.
        out: Option<PathBuf>,
        /// Separation the injectivity check demands.
        #[arg(long, default_value_t = 1e-4)]
        min_sep: f64,
    },
    /// Runs every property suite up to the given bounds.
    Verify {
        max_n: i64,
        max_p: i64,
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        tolerance: cli.tolerance,
        cap: cli.cap,
    };
    let start = Instant::now();
    let outcome = match cli.command {
        Command::Classify { p, q } => classify(p, q),
        Command::Filling { n, l } => filling(n, l, &opts),
        Command::Embed {
            n,
            sign,
            construction,
            resolution,
            out,
            min_sep,
        } => embed(
            &EmbedArgs {
                n,
                sign,
                construction,
                resolution,
                out,
                min_sep,
            },
            &opts,
        ),
        Command::Verify {
            max_n,
            max_p,
            resolution,
            inject_fault,
        } => {
            let report = verify(
                &VerifyArgs {
                    max_n,
                    max_p,
                    resolution,
                    inject_fault,
                },
                &opts,
            );
            eprintln!("runtime: {:.3} s", start.elapsed().as_secs_f64());
            report
        }
    };
    let code = match outcome {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            if report.passed() {
                EXIT_SUCCESS
            } else {
                EXIT_VERIFICATION_FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
