mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, ExpmapAction};
use commands::{count_items, Context, Outcome};
use error::CliError;
use retractlab::grading::WeightVector;

const CAP_VAR: &str = "RETRACTLAB_MAX_DEGREE";

fn run(cli: Cli) -> Result<(Outcome, bool), CliError> {
    Ok(match cli.command {
        Command::VerifyRetraction { images, common } => {
            let ctx = Context::new(&common, count_items(&images))?;
            (commands::verify_retraction(&ctx, &images)?, common.json)
        }
        Command::Classify { images, bound, common } => {
            let ctx = Context::new(&common, count_items(&images))?;
            (commands::classify_cmd(&ctx, &images, bound)?, common.json)
        }
        Command::EnumMonomial { n, max_exp, match_corpus, threads, common } => {
            if let Some(t) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build_global()
                    .map_err(|e| CliError::Usage(format!("--threads: {e}")))?;
            }
            Context::new(&common, n)?;
            (commands::enum_monomial(n, max_exp, match_corpus.as_deref())?, common.json)
        }
        Command::Expmap { action } => match action {
            ExpmapAction::Verify { images, common } => {
                let ctx = Context::new(&common, count_items(&images))?;
                (commands::expmap_verify(&ctx, &images)?, common.json)
            }
            ExpmapAction::Constants { images, bound, common } => {
                let ctx = Context::new(&common, count_items(&images))?;
                (commands::expmap_constants(&ctx, &images, bound)?, common.json)
            }
            ExpmapAction::Slice { images, bound, common } => {
                let ctx = Context::new(&common, count_items(&images))?;
                (commands::expmap_slice(&ctx, &images, bound)?, common.json)
            }
            ExpmapAction::Ml { images, bound, common } => {
                let ctx = Context::new(&common, count_items(&images[0]))?;
                (commands::expmap_ml(&ctx, &images, bound)?, common.json)
            }
        },
        Command::Grading { weights, gens, common } => {
            let w: WeightVector = weights.parse()?;
            let ctx = Context::new(&common, w.len())?;
            (commands::grading(&ctx, &w, &gens)?, common.json)
        }
        Command::KernelCheck { images, h, bound, common } => {
            let ctx = Context::new(&common, count_items(&images))?;
            (commands::kernel_check(&ctx, &images, &h, bound)?, common.json)
        }
        Command::Member { gens, f, bound, common } => {
            let ctx = Context::new(&common, 3)?;
            (commands::member(&ctx, &gens, &f, bound)?, common.json)
        }
        Command::Dependence { gens, bound, common } => {
            let ctx = Context::new(&common, 3)?;
            (commands::dependence(&ctx, &gens, bound)?, common.json)
        }
        Command::Normalize { images, bound, common } => {
            let ctx = Context::new(&common, count_items(&images))?;
            (commands::normalize(&ctx, &images, bound)?, common.json)
        }
    })
}

fn apply_cap() -> Result<(), CliError> {
    if let Ok(v) = std::env::var(CAP_VAR) {
        let cap: u64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{CAP_VAR}={v:?} is not a nonnegative integer")))?;
        retractlab::poly::set_degree_cap(cap);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = apply_cap().and_then(|()| run(cli));
    match result {
        Ok((outcome, json)) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&outcome.json).expect("report serializes"));
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
