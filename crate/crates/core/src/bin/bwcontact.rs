use std::fs;
use std::process::ExitCode;

use clap::Parser;

use bwcontact::cli::{self, Cli};
use bwcontact::report::Document;
use bwcontact::Error;

fn fail(e: &Error) -> ExitCode {
    let message = e.to_string().replace('\n', " ");
    eprintln!("error: {}: {}", e.code(), message);
    ExitCode::FAILURE
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let doc = match cli::run(&args) {
        Ok(doc) => doc,
        Err(e) => return fail(&e),
    };
    let rendered = cli::render(&doc, args.format);
    match &args.output {
        Some(path) => {
            if let Err(source) = fs::write(path, &rendered) {
                return fail(&Error::Io {
                    path: path.clone(),
                    source,
                });
            }
        }
        None => print!("{rendered}"),
    }
    if let Document::Selftest(s) = &doc {
        if s.failures() > 0 {
            return fail(&Error::SelftestFailed(s.failures()));
        }
    }
    ExitCode::SUCCESS
}
