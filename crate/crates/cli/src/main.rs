//! `kuga`: command-line front end for the certificate library.

mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let header = json!({
        "tool": "kuga",
        "version": kuga_core::VERSION,
        "params": serde_json::to_value(&cli).expect("serializable"),
    });
    match commands::run(&cli) {
        Ok(out) => {
            if cli.json {
                print!(
                    "{}",
                    commands::render_json(&json!({ "header": header, "result": out.value }))
                );
            } else {
                println!("# kuga {}", kuga_core::VERSION);
                println!("# params: {}", header["params"]);
                print!("{}", out.text);
            }
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                let v = json!({ "header": header, "error": { "message": e.to_string(), "exit_code": code } });
                print!("{}", commands::render_json(&v));
            } else {
                println!("# kuga {}", kuga_core::VERSION);
                println!("# params: {}", header["params"]);
            }
            eprintln!("error: {e}");
            ExitCode::from(code as u8)
        }
    }
}
