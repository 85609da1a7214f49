//! Run the whole pipeline on a function and node list from the command line
//! and write the same artifacts as `rollekit correct`.
//!
//!     cargo run --example custom_problem -- "cos(x)*exp(x/2)" "0,1,2.5" out/

use std::path::PathBuf;

use rollekit::cli::{cmd_correct, parse_node_exprs, BranchSelection, RunConfig};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let function = args.first().map_or("cos(x)*exp(x/2)", String::as_str);
    let nodes = args.get(1).map_or("0,1,5/2", String::as_str);
    let out = args.get(2).map_or("custom-out", String::as_str);

    let mut cfg = RunConfig::new(function, parse_node_exprs(nodes).expect("node list"));
    cfg.branch = BranchSelection::All;
    cfg.output_dir = PathBuf::from(out);
    cfg.emit_plots = true;

    match cmd_correct(&cfg) {
        Ok(report) => {
            for c in &report.corrections {
                println!(
                    "branch {:?}: {:.3e} -> {:.3e}",
                    c.branch, c.result.max_err_before, c.result.max_err_after
                );
            }
            println!("artifacts in {out}/");
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            std::process::exit(e.exit_code());
        }
    }
}
