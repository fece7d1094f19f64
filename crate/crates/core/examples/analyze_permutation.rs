//! Full analysis of a permutation: `cargo run --example analyze_permutation -- "[4 2 6 7 1 3 5]"`.
//! Pass `--signed` for the cdr view.

use cdsort::report::analyze;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let signed = args.iter().any(|a| a == "--signed");
    let text = args
        .iter()
        .find(|a| !a.starts_with("--"))
        .map_or("[4 2 6 7 1 3 5]", String::as_str);
    match cdsort::parse(text, signed) {
        Ok(p) => println!("{}", analyze(&p)),
        Err(e) => eprintln!("{e}"),
    }
}
