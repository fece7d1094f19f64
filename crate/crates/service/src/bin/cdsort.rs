use std::process::ExitCode;

fn main() -> ExitCode {
    let json = std::env::args().any(|a| a == "--json");
    let result = cdsort_service::cli::run(std::env::args_os());
    match (&result.json, json) {
        (Some(body), true) => println!("{}", serde_json::to_string_pretty(body).expect("json value")),
        _ if result.code == 0 && !result.text.is_empty() => println!("{}", result.text),
        _ => {}
    }
    if result.code != 0 {
        eprintln!("{}", result.text);
    }
    ExitCode::from(result.code as u8)
}
