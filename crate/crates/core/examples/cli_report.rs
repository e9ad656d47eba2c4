//! Drives the command-line interface in-process and summarizes its JSON.

use sl2lift::cli::run_with;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(["sl2lift", "report", "--all", "--pf-max", "9"], &mut out, &mut err);
    let json: serde_json::Value = serde_json::from_slice(&out).unwrap_or_default();
    let checks = json["checks"].as_array().map_or(0, Vec::len);
    println!("exit {code}, {checks} checks, pass = {}", json["pass"]);
    if !err.is_empty() {
        eprintln!("{}", String::from_utf8_lossy(&err));
    }
}
