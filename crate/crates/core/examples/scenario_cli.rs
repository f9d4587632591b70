//! Loading a JSON scenario and running CLI subcommands in-process.

use opframe::cli;
use opframe::scenario::Scenario;

fn main() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/ramp_additive_inadmissible.json");
    let scenario = Scenario::from_path(std::path::Path::new(path)).expect("valid scenario");
    println!("loaded {:?}: {} over {}", scenario.name, scenario.module_rank, scenario.algebra);

    for args in [
        vec!["opframe", "perturb", "--scenario", path],
        vec!["opframe", "analyze", "--format", "csv", "--scenario", path],
        vec!["opframe", "verify-examples", "--nodes", "1"],
    ] {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(args.clone(), &mut out, &mut err);
        let text = String::from_utf8_lossy(&out);
        println!("$ {} -> exit {code}", args[1..].join(" "));
        for line in text.lines().filter(|l| l.contains("verdict") || l.starts_with("frame.")).take(8) {
            println!("  {}", line.trim());
        }
        if !err.is_empty() {
            print!("  stderr: {}", String::from_utf8_lossy(&err));
        }
    }

    let broken = r#"{"schema_version": 1, "algebra": {"kind": "full", "dim": 2}, "module_rank": 1,
        "measure": {"kind": "counting", "nodes": 1},
        "family": {"form": "sampled", "operators": [[[[[1, 0], [0, 0]], [[0, 0]]]]]}}"#;
    println!("malformed scenario: {}", Scenario::from_json_str(broken).unwrap_err());
}
