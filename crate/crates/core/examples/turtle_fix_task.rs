//! Generate a corrupted Turtle document, export it, and score two answers.
//!
//! `cargo run --example turtle_fix_task -- [seed] [out-dir]`

use std::path::PathBuf;

use kgbench::tasks::{apply_inverse, turtle_fix, TurtleFixInstance, TurtleFixSize};

fn main() {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let out = args.next().map(PathBuf::from);

    let inst = TurtleFixInstance::generate(seed, TurtleFixSize::default()).expect("default size is valid");
    println!("{}", inst.prompt);
    for e in &inst.error_log {
        println!("# {:?} in statement {}: {:?} -> {:?}", e.kind, e.statement_index, e.original, e.replacement);
    }
    if let Some(dir) = out {
        inst.export(&dir).expect("export");
        println!("# exported to {}", dir.display());
    }

    let repaired = apply_inverse(&inst.corrupted_text, &inst.error_log);
    for (label, answer) in [("echo", inst.corrupted_text.as_str()), ("repair", repaired.as_str())] {
        let scores = turtle_fix::evaluate(answer, &inst.reference);
        println!("{label}: {}", serde_json::to_string(&scores).unwrap());
    }
}
