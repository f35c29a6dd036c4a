//! Show the factsheet prompt and score a partial extraction. An asset
//! directory may be given to replace the bundled factsheet.

use kgbench::rdf::{serialize_turtle, Graph};
use kgbench::tasks::{fact_extract, load_asset, FactSheetAsset};

fn main() {
    let asset = match std::env::args().nth(1) {
        Some(dir) => load_asset(dir).unwrap_or_else(|e| {
            eprintln!("{e}");
            std::process::exit(1)
        }),
        None => FactSheetAsset::bundled(),
    };
    println!("{} v{}: {}", asset.asset_id, asset.version, asset.description);
    println!("{}\n", asset.build_prompt());

    let half: Graph = asset.reference.iter().step_by(2).cloned().collect();
    let answer = format!("```turtle\n{}```", serialize_turtle(&half));
    let scores = fact_extract::evaluate(&answer, &asset);
    println!("half the facts: {}", serde_json::to_string(&scores).unwrap());
}
