//! Recover what can be recovered from a chatty, partly broken model answer.

use kgbench::rdf::{extract_turtle_candidate, salvage_report};

fn main() {
    let response = r#"Sure! Here is the fixed file:

```turtle
@prefix ex: <http://example.org/> .
ex:a ex:knows ex:b .
ex:b ex:knows <http://example.org/c .
ex:c ex:name "Carla" .
```

Let me know if you need anything else."#;
    let candidate = extract_turtle_candidate(response);
    let report = salvage_report(&candidate);
    for unit in &report.units {
        let text = candidate[unit.span.clone()].trim();
        match &unit.error {
            None => println!("kept   {} triple(s): {text}", unit.triple_count),
            Some(e) => println!("failed {e}: {text}"),
        }
    }
    println!("{} triples salvaged, {} statement(s) failed", report.graph.len(), report.failed_statements());
}
