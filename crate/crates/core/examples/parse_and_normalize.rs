//! Parse Turtle, normalize it, and compare two spellings of the same graph.

use kgbench::rdf::{normalize, parse_turtle_strict, serialize_turtle};

fn main() {
    let a = r#"
@prefix ex: <http://example.org/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .
ex:alice a ex:Person ;
    ex:age "042"^^xsd:integer ;
    ex:address [ ex:city "Leipzig" ] .
"#;
    let b = r#"
<http://example.org/alice> <http://example.org/address> _:somewhere .
_:somewhere <http://example.org/city> "Leipzig" .
<http://example.org/alice> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://example.org/Person> .
<http://example.org/alice> <http://example.org/age> 42 .
"#;
    let ga = parse_turtle_strict(a).expect("a parses");
    let gb = parse_turtle_strict(b).expect("b parses");
    let (na, nb) = (normalize(&ga), normalize(&gb));
    for line in na.lines() {
        println!("{line}");
    }
    println!("same graph: {}", na == nb);
    println!("\n{}", serialize_turtle(&ga));

    match parse_turtle_strict("ex:a ex:b ex:c .") {
        Ok(_) => unreachable!(),
        Err(e) => println!("strict parse error: {e}"),
    }
}
