//! Precision, recall and F1 between a candidate and a reference graph,
//! with blank nodes matched regardless of their labels.

use kgbench::rdf::{normalize, parse_turtle_strict, triple_set_scores};

fn main() {
    let reference = parse_turtle_strict(
        "@prefix ex: <http://example.org/> .
         ex:printer ex:weight 18.5 ; ex:vendor [ ex:name \"Fabrikon\" ; ex:city \"Musterstadt\" ] .",
    )
    .unwrap();
    let candidate = parse_turtle_strict(
        "@prefix ex: <http://example.org/> .
         ex:printer ex:weight 18.50 ; ex:vendor _:v ; ex:colour \"grey\" .
         _:v ex:name \"Fabrikon\" .",
    )
    .unwrap();
    let s = triple_set_scores(&normalize(&candidate), &normalize(&reference));
    println!("tp={} fp={} fn={}", s.tp, s.fp, s.fn_);
    println!("precision={:.3} recall={:.3} f1={:.3}", s.precision, s.recall, s.f1);
}
