//! Walk the default size schedule with a model that always produces 20
//! persons and print the relative errors.

use kgbench::rdf::serialize_turtle;
use kgbench::tasks::{size_schedule, synthetic_gen, DEFAULT_SIZE_COUNT};

fn main() {
    let answer = serialize_turtle(&synthetic_gen::foaf_dataset(20, 30));
    println!("{:>5} {:>8} {:>8} {:>10} {:>10}", "size", "persons", "links", "p_err", "l_err");
    for i in 1..=DEFAULT_SIZE_COUNT {
        let size = size_schedule(i).unwrap();
        let s = synthetic_gen::evaluate(&answer, size.persons_requested, size.links_requested);
        println!(
            "{i:>5} {:>8} {:>8} {:>10.4} {:>10.4}",
            size.persons_requested,
            size.links_requested,
            s["persons_relative_error"].as_f64(),
            s["links_relative_error"].as_f64()
        );
    }
}
