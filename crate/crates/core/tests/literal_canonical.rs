//! Canonical literal forms checked against value keys computed by an
//! independent implementation (`data/literal_values.py`).

use std::collections::HashMap;

use kgbench::rdf::{canonical_literal, Literal};
use serde::Deserialize;

#[derive(Deserialize)]
struct Case {
    lexical: String,
    datatype: String,
    value_key: String,
    rdflib_lexical: Option<String>,
}

fn cases() -> Vec<Case> {
    serde_json::from_str(include_str!("data/literal_values.json")).unwrap()
}

#[test]
fn integer_forms_match_reference() {
    for case in cases() {
        if let Some(expected) = &case.rdflib_lexical {
            let got = canonical_literal(&Literal::typed(case.lexical.as_str(), case.datatype.as_str()));
            assert_eq!(&got.lexical, expected, "{}", case.lexical);
        }
    }
}

#[test]
fn equal_values_share_one_canonical_form() {
    let mut by_key: HashMap<(String, String), String> = HashMap::new();
    let mut by_form: HashMap<(String, String), String> = HashMap::new();
    for case in cases() {
        let form = canonical_literal(&Literal::typed(case.lexical.as_str(), case.datatype.as_str())).lexical;
        let key = (case.datatype.clone(), case.value_key.clone());
        if let Some(previous) = by_key.insert(key.clone(), form.clone()) {
            assert_eq!(previous, form, "{} {}", case.datatype, case.lexical);
        }
        if let Some(previous) = by_form.insert((case.datatype.clone(), form.clone()), case.value_key.clone()) {
            assert_eq!(previous, case.value_key, "{} {}", case.datatype, case.lexical);
        }
    }
}

#[test]
fn canonical_form_is_a_fixed_point() {
    for case in cases() {
        let once = canonical_literal(&Literal::typed(case.lexical.as_str(), case.datatype.as_str()));
        assert_eq!(canonical_literal(&once), once, "{}", case.lexical);
    }
}
