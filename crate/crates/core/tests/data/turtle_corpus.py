"""Regenerates turtle_corpus.json with verdicts from rdflib.

    python3 turtle_corpus.py > turtle_corpus.json

rdflib is only the reference oracle; the Rust parser never calls it.
"""
import json
import sys

import rdflib

EX = "@prefix ex: <http://ex.org/> .\n"
XSD = "@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .\n"

POSITIVE = {
    "empty": "",
    "comment_only": "# nothing here\n",
    "single_iri_triple": "<http://ex.org/a> <http://ex.org/p> <http://ex.org/b> .",
    "prefixed_triple": EX + "ex:a ex:p ex:b .",
    "empty_prefix": "@prefix : <http://ex.org/> .\n:a :p :b .",
    "sparql_prefix": "PREFIX ex: <http://ex.org/>\nex:a ex:p ex:b .",
    "sparql_prefix_lowercase": "prefix ex: <http://ex.org/>\nex:a ex:p ex:b .",
    "base_relative": "@base <http://ex.org/dir/> .\n<a> <p> <../b> .",
    "sparql_base": "BASE <http://ex.org/>\n<a> <p> <b> .",
    "rdf_type_a": EX + "ex:a a ex:Thing .",
    "semicolon": EX + "ex:a ex:p ex:b ; ex:q ex:c .",
    "comma": EX + "ex:a ex:p ex:b , ex:c , ex:d .",
    "trailing_semicolon": EX + "ex:a ex:p ex:b ; .",
    "repeated_semicolons": EX + "ex:a ex:p ex:b ;; ex:q ex:c .",
    "duplicate_triples": EX + "ex:a ex:p ex:b . ex:a ex:p ex:b .",
    "blank_labels": EX + "_:x ex:p _:y . _:y ex:p _:x .",
    "anon_subject": EX + "[] ex:p ex:b .",
    "anon_object": EX + "ex:a ex:p [] .",
    "bnode_property_list_object": EX + "ex:a ex:p [ ex:q ex:r ; ex:s \"t\" ] .",
    "bnode_property_list_subject": EX + "[ ex:q ex:r ] ex:p ex:b .",
    "bnode_property_list_alone": EX + "[ ex:q ex:r ] .",
    "nested_bnodes": EX + "ex:a ex:p [ ex:q [ ex:r ex:s ] ] .",
    "collection": EX + "ex:a ex:p ( ex:b ex:c ex:d ) .",
    "empty_collection": EX + "ex:a ex:p () .",
    "collection_subject": EX + "( 1 2 ) ex:p ex:b .",
    "nested_collection": EX + "ex:a ex:p ( ( 1 ) [ ex:q 2 ] ) .",
    "plain_strings": EX + "ex:a ex:p \"double\" , 'single' .",
    "long_strings": EX + "ex:a ex:p \"\"\"multi\nline \"quoted\" \"\"\" , '''also\nlong''' .",
    "string_escapes": EX + "ex:a ex:p \"tab\\t nl\\n quote\\\" bs\\\\ u\\u00E9 U\\U0001F600\" .",
    "language_tags": EX + "ex:a ex:p \"hello\"@en , \"hallo\"@de-DE , \"x\"@zh-Hant-TW .",
    "typed_literals": EX + XSD + "ex:a ex:p \"5\"^^xsd:integer , \"2020-01-01\"^^xsd:date , \"x\"^^<http://ex.org/dt> .",
    "numbers": EX + "ex:a ex:p 1 , -2 , +3 , 4.5 , -.5 , 1e10 , 1.5E-3 , .5e2 .",
    "integer_before_dot": EX + "ex:a ex:p 42.",
    "booleans": EX + "ex:a ex:p true , false .",
    "local_name_with_dots": EX + "ex:a.b ex:p ex:c.d .",
    "local_name_escape": EX + "ex:a\\-b ex:p ex:c\\~d .",
    "local_name_digits": EX + "ex:123 ex:p ex:4b .",
    "local_name_colon": EX + "ex:a:b ex:p ex:c .",
    "local_name_percent": EX + "ex:a%20b ex:p ex:c .",
    "prefix_with_dot_inside": "@prefix e.x: <http://ex.org/> .\ne.x:a e.x:p e.x:b .",
    "iri_unicode_escape": "<http://ex.org/\\u00E9> <http://ex.org/p> <http://ex.org/b> .",
    "unicode_iri": "<http://ex.org/é> <http://ex.org/p> \"ü\" .",
    "comments_everywhere": EX + "ex:a # c1\n ex:p # c2\n ex:b # c3\n . # c4",
    "prefix_redefinition": EX + "ex:a ex:p ex:b .\n@prefix ex: <http://other.org/> .\nex:a ex:p ex:b .",
    "foaf_people": "@prefix foaf: <http://xmlns.com/foaf/0.1/> .\n@prefix ex: <http://ex.org/> .\n"
    "ex:alice a foaf:Person ; foaf:name \"Alice\" ; foaf:knows ex:bob .\n"
    "ex:bob a foaf:Person ; foaf:name \"Bob\" .",
    "whitespace_free": "@prefix ex:<http://ex.org/>.ex:a ex:p ex:b.",
}

# Literal subjects, blank/literal predicates and spaces inside IRIs are
# grammar violations that rdflib's N3-derived parser accepts, so they are
# covered by the parser's unit tests instead of this oracle corpus.
NEGATIVE = {
    "missing_final_dot": EX + "ex:a ex:p ex:b",
    "undefined_prefix": "ex:a ex:p ex:b .",
    "unterminated_string": EX + "ex:a ex:p \"open .",
    "newline_in_short_string": EX + "ex:a ex:p \"line\nbreak\" .",
    "unclosed_iri": "<http://ex.org/a <http://ex.org/p> <http://ex.org/c> .",
    "prefix_missing_colon": "@prefix ex <http://ex.org/> .\nex:a ex:p ex:b .",
    "prefix_missing_dot": "@prefix ex: <http://ex.org/>\nex:a ex:p ex:b .",
    "semicolon_without_object": EX + "ex:a ex:p ex:b ; ex:c .",
    "comma_then_predicate": EX + "ex:a ex:p ex:b , ex:q ex:c .",
    "unclosed_bnode_list": EX + "ex:a ex:p [ ex:q ex:r .",
    "unclosed_collection": EX + "ex:a ex:p ( ex:b ex:c .",
    "unknown_directive": "@foo <http://ex.org/> .",
    "prose": "hello, the file is correct.",
    "bad_escape": EX + "ex:a ex:p \"bad \\q escape\" .",
    "a_as_object": EX + "ex:a ex:p a .",
    "missing_object": EX + "ex:a ex:p .",
    "two_objects_no_comma": EX + "ex:a ex:p ex:b ex:c .",
    "language_tag_empty": EX + "ex:a ex:p \"x\"@ .",
    "double_caret_missing_datatype": EX + "ex:a ex:p \"x\"^^ .",
}


def verdict(doc):
    g = rdflib.Graph()
    try:
        g.parse(data=doc, format="turtle")
    except Exception as exc:  # noqa: BLE001
        return {"accept": False, "triples": 0, "oracle_error": type(exc).__name__}
    return {"accept": True, "triples": len(g)}


cases = []
for name, doc in POSITIVE.items():
    cases.append({"name": name, "doc": doc, **verdict(doc)})
for name, doc in NEGATIVE.items():
    cases.append({"name": name, "doc": doc, **verdict(doc)})
json.dump({"oracle": f"rdflib {rdflib.__version__}", "cases": cases}, sys.stdout, indent=1, ensure_ascii=False)
sys.stdout.write("\n")
