"""Regenerates literal_values.json.

    python3 literal_values.py > literal_values.json

For each lexical form records rdflib's normalized integer lexical form and a
value key computed with Python's int/Decimal/float, used to check that two
canonical forms coincide exactly when the values do.
"""
import json
import sys
from decimal import Decimal

from rdflib import Literal
from rdflib.namespace import XSD

INTEGERS = ["01", "1", "+1", "-0", "0", "000", "-007", "42", "+0042", "123456789012345678901234567890", "-00123456789012345678901234567890"]
DECIMALS = ["1.0", "01.50", "1.5", "2", "2.", ".5", "0.50", "-0.0", "+3.", "-1.25", "100.000", "0100"]
DOUBLES = ["1e0", "1.0E0", "1", "150", "1.5e2", "1.50E2", "-0.001", "-1e-3", "0", "0.0e5", "1E300", "123.456", "1.23456e2", "2.5E-10"]
BOOLEANS = ["true", "1", "false", "0"]


def key_double(lex):
    return repr(float(lex))


cases = []
for lex in INTEGERS:
    lit = Literal(lex, datatype=XSD.integer, normalize=True)
    cases.append({"lexical": lex, "datatype": str(XSD.integer), "value_key": str(int(lex)), "rdflib_lexical": str(lit)})
for lex in DECIMALS:
    cases.append({"lexical": lex, "datatype": str(XSD.decimal), "value_key": str(Decimal(lex).normalize() + 0)})
for lex in DOUBLES:
    cases.append({"lexical": lex, "datatype": str(XSD.double), "value_key": key_double(lex)})
for lex in BOOLEANS:
    cases.append({"lexical": lex, "datatype": str(XSD.boolean), "value_key": str(lex in ("true", "1")).lower()})
json.dump(cases, sys.stdout, indent=1)
sys.stdout.write("\n")
