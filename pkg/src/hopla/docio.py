"""The JSON algebra-description format.

A document carries a basis with degrees, a degree-convention tag, and the
structure constants of a family of operations.  Coefficients travel as
"p/q" strings so exactness survives the wire; JSON numbers are rejected.

    {
      "format": "hopla-algebra/1",
      "space": {"basis": [{"label": "e", "degree": 0}, ...]},
      "convention": "unhat",
      "max_arity": 3,
      "declared_type": {"name": "assoc_n", "n": 2},        // optional
      "operations": [
        {"arity": 2,
         "entries": [
           {"inputs": ["e", "t"],
            "output": [{"label": "t", "coeff": "1"}]}
         ]}
      ]
    }

`serialize_document` writes entries in a canonical sorted order, so
parse o serialize is the identity on canonicalized documents and derived
documents diff cleanly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DocumentError
from .graded import (HAT, UNHAT, GradedSpace, LinearCombination, Operation,
                     OperationFamily, family_degree)

FORMAT = "hopla-algebra/1"

DECLARED_TYPES = ("a_infinity", "pl_infinity", "l_infinity",
                  "assoc_n", "prelie_n", "lie_n")

_RATIONAL = re.compile(r"^(-?\d+)(?:/(-?\d+))?$")


def parse_rational(text, path: str = "") -> Fraction:
    if not isinstance(text, str):
        raise DocumentError(f"coefficient must be a 'p/q' string, got {text!r}", path)
    m = _RATIONAL.match(text.strip())
    if not m:
        raise DocumentError(f"malformed rational {text!r}", path)
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) is not None else 1
    if q == 0:
        raise DocumentError(f"malformed rational {text!r}: zero denominator", path)
    return Fraction(p, q)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass
class AlgebraDocument:
    family: OperationFamily
    declared_type: tuple | None = None  # (name, n or None)

    @property
    def space(self) -> GradedSpace:
        return self.family.space

    @property
    def convention(self) -> str:
        return self.family.convention


def _expect(mapping, key, path):
    if not isinstance(mapping, dict):
        raise DocumentError("expected an object", path)
    if key not in mapping:
        raise DocumentError(f"missing field {key!r}", path)
    return mapping[key]


def parse_document(text) -> AlgebraDocument:
    """Parse and validate a document; raises DocumentError with a JSON-path
    location on any defect."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None

    fmt = _expect(raw, "format", "")
    if fmt != FORMAT:
        raise DocumentError(f"unsupported format {fmt!r} (expected {FORMAT!r})", "format")

    basis = _expect(_expect(raw, "space", ""), "basis", "space")
    if not isinstance(basis, list) or not basis:
        raise DocumentError("basis must be a non-empty list", "space.basis")
    labels, degrees = [], []
    for idx, entry in enumerate(basis):
        path = f"space.basis[{idx}]"
        label = _expect(entry, "label", path)
        degree = _expect(entry, "degree", path)
        if not isinstance(label, str):
            raise DocumentError("label must be a string", path + ".label")
        if not isinstance(degree, int) or isinstance(degree, bool):
            raise DocumentError("degree must be an integer", path + ".degree")
        if label in labels:
            raise DocumentError(f"duplicate basis label {label!r}", path + ".label")
        labels.append(label)
        degrees.append(degree)
    sp = GradedSpace(tuple(labels), tuple(degrees))

    convention = _expect(raw, "convention", "")
    if convention not in (HAT, UNHAT):
        raise DocumentError(f"convention must be 'hat' or 'unhat', got {convention!r}", "convention")

    operations = raw.get("operations", [])
    if not isinstance(operations, list):
        raise DocumentError("operations must be a list", "operations")

    ops = {}
    seen_arities = set()
    for oi, opdoc in enumerate(operations):
        opath = f"operations[{oi}]"
        arity = _expect(opdoc, "arity", opath)
        if not isinstance(arity, int) or arity < 1:
            raise DocumentError("arity must be a positive integer", opath + ".arity")
        if arity in seen_arities:
            raise DocumentError(f"duplicate operation at arity {arity}", opath + ".arity")
        seen_arities.add(arity)
        entries = _expect(opdoc, "entries", opath)
        if not isinstance(entries, list):
            raise DocumentError("entries must be a list", opath + ".entries")
        table = {}
        for ei, entry in enumerate(entries):
            epath = f"{opath}.entries[{ei}]"
            inputs = _expect(entry, "inputs", epath)
            if not isinstance(inputs, list) or len(inputs) != arity:
                raise DocumentError(f"inputs must list exactly {arity} labels", epath + ".inputs")
            word = []
            for li, label in enumerate(inputs):
                if not isinstance(label, str) or label not in labels:
                    raise DocumentError(f"unknown label {label!r}", f"{epath}.inputs[{li}]")
                word.append(sp.index(label))
            word = tuple(word)
            if word in table:
                raise DocumentError(f"duplicate entry for inputs {inputs}", epath + ".inputs")
            output = _expect(entry, "output", epath)
            if not isinstance(output, list):
                raise DocumentError("output must be a list", epath + ".output")
            combo = {}
            for ti, term in enumerate(output):
                tpath = f"{epath}.output[{ti}]"
                label = _expect(term, "label", tpath)
                if not isinstance(label, str) or label not in labels:
                    raise DocumentError(f"unknown label {label!r}", tpath + ".label")
                coeff = parse_rational(_expect(term, "coeff", tpath), tpath + ".coeff")
                out = sp.index(label)
                combo[out] = combo.get(out, Fraction(0)) + coeff
            table[word] = LinearCombination(combo)
        op = Operation(sp, arity, family_degree(convention, arity), table)
        if not op.is_zero():
            ops[arity] = op

    max_arity = raw.get("max_arity", max(seen_arities, default=1))
    if not isinstance(max_arity, int) or max_arity < 1:
        raise DocumentError("max_arity must be a positive integer", "max_arity")
    if seen_arities and max_arity < max(seen_arities):
        raise DocumentError(
            f"max_arity {max_arity} is below the largest operation arity {max(seen_arities)}",
            "max_arity")

    declared = raw.get("declared_type")
    declared_type = None
    if declared is not None:
        name = _expect(declared, "name", "declared_type")
        if name not in DECLARED_TYPES:
            raise DocumentError(f"unknown declared type {name!r}", "declared_type.name")
        n = declared.get("n")
        if name.endswith("_n"):
            if not isinstance(n, int) or n < 1:
                raise DocumentError(f"declared type {name!r} requires a positive 'n'",
                                    "declared_type.n")
        elif n is not None:
            raise DocumentError(f"declared type {name!r} takes no 'n'", "declared_type.n")
        declared_type = (name, n)

    family = OperationFamily(convention, sp, max_arity, ops)
    return AlgebraDocument(family, declared_type)


def serialize_document(doc: AlgebraDocument) -> str:
    sp = doc.space
    operations = []
    for arity in doc.family.arities():
        op = doc.family.ops[arity]
        entries = []
        for word in sorted(op.table):
            combo = op.table[word]
            output = [{"label": sp.labels[out], "coeff": format_rational(c)}
                      for out, c in sorted(combo, key=lambda t: t[0])]
            entries.append({"inputs": [sp.labels[i] for i in word], "output": output})
        operations.append({"arity": arity, "entries": entries})
    raw = {
        "format": FORMAT,
        "space": {"basis": [{"label": l, "degree": d}
                            for l, d in zip(sp.labels, sp.degrees)]},
        "convention": doc.convention,
        "max_arity": doc.family.max_arity,
        "operations": operations,
    }
    if doc.declared_type is not None:
        name, n = doc.declared_type
        raw["declared_type"] = {"name": name} if n is None else {"name": name, "n": n}
    return json.dumps(raw, indent=2) + "\n"


def document_from_family(family: OperationFamily,
                         declared_type: tuple | None = None) -> AlgebraDocument:
    return AlgebraDocument(family, declared_type)
