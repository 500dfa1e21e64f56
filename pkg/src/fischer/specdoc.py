"""Shift-family documents.

A document is a mapping (YAML or JSON text) with a ``family`` key::

    family: sft       alphabet: "01" | [names...]   forbidden: ["11", ...]
    family: dyck      n: 2
    family: sgap      gaps: pow2 | [1, 2, 5]
    family: beta      digits: fig3 | "22102..."
    family: product   left: <document>   right: <document>
    family: star      inner: <document>

Unknown keys are rejected.  Command-line shorthands (``dyck:2``,
``sgap:pow2``, ``sgap:1,3``, ``beta:fig3``, ``beta:2210``, ``golden``,
``sft:01:11``, ``star:<shorthand>``) map onto the same documents.
"""

from __future__ import annotations

import yaml

from .shifts import (SFT, Alphabet, Beta, Dyck, SampleBetaDigits, FiniteGapSet, LiteralDigits,
                     PowersOfTwo, Product, SGap, ShiftSpec, SpecError, Star, golden_mean)

_KEYS = {
    "sft": {"alphabet", "forbidden"},
    "dyck": {"n"},
    "sgap": {"gaps"},
    "beta": {"digits"},
    "product": {"left", "right"},
    "star": {"inner"},
}


def _gaps(value):
    if value == "pow2":
        return PowersOfTwo()
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    try:
        return FiniteGapSet(int(v) for v in value)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"bad gaps value {value!r}") from exc


def _digits(value):
    if value == "fig3":
        return SampleBetaDigits()
    return LiteralDigits(str(value))


def from_doc(doc) -> ShiftSpec:
    """Build a :class:`ShiftSpec` from a parsed document."""
    if isinstance(doc, str):
        return from_shorthand(doc)
    if not isinstance(doc, dict):
        raise SpecError(f"spec document must be a mapping, got {type(doc).__name__}")
    family = doc.get("family")
    if family not in _KEYS:
        raise SpecError(f"unknown family {family!r}")
    extra = set(doc) - _KEYS[family] - {"family"}
    if extra:
        raise SpecError(f"unknown keys for family {family}: {sorted(extra)}")
    missing = _KEYS[family] - set(doc)
    if missing:
        raise SpecError(f"missing keys for family {family}: {sorted(missing)}")
    if family == "sft":
        names = doc["alphabet"]
        alphabet = Alphabet(tuple(names) if isinstance(names, (list, tuple)) else tuple(str(names)))
        forbidden = frozenset(alphabet.parse(str(w)) for w in doc["forbidden"])
        return SFT(alphabet, forbidden)
    if family == "dyck":
        try:
            return Dyck(int(doc["n"]))
        except (TypeError, ValueError) as exc:
            raise SpecError(f"bad n {doc['n']!r}") from exc
    if family == "sgap":
        return SGap(_gaps(doc["gaps"]))
    if family == "beta":
        return Beta(_digits(doc["digits"]))
    if family == "product":
        return Product(from_doc(doc["left"]), from_doc(doc["right"]))
    return Star(from_doc(doc["inner"]))


def loads(text: str) -> ShiftSpec:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SpecError(f"unparseable spec document: {exc}") from exc
    return from_doc(doc)


def load(path) -> ShiftSpec:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dumps(spec: ShiftSpec) -> str:
    return yaml.safe_dump(spec.to_doc(), sort_keys=True)


def from_shorthand(text: str) -> ShiftSpec:
    text = text.strip()
    if text == "golden":
        return golden_mean()
    family, _, rest = text.partition(":")
    if family == "star":
        return Star(from_shorthand(rest))
    if family == "dyck":
        return from_doc({"family": "dyck", "n": rest})
    if family == "sgap":
        return from_doc({"family": "sgap", "gaps": rest})
    if family == "beta":
        return from_doc({"family": "beta", "digits": rest})
    if family == "sft":
        letters, _, forb = rest.partition(":")
        return from_doc({"family": "sft", "alphabet": letters,
                         "forbidden": [w for w in forb.split(",") if w]})
    raise SpecError(f"unknown shorthand {text!r}")
