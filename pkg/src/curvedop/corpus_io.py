"""Bundle documents: a JSON format for spaces, maps and claims.

A bundle looks like::

    {
      "ring": {"field": "Q", "parameters": ["p"]},
      "spaces": {"A": ["e1", "e2"], "V": ["v1"]},
      "bilinear": {"mu": {"left": "A", "right": "A", "target": "A",
                          "entries": [{"row": "e1", "col": "e1", "out": {"e1": "1"}}]}},
      "linear": {"R": {"source": "V", "target": "A", "columns": {"v1": {"e2": "p"}}}},
      "elements": {"one": {"space": "A", "coords": {"e1": "1"}}},
      "claims": [{"kind": "curved_oos", "bind": {"mu": "mu", "R": "R"}, "expect": "holds"}],
      "meta": {"id": "...", "citation": "...", "note": "..."}
    }

Missing entries are zero.  Every scalar is a polynomial string.  Unknown keys,
duplicate keys, dangling references and bad polynomials are rejected with the
location of the offending item.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any

import jsonschema

from .coeff import Field, ParseError, Poly, Ring, is_prime, MAX_PRIME
from .multilinear import BilMap, LinMap, Space, ShapeError
from .structures import Report, Verdict


class BundleError(ValueError):
    """A bundle document is malformed; ``location`` points at the offending item."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


_POLY = {"type": "string"}
_NAME = {"type": "string", "minLength": 1}
_POLYMAP = {"type": "object", "additionalProperties": _POLY}

SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["ring", "spaces"],
    "properties": {
        "ring": {
            "type": "object",
            "additionalProperties": False,
            "required": ["field"],
            "properties": {
                "field": {"type": "string", "pattern": "^(Q|F[0-9]+)$"},
                "parameters": {"type": "array", "items": {"type": "string",
                                                          "pattern": "^[A-Za-z_][A-Za-z0-9_]*$"},
                               "uniqueItems": True},
            },
        },
        "spaces": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": _NAME, "minItems": 1, "uniqueItems": True},
        },
        "bilinear": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": False,
                "required": ["left", "right", "target"],
                "properties": {
                    "left": _NAME, "right": _NAME, "target": _NAME,
                    "entries": {"type": "array", "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["row", "col", "out"],
                        "properties": {"row": _NAME, "col": _NAME, "out": _POLYMAP},
                    }},
                },
            },
        },
        "linear": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": False,
                "required": ["source", "target"],
                "properties": {
                    "source": _NAME, "target": _NAME,
                    "columns": {"type": "object", "additionalProperties": _POLYMAP},
                },
            },
        },
        "elements": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "additionalProperties": False,
                "required": ["space"],
                "properties": {"space": _NAME, "coords": _POLYMAP},
            },
        },
        "claims": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["kind", "bind"],
                "properties": {
                    "id": _NAME,
                    "kind": _NAME,
                    "bind": {"type": "object", "additionalProperties": _NAME},
                    "scalars": _POLYMAP,
                    "expect": {"oneOf": [
                        {"enum": ["holds", "fails"]},
                        {"type": "object", "additionalProperties": False, "required": ["conditional"],
                         "properties": {"conditional": {"type": "array", "items": _POLY}}},
                    ]},
                    "note": {"type": "string"},
                },
            },
        },
        "meta": {
            "type": "object",
            "additionalProperties": False,
            "properties": {"id": {"type": "string"}, "citation": {"type": "string"},
                           "note": {"type": "string"}},
        },
    },
}

_VALIDATOR = jsonschema.Draft202012Validator(SCHEMA)


@dataclass(frozen=True)
class Expect:
    verdict: Verdict
    constraints: tuple[str, ...] = ()

    def matches(self, report: Report) -> bool:
        if report.verdict is not self.verdict:
            return False
        if self.verdict is Verdict.CONDITIONAL:
            return tuple(sorted(self.constraints)) == tuple(sorted(str(c) for c in report.constraints))
        return True

    def to_json(self):
        if self.verdict is Verdict.CONDITIONAL:
            return {"conditional": list(self.constraints)}
        return self.verdict.value

    @classmethod
    def from_report(cls, report: Report) -> "Expect":
        if report.verdict is Verdict.CONDITIONAL:
            return cls(Verdict.CONDITIONAL, tuple(str(c) for c in report.constraints))
        return cls(report.verdict)


@dataclass(frozen=True)
class Claim:
    kind: str
    bind: dict
    expect: Expect | None = None
    scalars: dict = field(default_factory=dict)  # name -> Poly
    id: str | None = None
    note: str | None = None

    def label(self, index: int) -> str:
        return self.id or f"#{index + 1} {self.kind}"


@dataclass(frozen=True)
class Bundle:
    ring: Ring
    spaces: dict
    bilinear: dict = field(default_factory=dict)
    linear: dict = field(default_factory=dict)
    elements: dict = field(default_factory=dict)  # name -> (space name, vector)
    claims: tuple = ()
    meta: dict | None = None

    def space(self, name: str) -> Space:
        try:
            return self.spaces[name]
        except KeyError:
            raise BundleError(f"unknown space {name!r}") from None

    def lookup(self, name: str):
        """Map or element by name (bilinear, then linear, then elements)."""
        if name in self.bilinear:
            return self.bilinear[name]
        if name in self.linear:
            return self.linear[name]
        if name in self.elements:
            return self.elements[name][1]
        raise BundleError(f"no map or element named {name!r}")

    def with_maps(self, *, bilinear=None, linear=None, spaces=None, claims=None, meta=None,
                  ring=None) -> "Bundle":
        """A copy with extra/replaced maps and spaces; ``claims`` replaces the claim list."""
        return replace(
            self,
            ring=ring or self.ring,
            spaces={**self.spaces, **(spaces or {})},
            bilinear={**self.bilinear, **(bilinear or {})},
            linear={**self.linear, **(linear or {})},
            claims=tuple(claims) if claims is not None else self.claims,
            meta=meta if meta is not None else self.meta,
        )

    def to_ring(self, ring: Ring) -> "Bundle":
        """Move every scalar into ``ring`` (parameters matched by name)."""
        conv = lambda a: a.to_ring(ring)  # noqa: E731
        return Bundle(
            ring,
            dict(self.spaces),
            {n: b.map_entries(conv, ring) for n, b in self.bilinear.items()},
            {n: f.map_entries(conv, ring) for n, f in self.linear.items()},
            {n: (s, tuple(conv(a) for a in v)) for n, (s, v) in self.elements.items()},
            tuple(replace(c, scalars={k: conv(v) for k, v in c.scalars.items()}) for c in self.claims),
            self.meta,
        )


# -- parsing ------------------------------------------------------------------------------------------


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise BundleError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _loc(path) -> str:
    out = ""
    for p in path:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out or "<root>"


def parse_bundle(text: str) -> Bundle:
    try:
        doc = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as e:
        raise BundleError(e.msg, f"line {e.lineno} column {e.colno}") from None
    return bundle_from_dict(doc)


def load_bundle(path) -> Bundle:
    with open(path, encoding="utf-8") as fh:
        return parse_bundle(fh.read())


def bundle_from_dict(doc: Any) -> Bundle:
    errors = sorted(_VALIDATOR.iter_errors(doc), key=lambda e: list(map(str, e.absolute_path)))
    if errors:
        e = errors[0]
        raise BundleError(e.message, _loc(e.absolute_path))
    try:
        fld = Field.from_string(doc["ring"]["field"])
    except ValueError as e:
        raise BundleError(str(e), "ring.field") from None
    ring = Ring(fld, doc["ring"].get("parameters", []))
    spaces = {name: Space(name, basis) for name, basis in doc["spaces"].items()}

    def poly(text, where):
        try:
            return ring.parse(text)
        except ParseError as e:
            raise BundleError(str(e), where) from None

    def space(name, where):
        if name not in spaces:
            raise BundleError(f"unknown space {name!r}", where)
        return spaces[name]

    def label(sp, lab, where):
        if lab not in sp.basis:
            raise BundleError(f"{lab!r} is not a basis label of {sp.name}", where)
        return sp.basis.index(lab)

    def vector(sp, coords, where):
        vec = [ring.zero] * sp.dim
        for lab, text in coords.items():
            vec[label(sp, lab, where)] = poly(text, f"{where}.{lab}")
        return tuple(vec)

    bilinear = {}
    for name, spec in doc.get("bilinear", {}).items():
        at = f"bilinear.{name}"
        L, Rt, T = (space(spec[k], f"{at}.{k}") for k in ("left", "right", "target"))
        tensor = [[tuple([ring.zero] * T.dim) for _ in range(Rt.dim)] for _ in range(L.dim)]
        seen = set()
        for n, ent in enumerate(spec.get("entries", [])):
            where = f"{at}.entries[{n}]"
            i = label(L, ent["row"], where + ".row")
            j = label(Rt, ent["col"], where + ".col")
            if (i, j) in seen:
                raise BundleError(f"entry ({ent['row']}, {ent['col']}) given twice", where)
            seen.add((i, j))
            tensor[i][j] = vector(T, ent["out"], where + ".out")
        bilinear[name] = BilMap(L, Rt, T, tensor, ring)

    linear = {}
    for name, spec in doc.get("linear", {}).items():
        at = f"linear.{name}"
        S, T = space(spec["source"], at + ".source"), space(spec["target"], at + ".target")
        cols = [tuple([ring.zero] * T.dim) for _ in range(S.dim)]
        for lab, coords in spec.get("columns", {}).items():
            cols[label(S, lab, f"{at}.columns")] = vector(T, coords, f"{at}.columns.{lab}")
        linear[name] = LinMap.from_columns(S, T, cols, ring)

    clash = (set(bilinear) & set(linear)) | (set(bilinear) & set(doc.get("elements", {}))) \
        | (set(linear) & set(doc.get("elements", {})))
    if clash:
        raise BundleError(f"name(s) used twice: {', '.join(sorted(clash))}")

    elements = {}
    for name, spec in doc.get("elements", {}).items():
        at = f"elements.{name}"
        sp = space(spec["space"], at + ".space")
        elements[name] = (sp.name, vector(sp, spec.get("coords", {}), at + ".coords"))

    claims = []
    for n, c in enumerate(doc.get("claims", [])):
        where = f"claims[{n}]"
        scalars = {k: poly(v, f"{where}.scalars.{k}") for k, v in c.get("scalars", {}).items()}
        expect = None
        if "expect" in c:
            e = c["expect"]
            if isinstance(e, str):
                expect = Expect(Verdict(e))
            else:
                for k, t in enumerate(e["conditional"]):
                    poly(t, f"{where}.expect.conditional[{k}]")
                expect = Expect(Verdict.CONDITIONAL, tuple(e["conditional"]))
        claims.append(Claim(c["kind"], dict(c["bind"]), expect, scalars, c.get("id"), c.get("note")))

    bundle = Bundle(ring, spaces, bilinear, linear, elements, tuple(claims), doc.get("meta"))
    from .claims import validate_claim

    for n, c in enumerate(claims):
        try:
            validate_claim(bundle, c)
        except (BundleError, ShapeError, ValueError) as e:
            raise BundleError(str(e), f"claims[{n}]") from None
    return bundle


# -- serialization -------------------------------------------------------------------------------------


def _coords(sp: Space, vec) -> dict:
    return {lab: str(a) for lab, a in zip(sp.basis, vec) if a.terms}


def bundle_to_dict(b: Bundle) -> dict:
    """Canonical dict: names sorted, entries in basis order, zeros omitted."""
    doc: dict[str, Any] = {"ring": {"field": str(b.ring.field), "parameters": list(b.ring.params)}}
    doc["spaces"] = {n: list(b.spaces[n].basis) for n in sorted(b.spaces)}
    bil = {}
    for n in sorted(b.bilinear):
        m = b.bilinear[n]
        entries = []
        for i, li in enumerate(m.left.basis):
            for j, rj in enumerate(m.right.basis):
                out = _coords(m.target, m.tensor[i][j])
                if out:
                    entries.append({"row": li, "col": rj, "out": out})
        bil[n] = {"left": m.left.name, "right": m.right.name, "target": m.target.name, "entries": entries}
    doc["bilinear"] = bil
    lin = {}
    for n in sorted(b.linear):
        f = b.linear[n]
        cols = {}
        for j, lab in enumerate(f.source.basis):
            c = _coords(f.target, f.column(j))
            if c:
                cols[lab] = c
        lin[n] = {"source": f.source.name, "target": f.target.name, "columns": cols}
    doc["linear"] = lin
    doc["elements"] = {n: {"space": b.elements[n][0],
                           "coords": _coords(b.spaces[b.elements[n][0]], b.elements[n][1])}
                       for n in sorted(b.elements)}
    claims = []
    for c in b.claims:
        d: dict[str, Any] = {}
        if c.id:
            d["id"] = c.id
        d["kind"] = c.kind
        d["bind"] = {k: c.bind[k] for k in sorted(c.bind)}
        if c.scalars:
            d["scalars"] = {k: str(c.scalars[k]) for k in sorted(c.scalars)}
        if c.expect is not None:
            d["expect"] = c.expect.to_json()
        if c.note:
            d["note"] = c.note
        claims.append(d)
    doc["claims"] = claims
    if b.meta:
        doc["meta"] = {k: b.meta[k] for k in ("id", "citation", "note") if k in b.meta}
    return doc


def serialize_bundle(b: Bundle) -> str:
    return json.dumps(bundle_to_dict(b), indent=2, ensure_ascii=False) + "\n"


def canonicalize(text: str) -> str:
    return serialize_bundle(parse_bundle(text))


def field_for(p: int) -> Field:
    if not is_prime(p) or p > MAX_PRIME:
        raise ValueError(f"{p} is not a prime ≤ {MAX_PRIME}")
    return Field.gf(p)
