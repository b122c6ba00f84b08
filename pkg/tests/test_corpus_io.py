import json

import pytest
from hypothesis import given
from hypothesis import strategies as hs

from curvedop.corpus import corpus, lookup
from curvedop.corpus_io import (
    BundleError, bundle_from_dict, bundle_to_dict, canonicalize, parse_bundle, serialize_bundle,
)
from curvedop.claims import run_claims

MINIMAL = {
    "ring": {"field": "Q", "parameters": []},
    "spaces": {"K": ["k"]},
    "bilinear": {"m": {"left": "K", "right": "K", "target": "K", "entries": []}},
    "claims": [{"kind": "associativity", "bind": {"mu": "m"}}],
}


def _doc(**changes):
    doc = json.loads(json.dumps(MINIMAL))
    doc.update(changes)
    return doc


def test_minimal_bundle_holds():
    b = parse_bundle(json.dumps(MINIMAL))
    [(_, _, rep)] = run_claims(b)
    assert rep.holds


def test_unknown_key_rejected():
    with pytest.raises(BundleError) as e:
        bundle_from_dict(_doc(extra=1))
    assert "extra" in str(e.value)


def test_undeclared_parameter_reports_location():
    doc = _doc(ring={"field": "Q", "parameters": ["p"]})
    doc["bilinear"]["m"]["entries"] = [{"row": "k", "col": "k", "out": {"k": "p + q"}}]
    with pytest.raises(BundleError) as e:
        bundle_from_dict(doc)
    assert e.value.location == "bilinear.m.entries[0].out.k"


@pytest.mark.parametrize("mutate,where", [
    (lambda d: d["bilinear"]["m"].update(left="Nope"), "bilinear.m"),
    (lambda d: d["claims"][0]["bind"].update(mu="missing"), "claims[0]"),
    (lambda d: d["claims"][0].update(kind="flying_saucer"), "claims[0]"),
    (lambda d: d["claims"][0]["bind"].pop("mu"), "claims[0]"),
    (lambda d: d["bilinear"]["m"]["entries"].append({"row": "z", "col": "k", "out": {}}), "bilinear.m.entries[0]"),
    (lambda d: d["ring"].update(field="F4"), "ring"),
])
def test_bad_references_have_locations(mutate, where):
    doc = _doc()
    mutate(doc)
    with pytest.raises(BundleError) as e:
        bundle_from_dict(doc)
    assert e.value.location.startswith(where)


def test_json_syntax_error_has_line_and_column():
    with pytest.raises(BundleError) as e:
        parse_bundle('{\n  "ring": ,\n}')
    assert "line 2" in str(e.value)


def test_duplicate_keys_rejected():
    with pytest.raises(BundleError):
        parse_bundle('{"ring": {"field": "Q", "parameters": []}, "ring": {"field": "Q", "parameters": []}}')


def test_corpus_entry_round_trips_byte_identically():
    text = serialize_bundle(lookup("ex2.3/f1/e1").bundle)
    assert canonicalize(text) == text
    assert serialize_bundle(parse_bundle(text)) == text


def test_serializer_sorts_names_and_omits_zeros():
    doc = _doc()
    doc["bilinear"]["z"] = {"left": "K", "right": "K", "target": "K",
                            "entries": [{"row": "k", "col": "k", "out": {"k": "0"}}]}
    out = bundle_to_dict(bundle_from_dict(doc))
    assert list(out["bilinear"]) == ["m", "z"]
    assert out["bilinear"]["z"]["entries"] == []


@pytest.mark.parametrize("entry", corpus(), ids=lambda e: e.id)
def test_every_corpus_bundle_round_trips(entry):
    text = serialize_bundle(entry.bundle)
    back = parse_bundle(text)
    assert back == entry.bundle
    assert serialize_bundle(back) == text


@given(hs.sampled_from(corpus()), hs.permutations(range(3)))
def test_key_order_does_not_matter(entry, perm):
    doc = bundle_to_dict(entry.bundle)
    keys = list(doc)
    shuffled = {k: doc[k] for k in (keys[i] for i in perm if i < len(keys))}
    shuffled.update(doc)
    assert serialize_bundle(bundle_from_dict(shuffled)) == serialize_bundle(entry.bundle)
