"""Embedded regression corpus and search templates."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .corpus_io import Bundle, bundle_from_dict

ALGEBRA_2D = {  # e1e1 = e1, e1e2 = e2e1 = e2e2 = e2
    "left": "A", "right": "A", "target": "A",
    "entries": [
        {"row": "e1", "col": "e1", "out": {"e1": "1"}},
        {"row": "e1", "col": "e2", "out": {"e2": "1"}},
        {"row": "e2", "col": "e1", "out": {"e2": "1"}},
        {"row": "e2", "col": "e2", "out": {"e2": "1"}},
    ],
}

CURVED_BIND = {"mu": "mu", "left": "left", "right": "right", "R": "R", "S": "S", "omega": "omega"}


def _action(kind: str, pairs: dict, vspace="V") -> dict:
    """``pairs`` maps (algebra label, module label) to the image coords."""
    if kind == "left":
        head = {"left": "A", "right": vspace, "target": vspace}
        entries = [{"row": a, "col": v, "out": out} for (a, v), out in pairs.items()]
    else:
        head = {"left": vspace, "right": "A", "target": vspace}
        entries = [{"row": v, "col": a, "out": out} for (a, v), out in pairs.items()]
    return {**head, "entries": entries}


BIMODULE_1 = {"left": _action("left", {("e1", "v1"): {"v1": "1"}}), "right": _action("right", {})}
BIMODULE_2 = {
    "left": _action("left", {("e1", "v1"): {"v1": "1"}, ("e2", "v1"): {"v1": "1"}}),
    "right": _action("right", {("e1", "v1"): {"v1": "1"}, ("e2", "v1"): {"v1": "1"}}),
}
_V2 = {(a, v): {v: "1"} for a in ("e1", "e2") for v in ("v1", "v2")}
BIMODULE_3 = {"left": _action("left", _V2), "right": _action("right", _V2)}

E1, E2, E12 = {"e1": "p"}, {"e2": "p"}, {"e1": "p", "e2": "-p"}
ZERO = {}

F1_CURVED = [(ZERO, E1), (ZERO, E2), (ZERO, E12), (E2, ZERO), (E2, E2), (E2, E1), (E2, E12)]
F1_OOS = [(E1, ZERO), (E1, E2), (E1, E1), (E1, E12), (E12, ZERO), (E12, E2), (E12, E1), (E12, E12)]
F2_CURVED = [(ZERO, E12, "p"), (E2, E2, "-p"), (E2, E1, "-p"), (E1, E2, "-p"), (E1, E1, "-p"),
             (E12, ZERO, "p"), (E12, E12, "p")]


def _lin(source, target, columns):
    return {"source": source, "target": target, "columns": {k: v for k, v in columns.items() if v}}


def _ex23(bimodule, R, S, omega, kind, params=("p",)):
    bil = {"mu": ALGEBRA_2D, **bimodule}
    bind = dict(CURVED_BIND)
    if omega is None:
        bind.pop("omega")
    else:
        bil["omega"] = {"left": "V", "right": "V", "target": "V",
                        "entries": [{"row": "v1", "col": "v1", "out": {"v1": omega}}]}
    return {
        "ring": {"field": "Q", "parameters": list(params)},
        "spaces": {"A": ["e1", "e2"], "V": ["v1"]},
        "bilinear": bil,
        "linear": {"R": _lin("V", "A", {"v1": R}), "S": _lin("V", "A", {"v1": S})},
        "claims": [{"kind": kind, "bind": bind, "expect": "holds"}],
    }


def _ex23_2dim():
    omega = {"left": "V", "right": "V", "target": "V", "entries": [
        {"row": "v1", "col": "v1", "out": {"v1": "p2"}},
        {"row": "v1", "col": "v2", "out": {"v1": "-p1"}},
        {"row": "v2", "col": "v1", "out": {"v1": "-p1"}},
        {"row": "v2", "col": "v2", "out": {"v2": "-p1"}},
    ]}
    return {
        "ring": {"field": "Q", "parameters": ["p1", "p2"]},
        "spaces": {"A": ["e1", "e2"], "V": ["v1", "v2"]},
        "bilinear": {"mu": ALGEBRA_2D, **BIMODULE_3, "omega": omega},
        "linear": {"R": _lin("V", "A", {"v2": {"e1": "p1"}}),
                   "S": _lin("V", "A", {"v1": {"e1": "p2", "e2": "-p2"}, "v2": {"e2": "p1"}})},
        "claims": [{"kind": "curved_oos", "bind": dict(CURVED_BIND), "expect": "holds"}],
    }


DIAMOND_34A = {"left": "A", "right": "A", "target": "A", "entries": [
    {"row": "e1", "col": "e1", "out": {"e1": "a - b", "e2": "b"}},
    {"row": "e1", "col": "e2", "out": {"e2": "a"}},
    {"row": "e2", "col": "e1", "out": {"e2": "a"}},
    {"row": "e2", "col": "e2", "out": {"e2": "a"}},
]}

R_34A = [
    ({"e1": "b - a"}, {}),
    ({"e1": "-a"}, {"e1": "-a"}),
    ({"e2": "-b"}, {"e2": "-a"}),
    ({"e1": "b", "e2": "-b"}, {"e1": "a", "e2": "-a"}),
    ({"e1": "b - a", "e2": "-b"}, {"e2": "-a"}),
    ({"e2": "-a"}, {"e2": "-a"}),
    ({"e1": "b - a", "e2": "-a"}, {"e2": "-a"}),
    ({"e1": "a", "e2": "-a"}, {"e1": "a", "e2": "-a"}),
    ({"e2": "a - b"}, {}),
    ({"e1": "b - 2*a", "e2": "a - b"}, {"e1": "-a"}),
    ({"e1": "b - a", "e2": "a - b"}, {}),
]


def _ex34a(R):
    return {
        "ring": {"field": "Q", "parameters": ["a", "b"]},
        "spaces": {"A": ["e1", "e2"]},
        "bilinear": {"mu": ALGEBRA_2D, "nu": DIAMOND_34A},
        "linear": {"R": _lin("A", "A", {"e1": R[0], "e2": R[1]})},
        "claims": [
            {"kind": "compatible_pair", "bind": {"mu": "mu", "nu": "nu"}, "expect": "holds"},
            {"kind": "generalized_rb", "bind": {"mu": "mu", "nu": "nu", "R": "R"}, "expect": "holds"},
        ],
    }


EX310_PARAMS = ["b_21_1", "b_22_1", "c_11_1", "c_11_2", "c_12_1", "c_12_2"]

# Machine-computed residual constraints of the family as printed (it is not identically a system).
EX310_DCRBS = [
    "1",
    "b_21_1",
    "b_22_1",
    "c_11_1",
    "c_12_1",
    "2*c_11_2 - 2*c_12_2",
    "c_11_2 - c_12_2 - 1",
    "2*c_11_2^2 - 2*c_11_2",
    "b_21_1*c_11_2 + 2*c_11_2 - 2",
    "b_22_1*c_11_2 + 2*c_11_2 - 2*c_12_2",
    "c_11_2*c_12_2 - c_12_2^2 - c_12_2",
    "c_11_2^2 - c_11_2*c_12_2 - c_11_2",
]
EX310_EQ37 = [
    "1",
    "b_21_1",
    "b_22_1",
    "c_11_1",
    "c_12_1",
    "c_11_2 - c_12_2 + 1",
    "c_11_2^2",
    "c_11_2^2 - c_11_2 + c_12_2",
    "b_21_1*c_11_2 + c_11_1 + 2*c_11_2 - 1",
    "b_22_1*c_11_2 + c_11_2 - c_12_2 + 2",
    "b_22_1*c_11_2 - b_22_1 + c_11_2 - c_12_2 + 1",
    "b_21_1*c_11_2 - b_21_1 + c_11_2 + c_12_1 + c_12_2 - 1",
]


def _ex310(dcrbs_expect, eq37_expect):
    dcrbs_bind = {"mu": "mu", "R": "R", "S": "S", "omega1": "omega1", "omega2": "omega2"}
    return {
        "ring": {"field": "Q", "parameters": EX310_PARAMS},
        "spaces": {"A": ["e1", "e2"]},
        "bilinear": {
            "mu": ALGEBRA_2D,
            "omega1": {"left": "A", "right": "A", "target": "A", "entries": [
                {"row": "e1", "col": "e1", "out": {"e2": "c_11_2 - c_11_2^2"}},
                {"row": "e1", "col": "e2", "out": {"e2": "c_12_2 - c_11_2"}},
                {"row": "e2", "col": "e1", "out": {"e1": "b_21_1", "e2": "1 - c_11_2 - b_21_1*c_11_2"}},
                {"row": "e2", "col": "e2", "out": {"e1": "b_22_1",
                                                   "e2": "c_12_2 - c_11_2 - b_22_1*c_11_2"}},
            ]},
            "omega2": {"left": "A", "right": "A", "target": "A", "entries": [
                {"row": "e1", "col": "e1", "out": {"e1": "c_11_1", "e2": "c_11_2"}},
                {"row": "e1", "col": "e2", "out": {"e1": "c_12_1", "e2": "c_12_2"}},
                {"row": "e2", "col": "e1", "out": {"e1": "1", "e2": "1"}},
                {"row": "e2", "col": "e2", "out": {"e2": "1"}},
            ]},
        },
        "linear": {
            "R": _lin("A", "A", {"e1": {"e2": "-c_11_2"}, "e2": {"e2": "-1"}}),
            "S": _lin("A", "A", {"e2": {"e2": "c_11_2 - c_12_2"}}),
        },
        "claims": [
            {"kind": "double_curved_rbs", "bind": dcrbs_bind, "expect": dcrbs_expect,
             "note": "as printed the family does not satisfy both operator identities; see constraints"},
            {"kind": "eq3.7", "bind": {"mu": "mu", "omega1": "omega1", "omega2": "omega2"},
             "expect": eq37_expect},
        ],
    }


@dataclass(frozen=True)
class CorpusEntry:
    id: str
    citation: str
    bundle: Bundle

    @property
    def expectations(self) -> tuple:
        return tuple(c.expect for c in self.bundle.claims)


def _entry(eid, citation, doc) -> CorpusEntry:
    doc = dict(doc)
    doc["meta"] = {"id": eid, "citation": citation}
    return CorpusEntry(eid, citation, bundle_from_dict(doc))


def _raw_entries():
    out = []
    for n, (R, S) in enumerate(F1_CURVED, 1):
        out.append((f"ex2.3/f1/e{n}", f"Example 2.3, first bimodule, curved system {n}",
                    _ex23(BIMODULE_1, R, S, "p", "curved_oos")))
    for n, (R, S) in enumerate(F1_OOS, 1):
        out.append((f"ex2.3/f1/o{n}", f"Example 2.3, first bimodule, O-operator system {n}",
                    _ex23(BIMODULE_1, R, S, None, "oos")))
    for n, (R, S, w) in enumerate(F2_CURVED, 1):
        out.append((f"ex2.3/f2/e{n}", f"Example 2.3, second bimodule, curved system {n}",
                    _ex23(BIMODULE_2, R, S, w, "curved_oos")))
    out.append(("ex2.3/f3", "Example 2.3, two-dimensional bimodule", _ex23_2dim()))
    for n, R in enumerate(R_34A, 1):
        out.append((f"ex3.4a/R{n}", f"Example 3.4a, R map {n}", _ex34a(R)))
    out.append(("ex3.10", "Example 3.10, parametric family",
                _ex310({"conditional": EX310_DCRBS}, {"conditional": EX310_EQ37})))
    return out


@lru_cache(maxsize=None)
def corpus() -> tuple[CorpusEntry, ...]:
    return tuple(_entry(*e) for e in _raw_entries())


# -- templates (parameter-free frames for search and derive) --------------------------------------------


def _zero_lin(src, tgt):
    return {"source": src, "target": tgt, "columns": {}}


def _zero_bil(l, r, t):
    return {"left": l, "right": r, "target": t, "entries": []}


def _frame(bimodule, vbasis):
    return {
        "ring": {"field": "Q", "parameters": []},
        "spaces": {"A": ["e1", "e2"], "V": list(vbasis)},
        "bilinear": {"mu": ALGEBRA_2D, **bimodule, "omega": _zero_bil("V", "V", "V")},
        "linear": {"R": _zero_lin("V", "A"), "S": _zero_lin("V", "A")},
        "claims": [{"kind": "curved_oos", "bind": dict(CURVED_BIND)}],
    }


def _regular_frame():
    return {
        "ring": {"field": "Q", "parameters": []},
        "spaces": {"A": ["e1", "e2"]},
        "bilinear": {"mu": ALGEBRA_2D, "omega": _zero_bil("A", "A", "A")},
        "linear": {"R": _zero_lin("A", "A"), "S": _zero_lin("A", "A")},
        "claims": [{"kind": "curved_rbs", "bind": {"mu": "mu", "R": "R", "S": "S", "omega": "omega"}}],
    }


def _dcrbs_frame():
    return {
        "ring": {"field": "Q", "parameters": []},
        "spaces": {"A": ["e1", "e2"]},
        "bilinear": {"mu": ALGEBRA_2D, "omega1": _zero_bil("A", "A", "A"),
                     "omega2": _zero_bil("A", "A", "A")},
        "linear": {"R": _zero_lin("A", "A"), "S": _zero_lin("A", "A")},
        "claims": [{"kind": "double_curved_rbs",
                    "bind": {"mu": "mu", "R": "R", "S": "S", "omega1": "omega1", "omega2": "omega2"}}],
    }


def _grb_frame():
    return {
        "ring": {"field": "Q", "parameters": []},
        "spaces": {"A": ["e1", "e2"]},
        "bilinear": {"mu": ALGEBRA_2D, "nu": ALGEBRA_2D},
        "linear": {"R": _zero_lin("A", "A")},
        "claims": [{"kind": "generalized_rb", "bind": {"mu": "mu", "nu": "nu", "R": "R"}}],
    }


def _prelie_1dim():
    return {
        "ring": {"field": "Q", "parameters": []},
        "spaces": {"V": ["v1"]},
        "bilinear": {"circ": _zero_bil("V", "V", "V")},
        "claims": [{"kind": "pre_lie", "bind": {"circ": "circ"}}],
    }


_TEMPLATES = {
    "ex2.3-frame": ("Example 2.3 algebra with the first bimodule, zero operators",
                    lambda: _frame(BIMODULE_1, ["v1"])),
    "ex2.3-frame2": ("Example 2.3 algebra with the second bimodule, zero operators",
                     lambda: _frame(BIMODULE_2, ["v1"])),
    "ex2.3-frame-2dim": ("Example 2.3 algebra with the two-dimensional bimodule, zero operators",
                         lambda: _frame(BIMODULE_3, ["v1", "v2"])),
    "regular-frame": ("Example 2.3 algebra as its own regular bimodule, zero operators", _regular_frame),
    "dcrbs-frame": ("Example 2.3 algebra with zero double curved Rota-Baxter data", _dcrbs_frame),
    "grb-frame": ("Example 2.3 algebra with ν = μ and R = 0", _grb_frame),
    "prelie-1dim": ("one-dimensional space with the zero product", _prelie_1dim),
}


@lru_cache(maxsize=None)
def templates() -> tuple[CorpusEntry, ...]:
    return tuple(_entry(k, cite, make()) for k, (cite, make) in _TEMPLATES.items())


def lookup(eid: str) -> CorpusEntry:
    for e in corpus() + templates():
        if e.id == eid:
            return e
    raise KeyError(eid)
