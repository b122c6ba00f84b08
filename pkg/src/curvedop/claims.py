"""Claim kinds: which roles each structure needs and how to check it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import structures as st
from .multilinear import ShapeError

BIL, LIN, ELEM = "bilinear", "linear", "element"


@dataclass(frozen=True)
class KindSpec:
    name: str
    roles: dict  # role -> BIL | LIN | ELEM
    optional: tuple = ()
    scalars: tuple = ()
    run: Callable = None
    modal: bool = False  # honours strict/audit
    doc: str = ""
    defaults: dict = field(default_factory=dict)


KINDS: dict[str, KindSpec] = {}


def _kind(name, roles, run, *, optional=(), scalars=(), modal=False, doc="", defaults=None):
    KINDS[name] = KindSpec(name, roles, tuple(optional), tuple(scalars), run, modal, doc, defaults or {})


def _b(*names):
    return {n: BIL for n in names}


def _l(*names):
    return {n: LIN for n in names}


_CURVED = {**_b("mu", "left", "right", "omega"), **_l("R", "S")}

_kind("associativity", _b("mu"), lambda m, s, mode: st.check_associativity(m["mu"]),
      doc="(xy)z = x(yz)")
_kind("bimodule", _b("mu", "left", "right"),
      lambda m, s, mode: st.check_bimodule(m["mu"], m["left"], m["right"]), doc="A-bimodule")
_kind("pre_lie", _b("circ"), lambda m, s, mode: st.check_pre_lie(m["circ"]), doc="left-symmetric product")
_kind("curved_oos", _CURVED, optional=("omega",), modal=True,
      run=lambda m, s, mode: st.check_curved_oos(m["mu"], m["left"], m["right"], m["R"], m["S"],
                                                 m.get("omega"), mode=mode),
      doc="curved O-operator system")
_kind("oos", {**_b("mu", "left", "right"), **_l("R", "S")}, modal=True,
      run=lambda m, s, mode: st.check_oos(m["mu"], m["left"], m["right"], m["R"], m["S"], mode=mode),
      doc="O-operator system (zero curvature)")
_kind("curved_rbs", {**_b("mu", "omega"), **_l("R", "S")}, modal=True,
      run=lambda m, s, mode: st.check_curved_rbs(m["mu"], m["R"], m["S"], m["omega"], mode=mode),
      doc="curved Rota-Baxter system")
_kind("rota_baxter", {**_b("mu"), **_l("R")}, scalars=("weight",), modal=True,
      run=lambda m, s, mode: st.check_rota_baxter(m["mu"], m["R"], s.get("weight", 0), mode=mode),
      doc="Rota-Baxter operator of weight λ")
_kind("o_operator", {**_b("mu", "left", "right", "circ"), **_l("R")}, scalars=("weight",), modal=True,
      run=lambda m, s, mode: st.check_o_operator(m["mu"], m["left"], m["right"], m["R"], m["circ"],
                                                 s.get("weight", 1), mode=mode),
      doc="O-operator of weight λ on a bimodule algebra")
_kind("reynolds", {**_b("mu"), **_l("R")}, modal=True,
      run=lambda m, s, mode: st.check_reynolds(m["mu"], m["R"], mode=mode), doc="Reynolds operator")
_kind("td_algebra", {**_b("mu"), **_l("R"), "unit": ELEM}, modal=True,
      run=lambda m, s, mode: st.check_td_algebra(m["mu"], m["R"], m["unit"], mode=mode),
      doc="TD operator (unital algebra)")
_kind("nijenhuis", {**_b("mu"), **_l("R")}, modal=True,
      run=lambda m, s, mode: st.check_nijenhuis(m["mu"], m["R"], mode=mode), doc="Nijenhuis operator")
_kind("extended_bimodule_algebra", {**_b("mu", "left", "right", "circ"), **_l("R", "S")}, modal=True,
      run=lambda m, s, mode: st.check_extended_bimodule_algebra(m["mu"], m["left"], m["right"], m["circ"],
                                                                m["R"], m["S"], mode=mode),
      doc="extended A-bimodule algebra")
_kind("bimodule_algebra", _b("mu", "left", "right", "circ"), modal=True,
      run=lambda m, s, mode: st.check_bimodule_algebra(m["mu"], m["left"], m["right"], m["circ"], mode=mode),
      doc="A-bimodule algebra")
_kind("dendriform_system", _b("prec", "succ", "lessdot", "gtrdot"),
      lambda m, s, mode: st.check_dendriform_system(m["prec"], m["succ"], m["lessdot"], m["gtrdot"]),
      doc="dendriform system")
_kind("tridendriform_system", _b("prec", "succ", "lessdot", "gtrdot", "dot"),
      lambda m, s, mode: st.check_tridendriform_system(m["prec"], m["succ"], m["lessdot"], m["gtrdot"],
                                                       m["dot"]),
      doc="tridendriform system")
_kind("dendriform_algebra", _b("prec", "succ"),
      lambda m, s, mode: st.check_dendriform_algebra(m["prec"], m["succ"]), doc="dendriform algebra")
_kind("tridendriform_algebra", _b("prec", "succ", "dot"),
      lambda m, s, mode: st.check_tridendriform_algebra(m["prec"], m["succ"], m["dot"]),
      doc="tridendriform algebra")
_kind("compatible_pair", _b("mu", "nu"), lambda m, s, mode: st.check_compatible_pair(m["mu"], m["nu"]),
      doc="associative compatible pair")
_kind("generalized_rb", {**_b("mu", "nu"), **_l("R")},
      lambda m, s, mode: st.check_generalized_rb(m["mu"], m["nu"], m["R"]),
      doc="generalized Rota-Baxter algebra")
_kind("double_curved_rbs", {**_b("mu", "omega1", "omega2"), **_l("R", "S")}, modal=True,
      run=lambda m, s, mode: st.check_double_curved_rbs(m["mu"], m["R"], m["S"], m["omega1"], m["omega2"],
                                                        mode=mode),
      doc="double curved Rota-Baxter system")
_kind("pseudotwistor", {**_b("mu", "omega1", "omega2"), **_l("T", "T3")}, modal=True,
      run=lambda m, s, mode: st.check_pseudotwistor(m["mu"], m["T"], m["T3"], m["omega1"], m["omega2"],
                                                    mode=mode),
      doc="double curved weak pseudotwistor")
_kind("cor_3_12", {**_b("mu", "omega1", "omega2"), **_l("R", "S")}, modal=True,
      run=lambda m, s, mode: st.check_cor_3_12(m["mu"], m["R"], m["S"], m["omega1"], m["omega2"], mode=mode),
      doc="pre-Lie product R(a)b - bS(a) versus central curvature defect")


def _morphism(verbatim):
    def run(m, s, mode):
        src = {k: m.get(k) for k in ("mu", "left", "right", "R", "S", "omega")}
        tgt = {k: m.get(k + "2") for k in ("mu", "left", "right", "R", "S", "omega")}
        return st.check_morphism(src, tgt, m["f"], m["g"], verbatim=verbatim, mode=mode)
    return run


_MOR = {**_CURVED, **{k + "2": v for k, v in _CURVED.items()}, **_l("f", "g")}
_kind("morphism", _MOR, _morphism(False), optional=("omega", "omega2"), modal=True,
      doc="morphism of curved O-operator systems (f∘R = P∘g, f∘S = T∘g)")
_kind("morphism_verbatim", _MOR, _morphism(True), optional=("omega", "omega2"), modal=True,
      doc="morphism with the crossed conditions f∘R = T∘g, f∘S = P∘g added")


def _side(cid, roles, optional=(), scalars=()):
    def run(m, s, mode):
        return st.check_side_condition(cid, weight=s.get("weight"), **m)
    _kind(cid, roles, run, optional=optional, scalars=scalars, doc="side condition " + cid)


_side("eq2.22", {**_b("mu", "left", "right", "circ"), **_l("R", "S")})
_side("eq2.24", {**_b("mu", "left", "right", "circ"), **_l("R")})
_side("eq2.26", {**_b("left", "right"), **_l("R", "S")})
_side("eq2.28", {**_b("left", "right", "omega"), **_l("R", "S")})
_side("eq2.30", {**_b("left", "right", "circ"), **_l("R")}, scalars=("weight",))
_side("eq3.7", _b("mu", "omega1", "omega2"))


def kind_spec(kind: str) -> KindSpec:
    try:
        return KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown claim kind {kind!r}") from None


def validate_claim(bundle, claim) -> None:
    """Check that every role is bound to an existing object of the right sort."""
    spec = kind_spec(claim.kind)
    extra = set(claim.bind) - set(spec.roles)
    if extra:
        raise ValueError(f"{claim.kind}: unknown role(s) {', '.join(sorted(extra))}")
    missing = [r for r in spec.roles if r not in claim.bind and r not in spec.optional]
    if missing:
        raise ValueError(f"{claim.kind}: unbound role(s) {', '.join(missing)}")
    bad = set(claim.scalars) - set(spec.scalars)
    if bad:
        raise ValueError(f"{claim.kind}: unknown scalar(s) {', '.join(sorted(bad))}")
    for role, name in claim.bind.items():
        sort = spec.roles[role]
        table = {BIL: bundle.bilinear, LIN: bundle.linear, ELEM: bundle.elements}[sort]
        if name not in table:
            raise ValueError(f"role {role!r} needs a {sort} map or element, {name!r} is not one")


def resolve(bundle, claim) -> dict:
    validate_claim(bundle, claim)
    return {role: bundle.lookup(name) for role, name in claim.bind.items()}


def run_claim(bundle, claim, *, mode: str = st.STRICT) -> st.Report:
    """Check one claim of a bundle; shape problems surface as ShapeError."""
    spec = kind_spec(claim.kind)
    maps = resolve(bundle, claim)
    rep = spec.run(maps, dict(claim.scalars), mode)
    return rep


def run_claims(bundle, *, mode: str = st.STRICT, only=None):
    """``[(index, claim, report-or-exception)]`` for the claims of a bundle, in declared order."""
    out = []
    for i, c in enumerate(bundle.claims):
        if only is not None and not _selected(i, c, only):
            continue
        try:
            out.append((i, c, run_claim(bundle, c, mode=mode)))
        except (st.HypothesisError, ShapeError, ValueError) as e:
            out.append((i, c, e))
    return out


def _selected(i, claim, only) -> bool:
    return only == claim.id or only == str(i + 1) or only == claim.kind


__all__ = ["KINDS", "KindSpec", "kind_spec", "validate_claim", "resolve", "run_claim", "run_claims"]
