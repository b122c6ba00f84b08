"""Command-line front end: ``curvedop {verify,derive,search,corpus}``.

Exit status is the worst outcome over the claims involved:
0 all hold, 1 something fails, 2 conditional only, 3 input or usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from . import __version__
from . import structures as st
from .claims import kind_spec, run_claim
from .coeff import ParseError
from .corpus import corpus, lookup, templates
from .corpus_io import Bundle, BundleError, Claim, Expect, bundle_to_dict, load_bundle, serialize_bundle
from .multilinear import BilMap, LinMap, ShapeError, tensor_space
from . import derive as dv

EXIT_HOLDS, EXIT_FAILS, EXIT_CONDITIONAL, EXIT_INPUT = 0, 1, 2, 3
_SEVERITY = {EXIT_HOLDS: 0, EXIT_CONDITIONAL: 1, EXIT_FAILS: 2, EXIT_INPUT: 3}
_VERDICT_EXIT = {st.Verdict.HOLDS: EXIT_HOLDS, st.Verdict.FAILS: EXIT_FAILS,
                 st.Verdict.CONDITIONAL: EXIT_CONDITIONAL}


class InputError(Exception):
    pass


def worst(*codes: int) -> int:
    """Combine exit codes by severity (input error > fails > conditional > holds)."""
    return max(codes, key=_SEVERITY.__getitem__, default=EXIT_HOLDS)


def _err(args, msg: str):
    print(f"curvedop: {msg}", file=sys.stderr)


def _note(args, msg: str):
    if not args.quiet:
        print(msg, file=sys.stderr)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False)


def load_source(ref: str) -> Bundle:
    """A bundle from a file path, a corpus id or a template id."""
    if os.path.exists(ref):
        try:
            return load_bundle(ref)
        except OSError as e:
            raise InputError(f"{ref}: {e.strerror}") from None
    try:
        return lookup(ref).bundle
    except KeyError:
        raise InputError(f"{ref}: no such file, corpus entry or template") from None


# -- verify -----------------------------------------------------------------------------------------------


@dataclass
class ClaimResult:
    index: int
    claim: Claim
    report: st.Report | None = None
    error: str | None = None
    hypothesis: st.Report | None = None
    input_error: bool = False

    @property
    def exit_code(self) -> int:
        if self.input_error:
            return EXIT_INPUT
        if self.report is None:
            return EXIT_FAILS
        return _VERDICT_EXIT[self.report.verdict]

    @property
    def verdict(self) -> str:
        if self.report is not None:
            return self.report.verdict.value
        return "error" if self.input_error else "fails"

    @property
    def matches_expected(self):
        exp = self.claim.expect
        if exp is None:
            return None
        return self.report is not None and exp.matches(self.report)


def _check_one(payload) -> ClaimResult:
    bundle, i, mode = payload
    c = bundle.claims[i]
    try:
        return ClaimResult(i, c, report=run_claim(bundle, c, mode=mode))
    except st.HypothesisError as e:
        return ClaimResult(i, c, error=str(e), hypothesis=e.report)
    except (ShapeError, ValueError, KeyError) as e:
        return ClaimResult(i, c, error=str(e), input_error=True)


def check_claims(bundle: Bundle, *, mode: str = st.STRICT, only=None, jobs: int = 1) -> list[ClaimResult]:
    """Run the selected claims; results keep the declared order whatever the worker scheduling."""
    idx = [i for i, c in enumerate(bundle.claims)
           if only is None or only in (c.id, str(i + 1), c.kind)]
    payloads = [(bundle, i, mode) for i in idx]
    if jobs > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_check_one, payloads))
    return [_check_one(p) for p in payloads]


def _equation_json(eq: st.Equation, limit: int) -> dict:
    res = [{"at": list(lab), "value": str(v)} for lab, v in eq.labelled()]
    return {"tag": eq.tag, "holds": eq.holds, "auxiliary": eq.auxiliary,
            "nonzero": len(eq.entries), "residuals": res[:limit]}


def result_json(r: ClaimResult, limit: int) -> dict:
    out = {
        "index": r.index + 1,
        "id": r.claim.id,
        "kind": r.claim.kind,
        "verdict": r.verdict,
        "expected": r.claim.expect.to_json() if r.claim.expect else None,
        "matches_expected": r.matches_expected,
        "error": r.error,
    }
    if r.report is not None:
        out["consistent"] = r.report.consistent
        out["constraints"] = [str(c) for c in r.report.constraints]
        out["equations"] = [_equation_json(e, limit) for e in r.report.equations]
    if r.hypothesis is not None:
        out["hypothesis"] = [_equation_json(e, limit) for e in r.hypothesis.equations]
    return out


def _text_equations(eqs, limit, indent="    "):
    lines = []
    for e in eqs:
        flag = "HOLDS" if e.holds else "FAILS"
        aux = " (auxiliary)" if e.auxiliary else ""
        lines.append(f"{indent}{e.tag:<14} {flag}{aux}")
        if not e.holds:
            for lab, v in list(e.labelled())[:limit]:
                lines.append(f"{indent}    ({', '.join(lab)}): {v}")
            if len(e.entries) > limit:
                lines.append(f"{indent}    ... {len(e.entries) - limit} more")
    return lines


def result_text(r: ClaimResult, limit: int, conditional: bool) -> list[str]:
    name = f"{r.claim.id} ({r.claim.kind})" if r.claim.id else r.claim.label(r.index)
    head = f"claim {name}: {r.verdict.upper()}"
    m = r.matches_expected
    if m is not None:
        head += "  (matches expectation)" if m else "  (DOES NOT MATCH expectation)"
    lines = [head]
    if r.error:
        lines.append(f"    error: {r.error}")
    if r.hypothesis is not None:
        lines += _text_equations([e for e in r.hypothesis.equations if not e.holds], limit)
    if r.report is not None:
        lines += _text_equations(r.report.equations, limit)
        if r.report.verdict is st.Verdict.CONDITIONAL:
            cs = r.report.constraints
            if not r.report.consistent:
                lines.append("    constraints include a nonzero constant: no specialization satisfies them")
            if conditional:
                lines.append(f"    constraints ({len(cs)}):")
                lines += [f"      {c} = 0" for c in cs]
    return lines


def cmd_verify(args) -> int:
    bundle = load_source(args.bundle)
    if not bundle.claims:
        raise InputError("bundle declares no claims")
    results = check_claims(bundle, mode=args.mode, only=args.claim, jobs=args.jobs)
    if args.claim is not None and not results:
        raise InputError(f"no claim matches {args.claim!r}")
    code = worst(*(r.exit_code for r in results))
    if args.format == "json":
        print(_dump({"source": args.bundle, "mode": args.mode,
                     "claims": [result_json(r, args.max_residuals) for r in results], "exit": code}))
    else:
        for r in results:
            print("\n".join(result_text(r, args.max_residuals, args.conditional)))
        _note(args, f"exit {code}")
    return code


# -- derive -----------------------------------------------------------------------------------------------


@dataclass
class Derived:
    maps: dict                      # key -> BilMap | LinMap
    claims: list                    # (kind, bind, expect or None, scalars); "@role" refers to the source
    iff: list = field(default_factory=list)  # ((claim index, tag or None), (claim index, tag or None))


@dataclass(frozen=True)
class Construction:
    name: str
    roles: tuple
    build: Callable
    doc: str
    optional: tuple = ()


_H = Expect(st.Verdict.HOLDS)


def _src(*roles):
    return {r: "@" + r for r in roles}


def _guard(report: st.Report, what: str, mode: str):
    if mode == st.STRICT and not report.holds:
        raise st.HypothesisError(what, report)


def _b_dendriform(m, s, mode):
    out = dv.derive_dendriform(m["mu"], m["left"], m["right"], m["R"], m["S"], m["circ"], mode=mode)
    return Derived(out, [("dendriform_system", {k: k for k in out}, _H, {})])


def _b_tridendriform(m, s, mode):
    out = dv.derive_tridendriform(m["mu"], m["left"], m["right"], m["R"], m["S"], m["circ"], mode=mode)
    return Derived(out, [("tridendriform_system", {k: k for k in out}, _H, {})])


def _curved_circ(m, mode):
    if mode == st.STRICT:
        dv._curved_with_circ(m["mu"], m["left"], m["right"], m["R"], m["S"], m["circ"], mode)


def _b_star(m, s, mode):
    _curved_circ(m, mode)
    star = dv.derive_product("star", left=m["left"], right=m["right"], circ=m["circ"], R=m["R"], S=m["S"])
    return Derived({"star": star}, [("associativity", {"mu": "star"}, _H, {})])


def _b_star_r(m, s, mode):
    _guard(st.check_bimodule_algebra(m["mu"], m["left"], m["right"], m["circ"], mode=st.AUDIT),
           "A-bimodule algebra", mode)
    star = dv.derive_product("star_r", left=m["left"], right=m["right"], circ=m["circ"], R=m["R"])
    return Derived({"star_R": star},
                   [("associativity", {"mu": "star_R"}, None, {}),
                    ("eq2.24", _src("mu", "left", "right", "circ", "R"), None, {})],
                   iff=[((0, None), (1, None))])


def _b_diamond(m, s, mode):
    omega = m.get("omega")
    maps = {}
    if omega is None:
        V = m["left"].right
        omega = maps["omega"] = BilMap.zero(V, V, V, m["mu"].ring)
    _guard(st.check_curved_oos(m["mu"], m["left"], m["right"], m["R"], m["S"], omega, mode=st.AUDIT),
           "curved O-operator system", mode)
    maps["diamond"] = dv.derive_product("diamond", left=m["left"], right=m["right"], R=m["R"], S=m["S"])
    bind = {**_src("left", "right", "R", "S"), "omega": "omega" if "omega" in maps else "@omega"}
    return Derived(maps, [("associativity", {"mu": "diamond"}, None, {}), ("eq2.28", bind, None, {})],
                   iff=[((0, None), (1, None))])


def _b_odot(m, s, mode):
    w = s.get("weight", 1)
    _guard(st.check_o_operator(m["mu"], m["left"], m["right"], m["R"], m["circ"], w, mode=st.AUDIT),
           "O-operator on an A-bimodule algebra", mode)
    odot = dv.derive_product("odot", left=m["left"], right=m["right"], R=m["R"])
    sc = {"weight": w if not isinstance(w, int) else m["mu"].ring(w)}
    return Derived({"odot": odot},
                   [("associativity", {"mu": "odot"}, None, {}),
                    ("eq2.30", _src("left", "right", "circ", "R"), None, sc)],
                   iff=[((0, None), (1, None))])


def _b_prelie(m, s, mode):
    _curved_circ(m, mode)
    bl = dv.derive_product("blacklozenge", left=m["left"], right=m["right"], R=m["R"], S=m["S"], circ=m["circ"])
    return Derived({"blacklozenge": bl}, [("pre_lie", {"circ": "blacklozenge"}, _H, {})])


def _b_grb_all(m, s, mode):
    out = dv.derive_grb(m["mu"], m["nu"], m["R"], mode=mode)
    maps = {"dend_prec": out["dendriform"]["prec"], "dend_succ": out["dendriform"]["succ"],
            "prelie": out["pre_lie"], "tri_prec": out["tridendriform"]["prec"],
            "tri_succ": out["tridendriform"]["succ"], "tri_dot": out["tridendriform"]["dot"],
            "assoc": out["associative"]}
    return Derived(maps, [
        ("dendriform_algebra", {"prec": "dend_prec", "succ": "dend_succ"}, _H, {}),
        ("pre_lie", {"circ": "prelie"}, _H, {}),
        ("tridendriform_algebra", {"prec": "tri_prec", "succ": "tri_succ", "dot": "tri_dot"}, _H, {}),
        ("associativity", {"mu": "assoc"}, _H, {}),
    ])


_DCRBS = ("mu", "R", "S", "omega1", "omega2")


def _dcrbs_guard(m, mode):
    _guard(st.check_double_curved_rbs(*(m[r] for r in _DCRBS), mode=st.AUDIT),
           "double curved Rota-Baxter system", mode)


def _b_dcrbs_star(m, s, mode):
    _dcrbs_guard(m, mode)
    ast = dv.derive_product("dcrbs_star", mu=m["mu"], R=m["R"], S=m["S"])
    return Derived({"ast": ast}, [("associativity", {"mu": "ast"}, None, {}),
                                  ("eq3.7", _src("mu", "omega1", "omega2"), None, {})],
                   iff=[((0, None), (1, None))])


def _b_dcrbs_prelie(m, s, mode):
    _dcrbs_guard(m, mode)
    circ = dv.derive_product("dcrbs_circ", mu=m["mu"], R=m["R"], S=m["S"])
    return Derived({"circ": circ}, [("pre_lie", {"circ": "circ"}, None, {}),
                                    ("cor_3_12", _src(*_DCRBS), None, {})],
                   iff=[((0, None), (1, "center"))])


def _twistor(m, mode):
    T, T3 = dv.build_pseudotwistor(*(m[r] for r in _DCRBS), mode=mode)
    A = m["mu"].left
    AA = tensor_space(A, A)
    return T.relabel(AA, AA), T3.relabel(tensor_space(AA, A), tensor_space(AA, A))


def _b_pseudotwistor(m, s, mode):
    T, T3 = _twistor(m, mode)
    return Derived({"T": T, "T3": T3},
                   [("pseudotwistor", {**_src("mu", "omega1", "omega2"), "T": "T", "T3": "T3"}, _H, {})])


def _b_mu_t(m, s, mode):
    T, T3 = _twistor(m, mode)
    muT = dv.derive_product("muT", mu=m["mu"], T=T)
    return Derived({"T": T, "T3": T3, "muT": muT},
                   [("pseudotwistor", {**_src("mu", "omega1", "omega2"), "T": "T", "T3": "T3"}, _H, {}),
                    ("associativity", {"mu": "muT"}, _H, {})])


_CURVED_CIRC = ("mu", "left", "right", "R", "S", "circ")

CONSTRUCTIONS = {c.name: c for c in [
    Construction("dendriform", _CURVED_CIRC, _b_dendriform, "dendriform system from a curved system with ω = ∘"),
    Construction("tridendriform", _CURVED_CIRC, _b_tridendriform, "tridendriform system, ∘ kept as the third product"),
    Construction("star", _CURVED_CIRC, _b_star, "x⋆y = R(x)▷y + x◁S(y) + x∘y, associative"),
    Construction("star_r", ("mu", "left", "right", "R", "circ"), _b_star_r, "⋆ with S = R; associative iff eq2.24"),
    Construction("diamond", ("mu", "left", "right", "R", "S"), _b_diamond,
                 "x◇y = R(x)▷y + x◁S(y); associative iff eq2.28", optional=("omega",)),
    Construction("odot", ("mu", "left", "right", "R", "circ"), _b_odot, "x⊙y = R(x)▷y + x◁R(y); associative iff eq2.30"),
    Construction("prelie", _CURVED_CIRC, _b_prelie, "x◆y = R(x)▷y - y◁S(x) + x∘y, pre-Lie"),
    Construction("grb_all", ("mu", "nu", "R"), _b_grb_all, "the four structures of a generalized Rota-Baxter algebra"),
    Construction("dcrbs_star", _DCRBS, _b_dcrbs_star, "a∗b = R(a)b + aS(b); associative iff eq3.7"),
    Construction("dcrbs_prelie", _DCRBS, _b_dcrbs_prelie, "a∘b = R(a)b - bS(a) against central curvature defect"),
    Construction("pseudotwistor", _DCRBS, _b_pseudotwistor, "T = R⊗id + id⊗S with its weak companion"),
    Construction("mu_t", _DCRBS, _b_mu_t, "the product μ∘T"),
]}


def _source_claim(bundle: Bundle, con: Construction, only):
    for i, c in enumerate(bundle.claims):
        if only is not None and only not in (c.id, str(i + 1), c.kind):
            continue
        bind = dict(c.bind)
        if "circ" in con.roles and "circ" not in bind and "omega" in bind:
            bind["circ"] = bind["omega"]
        if all(r in bind for r in con.roles):
            return i, c, bind
    raise InputError(f"no claim binds the roles {', '.join(con.roles)} needed by {con.name}")


def _fresh_name(base: str, taken: set) -> str:
    name, k = base, 1
    while name in taken:
        name = f"{base}_{k}"
        k += 1
    return name


def derive_bundle(bundle: Bundle, construction: str, *, mode: str = st.STRICT, only=None):
    """Source bundle plus derived maps and claims; returns ``(bundle, Derived, claim offset)``."""
    try:
        con = CONSTRUCTIONS[construction]
    except KeyError:
        raise InputError(f"unknown construction {construction!r}; choose from {', '.join(CONSTRUCTIONS)}") from None
    i, src, bind = _source_claim(bundle, con, only)
    maps = {r: bundle.lookup(n) for r, n in bind.items() if r in con.roles or r in con.optional}
    scalars = {k: v for k, v in src.scalars.items()}
    out = con.build(maps, scalars, mode)
    taken = set(bundle.bilinear) | set(bundle.linear) | set(bundle.elements)
    names = {}
    for key in out.maps:
        names[key] = _fresh_name(key, taken)
        taken.add(names[key])
    bil = {names[k]: v for k, v in out.maps.items() if isinstance(v, BilMap)}
    lin = {names[k]: v for k, v in out.maps.items() if isinstance(v, LinMap)}
    spaces = {}
    for f in lin.values():
        for sp in (f.source, f.target):
            if sp.name not in bundle.spaces:
                spaces[sp.name] = sp
    new_claims = []
    for kind, cb, expect, sc in out.claims:
        resolved = {r: (bind[v[1:]] if v.startswith("@") else names[v]) for r, v in cb.items()}
        new_claims.append(Claim(kind, resolved, expect, dict(sc), None,
                                f"derived by {con.name}"))
    meta = dict(bundle.meta or {})
    origin = meta.get("id", "bundle")
    meta = {"id": f"{origin}+{con.name}",
            "note": f"{con.name} built from claim {src.label(i)} ({mode} mode)"}
    if bundle.meta and "citation" in bundle.meta:
        meta["citation"] = bundle.meta["citation"]
    result = bundle.with_maps(bilinear=bil, linear=lin, spaces=spaces,
                              claims=list(bundle.claims) + new_claims, meta=meta)
    for c in new_claims:
        kind_spec(c.kind)
    return result, out, len(bundle.claims)


def _pair_holds(results, ref):
    i, tag = ref
    r = results[i]
    if r.report is None:
        return None
    return r.report.holds if tag is None else r.report.holds_for(tag)


def reverify(bundle: Bundle, derived: Derived, offset: int, mode: str):
    """Check the derived claims: guaranteed ones must match their expectation, paired ones must agree."""
    results = [_check_one((bundle, offset + k, mode)) for k in range(len(derived.claims))]
    ok = all(r.matches_expected is not False and not r.input_error for r in results)
    pairs = []
    for a, b in derived.iff:
        ha, hb = _pair_holds(results, a), _pair_holds(results, b)
        agree = ha is not None and ha == hb
        pairs.append({"claims": [a[0] + 1, b[0] + 1], "tags": [a[1], b[1]], "left": ha, "right": hb,
                      "agree": agree})
        ok = ok and agree
    return ok, results, pairs


def cmd_derive(args) -> int:
    bundle = load_source(args.bundle)
    mode = st.AUDIT if args.audit else st.STRICT
    try:
        out, derived, offset = derive_bundle(bundle, args.construction, mode=mode, only=args.claim)
    except st.HypothesisError as e:
        _err(args, str(e))
        if args.format == "json":
            print(_dump({"construction": args.construction, "error": str(e), "exit": EXIT_FAILS}))
        return EXIT_FAILS
    text = serialize_bundle(out)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    code = EXIT_HOLDS
    results, pairs = [], []
    if not args.no_verify:
        ok, results, pairs = reverify(out, derived, offset, mode)
        code = EXIT_HOLDS if ok else EXIT_FAILS
    if args.format == "json":
        doc = {"construction": args.construction, "verified": not args.no_verify,
               "claims": [result_json(r, args.max_residuals) for r in results],
               "pairs": pairs, "exit": code}
        if not args.out:
            doc["bundle"] = bundle_to_dict(out)
        print(_dump(doc))
        return code
    if not args.out:
        sys.stdout.write(text)
    if not args.quiet:
        for r in results:
            print("\n".join(result_text(r, args.max_residuals, False)), file=sys.stderr)
        for p in pairs:
            print(f"biconditional claims {p['claims'][0]} / {p['claims'][1]}: "
                  f"{'agree' if p['agree'] else 'DISAGREE'} ({p['left']} / {p['right']})", file=sys.stderr)
        print(f"exit {code}", file=sys.stderr)
    return code


# -- search -----------------------------------------------------------------------------------------------


def cmd_search(args) -> int:
    from . import search as sr

    template = load_source(args.template)
    unknowns = tuple(u.strip() for u in args.unknowns.split(",") if u.strip())
    limit = None if args.limit is not None and args.limit < 0 else args.limit
    spec = sr.SearchSpec(template, args.structure, unknowns, args.field, limit=limit)
    try:
        res = sr.enumerate_witnesses(spec, jobs=args.jobs, backend=args.backend)
        agreement = sr.cross_check(spec, backend=args.backend, strict=False) if args.cross_check else None
    except st.HypothesisError as e:
        raise InputError(f"template: {e}") from None
    except sr.SearchError as e:
        raise InputError(str(e)) from None
    prep = sr.prepare(spec)
    wits = [(i, prep.assignment(i), prep.witness(i)) for i in res.indices]
    code = EXIT_HOLDS
    if agreement is not None and not agreement.agree:
        code = EXIT_FAILS
    if args.format == "json":
        doc = {"structure": args.structure, "field": f"F{args.field}", "unknowns": list(unknowns),
               "candidates": res.total, "count": res.count, "backend": res.backend,
               "witnesses": [{"candidate": i, "assignment": dict(zip(prep.slot_names, a)),
                              "bundle": bundle_to_dict(w)} for i, a, w in wits]}
        if agreement is not None:
            doc["cross_check"] = {"agree": agreement.agree, "first_difference": agreement.first_difference,
                                  "kernel": len(agreement.kernel), "residual": len(agreement.residual)}
        doc["exit"] = code
        print(_dump(doc))
    else:
        print(f"{args.structure} over F{args.field}, unknowns {','.join(unknowns) or '(none)'}: "
              f"{res.count} of {res.total} candidates ({res.backend} kernel)")
        if agreement is not None:
            print("cross-check: " + ("agree" if agreement.agree else
                                     f"DISAGREE first at candidate {agreement.first_difference}"))
        for i, a, w in wits:
            print(f"# witness, candidate {i}: " + ", ".join(f"{n}={v}" for n, v in zip(prep.slot_names, a)))
            sys.stdout.write(serialize_bundle(w))
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        for i, _, w in wits:
            with open(os.path.join(args.out_dir, f"witness-{i}.json"), "w", encoding="utf-8") as fh:
                fh.write(serialize_bundle(w))
    return code


# -- corpus -----------------------------------------------------------------------------------------------


def _expect_str(e) -> str:
    if e is None:
        return "-"
    if e.verdict is st.Verdict.CONDITIONAL:
        return f"conditional[{len(e.constraints)}]"
    return e.verdict.value


def cmd_corpus(args) -> int:
    if args.action == "list":
        entries = corpus() + (templates() if args.templates else ())
        if args.format == "json":
            print(_dump([{"id": e.id, "citation": e.citation,
                          "expected": [c.expect.to_json() if c.expect else None for c in e.bundle.claims]}
                         for e in entries]))
        else:
            width = max(len(e.id) for e in entries)
            for e in entries:
                exp = "; ".join(_expect_str(c.expect) for c in e.bundle.claims)
                print(f"{e.id:<{width}}  {e.citation}  [{exp}]")
        return EXIT_HOLDS
    if not args.id:
        raise InputError("corpus export needs an entry id")
    try:
        entry = lookup(args.id)
    except KeyError:
        raise InputError(f"unknown corpus id {args.id!r}") from None
    text = serialize_bundle(entry.bundle)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_HOLDS


# -- parser -----------------------------------------------------------------------------------------------


def _globals(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("text", "json"), default=d("text"), help="output format")
    p.add_argument("--jobs", type=int, default=d(1), help="worker processes")
    p.add_argument("--quiet", action="store_true", default=d(False), help="no progress or summary on stderr")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="curvedop", description="Verify, construct and search curved operator systems.")
    p.add_argument("--version", action="version", version=f"curvedop {__version__}")
    _globals(p, False)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check the claims of a bundle")
    _globals(v, True)
    v.add_argument("bundle", help="bundle file, corpus id or template id")
    v.add_argument("--claim", help="only this claim (id, 1-based index or kind)")
    v.add_argument("--conditional", action="store_true", help="print constraint polynomials")
    v.add_argument("--max-residuals", type=int, default=5, help="nonzero entries shown per equation")
    v.add_argument("--mode", choices=(st.STRICT, st.AUDIT), default=st.STRICT)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("derive", help="build a derived structure and re-verify it")
    _globals(d, True)
    d.add_argument("bundle", help="bundle file, corpus id or template id")
    d.add_argument("--construction", required=True, help=", ".join(CONSTRUCTIONS))
    d.add_argument("--claim", help="source claim (id, 1-based index or kind)")
    d.add_argument("--out", help="write the derived bundle here instead of stdout")
    d.add_argument("--no-verify", action="store_true", help="skip re-verification")
    d.add_argument("--audit", action="store_true", help="build even if hypotheses fail")
    d.add_argument("--max-residuals", type=int, default=5)
    d.set_defaults(func=cmd_derive)

    s = sub.add_parser("search", help="enumerate operators over a prime field")
    _globals(s, True)
    s.add_argument("--field", type=int, required=True, help="prime p")
    s.add_argument("--template", required=True, help="bundle file, corpus id or template id")
    s.add_argument("--unknowns", required=True, help="comma-separated roles, may be empty")
    s.add_argument("--structure", required=True, help="target structure kind")
    s.add_argument("--limit", type=int, default=10, help="witnesses to print (-1 for all)")
    s.add_argument("--backend", choices=("auto", "compiled", "python"), default="auto")
    s.add_argument("--cross-check", action="store_true", help="also enumerate through the residual checker")
    s.add_argument("--out-dir", help="write each printed witness bundle to this directory")
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("corpus", help="list or export the embedded corpus")
    _globals(c, True)
    c.add_argument("action", choices=("list", "export"))
    c.add_argument("id", nargs="?")
    c.add_argument("--out", help="export destination (default stdout)")
    c.add_argument("--templates", action="store_true", help="also list search templates")
    c.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else 0
    if args.jobs < 1:
        _err(args, "--jobs must be at least 1")
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as e:
        _err(args, str(e))
        return EXIT_INPUT
    except (BundleError, ParseError) as e:
        _err(args, f"{getattr(args, 'bundle', None) or getattr(args, 'template', '')}: {e}")
        return EXIT_INPUT
    except BrokenPipeError:  # pragma: no cover
        return EXIT_INPUT


def run() -> None:  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    run()
