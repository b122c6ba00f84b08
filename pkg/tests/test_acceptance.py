"""Acceptance criteria 1-8, one PASS/FAIL line each.

Under pytest the lines are collected and printed in the terminal summary; run the
file directly (``python tests/test_acceptance.py``) to get just the lines.
"""
from fractions import Fraction
import random
import sys
import time

import pytest

from curvedop import structures as st
from curvedop.claims import run_claims
from curvedop.coeff import Field, Poly, Ring
from curvedop.corpus import corpus, lookup
from curvedop.corpus_io import Bundle, Claim, Expect, parse_bundle, serialize_bundle
from curvedop.multilinear import BilMap, LinMap, Space, apply_bilinear
from curvedop.search import SearchSpec, cross_check

import oracles
import pools
import theorems as th

LINES = {}
_START = time.perf_counter()


def record(n, ok, detail, seconds):
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n}: {detail} [{seconds:.2f} s]"
    LINES[n] = line
    return line


def _entries(prefix):
    return [e for e in corpus() if e.id.startswith(prefix)]


# -- 1, 2, 3: corpus ---------------------------------------------------------------------------------------


def criterion_1():
    t0 = time.perf_counter()
    curved = [e for e in _entries("ex2.3/") if "/o" not in e.id]
    oos = _entries("ex2.3/f1/o")
    bad = []
    for e in curved + oos:
        for _, _, rep in run_claims(e.bundle):
            if not (rep.holds and set(rep.tags) >= {"eq2.1", "eq2.2"}):
                bad.append(e.id)
    dt = time.perf_counter() - t0
    ok = len(curved) == 15 and not bad and dt < 1.0
    return ok, (f"{len(curved)} curved entries (+{len(oos)} O-operator systems) have zero eq2.1/eq2.2 "
                f"residuals; failures {bad}"), dt


def criterion_2():
    t0 = time.perf_counter()
    entries = _entries("ex3.4a/")
    pair_ok, grb_bad = True, []
    for e in entries:
        (_, _, pair), (_, _, grb) = run_claims(e.bundle)
        pair_ok &= pair.holds
        if not grb.holds:
            grb_bad.append(e.id)
    dt = time.perf_counter() - t0
    ok = len(entries) == 11 and pair_ok and not grb_bad and dt < 1.0
    return ok, f"compatible pair holds: {pair_ok}; {11 - len(grb_bad)}/{len(entries)} R maps hold", dt


def criterion_3():
    t0 = time.perf_counter()
    b = lookup("ex3.10").bundle
    runs = [[(rep.verdict, tuple(map(str, rep.constraints))) for _, _, rep in run_claims(b)] for _ in range(2)]
    deterministic = runs[0] == runs[1]
    matches = all(c.expect.matches(rep) for _, c, rep in run_claims(b))
    (_, _, dc), (_, _, side) = run_claims(b)
    oracle_dc = {oracles.parse_constraint(str(c)) for c in dc.constraints} == set(oracles.ex310_constraints())
    oracle_side = ({oracles.parse_constraint(str(c)) for c in side.constraints}
                   == set(oracles.ex310_eq37_constraints()))
    dt = time.perf_counter() - t0
    ok = deterministic and matches and oracle_dc and oracle_side
    return ok, (f"verdicts {dc.verdict.value}/{side.verdict.value}, {len(dc.constraints)}+{len(side.constraints)} "
                f"constraints; deterministic {deterministic}, matches corpus {matches}, "
                f"matches independent oracle {oracle_dc and oracle_side}"), dt


# -- 4, 5: theorems ---------------------------------------------------------------------------------------


def _count(instances, fn):
    bad = 0
    for s in instances:
        bad += sum(not ok for ok in fn(s).values())
    return bad


def criterion_4():
    t0 = time.perf_counter()
    corpus_curved = [m for _, m in pools.corpus_curved_systems()]
    corpus_grb = [m for _, m in pools.corpus_grb_systems()]
    curved = pools.curved_with_circ()
    grb = pools.grb_instances()
    twist = pools.dcrbs_with_eq37()
    bad = (_count(corpus_curved, th.curved_implications) + _count(curved, th.curved_implications)
           + _count(corpus_grb, th.grb_implications) + _count(grb, th.grb_implications)
           + _count(twist, th.pseudotwistor_implications))
    dt = time.perf_counter() - t0
    sizes = (len(curved), len(grb), len(twist))
    ok = bad == 0 and min(sizes) >= 200
    return ok, (f"{len(corpus_curved)}+{len(corpus_grb)} corpus systems, random F2/F3 pools of "
                f"{sizes[0]} curved, {sizes[1]} generalized RB, {sizes[2]} pseudotwistor; "
                f"{bad} counterexamples"), dt


def criterion_5():
    t0 = time.perf_counter()
    f2 = list(pools.searched("ex2.3-frame", 2))
    checks = {
        "diamond/eq2.28": (f2 + list(pools.random_curved_f3()), th.diamond_sides),
        "star_R/eq2.24": ([th.as_circ(s) for s in f2 if pools.with_circ(s)]
                          + list(pools.random_bimodule_algebras_f3()), th.star_r_sides),
        "ast/eq3.7": (list(pools.dcrbs_f2()) + list(pools.dcrbs_random_f3()), th.dcrbs_star_sides),
        "pre-Lie/center": (list(pools.dcrbs_f2()) + list(pools.dcrbs_random_f3()), th.prelie_center_sides),
    }
    parts, ok = [], True
    for name, (inst, sides) in checks.items():
        bad = sum(a != b for a, b in map(sides, inst))
        parts.append(f"{name} {bad}/{len(inst)} disagree")
        ok &= bad == 0
    dt = time.perf_counter() - t0
    ok &= len(pools.random_curved_f3()) >= 500 and len(pools.dcrbs_random_f3()) >= 500
    return ok, "; ".join(parts), dt


# -- 6: search ------------------------------------------------------------------------------------------


def criterion_6():
    t0 = time.perf_counter()
    out = []
    ok = True
    for p, n in ((2, 32), (3, 243)):
        cc = cross_check(SearchSpec(lookup("ex2.3-frame").bundle, "curved_oos", ("R", "S", "omega"), p),
                         strict=False)
        direct = oracles.curved_oos_witnesses(p)
        agree = cc.agree and cc.kernel == direct
        ok &= agree
        out.append(f"F{p}: {len(cc.kernel)}/{n} witnesses, agree {agree}")
    dt = time.perf_counter() - t0
    return ok and dt < 5.0, "; ".join(out), dt


# -- 7: kernel properties --------------------------------------------------------------------------------

QR = Ring(Field.rationals(), ("p", "q", "r"))
F7 = Ring(Field.gf(7), ("p", "q"))


def rand_poly(rng, ring, terms=4, deg=3):
    out = {}
    for _ in range(rng.randint(0, terms)):
        exp = tuple(rng.randint(0, deg) for _ in ring.params)
        if ring.field.characteristic:
            out[exp] = rng.randrange(ring.field.characteristic)
        else:
            out[exp] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    return Poly(ring, out)


def rand_point(rng, ring):
    return {n: Fraction(rng.randint(-7, 7), rng.randint(1, 3)) for n in ring.params}


def _ring_laws(rng):
    ring = rng.choice((QR, F7))
    a, b, c = (rand_poly(rng, ring) for _ in range(3))
    zero, one = ring.zero, ring.one
    return ((a + b) + c == a + (b + c) and a + b == b + a and (a * b) * c == a * (b * c)
            and a * b == b * a and a * (b + c) == a * b + a * c and a + zero == a and a * one == a
            and (a - a).is_zero and -(-a) == a)


def _eval_hom(rng):
    a, b = rand_poly(rng, QR), rand_poly(rng, QR)
    pt = rand_point(rng, QR)
    return ((a + b).eval(pt) == a.eval(pt) + b.eval(pt) and (a * b).eval(pt) == a.eval(pt) * b.eval(pt)
            and (a - b).eval(pt) == a.eval(pt) - b.eval(pt))


def _parse_print(rng):
    ring = rng.choice((QR, F7))
    a = rand_poly(rng, ring, terms=5)
    return ring.parse(str(a)) == a and str(ring.parse(str(a))) == str(a)


def _space(rng, name):
    d = rng.randint(1, 3)
    return Space(name, tuple(f"{name.lower()}{i + 1}" for i in range(d)))


def _bilmap(rng, L, R, T, ring):
    return BilMap.from_function(L, R, T, ring, lambda i, j: tuple(rand_poly(rng, ring, 2, 2) for _ in range(T.dim)))


def _bilinearity(rng):
    L, R, T = _space(rng, "X"), _space(rng, "Y"), _space(rng, "Z")
    b = _bilmap(rng, L, R, T, QR)
    vec = lambda S: tuple(rand_poly(rng, QR, 2, 1) for _ in range(S.dim))  # noqa: E731
    x1, x2, y1, y2 = vec(L), vec(L), vec(R), vec(R)
    c = rand_poly(rng, QR, 2, 1)
    comb = lambda u, v: tuple(s + c * t for s, t in zip(u, v))  # noqa: E731
    left = apply_bilinear(b, comb(x1, x2), y1) == comb(apply_bilinear(b, x1, y1), apply_bilinear(b, x2, y1))
    right = apply_bilinear(b, x1, comb(y1, y2)) == comb(apply_bilinear(b, x1, y1), apply_bilinear(b, x1, y2))
    return left and right


def _bundle_round_trip(rng):
    ring = rng.choice((QR, F7, Ring(Field.rationals(), ())))
    A, V = _space(rng, "A"), _space(rng, "V")
    mu = _bilmap(rng, A, A, A, ring)
    act = _bilmap(rng, A, V, V, ring)
    R = LinMap(V, A, tuple(tuple(rand_poly(rng, ring, 2, 2) for _ in range(V.dim)) for _ in range(A.dim)), ring)
    claims = [Claim("associativity", {"mu": "mu"}, Expect(rng.choice(list(st.Verdict))) if rng.random() < 0.5
                    else None)]
    b = Bundle(ring, {"A": A, "V": V}, {"mu": mu, "act": act}, {"R": R}, {}, tuple(claims),
               {"id": f"random/{rng.randrange(10 ** 6)}"})
    text = serialize_bundle(b)
    back = parse_bundle(text)
    return back == b and serialize_bundle(back) == text


SUITES = {"ring laws": _ring_laws, "evaluation homomorphism": _eval_hom, "parse/print": _parse_print,
          "bilinearity": _bilinearity, "bundle round-trip": _bundle_round_trip}


def criterion_7(cases=1000):
    t0 = time.perf_counter()
    parts, ok = [], True
    for k, (name, fn) in enumerate(SUITES.items()):
        rng = random.Random(7000 + k)
        bad = sum(not fn(rng) for _ in range(cases))
        ok &= bad == 0
        parts.append(f"{name} {cases - bad}/{cases}")
    return ok, "; ".join(parts), time.perf_counter() - t0


# -- 8: parametric soundness and total time -----------------------------------------------------------


def _specialized(b, pt):
    conv = lambda a: a.specialize(pt)  # noqa: E731
    return Bundle(b.ring, b.spaces, {k: v.map_entries(conv) for k, v in b.bilinear.items()},
                  {k: v.map_entries(conv) for k, v in b.linear.items()}, b.elements, b.claims, b.meta)


def criterion_8(points=20):
    t0 = time.perf_counter()
    rng = random.Random(8)
    checked = bad = 0
    for e in _entries("ex2.3/") + _entries("ex3.4a/"):
        holds = [i for i, _, rep in run_claims(e.bundle) if rep.holds]
        for _ in range(points):
            pt = {n: Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for n in e.bundle.ring.params}
            sb = _specialized(e.bundle, pt)
            for i, _, rep in run_claims(sb, only=None):
                if i in holds:
                    checked += 1
                    bad += not rep.holds
    dt = time.perf_counter() - t0
    total = time.perf_counter() - _START
    ok = bad == 0 and total < 60.0
    return ok, f"{checked} re-verifications of Holds claims ({points} random points per claim), {bad} failures; suite total {total:.1f} s", dt


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8]


@pytest.mark.parametrize("n", range(1, 9), ids=lambda n: f"criterion_{n}")
def test_criterion(n):
    ok, detail, dt = CRITERIA[n - 1]()
    line = record(n, ok, detail, dt)
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for n, fn in enumerate(CRITERIA, 1):
        ok, detail, dt = fn()
        print(record(n, ok, detail, dt), flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
