"""Cached families of small F_2 / F_3 systems shared by the implication and iff tests."""
from functools import lru_cache
import random

from curvedop import structures as st
from curvedop.coeff import Field, Ring
from curvedop.corpus import lookup
from curvedop.derive import induced_curvatures
from curvedop.search import SearchSpec, enumerate_witnesses, prepare
from curvedop.search import sampling as sm

from helpers import MU_NC, table_product


def ring(p):
    return Ring(Field.gf(p), ())


def frame(template, p):
    b = lookup(template).bundle.to_ring(ring(p))
    if "left" in b.bilinear:
        return b.bilinear["mu"], b.bilinear["left"], b.bilinear["right"]
    mu = b.bilinear["mu"]
    return mu, mu, mu


@lru_cache(maxsize=None)
def searched(template, p, limit=None):
    """Every curved system found by exhaustive search on a frame, as role dicts."""
    structure = "curved_rbs" if template == "regular-frame" else "curved_oos"
    spec = SearchSpec(lookup(template).bundle, structure, ("R", "S", "omega"), p, limit=limit)
    res = enumerate_witnesses(spec)
    prep = prepare(res.spec)
    return tuple(prep.candidate_maps(i) for i in res.indices)


def with_circ(system):
    if not st.check_associativity(system["omega"]).holds:
        return False
    return st.check_extended_bimodule_algebra(system["mu"], system["left"], system["right"],
                                              system["omega"], system["R"], system["S"]).holds


def _solved(rng, mu, left, right, count, accept, tries=20000):
    out = []
    for _ in range(tries):
        if len(out) >= count:
            break
        got = sm.random_curved_oos(rng, mu, left, right, tries=1)
        if got is None:
            continue
        R, S, w = got
        sysm = {"mu": mu, "left": left, "right": right, "R": R, "S": S, "omega": w}
        if accept(sysm):
            out.append(sysm)
    return out


@lru_cache(maxsize=None)
def curved_with_circ(count=120, seed=0):
    """Curved systems whose curvature is an extended bimodule algebra product.

    Exhaustive F_2/F_3 witnesses on the one-dimensional frames, the first regular-frame
    witnesses, then random solved systems on the two-dimensional bimodule.
    """
    out = []
    for t in ("ex2.3-frame", "ex2.3-frame2"):
        for p in (2, 3):
            out.extend(s for s in searched(t, p) if with_circ(s))
    out.extend(s for s in searched("regular-frame", 2, 200) if with_circ(s))
    rng = random.Random(seed)
    for p in (2, 3):
        mu, left, right = frame("ex2.3-frame-2dim", p)
        out.extend(_solved(rng, mu, left, right, count // 2, with_circ))
    return tuple(out)


@lru_cache(maxsize=None)
def random_curved_f3(count=500, seed=1):
    """Random F_3 curved systems on three frames (curvature solved for, so arbitrary)."""
    rng = random.Random(seed)
    r3 = ring(3)
    frames = [frame("ex2.3-frame-2dim", 3), frame("regular-frame", 3)]
    nc = table_product(lookup("regular-frame").bundle.bilinear["mu"].left, MU_NC, r3)
    frames.append((nc, nc, nc))
    out = []
    while len(out) < count:
        mu, left, right = frames[len(out) % len(frames)]
        out.extend(_solved(rng, mu, left, right, 1, lambda s: True, tries=200))
    return tuple(out)


@lru_cache(maxsize=None)
def associative_products(p):
    """Every associative product on the two-dimensional space over F_p (kernel search)."""
    spec = SearchSpec(lookup("regular-frame").bundle, "associativity", ("mu",), p)
    res = enumerate_witnesses(spec)
    prep = prepare(res.spec)
    return tuple(prep.candidate_maps(i)["mu"] for i in res.indices)


@lru_cache(maxsize=None)
def random_bimodule_algebras_f3(count=500, seed=2):
    """``(mu, left, right, circ, R)``: a random bimodule algebra on the two-dimensional bimodule."""
    rng = random.Random(seed)
    mu, left, right = frame("ex2.3-frame-2dim", 3)
    V, A = left.right, mu.left
    prods = []
    for c in associative_products(3):
        circ = sm.BilMap.from_function(V, V, V, mu.ring, lambda i, j, c=c: c.tensor[i][j])
        if st.check_bimodule_algebra(mu, left, right, circ).holds:
            prods.append(circ)
    out = []
    for _ in range(count):
        R = sm.random_linear(rng, V, A, mu.ring)
        out.append({"mu": mu, "left": left, "right": right, "circ": rng.choice(prods), "R": R})
    return tuple(out)


def _dcrbs(mu, R, S):
    w1, w2 = induced_curvatures(mu, R, S)
    return {"mu": mu, "R": R, "S": S, "omega1": w1, "omega2": w2}


@lru_cache(maxsize=None)
def dcrbs_f2():
    """Every double curved system over F_2 on the example algebra (curvatures induced)."""
    mu = frame("regular-frame", 2)[0]
    A, r2 = mu.left, mu.ring
    out = []
    for code in range(2 ** 8):
        digits = [(code >> k) & 1 for k in range(8)]
        R = sm.LinMap(A, A, ((r2(digits[0]), r2(digits[1])), (r2(digits[2]), r2(digits[3]))), r2)
        S = sm.LinMap(A, A, ((r2(digits[4]), r2(digits[5])), (r2(digits[6]), r2(digits[7]))), r2)
        out.append(_dcrbs(mu, R, S))
    return tuple(out)


@lru_cache(maxsize=None)
def dcrbs_random_f3(count=500, seed=3):
    """Random F_3 double curved systems, alternating the commutative and noncommutative algebras."""
    rng = random.Random(seed)
    comm = frame("regular-frame", 3)[0]
    nc = table_product(comm.left, MU_NC, comm.ring)
    out = []
    for k in range(count):
        mu = comm if k % 2 == 0 else nc
        R, S, _, _ = sm.random_dcrbs(rng, mu)
        out.append(_dcrbs(mu, R, S))
    return tuple(out)


def eq37(s):
    return st.check_side_condition("eq3.7", mu=s["mu"], omega1=s["omega1"], omega2=s["omega2"]).holds


@lru_cache(maxsize=None)
def dcrbs_with_eq37(count=150, seed=4):
    """Double curved systems whose curvatures satisfy eq3.7: all F_2 ones plus random F_3 ones."""
    out = [s for s in dcrbs_f2() if eq37(s)]
    rng = random.Random(seed)
    comm = frame("regular-frame", 3)[0]
    nc = table_product(comm.left, MU_NC, comm.ring)
    extra = []
    for k in range(40000):
        if len(extra) >= count:
            break
        mu = comm if k % 2 == 0 else nc
        R, S, _, _ = sm.random_dcrbs(rng, mu)
        s = _dcrbs(mu, R, S)
        if eq37(s):
            extra.append(s)
    return tuple(out + extra)


@lru_cache(maxsize=None)
def grb_instances(count=200, seed=5):
    """``(mu, nu, R)`` generalized Rota-Baxter data over F_2 and F_3."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        mu = frame("regular-frame", 2 + k % 2)[0]
        nu, R = sm.random_grb_instance(rng, mu)
        out.append({"mu": mu, "nu": nu, "R": R})
    return tuple(out)


def corpus_curved_systems():
    """Curved and O-operator corpus entries as role dicts (a missing curvature is zero)."""
    from curvedop.claims import resolve
    from curvedop.corpus import corpus

    out = []
    for e in corpus():
        c = e.bundle.claims[0]
        if c.kind not in ("curved_oos", "oos"):
            continue
        m = dict(resolve(e.bundle, c))
        if "omega" not in m:
            V = m["left"].right
            m["omega"] = sm.BilMap.zero(V, V, V, m["mu"].ring)
        out.append((e.id, m))
    return out


def corpus_grb_systems():
    from curvedop.claims import resolve
    from curvedop.corpus import corpus

    return [(e.id, resolve(e.bundle, e.bundle.claims[1])) for e in corpus() if e.id.startswith("ex3.4a/")]
