"""Hypothesis strategies shared by the property tests."""
from fractions import Fraction

from hypothesis import strategies as hs

from curvedop.coeff import Field, Poly, Ring
from curvedop.multilinear import BilMap, LinMap, Space

QRING = Ring(Field.rationals(), ("p", "q", "r"))
F5RING = Ring(Field.gf(5), ("p", "q"))

small_q = hs.fractions(min_value=-6, max_value=6, max_denominator=4)


def coefficients(ring):
    if ring.field.p:
        return hs.integers(0, ring.field.p - 1)
    return small_q


@hs.composite
def polys(draw, ring=QRING, max_terms=4, max_deg=3):
    n = draw(hs.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exp = tuple(draw(hs.integers(0, max_deg)) for _ in ring.params)
        terms[exp] = draw(coefficients(ring))
    return Poly(ring, terms)


def assignments(ring):
    vals = coefficients(ring)
    return hs.fixed_dictionaries({n: vals for n in ring.params})


def spaces(name, max_dim=3):
    return hs.integers(1, max_dim).map(lambda d: Space(name, tuple(f"{name.lower()}{i + 1}" for i in range(d))))


def entries(ring=QRING):
    """Cheap map entries: a fixed pool of small polys."""
    if ring.params:
        pool = ["0", "1", "-1", "2", "1/2", ring.params[0], f"{ring.params[0]} - 1",
                f"2*{ring.params[-1]}^2", f"{ring.params[0]}*{ring.params[-1]} + 3"]
    else:
        pool = ["0", "1", "-1", "2", "1/2", "-3"]
    return hs.sampled_from([ring.parse(t) for t in pool])


@hs.composite
def linmaps(draw, source, target, ring=QRING):
    flat = draw(hs.lists(entries(ring), min_size=source.dim * target.dim, max_size=source.dim * target.dim))
    rows = tuple(tuple(flat[r * source.dim:(r + 1) * source.dim]) for r in range(target.dim))
    return LinMap(source, target, rows, ring)


@hs.composite
def bilmaps(draw, left, right, target, ring=QRING, simple=False):
    n = left.dim * right.dim * target.dim
    elem = coefficients(ring).map(ring) if simple else entries(ring)
    flat = draw(hs.lists(elem, min_size=n, max_size=n))
    it = iter(flat)
    tensor = tuple(tuple(tuple(next(it) for _ in range(target.dim)) for _ in range(right.dim))
                   for _ in range(left.dim))
    return BilMap(left, right, target, tensor, ring)


def vectors(space, ring=QRING):
    return hs.lists(entries(ring), min_size=space.dim, max_size=space.dim).map(tuple)


def frac(x):
    return Fraction(x)
