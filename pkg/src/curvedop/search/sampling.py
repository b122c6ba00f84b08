"""Random instances over small prime fields, for property and implication tests.

All samplers take a ``random.Random`` so runs are reproducible from a seed.
"""
from __future__ import annotations

import random

from ..coeff import Ring
from ..multilinear import BilMap, LinMap, Space, postcompose, precompose, solve_linear
from .. import structures as st
from ..derive import induced_curvatures


def _rand(rng: random.Random, ring: Ring):
    return ring(rng.randrange(ring.field.characteristic))


def random_linear(rng: random.Random, source: Space, target: Space, ring: Ring) -> LinMap:
    rows = tuple(tuple(_rand(rng, ring) for _ in range(source.dim)) for _ in range(target.dim))
    return LinMap(source, target, rows, ring)


def random_bilinear(rng: random.Random, left: Space, right: Space, target: Space, ring: Ring) -> BilMap:
    return BilMap.from_function(left, right, target, ring,
                                lambda i, j: tuple(_rand(rng, ring) for _ in range(target.dim)))


def solve_curvature(mu, left, right, R, S, rng: random.Random | None = None) -> BilMap | None:
    """Some ``ω`` making ``(R, S, ω)`` a curved O-operator system, or ``None`` if none exists.

    For each basis pair the unknown ``ω(x, y)`` solves the stacked linear system
    ``R ω = R(x)R(y) - R(z)`` and ``S ω = S(x)S(y) - S(z)`` with
    ``z = R(x)▷y + x◁S(y)``.  With ``rng`` a random point of the solution set is
    returned, otherwise the particular solution.
    """
    ring = mu.ring
    fld = ring.field
    V = left.right
    z = st.o_system_argument(left, right, R, S, None)
    rhs_R = precompose(mu, R, R) - postcompose(R, z)
    rhs_S = precompose(mu, S, S) - postcompose(S, z)
    mat = [[a.constant_value() for a in row] for row in R.matrix + S.matrix]
    out = {}
    for i in range(V.dim):
        for j in range(V.dim):
            rhs = [a.constant_value() for a in rhs_R.tensor[i][j] + rhs_S.tensor[i][j]]
            sol = solve_linear(mat, rhs, fld)
            if sol is None:
                return None
            x, null = sol
            x = list(x)
            if rng is not None:
                for vec in null:
                    c = rng.randrange(fld.characteristic)
                    x = [fld(a + c * b) for a, b in zip(x, vec)]
            out[i, j] = tuple(ring(a) for a in x)
    return BilMap.from_function(V, V, V, ring, lambda i, j: out[i, j])


def random_curved_oos(rng: random.Random, mu, left, right, *, tries: int = 200):
    """Random ``(R, S, ω)`` satisfying both operator identities, or ``None`` after ``tries``."""
    ring = mu.ring
    A, V = mu.left, left.right
    for _ in range(tries):
        R = random_linear(rng, V, A, ring)
        S = random_linear(rng, V, A, ring)
        omega = solve_curvature(mu, left, right, R, S, rng)
        if omega is not None:
            return R, S, omega
    return None


def random_dcrbs(rng: random.Random, mu):
    """Random ``(R, S)`` with their induced curvatures; always a double curved Rota-Baxter system."""
    A = mu.left
    R = random_linear(rng, A, A, mu.ring)
    S = random_linear(rng, A, A, mu.ring)
    w1, w2 = induced_curvatures(mu, R, S)
    return R, S, w1, w2


def random_associative(rng: random.Random, space: Space, ring: Ring, *, tries: int = 500) -> BilMap:
    """A random associative product on ``space`` (falls back to zero)."""
    for _ in range(tries):
        b = random_bilinear(rng, space, space, space, ring)
        if st.check_associativity(b).holds:
            return b
    return BilMap.zero(space, space, space, ring)


def random_grb_instance(rng: random.Random, mu):
    """A compatible pair ``(μ, ν)`` with ``ν`` random in a small family, plus a random ``R`` solving the
    generalized identity (found by scanning, since the identity is quadratic in ``R``)."""
    from . import SearchSpec, enumerate_witnesses  # local import: avoids a cycle
    from ..corpus_io import Bundle, Claim

    ring = mu.ring
    A = mu.left
    p = ring.field.characteristic
    while True:
        choice = rng.randrange(3) if A.dim == 2 else rng.choice((0, 2))
        if choice == 0:
            nu = mu.scale(ring(rng.randrange(p)))
        elif choice == 1:
            nu = _diamond(mu, rng.randrange(p), rng.randrange(p))
        else:
            nu = BilMap.zero(A, A, A, ring)
        if st.check_compatible_pair(mu, nu).holds:
            break
    bundle = Bundle(ring, {A.name: A}, {"mu": mu, "nu": nu}, {}, {}, ())
    claim = Claim("generalized_rb", {"mu": "mu", "nu": "nu"})
    res = enumerate_witnesses(SearchSpec(bundle, "generalized_rb", ("R",), p, claim=claim))
    if not res.indices:
        return nu, LinMap.zero(A, A, ring)
    idx = res.indices[rng.randrange(len(res.indices))]
    from . import prepare
    maps = prepare(res.spec).candidate_maps(idx)
    return nu, maps["R"]


def _diamond(mu, a, b):
    """The two-parameter product of the compatible-pair example, on the 2-dimensional algebra of ``mu``."""
    ring = mu.ring
    A = mu.left
    table = {(0, 0): (a - b, b), (0, 1): (0, a), (1, 0): (0, a), (1, 1): (0, a)}
    return BilMap.from_function(A, A, A, ring, lambda i, j: tuple(ring(c) for c in table[i, j]))
