"""Small fixed algebras used across tests."""
from curvedop.coeff import Field, Ring
from curvedop.multilinear import BilMap, LinMap, Space

QQ = Ring(Field.rationals(), ())


def table_product(space, table, ring=QQ):
    """``table[(i, j)] -> coordinate list``; missing pairs are zero."""
    n = space.dim
    return BilMap.from_function(space, space, space, ring,
                                lambda i, j: tuple(ring(c) for c in table.get((i, j), [0] * n)))


A2 = Space("A", ("e1", "e2"))
# e1 is a unit, e2 idempotent: commutative and associative
MU2 = {(0, 0): [1, 0], (0, 1): [0, 1], (1, 0): [0, 1], (1, 1): [0, 1]}
# e1e1 = e1, e1e2 = e2, the rest zero: associative, not commutative
MU_NC = {(0, 0): [1, 0], (0, 1): [0, 1]}

M2 = Space("M", ("E11", "E12", "E21", "E22"))
_UNITS = [(0, 0), (0, 1), (1, 0), (1, 1)]


def matrix_algebra(ring=QQ):
    def f(a, b):
        (i, j), (k, l) = _UNITS[a], _UNITS[b]
        return tuple(ring(1 if j == k and _UNITS[c] == (i, l) else 0) for c in range(4))
    return BilMap.from_function(M2, M2, M2, ring, f)


def lin(space_from, space_to, cols, ring=QQ):
    return LinMap.from_columns(space_from, space_to, [tuple(ring(c) for c in col) for col in cols], ring)


def opposite(mu):
    return mu.swap()
