"""Finite-dimensional spaces and multilinear maps with Poly structure constants.

Conventions:

* A :class:`LinMap` stores ``matrix[row][col]`` with rows indexed by the target
  basis; column ``j`` is the image of the ``j``-th source basis vector.
* A :class:`BilMap` stores ``tensor[i][j]``, the image vector of ``(x_i, y_j)``.
* The basis of ``X ⊗ Y`` is the row-major lexicographic order of pairs:
  ``x1⊗y1, x1⊗y2, ..., x2⊗y1, ...``.  ``(X⊗Y)⊗Z`` and ``X⊗(Y⊗Z)`` produce the
  same Space, so three-fold products need no bracketing.
* Every axiom residual is a signed sum of contractions built here; residuals are
  values (:class:`TriTensor`, :class:`BilMap` or :class:`LinMap`), not booleans.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from .coeff import Field, Poly, Ring, RingMismatch, Scalar

Vector = tuple  # tuple[Poly, ...]


class ShapeError(ValueError):
    """Spaces or dimensions do not fit together."""


@dataclass(frozen=True)
class Space:
    name: str
    basis: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if not self.basis:
            raise ShapeError(f"space {self.name!r} needs at least one basis vector")
        if len(set(self.basis)) != len(self.basis):
            raise ShapeError(f"space {self.name!r} has repeated basis labels")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise KeyError(f"{label!r} is not a basis label of {self.name}") from None

    def __str__(self):
        return self.name


def tensor_space(X: Space, Y: Space) -> Space:
    return Space(f"{X.name}⊗{Y.name}", tuple(f"{a}⊗{b}" for a, b in product(X.basis, Y.basis)))


# -- vectors -------------------------------------------------------------------------


def zero_vector(ring: Ring, n: int) -> Vector:
    z = ring.zero
    return (z,) * n


def basis_vector(ring: Ring, n: int, i: int) -> Vector:
    z, o = ring.zero, ring.one
    return tuple(o if k == i else z for k in range(n))


def vadd(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Poly, v: Vector) -> Vector:
    if c.is_zero:
        return tuple(c for _ in v)
    return tuple(c * a for a in v)


def _axpy(acc: list, c: Poly, v: Sequence[Poly]) -> None:
    for k, a in enumerate(v):
        if a.terms:
            acc[k] = acc[k] + c * a


def _check_ring(*maps):
    rings = {m.ring for m in maps}
    if len(rings) > 1:
        raise RingMismatch("maps live over different rings")


# -- linear maps ----------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class LinMap:
    source: Space
    target: Space
    matrix: tuple  # tuple[tuple[Poly, ...], ...]; rows = target
    ring: Ring

    def __post_init__(self):
        m = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.dim or any(len(r) != self.source.dim for r in m):
            raise ShapeError(f"matrix shape does not fit {self.source} -> {self.target}")

    @classmethod
    def from_columns(cls, source: Space, target: Space, columns: Sequence[Vector], ring: Ring) -> "LinMap":
        if len(columns) != source.dim:
            raise ShapeError("one column per source basis vector required")
        rows = tuple(tuple(columns[j][i] for j in range(source.dim)) for i in range(target.dim))
        return cls(source, target, rows, ring)

    @classmethod
    def identity(cls, space: Space, ring: Ring) -> "LinMap":
        return cls.from_columns(space, space, [basis_vector(ring, space.dim, j) for j in range(space.dim)], ring)

    @classmethod
    def zero(cls, source: Space, target: Space, ring: Ring) -> "LinMap":
        z = ring.zero
        return cls(source, target, tuple((z,) * source.dim for _ in range(target.dim)), ring)

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.matrix)

    def __call__(self, v: Vector) -> Vector:
        return apply_linear(self, v)

    def __add__(self, other: "LinMap") -> "LinMap":
        self._same_shape(other)
        return LinMap(self.source, self.target,
                      tuple(vadd(a, b) for a, b in zip(self.matrix, other.matrix)), self.ring)

    def __sub__(self, other: "LinMap") -> "LinMap":
        self._same_shape(other)
        return LinMap(self.source, self.target,
                      tuple(vsub(a, b) for a, b in zip(self.matrix, other.matrix)), self.ring)

    def __neg__(self) -> "LinMap":
        return self.scale(-1)

    def scale(self, c) -> "LinMap":
        c = self.ring(c)
        return LinMap(self.source, self.target, tuple(vscale(c, r) for r in self.matrix), self.ring)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        return compose_linear(self, other)

    def _same_shape(self, other):
        _check_ring(self, other)
        if (self.source, self.target) != (other.source, other.target):
            raise ShapeError(f"{self.source}->{self.target} vs {other.source}->{other.target}")

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for r in self.matrix for a in r)

    def relabel(self, source: Space, target: Space) -> "LinMap":
        if source.dim != self.source.dim or target.dim != self.target.dim:
            raise ShapeError("relabel must keep dimensions")
        return LinMap(source, target, self.matrix, self.ring)

    def map_entries(self, fn: Callable[[Poly], Poly], ring: Ring | None = None) -> "LinMap":
        return LinMap(self.source, self.target, tuple(tuple(fn(a) for a in r) for r in self.matrix),
                      ring or self.ring)


def apply_linear(f: LinMap, v: Vector) -> Vector:
    if len(v) != f.source.dim:
        raise ShapeError(f"vector of length {len(v)} fed to map from {f.source}")
    out = []
    for row in f.matrix:
        acc = f.ring.zero
        for a, x in zip(row, v):
            if a.terms and x.terms:
                acc = acc + a * x
        out.append(acc)
    return tuple(out)


def compose_linear(f: LinMap, g: LinMap) -> LinMap:
    """``f ∘ g``."""
    _check_ring(f, g)
    if g.target != f.source:
        raise ShapeError(f"cannot compose {f.source}->{f.target} after {g.source}->{g.target}")
    cols = [apply_linear(f, g.column(j)) for j in range(g.source.dim)]
    return LinMap.from_columns(g.source, f.target, cols, f.ring)


def kron(f: LinMap, g: LinMap) -> LinMap:
    """``f ⊗ g`` on the lexicographic tensor bases."""
    _check_ring(f, g)
    rows = []
    for r1 in f.matrix:
        for r2 in g.matrix:
            rows.append(tuple(a * b for a in r1 for b in r2))
    return LinMap(tensor_space(f.source, g.source), tensor_space(f.target, g.target), tuple(rows), f.ring)


# -- bilinear maps --------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class BilMap:
    left: Space
    right: Space
    target: Space
    tensor: tuple  # tensor[i][j] -> image vector of (x_i, y_j)
    ring: Ring

    def __post_init__(self):
        t = tuple(tuple(tuple(v) for v in row) for row in self.tensor)
        object.__setattr__(self, "tensor", t)
        if len(t) != self.left.dim or any(len(r) != self.right.dim for r in t) or any(
            len(v) != self.target.dim for r in t for v in r
        ):
            raise ShapeError(f"tensor shape does not fit {self.left}⊗{self.right} -> {self.target}")

    @classmethod
    def zero(cls, left: Space, right: Space, target: Space, ring: Ring) -> "BilMap":
        z = zero_vector(ring, target.dim)
        return cls(left, right, target, tuple((z,) * right.dim for _ in range(left.dim)), ring)

    @classmethod
    def from_function(cls, left: Space, right: Space, target: Space, ring: Ring,
                      fn: Callable[[int, int], Vector]) -> "BilMap":
        return cls(left, right, target,
                   tuple(tuple(fn(i, j) for j in range(right.dim)) for i in range(left.dim)), ring)

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.left.dim, self.right.dim, self.target.dim)

    def __call__(self, x: Vector, y: Vector) -> Vector:
        return apply_bilinear(self, x, y)

    def _same_shape(self, other):
        _check_ring(self, other)
        if (self.left, self.right, self.target) != (other.left, other.right, other.target):
            raise ShapeError(
                f"{self.left}⊗{self.right}->{self.target} vs {other.left}⊗{other.right}->{other.target}"
            )

    def __add__(self, other: "BilMap") -> "BilMap":
        self._same_shape(other)
        return BilMap(self.left, self.right, self.target,
                      tuple(tuple(vadd(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.tensor, other.tensor)), self.ring)

    def __sub__(self, other: "BilMap") -> "BilMap":
        self._same_shape(other)
        return BilMap(self.left, self.right, self.target,
                      tuple(tuple(vsub(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.tensor, other.tensor)), self.ring)

    def __neg__(self) -> "BilMap":
        return self.scale(-1)

    def scale(self, c) -> "BilMap":
        c = self.ring(c)
        return BilMap(self.left, self.right, self.target,
                      tuple(tuple(vscale(c, v) for v in r) for r in self.tensor), self.ring)

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for r in self.tensor for v in r for a in v)

    def swap(self) -> "BilMap":
        """``(y, x) -> b(x, y)``."""
        return BilMap(self.right, self.left, self.target,
                      tuple(tuple(self.tensor[i][j] for i in range(self.left.dim))
                            for j in range(self.right.dim)), self.ring)

    def map_entries(self, fn: Callable[[Poly], Poly], ring: Ring | None = None) -> "BilMap":
        return BilMap(self.left, self.right, self.target,
                      tuple(tuple(tuple(fn(a) for a in v) for v in r) for r in self.tensor),
                      ring or self.ring)


def apply_bilinear(b: BilMap, x: Vector, y: Vector) -> Vector:
    if len(x) != b.left.dim or len(y) != b.right.dim:
        raise ShapeError(f"arguments of lengths {len(x)}, {len(y)} fed to {b.left}⊗{b.right}")
    acc = list(zero_vector(b.ring, b.target.dim))
    for i, xi in enumerate(x):
        if not xi.terms:
            continue
        for j, yj in enumerate(y):
            if yj.terms:
                _axpy(acc, xi * yj, b.tensor[i][j])
    return tuple(acc)


def precompose(b: BilMap, f: LinMap | None = None, g: LinMap | None = None) -> BilMap:
    """``(x, y) -> b(f(x), g(y))``; ``None`` means the identity on that slot."""
    if f is not None:
        _check_ring(b, f)
        if f.target != b.left:
            raise ShapeError(f"left slot expects {b.left}, map lands in {f.target}")
    if g is not None:
        _check_ring(b, g)
        if g.target != b.right:
            raise ShapeError(f"right slot expects {b.right}, map lands in {g.target}")
    left = f.source if f is not None else b.left
    right = g.source if g is not None else b.right
    n = b.ring
    xs = [f.column(i) if f is not None else basis_vector(n, left.dim, i) for i in range(left.dim)]
    ys = [g.column(j) if g is not None else basis_vector(n, right.dim, j) for j in range(right.dim)]
    return BilMap.from_function(left, right, b.target, b.ring, lambda i, j: apply_bilinear(b, xs[i], ys[j]))


def postcompose(h: LinMap, b: BilMap) -> BilMap:
    """``(x, y) -> h(b(x, y))``."""
    _check_ring(h, b)
    if h.source != b.target:
        raise ShapeError(f"cannot apply map from {h.source} to values in {b.target}")
    return BilMap(b.left, b.right, h.target,
                  tuple(tuple(apply_linear(h, v) for v in r) for r in b.tensor), b.ring)


def bil_as_linear(b: BilMap) -> LinMap:
    """Flatten to the linear map ``left ⊗ right -> target``."""
    cols = [b.tensor[i][j] for i in range(b.left.dim) for j in range(b.right.dim)]
    return LinMap.from_columns(tensor_space(b.left, b.right), b.target, cols, b.ring)


def linear_as_bil(f: LinMap, left: Space, right: Space) -> BilMap:
    """Inverse of :func:`bil_as_linear` for a map out of ``left ⊗ right``."""
    if f.source.dim != left.dim * right.dim:
        raise ShapeError(f"{f.source} is not {left}⊗{right}")
    return BilMap.from_function(left, right, f.target, f.ring, lambda i, j: f.column(i * right.dim + j))


# -- trilinear residuals -------------------------------------------------------------------


@dataclass(frozen=True)
class TriTensor:
    """A trilinear map ``X ⊗ Y ⊗ Z -> W``; ``entries[i][j][k]`` is an image vector."""

    spaces: tuple  # (X, Y, Z, W)
    entries: tuple
    ring: Ring

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return tuple(s.dim for s in self.spaces)

    def _same_shape(self, other):
        _check_ring(self, other)
        if self.spaces != other.spaces:
            raise ShapeError("trilinear composites have different shapes: "
                             + " vs ".join("⊗".join(map(str, s.spaces[:3])) + "->" + str(s.spaces[3])
                                           for s in (self, other)))

    def _zip(self, other, op):
        self._same_shape(other)
        return TriTensor(self.spaces, tuple(
            tuple(tuple(op(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(p1, p2))
            for p1, p2 in zip(self.entries, other.entries)), self.ring)

    def __add__(self, other):
        return self._zip(other, vadd)

    def __sub__(self, other):
        return self._zip(other, vsub)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "TriTensor":
        c = self.ring(c)
        return TriTensor(self.spaces, tuple(tuple(tuple(vscale(c, v) for v in r) for r in p)
                                            for p in self.entries), self.ring)

    @property
    def is_zero(self) -> bool:
        return all(a.is_zero for p in self.entries for r in p for v in r for a in v)

    def permute(self, order: Sequence[int]) -> "TriTensor":
        """Reorder the three inputs: the result's input ``k`` is this tensor's input ``order[k]``."""
        if sorted(order) != [0, 1, 2]:
            raise ValueError("order must be a permutation of (0, 1, 2)")
        sp = tuple(self.spaces[o] for o in order) + (self.spaces[3],)
        dims = [s.dim for s in sp[:3]]
        ents = []
        for a in range(dims[0]):
            pa = []
            for b in range(dims[1]):
                row = []
                for c in range(dims[2]):
                    idx = [0, 0, 0]
                    idx[order[0]], idx[order[1]], idx[order[2]] = a, b, c
                    row.append(self.entries[idx[0]][idx[1]][idx[2]])
                pa.append(tuple(row))
            ents.append(tuple(pa))
        return TriTensor(sp, tuple(ents), self.ring)

    def nonzero(self):
        for i, p in enumerate(self.entries):
            for j, r in enumerate(p):
                for k, v in enumerate(r):
                    for l, a in enumerate(v):
                        if a.terms:
                            yield (i, j, k, l), a


def trilinear_left(outer: BilMap, inner: BilMap) -> TriTensor:
    """``(x, y, z) -> outer(inner(x, y), z)``."""
    _check_ring(outer, inner)
    if inner.target != outer.left:
        raise ShapeError(f"inner lands in {inner.target}, outer left slot is {outer.left}")
    ring = outer.ring
    n = outer.target.dim
    ents = []
    for i in range(inner.left.dim):
        pi = []
        for j in range(inner.right.dim):
            u = inner.tensor[i][j]
            row = []
            for k in range(outer.right.dim):
                acc = list(zero_vector(ring, n))
                for m, um in enumerate(u):
                    if um.terms:
                        _axpy(acc, um, outer.tensor[m][k])
                row.append(tuple(acc))
            pi.append(tuple(row))
        ents.append(tuple(pi))
    return TriTensor((inner.left, inner.right, outer.right, outer.target), tuple(ents), ring)


def trilinear_right(outer: BilMap, inner: BilMap) -> TriTensor:
    """``(x, y, z) -> outer(x, inner(y, z))``."""
    _check_ring(outer, inner)
    if inner.target != outer.right:
        raise ShapeError(f"inner lands in {inner.target}, outer right slot is {outer.right}")
    ring = outer.ring
    n = outer.target.dim
    ents = []
    for i in range(outer.left.dim):
        pi = []
        for j in range(inner.left.dim):
            row = []
            for k in range(inner.right.dim):
                u = inner.tensor[j][k]
                acc = list(zero_vector(ring, n))
                for m, um in enumerate(u):
                    if um.terms:
                        _axpy(acc, um, outer.tensor[i][m])
                row.append(tuple(acc))
            pi.append(tuple(row))
        ents.append(tuple(pi))
    return TriTensor((outer.left, inner.left, inner.right, outer.target), tuple(ents), ring)


def composite_with_linear(outer: BilMap, inner: BilMap, *, nest: str,
                          pre: Sequence[LinMap | None] = (None, None, None),
                          post: LinMap | None = None) -> TriTensor:
    """Nested composite with linear maps inserted on the three inputs and the output.

    ``nest="left"`` builds ``post(outer(inner(f x, g y), h z))``; ``nest="right"``
    builds ``post(outer(f x, inner(g y, h z)))`` where ``pre = (f, g, h)``.
    """
    f, g, h = pre
    if nest == "left":
        t = trilinear_left(precompose(outer, None, h), precompose(inner, f, g))
    elif nest == "right":
        t = trilinear_right(precompose(outer, f, None), precompose(inner, g, h))
    else:
        raise ValueError("nest must be 'left' or 'right'")
    if post is not None:
        if post.source != t.spaces[3]:
            raise ShapeError(f"cannot apply map from {post.source} to values in {t.spaces[3]}")
        t = TriTensor(t.spaces[:3] + (post.target,),
                      tuple(tuple(tuple(apply_linear(post, v) for v in r) for r in p) for p in t.entries),
                      t.ring)
    return t


# -- exact linear algebra over the base field -------------------------------------------------


def _rref(rows: list[list[Scalar]], field: Field, ncols: int):
    """In-place reduced row echelon form; returns pivot columns."""
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.norm(a * inv) for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                k = rows[i][c]
                rows[i] = [field.norm(a - k * b) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def nullspace(matrix: Sequence[Sequence[Scalar]], field: Field, ncols: int | None = None) -> list[list[Scalar]]:
    """Basis of ``{x : matrix @ x = 0}`` over ``field``."""
    ncols = ncols if ncols is not None else (len(matrix[0]) if matrix else 0)
    rows = [[field(a) for a in row] for row in matrix]
    pivots = _rref(rows, field, ncols) if rows else []
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        x = [0] * ncols
        x[fc] = 1
        for r, pc in enumerate(pivots):
            x[pc] = field.norm(-rows[r][fc])
        basis.append(x)
    return basis


def solve_linear(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], field: Field):
    """Solve ``matrix @ x = rhs``; returns ``(particular, nullspace basis)`` or ``None``."""
    ncols = len(matrix[0]) if matrix else 0
    rows = [[field(a) for a in row] + [field(b)] for row, b in zip(matrix, rhs)]
    pivots = _rref(rows, field, ncols)
    for row in rows[len(pivots):]:
        if row[-1] != 0:
            return None
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rows[r][-1]
    return x, nullspace(matrix, field, ncols)


def constant_matrix(f: LinMap) -> list[list[Scalar]]:
    """Field-valued matrix of a parameter-free map (raises ValueError otherwise)."""
    return [[a.constant_value() for a in row] for row in f.matrix]


def all_basis_triples(X: Space, Y: Space, Z: Space):
    return product(range(X.dim), range(Y.dim), range(Z.dim))
