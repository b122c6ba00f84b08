"""Axiom checkers.

Each ``check_*`` function evaluates the residual of every identity of a structure
(left side minus right side, as an exact multilinear map) and packs the nonzero
entries into a :class:`Report`.  Equation tags such as ``"eq2.1"`` are stable
public identifiers that show up in reports and CLI output.

Hypotheses (for instance that the actions form a bimodule before curved
O-operator identities are checked) are enforced in ``mode="strict"``, the
default: a failing hypothesis raises :class:`HypothesisError`.  ``mode="audit"``
never raises and appends the hypothesis residuals as auxiliary equations.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .coeff import Poly
from .multilinear import (
    BilMap,
    LinMap,
    ShapeError,
    Space,
    TriTensor,
    bil_as_linear,
    compose_linear,
    constant_matrix,
    kron,
    nullspace,
    postcompose,
    precompose,
    tensor_space,
    trilinear_left,
    trilinear_right,
)

STRICT = "strict"
AUDIT = "audit"
_MODES = (STRICT, AUDIT)


class Verdict(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    CONDITIONAL = "conditional"


class HypothesisError(ValueError):
    """A theorem's hypothesis is not satisfied (strict mode)."""

    def __init__(self, what: str, report: "Report"):
        self.what = what
        self.report = report
        bad = ", ".join(e.tag for e in report.equations if not e.holds)
        super().__init__(f"hypothesis failed: {what} ({bad})")


class UnsupportedError(ValueError):
    pass


@dataclass(frozen=True)
class Equation:
    tag: str
    entries: tuple  # ((multi-index, Poly), ...), nonzero only
    axes: tuple = ()  # basis labels per index position
    auxiliary: bool = False

    @property
    def holds(self) -> bool:
        return not self.entries

    def labelled(self):
        """Yield ``(labels, value)`` with basis labels instead of integer indices."""
        for idx, val in self.entries:
            if self.axes:
                yield tuple(ax[i] for ax, i in zip(self.axes, idx)), val
            else:
                yield tuple(map(str, idx)), val


@dataclass(frozen=True)
class Report:
    claim: str
    equations: tuple = field(default_factory=tuple)

    def _primary(self):
        return [e for e in self.equations if not e.auxiliary]

    @property
    def constraints(self) -> tuple[Poly, ...]:
        """Deduplicated, sign-normalized nonzero residual polys of the non-auxiliary equations."""
        seen = {}
        for eq in self._primary():
            for _, val in eq.entries:
                n = val.normalized()
                seen[n] = None
        return tuple(sorted(seen, key=lambda f: (f.degree, len(f.terms), str(f))))

    @property
    def verdict(self) -> Verdict:
        bad = [v for e in self._primary() for _, v in e.entries]
        if not bad:
            return Verdict.HOLDS
        if all(v.is_constant for v in bad):
            return Verdict.FAILS
        return Verdict.CONDITIONAL

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.HOLDS

    @property
    def consistent(self) -> bool:
        """False when some constraint is a nonzero constant, so no specialization can help."""
        return not any(c.is_constant for c in self.constraints)

    def equation(self, tag: str) -> Equation:
        for e in self.equations:
            if e.tag == tag:
                return e
        raise KeyError(tag)

    def holds_for(self, tag: str) -> bool:
        return self.equation(tag).holds

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(e.tag for e in self.equations)

    def merged(self, other: "Report", *, auxiliary: bool = False) -> "Report":
        extra = tuple(Equation(e.tag, e.entries, e.axes, e.auxiliary or auxiliary) for e in other.equations)
        return Report(self.claim, self.equations + extra)


# -- residual packing -----------------------------------------------------------------------


def _nonzero_bil(b: BilMap):
    for i, row in enumerate(b.tensor):
        for j, v in enumerate(row):
            for k, a in enumerate(v):
                if a.terms:
                    yield (i, j, k), a


def _nonzero_lin(f: LinMap):
    for i, row in enumerate(f.matrix):
        for j, a in enumerate(row):
            if a.terms:
                yield (i, j), a


def equation(tag: str, residual, *, auxiliary: bool = False) -> Equation:
    """Pack a residual map (TriTensor, BilMap or LinMap) into an :class:`Equation`."""
    if isinstance(residual, TriTensor):
        entries = tuple(residual.nonzero())
        axes = tuple(s.basis for s in residual.spaces)
    elif isinstance(residual, BilMap):
        entries = tuple(_nonzero_bil(residual))
        axes = (residual.left.basis, residual.right.basis, residual.target.basis)
    elif isinstance(residual, LinMap):
        entries = tuple(_nonzero_lin(residual))
        axes = (residual.target.basis, residual.source.basis)
    else:
        raise TypeError(f"cannot pack {type(residual).__name__} as a residual")
    return Equation(tag, entries, axes, auxiliary)


def _report(claim: str, *eqs: Equation) -> Report:
    return Report(claim, tuple(eqs))


def _check_mode(mode):
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}")


def _hypothesis(report: Report, hyp: Report, what: str, mode: str) -> Report:
    if mode == STRICT:
        if not hyp.holds:
            raise HypothesisError(what, hyp)
        return report
    return report.merged(hyp, auxiliary=True)


def _endo(b: BilMap, name: str) -> Space:
    if not (b.left == b.right == b.target):
        raise ShapeError(f"{name} must map V⊗V -> V, got {b.left}⊗{b.right} -> {b.target}")
    return b.left


def _lin(f: LinMap, src: Space, tgt: Space, name: str):
    if f.source != src or f.target != tgt:
        raise ShapeError(f"{name} must map {src} -> {tgt}, got {f.source} -> {f.target}")


def _bil(b: BilMap, left: Space, right: Space, target: Space, name: str):
    if (b.left, b.right, b.target) != (left, right, target):
        raise ShapeError(f"{name} must map {left}⊗{right} -> {target}, "
                         f"got {b.left}⊗{b.right} -> {b.target}")


def associator(mu: BilMap) -> TriTensor:
    return trilinear_left(mu, mu) - trilinear_right(mu, mu)


# -- associative algebras, bimodules, pre-Lie ------------------------------------------------------


def check_associativity(mu: BilMap, *, tag: str = "eq3.1") -> Report:
    """``(xy)z = x(yz)``."""
    _endo(mu, "product")
    return _report("associativity", equation(tag, associator(mu)))


def check_bimodule(mu: BilMap, left: BilMap, right: BilMap) -> Report:
    """The three bimodule identities for ``left: A⊗V -> V`` and ``right: V⊗A -> V``."""
    A = _endo(mu, "algebra product")
    V = left.right
    _bil(left, A, V, V, "left action")
    _bil(right, V, A, V, "right action")
    # a▷(b▷x) - (ab)▷x
    r1 = trilinear_right(left, left) - trilinear_left(left, mu)
    # (x◁a)◁b - x◁(ab)
    r2 = trilinear_left(right, right) - trilinear_right(right, mu)
    # (a▷x)◁b - a▷(x◁b)
    r3 = trilinear_left(right, left) - trilinear_right(left, right)
    return _report("bimodule", equation("eq1.2a", r1), equation("eq1.2b", r2), equation("eq1.2c", r3))


def check_pre_lie(circ: BilMap) -> Report:
    """``(xy)z - x(yz) = (yx)z - y(xz)``."""
    _endo(circ, "product")
    return _report("pre_lie", equation("eq1.3", _prelie_tensor(circ)))


def check_bimodule_algebra(mu: BilMap, left: BilMap, right: BilMap, circ: BilMap, *, mode: str = STRICT) -> Report:
    """``(V, ∘, ▷, ◁)`` is an A-bimodule algebra: ``∘`` associative and compatible with both actions."""
    _check_mode(mode)
    V = _endo(circ, "V product")
    _bil(left, mu.left, V, V, "left action")
    r1 = trilinear_right(left, circ) - trilinear_left(circ, left)        # a▷(x∘y) - (a▷x)∘y
    r2 = trilinear_left(right, circ) - trilinear_right(circ, right)      # (x∘y)◁a - x∘(y◁a)
    r3 = trilinear_left(circ, right) - trilinear_right(circ, left)       # (x◁a)∘y - x∘(a▷y)
    rep = _report("bimodule_algebra",
                  equation("bma.assoc", associator(circ)),
                  equation("bma.a", r1), equation("bma.b", r2), equation("bma.c", r3))
    return _hypothesis(rep, check_bimodule(mu, left, right), "bimodule", mode)


# -- curved O-operator systems -------------------------------------------------------------------------


def _curved_hypotheses(mu, left, right) -> Report:
    return check_associativity(mu, tag="hyp.assoc").merged(check_bimodule(mu, left, right))


def o_system_argument(left: BilMap, right: BilMap, R: LinMap, S: LinMap, omega: BilMap | None) -> BilMap:
    """``(x, y) -> R(x)▷y + x◁S(y) + ω(x⊗y)``."""
    t = precompose(left, R, None) + precompose(right, None, S)
    if omega is not None:
        t = t + omega
    return t


def curved_oos_residuals(mu, left, right, R, S, omega) -> tuple[BilMap, BilMap]:
    A = _endo(mu, "algebra product")
    V = left.right
    _bil(left, A, V, V, "left action")
    _bil(right, V, A, V, "right action")
    _lin(R, V, A, "R")
    _lin(S, V, A, "S")
    if omega is not None:
        _bil(omega, V, V, V, "ω")
    t = o_system_argument(left, right, R, S, omega)
    r1 = precompose(mu, R, R) - postcompose(R, t)
    r2 = precompose(mu, S, S) - postcompose(S, t)
    return r1, r2


def check_curved_oos(mu: BilMap, left: BilMap, right: BilMap, R: LinMap, S: LinMap,
                     omega: BilMap | None, *, mode: str = STRICT, claim: str = "curved_oos") -> Report:
    """Curved O-operator system: ``R(x)R(y) = R(R(x)▷y + x◁S(y) + ω(x⊗y))`` and the S-analogue.

    ``omega=None`` is the plain O-operator system.
    """
    _check_mode(mode)
    r1, r2 = curved_oos_residuals(mu, left, right, R, S, omega)
    rep = _report(claim, equation("eq2.1", r1), equation("eq2.2", r2))
    return _hypothesis(rep, _curved_hypotheses(mu, left, right), "A-bimodule", mode)


def check_oos(mu, left, right, R, S, *, mode: str = STRICT) -> Report:
    return check_curved_oos(mu, left, right, R, S, None, mode=mode, claim="oos")


def check_curved_rbs(mu: BilMap, R: LinMap, S: LinMap, omega: BilMap, *, mode: str = STRICT) -> Report:
    """Curved Rota-Baxter system: the curved system on the regular bimodule ``(A, L, R)``."""
    return check_curved_oos(mu, mu, mu, R, S, omega, mode=mode, claim="curved_rbs")


SPECIALIZATIONS = ("rota_baxter", "o_operator", "curved_rbs", "oos", "reynolds", "td_algebra", "nijenhuis")


def check_rota_baxter(mu: BilMap, R: LinMap, weight, *, mode: str = STRICT) -> Report:
    """Weight-λ Rota-Baxter operator: ``R(x)R(y) = R(R(x)y + xR(y) + λxy)``."""
    return check_curved_oos(mu, mu, mu, R, R, mu.scale(weight), mode=mode, claim="rota_baxter")


def check_o_operator(mu, left, right, R, circ, weight, *, mode: str = STRICT) -> Report:
    """O-operator of weight λ on an A-bimodule algebra ``(V, ∘, ▷, ◁)``."""
    rep = check_curved_oos(mu, left, right, R, R, circ.scale(weight), mode=mode, claim="o_operator")
    return _hypothesis(rep, check_bimodule_algebra(mu, left, right, circ, mode=AUDIT),
                       "A-bimodule algebra", mode)


def check_reynolds(mu: BilMap, R: LinMap, *, mode: str = STRICT) -> Report:
    """Reynolds operator: ``R(x)R(y) = R(R(x)y + xR(y) - R(x)R(y))``."""
    return check_curved_oos(mu, mu, mu, R, R, -precompose(mu, R, R), mode=mode, claim="reynolds")


def check_unit(mu: BilMap, unit) -> Report:
    A = _endo(mu, "product")
    ring = mu.ring
    ident = LinMap.identity(A, ring)
    left_mult = LinMap.from_columns(A, A, [mu(unit, ident.column(j)) for j in range(A.dim)], ring)
    right_mult = LinMap.from_columns(A, A, [mu(ident.column(j), unit) for j in range(A.dim)], ring)
    return _report("unit", equation("unit.left", left_mult - ident), equation("unit.right", right_mult - ident))


def check_td_algebra(mu: BilMap, R: LinMap, unit, *, mode: str = STRICT) -> Report:
    """TD operator: ``R(x)R(y) = R(R(x)y + xR(y) - xR(1)y)``; needs a two-sided unit."""
    if unit is None:
        raise ValueError("TD-algebra check needs a unit element")
    u = check_unit(mu, unit)
    if not u.holds:
        raise ValueError("declared unit is not a two-sided unit: "
                         + ", ".join(e.tag for e in u.equations if not e.holds))
    r1 = R(unit)
    A = mu.left
    ring = mu.ring
    # ω(x⊗y) = -x R(1) y
    omega = BilMap.from_function(A, A, A, ring, lambda i, j: tuple(
        -a for a in mu(mu(_e(ring, A, i), r1), _e(ring, A, j))))
    return check_curved_oos(mu, mu, mu, R, R, omega, mode=mode, claim="td_algebra")


def check_nijenhuis(mu: BilMap, R: LinMap, *, mode: str = STRICT) -> Report:
    """Nijenhuis operator: ``R(x)R(y) = R(R(x)y + xR(y) - R(xy))``."""
    return check_curved_oos(mu, mu, mu, R, R, -postcompose(R, mu), mode=mode, claim="nijenhuis")


def check_specialization(kind: str, *, mu, R, left=None, right=None, S=None, omega=None,
                         circ=None, weight=None, unit=None, mode: str = STRICT) -> Report:
    """Dispatch to the specialized curved system named by ``kind``."""
    if kind == "rota_baxter":
        return check_rota_baxter(mu, R, weight if weight is not None else 0, mode=mode)
    if kind == "o_operator":
        return check_o_operator(mu, left, right, R, circ, weight if weight is not None else 1, mode=mode)
    if kind == "curved_rbs":
        return check_curved_rbs(mu, R, S, omega, mode=mode)
    if kind == "oos":
        return check_oos(mu, left, right, R, S, mode=mode)
    if kind == "reynolds":
        return check_reynolds(mu, R, mode=mode)
    if kind == "td_algebra":
        return check_td_algebra(mu, R, unit, mode=mode)
    if kind == "nijenhuis":
        return check_nijenhuis(mu, R, mode=mode)
    raise ValueError(f"unknown specialization {kind!r}")


def _e(ring, space, i):
    return tuple(ring.one if k == i else ring.zero for k in range(space.dim))


# -- extended bimodule algebras -------------------------------------------------------------------


def check_extended_bimodule_algebra(mu, left, right, circ, R, S, *, mode: str = STRICT) -> Report:
    """The three compatibilities of an extended A-bimodule algebra; eq2.4 is auxiliary."""
    _check_mode(mode)
    V = _endo(circ, "V product")
    _lin(R, V, mu.left, "R")
    _lin(S, V, mu.left, "S")
    lR = precompose(left, R, None)      # (x, y) -> R(x)▷y
    rS = precompose(right, None, S)     # (x, y) -> x◁S(y)
    r1 = trilinear_right(lR, circ) - trilinear_left(circ, lR)    # R(x)▷(y∘z) - (R(x)▷y)∘z
    r2 = trilinear_left(rS, circ) - trilinear_right(circ, rS)    # (x∘y)◁S(z) - x∘(y◁S(z))
    r3 = trilinear_right(circ, lR) - trilinear_left(circ, rS)    # x∘(R(y)▷z) - (x◁S(y))∘z
    aux = trilinear_right(circ, precompose(left, R - S, None))   # x∘((R-S)(y)▷z)
    rep = _report("extended_bimodule_algebra",
                  equation("eq2.3a", r1), equation("eq2.3b", r2), equation("eq2.3c", r3),
                  equation("eq2.4", aux, auxiliary=True))
    hyp = check_bimodule(mu, left, right).merged(check_associativity(circ, tag="hyp.assoc"))
    return _hypothesis(rep, hyp, "A-bimodule with associative ∘", mode)


# -- dendriform and tridendriform systems ---------------------------------------------------------


def _sum(*maps: BilMap) -> BilMap:
    out = maps[0]
    for m in maps[1:]:
        out = out + m
    return out


def dendriform_residuals(prec, succ, lessdot, gtrdot, dot=None) -> list[tuple[str, TriTensor]]:
    """Residuals of the (tri)dendriform system identities, tagged by equation."""
    A = prec.left
    V = prec.right
    _bil(prec, A, V, A, "≺")
    _bil(succ, V, A, A, "≻")
    _bil(lessdot, V, V, V, "⋖")
    _bil(gtrdot, V, V, V, "⋗")
    if dot is None:
        star = lessdot + gtrdot
        tags = ["eq2.5", "eq2.6", "eq2.7", "eq2.8", "eq2.9", "eq2.10"]
    else:
        _bil(dot, V, V, V, "·")
        star = _sum(lessdot, gtrdot, dot)
        tags = ["eq2.12", "eq2.13", "eq2.14", "eq2.15", "eq2.16", "eq2.17"]
    res = [
        trilinear_left(prec, prec) - trilinear_right(prec, star),        # (a≺x)≺y = a≺(x*y)
        trilinear_right(succ, prec) - trilinear_left(prec, succ),        # x≻(a≺y) = (x≻a)≺y
        trilinear_right(succ, succ) - trilinear_left(succ, star),        # x≻(y≻a) = (x*y)≻a
        trilinear_left(lessdot, lessdot) - trilinear_right(lessdot, star),
        trilinear_right(gtrdot, lessdot) - trilinear_left(lessdot, gtrdot),
        trilinear_right(gtrdot, gtrdot) - trilinear_left(gtrdot, star),
    ]
    out = list(zip(tags, res))
    if dot is not None:
        out += [
            ("eq2.18a", trilinear_left(dot, lessdot) - trilinear_right(dot, gtrdot)),
            ("eq2.18b", trilinear_left(dot, gtrdot) - trilinear_right(gtrdot, dot)),
            ("eq2.19a", trilinear_left(lessdot, dot) - trilinear_right(dot, lessdot)),
            ("eq2.19b", trilinear_left(dot, dot) - trilinear_right(dot, dot)),
        ]
    return out


def check_dendriform_system(prec, succ, lessdot, gtrdot) -> Report:
    return Report("dendriform_system", tuple(equation(t, r) for t, r in
                                             dendriform_residuals(prec, succ, lessdot, gtrdot)))


def check_tridendriform_system(prec, succ, lessdot, gtrdot, dot) -> Report:
    return Report("tridendriform_system", tuple(equation(t, r) for t, r in
                                                dendriform_residuals(prec, succ, lessdot, gtrdot, dot)))


def check_dendriform_algebra(prec: BilMap, succ: BilMap) -> Report:
    """Single-space dendriform algebra, as the system with ``V = A``, ``⋖ = ≺`` and ``⋗ = ≻``."""
    _endo(prec, "≺")
    rep = check_dendriform_system(prec, succ, prec, succ)
    return Report("dendriform_algebra", rep.equations)


def check_tridendriform_algebra(prec: BilMap, succ: BilMap, dot: BilMap) -> Report:
    _endo(prec, "≺")
    rep = check_tridendriform_system(prec, succ, prec, succ, dot)
    return Report("tridendriform_algebra", rep.equations)


# -- compatible pairs and generalized Rota-Baxter algebras --------------------------------------------


def check_compatible_pair(mu: BilMap, nu: BilMap) -> Report:
    V = _endo(mu, "μ")
    _bil(nu, V, V, V, "ν")
    return _report(
        "compatible_pair",
        equation("eq3.1a", associator(mu)),
        equation("eq3.1b", associator(nu)),
        equation("eq3.2a", trilinear_left(nu, mu) - trilinear_right(mu, nu)),   # ν(μ⊗id) = μ(id⊗ν)
        equation("eq3.2b", trilinear_right(mu, nu) - trilinear_left(mu, nu)),   # μ(id⊗ν) = μ(ν⊗id)
        equation("eq3.2c", trilinear_left(mu, nu) - trilinear_right(nu, mu)),   # μ(ν⊗id) = ν(id⊗μ)
    )


def check_generalized_rb(mu: BilMap, nu: BilMap, R: LinMap) -> Report:
    """``R(x)R(y) = R(R(x)y + xR(y) + x◇y)``."""
    V = _endo(mu, "μ")
    _bil(nu, V, V, V, "◇")
    _lin(R, V, V, "R")
    t = precompose(mu, R, None) + precompose(mu, None, R) + nu
    return _report("generalized_rb", equation("eq3.3", precompose(mu, R, R) - postcompose(R, t)))


def dcrbs_residuals(mu, R, S, omega1, omega2) -> tuple[BilMap, BilMap]:
    A = _endo(mu, "μ")
    _lin(R, A, A, "R")
    _lin(S, A, A, "S")
    _bil(omega1, A, A, A, "ω₁")
    _bil(omega2, A, A, A, "ω₂")
    t = precompose(mu, R, None) + precompose(mu, None, S)
    r1 = precompose(mu, R, R) - postcompose(R, t) - omega1
    r2 = precompose(mu, S, S) - postcompose(S, t) - omega2
    return r1, r2


def check_double_curved_rbs(mu, R, S, omega1, omega2, *, mode: str = STRICT) -> Report:
    """``R(a)R(b) = R(R(a)b + aS(b)) + ω₁(a⊗b)`` and ``S(a)S(b) = S(R(a)b + aS(b)) + ω₂(a⊗b)``."""
    _check_mode(mode)
    r1, r2 = dcrbs_residuals(mu, R, S, omega1, omega2)
    rep = _report("double_curved_rbs", equation("eq3.4", r1), equation("eq3.5", r2))
    return _hypothesis(rep, check_associativity(mu, tag="hyp.assoc"), "associative A", mode)


# -- side conditions -----------------------------------------------------------------------------------------


SIDE_CONDITIONS = ("eq2.22", "eq2.24", "eq2.26", "eq2.28", "eq2.30", "eq3.7")


def star_product(left, right, circ, R, S) -> BilMap:
    """``x⋆y = R(x)▷y + x◁S(y) + x∘y``."""
    return o_system_argument(left, right, R, S, circ)


def _eq_2_22(mu, left, right, circ, R, S) -> TriTensor:
    star = star_product(left, right, circ, R, S)
    lhs_inner = precompose(mu, R, R) - postcompose(R, star)            # R(x)R(y) - R(x⋆y)
    rhs_inner = precompose(mu, S, S) - postcompose(S, star)            # S(y)S(z) - S(y⋆z)
    return trilinear_left(left, lhs_inner) - trilinear_right(right, rhs_inner)


def side_residual(cid: str, *, mu=None, left=None, right=None, circ=None, R=None, S=None,
                  omega=None, omega1=None, omega2=None, weight=None):
    if cid == "eq2.22":
        return _eq_2_22(mu, left, right, circ, R, S)
    if cid == "eq2.24":
        return _eq_2_22(mu, left, right, circ, R, R)
    if cid == "eq2.26":
        beta = (R - S).scale(_half(R))
        return precompose(left, beta, None) - precompose(right, None, beta)
    if cid == "eq2.28":
        w1 = postcompose(R, omega)
        w2 = postcompose(S, omega)
        return trilinear_left(left, w1) - trilinear_right(right, w2)
    if cid == "eq2.30":
        lam = weight if weight is not None else 1
        w = postcompose(R, circ).scale(lam)
        return trilinear_left(left, w) - trilinear_right(right, w)
    if cid == "eq3.7":
        return trilinear_left(mu, omega1) - trilinear_right(mu, omega2)
    raise ValueError(f"unknown side condition {cid!r}; expected one of {SIDE_CONDITIONS}")


def _half(f: LinMap):
    field = f.ring.field
    if field.characteristic == 2:
        raise ValueError("symmetrizer needs characteristic different from 2")
    return field.inv(field(2))


def check_side_condition(cid: str, **maps) -> Report:
    """Residual of one of the stated side identities (no hypotheses are checked)."""
    return _report(cid, equation(cid, side_residual(cid, **maps)))


# -- double curved weak pseudotwistors -------------------------------------------------------------------


def check_pseudotwistor(mu: BilMap, T: LinMap, T3: LinMap, omega1: BilMap, omega2: BilMap,
                        *, mode: str = STRICT) -> Report:
    """Both squares of the first diagram and the curvature square, as residual linear maps."""
    _check_mode(mode)
    A = _endo(mu, "μ")
    ring = mu.ring
    AA = tensor_space(A, A)
    AAA = tensor_space(AA, A)
    T = T.relabel(AA, AA)
    T3 = T3.relabel(AAA, AAA)
    ident = LinMap.identity(A, ring)
    m = bil_as_linear(mu)
    muT = compose_linear(m, T)
    w1 = bil_as_linear(omega1)
    w2 = bil_as_linear(omega2)
    left_sq = (compose_linear(T, kron(ident, muT))
               - compose_linear(kron(ident, m), T3) + kron(ident, w2))
    right_sq = (compose_linear(T, kron(muT, ident))
                - compose_linear(kron(m, ident), T3) + kron(w1, ident))
    curv = compose_linear(m, kron(w1, ident)) - compose_linear(m, kron(ident, w2))
    rep = _report("pseudotwistor", equation("eq3.8a", left_sq), equation("eq3.8b", right_sq),
                  equation("eq3.9", curv))
    return _hypothesis(rep, check_associativity(mu, tag="hyp.assoc"), "associative A", mode)


# -- morphisms ---------------------------------------------------------------------------------------------------


def check_morphism(source: dict, target: dict, f: LinMap, g: LinMap, *, verbatim: bool = False,
                   mode: str = STRICT) -> Report:
    """Morphism ``(f, g)`` of curved O-operator systems.

    ``source``/``target`` hold the roles ``mu, left, right, R, S, omega``.  The
    default condition set is ``f∘R = P∘g``, ``f∘S = T∘g``; ``verbatim=True``
    additionally checks the crossed pair ``f∘R = T∘g`` and ``f∘S = P∘g``.
    """
    _check_mode(mode)
    mu, left, right = source["mu"], source["left"], source["right"]
    R, S, omega = source["R"], source["S"], source.get("omega")
    nu_mu, nu_left, nu_right = target["mu"], target["left"], target["right"]
    P, Tm, nu = target["R"], target["S"], target.get("omega")
    _lin(f, mu.left, nu_mu.left, "f")
    _lin(g, left.right, nu_left.right, "g")
    eqs = [
        equation("mor.algebra", postcompose(f, mu) - precompose(nu_mu, f, f)),
        equation("mor.left", postcompose(g, left) - precompose(nu_left, f, g)),
        equation("mor.right", postcompose(g, right) - precompose(nu_right, g, f)),
        equation("mor.R", compose_linear(f, R) - compose_linear(P, g)),
        equation("mor.S", compose_linear(f, S) - compose_linear(Tm, g)),
    ]
    V, W = left.right, nu_left.right
    zero_v = BilMap.zero(V, V, V, mu.ring)
    zero_w = BilMap.zero(W, W, W, mu.ring)
    eqs.append(equation("mor.omega", postcompose(g, omega if omega is not None else zero_v)
                        - precompose(nu if nu is not None else zero_w, g, g)))
    if verbatim:
        eqs.append(equation("mor.RT", compose_linear(f, R) - compose_linear(Tm, g)))
        eqs.append(equation("mor.SP", compose_linear(f, S) - compose_linear(P, g)))
    rep = Report("morphism_verbatim" if verbatim else "morphism", tuple(eqs))
    src = check_curved_oos(mu, left, right, R, S, omega, mode=AUDIT)
    tgt = check_curved_oos(nu_mu, nu_left, nu_right, P, Tm, nu, mode=AUDIT)
    hyp = Report("systems", tuple(Equation("src." + e.tag, e.entries, e.axes) for e in src.equations)
                 + tuple(Equation("tgt." + e.tag, e.entries, e.axes) for e in tgt.equations))
    return _hypothesis(rep, hyp, "both sides are curved O-operator systems", mode)


# -- centers -----------------------------------------------------------------------------------------------------


def commutator_map(mu: BilMap) -> LinMap:
    """``x -> (x e_k - e_k x)_k`` as a map ``A -> A ⊗ A`` (k-th block = k-th commutator)."""
    A = _endo(mu, "μ")
    comm = mu - mu.swap()
    cols = []
    for i in range(A.dim):
        cols.append(tuple(a for k in range(A.dim) for a in comm.tensor[i][k]))
    return LinMap.from_columns(A, tensor_space(A, A), cols, mu.ring)


def compute_center(mu: BilMap) -> list[tuple]:
    """Basis of the center, as coordinate vectors over the base field.

    Only parameter-free products are supported; for parametric ones use
    :func:`commutator_map` and read off the conditions.
    """
    try:
        mat = constant_matrix(commutator_map(mu))
    except ValueError:
        raise UnsupportedError("center of a parametric algebra needs a specialization") from None
    return [tuple(v) for v in nullspace(mat, mu.ring.field, mu.left.dim)]


def _dcrbs_prelie_product(mu, R, S) -> BilMap:
    """``a∘b = R(a)b - bS(a)``."""
    return precompose(mu, R, None) - precompose(mu, None, S).swap()


def check_cor_3_12(mu, R, S, omega1, omega2, *, mode: str = STRICT) -> Report:
    """Both sides of the pre-Lie / central-curvature criterion for ``a∘b = R(a)b - bS(a)``.

    ``eq1.3`` is the pre-Lie residual of ``∘``; ``center`` is
    ``W(a,b)c - cW(a,b)`` for ``W(a,b) = ω₁(a⊗b) - ω₂(b⊗a)``.  The auxiliary
    ``prelie.defect`` records ``E(a,b;c) - E(b,a;c)`` with
    ``E(a,b;c) = ω₁(a⊗b)c - cω₂(a⊗b)``, which equals the pre-Lie residual of ``∘``
    on every double curved Rota-Baxter system.
    """
    _check_mode(mode)
    circ = _dcrbs_prelie_product(mu, R, S)
    W = omega1 - omega2.swap()
    centre = trilinear_left(mu, W) - trilinear_right(mu, W).permute((1, 2, 0))
    E = trilinear_left(mu, omega1) - trilinear_right(mu, omega2).permute((1, 2, 0))
    defect = E.permute((1, 0, 2)) - E
    rep = _report("cor_3_12", equation("eq1.3", _prelie_tensor(circ)),
                  equation("center", centre), equation("prelie.defect", defect, auxiliary=True))
    hyp = check_double_curved_rbs(mu, R, S, omega1, omega2, mode=AUDIT)
    return _hypothesis(rep, hyp, "double curved Rota-Baxter system", mode)


def _prelie_tensor(circ: BilMap) -> TriTensor:
    a = associator(circ)
    return a - a.permute((1, 0, 2))


def basis_triples(*spaces: Space) -> Iterable[tuple[int, ...]]:
    return product(*(range(s.dim) for s in spaces))
