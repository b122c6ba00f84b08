"""Constructions of derived structures from verified inputs.

The functions here only build maps.  Where a construction is only guaranteed
under hypotheses, ``mode="strict"`` checks them first and raises
:class:`~curvedop.structures.HypothesisError`; ``mode="audit"`` builds the maps
regardless, so that a failing hypothesis can be studied on the output.
"""
from __future__ import annotations

from .multilinear import (
    BilMap,
    LinMap,
    bil_as_linear,
    compose_linear,
    kron,
    linear_as_bil,
    postcompose,
    precompose,
    tensor_space,
)
from . import structures as st

PRODUCTS = ("star", "star_r", "diamond", "odot", "blacklozenge", "dcrbs_star", "dcrbs_circ", "muT")


def _require(report: st.Report, what: str, mode: str):
    if mode == st.STRICT and not report.holds:
        raise st.HypothesisError(what, report)


def _curved_with_circ(mu, left, right, R, S, circ, mode):
    """Hypotheses shared by the dendriform-type constructions."""
    if mode == st.STRICT:
        _require(st.check_curved_oos(mu, left, right, R, S, circ, mode=st.STRICT),
                 "curved O-operator system with ω = ∘", mode)
        _require(st.check_extended_bimodule_algebra(mu, left, right, circ, R, S, mode=st.STRICT),
                 "extended A-bimodule algebra", mode)


def derive_dendriform(mu, left, right, R, S, circ, *, mode: str = st.STRICT) -> dict:
    """``x≻a = R(x)a``, ``a≺x = aS(x)``, ``x⋗y = R(x)▷y``, ``x⋖y = x◁S(y) + x∘y``."""
    _curved_with_circ(mu, left, right, R, S, circ, mode)
    return {
        "prec": precompose(mu, None, S),
        "succ": precompose(mu, R, None),
        "gtrdot": precompose(left, R, None),
        "lessdot": precompose(right, None, S) + circ,
    }


def derive_tridendriform(mu, left, right, R, S, circ, *, mode: str = st.STRICT) -> dict:
    """As :func:`derive_dendriform` but with ``x⋖y = x◁S(y)`` and ``x·y = x∘y`` kept apart."""
    _curved_with_circ(mu, left, right, R, S, circ, mode)
    return {
        "prec": precompose(mu, None, S),
        "succ": precompose(mu, R, None),
        "gtrdot": precompose(left, R, None),
        "lessdot": precompose(right, None, S),
        "dot": circ,
    }


def derive_product(kind: str, *, mu=None, left=None, right=None, R=None, S=None, circ=None,
                   weight=None, T=None) -> BilMap:
    """One of the derived binary products, computed exactly and not verified."""
    if kind == "star":
        return st.star_product(left, right, circ, R, S)
    if kind == "star_r":
        return st.star_product(left, right, circ, R, R)
    if kind == "diamond":
        return st.o_system_argument(left, right, R, S, None)
    if kind == "odot":
        return st.o_system_argument(left, right, R, R, None)
    if kind == "blacklozenge":
        out = precompose(left, R, None) - precompose(right, None, S).swap()
        return out + circ if circ is not None else out
    if kind == "dcrbs_star":
        return precompose(mu, R, None) + precompose(mu, None, S)
    if kind == "dcrbs_circ":
        return precompose(mu, R, None) - precompose(mu, None, S).swap()
    if kind == "muT":
        A = mu.left
        return linear_as_bil(compose_linear(bil_as_linear(mu), T.relabel(tensor_space(A, A),
                                                                         tensor_space(A, A))), A, A)
    raise ValueError(f"unknown product {kind!r}; expected one of {PRODUCTS}")


def symmetrize(R: LinMap, S: LinMap) -> tuple[LinMap, LinMap]:
    """``((R + S)/2, (R - S)/2)``; needs characteristic other than 2."""
    fld = R.ring.field
    if fld.characteristic == 2:
        raise ValueError("symmetrizer is undefined in characteristic 2")
    half = fld.inv(fld(2))
    return (R + S).scale(half), (R - S).scale(half)


def derive_grb(mu: BilMap, nu: BilMap, R: LinMap, *, mode: str = st.STRICT) -> dict:
    """The four single-space structures of a generalized Rota-Baxter algebra over a compatible pair."""
    if mode == st.STRICT:
        _require(st.check_compatible_pair(mu, nu), "associative compatible pair", mode)
        _require(st.check_generalized_rb(mu, nu, R), "generalized Rota-Baxter algebra", mode)
    xRy = precompose(mu, None, R)
    Rxy = precompose(mu, R, None)
    return {
        "dendriform": {"prec": xRy + nu, "succ": Rxy},
        "pre_lie": Rxy - xRy.swap() + nu,
        "tridendriform": {"prec": xRy, "succ": Rxy, "dot": nu},
        "associative": Rxy + xRy + nu,
    }


def induced_curvatures(mu: BilMap, R: LinMap, S: LinMap) -> tuple[BilMap, BilMap]:
    """The unique ``(ω₁, ω₂)`` making ``(A, R, S, ω₁, ω₂)`` a double curved Rota-Baxter system."""
    t = precompose(mu, R, None) + precompose(mu, None, S)
    return (precompose(mu, R, R) - postcompose(R, t), precompose(mu, S, S) - postcompose(S, t))


def build_pseudotwistor(mu, R, S, omega1, omega2, *, mode: str = st.STRICT) -> tuple[LinMap, LinMap]:
    """``T = R⊗id + id⊗S`` on ``A⊗A`` and its companion on ``A⊗A⊗A``.

    Refused when the curvature identity ``ω₁(a⊗b)c = aω₂(b⊗c)`` fails, unless
    ``mode="audit"``.
    """
    if mode == st.STRICT:
        _require(st.check_double_curved_rbs(mu, R, S, omega1, omega2, mode=st.STRICT),
                 "double curved Rota-Baxter system", mode)
    if mode != st.AUDIT:
        side = st.check_side_condition("eq3.7", mu=mu, omega1=omega1, omega2=omega2)
        if not side.holds:
            raise st.HypothesisError("curvatures satisfy eq3.7", side)
    ident = LinMap.identity(mu.left, mu.ring)
    T = kron(R, ident) + kron(ident, S)
    T3 = kron(kron(R, R), ident) + kron(kron(R, ident), S) + kron(kron(ident, S), S)
    return T, T3


def derive_pseudotwistor_product(mu, R, S) -> BilMap:
    """``μ∘T`` for ``T`` as in :func:`build_pseudotwistor`, built without the hypothesis check."""
    ident = LinMap.identity(mu.left, mu.ring)
    return derive_product("muT", mu=mu, T=kron(R, ident) + kron(ident, S))
