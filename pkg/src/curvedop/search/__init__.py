"""Exhaustive search for operators over small prime fields.

Fixed data (algebra, actions, pinned maps) comes from a template bundle; the
roles named as unknowns are enumerated over every assignment of residues mod
``p``.  Candidates are numbered in odometer order: unknown scalars are listed
role by role (in the order given), row-major inside each map, and the first
scalar is the most significant base-``p`` digit.

The hot loop runs in a compiled kernel when one is built and in an equivalent
pure-Python kernel otherwise (see :data:`BACKEND`).
"""
from __future__ import annotations

from array import array
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

from ..claims import kind_spec, validate_claim
from ..coeff import Field, Ring, is_prime, MAX_PRIME
from ..corpus_io import Bundle, Claim, Expect
from ..multilinear import BilMap, LinMap
from .. import structures as st
from ._kernel_py import ASSOC, CURVED, DCRBS, GRB, PRELIE
from ._kernel_py import scan as scan_python

try:
    from ._kernel import scan as scan_compiled
except ImportError:  # pragma: no cover - depends on the build
    scan_compiled = None

BACKEND = "compiled" if scan_compiled is not None else "python"
scan = scan_compiled or scan_python

MAX_CANDIDATES = 10**8
MAX_UNKNOWNS = 24


class SearchError(ValueError):
    """The search request is invalid or over budget."""


# structure -> (kernel kind, roles in buffer order, unknown roles allowed)
STRUCTURES = {
    "associativity": (ASSOC, ("mu",), ("mu",)),
    "pre_lie": (PRELIE, ("circ",), ("circ",)),
    "curved_oos": (CURVED, ("mu", "left", "right", "R", "S", "omega"), ("R", "S", "omega")),
    "oos": (CURVED, ("mu", "left", "right", "R", "S", "omega"), ("R", "S")),
    "curved_rbs": (CURVED, ("mu", "left", "right", "R", "S", "omega"), ("R", "S", "omega")),
    "double_curved_rbs": (DCRBS, ("mu", "R", "S", "omega1", "omega2"), ("R", "S", "omega1", "omega2")),
    "generalized_rb": (GRB, ("mu", "nu", "R"), ("R",)),
}


@dataclass(frozen=True)
class SearchSpec:
    template: Bundle
    structure: str
    unknowns: tuple
    p: int
    limit: int | None = None
    claim: Claim | None = None  # binding; defaults to the template's first matching claim

    def __post_init__(self):
        object.__setattr__(self, "unknowns", tuple(self.unknowns))


@dataclass
class SearchResult:
    spec: SearchSpec
    total: int
    count: int
    indices: list = field(default_factory=list)
    backend: str = BACKEND

    def witnesses(self) -> list[Bundle]:
        prepared = prepare(self.spec)
        return [prepared.witness(i) for i in self.indices]


def check_field(p: int) -> Field:
    if not isinstance(p, int) or not is_prime(p):
        raise SearchError(f"{p} is not prime")
    if p > MAX_PRIME:
        raise SearchError(f"p = {p} exceeds {MAX_PRIME}")
    return Field.gf(p)


def _claim_for(spec: SearchSpec) -> Claim:
    if spec.claim is not None:
        return spec.claim
    for c in spec.template.claims:
        if c.kind == spec.structure:
            return c
    if len(spec.template.claims) == 1:
        return spec.template.claims[0]
    raise SearchError(f"template has no {spec.structure} claim to take role bindings from")


class Prepared:
    """A search spec reduced mod p and packed into a kernel buffer."""

    def __init__(self, spec: SearchSpec):
        if spec.structure not in STRUCTURES:
            raise SearchError(f"cannot search for {spec.structure!r}; choose from {', '.join(STRUCTURES)}")
        self.spec = spec
        kernel, roles, allowed = STRUCTURES[spec.structure]
        bad = [u for u in spec.unknowns if u not in allowed]
        if bad:
            raise SearchError(f"{spec.structure}: roles {', '.join(bad)} cannot be unknown "
                              f"(allowed: {', '.join(allowed)})")
        if len(set(spec.unknowns)) != len(spec.unknowns):
            raise SearchError("unknown roles listed twice")
        fld = check_field(spec.p)
        if spec.template.ring.params:
            raise SearchError("search templates must be parameter-free")
        self.ring = Ring(fld, ())
        self.bundle = spec.template.to_ring(self.ring)
        claim = _claim_for(spec)
        self.bind = dict(claim.bind)
        self.kernel = kernel
        self.roles = roles
        maps = self._role_maps()
        self.maps = maps
        self.offsets = {}
        buf = []
        for r in roles:
            self.offsets[r] = len(buf)
            buf.extend(_flatten(maps[r]))
        self.buf = array("q", buf)
        self.offs = tuple(self.offsets[r] for r in roles)
        A = maps["mu"].left if "mu" in maps else maps["circ"].left
        if kernel == CURVED:
            self.dims = (A.dim, maps["left"].right.dim)
        else:
            self.dims = (A.dim,)
        self.slots = []
        self.slot_names = []
        for u in spec.unknowns:
            m = maps[u]
            base = self.offsets[u]
            for k, name in enumerate(_entry_names(u, m)):
                self.slots.append(base + k)
                self.slot_names.append(name)
        n = len(self.slots)
        if n > MAX_UNKNOWNS:
            raise SearchError(f"{n} unknown scalars exceed the limit of {MAX_UNKNOWNS}")
        self.total = spec.p ** n
        if self.total > MAX_CANDIDATES:
            raise SearchError(f"{spec.p}^{n} = {self.total} candidates exceed the budget of {MAX_CANDIDATES}")
        self._check_fixed_data()

    def _role_maps(self) -> dict:
        b = self.bundle
        s = self.spec.structure
        maps = {}
        for role, name in self.bind.items():
            maps[role] = b.lookup(name)
        if s == "curved_rbs":
            maps["left"] = maps["right"] = maps["mu"]
        mu = maps.get("mu")
        if self.kernel == CURVED:
            A, V = mu.left, (maps["left"].right if "left" in maps else mu.left)
            if s == "oos" or "omega" not in maps:
                maps.setdefault("omega", BilMap.zero(V, V, V, self.ring))
                self.bind.setdefault("omega", _fresh(b, "omega"))
            for r in ("R", "S"):
                if r not in maps:
                    maps[r] = LinMap.zero(V, A, self.ring)
                    self.bind[r] = _fresh(b, r)
        elif self.kernel in (DCRBS, GRB):
            A = mu.left
            for r in ("R", "S"):
                if r in self.roles and r not in maps:
                    maps[r] = LinMap.zero(A, A, self.ring)
                    self.bind[r] = _fresh(b, r)
            for r in ("omega1", "omega2"):
                if r in self.roles and r not in maps:
                    maps[r] = BilMap.zero(A, A, A, self.ring)
                    self.bind[r] = _fresh(b, r)
        missing = [r for r in self.roles if r not in maps]
        if missing:
            raise SearchError(f"template binding lacks role(s) {', '.join(missing)}")
        return maps

    def _check_fixed_data(self):
        """Hypotheses on the pinned data, checked once on the template."""
        m = self.maps
        fixed = set(self.roles) - set(self.spec.unknowns)
        if self.kernel == CURVED and {"mu", "left", "right"} <= fixed:
            hyp = st.check_associativity(m["mu"], tag="hyp.assoc").merged(
                st.check_bimodule(m["mu"], m["left"], m["right"]))
            if not hyp.holds:
                raise st.HypothesisError("template algebra and actions form an A-bimodule", hyp)
        elif self.kernel == DCRBS:
            hyp = st.check_associativity(m["mu"], tag="hyp.assoc")
            if not hyp.holds:
                raise st.HypothesisError("template algebra is associative", hyp)

    def assignment(self, index: int) -> list[int]:
        p = self.spec.p
        digits = [0] * len(self.slots)
        for i in range(len(digits) - 1, -1, -1):
            digits[i] = index % p
            index //= p
        return digits

    def candidate_maps(self, index: int) -> dict:
        """Role maps (over F_p) for candidate ``index``."""
        buf = list(self.buf)
        for s, d in zip(self.slots, self.assignment(index)):
            buf[s] = d
        out = {}
        for r in self.roles:
            out[r] = _unflatten(self.maps[r], buf, self.offsets[r], self.ring)
        return out

    def witness(self, index: int) -> Bundle:
        maps = self.candidate_maps(index)
        bind = {k: v for k, v in self.bind.items() if k in kind_spec(self.spec.structure).roles}
        bil, lin = {}, {}
        for role, name in bind.items():
            fresh = name not in self.bundle.bilinear and name not in self.bundle.linear
            if role in self.spec.unknowns or (fresh and role in maps):
                (bil if isinstance(maps[role], BilMap) else lin)[name] = maps[role]
        claim = Claim(self.spec.structure, bind, Expect(st.Verdict.HOLDS))
        meta = {"id": f"search/{self.spec.structure}/F{self.spec.p}/{index}",
                "note": "unknowns " + ",".join(self.spec.unknowns)}
        out = self.bundle.with_maps(bilinear=bil, linear=lin, claims=[claim], meta=meta)
        validate_claim(out, claim)
        return out

    def residual_holds(self, index: int) -> bool:
        """Verdict through the exact residual machinery (audit mode, primary equations only)."""
        m = self.candidate_maps(index)
        s = self.spec.structure
        if s == "associativity":
            rep = st.check_associativity(m["mu"])
        elif s == "pre_lie":
            rep = st.check_pre_lie(m["circ"])
        elif s in ("curved_oos", "oos", "curved_rbs"):
            rep = st.check_curved_oos(m["mu"], m["left"], m["right"], m["R"], m["S"], m["omega"], mode=st.AUDIT)
        elif s == "double_curved_rbs":
            rep = st.check_double_curved_rbs(m["mu"], m["R"], m["S"], m["omega1"], m["omega2"], mode=st.AUDIT)
        else:
            rep = st.check_generalized_rb(m["mu"], m["nu"], m["R"])
        return rep.holds


def _fresh(bundle: Bundle, base: str) -> str:
    name = base
    taken = set(bundle.bilinear) | set(bundle.linear) | set(bundle.elements)
    while name in taken:
        name += "'"
    return name


def _flatten(m) -> list[int]:
    if isinstance(m, BilMap):
        return [a.constant_value() for row in m.tensor for v in row for a in v]
    return [a.constant_value() for row in m.matrix for a in row]


def _unflatten(m, buf, off, ring):
    if isinstance(m, BilMap):
        L, Rt, T = m.left, m.right, m.target
        return BilMap.from_function(L, Rt, T, ring, lambda i, j: tuple(
            ring(buf[off + (i * Rt.dim + j) * T.dim + k]) for k in range(T.dim)))
    S, T = m.source, m.target
    return LinMap(S, T, tuple(tuple(ring(buf[off + r * S.dim + c]) for c in range(S.dim))
                              for r in range(T.dim)), ring)


def _entry_names(role, m) -> list[str]:
    if isinstance(m, BilMap):
        return [f"{role}({a},{b})[{c}]" for a in m.left.basis for b in m.right.basis for c in m.target.basis]
    return [f"{role}[{r},{c}]" for r in m.target.basis for c in m.source.basis]


def prepare(spec: SearchSpec) -> Prepared:
    return Prepared(spec)


def _scan_range(args):
    use_compiled, kernel, buf, offs, dims, slots, p, start, stop, limit = args
    fn = scan_compiled if use_compiled and scan_compiled is not None else scan_python
    return fn(kernel, buf, offs, dims, slots, p, start, stop, limit)


def enumerate_witnesses(spec: SearchSpec, *, jobs: int = 1, backend: str | None = None) -> SearchResult:
    """Scan every candidate; ``indices`` keeps the first ``spec.limit`` witnesses (all if ``None``)."""
    prep = prepare(spec)
    use_compiled = _pick_backend(backend)
    limit = -1 if spec.limit is None else spec.limit
    total = prep.total
    common = (use_compiled, prep.kernel, prep.buf, prep.offs, prep.dims, tuple(prep.slots), spec.p)
    jobs = max(1, int(jobs))
    if jobs == 1 or total < 4096:
        count, found = _scan_range(common + (0, total, limit))
    else:
        step = -(-total // (jobs * 4))
        ranges = [(s, min(s + step, total)) for s in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_range, [common + (a, b, limit) for a, b in ranges]))
        count = sum(c for c, _ in parts)
        found = [i for _, f in parts for i in f]  # ranges are in order, so this is sorted
        if limit >= 0:
            found = found[:limit]
    return SearchResult(spec, total, count, found, "compiled" if use_compiled and scan_compiled else "python")


def _pick_backend(backend):
    if backend in (None, "auto"):
        return scan_compiled is not None
    if backend == "compiled":
        if scan_compiled is None:
            raise SearchError("compiled kernel is not available")
        return True
    if backend == "python":
        return False
    raise SearchError(f"unknown backend {backend!r}")


@dataclass
class CrossCheck:
    agree: bool
    kernel: list
    residual: list
    first_difference: int | None
    backend: str


class CrossCheckError(AssertionError):
    pass


def cross_check(spec: SearchSpec, *, backend: str | None = None, strict: bool = True) -> CrossCheck:
    """Enumerate with the kernel and again with the residual machinery; compare witness sets."""
    spec = replace(spec, limit=None)
    res = enumerate_witnesses(spec, backend=backend)
    prep = prepare(spec)
    residual = [i for i in range(prep.total) if prep.residual_holds(i)]
    diff = sorted(set(res.indices) ^ set(residual))
    out = CrossCheck(not diff, res.indices, residual, diff[0] if diff else None, res.backend)
    if diff and strict:
        raise CrossCheckError(f"kernel and residual enumeration disagree first at candidate {diff[0]}")
    return out


__all__ = [
    "BACKEND", "SearchSpec", "SearchResult", "SearchError", "STRUCTURES", "Prepared", "prepare",
    "enumerate_witnesses", "cross_check", "CrossCheck", "CrossCheckError", "scan", "scan_python",
    "scan_compiled", "check_field", "MAX_CANDIDATES", "MAX_UNKNOWNS",
]
