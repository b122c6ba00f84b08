"""Reference implementation of the candidate scanner (used when the compiled one is absent).

Maps are stored as integer residues in one flat buffer.  Layouts:

* bilinear ``b: X⊗Y -> Z`` at offset ``o``: ``buf[o + (i*dY + j)*dZ + k]``;
* linear ``f: X -> Y`` at offset ``o``: ``buf[o + row*dX + col]`` (row indexes Y).

``offs`` lists the offsets of the maps of a kernel kind in a fixed order:

* ASSOC, PRELIE: ``(mu,)`` on a ``dims[0]``-dimensional space;
* CURVED: ``(mu, left, right, R, S, omega)`` with ``dims = (dA, dV)``;
* DCRBS: ``(mu, R, S, omega1, omega2)`` with ``dims = (dA,)``;
* GRB: ``(mu, nu, R)`` with ``dims = (dA,)``.

Candidate ``c`` writes its base-``p`` digits (first slot most significant) into
the buffer positions listed in ``slots``.
"""
from __future__ import annotations

ASSOC, PRELIE, CURVED, DCRBS, GRB = range(5)


def _assoc_ok(b, o, n, p, prelie):
    def mul(x, y):
        base = o + (x * n + y) * n
        return b[base:base + n]

    def assoc(x, y, z):
        out = [0] * n
        xy = mul(x, y)
        for m, c in enumerate(xy):
            if c:
                base = o + (m * n + z) * n
                for k in range(n):
                    out[k] += c * b[base + k]
        yz = mul(y, z)
        for m, c in enumerate(yz):
            if c:
                base = o + (x * n + m) * n
                for k in range(n):
                    out[k] -= c * b[base + k]
        return out

    for x in range(n):
        for y in range(n):
            for z in range(n):
                a1 = assoc(x, y, z)
                if prelie:
                    a2 = assoc(y, x, z)
                    if any((u - v) % p for u, v in zip(a1, a2)):
                        return False
                elif any(u % p for u in a1):
                    return False
    return True


def _curved_ok(b, offs, dA, dV, p):
    oM, oL, oRt, oR, oS, oW = offs
    for x in range(dV):
        for y in range(dV):
            t = [0] * dV
            for a in range(dA):
                r = b[oR + a * dV + x]
                if r:
                    base = oL + (a * dV + y) * dV
                    for z in range(dV):
                        t[z] += r * b[base + z]
                s = b[oS + a * dV + y]
                if s:
                    base = oRt + (x * dA + a) * dV
                    for z in range(dV):
                        t[z] += s * b[base + z]
            base = oW + (x * dV + y) * dV
            for z in range(dV):
                t[z] += b[base + z]
            for oo in (oR, oS):
                for k in range(dA):
                    acc = 0
                    for a in range(dA):
                        u = b[oo + a * dV + x]
                        if u:
                            for c in range(dA):
                                v = b[oo + c * dV + y]
                                if v:
                                    acc += u * v * b[oM + (a * dA + c) * dA + k]
                    for z in range(dV):
                        acc -= b[oo + k * dV + z] * t[z]
                    if acc % p:
                        return False
    return True


def _dcrbs_ok(b, offs, n, p):
    oM, oR, oS, oW1, oW2 = offs
    for x in range(n):
        for y in range(n):
            t = [0] * n
            for c in range(n):
                r = b[oR + c * n + x]
                if r:
                    base = oM + (c * n + y) * n
                    for z in range(n):
                        t[z] += r * b[base + z]
                s = b[oS + c * n + y]
                if s:
                    base = oM + (x * n + c) * n
                    for z in range(n):
                        t[z] += s * b[base + z]
            for oo, ow in ((oR, oW1), (oS, oW2)):
                for k in range(n):
                    acc = -b[ow + (x * n + y) * n + k]
                    for a in range(n):
                        u = b[oo + a * n + x]
                        if u:
                            for c in range(n):
                                v = b[oo + c * n + y]
                                if v:
                                    acc += u * v * b[oM + (a * n + c) * n + k]
                    for z in range(n):
                        acc -= b[oo + k * n + z] * t[z]
                    if acc % p:
                        return False
    return True


def _grb_ok(b, offs, n, p):
    oM, oN, oR = offs
    for x in range(n):
        for y in range(n):
            t = [b[oN + (x * n + y) * n + z] for z in range(n)]
            for c in range(n):
                r = b[oR + c * n + x]
                if r:
                    base = oM + (c * n + y) * n
                    for z in range(n):
                        t[z] += r * b[base + z]
                s = b[oR + c * n + y]
                if s:
                    base = oM + (x * n + c) * n
                    for z in range(n):
                        t[z] += s * b[base + z]
            for k in range(n):
                acc = 0
                for a in range(n):
                    u = b[oR + a * n + x]
                    if u:
                        for c in range(n):
                            v = b[oR + c * n + y]
                            if v:
                                acc += u * v * b[oM + (a * n + c) * n + k]
                for z in range(n):
                    acc -= b[oR + k * n + z] * t[z]
                if acc % p:
                    return False
    return True


def holds(kind, b, offs, dims, p) -> bool:
    if kind == ASSOC or kind == PRELIE:
        return _assoc_ok(b, offs[0], dims[0], p, kind == PRELIE)
    if kind == CURVED:
        return _curved_ok(b, offs, dims[0], dims[1], p)
    if kind == DCRBS:
        return _dcrbs_ok(b, offs, dims[0], p)
    if kind == GRB:
        return _grb_ok(b, offs, dims[0], p)
    raise ValueError(f"unknown kernel kind {kind}")


def scan(kind, buf, offs, dims, slots, p, start, stop, limit):
    """Count candidates in ``[start, stop)`` that satisfy the system; keep the first ``limit`` indices."""
    b = list(buf)
    offs = tuple(offs)
    dims = tuple(dims)
    slots = list(slots)
    n = len(slots)
    digits = [0] * n
    c = start
    for i in range(n - 1, -1, -1):
        digits[i] = c % p
        c //= p
    for i, s in enumerate(slots):
        b[s] = digits[i]
    count = 0
    found = []
    for idx in range(start, stop):
        if holds(kind, b, offs, dims, p):
            count += 1
            if limit < 0 or len(found) < limit:
                found.append(idx)
        # odometer step
        i = n - 1
        while i >= 0:
            digits[i] += 1
            if digits[i] < p:
                b[slots[i]] = digits[i]
                break
            digits[i] = 0
            b[slots[i]] = 0
            i -= 1
    return count, found
