"""Exact lattice point counting for positive definite ternary forms.

Primary strategy: layered bounds from an exact rational Cholesky decomposition
of the doubled Gram matrix, cleared of denominators so that only integers and
isqrt appear.  With t1 = 2ax + fy + ez, P = 4ab - f^2, R = 4ad - 2ef and
Qz = 4ac - e^2:

    4a*Q(x,y,z) = t1^2 + P*y^2 + R*yz + Qz*z^2
    4P*(P*y^2 + R*yz + Qz*z^2) = (2Py + Rz)^2 + 16*a*D*z^2

Secondary, independent oracle: a naive box scan from the inverse Gram
diagonal (rep_count_box / theta_box), kept deliberately dumb.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .forms import BinaryForm, TernaryForm

DEFAULT_BUDGET = 10**8

# numpy's int64 path is worthwhile only for large (y,z) regions
_NUMPY_MIN_REGION = 4096
_INT64_GUARD = 2**62


class BudgetExceeded(RuntimeError):
    """The enumeration visited more candidate nodes than the budget allows."""


@dataclass(frozen=True)
class RepResult:
    """r(n,f) with optionally the full solution set R(n,f)."""

    n: int
    count: int
    solutions: tuple[Vec, ...] | None = None


@dataclass(frozen=True)
class ThetaPrefix:
    """counts[m] = r(m, f) for 0 <= m <= bound."""

    bound: int
    counts: tuple[int, ...]


Vec = tuple[int, int, int]


def _layer_consts(form: TernaryForm):
    a, b, c, d, e, f = form.coeffs()
    P = 4 * a * b - f * f
    R = 4 * a * d - 2 * e * f
    Qz = 4 * a * c - e * e
    return a, b, c, d, e, f, P, R, Qz, form.disc4


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def rep_count(form: TernaryForm, n: int, with_solutions: bool = False,
              budget: int = DEFAULT_BUDGET) -> RepResult:
    """Exact r(n, form); deterministic, pure integer arithmetic."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        sols = ((0, 0, 0),) if with_solutions else None
        return RepResult(0, 1, sols)
    a, b, c, d, e, f, P, R, Qz, D = _layer_consts(form)
    if not with_solutions and _numpy_region_estimate(P, n, D, a) >= _NUMPY_MIN_REGION:
        cnt = _rep_count_numpy(form, n, budget)
        if cnt is not None:
            return RepResult(n, cnt, None)
    twoa = 2 * a
    fouran = 4 * a * n
    count = 0
    sols: list[Vec] = [] if with_solutions else None
    nodes = 0
    zmax = isqrt(P * n // D)
    for z in range(-zmax, zmax + 1):
        rhs = 16 * a * (P * n - D * z * z)
        if rhs < 0:
            continue
        s = isqrt(rhs)
        Rz = R * z
        ylo = _ceil_div(-s - Rz, 2 * P)
        yhi = (s - Rz) // (2 * P)
        nodes += max(0, yhi - ylo + 1)
        if nodes > budget:
            raise BudgetExceeded(f"node budget {budget} exceeded")
        By = P * ylo * ylo + Rz * ylo + Qz * z * z
        dBy = P * (2 * ylo + 1) + Rz
        for y in range(ylo, yhi + 1):
            rem = fouran - By
            By += dBy
            dBy += 2 * P
            if rem < 0:
                continue
            s1 = isqrt(rem)
            if s1 * s1 == rem:
                g = f * y + e * z
                for t in ((s1, -s1) if s1 else (0,)):
                    if (t - g) % twoa == 0:
                        count += 1
                        if with_solutions:
                            sols.append(((t - g) // twoa, y, z))
    if with_solutions:
        sols.sort()
        return RepResult(n, count, tuple(sols))
    return RepResult(n, count, None)


def _numpy_region_estimate(P: int, n: int, D: int, a: int) -> int:
    # rough (y,z) ellipse point count: area = 2*pi*4*a*n / sqrt(16*a*D)
    return int(8 * 3.15 * a * n / max(1.0, (16 * a * D) ** 0.5))


def _rep_count_numpy(form: TernaryForm, n: int, budget: int = DEFAULT_BUDGET) -> int | None:
    """Vectorized inner loop of rep_count; exactness preserved by verifying
    candidate square roots with int64 multiplication.  Returns None when the
    int64 magnitude guard fails (caller falls back to pure Python)."""
    a, b, c, d, e, f, P, R, Qz, D = _layer_consts(form)
    zb = isqrt(P * n // D) + 1
    yb = (isqrt(16 * a * P * n) + abs(R) * zb) // (2 * P) + 2
    worst = max(16 * a * (P * n + 1), P * yb * yb + abs(R) * zb * yb + Qz * zb * zb,
                (abs(f) * yb + abs(e) * zb) * 4 * a)
    if worst >= _INT64_GUARD or 4 * a * n >= 2**52:
        return None
    twoa = 2 * a
    fouran = 4 * a * n
    count = 0
    nodes = 0
    zmax = isqrt(P * n // D)
    for z in range(-zmax, zmax + 1):
        rhs = 16 * a * (P * n - D * z * z)
        if rhs < 0:
            continue
        s = isqrt(rhs)
        Rz = R * z
        ylo = _ceil_div(-s - Rz, 2 * P)
        yhi = (s - Rz) // (2 * P)
        if ylo > yhi:
            continue
        nodes += yhi - ylo + 1
        if nodes > budget:
            raise BudgetExceeded(f"node budget {budget} exceeded")
        ys = np.arange(ylo, yhi + 1, dtype=np.int64)
        rem = fouran - (P * ys * ys + Rz * ys + Qz * z * z)
        valid = rem >= 0
        if not valid.any():
            continue
        ysv = ys[valid]
        remv = rem[valid]
        s1 = np.rint(np.sqrt(remv.astype(np.float64))).astype(np.int64)
        sq = s1 * s1 == remv
        if not sq.any():
            continue
        ysq = ysv[sq]
        s1q = s1[sq]
        g = f * ysq + e * z
        pos = (s1q - g) % twoa == 0
        neg = (-s1q - g) % twoa == 0
        nonzero = s1q > 0
        count += int(np.count_nonzero(pos & nonzero))
        count += int(np.count_nonzero(neg & nonzero))
        count += int(np.count_nonzero(pos & ~nonzero))
    return count


def theta_prefix(form: TernaryForm, B: int, budget: int = DEFAULT_BUDGET) -> ThetaPrefix:
    """counts[m] = r(m, form) for all 0 <= m <= B in one ellipsoid sweep."""
    if B < 0:
        raise ValueError("bound must be nonnegative")
    counts = [0] * (B + 1)
    if B == 0:
        counts[0] = 1
        return ThetaPrefix(0, tuple(counts))
    a, b, c, d, e, f, P, R, Qz, D = _layer_consts(form)
    twoa = 2 * a
    fourab = 4 * a * B
    nodes = 0
    zmax = isqrt(P * B // D)
    for z in range(-zmax, zmax + 1):
        rhs = 16 * a * (P * B - D * z * z)
        if rhs < 0:
            continue
        s = isqrt(rhs)
        Rz = R * z
        ylo = _ceil_div(-s - Rz, 2 * P)
        yhi = (s - Rz) // (2 * P)
        By = P * ylo * ylo + Rz * ylo + Qz * z * z
        dBy = P * (2 * ylo + 1) + Rz
        ez = e * z
        for y in range(ylo, yhi + 1):
            rem = fourab - By
            curBy = By
            By += dBy
            dBy += 2 * P
            if rem < 0:
                continue
            s1 = isqrt(rem)
            g = f * y + ez
            xlo = _ceil_div(-s1 - g, twoa)
            xhi = (s1 - g) // twoa
            if xlo > xhi:
                continue
            nodes += xhi - xlo + 1
            if nodes > budget:
                raise BudgetExceeded(f"node budget {budget} exceeded")
            t = twoa * xlo + g
            v = (t * t + curBy) // (4 * a)
            step = t + a
            for _ in range(xhi - xlo + 1):
                counts[v] += 1
                v += step
                step += twoa
    return ThetaPrefix(B, tuple(counts))


def short_vectors(form: TernaryForm, B: int, budget: int = DEFAULT_BUDGET) -> list[tuple[Vec, int]]:
    """All x with 0 < Q(x) <= B, both signs, sorted by (value, triple)."""
    if B < 0:
        raise ValueError("bound must be nonnegative")
    out: list[tuple[int, Vec]] = []
    if B > 0:
        a, b, c, d, e, f, P, R, Qz, D = _layer_consts(form)
        twoa = 2 * a
        fourab = 4 * a * B
        nodes = 0
        zmax = isqrt(P * B // D)
        for z in range(-zmax, zmax + 1):
            rhs = 16 * a * (P * B - D * z * z)
            if rhs < 0:
                continue
            s = isqrt(rhs)
            Rz = R * z
            ylo = _ceil_div(-s - Rz, 2 * P)
            yhi = (s - Rz) // (2 * P)
            By = P * ylo * ylo + Rz * ylo + Qz * z * z
            dBy = P * (2 * ylo + 1) + Rz
            ez = e * z
            for y in range(ylo, yhi + 1):
                rem = fourab - By
                curBy = By
                By += dBy
                dBy += 2 * P
                if rem < 0:
                    continue
                s1 = isqrt(rem)
                g = f * y + ez
                xlo = _ceil_div(-s1 - g, twoa)
                xhi = (s1 - g) // twoa
                if xlo > xhi:
                    continue
                nodes += xhi - xlo + 1
                if nodes > budget:
                    raise BudgetExceeded(f"node budget {budget} exceeded")
                t = twoa * xlo + g
                v = (t * t + curBy) // (4 * a)
                step = t + a
                for x in range(xlo, xhi + 1):
                    if v > 0:
                        out.append((v, (x, y, z)))
                    v += step
                    step += twoa
    out.sort()
    return [(vec, val) for val, vec in out]


def rep_count_binary(ell: BinaryForm, n: int) -> int:
    """Exact r(n, ell) for a positive definite binary form."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 1
    a, b, c = ell.a, ell.b, ell.c
    disc = 4 * a * c - b * b
    twoa = 2 * a
    count = 0
    ymax = isqrt(4 * a * n // disc)
    for y in range(-ymax, ymax + 1):
        rem = 4 * a * n - disc * y * y
        if rem < 0:
            continue
        s = isqrt(rem)
        if s * s == rem:
            for t in ((s, -s) if s else (0,)):
                if (t - b * y) % twoa == 0:
                    count += 1
    return count


# --- independent naive box oracle ------------------------------------------

def _box_bounds(form: TernaryForm, n: int) -> tuple[int, int, int]:
    a, b, c, d, e, f = form.coeffs()
    D = form.disc4
    cx = 4 * b * c - d * d
    cy = 4 * a * c - e * e
    cz = 4 * a * b - f * f
    return (isqrt(n * cx // D) + 1, isqrt(n * cy // D) + 1, isqrt(n * cz // D) + 1)


def rep_count_box(form: TernaryForm, n: int) -> int:
    """Oracle: brute-force box scan, independent of the pruned enumerator."""
    if n == 0:
        return 1
    X, Y, Z = _box_bounds(form, n)
    count = 0
    for x in range(-X, X + 1):
        for y in range(-Y, Y + 1):
            for z in range(-Z, Z + 1):
                if form(x, y, z) == n:
                    count += 1
    return count


def theta_box(form: TernaryForm, B: int) -> list[int]:
    """Oracle: counts of r(0..B) by brute-force box scan."""
    counts = [0] * (B + 1)
    X, Y, Z = _box_bounds(form, B)
    for x in range(-X, X + 1):
        for y in range(-Y, Y + 1):
            for z in range(-Z, Z + 1):
                v = form(x, y, z)
                if v <= B:
                    counts[v] += 1
    return counts
