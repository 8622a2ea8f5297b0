"""Minkowski reduction, isometry testing and automorphism counting.

Reduction runs a greedy basis reduction (pairwise Lagrange steps plus
closest-vector improvements against the other two basis vectors, which is
complete in rank 3), then canonicalizes among all bases realized by short
vectors at the successive minima.  Class equality is always decided by
is_isometric, never by comparing reduced sextuples.
"""

from __future__ import annotations

from itertools import product

from .counting import short_vectors
from .forms import (
    IDENTITY,
    Mat,
    TernaryForm,
    Vec,
    mat_det,
    mat_inverse_unimodular,
    mat_mul,
    transform_gram2,
)

_MAX_REDUCE_SWEEPS = 10000


def _cols(U: Mat) -> list[list[int]]:
    return [[U[i][j] for i in range(3)] for j in range(3)]


def _from_cols(cols) -> Mat:
    return tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))


def _gram_of_cols(G: Mat, cols) -> list[list[int]]:
    out = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            out[i][j] = sum(cols[i][k] * G[k][l] * cols[j][l]
                            for k in range(3) for l in range(3))
    return out


def _round_ratio(num: int, den: int) -> int:
    """Nearest integer to num/den (den > 0), ties toward zero."""
    if den < 0:
        num, den = -num, -den
    q, r = divmod(num, den)
    if 2 * r > den or (2 * r == den and q < 0):
        q += 1
    return q


def _greedy_reduce(G: Mat) -> tuple[list[list[int]], Mat]:
    """Shrink the basis until no single vector can be shortened against the
    sublattice of the other two."""
    cols = _cols(IDENTITY)
    H = [list(r) for r in G]

    def norm(i):
        return H[i][i]

    def inner(i, j):
        return H[i][j]

    def apply_sub(i, u, v):
        # b_i -= u*b_j + v*b_k is handled by caller via generic combination
        pass

    for _ in range(_MAX_REDUCE_SWEEPS):
        changed = False
        order = sorted(range(3), key=norm)
        if order != [0, 1, 2]:
            cols = [cols[k] for k in order]
            H = [[H[a][b] for b in order] for a in order]
            changed = True
        # pairwise Lagrange steps
        for i in range(3):
            for j in range(3):
                if i == j or H[j][j] == 0:
                    continue
                mu = _round_ratio(H[i][j], H[j][j])
                if mu == 0:
                    continue
                new_norm = H[i][i] - 2 * mu * H[i][j] + mu * mu * H[j][j]
                if new_norm < H[i][i]:
                    for k in range(3):
                        cols[i][k] -= mu * cols[j][k]
                    for k in range(3):
                        if k != i:
                            H[i][k] -= mu * H[j][k]
                            H[k][i] = H[i][k]
                    H[i][i] = new_norm
                    changed = True
        # closest-vector improvement of b_i against span(b_j, b_k)
        for i in range(3):
            j, k = [t for t in range(3) if t != i]
            det2 = H[j][j] * H[k][k] - H[j][k] * H[j][k]
            if det2 <= 0:
                continue
            # Babai: solve (H_jj u + H_jk v, H_jk u + H_kk v) = (H_ij, H_ik)
            nu = _round_ratio(H[i][j] * H[k][k] - H[i][k] * H[j][k], det2)
            nv = _round_ratio(H[i][k] * H[j][j] - H[i][j] * H[j][k], det2)
            best = (H[i][i], 0, 0)
            for du, dv in product((-1, 0, 1), repeat=2):
                u, v = nu + du, nv + dv
                if u == 0 and v == 0:
                    continue
                nn = (H[i][i] - 2 * u * H[i][j] - 2 * v * H[i][k]
                      + u * u * H[j][j] + v * v * H[k][k] + 2 * u * v * H[j][k])
                if nn < best[0]:
                    best = (nn, u, v)
            if best[0] < H[i][i]:
                _, u, v = best
                for t in range(3):
                    cols[i][t] -= u * cols[j][t] + v * cols[k][t]
                for t in range(3):
                    if t != i:
                        H[i][t] -= u * H[j][t] + v * H[k][t]
                        H[t][i] = H[i][t]
                H[i][i] = best[0]
                changed = True
        if not changed:
            return H, _from_cols(cols)
    raise RuntimeError("greedy reduction did not stabilize")


def _cross(u: Vec, v: Vec) -> Vec:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def _successive_minima(form: TernaryForm) -> tuple[list[int], dict[int, list[Vec]]]:
    bound = max(form.a, form.b, form.c)
    vecs = short_vectors(form, bound)
    shells: dict[int, list[Vec]] = {}
    for v, val in vecs:
        shells.setdefault(val, []).append(v)
    minima: list[int] = []
    v1 = v2 = None
    for val in sorted(shells):
        for v in shells[val]:
            if v1 is None:
                v1 = v
                minima.append(val)
            elif v2 is None:
                if any(_cross(v1, v)):
                    v2 = v
                    minima.append(val)
            elif _det_vec3(v1, v2, v) != 0:
                minima.append(val)
                return minima, shells
    raise RuntimeError(f"could not find 3 independent short vectors for {form}")


def _det_vec3(v1: Vec, v2: Vec, v3: Vec) -> int:
    return (v1[0] * (v2[1] * v3[2] - v2[2] * v3[1])
            - v1[1] * (v2[0] * v3[2] - v2[2] * v3[0])
            + v1[2] * (v2[0] * v3[1] - v2[1] * v3[0]))


def _canonical_key(d: int, e: int, f: int) -> tuple:
    # prefer all-nonnegative cross coefficients, then d*e*f >= 0, then the
    # largest (f, e, d) tuple (keeps the usual table shapes fixed)
    all_nonneg = 0 if (d >= 0 and e >= 0 and f >= 0) else 1
    prod_nonneg = 0 if d * e * f >= 0 else 1
    return (all_nonneg, prod_nonneg, -f, -e, -d)


def minkowski_reduce(form: TernaryForm) -> tuple[TernaryForm, Mat]:
    """Reduced representative with a <= b <= c, |d| <= b, |e| <= a, |f| <= a,
    and a deterministic sign normalization; returns (reduced, U) with
    U^T M U = M_reduced."""
    H0, U0 = _greedy_reduce(form.gram2)
    pre = TernaryForm.from_gram2(tuple(tuple(r) for r in H0))
    minima, shells = _successive_minima(pre)
    G = pre.gram2

    def dot(u, v):
        return sum(u[i] * G[i][j] * v[j] for i in range(3) for j in range(3))

    best = None
    v1s = shells[minima[0]]
    v2s = shells[minima[1]]
    v3s = shells[minima[2]]
    for v1 in v1s:
        for v2 in v2s:
            for v3 in v3s:
                if _det_vec3(v1, v2, v3) in (1, -1):
                    d = dot(v2, v3)
                    e = dot(v1, v3)
                    f = dot(v1, v2)
                    key = _canonical_key(d, e, f)
                    if best is None or key < best[0]:
                        best = (key, (v1, v2, v3))
    if best is None:
        raise RuntimeError(f"no unimodular basis among minimal vectors of {form}")
    v1, v2, v3 = best[1]
    V = tuple(tuple(col[i] for col in (v1, v2, v3)) for i in range(3))
    U = mat_mul(U0, V)
    reduced = TernaryForm.from_gram2(transform_gram2(form.gram2, U))
    if reduced == form:
        U = IDENTITY
    assert reduced.a <= reduced.b <= reduced.c
    assert abs(reduced.d) <= reduced.b and abs(reduced.e) <= reduced.a and abs(reduced.f) <= reduced.a
    return reduced, U


def _gram_embeddings(source: TernaryForm, target_gram2: Mat, count_all: bool):
    """Bases of `source` whose doubled Gram equals target_gram2.

    Yields column matrices; completeness comes from searching vectors of the
    three target diagonal norms."""
    G = source.gram2
    diag = [target_gram2[i][i] // 2 for i in range(3)]
    vecs = short_vectors(source, max(diag))
    shells: dict[int, list[Vec]] = {}
    for v, val in vecs:
        shells.setdefault(val, []).append(v)
    if any(q not in shells for q in diag):
        return

    def dot(u, v):
        return sum(u[i] * G[i][j] * v[j] for i in range(3) for j in range(3))

    found = []
    for v1 in shells[diag[0]]:
        for v2 in shells[diag[1]]:
            if dot(v1, v2) != target_gram2[0][1]:
                continue
            for v3 in shells[diag[2]]:
                if dot(v1, v3) != target_gram2[0][2] or dot(v2, v3) != target_gram2[1][2]:
                    continue
                U = tuple(tuple(col[i] for col in (v1, v2, v3)) for i in range(3))
                if count_all:
                    found.append(U)
                else:
                    return [U]
    return found


def is_isometric(f: TernaryForm, g: TernaryForm) -> Mat | None:
    """U with U^T M_f U = M_g if the forms are isometric, else None."""
    if f.disc4 != g.disc4 or f.content != g.content:
        return None
    rf, Uf = minkowski_reduce(f)
    rg, Ug = minkowski_reduce(g)
    if (rf.a, rf.b, rf.c) != (rg.a, rg.b, rg.c):
        return None
    hits = _gram_embeddings(rf, rg.gram2, count_all=False)
    if not hits:
        return None
    U = mat_mul(Uf, mat_mul(hits[0], mat_inverse_unimodular(Ug)))
    assert transform_gram2(f.gram2, U) == g.gram2
    assert mat_det(U) in (1, -1)
    return U


def automorphism_order(form: TernaryForm) -> int:
    """|O(form)| = number of U with U^T M U = M; always even."""
    reduced, _ = minkowski_reduce(form)
    hits = _gram_embeddings(reduced, reduced.gram2, count_all=True)
    order = len(hits)
    assert order >= 2 and order % 2 == 0
    return order
