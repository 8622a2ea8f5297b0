"""Watson transformations and the two index-p sublattices with norm in pZ.

Lambda_p(L) = {x in L : Q(x+z) = Q(z) mod p for all z}, equivalently
Q(x) = 0 mod p together with G x = 0 mod p for the doubled Gram G (for odd
p the linear conditions already force the quadratic one).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .forms import Mat, TernaryForm, Vec, mat_det
from .isometry import minkowski_reduce
from .local import factorize, is_prime


class HypothesisFailed(RuntimeError):
    """A behaviorally-checked structural hypothesis does not hold."""


@dataclass(frozen=True)
class WatsonStep:
    """One Lambda_p / lambda_p application."""

    p: int
    input: TernaryForm
    sublattice_gram: Mat
    basis: Mat  # rows span the sublattice in input coordinates
    index: int
    scale_factor: Fraction
    output: TernaryForm


@dataclass(frozen=True)
class WatsonChain:
    steps: tuple[WatsonStep, ...]
    N: int

    def output(self, start: TernaryForm) -> TernaryForm:
        return self.steps[-1].output if self.steps else start


@dataclass(frozen=True)
class GammaPair:
    p: int
    gamma1: TernaryForm
    gamma2: TernaryForm


def hnf_rows(gens: list[Vec]) -> tuple[Vec, Vec, Vec]:
    """Row-style Hermite normal form basis of the lattice spanned by gens
    (must have rank 3); upper triangular with positive diagonal."""
    rows = [list(g) for g in gens if any(g)]
    basis: list[list[int]] = []
    for col in range(3):
        pool = [r for r in rows if r[col] != 0]
        rest = [r for r in rows if r[col] == 0 and any(r)]
        if not pool:
            raise ValueError("generators do not span a rank-3 lattice")
        while len(pool) > 1:
            pool.sort(key=lambda r: abs(r[col]))
            piv = pool[0]
            if piv[col] < 0:
                for t in range(3):
                    piv[t] = -piv[t]
            nxt = [piv]
            for r in pool[1:]:
                q = r[col] // piv[col]
                for t in range(3):
                    r[t] -= q * piv[t]
                if r[col] != 0:
                    nxt.append(r)
                elif any(r):
                    rest.append(r)
            pool = nxt
        piv = pool[0]
        if piv[col] < 0:
            piv = [-t for t in piv]
        basis.append(list(piv))
        rows = rest
    # reduce entries above each pivot for a canonical triangular basis
    for j in range(1, 3):
        for i in range(j):
            q = basis[i][j] // basis[j][j]
            if q:
                for t in range(3):
                    basis[i][t] -= q * basis[j][t]
    return tuple(tuple(r) for r in basis)


def sublattice_gram2(rows, G: Mat) -> Mat:
    """Doubled Gram of the sublattice with the given basis rows."""
    return tuple(
        tuple(sum(rows[i][k] * G[k][l] * rows[j][l] for k in range(3) for l in range(3))
              for j in range(3))
        for i in range(3)
    )


def _norm_generator(H: Mat) -> int:
    """Generator of the norm ideal: gcd of Q(b_i) and Q(b_i + b_j)."""
    vals = [H[i][i] // 2 for i in range(3)]
    vals += [(H[i][i] + H[j][j] + 2 * H[i][j]) // 2 for i in range(3) for j in range(i + 1, 3)]
    return gcd(*vals)


def big_lambda(form: TernaryForm, p: int) -> WatsonStep:
    """Lambda_p sublattice, unscaled: Gram, basis and index."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    G = form.gram2
    gens: list[Vec] = [(p, 0, 0), (0, p, 0), (0, 0, p)]
    if p == 2:
        # quadratic condition mod 2: filter the 8 cosets of 2L directly
        for x in range(2):
            for y in range(2):
                for z in range(2):
                    v = (x, y, z)
                    if any(v) and form(*v) % 2 == 0 and all(
                        sum(G[i][k] * v[k] for k in range(3)) % 2 == 0 for i in range(3)
                    ):
                        gens.append(v)
    else:
        # linear condition G x = 0 mod p (the quadratic one is automatic for
        # odd p); scan projective points, hnf_rows absorbs redundancy
        for v in _projective_points(p):
            if all(sum(G[i][k] * v[k] for k in range(3)) % p == 0 for i in range(3)):
                gens.append(v)
    rows = hnf_rows(gens)
    H = sublattice_gram2(rows, G)
    index = abs(mat_det(rows))
    sub_form = TernaryForm.from_gram2(H)
    return WatsonStep(p, form, H, rows, index, Fraction(1), sub_form)


def watson_lambda(form: TernaryForm, p: int) -> WatsonStep:
    """lambda_p: the Lambda_p sublattice rescaled to norm ideal Z, with the
    output presented in Minkowski-reduced shape."""
    raw = big_lambda(form, p)
    g = _norm_generator(raw.sublattice_gram)
    H = tuple(tuple(x // g for x in row) for row in raw.sublattice_gram)
    scaled = TernaryForm.from_gram2(H)
    assert scaled.is_primitive
    reduced, _ = minkowski_reduce(scaled)
    return WatsonStep(p, form, raw.sublattice_gram, raw.basis, raw.index,
                      Fraction(1, g), reduced)


def watson_chain(form: TernaryForm, N: int) -> WatsonChain:
    """lambda_N = product of lambda_p over the prime factorization of N,
    applied in ascending prime order."""
    if N < 1:
        raise ValueError("N must be positive")
    steps: list[WatsonStep] = []
    current = form
    fac = factorize(N) if N > 1 else {}
    for p in sorted(fac):
        for _ in range(fac[p]):
            step = watson_lambda(current, p)
            steps.append(step)
            current = step.output
    return WatsonChain(tuple(steps), N)


def gamma_pair(form: TernaryForm, p: int) -> GammaPair:
    """The exactly-two index-p sublattices with norm ideal in pZ."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    G = form.gram2
    found: list[TernaryForm] = []
    for w in _projective_points(p):
        rows = _functional_kernel_basis(w, p)
        H = sublattice_gram2(rows, G)
        vals = [H[i][i] // 2 for i in range(3)]
        vals += [(H[i][i] + H[j][j] + 2 * H[i][j]) // 2
                 for i in range(3) for j in range(i + 1, 3)]
        if all(v % p == 0 for v in vals):
            reduced, _ = minkowski_reduce(TernaryForm.from_gram2(H))
            found.append(reduced)
    if len(found) != 2:
        raise HypothesisFailed(
            f"{form} has {len(found)} index-{p} sublattices with norm in {p}Z, expected 2")
    g1, g2 = sorted(found, key=lambda t: t.coeffs())
    return GammaPair(p, g1, g2)


def _projective_points(p: int) -> list[Vec]:
    pts = [(1, s, t) for s in range(p) for t in range(p)]
    pts += [(0, 1, t) for t in range(p)]
    pts.append((0, 0, 1))
    return pts


def _functional_kernel_basis(w: Vec, p: int) -> tuple[Vec, Vec, Vec]:
    """Basis of {x in Z^3 : w.x = 0 mod p}."""
    gens: list[Vec] = [(p, 0, 0), (0, p, 0), (0, 0, p)]
    i = next(k for k in range(3) if w[k] % p)
    inv = pow(w[i], -1, p)
    for j in range(3):
        if j != i:
            v = [0, 0, 0]
            v[j] = 1
            v[i] = (-w[j] * inv) % p
            gens.append(tuple(v))
    return hnf_rows(gens)
