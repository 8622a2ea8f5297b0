"""p-adic and character-theoretic data for ternary forms.

Divisibility of the (possibly fractional) discriminant dL by an odd integer
always means divisibility of the integer 4*dL = D, and the prime set of 8*dL
is the prime set of 2*D; both conventions keep everything integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .forms import TernaryForm


class InvalidPrime(ValueError):
    """The prime violates a coprimality precondition (e.g. p | 2D)."""


def jacobi(a: int, m: int) -> int:
    """Jacobi symbol (a/m) for odd positive m."""
    if m <= 0 or m % 2 == 0:
        raise ValueError("modulus must be a positive odd integer")
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for q in range(3, isqrt(n) + 1, 2):
        if n % q == 0:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs here are small)."""
    if n <= 0:
        raise ValueError("can only factor positive integers")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    q = 5
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def odd_prime_divisors(n: int) -> list[int]:
    return sorted(p for p in factorize(abs(n)) if p != 2)


def hecke_weight(D: int, p: int, lam: int) -> int:
    """(p^(lam+1)-1)/(p-1) - chi*(p^lam-1)/(p-1) with chi = (-D/p)."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if p == 2 or not is_prime(p) or (2 * D) % p == 0:
        raise InvalidPrime(f"p={p} must be an odd prime not dividing 2*D={2*D}")
    chi = jacobi(-D, p)
    return (p ** (lam + 1) - 1) // (p - 1) - chi * (p ** lam - 1) // (p - 1)


@dataclass(frozen=True)
class SquareFactorization:
    """n = n1*n2 with n1 supported on primes of 2D and gcd(n2, 2D) = 1."""

    n: int
    n1: int
    n2: int
    exponents: dict[int, int]


def split_by_conductor(n: int, D: int) -> SquareFactorization:
    if n < 1:
        raise ValueError("n must be positive")
    n1, n2 = 1, 1
    exponents: dict[int, int] = {}
    if n > 1:
        for p, e in factorize(n).items():
            if (2 * D) % p == 0:
                n1 *= p**e
            else:
                n2 *= p**e
                exponents[p] = e
    return SquareFactorization(n, n1, n2, exponents)


@dataclass(frozen=True)
class JordanOdd:
    """Diagonal data of the form over Z_p (p odd): one (valuation,
    unit class, dimension) entry per diagonal slot, valuations nondecreasing,
    classes normalized so each valuation group carries its determinant class
    in the last slot."""

    p: int
    components: tuple[tuple[int, int, int], ...]

    def valuations(self) -> tuple[int, ...]:
        return tuple(v for v, _, _ in self.components)

    def group(self, valuation: int) -> tuple[int, int]:
        """(dimension, determinant unit class) of the given valuation block."""
        members = [cls for v, cls, _ in self.components if v == valuation]
        det = 1
        for cls in members:
            det *= cls
        return len(members), det


def _vp_fraction(x: Fraction, p: int) -> int:
    if x == 0:
        return 10**9
    v = 0
    num = x.numerator
    den = x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def _unit_class(x: Fraction, p: int) -> int:
    u = x / Fraction(p) ** _vp_fraction(x, p)
    return jacobi(u.numerator * u.denominator, p)


def jordan_odd(form: TernaryForm, p: int) -> JordanOdd:
    """Z_p-diagonalization of the Gram matrix for odd p, by exact rational
    congruence transformations with valuation pivoting."""
    if p == 2 or not is_prime(p):
        raise InvalidPrime("p must be an odd prime")
    G = form.gram2
    M = [[Fraction(G[i][j], 2) for j in range(3)] for i in range(3)]

    def swap(i, j):
        M[i], M[j] = M[j], M[i]
        for row in M:
            row[i], row[j] = row[j], row[i]

    def add_row_col(i, j, coef: Fraction):
        # b_i += coef * b_j
        for k in range(3):
            M[i][k] += coef * M[j][k]
        for k in range(3):
            M[k][i] += coef * M[k][j]

    for k in range(3):
        vmin, imin, jmin = None, None, None
        for i in range(k, 3):
            for j in range(i, 3):
                v = _vp_fraction(M[i][j], p)
                if vmin is None or v < vmin:
                    vmin, imin, jmin = v, i, j
        if imin != jmin:
            # pull the minimal-valuation inner product onto the diagonal;
            # at most one of b_i +- b_j can cancel since p is odd
            if _vp_fraction(M[imin][imin] + M[jmin][jmin] + 2 * M[imin][jmin], p) == vmin:
                add_row_col(imin, jmin, Fraction(1))
            else:
                add_row_col(imin, jmin, Fraction(-1))
        if imin != k:
            swap(k, imin)
        for j in range(k + 1, 3):
            coef = -M[k][j] / M[k][k]
            assert _vp_fraction(coef, p) >= 0
            add_row_col(j, k, coef)
    diag = [M[i][i] for i in range(3)]
    assert all(M[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    entries = sorted((_vp_fraction(q, p), _unit_class(q, p)) for q in diag)
    # normalize unit classes within each valuation group: +1s then the
    # group determinant class (individual classes are not invariants)
    by_val: dict[int, list[int]] = {}
    for v, cls in entries:
        by_val.setdefault(v, []).append(cls)
    comps: list[tuple[int, int, int]] = []
    for v in sorted(by_val):
        classes = by_val[v]
        det = 1
        for cls in classes:
            det *= cls
        comps.extend([(v, 1, 1)] * (len(classes) - 1))
        comps.append((v, det, 1))
    return JordanOdd(p, tuple(comps))


def unimodular_part_anisotropic(form: TernaryForm, p: int) -> bool:
    """True iff the valuation-0 Jordan block is anisotropic over Q_p."""
    jd = jordan_odd(form, p)
    dim, det = jd.group(0)
    if dim == 1:
        return True
    if dim == 2:
        return jacobi(-1, p) * det == -1
    return False


def terminal_condition_at(form: TernaryForm, p: int) -> bool:
    """True iff the form over Z_p looks like <nonsquare unit, p, -p>."""
    jd = jordan_odd(form, p)
    if jd.valuations() != (0, 1, 1):
        return False
    _, unit_det = jd.group(0)
    _, p_det = jd.group(1)
    return unit_det == -1 and jacobi(-1, p) * p_det == 1
