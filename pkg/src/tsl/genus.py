"""Kneser p-neighbors, genus enumeration, mass, and square-comparisons.

Neighbors are built at primes p not dividing 2D, directly on the doubled
Gram matrix: for an isotropic line v mod p (lifted so Q(v) = 0 mod p^2) the
neighbor is {x : x.Gv = 0 mod p} + Z(v/p), which shares the genus of the
input.  Genus closure uses breadth-first search at the two smallest usable
primes and deduplicates classes by isometry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .counting import theta_prefix
from .forms import TernaryForm, Vec, mat_det
from .isometry import automorphism_order, is_isometric, minkowski_reduce
from .local import InvalidPrime, is_prime
from .watson import hnf_rows, sublattice_gram2


class ClassCapExceeded(RuntimeError):
    """Genus BFS found more classes than the configured cap."""


@dataclass(frozen=True)
class GenusData:
    base: TernaryForm
    classes: tuple[tuple[TernaryForm, int], ...]  # (representative, o(g))
    mass: Fraction
    neighbor_primes: tuple[int, ...]

    @property
    def class_number(self) -> int:
        return len(self.classes)


def p_neighbors(form: TernaryForm, p: int) -> list[TernaryForm]:
    """The p+1 Kneser neighbors of the form at p (p odd, p not dividing 2D);
    raw list in deterministic order, not deduplicated up to isometry."""
    D = form.disc4
    if p == 2 or not is_prime(p) or (2 * D) % p == 0:
        raise InvalidPrime(f"p={p} must be an odd prime not dividing 2*D={2 * D}")
    G = form.gram2
    lines = [v for v in _projective_points(p) if form(*v) % p == 0]
    assert len(lines) == p + 1
    out = []
    for v in lines:
        out.append(_neighbor_at_line(form, G, v, p))
    return out


def _projective_points(p: int) -> list[Vec]:
    pts = [(1, s, t) for s in range(p) for t in range(p)]
    pts += [(0, 1, t) for t in range(p)]
    pts.append((0, 0, 1))
    return pts


def _neighbor_at_line(form: TernaryForm, G, v: Vec, p: int) -> TernaryForm:
    q = form(*v)
    Gv = [sum(G[i][k] * v[k] for k in range(3)) for i in range(3)]
    w = next(i for i in range(3) if Gv[i] % p)
    if q % (p * p):
        # adjust v by p*t*e_w so that Q(v) = 0 mod p^2
        t = (-(q // p) * pow(Gv[w], -1, p)) % p
        v = tuple(v[i] + (p * t if i == w else 0) for i in range(3))
        q = form(*v)
        Gv = [sum(G[i][k] * v[k] for k in range(3)) for i in range(3)]
    assert q % (p * p) == 0
    # basis of L_v = {x : x.Gv = 0 mod p}
    i = next(k for k in range(3) if Gv[k] % p)
    inv = pow(Gv[i], -1, p)
    gens: list[Vec] = [(p, 0, 0), (0, p, 0), (0, 0, p)]
    for j in range(3):
        if j != i:
            k = [0, 0, 0]
            k[j] = 1
            k[i] = (-Gv[j] * inv) % p
            gens.append(tuple(k))
    Lv = hnf_rows(gens)
    # p * L' is spanned by p*L_v and v
    pgens = [tuple(p * t for t in row) for row in Lv] + [v]
    C = hnf_rows(pgens)
    H = sublattice_gram2(C, G)
    assert all(H[a][b] % (p * p) == 0 for a in range(3) for b in range(3))
    Hs = tuple(tuple(x // (p * p) for x in row) for row in H)
    out = TernaryForm.from_gram2(Hs)
    assert out.disc4 == form.disc4 and out.is_primitive
    reduced, _ = minkowski_reduce(out)
    return reduced


def _neighbor_primes(D: int, count: int = 2) -> tuple[int, ...]:
    primes = []
    p = 3
    while len(primes) < count:
        if is_prime(p) and (2 * D) % p:
            primes.append(p)
        p += 2
    return tuple(primes)


def enumerate_genus(form: TernaryForm, class_cap: int = 64,
                    neighbor_primes: tuple[int, ...] | None = None) -> GenusData:
    """BFS closure of the form under p-neighbors at the two smallest usable
    primes, deduplicated by isometry, with automorphism orders and mass."""
    primes = neighbor_primes or _neighbor_primes(form.disc4)
    base, _ = minkowski_reduce(form)
    reps: list[TernaryForm] = [base]
    sigs = {base: theta_prefix(base, max(8, base.a)).counts}
    frontier = [base]
    while frontier:
        nxt: list[TernaryForm] = []
        for rep in frontier:
            for p in primes:
                for nb in p_neighbors(rep, p):
                    sig = theta_prefix(nb, max(8, base.a)).counts
                    if any(sigs[r] == sig and is_isometric(nb, r) is not None for r in reps):
                        continue
                    reps.append(nb)
                    sigs[nb] = sig
                    nxt.append(nb)
                    if len(reps) > class_cap:
                        raise ClassCapExceeded(f"more than {class_cap} classes in gen({form})")
        frontier = nxt
    classes = tuple((r, automorphism_order(r)) for r in sorted(reps, key=lambda t: t.coeffs()))
    mass = sum((Fraction(1, o) for _, o in classes), Fraction(0))
    return GenusData(base, classes, mass, tuple(primes))


def genus_average_rep(gen: GenusData, n: int) -> Fraction:
    """r(n, gen) = (1/w) * sum r(n,g)/o(g), exact rational."""
    from .counting import rep_count

    total = sum((Fraction(rep_count(g, n).count, o) for g, o in gen.classes), Fraction(0))
    return total / gen.mass


def indistinguishable_by_squares(gen: GenusData, bound: int, fast: bool = False
                                 ) -> tuple[bool, tuple[int, TernaryForm, TernaryForm] | None]:
    """True iff all classes agree on r(n^2, .) for n <= bound.

    fast=True restricts to n whose prime factors all divide 2D, which is a
    sufficient set; on failure returns (n, class_a, class_b) witnessing."""
    if gen.class_number <= 1:
        return True, None
    D = gen.base.disc4
    ns = range(1, bound + 1)
    if fast:
        ns = [n for n in ns if _supported_on(n, 2 * D)]
    thetas = [(g, theta_prefix(g, bound * bound).counts) for g, _ in gen.classes]
    for n in ns:
        first = thetas[0][1][n * n]
        for g, th in thetas[1:]:
            if th[n * n] != first:
                return False, (n, thetas[0][0], g)
    return True, None


def _supported_on(n: int, modulus: int) -> bool:
    m = n
    for p in range(2, n + 1):
        if p * p > m:
            break
        while m % p == 0:
            if modulus % p:
                return False
            m //= p
    return m == 1 or modulus % m == 0
