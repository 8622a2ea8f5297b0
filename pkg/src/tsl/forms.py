"""Exact positive definite ternary (and binary) quadratic forms over Z.

A ternary form [a,b,c,d,e,f] is a*x^2 + b*y^2 + c*z^2 + d*yz + e*zx + f*xy.
All internal arithmetic happens on the doubled Gram matrix G = 2*M, which has
even diagonal (2a,2b,2c) and integer off-diagonal entries (d,e,f), so no
rationals ever appear.  The discriminant is tracked as D = det(G)/2 = 4*det(M).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

Vec = tuple[int, int, int]
Mat = tuple[Vec, Vec, Vec]

IDENTITY: Mat = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


class NotPositiveDefinite(ValueError):
    """Coefficients do not define a positive definite form."""


class NotPrimitive(ValueError):
    """gcd(a,b,c,d,e,f) != 1, so the form is not non-classic integral."""


def _as_int(v) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise TypeError(f"integer coefficient expected, got {v!r}")
    return v


@dataclass(frozen=True, order=True)
class TernaryForm:
    """a*x^2 + b*y^2 + c*z^2 + d*yz + e*zx + f*xy, positive definite.

    Primitivity (content 1) is enforced by make_form, not here: sublattice
    Grams with content p are legitimate carriers of this type.
    """

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def __post_init__(self):
        a, b, c, d, e, f = (_as_int(v) for v in self.coeffs())
        if a <= 0 or 4 * a * b - f * f <= 0 or self.disc4 <= 0:
            raise NotPositiveDefinite(f"[{a},{b},{c},{d},{e},{f}] is not positive definite")

    def coeffs(self) -> tuple[int, int, int, int, int, int]:
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    @property
    def gram2(self) -> Mat:
        """Doubled Gram matrix G = 2*M (integer, even diagonal)."""
        a, b, c, d, e, f = self.coeffs()
        return ((2 * a, f, e), (f, 2 * b, d), (e, d, 2 * c))

    @property
    def disc4(self) -> int:
        """D = 4*det(M) = det(G)/2."""
        a, b, c, d, e, f = self.coeffs()
        return 4 * a * b * c + d * e * f - a * d * d - b * e * e - c * f * f

    @property
    def content(self) -> int:
        return math.gcd(*self.coeffs())

    @property
    def is_primitive(self) -> bool:
        return self.content == 1

    @property
    def scale_is_integral(self) -> bool:
        """True iff the scale ideal is Z (all cross coefficients even)."""
        return self.d % 2 == 0 and self.e % 2 == 0 and self.f % 2 == 0

    def __call__(self, x: int, y: int, z: int) -> int:
        a, b, c, d, e, f = self.coeffs()
        return a * x * x + b * y * y + c * z * z + d * y * z + e * z * x + f * x * y

    def __str__(self) -> str:
        return "[%d,%d,%d,%d,%d,%d]" % self.coeffs()

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        """Parse the text format [a,b,c,d,e,f] (signed decimal integers)."""
        vals = _parse_bracketed(text, 6)
        return cls(*vals)

    @classmethod
    def from_gram2(cls, G) -> "TernaryForm":
        """Build a form from a doubled Gram matrix (checks symmetry/evenness)."""
        for i in range(3):
            if G[i][i] % 2 != 0:
                raise ValueError(f"odd diagonal entry {G[i][i]} in doubled Gram")
            for j in range(i):
                if G[i][j] != G[j][i]:
                    raise ValueError("doubled Gram matrix is not symmetric")
        return cls(G[0][0] // 2, G[1][1] // 2, G[2][2] // 2, G[1][2], G[0][2], G[0][1])


@dataclass(frozen=True, order=True)
class BinaryForm:
    """a*x^2 + b*xy + c*y^2, positive definite."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = (_as_int(v) for v in (self.a, self.b, self.c))
        if a <= 0 or 4 * a * c - b * b <= 0:
            raise NotPositiveDefinite(f"[{a},{b},{c}] is not positive definite")

    @property
    def disc4(self) -> int:
        """4*det of the binary Gram matrix, i.e. 4ac - b^2."""
        return 4 * self.a * self.c - self.b * self.b

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def __str__(self) -> str:
        return "[%d,%d,%d]" % (self.a, self.b, self.c)

    @classmethod
    def parse(cls, text: str) -> "BinaryForm":
        return cls(*_parse_bracketed(text, 3))


def _parse_bracketed(text: str, arity: int) -> list[int]:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"expected bracketed form, got {text!r}")
    parts = [p.strip() for p in s[1:-1].split(",")]
    if len(parts) != arity or not all(re.fullmatch(r"[+-]?\d+", p) for p in parts):
        raise ValueError(f"expected {arity} integers in {text!r}")
    return [int(p) for p in parts]


def make_form(a: int, b: int, c: int, d: int, e: int, f: int) -> TernaryForm:
    """Validated public constructor: positive definite and primitive."""
    form = TernaryForm(a, b, c, d, e, f)
    if not form.is_primitive:
        raise NotPrimitive(f"content {form.content} != 1 for {form}")
    return form


def discriminant4(form: TernaryForm) -> int:
    """D = 4*det(M), always a positive integer."""
    return form.disc4


def direct_sum_one(ell: BinaryForm) -> TernaryForm:
    """<1> perp ell, with ell = [a,b,c] in the second and third variables."""
    return TernaryForm(1, ell.a, ell.c, ell.b, 0, 0)


# --- small exact 3x3 integer matrix helpers -------------------------------

def mat_mul(A, B) -> Mat:
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(3)) for j in range(3))
        for i in range(3)
    )


def mat_transpose(A) -> Mat:
    return tuple(tuple(A[j][i] for j in range(3)) for i in range(3))


def mat_det(A) -> int:
    return (
        A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
        - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
        + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0])
    )


def mat_adjugate(A) -> Mat:
    c = lambda i, j: A[i][j]  # noqa: E731
    return (
        (
            c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1),
            c(0, 2) * c(2, 1) - c(0, 1) * c(2, 2),
            c(0, 1) * c(1, 2) - c(0, 2) * c(1, 1),
        ),
        (
            c(1, 2) * c(2, 0) - c(1, 0) * c(2, 2),
            c(0, 0) * c(2, 2) - c(0, 2) * c(2, 0),
            c(0, 2) * c(1, 0) - c(0, 0) * c(1, 2),
        ),
        (
            c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0),
            c(0, 1) * c(2, 0) - c(0, 0) * c(2, 1),
            c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0),
        ),
    )


def mat_inverse_unimodular(U) -> Mat:
    """Inverse of a matrix with det = +-1."""
    det = mat_det(U)
    if det not in (1, -1):
        raise ValueError(f"matrix has det {det}, not unimodular")
    adj = mat_adjugate(U)
    return tuple(tuple(det * adj[i][j] for j in range(3)) for i in range(3))


def transform_gram2(G, U) -> Mat:
    """U^T G U for column-vector convention (columns of U = new basis)."""
    return mat_mul(mat_transpose(U), mat_mul(G, U))


def apply_unimodular(form: TernaryForm, U) -> TernaryForm:
    """Form of the basis change by U (det +-1): Gram U^T M U."""
    if mat_det(U) not in (1, -1):
        raise ValueError("basis change matrix must have det +-1")
    return TernaryForm.from_gram2(transform_gram2(form.gram2, U))
