"""Named lattice families used by the verification suites.

Several carriers here are deliberately non-primitive (content 2 or 47):
they are sublattice Grams appearing on the right-hand side of counting
identities, so they bypass make_form.
"""

from __future__ import annotations

from .dataset import load_tables
from .forms import TernaryForm

P1 = TernaryForm(2, 4, 4, 2, 2, 0)
P2 = TernaryForm(47, 47, 47, 0, 47, 47)
P3 = TernaryForm(1, 1, 10, 0, 0, 1)
Q_FORM = TernaryForm(4, 8, 16, 2, 4, 4)

S14_1 = TernaryForm(1, 2, 60, 0, 0, 1)
S14_2 = TernaryForm(2, 4, 60, 0, 0, 2)
S14_3 = TernaryForm(2, 4, 15, 0, 0, 2)
T14_1 = TernaryForm(1, 4, 28, 0, 0, 1)
T14_2 = TernaryForm(4, 4, 28, 0, 0, 2)
T14_3 = TernaryForm(4, 4, 7, 0, 0, 2)


def L_of_q(q: int) -> TernaryForm:
    """<2, q, q>."""
    return TernaryForm(2, q, q, 0, 0, 0)


def K1(t: int) -> TernaryForm:
    """<1> perp [[4,2],[2,8*3^t+1]]."""
    return TernaryForm(1, 4, 8 * 3**t + 1, 4, 0, 0)


def K2(t: int) -> TernaryForm:
    """<1, 1, 32*3^t>."""
    return TernaryForm(1, 1, 32 * 3**t, 0, 0, 0)


def K3(t: int) -> TernaryForm:
    """Gram [[2,0,1],[0,2,1],[1,1,8*3^t+1]]."""
    return TernaryForm(2, 2, 8 * 3**t + 1, 2, 2, 0)


def ell_t(t: int) -> TernaryForm:
    """[[1,1/2],[1/2,1]] perp <3t>."""
    return TernaryForm(1, 1, 3 * t, 0, 0, 1)


def L_t(t: int) -> TernaryForm:
    """[[1,1/2],[1/2,7]] perp <3t>."""
    return TernaryForm(1, 7, 3 * t, 0, 0, 1)


def M_t(t: int) -> TernaryForm:
    """[[1,1/2,1/2],[1/2,7,5/2],[1/2,5/2,3t+1]]."""
    return TernaryForm(1, 7, 3 * t + 1, 5, 1, 1)


def N_t(t: int) -> TernaryForm:
    """[[3,3/2,0],[3/2,3,3/2],[0,3/2,3t+1]]."""
    return TernaryForm(3, 3, 3 * t + 1, 3, 0, 3)


def K27_t(t: int) -> TernaryForm:
    """[[1,1/2],[1/2,1]] perp <27t>."""
    return TernaryForm(1, 1, 27 * t, 0, 0, 1)


def st_pair(i: int) -> tuple[TernaryForm, TernaryForm]:
    """(S_i, T_i) from the shipped dataset marks."""
    s = t = None
    for entry in load_tables():
        if entry.mark == f"S{i}":
            s = entry.form
        elif entry.mark == f"T{i}":
            t = entry.form
    if s is None or t is None:
        raise KeyError(f"no S{i}/T{i} pair in the dataset")
    return s, t


def catalog_forms() -> list[TernaryForm]:
    """The named forms exercised by the identity suites."""
    forms = [P1, P2, P3, Q_FORM, S14_1, S14_2, S14_3, T14_1, T14_2, T14_3]
    forms += [L_of_q(q) for q in (5, 13, 29)]
    forms += [K1(t) for t in range(4)] + [K2(t) for t in range(4)] + [K3(t) for t in range(4)]
    for t in (1, 2, 3, 4, 5, 6, 10):
        forms += [ell_t(t), L_t(t), M_t(t), N_t(t), K27_t(t)]
    for i in range(1, 16):
        forms += list(st_pair(i))
    return forms
