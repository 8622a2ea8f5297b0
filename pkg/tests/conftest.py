import random

import pytest
from hypothesis import strategies as st

from tsl.forms import IDENTITY, NotPositiveDefinite, TernaryForm


def _try_form(coeffs):
    try:
        form = TernaryForm(*coeffs)
    except NotPositiveDefinite:
        return None
    return form if form.is_primitive else None


small_forms = st.builds(
    _try_form,
    st.tuples(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6),
              st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)),
).filter(lambda f: f is not None)


@st.composite
def unimodular_matrices(draw, steps=6):
    U = [list(r) for r in IDENTITY]
    for _ in range(draw(st.integers(1, steps))):
        i = draw(st.integers(0, 2))
        j = draw(st.integers(0, 2).filter(lambda x, i=i: x != i))
        m = draw(st.integers(-2, 2))
        for k in range(3):
            U[k][i] += m * U[k][j]
    return tuple(tuple(r) for r in U)


def random_reduced_forms(count, disc_max, seed=20260810, coeff_max=8):
    """Deterministic corpus of primitive reduced forms with D <= disc_max."""
    from tsl.isometry import minkowski_reduce

    rng = random.Random(seed)
    out = []
    seen = set()
    while len(out) < count:
        coeffs = (rng.randint(1, coeff_max), rng.randint(1, coeff_max),
                  rng.randint(1, coeff_max), rng.randint(-coeff_max, coeff_max),
                  rng.randint(-coeff_max, coeff_max), rng.randint(-coeff_max, coeff_max))
        form = _try_form(coeffs)
        if form is None or form.disc4 > disc_max:
            continue
        reduced, _ = minkowski_reduce(form)
        if reduced in seen:
            continue
        seen.add(reduced)
        out.append(reduced)
    return out


@pytest.fixture(scope="session")
def table_entries():
    from tsl.dataset import load_tables

    return load_tables()
