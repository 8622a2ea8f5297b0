"""The strongly s-regular predicate, m_s, and reduction to terminal form.

A form is checked against the multiplicative identity
    r(n1^2 n2^2, f) = r(n1^2, f) * prod_{p | n2} h_p(df, ord_p(n))
for every n up to a bound, where n = n1*n2 splits n into its part supported
on the primes of 2D and its coprime part.  Bounded checks certify the
property up to the bound only; unbounded claims are out of reach of finite
computation and are deferred to the shipped classification dataset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counting import rep_count, theta_prefix
from .forms import TernaryForm
from .genus import GenusData
from .local import factorize, hecke_weight, split_by_conductor, terminal_condition_at
from .watson import WatsonChain, WatsonStep, watson_lambda

DEFAULT_MS_CAP = 200


class MsNotFound(RuntimeError):
    """No represented square found within the search cap (not a proof of
    non-representation)."""


class NoProgress(RuntimeError):
    """Neither one nor two lambda_p applications reduced ord_p(m_s); the
    input is likely not strongly s-regular."""


@dataclass(frozen=True)
class SsrReport:
    form: TernaryForm
    bound: int
    m_s: int | None
    passed: bool
    counterexample: tuple[int, int, int] | None  # (n, lhs, rhs)


@dataclass(frozen=True)
class TerminalReduction:
    chain: WatsonChain
    terminal_form: TernaryForm
    N: int


def min_square(form: TernaryForm, cap: int = DEFAULT_MS_CAP) -> int | None:
    """Least n <= cap with r(n^2, form) > 0, or None."""
    if cap < 1:
        raise ValueError("cap must be positive")
    for n in range(1, cap + 1):
        if rep_count(form, n * n).count > 0:
            return n
    return None


def check_ssr(form: TernaryForm, bound: int) -> SsrReport:
    """Verify the defining identity for every n <= bound (exact arithmetic);
    reports the first counterexample if any."""
    if bound < 1:
        raise ValueError("bound must be positive")
    D = form.disc4
    counts = theta_prefix(form, bound * bound).counts
    m_s = next((n for n in range(1, bound + 1) if counts[n * n] > 0), None)
    for n in range(1, bound + 1):
        sp = split_by_conductor(n, D)
        rhs = counts[sp.n1 * sp.n1]
        for p, e in sp.exponents.items():
            rhs *= hecke_weight(D, p, e)
        lhs = counts[n * n]
        if lhs != rhs:
            return SsrReport(form, bound, m_s, False, (n, lhs, rhs))
    return SsrReport(form, bound, m_s, True, None)


def verify_square_genus(form: TernaryForm, gen: GenusData, bound: int
                        ) -> tuple[bool, int | None]:
    """True iff the form represents every square n^2 (n <= bound) that some
    class of its genus represents; witness n on failure."""
    thetas = [theta_prefix(g, bound * bound).counts for g, _ in gen.classes]
    own = theta_prefix(form, bound * bound).counts
    for n in range(1, bound + 1):
        if any(th[n * n] > 0 for th in thetas) and own[n * n] == 0:
            return False, n
    return True, None


def is_terminal(form: TernaryForm, cap: int = DEFAULT_MS_CAP) -> bool:
    """m_s odd, squarefree, and <nonsquare unit, p, -p> locally at each
    prime p dividing m_s."""
    m = min_square(form, cap)
    if m is None:
        raise MsNotFound(f"no represented square found below {cap}^2 for {form}")
    fac = factorize(m) if m > 1 else {}
    if m % 2 == 0 or any(e > 1 for e in fac.values()):
        return False
    return all(terminal_condition_at(form, p) for p in fac)


def _ord(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def reduce_to_terminal(form: TernaryForm, cap: int = DEFAULT_MS_CAP) -> TerminalReduction:
    """Greedy lambda_p descent to a terminal form (caller asserts the input
    is strongly s-regular).  Each descent step applies lambda_p once, or
    twice when one application does not reduce ord_p(m_s), and must divide
    m_s by exactly p."""
    current = form
    m = min_square(current, cap)
    if m is None:
        raise MsNotFound(f"no represented square found below {cap}^2 for {form}")
    steps: list[WatsonStep] = []
    while True:
        fac = factorize(m) if m > 1 else {}
        p = None
        if m % 2 == 0:
            p = 2
        else:
            p = next((q for q, e in sorted(fac.items()) if e > 1), None)
            if p is None:
                p = next((q for q in sorted(fac) if not terminal_condition_at(current, q)), None)
        if p is None:
            break
        taken = [watson_lambda(current, p)]
        candidate = taken[0].output
        m2 = min_square(candidate, cap)
        if m2 is None or _ord(m2, p) >= _ord(m, p):
            taken.append(watson_lambda(candidate, p))
            candidate = taken[1].output
            m2 = min_square(candidate, cap)
        if m2 is None or _ord(m2, p) >= _ord(m, p) or m2 * p != m:
            raise NoProgress(
                f"lambda_{p} did not descend m_s at {current} (m_s {m} -> {m2})")
        steps.extend(taken)
        current, m = candidate, m2
    N = 1
    for st in steps:
        N *= st.p
    assert is_terminal(current, cap)
    return TerminalReduction(WatsonChain(tuple(steps), N), current, N)
