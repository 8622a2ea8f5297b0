"""Exact counting identities tying the named families together.

Every suite returns a list of failure records (empty means the suite
passed); all comparisons are exact integer equalities.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import families as fam
from .counting import rep_count
from .forms import TernaryForm
from .local import odd_prime_divisors, unimodular_part_anisotropic
from .watson import HypothesisFailed, big_lambda, gamma_pair


@dataclass(frozen=True)
class IdentityFailure:
    suite: str
    context: str
    n: int
    lhs: int
    rhs: int


def _r(form: TernaryForm, n: int) -> int:
    return rep_count(form, n).count


def l_of_q_identity(qs=(5, 13, 29), n_max: int = 20) -> list[IdentityFailure]:
    """r(q^2 n^2, <2,q,q>) = 2 r(n^2, <1,1,2>) - r(n^2, <2,q,q>)."""
    base = TernaryForm(1, 1, 2, 0, 0, 0)
    fails = []
    for q in qs:
        Lq = fam.L_of_q(q)
        for n in range(1, n_max + 1):
            lhs = _r(Lq, q * q * n * n)
            rhs = 2 * _r(base, n * n) - _r(Lq, n * n)
            if lhs != rhs:
                fails.append(IdentityFailure("l_of_q_identity", f"q={q}", n, lhs, rhs))
    return fails


def anisotropic_descent(forms=None, n_max: int = 30) -> list[IdentityFailure]:
    """r(pn, f) = r(pn, Lambda_p(f)) whenever the unimodular part of f at an
    odd prime p | D is anisotropic."""
    fails = []
    for form in (forms if forms is not None else fam.catalog_forms()):
        for p in odd_prime_divisors(form.disc4):
            if not unimodular_part_anisotropic(form, p):
                continue
            sub = big_lambda(form, p).output
            for n in range(1, n_max + 1):
                lhs = _r(form, p * n)
                rhs = _r(sub, p * n)
                if lhs != rhs:
                    fails.append(IdentityFailure(
                        "anisotropic_descent", f"f={form},p={p}", n, lhs, rhs))
                    break
    return fails


def gamma_split(forms=None, n_max: int = 30) -> list[IdentityFailure]:
    """r(pn, f) = r(pn, G1) + r(pn, G2) - r(pn, Lambda_p(f)) on every
    catalog (f, p | D) where the two norm-pZ sublattices exist."""
    fails = []
    for form in (forms if forms is not None else fam.catalog_forms()):
        for p in sorted({2, *odd_prime_divisors(form.disc4)}):
            if form.disc4 % p:
                continue
            try:
                pair = gamma_pair(form, p)
            except HypothesisFailed:
                continue
            sub = big_lambda(form, p).output
            for n in range(1, n_max + 1):
                lhs = _r(form, p * n)
                rhs = _r(pair.gamma1, p * n) + _r(pair.gamma2, p * n) - _r(sub, p * n)
                if lhs != rhs:
                    fails.append(IdentityFailure(
                        "gamma_split", f"f={form},p={p}", n, lhs, rhs))
                    break
    return fails


def _pair_suite(name, S, T, rules, n_max) -> list[IdentityFailure]:
    fails = []
    for n in range(1, n_max + 1):
        for label, lhs_fn, rhs_fn in rules:
            lhs, rhs = lhs_fn(n), rhs_fn(n)
            if lhs != rhs:
                fails.append(IdentityFailure(name, label, n, lhs, rhs))
    return fails


def st_pair_identities(i_values=(1, 3, 13, 14, 15), n_max: int = 20) -> list[IdentityFailure]:
    """The class-number-two proof identities for the representative cases."""
    fails = []
    for i in i_values:
        S, T = fam.st_pair(i)
        rules = []
        if i == 1:
            rules = [
                ("r(169n^2,S1)=r(n^2,S1)", lambda n: _r(S, 169 * n * n), lambda n: _r(S, n * n)),
                ("r(169n^2,T1)=r(n^2,T1)", lambda n: _r(T, 169 * n * n), lambda n: _r(T, n * n)),
                ("r(4n^2,S1)=2r(4n^2,P1)-r(n^2,S1)",
                 lambda n: _r(S, 4 * n * n),
                 lambda n: 2 * _r(fam.P1, 4 * n * n) - _r(S, n * n)),
                ("r(4n^2,T1)=2r(4n^2,P1)-r(n^2,T1)",
                 lambda n: _r(T, 4 * n * n),
                 lambda n: 2 * _r(fam.P1, 4 * n * n) - _r(T, n * n)),
            ]
        elif i == 3:
            rules = [
                ("r(47^2n^2,S3)=2r(47^2n^2,P2)-r(n^2,S3)",
                 lambda n: _r(S, 2209 * n * n),
                 lambda n: 2 * _r(fam.P2, 2209 * n * n) - _r(S, n * n)),
                ("r(47^2n^2,T3)=2r(47^2n^2,P2)-r(n^2,T3)",
                 lambda n: _r(T, 2209 * n * n),
                 lambda n: 2 * _r(fam.P2, 2209 * n * n) - _r(T, n * n)),
                ("r(4n^2,S3)=r(n^2,S3)", lambda n: _r(S, 4 * n * n), lambda n: _r(S, n * n)),
                ("r(4n^2,T3)=r(n^2,T3)", lambda n: _r(T, 4 * n * n), lambda n: _r(T, n * n)),
            ]
        elif i == 13:
            rules = [
                ("r(9n^2,S13)=r(n^2,P3)", lambda n: _r(S, 9 * n * n), lambda n: _r(fam.P3, n * n)),
                ("r(9n^2,T13)=r(n^2,P3)", lambda n: _r(T, 9 * n * n), lambda n: _r(fam.P3, n * n)),
                ("r(25n^2,S13)=r(n^2,S13)", lambda n: _r(S, 25 * n * n), lambda n: _r(S, n * n)),
                ("r(25n^2,T13)=r(n^2,T13)", lambda n: _r(T, 25 * n * n), lambda n: _r(T, n * n)),
                ("r(4n^2,S13)=r(n^2,S13)", lambda n: _r(S, 4 * n * n), lambda n: _r(S, n * n)),
                ("r(4n^2,T13)=r(n^2,T13)", lambda n: _r(T, 4 * n * n), lambda n: _r(T, n * n)),
            ]
        elif i == 14:
            rules = [
                (f"r({p * p}n^2,S14)=r(n^2,S14)",
                 lambda n, p=p: _r(S, p * p * n * n), lambda n: _r(S, n * n))
                for p in (3, 5, 7)
            ] + [
                (f"r({p * p}n^2,T14)=r(n^2,T14)",
                 lambda n, p=p: _r(T, p * p * n * n), lambda n: _r(T, n * n))
                for p in (3, 5, 7)
            ] + [
                ("r(4n^2,S14)=r(4n^2,Q)+r(4n^2,S14_1)-r(n^2,S14)",
                 lambda n: _r(S, 4 * n * n),
                 lambda n: _r(fam.Q_FORM, 4 * n * n) + _r(fam.S14_1, 4 * n * n) - _r(S, n * n)),
                ("r(4n^2,T14)=r(4n^2,Q)+r(4n^2,T14_1)-r(n^2,T14)",
                 lambda n: _r(T, 4 * n * n),
                 lambda n: _r(fam.Q_FORM, 4 * n * n) + _r(fam.T14_1, 4 * n * n) - _r(T, n * n)),
                ("r(4n^2,S14_1)=2r(4n^2,S14_2)-r(n^2,S14)",
                 lambda n: _r(fam.S14_1, 4 * n * n),
                 lambda n: 2 * _r(fam.S14_2, 4 * n * n) - _r(S, n * n)),
                ("r(4n^2,T14_1)=2r(4n^2,T14_2)-r(n^2,T14)",
                 lambda n: _r(fam.T14_1, 4 * n * n),
                 lambda n: 2 * _r(fam.T14_2, 4 * n * n) - _r(T, n * n)),
                ("r(4n^2,S14_3)=r(4n^2,S14_2)",
                 lambda n: _r(fam.S14_3, 4 * n * n), lambda n: _r(fam.S14_2, 4 * n * n)),
                ("r(4n^2,S14_2)=2r(n^2,S14)-r(n^2,S14_3)",
                 lambda n: _r(fam.S14_2, 4 * n * n),
                 lambda n: 2 * _r(S, n * n) - _r(fam.S14_3, n * n)),
                ("r(4n^2,T14_3)=r(4n^2,T14_2)",
                 lambda n: _r(fam.T14_3, 4 * n * n), lambda n: _r(fam.T14_2, 4 * n * n)),
                ("r(4n^2,T14_2)=2r(n^2,T14)-r(n^2,T14_3)",
                 lambda n: _r(fam.T14_2, 4 * n * n),
                 lambda n: 2 * _r(T, n * n) - _r(fam.T14_3, n * n)),
                ("r(4n^2,S14)=r(4n^2,Q)+2r(n^2,S14)-2r(n^2,S14_3)",
                 lambda n: _r(S, 4 * n * n),
                 lambda n: _r(fam.Q_FORM, 4 * n * n) + 2 * _r(S, n * n) - 2 * _r(fam.S14_3, n * n)),
                ("r(4n^2,T14)=r(4n^2,Q)+2r(n^2,T14)-2r(n^2,T14_3)",
                 lambda n: _r(T, 4 * n * n),
                 lambda n: _r(fam.Q_FORM, 4 * n * n) + 2 * _r(T, n * n) - 2 * _r(fam.T14_3, n * n)),
                ("r(n^2,S14_3)=r(n^2,T14_3)",
                 lambda n: _r(fam.S14_3, n * n), lambda n: _r(fam.T14_3, n * n)),
            ]
        elif i == 15:
            rules = [
                (f"r({p * p}n^2,S15)=r(n^2,S15)",
                 lambda n, p=p: _r(S, p * p * n * n), lambda n: _r(S, n * n))
                for p in (3, 5, 7)
            ] + [
                (f"r({p * p}n^2,T15)=r(n^2,T15)",
                 lambda n, p=p: _r(T, p * p * n * n), lambda n: _r(T, n * n))
                for p in (3, 5, 7)
            ] + [
                ("r(4n^2,S15)=r(n^2,S14)",
                 lambda n: _r(S, 4 * n * n), lambda n: _r(fam.st_pair(14)[0], n * n)),
                ("r(4n^2,T15)=r(n^2,T14)",
                 lambda n: _r(T, 4 * n * n), lambda n: _r(fam.st_pair(14)[1], n * n)),
            ]
        fails.extend(_pair_suite(f"st_pair[i={i}]", S, T, rules, n_max))
    return fails


def k_triple_identity(t_values=(0, 1, 2, 3), n_max: int = 30) -> list[IdentityFailure]:
    """2 r(n^2, K_{1,t}) = r(n^2, K_{2,t}) + r(n^2, K_{3,t})."""
    fails = []
    for t in t_values:
        k1, k2, k3 = fam.K1(t), fam.K2(t), fam.K3(t)
        for n in range(1, n_max + 1):
            lhs = 2 * _r(k1, n * n)
            rhs = _r(k2, n * n) + _r(k3, n * n)
            if lhs != rhs:
                fails.append(IdentityFailure("k_triple_identity", f"t={t}", n, lhs, rhs))
    return fails


def mod3_progression_identity(t_values=(1, 2, 3, 4, 5, 6), value_max: int = 100) -> list[IdentityFailure]:
    """r(3n+1, ell_t) = 3 r(3n+1, L_t) = 3 r(3n+1, M_t)
       = 2 r(3n+1, N_t) + r(3n+1, K_t)."""
    fails = []
    for t in t_values:
        ell, L, M, N, K = fam.ell_t(t), fam.L_t(t), fam.M_t(t), fam.N_t(t), fam.K27_t(t)
        for v in range(1, value_max + 1, 3):
            lhs = _r(ell, v)
            for label, rhs in (
                ("3r(L_t)", 3 * _r(L, v)),
                ("3r(M_t)", 3 * _r(M, v)),
                ("2r(N_t)+r(K_t)", 2 * _r(N, v) + _r(K, v)),
            ):
                if lhs != rhs:
                    fails.append(IdentityFailure("mod3_progression_identity", f"t={t}:{label}", v, lhs, rhs))
    return fails


def ninefold_scaling_identity(t_values=(1, 4, 10), n_max: int = 30) -> list[IdentityFailure]:
    """r(9n, L_t) = r(9n, N_t) = r(9n, K_t) = r(n, ell_t) for t = 1 mod 3."""
    fails = []
    for t in t_values:
        ell, L, N, K = fam.ell_t(t), fam.L_t(t), fam.N_t(t), fam.K27_t(t)
        for n in range(1, n_max + 1):
            ref = _r(ell, n)
            for label, val in (("L_t", _r(L, 9 * n)), ("N_t", _r(N, 9 * n)),
                               ("K_t", _r(K, 9 * n))):
                if val != ref:
                    fails.append(IdentityFailure("ninefold_scaling_identity", f"t={t}:{label}", n, val, ref))
    return fails


def run_identity_suites(n_max_heavy: int = 20) -> dict[str, list[IdentityFailure]]:
    """All identity suites at their contract bounds."""
    return {
        "l_of_q_identity": l_of_q_identity(n_max=n_max_heavy),
        "anisotropic_descent": anisotropic_descent(),
        "gamma_split": gamma_split(),
        "st_pair_identities": st_pair_identities(n_max=n_max_heavy),
        "k_triple_identity": k_triple_identity(),
        "mod3_progression_identity": mod3_progression_identity(),
        "ninefold_scaling_identity": ninefold_scaling_identity(),
    }
