"""Named identity suites: each compares formulas, recursions and oracle counts.

A suite returns a list of :class:`Check` records.  Nothing in a check depends
on timing or on the worker count, so two runs of the same suite produce
identical check lists.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import formulas as F
from . import oracle, rook
from .gf import Character
from .matq import Permutation
from .oracle import CountQuery
from .polyprobe import probe
from .poly import interpolate_exact
from .support import (SupportSet, diagonal_prefix, fano_support, partitions_in_box,
                      straight_shape)

PRIME_POWERS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29)
QANALOGUE_SEED = 20240501


@dataclass(frozen=True)
class Check:
    name: str
    params: dict
    expected: object
    actual: object
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "params": self.params,
                "expected": _text(self.expected), "actual": _text(self.actual),
                "passed": self.passed}


def _text(x):
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (list, tuple)):
        return [_text(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _text(v) for k, v in x.items()}
    return str(x)


class Context:
    def __init__(self, workers: int | None = None, budget: int | None = None,
                 q_filter: frozenset[int] | None = None):
        self.workers = workers
        self.budget = budget
        self.q_filter = q_filter
        self.checks: list[Check] = []

    def qs(self, values) -> list[int]:
        """The suite's q values, restricted to the user's selection if any."""
        return [q for q in values if self.q_filter is None or q in self.q_filter]

    def count(self, m, n, S, r, q, cls="general", character=None) -> int:
        return oracle.count(m, n, S, r, q, cls, character, workers=self.workers, budget=self.budget)

    def distribution(self, query: CountQuery) -> dict:
        return oracle.count_distribution(query, workers=self.workers, budget=self.budget)

    def check(self, name: str, expected, actual, **params) -> bool:
        ok = expected == actual
        self.checks.append(Check(name, params, expected, actual, ok))
        return ok

    def assert_true(self, name: str, value: bool, **params) -> bool:
        return self.check(name, True, bool(value), **params)


# -- general class -----------------------------------------------------------------


def _rect_support(k: int, n: int) -> SupportSet:
    return SupportSet.of(k, n, [(i, i) for i in range(1, k + 1)])


def suite_frect(ctx: Context) -> None:
    for q in ctx.qs((2, 3, 5, 7)):
        nmax = 4 if q < 5 else 3
        for n in range(1, nmax + 1):
            for k in range(1, n + 1):
                truth = ctx.count(k, n, _rect_support(k, n), k, q)
                for method in ("closed", "recursive"):
                    ctx.check("f_rect", truth, F.f_rect(k, n, q, method), k=k, n=n, q=q,
                              method=method)


def suite_matz(ctx: Context) -> None:
    for q in ctx.qs((2, 3)):
        for n in range(1, 5):
            for k in range(n + 1):
                dist = ctx.distribution(CountQuery(n, n, diagonal_prefix(n, k), None, q))
                for r in range(n + 1):
                    ctx.check("matz", dist[r], F.matz_count(n, k, r, q), n=n, k=k, r=r, q=q)


def suite_gzero(ctx: Context) -> None:
    for q in ctx.qs((2, 3)):
        for n in range(1, 5):
            dist = ctx.distribution(CountQuery(n, n, diagonal_prefix(n, n), None, q))
            for r in range(n + 1):
                for method in ("recursive", "closed"):
                    ctx.check("g_zero_diag", dist[r], F.g_zero_diag(n, r, q, method),
                              n=n, r=r, q=q, method=method)
    for q in ctx.qs((2, 3, 4, 5, 7, 9)):
        for n in range(1, 9):
            for r in range(n + 1):
                ctx.check("g_methods", F.g_zero_diag(n, r, q, "recursive"),
                          F.g_zero_diag(n, r, q, "closed"), n=n, r=r, q=q)


# -- symmetric and skew -------------------------------------------------------------


def suite_macwilliams(ctx: Context) -> None:
    for q in ctx.qs((2, 3, 4, 5)):
        for n in range(1, 5):
            S = SupportSet.of(n, n)
            dist = ctx.distribution(CountQuery(n, n, S, None, q, "symmetric"))
            ctx.check("sym", dist[n], F.sym_formulas("invertible", n, q=q), n=n, q=q)
            for r in range(n + 1):
                ctx.check("sym_rank", dist[r], F.sym_formulas("rank", n, r, q=q), n=n, r=r, q=q)
            if q % 2:
                table = oracle.count_rank_character_table(n, S, q, workers=ctx.workers,
                                                          budget=ctx.budget)
                for (r, ch), v in sorted(table.items()):
                    ctx.check("sym_rank_char", v.value,
                              F.sym_formulas("rank_char", n, r, int(ch), q=q),
                              n=n, r=r, psi=str(ch), q=q)
    for q in ctx.qs((2, 4)):
        for n in range(1, 6):
            dist = ctx.distribution(CountQuery(n, n, diagonal_prefix(n, n), None, q, "symmetric"))
            for r in range(n + 1):
                ctx.check("sym0_even_q", dist[r], F.sym0_even_q(n, r, q), n=n, r=r, q=q)


def _sym0_formula(n: int, q: int) -> int:
    if q % 2:
        return F.symz_count(n, n, "both", q)
    return F.sym0_even_q(n, n, q)


def suite_clover(ctx: Context) -> None:
    for q in ctx.qs((3, 5)):
        for n in (2, 4):
            truth = ctx.count(n, n, diagonal_prefix(n, n), n, q, "symmetric")
            ctx.check("sym0_oracle", truth, F.symz_count(n, n, "both", q), n=n, q=q)
            ctx.check("sym0_closed", truth, F.symz_count(n, n, "both", q, "closed"), n=n, q=q)
            prev = ctx.count(n - 1, n - 1, SupportSet.of(n - 1, n - 1), n - 1, q, "symmetric")
            ctx.check("sym_prev_oracle", prev, truth, n=n, q=q)
            ctx.check("sym_prev_formula", F.sym_formulas("invertible", n - 1, q=q), truth, n=n, q=q)
    for q in ctx.qs((2, 3, 4, 5, 7, 9, 11)):
        for n in (2, 4, 6, 8):
            ctx.check("clover", F.sym_formulas("invertible", n - 1, q=q), _sym0_formula(n, q),
                      n=n, q=q)


def suite_curious(ctx: Context) -> None:
    for q in ctx.qs((3, 5)):
        for n in (2, 4):
            truth = ctx.count(n, n, diagonal_prefix(n, n), n, q, "skew")
            for method in ("recursive", "closed"):
                ctx.check("sk_oracle", truth, F.sk_count(n, n, q, method), n=n, q=q, method=method)
            ctx.check("sk_vs_sym", F.sym_formulas("invertible", n - 1, q=q), truth, n=n, q=q)
    for q in ctx.qs((2, 3, 4, 5, 7, 9, 11)):
        for n in (2, 4, 6, 8):
            sym_prev = F.sym_formulas("invertible", n - 1, q=q)
            ctx.check("curious", sym_prev, F.sk_count(n, n, q), n=n, q=q)
            ctx.check("curious_closed", sym_prev, F.sk_count(n, n, q, "closed"), n=n, q=q)
            ctx.check("sk_eq_sym0", _sym0_formula(n, q), F.sk_count(n, n, q), n=n, q=q)
    for q in ctx.qs((2, 3, 4, 5, 7, 9)):
        for n in range(9):
            for r in range(n + 1):
                ctx.check("sk_methods", F.sk_count(n, r, q), F.sk_count(n, r, q, "closed"),
                          n=n, r=r, q=q)


def suite_lemma33(ctx: Context) -> None:
    n = 4
    for q in ctx.qs((3, 5)):
        vals = [ctx.count(n, n, diagonal_prefix(n, k), n, q, "symmetric") for k in range(n + 1)]
        for k in range(n):
            ctx.check("lemma33", vals[k], q * vals[k + 1], n=n, k=k, q=q)
        for k in range(n + 1):
            ctx.check("symz_oracle", vals[k], F.symz_count(n, k, "both", q), n=n, k=k, q=q)


def suite_sq(ctx: Context) -> None:
    for q in ctx.qs((3, 5, 7, 9)):
        for m in range(1, 7):
            for ch in (Character.PLUS, Character.MINUS):
                truth = oracle.quadratic_form_zero_count(m, q, ch).value
                ctx.check("sq", truth, F.sq_table(m, q, int(ch)), m=m, q=q, psi=str(ch))


def suite_char_recursion(ctx: Context) -> None:
    for q in ctx.qs((3, 5)):
        for n in range(1, 5):
            for k in range(n + 1):
                table = oracle.count_rank_character_table(n, diagonal_prefix(n, k), q,
                                                          workers=ctx.workers, budget=ctx.budget)
                for (r, ch), v in sorted(table.items()):
                    ctx.check("sym0_char", v.value, F.sym0_char_recursive(n, k, r, int(ch), q),
                              n=n, k=k, r=r, psi=str(ch), q=q)
                    if r == n:
                        ctx.check("symz_char", v.value, F.symz_count(n, k, int(ch), q),
                                  n=n, k=k, psi=str(ch), q=q)


def suite_cor44(ctx: Context) -> None:
    for q in ctx.qs((3, 5, 7)):
        for n in range(1, 8):
            for k in range(n + 1):
                for s in range(n // 2 + 1):
                    if 2 * s + 1 <= n:
                        ctx.check("odd_rank_balance", F.sym0_char_recursive(n, k, 2 * s + 1, 1, q),
                                  F.sym0_char_recursive(n, k, 2 * s + 1, -1, q),
                                  n=n, k=k, s=s, q=q)
                    lhs = F.sym0_count(n, k, 2 * s, q) + F.sym0_count(n, k, 2 * s + 1, q)
                    rhs = Fraction(F.sym_formulas("rank", n, 2 * s, q=q)
                                   + F.sym_formulas("rank", n, 2 * s + 1, q=q), q**k)
                    ctx.check("pair_sum", rhs, lhs, n=n, k=k, s=s, q=q)


def suite_thm47(ctx: Context) -> None:
    for q in ctx.qs((3, 5, 7)):
        for n in range(8):
            for k in range(n + 1):
                for psi in ("both", 1, -1):
                    ctx.check("thm47", F.symz_count(n, k, psi, q, "recursive"),
                              F.symz_count(n, k, psi, q, "closed"),
                              n=n, k=k, psi=str(psi), q=q)
    truth = ctx.count(3, 3, diagonal_prefix(3, 1), 3, 3, "symmetric")
    ctx.check("symz_3_1", truth, F.symz_count(3, 1, "both", 3, "closed"), n=3, k=1, q=3)
    ctx.check("symz_2_1", 6, F.symz_count(2, 1, "both", 3, "closed"), n=2, k=1, q=3)


def suite_zy(ctx: Context) -> None:
    for q in ctx.qs((2, 3, 4, 5)):
        for N in (1, 2):
            ctx.check("z_oracle", oracle.bilinear_solution_count(N, q, 0).value,
                      F.bilinear_zy("z", N, q), N=N, q=q)
            ctx.check("y_oracle", oracle.bilinear_solution_count(N, q, 1).value,
                      F.bilinear_zy("y", N, q), N=N, q=q)
    for q in ctx.qs(range(2, 10)):
        for N in range(1, 7):
            z, y = F.bilinear_zy("z", N, q), F.bilinear_zy("y", N, q)
            ctx.check("z_plus_y", q ** (2 * N), z + (q - 1) * y, N=N, q=q)
            if q > 2:
                ctx.check("z_mod", 1, z % (q - 1), N=N, q=q)
                ctx.check("y_mod", 0, y % (q - 1), N=N, q=q)


# -- rook side ------------------------------------------------------------------------


def suite_haglund(ctx: Context) -> None:
    n = 4
    for q in ctx.qs((2, 3, 4, 5)):
        for lam in partitions_in_box(n, n):
            S = straight_shape(lam, n)
            dist = ctx.distribution(CountQuery(n, n, S, None, q))
            for r in range(n + 1):
                ctx.check("haglund", dist[r], rook.haglund_rhs(lam, n, r, q),
                          lam=str(lam), r=r, q=q)
    for n in range(1, 6):
        P = rook.q_rook_polynomial(rook.full_board(n), n)
        for q in ctx.qs((2, 3, 5, 7)):
            ctx.check("full_board", F.q_factorial(n, q), P(q), n=n, q=q)


def _symmetric_random(n: int, count: int, seed: int) -> list[SupportSet]:
    out = []
    for S in rook.random_supports(n, count, seed):
        cells = {(i, i) for i in range(1, n + 1)}
        for i, j in S.forbidden:
            if i < j:
                cells |= {(i, j), (j, i)}
        out.append(SupportSet.of(n, n, cells))
    return out


def suite_qanalogue(ctx: Context) -> None:
    n = 4
    supports = rook.random_supports(n, 200, QANALOGUE_SEED)
    for q in ctx.qs((2, 3, 4, 5)):
        failures = 0
        for idx, S in enumerate(supports):
            dist = ctx.distribution(CountQuery(n, n, S, None, q))
            for r in range(n + 1):
                res = rook.q_analogue_check(n, n, S, r, q, count=dist[r])
                if not res.holds:
                    failures += 1
                    ctx.assert_true("qanalogue_case", False, index=idx, r=r, q=q,
                                    residues=[res.count_residue, res.rook_residue])
        ctx.check("qanalogue_random", 0, failures, supports=len(supports), q=q)
    for q in ctx.qs((3, 5)):
        for idx, S in enumerate(_symmetric_random(n, 20, QANALOGUE_SEED)):
            dist = ctx.distribution(CountQuery(n, n, S, None, q, "symmetric"))
            for r in (0, 2, 4):
                res = rook.q_analogue_check(n, n, S, r, q, "symmetric", count=dist[r])
                ctx.check("qanalogue_symmetric", res.rook_residue, res.count_residue,
                          index=idx, r=r, q=q)
    # derangement limit on the diagonal
    for m in range(1, 5):
        S = diagonal_prefix(m, m)
        for q in ctx.qs((2, 3, 5)):
            res = rook.q_analogue_check(m, m, S, m, q, count=ctx.count(m, m, S, m, q))
            ctx.check("diag_congruence", res.rook_residue, res.count_residue, n=m, q=q)
        ctx.check("diag_t1", F.derangements(m), rook.rook_count_T1(m, m, S, m), n=m)
        fit = probe(lambda q, m=m: F.f_rect(m, m, q), PRIME_POWERS[: m * m - m + 2],
                    degree_bound=m * m - m)
        taylor = fit.fitted.taylor(1)
        ctx.assert_true("diag_fit", fit.verdict == "consistent", n=m)
        ctx.check("diag_low_terms", [0] * m, [int(c) for c in (taylor + [0] * m)[:m]], n=m)
        ctx.check("derangement_limit", F.derangements(m), (taylor + [0] * (m + 1))[m], n=m)


def suite_bruhat(ctx: Context) -> None:
    for q in ctx.qs((2, 3)):
        for n in (1, 2, 3):
            cells = oracle.bruhat_cell_counts(n, q, workers=ctx.workers, budget=ctx.budget)
            total = sum(v.value for v in cells.values())
            ctx.check("bruhat_sum", F.f_rect(n, n, q), total, n=n, q=q)
            mod = (q - 1) ** (n + 1)
            for w in sorted(cells, key=lambda p: p.images):
                want = (q - 1) ** n % mod if w.is_derangement() else 0
                ctx.check("bruhat_cell", want, cells[w].value % mod, n=n, q=q, w=str(w))
    # the same congruence as a polynomial identity in q, n <= 3
    qs, held = (2, 3, 4, 5, 7, 8, 9), 11
    for n in (2, 3) if ctx.q_filter is None else ():
        per_q = {q: oracle.bruhat_cell_counts(n, q, workers=ctx.workers, budget=ctx.budget,
                                              max_n={q: n}) for q in qs + (held,)}
        for w in Permutation.all(n):
            poly = interpolate_exact([(q, per_q[q][w].value) for q in qs])
            ctx.check("bruhat_poly_holdout", per_q[held][w].value, poly(held), n=n, w=str(w))
            taylor = poly.taylor(1) + [Fraction(0)] * (n + 1)
            ctx.check("bruhat_poly_low", [0] * n, [int(c) for c in taylor[:n]], n=n, w=str(w))
            ctx.check("bruhat_poly_limit", 1 if w.is_derangement() else 0, taylor[n],
                      n=n, w=str(w))


def suite_fano(ctx: Context) -> None:
    S = fano_support()
    t1 = rook.rook_count_T1(7, 7, S, 7)
    ctx.check("fano_t1", 24, t1)
    for q in ctx.qs((2, 3)):
        value = ctx.count(7, 7, S, 7, q)
        res = rook.q_analogue_check(7, 7, S, 7, q, count=value)
        ctx.check("fano_congruence", res.rook_residue, res.count_residue, q=q, value=str(value))


SUITES: dict[str, Callable[[Context], None]] = {
    "frect": suite_frect,
    "matz": suite_matz,
    "gzero": suite_gzero,
    "macwilliams": suite_macwilliams,
    "clover": suite_clover,
    "curious": suite_curious,
    "lemma33": suite_lemma33,
    "sq": suite_sq,
    "char_recursion": suite_char_recursion,
    "cor44": suite_cor44,
    "thm47": suite_thm47,
    "haglund": suite_haglund,
    "qanalogue": suite_qanalogue,
    "bruhat": suite_bruhat,
    "zy": suite_zy,
    "fano": suite_fano,
}


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def run_suite(name: str, workers: int | None = None, budget: int | None = None,
              q_filter=None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(name)
    ctx = Context(workers, budget, None if q_filter is None else frozenset(q_filter))
    t0 = time.perf_counter()
    SUITES[name](ctx)
    return SuiteReport(name, ctx.checks, time.perf_counter() - t0)
