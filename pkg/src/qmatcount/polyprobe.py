"""Polynomiality probes: fit counts at several q, test the fit on held-out q."""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

from . import oracle
from .errors import BudgetExceeded
from .oracle import CountQuery
from .poly import QPolynomial, interpolate_exact
from .support import fano_support

__all__ = ["ProbeResult", "QPolynomial", "interpolate_exact", "probe", "fano_experiment"]

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"
INSUFFICIENT = "insufficient"


@dataclass
class ProbeResult:
    verdict: str
    fitted: QPolynomial | None
    samples: list[tuple[int, int]]
    residuals: list[tuple[int, int, int]]  # (q, fitted value, actual count)
    degree_bound: int
    parity_fits: dict[str, QPolynomial] = field(default_factory=dict)
    timings: dict[int, float] = field(default_factory=dict)

    @property
    def underdetermined(self) -> bool:
        """Fewer fitting points than the degree bound allows: evidence only."""
        fit_points = len(self.samples) - len(self.residuals)
        return fit_points <= self.degree_bound

    @property
    def caveat(self) -> str:
        fit_points = len(self.samples) - len(self.residuals)
        if self.verdict == INSUFFICIENT:
            return "not enough points to test any fit"
        if self.underdetermined:
            return (f"{fit_points} fitting points against a degree bound of {self.degree_bound}; "
                    "the held-out comparison is evidence only, not a polynomiality verdict")
        return "the fit is determined by the degree bound"


def _classify(samples: list[tuple[int, int]], holdout: int, degree_bound: int) -> ProbeResult:
    samples = sorted(samples)
    parity = {}
    for name, keep in (("even", lambda q: q % 2 == 0), ("odd", lambda q: q % 2 == 1)):
        pts = [(q, v) for q, v in samples if keep(q)]
        if pts and len(pts) < len(samples):
            parity[name] = interpolate_exact(pts)
    if len(samples) < 2 or holdout < 1 or holdout >= len(samples):
        fitted = interpolate_exact(samples) if samples else None
        return ProbeResult(INSUFFICIENT, fitted, samples, [], degree_bound, parity)
    fit_pts, held = samples[:-holdout], samples[-holdout:]
    fitted = interpolate_exact(fit_pts)
    residuals = []
    for q, actual in held:
        predicted = fitted(q)
        residuals.append((q, predicted, actual))
    ok = all(p == a for _, p, a in residuals)
    verdict = CONSISTENT if ok else INCONSISTENT
    return ProbeResult(verdict, fitted, samples, residuals, degree_bound, parity)


def probe(template: CountQuery | Callable[[int], int], q_list: Sequence[int], holdout: int = 1,
          degree_bound: int | None = None, **oracle_kw) -> ProbeResult:
    """Count at every q in ``q_list`` and fit on all but the ``holdout`` largest.

    ``template`` is either a CountQuery (its q is replaced) or a function of q.
    If a count exceeds the budget, the raised BudgetExceeded carries the
    samples gathered so far in ``partial``.
    """
    if isinstance(template, CountQuery):
        bound = template.S.free_count if degree_bound is None else degree_bound

        def compute(q):
            return oracle.count_restricted(replace(template, q=q), **oracle_kw).value
    else:
        bound = degree_bound if degree_bound is not None else 0
        compute = template
    samples, timings = [], {}
    for q in sorted(q_list):
        t0 = time.perf_counter()
        try:
            value = int(compute(q))
        except BudgetExceeded as exc:
            exc.partial = list(samples)
            raise
        timings[q] = time.perf_counter() - t0
        samples.append((q, value))
    result = _classify(samples, holdout, bound)
    result.timings = timings
    return result


def fano_experiment(q_list: Sequence[int] = (2, 3), holdout: int = 1, **oracle_kw) -> ProbeResult:
    """Full-rank 7x7 matrices supported on the Fano incidence pattern."""
    S = fano_support()
    return probe(CountQuery(7, 7, S, 7, 2), q_list, holdout=holdout, **oracle_kw)
