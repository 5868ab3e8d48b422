"""Ground-truth counting by enumeration.

Counts matrices over GF(q) whose support avoids a forbidden set, refined by
rank, by symmetry class and (for odd q) by quadratic character.

General matrices have three strategies:

* ``exhaustive``: every assignment of the free entries.
* ``projectivized``: each column ranges over zero plus one representative
  per line, reweighted by (q-1) per nonzero column.  Scaling a column
  preserves both the rank and the support.
* ``pruned_column_dfs``: projectivized columns explored depth first with an
  incremental echelon basis; the last column is counted in closed form and
  branches that cannot reach the target rank are cut.

Symmetric and skew classes scale the whole matrix instead (a column scaling
would break symmetry), so ``projectivized`` there means one representative
per nonzero scalar multiple.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from itertools import product

import numpy as np

from . import _kernels as K
from .errors import BudgetExceeded, EvenCharacteristic, InvalidQuery
from .gf import Character, FieldSpec, make_field
from .matq import Permutation
from .support import SupportSet, diagonal_prefix

DEFAULT_BUDGET = 2**34
CLASSES = ("general", "symmetric", "skew", "symmetric_with_character")
METHODS = ("exhaustive", "projectivized", "pruned_column_dfs")
BRUHAT_MAX_N = {2: 5, 3: 4}


class CharacterInEvenCharacteristic(EvenCharacteristic):
    pass


def default_budget() -> int:
    env = os.environ.get("QMAT_BUDGET")
    if env:
        return int(float(env))
    return DEFAULT_BUDGET


def default_workers() -> int:
    return os.cpu_count() or 1


@dataclass(frozen=True)
class CountQuery:
    m: int
    n: int
    S: SupportSet
    r: int | None  # None means "all ranks"
    q: int
    cls: str = "general"
    character: Character | None = None

    def validate(self) -> None:
        if self.cls not in CLASSES:
            raise InvalidQuery(f"unknown class {self.cls!r}")
        if (self.S.m, self.S.n) != (self.m, self.n):
            raise InvalidQuery("support set dimensions do not match the query")
        if self.r is not None and not 0 <= self.r <= min(self.m, self.n):
            raise InvalidQuery(f"rank {self.r} outside 0..{min(self.m, self.n)}")
        if self.cls != "general":
            if self.m != self.n:
                raise InvalidQuery(f"class {self.cls} needs a square grid")
            if not self.S.is_symmetric():
                raise InvalidQuery(f"class {self.cls} needs a transpose-symmetric S")
        field_ = make_field(self.q)
        if self.cls == "symmetric_with_character" or self.character is not None:
            if not field_.odd:
                raise CharacterInEvenCharacteristic(
                    "quadratic character needs odd q")
            if self.cls not in ("symmetric", "symmetric_with_character"):
                raise InvalidQuery("a character filter applies to symmetric matrices only")


@dataclass
class CountValue:
    value: int
    method: str
    elapsed: float = 0.0
    work: int = 0
    distribution: dict | None = field(default=None, repr=False)

    def __int__(self):
        return self.value

    def __eq__(self, other):
        if isinstance(other, CountValue):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)


# -- helpers ---------------------------------------------------------------------


def _tables(f: FieldSpec):
    return f.add_table, f.mul_table, f.neg_table, f.inv_table


def _proj_size(q: int, free: int) -> int:
    return 1 + (q**free - 1) // (q - 1)


def _column_candidates(f: FieldSpec, m: int, rows: list[int], projective: bool):
    """Candidate column vectors (length m) with free coordinates `rows` (0-based)."""
    q = f.q
    out = []
    for vals in product(range(q), repeat=len(rows)):
        if projective:
            lead = next((x for x in vals if x), 0)
            if lead not in (0, 1):
                continue
        vec = [0] * m
        for i, x in zip(rows, vals):
            vec[i] = x
        out.append((vec, 1 if projective and any(vals) else 0))
    return out


def estimate_work(query: CountQuery, method: str) -> int:
    q, S = query.q, query.S
    if query.cls == "general":
        sizes = [len(S.free_rows_in_column(j)) for j in range(1, S.n + 1)]
        if method == "exhaustive":
            return q ** sum(sizes)
        if method == "projectivized":
            return math.prod(_proj_size(q, s) for s in sizes)
        rest = sorted(sizes)[:-1]
        return max(1, math.prod(_proj_size(q, s) for s in rest))
    free = len(_symmetric_coords(S, query.cls == "skew"))
    if method == "exhaustive":
        return q**free
    return _proj_size(q, free)


def _split(total: int, parts: int):
    """Contiguous, deterministic split of range(total) into `parts` slices."""
    bounds = [total * k // parts for k in range(parts + 1)]
    return [(bounds[k], bounds[k + 1]) for k in range(parts)]


def _run_parts(fn, parts: int, workers: int):
    if workers <= 1 or parts <= 1:
        return [fn(k) for k in range(parts)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(parts)))


# -- general class -------------------------------------------------------------------


def _general_distribution(query: CountQuery, method: str, workers: int):
    f = make_field(query.q)
    S, m, n, q = query.S, query.m, query.n, query.q
    cols = [[i - 1 for i in S.free_rows_in_column(j)] for j in range(1, n + 1)]
    if method == "pruned_column_dfs":
        # the widest column goes last: it is counted in closed form
        last = max(range(n), key=lambda j: (len(cols[j]), j))
        order = [j for j in range(n) if j != last] + [last]
        cols = [cols[j] for j in order]
    projective = method != "exhaustive"
    cands = [_column_candidates(f, m, rows, projective) for rows in cols]
    maxc = max(len(c) for c in cands)
    cand = np.zeros((n, maxc, m), dtype=np.int64)
    exps = np.zeros((n, maxc), dtype=np.int64)
    ncand = np.array([len(c) for c in cands], dtype=np.int64)
    for j, cj in enumerate(cands):
        for c, (vec, e) in enumerate(cj):
            cand[j, c] = vec
            exps[j, c] = e
    add, mul, neg, inv = _tables(f)
    parts = max(1, workers)
    target = -1 if query.r is None else query.r

    if method == "pruned_column_dfs":
        last_rows = np.array(cols[-1] or [0], dtype=np.int64)
        nlast = len(cols[-1])

        def job(k):
            if n == 1 and k > 0:
                return np.zeros((n + 1, min(m, n) + 1), dtype=np.int64), 0
            return K.column_dfs_hist(m, n, cand, ncand, exps, last_rows, nlast, q, target,
                                     k, parts, add, mul, neg, inv)
    else:
        def job(k):
            return K.column_product_hist(m, n, cand, ncand, exps, k, parts, add, mul, neg, inv)

    results = _run_parts(job, parts, workers)
    dist = {r: 0 for r in range(min(m, n) + 1)}
    work = 0
    for hist, w in results:
        work += int(w)
        for k in range(hist.shape[0]):
            weight = (q - 1) ** k
            for r in range(hist.shape[1]):
                c = int(hist[k, r])
                if c:
                    dist[r] += c * weight
    return dist, work


# -- symmetric / skew classes -----------------------------------------------------------


def _symmetric_coords(S: SupportSet, skew: bool):
    n = S.n
    return [(i, j) for i in range(1, n + 1) for j in range(i + (1 if skew else 0), n + 1)
            if S.is_free(i, j)]


def _symmetric_distribution(query: CountQuery, method: str, workers: int, want_char: bool):
    """dict rank -> [count_plus, count_minus] (second slot unused without characters)."""
    f = make_field(query.q)
    q, n = query.q, query.n
    skew = query.cls == "skew"
    coords = _symmetric_coords(query.S, skew)
    pos_i = np.array([i - 1 for i, _ in coords], dtype=np.int64)
    pos_j = np.array([j - 1 for _, j in coords], dtype=np.int64)
    nf = len(coords)
    add, mul, neg, inv = _tables(f)
    square = f.square_table
    parts = max(1, workers)

    if method == "exhaustive":
        segments = [(-1, q**nf, 1)]  # (lead, range size, weight tag)
    else:
        segments = [(lead, q ** (nf - lead - 1), 0) for lead in range(nf)]

    def job(k):
        hist_full = np.zeros((n + 1, 2), dtype=np.int64)
        hist_proj = np.zeros((n + 1, 2), dtype=np.int64)
        work = 0
        for lead, size, tag in segments:
            lo, hi = _split(size, parts)[k]
            if lo >= hi:
                continue
            h, w = K.symmetric_hist(n, pos_i, pos_j, lead, lo, hi, skew, want_char, q,
                                    add, mul, neg, inv, square)
            work += int(w)
            if tag:
                hist_full += h
            else:
                hist_proj += h
        return hist_full, hist_proj, work

    results = _run_parts(job, parts, workers)
    dist = {r: [0, 0] for r in range(n + 1)}
    work = 0
    if method != "exhaustive":
        dist[0][0] += 1  # the zero matrix
    for hist_full, hist_proj, w in results:
        work += w
        for r in range(n + 1):
            for c in range(2):
                dist[r][c] += int(hist_full[r, c])
            plus, minus = int(hist_proj[r, 0]), int(hist_proj[r, 1])
            if not want_char:
                dist[r][0] += (q - 1) * plus
            elif r % 2 == 0:
                dist[r][0] += (q - 1) * plus
                dist[r][1] += (q - 1) * minus
            else:
                half = (q - 1) // 2 * (plus + minus)
                dist[r][0] += half
                dist[r][1] += half
    return dist, work


# -- public operations --------------------------------------------------------------


def _resolve_method(query: CountQuery, method: str) -> str:
    if method == "auto":
        return "pruned_column_dfs" if query.cls == "general" else "projectivized"
    if method not in METHODS:
        raise InvalidQuery(f"unknown method {method!r}")
    if query.cls != "general" and method == "pruned_column_dfs":
        raise InvalidQuery("pruned_column_dfs applies to the general class only")
    return method


def _check_budget(query: CountQuery, method: str, budget: int | None) -> int:
    budget = default_budget() if budget is None else budget
    estimate = estimate_work(query, method)
    if estimate > budget:
        raise BudgetExceeded(estimate, budget)
    return estimate


def count_distribution(query: CountQuery, method: str = "auto", workers: int | None = None,
                       budget: int | None = None) -> dict:
    """Full rank distribution for the query's class.

    For symmetric_with_character the keys are (rank, Character); otherwise rank.
    """
    query.validate()
    method = _resolve_method(query, method)
    _check_budget(query, method, budget)
    workers = default_workers() if workers is None else workers
    if query.cls == "general":
        dist, _ = _general_distribution(replace(query, r=None), method, workers)
        return dist
    want_char = query.cls == "symmetric_with_character"
    dist, _ = _symmetric_distribution(query, method, workers, want_char)
    if want_char:
        return {(r, ch): dist[r][0 if ch is Character.PLUS else 1]
                for r in dist for ch in (Character.PLUS, Character.MINUS)}
    return {r: v[0] for r, v in dist.items()}


def count_restricted(query: CountQuery, method: str = "auto", workers: int | None = None,
                     budget: int | None = None) -> CountValue:
    query.validate()
    method = _resolve_method(query, method)
    t0 = time.perf_counter()
    if query.cls == "skew" and query.r is not None and query.r % 2 == 1:
        return CountValue(0, method, time.perf_counter() - t0, 0)
    if query.cls == "general" and method == "pruned_column_dfs" and query.r is not None:
        _check_budget(query, method, budget)
        workers_ = default_workers() if workers is None else workers
        dist, work = _general_distribution(query, method, workers_)
        return CountValue(dist[query.r], method, time.perf_counter() - t0, work)
    _check_budget(query, method, budget)
    workers_ = default_workers() if workers is None else workers
    if query.cls == "general":
        dist, work = _general_distribution(
            CountQuery(query.m, query.n, query.S, None, query.q), method, workers_)
        table = dist
    else:
        want_char = query.cls == "symmetric_with_character"
        raw, work = _symmetric_distribution(query, method, workers_, want_char)
        if want_char and query.character is not None:
            slot = 0 if query.character is Character.PLUS else 1
            table = {r: v[slot] for r, v in raw.items()}
        else:
            table = {r: v[0] + (v[1] if want_char else 0) for r, v in raw.items()}
    elapsed = time.perf_counter() - t0
    if query.r is None:
        return CountValue(sum(table.values()), method, elapsed, work, distribution=table)
    return CountValue(table[query.r], method, elapsed, work)


def count(m: int, n: int, S: SupportSet | None, r: int | None, q: int, cls: str = "general",
          character=None, **kw) -> int:
    """Convenience wrapper returning a plain integer."""
    S = SupportSet.of(m, n) if S is None else S
    ch = None if character is None else Character.parse(character)
    return count_restricted(CountQuery(m, n, S, r, q, cls, ch), **kw).value


def count_rank_character_table(n: int, S: SupportSet, q: int, method: str = "auto",
                               workers: int | None = None, budget: int | None = None) -> dict:
    query = CountQuery(n, n, S, None, q, "symmetric_with_character")
    query.validate()
    method = _resolve_method(query, method)
    _check_budget(query, method, budget)
    t0 = time.perf_counter()
    raw, work = _symmetric_distribution(query, method,
                                        default_workers() if workers is None else workers, True)
    elapsed = time.perf_counter() - t0
    return {(r, ch): CountValue(raw[r][0 if ch is Character.PLUS else 1], method, elapsed, work)
            for r in range(n + 1) for ch in (Character.PLUS, Character.MINUS)}


def _code_to_perm(code: int, n: int) -> Permutation:
    images = []
    for _ in range(n):
        images.append(code % n + 1)
        code //= n
    return Permutation(tuple(images))


def bruhat_cell_counts(n: int, q: int, S: SupportSet | None = None, workers: int | None = None,
                       budget: int | None = None, max_n: dict | None = None) -> dict:
    """Zero-diagonal (or S-avoiding) invertible matrices tallied by Bruhat cell."""
    bounds = BRUHAT_MAX_N if max_n is None else max_n
    limit = bounds.get(q, 3)
    S = diagonal_prefix(n, n) if S is None else S
    coords = [(i, j) for (i, j) in S.free_cells()]
    estimate = q ** len(coords)
    budget = default_budget() if budget is None else budget
    if n > limit or estimate > budget:
        raise BudgetExceeded(estimate, budget)
    f = make_field(q)
    add, mul, neg, inv = _tables(f)
    pos_i = np.array([i - 1 for i, _ in coords], dtype=np.int64)
    pos_j = np.array([j - 1 for _, j in coords], dtype=np.int64)
    workers = default_workers() if workers is None else workers
    parts = max(1, workers)
    slices = _split(estimate, parts)
    t0 = time.perf_counter()

    def job(k):
        lo, hi = slices[k]
        return K.bruhat_hist(n, pos_i, pos_j, lo, hi, q, add, mul, neg, inv)

    total = sum(_run_parts(job, parts, workers))
    elapsed = time.perf_counter() - t0
    out = {}
    for w in Permutation.all(n):
        code = sum((w(c + 1) - 1) * n**c for c in range(n))
        out[w] = CountValue(int(total[code]), "exhaustive", elapsed, estimate)
    return out


def quadratic_form_zero_count(m: int, q: int, character) -> CountValue:
    """Solutions of x_1^2 + ... + x_m^2 = 0 (+) or with x_m^2 scaled by a nonsquare (-)."""
    f = make_field(q)
    if not f.odd:
        raise EvenCharacteristic("quadratic form counts need odd q")
    ch = Character.parse(character)
    coeffs = np.ones(m, dtype=np.int64)
    if ch is Character.MINUS:
        coeffs[-1] = f.least_nonsquare
    t0 = time.perf_counter()
    total = q**m
    value = int(K.diagonal_form_zeros(coeffs, q, 0, total, f.add_table, f.mul_table))
    return CountValue(value, "exhaustive", time.perf_counter() - t0, total)


def bilinear_solution_count(N: int, q: int, alpha: int = 0) -> CountValue:
    """Pairs (A, B) in GF(q)^N x GF(q)^N with sum_i A_i B_i = alpha."""
    f = make_field(q)
    t0 = time.perf_counter()
    vectors = list(product(range(q), repeat=N))
    # tally <A, B> over all B for each A via the multiplication table
    dots = np.zeros((len(vectors), len(vectors)), dtype=np.int64)
    for i in range(N):
        a = np.array([v[i] for v in vectors], dtype=np.int64)
        dots = f.add_table[dots, f.mul_table[a[:, None], a[None, :]]]
    value = int(np.count_nonzero(dots == alpha))
    return CountValue(value, "exhaustive", time.perf_counter() - t0, len(vectors) ** 2)
