"""Dense matrices over GF(q) and the handful of algorithms the counters need."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import EvenCharacteristic, Singular
from .gf import Character, FieldSpec, make_field


@dataclass(frozen=True)
class MatrixGF:
    field: FieldSpec
    m: int
    n: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.m * self.n:
            raise ValueError(f"expected {self.m * self.n} entries, got {len(self.entries)}")
        q = self.field.q
        for x in self.entries:
            if not 0 <= x < q:
                raise ValueError(f"entry {x} is not an element of GF({q})")

    @classmethod
    def from_rows(cls, field: FieldSpec | int, rows) -> "MatrixGF":
        if isinstance(field, int):
            field = make_field(field)
        rows = [list(r) for r in rows]
        m = len(rows)
        n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        return cls(field, m, n, tuple(x for r in rows for x in r))

    @classmethod
    def parse(cls, text: str, q: int) -> "MatrixGF":
        """Parse the literal format ``"0,1;1,0"`` (rows split on ';', entries on ',')."""
        rows = [[int(tok) for tok in row.split(",")] for row in text.strip().split(";")]
        return cls.from_rows(q, rows)

    @classmethod
    def zeros(cls, field: FieldSpec, m: int, n: int | None = None) -> "MatrixGF":
        n = m if n is None else n
        return cls(field, m, n, (0,) * (m * n))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "MatrixGF":
        return cls(field, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.n + j]

    def rows(self) -> list[list[int]]:
        n = self.n
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(self.m)]

    @property
    def T(self) -> "MatrixGF":
        return MatrixGF(self.field, self.n, self.m,
                        tuple(self[i, j] for j in range(self.n) for i in range(self.m)))

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        if self.n != other.m:
            raise ValueError("dimension mismatch")
        f = self.field
        out = []
        for i in range(self.m):
            for j in range(other.n):
                acc = 0
                for k in range(self.n):
                    a = self[i, k]
                    if a:
                        acc = f.add(acc, f.mul(a, other[k, j]))
                out.append(acc)
        return MatrixGF(f, self.m, other.n, tuple(out))

    def is_symmetric(self) -> bool:
        return self.m == self.n and all(
            self[i, j] == self[j, i] for i in range(self.n) for j in range(i + 1, self.n))

    def is_skew(self) -> bool:
        f = self.field
        return self.m == self.n and all(
            self[i, j] == f.neg(self[j, i]) for i in range(self.n) for j in range(i, self.n)
        ) and all(self[i, i] == 0 for i in range(self.n))

    def support(self) -> set[tuple[int, int]]:
        """1-indexed positions of the nonzero entries."""
        return {(i + 1, j + 1) for i in range(self.m) for j in range(self.n) if self[i, j]}

    def literal(self) -> str:
        return ";".join(",".join(str(x) for x in row) for row in self.rows())

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows())


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}; ``images[i-1] = w(i)``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"{self.images} is not a permutation")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def is_derangement(self) -> bool:
        return all(w != i for i, w in enumerate(self.images, start=1))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def all(cls, n: int):
        return [cls(p) for p in permutations(range(1, n + 1))]

    def __str__(self):
        return "[" + " ".join(map(str, self.images)) + "]"


# -- rank ----------------------------------------------------------------------


def _rank_gf2_bits(rows: list[int]) -> int:
    rank = 0
    rows = [r for r in rows if r]
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
    return rank


def _rank_rows(f: FieldSpec, rows: list[list[int]], ncols: int) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        prow = rows[rank]
        inv = f.inv(prow[col])
        for i in range(rank + 1, len(rows)):
            c = rows[i][col]
            if c:
                factor = f.neg(f.mul(c, inv))
                ri = rows[i]
                for j in range(col, ncols):
                    if prow[j]:
                        ri[j] = f.add(ri[j], f.mul(factor, prow[j]))
        rank += 1
        if rank == len(rows):
            break
    return rank


def rank(A: MatrixGF) -> int:
    if A.field.q == 2:
        return _rank_gf2_bits(
            [sum(bit << j for j, bit in enumerate(row)) for row in A.rows()])
    return _rank_rows(A.field, A.rows(), A.n)


def submatrix_rank(A: MatrixGF, row_idx, col_idx) -> int:
    rows = [[A[i, j] for j in col_idx] for i in row_idx]
    if not rows or not col_idx:
        return 0
    if A.field.q == 2:
        return _rank_gf2_bits([sum(bit << j for j, bit in enumerate(r)) for r in rows])
    return _rank_rows(A.field, rows, len(col_idx))


def inverse(A: MatrixGF) -> MatrixGF:
    """Gauss-Jordan inverse; raises Singular."""
    f, n = A.field, A.n
    if A.m != n:
        raise Singular("non-square matrix")
    aug = [row + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(A.rows())]
    for col in range(n):
        pivot = next((i for i in range(col, n) if aug[i][col]), None)
        if pivot is None:
            raise Singular("matrix is not invertible")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = f.inv(aug[col][col])
        aug[col] = [f.mul(inv, x) for x in aug[col]]
        for i in range(n):
            c = aug[i][col]
            if i != col and c:
                nc = f.neg(c)
                aug[i] = [f.add(x, f.mul(nc, y)) for x, y in zip(aug[i], aug[col])]
    return MatrixGF.from_rows(f, [row[n:] for row in aug])


# -- symmetric congruence ----------------------------------------------------------


def congruence_diagonalize(A: MatrixGF) -> tuple[MatrixGF, MatrixGF]:
    """Return (D, M) with D diagonal, M invertible and A = M D M^T.

    Works on a copy W = P A P^T, applying each row operation to P as well,
    then M = P^{-1}.
    """
    f = A.field
    if not f.odd:
        raise EvenCharacteristic("congruence diagonalization needs odd characteristic")
    if not A.is_symmetric():
        raise ValueError("matrix is not symmetric")
    n = A.n
    W = A.rows()
    P = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def add_multiple(dst, src, c):
        # row_dst += c * row_src, then col_dst += c * col_src
        for M_ in (W, P):
            M_[dst] = [f.add(x, f.mul(c, y)) for x, y in zip(M_[dst], M_[src])]
        for row in W:
            row[dst] = f.add(row[dst], f.mul(c, row[src]))

    def swap(i, j):
        for M_ in (W, P):
            M_[i], M_[j] = M_[j], M_[i]
        for row in W:
            row[i], row[j] = row[j], row[i]

    for k in range(n):
        pivot = next((i for i in range(k, n) if W[i][i]), None)
        if pivot is None:
            off = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if W[i][j]), None)
            if off is None:
                break
            i, j = off
            add_multiple(i, j, 1)
            pivot = i
        if pivot != k:
            swap(pivot, k)
        inv = f.inv(W[k][k])
        for j in range(k + 1, n):
            if W[j][k]:
                add_multiple(j, k, f.neg(f.mul(W[j][k], inv)))

    D = MatrixGF.from_rows(f, W)
    M = inverse(MatrixGF.from_rows(f, P))
    return D, M


def quadratic_character(A: MatrixGF) -> Character:
    """+ iff the product of the nonzero diagonal entries of a diagonal form is a square."""
    D, _ = congruence_diagonalize(A)
    f = A.field
    prod = 1
    for i in range(D.n):
        d = D[i, i]
        if d:
            prod = f.mul(prod, d)
    return Character.PLUS if f.is_square(prod) else Character.MINUS


# -- Bruhat decomposition with respect to the lower-triangular Borel -------------


def bruhat_factor(A: MatrixGF) -> tuple[MatrixGF, MatrixGF, Permutation]:
    """Factor invertible A = b g with b lower triangular and g a cell normal form.

    g has a 1 at (w(i), i), zeros right of it in row w(i) and below it in
    column i.  Only lower-triangular row operations are used: each row is
    reduced against the rows above it until its rightmost nonzero column is
    new, then pivot columns are cleared downward.
    """
    f, n = A.field, A.n
    if A.m != n:
        raise Singular("non-square matrix")
    G = A.rows()
    pivot_of_col: dict[int, int] = {}
    pivots: list[tuple[int, int]] = []
    for k in range(n):
        row = G[k]
        while True:
            c = max((j for j in range(n) if row[j]), default=None)
            if c is None:
                raise Singular("matrix is not invertible")
            if c not in pivot_of_col:
                break
            src = G[pivot_of_col[c]]
            factor = f.neg(f.mul(row[c], f.inv(src[c])))
            row = [f.add(x, f.mul(factor, y)) for x, y in zip(row, src)]
        inv = f.inv(row[c])
        G[k] = [f.mul(inv, x) for x in row]
        pivot_of_col[c] = k
        pivots.append((k, c))
    for k, c in pivots:
        for below in range(k + 1, n):
            x = G[below][c]
            if x:
                nx = f.neg(x)
                G[below] = [f.add(a, f.mul(nx, b)) for a, b in zip(G[below], G[k])]
    w = Permutation(tuple(pivot_of_col[c] + 1 for c in range(n)))
    g = MatrixGF.from_rows(f, G)
    b = A @ inverse(g)
    return b, g, w


def bruhat_permutation(A: MatrixGF) -> Permutation:
    """Cell index w of A in B w B, B lower triangular, read off a rank profile.

    Left multiplication by B preserves the row span of every top block of
    rows, so r(i, j) = rank A[rows 1..i, cols j..n] is an invariant and for
    the normal form it equals #{c >= j : w(c) <= i}.
    """
    n = A.n
    if A.m != n or rank(A) != n:
        raise Singular("matrix is not invertible")

    def r(i, j):
        if i == 0 or j > n:
            return 0
        return submatrix_rank(A, range(i), range(j - 1, n))

    images = []
    for c in range(1, n + 1):
        for i in range(1, n + 1):
            if r(i, c) - r(i - 1, c) - r(i, c + 1) + r(i - 1, c + 1) == 1:
                images.append(i)
                break
    return Permutation(tuple(images))


def is_cell_normal_form(g: MatrixGF, w: Permutation) -> bool:
    n = g.n
    for i in range(1, n + 1):
        wi = w(i)
        if g[wi - 1, i - 1] != 1:
            return False
        if any(g[wi - 1, j - 1] for j in range(i + 1, n + 1)):
            return False
        if any(g[k - 1, i - 1] for k in range(wi + 1, n + 1)):
            return False
    return True


def is_lower_triangular(b: MatrixGF) -> bool:
    return all(b[i, j] == 0 for i in range(b.n) for j in range(i + 1, b.n))
