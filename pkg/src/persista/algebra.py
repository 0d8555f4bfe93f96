"""
Exact linear algebra: prime fields, sparse columns with pivot access, Smith
normal form over the integers, the anti-transpose, and small dense helpers
mod p used by the homology verifiers and the rank-invariant oracle.
"""

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np


class DivisionByZero(ZeroDivisionError):
    pass


class ShapeError(ValueError):
    pass


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and 2 <= self.p < 2 ** 31 and is_prime(self.p)):
            raise ValueError("field modulus must be a prime below 2**31, got %r" % (self.p,))

    def __call__(self, a):
        return a % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return field_inverse(a, self)

    def div(self, a, b):
        return (a * field_inverse(b, self)) % self.p


def as_field(F):
    return F if isinstance(F, PrimeField) else PrimeField(int(F))


def field_inverse(a, F) -> int:
    p = F.p if isinstance(F, PrimeField) else int(F)
    a %= p
    if a == 0:
        raise DivisionByZero("0 has no inverse mod %d" % p)
    return pow(a, -1, p)


# -- sparse columns ---------------------------------------------------------

class SparseColumn:
    """Ascending (row, value) pairs with no zero values."""

    __slots__ = ("entries",)

    def __init__(self, entries=()):
        entries = tuple((int(r), int(v)) for r, v in entries)
        for (r0, _), (r1, _) in zip(entries, entries[1:]):
            if r0 >= r1:
                raise ValueError("rows must be strictly ascending")
        if any(v == 0 for _, v in entries):
            raise ValueError("zero entries are not stored")
        self.entries = entries

    @classmethod
    def from_dict(cls, d, p=None):
        items = []
        for r in sorted(d):
            v = d[r] % p if p else d[r]
            if v:
                items.append((r, v))
        return cls(items)

    def low(self) -> Optional[int]:
        return self.entries[-1][0] if self.entries else None

    def low_value(self):
        return self.entries[-1][1] if self.entries else None

    def rows(self):
        return [r for r, _ in self.entries]

    def get(self, row):
        for r, v in self.entries:
            if r == row:
                return v
        return 0

    def __bool__(self):
        return bool(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        return isinstance(other, SparseColumn) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "SparseColumn(%r)" % (list(self.entries),)


def add_scaled_column(target: SparseColumn, source: SparseColumn, lam, F) -> SparseColumn:
    """target + lam * source over F, merged in row order."""
    p = F.p if isinstance(F, PrimeField) else int(F)
    lam %= p
    a, b = target.entries, source.entries
    if lam == 0 or not b:
        return target
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        ra, rb = a[i][0], b[j][0]
        if ra < rb:
            out.append(a[i])
            i += 1
        elif rb < ra:
            out.append((rb, (lam * b[j][1]) % p))
            j += 1
        else:
            v = (a[i][1] + lam * b[j][1]) % p
            if v:
                out.append((ra, v))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend((r, (lam * v) % p) for r, v in b[j:])
    col = SparseColumn.__new__(SparseColumn)
    col.entries = tuple(out)
    return col


class SparseMatrix:
    """Column-major sparse matrix; column j is a SparseColumn."""

    def __init__(self, n_rows, n_cols, columns=None):
        self.n_rows = n_rows
        self.n_cols = n_cols
        cols = list(columns) if columns is not None else [SparseColumn() for _ in range(n_cols)]
        if len(cols) != n_cols:
            raise ShapeError("expected %d columns, got %d" % (n_cols, len(cols)))
        for col in cols:
            if col and col.low() >= n_rows:
                raise ShapeError("row index out of range")
        self.columns = cols

    @classmethod
    def from_dense(cls, rows, p=None):
        m = len(rows)
        n = len(rows[0]) if m else 0
        cols = []
        for j in range(n):
            cols.append(SparseColumn.from_dict({i: rows[i][j] for i in range(m) if rows[i][j]}, p))
        return cls(m, n, cols)

    @classmethod
    def from_entries(cls, n_rows, n_cols, entries, p=None):
        """Build from {(i, j): value}."""
        per = [dict() for _ in range(n_cols)]
        for (i, j), v in entries.items():
            per[j][i] = per[j].get(i, 0) + v
        return cls(n_rows, n_cols, [SparseColumn.from_dict(d, p) for d in per])

    def entries(self):
        return {(r, j): v for j, col in enumerate(self.columns) for r, v in col}

    def get(self, i, j):
        return self.columns[j].get(i)

    def to_dense(self):
        out = [[0] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for r, v in col:
                out[r][j] = v
        return out

    def nnz(self):
        return sum(len(c) for c in self.columns)

    def matmul(self, other, F):
        """self @ other over F."""
        if self.n_cols != other.n_rows:
            raise ShapeError("inner dimensions differ")
        cols = []
        for col in other.columns:
            acc = SparseColumn()
            for r, v in col:
                acc = add_scaled_column(acc, self.columns[r], v, F)
            cols.append(acc)
        return SparseMatrix(self.n_rows, other.n_cols, cols)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix) and self.n_rows == other.n_rows
                and self.n_cols == other.n_cols and self.columns == other.columns)

    def __repr__(self):
        return "SparseMatrix(%dx%d, nnz=%d)" % (self.n_rows, self.n_cols, self.nnz())


def anti_transpose(A: SparseMatrix) -> SparseMatrix:
    """Reflect across the anti-diagonal: out[i, j] = A[n-j, n-i]."""
    if A.n_rows != A.n_cols:
        raise ShapeError("anti-transpose needs a square matrix, got %dx%d" % (A.n_rows, A.n_cols))
    n = A.n_rows - 1
    per = [[] for _ in range(A.n_cols)]
    # A[r, j] lands at (n - j, n - r); walking j downward keeps rows ascending
    for j in range(n, -1, -1):
        for r, v in A.columns[j]:
            per[n - r].append((n - j, v))
    return SparseMatrix(A.n_rows, A.n_cols, [SparseColumn(c) for c in per])


# -- Smith normal form ------------------------------------------------------

@dataclass(frozen=True)
class SmithNormalForm:
    diag: Tuple[int, ...]
    shape: Tuple[int, int]
    U: Optional[Tuple[Tuple[int, ...], ...]] = None
    V: Optional[Tuple[Tuple[int, ...], ...]] = None

    @property
    def rank(self):
        return len(self.diag)

    def torsion(self):
        return [d for d in self.diag if d > 1]

    def diagonal_matrix(self):
        m, n = self.shape
        D = [[0] * n for _ in range(m)]
        for i, d in enumerate(self.diag):
            D[i][i] = d
        return D


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A, transforms=False) -> SmithNormalForm:
    """
    Diagonalise an integer matrix by unimodular row and column operations.
    Pivot each round is the smallest nonzero |entry| (ties by row, col).
    With transforms=True the result carries U, V with U A V = diag.
    Python integers are unbounded, so intermediates never overflow.
    """
    M = [list(map(int, row)) for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row dst += q * row src
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in M:
            row[dst] += q * row[src]
        if V is not None:
            for row in V:
                row[dst] += q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = M[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // piv))
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // piv))
                    if M[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if M[i][t] and (best is None or abs(M[i][t]) < best[0]):
                        best = (abs(M[i][t]), i, t)
                for j in range(t, n):
                    if M[t][j] and (best is None or abs(M[t][j]) < best[0]):
                        best = (abs(M[t][j]), t, j)
                _, i, j = best
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # row and column cleared; enforce divisibility of the rest
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]
        diag.append(M[t][t])
        t += 1

    if transforms:
        return SmithNormalForm(tuple(diag), (m, n), tuple(map(tuple, U)), tuple(map(tuple, V)))
    return SmithNormalForm(tuple(diag), (m, n))


def int_matmul(A, B):
    n = len(B)
    k = len(B[0]) if n else 0
    return [[sum(row[t] * B[t][j] for t in range(n)) for j in range(k)] for row in A]


def solve_integer(A, b) -> Optional[List[int]]:
    """An integer x with A x = b, or None if none exists."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return []
    snf = smith_normal_form(A, transforms=True)
    Ub = [sum(u * v for u, v in zip(row, b)) for row in snf.U]
    y = [0] * n
    for i, d in enumerate(snf.diag):
        if Ub[i] % d:
            return None
        y[i] = Ub[i] // d
    if any(Ub[i] for i in range(snf.rank, m)):
        return None
    return [sum(snf.V[r][c] * y[c] for c in range(n)) for r in range(n)]


# -- dense helpers mod p ----------------------------------------------------

def _as_array(rows, p, n_cols=None):
    A = np.array(rows, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(0, n_cols or 0) if A.size == 0 else A.reshape(1, -1)
    return A % p


def rref_mod_p(rows, p, n_cols=None):
    """
    Reduced row echelon form mod p; returns (array of nonzero rows, pivot
    columns).  Entries stay below p**2 < 2**62 so int64 is exact.
    """
    M = _as_array(rows, p, n_cols)
    m, n = M.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        f = M[:, c].copy()
        f[r] = 0
        hit = np.nonzero(f)[0]
        if hit.size:
            M[hit] = (M[hit] - np.outer(f[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _rank_small(rows, p):
    # forward elimination on python lists; cheaper than numpy for tiny inputs
    pivots = {}
    r = 0
    for row in rows:
        v = [x % p for x in row]
        for c, prow in pivots.items():
            if v[c]:
                f = v[c]
                v = [(a - f * b) % p for a, b in zip(v, prow)]
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            continue
        inv = pow(v[c], -1, p)
        pivots[c] = [(x * inv) % p for x in v]
        r += 1
    return r


def rank_mod_p(rows, p) -> int:
    if len(rows) == 0:
        return 0
    if len(rows) * len(rows[0]) <= 900:
        return _rank_small(rows, p)
    return len(rref_mod_p(rows, p)[1])


def nullspace_mod_p(rows, n_cols, p):
    """Basis (list of lists) of {x : A x = 0} for A given by rows."""
    if len(rows) == 0:
        return [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]
    R, pivots = rref_mod_p(rows, p, n_cols)
    pivset = set(pivots)
    basis = []
    for f in range(n_cols):
        if f in pivset:
            continue
        x = [0] * n_cols
        x[f] = 1
        for row, pc in zip(R, pivots):
            x[pc] = int(-row[f]) % p
        basis.append(x)
    return basis


def transpose(rows, n_cols=0):
    if len(rows) == 0:
        return [[] for _ in range(n_cols)]
    return [list(col) for col in zip(*rows)]


def solve_mod_p(A_cols, b, p) -> Optional[List[int]]:
    """Coefficients x with sum_k x_k * A_cols[k] = b mod p, or None."""
    k = len(A_cols)
    if k == 0:
        return [] if all(v % p == 0 for v in b) else None
    if len(b) == 0:
        return [0] * k
    aug = np.column_stack([np.array(A_cols, dtype=np.int64).T, np.array(b, dtype=np.int64)])
    R, pivots = rref_mod_p(aug, p)
    if k in pivots:
        return None
    x = [0] * k
    for row, pc in zip(R, pivots):
        x[pc] = int(row[k])
    return x


class EchelonBasis:
    """
    Incrementally maintained echelon basis of a subspace of F_p^n.  `add`
    reports whether the vector enlarged the span.
    """

    def __init__(self, p):
        self.p = p
        self.rows = {}  # pivot column -> normalised row

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        p = self.p
        v = [x % p for x in v]
        for c in sorted(self.rows):
            if v[c]:
                f = v[c]
                row = self.rows[c]
                v = [(a - f * b) % p for a, b in zip(v, row)]
        return v

    def add(self, v):
        v = self.reduce(v)
        c = next((i for i, x in enumerate(v) if x), None)
        if c is None:
            return False
        inv = pow(v[c], -1, self.p)
        v = [(x * inv) % self.p for x in v]
        for k, row in self.rows.items():
            if row[c]:
                f = row[c]
                self.rows[k] = [(a - f * b) % self.p for a, b in zip(row, v)]
        self.rows[c] = v
        return True

    def copy(self):
        out = EchelonBasis(self.p)
        out.rows = {k: list(v) for k, v in self.rows.items()}
        return out

    def contains(self, v):
        return not any(self.reduce(v))
