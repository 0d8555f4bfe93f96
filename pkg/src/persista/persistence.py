"""
Persistence engine: boundary-matrix reduction, the birth/death pairing,
barcodes of the four standard persistence modules (absolute and relative,
homology and cohomology), the concatenated absolute/relative sequence, a
rank-invariant oracle, and spectra.
"""

import math
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .algebra import (
    SparseColumn, SparseMatrix, add_scaled_column,
    anti_transpose, as_field, field_inverse, nullspace_mod_p,
    rank_mod_p,
)
from .core import Filtration

INF = math.inf
DEFAULT_ORACLE_CAP = 64


class DualityViolation(AssertionError):
    pass


class OracleCapExceeded(ValueError):
    pass


def boundary_matrix(f: Filtration, F) -> SparseMatrix:
    """Square matrix with entry (i, j) = coefficient of cell i in the boundary of cell j, mod p."""
    p = as_field(F).p
    n = len(f)
    cols = [SparseColumn.from_dict(cell.boundary.terms, p) for cell in f]
    return SparseMatrix(n, n, cols)


# -- reduction ---------------------------------------------------------------

@dataclass(frozen=True)
class ReductionResult:
    reduced: SparseMatrix
    basis_change: SparseMatrix
    pairs: Tuple[Tuple[int, int], ...]
    essential: Tuple[int, ...]
    p: int

    @property
    def births(self):
        return tuple(b for b, _ in self.pairs)

    @property
    def deaths(self):
        return tuple(d for _, d in self.pairs)

    def partition(self):
        return set(self.essential), set(self.births), set(self.deaths)

    def check(self, D: SparseMatrix):
        """Raise AssertionError unless every structural invariant holds."""
        n = D.n_cols
        R, V = self.reduced, self.basis_change
        lows = {}
        for j, col in enumerate(R.columns):
            if col:
                assert col.low() not in lows, "low %d repeated" % col.low()
                lows[col.low()] = j
        for b, d in self.pairs:
            assert R.columns[d].low() == b and lows[b] == d
        ess, bs, ds = self.partition()
        assert not (ess & bs) and not (ess & ds) and not (bs & ds)
        assert ess | bs | ds == set(range(n))
        for e in ess:
            assert not R.columns[e]
        for j, col in enumerate(V.columns):
            assert col.low() == j, "basis change not upper triangular with nonzero diagonal"
        assert D.matmul(V, self.p) == R, "R != D V"
        return True


def reduce_matrix(D: SparseMatrix, F) -> ReductionResult:
    """
    Standard column reduction: for each column left to right, cancel its low
    against the earlier column owning that low until the low is new or the
    column is zero.
    """
    p = as_field(F).p
    n = D.n_cols
    R = list(D.columns)
    V = [SparseColumn(((j, 1),)) for j in range(n)]
    owner: Dict[int, int] = {}
    pairs = []
    for j in range(n):
        col, vcol = R[j], V[j]
        while col:
            low = col.low()
            k = owner.get(low)
            if k is None:
                break
            lam = (-col.low_value() * field_inverse(R[k].low_value(), p)) % p
            col = add_scaled_column(col, R[k], lam, p)
            vcol = add_scaled_column(vcol, V[k], lam, p)
        R[j], V[j] = col, vcol
        if col:
            owner[col.low()] = j
            pairs.append((col.low(), j))
    births = set(owner)
    essential = tuple(j for j in range(n) if not R[j] and j not in births)
    return ReductionResult(SparseMatrix(D.n_rows, n, R), SparseMatrix(n, n, V),
                           tuple(sorted(pairs)), essential, p)


def reduce(f: Filtration, F) -> ReductionResult:
    return reduce_matrix(boundary_matrix(f, F), F)


# -- barcodes ----------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    dim: int
    birth: float
    death: float
    kind: str  # "finite", "essential", or "ephemeral" (retained zero-length, index-valued)
    provenance: Tuple[int, Optional[int]] = (-1, None)

    def __post_init__(self):
        if not self.birth < self.death:
            raise ValueError("interval needs birth < death: %r" % (self,))
        infinite = math.isinf(self.birth) + math.isinf(self.death)
        if infinite > 1:
            raise ValueError("at most one endpoint may be infinite")
        if (self.kind == "essential") != (infinite == 1):
            raise ValueError("kind %r inconsistent with endpoints (%r, %r)" % (self.kind, self.birth, self.death))

    def sort_key(self):
        b, d = self.provenance
        return (self.dim, self.birth, self.death, b, d is None, d if d is not None else 0)

    @property
    def is_finite(self):
        return self.kind != "essential"

    def __str__(self):
        left = "[%s" % _fmt(self.birth)
        return "%s, %s)_%d" % (left, _fmt(self.death), self.dim)


def _fmt(x):
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return "%.17g" % x


class Barcode:
    """Multiset of intervals held in canonical order."""

    def __init__(self, intervals=()):
        self.intervals = tuple(sorted(intervals, key=Interval.sort_key))

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    def __eq__(self, other):
        return isinstance(other, Barcode) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return "Barcode{%s}" % ", ".join(str(i) for i in self.intervals)

    def values(self):
        """Canonical (dim, birth, death) triples, ignoring provenance."""
        return sorted((i.dim, i.birth, i.death) for i in self.intervals)

    def in_dim(self, k):
        return Barcode(i for i in self.intervals if i.dim == k)

    def finite(self):
        return Barcode(i for i in self.intervals if i.kind == "finite")

    def essential(self):
        return Barcode(i for i in self.intervals if i.kind == "essential")


def _intervals_from_pairs(f, pairs, essential, keep_zero_length=False):
    a = f.births
    out = []
    for b, d in pairs:
        k = f[b].dim
        if a[b] < a[d]:
            out.append(Interval(k, a[b], a[d], "finite", (b, d)))
        elif keep_zero_length:
            out.append(Interval(k, float(b), float(d), "ephemeral", (b, d)))
    for e in essential:
        out.append(Interval(f[e].dim, a[e], INF, "essential", (e, None)))
    return Barcode(out)


def barcode_absolute_homology(r: ReductionResult, f: Filtration, keep_zero_length=False) -> Barcode:
    """[a_b, a_d) per pair and [a_b, inf) per essential index, tagged by the birth cell's dimension."""
    return _intervals_from_pairs(f, r.pairs, r.essential, keep_zero_length)


def cohomology_reduction(f: Filtration, F) -> ReductionResult:
    """Reduction of the anti-transposed boundary matrix (coboundary in reversed order)."""
    return reduce_matrix(anti_transpose(boundary_matrix(f, F)), F)


def pairs_from_coboundary(r: ReductionResult, n_cells):
    """Map pairs and essentials of the reversed coboundary reduction back to original indices."""
    n = n_cells - 1
    pairs = tuple(sorted((n - j, n - i) for i, j in r.pairs))
    essential = tuple(sorted(n - e for e in r.essential))
    return pairs, essential


def barcode_absolute_cohomology(f: Filtration, F, keep_zero_length=False, check=True) -> Barcode:
    F = as_field(F)
    pairs, essential = pairs_from_coboundary(cohomology_reduction(f, F), len(f))
    out = _intervals_from_pairs(f, pairs, essential, keep_zero_length)
    if check:
        hom = barcode_absolute_homology(reduce(f, F), f, keep_zero_length)
        if hom != out:
            raise DualityViolation("cohomology barcode %r differs from homology barcode %r" % (out, hom))
    return out


def relative_from_absolute(b: Barcode) -> Barcode:
    """
    Finite [a, b)_k becomes [a, b)_{k+1}; essential [a, inf)_k becomes
    [-inf, a)_k.  Retained zero-length intervals shift like finite ones.
    """
    out = []
    for iv in b:
        if iv.kind == "essential":
            out.append(Interval(iv.dim, -INF, iv.birth, "essential", iv.provenance))
        else:
            out.append(Interval(iv.dim + 1, iv.birth, iv.death, iv.kind, iv.provenance))
    return Barcode(out)


def barcode_relative(f: Filtration, F, flavor="homology", keep_zero_length=False) -> Barcode:
    F = as_field(F)
    if flavor == "homology":
        absolute = barcode_absolute_homology(reduce(f, F), f, keep_zero_length)
    elif flavor == "cohomology":
        absolute = barcode_absolute_cohomology(f, F, keep_zero_length, check=False)
    else:
        raise ValueError("flavor must be 'homology' or 'cohomology', got %r" % (flavor,))
    return relative_from_absolute(absolute)


MODULES = ("abs-hom", "abs-coh", "rel-hom", "rel-coh")


@dataclass
class FourBarcodes:
    abs_hom: Barcode
    abs_coh: Barcode
    rel_hom: Barcode
    rel_coh: Barcode

    def get(self, name):
        return getattr(self, name.replace("-", "_"))


def duality_problems(four: FourBarcodes) -> List[str]:
    """Violated duality statements; empty when all hold."""
    problems = []
    if four.abs_hom != four.abs_coh:
        problems.append("absolute homology != absolute cohomology")
    if four.rel_hom != four.rel_coh:
        problems.append("relative homology != relative cohomology")
    fin_abs = sorted((i.dim + 1, i.birth, i.death) for i in four.abs_hom if i.kind == "finite")
    fin_rel = sorted((i.dim, i.birth, i.death) for i in four.rel_hom if i.kind == "finite")
    if fin_abs != fin_rel:
        problems.append("finite absolute H_k != finite relative H_(k+1)")
    ess_abs = sorted((i.dim, i.birth) for i in four.abs_hom if i.kind == "essential")
    ess_rel = sorted((i.dim, i.death) for i in four.rel_hom if i.kind == "essential")
    if ess_abs != ess_rel or any(i.birth != -INF for i in four.rel_hom if i.kind == "essential"):
        problems.append("essential [a, inf)_k does not match [-inf, a)_k")
    return problems


def compute_four(f: Filtration, F, keep_zero_length=False) -> FourBarcodes:
    """All four standard barcodes, each side derived independently; no checks."""
    F = as_field(F)
    abs_hom = barcode_absolute_homology(reduce(f, F), f, keep_zero_length)
    abs_coh = barcode_absolute_cohomology(f, F, keep_zero_length, check=False)
    return FourBarcodes(abs_hom, abs_coh, relative_from_absolute(abs_hom), relative_from_absolute(abs_coh))


def four_barcodes(f: Filtration, F, keep_zero_length=False) -> FourBarcodes:
    """All four standard barcodes; raises DualityViolation if any duality fails."""
    four = compute_four(f, F, keep_zero_length)
    problems = duality_problems(four)
    if problems:
        raise DualityViolation("; ".join(problems))
    return four


# -- concatenated sequence ---------------------------------------------------

@dataclass(frozen=True, order=True)
class Endpoint:
    """A value on the doubled index set; barred values come after all plain ones."""
    barred: bool
    value: float

    def __str__(self):
        v = _fmt(self.value)
        return v + "̅" if self.barred else v


@dataclass(frozen=True)
class ConcatInterval:
    start: Endpoint
    end: Endpoint
    family: int

    def __str__(self):
        return "[%s, %s)" % (self.start, self.end)


def concatenated_barcode(f: Filtration, F, k) -> List[ConcatInterval]:
    """
    Intervals of H_k(X) -> H_k(X^inf, X) over the indices 0..n followed by
    their barred copies: finite H_k intervals unchanged, finite H_(k-1)
    intervals barred, and each essential [a, inf)_k closing at a-bar.
    """
    absolute = barcode_absolute_homology(reduce(f, F), f)
    out = []
    for iv in absolute:
        if iv.dim == k and iv.kind == "finite":
            out.append(ConcatInterval(Endpoint(False, iv.birth), Endpoint(False, iv.death), 1))
        elif iv.dim == k - 1 and iv.kind == "finite":
            out.append(ConcatInterval(Endpoint(True, iv.birth), Endpoint(True, iv.death), 2))
        elif iv.dim == k and iv.kind == "essential":
            out.append(ConcatInterval(Endpoint(False, iv.birth), Endpoint(True, iv.birth), 3))
    return sorted(out, key=lambda c: (c.start, c.end, c.family))


# -- rank-invariant oracle ---------------------------------------------------

def oracle_cap():
    env = os.environ.get("PERSISTA_ORACLE_CAP")
    return int(env) if env else DEFAULT_ORACLE_CAP


def rank_invariant_oracle(f: Filtration, F, variant="absolute", cap=None) -> Barcode:
    """
    Barcode recovered from the ranks r(i, j) of H_k(X^i) -> H_k(X^j)
    (absolute) or H_k(X^n, X^i) -> H_k(X^n, X^j) (relative), computed by
    dense elimination on truncated or quotient chain groups.  Index -1 is
    the empty complex; multiplicities follow by inclusion-exclusion.
    """
    cap = oracle_cap() if cap is None else cap
    n_cells = len(f)
    if n_cells > cap:
        raise OracleCapExceeded("%d cells exceeds oracle cap %d" % (n_cells, cap))
    if variant not in ("absolute", "relative"):
        raise ValueError("variant must be 'absolute' or 'relative'")
    p = as_field(F).p
    n = n_cells - 1
    a = f.births
    top = f.max_dim()
    out = []
    for k in range(top + 1):
        r = _rank_table(f, k, p, variant)
        for s in range(-1, n + 1):
            for e in range(s, n + 1):
                mu = (_get(r, s, e, n) - _get(r, s, e + 1, n)
                      - _get(r, s - 1, e, n) + _get(r, s - 1, e + 1, n))
                if mu < 0:
                    raise ArithmeticError("negative multiplicity at (%d, %d)" % (s, e))
                if not mu:
                    continue
                birth = -INF if s == -1 else a[s]
                death = INF if e + 1 > n else a[e + 1]
                if birth == death:
                    continue
                if variant == "absolute":
                    prov = (s, e + 1 if e + 1 <= n else None)
                else:
                    prov = (e + 1, None) if s == -1 else (s, e + 1)
                kind = "essential" if math.isinf(birth) or math.isinf(death) else "finite"
                out.extend([Interval(k, birth, death, kind, prov)] * mu)
    return Barcode(out)


def _get(r, i, j, n):
    if i < -1 or j > n or i > j:
        return 0
    return r[(i, j)]


def _rank_table(f, k, p, variant):
    n = len(f) - 1
    k_ids = [c.id for c in f if c.dim == k]
    pos = {cid: i for i, cid in enumerate(k_ids)}
    m = len(k_ids)
    faces = [c.id for c in f if c.dim == k - 1]
    face_pos = {cid: i for i, cid in enumerate(faces)}
    cofaces = [c.id for c in f if c.dim == k + 1]

    # boundary of each k-cell as a vector over (k-1)-cells
    down = [[0] * m for _ in faces]
    for j, cid in enumerate(k_ids):
        for fid, c in f[cid].boundary.items():
            down[face_pos[fid]][j] = (down[face_pos[fid]][j] + c) % p
    # boundary of each (k+1)-cell as a vector over k-cells
    up = []
    for cid in cofaces:
        v = [0] * m
        for fid, c in f[cid].boundary.items():
            v[pos[fid]] = (v[pos[fid]] + c) % p
        up.append(v)

    def prefix_counts(ids):
        # out[t + 1] = number of ids <= t, for t = -1 .. n
        out = [0] * (n + 2)
        for x in ids:
            out[x + 1] += 1
        for t in range(1, n + 2):
            out[t] += out[t - 1]
        return out

    def dim_span(vectors):
        return rank_mod_p(vectors, p) if vectors else 0

    def unit(i):
        v = [0] * m
        v[i] = 1
        return v

    cycles = {}
    spans = {}

    def absolute(nk, nup):
        # cycles among the first nk k-cells vs boundaries of the first nup (k+1)-cells
        if nk not in cycles:
            sub = [row[:nk] for row in down]
            Z = nullspace_mod_p(sub, nk, p) if nk else []
            cycles[nk] = [z + [0] * (m - nk) for z in Z]
        B = up[:nup]
        if nup not in spans:
            spans[nup] = dim_span(B)
        return dim_span(cycles[nk] + B) - spans[nup]

    def relative(nface, nk_j):
        # cycles relative to the first nface (k-1)-cells vs all boundaries + first nk_j k-cells
        if nface not in cycles:
            rows = down[nface:]
            cycles[nface] = nullspace_mod_p(rows, m, p) if rows else [unit(i) for i in range(m)]
        W = up + [unit(i) for i in range(nk_j)]
        if nk_j not in spans:
            spans[nk_j] = dim_span(W)
        return dim_span(cycles[nface] + W) - spans[nk_j]

    if variant == "absolute":
        ci, cj, fn = prefix_counts(k_ids), prefix_counts(cofaces), absolute
    else:
        ci, cj, fn = prefix_counts(faces), prefix_counts(k_ids), relative
    memo = {}
    table = {}
    for i in range(-1, n + 1):
        for j in range(i, n + 1):
            key = (ci[i + 1], cj[j + 1])
            if key not in memo:
                memo[key] = fn(*key)
            table[(i, j)] = memo[key]
    return table


# -- spectrum ----------------------------------------------------------------

def spectrum(b: Barcode) -> List[float]:
    """Finite endpoints of all intervals together with inf, ascending."""
    pts = set()
    for iv in b:
        for x in (iv.birth, iv.death):
            if not math.isinf(x):
                pts.add(x)
    return sorted(pts) + [INF]
