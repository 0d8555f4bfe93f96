"""
Homology of finite simplicial complexes: Betti numbers over prime fields,
integer homology with torsion, components, relative homology, and checkers
for the long exact sequence of a pair, excision, subdivision invariance and
universal coefficients over a field.

Per-dimension outputs cover d = 0 .. dim(X) + 1; higher groups vanish.
"""

import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Tuple

from .algebra import (
    EchelonBasis, as_field, nullspace_mod_p, rank_mod_p, smith_normal_form,
    solve_integer, solve_mod_p, transpose,
)
from .core import (
    Chain, GeometricComplex, Simplex, SimplicialComplex, ValidationError,
    simplicial_boundary, validate_complex,
)


class NotSubcomplexError(ValueError):
    pass


class CoverError(ValueError):
    pass


class DisconnectedError(ValueError):
    pass


class BettiVector(tuple):
    """Ranks of H_d for d = 0, 1, ...; indexing past the end gives 0."""

    def at(self, d):
        return self[d] if 0 <= d < len(self) else 0

    def euler(self):
        return sum((-1) ** d * b for d, b in enumerate(self))

    def trimmed(self):
        out = list(self)
        while out and out[-1] == 0:
            out.pop()
        return tuple(out)

    def __repr__(self):
        return "BettiVector%s" % (tuple(self),)


@dataclass(frozen=True)
class IntegerHomology:
    betti: Tuple[int, ...]
    torsion: Tuple[Tuple[int, ...], ...]

    def group(self, d):
        """Human-readable H_d, e.g. 'Z^2 + Z/2'."""
        b = self.betti[d] if d < len(self.betti) else 0
        tor = self.torsion[d] if d < len(self.torsion) else ()
        parts = []
        if b:
            parts.append("Z" if b == 1 else "Z^%d" % b)
        parts.extend("Z/%d" % t for t in tor)
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return "\n".join("H%d = %s" % (d, self.group(d)) for d in range(len(self.betti)))


def _check(c):
    bad = validate_complex(c)
    if bad:
        raise ValidationError("not a simplicial complex: %s" % bad[0])


class _ChainComplex:
    """
    Chain complex with basis the simplices of `cells` minus those of `sub`
    (the quotient C(cells)/C(sub)); `sub` empty gives the absolute complex.
    Boundary matrices are dense integer lists, rows = faces, cols = cofaces.
    """

    def __init__(self, cells, sub=None, top=None):
        skip = sub.simplices if sub is not None else frozenset()
        self.top = cells.dimension() + 1 if top is None else top
        self.basis = {}
        self.index = {}
        for d in range(self.top + 2):
            b = [s for s in cells.skeleton_cells(d) if s not in skip]
            self.basis[d] = b
            self.index[d] = {s: i for i, s in enumerate(b)}
        self._bd = {}

    def n(self, d):
        return len(self.basis.get(d, ()))

    def boundary(self, d):
        """Integer matrix of the boundary C_d -> C_{d-1}, shape n(d-1) x n(d)."""
        if d not in self._bd:
            rows = self.index.get(d - 1, {})
            M = [[0] * self.n(d) for _ in range(self.n(d - 1))]
            if d >= 1:
                for j, s in enumerate(self.basis[d]):
                    for f, c in simplicial_boundary(s).items():
                        i = rows.get(f)
                        if i is not None:
                            M[i][j] = c
            self._bd[d] = M
        return self._bd[d]

    def rank(self, d, p):
        M = self.boundary(d)
        if not M or not M[0]:
            return 0
        return rank_mod_p(M, p)

    def betti(self, p, dims):
        return BettiVector(self.n(d) - self.rank(d, p) - self.rank(d + 1, p) for d in range(dims))

    def vector(self, d, chain_terms):
        """Coordinates in this complex's d-basis; terms on dropped cells vanish."""
        v = [0] * self.n(d)
        idx = self.index.get(d, {})
        for s, c in chain_terms.items():
            i = idx.get(s)
            if i is not None:
                v[i] += c
        return v


def boundary_matrix(c: SimplicialComplex, d):
    """Integer matrix of the boundary from d-simplices to (d-1)-simplices (sorted bases)."""
    return _ChainComplex(c, top=max(d, c.dimension() + 1)).boundary(d)


def betti_numbers(c: SimplicialComplex, F=2) -> BettiVector:
    _check(c)
    F = as_field(F)
    return _ChainComplex(c).betti(F.p, c.dimension() + 2)


def integer_homology(c: SimplicialComplex) -> IntegerHomology:
    _check(c)
    cc = _ChainComplex(c)
    dims = c.dimension() + 2
    snfs = {}
    for d in range(dims + 1):
        M = cc.boundary(d)
        snfs[d] = smith_normal_form(M) if M and M[0] else None
    rank = {d: (snfs[d].rank if snfs[d] else 0) for d in snfs}
    betti = tuple(cc.n(d) - rank[d] - rank.get(d + 1, 0) for d in range(dims))
    torsion = tuple(tuple(snfs[d + 1].torsion()) if snfs.get(d + 1) else () for d in range(dims))
    return IntegerHomology(betti, torsion)


def cell_integer_homology(f) -> IntegerHomology:
    """Integer homology of the cell complex spanned by all cells of a filtration."""
    top = f.max_dim() + 1
    ids = {d: [c.id for c in f if c.dim == d] for d in range(top + 1)}
    pos = {d: {cid: i for i, cid in enumerate(ids[d])} for d in ids}
    snfs = {}
    for d in range(1, top + 1):
        M = [[0] * len(ids[d]) for _ in ids[d - 1]]
        for j, cid in enumerate(ids[d]):
            for fid, c in f[cid].boundary.items():
                M[pos[d - 1][fid]][j] += c
        snfs[d] = smith_normal_form(M) if M and M[0] else None
    rank = {d: (snfs[d].rank if snfs.get(d) else 0) for d in range(top + 2)}
    betti = tuple(len(ids[d]) - rank[d] - rank[d + 1] for d in range(top))
    torsion = tuple(tuple(snfs[d + 1].torsion()) if snfs.get(d + 1) else () for d in range(top))
    return IntegerHomology(betti, torsion)


def connected_components(c: SimplicialComplex) -> List[List[int]]:
    """Vertex classes under the edge relation, each sorted, ordered by least vertex."""
    parent = {v: v for v in c.vertices()}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for s in c.simplices:
        if s.dimension() == 1:
            a, b = find(s.vertices[0]), find(s.vertices[1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: Dict[int, List[int]] = {}
    for v in sorted(parent):
        groups.setdefault(find(v), []).append(v)
    return [groups[k] for k in sorted(groups)]


def component_complexes(c: SimplicialComplex):
    out = []
    for comp in connected_components(c):
        vs = set(comp)
        out.append(SimplicialComplex(s for s in c.simplices if s.vertices[0] in vs))
    return out


def _vertex_terms(chain):
    out = {}
    for key, coeff in chain.items():
        s = key if isinstance(key, Simplex) else Simplex((key,))
        if s.dimension() != 0:
            raise ValueError("expected a chain of vertices, got %r" % (key,))
        out[s] = out.get(s, 0) + coeff
    return out


def chain_index(c: Chain) -> int:
    """Sum of the coefficients of a 0-chain."""
    return sum(coeff for _, coeff in c.items())


def is_null_homologous(c: Chain, complex: SimplicialComplex) -> bool:
    """Whether the integer 0-chain c is a boundary of an integer 1-chain."""
    terms = _vertex_terms(c)
    cc = _ChainComplex(complex)
    for s in terms:
        if s not in cc.index[0]:
            raise ValueError("chain supported off the complex: %r" % (s,))
    b = cc.vector(0, terms)
    M = cc.boundary(1)
    if not M or not M[0]:
        return not any(b)
    return solve_integer(M, b) is not None


def null_homologous_by_index(c: Chain, complex: SimplicialComplex) -> bool:
    """
    Decide null-homology through the index criterion, which only holds on a
    connected complex.  The membership solve runs first either way.
    """
    raw = is_null_homologous(c, complex)
    if len(connected_components(complex)) != 1:
        raise DisconnectedError("index criterion needs a connected complex (membership test says %s)" % raw)
    by_index = chain_index(c) == 0
    assert by_index == raw, "index criterion disagrees with membership solve"
    return by_index


def _check_pair(X, A):
    _check(X)
    _check(A)
    if not A.issubcomplex(X):
        extra = sorted(A.simplices - X.simplices, key=Simplex.sort_key)
        raise NotSubcomplexError("simplex %s of A is not in X" % list(extra[0].vertices))


def relative_betti(X: SimplicialComplex, A: SimplicialComplex, F=2) -> BettiVector:
    """Ranks of H_d(X, A) from the quotient complex C(X)/C(A)."""
    _check_pair(X, A)
    F = as_field(F)
    return _ChainComplex(X, A).betti(F.p, X.dimension() + 2)


# -- long exact sequence of a pair ---------------------------------------------

class _HomologyBasis:
    """
    Representatives of ker / im in degree d: kernel vectors taken in echelon
    order, keeping those independent of the boundaries.
    """

    def __init__(self, cc, d, p):
        self.p = p
        self.n = cc.n(d)
        down = cc.boundary(d)
        Z = nullspace_mod_p(down, self.n, p) if self.n else []
        up = cc.boundary(d + 1)
        B = transpose(up, cc.n(d + 1)) if up else []
        span = EchelonBasis(p)
        self.boundaries = [b for b in B if span.add(b)]
        self.reps = [z for z in Z if span.add(z)]

    def __len__(self):
        return len(self.reps)

    def coords(self, z):
        """Coordinates of the class of cycle z in the representative basis."""
        if not self.reps:
            return []
        x = solve_mod_p(self.reps + self.boundaries, z, self.p)
        if x is None:
            raise ArithmeticError("vector is not a cycle in the expected degree")
        return x[:len(self.reps)]


@dataclass
class MapMatrix:
    name: str
    dim: int
    source: str
    target: str
    matrix: List[List[int]]  # rows = target basis, cols = source basis
    n_source: int
    n_target: int

    def rank(self, p):
        if not self.n_source or not self.n_target:
            return 0
        return rank_mod_p(self.matrix, p)


def _columns_to_matrix(cols, n_target):
    return [[col[i] for col in cols] for i in range(n_target)]


@dataclass
class NodeReport:
    group: str
    dim: int
    size: int
    rank_in: int
    rank_out: int
    composite_zero: bool

    @property
    def exact(self):
        return self.composite_zero and self.rank_in == self.size - self.rank_out


@dataclass
class LESReport:
    p: int
    nodes: List[NodeReport]
    maps: Dict[Tuple[str, int], MapMatrix] = field(default_factory=dict)

    @property
    def exact(self):
        return all(n.exact for n in self.nodes)

    def map_rank(self, name, d):
        return self.maps[(name, d)].rank(self.p)

    def lines(self):
        out = []
        for n in self.nodes:
            out.append("%s %-10s dim=%d in=%d out=%d %s" % (
                "PASS" if n.exact else "FAIL", n.group, n.size, n.rank_in, n.rank_out,
                "" if n.composite_zero else "(image not in kernel)"))
        return out


def _matmul_mod(A, B, p, m, k):
    # A is m x n, B is n x k
    n = len(B)
    return [[sum(A[i][t] * B[t][j] for t in range(n)) % p for j in range(k)] for i in range(m)]


def les_maps(X, A, F=2, lift_seed=None):
    """
    Matrices of i_*, j_* and the connecting map on chosen homology bases for
    every degree.  The connecting map lifts a relative cycle to X (by zero on
    A, plus a random chain of A when lift_seed is given), takes its boundary,
    and reads it in A.
    """
    _check_pair(X, A)
    p = as_field(F).p
    top = X.dimension() + 1
    cA = _ChainComplex(A, top=top)
    cX = _ChainComplex(X, top=top)
    cR = _ChainComplex(X, A, top=top)
    hA = {d: _HomologyBasis(cA, d, p) for d in range(top + 1)}
    hX = {d: _HomologyBasis(cX, d, p) for d in range(top + 1)}
    hR = {d: _HomologyBasis(cR, d, p) for d in range(top + 1)}
    rng = random.Random(lift_seed) if lift_seed is not None else None

    def terms(cc, d, vec):
        return {cc.basis[d][i]: v for i, v in enumerate(vec) if v}

    maps = {}
    for d in range(top + 1):
        cols = [hX[d].coords(cX.vector(d, terms(cA, d, h))) for h in hA[d].reps]
        maps[("i", d)] = MapMatrix("i", d, "H%d(A)" % d, "H%d(X)" % d,
                                   _columns_to_matrix(cols, len(hX[d])), len(hA[d]), len(hX[d]))
        cols = [hR[d].coords(cR.vector(d, terms(cX, d, h))) for h in hX[d].reps]
        maps[("j", d)] = MapMatrix("j", d, "H%d(X)" % d, "H%d(X,A)" % d,
                                   _columns_to_matrix(cols, len(hR[d])), len(hX[d]), len(hR[d]))
        if d >= 1:
            cols = []
            for c in hR[d].reps:
                lift = dict(terms(cR, d, c))
                if rng is not None:
                    for s in cA.basis[d]:
                        lift[s] = lift.get(s, 0) + rng.randrange(p)
                bd = {}
                for s, coeff in lift.items():
                    for f, sign in simplicial_boundary(s).items():
                        bd[f] = (bd.get(f, 0) + sign * coeff) % p
                off = [f for f, v in bd.items() if v and f not in cA.index[d - 1]]
                if off:
                    raise ArithmeticError("boundary of a relative cycle leaves A at %r" % (off[0],))
                cols.append(hA[d - 1].coords(cA.vector(d - 1, bd)))
            maps[("delta", d)] = MapMatrix("delta", d, "H%d(X,A)" % d, "H%d(A)" % (d - 1),
                                           _columns_to_matrix(cols, len(hA[d - 1])), len(hR[d]), len(hA[d - 1]))
    return maps, {"A": hA, "X": hX, "R": hR}


def les_exactness_check(X, A, F=2, lift_seed=None) -> LESReport:
    """
    Check im = ker at every group of
    ... -> H_d(A) -> H_d(X) -> H_d(X,A) -> H_{d-1}(A) -> ... -> H_0(X,A) -> 0.
    """
    p = as_field(F).p
    maps, bases = les_maps(X, A, F, lift_seed)
    top = X.dimension() + 1
    size = {"A": lambda d: len(bases["A"][d]), "X": lambda d: len(bases["X"][d]),
            "R": lambda d: len(bases["R"][d])}

    def incoming(kind, d):
        if kind == "A":
            return maps.get(("delta", d + 1))
        if kind == "X":
            return maps[("i", d)]
        return maps[("j", d)]

    def outgoing(kind, d):
        if kind == "A":
            return maps[("i", d)]
        if kind == "X":
            return maps[("j", d)]
        return maps.get(("delta", d))

    names = {"A": "H%d(A)", "X": "H%d(X)", "R": "H%d(X,A)"}
    nodes = []
    for d in range(top, -1, -1):
        for kind in ("A", "X", "R"):
            f, g = incoming(kind, d), outgoing(kind, d)
            r_in = f.rank(p) if f else 0
            r_out = g.rank(p) if g else 0
            zero = True
            if f and g and f.n_source and g.n_target and size[kind](d):
                comp = _matmul_mod(g.matrix, f.matrix, p, g.n_target, f.n_source)
                zero = not any(any(row) for row in comp)
            nodes.append(NodeReport(names[kind] % d, d, size[kind](d), r_in, r_out, zero))
    return LESReport(p, nodes, maps)


def connecting_map_lift_independent(X, A, F=2, seeds=(1, 2, 3)) -> bool:
    """Connecting-map matrices agree across random choices of lift."""
    base, _ = les_maps(X, A, F)
    for s in seeds:
        other, _ = les_maps(X, A, F, lift_seed=s)
        for key, m in base.items():
            if key[0] == "delta" and m.matrix != other[key].matrix:
                return False
    return True


# -- excision ------------------------------------------------------------------

@dataclass
class ExcisionReport:
    left: BettiVector   # H_d(B, A ∩ B)
    right: BettiVector  # H_d(X, A)

    @property
    def ok(self):
        n = max(len(self.left), len(self.right))
        return all(self.left.at(d) == self.right.at(d) for d in range(n))

    def lines(self):
        n = max(len(self.left), len(self.right))
        return ["%s d=%d H(B,A∩B)=%d H(X,A)=%d" % (
            "PASS" if self.left.at(d) == self.right.at(d) else "FAIL", d, self.left.at(d), self.right.at(d))
            for d in range(n)]


def excision_check(X, A, B, F=2) -> ExcisionReport:
    for K in (X, A, B):
        _check(K)
    if (A | B) != X:
        raise CoverError("A ∪ B differs from X")
    return ExcisionReport(relative_betti(B, A & B, F), relative_betti(X, A, F))


# -- barycentric subdivision ---------------------------------------------------

def barycentric_subdivide(c: SimplicialComplex, return_labels=False):
    """
    Flag complex of the face poset: vertex k is the k-th simplex of c in
    (dimension, vertices) order; simplices are chains s0 < s1 < ... < sk.
    """
    order = c.sorted()
    vid = {s: i for i, s in enumerate(order)}
    chains: Dict[Simplex, List[Tuple[int, ...]]] = {}
    for s in order:  # faces come first in this order
        mine = [(vid[s],)]
        for f in s.faces():
            mine.extend(ch + (vid[s],) for ch in chains[f])
        chains[s] = mine
    out = SimplicialComplex(Simplex(sorted(ch)) for s in order for ch in chains[s])
    if return_labels:
        return out, order
    return out


def diameter(points):
    best = 0.0
    for a, b in combinations(points, 2):
        best = max(best, math.dist(a, b))
    return best


def max_simplex_diameter(g: GeometricComplex):
    return max((diameter([g.coords[v] for v in s.vertices]) for s in g.complex.simplices), default=0.0)


@dataclass
class SubdivisionReport:
    complex: GeometricComplex
    diameter_before: float
    diameter_after: float
    dim: int

    @property
    def ratio_bound(self):
        return self.dim / (self.dim + 1) if self.dim >= 0 else 0.0

    @property
    def within_bound(self):
        return self.diameter_after <= self.ratio_bound * self.diameter_before + 1e-12


def barycentric_subdivide_geometric(g: GeometricComplex) -> SubdivisionReport:
    """Subdivide and place each new vertex at the barycenter of its simplex."""
    sd, labels = barycentric_subdivide(g.complex, return_labels=True)
    coords = {}
    for k, s in enumerate(labels):
        pts = [g.coords[v] for v in s.vertices]
        m = len(pts[0])
        coords[k] = tuple(sum(pt[i] for pt in pts) / len(pts) for i in range(m))
    out = GeometricComplex(sd, coords)
    return SubdivisionReport(out, max_simplex_diameter(g), max_simplex_diameter(out), g.complex.dimension())


def iterated_subdivision(g: GeometricComplex, rounds):
    diams = [max_simplex_diameter(g)]
    for _ in range(rounds):
        g = barycentric_subdivide_geometric(g).complex
        diams.append(max_simplex_diameter(g))
    return g, diams


# -- universal coefficients over a field -------------------------------------

@dataclass
class UCTReport:
    homology: BettiVector
    cohomology: BettiVector

    @property
    def ok(self):
        return tuple(self.homology) == tuple(self.cohomology)

    def lines(self):
        return ["%s d=%d dim H_d=%d dim H^d=%d" % ("PASS" if h == k else "FAIL", d, h, k)
                for d, (h, k) in enumerate(zip(self.homology, self.cohomology))]


def cohomology_dims(c: SimplicialComplex, F=2) -> BettiVector:
    """dim H^d from the coboundary matrices (transposed boundaries)."""
    _check(c)
    p = as_field(F).p
    cc = _ChainComplex(c)
    dims = c.dimension() + 2

    def cobound_rank(d):
        # coboundary C^d -> C^{d+1}: rows indexed by (d+1)-cells
        M = cc.boundary(d + 1)
        if not M or not M[0]:
            return 0
        return rank_mod_p(transpose(M), p)

    return BettiVector(cc.n(d) - cobound_rank(d) - (cobound_rank(d - 1) if d >= 1 else 0) for d in range(dims))


def uct_field_check(c: SimplicialComplex, F=2) -> UCTReport:
    return UCTReport(betti_numbers(c, F), cohomology_dims(c, F))


def betti_from_integer(h: IntegerHomology, p, dims=None):
    """Field Betti numbers predicted from integer homology by universal coefficients."""
    n = len(h.betti) if dims is None else dims
    out = []
    for d in range(n):
        b = h.betti[d] if d < len(h.betti) else 0
        t_here = h.torsion[d] if d < len(h.torsion) else ()
        t_below = h.torsion[d - 1] if 0 < d <= len(h.torsion) else ()
        out.append(b + sum(1 for t in t_here if t % p == 0) + sum(1 for t in t_below if t % p == 0))
    return BettiVector(out)
