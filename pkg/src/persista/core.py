"""
Simplices, complexes, chains and cell-at-a-time filtrations.

Simplices are stored with ascending vertex ids; that order is the orientation
used by the boundary operator.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Tuple


class ValidationError(ValueError):
    pass


class MonotonicityError(ValidationError):
    pass


@dataclass(frozen=True, order=True)
class Simplex:
    vertices: Tuple[int, ...]

    def __init__(self, vertices):
        vs = tuple(int(v) for v in vertices)
        if not vs:
            raise ValueError("the empty simplex is not representable")
        if any(v < 0 for v in vs):
            raise ValueError("vertex ids must be non-negative: %r" % (vs,))
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise ValueError("vertices must be strictly increasing: %r" % (vs,))
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def of(cls, *vertices):
        """Build from vertices in any order (duplicates rejected)."""
        vs = sorted(vertices)
        return cls(vs)

    def dimension(self):
        return len(self.vertices) - 1

    def faces(self, k=None):
        """Nonempty faces of dimension k (all proper faces if k is None)."""
        n = len(self.vertices)
        sizes = range(1, n) if k is None else [k + 1]
        for size in sizes:
            if 1 <= size < n:
                for vs in combinations(self.vertices, size):
                    yield Simplex(vs)

    def sort_key(self):
        return (len(self.vertices), self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __repr__(self):
        return "Simplex(%s)" % list(self.vertices)


def _as_simplex(s):
    return s if isinstance(s, Simplex) else Simplex.of(*s)


class Chain:
    """
    Formal linear combination of cells (or simplices) with integer or field
    coefficients.  Zero coefficients are never stored.  When `p` is given all
    arithmetic is modulo p.
    """

    __slots__ = ("_terms", "p")

    def __init__(self, terms=None, p=None):
        self.p = p
        out = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, c in items:
                c = out.get(key, 0) + int(c)
                if p is not None:
                    c %= p
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        self._terms = out

    @property
    def terms(self) -> Dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def __getitem__(self, key):
        return self._terms.get(key, 0)

    def __contains__(self, key):
        return key in self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def _check(self, other):
        if self.p != other.p:
            raise ValueError("chains over different coefficient rings")

    def __add__(self, other):
        self._check(other)
        terms = dict(self._terms)
        for key, c in other._terms.items():
            terms[key] = terms.get(key, 0) + c
        return Chain(terms, self.p)

    def __neg__(self):
        return Chain({k: -c for k, c in self._terms.items()}, self.p)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Chain({k: c * v for k, v in self._terms.items()}, self.p)

    def __rmul__(self, c):
        return self.scale(c)

    def mod(self, p):
        """Reduce integer coefficients into the field with p elements."""
        return Chain(self._terms, p)

    def __eq__(self, other):
        if not isinstance(other, Chain):
            return NotImplemented
        return self.p == other.p and self._terms == other._terms

    def __hash__(self):
        return hash((self.p, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "Chain(0)"
        parts = ["%+d*%r" % (c, k) for k, c in sorted(self._terms.items(), key=lambda kv: _key_order(kv[0]))]
        return "Chain(%s)" % " ".join(parts)


def _key_order(key):
    if isinstance(key, Simplex):
        return (1, key.sort_key())
    return (0, key)


def simplicial_boundary(s: Simplex) -> Chain:
    """Alternating sum of the codimension-one faces of s."""
    vs = s.vertices
    if len(vs) == 1:
        return Chain()
    return Chain({Simplex(vs[:i] + vs[i + 1:]): (-1) ** i for i in range(len(vs))})


def chain_boundary(c: Chain) -> Chain:
    """Linear extension of simplicial_boundary to a chain of simplices."""
    terms = {}
    for s, coeff in c.items():
        for f, sign in simplicial_boundary(s).items():
            terms[f] = terms.get(f, 0) + sign * coeff
    return Chain(terms, c.p)


class SimplicialComplex:
    """Finite set of simplices.  Face closure is checked by `validate_complex`."""

    def __init__(self, simplices=()):
        self.simplices = frozenset(_as_simplex(s) for s in simplices)

    @classmethod
    def closure(cls, simplices):
        """Smallest complex containing the given simplices."""
        out = set()
        for s in simplices:
            s = _as_simplex(s)
            out.add(s)
            out.update(s.faces())
        return cls(out)

    def __iter__(self):
        return iter(self.sorted())

    def __len__(self):
        return len(self.simplices)

    def __contains__(self, s):
        return _as_simplex(s) in self.simplices

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __or__(self, other):
        return SimplicialComplex(self.simplices | other.simplices)

    def __and__(self, other):
        return SimplicialComplex(self.simplices & other.simplices)

    def issubcomplex(self, other):
        return self.simplices <= other.simplices

    def sorted(self):
        return sorted(self.simplices, key=Simplex.sort_key)

    def dimension(self):
        """Largest simplex dimension; -1 for the empty complex."""
        return max((s.dimension() for s in self.simplices), default=-1)

    def vertices(self):
        return sorted({v for s in self.simplices for v in s.vertices})

    def skeleton_cells(self, d):
        """Sorted d-simplices."""
        return sorted((s for s in self.simplices if s.dimension() == d), key=Simplex.sort_key)

    def counts(self):
        out = [0] * (self.dimension() + 1)
        for s in self.simplices:
            out[s.dimension()] += 1
        return out

    def __repr__(self):
        return "SimplicialComplex(%d simplices, dim %d)" % (len(self), self.dimension())


@dataclass(frozen=True)
class Violation:
    missing: Simplex
    parent: Simplex

    def __str__(self):
        return "missing face %s of %s" % (list(self.missing.vertices), list(self.parent.vertices))


def validate_complex(c: SimplicialComplex):
    """Face-closure violations of c, sorted; an empty list means c is a complex."""
    out = set()
    for s in c.simplices:
        for f in s.faces():
            if f not in c.simplices:
                out.add(Violation(f, s))
    return sorted(out, key=lambda v: (v.missing.sort_key(), v.parent.sort_key()))


@dataclass(frozen=True)
class GeometricComplex:
    complex: SimplicialComplex
    coords: Mapping[int, Tuple[float, ...]]

    def __post_init__(self):
        dims = {len(x) for x in self.coords.values()}
        if len(dims) > 1 or 0 in dims:
            raise ValidationError("coordinates must share one positive dimension")
        missing = [v for v in self.complex.vertices() if v not in self.coords]
        if missing:
            raise ValidationError("vertices without coordinates: %s" % missing)


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    birth: float
    boundary: Chain = field(default_factory=Chain)
    # simplex this cell came from, if any; not part of the cell's identity
    label: Optional[Simplex] = field(default=None, compare=False)


class Filtration:
    """
    Cells added one per step with non-decreasing births.  Each boundary is an
    integer chain over earlier cell ids.  Invariants are checked on
    construction (`check=False` skips this for trusted producers).
    """

    def __init__(self, cells: Iterable[Cell] = (), check=True):
        self.cells = tuple(cells)
        if check:
            self.validate()

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __getitem__(self, i):
        return self.cells[i]

    def __eq__(self, other):
        return isinstance(other, Filtration) and self.cells == other.cells

    def __repr__(self):
        return "Filtration(%d cells)" % len(self.cells)

    @property
    def births(self):
        return [c.birth for c in self.cells]

    @property
    def dims(self):
        return [c.dim for c in self.cells]

    def max_dim(self):
        return max((c.dim for c in self.cells), default=-1)

    def validate(self):
        prev = None
        for i, cell in enumerate(self.cells):
            if cell.id != i:
                raise ValidationError("cell at position %d has id %d" % (i, cell.id))
            if cell.dim < 0:
                raise ValidationError("negative dimension at cell %d" % i)
            if cell.birth != cell.birth or cell.birth in (float("inf"), float("-inf")):
                raise ValidationError("non-finite birth at cell %d" % i)
            if prev is not None and cell.birth < prev:
                raise ValidationError("non-monotone birth at cell %d" % i)
            prev = cell.birth
            if cell.dim == 0 and cell.boundary:
                raise ValidationError("0-cell %d has nonempty boundary" % i)
            for j in cell.boundary:
                if not isinstance(j, int) or j < 0 or j >= i:
                    raise ValidationError("forward reference to %r at cell %d" % (j, i))
                if self.cells[j].dim != cell.dim - 1:
                    raise ValidationError(
                        "face %d of cell %d has dimension %d, expected %d"
                        % (j, i, self.cells[j].dim, cell.dim - 1))
        for i, cell in enumerate(self.cells):
            acc = Chain()
            for j, c in cell.boundary.items():
                acc = acc + self.cells[j].boundary.scale(c)
            if acc:
                raise ValidationError("boundary squared nonzero at cell %d" % i)


def filtration_from_complex(c: SimplicialComplex, birth) -> Filtration:
    """
    Order the simplices of c by (birth, dimension, vertices) and attach their
    simplicial boundaries.  `birth` is a mapping or a callable on simplices.
    """
    bad = validate_complex(c)
    if bad:
        raise ValidationError("not a simplicial complex: %s" % bad[0])
    births = {}
    for s in c.simplices:
        if isinstance(birth, Mapping):
            b = birth[s] if s in birth else birth[s.vertices]
        else:
            b = birth(s)
        births[s] = float(b)
    for s in c.simplices:
        for f in s.faces(s.dimension() - 1) if s.dimension() > 0 else ():
            if f in births and births[f] > births[s]:
                raise MonotonicityError(
                    "face %s born at %r after coface %s born at %r"
                    % (list(f.vertices), births[f], list(s.vertices), births[s]))
    order = sorted(c.simplices, key=lambda s: (births[s], len(s.vertices), s.vertices))
    index = {s: i for i, s in enumerate(order)}
    cells = []
    for i, s in enumerate(order):
        bd = Chain({index[f]: coeff for f, coeff in simplicial_boundary(s).items()})
        cells.append(Cell(i, s.dimension(), births[s], bd, label=s))
    return Filtration(cells)
