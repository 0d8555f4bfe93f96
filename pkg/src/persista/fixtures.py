"""Built-in complexes and filtrations used by tests, the CLI and the verify suites."""

from .core import Cell, Chain, Filtration, SimplicialComplex, filtration_from_complex

# cellular 2-sphere: two points, two arcs between them, two hemispheres
S2_CWF = """\
# cellular filtration of the 2-sphere, one cell per step, birth = step
0 0 0
1 0 1
2 1 2 0:1 1:-1
3 1 3 0:1 1:-1
4 2 4 2:1 3:-1
5 2 5 2:1 3:-1
"""

# minimal 6-vertex triangulation of the real projective plane
RP2_TRIANGLES = [
    (0, 1, 3), (0, 1, 5), (0, 2, 4), (0, 2, 5), (0, 3, 4),
    (1, 2, 3), (1, 2, 4), (1, 4, 5), (2, 3, 5), (3, 4, 5),
]

UNIT_SQUARE = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]


def s2_filtration() -> Filtration:
    edge = Chain({0: 1, 1: -1})
    disk = Chain({2: 1, 3: -1})
    return Filtration([
        Cell(0, 0, 0.0), Cell(1, 0, 1.0),
        Cell(2, 1, 2.0, edge), Cell(3, 1, 3.0, edge),
        Cell(4, 2, 4.0, disk), Cell(5, 2, 5.0, disk),
    ])


def full_simplex(d) -> SimplicialComplex:
    return SimplicialComplex.closure([tuple(range(d + 1))])


def sphere(d) -> SimplicialComplex:
    """Boundary of the (d+1)-simplex."""
    return SimplicialComplex(s for s in full_simplex(d + 1).simplices if s.dimension() <= d)


def disjoint_points(p) -> SimplicialComplex:
    return SimplicialComplex((v,) for v in range(p))


def square_cycle() -> SimplicialComplex:
    return SimplicialComplex.closure([(0, 1), (1, 2), (2, 3), (0, 3)])


def rp2() -> SimplicialComplex:
    return SimplicialComplex.closure(RP2_TRIANGLES)


def rp2_filtration() -> Filtration:
    """RP^2 with vertices at 0, edges at 1, triangles at 2."""
    c = rp2()
    return filtration_from_complex(c, lambda s: float(s.dimension()))


def tetra_hemispheres():
    """Boundary of the tetrahedron split into two closed halves of two triangles each."""
    X = sphere(2)
    upper = SimplicialComplex.closure([(0, 1, 2), (0, 1, 3)])
    lower = SimplicialComplex.closure([(0, 2, 3), (1, 2, 3)])
    return X, upper, lower
