"""
Seeded random instances for the property suites.

Every generator takes a `random.Random`; the algorithms below are fixed so a
failing (seed, case) pair reproduces exactly.

* complex: pick 1..max_vertices vertices, then repeatedly draw a random
  simplex of 1..max_dim+1 of them and add its closure if the cell budget
  allows; `max_tries` draws in total.
* births: in (dimension, vertices) order, each simplex draws an integer in
  0..grid and takes the max with its faces' births, so small grids make ties
  and zero-length pairs common.
"""

import random

from .core import Simplex, SimplicialComplex, filtration_from_complex


def random_complex(rng: random.Random, max_vertices=8, max_dim=3, max_cells=40, max_tries=8):
    nv = rng.randint(1, max_vertices)
    cells = set()
    for _ in range(max_tries):
        size = rng.randint(1, min(max_dim + 1, nv))
        s = tuple(sorted(rng.sample(range(nv), size)))
        grown = cells | SimplicialComplex.closure([s]).simplices
        if len(grown) <= max_cells:
            cells = grown
    if not cells:
        cells = {Simplex((0,))}
    return SimplicialComplex(cells)


def random_births(rng: random.Random, c: SimplicialComplex, grid=4):
    births = {}
    for s in c.sorted():
        b = rng.randint(0, grid)
        for f in s.faces(s.dimension() - 1) if s.dimension() else ():
            b = max(b, births[f])
        births[s] = float(b)
    return births


def random_filtration(rng: random.Random, max_vertices=8, max_dim=3, max_cells=40, grid=4):
    c = random_complex(rng, max_vertices, max_dim, max_cells)
    return filtration_from_complex(c, random_births(rng, c, grid))


def random_subcomplex(rng: random.Random, X: SimplicialComplex):
    """Closure of a random subset of X's simplices (possibly empty or all of X)."""
    roll = rng.random()
    if roll < 0.1:
        return SimplicialComplex()
    if roll < 0.2:
        return X
    keep = [s for s in X.sorted() if rng.random() < 0.3]
    return SimplicialComplex.closure(keep)


def random_pair(rng: random.Random, max_vertices=6):
    X = random_complex(rng, max_vertices=max_vertices, max_dim=3, max_cells=64)
    return X, random_subcomplex(rng, X)


def maximal_simplices(X: SimplicialComplex):
    out = []
    for s in X.sorted():
        if not any(s != t and set(s.vertices) <= set(t.vertices) for t in X.simplices):
            out.append(s)
    return out


def random_cover(rng: random.Random, max_vertices=6):
    """X with subcomplexes A, B such that A ∪ B = X."""
    X = random_complex(rng, max_vertices=max_vertices, max_dim=3, max_cells=64)
    a, b = [], []
    for s in maximal_simplices(X):
        side = rng.randrange(3)
        if side != 1:
            a.append(s)
        if side != 0:
            b.append(s)
    return X, SimplicialComplex.closure(a), SimplicialComplex.closure(b)
