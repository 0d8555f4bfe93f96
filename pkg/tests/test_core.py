import random

import pytest
from hypothesis import given, settings, strategies as st

from persista.core import (
    Cell, Chain, Filtration, MonotonicityError, Simplex, SimplicialComplex,
    ValidationError, chain_boundary, filtration_from_complex,
    simplicial_boundary, validate_complex,
)
from persista.random_instances import random_births


def S(*vs):
    return Simplex(vs)


def test_simplex_rejects_bad_vertex_lists():
    with pytest.raises(ValueError):
        Simplex(())
    with pytest.raises(ValueError):
        Simplex((2, 1))
    with pytest.raises(ValueError):
        Simplex((1, 1))
    assert Simplex.of(3, 1, 2) == S(1, 2, 3)
    assert S(4, 7).dimension() == 1


def test_boundary_of_vertex_is_zero():
    assert simplicial_boundary(S(0)) == Chain()


def test_boundary_of_edge():
    assert simplicial_boundary(S(0, 1)) == Chain({S(1): 1, S(0): -1})


def test_boundary_of_triangle_and_its_square():
    bd = simplicial_boundary(S(0, 1, 2))
    assert bd == Chain({S(1, 2): 1, S(0, 2): -1, S(0, 1): 1})
    assert chain_boundary(bd) == Chain()


@given(st.sets(st.integers(0, 9), min_size=2, max_size=6))
def test_boundary_squared_is_zero(vs):
    s = Simplex(sorted(vs))
    assert chain_boundary(simplicial_boundary(s)) == Chain()
    assert chain_boundary(simplicial_boundary(s).mod(5)) == Chain(p=5)


chains = st.dictionaries(st.integers(0, 6), st.integers(-5, 5), max_size=5).map(Chain)


@given(chains, chains, chains)
def test_chain_group_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + Chain() == a
    assert a + (-a) == Chain()
    assert all(v != 0 for _, v in (a + b).items())


def test_chain_mod_p_drops_zero():
    assert Chain({0: 5, 1: 2}, p=5) == Chain({1: 2}, p=5)
    assert len(Chain({0: 3}).mod(3)) == 0


def test_validate_complex():
    full = SimplicialComplex.closure([(0, 1, 2)])
    assert validate_complex(full) == []
    bad = validate_complex(SimplicialComplex([(0, 1)]))
    assert [v.missing for v in bad] == [S(0), S(1)]
    assert all(v.parent == S(0, 1) for v in bad)
    assert validate_complex(SimplicialComplex()) == []


def test_filtration_from_triangle_boundary():
    c = SimplicialComplex.closure([(0, 1), (1, 2), (0, 2)])
    f = filtration_from_complex(c, lambda s: float(s.dimension()))
    assert len(f) == 6
    assert f.dims == [0, 0, 0, 1, 1, 1]
    assert [cell.label for cell in f][3:] == [S(0, 1), S(0, 2), S(1, 2)]
    assert f[3].boundary == Chain({1: 1, 0: -1})


def test_filtration_single_vertex():
    f = filtration_from_complex(SimplicialComplex([(0,)]), {S(0): 2.5})
    assert len(f) == 1 and f[0].birth == 2.5 and not f[0].boundary


def test_filtration_edge_before_vertex():
    c = SimplicialComplex.closure([(0, 1)])
    with pytest.raises(MonotonicityError, match=r"\[0\]"):
        filtration_from_complex(c, {S(0): 1.0, S(1): 0.0, S(0, 1): 0.5})


def test_filtration_invariants_are_enforced():
    with pytest.raises(ValidationError, match="non-monotone"):
        Filtration([Cell(0, 0, 1.0), Cell(1, 0, 0.0)])
    with pytest.raises(ValidationError, match="forward reference"):
        Filtration([Cell(0, 1, 0.0, Chain({1: 1})), Cell(1, 0, 0.0)])
    with pytest.raises(ValidationError, match="dimension"):
        Filtration([Cell(0, 0, 0.0), Cell(1, 2, 0.0, Chain({0: 1}))])
    with pytest.raises(ValidationError, match="boundary squared nonzero at cell 2"):
        Filtration([Cell(0, 0, 0.0), Cell(1, 1, 0.0, Chain({0: 1})), Cell(2, 2, 0.0, Chain({1: 1}))])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_filtration_from_random_monotone_births(seed):
    rng = random.Random(seed)
    nv = rng.randint(1, 5)
    # full power set on nv vertices
    c = SimplicialComplex.closure([tuple(range(nv))])
    births = random_births(rng, c, grid=3)
    f = filtration_from_complex(c, births)
    f.validate()
    assert len(f) == 2 ** nv - 1
    pos = {cell.label: cell.id for cell in f}
    for s in c.simplices:
        for face in s.faces():
            assert pos[face] < pos[s]
