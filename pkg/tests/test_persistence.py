import random

import pytest

from persista.core import Cell, Chain, Filtration, SimplicialComplex, filtration_from_complex
from persista.fixtures import rp2_filtration, s2_filtration
from persista.persistence import (
    INF, Barcode, DualityViolation, Interval, OracleCapExceeded,
    barcode_absolute_cohomology, barcode_absolute_homology, barcode_relative,
    boundary_matrix, cohomology_reduction, compute_four, concatenated_barcode,
    duality_problems, four_barcodes, pairs_from_coboundary,
    rank_invariant_oracle, reduce, spectrum,
)
from persista.random_instances import random_filtration

S2_ABS = [(0, 0.0, INF), (0, 1.0, 2.0), (1, 3.0, 4.0), (2, 5.0, INF)]
S2_REL = [(0, -INF, 0.0), (1, 1.0, 2.0), (2, -INF, 5.0), (2, 3.0, 4.0)]


def triangle_boundary(edge_birth=1.0):
    c = SimplicialComplex.closure([(0, 1), (1, 2), (0, 2)])
    return filtration_from_complex(c, lambda s: edge_birth * s.dimension())


def test_reduce_s2():
    r = reduce(s2_filtration(), 2)
    assert set(r.pairs) == {(1, 2), (3, 4)}
    assert set(r.essential) == {0, 5}
    r.check(boundary_matrix(s2_filtration(), 2))


def test_reduce_isolated_vertices():
    f = Filtration([Cell(i, 0, 0.0) for i in range(4)])
    r = reduce(f, 3)
    assert not r.pairs and set(r.essential) == {0, 1, 2, 3}


def test_reduce_triangle_boundary():
    r = reduce(triangle_boundary(), 2)
    assert set(r.pairs) == {(1, 3), (2, 4)}
    assert set(r.essential) == {0, 5}


def test_s2_barcodes():
    f = s2_filtration()
    assert barcode_absolute_homology(reduce(f, 2), f).values() == S2_ABS
    assert barcode_absolute_cohomology(f, 2).values() == S2_ABS
    assert barcode_relative(f, 2).values() == S2_REL
    assert barcode_relative(f, 2, "cohomology").values() == S2_REL


def test_empty_and_trivial_barcodes():
    empty = Filtration([])
    assert len(barcode_absolute_homology(reduce(empty, 2), empty)) == 0
    assert len(barcode_relative(empty, 2)) == 0
    point = Filtration([Cell(0, 0, 1.5)])
    assert barcode_absolute_cohomology(point, 2).values() == [(0, 1.5, INF)]


def test_zero_length_pairs_dropped_by_default():
    f = triangle_boundary(edge_birth=0.0)
    b = barcode_absolute_homology(reduce(f, 2), f)
    assert b.values() == [(0, 0.0, INF), (1, 0.0, INF)]
    kept = barcode_absolute_homology(reduce(f, 2), f, keep_zero_length=True)
    eph = [i for i in kept if i.kind == "ephemeral"]
    assert sorted((i.birth, i.death) for i in eph) == [(1, 3), (2, 4)]
    assert rank_invariant_oracle(f, 2) == b


def test_interval_validation():
    with pytest.raises(ValueError):
        Interval(0, 2.0, 2.0, "finite")
    with pytest.raises(ValueError):
        Interval(0, 1.0, INF, "finite")
    with pytest.raises(ValueError):
        Interval(0, -INF, INF, "essential")


def test_concatenated_barcode_s2():
    f = s2_filtration()
    k0 = [str(c) for c in concatenated_barcode(f, 2, 0)]
    assert k0 == ["[0, 0̅)", "[1, 2)"]
    k2 = concatenated_barcode(f, 2, 2)
    assert [(c.family, str(c)) for c in k2] == [(3, "[5, 5̅)"), (2, "[3̅, 4̅)")]


def test_family_three_is_always_a_to_abar():
    rng = random.Random(5)
    for _ in range(30):
        f = random_filtration(rng)
        for k in range(4):
            for c in concatenated_barcode(f, 2, k):
                if c.family == 3:
                    assert c.start.value == c.end.value and not c.start.barred and c.end.barred


def test_spectrum():
    b = Barcode([Interval(0, 0.0, INF, "essential"), Interval(0, 1.0, 2.0, "finite")])
    assert spectrum(b) == [0.0, 1.0, 2.0, INF]
    assert spectrum(Barcode()) == [INF]
    assert spectrum(barcode_absolute_homology(reduce(s2_filtration(), 2), s2_filtration())) == \
        [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, INF]


def test_oracle_s2_both_variants():
    f = s2_filtration()
    assert rank_invariant_oracle(f, 2, "absolute").values() == S2_ABS
    assert rank_invariant_oracle(f, 2, "relative").values() == S2_REL


def test_oracle_cap(monkeypatch):
    f = rp2_filtration()
    with pytest.raises(OracleCapExceeded):
        rank_invariant_oracle(f, 2, cap=10)
    monkeypatch.setenv("PERSISTA_ORACLE_CAP", "5")
    with pytest.raises(OracleCapExceeded):
        rank_invariant_oracle(s2_filtration(), 2)


RP2_F2 = sorted([(0, 0.0, INF)] + [(0, 0.0, 1.0)] * 5 + [(1, 1.0, 2.0)] * 9 + [(1, 1.0, INF), (2, 2.0, INF)])
RP2_F3 = sorted([(0, 0.0, INF)] + [(0, 0.0, 1.0)] * 5 + [(1, 1.0, 2.0)] * 10)


def test_rp2_field_sensitivity():
    f = rp2_filtration()
    b2 = barcode_absolute_homology(reduce(f, 2), f)
    b3 = barcode_absolute_homology(reduce(f, 3), f)
    assert b2.values() == RP2_F2
    assert b3.values() == RP2_F3
    assert b2.in_dim(1).values() != b3.in_dim(1).values()
    assert rank_invariant_oracle(f, 2, cap=64).values() == RP2_F2


def test_anti_transpose_pairs_match():
    rng = random.Random(9)
    for _ in range(50):
        f = random_filtration(rng)
        for p in (2, 3):
            hom = reduce(f, p)
            pairs, ess = pairs_from_coboundary(cohomology_reduction(f, p), len(f))
            assert set(pairs) == set(hom.pairs) and set(ess) == set(hom.essential)


def test_reduction_invariants_on_random_instances():
    rng = random.Random(4)
    for _ in range(40):
        f = random_filtration(rng)
        for p in (2, 7):
            reduce(f, p).check(boundary_matrix(f, p))


def test_duality_on_random_instances():
    rng = random.Random(2)
    for _ in range(60):
        f = random_filtration(rng)
        for p in (2, 5):
            assert duality_problems(compute_four(f, p)) == []


def test_four_barcodes_raises_on_violation(monkeypatch):
    import persista.persistence as P
    f = s2_filtration()
    monkeypatch.setattr(P, "barcode_absolute_cohomology",
                        lambda *a, **k: Barcode([Interval(0, 0.0, INF, "essential")]))
    with pytest.raises(DualityViolation):
        four_barcodes(f, 2)


def test_cw_coefficients_beyond_unit():
    # a 2-cell glued with degree 2 along a circle: the projective plane's CW model
    f = Filtration([Cell(0, 0, 0.0), Cell(1, 1, 1.0, Chain()), Cell(2, 2, 2.0, Chain({1: 2}))])
    b2 = barcode_absolute_homology(reduce(f, 2), f)
    b3 = barcode_absolute_homology(reduce(f, 3), f)
    assert b2.values() == [(0, 0.0, INF), (1, 1.0, INF), (2, 2.0, INF)]
    assert b3.values() == [(0, 0.0, INF), (1, 1.0, 2.0)]
