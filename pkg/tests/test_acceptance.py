"""
The ten acceptance criteria, one test each.  A PASS/FAIL line per criterion
is printed in the terminal summary (see conftest.py).
"""

import math
import os
import random
import subprocess
import sys
import time

import pytest

from persista.core import GeometricComplex
from persista.fixtures import (
    S2_CWF, UNIT_SQUARE, disjoint_points, full_simplex, rp2, s2_filtration, sphere,
    square_cycle, tetra_hemispheres,
)
from persista.homology import (
    barycentric_subdivide, barycentric_subdivide_geometric, integer_homology,
    uct_field_check,
)
from persista.io import PointCloud, build_rips
from persista.persistence import INF, barcode_absolute_homology, barcode_relative, reduce
from persista.random_instances import random_complex
from persista.verify import suite_duality, suite_excision, suite_les, suite_oracle, suite_subdivision

SEED = 2024


def by_name(results):
    return {r.name: r for r in results}


def test_criterion_01_s2_golden():
    f = s2_filtration()
    start = time.perf_counter()
    absolute = barcode_absolute_homology(reduce(f, 2), f)
    relative = barcode_relative(f, 2)
    elapsed = time.perf_counter() - start
    assert absolute.values() == [(0, 0.0, INF), (0, 1.0, 2.0), (1, 3.0, 4.0), (2, 5.0, INF)]
    assert relative.values() == [(0, -INF, 0.0), (1, 1.0, 2.0), (2, -INF, 5.0), (2, 3.0, 4.0)]
    assert elapsed < 0.010, "took %.4f s" % elapsed


@pytest.fixture(scope="module")
def duality_run():
    start = time.perf_counter()
    results = by_name(suite_duality(SEED, 200))
    return results, time.perf_counter() - start


def test_criterion_02_duality_absolute_and_relative(duality_run):
    results, elapsed = duality_run
    for name in ("abs-hom=abs-coh", "rel-hom=rel-coh"):
        assert results[name].cases == 400
        assert results[name].passed, results[name].line()
    assert elapsed < 5.0, "full suite took %.2f s" % elapsed


def test_criterion_03_duality_finite_shift_and_essential(duality_run):
    results, _ = duality_run
    for name in ("abs-finite=rel-finite-shifted", "essential-correspondence"):
        assert results[name].cases == 400
        assert results[name].passed, results[name].line()


def test_criterion_04_oracle_equivalence():
    start = time.perf_counter()
    results = by_name(suite_oracle(SEED, 500))
    elapsed = time.perf_counter() - start
    for name in ("absolute", "relative"):
        assert results[name].cases == 500
        assert results[name].passed, results[name].line()
    assert elapsed < 30.0, "took %.2f s" % elapsed


def test_criterion_05_classical_homology():
    for d in (1, 2, 3):
        h = integer_homology(sphere(d))
        assert [h.group(k) for k in range(d + 2)] == ["Z"] + ["0"] * (d - 1) + ["Z", "0"]
    for d in (1, 2, 3):
        h = integer_homology(full_simplex(d))
        assert [h.group(k) for k in range(d + 1)] == ["Z"] + ["0"] * d
    for p in range(1, 6):
        h = integer_homology(disjoint_points(p))
        assert h.betti[0] == p and not any(h.torsion)
    h = integer_homology(rp2())
    assert h.group(1) == "Z/2" and h.betti[:3] == (1, 0, 0)


def test_criterion_06_exactness_and_excision():
    start = time.perf_counter()
    results = suite_les(SEED, 50) + suite_excision(SEED, 50)
    elapsed = time.perf_counter() - start
    for r in results:
        assert r.cases == 50 and r.passed, r.line()
    assert elapsed < 20.0, "took %.2f s" % elapsed


def test_criterion_07_subdivision():
    results = by_name(suite_subdivision(SEED, 50))
    assert results["betti-invariant"].cases == 100 and results["betti-invariant"].passed
    tri = GeometricComplex(full_simplex(2), {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (0.5, math.sqrt(3) / 2)})
    rep = barycentric_subdivide_geometric(tri)
    assert abs(rep.diameter_after - math.sqrt(3) / 3) < 1e-12
    assert rep.diameter_after <= 2 / 3


def test_criterion_08_uct_field_check():
    X, upper, lower = tetra_hemispheres()
    fixtures = [sphere(1), sphere(2), sphere(3), full_simplex(2), full_simplex(3), square_cycle(), rp2(),
                upper, lower, barycentric_subdivide(full_simplex(2))] + [disjoint_points(p) for p in range(1, 6)]
    rng = random.Random(SEED)
    complexes = fixtures + [random_complex(rng, max_vertices=7, max_cells=64) for _ in range(100)]
    for c in complexes:
        for p in (2, 5):
            rep = uct_field_check(c, p)
            assert rep.ok, rep.lines()


def test_criterion_09_rips_end_to_end():
    f = build_rips(PointCloud(UNIT_SQUARE), 2, 2.0)
    h1 = [iv for iv in barcode_absolute_homology(reduce(f, 2), f) if iv.dim == 1]
    assert len(h1) == 1
    assert abs(h1[0].birth - 1.0) < 1e-12
    assert abs(h1[0].death - math.sqrt(2)) < 1e-12


def _cli(args, cwd, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    proc = subprocess.run([sys.executable, "-m", "persista"] + args, cwd=cwd, env=env,
                          capture_output=True, check=False)
    written = (cwd / args[args.index("-o") + 1]).read_bytes() if "-o" in args else b""
    return proc.returncode, proc.stdout, written


def test_criterion_10_cli_determinism(tmp_path):
    (tmp_path / "s2.cwf").write_text(S2_CWF)
    commands = [
        ["example", "s2"], ["example", "rp2"], ["example", "square"],
        ["example", "rp2", "-o", "rp2.flt"], ["example", "square", "-o", "square.txt"],
        ["barcode", "s2.cwf", "--module", "all"],
        ["barcode", "s2.cwf", "--module", "all", "--format", "json", "--keep-zero-length"],
        ["barcode", "rp2.flt", "--field", "3", "--module", "rel-coh"],
        ["barcode", "s2.cwf", "-o", "s2.tsv"],
        ["homology", "s2.cwf"], ["homology", "rp2.flt"],
        ["rips", "square.txt", "--max-dim", "2", "--max-radius", "2"],
        ["verify", "--suite", "all", "--seed", "7", "--count", "4"],
        ["diagram", "s2.tsv", "--style", "diagram"],
        ["diagram", "s2.tsv", "--style", "barcode-strips"],
    ]
    for args in commands:
        first = _cli(args, tmp_path, 1)
        second = _cli(args, tmp_path, 2)
        assert first[0] == 0, (args, first)
        assert first == second, args
