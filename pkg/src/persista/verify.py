"""
Seeded property suites behind `persista verify`.  Each suite draws its cases
from `random.Random("<seed>:<suite>")` and reports one result per property.
"""

import random
from dataclasses import dataclass, field
from typing import List

from .core import GeometricComplex
from .homology import (
    barycentric_subdivide, barycentric_subdivide_geometric, betti_numbers,
    connecting_map_lift_independent, excision_check, les_exactness_check,
    uct_field_check,
)
from .persistence import (
    boundary_matrix, cohomology_reduction, compute_four, duality_problems,
    pairs_from_coboundary, rank_invariant_oracle, reduce,
)
from .random_instances import random_complex, random_cover, random_filtration, random_pair

SUITES = ("duality", "les", "excision", "subdivision", "oracle", "uct")
FIELDS = (2, 5)


@dataclass
class PropertyResult:
    suite: str
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def fail(self, case, why=""):
        self.failures.append("case %d%s" % (case, ": " + why if why else ""))

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        extra = "" if self.passed else "  first failure: %s" % self.failures[0]
        return "%s %s/%s (%d cases)%s" % (status, self.suite, self.name, self.cases, extra)


def _rng(seed, suite):
    return random.Random("%s:%s" % (seed, suite))


def suite_duality(seed, count, max_cells=40):
    rng = _rng(seed, "duality")
    res = {k: PropertyResult("duality", k) for k in
           ("abs-hom=abs-coh", "rel-hom=rel-coh", "abs-finite=rel-finite-shifted",
            "essential-correspondence", "anti-transpose-pairs", "reduction-invariants")}
    for case in range(count):
        f = random_filtration(rng, max_cells=max_cells)
        for p in FIELDS:
            for r in res.values():
                r.cases += 1
            problems = duality_problems(compute_four(f, p))
            for msg, key in (("absolute homology", "abs-hom=abs-coh"), ("relative homology", "rel-hom=rel-coh"),
                             ("finite absolute", "abs-finite=rel-finite-shifted"), ("essential", "essential-correspondence")):
                if any(pr.startswith(msg) for pr in problems):
                    res[key].fail(case, "p=%d" % p)
            hom = reduce(f, p)
            coh_pairs, coh_ess = pairs_from_coboundary(cohomology_reduction(f, p), len(f))
            if set(coh_pairs) != set(hom.pairs) or set(coh_ess) != set(hom.essential):
                res["anti-transpose-pairs"].fail(case, "p=%d" % p)
            try:
                hom.check(boundary_matrix(f, p))
            except AssertionError as e:
                res["reduction-invariants"].fail(case, "p=%d %s" % (p, e))
    return list(res.values())


def suite_oracle(seed, count, max_cells=20):
    rng = _rng(seed, "oracle")
    res = {k: PropertyResult("oracle", k) for k in ("absolute", "relative")}
    for case in range(count):
        f = random_filtration(rng, max_cells=max_cells)
        p = FIELDS[case % len(FIELDS)]
        four = compute_four(f, p)
        for variant, mine in (("absolute", four.abs_hom), ("relative", four.rel_hom)):
            res[variant].cases += 1
            if rank_invariant_oracle(f, p, variant) != mine:
                res[variant].fail(case, "p=%d" % p)
    return list(res.values())


def suite_les(seed, count):
    rng = _rng(seed, "les")
    exact = PropertyResult("les", "exact-at-every-node")
    lift = PropertyResult("les", "connecting-map-lift-independent")
    for case in range(count):
        X, A = random_pair(rng)
        p = FIELDS[case % len(FIELDS)]
        exact.cases += 1
        rep = les_exactness_check(X, A, p)
        if not rep.exact:
            exact.fail(case, next(l for l in rep.lines() if l.startswith("FAIL")))
        lift.cases += 1
        if not connecting_map_lift_independent(X, A, p, seeds=(case,)):
            lift.fail(case)
    return [exact, lift]


def suite_excision(seed, count):
    rng = _rng(seed, "excision")
    res = PropertyResult("excision", "rank-equality")
    for case in range(count):
        X, A, B = random_cover(rng)
        res.cases += 1
        rep = excision_check(X, A, B, FIELDS[case % len(FIELDS)])
        if not rep.ok:
            res.fail(case, next(l for l in rep.lines() if l.startswith("FAIL")))
    return [res]


def suite_subdivision(seed, count):
    rng = _rng(seed, "subdivision")
    inv = PropertyResult("subdivision", "betti-invariant")
    diam = PropertyResult("subdivision", "diameter-bound")
    for case in range(count):
        c = random_complex(rng, max_vertices=5, max_dim=4, max_cells=64)
        sd = barycentric_subdivide(c)
        for p in FIELDS:
            inv.cases += 1
            if betti_numbers(sd, p).trimmed() != betti_numbers(c, p).trimmed():
                inv.fail(case, "p=%d" % p)
        coords = {v: tuple(rng.uniform(-1, 1) for _ in range(3)) for v in c.vertices()}
        rep = barycentric_subdivide_geometric(GeometricComplex(c, coords))
        diam.cases += 1
        if not rep.within_bound:
            diam.fail(case, "%.6g > %.6g" % (rep.diameter_after, rep.ratio_bound * rep.diameter_before))
    return [inv, diam]


def suite_uct(seed, count):
    rng = _rng(seed, "uct")
    res = PropertyResult("uct", "dim-cohomology=dim-homology")
    for case in range(count):
        c = random_complex(rng, max_vertices=7, max_dim=3, max_cells=64)
        for p in FIELDS:
            res.cases += 1
            if not uct_field_check(c, p).ok:
                res.fail(case, "p=%d" % p)
    return [res]


_RUNNERS = {
    "duality": suite_duality, "oracle": suite_oracle, "les": suite_les,
    "excision": suite_excision, "subdivision": suite_subdivision, "uct": suite_uct,
}


def run_suite(name, seed, count) -> List[PropertyResult]:
    names = SUITES if name == "all" else (name,)
    out = []
    for n in names:
        out.extend(_RUNNERS[n](seed, count))
    return out
