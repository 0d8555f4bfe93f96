import math
import random
import re
import xml.etree.ElementTree as ET

import pytest

from persista.core import ValidationError
from persista.fixtures import S2_CWF, UNIT_SQUARE, rp2_filtration, s2_filtration
from persista.io import (
    TSV_HEADER, ParseError, PointCloud, SizeError, build_rips, emit_diagram_svg,
    parse_filtration, parse_points, read_barcode, write_barcode, write_filtration,
)
from persista.persistence import (
    INF, Barcode, barcode_absolute_homology, barcode_relative, rank_invariant_oracle, reduce,
)
from persista.random_instances import random_filtration


def s2_abs():
    f = s2_filtration()
    return barcode_absolute_homology(reduce(f, 2), f)


def test_parse_shipped_s2():
    assert parse_filtration(S2_CWF, "cwf") == s2_filtration()


def test_parse_empty():
    assert len(parse_filtration("", "cwf")) == 0
    assert len(parse_filtration("# only a comment\n\n", "flt")) == 0


def test_boundary_squared_nonzero_reported():
    text = S2_CWF.replace("4 2 4 2:1 3:-1", "4 2 4 2:1")
    with pytest.raises(ValidationError, match="boundary squared nonzero at cell 4"):
        parse_filtration(text, "cwf")


def test_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as e:
        parse_filtration("0 0 0\n1 0 x\n", "cwf")
    assert e.value.line == 2
    with pytest.raises(ParseError):
        parse_filtration("0 0 0\n1 1 1 0:z\n", "cwf")
    with pytest.raises(ParseError):
        parse_filtration("1.0\n", "flt")
    with pytest.raises(ParseError):
        parse_filtration("0 0 nan\n", "cwf")


def test_flt_sorts_vertices_and_computes_signs():
    f = parse_filtration("0 0\n0 1\n1 1 0\n", "flt")
    assert f[2].boundary.terms == {0: -1, 1: 1}


def test_flt_missing_face_rejected():
    with pytest.raises(ValidationError):
        parse_filtration("0 0\n1 0 1\n", "flt")


@pytest.mark.parametrize("fmt", ["cwf", "flt"])
def test_filtration_round_trip(fmt):
    rng = random.Random(fmt)
    for _ in range(40):
        f = random_filtration(rng)
        assert parse_filtration(write_filtration(f, fmt), fmt) == f
    g = rp2_filtration()
    assert parse_filtration(write_filtration(g, fmt), fmt) == g


def test_rips_two_points():
    f = build_rips(PointCloud([(0.0,), (1.0,)]), 1, 2.0)
    assert [(c.dim, c.birth) for c in f] == [(0, 0.0), (0, 0.0), (1, 1.0)]


def test_rips_unit_square():
    f = build_rips(PointCloud(UNIT_SQUARE), 2, 2.0)
    assert [len([c for c in f if c.dim == d]) for d in range(3)] == [4, 6, 4]
    b = barcode_absolute_homology(reduce(f, 2), f).in_dim(1)
    assert len(b) == 1
    (iv,) = b
    assert abs(iv.birth - 1) < 1e-12 and abs(iv.death - math.sqrt(2)) < 1e-12
    assert rank_invariant_oracle(f, 2).in_dim(1).values() == b.values()


def test_rips_small_radius_vertices_only():
    f = build_rips(PointCloud(UNIT_SQUARE), 2, 0.5)
    assert all(c.dim == 0 for c in f) and len(f) == 4


def test_rips_size_cap_and_bad_points():
    with pytest.raises(SizeError):
        build_rips(PointCloud(UNIT_SQUARE), 2, 2.0, size_cap=10)
    with pytest.raises(ParseError):
        parse_points("0 0\n1\n")
    with pytest.raises(ParseError):
        parse_points("0 inf\n")


def test_write_barcode_s2_tsv():
    lines = write_barcode(s2_abs(), "tsv").splitlines()
    assert lines == [TSV_HEADER, "0\t0\tinf\tessential", "0\t1\t2\tfinite",
                     "1\t3\t4\tfinite", "2\t5\tinf\tessential"]
    assert write_barcode(Barcode(), "tsv") == TSV_HEADER + "\n"
    rel = write_barcode(barcode_relative(s2_filtration(), 2), "tsv")
    assert "0\t-inf\t0\tessential" in rel and "2\t-inf\t5\tessential" in rel


def test_barcode_round_trips():
    rng = random.Random(17)
    for _ in range(30):
        f = random_filtration(rng)
        for b in (barcode_absolute_homology(reduce(f, 5), f), barcode_relative(f, 2)):
            assert read_barcode(write_barcode(b, "json"), "json") == b
            back = read_barcode(write_barcode(b, "tsv"), "tsv")
            assert back.values() == b.values()
            assert [i.kind for i in back] == [i.kind for i in b]
    f = build_rips(PointCloud(UNIT_SQUARE), 2, 2.0)
    b = barcode_absolute_homology(reduce(f, 2), f)
    assert read_barcode(write_barcode(b, "tsv"), "tsv").values() == b.values()


def test_svg_empty_and_s2():
    for style in ("diagram", "barcode-strips"):
        ET.fromstring(emit_diagram_svg(Barcode(), style).encode())
    svg = emit_diagram_svg(s2_abs(), "diagram")
    root = ET.fromstring(svg.encode())
    ns = "{http://www.w3.org/2000/svg}"
    points = [c for c in root.iter(ns + "circle") if c.get("id", "").startswith("pt")]
    assert len(points) == 4
    band = root.find(".//*[@id='band-inf']")
    top = float(band.get("y")) + float(band.get("height"))
    essential = [c for c in points if "essential" in c.get("class")]
    assert len(essential) == 2 and all(float(c.get("cy")) <= top for c in essential)


def test_svg_strips_one_segment_per_interval():
    svg = emit_diagram_svg(s2_abs(), "barcode-strips")
    assert len(re.findall(r'id="bar\d+"', svg)) == 4


def test_svg_deterministic():
    b = barcode_relative(rp2_filtration(), 2)
    for style in ("diagram", "barcode-strips"):
        assert emit_diagram_svg(b, style) == emit_diagram_svg(b, style)
    assert "-inf" in emit_diagram_svg(b, "diagram")
