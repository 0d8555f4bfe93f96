"""
Text formats for filtrations and barcodes, the Vietoris-Rips builder, and
SVG rendering of persistence diagrams and barcode strips.

`.flt` (simplicial), one simplex per line::

    birth v0 v1 ... vk

`.cwf` (explicit boundaries), one cell per line, ids 0..n in file order::

    id dim birth face_id:coeff [face_id:coeff ...]

Both formats allow `#` comments and blank lines.
"""

import json
import math
from dataclasses import dataclass
from typing import Tuple

from .core import (
    Cell, Chain, Filtration, Simplex, SimplicialComplex, ValidationError,
    filtration_from_complex, validate_complex,
)
from .persistence import INF, Barcode, Interval

DEFAULT_SIZE_CAP = 10 ** 6


class ParseError(ValueError):
    def __init__(self, msg, line=None):
        self.line = line
        super().__init__("line %d: %s" % (line, msg) if line is not None else msg)


class SizeError(ValueError):
    pass


def fmt_real(x):
    """17 significant digits, so 64-bit floats round-trip exactly."""
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return "%.17g" % x


def _content_lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _real(tok, no):
    try:
        x = float(tok)
    except ValueError:
        raise ParseError("bad number %r" % tok, no) from None
    if not math.isfinite(x):
        raise ParseError("birth must be finite, got %r" % tok, no)
    return x


def _int(tok, no, what):
    try:
        return int(tok)
    except ValueError:
        raise ParseError("bad %s %r" % (what, tok), no) from None


def parse_flt(text) -> Filtration:
    births = {}
    for no, line in _content_lines(text):
        toks = line.split()
        if len(toks) < 2:
            raise ParseError("expected 'birth v0 ... vk'", no)
        b = _real(toks[0], no)
        vs = [_int(t, no, "vertex") for t in toks[1:]]
        if len(set(vs)) != len(vs) or any(v < 0 for v in vs):
            raise ParseError("vertices must be distinct non-negative integers", no)
        s = Simplex(sorted(vs))
        if s in births:
            raise ParseError("duplicate simplex %s" % sorted(vs), no)
        births[s] = b
    c = SimplicialComplex(births)
    bad = validate_complex(c)
    if bad:
        raise ValidationError("not face-closed: %s" % bad[0])
    return filtration_from_complex(c, births)


def parse_cwf(text) -> Filtration:
    cells = []
    for no, line in _content_lines(text):
        toks = line.split()
        if len(toks) < 3:
            raise ParseError("expected 'id dim birth [face:coeff ...]'", no)
        cid = _int(toks[0], no, "id")
        if cid != len(cells):
            raise ParseError("cell id %d out of sequence (expected %d)" % (cid, len(cells)), no)
        dim = _int(toks[1], no, "dimension")
        birth = _real(toks[2], no)
        terms = {}
        for tok in toks[3:]:
            face, sep, coeff = tok.partition(":")
            if not sep:
                raise ParseError("expected face_id:coeff, got %r" % tok, no)
            fid = _int(face, no, "face id")
            if fid in terms:
                raise ParseError("face %d listed twice" % fid, no)
            terms[fid] = _int(coeff, no, "coefficient")
        cells.append(Cell(cid, dim, birth, Chain(terms)))
    return Filtration(cells)


def parse_filtration(text, fmt="cwf") -> Filtration:
    """Parse `.flt` or `.cwf` text into a validated filtration."""
    if fmt in ("flt", ".flt"):
        return parse_flt(text)
    if fmt in ("cwf", ".cwf"):
        return parse_cwf(text)
    raise ValueError("unknown filtration format %r" % (fmt,))


def format_of(path):
    p = str(path)
    if p.endswith(".flt"):
        return "flt"
    if p.endswith(".cwf"):
        return "cwf"
    raise ValueError("cannot tell format of %s (expected .flt or .cwf)" % p)


def load_filtration(path) -> Filtration:
    with open(path, encoding="utf-8") as fh:
        return parse_filtration(fh.read(), format_of(path))


def write_filtration(f: Filtration, fmt="cwf") -> str:
    lines = []
    if fmt in ("cwf", ".cwf"):
        for c in f:
            faces = " ".join("%d:%d" % (i, v) for i, v in sorted(c.boundary.items()))
            lines.append(("%d %d %s %s" % (c.id, c.dim, fmt_real(c.birth), faces)).rstrip())
    elif fmt in ("flt", ".flt"):
        for c in f:
            if c.label is None:
                raise ValueError("cell %d has no simplex; use the cwf format" % c.id)
            lines.append("%s %s" % (fmt_real(c.birth), " ".join(map(str, c.label.vertices))))
    else:
        raise ValueError("unknown filtration format %r" % (fmt,))
    return "".join(line + "\n" for line in lines)


# -- point clouds and Rips ---------------------------------------------------

@dataclass(frozen=True)
class PointCloud:
    points: Tuple[Tuple[float, ...], ...]

    def __init__(self, points):
        pts = tuple(tuple(float(x) for x in pt) for pt in points)
        if pts:
            m = len(pts[0])
            if m < 1 or any(len(pt) != m for pt in pts):
                raise ValidationError("points must share one positive dimension")
            if not all(math.isfinite(x) for pt in pts for x in pt):
                raise ValidationError("coordinates must be finite")
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)


def parse_points(text) -> PointCloud:
    """Whitespace- or comma-separated coordinates, one point per line."""
    pts = []
    for no, line in _content_lines(text):
        toks = line.replace(",", " ").split()
        try:
            pt = [float(t) for t in toks]
        except ValueError:
            raise ParseError("bad coordinate", no) from None
        if pts and len(pt) != len(pts[0]):
            raise ParseError("expected %d coordinates, got %d" % (len(pts[0]), len(pt)), no)
        if not all(math.isfinite(x) for x in pt):
            raise ParseError("coordinates must be finite", no)
        pts.append(pt)
    return PointCloud(pts)


def build_rips(pc: PointCloud, max_dim, max_radius, size_cap=DEFAULT_SIZE_CAP) -> Filtration:
    """
    Vietoris-Rips filtration: every set of at most max_dim+1 points with all
    pairwise Euclidean distances <= max_radius, born at its largest pairwise
    distance.
    """
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    if not max_radius > 0:
        raise ValueError("max_radius must be positive")
    n = len(pc)
    dist = [[math.dist(a, b) for b in pc.points] for a in pc.points]
    nbrs = [[j for j in range(i + 1, n) if dist[i][j] <= max_radius] for i in range(n)]
    births = {}

    def grow(simplex, birth, candidates):
        if len(births) >= size_cap:
            raise SizeError("Rips complex exceeds %d simplices" % size_cap)
        births[Simplex(simplex)] = birth
        if len(simplex) == max_dim + 1:
            return
        for j in candidates:
            b = max([birth] + [dist[v][j] for v in simplex])
            grow(simplex + (j,), b, [c for c in candidates if c > j and c in nbr_sets[j]])

    nbr_sets = [set(x) for x in nbrs]
    for i in range(n):
        grow((i,), 0.0, nbrs[i])
    return filtration_from_complex(SimplicialComplex(births), births)


# -- barcodes ----------------------------------------------------------------

TSV_HEADER = "dim\tbirth\tdeath\tkind"


def write_barcode(b: Barcode, fmt="tsv") -> str:
    if fmt == "tsv":
        lines = [TSV_HEADER]
        lines += ["%d\t%s\t%s\t%s" % (iv.dim, fmt_real(iv.birth), fmt_real(iv.death), iv.kind) for iv in b]
        return "\n".join(lines) + "\n"
    if fmt == "json":
        rows = [{"dim": iv.dim, "birth": fmt_real(iv.birth), "death": fmt_real(iv.death),
                 "kind": iv.kind, "birth_index": iv.provenance[0], "death_index": iv.provenance[1]}
                for iv in b]
        return json.dumps({"intervals": rows}, indent=2) + "\n"
    raise ValueError("unknown barcode format %r" % (fmt,))


def _endpoint(tok, no):
    try:
        return float(tok)
    except ValueError:
        raise ParseError("bad endpoint %r" % tok, no) from None


def read_barcode(text, fmt="tsv") -> Barcode:
    """Inverse of write_barcode.  TSV carries no provenance indices."""
    out = []
    if fmt == "json":
        for row in json.loads(text)["intervals"]:
            out.append(Interval(row["dim"], float(row["birth"]), float(row["death"]), row["kind"],
                                (row["birth_index"], row["death_index"])))
        return Barcode(out)
    for no, line in _content_lines(text):
        toks = line.split()
        if toks == TSV_HEADER.split():
            continue
        if len(toks) != 4:
            raise ParseError("expected 'dim birth death kind'", no)
        try:
            out.append(Interval(_int(toks[0], no, "dimension"), _endpoint(toks[1], no),
                                _endpoint(toks[2], no), toks[3]))
        except ValueError as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(str(e), no) from None
    return Barcode(out)


# -- SVG ---------------------------------------------------------------------

_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]


def _n(x):
    return ("%.2f" % x).rstrip("0").rstrip(".")


def _value_range(b):
    vals = [x for iv in b for x in (iv.birth, iv.death) if math.isfinite(x)]
    if not vals:
        return 0.0, 1.0
    lo, hi = min(vals), max(vals)
    if hi == lo:
        hi = lo + 1.0
    return lo, hi


def emit_diagram_svg(b: Barcode, style="diagram") -> str:
    if style == "diagram":
        return _diagram_svg(b)
    if style in ("barcode-strips", "strips", "barcode"):
        return _strips_svg(b)
    raise ValueError("unknown style %r" % (style,))


def _svg_open(w, h, title):
    return ['<?xml version="1.0" encoding="UTF-8"?>',
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%d" height="%d" viewBox="0 0 %d %d">' % (w, h, w, h),
            "<title>%s</title>" % title,
            '<rect x="0" y="0" width="%d" height="%d" fill="white"/>' % (w, h)]


def _diagram_svg(b):
    W = H = 420
    left, right, top, bottom = 60, 20, 40, 50
    band = 16  # infinity bands: top for +inf deaths, left for -inf births
    lo, hi = _value_range(b)
    span = hi - lo
    lo, hi = lo - 0.05 * span, hi + 0.05 * span
    x0, x1 = left + band, W - right
    y0, y1 = H - bottom, top + band

    def sx(v):
        return x0 + (v - lo) / (hi - lo) * (x1 - x0)

    def sy(v):
        return y0 - (v - lo) / (hi - lo) * (y0 - y1)

    out = _svg_open(W, H, "persistence diagram")
    out.append('<g id="axes" stroke="black" stroke-width="1" fill="none">')
    out.append('<line x1="%s" y1="%s" x2="%s" y2="%s"/>' % (_n(x0), _n(y0), _n(x1), _n(y0)))
    out.append('<line x1="%s" y1="%s" x2="%s" y2="%s"/>' % (_n(x0), _n(y0), _n(x0), _n(y1)))
    out.append('<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="#999" stroke-dasharray="4 3"/>'
               % (_n(x0), _n(y0), _n(x1), _n(y1)))
    out.append("</g>")
    out.append('<g id="bands" fill="#eee" stroke="none">')
    out.append('<rect id="band-inf" x="%s" y="%s" width="%s" height="%d"/>' % (_n(x0), _n(top), _n(x1 - x0), band))
    out.append('<rect id="band-neg-inf" x="%d" y="%s" width="%d" height="%s"/>' % (left, _n(y1), band, _n(y0 - y1)))
    out.append("</g>")
    out.append('<g id="labels" font-family="sans-serif" font-size="11" fill="black">')
    out.append('<text x="%s" y="%s" text-anchor="end">inf</text>' % (_n(x0 - 4), _n(top + band - 4)))
    out.append('<text x="%d" y="%s" text-anchor="middle">-inf</text>' % (left + band // 2, _n(y0 + 14)))
    a, c = _value_range(b)
    for v in (a, c):
        out.append('<text x="%s" y="%s" text-anchor="middle">%s</text>' % (_n(sx(v)), _n(y0 + 14), fmt_real(v)))
        out.append('<text x="%s" y="%s" text-anchor="end">%s</text>' % (_n(x0 - 4), _n(sy(v) + 4), fmt_real(v)))
    out.append('<text x="%s" y="%d" text-anchor="middle">birth</text>' % (_n((x0 + x1) / 2), H - 12))
    out.append('<text x="14" y="%s" text-anchor="middle" transform="rotate(-90 14 %s)">death</text>'
               % (_n((y0 + y1) / 2), _n((y0 + y1) / 2)))
    out.append("</g>")
    out.append('<g id="points">')
    for k, iv in enumerate(b):
        x = left + band / 2 if iv.birth == -INF else sx(iv.birth)
        y = top + band / 2 if iv.death == INF else sy(iv.death)
        cls = "essential" if iv.kind == "essential" else "finite"
        out.append('<circle id="pt%d" class="%s dim%d" cx="%s" cy="%s" r="4" fill="%s"/>'
                   % (k, cls, iv.dim, _n(x), _n(y), _COLORS[iv.dim % len(_COLORS)]))
    out.append("</g>")
    out.extend(_legend(b, W - right - 70, top + band + 10))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _legend(b, x, y):
    dims = sorted({iv.dim for iv in b})
    out = ['<g id="legend" font-family="sans-serif" font-size="11">']
    for i, d in enumerate(dims):
        out.append('<circle cx="%d" cy="%d" r="4" fill="%s"/>' % (x, y + 14 * i, _COLORS[d % len(_COLORS)]))
        out.append('<text x="%d" y="%d">H%d</text>' % (x + 8, y + 14 * i + 4, d))
    out.append("</g>")
    return out


def _strips_svg(b):
    W = 520
    left, right, top, row, gap = 60, 30, 30, 12, 14
    dims = sorted({iv.dim for iv in b})
    H = top + 40 + len(b) * row + len(dims) * gap
    lo, hi = _value_range(b)
    span = hi - lo
    lo, hi = lo - 0.05 * span, hi + 0.05 * span
    x0, x1 = left, W - right

    def sx(v):
        if v == -INF:
            return x0 - 10
        if v == INF:
            return x1 + 10
        return x0 + (v - lo) / (hi - lo) * (x1 - x0)

    out = _svg_open(W, H, "barcode")
    y = top
    out.append('<g id="bars" stroke-width="3" font-family="sans-serif" font-size="11">')
    k = 0
    for d in dims:
        y += gap
        out.append('<text x="6" y="%d">H%d</text>' % (y + 4, d))
        for iv in b:
            if iv.dim != d:
                continue
            out.append('<line id="bar%d" class="%s dim%d" x1="%s" y1="%d" x2="%s" y2="%d" stroke="%s"/>'
                       % (k, iv.kind, d, _n(sx(iv.birth)), y, _n(sx(iv.death)), y, _COLORS[d % len(_COLORS)]))
            k += 1
            y += row
    out.append("</g>")
    base = y + 10
    out.append('<g id="axes" stroke="black" font-family="sans-serif" font-size="11">')
    out.append('<line x1="%d" y1="%d" x2="%d" y2="%d"/>' % (x0, base, x1, base))
    a, c = _value_range(b)
    for v in (a, c):
        out.append('<text x="%s" y="%d" text-anchor="middle" stroke="none">%s</text>' % (_n(sx(v)), base + 14, fmt_real(v)))
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
