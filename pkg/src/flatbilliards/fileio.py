"""JSON and SVG input/output.

Every exact value is emitted as its canonical cyclotomic coordinates
(`conductor` plus rational coefficients) together with a 50-digit
decimal; re-parsing the coordinates reproduces the value exactly.
Files are written atomically (temporary file plus rename).
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from fractions import Fraction

from .cyclotomic import CyclotomicReal, embed, parse_constant
from .polygons import Edge, Polygon, triangle_from_angles

F = Fraction


class FormatError(ValueError):
    """Malformed input document."""


# ---------------------------------------------------------------------------
# exact scalars


def cyc_to_json(x: CyclotomicReal) -> dict:
    conductor, coeffs = x.to_pair()
    return {
        "conductor": conductor,
        "coeffs": coeffs,
        "decimal": x.decimal(50),
    }


def cyc_from_json(doc) -> CyclotomicReal:
    """Accepts the exact-object form, a constant expression string,
    or a plain integer."""
    if isinstance(doc, int):
        return embed(doc)
    if isinstance(doc, str):
        return parse_constant(doc)
    if isinstance(doc, dict) and "conductor" in doc and "coeffs" in doc:
        coeffs = [F(c) for c in doc["coeffs"]]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        nums = [int(c * den) for c in coeffs]
        return CyclotomicReal(int(doc["conductor"]), nums, den)
    raise FormatError(f"not an exact value: {doc!r}")


def fraction_to_str(q) -> str:
    q = F(q)
    return str(q.numerator) if q.denominator == 1 else f"{q}"


def fraction_from_str(text) -> Fraction:
    try:
        return F(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational number: {text!r}") from exc


# ---------------------------------------------------------------------------
# polygons and tilings


def polygon_to_json(P: Polygon) -> dict:
    return {
        "edges": [
            {
                "direction": fraction_to_str(e.direction.multiple),
                "length": cyc_to_json(e.length),
            }
            for e in P.edges
        ]
    }


def polygon_from_json(doc) -> Polygon:
    if not isinstance(doc, dict):
        raise FormatError("polygon document must be an object")
    if "triangle" in doc:
        angles = [fraction_from_str(a) for a in doc["triangle"]]
        if len(angles) != 3:
            raise FormatError("triangle needs exactly three angles")
        return triangle_from_angles(*angles)
    if "edges" not in doc:
        raise FormatError("polygon document needs 'edges' or 'triangle'")
    edges = []
    for e in doc["edges"]:
        edges.append(
            Edge(
                fraction_from_str(e["direction"]),
                cyc_from_json(e["length"]),
            )
        )
    return Polygon(edges)


def tiling_to_json(base: Polygon, words) -> dict:
    return {
        "base": polygon_to_json(base),
        "words": [list(w) for w in words],
    }


def tiling_from_json(doc):
    if not isinstance(doc, dict) or "base" not in doc or "words" not in doc:
        raise FormatError("tiling document needs 'base' and 'words'")
    base = polygon_from_json(doc["base"])
    words = [[int(s) for s in w] for w in doc["words"]]
    return base, words


# ---------------------------------------------------------------------------
# surfaces


def surface_to_json(M) -> dict:
    """Dump of an unfolded surface.  The polygon is authoritative for
    round-trips; the derived data is included for inspection."""
    return {
        "polygon": polygon_to_json(M.polygon),
        "N": M.N,
        "faces": [
            {
                "index": f.index,
                "map": {
                    "kind": f.gmap.kind,
                    "param": fraction_to_str(f.gmap.param),
                },
                "vertices": [
                    [cyc_to_json(v[0]), cyc_to_json(v[1])]
                    for v in f.vertices
                ],
            }
            for f in M.faces
        ],
        "pairing": {
            f"{fi},{p}": [fj, q] for (fi, p), (fj, q) in M.pairing.items()
        },
        "cone_points": [
            {
                "class_id": cp.class_id,
                "multiplicity": cp.multiplicity,
                "source_vertex": cp.source_vertex,
                "angle": fraction_to_str(cp.angle.multiple),
                "singular": cp.is_singular,
                "corners": sorted(list(c) for c in cp.corners),
            }
            for cp in M.cone_points()
        ],
        "genus": M.genus(),
    }


# ---------------------------------------------------------------------------
# atomic file output


def atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path: str, doc):
    atomic_write(path, json.dumps(doc, indent=2) + "\n")


def read_json(path: str):
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# SVG


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def svg_of_polygons(polygons, path: str, size: float = 640.0):
    """Render closed polygons (lists of float coordinate pairs) scaled
    into a square viewport, y axis pointing up."""
    xs = [p[0] for poly in polygons for p in poly]
    ys = [p[1] for poly in polygons for p in poly]
    if not xs:
        raise FormatError("nothing to draw")
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-9)
    margin = 0.05 * span
    scale = size / (span + 2 * margin)

    def tx(p):
        return (
            (p[0] - x0 + margin) * scale,
            size - (p[1] - y0 + margin) * scale,
        )

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{_fmt(size)}" height="{_fmt(size)}" '
        f'viewBox="0 0 {_fmt(size)} {_fmt(size)}">'
    ]
    fills = ("#dce6f2", "#f2e3dc")
    for i, poly in enumerate(polygons):
        pts = " ".join(
            f"{_fmt(q[0])},{_fmt(q[1])}" for q in (tx(p) for p in poly)
        )
        parts.append(
            f'<polygon points="{pts}" fill="{fills[i % 2]}" '
            f'stroke="#333333" stroke-width="1"/>'
        )
    parts.append("</svg>")
    atomic_write(path, "\n".join(parts) + "\n")


def face_outlines(M):
    """Float vertex loops for every face of an unfolded surface."""
    return [
        [(float(v[0]), float(v[1])) for v in f.vertices] for f in M.faces
    ]


def replay_copy_outlines(P: Polygon, words):
    """Float vertex loops of the copies a list of reflection words
    describes (each word reflects the current copy across one of its
    own sides, starting from the base copy)."""
    base = [(float(v[0]), float(v[1])) for v in P.vertices()]
    k = len(base)
    out = []
    for word in words:
        cur = list(base)
        for s in word:
            ax, ay = cur[s]
            bx, by = cur[(s + 1) % k]
            ux, uy = bx - ax, by - ay
            norm = math.hypot(ux, uy)
            ux, uy = ux / norm, uy / norm
            nxt = []
            for px, py in cur:
                wx, wy = px - ax, py - ay
                t = wx * ux + wy * uy
                nxt.append((ax + 2 * t * ux - wx, ay + 2 * t * uy - wy))
            cur = nxt
        out.append(cur)
    return out
