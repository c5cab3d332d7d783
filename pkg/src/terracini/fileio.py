"""Curve, divisor and report files.

Curve and divisor files are JSON with all rational data carried as exact
"p/q" strings (plain integers are also accepted); any floating-point literal
is rejected. Reports share one structured schema across all commands and
serialize deterministically: identical inputs give byte-identical output.
The exact grammar is documented in docs/file-formats.md.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict
from fractions import Fraction

from . import __version__
from .curves import (
    Curve,
    CurvePoint,
    Divisor,
    HyperPoint,
    Hyperelliptic,
    NodalUnion,
    ParamValue,
    ParametricRational,
    PlaneImplicit,
    PlanePoint,
    ProjectivePoint,
    SpaceImplicit,
    SpacePoint,
    make_curve,
)
from .defects import TerraciniReport
from .errors import InputError
from .exprparse import format_rational, parse_rational


# ---------------------------------------------------------------------------
# reading
# ---------------------------------------------------------------------------

def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from exc
    try:
        data = json.loads(text, parse_float=_reject_float, parse_int=int)
    except json.JSONDecodeError as exc:
        raise InputError(
            "%s: line %d, column %d: %s" % (path, exc.lineno, exc.colno, exc.msg)
        ) from exc
    if not isinstance(data, dict):
        raise InputError("%s: expected a JSON object at the top level" % path)
    return data


def _reject_float(text: str):
    raise InputError("floating-point literal %r is not allowed; use p/q strings" % text)


def load_curve(path: str) -> tuple[Curve, str]:
    """Read a curve file; returns the curve and its declared or derived id."""
    data = _load_json(path)
    curve = make_curve(data)
    return curve, data.get("id", curve.label())


def parse_point(data: dict, component: int | None = None) -> CurvePoint:
    """Point literal: {"t": ...}, {"x": ..., "y": ...}, or {"coords": [...]}."""
    if not isinstance(data, dict):
        raise InputError("point literals must be objects, got %r" % (data,))
    comp = int(data.get("component", component or 0))
    if "t" in data:
        raw = data["t"]
        t = None if raw in (None, "inf") else parse_rational(str(raw))
        return ParamValue(t, component=comp)
    if "x" in data and "y" in data:
        return HyperPoint(
            parse_rational(str(data["x"])), parse_rational(str(data["y"])), component=comp
        )
    if "coords" in data:
        coords = [parse_rational(str(c)) for c in data["coords"]]
        point = ProjectivePoint(coords)
        if len(coords) == 3:
            return PlanePoint(point, component=comp)
        return SpacePoint(point, component=comp)
    raise InputError("unrecognized point literal: %r" % (data,))


def load_divisor(path: str) -> Divisor:
    data = _load_json(path)
    entries = data.get("entries")
    if not isinstance(entries, list):
        raise InputError("%s: divisor files need an 'entries' list" % path)
    parsed = []
    for entry in entries:
        point = parse_point(entry.get("point", entry))
        mult = int(entry.get("multiplicity", 1))
        parsed.append((point, mult))
    return Divisor(parsed)


def parse_points_option(text: str, curve: Curve) -> list[CurvePoint]:
    """Parse the --points command-line shorthand for the given curve type.

    Parametric curves take comma-separated parameter values ("0,1");
    hyperelliptic curves take semicolon-separated x,y pairs ("1,0;2,0");
    embedded curves take semicolon-separated homogeneous tuples.
    """
    text = text.strip()
    if isinstance(curve, ParametricRational):
        return [ParamValue(parse_rational(part)) for part in text.split(",") if part.strip()]
    if isinstance(curve, Hyperelliptic):
        points = []
        for chunk in text.split(";"):
            parts = [p for p in chunk.split(",") if p.strip()]
            if len(parts) != 2:
                raise InputError("expected x,y pairs separated by ';', got %r" % chunk)
            points.append(HyperPoint(parse_rational(parts[0]), parse_rational(parts[1])))
        return points
    points = []
    for chunk in text.split(";"):
        parts = [p for p in chunk.split(",") if p.strip()]
        coords = [parse_rational(p) for p in parts]
        pt = ProjectivePoint(coords)
        points.append(PlanePoint(pt) if len(coords) == 3 else SpacePoint(pt))
    return points


# ---------------------------------------------------------------------------
# writing
# ---------------------------------------------------------------------------

def point_to_json(point: CurvePoint) -> dict:
    if isinstance(point, ParamValue):
        data = {"t": "inf" if point.t is None else format_rational(point.t)}
    elif isinstance(point, HyperPoint):
        data = {"x": format_rational(point.x), "y": format_rational(point.y)}
    else:
        data = {"coords": [format_rational(c) for c in point.point.coords]}
    if point.component:
        data["component"] = point.component
    return data


def divisor_to_json(divisor: Divisor) -> list:
    return [
        {"point": point_to_json(p), "multiplicity": m} for p, m in divisor
    ]


def curve_to_json(curve: Curve, curve_id: str | None = None) -> dict:
    if isinstance(curve, ParametricRational):
        data = {
            "type": "parametric",
            "r": curve.r,
            "degree": curve.degree,
            "coords": [p.to_string("t") for p in curve.coords],
        }
    elif isinstance(curve, PlaneImplicit):
        data = {"type": "plane", "degree": curve.degree, "F": curve.f.to_string()}
    elif isinstance(curve, Hyperelliptic):
        data = {"type": "hyperelliptic", "genus": curve.genus, "f": curve.f.to_string("x")}
    elif isinstance(curve, SpaceImplicit):
        data = {"type": "space", "r": curve.r, "polys": [p.to_string() for p in curve.polys]}
    elif isinstance(curve, NodalUnion):
        data = {
            "type": "nodal_union",
            "components": [curve_to_json(c) for c in curve.components],
        }
    else:
        raise InputError("cannot serialize %r" % (curve,))
    if curve_id:
        data["id"] = curve_id
    return data


def report_to_json(report: TerraciniReport) -> dict:
    return asdict(report)


def input_digest(*parts: str) -> str:
    digest = hashlib.sha256()
    for part in parts:
        digest.update(part.encode("utf-8"))
        digest.update(b"\x1f")
    return digest.hexdigest()


def render_document(payload: dict, digest_parts: tuple[str, ...] = ()) -> str:
    """Deterministic report document shared by every command."""
    document = {
        "tool": {"name": "terracini", "version": __version__},
        "digest": input_digest(*digest_parts) if digest_parts else input_digest(),
    }
    document.update(payload)
    return json.dumps(document, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (ParamValue, PlanePoint, HyperPoint, SpacePoint)):
        return point_to_json(value)
    if isinstance(value, ProjectivePoint):
        return [format_rational(c) for c in value.coords]
    if isinstance(value, Divisor):
        return divisor_to_json(value)
    if isinstance(value, TerraciniReport):
        return report_to_json(value)
    raise TypeError("cannot serialize %r" % (value,))
