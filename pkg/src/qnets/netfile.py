"""Net file format and exports.

A net file is a JSON document

    {"ambient_dim": n,
     "i_range": [i0, i1], "j_range": [j0, j1],
     "points": [[...], ...]}

where points[di][dj] holds the homogeneous coordinates of site
(i0+di, j0+dj), each coordinate an exact rational string "p/q" (or "p"),
an integer, or a decimal string that is rationalized exactly.  A null
entry marks a missing point (boundary data for the construct command).
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from typing import Union

from .construct import PartialNet
from .errors import GeneralPositionError, NetFileError
from .invariants import InvariantField
from .lifts import sample_supplementary
from .projective import HPoint, Subspace, central_projection, join
from .qnet import GridDomain, QNet


def parse_scalar(value: Union[str, int, float]) -> Fraction:
    try:
        if isinstance(value, bool):
            raise NetFileError("booleans are not coordinates")
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, float):
            return Fraction(repr(value))
        if isinstance(value, str):
            return Fraction(value.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise NetFileError("cannot parse coordinate %r" % (value,)) from exc
    raise NetFileError("cannot parse coordinate %r" % (value,))


def format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def net_to_dict(net: Union[QNet, PartialNet]) -> dict:
    d = net.domain
    if isinstance(net, QNet):
        getter = lambda s: net[s]
        has = lambda s: True
    else:
        getter = lambda s: net.points[s]
        has = lambda s: s in net.points
    rows = []
    for i in range(d.i_min, d.i_max + 1):
        row = []
        for j in range(d.j_min, d.j_max + 1):
            if has((i, j)):
                row.append([format_scalar(c) for c in getter((i, j)).coords])
            else:
                row.append(None)
        rows.append(row)
    return {
        "ambient_dim": net.ambient_dim,
        "i_range": [d.i_min, d.i_max],
        "j_range": [d.j_min, d.j_max],
        "points": rows,
    }


def net_from_dict(doc: dict) -> Union[QNet, PartialNet]:
    try:
        n = int(doc["ambient_dim"])
        i0, i1 = (int(x) for x in doc["i_range"])
        j0, j1 = (int(x) for x in doc["j_range"])
        rows = doc["points"]
    except (KeyError, TypeError, ValueError) as exc:
        raise NetFileError("malformed net document: %s" % exc) from exc
    try:
        domain = GridDomain(i0, i1, j0, j1)
    except ValueError as exc:
        raise NetFileError(str(exc)) from exc
    if len(rows) != i1 - i0 + 1 or any(len(r) != j1 - j0 + 1 for r in rows):
        raise NetFileError("points array shape does not match the ranges")
    points = {}
    for di, row in enumerate(rows):
        for dj, entry in enumerate(row):
            if entry is None:
                continue
            if len(entry) != n + 1:
                raise NetFileError(
                    "point at (%d,%d) has %d coordinates, expected %d"
                    % (i0 + di, j0 + dj, len(entry), n + 1)
                )
            coords = [parse_scalar(c) for c in entry]
            if all(c == 0 for c in coords):
                raise NetFileError("point at (%d,%d) is the zero vector" % (i0 + di, j0 + dj))
            points[(i0 + di, j0 + dj)] = HPoint(coords)
    partial = PartialNet(domain, n, points)
    if partial.is_complete():
        return partial.to_qnet()
    return partial


def write_net(path: str, net: Union[QNet, PartialNet]) -> None:
    with open(path, "w") as fh:
        json.dump(net_to_dict(net), fh, indent=1)
        fh.write("\n")


def read_net(path: str) -> Union[QNet, PartialNet]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise NetFileError("cannot read %s: %s" % (path, exc)) from exc
    return net_from_dict(doc)


def invariants_to_csv(field: InvariantField) -> str:
    lines = ["i,j,edge,value"]
    for (i, j), v in sorted(field.h.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        lines.append("%d,%d,H,%s" % (i, j, format_scalar(v)))
    for (i, j), v in sorted(field.k.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        lines.append("%d,%d,K,%s" % (i, j, format_scalar(v)))
    return "\n".join(lines) + "\n"


def net_to_csv(net: QNet) -> str:
    n = net.ambient_dim
    header = "i,j," + ",".join("x%d" % k for k in range(n + 1))
    lines = [header]
    for (i, j) in net.domain.sites():
        coords = ",".join(format_scalar(c) for c in net[(i, j)].coords)
        lines.append("%d,%d,%s" % (i, j, coords))
    return "\n".join(lines) + "\n"


def _to_three_space(net: QNet, seed: int) -> dict:
    """Representatives with exactly four coordinates, via zero-padding or a
    seeded central projection for higher-dimensional nets."""
    n = net.ambient_dim
    if n <= 3:
        pad = (Fraction(0),) * (3 - n)
        return {
            s: net[s].coords[:n] + pad + net[s].coords[n:] for s in net.domain.sites()
        }
    rng = random.Random(seed)
    for _ in range(32):
        rows = [[Fraction(rng.randint(-9, 9)) for _ in range(n + 1)] for _ in range(4)]
        screen = Subspace.from_rows(rows, n)
        if screen.projective_dim != 3:
            continue
        center = sample_supplementary(screen, rng.randrange(2**30))
        if any(center.contains_point(net[s]) for s in net.domain.sites()):
            continue
        out = {}
        for s in net.domain.sites():
            image = central_projection(net[s], center, screen)
            out[s] = screen.point_coords(image)
        return out
    raise GeneralPositionError("could not sample a projection to three-space")


def net_to_obj(net: QNet, seed: int) -> str:
    """Wavefront OBJ export: vertices in the affine chart of a seeded
    projection to three-space; sites on the ideal hyperplane are an error."""
    coords = _to_three_space(net, seed)
    d = net.domain
    lines = []
    index = {}
    for k, site in enumerate(d.sites()):
        x, y, z, w = coords[site]
        if w == 0:
            raise GeneralPositionError(
                "site (%d,%d) projects to the ideal hyperplane" % site
            )
        lines.append("v %s %s %s" % (float(x / w), float(y / w), float(z / w)))
        index[site] = k + 1
    for (i, j) in d.faces():
        lines.append(
            "f %d %d %d %d"
            % (index[(i, j)], index[(i + 1, j)], index[(i + 1, j + 1)], index[(i, j + 1)])
        )
    return "\n".join(lines) + "\n"
