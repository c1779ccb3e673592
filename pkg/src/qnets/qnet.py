"""Q-net lattices, Laplace transformations, and degeneracy classification.

A Q-net is a map from a rectangular window of Z^2 into RP^n whose faces
are planar.  The forward Laplace transform intersects the two vertical
edge-lines of each face, the backward transform the two horizontal ones;
both shrink the window by one in each axis and keep the window origin, so
the mutual-inverse identity  L- L+ P (i,j) = P(i+1,j+1)  holds literally
on sites.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Literal, Mapping, Sequence

from .errors import DimensionMismatchError, DegenerateIntersectionError, GeometryError
from .projective import HPoint, Subspace, join, meet, transform_point

Direction = Literal["forward", "backward"]
Site = tuple[int, int]


@dataclass(frozen=True)
class GridDomain:
    """Inclusive index window [i_min..i_max] x [j_min..j_max]."""

    i_min: int
    i_max: int
    j_min: int
    j_max: int

    def __post_init__(self):
        if self.i_min > self.i_max or self.j_min > self.j_max:
            raise ValueError("empty grid domain")

    @property
    def width_i(self) -> int:
        """Number of quads along i (the a of a Sigma_{a,b} window)."""
        return self.i_max - self.i_min

    @property
    def width_j(self) -> int:
        return self.j_max - self.j_min

    def sites(self) -> Iterator[Site]:
        for j in range(self.j_min, self.j_max + 1):
            for i in range(self.i_min, self.i_max + 1):
                yield (i, j)

    def faces(self) -> Iterator[Site]:
        """Lower-left corners of the unit faces inside the window."""
        for j in range(self.j_min, self.j_max):
            for i in range(self.i_min, self.i_max):
                yield (i, j)

    def contains(self, site: Site) -> bool:
        i, j = site
        return self.i_min <= i <= self.i_max and self.j_min <= j <= self.j_max

    def shrunk(self) -> "GridDomain":
        """Window of a Laplace transform: one less quad in each axis,
        anchored at the same origin."""
        return GridDomain(self.i_min, self.i_max - 1, self.j_min, self.j_max - 1)

    def transposed(self) -> "GridDomain":
        return GridDomain(self.j_min, self.j_max, self.i_min, self.i_max)

    def sub(self, i_lo: int, i_hi: int, j_lo: int, j_hi: int) -> "GridDomain":
        if i_lo < self.i_min or i_hi > self.i_max or j_lo < self.j_min or j_hi > self.j_max:
            raise ValueError("subwindow leaves the domain")
        return GridDomain(i_lo, i_hi, j_lo, j_hi)


class QNet:
    """A finite window of projective points indexed by lattice sites.

    Construction checks shape and ambient dimension only; planarity and
    non-degeneracy are explicit predicates (validate_qnet,
    check_nondegenerate) so that defective nets can be represented and
    reported on.
    """

    __slots__ = ("domain", "ambient_dim", "_points")

    def __init__(self, domain: GridDomain, ambient_dim: int, points: Mapping[Site, HPoint]):
        missing = [s for s in domain.sites() if s not in points]
        if missing:
            raise ValueError("missing net points at %s" % (missing[:4],))
        for site in domain.sites():
            if points[site].ambient_dim != ambient_dim:
                raise DimensionMismatchError("point at %s has wrong ambient dimension" % (site,))
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "_points", {s: points[s] for s in domain.sites()})

    def point(self, i: int, j: int) -> HPoint:
        return self._points[(i, j)]

    def __getitem__(self, site: Site) -> HPoint:
        return self._points[site]

    def points(self) -> dict[Site, HPoint]:
        return dict(self._points)

    def transposed(self) -> "QNet":
        pts = {(j, i): p for (i, j), p in self._points.items()}
        return QNet(self.domain.transposed(), self.ambient_dim, pts)

    def restricted(self, domain: GridDomain) -> "QNet":
        return QNet(domain, self.ambient_dim, self._points)

    def with_point(self, site: Site, p: HPoint) -> "QNet":
        pts = dict(self._points)
        pts[site] = p
        return QNet(self.domain, self.ambient_dim, pts)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QNet)
            and self.domain == other.domain
            and self.ambient_dim == other.ambient_dim
            and self._points == other._points
        )

    def __repr__(self) -> str:
        d = self.domain
        return "QNet([%d..%d]x[%d..%d] in RP^%d)" % (
            d.i_min,
            d.i_max,
            d.j_min,
            d.j_max,
            self.ambient_dim,
        )

    def __setattr__(self, name, value):
        raise AttributeError("QNet is immutable")


@dataclass(frozen=True)
class DegeneracyReport:
    """Classification of a (possibly collapsed) iterated transform.

    kind 'laplace': constant across the transform direction's first index
    (a discrete curve); 'goursat': constant across the other index with no
    Laplace coincidence anywhere; 'mixed': Goursat-direction constancy
    with some Laplace coincidences; 'none' otherwise.  The witness is a
    pair of sites exhibiting the defining coincidence.
    """

    kind: Literal["none", "laplace", "goursat", "mixed"]
    direction: Direction
    witness: tuple[Site, Site] | None = None


@dataclass(frozen=True)
class TerminationReport:
    """Returned by laplace_iterate when the sequence stops early."""

    steps_completed: int
    requested: int
    direction: Direction
    report: DegeneracyReport
    last: QNet


def face_sites(face: Site) -> tuple[Site, Site, Site, Site]:
    i, j = face
    return ((i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1))


def validate_qnet(net: QNet) -> list[Site]:
    """Faces whose four points do not lie in a plane (empty list = Q-net)."""
    bad = []
    for face in net.domain.faces():
        pts = [net[s] for s in face_sites(face)]
        if join(pts).projective_dim > 2:
            bad.append(face)
    return bad


def check_nondegenerate(net: QNet) -> list[tuple]:
    """Violations of non-degeneracy.

    Returns ('edge', s, t) for coincident edge endpoints and
    ('triple', face, (s, t, u)) for a face vertex triple that does not
    span a plane.
    """
    violations: list[tuple] = []
    d = net.domain
    for (i, j) in d.sites():
        if i + 1 <= d.i_max and net[(i, j)] == net[(i + 1, j)]:
            violations.append(("edge", (i, j), (i + 1, j)))
        if j + 1 <= d.j_max and net[(i, j)] == net[(i, j + 1)]:
            violations.append(("edge", (i, j), (i, j + 1)))
    for face in d.faces():
        corners = face_sites(face)
        for skip in range(4):
            triple = tuple(s for k, s in enumerate(corners) if k != skip)
            if join([net[s] for s in triple]).projective_dim != 2:
                violations.append(("triple", face, triple))
    return violations


def net_span(net: QNet) -> Subspace:
    return join([net[s] for s in net.domain.sites()])


def check_extensive(net: QNet) -> bool:
    """True iff the net's points join an (a+b)-dimensional subspace."""
    target = net.domain.width_i + net.domain.width_j
    if net.ambient_dim < target:
        return False
    return net_span(net).projective_dim == target


def check_extensive_sub(net: QNet, c: int, d: int) -> bool:
    """True iff every Sigma_{c,d} subwindow of the net is extensive."""
    dom = net.domain
    if c > dom.width_i or d > dom.width_j:
        raise ValueError("subwindow larger than the domain")
    if net.ambient_dim < c + d:
        return False
    for i in range(dom.i_min, dom.i_max - c + 1):
        for j in range(dom.j_min, dom.j_max - d + 1):
            sub = net.restricted(dom.sub(i, i + c, j, j + d))
            if net_span(sub).projective_dim != c + d:
                return False
    return True


def _edge_line(net: QNet, s: Site, t: Site) -> Subspace:
    line = join([net[s], net[t]])
    if line.projective_dim != 1:
        raise GeometryError("edge %s-%s degenerates to a point" % (s, t))
    return line


def _face_transform_point(net: QNet, face: Site, direction: Direction) -> HPoint:
    i, j = face
    try:
        if direction == "forward":
            l1 = _edge_line(net, (i, j), (i, j + 1))
            l2 = _edge_line(net, (i + 1, j), (i + 1, j + 1))
        else:
            l1 = _edge_line(net, (i, j), (i + 1, j))
            l2 = _edge_line(net, (i, j + 1), (i + 1, j + 1))
    except GeometryError as exc:
        raise GeometryError(
            "Laplace %s transform undefined on face %s: %s" % (direction, face, exc)
        ) from exc
    pt = meet(l1, l2)
    if pt.projective_dim != 0:
        raise GeometryError(
            "Laplace %s transform undefined on face %s: edge lines do not meet in a point"
            % (direction, face)
        )
    return pt.point()


def transform_points(net: QNet, direction: Direction) -> dict[Site, HPoint]:
    """Per-face transform points, skipping faces where the meet fails.

    Used by the invariants module so that one-sided degeneracies still
    yield the computable half of the invariant field.
    """
    out: dict[Site, HPoint] = {}
    for face in net.domain.faces():
        try:
            out[face] = _face_transform_point(net, face, direction)
        except GeometryError:
            continue
    return out


def _laplace(net: QNet, direction: Direction) -> QNet:
    d = net.domain
    if d.width_i < 1 or d.width_j < 1:
        raise GeometryError("window has no faces to transform")
    pts = {face: _face_transform_point(net, face, direction) for face in d.faces()}
    return QNet(d.shrunk(), net.ambient_dim, pts)


def laplace_forward(net: QNet) -> QNet:
    """Forward Laplace transform: meet of the two vertical edge-lines of
    each face, on the window shrunk by one in each axis."""
    return _laplace(net, "forward")


def laplace_backward(net: QNet) -> QNet:
    """Backward Laplace transform: meet of the two horizontal edge-lines."""
    return _laplace(net, "backward")


def classify_degeneracy(net: QNet, direction: Direction) -> DegeneracyReport:
    """Classify a net reached by iterated transforms in the given direction.

    The direction is required input: constancy of the points alone cannot
    distinguish Laplace from Goursat degeneracy.  Laplace dominates: a net
    constant in both lattice directions is reported as 'laplace'.
    """
    if direction == "backward":
        rep = classify_degeneracy(net.transposed(), "forward")
        witness = None
        if rep.witness is not None:
            (a, b), (c, d) = rep.witness
            witness = ((b, a), (d, c))
        return DegeneracyReport(rep.kind, "backward", witness)

    d = net.domain
    laplace_witness: tuple[Site, Site] | None = None
    constant_in_i = True
    for j in range(d.j_min, d.j_max + 1):
        for i in range(d.i_min, d.i_max):
            if net[(i, j)] == net[(i + 1, j)]:
                if laplace_witness is None:
                    laplace_witness = ((i, j), (i + 1, j))
            else:
                constant_in_i = False
    if constant_in_i and d.width_i >= 1:
        return DegeneracyReport("laplace", "forward", laplace_witness)

    constant_in_j = d.width_j >= 1
    goursat_witness: tuple[Site, Site] | None = None
    for i in range(d.i_min, d.i_max + 1):
        for j in range(d.j_min, d.j_max):
            if net[(i, j)] == net[(i, j + 1)]:
                if goursat_witness is None:
                    goursat_witness = ((i, j), (i, j + 1))
            else:
                constant_in_j = False
    if constant_in_j:
        if laplace_witness is None:
            return DegeneracyReport("goursat", "forward", goursat_witness)
        return DegeneracyReport("mixed", "forward", laplace_witness)
    return DegeneracyReport("none", "forward", None)


def laplace_iterate(net: QNet, m: int) -> QNet | TerminationReport:
    """m-fold Laplace transform (forward for m > 0, backward for m < 0).

    Returns the transformed net, or a TerminationReport if some
    intermediate net is degenerate so that the next step is undefined.
    """
    steps = abs(m)
    d = net.domain
    if steps > min(d.width_i, d.width_j):
        raise ValueError("window too small for %d transform steps" % steps)
    direction: Direction = "forward" if m >= 0 else "backward"
    cur = net
    for k in range(steps):
        try:
            cur = _laplace(cur, direction)
        except GeometryError:
            report = classify_degeneracy(cur, direction)
            if report.kind == "none":
                witness = _first_failing_face(cur, direction)
                report = DegeneracyReport("none", direction, witness)
            return TerminationReport(k, steps, direction, report, cur)
    return cur


def _first_failing_face(net: QNet, direction: Direction) -> tuple[Site, Site] | None:
    for face in net.domain.faces():
        try:
            _face_transform_point(net, face, direction)
        except GeometryError:
            i, j = face
            return ((i, j), (i + 1, j + 1))
    return None


def parameter_space(net: QNet, axis: Literal["row", "column"], index: int) -> Subspace:
    """Join of a full row (fixed j) or column (fixed i) of net points."""
    d = net.domain
    if axis == "column":
        if not d.i_min <= index <= d.i_max:
            raise ValueError("column index %d out of range" % index)
        return join([net[(index, j)] for j in range(d.j_min, d.j_max + 1)])
    if axis == "row":
        if not d.j_min <= index <= d.j_max:
            raise ValueError("row index %d out of range" % index)
        return join([net[(i, index)] for i in range(d.i_min, d.i_max + 1)])
    raise ValueError("axis must be 'row' or 'column'")


def column_space_meet(net: QNet) -> Subspace:
    """Intersection of all column parameter spaces of the window."""
    d = net.domain
    result = parameter_space(net, "column", d.i_min)
    for i in range(d.i_min + 1, d.i_max + 1):
        result = meet(result, parameter_space(net, "column", i))
    return result


def explicit_laplace(net: QNet, m: int) -> HPoint:
    """The m-th forward transform at the window origin, computed directly
    as the meet of the column joins of a Sigma_{m,m} window.

    For extensive windows this equals laplace_iterate(net, m) at the
    origin site.  A higher-dimensional intersection is surfaced as
    DegenerateIntersectionError carrying the subspace.
    """
    d = net.domain
    if d.width_i != m or d.width_j != m:
        raise ValueError("explicit transform needs a Sigma_{m,m} window")
    cap = column_space_meet(net)
    if cap.projective_dim != 0:
        raise DegenerateIntersectionError(
            "column spaces meet in dimension %d" % cap.projective_dim,
            cap,
            cap.projective_dim,
        )
    return cap.point()


def diagonal_intersection_net(net: QNet) -> QNet:
    """Net of per-face meets of the two diagonals (window shrinks by one)."""
    d = net.domain
    if d.width_i < 1 or d.width_j < 1:
        raise GeometryError("window has no faces")
    pts: dict[Site, HPoint] = {}
    for face in d.faces():
        i, j = face
        d1 = _edge_line(net, (i, j), (i + 1, j + 1))
        d2 = _edge_line(net, (i + 1, j), (i, j + 1))
        x = meet(d1, d2)
        if x.projective_dim != 0:
            raise GeometryError("diagonals of face %s do not meet in a point" % (face,))
        pts[face] = x.point()
    return QNet(d.shrunk(), net.ambient_dim, pts)


def transform_net(matrix: Sequence[Sequence], net: QNet) -> QNet:
    """Apply a projective map (invertible matrix) to every net point."""
    pts = {s: transform_point(matrix, net[s]) for s in net.domain.sites()}
    return QNet(net.domain, net.ambient_dim, pts)
