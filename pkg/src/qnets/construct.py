"""Generators and boundary-data constructions.

Random non-degenerate Q-nets, nets with prescribed degenerations of the
first transform, BS-Koenigs extension from boundary strips, and the
unique completions with Laplace-degenerate m-fold transforms (one-sided
and symmetric).

All completions are computed in one extensive lift of the growing net:
admissible sets for a new corner point of a 3x3 window are generic only
upstairs (the face plane E meets the opposite-parity 3-space F in a line
there), and the completion subspaces all live inside the span of the
window's lifted points, where meets restrict exactly.  Unique completions
consume no randomness beyond the boundary; the lift's own free choices
use a fixed internal seed and never influence the projected result.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Mapping

from .errors import ConstructionError, GeneralPositionError, GeometryError
from .invariants import is_bs_koenigs
from .lifts import RETRY_BUDGET, sample_supplementary, supplementary_pair
from .projective import HPoint, INFINITY, Subspace, central_projection, join, meet
from .qnet import (
    GridDomain,
    QNet,
    Site,
    TerminationReport,
    check_nondegenerate,
    classify_degeneracy,
    laplace_iterate,
    validate_qnet,
)

_LIFT_SEED = 0x51ED15


def _derive(seed: int, salt: int) -> int:
    """Deterministic child seed (tuple seeds would go through randomized
    hashing)."""
    return (int(seed) * 1000003 + salt) & 0x7FFFFFFFFFFFFFFF


@dataclass
class PartialNet:
    """Boundary data: a target window with points on part of its sites."""

    domain: GridDomain
    ambient_dim: int
    points: dict[Site, HPoint] = field(default_factory=dict)

    def is_complete(self) -> bool:
        return all(s in self.points for s in self.domain.sites())

    def to_qnet(self) -> QNet:
        return QNet(self.domain, self.ambient_dim, self.points)

    def restricted_from(self, net: QNet, keep: Callable[[Site], bool]) -> None:
        for s in net.domain.sites():
            if keep(s):
                self.points[s] = net[s]


def affine_grid(a: int, b: int) -> QNet:
    """The planar net [i : j : 1] on [0..a] x [0..b]."""
    dom = GridDomain(0, a, 0, b)
    pts = {(i, j): HPoint((i, j, 1)) for (i, j) in dom.sites()}
    return QNet(dom, 2, pts)


def _rand_point(rng: random.Random, n: int) -> HPoint:
    while True:
        coords = [rng.randint(-9, 9) for _ in range(n + 1)]
        if any(coords):
            return HPoint(coords)


def _in_plane_point(rng: random.Random, p1: HPoint, p2: HPoint, p3: HPoint) -> HPoint:
    while True:
        c1, c2, c3 = (rng.randint(-9, 9) for _ in range(3))
        coords = [c1 * a + c2 * b + c3 * c for a, b, c in zip(p1.coords, p2.coords, p3.coords)]
        if any(x != 0 for x in coords):
            return HPoint(coords)


def _fill_ok(points: Mapping[Site, HPoint], domain: GridDomain, site: Site, cand: HPoint) -> bool:
    """Non-degeneracy of every edge and face triple completed by `cand`."""
    i, j = site
    for nb in ((i - 1, j), (i + 1, j), (i, j - 1), (i, j + 1)):
        if domain.contains(nb) and nb in points and points[nb] == cand:
            return False
    for fi in (i - 1, i):
        for fj in (j - 1, j):
            if not (domain.contains((fi, fj)) and domain.contains((fi + 1, fj + 1))):
                continue
            corners = ((fi, fj), (fi + 1, fj), (fi, fj + 1), (fi + 1, fj + 1))
            for triple in combinations(corners, 3):
                if site not in triple:
                    continue
                if all(s == site or s in points for s in triple):
                    pts = [cand if s == site else points[s] for s in triple]
                    if join(pts).projective_dim != 2:
                        return False
    return True


def _fill_sites(
    points: dict[Site, HPoint],
    domain: GridDomain,
    sites: list[Site],
    rng: random.Random,
    n: int,
) -> None:
    """Fill the given sites in order: free random points where no filled
    face plane constrains them, in-plane random points otherwise."""
    for site in sites:
        i, j = site
        preds = ((i - 1, j - 1), (i - 1, j), (i, j - 1))
        constrained = all(p in points for p in preds)
        for _ in range(RETRY_BUDGET):
            if constrained:
                cand = _in_plane_point(rng, *(points[p] for p in preds))
            else:
                cand = _rand_point(rng, n)
            if _fill_ok(points, domain, site, cand):
                points[site] = cand
                break
        else:
            raise GeneralPositionError("no valid random point at %s" % (site,))


def _first_transforms_generic(net: QNet) -> bool:
    """Both single transforms exist and are non-degenerate nets, so that
    the composites and second transforms are defined too."""
    if net.domain.width_i < 1 or net.domain.width_j < 1:
        return True
    from .qnet import laplace_backward, laplace_forward

    try:
        fwd = laplace_forward(net)
        bwd = laplace_backward(net)
    except GeometryError:
        return False
    return not check_nondegenerate(fwd) and not check_nondegenerate(bwd)


def random_qnet(a: int, b: int, n: int, seed: int) -> QNet:
    """Seeded random non-degenerate Q-net on [0..a] x [0..b] in RP^n.

    Small integer coordinates make exact local singularities of the first
    transforms possible, so seeds retry deterministically until both
    single transforms are themselves non-degenerate.
    """
    if n < 2:
        raise ValueError("ambient dimension must be at least 2")
    for attempt in range(16):
        rng = random.Random(_derive(seed, attempt))
        dom = GridDomain(0, a, 0, b)
        pts: dict[Site, HPoint] = {}
        try:
            _fill_sites(pts, dom, sorted(dom.sites(), key=lambda s: (s[1], s[0])), rng, n)
        except GeneralPositionError:
            continue
        net = QNet(dom, n, pts)
        if validate_qnet(net) or check_nondegenerate(net):
            continue
        if not _first_transforms_generic(net):
            continue
        return net
    raise GeneralPositionError("random net failed validation")


def random_laplace_degenerate_net(a: int, b: int, n: int, seed: int) -> QNet:
    """Random non-degenerate net whose forward transform collapses:
    consecutive rows are perspective from a common point, so all vertical
    edge-lines of a row of faces are concurrent."""
    if n < 2:
        raise ValueError("ambient dimension must be at least 2")
    for attempt in range(8):
        rng = random.Random(_derive(seed, attempt))
        dom = GridDomain(0, a, 0, b)
        pts: dict[Site, HPoint] = {}
        try:
            _fill_sites(pts, dom, [(i, 0) for i in range(a + 1)], rng, n)
            for j in range(b):
                center = _rand_point(rng, n)
                for i in range(a + 1):
                    base = pts[(i, j)]
                    placed = False
                    for _ in range(RETRY_BUDGET):
                        mu = Fraction(rng.randint(1, 9))
                        cand = HPoint([x + mu * z for x, z in zip(base.coords, center.coords)])
                        if cand != center and _fill_ok(pts, dom, (i, j + 1), cand):
                            pts[(i, j + 1)] = cand
                            placed = True
                            break
                    if not placed:
                        raise GeneralPositionError("no line point at %s" % ((i, j + 1),))
        except GeneralPositionError:
            continue
        net = QNet(dom, n, pts)
        if check_nondegenerate(net):
            continue
        fwd = laplace_iterate(net, 1)
        if isinstance(fwd, TerminationReport):
            continue
        if classify_degeneracy(fwd, "forward").kind == "laplace":
            return net
    raise GeneralPositionError("could not build a Laplace-degenerate instance")


def random_goursat_net(a: int, b: int, n: int, seed: int) -> QNet:
    """Random net whose first forward transform is Goursat degenerate.

    Columns lie on lines, consecutive lines intersect: every face is
    automatically planar, and the forward transform point of a face is the
    intersection of its two column lines, constant along the column.
    """
    if n < 2:
        raise ValueError("ambient dimension must be at least 2")
    for attempt in range(8):
        rng = random.Random(_derive(seed, attempt))
        dom = GridDomain(0, a, 0, b)
        pts: dict[Site, HPoint] = {}
        try:
            lines = [join([_rand_point(rng, n), _rand_point(rng, n)])]
            if lines[0].projective_dim != 1:
                continue
            for _ in range(a):
                apex = _point_on(lines[-1], rng)
                nxt = join([apex, _rand_point(rng, n)])
                if nxt.projective_dim != 1 or nxt == lines[-1]:
                    raise GeneralPositionError("degenerate column line")
                lines.append(nxt)
            for i in range(a + 1):
                for j in range(b + 1):
                    for _ in range(RETRY_BUDGET):
                        cand = _point_on(lines[i], rng)
                        if _fill_ok(pts, dom, (i, j), cand):
                            pts[(i, j)] = cand
                            break
                    else:
                        raise GeneralPositionError("no column point at %s" % ((i, j),))
        except GeneralPositionError:
            continue
        net = QNet(dom, n, pts)
        if check_nondegenerate(net):
            continue
        it = laplace_iterate(net, 1)
        if isinstance(it, TerminationReport):
            continue
        if classify_degeneracy(it, "forward").kind == "goursat":
            return net
    raise GeneralPositionError("could not build a Goursat-degenerate instance")


def _point_on(line: Subspace, rng: random.Random) -> HPoint:
    g1, g2 = line.basis
    while True:
        al, be = rng.randint(-9, 9), rng.randint(-9, 9)
        coords = [al * x + be * y for x, y in zip(g1, g2)]
        if any(c != 0 for c in coords):
            return HPoint(coords)


class _LiftContext:
    """A growing net kept together with an extensive lift of itself."""

    def __init__(self, boundary: PartialNet):
        dom = boundary.domain
        self.domain = dom
        self.n = boundary.ambient_dim
        self.big = dom.width_i + dom.width_j
        if self.n > self.big:
            raise ConstructionError(
                "ambient RP^%d exceeds the maximal joined dimension %d" % (self.n, self.big)
            )
        self.down: dict[Site, HPoint] = dict(boundary.points)
        pad = (0,) * (self.big - self.n)
        embedded = {s: HPoint(p.coords + pad) for s, p in self.down.items()}
        self.screen = join(list(embedded.values()))
        self.center = (
            Subspace.empty(self.big)
            if self.screen.is_full
            else sample_supplementary(self.screen, _LIFT_SEED)
        )
        self.up: dict[Site, HPoint] = {}
        rng = random.Random(_LIFT_SEED)
        staircase = {(i, dom.j_min) for i in range(dom.i_min, dom.i_max + 1)}
        staircase |= {(dom.i_min, j) for j in range(dom.j_min, dom.j_max + 1)}
        chosen: list[list[Fraction]] = []
        from .linalg import rank

        for site in sorted(boundary.points, key=lambda s: (s[1], s[0])):
            if self.center.is_empty:
                self.up[site] = embedded[site]
                continue
            if site in staircase:
                base = embedded[site].coords
                for _ in range(RETRY_BUDGET):
                    vec = list(base)
                    for crow in self.center.basis:
                        lam = Fraction(rng.randint(-9, 9))
                        vec = [x + lam * y for x, y in zip(vec, crow)]
                    if rank(chosen + [vec], self.big + 1) == len(chosen) + 1:
                        self.up[site] = HPoint(vec)
                        chosen.append(list(self.up[site].coords))
                        break
                else:
                    raise GeneralPositionError("no spanning lift choice at %s" % (site,))
            else:
                self.up[site] = self._forced_lift(site, embedded[site])

    def _forced_lift(self, site: Site, embedded_pt: HPoint) -> HPoint:
        i, j = site
        preds = ((i - 1, j - 1), (i - 1, j), (i, j - 1))
        if any(p not in self.up for p in preds):
            raise ConstructionError("boundary is not predecessor-closed at %s" % (site,), site)
        through = join([embedded_pt, self.center])
        face = join([self.up[p] for p in preds])
        pt = meet(through, face)
        if pt.projective_dim != 0:
            raise ConstructionError("lift meet at %s is not a point" % (site,), site)
        return pt.point()

    def project(self, up_pt: HPoint) -> HPoint:
        if self.center.is_empty:
            coords = up_pt.coords
        else:
            img = meet(join([up_pt, self.center]), self.screen)
            if img.projective_dim != 0:
                raise ConstructionError("lift point has no projection")
            coords = img.point().coords
        if any(c != 0 for c in coords[self.n + 1 :]):
            raise ConstructionError("projected point leaves the embedded space")
        return HPoint(coords[: self.n + 1])

    def add(self, site: Site, up_pt: HPoint, strict: bool = True) -> HPoint:
        """Register a new lifted point; returns its downstairs projection.

        With strict=True a non-degeneracy violation raises (unique
        completions cannot retry); otherwise the caller handles rejection.
        """
        down = self.project(up_pt)
        if not _fill_ok(self.down, self.domain, site, down) or not _fill_ok(
            self.up, self.domain, site, up_pt
        ):
            if strict:
                raise ConstructionError("completion at %s is degenerate" % (site,), site)
            raise _RejectChoice()
        self.down[site] = down
        self.up[site] = up_pt
        return down

    def net(self) -> QNet:
        return QNet(self.domain, self.n, self.down)


class _RejectChoice(Exception):
    pass


def _bs_line(ctx: _LiftContext, i: int, j: int) -> Subspace:
    """Admissible line for the top-right corner of the 3x3 window ending
    at (i,j): meet of the lifted face plane with the 3-space joined by the
    window's even-parity known points."""
    up = ctx.up
    e_plane = join([up[(i - 1, j - 1)], up[(i, j - 1)], up[(i - 1, j)]])
    if e_plane.projective_dim != 2:
        raise ConstructionError("degenerate face plane at %s" % ((i, j),), (i, j))
    f_space = join([up[(i - 2, j - 2)], up[(i - 1, j - 1)], up[(i, j - 2)], up[(i - 2, j)]])
    if f_space.projective_dim != 3:
        raise ConstructionError("degenerate diagonal 3-space at %s" % ((i, j),), (i, j))
    line = meet(e_plane, f_space)
    if line.projective_dim != 1:
        raise ConstructionError("admissible set at %s is not a line" % ((i, j),), (i, j))
    return line


def _line_point(line: Subspace, t) -> HPoint:
    g1, g2 = line.basis
    if t is INFINITY:
        return HPoint(g2)
    return HPoint([a + Fraction(t) * b for a, b in zip(g1, g2)])


def _up_forward_point(ctx: _LiftContext, i: int, j: int) -> HPoint:
    """Forward transform point of the lifted face (i,j)."""
    l1 = join([ctx.up[(i, j)], ctx.up[(i, j + 1)]])
    l2 = join([ctx.up[(i + 1, j)], ctx.up[(i + 1, j + 1)]])
    pt = meet(l1, l2)
    if pt.projective_dim != 0:
        raise ConstructionError("transform point of face %s undefined" % ((i, j),), (i, j))
    return pt.point()


def _require_sites(boundary: PartialNet, keep: Callable[[Site], bool], what: str) -> None:
    missing = [s for s in boundary.domain.sites() if keep(s) and s not in boundary.points]
    if missing:
        raise ConstructionError("%s boundary is missing %s" % (what, missing[:4]))


def validate_boundary(boundary: PartialNet) -> None:
    """Eager boundary checks: planarity and non-degeneracy of every fully
    given face, and the Koenigs product condition on every complete 3x3
    subwindow of the data."""
    pts = boundary.points
    dom = boundary.domain
    for face in dom.faces():
        corners = ((face[0], face[1]), (face[0] + 1, face[1]), (face[0], face[1] + 1), (face[0] + 1, face[1] + 1))
        present = [s for s in corners if s in pts]
        if len(present) == 4 and join([pts[s] for s in corners]).projective_dim > 2:
            raise ConstructionError("boundary face %s is not planar" % (face,), face)
        for s, t in combinations(present, 2):
            if abs(s[0] - t[0]) + abs(s[1] - t[1]) == 1 and pts[s] == pts[t]:
                raise ConstructionError("boundary edge %s-%s collapses" % (s, t), s)
        if len(present) >= 3:
            for triple in combinations(present, 3):
                if join([pts[s] for s in triple]).projective_dim != 2:
                    raise ConstructionError(
                        "boundary triple %s is collinear" % (triple,), triple[0]
                    )
    for p in range(dom.i_min, dom.i_max - 1):
        for q in range(dom.j_min, dom.j_max - 1):
            window = [(p + di, q + dj) for dj in range(3) for di in range(3)]
            if all(s in pts for s in window):
                sub = QNet(
                    GridDomain(p, p + 2, q, q + 2),
                    boundary.ambient_dim,
                    {s: pts[s] for s in window},
                )
                if not is_bs_koenigs(sub):
                    raise ConstructionError(
                        "boundary window at (%d,%d) violates the Koenigs condition" % (p, q),
                        (p, q),
                    )


def extend_bs_koenigs(
    boundary: PartialNet,
    seed: int | None = None,
    choices: Mapping[Site, Fraction] | None = None,
) -> QNet:
    """Complete boundary strips of width one to a BS-Koenigs net.

    Each missing point is chosen on the admissible line of its 3x3
    window, parametrized either by an explicit rational per site or by a
    seeded sample; every choice leaves one projective degree of freedom.
    """
    dom = boundary.domain
    _require_sites(
        boundary,
        lambda s: s[0] <= dom.i_min + 1 or s[1] <= dom.j_min + 1,
        "Koenigs strip",
    )
    validate_boundary(boundary)
    ctx = _LiftContext(boundary)
    rng = random.Random(seed if seed is not None else 0)
    for j in range(dom.j_min + 2, dom.j_max + 1):
        for i in range(dom.i_min + 2, dom.i_max + 1):
            if (i, j) in ctx.down:
                continue
            line = _bs_line(ctx, i, j)
            if choices is not None and (i, j) in choices:
                ctx.add((i, j), _line_point(line, choices[(i, j)]))
                continue
            for _ in range(RETRY_BUDGET):
                t = Fraction(rng.randint(-12, 12), rng.randint(1, 4))
                cand = _line_point(line, t)
                if ctx.center.contains_point(cand):
                    continue
                try:
                    ctx.add((i, j), cand, strict=False)
                    break
                except _RejectChoice:
                    continue
            else:
                raise GeneralPositionError("no admissible choice at %s" % ((i, j),))
    net = ctx.net()
    if not is_bs_koenigs(net):
        raise ConstructionError("extension failed the Koenigs product check")
    return net


def random_bs_strips(a: int, b: int, n: int, seed: int) -> PartialNet:
    """Random non-degenerate width-one strips as extension boundary data."""
    rng = random.Random(seed)
    dom = GridDomain(0, a, 0, b)
    pts: dict[Site, HPoint] = {}
    sites = [s for s in dom.sites() if s[0] <= 1 or s[1] <= 1]
    _fill_sites(pts, dom, sorted(sites, key=lambda s: (s[1], s[0])), rng, n)
    return PartialNet(dom, n, pts)


def random_bs_koenigs(a: int, b: int, n: int, seed: int) -> QNet:
    """Seeded random BS-Koenigs net (random strips + Koenigs extension)."""
    from .qnet import diagonal_intersection_net

    for attempt in range(8):
        try:
            strips = random_bs_strips(a, b, n, _derive(seed, attempt))
            net = extend_bs_koenigs(strips, seed=seed)
        except (ConstructionError, GeneralPositionError):
            continue
        if not _first_transforms_generic(net):
            continue
        if a >= 1 and b >= 1:
            try:
                if check_nondegenerate(diagonal_intersection_net(net)):
                    continue
            except GeometryError:
                continue
        return net
    raise GeneralPositionError("could not build a random Koenigs net (seed %r)" % seed)


def _forward_unique_fill(ctx: _LiftContext, i: int, j: int, m: int) -> None:
    """Fill (i,j) so the m-fold forward transform of the window ending
    there repeats its left neighbour: intersect the admissible line with
    the m-space joined by the window transform point and the new column."""
    p, q = i - m - 1, j - m
    up = ctx.up
    z = join([up[(p, l)] for l in range(q, q + m + 1)])
    for k in range(p + 1, p + m + 1):
        z = meet(z, join([up[(k, l)] for l in range(q, q + m + 1)]))
    if z.projective_dim != 0:
        raise ConstructionError(
            "window transform at (%d,%d) is not a point" % (p, q), (i, j)
        )
    q_space = join([z] + [Subspace.from_point(up[(i, l)]) for l in range(q, q + m)])
    if q_space.projective_dim != m:
        raise ConstructionError("degenerate constancy space at %s" % ((i, j),), (i, j))
    line = _bs_line(ctx, i, j)
    hit = meet(line, q_space)
    if hit.projective_dim != 0:
        raise ConstructionError("no unique completion at %s" % ((i, j),), (i, j))
    ctx.add((i, j), hit.point())


def _backward_unique_fill(ctx: _LiftContext, i: int, j: int, m: int) -> None:
    """Transposed variant: the m-fold backward transform of the window
    ending at (i,j) repeats its lower neighbour."""
    p, q = i - m, j - m - 1
    up = ctx.up
    z = join([up[(k, q)] for k in range(p, p + m + 1)])
    for l in range(q + 1, q + m + 1):
        z = meet(z, join([up[(k, l)] for k in range(p, p + m + 1)]))
    if z.projective_dim != 0:
        raise ConstructionError(
            "window transform at (%d,%d) is not a point" % (p, q), (i, j)
        )
    q_space = join([z] + [Subspace.from_point(up[(k, j)]) for k in range(p, p + m)])
    if q_space.projective_dim != m:
        raise ConstructionError("degenerate constancy space at %s" % ((i, j),), (i, j))
    line = _bs_line(ctx, i, j)
    hit = meet(line, q_space)
    if hit.projective_dim != 0:
        raise ConstructionError("no unique completion at %s" % ((i, j),), (i, j))
    ctx.add((i, j), hit.point())


def extend_laplace_degenerate(boundary: PartialNet, m: int) -> QNet:
    """Unique BS-Koenigs completion with Laplace-degenerate m-th transform.

    Boundary: columns i_min..i_min+m on all rows plus rows
    j_min..j_min+m-1 on all columns.  Requires m >= 2 (with a 2x2-quad
    window there is no Koenigs condition, so no admissible line exists
    for m = 1); consumes no randomness.
    """
    if m < 2:
        raise ValueError("unique completion needs m >= 2")
    dom = boundary.domain
    if dom.width_i < m + 1 or dom.width_j < m:
        raise ConstructionError("window too small for an m=%d completion" % m)
    _require_sites(
        boundary,
        lambda s: s[0] <= dom.i_min + m or s[1] <= dom.j_min + m - 1,
        "Laplace-degenerate",
    )
    validate_boundary(boundary)
    ctx = _LiftContext(boundary)
    for j in range(dom.j_min + m, dom.j_max + 1):
        for i in range(dom.i_min + m + 1, dom.i_max + 1):
            _forward_unique_fill(ctx, i, j, m)
    net = ctx.net()
    _verify_degenerate(net, m, "forward")
    if not is_bs_koenigs(net):
        raise ConstructionError("completion failed the Koenigs product check")
    return net


def _verify_degenerate(net: QNet, m: int, direction: str) -> None:
    steps = m if direction == "forward" else -m
    it = laplace_iterate(net, steps)
    if isinstance(it, TerminationReport):
        raise ConstructionError(
            "sequence terminated at step %d before the degenerate transform"
            % it.steps_completed
        )
    kind = classify_degeneracy(it, direction).kind
    if kind != "laplace":
        raise ConstructionError("transform %d classifies as %r, not laplace" % (steps, kind))


def construct_double_degenerate(boundary: PartialNet, m: int) -> QNet:
    """Unique BS-Koenigs completion with Laplace-degenerate m-th transform
    in both directions.

    For m >= 2 the boundary is the two width-(m-1) strips plus the single
    point (m,m); the corner sweep applies the forward completion along row
    m, the backward completion along column m, and forward completions in
    the interior, backward degeneracy then propagating by the coupling of
    the two directions.  The m = 1 case takes width-one strips and is a
    distinct path: both constancy constraints pin each new point as a
    two-line meet inside its face plane, and the result is automatically
    BS-Koenigs (verified, not assumed).
    """
    if m < 1:
        raise ValueError("m must be positive")
    dom = boundary.domain
    if m == 1:
        return _double_degenerate_m1(boundary)
    if dom.width_i < m + 1 or dom.width_j < m + 1:
        raise ConstructionError("window too small for a double m=%d completion" % m)
    origin = (dom.i_min + m, dom.j_min + m)
    _require_sites(
        boundary,
        lambda s: s[0] <= dom.i_min + m - 1 or s[1] <= dom.j_min + m - 1 or s == origin,
        "double-degenerate",
    )
    validate_boundary(boundary)
    ctx = _LiftContext(boundary)
    j0, i0 = dom.j_min, dom.i_min
    for i in range(i0 + m + 1, dom.i_max + 1):
        _forward_unique_fill(ctx, i, j0 + m, m)
    for j in range(j0 + m + 1, dom.j_max + 1):
        _backward_unique_fill(ctx, i0 + m, j, m)
        for i in range(i0 + m + 1, dom.i_max + 1):
            _forward_unique_fill(ctx, i, j, m)
    net = ctx.net()
    _verify_degenerate(net, m, "forward")
    _verify_degenerate(net, m, "backward")
    if not is_bs_koenigs(net):
        raise ConstructionError("completion failed the Koenigs product check")
    return net


def _down_transform_point(pts: Mapping[Site, HPoint], face: Site, direction: str) -> HPoint:
    i, j = face
    if direction == "forward":
        l1 = join([pts[(i, j)], pts[(i, j + 1)]])
        l2 = join([pts[(i + 1, j)], pts[(i + 1, j + 1)]])
    else:
        l1 = join([pts[(i, j)], pts[(i + 1, j)]])
        l2 = join([pts[(i, j + 1)], pts[(i + 1, j + 1)]])
    if l1.projective_dim != 1 or l2.projective_dim != 1:
        raise ConstructionError("degenerate edge line on face %s" % (face,), face)
    pt = meet(l1, l2)
    if pt.projective_dim != 0:
        raise ConstructionError("transform point of face %s undefined" % (face,), face)
    return pt.point()


def _double_degenerate_m1(boundary: PartialNet) -> QNet:
    dom = boundary.domain
    _require_sites(
        boundary,
        lambda s: s[0] <= dom.i_min + 1 or s[1] <= dom.j_min + 1,
        "double-degenerate strip",
    )
    validate_boundary(boundary)
    pts = dict(boundary.points)
    for j in range(dom.j_min + 2, dom.j_max + 1):
        for i in range(dom.i_min + 2, dom.i_max + 1):
            z_fwd = _down_transform_point(pts, (i - 2, j - 1), "forward")
            z_bwd = _down_transform_point(pts, (i - 1, j - 2), "backward")
            l1 = join([pts[(i, j - 1)], z_fwd])
            l2 = join([pts[(i - 1, j)], z_bwd])
            if l1.projective_dim != 1 or l2.projective_dim != 1:
                raise ConstructionError("degenerate constancy line at %s" % ((i, j),), (i, j))
            hit = meet(l1, l2)
            if hit.projective_dim != 0:
                raise ConstructionError("no unique completion at %s" % ((i, j),), (i, j))
            cand = hit.point()
            if not _fill_ok(pts, dom, (i, j), cand):
                raise ConstructionError("completion at %s is degenerate" % ((i, j),), (i, j))
            pts[(i, j)] = cand
    net = QNet(dom, boundary.ambient_dim, pts)
    _verify_degenerate(net, 1, "forward")
    _verify_degenerate(net, 1, "backward")
    if not is_bs_koenigs(net):
        raise ConstructionError("double m=1 net failed the Koenigs product check")
    return net


def bs_laplace_degenerate_m1(a: int, b: int, n: int, seed: int) -> QNet:
    """Random BS-Koenigs net with Laplace-degenerate first transform and
    generically non-degenerate backward sequence.

    Boundary: columns 0,1 and row 0.  Row 1 keeps one seeded free choice
    per quad on the line forcing the transform-point repetition; from row
    2 on, that line and the Koenigs line intersect in the unique point.
    """
    for attempt in range(8):
        try:
            return _bs_laplace_m1_attempt(a, b, n, _derive(seed, attempt))
        except (ConstructionError, GeneralPositionError):
            continue
    raise GeneralPositionError("could not build an m=1 degenerate Koenigs net")


def _bs_laplace_m1_attempt(a: int, b: int, n: int, seed: int) -> QNet:
    rng = random.Random(seed)
    dom = GridDomain(0, a, 0, b)
    pts: dict[Site, HPoint] = {}
    sites = [s for s in dom.sites() if s[0] <= 1 or s[1] == 0]
    _fill_sites(pts, dom, sorted(sites, key=lambda s: (s[1], s[0])), rng, n)
    boundary = PartialNet(dom, n, pts)
    validate_boundary(boundary)
    ctx = _LiftContext(boundary)
    for i in range(2, a + 1):
        z = _up_forward_point(ctx, i - 2, 0)
        line = join([ctx.up[(i, 0)], z])
        if line.projective_dim != 1:
            raise ConstructionError("degenerate constancy line at %s" % ((i, 1),), (i, 1))
        for _ in range(RETRY_BUDGET):
            cand = _line_point(line, Fraction(rng.randint(-12, 12), rng.randint(1, 4)))
            if ctx.center.contains_point(cand) or cand == z:
                continue
            try:
                ctx.add((i, 1), cand, strict=False)
                break
            except _RejectChoice:
                continue
        else:
            raise GeneralPositionError("no admissible row-1 choice at %s" % ((i, 1),))
    for j in range(2, b + 1):
        for i in range(2, a + 1):
            z = _up_forward_point(ctx, i - 2, j - 1)
            cline = join([ctx.up[(i, j - 1)], z])
            if cline.projective_dim != 1:
                raise ConstructionError("degenerate constancy line at %s" % ((i, j),), (i, j))
            hit = meet(cline, _bs_line(ctx, i, j))
            if hit.projective_dim != 0:
                raise ConstructionError("no unique completion at %s" % ((i, j),), (i, j))
            ctx.add((i, j), hit.point())
    net = ctx.net()
    _verify_degenerate(net, 1, "forward")
    if not is_bs_koenigs(net):
        raise ConstructionError("m=1 net failed the Koenigs product check")
    if min(a, b) >= 2 and isinstance(laplace_iterate(net, -2), TerminationReport):
        raise ConstructionError("backward sequence terminated before step 2")
    return net


def laplace_degenerate_boundary(m: int, a: int, b: int, n: int, seed: int) -> PartialNet:
    """Boundary strips for extend_laplace_degenerate, cut from a random
    BS-Koenigs net."""
    base = random_bs_koenigs(a, b, n, seed)
    out = PartialNet(base.domain, n)
    out.restricted_from(base, lambda s: s[0] <= m or s[1] <= m - 1)
    return out


def double_degenerate_boundary(m: int, a: int, b: int, n: int, seed: int) -> PartialNet:
    """Strips plus corner point for construct_double_degenerate.

    For m >= 2 the width-(m-1) strips of a random Koenigs net restrict
    nothing; for m = 1 the width-one strips already carry the constancy
    constraints (both strips must consist of quads perspective from one
    point each), so those are built directly.
    """
    if m == 1:
        return _double_m1_boundary(a, b, n, seed)
    base = random_bs_koenigs(a, b, n, seed)
    out = PartialNet(base.domain, n)
    out.restricted_from(base, lambda s: s[0] <= m - 1 or s[1] <= m - 1 or s == (m, m))
    return out


def _double_m1_boundary(a: int, b: int, n: int, seed: int) -> PartialNet:
    for attempt in range(8):
        rng = random.Random(_derive(seed, attempt))
        dom = GridDomain(0, a, 0, b)
        pts: dict[Site, HPoint] = {}
        try:
            _fill_sites(pts, dom, [(i, 0) for i in range(a + 1)], rng, n)
            z0 = _rand_point(rng, n)
            _fill_on_lines(pts, dom, [((i, 1), (i, 0)) for i in range(a + 1)], z0, rng)
            w_space = meet(
                join([pts[(0, 0)], pts[(1, 0)]]), join([pts[(0, 1)], pts[(1, 1)]])
            )
            if w_space.projective_dim != 0:
                continue
            w0 = w_space.point()
            _fill_sites(pts, dom, [(0, j) for j in range(2, b + 1)], rng, n)
            _fill_on_lines(pts, dom, [((1, j), (0, j)) for j in range(2, b + 1)], w0, rng)
        except GeneralPositionError:
            continue
        return PartialNet(dom, n, pts)
    raise GeneralPositionError("could not build consistent m=1 strips")


def _fill_on_lines(
    pts: dict[Site, HPoint],
    dom: GridDomain,
    targets: list[tuple[Site, Site]],
    apex: HPoint,
    rng: random.Random,
) -> None:
    """Place each target on the line through its base point and the apex."""
    for target, base_site in targets:
        base = pts[base_site]
        for _ in range(RETRY_BUDGET):
            mu = Fraction(rng.randint(1, 9), rng.randint(1, 4))
            cand = HPoint([x + mu * z for x, z in zip(base.coords, apex.coords)])
            if cand != apex and _fill_ok(pts, dom, target, cand):
                pts[target] = cand
                break
        else:
            raise GeneralPositionError("no line point at %s" % (target,))


def bs_goursat_net(m: int, a: int, b: int, seed: int) -> QNet:
    """Random BS-Koenigs net whose m-th forward transform is Goursat
    degenerate.

    Built from a net with Laplace-degenerate transform one step later: its
    extensive lift has every column space through the join of the constant
    transform points, and projecting from that join drops all column
    parameter spaces to dimension m while preserving the invariants.
    """
    if b < m + 2:
        raise ValueError("need at least m+2 rows of quads for the projection step")
    for attempt in range(8):
        try:
            return _bs_goursat_attempt(m, a, b, _derive(seed, attempt))
        except (ConstructionError, GeneralPositionError, GeometryError):
            continue
    raise GeneralPositionError("could not build a Goursat-degenerate Koenigs net")


def _bs_goursat_attempt(m: int, a: int, b: int, seed: int) -> QNet:
    rng = random.Random(seed)
    mp = m + 1
    boundary = laplace_degenerate_boundary(mp, a, b, 3, rng.randrange(2**30))
    base = extend_laplace_degenerate(boundary, mp)
    from .lifts import embed_and_lift

    lifted = embed_and_lift(base, rng.randrange(2**30)).lifted
    fwd = laplace_iterate(lifted, mp)
    if isinstance(fwd, TerminationReport):
        raise ConstructionError("lifted sequence terminated early")
    fd = fwd.domain
    zs = [fwd[(fd.i_min, j)] for j in range(fd.j_min, fd.j_max + 1)]
    center = join(zs)
    if center.projective_dim != b - m - 1:
        raise ConstructionError("constant transform points are not in general position")
    for s in lifted.domain.sites():
        if center.contains_point(lifted[s]):
            raise ConstructionError("net point falls into the projection center")
    screen = sample_supplementary(center, rng.randrange(2**30))
    if not supplementary_pair(center, screen):
        raise ConstructionError("projection screen is not supplementary")
    pts = {}
    for s in lifted.domain.sites():
        image = central_projection(lifted[s], center, screen)
        pts[s] = HPoint(screen.point_coords(image))
    net = QNet(lifted.domain, a + m, pts)
    if check_nondegenerate(net):
        raise ConstructionError("projected net is degenerate")
    it = laplace_iterate(net, m)
    if isinstance(it, TerminationReport):
        raise ConstructionError("forward sequence of the projected net terminated early")
    if classify_degeneracy(it, "forward").kind != "goursat":
        raise ConstructionError("projected transform is not Goursat degenerate")
    if not is_bs_koenigs(net):
        raise ConstructionError("projected net failed the Koenigs product check")
    return net
