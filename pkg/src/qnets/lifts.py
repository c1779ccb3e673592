"""Lifting Q-nets to extensive nets and the alternating-hyperplane quadric.

A Sigma_{a,b} net joining less than a+b dimensions inside RP^{a+b} can be
lifted through a central projection to an extensive net with the same
Laplace invariants: choose preimages freely along a staircase of sites so
that they span everything, then every other preimage is forced by the
face planes.

An extensive BS-Koenigs net is inscribed in a pair of distinct
hyperplanes, alternating with the parity of i+j; their union, viewed as
the rank-2 degenerate quadric u1 u2^T + u2 u1^T, drives the termination
arguments: the singular locus is the intersection of the two hyperplanes,
and conjugacy of opposite iterated transform points detects incidence of
the far corner.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ConstructionError,
    DimensionMismatchError,
    ExistenceError,
    GeneralPositionError,
    GeometryError,
    NotBSKoenigsError,
)
from .linalg import rank
from .projective import (
    HPoint,
    Quadric,
    Subspace,
    central_projection,
    join,
    meet,
    singular_locus,
)
from .qnet import (
    QNet,
    Site,
    TerminationReport,
    check_extensive,
    laplace_iterate,
    net_span,
)

RETRY_BUDGET = 64


@dataclass(frozen=True)
class LiftResult:
    """An extensive lift together with the projection that undoes it."""

    lifted: QNet
    center: Subspace
    screen: Subspace
    seed: int

    def project_point(self, p: HPoint) -> HPoint:
        if self.center.is_empty:
            return p
        return central_projection(p, self.center, self.screen)


@dataclass(frozen=True)
class HyperplanePair:
    """Two distinct hyperplanes and their union as a degenerate quadric."""

    u1: Subspace
    u2: Subspace
    quadric: Quadric


def _staircase(domain) -> list[Site]:
    sites = [(i, domain.j_min) for i in range(domain.i_min, domain.i_max + 1)]
    sites += [(domain.i_min, j) for j in range(domain.j_min + 1, domain.j_max + 1)]
    return sites


def _random_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9))


def lift(net: QNet, center: Subspace, seed: int) -> LiftResult:
    """Extensive lift of a net in RP^{a+b} through the given center.

    Free choices along the bottom row and left column are drawn by seeded
    rejection sampling that keeps the chosen points spanning; interior
    points are the forced meets with the already-lifted face planes.
    """
    d = net.domain
    m = d.width_i + d.width_j
    if net.ambient_dim != m:
        raise DimensionMismatchError(
            "lift expects the net in RP^%d (ambient is RP^%d)" % (m, net.ambient_dim)
        )
    screen = net_span(net)
    if screen.is_full:
        if not center.is_empty:
            raise GeometryError("an extensive net lifts only through the empty center")
        return LiftResult(net, center, screen, seed)
    if center.ambient_dim != m:
        raise DimensionMismatchError("center has wrong ambient dimension")
    if len(center.basis) + len(screen.basis) != m + 1 or not join([center, screen]).is_full:
        raise GeometryError("center is not supplementary to the net's span")

    rng = random.Random(seed)
    ncols = m + 1
    lifted: dict[Site, HPoint] = {}
    chosen_rows: list = []
    for site in _staircase(d):
        base = net[site].coords
        for _ in range(RETRY_BUDGET):
            vec = list(base)
            for crow in center.basis:
                lam = _random_fraction(rng)
                vec = [a + lam * b for a, b in zip(vec, crow)]
            if rank(chosen_rows + [vec], ncols) == len(chosen_rows) + 1:
                lifted[site] = HPoint(vec)
                chosen_rows.append(list(lifted[site].coords))
                break
        else:
            raise GeneralPositionError("no spanning lift choice at %s" % (site,))

    for j in range(d.j_min + 1, d.j_max + 1):
        for i in range(d.i_min + 1, d.i_max + 1):
            through = join([net[(i, j)], center])
            face = join([lifted[(i - 1, j - 1)], lifted[(i - 1, j)], lifted[(i, j - 1)]])
            pt = meet(through, face)
            if pt.projective_dim != 0:
                raise GeometryError("lift meet at %s is not a single point" % ((i, j),))
            lifted[(i, j)] = pt.point()

    out = QNet(d, m, lifted)
    if not check_extensive(out):
        raise GeneralPositionError("lifted net failed the extensivity check")
    return LiftResult(out, center, screen, seed)


def embed_net(net: QNet, ambient_dim: int) -> QNet:
    """Zero-pad coordinates to embed the net into a larger space."""
    if ambient_dim < net.ambient_dim:
        raise DimensionMismatchError("cannot embed into a smaller space")
    pad = (0,) * (ambient_dim - net.ambient_dim)
    pts = {s: HPoint(net[s].coords + pad) for s in net.domain.sites()}
    return QNet(net.domain, ambient_dim, pts)


def sample_supplementary(span: Subspace, seed: int) -> Subspace:
    """Seeded random rational subspace supplementary to the given one."""
    m = span.ambient_dim
    codim = m + 1 - len(span.basis)
    if codim == 0:
        return Subspace.empty(m)
    rng = random.Random(seed)
    for _ in range(RETRY_BUDGET):
        rows = [[Fraction(rng.randint(-9, 9)) for _ in range(m + 1)] for _ in range(codim)]
        cand = Subspace.from_rows(rows, m)
        if len(cand.basis) == codim and supplementary_pair(cand, span):
            return cand
    raise GeneralPositionError("could not sample a supplementary subspace")


def supplementary_pair(a: Subspace, b: Subspace) -> bool:
    return len(a.basis) + len(b.basis) == a.ambient_dim + 1 and join([a, b]).is_full


def embed_and_lift(net: QNet, seed: int) -> LiftResult:
    """Embed a net into RP^{a+b} and lift it through a sampled center.

    Plumbing around `lift`: the lift construction wants the net already in
    RP^{a+b} with a supplementary center; arbitrary inputs get there by
    zero-padding and seeded center sampling.
    """
    d = net.domain
    m = d.width_i + d.width_j
    if net.ambient_dim > m:
        raise DimensionMismatchError(
            "a Sigma_{%d,%d} net joins at most %d dimensions" % (d.width_i, d.width_j, m)
        )
    embedded = embed_net(net, m)
    center = sample_supplementary(net_span(embedded), seed ^ 0x5F5E5F)
    return lift(embedded, center, seed)


def koenigs_hyperplanes(net: QNet) -> HyperplanePair:
    """Alternating hyperplane pair of an extensive BS-Koenigs net.

    U1 is joined by the even-parity points of the two boundary strips, U2
    by the odd ones; every net point must lie in the hyperplane of its
    parity, otherwise the net is not BS-Koenigs and this raises.
    """
    d = net.domain
    m = d.width_i + d.width_j
    if net.ambient_dim != m or not check_extensive(net):
        raise GeometryError("hyperplane pair needs an extensive net in RP^{a+b}")
    groups: dict[int, list[HPoint]] = {0: [], 1: []}
    for (i, j) in d.sites():
        if min(i - d.i_min, j - d.j_min) < 2:
            groups[((i - d.i_min) + (j - d.j_min)) % 2].append(net[(i, j)])
    u1 = join(groups[0])
    u2 = join(groups[1])
    if u1.projective_dim != m - 1 or u2.projective_dim != m - 1 or u1 == u2:
        raise NotBSKoenigsError("strip points do not span two distinct hyperplanes")
    for (i, j) in d.sites():
        target = u1 if ((i - d.i_min) + (j - d.j_min)) % 2 == 0 else u2
        if not target.contains_point(net[(i, j)]):
            raise NotBSKoenigsError("point at %s misses its parity hyperplane" % ((i, j),))
    return HyperplanePair(u1, u2, hyperplane_pair_quadric(u1, u2))


def has_koenigs_hyperplanes(net: QNet) -> bool:
    """Predicate form of the hyperplane-pair construction (its existence
    characterizes BS-Koenigs among extensive nets)."""
    try:
        koenigs_hyperplanes(net)
    except NotBSKoenigsError:
        return False
    return True


def hyperplane_pair_quadric(u1: Subspace, u2: Subspace) -> Quadric:
    """The union of two hyperplanes as a rank-2 symmetric form."""
    if u1.projective_dim != u1.ambient_dim - 1 or u2.projective_dim != u2.ambient_dim - 1:
        raise GeometryError("quadric factors must be hyperplanes")
    n1 = _normal(u1)
    n2 = _normal(u2)
    size = u1.ambient_dim + 1
    form = [
        [n1[r] * n2[c] + n2[r] * n1[c] for c in range(size)] for r in range(size)
    ]
    return Quadric(form)


def _normal(hyperplane: Subspace) -> tuple[Fraction, ...]:
    from .linalg import nullspace

    rows = nullspace(hyperplane.basis, hyperplane.ambient_dim + 1)
    return rows[0]


def quadric_conjugacy_check(net: QNet, quadric: Quadric) -> bool:
    """Agreement check for the inscribed-net conjugacy equivalence.

    For a Sigma_{m,m} net with all points except possibly the far corner
    on the quadric, incidence of the far corner is equivalent to
    conjugacy of the two m-fold transform points at the origin.  Both
    sides are evaluated and their logical agreement returned; the
    equivalence itself is imported, not re-derived.
    """
    d = net.domain
    m = d.width_i
    if d.width_j != m:
        raise ValueError("conjugacy check needs a square Sigma_{m,m} window")
    corner = (d.i_max, d.j_max)
    for site in d.sites():
        if site != corner and not quadric.contains_point(net[site]):
            raise GeometryError("point at %s is off the quadric" % (site,))
    p_fwd = laplace_iterate(net, m)
    p_bwd = laplace_iterate(net, -m)
    if isinstance(p_fwd, TerminationReport) or isinstance(p_bwd, TerminationReport):
        raise ExistenceError("both m-fold transforms must exist")
    origin = (d.i_min, d.j_min)
    incident = quadric.contains_point(net[corner])
    conjugate = quadric.bilinear(p_fwd[origin], p_bwd[origin]) == 0
    return incident == conjugate


@dataclass(frozen=True)
class LineCheck:
    """One site of the singular-line equivalence: does the forward
    transform chord hit the singular locus exactly when the backward
    transform points coincide."""

    site: Site
    line_hits_singular: bool
    backward_coincide: bool

    @property
    def agree(self) -> bool:
        return self.line_hits_singular == self.backward_coincide


@dataclass
class SingularPointReport:
    m: int
    forward_nonsingular: bool | None
    backward_nonsingular: bool | None
    line_checks: list[LineCheck]
    skipped: list[str]

    @property
    def ok(self) -> bool:
        if self.forward_nonsingular is False or self.backward_nonsingular is False:
            return False
        return all(c.agree for c in self.line_checks)


def singular_point_checks(net: QNet, m: int | None = None) -> SingularPointReport:
    """Singular-point facts for an extensive BS-Koenigs lift.

    (a) the m-fold transform points in both directions avoid the singular
    locus of the alternating-hyperplane quadric; (b) per vertical pair of
    forward transform points, the chord meets the singular locus iff the
    corresponding backward transform points coincide.  Precondition
    failures are recorded as skipped checks, not errors.
    """
    d = net.domain
    if m is None:
        m = min(d.width_i, d.width_j)
    pair = koenigs_hyperplanes(net)
    locus = singular_locus(pair.quadric)
    skipped: list[str] = []

    def transform(k: int):
        res = laplace_iterate(net, k)
        if isinstance(res, TerminationReport):
            skipped.append(
                "P_%d missing: terminated at step %d (%s)"
                % (k, res.steps_completed, res.report.kind)
            )
            return None
        return res

    p_fwd = transform(m)
    p_bwd = transform(-m)

    def nonsingular(q: QNet | None) -> bool | None:
        if q is None:
            return None
        return all(not locus.contains_point(q[s]) for s in q.domain.sites())

    checks: list[LineCheck] = []
    if p_fwd is not None and p_bwd is not None:
        fd = p_fwd.domain
        for i in range(fd.i_min, fd.i_max + 1):
            for j in range(fd.j_min, fd.j_max):
                a, b = p_fwd[(i, j)], p_fwd[(i, j + 1)]
                if a == b:
                    skipped.append("forward points at (%d,%d)-(%d,%d) coincide" % (i, j, i, j + 1))
                    continue
                chord = join([a, b])
                hits = not meet(chord, locus).is_empty
                coincide = p_bwd[(i, j)] == p_bwd[(i, j + 1)]
                checks.append(LineCheck((i, j), hits, coincide))
    elif p_fwd is not None or p_bwd is not None:
        skipped.append("line checks need both transforms")

    return SingularPointReport(m, nonsingular(p_fwd), nonsingular(p_bwd), checks, skipped)
