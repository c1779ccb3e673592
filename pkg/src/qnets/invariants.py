"""Laplace invariants and the Koenigs-net predicates.

The invariant H(i,j) is the cross-ratio of a point, its forward transform
point, the vertical neighbour, and the left forward transform point; it
sits on the vertical edge (i,j)-(i,j+1).  K(i,j) is the backward
counterpart on the horizontal edge (i,j)-(i+1,j):

    H(i,j) = cr(P(i,j), L+P(i,j),  P(i,j+1), L+P(i-1,j))
    K(i,j) = cr(P(i,j), L-P(i,j),  P(i+1,j), L-P(i,j-1))

Under one transform step the two families shift into each other, and the
H-layers satisfy the rational recurrence

    H_1(i,j) = H_-1(i,j)^-1 * (1-H(i+1,j))/(1-H(i,j)^-1)
                            * (1-H(i,j+1))/(1-H(i+1,j+1)^-1),

a Y-system: the same mutation run backwards gives the K recurrence.

A net is BS-Koenigs when H(i,j) H(i,j+1) = K(i,j+1) K(i-1,j+1) at every
site, D-Koenigs when H(i,j) H(i+1,j) = K(i,j) K(i,j+1); both products are
checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import (
    ExistenceError,
    GeometryError,
    InvariantError,
    RecurrenceSingularError,
    UndefinedCrossRatioError,
)
from .linalg import det
from .projective import INFINITY, HPoint, cross_ratio, join
from .qnet import (
    GridDomain,
    QNet,
    Site,
    TerminationReport,
    diagonal_intersection_net,
    laplace_iterate,
    transform_points,
)

Layer = Mapping[Site, Fraction]


@dataclass
class InvariantField:
    """Edge-indexed Laplace invariants of a net.

    h[(i,j)] lives on the vertical edge (i,j)-(i,j+1), k[(i,j)] on the
    horizontal edge (i,j)-(i+1,j); both are partial near the window
    boundary where the flanking transform points do not exist.
    """

    domain: GridDomain
    h: dict[Site, Fraction] = field(default_factory=dict)
    k: dict[Site, Fraction] = field(default_factory=dict)


def _ratio(edge: Site, kind: str, pts) -> Fraction:
    try:
        value = cross_ratio(*pts)
    except (GeometryError, UndefinedCrossRatioError) as exc:
        raise InvariantError("%s%s undefined: %s" % (kind, edge, exc), edge) from exc
    if value is INFINITY:
        raise InvariantError("%s%s is infinite (degenerate net)" % (kind, edge), edge)
    return value


def laplace_invariants(net: QNet) -> InvariantField:
    """Both invariant families, on every edge where they are defined."""
    d = net.domain
    out = InvariantField(d)
    if d.width_i < 1 or d.width_j < 1:
        return out
    fwd = transform_points(net, "forward")
    bwd = transform_points(net, "backward")
    for i in range(d.i_min + 1, d.i_max):
        for j in range(d.j_min, d.j_max):
            if (i, j) in fwd and (i - 1, j) in fwd:
                out.h[(i, j)] = _ratio(
                    (i, j),
                    "H",
                    (net[(i, j)], fwd[(i, j)], net[(i, j + 1)], fwd[(i - 1, j)]),
                )
    for i in range(d.i_min, d.i_max):
        for j in range(d.j_min + 1, d.j_max):
            if (i, j) in bwd and (i, j - 1) in bwd:
                out.k[(i, j)] = _ratio(
                    (i, j),
                    "K",
                    (net[(i, j)], bwd[(i, j)], net[(i + 1, j)], bwd[(i, j - 1)]),
                )
    return out


def hk_shift_check(net: QNet) -> bool:
    """Shift identities tying the two families across one transform step:

    K_1(i,j) = H(i+1,j)  and  H_-1(i,j) = K(i,j+1),

    checked exactly wherever both sides exist.
    """
    cur = laplace_invariants(net)
    fwd = laplace_iterate(net, 1)
    bwd = laplace_iterate(net, -1)
    if isinstance(fwd, TerminationReport) or isinstance(bwd, TerminationReport):
        raise ExistenceError("both single transforms must exist for the shift check")
    k1 = laplace_invariants(fwd).k
    hm1 = laplace_invariants(bwd).h
    for site, value in k1.items():
        i, j = site
        other = cur.h.get((i + 1, j))
        if other is not None and value != other:
            return False
    for site, value in hm1.items():
        i, j = site
        other = cur.k.get((i, j + 1))
        if other is not None and value != other:
            return False
    return True


def _mutation(prev: Fraction, h00: Fraction, h10: Fraction, h01: Fraction, h11: Fraction, site: Site) -> Fraction:
    for name, value in (("previous layer", prev), ("H", h00), ("H", h10), ("H", h01), ("H", h11)):
        if value == 0:
            raise RecurrenceSingularError("%s value 0 at %s" % (name, site), site)
        if value == 1 and name != "previous layer":
            raise RecurrenceSingularError("invariant equals 1 at %s" % (site,), site)
    return (1 / prev) * ((1 - h10) / (1 - 1 / h00)) * ((1 - h01) / (1 - 1 / h11))


def recurrence_step(h_prev: Layer, h_cur: Layer, site: Site) -> Fraction:
    """Next H-layer value at a site from the current and previous layers.

    Singular exactly when a referenced value is 0 or a current-layer value
    is 1 (the algebraic shadow of sequence termination).
    """
    i, j = site
    try:
        prev = h_prev[(i, j)]
        h00 = h_cur[(i, j)]
        h10 = h_cur[(i + 1, j)]
        h01 = h_cur[(i, j + 1)]
        h11 = h_cur[(i + 1, j + 1)]
    except KeyError as exc:
        raise ExistenceError("missing invariant value near %s" % (site,)) from exc
    return _mutation(prev, h00, h10, h01, h11, site)


def recurrence_step_from_k(k_cur: Layer, h_cur: Layer, site: Site) -> Fraction:
    """H_1(i,j) with the previous layer read off as K(i,j+1)."""
    i, j = site
    try:
        prev = k_cur[(i, j + 1)]
    except KeyError as exc:
        raise ExistenceError("missing K value at %s" % ((i, j + 1),)) from exc
    return _mutation(
        prev,
        _need(h_cur, (i, j)),
        _need(h_cur, (i + 1, j)),
        _need(h_cur, (i, j + 1)),
        _need(h_cur, (i + 1, j + 1)),
        site,
    )


def recurrence_step_backward(k_cur: Layer, h_cur: Layer, site: Site) -> Fraction:
    """K_-1(i,j), the mirror recurrence with H(i+1,j) as previous layer."""
    i, j = site
    try:
        prev = h_cur[(i + 1, j)]
    except KeyError as exc:
        raise ExistenceError("missing H value at %s" % ((i + 1, j),)) from exc
    return _mutation(
        prev,
        _need(k_cur, (i, j)),
        _need(k_cur, (i, j + 1)),
        _need(k_cur, (i + 1, j)),
        _need(k_cur, (i + 1, j + 1)),
        site,
    )


def _need(layer: Layer, site: Site) -> Fraction:
    try:
        return layer[site]
    except KeyError as exc:
        raise ExistenceError("missing invariant value at %s" % (site,)) from exc


def bs_koenigs_sites(field_: InvariantField) -> list[Site]:
    d = field_.domain
    return [
        (i, j)
        for i in range(d.i_min + 1, d.i_max)
        for j in range(d.j_min, d.j_max - 1)
        if (i, j) in field_.h
        and (i, j + 1) in field_.h
        and (i, j + 1) in field_.k
        and (i - 1, j + 1) in field_.k
    ]


def is_bs_koenigs(net: QNet) -> bool:
    """H(i,j) H(i,j+1) = K(i,j+1) K(i-1,j+1) at every applicable site."""
    f = laplace_invariants(net)
    return all(
        f.h[(i, j)] * f.h[(i, j + 1)] == f.k[(i, j + 1)] * f.k[(i - 1, j + 1)]
        for (i, j) in bs_koenigs_sites(f)
    )


def d_koenigs_sites(field_: InvariantField) -> list[Site]:
    d = field_.domain
    return [
        (i, j)
        for i in range(d.i_min + 1, d.i_max - 1)
        for j in range(d.j_min + 1, d.j_max - 1)
        if (i, j) in field_.h
        and (i + 1, j) in field_.h
        and (i, j) in field_.k
        and (i, j + 1) in field_.k
    ]


def is_d_koenigs(net: QNet) -> bool:
    """H(i,j) H(i+1,j) = K(i,j) K(i,j+1) at every applicable site."""
    f = laplace_invariants(net)
    return all(
        f.h[(i, j)] * f.h[(i + 1, j)] == f.k[(i, j)] * f.k[(i, j + 1)]
        for (i, j) in d_koenigs_sites(f)
    )


def six_point_conic_check(net: QNet, site: Site) -> bool:
    """Conic test behind the D-Koenigs condition.

    The six transform points around a face, three forward and three
    backward, all lie in the face plane; they lie on a common conic iff
    the 6x6 coefficient determinant vanishes.  The plane is normalized to
    its pivot chart before the system is built, so the determinant is
    deterministic.
    """
    i, j = site
    fwd = transform_points(net, "forward")
    bwd = transform_points(net, "backward")
    needed_f = [(i - 1, j), (i, j), (i + 1, j)]
    needed_b = [(i, j - 1), (i, j), (i, j + 1)]
    if any(s not in fwd for s in needed_f) or any(s not in bwd for s in needed_b):
        raise ExistenceError("transform points around %s do not all exist" % (site,))
    six = [fwd[s] for s in needed_f] + [bwd[s] for s in needed_b]
    plane = join(six)
    if plane.projective_dim != 2:
        raise GeometryError("the six points around %s do not span a plane" % (site,))
    rows = []
    for p in six:
        u, v, w = plane.point_coords(p)
        rows.append((u * u, u * v, u * w, v * v, v * w, w * w))
    return det(rows) == 0


def invariant_symmetry_check(net: QNet, m: int) -> bool:
    """Invariant symmetry between a BS-Koenigs net and its diagonal net:

    H^P_m(i+1,j) = K^D_-m(i,j)   and   H^D_m(i,j) = K^P_-m(i,j+1),

    verified exactly at every site where both sides exist.
    """
    ok, checked = invariant_symmetry_details(net, m)
    return ok


def invariant_symmetry_details(net: QNet, m: int) -> tuple[bool, int]:
    try:
        dnet = diagonal_intersection_net(net)
    except GeometryError as exc:
        raise ExistenceError("diagonal intersection net undefined: %s" % exc) from exc
    p_fwd = _existing(laplace_iterate(net, m), "P_%d" % m)
    p_bwd = _existing(laplace_iterate(net, -m), "P_%d" % (-m,))
    d_fwd = _existing(laplace_iterate(dnet, m), "D_%d" % m)
    d_bwd = _existing(laplace_iterate(dnet, -m), "D_%d" % (-m,))
    h_p = laplace_invariants(p_fwd).h
    k_d = laplace_invariants(d_bwd).k
    h_d = laplace_invariants(d_fwd).h
    k_p = laplace_invariants(p_bwd).k
    checked = 0
    for (i, j), value in k_d.items():
        other = h_p.get((i + 1, j))
        if other is not None:
            checked += 1
            if other != value:
                return False, checked
    for (i, j), value in h_d.items():
        other = k_p.get((i, j + 1))
        if other is not None:
            checked += 1
            if other != value:
                return False, checked
    return True, checked


def _existing(result: QNet | TerminationReport, label: str) -> QNet:
    if isinstance(result, TerminationReport):
        raise ExistenceError(
            "%s does not exist: sequence terminates at step %d (%s)"
            % (label, result.steps_completed, result.report.kind)
        )
    return result
