"""Seeded property suites behind the `verify` CLI command.

Each suite runs a family of exact checks over seeded random instances and
reports pass/fail counts per property.  Everything is deterministic for a
fixed seed count.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import construct
from .errors import QnetsError
from .invariants import (
    invariant_symmetry_check,
    laplace_invariants,
    recurrence_step_from_k,
)
from .lifts import embed_and_lift, koenigs_hyperplanes, quadric_conjugacy_check, singular_point_checks
from .qnet import (
    QNet,
    TerminationReport,
    classify_degeneracy,
    diagonal_intersection_net,
    laplace_iterate,
)


@dataclass
class PropertyResult:
    name: str
    passed: int = 0
    failed: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, label: str) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(label)

    @property
    def total(self) -> int:
        return self.passed + self.failed


def _run(result: PropertyResult, label: str, check) -> None:
    try:
        result.record(bool(check()), label)
    except QnetsError as exc:
        result.failed += 1
        result.failures.append("%s: %s" % (label, exc))


def suite_recurrence(seeds: int) -> list[PropertyResult]:
    geometry = PropertyResult("recurrence/matches-geometric-field")
    shifts = PropertyResult("recurrence/shift-identities")
    for s in range(seeds):
        def check_geometry(s=s):
            net = construct.random_qnet(3, 3, 3, s)
            f = laplace_invariants(net)
            fwd = laplace_iterate(net, 1)
            if isinstance(fwd, TerminationReport):
                return False
            h1 = laplace_invariants(fwd).h
            sites = [
                site
                for site in h1
                if all(
                    k in f.h
                    for k in (site, (site[0] + 1, site[1]), (site[0], site[1] + 1), (site[0] + 1, site[1] + 1))
                )
                and (site[0], site[1] + 1) in f.k
            ]
            if not sites:
                return False
            return all(recurrence_step_from_k(f.k, f.h, site) == h1[site] for site in sites)

        _run(geometry, "seed %d" % s, check_geometry)

        def check_shifts(s=s):
            from .invariants import hk_shift_check

            return hk_shift_check(construct.random_qnet(3, 3, 3, s))

        _run(shifts, "seed %d" % s, check_shifts)
    return [geometry, shifts]


def _is_backward_laplace(net: QNet, steps: int) -> bool:
    it = laplace_iterate(net, -steps)
    if isinstance(it, TerminationReport):
        return False
    return classify_degeneracy(it, "backward").kind == "laplace"


def suite_termination(seeds: int) -> list[PropertyResult]:
    results = []
    cases = [
        ("termination/laplace-m1-backward-m2", lambda s: _is_backward_laplace(construct.bs_laplace_degenerate_m1(3, 3, 3, s), 2)),
        ("termination/laplace-m2-backward-m3", lambda s: _is_backward_laplace(construct.extend_laplace_degenerate(construct.laplace_degenerate_boundary(2, 3, 4, 3, s), 2), 3)),
        ("termination/laplace-m3-backward-m4", lambda s: _is_backward_laplace(construct.extend_laplace_degenerate(construct.laplace_degenerate_boundary(3, 4, 5, 3, s), 3), 4)),
        ("termination/goursat-m1-backward-m3", lambda s: _is_backward_laplace(construct.bs_goursat_net(1, 3, 4, s), 3)),
        ("termination/goursat-m2-backward-m4", lambda s: _is_backward_laplace(construct.bs_goursat_net(2, 4, 5, s), 4)),
        ("termination/double-m2", lambda s: _double_ok(construct.construct_double_degenerate(construct.double_degenerate_boundary(2, 3, 3, 3, s), 2), 2)),
        ("termination/double-m3", lambda s: _double_ok(construct.construct_double_degenerate(construct.double_degenerate_boundary(3, 4, 4, 3, s), 3), 3)),
    ]
    for name, check in cases:
        res = PropertyResult(name)
        for s in range(seeds):
            _run(res, "seed %d" % s, lambda s=s, check=check: check(s))
        results.append(res)

    generic = PropertyResult("termination/generic-m2-not-doubly-degenerate")
    hits = 0
    for s in range(seeds):
        try:
            net = construct.extend_laplace_degenerate(
                construct.laplace_degenerate_boundary(2, 3, 4, 3, s), 2
            )
            if not _is_backward_laplace(net, 2):
                hits += 1
        except QnetsError:
            pass
    generic.record(hits >= seeds - 1, "%d/%d generic" % (hits, seeds))
    results.append(generic)
    return results


def _double_ok(net: QNet, m: int) -> bool:
    fwd = laplace_iterate(net, m)
    bwd = laplace_iterate(net, -m)
    if isinstance(fwd, TerminationReport) or isinstance(bwd, TerminationReport):
        return False
    return (
        classify_degeneracy(fwd, "forward").kind == "laplace"
        and classify_degeneracy(bwd, "backward").kind == "laplace"
    )


def suite_symmetry(seeds: int) -> list[PropertyResult]:
    sym0 = PropertyResult("symmetry/invariants-m0")
    sym1 = PropertyResult("symmetry/invariants-m1")
    coupling = PropertyResult("symmetry/forward-P-backward-D-coupling")
    pointid = PropertyResult("symmetry/backward-point-identity")
    for s in range(seeds):
        _run(sym0, "seed %d" % s, lambda s=s: invariant_symmetry_check(construct.random_bs_koenigs(3, 3, 3, s), 0))
        _run(sym1, "seed %d" % s, lambda s=s: invariant_symmetry_check(construct.random_bs_koenigs(4, 4, 3, s), 1))

        def check_coupling(s=s, want_points=False):
            net = construct.extend_laplace_degenerate(
                construct.laplace_degenerate_boundary(2, 3, 4, 3, s), 2
            )
            dnet = diagonal_intersection_net(net)
            d_b = laplace_iterate(dnet, -2)
            if isinstance(d_b, TerminationReport):
                return False
            if classify_degeneracy(d_b, "backward").kind != "laplace":
                return False
            if not want_points:
                return True
            p_b = laplace_iterate(net, -3)
            if isinstance(p_b, TerminationReport):
                return False
            pd = p_b.domain
            return all(
                p_b[(i, pd.j_min)] == d_b[(i, pd.j_min)] for i in range(pd.i_min, pd.i_max + 1)
            )

        _run(coupling, "seed %d" % s, check_coupling)
        _run(pointid, "seed %d" % s, lambda s=s: check_coupling(s, want_points=True))
    return [sym0, sym1, coupling, pointid]


def suite_quadric(seeds: int) -> list[PropertyResult]:
    conj = PropertyResult("quadric/conjugacy-agreement")
    sing = PropertyResult("quadric/singular-point-checks")
    for s in range(seeds):
        def check_conj(s=s):
            ok = True
            for m, a, b, n in ((1, 1, 1, 2), (2, 2, 2, 3)):
                base = (
                    construct.random_qnet(a, b, n, s)
                    if m == 1
                    else construct.random_bs_koenigs(a, b, n, s)
                )
                lifted = embed_and_lift(base, s).lifted
                quad = koenigs_hyperplanes(lifted).quadric
                ok = ok and quadric_conjugacy_check(lifted, quad)
            return ok

        _run(conj, "seed %d" % s, check_conj)

        def check_sing(s=s):
            ok = True
            for m, a, b, n in ((1, 1, 2, 2), (2, 2, 3, 3)):
                base = (
                    construct.random_qnet(a, b, n, s)
                    if m == 1
                    else construct.random_bs_koenigs(a, b, n, s)
                )
                lifted = embed_and_lift(base, s).lifted
                report = singular_point_checks(lifted, m)
                ok = ok and report.ok and report.forward_nonsingular and report.backward_nonsingular
            return ok

        _run(sing, "seed %d" % s, check_sing)
    return [conj, sing]


SUITES = {
    "recurrence": suite_recurrence,
    "termination": suite_termination,
    "symmetry": suite_symmetry,
    "quadric": suite_quadric,
}


def run_suites(which: str, seeds: int) -> list[PropertyResult]:
    if which == "all":
        out: list[PropertyResult] = []
        for name in ("recurrence", "termination", "symmetry", "quadric"):
            out.extend(SUITES[name](seeds))
        return out
    if which not in SUITES:
        raise ValueError("unknown suite %r" % which)
    return SUITES[which](seeds)
