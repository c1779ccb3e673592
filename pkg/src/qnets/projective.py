"""Exact projective geometry over the rationals.

Points of RP^n are nonzero homogeneous rational vectors up to scale,
subspaces are row spaces in canonical reduced row echelon form, quadrics
are symmetric bilinear forms up to scale.  Every operation is exact; all
degeneracy predicates are decidable equalities.

Conventions:

* the cross-ratio of four collinear points with 2-chart representatives
  p1..p4 is  det(p1,p2) det(p3,p4) / (det(p2,p3) det(p4,p1)),
* the multi-ratio of six collinear points is
  det(p1,p2)/det(p2,p3) * det(p3,p4)/det(p4,p5) * det(p5,p6)/det(p6,p1),
* both are chart-independent; the chart used is the pair of pivot
  coordinates of the spanning line's canonical basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    DimensionMismatchError,
    GeometryError,
    ProjectionUndefinedError,
    UndefinedCrossRatioError,
)
from .linalg import Matrix, Row, as_row, dot, mat_vec, nullspace, primitive, rref

Scalar = Fraction


class _Infinity:
    """Projective infinity, the value of a ratio with vanishing denominator.

    Distinct from an error: 0/0 raises, x/0 with x != 0 returns this
    singleton.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinity"


INFINITY = _Infinity()

RatioValue = Union[Fraction, _Infinity]


class HPoint:
    """A point of RP^n as a homogeneous coordinate vector.

    The stored representative is canonical: integer entries with content 1
    and positive first nonzero entry, so projective equality is plain
    tuple equality.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Iterable):
        vec = as_row(coords)
        if all(c == 0 for c in vec):
            raise ValueError("a projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", primitive(vec))

    @property
    def ambient_dim(self) -> int:
        return len(self.coords) - 1

    def scaled(self, factor: Fraction) -> "HPoint":
        """The same point from a rescaled representative (a no-op

        projectively; exists so scaling invariance is directly testable)."""
        if factor == 0:
            raise ValueError("scale factor must be nonzero")
        return HPoint(tuple(c * factor for c in self.coords))

    def __eq__(self, other) -> bool:
        return isinstance(other, HPoint) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "HPoint(%s)" % (", ".join(str(c) for c in self.coords))

    def __setattr__(self, name, value):
        raise AttributeError("HPoint is immutable")


@dataclass(frozen=True)
class Subspace:
    """A projective subspace as the canonical RREF basis of its linear span.

    Zero basis rows encode the empty subspace (projective dimension -1);
    equality of subspaces is bitwise equality of bases.
    """

    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ambient_dim: int) -> "Subspace":
        red, piv = rref([as_row(r) for r in rows], ambient_dim + 1)
        return cls(ambient_dim, red, piv)

    @classmethod
    def from_points(cls, points: Sequence[HPoint]) -> "Subspace":
        if not points:
            raise ValueError("need at least one point")
        n = points[0].ambient_dim
        if any(p.ambient_dim != n for p in points):
            raise DimensionMismatchError("points in different ambient spaces")
        return cls.from_rows([p.coords for p in points], n)

    @classmethod
    def from_point(cls, point: HPoint) -> "Subspace":
        return cls.from_points([point])

    @classmethod
    def empty(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(ambient_dim + 1)] for i in range(ambient_dim + 1)],
            ambient_dim,
        )

    @property
    def projective_dim(self) -> int:
        return len(self.basis) - 1

    @property
    def is_empty(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim + 1

    def _reduce(self, vec: Sequence[Fraction]) -> list[Fraction]:
        v = list(vec)
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            if f != 0:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains_point(self, p: HPoint) -> bool:
        if p.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("point and subspace dimensions differ")
        return all(x == 0 for x in self._reduce(p.coords))

    def contains(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("subspace dimensions differ")
        return all(all(x == 0 for x in self._reduce(row)) for row in other.basis)

    def point(self) -> HPoint:
        """The unique point of a 0-dimensional subspace."""
        if self.projective_dim != 0:
            raise GeometryError("subspace is not a single point")
        return HPoint(self.basis[0])

    def basis_points(self) -> list[HPoint]:
        return [HPoint(row) for row in self.basis]

    def point_coords(self, p: HPoint) -> Row:
        """Coordinates of a contained point in this basis (pivot chart)."""
        if not self.contains_point(p):
            raise GeometryError("point is not in the subspace")
        return tuple(p.coords[c] for c in self.pivots)


SubspaceLike = Union[Subspace, HPoint]


def _as_subspace(obj: SubspaceLike) -> Subspace:
    if isinstance(obj, HPoint):
        return Subspace.from_point(obj)
    return obj


def join(items: Sequence[SubspaceLike], ambient_dim: int | None = None) -> Subspace:
    """Join (projectivized span) of subspaces and/or points."""
    parts = [_as_subspace(x) for x in items]
    if not parts:
        if ambient_dim is None:
            raise ValueError("empty join needs an explicit ambient dimension")
        return Subspace.empty(ambient_dim)
    n = parts[0].ambient_dim
    if any(p.ambient_dim != n for p in parts):
        raise DimensionMismatchError("join of subspaces in different ambient spaces")
    if ambient_dim is not None and ambient_dim != n:
        raise DimensionMismatchError("ambient dimension does not match arguments")
    rows: list[Row] = []
    for p in parts:
        rows.extend(p.basis)
    return Subspace.from_rows(rows, n)


def span(*points: HPoint) -> Subspace:
    return join(points)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces, possibly empty.

    Computed through annihilators: V cap W = (V^perp + W^perp)^perp.
    """
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("meet of subspaces in different ambient spaces")
    ncols = a.ambient_dim + 1
    ann = list(nullspace(a.basis, ncols)) + list(nullspace(b.basis, ncols))
    red, piv = rref(nullspace(ann, ncols), ncols)
    return Subspace(a.ambient_dim, red, piv)


def supplementary(a: Subspace, b: Subspace) -> bool:
    """True when a and b are disjoint and join to the whole space."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError("subspaces in different ambient spaces")
    full = a.ambient_dim + 1
    if len(a.basis) + len(b.basis) != full:
        return False
    return len(join([a, b]).basis) == full


def _chart(points: Sequence[HPoint], expect: int) -> list[tuple[Fraction, ...]]:
    """Common 2-coordinate chart of collinear points (pivot coordinates of
    the canonical line basis)."""
    line = join(points)
    if line.projective_dim > 1:
        raise GeometryError("points are not collinear")
    if line.projective_dim < 1:
        raise UndefinedCrossRatioError("all %d points coincide" % expect)
    c1, c2 = line.pivots
    return [(p.coords[c1], p.coords[c2]) for p in points]


def _det2(a: tuple[Fraction, ...], b: tuple[Fraction, ...]) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def cross_ratio(p1: HPoint, p2: HPoint, p3: HPoint, p4: HPoint) -> RatioValue:
    """Cross-ratio of four collinear points; scaling- and chart-invariant.

    Returns INFINITY when only the denominator vanishes; 0/0 raises.
    """
    q1, q2, q3, q4 = _chart([p1, p2, p3, p4], 4)
    num = _det2(q1, q2) * _det2(q3, q4)
    den = _det2(q2, q3) * _det2(q4, q1)
    if den == 0:
        if num == 0:
            raise UndefinedCrossRatioError("cross-ratio of the form 0/0")
        return INFINITY
    return num / den


def multi_ratio(
    p1: HPoint, p2: HPoint, p3: HPoint, p4: HPoint, p5: HPoint, p6: HPoint
) -> RatioValue:
    """Multi-ratio of six collinear points, the 3-factor analogue of the
    cross-ratio."""
    q = _chart([p1, p2, p3, p4, p5, p6], 6)
    num = _det2(q[0], q[1]) * _det2(q[2], q[3]) * _det2(q[4], q[5])
    den = _det2(q[1], q[2]) * _det2(q[3], q[4]) * _det2(q[5], q[0])
    if den == 0:
        if num == 0:
            raise UndefinedCrossRatioError("multi-ratio of the form 0/0")
        return INFINITY
    return num / den


def central_projection(p: HPoint, center: Subspace, screen: Subspace) -> HPoint:
    """Projection with the given center onto the screen: (p v C) ^ E.

    Center and screen must be supplementary; points of the center have no
    image.
    """
    if p.ambient_dim != center.ambient_dim or center.ambient_dim != screen.ambient_dim:
        raise DimensionMismatchError("projection operands in different ambient spaces")
    if not supplementary(center, screen):
        raise GeometryError("center and screen are not supplementary")
    if center.contains_point(p):
        raise ProjectionUndefinedError("point lies in the projection center")
    image = meet(join([p, center]), screen)
    if image.projective_dim != 0:
        raise GeometryError("projection image is not a single point")
    return image.point()


class Quadric:
    """A quadric as a symmetric bilinear form up to scale.

    The stored matrix is canonical: scaled so its first nonzero entry is 1,
    making equality of quadrics bitwise.
    """

    __slots__ = ("form",)

    def __init__(self, form: Sequence[Sequence]):
        rows = tuple(as_row(r) for r in form)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("quadric form must be square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("quadric form must be exactly symmetric")
        lead = next((x for row in rows for x in row if x != 0), None)
        if lead is None:
            raise ValueError("quadric form must be nonzero")
        if lead != 1:
            rows = tuple(tuple(x / lead for x in row) for row in rows)
        object.__setattr__(self, "form", rows)

    @property
    def ambient_dim(self) -> int:
        return len(self.form) - 1

    def bilinear(self, p: HPoint, q: HPoint) -> Fraction:
        if p.ambient_dim != self.ambient_dim or q.ambient_dim != self.ambient_dim:
            raise DimensionMismatchError("point does not match quadric dimension")
        return dot(mat_vec(self.form, p.coords), q.coords)

    def evaluate(self, p: HPoint) -> Fraction:
        return self.bilinear(p, p)

    def contains_point(self, p: HPoint) -> bool:
        return self.evaluate(p) == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, Quadric) and self.form == other.form

    def __hash__(self) -> int:
        return hash(self.form)

    def __repr__(self) -> str:
        return "Quadric(%r)" % (self.form,)

    def __setattr__(self, name, value):
        raise AttributeError("Quadric is immutable")


def polar(q: Quadric, p: HPoint) -> Subspace:
    """Polar subspace of a point: all x with b(p, x) = 0.

    A hyperplane for non-singular p, the whole space for singular p.
    """
    if p.ambient_dim != q.ambient_dim:
        raise DimensionMismatchError("point does not match quadric dimension")
    w = mat_vec(q.form, p.coords)
    n = q.ambient_dim
    if all(x == 0 for x in w):
        return Subspace.full(n)
    return Subspace(n, *_null_pair([w], n + 1))


def is_conjugate(q: Quadric, p1: HPoint, p2: HPoint) -> bool:
    """Exact conjugacy test b(p1, p2) = 0."""
    return q.bilinear(p1, p2) == 0


def singular_locus(q: Quadric) -> Subspace:
    """Projectivized kernel of the form matrix (empty iff non-degenerate)."""
    n = q.ambient_dim
    return Subspace(n, *_null_pair(q.form, n + 1))


def _null_pair(rows, ncols) -> tuple[Matrix, tuple[int, ...]]:
    return rref(nullspace(rows, ncols), ncols)


def transform_point(matrix: Sequence[Sequence], p: HPoint) -> HPoint:
    """Image of a point under the projective map induced by a matrix."""
    image = mat_vec([as_row(r) for r in matrix], p.coords)
    if all(x == 0 for x in image):
        raise GeometryError("matrix maps the point to zero")
    return HPoint(image)
