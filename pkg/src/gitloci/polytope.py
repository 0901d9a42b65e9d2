"""Exact polyhedral predicates.

Hull membership distinguishes Outside / Boundary / Interior, where Interior
means interior in the ambient space: a hull of less than full dimension never
returns Interior.  (A relative-interior reading is available behind a flag
for experiments.)  The minimum-norm point is computed by Wolfe's algorithm
over exact rationals, with an exponential face-enumeration oracle kept as an
independent test path.

Dimensions 1 and 2 use direct orientation predicates on integers (after
clearing denominators); higher dimensions fall back to exact simplex solves.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linprog import OPTIMAL, lp_feasible, lp_maximize_free, solve_lp
from .qpoly import InnerProduct, RationalVector


class DimensionMismatch(ValueError):
    pass


class TooLarge(ValueError):
    pass


class EmptyRegion(ValueError):
    pass


class HullPosition(str, Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    INTERIOR = "interior"


@dataclass(frozen=True)
class PointSet:
    """A finite weight set; duplicates permitted (weight multiplicity)."""

    points: tuple[RationalVector, ...]
    dim: int

    def __init__(self, points: Iterable[RationalVector]):
        pts = tuple(points)
        if not pts:
            raise ValueError("PointSet needs at least one point")
        dim = pts[0].dim
        if any(p.dim != dim for p in pts):
            raise DimensionMismatch("points of mixed dimension")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "dim", dim)

    def deduplicated(self) -> list[RationalVector]:
        seen = set()
        out = []
        for p in self.points:
            if p.entries not in seen:
                seen.add(p.entries)
                out.append(p)
        return out


def _clear_denominators(
    vectors: Sequence[RationalVector],
) -> list[tuple[int, ...]]:
    """Scale a family of vectors by one common denominator to integers."""
    lcm = 1
    for v in vectors:
        for e in v.entries:
            g = _gcd(lcm, e.denominator)
            lcm = lcm // g * e.denominator
    return [tuple(int(e * lcm) for e in v.entries) for v in vectors]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def hull_membership(
    S: PointSet, q: RationalVector, *, relative: bool = False
) -> HullPosition:
    """Exact classification of q against conv(S)."""
    if q.dim != S.dim:
        raise DimensionMismatch(f"query dim {q.dim} vs point dim {S.dim}")
    pts = S.deduplicated()
    diffs = [p - q for p in pts]
    if S.dim == 1:
        vals = sorted(d.entries[0] for d in diffs)
        lo, hi = vals[0], vals[-1]
        if lo > 0 or hi < 0:
            return HullPosition.OUTSIDE
        if lo < 0 < hi:
            return HullPosition.INTERIOR
        return HullPosition.BOUNDARY
    if S.dim == 2:
        return _hull_membership_2d(diffs, relative)
    return _hull_membership_lp(diffs, S.dim, relative)


def _hull_membership_2d(
    diffs: Sequence[RationalVector], relative: bool
) -> HullPosition:
    ints = _clear_denominators(diffs)
    hull = convex_hull_2d_int(ints)
    if len(hull) == 1:
        x, y = hull[0]
        if x == 0 and y == 0:
            # hull is the single point q itself
            return HullPosition.INTERIOR if relative else HullPosition.BOUNDARY
        return HullPosition.OUTSIDE
    if len(hull) == 2:
        (x1, y1), (x2, y2) = hull
        cross = x1 * y2 - y1 * x2
        if cross != 0:
            return HullPosition.OUTSIDE
        d1 = x1 * x2 + y1 * y2  # sign of <p1, p2>
        if x1 == 0 == y1 or x2 == 0 == y2:
            return HullPosition.BOUNDARY  # endpoint
        if d1 < 0:
            # origin strictly between the endpoints
            return HullPosition.INTERIOR if relative else HullPosition.BOUNDARY
        return HullPosition.OUTSIDE
    on_edge = False
    n = len(hull)
    for i in range(n):
        x1, y1 = hull[i]
        x2, y2 = hull[(i + 1) % n]
        cross = (x2 - x1) * (0 - y1) - (y2 - y1) * (0 - x1)
        if cross < 0:
            return HullPosition.OUTSIDE
        if cross == 0:
            on_edge = True
    return HullPosition.BOUNDARY if on_edge else HullPosition.INTERIOR


def _hull_membership_lp(
    diffs: Sequence[RationalVector], dim: int, relative: bool
) -> HullPosition:
    m = len(diffs)
    # membership: exists lambda >= 0, sum lambda = 1, sum lambda d_i = 0
    A = [[d.entries[row] for d in diffs] for row in range(dim)]
    A.append([Fraction(1)] * m)
    b = [Fraction(0)] * dim + [Fraction(1)]
    feasible, _ = lp_feasible(A, b)
    if not feasible:
        return HullPosition.OUTSIDE
    # relative interior: max t s.t. mu >= 0, t >= 0, lambda = mu + t
    total = [sum(d.entries[row] for d in diffs) for row in range(dim)]
    A2 = [
        [d.entries[row] for d in diffs] + [total[row]] for row in range(dim)
    ]
    A2.append([Fraction(1)] * m + [Fraction(m)])
    b2 = [Fraction(0)] * dim + [Fraction(1)]
    c2 = [Fraction(0)] * m + [Fraction(1)]
    status, _, value = solve_lp(A2, b2, c2, maximize=True)
    if status != OPTIMAL:
        raise AssertionError("bounded LP reported unbounded")
    in_relint = value > 0
    if not in_relint:
        return HullPosition.BOUNDARY
    if relative:
        return HullPosition.INTERIOR
    return (
        HullPosition.INTERIOR
        if _affine_rank(diffs) == dim
        else HullPosition.BOUNDARY
    )


def _affine_rank(points: Sequence[RationalVector]) -> int:
    """Dimension of the affine hull (rank of the difference space)."""
    if len(points) < 2:
        return 0
    base = points[0]
    rows = [list((p - base).entries) for p in points[1:]]
    rank = 0
    ncols = len(rows[0])
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col] * inv
                rows[i] = [a - f * v for a, v in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def convex_hull_2d_int(points: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Monotone-chain hull over integer coordinates, CCW, strict turns only.

    Returns one point for a point-hull and two for a segment-hull.
    """
    pts = sorted(set(points))
    if len(pts) == 1:
        return [pts[0]]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def half(seq):
        out: list[tuple[int, int]] = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 0:  # all collinear: keep the extremes
        return [pts[0], pts[-1]]
    if len(hull) == 2 and hull[0] == hull[1]:
        return [hull[0]]
    if len(hull) < 3:
        return [pts[0], pts[-1]]
    return hull


def convex_hull_2d(points: Sequence[RationalVector]) -> list[RationalVector]:
    """Hull vertices of rational points in the plane, CCW."""
    uniq = []
    seen = set()
    for p in points:
        if p.entries not in seen:
            seen.add(p.entries)
            uniq.append(p)
    ints = _clear_denominators(uniq)
    back = {iv: p for iv, p in zip(ints, uniq)}
    return [back[iv] for iv in convex_hull_2d_int(ints)]


# ---------------------------------------------------------------------------
# Minimum-norm point
# ---------------------------------------------------------------------------


class LinAlgError(ValueError):
    pass


def _solve_linear(
    M: list[list[Fraction]], rhs: list[Fraction]
) -> list[Fraction]:
    n = len(M)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(M)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise LinAlgError("singular system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * v for a, v in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def _affine_min_norm(
    pts: Sequence[RationalVector], ip: InnerProduct
) -> tuple[RationalVector, list[Fraction]]:
    """Min-norm point of the affine hull of affinely independent points.

    Solves the KKT system [[G, 1], [1^T, 0]] [a; nu] = [0; 1] exactly.
    """
    k = len(pts)
    G = [[ip.pairing(pts[i], pts[j]) for j in range(k)] for i in range(k)]
    M = [G[i] + [Fraction(1)] for i in range(k)]
    M.append([Fraction(1)] * k + [Fraction(0)])
    rhs = [Fraction(0)] * k + [Fraction(1)]
    sol = _solve_linear(M, rhs)
    coeffs = sol[:k]
    y = RationalVector.zero(pts[0].dim)
    for a, p in zip(coeffs, pts):
        y = y + p.scale(a)
    return y, coeffs


def min_norm_point(S: PointSet, ip: InnerProduct) -> RationalVector:
    """The unique point of conv(S) closest to the origin, by Wolfe's
    minimum-norm-point algorithm over exact rationals.

    The corral stays affinely independent throughout (a point strictly
    below the current level cannot lie in the corral's affine hull), so the
    KKT systems are nonsingular and termination follows from strict norm
    decrease over finitely many corrals.
    """
    pts = S.deduplicated()
    x = min(pts, key=lambda p: (ip.norm_sq(p), p.sort_key()))
    corral = [x]
    weights = [Fraction(1)]
    while True:
        xx = ip.norm_sq(x)
        best = None
        best_val = None
        for p in pts:
            val = ip.pairing(x, p)
            if best_val is None or val < best_val:
                best, best_val = p, val
        if best_val >= xx:
            return x
        corral.append(best)
        weights.append(Fraction(0))
        while True:
            y, coeffs = _affine_min_norm(corral, ip)
            if all(a >= 0 for a in coeffs):
                # drop zero coefficients: y is still the affine minimiser of
                # the remaining points and now an interior convex combination
                keep = [i for i, a in enumerate(coeffs) if a > 0]
                corral = [corral[i] for i in keep]
                weights = [coeffs[i] for i in keep]
                x = y
                break
            theta = min(
                w / (w - a) for w, a in zip(weights, coeffs) if a < 0
            )
            weights = [
                (1 - theta) * w + theta * a for w, a in zip(weights, coeffs)
            ]
            keep = [i for i, w in enumerate(weights) if w > 0]
            corral = [corral[i] for i in keep]
            weights = [weights[i] for i in keep]
            x = RationalVector.zero(S.dim)
            for w, p in zip(weights, corral):
                x = x + p.scale(w)


def min_norm_point_oracle(S: PointSet, ip: InnerProduct) -> RationalVector:
    """Independent test oracle: project the origin onto the affine hull of
    every affinely independent subset, keep candidates lying in the subset's
    convex hull, and return the overall minimum.  Exponential; |S| <= 16.
    """
    pts = S.deduplicated()
    if len(pts) > 16:
        raise TooLarge("oracle face sweep limited to 16 distinct points")
    best: Optional[RationalVector] = None
    best_norm: Optional[Fraction] = None
    for size in range(1, min(len(pts), S.dim + 1) + 1):
        for subset in itertools.combinations(pts, size):
            if _affine_rank(subset) != size - 1:
                continue
            y, coeffs = _affine_min_norm(list(subset), ip)
            if any(a < 0 for a in coeffs):
                continue
            norm = ip.norm_sq(y)
            if best_norm is None or norm < best_norm:
                best, best_norm = y, norm
    assert best is not None
    return best


def facet_normal_candidates(points: Sequence[RationalVector]) -> list[RationalVector]:
    """Inner facet normals of conv(points) plus the coordinate directions.

    For rank <= 2 this is a finite certificate set for semistability: the
    origin lies outside the hull iff some candidate direction has strictly
    positive minimum pairing over the points.
    """
    dim = points[0].dim
    candidates: list[RationalVector] = []
    for i in range(dim):
        e = [Fraction(0)] * dim
        e[i] = Fraction(1)
        candidates.append(RationalVector(e))
        candidates.append(-RationalVector(e))
    if dim == 1:
        return candidates
    if dim != 2:
        raise DimensionMismatch("facet normals implemented for rank <= 2")
    hull = convex_hull_2d(points)
    if len(hull) == 1:
        return candidates
    if len(hull) == 2:
        d = hull[1] - hull[0]
        perp = RationalVector([-d.entries[1], d.entries[0]])
        candidates.extend([d, -d, perp, -perp])
        return candidates
    n = len(hull)
    for i in range(n):
        d = hull[(i + 1) % n] - hull[i]
        inner = RationalVector([-d.entries[1], d.entries[0]])  # CCW inner normal
        candidates.append(inner)
    return candidates


# ---------------------------------------------------------------------------
# Cones, regions, and 2D arrangements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Halfspace:
    """<normal, x> >= offset, strict if flagged."""

    normal: RationalVector
    offset: Fraction
    strict: bool

    def satisfied(self, x: RationalVector) -> bool:
        v = self.normal.dot(x)
        return v > self.offset if self.strict else v >= self.offset


@dataclass(frozen=True)
class Cone:
    """Intersection of homogeneous halfspaces through the origin."""

    halfspaces: tuple[tuple[RationalVector, bool], ...]

    def __init__(self, halfspaces: Iterable[tuple[RationalVector, bool]]):
        object.__setattr__(self, "halfspaces", tuple(halfspaces))

    @property
    def is_full_space(self) -> bool:
        return not self.halfspaces

    def contains(self, v: RationalVector) -> bool:
        for normal, strict in self.halfspaces:
            val = normal.dot(v)
            if strict and val <= 0:
                return False
            if not strict and val < 0:
                return False
        return True

    def to_region(self) -> list[Halfspace]:
        return [
            Halfspace(normal, Fraction(0), strict)
            for normal, strict in self.halfspaces
        ]


def region_interior_point(
    region: Sequence[Halfspace], dim: int
) -> Optional[RationalVector]:
    """A rational point strictly inside the region, or None.

    Maximises a margin t with t capped at 1; strict and non-strict
    constraints alike must hold with margin, which is exactly interiority.
    """
    if not region:
        return RationalVector.zero(dim) if dim else None
    objective = [Fraction(0)] * dim + [Fraction(1)]
    ges = []
    for hs in region:
        ges.append((list(hs.normal.entries) + [Fraction(-1)], hs.offset))
    ges.append(([Fraction(0)] * dim + [Fraction(-1)], Fraction(-1)))  # t <= 1
    ges.append(([Fraction(0)] * dim + [Fraction(1)], Fraction(0)))  # t >= 0
    status, x, value = lp_maximize_free(objective, [], ges)
    if status != OPTIMAL or value is None or value <= 0:
        return None
    return RationalVector(x[:dim])


def cone_has_interior_point(cone: Cone, dim: int) -> Optional[RationalVector]:
    """An integral point with all pairings strictly positive, or None.

    By homogeneity, strict feasibility is equivalent to feasibility of
    <normal, x> >= 1 for the strict rows.
    """
    if cone.is_full_space:
        e = [Fraction(0)] * dim
        e[0] = Fraction(1)
        return RationalVector(e)
    ges = []
    for normal, strict in cone.halfspaces:
        rhs = Fraction(1) if strict else Fraction(0)
        ges.append((list(normal.entries), rhs))
    status, x, _ = lp_maximize_free([Fraction(0)] * dim, [], ges)
    if status != OPTIMAL or x is None:
        return None
    v = RationalVector(x)
    if v.is_zero():
        return None
    return v.primitive_integral()


@dataclass(frozen=True)
class Line2D:
    """The locus <normal, x> = offset, stored primitively."""

    normal: RationalVector
    offset: Fraction

    @staticmethod
    def canonical(normal: RationalVector, offset: Fraction) -> "Line2D":
        if normal.is_zero():
            raise ValueError("line normal must be nonzero")
        triple = RationalVector(list(normal.entries) + [offset])
        prim = triple.primitive_integral()
        e = prim.entries
        lead = next(v for v in e[:2] if v != 0)
        if lead < 0:
            prim = -prim
            e = prim.entries
        return Line2D(RationalVector(e[:2]), e[2])

    @staticmethod
    def through(p: RationalVector, q: RationalVector) -> "Line2D":
        d = q - p
        normal = RationalVector([-d.entries[1], d.entries[0]])
        return Line2D.canonical(normal, normal.dot(p))

    def side(self, x: RationalVector) -> int:
        v = self.normal.dot(x) - self.offset
        return (v > 0) - (v < 0)

    def direction(self) -> RationalVector:
        return RationalVector([-self.normal.entries[1], self.normal.entries[0]])


@dataclass(frozen=True)
class Arrangement2D:
    lines: tuple[Line2D, ...]
    region: tuple[Halfspace, ...]

    def __init__(self, lines: Iterable[Line2D], region: Iterable[Halfspace]):
        seen = []
        for ln in lines:
            if ln not in seen:
                seen.append(ln)
        object.__setattr__(self, "lines", tuple(seen))
        object.__setattr__(self, "region", tuple(region))


@dataclass(frozen=True)
class Face:
    """One cell of the decomposition, carrying a certified sample point."""

    kind: str  # "chamber" | "cell" | "vertex"
    sample: RationalVector
    signs: tuple[int, ...]
    line_index: Optional[int] = None
    interval: Optional[tuple[Optional[Fraction], Optional[Fraction]]] = None


@dataclass(frozen=True)
class Decomposition:
    lines: tuple[Line2D, ...]
    faces: tuple[Face, ...]

    def chambers(self) -> list[Face]:
        return [f for f in self.faces if f.kind == "chamber"]

    def cells(self) -> list[Face]:
        return [f for f in self.faces if f.kind == "cell"]

    def vertices(self) -> list[Face]:
        return [f for f in self.faces if f.kind == "vertex"]

    def face_by_signs(self, signs: tuple[int, ...]) -> Optional[Face]:
        for f in self.faces:
            if f.signs == signs:
                return f
        return None


def _line_region_base(
    line: Line2D, region: Sequence[Halfspace]
) -> Optional[RationalVector]:
    """A point on the line strictly inside the region, or None."""
    objective = [Fraction(0), Fraction(0), Fraction(1)]
    eqs = [(list(line.normal.entries) + [Fraction(0)], line.offset)]
    ges = []
    for hs in region:
        ges.append((list(hs.normal.entries) + [Fraction(-1)], hs.offset))
    ges.append(([Fraction(0), Fraction(0), Fraction(-1)], Fraction(-1)))
    ges.append(([Fraction(0), Fraction(0), Fraction(1)], Fraction(0)))
    status, x, value = lp_maximize_free(objective, eqs, ges)
    if status != OPTIMAL or value is None or value <= 0:
        return None
    return RationalVector(x[:2])


def _param_interval(
    base: RationalVector,
    direction: RationalVector,
    region: Sequence[Halfspace],
) -> tuple[Optional[Fraction], Optional[Fraction]]:
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    for hs in region:
        nd = hs.normal.dot(direction)
        gap = hs.offset - hs.normal.dot(base)
        if nd == 0:
            continue  # base is interior, so the constraint holds on the line
        t = gap / nd
        if nd > 0:
            lo = t if lo is None or t > lo else lo
        else:
            hi = t if hi is None or t < hi else hi
    return lo, hi


def _mid(lo: Optional[Fraction], hi: Optional[Fraction]) -> Fraction:
    if lo is None and hi is None:
        return Fraction(0)
    if lo is None:
        return hi - 1
    if hi is None:
        return lo + 1
    return (lo + hi) / 2


def chamber_decomposition_2d(arr: Arrangement2D) -> Decomposition:
    """Complete face list of a line arrangement inside an open convex region.

    Faces partition the region: open 2-cells (chambers), open 1-cells on the
    lines (cells/walls), and vertices.  Every face carries an interior
    rational sample point and its sign vector over the arrangement lines.
    """
    region = list(arr.region)
    if region_interior_point(region, 2) is None:
        raise EmptyRegion("region has no interior point")

    bases: dict[int, RationalVector] = {}
    active: list[int] = []
    for i, line in enumerate(arr.lines):
        base = _line_region_base(line, region)
        if base is not None:
            bases[i] = base
            active.append(i)

    lines = arr.lines

    def signs_at(x: RationalVector) -> tuple[int, ...]:
        return tuple(line.side(x) for line in lines)

    faces: list[Face] = []
    if not active:
        sample = region_interior_point(region, 2)
        faces.append(Face("chamber", sample, signs_at(sample)))
        return Decomposition(lines, tuple(faces))

    # vertices: pairwise intersections strictly inside the region
    vertex_points: dict[tuple[Fraction, Fraction], RationalVector] = {}
    for ai in range(len(active)):
        for bi in range(ai + 1, len(active)):
            li, lj = lines[active[ai]], lines[active[bi]]
            pt = _intersect(li, lj)
            if pt is None:
                continue
            if _strictly_inside(pt, region):
                vertex_points[pt.entries] = pt
    for pt in vertex_points.values():
        faces.append(Face("vertex", pt, signs_at(pt)))

    # 1-cells per line, then chambers sampled from both sides of each cell
    chamber_samples: dict[tuple[int, ...], RationalVector] = {}
    for idx in active:
        line = lines[idx]
        base = bases[idx]
        d = line.direction()
        lo, hi = _param_interval(base, d, region)
        crossings: list[Fraction] = []
        for jdx in active:
            if jdx == idx:
                continue
            other = lines[jdx]
            nd = other.normal.dot(d)
            if nd == 0:
                continue
            t = (other.offset - other.normal.dot(base)) / nd
            if (lo is None or t > lo) and (hi is None or t < hi):
                crossings.append(t)
        cuts = sorted(set(crossings))
        bounds: list[tuple[Optional[Fraction], Optional[Fraction]]] = []
        edges: list[Optional[Fraction]] = [lo] + [Fraction(v) for v in cuts] + [hi]
        for k in range(len(edges) - 1):
            bounds.append((edges[k], edges[k + 1]))
        for seg_lo, seg_hi in bounds:
            t = _mid(seg_lo, seg_hi)
            sample = base + d.scale(t)
            faces.append(
                Face("cell", sample, signs_at(sample), idx, (seg_lo, seg_hi))
            )
            for side in (1, -1):
                off = _safe_offset(sample, line.normal.scale(side), lines, region)
                cand = sample + line.normal.scale(side).scale(off)
                sv = signs_at(cand)
                if 0 in sv:
                    continue
                chamber_samples.setdefault(sv, cand)
    for sv, sample in sorted(
        chamber_samples.items(), key=lambda kv: tuple(kv[1].entries)
    ):
        faces.append(Face("chamber", sample, sv))
    return Decomposition(lines, tuple(faces))


def _strictly_inside(pt: RationalVector, region: Sequence[Halfspace]) -> bool:
    return all(hs.normal.dot(pt) > hs.offset for hs in region)


def _intersect(l1: Line2D, l2: Line2D) -> Optional[RationalVector]:
    a1, b1 = l1.normal.entries
    a2, b2 = l2.normal.entries
    det = a1 * b2 - b1 * a2
    if det == 0:
        return None
    x = (l1.offset * b2 - b1 * l2.offset) / det
    y = (a1 * l2.offset - l1.offset * a2) / det
    return RationalVector([x, y])


def _safe_offset(
    origin: RationalVector,
    direction: RationalVector,
    lines: Sequence[Line2D],
    region: Sequence[Halfspace],
) -> Fraction:
    """Half the distance (in parameter units) to the nearest crossing along
    `direction`, so the offset point keeps all other predicates' signs."""
    best: Optional[Fraction] = None
    planes: list[tuple[RationalVector, Fraction]] = [
        (ln.normal, ln.offset) for ln in lines
    ] + [(hs.normal, hs.offset) for hs in region]
    for normal, offset in planes:
        nd = normal.dot(direction)
        if nd == 0:
            continue
        t = (offset - normal.dot(origin)) / nd
        if t > 0 and (best is None or t < best):
            best = t
    return best / 2 if best is not None else Fraction(1)
