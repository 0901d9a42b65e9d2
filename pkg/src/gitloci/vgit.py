"""Variation of the quotient over the space of rational character twists.

The ample-scaling direction is normalised away: only the character twist
varies, so the parameter space is the weight plane (rank 2) or the weight
line (rank 1).  Walls are over-generated from all pairs-of-weights lines
and pruned post hoc by comparing the semistable support families of
adjacent faces, which is exact: every strictly semistable twist lies on a
pair line, and the family is constant on each face of the over-generated
arrangement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .action import (
    SupportPoint,
    TorusAction,
    build_double_extension,
    build_external_extension,
)
from .polytope import (
    Arrangement2D,
    Decomposition,
    Halfspace,
    HullPosition,
    Line2D,
    PointSet,
    RationalVector,
    chamber_decomposition_2d,
    convex_hull_2d,
    hull_membership,
)
from .stability import RankUnsupported


class IneffectiveTwist(ValueError):
    pass


class NotAdjacent(ValueError):
    pass


class DegenerateWeights(ValueError):
    pass


SupportKey = frozenset


def _support_key(x: SupportPoint) -> frozenset[int]:
    return x.support


@dataclass(frozen=True)
class EffectiveRegion:
    """Hull of all Segre weights: exactly the twists admitting a semistable
    support."""

    dim: int
    vertices: tuple[RationalVector, ...]

    def contains(self, chi: RationalVector) -> bool:
        pts = PointSet(self.vertices)
        return hull_membership(pts, chi) is not HullPosition.OUTSIDE


def effective_cone(a: TorusAction) -> EffectiveRegion:
    """The effective twists, as the hull of all Segre weights."""
    if a.rank > 2:
        raise RankUnsupported("effective region is exact for rank <= 2 only")
    weights = a.distinct_segre_weights()
    if a.rank == 1:
        vals = sorted(w.entries[0] for w in weights)
        verts = [RationalVector([vals[0]])]
        if vals[-1] != vals[0]:
            verts.append(RationalVector([vals[-1]]))
        return EffectiveRegion(1, tuple(verts))
    return EffectiveRegion(2, tuple(convex_hull_2d(weights)))


def git_class(a: TorusAction, chi: RationalVector) -> frozenset[frozenset[int]]:
    """The semistable support family of a twist: all valid supports whose
    weight hull contains it.  Families are the GIT-equivalence invariants."""
    if chi.dim != a.rank:
        raise RankUnsupported("twist dimension differs from rank")
    family = set()
    for sp in a.iter_supports():
        pts = PointSet(a.segre_weights(sp))
        if hull_membership(pts, chi) is not HullPosition.OUTSIDE:
            family.add(_support_key(sp))
    if not family:
        raise IneffectiveTwist(f"no support is semistable at twist {chi!r}")
    return frozenset(family)


def _git_class_or_none(
    a: TorusAction, chi: RationalVector
) -> Optional[frozenset[frozenset[int]]]:
    try:
        return git_class(a, chi)
    except IneffectiveTwist:
        return None


class _FamilyOracle:
    """Support families over many twists, with per-support hulls cached.

    For rank 2 each support's weight hull is computed once; membership of a
    twist is then a point-in-convex-polygon test with exact cross products.
    """

    def __init__(self, a: TorusAction):
        self.action = a
        self.entries: list[tuple[frozenset[int], list[RationalVector]]] = []
        for sp in a.iter_supports():
            if a.rank == 1:
                vals = sorted(w.entries[0] for w in a.segre_weights(sp))
                hull = [RationalVector([vals[0]]), RationalVector([vals[-1]])]
            else:
                hull = convex_hull_2d(a.segre_weights(sp))
            self.entries.append((_support_key(sp), hull))

    def family(self, chi: RationalVector) -> Optional[frozenset[frozenset[int]]]:
        out = set()
        for key, hull in self.entries:
            if _hull_contains(hull, chi):
                out.add(key)
        return frozenset(out) if out else None


def _hull_contains(hull: Sequence[RationalVector], q: RationalVector) -> bool:
    """Membership of q in a hull given by its CCW vertex list (dim <= 2)."""
    if len(hull) == 1:
        return hull[0].entries == q.entries
    if q.dim == 1:
        lo, hi = hull[0].entries[0], hull[1].entries[0]
        return lo <= q.entries[0] <= hi
    if len(hull) == 2:
        p1, p2 = hull[0] - q, hull[1] - q
        cross = p1.entries[0] * p2.entries[1] - p1.entries[1] * p2.entries[0]
        if cross != 0:
            return False
        return p1.dot(p2) <= 0
    qx, qy = q.entries
    n = len(hull)
    for i in range(n):
        x1, y1 = hull[i].entries
        x2, y2 = hull[(i + 1) % n].entries
        if (x2 - x1) * (qy - y1) - (y2 - y1) * (qx - x1) < 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Chamber complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WallCell:
    sample: RationalVector
    interval: Optional[tuple[Optional[Fraction], Optional[Fraction]]]
    family: frozenset[frozenset[int]]
    signs: tuple[int, ...]


@dataclass(frozen=True)
class Wall:
    line: Line2D
    cells: tuple[WallCell, ...]


@dataclass(frozen=True)
class Chamber:
    sample: RationalVector
    family: frozenset[frozenset[int]]
    signs: tuple[int, ...]
    interval: Optional[tuple[Fraction, Fraction]] = None  # rank 1 only


@dataclass(frozen=True)
class VertexFace:
    point: RationalVector
    family: frozenset[frozenset[int]]
    signs: tuple[int, ...]


@dataclass(frozen=True)
class ChamberComplex:
    rank: int
    walls: tuple[Wall, ...]
    chambers: tuple[Chamber, ...]
    vertices: tuple[VertexFace, ...]
    effective: EffectiveRegion

    def wall_values(self) -> list[Fraction]:
        """Rank-1 wall positions."""
        if self.rank != 1:
            raise RankUnsupported("wall values are a rank-1 notion")
        return sorted(w.cells[0].sample.entries[0] for w in self.walls)


def wall_chamber_decomposition(a: TorusAction) -> ChamberComplex:
    """Walls, chambers and cells of the twist space, with support families.

    Rank >= 3 has no face graph here; use wall_hyperplane_candidates for the
    raw hyperplane list.
    """
    if a.rank == 1:
        return _rank1_complex(a)
    if a.rank == 2:
        return _rank2_complex(a)
    raise RankUnsupported("wall/chamber enumeration is exact for rank <= 2 only")


def wall_hyperplane_candidates(
    a: TorusAction,
) -> list[tuple[RationalVector, Fraction]]:
    """Candidate wall hyperplanes in any rank, as (normal, offset) pairs.

    These are the affine hyperplanes spanned by affinely independent
    rank-tuples of distinct weights (weight values themselves in rank 1),
    deduplicated and canonically scaled.  Over-generated: no pruning and no
    face graph in rank >= 3.
    """
    weights = a.distinct_segre_weights()
    if a.rank == 1:
        return [
            (RationalVector([1]), w.entries[0])
            for w in sorted(weights, key=lambda v: v.entries)
        ]
    seen: dict[tuple, tuple[RationalVector, Fraction]] = {}
    for combo in itertools.combinations(weights, a.rank):
        normal = _affine_normal(combo)
        if normal is None:
            continue
        offset = normal.dot(combo[0])
        triple = RationalVector(list(normal.entries) + [offset]).primitive_integral()
        lead = next(v for v in triple.entries[:-1] if v != 0)
        if lead < 0:
            triple = -triple
        key = triple.entries
        seen.setdefault(
            key, (RationalVector(triple.entries[:-1]), triple.entries[-1])
        )
    return [seen[k] for k in sorted(seen)]


def _affine_normal(points: Sequence[RationalVector]) -> Optional[RationalVector]:
    """A normal of the affine hyperplane through rank points, or None when
    they are affinely dependent (kernel vector of the difference matrix)."""
    base = points[0]
    rows = [list((p - base).entries) for p in points[1:]]
    n = base.dim
    # eliminate to find a kernel vector of the (rank-1) x rank system
    cols = list(range(n))
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if r != len(rows):
        return None  # affinely dependent
    free = [c for c in cols if c not in pivots]
    if len(free) != 1:
        return None
    fc = free[0]
    normal = [Fraction(0)] * n
    normal[fc] = Fraction(1)
    for i, pc in enumerate(pivots):
        normal[pc] = -rows[i][fc]
    return RationalVector(normal)


def _rank1_complex(a: TorusAction) -> ChamberComplex:
    eff = effective_cone(a)
    oracle = _FamilyOracle(a)
    values = sorted({w.entries[0] for w in a.distinct_segre_weights()})
    # prune candidate walls whose family matches both neighbours
    walls: list[Wall] = []
    contributing: list[Fraction] = []
    for k, v in enumerate(values):
        chi = RationalVector([v])
        fam = oracle.family(chi)
        left = (
            oracle.family(RationalVector([(values[k - 1] + v) / 2]))
            if k > 0
            else None
        )
        right = (
            oracle.family(RationalVector([(v + values[k + 1]) / 2]))
            if k + 1 < len(values)
            else None
        )
        if fam is not None and (fam != left or fam != right):
            contributing.append(v)
            walls.append(
                Wall(
                    Line2D(RationalVector([1, 0]), v),
                    (WallCell(chi, None, fam, (0,)),),
                )
            )
    chambers = []
    for lo, hi in zip(contributing, contributing[1:]):
        mid = (lo + hi) / 2
        fam = oracle.family(RationalVector([mid]))
        if fam is not None:
            chambers.append(
                Chamber(RationalVector([mid]), fam, (), (lo, hi))
            )
    return ChamberComplex(1, tuple(walls), tuple(chambers), (), eff)


def _rank2_complex(a: TorusAction) -> ChamberComplex:
    eff = effective_cone(a)
    weights = a.distinct_segre_weights()
    if len(weights) == 1:
        raise DegenerateWeights("a single weight gives a point effective region")
    hull = list(eff.vertices)
    if len(hull) < 3:
        raise DegenerateWeights(
            "all weights are collinear: the effective region has no interior"
        )
    region = _expanded_region(hull)
    oracle = _FamilyOracle(a)
    lines: list[Line2D] = []
    for p, q in itertools.combinations(weights, 2):
        lines.append(Line2D.through(p, q))
    dec = chamber_decomposition_2d(Arrangement2D(lines, region))
    families = _label_faces(oracle, dec)
    keep = _contributing_lines(dec, families)
    if len(keep) != len(dec.lines):
        dec = chamber_decomposition_2d(Arrangement2D(keep, region))
        families = _label_faces(oracle, dec)
    return _assemble(a, dec, families, eff)


def _expanded_region(hull: Sequence[RationalVector]) -> list[Halfspace]:
    n = len(hull)
    cx = sum((v.entries[0] for v in hull), Fraction(0)) / n
    cy = sum((v.entries[1] for v in hull), Fraction(0)) / n
    centre = RationalVector([cx, cy])
    expanded = [centre + (v - centre).scale(2) for v in hull]
    region = []
    for i in range(n):
        p, q = expanded[i], expanded[(i + 1) % n]
        d = q - p
        inner = RationalVector([-d.entries[1], d.entries[0]])  # CCW inner normal
        region.append(Halfspace(inner, inner.dot(p), True))
    return region


def _label_faces(
    oracle: _FamilyOracle, dec: Decomposition
) -> dict[tuple[int, ...], Optional[frozenset[frozenset[int]]]]:
    labels: dict[tuple[int, ...], Optional[frozenset[frozenset[int]]]] = {}
    for face in dec.faces:
        labels[face.signs] = oracle.family(face.sample)
    return labels


def _contributing_lines(
    dec: Decomposition,
    families: dict[tuple[int, ...], Optional[frozenset[frozenset[int]]]],
) -> list[Line2D]:
    keep = []
    for idx, line in enumerate(dec.lines):
        contributes = False
        for face in dec.cells():
            if face.line_index != idx:
                continue
            fam = families[face.signs]
            if fam is None:
                continue
            for side in (1, -1):
                signs = list(face.signs)
                signs[idx] = side
                neighbour = families.get(tuple(signs))
                if neighbour is not None and neighbour != fam:
                    contributes = True
            if fam is not None and all(
                families.get(tuple(_flip(face.signs, idx, s))) is None
                for s in (1, -1)
            ):
                # wall on the effective boundary with no effective neighbour
                contributes = True
            if contributes:
                break
        if contributes:
            keep.append(line)
    return keep


def _flip(signs: tuple[int, ...], idx: int, side: int) -> list[int]:
    out = list(signs)
    out[idx] = side
    return out


def _assemble(
    a: TorusAction,
    dec: Decomposition,
    families: dict[tuple[int, ...], Optional[frozenset[frozenset[int]]]],
    eff: EffectiveRegion,
) -> ChamberComplex:
    # a cell is a true wall piece only where crossing it or standing on it
    # changes the family; cells equal to both neighbours carry no strict
    # semistability and their neighbours merge into one chamber
    parent: dict[tuple[int, ...], tuple[int, ...]] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    surviving: list[Face] = []
    for face in dec.cells():
        fam = families[face.signs]
        if fam is None:
            continue
        idx = face.line_index
        left = tuple(_flip(face.signs, idx, 1))
        right = tuple(_flip(face.signs, idx, -1))
        lf, rf = families.get(left), families.get(right)
        if lf is not None and rf is not None and lf == rf == fam:
            union(left, right)
        else:
            surviving.append(face)

    walls = []
    surviving_signs = {f.signs for f in surviving}
    for idx, line in enumerate(dec.lines):
        cells = [
            WallCell(f.sample, f.interval, families[f.signs], f.signs)
            for f in surviving
            if f.line_index == idx
        ]
        if cells:
            cells.sort(key=lambda c: c.sample.sort_key())
            walls.append(Wall(line, tuple(cells)))

    groups: dict[tuple[int, ...], list[Face]] = {}
    for face in dec.chambers():
        if families[face.signs] is None:
            continue
        groups.setdefault(find(face.signs), []).append(face)
    chambers = []
    for root, members in groups.items():
        rep = min(members, key=lambda f: f.sample.sort_key())
        fams = {families[f.signs] for f in members}
        assert len(fams) == 1, "merged chambers must share one family"
        chambers.append(Chamber(rep.sample, fams.pop(), rep.signs))
    chambers.sort(key=lambda c: c.sample.sort_key())

    vertices = []
    for face in dec.vertices():
        fam = families[face.signs]
        if fam is None:
            continue
        zero_at = [i for i, s in enumerate(face.signs) if s == 0]
        incident_survives = any(
            tuple(_flip(face.signs, z, s)) in surviving_signs
            for z in zero_at
            for s in (1, -1)
        )
        if incident_survives:
            vertices.append(VertexFace(face.sample, fam, face.signs))
    vertices.sort(key=lambda v: v.point.sort_key())
    return ChamberComplex(2, tuple(walls), tuple(chambers), tuple(vertices), eff)


# ---------------------------------------------------------------------------
# Crossing reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlipReport:
    """Combinatorial shadow of a wall crossing: support families gained and
    lost from left to right, plus the strictly wall-only semistables."""

    wall_cell: WallCell
    gained: frozenset[frozenset[int]]
    lost: frozenset[frozenset[int]]
    wall_only: frozenset[frozenset[int]]
    degenerate: bool


def _flip_families(
    left: frozenset[frozenset[int]],
    right: frozenset[frozenset[int]],
    wall: frozenset[frozenset[int]],
    cell: WallCell,
) -> FlipReport:
    gained = right - left
    lost = left - right
    wall_only = wall - (left | right)
    return FlipReport(cell, gained, lost, wall_only, not gained and not lost)


def crossing_report(
    a: TorusAction,
    complex_: ChamberComplex,
    wall_cell: WallCell,
    chamber_left: Chamber,
    chamber_right: Chamber,
) -> FlipReport:
    """Support-family diff across one wall cell.

    The chambers must be the two faces obtained from the cell by resolving
    its zero sign; anything else raises NotAdjacent.
    """
    if complex_.rank == 1:
        v = wall_cell.sample.entries[0]
        lo_ok = chamber_left.interval and chamber_left.interval[1] == v
        hi_ok = chamber_right.interval and chamber_right.interval[0] == v
        if not (lo_ok and hi_ok):
            raise NotAdjacent("chambers do not meet the wall from both sides")
    else:
        zero_at = [i for i, s in enumerate(wall_cell.signs) if s == 0]
        if len(zero_at) != 1:
            raise NotAdjacent("not a one-codimensional wall cell")
        idx = zero_at[0]
        expect = {
            tuple(_flip(wall_cell.signs, idx, 1)),
            tuple(_flip(wall_cell.signs, idx, -1)),
        }
        if {chamber_left.signs, chamber_right.signs} != expect:
            raise NotAdjacent("chambers are not the two sides of this cell")
    return _flip_families(
        chamber_left.family, chamber_right.family, wall_cell.family, wall_cell
    )


# ---------------------------------------------------------------------------
# External change of one-parameter subgroup
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExternalChangeReport:
    lambda_check: bool
    mu_check: bool
    single_lambda_family: frozenset[frozenset[int]]
    single_mu_family: frozenset[frozenset[int]]
    double_lambda_family: frozenset[frozenset[int]]
    double_mu_family: frozenset[frozenset[int]]

    @property
    def passed(self) -> bool:
        return self.lambda_check and self.mu_check


def _semistable_family(a: TorusAction) -> frozenset[frozenset[int]]:
    family = set()
    for sp in a.iter_supports():
        pts = PointSet(a.segre_weights(sp))
        if hull_membership(pts, a.twist) is not HullPosition.OUTSIDE:
            family.add(_support_key(sp))
    return frozenset(family)


def _restrict_family(
    family: Iterable[frozenset[int]], keep_below: int, line_block: Sequence[int]
) -> frozenset[frozenset[int]]:
    """Keep supports whose projective-line block contains its 0-coordinate,
    then forget that block (the coordinates at `keep_below` and beyond)."""
    zero_coord = line_block[0]
    out = set()
    for s in family:
        if zero_coord not in s:
            continue
        out.add(frozenset(i for i in s if i < keep_below))
    return frozenset(out)


def verify_external_change(
    a: TorusAction,
    m_lambda: Sequence[int],
    m_mu: Sequence[int],
    N: int,
    epsilon: Fraction,
    *,
    twist_lambda_override: Optional[RationalVector] = None,
    twist_mu_override: Optional[RationalVector] = None,
) -> ExternalChangeReport:
    """Check that switching the external one-parameter group is a change of
    linearisation, at the level of semistable support families.

    Builds the two single extensions and the double extension with its two
    character twists; the double family under the lambda twist, restricted
    along the mu line's nonvanishing-at-0 coordinate and projected back,
    must equal the single lambda-extension family; symmetrically for mu.
    Twist overrides exist for negative controls.
    """
    if a.rank > 2:
        raise RankUnsupported("external-change check is exact for rank <= 2 only")
    epsilon = Fraction(epsilon)
    r_lambda = min(int(v) for v in m_lambda)
    r_mu = min(int(v) for v in m_mu)
    ext_l = build_external_extension(a, m_lambda, N)
    ext_m = build_external_extension(a, m_mu, N)
    double, twist_l, twist_m = build_double_extension(
        a, m_lambda, m_mu, N, r_lambda, r_mu, epsilon
    )
    if twist_lambda_override is not None:
        twist_l = twist_lambda_override
    if twist_mu_override is not None:
        twist_m = twist_mu_override

    fam_single_l = _semistable_family(ext_l)
    fam_single_m = _semistable_family(ext_m)
    fam_double_l = _semistable_family(double.with_twist(double.twist + twist_l))
    fam_double_m = _semistable_family(double.with_twist(double.twist + twist_m))

    n = a.num_coords
    lambda_block = list(range(n, n + 2))
    mu_block = list(range(n + 2, n + 4))

    restricted_l = _restrict_family(fam_double_l, n + 2, mu_block)
    lambda_check = restricted_l == fam_single_l

    # the mu restriction keeps the lambda line's 0-coordinate and forgets the
    # lambda block, so relabel the mu block down onto the single extension
    mu_restricted = set()
    for s in fam_double_m:
        if lambda_block[0] not in s:
            continue
        t = frozenset(
            i if i < n else i - 2 for i in s if i < n or i >= n + 2
        )
        mu_restricted.add(t)
    mu_check = frozenset(mu_restricted) == fam_single_m

    return ExternalChangeReport(
        lambda_check,
        mu_check,
        fam_single_l,
        fam_single_m,
        fam_double_l,
        frozenset(fam_double_m),
    )
