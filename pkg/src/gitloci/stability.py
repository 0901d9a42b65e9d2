"""Hilbert-Mumford machinery for linearised torus actions.

mu(x, rho) is the maximum of the negated rho-weights over the nonzero
coordinates of x, computed after shifting by the character twist; its
normalisation M = mu/|rho| is kept exact by comparing signs and
cross-multiplied squares instead of taking square roots.

Instability is measured by the norm of the minimum-norm point of the
support's twisted weight hull (a nonnegative number); the associated
one-parameter subgroup is its smallest integral positive multiple.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from .action import (
    ExplicitPoint,
    GroupSpec,
    SupportPoint,
    TorusAction,
    generic_support,
    orbit_point,
)
from .polytope import (
    Arrangement2D,
    Cone,
    Decomposition,
    Face,
    HullPosition,
    Line2D,
    PointSet,
    chamber_decomposition_2d,
    cone_has_interior_point,
    hull_membership,
    min_norm_point,
)
from .qpoly import (
    BiPoly,
    CZStatus,
    RationalVector,
    analyze_common_zeros,
    common_zero_avoiding,
    common_zero_exists,
)


class EmptyCone(ValueError):
    pass


class NoAdaptedTwist(ValueError):
    pass


class RankUnsupported(ValueError):
    pass


class ZeroBeta(ValueError):
    pass


@dataclass(frozen=True)
class OneParamSubgroup:
    """An integral cocharacter, primitive unless constructed otherwise."""

    cochar: RationalVector

    def __init__(self, cochar: RationalVector | Sequence[int], primitive: bool = False):
        if not isinstance(cochar, RationalVector):
            cochar = RationalVector(cochar)
        if cochar.is_zero():
            raise ValueError("a one-parameter subgroup must be nonzero")
        if not cochar.is_integral():
            raise ValueError("cocharacter entries must be integral")
        if primitive:
            cochar = cochar.primitive_integral()
        object.__setattr__(self, "cochar", cochar)

    @staticmethod
    def from_vector(v: RationalVector) -> "OneParamSubgroup":
        """The smallest integral positive multiple of a rational direction."""
        return OneParamSubgroup(v.primitive_integral())

    def pairing(self, w: RationalVector) -> Fraction:
        return self.cochar.dot(w)

    def scale(self, n: int) -> "OneParamSubgroup":
        if n <= 0:
            raise ValueError("only positive rescalings preserve the ray")
        return OneParamSubgroup(self.cochar.scale(n))


@functools.total_ordering
@dataclass(frozen=True)
class HMValue:
    """mu / sqrt(norm_sq), compared without irrational arithmetic."""

    mu: Fraction
    norm_sq: Fraction

    def __init__(self, mu: Fraction | int, norm_sq: Fraction | int):
        norm_sq = Fraction(norm_sq)
        if norm_sq <= 0:
            raise ValueError("norm square must be positive")
        object.__setattr__(self, "mu", Fraction(mu))
        object.__setattr__(self, "norm_sq", norm_sq)

    def sign(self) -> int:
        return (self.mu > 0) - (self.mu < 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HMValue):
            return NotImplemented
        if self.sign() != other.sign():
            return False
        return self.mu * self.mu * other.norm_sq == other.mu * other.mu * self.norm_sq

    def __lt__(self, other: "HMValue") -> bool:
        if self.sign() != other.sign():
            return self.sign() < other.sign()
        lhs = self.mu * self.mu * other.norm_sq
        rhs = other.mu * other.mu * self.norm_sq
        if self.sign() >= 0:
            return lhs < rhs
        return lhs > rhs

    def __hash__(self) -> int:
        # normalise mu^2/norm_sq with the sign for hashing
        return hash((self.sign(), self.mu * self.mu / self.norm_sq))


class TorusStatus(str, Enum):
    STABLE = "stable"
    STRICTLY_SEMISTABLE = "strictly-semistable"
    UNSTABLE = "unstable"


def hm_mu(a: TorusAction, x: SupportPoint, rho: OneParamSubgroup) -> Fraction:
    """mu(x, rho) = max over the support of -<rho, alpha_i - chi>.

    Computed per factor: the maximum over Segre coordinates of the negated
    sum splits into a sum of per-factor minima.
    """
    a.validate_support(x)
    shift = rho.pairing(a.twist)
    total = Fraction(0)
    for blk in a.per_factor_support(x):
        total += min(rho.pairing(a.weights[i]) for i in blk)
    return shift - total


def hm_M(a: TorusAction, x: SupportPoint, rho: OneParamSubgroup) -> HMValue:
    """Normalised Hilbert-Mumford value mu / |rho| (norm from the action's form)."""
    return HMValue(hm_mu(a, x, rho), a.ip.norm_sq(rho.cochar))


def torus_status(
    a: TorusAction, x: SupportPoint, *, relative_interior: bool = False
) -> TorusStatus:
    """Classify the twist against the support's weight hull.

    Interior (in the ambient sense by default; switchable to relative
    interior for experiments) means stable; boundary, strictly semistable;
    outside, unstable.
    """
    a.validate_support(x)
    pts = PointSet(a.segre_weights(x))
    pos = hull_membership(pts, a.twist, relative=relative_interior)
    if pos is HullPosition.INTERIOR:
        return TorusStatus.STABLE
    if pos is HullPosition.BOUNDARY:
        return TorusStatus.STRICTLY_SEMISTABLE
    return TorusStatus.UNSTABLE


def destabilising_beta(
    a: TorusAction, x: SupportPoint, *, require_unstable: bool = False
) -> tuple[RationalVector, Optional[OneParamSubgroup]]:
    """Minimum-norm point of the twisted support weights, with the smallest
    integral positive multiple as the associated one-parameter subgroup.

    beta = 0 exactly when x is semistable; then there is no distinguished
    subgroup and `require_unstable` turns that case into an error.
    """
    a.validate_support(x)
    pts = PointSet(a.segre_weights(x, twisted=True))
    beta = min_norm_point(pts, a.ip)
    if beta.is_zero():
        if require_unstable:
            raise ZeroBeta("x is semistable; no destabilising 1PS")
        return beta, None
    return beta, OneParamSubgroup.from_vector(beta)


def admissible_cone(g: GroupSpec, rank: int) -> Cone:
    """Cocharacters pairing strictly positively with every adjoint weight.

    An empty adjoint list (trivial unipotent radical) gives the full space;
    infeasibility of the strict system is detected exactly and reported.
    """
    for w in g.adjoint_weights:
        if w.dim != rank:
            raise RankUnsupported("adjoint weights do not match the rank")
    cone = Cone([(w, True) for w in g.adjoint_weights])
    if not cone.is_full_space and cone_has_interior_point(cone, rank) is None:
        raise EmptyCone("no cocharacter pairs strictly positively with all adjoint weights")
    return cone


@dataclass(frozen=True)
class XMinData:
    """Minimal-weight data of a one-parameter flow."""

    per_factor_argmin: tuple[frozenset[int], ...]
    min_weight: Fraction

    @property
    def min_support(self) -> frozenset[int]:
        out: set[int] = set()
        for blk in self.per_factor_argmin:
            out |= blk
        return frozenset(out)

    def meets(self, per_factor: Sequence[frozenset[int]]) -> bool:
        """Does a support have a coordinate of minimal weight in every factor?"""
        return all(s & m for s, m in zip(per_factor, self.per_factor_argmin))

    def contains(self, per_factor: Sequence[frozenset[int]]) -> bool:
        """Is the support entirely inside the minimal weight space?"""
        return all(s <= m for s, m in zip(per_factor, self.per_factor_argmin))


def x_min(a: TorusAction, lam: OneParamSubgroup) -> XMinData:
    """Per-factor argmin of the weight pairing, plus the minimal Segre weight.

    Ties keep all minimal indices.  Basin membership for a support is
    `meets`: a nonzero minimal-weight coordinate in every factor.
    """
    argmins: list[frozenset[int]] = []
    total = Fraction(0)
    for blk in a.factor_partition:
        vals = {i: lam.pairing(a.weights[i]) for i in blk}
        lo = min(vals.values())
        total += lo
        argmins.append(frozenset(i for i, v in vals.items() if v == lo))
    return XMinData(tuple(argmins), total)


@dataclass(frozen=True)
class AdaptedRegion:
    """Twist interval on the scalar t = <lambda, chi> making the flow adapted:
    strictly above the lowest weight, strictly below the next one, with the
    well-adapted sub-slab hugging the lower wall."""

    lower: Fraction
    upper: Fraction
    lam: OneParamSubgroup
    epsilon: Fraction

    def __init__(
        self,
        lower: Fraction,
        upper: Fraction,
        lam: OneParamSubgroup,
        epsilon: Fraction,
    ):
        lower, upper, epsilon = Fraction(lower), Fraction(upper), Fraction(epsilon)
        if not lower < upper:
            raise ValueError("adapted region needs lower < upper")
        if not 0 < epsilon < upper - lower:
            raise ValueError("epsilon must lie strictly inside the slab width")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "epsilon", epsilon)

    def is_adapted(self, t: Fraction) -> bool:
        return self.lower < t < self.upper

    def is_well_adapted(self, t: Fraction) -> bool:
        return self.lower < t < self.lower + self.epsilon

    def well_adapted_interval(self) -> tuple[Fraction, Fraction]:
        return (self.lower, self.lower + self.epsilon)


def adapted_region(
    a: TorusAction,
    lam: OneParamSubgroup,
    epsilon: Optional[Fraction] = None,
) -> AdaptedRegion:
    """The twist interval adapted to the flow, with its well-adapted slab.

    Default epsilon is a thousandth of the slab width (nothing in the theory
    pins a value; only existence of some positive epsilon is used).
    """
    values = sorted({lam.pairing(w) for w in a.segre_weights()})
    if len(values) < 2:
        raise NoAdaptedTwist("the flow has a single weight; no adapted twist exists")
    lower, upper = values[0], values[1]
    if epsilon is None:
        epsilon = (upper - lower) / 1000
    return AdaptedRegion(lower, upper, lam, Fraction(epsilon))


# ---------------------------------------------------------------------------
# Cocharacter fans and universal flows
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FanPiece:
    face: Face
    sample: OneParamSubgroup
    per_factor_argmin: tuple[frozenset[int], ...]

    @property
    def min_support(self) -> frozenset[int]:
        out: set[int] = set()
        for blk in self.per_factor_argmin:
            out |= blk
        return frozenset(out)


@dataclass(frozen=True)
class CocharacterFan:
    pieces: tuple[FanPiece, ...]
    decomposition: Optional[Decomposition]

    def chamber_pieces(self) -> list[FanPiece]:
        if self.decomposition is None:
            return list(self.pieces)
        return [p for p in self.pieces if p.face.kind == "chamber"]


def cocharacter_fan(a: TorusAction, cone: Cone) -> CocharacterFan:
    """Partition of the cone by the weight-difference hyperplanes, each piece
    labelled with its constant minimal-weight support.

    Only within-factor weight differences matter: the argmin of a sum of
    per-factor minima changes exactly where some factor's pairing order does.
    Exact face enumeration is implemented for rank <= 2.
    """
    if a.rank == 1:
        sample = cone_has_interior_point(cone, 1)
        if sample is None:
            raise EmptyCone("cone has no interior cocharacter")
        lam = OneParamSubgroup(sample)
        face = Face("chamber", sample, ())
        return CocharacterFan(
            (FanPiece(face, lam, x_min(a, lam).per_factor_argmin),), None
        )
    if a.rank != 2:
        raise RankUnsupported("exact fan enumeration is limited to rank <= 2")
    lines = []
    for blk in a.factor_partition:
        for i, j in itertools.combinations(blk, 2):
            d = a.weights[i] - a.weights[j]
            if not d.is_zero():
                lines.append(Line2D.canonical(d, Fraction(0)))
    arr = Arrangement2D(lines, cone.to_region())
    try:
        dec = chamber_decomposition_2d(arr)
    except Exception as exc:  # EmptyRegion
        raise EmptyCone(str(exc)) from exc
    pieces = []
    for face in dec.faces:
        if face.sample.is_zero():
            continue  # the apex carries no flow
        lam = OneParamSubgroup.from_vector(face.sample)
        pieces.append(FanPiece(face, lam, x_min(a, lam).per_factor_argmin))
    return CocharacterFan(tuple(pieces), dec)


@dataclass(frozen=True)
class UniversalResult:
    unique: bool
    pieces: tuple[FanPiece, ...]


def universal_1ps(a: TorusAction, cone: Cone) -> UniversalResult:
    """Whether every admissible flow selects the same minimal-weight face.

    Implemented as: the cocharacter fan restricted to the cone has exactly
    one full-dimensional piece.  Otherwise the pieces are returned.
    """
    fan = cocharacter_fan(a, cone)
    chambers = fan.chamber_pieces()
    return UniversalResult(len(chambers) == 1, tuple(chambers))


def gm_stable_support(a: TorusAction, lam: OneParamSubgroup):
    """Predicate: properly attracted to the minimal stratum.

    A support satisfies it iff it meets the minimal weight space in every
    factor and is not entirely contained in it.
    """
    data = x_min(a, lam)

    def predicate(x: SupportPoint) -> bool:
        a.validate_support(x)
        per = a.per_factor_support(x)
        return data.meets(per) and not data.contains(per)

    return predicate


# ---------------------------------------------------------------------------
# Unipotent sweeps on explicit points
# ---------------------------------------------------------------------------


class SweepStatus(str, Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class SweepVerdict:
    status: SweepStatus
    witness: Optional[tuple[Fraction, Fraction]] = None


def uhat_stable_explicit(
    x: ExplicitPoint, a: TorusAction, g: GroupSpec, lam: OneParamSubgroup
) -> SweepVerdict:
    """Stability for the graded extension: the whole unipotent orbit must be
    properly attracted to the minimal stratum.

    Two elimination questions decide it: (i) per factor, the minimal-weight
    coordinates of u.x must have no common parameter zero; (ii) the
    non-minimal coordinates must have no common zero either.  A common zero
    is an instability witness (rational when the elimination finds one).
    """
    orbit = orbit_point(x, g)
    data = x_min(a, lam)
    local = _orbit_by_global_index(a, orbit)

    undecided = False
    for blk, argmin in zip(a.factor_partition, data.per_factor_argmin):
        polys = [local[i] for i in blk if i in argmin]
        res = common_zero_exists(polys)
        if res.status is CZStatus.YES:
            return SweepVerdict(SweepStatus.UNSTABLE, res.witness)
        if res.status is CZStatus.UNDECIDED:
            undecided = True

    non_min = [
        local[i]
        for blk, argmin in zip(a.factor_partition, data.per_factor_argmin)
        for i in blk
        if i not in argmin
    ]
    if not non_min:
        # everything is minimal: the orbit sits inside the minimal stratum
        return SweepVerdict(SweepStatus.UNSTABLE, (Fraction(0), Fraction(0)))
    res = common_zero_exists(non_min)
    if res.status is CZStatus.YES:
        return SweepVerdict(SweepStatus.UNSTABLE, res.witness)
    if res.status is CZStatus.UNDECIDED or undecided:
        return SweepVerdict(SweepStatus.UNDECIDED)
    return SweepVerdict(SweepStatus.STABLE)


def _orbit_by_global_index(
    a: TorusAction, orbit: ExplicitPoint
) -> dict[int, BiPoly]:
    local: dict[int, BiPoly] = {}
    for blk, coords in zip(a.factor_partition, orbit.coords):
        for gidx, e in zip(blk, coords):
            local[gidx] = e if isinstance(e, BiPoly) else BiPoly.const(e)
    return local


@dataclass(frozen=True)
class AchievableSupport:
    support: SupportPoint
    status: CZStatus
    witness: Optional[tuple[Fraction, Fraction]]


def achievable_supports(
    x: ExplicitPoint, a: TorusAction, g: GroupSpec
) -> list[AchievableSupport]:
    """Supports attained on the unipotent orbit of x, decided by elimination.

    A candidate support is achievable iff the coordinates outside it share a
    parameter zero avoiding the zero sets of the coordinates inside it.
    Candidates run between the never-vanishing coordinates (nonzero
    constants) and the generic support, factor by factor; a rational grid
    sweep independently confirms achievability where elimination hesitates.
    """
    orbit = orbit_point(x, g)
    local = _orbit_by_global_index(a, orbit)
    gen = generic_support(orbit, a)

    grid_found: dict[frozenset[int], tuple[Fraction, Fraction]] = {}
    span = 3
    for b0 in range(-span, span + 1):
        for c0 in range(-span, span + 1):
            key = frozenset(
                i for i in range(a.num_coords) if local[i].eval_at(b0, c0) != 0
            )
            grid_found.setdefault(key, (Fraction(b0), Fraction(c0)))

    per_factor_options = []
    for blk in a.factor_partition:
        alive = [i for i in blk if i in gen.support]
        varying = [i for i in alive if not local[i].is_constant()]
        opts = []
        for r in range(len(varying) + 1):
            for drop in itertools.combinations(varying, r):
                sub = frozenset(set(alive) - set(drop))
                if sub:
                    opts.append(sub)
        per_factor_options.append(sorted(set(opts), key=sorted))

    results = []
    for combo in itertools.product(*per_factor_options):
        support = frozenset(itertools.chain.from_iterable(combo))
        sp = SupportPoint(support)
        vanish = [
            local[i]
            for i in gen.support
            if i not in support and not local[i].is_zero()
        ]
        avoid = [local[i] for i in sorted(support)]
        if support in grid_found:
            results.append(
                AchievableSupport(sp, CZStatus.YES, grid_found[support])
            )
            continue
        res = common_zero_avoiding(vanish, avoid)
        results.append(AchievableSupport(sp, res.status, res.witness))
    return results


def h_stable_explicit(
    x: ExplicitPoint, a: TorusAction, g: GroupSpec
) -> SweepVerdict:
    """Stability for the full group with torus Levi factor: every support
    achievable on the unipotent orbit must be torus-stable.

    An achievable non-stable support is a witness of instability; candidates
    the elimination cannot settle make the verdict Undecided only when they
    would matter (a non-stable status).
    """
    undecided = False
    for cand in achievable_supports(x, a, g):
        status = torus_status(a, cand.support)
        if status is TorusStatus.STABLE:
            continue
        if cand.status is CZStatus.YES:
            return SweepVerdict(SweepStatus.UNSTABLE, cand.witness)
        if cand.status is CZStatus.UNDECIDED:
            undecided = True
    if undecided:
        return SweepVerdict(SweepStatus.UNDECIDED)
    return SweepVerdict(SweepStatus.STABLE)


class StabDimension(str, Enum):
    ZERO = "0"
    POSITIVE = "positive"
    UNDECIDED = "undecided"


def stab_u_dimension(x: ExplicitPoint, g: GroupSpec) -> StabDimension:
    """Dimension class of the unipotent stabiliser of a rational point.

    Solves u.x = x projectively per factor (2x2 minors eliminate the scale)
    and classifies the parameter solution set: a finite set means trivial
    stabiliser (a unipotent group has no nontrivial finite subgroups in
    characteristic zero), anything of positive dimension is Positive.
    """
    if g.u_params == 0:
        return StabDimension.ZERO
    orbit = orbit_point(x, g)
    minors: list[BiPoly] = []
    for coords, moved in zip(x.coords, orbit.coords):
        vals = [Fraction(v) for v in coords]
        polys = [e if isinstance(e, BiPoly) else BiPoly.const(e) for e in moved]
        n = len(vals)
        for i in range(n):
            for j in range(i + 1, n):
                m = polys[i].scale(vals[j]) - polys[j].scale(vals[i])
                if not m.is_zero():
                    minors.append(m)
    if not minors:
        return StabDimension.POSITIVE  # all of U fixes x
    if g.u_params == 1:
        # minors are univariate in b; nonzero system means finitely many roots
        return StabDimension.ZERO
    info = analyze_common_zeros(minors)
    if info.kind == "finite":
        return StabDimension.ZERO
    if info.kind in ("lines", "curve", "everything"):
        return StabDimension.POSITIVE
    if info.kind == "empty":
        raise AssertionError("the identity always stabilises")
    return StabDimension.UNDECIDED
