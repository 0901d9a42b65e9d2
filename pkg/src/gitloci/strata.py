"""Stratification of the unstable locus by minimum-norm destabilisers.

Every support determines beta = the closest point to the origin of its
twisted weight hull; the strata are indexed by the distinct values.  For a
torus all of weight space counts as the positive chamber, so the index sweep
has no Weyl-group restriction (an optional cone hook is kept for callers
that intend one).

The geometry of a stratum lives on the affine hyperplane through beta
perpendicular to it (perpendicular in the sense of the action's inner
product): supports whose weights all pair >= |beta|^2 with beta, at least
one exactly, retract onto the exact-pairing face by flowing along the
associated one-parameter subgroup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .action import SupportPoint, TorusAction
from .polytope import Cone, HullPosition, PointSet, hull_membership, min_norm_point
from .qpoly import RationalVector
from .stability import OneParamSubgroup, TorusStatus, torus_status


class TooManyWeights(ValueError):
    pass


class NotInY(ValueError):
    pass


class NotInZ(ValueError):
    pass


@dataclass(frozen=True)
class BetaIndex:
    """One stratum index: the minimum-norm point of some weight subset."""

    beta: RationalVector
    norm_sq: Fraction
    lambda_beta: Optional[OneParamSubgroup]
    generating_subset: frozenset[int]  # indices into the distinct twisted weights

    @staticmethod
    def from_beta(
        a: TorusAction, beta: RationalVector, generating: Iterable[int]
    ) -> "BetaIndex":
        lam = None if beta.is_zero() else OneParamSubgroup.from_vector(beta)
        return BetaIndex(
            beta, a.ip.norm_sq(beta), lam, frozenset(generating)
        )


def beta_index_set(
    a: TorusAction, chamber: Optional[Cone] = None
) -> list[BetaIndex]:
    """All distinct minimum-norm points over nonempty subsets of the distinct
    twisted weights (every subset is the state set of some ambient point).

    The sweep is 2^n over distinct weights, capped at 14.  The optional cone
    intersects the index set with a chamber, for callers modelling a Weyl
    group; for a torus it is a no-op left unset.
    """
    weights = a.distinct_segre_weights(twisted=True)
    n = len(weights)
    if n > 14:
        raise TooManyWeights(f"{n} distinct weights exceed the 2^n sweep cap of 14")
    found: dict[tuple[Fraction, ...], BetaIndex] = {}
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            beta = min_norm_point(PointSet([weights[i] for i in combo]), a.ip)
            if chamber is not None and not chamber.contains(beta):
                continue
            if beta.entries not in found:
                found[beta.entries] = BetaIndex.from_beta(a, beta, combo)
    return [found[k] for k in sorted(found)]


def _support_beta(a: TorusAction, x: SupportPoint) -> RationalVector:
    pts = PointSet(a.segre_weights(x, twisted=True))
    return min_norm_point(pts, a.ip)


def _beta_index_for_support(
    a: TorusAction, x: SupportPoint, beta: RationalVector
) -> BetaIndex:
    distinct = a.distinct_segre_weights(twisted=True)
    index_of = {w.entries: i for i, w in enumerate(distinct)}
    generating = {
        index_of[w.entries] for w in a.segre_weights(x, twisted=True)
    }
    return BetaIndex.from_beta(a, beta, generating)


@dataclass(frozen=True)
class StratumLabel:
    beta: BetaIndex
    in_Z: bool
    in_Y: bool
    in_Yss: bool

    def __post_init__(self):
        if self.in_Z and not self.in_Y:
            raise ValueError("Z membership implies Y membership")
        if self.in_Yss and not self.in_Y:
            raise ValueError("Yss membership implies Y membership")


def _coordinate_pairings(
    a: TorusAction, beta: RationalVector
) -> tuple[list[Fraction], Fraction]:
    """Per-coordinate pairings <alpha_i, beta> and the twist shift <chi, beta>.

    The pairing of a Segre weight is the sum over one coordinate per factor
    minus the shift, so support-wide minima and maxima reduce to per-factor
    minima and maxima.
    """
    pair = [a.ip.pairing(w, beta) for w in a.weights]
    return pair, a.ip.pairing(a.twist, beta)


def _pairing_range(
    a: TorusAction,
    x: SupportPoint,
    pair: Sequence[Fraction],
    shift: Fraction,
) -> tuple[Fraction, Fraction]:
    lo = -shift
    hi = -shift
    for blk in a.per_factor_support(x):
        vals = [pair[i] for i in blk]
        lo += min(vals)
        hi += max(vals)
    return lo, hi


def in_Y(a: TorusAction, x: SupportPoint, beta: RationalVector) -> bool:
    """All support weights on the far side of the perpendicular hyperplane
    through beta, at least one exactly on it; equivalently the minimal
    pairing over the support equals |beta|^2."""
    if beta.is_zero():
        return torus_status(a, x) is not TorusStatus.UNSTABLE
    pair, shift = _coordinate_pairings(a, beta)
    lo, _ = _pairing_range(a, x, pair, shift)
    return lo == a.ip.norm_sq(beta)


def in_Z(a: TorusAction, x: SupportPoint, beta: RationalVector) -> bool:
    """All support weights exactly on the perpendicular hyperplane."""
    pair, shift = _coordinate_pairings(a, beta)
    lo, hi = _pairing_range(a, x, pair, shift)
    if beta.is_zero():
        # degenerate reading: every twisted support weight is zero
        return all(w.is_zero() for w in a.segre_weights(x, twisted=True))
    ns = a.ip.norm_sq(beta)
    return lo == ns and hi == ns


def stratum_of(a: TorusAction, x: SupportPoint) -> StratumLabel:
    """The stratum of a support, with its hyperplane-membership flags.

    beta is the support's own minimum-norm destabiliser, so semistable
    supports land in the open stratum (beta = 0) and unstable ones satisfy
    the Y-membership conditions by the supporting-hyperplane property of the
    closest point.
    """
    a.validate_support(x)
    beta = _support_beta(a, x)
    bi = _beta_index_for_support(a, x, beta)
    if beta.is_zero():
        return StratumLabel(bi, in_Z(a, x, beta), True, True)
    return StratumLabel(bi, in_Z(a, x, beta), in_Y(a, x, beta), True)


def p_beta(a: TorusAction, x: SupportPoint, b: BetaIndex) -> SupportPoint:
    """Retraction onto the perpendicular face: the limit of the flow along
    the associated subgroup keeps, per factor, the support coordinates of
    minimal pairing with beta.  For a Y-member the minimal Segre pairing is
    exactly |beta|^2, so this is the exact-pairing face (the twist shifts
    all Segre pairings equally and never moves the argmin)."""
    if not in_Y(a, x, b.beta):
        raise NotInY("support is not in the Y-stratum of this index")
    if b.beta.is_zero():
        return x
    keep = []
    for blk in a.per_factor_support(x):
        vals = {i: a.ip.pairing(a.weights[i], b.beta) for i in blk}
        lo = min(vals.values())
        keep.extend(i for i, v in vals.items() if v == lo)
    return SupportPoint(keep)


def z_ss_check(a: TorusAction, x: SupportPoint, b: BetaIndex) -> bool:
    """Semistability on the perpendicular stratum core: after shifting by
    beta, the support must contain beta in its twisted weight hull."""
    if not in_Z(a, x, b.beta):
        raise NotInZ("support is not in the Z-stratum of this index")
    pts = PointSet(a.segre_weights(x, twisted=True))
    return hull_membership(pts, b.beta) is not HullPosition.OUTSIDE


@dataclass(frozen=True)
class StratificationReport:
    betas: tuple[BetaIndex, ...]
    stratum_sizes: dict[tuple[Fraction, ...], int]
    support_beta: dict[frozenset[int], tuple[Fraction, ...]]
    violations: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_stratification(a: TorusAction) -> StratificationReport:
    """Exhaustive check of the stratification's combinatorial properties.

    Over all valid supports: (i) each support receives exactly one beta
    (disjoint cover including the open stratum); (ii) closure order: the
    beta of any valid sub-support has norm-square >= that of the support
    (support shrinking is the combinatorial closure of coordinate
    vanishing); (iii) the Y-semistable locus is the retraction preimage of
    the Z-semistable one, pointwise.  Violations are reported as data.
    """
    supports = list(a.iter_supports())
    betas: dict[tuple[Fraction, ...], BetaIndex] = {}
    by_support: dict[frozenset[int], RationalVector] = {}
    sizes: dict[tuple[Fraction, ...], int] = {}
    violations: list[dict] = []

    norms: dict[frozenset[int], Fraction] = {}
    for sp in supports:
        beta = _support_beta(a, sp)
        by_support[sp.support] = beta
        norms[sp.support] = a.ip.norm_sq(beta)
        key = beta.entries
        sizes[key] = sizes.get(key, 0) + 1
        if key not in betas:
            betas[key] = _beta_index_for_support(a, sp, beta)

    # (ii) closure order under sub-supports
    for sp in supports:
        base = norms[sp.support]
        for sub in _valid_subsupports(a, sp):
            sub_norm = norms[sub.support]
            if sub_norm < base:
                violations.append(
                    {
                        "kind": "closure-order",
                        "support": sorted(sp.support),
                        "sub_support": sorted(sub.support),
                    }
                )

    # (iii) Yss = p^{-1}(Zss) for every nonzero index
    for key, bi in sorted(betas.items()):
        if bi.beta.is_zero():
            continue
        pair, shift = _coordinate_pairings(a, bi.beta)
        ns = bi.norm_sq
        for sp in supports:
            per = a.per_factor_support(sp)
            lo = -shift
            for blk in per:
                lo += min(pair[i] for i in blk)
            if lo != ns:
                continue  # not in the Y-stratum of this index
            keep = []
            for blk in per:
                vals = {i: pair[i] for i in blk}
                m = min(vals.values())
                keep.extend(i for i, v in vals.items() if v == m)
            retracted = SupportPoint(keep)
            lhs = by_support[sp.support] == bi.beta  # lambda_beta adapted to sp
            pts = PointSet(a.segre_weights(retracted, twisted=True))
            rhs = hull_membership(pts, bi.beta) is not HullPosition.OUTSIDE
            if lhs != rhs:
                violations.append(
                    {
                        "kind": "retraction-semistability",
                        "support": sorted(sp.support),
                        "beta": [str(v) for v in bi.beta.entries],
                    }
                )

    ordered = [betas[k] for k in sorted(betas)]
    labels = {s: beta.entries for s, beta in by_support.items()}
    return StratificationReport(tuple(ordered), sizes, labels, tuple(violations))


def _valid_subsupports(a: TorusAction, sp: SupportPoint):
    per = a.per_factor_support(sp)
    choices = []
    for blk in per:
        blk = sorted(blk)
        subs = []
        for size in range(1, len(blk) + 1):
            subs.extend(itertools.combinations(blk, size))
        choices.append(subs)
    for combo in itertools.product(*choices):
        yield SupportPoint(itertools.chain.from_iterable(combo))
