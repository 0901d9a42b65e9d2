from fractions import Fraction

import pytest

from gitloci.action import SupportPoint, TorusAction, build_product_action
from gitloci.polytope import Cone
from gitloci.qpoly import InnerProduct, RationalVector
from gitloci.stability import TorusStatus, destabilising_beta, torus_status
from gitloci.strata import (
    NotInY,
    NotInZ,
    TooManyWeights,
    beta_index_set,
    in_Y,
    in_Z,
    p_beta,
    stratum_of,
    verify_stratification,
    z_ss_check,
)

V = RationalVector
IP1 = InnerProduct.identity(1)
IP2 = InnerProduct.identity(2)


def _a1():
    return TorusAction(1, [V([-1]), V([0]), V([2])], IP1)


def _sec71():
    w = [V([1, 0]), V([0, 1]), V([-1, -1])]
    fV = TorusAction(2, w, IP2)
    fVd = TorusAction(2, [-x for x in w], IP2)
    return build_product_action([fV, fV, fVd])


def test_beta_index_set_rank1():
    betas = beta_index_set(_a1())
    values = sorted(b.beta.entries[0] for b in betas)
    assert values == [-1, 0, 2]
    by_value = {b.beta.entries[0]: b for b in betas}
    assert by_value[2].lambda_beta.cochar == V([1])
    assert by_value[-1].lambda_beta.cochar == V([-1])
    assert by_value[0].lambda_beta is None
    assert by_value[2].norm_sq == 4


def test_beta_index_set_trivial_cases():
    same = TorusAction(1, [V([3]), V([3])], IP1)
    betas = beta_index_set(same)
    assert [b.beta.entries[0] for b in betas] == [3]
    with_zero = TorusAction(1, [V([0]), V([7])], IP1)
    assert Fraction(0) in {b.beta.entries[0] for b in beta_index_set(with_zero)}


def test_beta_index_set_weight_cap():
    a = TorusAction(1, [V([i]) for i in range(15)], IP1)
    with pytest.raises(TooManyWeights):
        beta_index_set(a)


def test_beta_index_set_chamber_hook():
    a = _a1()
    positive = Cone([(V([1]), True)])
    betas = beta_index_set(a, chamber=positive)
    assert sorted(b.beta.entries[0] for b in betas) == [2]


def test_stratum_of_examples():
    a = _a1()
    lab = stratum_of(a, SupportPoint([2]))
    assert lab.beta.beta == V([2])
    assert lab.in_Z and lab.in_Y and lab.in_Yss
    lab = stratum_of(a, SupportPoint([0, 2]))
    assert lab.beta.beta.is_zero()
    lab = stratum_of(a, SupportPoint([1, 2]))  # hull [0, 2] touches the origin
    assert lab.beta.beta.is_zero()


def test_stratum_membership_predicates():
    a = _a1()
    two = V([2])
    assert in_Y(a, SupportPoint([2]), two)
    assert in_Z(a, SupportPoint([2]), two)
    assert not in_Y(a, SupportPoint([0, 2]), two)
    assert not in_Z(a, SupportPoint([1, 2]), two)


def test_p_beta_examples():
    a = _a1()
    betas = {b.beta.entries[0]: b for b in beta_index_set(a)}
    b2 = betas[2]
    assert p_beta(a, SupportPoint([2]), b2).support == {2}
    with pytest.raises(NotInY):
        p_beta(a, SupportPoint([0, 2]), b2)
    # a mixed support retracting onto the perpendicular face: weights 0 and 2
    # pair exactly |beta|^2 with beta, weight 1 strictly more
    a2 = TorusAction(2, [V([0, 1]), V([1, 2]), V([3, 1])], IP2)
    beta, _ = destabilising_beta(a2, SupportPoint([0, 1, 2]))
    assert beta == V([0, 1])
    from gitloci.strata import BetaIndex

    bi = BetaIndex.from_beta(a2, beta, [0])
    assert p_beta(a2, SupportPoint([0, 1, 2]), bi).support == {0, 2}


def test_p_beta_idempotent_and_lands_in_Z():
    a = _sec71()
    report_betas = {b.beta.entries: b for b in _realized_betas(a)}
    for sp in a.iter_supports():
        beta, _ = destabilising_beta(a, sp)
        if beta.is_zero():
            continue
        bi = report_betas[beta.entries]
        retracted = p_beta(a, sp, bi)
        assert in_Z(a, retracted, bi.beta)
        assert p_beta(a, retracted, bi).support == retracted.support


def _realized_betas(a):
    from gitloci.strata import BetaIndex

    seen = {}
    for sp in a.iter_supports():
        beta, _ = destabilising_beta(a, sp)
        if beta.entries not in seen:
            seen[beta.entries] = BetaIndex.from_beta(a, beta, [])
    return list(seen.values())


def test_z_ss_check_examples():
    a = _a1()
    betas = {b.beta.entries[0]: b for b in beta_index_set(a)}
    assert z_ss_check(a, SupportPoint([2]), betas[2])
    with pytest.raises(NotInZ):
        z_ss_check(a, SupportPoint([0, 2]), betas[2])
    # two weights on the perpendicular line, both strictly to one side of beta
    a2 = TorusAction(2, [V([1, 1]), V([1, 3]), V([1, 5])], IP2)
    beta, _ = destabilising_beta(a2, SupportPoint([0]))
    assert beta == V([1, 1])
    from gitloci.strata import BetaIndex

    bi = BetaIndex.from_beta(a2, beta, [0])
    # support {1, 2} lies on the line <v, beta> = 2 but its hull misses beta
    assert in_Z(a2, SupportPoint([1, 2]), beta) is False  # pairings 4, 6
    b_high, _ = destabilising_beta(a2, SupportPoint([1]))
    assert z_ss_check(a2, SupportPoint([1]), BetaIndex.from_beta(a2, b_high, [1]))


def test_verify_stratification_rank1():
    rep = verify_stratification(_a1())
    assert rep.ok
    sizes = {k[0]: v for k, v in rep.stratum_sizes.items()}
    assert sizes == {Fraction(-1): 1, Fraction(0): 5, Fraction(2): 1}
    assert len(rep.betas) == 3
    # per-support labels cover every valid support and match stratum_of
    assert len(rep.support_beta) == 7
    assert rep.support_beta[frozenset({2})] == (Fraction(2),)
    assert rep.support_beta[frozenset({0, 2})] == (Fraction(0),)


def test_verify_stratification_single_weight():
    rep = verify_stratification(TorusAction(1, [V([4])], IP1))
    assert rep.ok
    assert len(rep.betas) == 1
    assert sum(rep.stratum_sizes.values()) == 1


def test_verify_stratification_sec71():
    a = _sec71()
    rep = verify_stratification(a)
    assert rep.ok, rep.violations
    assert sum(rep.stratum_sizes.values()) == 343
    # the open stratum is the semistable locus
    zero_key = (Fraction(0), Fraction(0))
    semistable = sum(
        1
        for sp in a.iter_supports()
        if torus_status(a, sp) is not TorusStatus.UNSTABLE
    )
    assert rep.stratum_sizes[zero_key] == semistable
    # realized strata embed into the ambient index sweep
    ambient = {b.beta.entries for b in beta_index_set(a)}
    assert {b.beta.entries for b in rep.betas} <= ambient


def test_zero_beta_iff_semistable():
    for a in (_a1(), _sec71()):
        for sp in a.iter_supports():
            beta, _ = destabilising_beta(a, sp)
            semistable = torus_status(a, sp) is not TorusStatus.UNSTABLE
            assert beta.is_zero() == semistable


def test_stratification_invariant_under_permutation():
    a = _a1()
    rep = verify_stratification(a)
    b = TorusAction(1, [V([2]), V([-1]), V([0])], IP1)
    rep2 = verify_stratification(b)
    assert rep2.ok
    assert {k: v for k, v in rep.stratum_sizes.items()} == {
        k: v for k, v in rep2.stratum_sizes.items()
    }
    assert {b_.beta.entries for b_ in rep.betas} == {
        b_.beta.entries for b_ in rep2.betas
    }


def test_stratification_with_twist():
    a = TorusAction(1, [V([-1]), V([0]), V([2])], IP1, twist=V([Fraction(1, 2)]))
    rep = verify_stratification(a)
    assert rep.ok
    twisted = sorted(k[0] for k in rep.stratum_sizes)
    assert twisted == [Fraction(-3, 2), Fraction(-1, 2), Fraction(0), Fraction(3, 2)]
