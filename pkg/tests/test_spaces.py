import itertools
import random
from fractions import Fraction

import pytest

from conftest import random_finite
from seqchain.errors import BudgetExceeded, MissingTailOracle, UnknownSpace
from seqchain.families import const_one, nat, prop28
from seqchain.sequences import FiniteRational, combine, unit, zero
from seqchain.spaces import (
    AINF,
    C0,
    CN0,
    HD,
    LINF,
    MetricBound,
    adjacent_pairs,
    ball_scale,
    cap_lp,
    lp,
    metric_bound,
    parse_space,
    standard_chain,
    strictly_included,
)

F = Fraction


# -- descriptors and order ---------------------------------------------------


def test_parse_and_format_roundtrip():
    for text in ("ainf", "cap-lp:0/1", "lp:1/2", "c0", "linf", "hd", "cn0"):
        assert str(parse_space(text)) == text
    assert parse_space("lp:2") == lp(2)
    assert parse_space(" cap-lp:3 ") == cap_lp(3)


def test_invalid_spaces_rejected():
    with pytest.raises(UnknownSpace):
        parse_space("banach")
    with pytest.raises(UnknownSpace):
        parse_space("lp:0")
    with pytest.raises(UnknownSpace):
        parse_space("cap-lp:-1")
    with pytest.raises(UnknownSpace):
        parse_space("lp")


def test_chain_order_examples():
    assert strictly_included(lp(1), C0)
    assert not strictly_included(C0, lp(1))
    assert not strictly_included(lp(2), lp(2))


def _space_grid():
    params = [F(1, 2), F(1), F(3, 2), F(2), F(7, 2)]
    grid = [AINF, cap_lp(0), C0, LINF, HD, CN0]
    grid += [lp(p) for p in params] + [cap_lp(p) for p in params]
    return grid


def test_order_is_strict_total_order_on_grid():
    grid = _space_grid()
    for x in grid:
        assert not strictly_included(x, x)
    for x, y in itertools.permutations(grid, 2):
        assert strictly_included(x, y) != strictly_included(y, x)  # trichotomy
    for x, y, z in itertools.permutations(grid, 3):
        if strictly_included(x, y) and strictly_included(y, z):
            assert strictly_included(x, z)


def test_standard_chain_is_ascending():
    chain = standard_chain()
    assert len(chain) == 10
    for x, y in zip(chain, chain[1:]):
        assert strictly_included(x, y)
    assert len(adjacent_pairs()) == 9


def test_interleaving_with_parameters():
    assert strictly_included(lp(1), cap_lp(1))
    assert strictly_included(cap_lp(1), lp(2))
    assert strictly_included(cap_lp(0), lp(F(1, 100)))
    assert strictly_included(AINF, cap_lp(0))


# -- metric bounds ------------------------------------------------------------


ALL_SPACES = [lp(1), lp(2), lp(F(1, 2)), cap_lp(0), cap_lp(1), C0, LINF, HD, CN0, AINF]


@pytest.mark.parametrize("space", ALL_SPACES, ids=str)
def test_identity_of_indiscernibles_bound(space):
    a = FiniteRational({0: F(3, 4), 5: (F(1), F(2))})
    assert metric_bound(space, a, a, 64, 32) == MetricBound(F(0), F(0))


def test_sup_metric_unit_sequence():
    mb = metric_bound(C0, unit(0), zero(), 64, 32)
    assert mb.lower <= 1 <= mb.upper
    assert mb.lower == mb.upper == 1


def test_l1_metric_finite():
    a = FiniteRational({0: F(3, 4)})
    mb = metric_bound(lp(1), a, zero(), 64, 32)
    assert mb.lower == mb.upper == F(3, 4)


def test_l2_metric_uses_root():
    a = FiniteRational({0: F(3), 1: F(4)})
    mb = metric_bound(lp(2), a, zero(), 64, 32)
    assert mb.lower == mb.upper == 5


def test_sub_one_exponent_metric_is_power_sum():
    a = FiniteRational({0: F(1, 4), 1: F(1, 4)})
    mb = metric_bound(lp(F(1, 2)), a, zero(), 64, 32)
    assert mb.lower == mb.upper == 1  # two terms of (1/4)**(1/2)


def test_metric_symmetry_at_bound_level():
    rng = random.Random(3)
    for _ in range(10):
        a, b = random_finite(rng), random_finite(rng)
        for space in (lp(1), C0, CN0, cap_lp(1)):
            assert metric_bound(space, a, b, 64, 32) == metric_bound(space, b, a, 64, 32)


def test_metric_triangle_at_bound_level():
    rng = random.Random(5)
    slack = F(1, 1 << 30)
    for _ in range(8):
        a, b, c = (random_finite(rng) for _ in range(3))
        for space in (lp(1), lp(2), C0, CN0):
            ab = metric_bound(space, a, b, 64, 32).upper
            bc = metric_bound(space, b, c, 64, 32).upper
            ac = metric_bound(space, a, c, 64, 32).upper
            assert ac <= ab + bc + slack


@pytest.mark.parametrize("space", [lp(1), lp(2), C0, CN0, cap_lp(1), HD], ids=str)
def test_budget_monotonicity(space):
    a = prop28()
    bounds = [metric_bound(space, a, zero(), budget, 32) for budget in (16, 64, 256, 1024)]
    for prev, cur in zip(bounds, bounds[1:]):
        assert cur.lower >= prev.lower
        assert cur.upper <= prev.upper


def test_metric_missing_tail_oracle():
    with pytest.raises(MissingTailOracle):
        metric_bound(lp(1), nat(), zero(), 32, 32)
    with pytest.raises(MissingTailOracle):
        metric_bound(C0, nat(), zero(), 32, 32)


def test_cn0_metric_total():
    # the pointwise-convergence metric needs no tail data at all
    mb = metric_bound(CN0, nat(), zero(), 64, 32)
    assert 0 < mb.lower <= mb.upper <= 2


def test_hd_metric_on_nat():
    mb = metric_bound(HD, nat(), zero(), 64, 32)
    assert mb.upper is not None and mb.lower > 0


def test_cap_metric_unit_sequence_value():
    # every inner exponent sees distance exactly 1, so the weighted sum of
    # q/(1+q) telescopes to 1/2
    mb = metric_bound(cap_lp(0), unit(0), zero(), 64, 32)
    assert mb.lower <= F(1, 2) <= mb.upper
    assert mb.upper - mb.lower < F(1, 1 << 16)


def test_hd_metric_unit_sequence_value():
    # each disc majorant is exactly 1, so the capped weighted sum is 1
    mb = metric_bound(HD, unit(0), zero(), 64, 32)
    assert mb.lower <= 1 <= mb.upper
    assert mb.upper - mb.lower < F(1, 1 << 16)


def test_ainf_diagnostic_metric_on_finite_data():
    a = FiniteRational({2: F(1)})
    mb = metric_bound(AINF, a, zero(), 64, 32)
    # derivative-majorant weights are 1, 2, 2 for i = 0, 1, 2, then zero
    expected = F(1, 2) + F(1, 2) * F(2, 3) + F(1, 4) * F(2, 3)
    assert mb.lower <= expected <= mb.upper
    assert mb.upper - mb.lower < F(1, 1 << 16)
    with pytest.raises(MissingTailOracle):
        metric_bound(AINF, const_one(), zero(), 64, 32)


# -- ball_scale ----------------------------------------------------------------


def test_ball_scale_sup_strict_inequality():
    y = unit(0)
    assert ball_scale(C0, y, F(1, 2), 64, 32) == F(1, 4)
    assert ball_scale(C0, y, F(2), 64, 32) == F(1)


def test_ball_scale_l1():
    y = FiniteRational({0: F(1)})
    assert ball_scale(lp(1), y, F(1, 8), 64, 32) == F(1, 16)


def test_ball_scale_postcondition_reverifiable():
    y = const_one()
    for space, radius in ((C0, F(1, 3)), (LINF, F(1, 5))):
        c = ball_scale(space, y, radius, 64, 32)
        scaled = combine([c], [y])
        assert metric_bound(space, scaled, zero(), 64, 32).upper < radius


def test_ball_scale_budget_exhaustion():
    with pytest.raises(BudgetExceeded):
        ball_scale(C0, unit(0), F(1, 10), 64, 32, max_halvings=2)
