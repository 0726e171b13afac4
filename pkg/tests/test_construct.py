import pytest

from legcable.construct import (
    ConstructionSpec, Family, construct, legendrian_pushoff, link_invariants_of, minus_one_cable_front,
    positive_cable_front, unknot_front,
)
from legcable.errors import NotRealizable, Unsupported
from legcable.fronts import classical_invariants, cusps, linking_number, validate
from legcable.ranges import LinkInvariants, normalize


def test_unknot_front_examples():
    d = unknot_front(-1, 0)
    assert sum(cusps(d, 0)) == 2
    d = unknot_front(-3, 0)
    assert classical_invariants(d, 0) == (-3, 0)
    assert cusps(d, 0) == (3, 3)
    with pytest.raises(NotRealizable):
        unknot_front(-2, 0)


@pytest.mark.parametrize("m,r", [(1, 0), (3, 2), (4, -1)])
def test_pushoff_examples(m, r):
    rev = legendrian_pushoff(unknot_front(-m, r), 0, reverse=True)
    assert classical_invariants(rev, 1) == (-m, -r)
    assert linking_number(rev, 0, 1) == m


def test_unreversed_pushoff_of_max_unknot():
    d = legendrian_pushoff(unknot_front(-1, 0), 0, reverse=False)
    assert linking_number(d, 0, 1) == -1


def test_positive_cable_peak():
    d = positive_cable_front(3, 2, 1, 0)
    assert validate(d) == []
    assert link_invariants_of(d) == (-1, 0, 1, 0, 2)


def test_minus_one_examples():
    d = minus_one_cable_front(3, 1, 0, -5, 0)
    assert link_invariants_of(d) == (-1, 0, -5, 0, 3)
    d = minus_one_cable_front(2, 4, 1, -2, -1)
    assert link_invariants_of(d) == (-4, 1, -2, -1, 2)


@pytest.mark.parametrize("t", [
    (3, 2, -1, 0, -2, 1), (2, 3, -2, 1, 0, -1), (1, 4, -3, 0, -3, 0), (-1, 3, -1, 0, -7, 2),
    (-1, 2, -5, 2, -3, 0), (1, 0, -2, 1, -3, 0), (1, 1, -1, 0, -2, -1), (-1, 2, -3, 0, -1, 0),
])
def test_construct_round_trip(t):
    inv = normalize(LinkInvariants(*t))
    d = construct(inv)
    assert link_invariants_of(d) == (inv.tb1, inv.rot1, inv.tb2, inv.rot2, inv.q)


def test_construct_with_construction_spec():
    inv = normalize(LinkInvariants(3, 2, -1, 0, 1, 0))
    d = construct(ConstructionSpec(inv, Family.POSITIVE_CABLE))
    assert link_invariants_of(d)[2:] == (1, 0, 2)
    with pytest.raises(Unsupported):
        construct(ConstructionSpec(inv, Family.MINUS_ONE_CABLE))


def test_negative_slopes_unsupported():
    with pytest.raises(Unsupported):
        construct(normalize(LinkInvariants(-3, 2, -1, 0, -6, 1)))


def test_unrealizable_target():
    with pytest.raises(NotRealizable):
        construct(normalize(LinkInvariants(3, 2, -1, 0, 1, 2)))
