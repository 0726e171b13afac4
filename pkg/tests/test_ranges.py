import pytest

from legcable.errors import NonCoprime, NotNormalized
from legcable.ranges import (
    Case, LinkInvariants, ascii_plot, case_of, max_tb2, mountain_range, neighbor_peak_gaps,
    normalize, peaks, realizable, unknot_realizable,
)


def inv(*t):
    return normalize(LinkInvariants(*t))


def test_normalize_reverses_second_component():
    out = normalize(LinkInvariants(3, -2, -2, 1, -4, 1))
    assert out.as_tuple() == (-3, 2, -2, 1, -4, -1)
    assert out.normalized


def test_normalize_identity_when_q_nonnegative():
    raw = LinkInvariants(3, 2, -1, 0, 1, 0)
    assert normalize(raw).as_tuple() == raw.as_tuple()


def test_normalize_forgets_slope_for_split_and_hopf():
    assert normalize(LinkInvariants(-1, 0, -1, 0, -1, 0)).p == 1
    assert normalize(LinkInvariants(5, 1, -1, 0, -1, 0)).p == 1


def test_normalize_rejects_non_coprime():
    with pytest.raises(NonCoprime):
        normalize(LinkInvariants(2, 4, -1, 0, -1, 0))


@pytest.mark.parametrize("tb,rot,ok", [(-1, 0, True), (-3, 2, True), (-3, 3, False), (-2, 0, False), (0, 1, False)])
def test_unknot_realizable(tb, rot, ok):
    assert unknot_realizable(tb, rot) is ok


def test_max_tb2_examples():
    assert all(max_tb2(3, 2, m) == 1 for m in range(1, 8))
    assert max_tb2(-1, 3, 1) == -5
    assert max_tb2(-3, 2, 1) == -6
    assert all(max_tb2(1, q, m) == -1 for q in range(2, 6) for m in range(1, 4))


def test_case_labels():
    assert case_of(3, 2, 1) is Case.C3a_pos
    assert case_of(-1, 3, 1) is Case.C3b1
    assert case_of(-3, 2, 1) is Case.C3b2i
    assert case_of(-2, 5, 3) is Case.C3b2ii
    assert case_of(-1, 2, 4) is Case.C3b2iii
    assert case_of(1, 0, 1) is Case.C1_q0
    assert case_of(1, 1, 1) is Case.C2_q1


def test_peaks_examples():
    assert [p.rot2_peak for p in peaks(-3, 2, 1, 0)] == [-1, 1]
    pk = peaks(-1, 3, 1, 0)
    assert [(p.rot2_peak, p.tb2) for p in pk] == [(0, -5)]
    pk = peaks(-1, 2, 4, 1)
    assert [(p.rot2_peak, p.tb2) for p in pk] == [(-1, -2), (1, -2)]
    assert all(p.coupling.param_name == "f_T_mu" for p in pk)


def test_positive_single_peak_at_zero():
    assert [(p.rot2_peak, p.tb2) for p in peaks(3, 2, 1, 0)] == [(0, 1)]


def test_realizable_examples():
    assert realizable(inv(3, 2, -1, 0, 1, 0)) == (True, realizable(inv(3, 2, -1, 0, 1, 0))[1])
    ok, label = realizable(inv(3, 2, -1, 0, 1, 0))
    assert ok and label.case is Case.C3a_pos
    assert not realizable(inv(3, 2, -1, 0, 1, 2))[0]
    assert realizable(inv(-3, 2, -1, 0, -7, 0))[0]


def test_realizable_needs_normalized():
    with pytest.raises(NotNormalized):
        realizable(LinkInvariants(3, 2, -1, 0, 1, 0))


def test_minus_one_role_swap():
    ok, label = realizable(inv(-1, 2, -3, 0, -1, 0))
    assert ok and label.swapped


def test_mountain_range_examples():
    mr = mountain_range(-3, 2, 1, 0, -8)
    assert {(p.rot2_peak, p.tb2) for p in mr.peaks} == {(-1, -6), (1, -6)}
    assert (0, -7) in mr.points
    mr = mountain_range(3, 2, 1, 0, -1)
    assert set(mr.points) == {(0, 1), (-1, 0), (1, 0), (-2, -1), (0, -1), (2, -1)}
    assert mr.points[0] == (0, 1)


def test_cone_width():
    mr = mountain_range(3, 2, 1, 0, -5)
    for s in range(7):
        row = sorted(r for r, t in mr.points if t == 1 - s)
        assert row == list(range(-s, s + 1, 2))


def test_neighbor_gaps():
    assert neighbor_peak_gaps(-3, 2) == (2, 2)
    assert neighbor_peak_gaps(-5, 2) == (2, 2)
    assert [p.rot2_peak for p in peaks(-5, 2, 1, 0)] == [-3, -1, 1, 3]
    assert neighbor_peak_gaps(-2, 5) == (2, 2)


def test_ascii_plot_marks_peaks():
    text = ascii_plot(mountain_range(-3, 2, 1, 0, -8))
    lines = text.splitlines()
    assert lines[1].split()[0] == "-6"
    assert lines[1].split()[1] == "..^.^.."
    assert "o" in lines[2]
