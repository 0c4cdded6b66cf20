import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dualdefect import (
    ChernTuple,
    CaseSpec,
    ConstraintError,
    DefectBranch,
    admissible_case,
    chern_bounds,
    defect_branches,
    degree_bound,
    degree_of,
    log_concavity_ok,
)
from dualdefect.casegen import CHAINED, PLAIN
from dualdefect.errors import PreconditionError


def geometric_sum(c1, m):
    """Closed form of 1 + c1 + ... + c1**m."""
    return m + 1 if c1 == 1 else (c1 ** (m + 1) - 1) // (c1 - 1)


def test_admissible_examples():
    assert admissible_case(10, 3).n == 7
    assert admissible_case(18, 5).n == 13
    with pytest.raises(ConstraintError) as exc:
        admissible_case(13, 4)
    assert exc.value.inequality == "N >= 4m - 2"


@pytest.mark.parametrize("N, m, which", [(12, 2, "m >= 3"), (9, 3, "N >= 10"), (17, 5, "N >= 4m - 2")])
def test_each_inequality_is_named(N, m, which):
    with pytest.raises(ConstraintError) as exc:
        admissible_case(N, m)
    assert exc.value.inequality == which


def test_branch_examples():
    assert defect_branches(CaseSpec(10, 3)) == [DefectBranch(1, 3)]
    assert defect_branches(CaseSpec(11, 3)) == [DefectBranch(2, 3)]
    assert defect_branches(CaseSpec(18, 5)) == [DefectBranch(1, 6), DefectBranch(3, 5)]


@given(st.integers(3, 12), st.integers(0, 200))
def test_branch_completeness(m, extra):
    case = admissible_case(4 * m - 2 + extra, m)
    rs = [b.r for b in defect_branches(case)]
    assert rs == sorted(set(rs))
    assert set(rs) == {r for r in range(1, m) if (case.n - r) % 2 == 0}
    for b in defect_branches(case):
        assert 2 * b.c1 == case.n - b.r


def test_bounds_examples():
    assert chern_bounds(3, 3, PLAIN).B == (9, 27)
    assert chern_bounds(6, 5, PLAIN).B == (36, 216, 1296, 7776)
    ch = chern_bounds(3, 3, CHAINED)
    assert ch.upper(2, 3) == 9 and ch.upper(3, 2) == 6
    assert ch.admits((3, 2, 6)) and not ch.admits((3, 2, 7))
    assert chern_bounds(3, 3, PLAIN).admits((3, 2, 7))


def test_bounds_reject_bad_input():
    with pytest.raises(PreconditionError):
        chern_bounds(0, 3)
    with pytest.raises(PreconditionError):
        chern_bounds(3, 3, "loose")


@pytest.mark.parametrize("c1, m", [(1, 3), (2, 3), (3, 3), (2, 4), (1, 5)])
def test_chained_subset_of_plain(c1, m):
    plain, chained = chern_bounds(c1, m, PLAIN), chern_bounds(c1, m, CHAINED)
    space = itertools.product(*[range(c1**j + 1) for j in range(2, m + 1)])
    for rest in space:
        c = (c1,) + rest
        if chained.admits(c):
            assert plain.admits(c)


@pytest.mark.parametrize(
    "c, ok", [((3, 9, 27), True), ((4, 8, 8), True), ((2, 0, 5), False), ((4, 8, 32, 64), False)]
)
def test_log_concavity_examples(c, ok):
    assert log_concavity_ok(c) is ok


def test_degree_examples():
    assert degree_bound(11, 3, 2) == 40
    assert degree_bound(10, 3, 1) == 40
    assert degree_bound(18, 5, 3) == 3906
    assert degree_bound(18, 5, 1) == 9331 == 1 + 6 + 36 + 216 + 1296 + 7776
    assert degree_of((3, 9, 27)) == 40
    assert degree_of((4, 8, 8)) == 21
    assert degree_of((0, 0, 0)) == 1


def test_degree_bound_rejects_wrong_parity():
    with pytest.raises(PreconditionError):
        degree_bound(10, 3, 2)


@given(st.integers(3, 6), st.integers(0, 40), st.data())
def test_degree_bound_matches_closed_form_and_dominates(m, extra, data):
    case = admissible_case(4 * m - 2 + extra, m)
    for b in defect_branches(case):
        bound = degree_bound(case.N, m, b.r)
        assert bound == geometric_sum(b.c1, m)
        c = (b.c1,) + tuple(data.draw(st.integers(0, b.c1**j)) for j in range(2, m + 1))
        assert degree_of(ChernTuple(case, b, c)) <= bound


def test_degree_bound_strictly_decreasing_in_r():
    for m in range(3, 7):
        for N in range(4 * m - 2, 4 * m + 40):
            vals = [degree_bound(N, m, b.r) for b in defect_branches(admissible_case(N, m))]
            assert all(a > b for a, b in zip(vals, vals[1:]))


def test_chern_tuple_validation():
    case, br = CaseSpec(10, 3), DefectBranch(1, 3)
    ChernTuple(case, br, (3, 9, 27))
    for bad in [(3, 9), (2, 4, 8), (3, -1, 0)]:
        with pytest.raises(PreconditionError):
            ChernTuple(case, br, bad)
