import pytest

import oracles
from zerosum.groups import enumerate_abelian_groups, make_group
from zerosum.zspp import (
    check_3zspp_conjecture,
    check_4zspp,
    check_divisor_partition,
    check_mixed_23,
    check_one_involution,
    check_zeng,
    clear_cache,
    has_x_zspp,
    mixed_23_vectors,
    monotonicity_consistent,
    solve_zero_sum,
    triple_pair_vectors,
)


def groups(lo, hi, pred=lambda G: True):
    return [G for n in range(lo, hi + 1) for G in enumerate_abelian_groups(n) if pred(G)]


def test_examples():
    assert has_x_zspp(make_group([7]), 2).holds
    v = has_x_zspp(make_group([8]), 2)
    assert v.holds is False
    assert has_x_zspp(make_group([2, 2]), 2).holds
    assert has_x_zspp(make_group([2, 4]), 2).holds  # three involutions
    assert has_x_zspp(make_group([2, 2, 4]), 2).holds is False


def test_x_must_be_positive():
    with pytest.raises(ValueError):
        has_x_zspp(make_group([7]), 0)


def test_zeng_rows_match():
    rows = check_zeng(12)
    assert [r.group.order for r in rows] == sorted(r.group.order for r in rows)
    assert all(r.matches_expected for r in rows)


def test_zeng_parallel_equals_serial():
    clear_cache()
    a = [r.to_json() for r in check_zeng(10, workers=2)]
    b = [r.to_json() for r in check_zeng(10, workers=1)]
    assert a == b


@pytest.mark.parametrize("G", groups(3, 12), ids=str)
def test_counterexamples_confirmed_by_oracle(G):
    v = has_x_zspp(G, 2)
    if v.holds is False:
        assert not oracles.zero_sum_partition_exists(G.moduli, v.counterexample)
    else:
        assert v.witness_count > 0


def test_mixed_23_vectors():
    G = make_group([2, 2, 4])
    assert len(G.r_set()) == 8
    vecs = mixed_23_vectors(G)
    assert (3, 3, 3, 2, 2, 2) in vecs
    assert all(v.count(2) <= 4 and min(v) >= 2 for v in vecs)


def test_mixed_23_counterexample():
    v = check_mixed_23(make_group([2, 2, 4]))
    assert v.holds is False and v.expected is False
    assert v.counterexample == (3, 3, 3, 2, 2, 2)


def test_mixed_23_rejects_one_involution():
    with pytest.raises(ValueError):
        check_mixed_23(make_group([8]))


@pytest.mark.parametrize("G", groups(3, 12, lambda G: G.involution_count > 1), ids=str)
def test_mixed_3zspp_4zspp_small(G):
    assert check_mixed_23(G).matches_expected
    assert check_4zspp(G).holds
    v = check_3zspp_conjecture(G)
    assert v.holds
    assert v.notes and "mod 6" in v.notes[0]


def test_divisor_partition():
    v = check_divisor_partition(make_group([2, 2, 2]), 4)
    assert v.holds
    with pytest.raises(ValueError):
        check_divisor_partition(make_group([2, 2, 2]), 3)


def test_triple_pair_vectors():
    assert triple_pair_vectors(10) == [(2, 2, 2, 2), (3, 3, 2)]
    for n in range(4, 21, 2):
        assert all(sum(v) == n - 2 for v in triple_pair_vectors(n))


@pytest.mark.parametrize("G", groups(4, 16, lambda G: G.involution_count == 1), ids=str)
def test_one_involution(G):
    rep = check_one_involution(G)
    assert rep.parts_ge4.holds
    if len(G.moduli) == 1:
        assert rep.cyclic_23.holds
    for row in rep.rows():
        assert row.status in ("holds", "fails")


def test_one_involution_requires_one():
    with pytest.raises(ValueError):
        check_one_involution(make_group([7]))


@pytest.mark.parametrize("G", groups(3, 10), ids=str)
def test_monotonicity(G):
    assert monotonicity_consistent(G)


def test_cache_respects_budget():
    clear_cache()
    G = make_group([2, 2, 4])
    low = solve_zero_sum(G, (3, 3, 3, 2, 2, 2), budget=3)
    assert low.status.value == "unknown"
    high = solve_zero_sum(G, (2, 2, 2, 3, 3, 3))
    assert high.status.is_infeasible


def test_verdict_json():
    line = has_x_zspp(make_group([8]), 2).to_line()
    assert '"verdict": "fails"' in line
