import random

import pytest

from inv3412.perms import (
    DEFAULT_MAX_N,
    ResourceLimitError,
    count_occurrences_3412,
    count_pattern_21,
    enumerate_involutions,
    inversion_parity,
    involution_branches,
    involution_count,
    is_involution,
    occurrences_3412,
    reduce_to_pattern,
    two_cycles,
)

PI14 = (8, 2, 3, 13, 7, 6, 5, 1, 11, 12, 9, 10, 4, 14)


def involution_count_oracle(n):
    # independent of involution_count: direct recursion with memo
    memo = {0: 1, 1: 1}

    def t(k):
        if k not in memo:
            memo[k] = t(k - 1) + (k - 1) * t(k - 2)
        return memo[k]

    return t(n)


def test_is_involution_examples():
    assert is_involution((3, 4, 1, 2))
    assert not is_involution((2, 3, 4, 1))
    assert is_involution(())


def test_enumeration_counts_match_recurrence():
    for n in range(11):
        got = sum(1 for _ in enumerate_involutions(n))
        assert got == involution_count_oracle(n) == involution_count(n)


def test_enumeration_yields_distinct_involutions():
    for n in range(9):
        seen = set()
        for p in enumerate_involutions(n):
            assert is_involution(p)
            assert p not in seen
            seen.add(p)


def test_enumeration_order_is_deterministic():
    assert list(enumerate_involutions(7)) == list(enumerate_involutions(7))


def test_branches_partition_the_stream():
    full = list(enumerate_involutions(7))
    parts = [list(enumerate_involutions(7, branch=b))
             for b in range(involution_branches(7))]
    flat = [p for part in parts for p in part]
    assert sorted(flat) == sorted(full)
    assert len(flat) == len(set(flat))


def test_enumeration_cap():
    with pytest.raises(ResourceLimitError):
        next(enumerate_involutions(DEFAULT_MAX_N + 1))
    # the cap is configurable
    gen = enumerate_involutions(4, max_n=3)
    with pytest.raises(ResourceLimitError):
        next(gen)


def test_occurrence_examples():
    assert len(occurrences_3412(PI14)) == 2
    assert occurrences_3412((3, 4, 1, 2)) == [(1, 2, 3, 4)]
    assert count_occurrences_3412((4, 5, 6, 1, 2, 3)) == 9
    assert occurrences_3412(tuple(range(1, 9))) == []


def test_occurrences_sorted_lexicographically():
    occ = occurrences_3412((4, 5, 6, 1, 2, 3))
    assert occ == sorted(occ)
    for i1, i2, i3, i4 in occ:
        assert i1 < i2 < i3 < i4


def test_counting_routes_agree_on_involutions():
    # nested-loop lister vs prefix-rank counter, exhaustively to n = 8
    for n in range(9):
        for p in enumerate_involutions(n):
            assert len(occurrences_3412(p)) == count_occurrences_3412(p)


def test_counting_routes_agree_on_random_permutations():
    rng = random.Random(20240817)
    for n in (9, 10, 11):
        for _ in range(40):
            p = list(range(1, n + 1))
            rng.shuffle(p)
            p = tuple(p)
            assert len(occurrences_3412(p)) == count_occurrences_3412(p)


def test_occurrence_count_invariant_under_inverse():
    # involutions are self-inverse, so this is trivially preserved
    for p in enumerate_involutions(6):
        inv = tuple(sorted(range(1, 7), key=lambda i: p[i - 1]))
        assert count_occurrences_3412(p) == count_occurrences_3412(inv)


def test_pattern_21_examples():
    assert count_pattern_21((3, 4, 1, 2)) == 4
    assert inversion_parity((3, 4, 1, 2)) == 0
    assert count_pattern_21(tuple(range(1, 10))) == 0
    assert count_pattern_21((2, 1)) == 1


def test_involution_parity_equals_two_cycle_parity():
    for n in range(9):
        for p in enumerate_involutions(n):
            assert inversion_parity(p) == len(two_cycles(p)) % 2


def test_reduce_to_pattern_examples():
    # the kernel entries 8, 13, 1, 4 of the worked example reduce to 3412
    positions = tuple(i + 1 for i, v in enumerate(PI14) if v in (8, 13, 1, 4))
    assert reduce_to_pattern(PI14, positions) == (3, 4, 1, 2)
    assert reduce_to_pattern(PI14, tuple(range(1, 15))) == PI14
    assert reduce_to_pattern((3, 5, 1, 6, 2, 4), (1, 3)) == (2, 1)


def test_reduce_to_pattern_rejects_bad_positions():
    with pytest.raises(ValueError):
        reduce_to_pattern((2, 1), (1, 3))
    with pytest.raises(ValueError):
        reduce_to_pattern((2, 1), (2, 1))
    with pytest.raises(ValueError):
        reduce_to_pattern((2, 1), (0, 1))
