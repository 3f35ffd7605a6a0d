"""
Permutations and involutions in one-line notation.

A permutation of {1..n} is represented by a tuple ``p`` of length n with
``p[i-1]`` the value at position i (positions and values are both 1-based
throughout the public interface).  An involution is a permutation equal to
its own inverse, i.e. a product of disjoint fixed points and 2-cycles.

The pattern machinery is deliberately specific: this module knows how to
list and count occurrences of 3412 (quadruples of positions i1<i2<i3<i4
whose values satisfy p(i3) < p(i4) < p(i1) < p(i2)) and occurrences of 21
(inversions).  Two independent 3412 counters are kept on purpose, a
nested-loop lister and a prefix-rank counter, so each can audit the other.
"""
from __future__ import annotations

from typing import Iterator, Sequence

Perm = tuple[int, ...]
Occurrence = tuple[int, int, int, int]

#: Hard cap on enumeration size; t(17) is ~50M involutions and a request
#: that large is almost certainly a mistake.
DEFAULT_MAX_N = 16

#: Involution numbers t(n) = t(n-1) + (n-1)*t(n-2) for n = 0..16.
INVOLUTION_COUNTS = (1, 1, 2, 4, 10, 26, 76, 232, 764, 2620, 9496, 35696,
                     140152, 568504, 2390480, 10349536, 46206736)


class ResourceLimitError(RuntimeError):
    """Raised when a requested enumeration exceeds the configured cap."""


def is_permutation(p: Sequence[int]) -> bool:
    """Check that p is a permutation of {1..n} in one-line notation.

    >>> [is_permutation(p) for p in [(), (1,), (2, 1), (1, 1), (0, 1)]]
    [True, True, True, False, False]
    """
    n = len(p)
    return sorted(p) == list(range(1, n + 1))


def check_permutation(p: Sequence[int]) -> Perm:
    p = tuple(p)
    if not is_permutation(p):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p}")
    return p


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v - 1] = i + 1
    return tuple(inv)


def is_involution(p: Sequence[int]) -> bool:
    """True iff p composed with itself is the identity.

    >>> is_involution((3, 4, 1, 2))
    True
    >>> is_involution((2, 3, 4, 1))
    False
    >>> is_involution(())
    True
    """
    return all(p[p[i] - 1] == i + 1 for i in range(len(p)))


def check_involution(p: Sequence[int]) -> Perm:
    p = check_permutation(p)
    if not is_involution(p):
        raise ValueError(f"not an involution: {p}")
    return p


def two_cycles(p: Perm) -> list[tuple[int, int]]:
    """The 2-cycles (i, p(i)) with i < p(i) of an involution."""
    return [(i + 1, v) for i, v in enumerate(p) if i + 1 < v]


def involution_count(n: int) -> int:
    """Number of involutions of {1..n}, by the classic recurrence."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = 1, 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b if n >= 1 else a


def involution_branches(n: int) -> int:
    """Number of independent top-level enumeration branches for size n.

    Branch b pins the partner of the largest element n: b = 0 makes n a
    fixed point, b = j pairs n with j.  The branch streams are disjoint and
    their union is the full stream, which gives a deterministic split for
    parallel work.
    """
    return max(n, 1)


def enumerate_involutions(n: int, branch: int | None = None,
                          max_n: int = DEFAULT_MAX_N) -> Iterator[Perm]:
    """Yield every involution of {1..n} exactly once, as tuples.

    The generation order is deterministic: the largest unassigned element
    is either fixed or paired with the smallest remaining candidates first.

    >>> sum(1 for _ in enumerate_involutions(4))
    10
    >>> next(enumerate_involutions(0))
    ()
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_n:
        raise ResourceLimitError(
            f"enumeration of I_{n} refused: exceeds cap {max_n} "
            f"({involution_count(n)} involutions)")
    if branch is not None and not 0 <= branch < involution_branches(n):
        raise ValueError(f"branch {branch} out of range for n={n}")
    if n == 0:
        if branch in (None, 0):
            yield ()
        return

    perm = [0] * n

    def rec(avail: tuple[int, ...]) -> Iterator[Perm]:
        if not avail:
            yield tuple(perm)
            return
        m = avail[-1]
        rest = avail[:-1]
        perm[m - 1] = m
        yield from rec(rest)
        for idx, p in enumerate(rest):
            perm[m - 1] = p
            perm[p - 1] = m
            yield from rec(rest[:idx] + rest[idx + 1:])

    avail = tuple(range(1, n + 1))
    if branch is None:
        yield from rec(avail)
        return
    rest = avail[:-1]
    if branch == 0:
        perm[n - 1] = n
        yield from rec(rest)
    else:
        p = branch
        perm[n - 1] = p
        perm[p - 1] = n
        yield from rec(rest[:p - 1] + rest[p:])


def occurrences_3412(p: Sequence[int]) -> list[Occurrence]:
    """All occurrences of 3412 in p, as 1-based position quadruples.

    A quadruple i1<i2<i3<i4 qualifies iff p(i3) < p(i4) < p(i1) < p(i2).
    The list comes out in lexicographic order.

    >>> occurrences_3412((3, 4, 1, 2))
    [(1, 2, 3, 4)]
    """
    n = len(p)
    out: list[Occurrence] = []
    for i1 in range(n):
        v1 = p[i1]
        for i2 in range(i1 + 1, n):
            v2 = p[i2]
            if v2 <= v1:
                continue
            for i3 in range(i2 + 1, n):
                v3 = p[i3]
                if v3 >= v1:
                    continue
                for i4 in range(i3 + 1, n):
                    v4 = p[i4]
                    if v3 < v4 < v1:
                        out.append((i1 + 1, i2 + 1, i3 + 1, i4 + 1))
    return out


def count_occurrences_3412(p: Sequence[int]) -> int:
    """Count occurrences of 3412 without listing them.

    Independent of :func:`occurrences_3412`: for every value-ascending pair
    (i3, i4) it looks up how many value-ascending pairs (i1, i2) end before
    i3 with both values above p(i4), using an O(n^2) table of prefix pair
    counts.  Runs in O(n^3).
    """
    n = len(p)
    if n < 4:
        return 0
    # pairs_above[P][v] = #{(i1, i2) : i1 < i2 <= P, v < p(i1) < p(i2)},
    # with positions 1-based and v a value threshold in 0..n.
    pairs_above = [[0] * (n + 1) for _ in range(n + 1)]
    for pos in range(1, n + 1):
        vp = p[pos - 1]
        row, prev = pairs_above[pos], pairs_above[pos - 1]
        for v in range(n + 1):
            add = 0
            if v < vp:
                for i1 in range(pos - 1):
                    if v < p[i1] < vp:
                        add += 1
            row[v] = prev[v] + add
    total = 0
    for i3 in range(1, n + 1):
        v3 = p[i3 - 1]
        for i4 in range(i3 + 1, n + 1):
            v4 = p[i4 - 1]
            if v3 < v4:
                total += pairs_above[i3 - 1][v4]
    return total


def count_pattern_21(p: Sequence[int]) -> int:
    """Number of inversions, i.e. occurrences of the pattern 21.

    >>> count_pattern_21((3, 4, 1, 2))
    4
    """
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def inversion_parity(p: Sequence[int]) -> int:
    """count_pattern_21 mod 2; 0 for even permutations, 1 for odd."""
    return count_pattern_21(p) & 1


def reduce_to_pattern(p: Sequence[int], positions: Sequence[int]) -> Perm:
    """The permutation order-isomorphic to p restricted to the positions.

    ``positions`` must be strictly increasing 1-based indices into p.

    >>> reduce_to_pattern((3, 5, 1, 6, 2, 4), (1, 3))
    (2, 1)
    """
    prev = 0
    for pos in positions:
        if not prev < pos <= len(p):
            raise ValueError(f"positions must be strictly increasing and "
                             f"within 1..{len(p)}: {tuple(positions)}")
        prev = pos
    vals = [p[pos - 1] for pos in positions]
    order = sorted(vals)
    rank = {v: i + 1 for i, v in enumerate(order)}
    return tuple(rank[v] for v in vals)
