"""Brute-force ground truth used to validate every other module.

Nothing here shares code with the fast paths: maxima are recounted from a
table of vertex values, the pairwise-conflict view of the no-containment
condition is materialized explicitly, and the maximum family size at tiny n
comes from an exact branch-and-bound over all 2^n subsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, ResourceError
from .forms import QuadraticForm
from .subsets import Family, SignSets, base_change_family, lower_level, upper_level

MAX_BRUTEFORCE_WIDTH = 16
MAX_CONFLICT_WIDTH = 5
MAX_FAMILY_WIDTH = 4


def check_hypothesis(f: Family, s: SignSets) -> bool:
    """The no-containment condition, written exactly via the level operators.

    For every direction i, translate the family by S_i and demand that no
    member of the upper ith level contains (plain superset) a member of the
    lower ith level. With all S_i empty this is precisely the antichain
    condition.
    """
    if f.n != s.n:
        raise InputError(f"width mismatch: family {f.n} vs sign sets {s.n}")
    for i in range(1, s.n + 1):
        g = base_change_family(f, s.get(i))
        up = upper_level(g, i)
        lo = lower_level(g, i)
        for u in up.bits():
            for w in lo.bits():
                if u & w == w:
                    return False
    return True


@dataclass(frozen=True, slots=True)
class ConflictGraph:
    """All unordered pairs of subsets that cannot coexist in a valid family."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    def adjacency(self) -> list[int]:
        """Neighbor bitmask per vertex, vertices indexed by their subset bits."""
        adj = [0] * (1 << self.n)
        for x, y in self.pairs:
            adj[x] |= 1 << y
            adj[y] |= 1 << x
        return adj


def _pair_conflicts(x: int, y: int, sbits: tuple[int, ...]) -> bool:
    for i, s in enumerate(sbits):
        b = 1 << i
        xs = x ^ s
        ys = y ^ s
        if xs & b and not ys & b and xs & ys == ys:
            return True
        if ys & b and not xs & b and ys & xs == xs:
            return True
    return False


def conflict_pairs(s: SignSets) -> ConflictGraph:
    """Materialize every conflicting pair; a family is valid iff it is an
    independent set of this graph."""
    n = s.n
    if n > MAX_CONFLICT_WIDTH:
        raise ResourceError(f"conflict scan is limited to n <= {MAX_CONFLICT_WIDTH}")
    sbits = s.bits()
    size = 1 << n
    pairs = [
        (x, y)
        for x in range(size)
        for y in range(x + 1, size)
        if _pair_conflicts(x, y, sbits)
    ]
    return ConflictGraph(n, tuple(pairs))


def max_family_bruteforce(s: SignSets) -> tuple[int, Family]:
    """Exact maximum size of a valid family, with a witness.

    Branch and bound over the 2^n subsets as conflict-graph vertices. The
    result is a measurement; no claim is made that the bound C(n, floor(n/2))
    is attained for every choice of sign sets.
    """
    n = s.n
    if n > MAX_FAMILY_WIDTH:
        raise ResourceError(f"exact family search is limited to n <= {MAX_FAMILY_WIDTH}")
    adj = conflict_pairs(s).adjacency()
    size = 1 << n
    best = [0, 0]  # size, chosen-vertex bitmask

    def grow(cand: int, chosen_size: int, chosen: int) -> None:
        if chosen_size + cand.bit_count() <= best[0]:
            return
        if cand == 0:
            best[0] = chosen_size
            best[1] = chosen
            return
        low = cand & -cand
        v = low.bit_length() - 1
        grow(cand & ~(low | adj[v]), chosen_size + 1, chosen | low)
        grow(cand ^ low, chosen_size, chosen)

    grow((1 << size) - 1, 0, 0)
    witness = Family.from_bits(n, (v for v in range(size) if best[1] >> v & 1))
    return best[0], witness


def count_maxima_bruteforce(f: QuadraticForm) -> Family:
    """Recount strict local maxima by comparing vertex values with all neighbors.

    Values are computed exactly (common-denominator integers) for every
    vertex; v is kept iff its value strictly exceeds all n neighbor values.
    """
    n = f.n
    if n > MAX_BRUTEFORCE_WIDTH:
        raise ResourceError(f"value table is limited to n <= {MAX_BRUTEFORCE_WIDTH}")
    L = math.lcm(*(e.denominator for row in f.q for e in row))
    diag = [int(f.q[i][i] * L) for i in range(n)]
    two = [[int(2 * L * e) for e in row] for row in f.q]
    size = 1 << n
    val = [0] * size
    for v in range(1, size):
        low = v & -v
        t = low.bit_length() - 1
        prev = v ^ low
        acc = diag[t]
        row = two[t]
        b = prev
        while b:
            lb = b & -b
            acc += row[lb.bit_length() - 1]
            b ^= lb
        val[v] = val[prev] + acc
    maxima = [
        v
        for v in range(size)
        if all(val[v] > val[v ^ (1 << i)] for i in range(n))
    ]
    return Family.from_bits(n, maxima)
