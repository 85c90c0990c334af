"""Near-extremal analysis: what forces a form close to the maximum count.

If, after moving the origin by S_1, some sign set is still nonempty, two
chains of the width-3 construction can be glued into one along extra valid
edges, and the glued pair evolves through the remaining induction steps into
2*g(n-3) chains instead of the usual count, where

    g(k) = C(k+3, floor((k+3)/2)) - 2*C(k+1, floor((k+1)/2)).

That shortfall equals C(n, floor(n/2)) / (n - c) with c = 0 for odd n and
c = 1 for even n, so such forms sit below the stability threshold
(1 - 1/(n-c)) * C(n, floor(n/2)). Conversely, a count above the threshold
forces every sign set to empty after the S_1 move, and then the maxima are a
plain antichain in those coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .decomposition import (
    MAX_BUILD_WIDTH,
    Decomposition,
    RawChain,
    _extend_chain,
    _iter_edges,
    _normalize_bits,
    _transform_chains,
    _wrap_chains,
)
from .errors import InputError, InternalInvariantError, ResourceError
from .forms import QuadraticForm, enumerate_maxima, sign_sets
from .quasichain import Transform, _edge_violation, _pairkey, _triangle_violation
from .subsets import Family, SignSets, SubsetMask, base_change_family


def evolution_count(k: int) -> int:
    """Chains that one size-4 chain becomes after k induction steps."""
    if not isinstance(k, int) or k < 0:
        raise InputError(f"step count must be a nonnegative integer, got {k!r}")
    return math.comb(k + 3, (k + 3) // 2) - 2 * math.comb(k + 1, (k + 1) // 2)


def stability_threshold(n: int) -> int:
    """Largest count not exceeding (1 - 1/(n-c)) * C(n, floor(n/2)).

    c is 0 for odd n and 1 for even n; the product is an exact integer and
    equals 2 * evolution_count(n-3), both asserted.
    """
    if not isinstance(n, int) or n < 3:
        raise InputError(f"threshold needs n >= 3, got {n!r}")
    c = 0 if n % 2 else 1
    central = math.comb(n, n // 2)
    gap = 4 * math.comb(n - 2, (n - 2) // 2) - central
    if gap * (n - c) != central:
        raise InternalInvariantError(f"gap identity failed at n={n}")
    thr = central - gap
    if thr != 2 * evolution_count(n - 3):
        raise InternalInvariantError(f"threshold identity failed at n={n}")
    return thr


def antichain_check(f: Family) -> bool:
    """True iff no member strictly contains another (plain containment)."""
    by_size: dict[int, list[int]] = {}
    for b in f.bits():
        by_size.setdefault(b.bit_count(), []).append(b)
    sizes = sorted(by_size)
    for ai, small in enumerate(sizes):
        for big in sizes[ai + 1 :]:
            for lo in by_size[small]:
                for hi in by_size[big]:
                    if hi & lo == lo:
                        return False
    return True


# The two glued width-3 chains: the plain chain through {1} and the chain
# obtained by gluing the two remaining chains along additional valid edges.
# Hard-coded (vertices, directions, colors) and validated on first use
# against the sign-set pattern S_1 = {}, S_2 = {3}, S_3 = {2} rather than
# trusted.
_GLUED_LEFT = ((0, 1, 3, 5), [(1, 0, 1), (3, 0, 1), (3, 1, 2), (3, 5, 2), (5, 1, 3), (5, 0, 1)])
_GLUED_RIGHT = ((2, 4, 6, 7), [(4, 2, 3), (7, 4, 1), (7, 2, 1), (7, 6, 1), (6, 4, 2), (6, 2, 3)])
_GLUED_PATTERN = (0, 0b100, 0b010)  # S_1 = {}, S_2 = {3}, S_3 = {2}


@lru_cache(maxsize=1)
def _glued_base() -> tuple[RawChain, ...]:
    chains: list[RawChain] = []
    for verts, edges in (_GLUED_LEFT, _GLUED_RIGHT):
        if _edge_violation(edges, _GLUED_PATTERN) is not None:
            raise InternalInvariantError("glued base chain fails the edge condition")
        emap = {_pairkey(s, d): (s, c) for s, d, c in edges}
        if _triangle_violation(verts, emap) is not None:
            raise InternalInvariantError("glued base chain fails the triangle condition")
        chains.append((verts, emap))
    covered = sorted(v for verts, _ in chains for v in verts)
    if covered != list(range(8)):
        raise InternalInvariantError("glued base chains do not partition the width-3 cube")
    return tuple(chains)


def _require_form_like(s: SignSets) -> None:
    bits = s.bits()
    for i, b in enumerate(bits):
        if b >> i & 1:
            raise InputError(f"sign set {i + 1} contains its own index; not form-derived")
        for j in range(i + 1, len(bits)):
            if bool(b >> j & 1) != bool(bits[j] >> i & 1):
                raise InputError(
                    f"sign sets are not symmetric between {i + 1} and {j + 1}; not form-derived"
                )


def _permute_mask(bits: int, perm0: list[int]) -> int:
    out = 0
    while bits:
        low = bits & -bits
        out |= 1 << perm0[low.bit_length() - 1]
        bits ^= low
    return out


def _permute_signset_bits(sbits: tuple[int, ...], perm0: list[int]) -> tuple[int, ...]:
    out = [0] * len(sbits)
    for i, b in enumerate(sbits):
        out[perm0[i]] = _permute_mask(b, perm0)
    return tuple(out)


def _permute_chains(chains: list[RawChain], perm0: list[int]) -> list[RawChain]:
    out = []
    for verts, emap in chains:
        edges = [
            (_permute_mask(s, perm0), _permute_mask(d, perm0), perm0[c - 1] + 1)
            for s, d, c in _iter_edges(emap)
        ]
        nv = tuple(sorted(_permute_mask(v, perm0) for v in verts))
        out.append((nv, {_pairkey(s, d): (s, c) for s, d, c in edges}))
    return out


def glued_decomposition(s: SignSets, *, check: bool = False) -> Decomposition:
    """Partition of the cube into exactly 2*g(n-3) quasichains valid for s.

    Requires form-derived sign sets with, after the base change by S_1, some
    S_i still nonempty. The construction base-changes by S_1, relabels
    coordinates so a related pair sits at (2, 3) (making the sign sets
    restricted to [3] exactly {}, {3}, {2}), starts from the hard-coded glued
    width-3 chains, runs the usual induction for coordinates 4..n, and
    unwinds the relabeling and the base change so the output lives in the
    caller's coordinates.
    """
    n = s.n
    if n < 3:
        raise InputError(f"glued construction needs n >= 3, got {n}")
    if n > MAX_BUILD_WIDTH:
        raise ResourceError(f"glued construction is limited to n <= {MAX_BUILD_WIDTH}")
    _require_form_like(s)
    t0 = Transform.base_change(s.get(1))
    s0 = t0.apply_to_signsets(s)
    s0bits = s0.bits()
    pair = None
    for i in range(2, n + 1):
        row = s0bits[i - 1]
        for j in range(i + 1, n + 1):
            if row >> (j - 1) & 1:
                pair = (i, j)
                break
        if pair:
            break
    if pair is None:
        raise InputError("all sign sets empty after base change; use build()")
    i, j = pair
    perm0 = [-1] * n  # 0-based: perm0[e-1] = image of element e, minus one
    perm0[0] = 0
    perm0[i - 1] = 1
    perm0[j - 1] = 2
    free_targets = [t for t in range(n) if t not in (0, 1, 2)]
    free_sources = [x for x in range(n) if x not in (0, i - 1, j - 1)]
    for src, tgt in zip(free_sources, free_targets):
        perm0[src] = tgt
    sbar = _permute_signset_bits(s0bits, perm0)
    low3 = (1 << 3) - 1
    if tuple(b & low3 for b in sbar[:3]) != _GLUED_PATTERN:
        raise InternalInvariantError("relabeled sign sets do not restrict to the glued pattern")

    chains: list[RawChain] = [(verts, dict(emap)) for verts, emap in _glued_base()]
    for k in range(4, n + 1):
        lowk = (1 << k) - 1
        sk = tuple(sbar[t] & lowk for t in range(k))
        _, a, flips = _normalize_bits(sk, k)
        if flips != a:
            raise InternalInvariantError("symmetric sign sets needed no stage-1 complement")
        chains = _transform_chains(chains, a, flips)
        extended: list[RawChain] = []
        for chain in chains:
            first, second = _extend_chain(chain, k)
            extended.append(first)
            if second is not None:
                extended.append(second)
        chains = _transform_chains(extended, a, flips)
        if check:
            want = 2 * evolution_count(k - 3)
            if len(chains) != want:
                raise InternalInvariantError(
                    f"glued level {k}: {len(chains)} chains, expected {want}"
                )
            for verts, emap in chains:
                bad = _edge_violation(_iter_edges(emap), sk)
                if bad is not None:
                    raise InternalInvariantError(f"glued level {k}: invalid edge {bad}")
                tri = _triangle_violation(verts, emap)
                if tri is not None:
                    raise InternalInvariantError(f"glued level {k}: {tri[3]}")

    inv0 = [0] * n
    for src, tgt in enumerate(perm0):
        inv0[tgt] = src
    chains = _permute_chains(chains, inv0)
    chains = _transform_chains(chains, t0.a.bits, t0.flips.bits)
    return Decomposition(s, _wrap_chains(n, chains))


@dataclass(frozen=True, slots=True)
class StabilityReport:
    """Outcome of the near-extremality analysis for one form.

    ``verdict`` is "above_threshold_antichain" (with the base-change
    automorphism that turns the maxima into a plain antichain) or
    "below_threshold" (with a decomposition certificate).
    """

    n: int
    maxima_count: int
    threshold: int
    verdict: str
    automorphism: SubsetMask | None = None
    certificate: Decomposition | None = None

    def to_json(self) -> dict:
        out: dict = {
            "n": self.n,
            "maxima_count": self.maxima_count,
            "threshold": self.threshold,
            "verdict": {"kind": self.verdict},
        }
        if self.automorphism is not None:
            out["verdict"]["automorphism"] = self.automorphism.to_json()
        if self.certificate is not None:
            out["verdict"]["certificate"] = self.certificate.to_json()
        return out


def stability_analysis(f: QuadraticForm) -> StabilityReport:
    """Classify a form against the stability threshold.

    After base-changing the sign sets by S_1: if every sign set is empty,
    the maxima moved by S_1 must form a plain antichain (asserted), and the
    verdict compares the count with the threshold. Otherwise the glued
    decomposition certifies that the count cannot exceed the threshold, by
    injecting the maxima one per chain.
    """
    n = f.n
    if n < 3:
        raise InputError(f"stability analysis needs n >= 3, got {n}")
    if n > MAX_BUILD_WIDTH:
        raise ResourceError(f"stability analysis is limited to n <= {MAX_BUILD_WIDTH}")
    s = sign_sets(f)
    maxima = enumerate_maxima(f)
    thr = stability_threshold(n)
    s1 = s.get(1)
    t0 = Transform.base_change(s1)
    s0 = t0.apply_to_signsets(s)
    if all(b == 0 for b in s0.bits()):
        moved = base_change_family(maxima, s1)
        if not antichain_check(moved):
            raise InternalInvariantError(
                "maxima are not an antichain although all sign sets emptied"
            )
        if len(maxima) > thr:
            return StabilityReport(n, len(maxima), thr, "above_threshold_antichain", automorphism=s1)
        from .decomposition import build

        return StabilityReport(
            n, len(maxima), thr, "below_threshold", certificate=build(s)
        )
    d = glued_decomposition(s)
    chain_of: dict[int, int] = {}
    for idx, chain in enumerate(d.chains):
        for v in chain.vertices:
            chain_of[v] = idx
    used: set[int] = set()
    for m in maxima:
        idx = chain_of[m.bits]
        if idx in used:
            raise InternalInvariantError(f"two maxima share glued chain {idx}")
        used.add(idx)
    if len(maxima) > thr:
        raise InternalInvariantError(
            f"count {len(maxima)} exceeds threshold {thr} despite glued certificate"
        )
    return StabilityReport(n, len(maxima), thr, "below_threshold", certificate=d)
