"""Building and verifying quasichain partitions of the whole cube.

The construction is the classic symmetric-chain induction, adapted to the
twisted orders. Going from width k-1 to width k, every chain contributes two
chains: the original with one new vertex (the source with element k added,
wired to everything the source beat, in the source's colors, plus a color-k
edge down to the source) and a duplicate translated by +k with that same new
vertex removed (dropped when empty). Starting from the one-chain cube of
width 1 this yields exactly C(n, floor(n/2)) chains.

Each level first normalizes its sign sets (i never in S_i, k never in S_i)
through a Transform; the step conjugates the previous level's chains by that
transform, extends, and transforms back, so at every level the chains are
valid for the caller's original sign sets restricted to [k]. The final
output is therefore expressed in the caller's own coordinates.

A BoundCertificate combines a form's enumerated maxima with a decomposition
for the form's sign sets: since any family satisfying the no-containment
condition meets each quasichain at most once, the injective assignment of
maxima to chains is a machine-checkable witness that the count of maxima is
at most the number of chains.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InternalInvariantError, ResourceError
from .forms import QuadraticForm, enumerate_maxima, form_from_json, form_to_json, sign_sets
from .quasichain import (
    Quasichain,
    Transform,
    _apply_raw,
    _edge_violation,
    _pairkey,
    _triangle_violation,
)
from .subsets import SignSets, SubsetMask, central_binomial

MAX_BUILD_WIDTH = 20

RawChain = tuple[tuple[int, ...], dict[tuple[int, int], tuple[int, int]]]


@dataclass(frozen=True, slots=True)
class Decomposition:
    """A partition of all 2^n subsets into quasichains, with its sign-set context."""

    signsets: SignSets
    chains: tuple[Quasichain, ...]

    @property
    def n(self) -> int:
        return self.signsets.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "signsets": self.signsets.to_json(),
            "chains": [c.to_json() for c in self.chains],
        }

    @classmethod
    def from_json(cls, data: object) -> "Decomposition":
        if not isinstance(data, dict) or "n" not in data:
            raise InputError("decomposition JSON needs 'n', 'signsets' and 'chains'")
        n = data["n"]
        if not isinstance(n, int):
            raise InputError(f"'n' must be an integer, got {n!r}")
        s = SignSets.from_json(n, data.get("signsets"))
        chains_data = data.get("chains")
        if not isinstance(chains_data, list):
            raise InputError("'chains' must be a JSON array")
        chains = tuple(Quasichain.from_json(n, c) for c in chains_data)
        return cls(s, chains)


@dataclass(frozen=True, slots=True)
class VerificationResult:
    ok: bool
    detail: str | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, slots=True)
class BoundCertificate:
    """Everything needed to re-check that a form's maxima fit one per chain."""

    form: QuadraticForm
    signsets: SignSets
    decomposition: Decomposition
    assignment: tuple[tuple[SubsetMask, int], ...]

    def to_json(self) -> dict:
        return {
            "n": self.form.n,
            "form": form_to_json(self.form),
            "signsets": self.signsets.to_json(),
            "decomposition": self.decomposition.to_json(),
            "maxima": [v.to_json() for v, _ in self.assignment],
            "assignment": [
                {"vertex": v.to_json(), "chain": idx} for v, idx in self.assignment
            ],
        }

    @classmethod
    def from_json(cls, data: object) -> "BoundCertificate":
        if not isinstance(data, dict) or "form" not in data:
            raise InputError("certificate JSON needs form, signsets, decomposition")
        form = form_from_json(data["form"])
        n = form.n
        s = SignSets.from_json(n, data.get("signsets"))
        d = Decomposition.from_json(data.get("decomposition"))
        assignment = []
        for item in data.get("assignment", []):
            if not isinstance(item, dict) or not {"vertex", "chain"} <= item.keys():
                raise InputError(f"assignment entry {item!r} needs vertex and chain")
            assignment.append(
                (SubsetMask.from_json(n, item["vertex"]), item["chain"])
            )
        return cls(form, s, d, tuple(assignment))


def base_case() -> Decomposition:
    """The width-1 cube for S_1 = {}: one chain {1} -> {} of color 1."""
    s = SignSets.all_empty(1)
    chain = Quasichain.from_edges(1, (0, 1), [(1, 0, 1)])
    return Decomposition(s, (chain,))


def _normalize_bits(sbits: tuple[int, ...], k: int) -> tuple[tuple[int, ...], int, int]:
    """Normalize sign-set bit patterns at position k within their own universe.

    Stage 1 complements every S_i containing its own index i (recording those
    colors); stage 2 base-changes by a = {i : k in S_i} with per-index
    complementation. Returns (new sign bits, a, net complemented colors).
    """
    width = len(sbits)
    if not 1 <= k <= width:
        raise InputError(f"normalize position {k} outside 1..{width}")
    full = (1 << width) - 1
    cur = list(sbits)
    stage1 = 0
    for i in range(width):
        if cur[i] >> i & 1:
            stage1 |= 1 << i
            cur[i] ^= full
    kb = 1 << (k - 1)
    a = 0
    for i in range(width):
        if cur[i] & kb:
            a |= 1 << i
    out = []
    for i in range(width):
        t = cur[i] ^ a
        if a >> i & 1:
            t ^= full
        out.append(t)
    flips = stage1 ^ a
    for i, t in enumerate(out):
        if t >> i & 1 or t & kb:
            raise InternalInvariantError("normalization postcondition failed")
    return tuple(out), a, flips


def normalize_step(s: SignSets, k: int) -> tuple[SignSets, Transform]:
    """Coordinates in which i is never in S_i and k is never in S_i.

    The returned Transform achieves the move and, being an involution, also
    undoes it.
    """
    out, a, flips = _normalize_bits(s.bits(), k)
    n = s.n
    return (
        SignSets.from_bits(n, out),
        Transform(SubsetMask(n, a), SubsetMask(n, flips)),
    )


def _source_of(verts: tuple[int, ...], emap: dict) -> int:
    m = len(verts)
    if m == 1:
        return verts[0]
    deg = dict.fromkeys(verts, 0)
    for src, _ in emap.values():
        deg[src] += 1
    for v, d in deg.items():
        if d == m - 1:
            return v
    raise InputError("chain has no source; tournament is not transitive")


def _extend_chain(chain: RawChain, k: int) -> tuple[RawChain, RawChain | None]:
    """One induction step on a single chain.

    The source A gains a twin A+k placed above it: A+k copies every edge A
    had, with the same colors, plus a color-k edge A+k -> A. The +k
    translate of the chain loses A+k and is dropped when that empties it.
    """
    verts, emap = chain
    a = _source_of(verts, emap)
    kb = 1 << (k - 1)
    newv = a | kb
    e1 = dict(emap)
    for (u, v), (src, color) in emap.items():
        if src == a:
            b = v if u == a else u
            e1[_pairkey(b, newv)] = (newv, color)
    e1[_pairkey(a, newv)] = (newv, k)
    first = (tuple(sorted(verts + (newv,))), e1)
    if len(verts) == 1:
        return first, None
    e2 = {}
    for (u, v), (src, color) in emap.items():
        if a in (u, v):
            continue
        e2[(u | kb, v | kb)] = (src | kb, color)
    second = (tuple(sorted(x | kb for x in verts if x != a)), e2)
    return first, second


def _transform_chains(chains: list[RawChain], a: int, flips: int) -> list[RawChain]:
    if not a and not flips:
        return chains
    out = []
    for verts, emap in chains:
        nv, ne = _apply_raw(verts, _iter_edges(emap), a, flips)
        out.append((tuple(sorted(nv)), {_pairkey(s, d): (s, c) for s, d, c in ne}))
    return out


def _iter_edges(emap: dict) -> list[tuple[int, int, int]]:
    triples = []
    for (u, v), (src, color) in emap.items():
        dst = v if src == u else u
        triples.append((src, dst, color))
    return triples


def _check_level(chains: list[RawChain], sbits: tuple[int, ...], k: int) -> None:
    if len(chains) != central_binomial(k):
        raise InternalInvariantError(
            f"level {k}: {len(chains)} chains, expected {central_binomial(k)}"
        )
    for verts, emap in chains:
        bad = _edge_violation(_iter_edges(emap), sbits)
        if bad is not None:
            raise InternalInvariantError(f"level {k}: invalid edge {bad}")
        tri = _triangle_violation(verts, emap)
        if tri is not None:
            raise InternalInvariantError(f"level {k}: {tri[3]}")


def _build_raw(sbits_full: tuple[int, ...], check: bool) -> list[RawChain]:
    """Bottom-up construction; at the end of level k the chains are valid for
    the original sign sets restricted to [k]."""
    n = len(sbits_full)
    chains: list[RawChain] = [((0,), {})]
    for k in range(1, n + 1):
        low = (1 << k) - 1
        sk = tuple(sbits_full[i] & low for i in range(k))
        _, a, flips = _normalize_bits(sk, k)
        chains = _transform_chains(chains, a, flips)
        extended: list[RawChain] = []
        for chain in chains:
            first, second = _extend_chain(chain, k)
            extended.append(first)
            if second is not None:
                extended.append(second)
        chains = _transform_chains(extended, a, flips)
        if check:
            _check_level(chains, sk, k)
    return chains


def _wrap_chains(n: int, chains: list[RawChain]) -> tuple[Quasichain, ...]:
    wrapped = [
        Quasichain.from_edges(n, verts, _iter_edges(emap)) for verts, emap in chains
    ]
    wrapped.sort(key=lambda c: c.vertices)
    return tuple(wrapped)


def build(s: SignSets, *, check: bool = False) -> Decomposition:
    """Partition all 2^n subsets into C(n, floor(n/2)) quasichains valid for s.

    Deterministic: identical input yields bit-identical output. With
    ``check`` every intermediate level is re-validated (edge condition,
    triangle condition, chain count) instead of only trusting the invariants.
    """
    n = s.n
    if n > MAX_BUILD_WIDTH:
        raise ResourceError(f"build materializes 2^n subsets; limited to n <= {MAX_BUILD_WIDTH}")
    chains = _build_raw(s.bits(), check)
    return Decomposition(s, _wrap_chains(n, chains))


def extend(d: Decomposition, s: SignSets, k: int, *, check: bool = False) -> Decomposition:
    """One public induction step: from a width-(k-1) decomposition to width k.

    Requires s normalized at k and d expressed for s restricted to [k-1].
    """
    if s.n != k:
        raise InputError(f"sign sets must have width {k}, got {s.n}")
    if not s.normalized_at(k):
        raise InputError(f"sign sets are not normalized at {k}")
    if d.n != k - 1:
        raise InputError(f"input decomposition must have width {k - 1}, got {d.n}")
    if d.signsets != s.restrict(k - 1):
        raise InputError("input decomposition context must equal s restricted to [k-1]")
    chains: list[RawChain] = [
        (c.vertices, c.edge_map()) for c in d.chains
    ]
    extended: list[RawChain] = []
    for chain in chains:
        first, second = _extend_chain(chain, k)
        extended.append(first)
        if second is not None:
            extended.append(second)
    if check:
        _check_level(extended, s.bits(), k)
    return Decomposition(s, _wrap_chains(k, extended))


def verify(
    d: Decomposition, s: SignSets, *, expected_chain_count: int | None = None
) -> VerificationResult:
    """Check partition, per-chain validity, and the chain count.

    The count defaults to C(n, floor(n/2)); pass a different value for
    partial partitions such as the glued variant. Reports the first failure,
    scanning chains in ascending index order.
    """
    n = s.n
    if d.n != n:
        return VerificationResult(False, f"width mismatch: decomposition {d.n} vs sign sets {n}")
    want = central_binomial(n) if expected_chain_count is None else expected_chain_count
    if len(d.chains) != want:
        return VerificationResult(
            False, f"chain count {len(d.chains)} != expected {want}"
        )
    seen: set[int] = set()
    total = 0
    for idx, chain in enumerate(d.chains):
        for v in chain.vertices:
            if v in seen:
                return VerificationResult(
                    False, f"chain {idx}: duplicate vertex {sorted(SubsetMask(n, v).elements())}"
                )
            seen.add(v)
        total += len(chain.vertices)
    if total != 1 << n:
        return VerificationResult(
            False, f"chains cover {total} vertices, expected {1 << n}"
        )
    sbits = s.bits()
    for idx, chain in enumerate(d.chains):
        bad = _edge_violation(chain.edges, sbits)
        if bad is not None:
            src, dst, color, why = bad
            return VerificationResult(
                False, f"chain {idx}: edge {src}->{dst} color {color}: {why}"
            )
        tri = _triangle_violation(chain.vertices, chain.edge_map())
        if tri is not None:
            return VerificationResult(False, f"chain {idx}: {tri[3]}")
    return VerificationResult(True, None)


def certify_bound(f: QuadraticForm, *, check: bool = False) -> BoundCertificate:
    """End-to-end witness that f has at most C(n, floor(n/2)) strict maxima.

    Enumerates the maxima, builds the decomposition for the form's sign
    sets, verifies it, and assigns each maximum to its containing chain.
    Two maxima sharing a chain would contradict the one-per-chain property,
    so a collision (or a failed verification) is an internal error, never a
    property of the input.
    """
    n = f.n
    if n > MAX_BUILD_WIDTH:
        raise ResourceError(f"certification builds a decomposition; limited to n <= {MAX_BUILD_WIDTH}")
    s = sign_sets(f)
    maxima = enumerate_maxima(f)
    d = build(s, check=check)
    res = verify(d, s)
    if not res:
        raise InternalInvariantError(f"built decomposition failed verification: {res.detail}")
    chain_of: dict[int, int] = {}
    for idx, chain in enumerate(d.chains):
        for v in chain.vertices:
            chain_of[v] = idx
    used: dict[int, int] = {}
    assignment = []
    for m in maxima:
        idx = chain_of[m.bits]
        if idx in used:
            raise InternalInvariantError(
                f"two maxima ({used[idx]}, {m.bits}) share chain {idx}"
            )
        used[idx] = m.bits
        assignment.append((m, idx))
    return BoundCertificate(f, s, d, tuple(assignment))
