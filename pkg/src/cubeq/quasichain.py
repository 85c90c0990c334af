"""Edge-colored tournaments over subsets, with the two validity conditions.

A quasichain is a tournament on a set of subset vertices whose edges carry
colors in [n]. Against given sign sets it must satisfy:

  (i)  every color-i edge runs from a vertex x with i in (x XOR S_i) to a
       vertex y with i not in (y XOR S_i), and witnesses the twisted
       containment (x XOR S_i) superset of (y XOR S_i);
  (ii) reversing all edges of any subset of colors leaves the tournament
       acyclic (equivalently transitive).

Condition (ii) reduces to a local test on vertex triples: no triangle uses
three distinct colors, monochromatic triangles are not directed 3-cycles,
and in a two-colored triangle the equal-colored edges either both leave or
both enter their shared vertex. Both the reduction and the exhaustive flip
check are implemented so each can audit the other.

A Transform bundles the coordinate moves that preserve validity: translate
every vertex by a fixed subset ``a`` and, for each color in ``flips``,
complement that sign set within the ground set and reverse all edges of that
color. Every transform is an involution and two transforms compose by
componentwise symmetric difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .errors import InputError, ResourceError
from .subsets import Family, SignSets, SubsetMask, _check_width

MAX_BRUTEFORCE_COLORS = 20


def _pairkey(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, slots=True)
class Quasichain:
    """A colored tournament; one directed, colored edge per vertex pair.

    ``vertices`` are subset bit patterns in ascending order; ``edges`` holds
    one (src, dst, color) triple per unordered pair, sorted by pair. The
    tournament property is guaranteed structurally by construction; validity
    against sign sets is checked by the functions below, never assumed.
    """

    n: int
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        _check_width(self.n)
        size = 1 << self.n
        prev = -1
        for v in self.vertices:
            if not isinstance(v, int) or not 0 <= v < size:
                raise InputError(f"vertex {v!r} does not fit width {self.n}")
            if v <= prev:
                raise InputError("vertices must be distinct and sorted")
            prev = v
        vset = set(self.vertices)
        m = len(self.vertices)
        if len(self.edges) != m * (m - 1) // 2:
            raise InputError(
                f"tournament on {m} vertices needs {m * (m - 1) // 2} edges, "
                f"got {len(self.edges)}"
            )
        seen = set()
        prev_key = (-1, -1)
        for src, dst, color in self.edges:
            if src == dst or src not in vset or dst not in vset:
                raise InputError(f"edge ({src},{dst}) endpoints must be distinct vertices")
            if not 1 <= color <= self.n:
                raise InputError(f"edge color {color} outside 1..{self.n}")
            key = _pairkey(src, dst)
            if key in seen:
                raise InputError(f"duplicate edge for pair {key}")
            if key < prev_key:
                raise InputError("edges must be sorted by vertex pair")
            seen.add(key)
            prev_key = key

    @classmethod
    def from_edges(
        cls,
        n: int,
        vertices: Iterable[int | SubsetMask],
        edges: Iterable[tuple[int | SubsetMask, int | SubsetMask, int]],
    ) -> "Quasichain":
        def bits(x: int | SubsetMask) -> int:
            return x.bits if isinstance(x, SubsetMask) else x

        verts = tuple(sorted({bits(v) for v in vertices}))
        triple = sorted(
            ((bits(s), bits(d), c) for s, d, c in edges),
            key=lambda e: _pairkey(e[0], e[1]),
        )
        return cls(n, verts, tuple(triple))

    def edge_map(self) -> dict[tuple[int, int], tuple[int, int]]:
        """Unordered pair -> (src, color)."""
        return {_pairkey(s, d): (s, c) for s, d, c in self.edges}

    def vertex_masks(self) -> tuple[SubsetMask, ...]:
        return tuple(SubsetMask(self.n, v) for v in self.vertices)

    def vertex_family(self) -> Family:
        return Family.from_bits(self.n, self.vertices)

    def colors(self) -> tuple[int, ...]:
        return tuple(sorted({c for _, _, c in self.edges}))

    def __len__(self) -> int:
        return len(self.vertices)

    def induced(self, keep: Iterable[int | SubsetMask]) -> "Quasichain":
        """The sub-tournament on a vertex subset (a quasichain stays one)."""
        kept = {v.bits if isinstance(v, SubsetMask) else v for v in keep}
        bad = kept - set(self.vertices)
        if bad:
            raise InputError(f"not vertices of this quasichain: {sorted(bad)}")
        edges = [(s, d, c) for s, d, c in self.edges if s in kept and d in kept]
        return Quasichain.from_edges(self.n, kept, edges)

    def to_json(self) -> dict:
        def subset(bits: int) -> list[int]:
            return SubsetMask(self.n, bits).to_json()

        return {
            "vertices": [subset(v) for v in self.vertices],
            "edges": [
                {"from": subset(s), "to": subset(d), "color": c}
                for s, d, c in self.edges
            ],
        }

    @classmethod
    def from_json(cls, n: int, data: object) -> "Quasichain":
        if not isinstance(data, dict) or "vertices" not in data or "edges" not in data:
            raise InputError("quasichain JSON needs 'vertices' and 'edges'")
        verts = [SubsetMask.from_json(n, v).bits for v in data["vertices"]]
        edges = []
        for item in data["edges"]:
            if not isinstance(item, dict) or not {"from", "to", "color"} <= item.keys():
                raise InputError(f"edge {item!r} must have keys from, to, color")
            edges.append(
                (
                    SubsetMask.from_json(n, item["from"]).bits,
                    SubsetMask.from_json(n, item["to"]).bits,
                    item["color"],
                )
            )
        return cls.from_edges(n, verts, edges)


def _edge_violation(
    edges: Iterable[tuple[int, int, int]], sbits: tuple[int, ...]
) -> tuple[int, int, int, str] | None:
    for src, dst, color in edges:
        s = sbits[color - 1]
        b = 1 << (color - 1)
        xs = src ^ s
        ys = dst ^ s
        if not xs & b:
            return (src, dst, color, "color missing from source side")
        if ys & b:
            return (src, dst, color, "color present on target side")
        if xs & ys != ys:
            return (src, dst, color, "no twisted containment")
    return None


def first_edge_violation(
    qc: Quasichain, s: SignSets
) -> tuple[int, int, int, str] | None:
    """First edge breaking condition (i) against s, or None."""
    if s.n != qc.n:
        raise InputError(f"width mismatch: {qc.n} vs {s.n}")
    return _edge_violation(qc.edges, s.bits())


def validate_edges(qc: Quasichain, s: SignSets) -> bool:
    return first_edge_violation(qc, s) is None


def _triangle_violation(
    verts: tuple[int, ...], emap: Mapping[tuple[int, int], tuple[int, int]]
) -> tuple[int, int, int, str] | None:
    for a, b, c in combinations(verts, 3):
        s1, c1 = emap[(a, b)]
        s2, c2 = emap[(a, c)]
        s3, c3 = emap[(b, c)]
        distinct = len({c1, c2, c3})
        if distinct == 3:
            return (a, b, c, "triangle with three distinct colors")
        if distinct == 1:
            out_a = (s1 == a) + (s2 == a)
            out_b = (s1 == b) + (s3 == b)
            out_c = (s2 == c) + (s3 == c)
            if out_a == out_b == out_c == 1:
                return (a, b, c, "monochromatic directed 3-cycle triangle")
        else:
            if c1 == c2:
                ok = (s1 == a) == (s2 == a)
            elif c1 == c3:
                ok = (s1 == b) == (s3 == b)
            else:
                ok = (s2 == c) == (s3 == c)
            if not ok:
                return (
                    a,
                    b,
                    c,
                    "two-colored triangle whose equal-colored edges neither both "
                    "leave nor both enter their shared vertex",
                )
    return None


def first_triangle_violation(qc: Quasichain) -> tuple[int, int, int, str] | None:
    """First vertex triple breaking the local form of condition (ii), or None."""
    return _triangle_violation(qc.vertices, qc.edge_map())


def is_flip_acyclic_triangles(qc: Quasichain) -> bool:
    """Condition (ii) via the triangle characterization; agrees with the
    exhaustive check on every input."""
    return first_triangle_violation(qc) is None


def is_flip_acyclic_bruteforce(qc: Quasichain) -> bool:
    """Condition (ii) by exhausting all color subsets.

    For each subset, reverse those color classes and test transitivity via
    the out-degree signature (a tournament is transitive iff its out-degrees
    are 0, 1, ..., m-1 in some order).
    """
    colors = qc.colors()
    if len(colors) > MAX_BRUTEFORCE_COLORS:
        raise ResourceError(
            f"more than {MAX_BRUTEFORCE_COLORS} colors; use is_flip_acyclic_triangles"
        )
    m = len(qc.vertices)
    index = {v: i for i, v in enumerate(qc.vertices)}
    expected = list(range(m))
    for pick in range(1 << len(colors)):
        flipped = {c for k, c in enumerate(colors) if pick >> k & 1}
        deg = [0] * m
        for src, dst, color in qc.edges:
            head = dst if color in flipped else src
            deg[index[head]] += 1
        if sorted(deg) != expected:
            return False
    return True


def source(qc: Quasichain) -> SubsetMask:
    """The unique vertex with every edge outgoing (the maximal element)."""
    m = len(qc.vertices)
    deg: dict[int, int] = {v: 0 for v in qc.vertices}
    for src, _, _ in qc.edges:
        deg[src] += 1
    tops = [v for v, d in deg.items() if d == m - 1]
    if len(tops) != 1:
        raise InputError("no unique source vertex; tournament is not transitive")
    return SubsetMask(qc.n, tops[0])


def flip_colors(qc: Quasichain, colors: Iterable[int] | SubsetMask) -> Quasichain:
    """Reverse every edge whose color is in the set; colors unchanged; involutive."""
    if isinstance(colors, SubsetMask):
        cbits = colors.bits
    else:
        cbits = 0
        for c in colors:
            if not 1 <= c <= qc.n:
                raise InputError(f"color {c} outside 1..{qc.n}")
            cbits |= 1 << (c - 1)
    edges = [
        (d, s, c) if cbits >> (c - 1) & 1 else (s, d, c) for s, d, c in qc.edges
    ]
    return Quasichain.from_edges(qc.n, qc.vertices, edges)


def members_in(qc: Quasichain, f: Family) -> Family:
    """The quasichain's vertices that belong to f."""
    if f.n != qc.n:
        raise InputError(f"width mismatch: {qc.n} vs {f.n}")
    fb = set(f.bits())
    return Family.from_bits(qc.n, (v for v in qc.vertices if v in fb))


@dataclass(frozen=True, slots=True)
class Transform:
    """Base change by ``a`` combined with per-color complement-and-reverse.

    Action: every sign set S_i becomes S_i XOR a, complemented within the
    ground set iff i is in ``flips``; every vertex becomes G XOR a; every
    color-i edge reverses direction iff i is in ``flips``. The move used
    when normalizing (base change by a, then complement each S_i that
    acquired its own index) is the special case flips == a. Transforms are
    involutions and compose by componentwise symmetric difference, so the
    inverse of any transform is itself.
    """

    a: SubsetMask
    flips: SubsetMask

    def __post_init__(self) -> None:
        if self.a.n != self.flips.n:
            raise InputError(f"width mismatch: {self.a.n} vs {self.flips.n}")

    @property
    def n(self) -> int:
        return self.a.n

    @classmethod
    def identity(cls, n: int) -> "Transform":
        return cls(SubsetMask.empty(n), SubsetMask.empty(n))

    @classmethod
    def base_change(cls, a: SubsetMask) -> "Transform":
        """The combined move for a plain base change by ``a`` (flips == a)."""
        return cls(a, a)

    @property
    def is_identity(self) -> bool:
        return self.a.bits == 0 and self.flips.bits == 0

    def compose(self, other: "Transform") -> "Transform":
        """The transform equal to applying self, then other."""
        if other.n != self.n:
            raise InputError(f"width mismatch: {self.n} vs {other.n}")
        return Transform(self.a ^ other.a, self.flips ^ other.flips)

    def inverse(self) -> "Transform":
        return self

    def apply_to_signsets(self, s: SignSets) -> SignSets:
        if s.n != self.n:
            raise InputError(f"width mismatch: {self.n} vs {s.n}")
        n = self.n
        full = (1 << n) - 1
        out = []
        for i, bits in enumerate(s.bits()):
            t = bits ^ self.a.bits
            if self.flips.bits >> i & 1:
                t ^= full
            out.append(SubsetMask(n, t))
        return SignSets(tuple(out))

    def apply_to_quasichain(self, qc: Quasichain) -> Quasichain:
        if qc.n != self.n:
            raise InputError(f"width mismatch: {self.n} vs {qc.n}")
        verts, edges = _apply_raw(
            qc.vertices, qc.edges, self.a.bits, self.flips.bits
        )
        return Quasichain.from_edges(self.n, verts, edges)


def _apply_raw(
    verts: Iterable[int],
    edges: Iterable[tuple[int, int, int]],
    a_bits: int,
    flip_bits: int,
) -> tuple[list[int], list[tuple[int, int, int]]]:
    new_verts = [v ^ a_bits for v in verts]
    new_edges = []
    for s, d, c in edges:
        s2 = s ^ a_bits
        d2 = d ^ a_bits
        if flip_bits >> (c - 1) & 1:
            s2, d2 = d2, s2
        new_edges.append((s2, d2, c))
    return new_verts, new_edges


def apply_transform(
    qc: Quasichain, s: SignSets, t: Transform
) -> tuple[Quasichain, SignSets]:
    """Move a quasichain and its sign sets to new coordinates together.

    Validity is preserved in both directions: the output pair is valid
    exactly when the input pair was.
    """
    return t.apply_to_quasichain(qc), t.apply_to_signsets(s)
