"""Quadratic functions on the 0/1 cube and their strict local maxima.

A form is a symmetric n-by-n matrix q of exact rationals; its value at a
vertex x of {0,1}^n is sum_{i,j} q_ij x_i x_j. Because x_i^2 = x_i on the
cube, linear coefficients live on the diagonal and the constant term is
dropped. The quantity that decides everything is the margin of direction i:
the value difference between the x_i=1 and x_i=0 planes, which is the linear
function q_ii + 2 sum_{j != i} q_ij x_j. A vertex is a strict local maximum
exactly when every margin is nonzero and its sign agrees with membership
(positive for i in the vertex, negative otherwise).

Enumeration runs as a Gray-code sweep: one coordinate flips per step and all
n margins are updated in O(n) exact integer operations (coefficients are
scaled to a common denominator up front, which never changes any sign).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import InputError
from .subsets import Family, SignSets, SubsetMask, _check_width

Rational = Fraction


def parse_rational(x: object) -> Fraction:
    """Accept an int or a "num/den" (or plain "num") string; never floats."""
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {x!r}") from exc
    raise InputError(f"rationals must be ints or 'num/den' strings, got {x!r}")


def format_rational(r: Fraction) -> str:
    return f"{r.numerator}/{r.denominator}"


@dataclass(frozen=True, slots=True)
class QuadraticForm:
    """Symmetric rational coefficient matrix; diagonal holds the folded linear part."""

    q: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.q)
        _check_width(n)
        for row in self.q:
            if len(row) != n or any(not isinstance(e, Fraction) for e in row):
                raise InputError("coefficient matrix must be square with Fraction entries")
        for i in range(n):
            for j in range(i):
                if self.q[i][j] != self.q[j][i]:
                    raise InputError(f"matrix not symmetric at ({i + 1},{j + 1})")

    @property
    def n(self) -> int:
        return len(self.q)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]]) -> "QuadraticForm":
        """Build from a dense matrix, symmetrizing as (q + q^T)/2."""
        n = len(rows)
        _check_width(n)
        if any(len(r) != n for r in rows):
            raise InputError("coefficient matrix must be square")
        parsed = [[parse_rational(e) for e in row] for row in rows]
        sym = tuple(
            tuple((parsed[i][j] + parsed[j][i]) / 2 for j in range(n)) for i in range(n)
        )
        return cls(sym)

    @classmethod
    def zero(cls, n: int) -> "QuadraticForm":
        _check_width(n)
        z = Fraction(0)
        return cls(tuple(tuple(z for _ in range(n)) for _ in range(n)))


def build_form(
    n: int,
    linear: Sequence[object],
    quad: Mapping[tuple[int, int], object] | None = None,
) -> QuadraticForm:
    """Form for sum_i linear_i x_i + sum_{i<j} quad_{ij} x_i x_j on the cube.

    The diagonal gets the linear coefficients and each off-diagonal pair
    gets quad_{ij}/2 so the matrix reproduces the polynomial exactly.
    """
    _check_width(n)
    if len(linear) != n:
        raise InputError(f"need {n} linear coefficients, got {len(linear)}")
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, c in enumerate(linear):
        rows[i][i] = parse_rational(c)
    for (i, j), c in (quad or {}).items():
        if not (1 <= i <= n and 1 <= j <= n):
            raise InputError(f"quadratic index ({i},{j}) outside 1..{n}")
        if i >= j:
            raise InputError(f"quadratic keys need i < j, got ({i},{j})")
        half = parse_rational(c) / 2
        rows[i - 1][j - 1] = half
        rows[j - 1][i - 1] = half
    return QuadraticForm(tuple(tuple(row) for row in rows))


def middle_layer_form(n: int) -> QuadraticForm:
    """The equality witness: maxima are exactly the weight-floor(n/2) vertices.

    This is the cube form of -(x_1 + ... + x_n - floor(n/2))^2: diagonal
    2*floor(n/2) - 1, every off-diagonal -1.
    """
    _check_width(n)
    d = Fraction(2 * (n // 2) - 1)
    off = Fraction(-1)
    return QuadraticForm(
        tuple(tuple(d if i == j else off for j in range(n)) for i in range(n))
    )


def value(f: QuadraticForm, x: SubsetMask) -> Fraction:
    """The form's value at a vertex, straight from the definition."""
    if x.n != f.n:
        raise InputError(f"width mismatch: {f.n} vs {x.n}")
    els = [e - 1 for e in x.elements()]
    total = Fraction(0)
    for a, i in enumerate(els):
        total += f.q[i][i]
        for j in els[a + 1 :]:
            total += 2 * f.q[i][j]
    return total


def margin(f: QuadraticForm, i: int, x: SubsetMask) -> Fraction:
    """q_ii + 2 sum_{j != i} q_ij x_j; independent of bit i of x."""
    if x.n != f.n:
        raise InputError(f"width mismatch: {f.n} vs {x.n}")
    if not 1 <= i <= f.n:
        raise InputError(f"direction {i} outside 1..{f.n}")
    row = f.q[i - 1]
    total = row[i - 1]
    for j in range(f.n):
        if j != i - 1 and x.bits >> j & 1:
            total += 2 * row[j]
    return total


def is_strict_local_max(f: QuadraticForm, v: SubsetMask) -> bool:
    """True iff every neighbor of v has a strictly smaller value.

    Equivalent margin test: for i in v the margin is positive, for i not in
    v it is negative; a zero margin in any direction disqualifies v.
    """
    if v.n != f.n:
        raise InputError(f"width mismatch: {f.n} vs {v.n}")
    for i in range(1, f.n + 1):
        m = margin(f, i, v)
        if m == 0:
            return False
        if (m > 0) != (i in v):
            return False
    return True


def sign_sets(f: QuadraticForm) -> SignSets:
    """S_i = {j != i : q_ij > 0}. Always i not in S_i, and j in S_i iff i in S_j."""
    n = f.n
    masks = []
    for i in range(n):
        bits = 0
        row = f.q[i]
        for j in range(n):
            if j != i and row[j] > 0:
                bits |= 1 << j
        masks.append(SubsetMask(n, bits))
    return SignSets(tuple(masks))


def base_change_form(f: QuadraticForm, b: SubsetMask) -> QuadraticForm:
    """The form seen from the origin moved to b (substitute x_i -> 1 - x_i for i in b).

    Off-diagonal entries flip sign exactly when one endpoint lies in b; the
    diagonal is recomputed from the substitution (it equals the old margin at
    b, negated for flipped coordinates). The dropped constant is irrelevant
    on the cube, and applying the same change twice restores the form.
    """
    if b.n != f.n:
        raise InputError(f"width mismatch: {f.n} vs {b.n}")
    n = f.n
    inb = [(b.bits >> i & 1) == 1 for i in range(n)]
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            e = -f.q[i][j] if inb[i] != inb[j] else f.q[i][j]
            rows[i][j] = e
            rows[j][i] = e
    for i in range(n):
        total = f.q[i][i]
        for j in range(n):
            if j != i and inb[j]:
                total += 2 * f.q[i][j]
        rows[i][i] = -total if inb[i] else total
    return QuadraticForm(tuple(tuple(r) for r in rows))


def perturb(f: QuadraticForm, eps: object) -> QuadraticForm:
    """Replace every zero off-diagonal pair by -eps (eps > 0).

    For small enough eps (below the minimum absolute nonzero margin over all
    vertices and directions, divided by 2n) every strict local maximum
    survives; ties can only resolve downward, so the maxima set may grow but
    never shrinks.
    """
    e = parse_rational(eps)
    if e <= 0:
        raise InputError(f"eps must be positive, got {e}")
    n = f.n
    rows = [list(row) for row in f.q]
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] == 0:
                rows[i][j] = -e
                rows[j][i] = -e
    return QuadraticForm(tuple(tuple(r) for r in rows))


def parallelepiped_form(
    p: Sequence[object], vs: Sequence[Sequence[object]]
) -> QuadraticForm:
    """Cube form of -(squared distance to the origin) over a parallelepiped.

    The parallelepiped has base point p and edge vectors v_1..v_n in some
    ambient dimension d >= 1; vertex x maps to p + sum x_i v_i. Strict local
    maxima of the returned form are exactly the vertices strictly closer to
    the origin than all their neighbors. Degenerate (linearly dependent)
    edge vectors are accepted.
    """
    pv = [parse_rational(c) for c in p]
    d = len(pv)
    if d < 1:
        raise InputError("base point must have dimension >= 1")
    n = len(vs)
    _check_width(n)
    vecs = []
    for v in vs:
        if len(v) != d:
            raise InputError(f"edge vector {v!r} does not have dimension {d}")
        vecs.append([parse_rational(c) for c in v])

    def dot(a: list[Fraction], b: list[Fraction]) -> Fraction:
        return sum((x * y for x, y in zip(a, b)), Fraction(0))

    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            e = -dot(vecs[i], vecs[j])
            rows[i][j] = e
            rows[j][i] = e
        rows[i][i] = -2 * dot(pv, vecs[i]) - dot(vecs[i], vecs[i])
    return QuadraticForm(tuple(tuple(r) for r in rows))


def _margin_tables(f: QuadraticForm) -> tuple[list[int], list[list[int]]]:
    """Common-denominator integer data for the sweep.

    Returns (diag, rows) with diag[i] = L*q_ii and rows[t][j] = 2*L*q_tj for
    j != t (rows[t][t] = 0), where L clears all denominators. Scaling by a
    positive constant preserves every margin sign.
    """
    n = f.n
    L = math.lcm(*(e.denominator for row in f.q for e in row))
    diag = [int(f.q[i][i] * L) for i in range(n)]
    rows = [
        [0 if j == t else int(2 * L * f.q[t][j]) for j in range(n)] for t in range(n)
    ]
    return diag, rows


def _sweep_maxima(n: int, diag: list[int], rows: list[list[int]]) -> list[int]:
    """Gray-code sweep over all 2^n vertices, O(n) margin updates per step."""
    m = list(diag)
    out = []
    if all(v < 0 for v in m):
        out.append(0)
    x = 0
    rng = range(n)
    for t in range(1, 1 << n):
        low = t & -t
        flip = low.bit_length() - 1
        x ^= low
        row = rows[flip]
        if x & low:
            for j in rng:
                m[j] += row[j]
        else:
            for j in rng:
                m[j] -= row[j]
        for i in rng:
            mi = m[i]
            if mi == 0 or (mi > 0) != (x >> i & 1):
                break
        else:
            out.append(x)
    out.sort()
    return out


def enumerate_maxima(f: QuadraticForm) -> Family:
    """All strict local maxima, in canonical ascending order.

    Bit-identical to checking :func:`is_strict_local_max` vertex by vertex,
    but runs the incremental integer sweep.
    """
    diag, rows = _margin_tables(f)
    return Family.from_bits(f.n, _sweep_maxima(f.n, diag, rows))


def maxima_count(f: QuadraticForm) -> int:
    """len(enumerate_maxima(f)) without building mask objects."""
    diag, rows = _margin_tables(f)
    return len(_sweep_maxima(f.n, diag, rows))


def count_maxima_float(f: QuadraticForm) -> int:
    """Float-margin variant of the sweep, for benchmarking only.

    Floating point cannot distinguish ties from tiny strict gaps, so this
    count may be wrong whenever margins vanish or nearly cancel. It is never
    used by certification or verification paths.
    """
    n = f.n
    diag, rows = _margin_tables(f)
    fd = [float(v) for v in diag]
    fr = [[float(v) for v in row] for row in rows]
    m = list(fd)
    count = 1 if all(v < 0 for v in m) else 0
    x = 0
    rng = range(n)
    for t in range(1, 1 << n):
        low = t & -t
        flip = low.bit_length() - 1
        x ^= low
        row = fr[flip]
        if x & low:
            for j in rng:
                m[j] += row[j]
        else:
            for j in rng:
                m[j] -= row[j]
        for i in rng:
            mi = m[i]
            if mi == 0.0 or (mi > 0.0) != (x >> i & 1):
                break
        else:
            count += 1
    return count


def form_to_json(f: QuadraticForm) -> dict:
    """Sparse JSON encoding: diagonal as "linear", doubled off-diagonals as "quad"."""
    n = f.n
    quad = []
    for i in range(n):
        for j in range(i + 1, n):
            c = 2 * f.q[i][j]
            if c != 0:
                quad.append({"i": i + 1, "j": j + 1, "c": format_rational(c)})
    return {
        "n": n,
        "linear": [format_rational(f.q[i][i]) for i in range(n)],
        "quad": quad,
    }


def form_from_json(data: object) -> QuadraticForm:
    """Parse either the sparse {"n","linear","quad"} or dense {"n","q"} encoding."""
    if not isinstance(data, dict):
        raise InputError(f"form must be a JSON object, got {type(data).__name__}")
    if "n" not in data:
        raise InputError("form is missing 'n'")
    n = data["n"]
    _check_width(n if isinstance(n, int) else -1)
    if "q" in data:
        rows = data["q"]
        if not isinstance(rows, list) or len(rows) != n:
            raise InputError(f"'q' must be an {n}x{n} matrix")
        return QuadraticForm.from_rows(rows)
    linear = data.get("linear", [0] * n)
    if not isinstance(linear, list) or len(linear) != n:
        raise InputError(f"'linear' must be an array of {n} rationals")
    quad: dict[tuple[int, int], Fraction] = {}
    for item in data.get("quad", []):
        if not isinstance(item, dict) or not {"i", "j", "c"} <= item.keys():
            raise InputError(f"quad entry {item!r} must have keys i, j, c")
        i, j = item["i"], item["j"]
        if not isinstance(i, int) or not isinstance(j, int):
            raise InputError(f"quad indices must be integers, got {item!r}")
        if (i, j) in quad:
            raise InputError(f"duplicate quad entry for ({i},{j})")
        quad[(i, j)] = parse_rational(item["c"])
    return build_form(n, linear, quad)
