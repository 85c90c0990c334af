"""Seeded random inputs for the self-test command and the test suite."""

from __future__ import annotations

from fractions import Fraction
from random import Random

from .forms import QuadraticForm, sign_sets
from .quasichain import Transform
from .subsets import SignSets


def random_rational(rng: Random, max_numerator: int, denominators: tuple[int, ...]) -> Fraction:
    return Fraction(rng.randint(-max_numerator, max_numerator), rng.choice(denominators))


def random_form(
    rng: Random,
    n: int,
    *,
    zero_prob: float = 0.15,
    max_numerator: int = 9,
    denominators: tuple[int, ...] = (1, 2, 3, 4),
) -> QuadraticForm:
    """Random rational form; off-diagonals are exactly zero with zero_prob."""
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = random_rational(rng, max_numerator, denominators)
        for j in range(i + 1, n):
            if rng.random() < zero_prob:
                continue
            e = random_rational(rng, max_numerator, denominators)
            rows[i][j] = e
            rows[j][i] = e
    return QuadraticForm(tuple(tuple(r) for r in rows))


def random_signsets(rng: Random, n: int) -> SignSets:
    """Arbitrary sign sets; i in S_i and asymmetry both allowed."""
    return SignSets.from_bits(n, (rng.randrange(1 << n) for _ in range(n)))


def random_symmetric_signsets(rng: Random, n: int, edge_prob: float = 0.5) -> SignSets:
    """Form-like sign sets: never i in S_i, and j in S_i iff i in S_j."""
    bits = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                bits[i] |= 1 << j
                bits[j] |= 1 << i
    return SignSets.from_bits(n, bits)


def random_form_with_surviving_positive(rng: Random, n: int, **kwargs) -> QuadraticForm:
    """A random form keeping some positive off-diagonal after the S_1 base change."""
    while True:
        f = random_form(rng, n, **kwargs)
        s = sign_sets(f)
        moved = Transform.base_change(s.get(1)).apply_to_signsets(s)
        if any(moved.bits()):
            return f


def random_parallelepiped(
    rng: Random, n: int, *, max_dim: int | None = None
) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Base point and edge vectors; dimensions below n force degeneracy."""
    d = rng.randint(1, max_dim if max_dim is not None else n + 1)
    denoms = (1, 2, 3)

    def vec() -> list[Fraction]:
        return [random_rational(rng, 4, denoms) for _ in range(d)]

    p = vec()
    vs = []
    for _ in range(n):
        roll = rng.random()
        if roll < 0.08:
            vs.append([Fraction(0)] * d)  # collapsed edge
        elif roll < 0.16 and vs:
            vs.append(list(rng.choice(vs)))  # repeated edge direction
        else:
            vs.append(vec())
    return p, vs
