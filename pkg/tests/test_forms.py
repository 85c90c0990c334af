from fractions import Fraction as F
from random import Random

import pytest

from cubeq import (
    Family,
    InputError,
    QuadraticForm,
    SubsetMask,
    base_change_family,
    base_change_form,
    build_form,
    central_binomial,
    count_maxima_float,
    enumerate_maxima,
    form_from_json,
    form_to_json,
    is_strict_local_max,
    margin,
    maxima_count,
    middle_layer_form,
    parallelepiped_form,
    perturb,
    sign_sets,
    value,
)
from cubeq.generators import random_form
from conftest import mask


def brute_maxima(f):
    """Definition-level scan used as the anchor oracle in this module."""
    return Family.of(
        f.n,
        (
            SubsetMask(f.n, v)
            for v in range(1 << f.n)
            if is_strict_local_max(f, SubsetMask(f.n, v))
        ),
    )


class TestBuildForm:
    def test_square_expansion(self):
        # -(x1 + x2 - 1)^2 on the cube: linear (1,1), cross term -2
        f = build_form(2, (1, 1), {(1, 2): -2})
        assert f.q == ((F(1), F(-1)), (F(-1), F(1)))

    def test_single_variable(self):
        f = build_form(1, (-1,))
        assert f.q == ((F(-1),),)

    def test_zero(self):
        f = build_form(3, (0, 0, 0))
        assert f == QuadraticForm.zero(3)

    def test_bad_indices(self):
        with pytest.raises(InputError):
            build_form(2, (0, 0), {(2, 1): 1})
        with pytest.raises(InputError):
            build_form(2, (0, 0), {(1, 3): 1})

    def test_value_matches_polynomial(self):
        f = build_form(2, (1, 1), {(1, 2): -2})
        # Dropped constant is -1, so value(x) = -(x1+x2-1)^2 + 1.
        for bits in range(4):
            x1, x2 = bits & 1, bits >> 1 & 1
            assert value(f, SubsetMask(2, bits)) == -((x1 + x2 - 1) ** 2) + 1


class TestMargin:
    def test_square_form_margins(self):
        f = build_form(2, (1, 1), {(1, 2): -2})
        assert margin(f, 1, mask(2)) == 1
        assert margin(f, 1, mask(2, 2)) == -1

    def test_zero_form(self):
        f = QuadraticForm.zero(3)
        for i in range(1, 4):
            for bits in range(8):
                assert margin(f, i, SubsetMask(3, bits)) == 0

    def test_margin_is_value_difference(self):
        rng = Random(3)
        for _ in range(50):
            n = rng.randint(1, 5)
            f = random_form(rng, n)
            bits = rng.randrange(1 << n)
            i = rng.randint(1, n)
            hi = SubsetMask(n, bits | 1 << (i - 1))
            lo = SubsetMask(n, bits & ~(1 << (i - 1)))
            assert margin(f, i, SubsetMask(n, bits)) == value(f, hi) - value(f, lo)

    def test_independent_of_own_bit(self):
        rng = Random(4)
        for _ in range(100):
            n = rng.randint(1, 6)
            f = random_form(rng, n)
            bits = rng.randrange(1 << n)
            i = rng.randint(1, n)
            flipped = bits ^ 1 << (i - 1)
            assert margin(f, i, SubsetMask(n, bits)) == margin(f, i, SubsetMask(n, flipped))


class TestStrictLocalMax:
    def test_square_form(self):
        f = build_form(2, (1, 1), {(1, 2): -2})
        assert is_strict_local_max(f, mask(2, 1))
        assert is_strict_local_max(f, mask(2, 2))
        assert not is_strict_local_max(f, mask(2))

    def test_zero_form_has_none(self):
        f = QuadraticForm.zero(2)
        for bits in range(4):
            assert not is_strict_local_max(f, SubsetMask(2, bits))

    def test_middle_layer_vertex(self):
        assert is_strict_local_max(middle_layer_form(4), mask(4, 1, 2))

    def test_matches_value_comparison(self):
        rng = Random(5)
        for _ in range(60):
            n = rng.randint(1, 5)
            f = random_form(rng, n)
            for bits in range(1 << n):
                v = SubsetMask(n, bits)
                by_value = all(
                    value(f, v) > value(f, SubsetMask(n, bits ^ 1 << i))
                    for i in range(n)
                )
                assert is_strict_local_max(f, v) == by_value


class TestEnumerateMaxima:
    def test_middle_layer_n4(self):
        got = enumerate_maxima(middle_layer_form(4))
        want = Family.from_bits(4, (0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100))
        assert got == want

    def test_zero_form(self):
        assert len(enumerate_maxima(QuadraticForm.zero(4))) == 0

    def test_negative_linear(self):
        f = build_form(3, (-1, -1, -1))
        assert enumerate_maxima(f) == Family.from_bits(3, (0,))

    def test_agrees_with_definition(self):
        rng = Random(6)
        for _ in range(150):
            n = rng.randint(1, 7)
            f = random_form(rng, n)
            assert enumerate_maxima(f) == brute_maxima(f)

    def test_count_bound_and_adjacency(self):
        rng = Random(7)
        for _ in range(150):
            n = rng.randint(2, 8)
            f = random_form(rng, n)
            m = enumerate_maxima(f)
            assert len(m) <= central_binomial(n)
            bits = m.bits()
            present = set(bits)
            for b in bits:
                for i in range(n):
                    assert b ^ (1 << i) not in present

    def test_maxima_count_matches(self):
        f = middle_layer_form(6)
        assert maxima_count(f) == 20


class TestSignSetsOfForm:
    def test_middle_layer_all_empty(self):
        for n in (2, 5, 8):
            assert sign_sets(middle_layer_form(n)).bits() == (0,) * n

    def test_positive_pair(self):
        f = build_form(2, (0, 0), {(1, 2): 2})
        s = sign_sets(f)
        assert s.to_json() == [[2], [1]]

    def test_zero_form(self):
        assert sign_sets(QuadraticForm.zero(3)).bits() == (0, 0, 0)

    def test_symmetry_and_no_self(self):
        rng = Random(8)
        for _ in range(80):
            n = rng.randint(1, 7)
            s = sign_sets(random_form(rng, n))
            bits = s.bits()
            for i in range(n):
                assert not bits[i] >> i & 1
                for j in range(n):
                    assert bool(bits[i] >> j & 1) == bool(bits[j] >> i & 1)


class TestBaseChangeForm:
    def test_identity(self):
        f = middle_layer_form(3)
        assert base_change_form(f, mask(3)) == f

    def test_involution(self):
        rng = Random(9)
        for _ in range(60):
            n = rng.randint(1, 6)
            f = random_form(rng, n)
            b = SubsetMask(n, rng.randrange(1 << n))
            assert base_change_form(base_change_form(f, b), b) == f

    def test_off_diagonal_sign_flip_rule(self):
        rng = Random(10)
        for _ in range(40):
            n = rng.randint(2, 6)
            f = random_form(rng, n)
            b = SubsetMask(n, rng.randrange(1 << n))
            g = base_change_form(f, b)
            for i in range(n):
                for j in range(i + 1, n):
                    flip = (i + 1 in b) != (j + 1 in b)
                    assert g.q[i][j] == (-f.q[i][j] if flip else f.q[i][j])

    def test_maxima_equivariance(self):
        rng = Random(11)
        for _ in range(120):
            n = rng.randint(1, 8)
            f = random_form(rng, n)
            b = SubsetMask(n, rng.randrange(1 << n))
            lhs = enumerate_maxima(base_change_form(f, b))
            rhs = base_change_family(enumerate_maxima(f), b)
            assert lhs == rhs


class TestPerturb:
    def test_no_zero_off_diagonals_unchanged(self):
        f = middle_layer_form(4)
        assert perturb(f, F(1, 100)) == f

    def test_zero_form(self):
        g = perturb(QuadraticForm.zero(3), 1)
        assert g.q == (
            (F(0), F(-1), F(-1)),
            (F(-1), F(0), F(-1)),
            (F(-1), F(-1), F(0)),
        )

    def test_eps_must_be_positive(self):
        with pytest.raises(InputError):
            perturb(QuadraticForm.zero(2), 0)

    def test_maxima_survive_small_eps(self):
        rng = Random(12)
        for _ in range(80):
            n = rng.randint(2, 6)
            f = random_form(rng, n, zero_prob=0.5)
            before = enumerate_maxima(f)
            margins = [
                margin(f, i, SubsetMask(n, bits))
                for bits in range(1 << n)
                for i in range(1, n + 1)
            ]
            nonzero = [abs(m) for m in margins if m != 0]
            eps = (min(nonzero) if nonzero else F(1)) / (2 * n)
            after = enumerate_maxima(perturb(f, eps))
            assert set(before.bits()) <= set(after.bits())


class TestParallelepiped:
    def test_one_dimensional_tie(self):
        f = parallelepiped_form([-1], [[2]])
        assert len(enumerate_maxima(f)) == 0

    def test_centered_unit_square_is_a_four_way_tie(self):
        # All four vertices sit at squared distance 1/2: no strict maxima.
        f = parallelepiped_form([F(-1, 2), F(-1, 2)], [[1, 0], [0, 1]])
        assert len(enumerate_maxima(f)) == 0

    def test_off_center_square_has_unique_closest_vertex(self):
        f = parallelepiped_form([F(-1, 4), F(-1, 4)], [[1, 0], [0, 1]])
        m = enumerate_maxima(f)
        assert m == Family.from_bits(2, (0,))

    def test_closest_matches_geometry(self):
        rng = Random(13)
        for _ in range(60):
            n = rng.randint(1, 4)
            d = rng.randint(1, 4)
            p = [F(rng.randint(-6, 6), rng.choice((1, 2, 3))) for _ in range(d)]
            vs = [
                [F(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(d)]
                for _ in range(n)
            ]
            f = parallelepiped_form(p, vs)
            dist2 = {}
            for bits in range(1 << n):
                pt = list(p)
                for i in range(n):
                    if bits >> i & 1:
                        pt = [a + b for a, b in zip(pt, vs[i])]
                dist2[bits] = sum(c * c for c in pt)
            want = {
                bits
                for bits in range(1 << n)
                if all(dist2[bits] < dist2[bits ^ (1 << i)] for i in range(n))
            }
            assert set(enumerate_maxima(f).bits()) == want

    def test_littlewood_offord_box(self):
        p = [-1, -1, -1, -1]
        vs = [[2 if j == i else 0 for j in range(4)] for i in range(4)]
        count = len(enumerate_maxima(parallelepiped_form(p, vs)))
        assert count <= central_binomial(4)

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            parallelepiped_form([1, 0], [[1], [0, 1]])


class TestFloatPath:
    def test_counts_agree_away_from_ties(self):
        # Integer forms with odd margins cannot tie, so floats agree here.
        for n in (3, 5, 8):
            f = middle_layer_form(n)
            assert count_maxima_float(f) == maxima_count(f)


class TestFormJson:
    def test_round_trip_sparse(self):
        rng = Random(14)
        for _ in range(40):
            f = random_form(rng, rng.randint(1, 6))
            assert form_from_json(form_to_json(f)) == f

    def test_dense_input_symmetrized(self):
        f = form_from_json({"n": 2, "q": [[0, 1], [0, 0]]})
        assert f.q == ((F(0), F(1, 2)), (F(1, 2), F(0)))

    def test_duplicate_quad_rejected(self):
        data = {
            "n": 2,
            "linear": ["0/1", "0/1"],
            "quad": [{"i": 1, "j": 2, "c": "1/1"}, {"i": 1, "j": 2, "c": "2/1"}],
        }
        with pytest.raises(InputError):
            form_from_json(data)

    def test_floats_rejected(self):
        with pytest.raises(InputError):
            form_from_json({"n": 1, "linear": [0.5]})
