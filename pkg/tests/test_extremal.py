import math
from random import Random

import pytest

from cubeq import (
    Family,
    InputError,
    QuadraticForm,
    SignSets,
    SubsetMask,
    Transform,
    antichain_check,
    base_change_family,
    base_change_form,
    build,
    central_binomial,
    enumerate_maxima,
    evolution_count,
    glued_decomposition,
    middle_layer_form,
    sign_sets,
    stability_analysis,
    stability_threshold,
    verify,
)
from cubeq.generators import (
    random_form,
    random_form_with_surviving_positive,
    random_symmetric_signsets,
)
from conftest import family, signsets


class TestEvolutionCount:
    @pytest.mark.parametrize("k,want", [(0, 1), (1, 2), (2, 4), (3, 8)])
    def test_values(self, k, want):
        assert evolution_count(k) == want

    def test_recurrence_to_40(self):
        for k in range(41):
            lhs = math.comb(k + 3, (k + 3) // 2)
            rhs = 2 * math.comb(k + 1, (k + 1) // 2) + evolution_count(k)
            assert lhs == rhs

    def test_negative_rejected(self):
        with pytest.raises(InputError):
            evolution_count(-1)


class TestStabilityThreshold:
    @pytest.mark.parametrize("n,want", [(3, 2), (4, 4), (5, 8), (6, 16)])
    def test_values(self, n, want):
        assert stability_threshold(n) == want

    def test_identities_to_40(self):
        for n in range(3, 41):
            c = 0 if n % 2 else 1
            central = math.comb(n, n // 2)
            gap = 4 * math.comb(n - 2, (n - 2) // 2) - central
            assert gap * (n - c) == central
            assert stability_threshold(n) == central - gap == 2 * evolution_count(n - 3)

    def test_small_n_rejected(self):
        with pytest.raises(InputError):
            stability_threshold(2)


class TestAntichainCheck:
    def test_middle_layer(self):
        layer = Family.from_bits(4, (0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100))
        assert antichain_check(layer)

    def test_chain_fails(self):
        assert not antichain_check(family(2, [], [1]))

    def test_singleton(self):
        assert antichain_check(family(1, []))


GLUED_N3 = {
    (0, 1, 3, 5): {(1, 0, 1), (3, 0, 1), (5, 0, 1), (3, 1, 2), (3, 5, 2), (5, 1, 3)},
    (2, 4, 6, 7): {(4, 2, 3), (6, 2, 3), (7, 2, 1), (6, 4, 2), (7, 4, 1), (7, 6, 1)},
}


class TestGluedDecomposition:
    def test_width_three_matches_figure(self):
        # Sign sets of a form with q_23 > 0 and the other off-diagonals < 0.
        f = QuadraticForm.from_rows([[0, -1, -1], [-1, 0, 1], [-1, 1, 0]])
        s = sign_sets(f)
        assert s.to_json() == [[], [3], [2]]
        d = glued_decomposition(s, check=True)
        got = {c.vertices: set(c.edges) for c in d.chains}
        assert got == GLUED_N3
        assert verify(d, s, expected_chain_count=2).ok

    def test_chain_count_at_width_five(self):
        rng = Random(40)
        f = random_form_with_surviving_positive(rng, 5)
        d = glued_decomposition(sign_sets(f))
        assert len(d.chains) == 2 * evolution_count(2) == 8 < central_binomial(5)

    def test_random_qualifying_signsets(self):
        rng = Random(41)
        done = 0
        while done < 50:
            n = rng.randint(3, 9)
            s = random_symmetric_signsets(rng, n, edge_prob=0.4)
            moved = Transform.base_change(s.get(1)).apply_to_signsets(s)
            if not any(moved.bits()):
                continue
            done += 1
            d = glued_decomposition(s, check=True)
            res = verify(d, s, expected_chain_count=2 * evolution_count(n - 3))
            assert res.ok, res.detail

    def test_all_empty_rejected(self):
        with pytest.raises(InputError, match="use build"):
            glued_decomposition(SignSets.all_empty(4))

    def test_empty_after_base_change_rejected(self):
        # Positive entries forming exactly one cut: the S_1 move erases them.
        f = base_change_form(middle_layer_form(3), SubsetMask.from_elements(3, (2,)))
        s = sign_sets(f)
        assert any(s.bits())
        with pytest.raises(InputError, match="use build"):
            glued_decomposition(s)

    def test_asymmetric_rejected(self):
        with pytest.raises(InputError, match="form-derived|symmetric"):
            glued_decomposition(signsets(3, [2], [], []))


class TestStabilityAnalysis:
    def test_extremal_form_above_threshold(self):
        rep = stability_analysis(middle_layer_form(6))
        assert rep.verdict == "above_threshold_antichain"
        assert rep.maxima_count == 20
        assert rep.threshold == 16
        assert rep.automorphism == SubsetMask.empty(6)

    def test_zero_form_below(self):
        rep = stability_analysis(QuadraticForm.zero(4))
        assert rep.verdict == "below_threshold"
        assert rep.maxima_count == 0
        assert rep.certificate is not None

    def test_disguised_extremal_form(self):
        # Base-changing the extremal form hides the antichain behind a
        # translation; the analysis must recover exactly that translation.
        rng = Random(42)
        for n in (4, 5, 6):
            b = SubsetMask(n, rng.randrange(1, 1 << n))
            f = base_change_form(middle_layer_form(n), b)
            rep = stability_analysis(f)
            assert rep.verdict == "above_threshold_antichain"
            assert rep.maxima_count == central_binomial(n)
            moved = base_change_family(enumerate_maxima(f), rep.automorphism)
            assert antichain_check(moved)

    def test_surviving_positive_forces_below(self):
        rng = Random(43)
        for _ in range(30):
            n = rng.randint(4, 7)
            f = random_form_with_surviving_positive(rng, n)
            rep = stability_analysis(f)
            assert rep.verdict == "below_threshold"
            assert rep.maxima_count <= rep.threshold
            assert len(rep.certificate.chains) == 2 * evolution_count(n - 3)

    def test_small_n_rejected(self):
        with pytest.raises(InputError):
            stability_analysis(QuadraticForm.zero(2))
