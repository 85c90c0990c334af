"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings. The randomized suites are fully seeded: the same forms
and sign sets are regenerated on every run.
"""

import functools
import itertools
import time
from random import Random

from cubeq import (
    QuadraticForm,
    SignSets,
    Transform,
    build,
    central_binomial,
    certify_bound,
    check_hypothesis,
    count_maxima_bruteforce,
    enumerate_maxima,
    evolution_count,
    glued_decomposition,
    is_flip_acyclic_bruteforce,
    is_flip_acyclic_triangles,
    max_family_bruteforce,
    maxima_count,
    middle_layer_form,
    parallelepiped_form,
    sign_sets,
    stability_threshold,
    verify,
)
from cubeq.generators import random_form, random_parallelepiped, random_signsets
from cubeq.quasichain import Quasichain
import math


def criterion(num, text):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper():
            start = time.perf_counter()
            try:
                fn()
            except BaseException:
                print(f"\ncriterion {num:2d}: FAIL  {text}", flush=True)
                raise
            dt = time.perf_counter() - start
            print(f"\ncriterion {num:2d}: PASS  {text}  [{dt:.1f}s]", flush=True)

        return wrapper

    return deco


def suite_form(n: int, idx: int) -> QuadraticForm:
    """The shared random-form suite; criterion 3 reuses criterion 1's forms."""
    return random_form(Random(f"suite-forms-{n}-{idx}"), n)


FORMS_PER_N = 10_000
BUILDS_PER_N = 1_000
STABILITY_PER_N = 1_000
BOXES_PER_N = 1_000


@criterion(1, "count bound holds on 10k random forms per n in 2..12")
def test_criterion_01_bound_at_desk_scale():
    for n in range(2, 13):
        bound = central_binomial(n)
        worst = 0
        for idx in range(FORMS_PER_N):
            count = maxima_count(suite_form(n, idx))
            worst = max(worst, count)
            assert count <= bound, (n, idx, count)
        assert worst <= bound


@criterion(2, "middle-layer form attains the bound exactly for n in 2..16")
def test_criterion_02_equality_witness():
    for n in range(2, 17):
        got = enumerate_maxima(middle_layer_form(n))
        assert len(got) == central_binomial(n)
        layer = sorted(
            sum(1 << (i) for i in combo)
            for combo in itertools.combinations(range(n), n // 2)
        )
        assert list(got.bits()) == layer


@criterion(3, "certificate pipeline succeeds on the same suite for n in 2..10")
def test_criterion_03_certificates():
    for n in range(2, 11):
        want_chains = central_binomial(n)
        for idx in range(FORMS_PER_N):
            cert = certify_bound(suite_form(n, idx))
            assert len(cert.decomposition.chains) == want_chains
            seen = {c for _, c in cert.assignment}
            assert len(seen) == len(cert.assignment)


@criterion(4, "build+verify for 1k arbitrary sign sets per n in 1..10")
def test_criterion_04_decomposition_validity():
    for n in range(1, 11):
        for idx in range(BUILDS_PER_N):
            s = random_signsets(Random(f"suite-signsets-{n}-{idx}"), n)
            d = build(s)
            res = verify(d, s)
            assert res.ok, (n, idx, res.detail)


def _all_colored_tournaments(m, colors):
    verts = list(range(m))
    pairs = list(itertools.combinations(verts, 2))
    for orient in itertools.product((0, 1), repeat=len(pairs)):
        for coloring in itertools.product(range(1, colors + 1), repeat=len(pairs)):
            edges = [
                ((v, u, c) if o else (u, v, c))
                for (u, v), o, c in zip(pairs, orient, coloring)
            ]
            yield Quasichain.from_edges(3, verts, edges)


@criterion(5, "triangle test == exhaustive flip test (exhaustive <=4 vertices, 1k random 5-7)")
def test_criterion_05_flip_acyclicity_equivalence():
    for m in (1, 2, 3, 4):
        for qc in _all_colored_tournaments(m, 3):
            assert is_flip_acyclic_triangles(qc) == is_flip_acyclic_bruteforce(qc)
    rng = Random("suite-tournaments")
    for _ in range(1_000):
        m = rng.randint(5, 7)
        verts = sorted(rng.sample(range(1 << 5), m))
        edges = []
        for u, v in itertools.combinations(verts, 2):
            src, dst = (u, v) if rng.random() < 0.5 else (v, u)
            edges.append((src, dst, rng.randint(1, 4)))
        qc = Quasichain.from_edges(5, verts, edges)
        assert is_flip_acyclic_triangles(qc) == is_flip_acyclic_bruteforce(qc)


@criterion(6, "family-size oracle: exhaustive n<=3, 10k random n=4, equality at empty sign sets")
def test_criterion_06_family_oracle():
    for n in (1, 2, 3):
        bound = central_binomial(n)
        for bits in itertools.product(range(1 << n), repeat=n):
            size, witness = max_family_bruteforce(SignSets.from_bits(n, bits))
            assert size <= bound
            assert check_hypothesis(witness, SignSets.from_bits(n, bits))
    rng = Random("suite-families")
    for _ in range(10_000):
        s = SignSets.from_bits(4, (rng.randrange(16) for _ in range(4)))
        size, _ = max_family_bruteforce(s)
        assert size <= 6
    assert max_family_bruteforce(SignSets.all_empty(3))[0] == 3
    assert max_family_bruteforce(SignSets.all_empty(4))[0] == 6


@criterion(7, "glued certificates bound 1k qualifying forms per n in 4..10")
def test_criterion_07_stability_bound():
    for n in range(4, 11):
        thr = stability_threshold(n)
        want_chains = 2 * evolution_count(n - 3)
        done = 0
        idx = 0
        while done < STABILITY_PER_N:
            f = suite_form(n, 100_000 + idx)
            idx += 1
            s = sign_sets(f)
            moved = Transform.base_change(s.get(1)).apply_to_signsets(s)
            if not any(moved.bits()):
                continue
            done += 1
            count = maxima_count(f)
            assert count <= thr, (n, idx, count, thr)
            d = glued_decomposition(s)
            assert len(d.chains) == want_chains
            res = verify(d, s, expected_chain_count=want_chains)
            assert res.ok, (n, idx, res.detail)
            maxima = set(enumerate_maxima(f).bits())
            for chain in d.chains:
                assert sum(v in maxima for v in chain.vertices) <= 1


@criterion(8, "exact integer identities for all k, n <= 40")
def test_criterion_08_identities():
    for k in range(41):
        assert math.comb(k + 3, (k + 3) // 2) == 2 * math.comb(
            k + 1, (k + 1) // 2
        ) + evolution_count(k)
    for n in range(3, 41):
        c = 0 if n % 2 else 1
        central = math.comb(n, n // 2)
        gap = 4 * math.comb(n - 2, (n - 2) // 2) - central
        assert gap * (n - c) == central
        assert stability_threshold(n) == central - gap


@criterion(9, "sweep == value-table oracle on 10k forms (n cycling 2..12); n=22 timing")
def test_criterion_09_enumeration_oracle_and_speed():
    for idx in range(10_000):
        n = 2 + idx % 11
        f = random_form(Random(f"suite-oracle-{idx}"), n)
        fast = enumerate_maxima(f)
        slow = count_maxima_bruteforce(f)
        assert fast.bits() == slow.bits(), (n, idx)
    start = time.perf_counter()
    count = maxima_count(middle_layer_form(22))
    elapsed = time.perf_counter() - start
    assert count == central_binomial(22)
    print(f"\n    n=22 full enumeration: {elapsed:.1f}s (guidance target ~60s)")
    assert elapsed < 600  # watchdog only; the 60s figure is guidance


@criterion(10, "parallelepiped counts bounded for 1k boxes per n in 2..10")
def test_criterion_10_parallelepipeds():
    for n in range(2, 11):
        bound = central_binomial(n)
        for idx in range(BOXES_PER_N):
            p, vs = random_parallelepiped(Random(f"suite-boxes-{n}-{idx}"), n)
            count = maxima_count(parallelepiped_form(p, vs))
            assert count <= bound, (n, idx, count)
    p = [-1, -1, -1, -1]
    vs = [[2 if j == i else 0 for j in range(4)] for i in range(4)]
    assert maxima_count(parallelepiped_form(p, vs)) <= 6
