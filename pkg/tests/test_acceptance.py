"""Exit criteria. A PASS/FAIL line per criterion is printed in the terminal summary."""

import math
import random
import time

import pytest

from abeliandecide.decider import Status, decide, scan, scan_reference
from abeliandecide.exactlinalg import (
    det,
    frequency_matrix,
    inverse_norm_estimate,
    inverse_norm_lt_one,
    matmul,
    solve_row_integer,
    solve_row_rational,
    sylvester_minors,
)
from abeliandecide.oracle import find_abelian_power
from abeliandecide.templates import (
    ancestor_closure,
    delta,
    find_instance,
    parents,
    power_template,
    radius_bound,
)
from abeliandecide.decider import length_bound, short_length_bound
from abeliandecide.words import Morphism, apply, factors_of_length, fixed_point_prefix, parikh, vadd

from .conftest import CONTROL, DEKKING
from .test_templates import realize

SEED = 20261019
CASES = 1000


@pytest.fixture(scope="module")
def closure():
    t0 = time.perf_counter()
    c = ancestor_closure(DEKKING, 3)
    return c, time.perf_counter() - t0


@pytest.mark.criterion("1. Dekking closure: 1294 ancestors, 1293 parents, no grandparents")
def test_c1_closure(closure):
    c, elapsed = closure
    assert len(c.templates) == 1294
    assert len(parents(power_template(3, 3), DEKKING)) == 1293
    assert [len(g) for g in c.generations] == [1, 1293]
    assert elapsed < 300


@pytest.mark.criterion("2. Dekking delta = 2, short bound 25, derived bound 46")
def test_c2_delta_and_bounds(closure):
    c, _ = closure
    d = delta(c.templates)
    assert d == 2
    assert short_length_bound(4, 3, 3, d) == 25
    assert length_bound(4, 3, 3, d) == 46


@pytest.mark.criterion("3. Dekking k=3 verdict Free; no ancestor instance in factors of length <= 46 or 25")
def test_c3_verdict(closure):
    t0 = time.perf_counter()
    v = decide(DEKKING, 3)
    assert v.status is Status.FREE
    assert v.stats.scan_bound == 46
    ts = closure[0].templates
    f46 = sorted(factors_of_length(DEKKING, 46))
    f25 = sorted(factors_of_length(DEKKING, 25))
    assert scan(f46, ts) is None
    assert scan(f25, ts) is None
    assert scan_reference(f25, ts) is None
    assert time.perf_counter() - t0 < 600


@pytest.mark.criterion("4. Matrix certificates: det -7, minors (4, 12, 8), norm 0.8589 +- 1e-3")
def test_c4_matrix_certificates():
    M = frequency_matrix(DEKKING)
    assert M == ((2, 1, 1), (1, 0, 2), (0, 2, 1))
    assert det(M) == -7
    assert inverse_norm_lt_one(M) is True
    assert sylvester_minors(M) == (4, 12, 8)
    assert inverse_norm_estimate(M) == pytest.approx(0.8589, abs=1e-3)


@pytest.mark.criterion("5. Oracle: no Abelian cube in the first 10^4 letters of the Dekking word")
def test_c5_oracle_cross_check():
    t0 = time.perf_counter()
    assert find_abelian_power(fixed_point_prefix(DEKKING, 10**4), 3) is None
    assert time.perf_counter() - t0 < 120


@pytest.mark.criterion("6. Negative control 1->1121, 2->221: k=2 Contains with verified witness")
def test_c6_negative_control():
    M = frequency_matrix(CONTROL)
    assert det(M) == 5 and sylvester_minors(M) == (9, 11) and inverse_norm_lt_one(M)
    v = decide(CONTROL, 2)
    assert v.status is Status.CONTAINS
    assert v.witness.verify(v.witness_word)
    assert v.witness_word == fixed_point_prefix(CONTROL, len(v.witness_word))
    prefix = fixed_point_prefix(CONTROL, 1000)
    assert prefix[:2] == (1, 1)
    occ = find_abelian_power(prefix, 2)
    assert occ is not None and occ.verify(prefix)


@pytest.mark.criterion("7. Precondition rejection: singular, image length, norm")
def test_c7_preconditions():
    v = decide(Morphism.from_strings("12", "21"), 2)
    assert v.status is Status.PRECONDITION_FAILED and any("singular" in r for r in v.reasons)
    v = decide(Morphism.from_strings("12", "1"), 2)
    assert v.status is Status.PRECONDITION_FAILED and any("image length" in r for r in v.reasons)
    v = decide(Morphism.from_strings("112", "122"), 2)
    assert v.status is Status.PRECONDITION_FAILED and any("norm" in r for r in v.reasons)
    assert v.stats.sylvester_minors == (4, 0)


def _random_word(rng, max_len, m=3):
    return tuple(rng.randint(1, m) for _ in range(rng.randint(0, max_len)))


@pytest.mark.criterion("8. Property suites (>= 1000 seeded cases each)")
class TestC8Properties:
    def test_parikh_additivity(self):
        rng = random.Random(SEED)
        for _ in range(CASES):
            u, v = _random_word(rng, 30), _random_word(rng, 30)
            assert parikh(u + v, 3) == vadd(parikh(u, 3), parikh(v, 3))

    def test_image_parikh_is_matrix_product(self):
        rng = random.Random(SEED + 1)
        M = frequency_matrix(DEKKING)
        for _ in range(CASES):
            w = _random_word(rng, 30)
            assert (parikh(apply(DEKKING, w), 3),) == matmul((parikh(w, 3),), M)

    def test_parent_lemma(self, closure):
        rng = random.Random(SEED + 2)
        ts = closure[0].templates
        pairs = [(t1, t2) for t1 in rng.sample(ts, 40) + [power_template(3, 3)]
                 for t2 in parents(t1, DEKKING)]
        hits = 0
        for _ in range(CASES):
            t1, t2 = rng.choice(pairs)
            w = _random_word(rng, 12)
            core = realize(t2, rng)
            if len(core) <= 12 and rng.random() < 0.8:
                w = core
            if find_instance(w, t2) is not None:
                hits += 1
                assert find_instance(apply(DEKKING, w), t1) is not None
        assert hits >= 300

    @pytest.mark.parametrize("k", [2, 3])
    def test_power_template_equals_oracle(self, k):
        rng = random.Random(SEED + k)
        T = power_template(k, 3)
        for _ in range(CASES):
            w = _random_word(rng, 40)
            assert (find_instance(w, T) is None) == (find_abelian_power(w, k) is None)

    def test_solve_row_integer_exact(self):
        rng = random.Random(SEED + 5)
        done = 0
        while done < CASES:
            n = rng.randint(1, 4)
            M = tuple(tuple(rng.randint(0, 4) for _ in range(n)) for _ in range(n))
            if det(M) == 0:
                continue
            v = tuple(rng.randint(-9, 9) for _ in range(n))
            D = solve_row_integer(v, M)
            if D is None:
                assert any(x.denominator != 1 for x in solve_row_rational(v, M))
            else:
                assert matmul((D,), M) == (v,)
            done += 1

    def test_fixpoint_and_radius(self, closure):
        ts = closure[0].templates
        s = set(ts)
        r = radius_bound(DEKKING)
        for t in ts:
            assert set(parents(t, DEKKING)) <= s
            assert all(math.sqrt(sum(x * x for x in d)) <= r for d in t.diffs)
