import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abeliandecide.exactlinalg import frequency_matrix
from abeliandecide.words import (
    Morphism,
    apply,
    factor_set,
    factors_of,
    factors_of_length,
    fixed_point_prefix,
    max_image_length,
    parikh,
    validate,
    vadd,
    word,
)

from .conftest import CONTROL, DEKKING

ternary = st.lists(st.integers(1, 3), max_size=30).map(tuple)


def seed_one_closure(mu, L):
    """Factor set via the literal worklist: seed with 1, close under length-<=L factors of mu(w)."""
    found = {(1,)}
    todo = [(1,)]
    while todo:
        img = apply(mu, todo.pop())
        for u in factors_of(img, L):
            if u not in found:
                found.add(u)
                todo.append(u)
    return found


@pytest.mark.parametrize(
    "w, m, expected",
    [("1123", 3, (2, 1, 1)), ("", 3, (0, 0, 0)), ("332211", 3, (2, 2, 2))],
)
def test_parikh_examples(w, m, expected):
    assert parikh(word(w), m) == expected


@pytest.mark.parametrize("w, expected", [("12", "1123133"), ("", ""), ("31", "2231123")])
def test_apply_examples(w, expected):
    assert apply(DEKKING, word(w)) == word(expected)


def test_validate():
    assert validate(DEKKING).ok
    r = validate(Morphism.from_strings("12", "1"))
    assert r.prolongable and not r.images_expand
    r = validate(Morphism.from_strings("21", "12"))
    assert not r.prolongable and r.images_expand
    r = validate(Morphism.from_strings("13", "21"))
    assert not r.letters_in_range
    assert len(validate(Morphism.from_strings("2", "3")).reasons()) == 3


@pytest.mark.parametrize("n, expected", [(4, "1123"), (1, "1"), (8, "11231123"), (0, "")])
def test_fixed_point_prefix(n, expected):
    assert fixed_point_prefix(DEKKING, n) == word(expected)


def test_fixed_point_prefix_rejects_invalid():
    with pytest.raises(ValueError):
        fixed_point_prefix(Morphism.from_strings("21", "12"), 5)


def test_factor_set_examples():
    assert factor_set(DEKKING, 1) == {(1,), (2,), (3,)}
    two = factor_set(DEKKING, 2)
    assert (3, 3) in two
    assert (2, 1) not in two
    prefix_factors = factors_of(fixed_point_prefix(DEKKING, 10**4), 2)
    assert (2, 1) not in prefix_factors
    assert two == prefix_factors


@pytest.mark.parametrize("mu", [DEKKING, CONTROL, Morphism.from_strings("11")])
@pytest.mark.parametrize("L", [1, 3, 7, 12])
def test_factor_set_matches_seed_one_worklist(mu, L):
    assert factor_set(mu, L) == seed_one_closure(mu, L)


@pytest.mark.parametrize("mu", [DEKKING, CONTROL])
@pytest.mark.parametrize("L", [5, 20, 46])
def test_factor_set_sound_and_complete_on_prefixes(mu, L):
    fs = factor_set(mu, L)
    assert factors_of(fixed_point_prefix(mu, 10**4), L) <= fs
    big = fixed_point_prefix(mu, 10**5)
    assert fs <= factors_of_length_in(big, L)


def factors_of_length_in(w, L):
    out = set()
    for n in range(1, L + 1):
        out |= {w[i : i + n] for i in range(len(w) - n + 1)}
    return out


def test_factors_of_length_is_exact_length():
    fl = factors_of_length(DEKKING, 25)
    assert {len(u) for u in fl} == {25}
    assert fl == {u for u in factor_set(DEKKING, 25) if len(u) == 25}


@pytest.mark.parametrize(
    "mu, N",
    [(DEKKING, 4), (Morphism.from_strings("1121", "221"), 4), (Morphism.from_strings("12", "21"), 2)],
)
def test_max_image_length(mu, N):
    assert max_image_length(mu) == N


@settings(max_examples=1000, derandomize=True)
@given(ternary, ternary)
def test_parikh_additive(u, v):
    assert parikh(u + v, 3) == vadd(parikh(u, 3), parikh(v, 3))


@settings(max_examples=1000, derandomize=True)
@given(ternary)
def test_parikh_of_image_is_vector_times_matrix(w):
    M = frequency_matrix(DEKKING)
    p = parikh(w, 3)
    vm = tuple(sum(p[i] * M[i][j] for i in range(3)) for j in range(3))
    assert parikh(apply(DEKKING, w), 3) == vm


@settings(max_examples=300, derandomize=True)
@given(ternary)
def test_images_at_least_double(w):
    assert 2 * len(w) <= len(apply(DEKKING, w))


@settings(max_examples=200, derandomize=True)
@given(st.integers(0, 3000), st.integers(0, 3000))
def test_prefix_coherence(n, n2):
    n, n2 = sorted((n, n2))
    a, b = fixed_point_prefix(CONTROL, n), fixed_point_prefix(CONTROL, n2)
    assert b[:n] == a
