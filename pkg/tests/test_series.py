from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from operadkit import series as se
from operadkit.words import DomainError


def test_small_numbers():
    assert se.catalan(3) == 5
    assert se.narayana(3, 1) == 3
    assert se.schroeder(4) == 11
    assert [se.catalan(n) for n in range(1, 8)] == [1, 2, 5, 14, 42, 132, 429]
    with pytest.raises(DomainError):
        se.narayana(3, 3)
    with pytest.raises(DomainError):
        se.catalan(0)


@given(st.integers(1, 12))
def test_narayana_rows_sum_to_catalan(n):
    assert sum(se.narayana(n, k) for k in range(n)) == se.catalan(n)


@pytest.mark.parametrize("op,g,n,want", [("dendr", 3, 4, 378), ("trias", 4, 3, 61), ("tdendr", 2, 5, 1597)])
def test_dim_formula_examples(op, g, n, want):
    assert se.dim_formula(op, g, n) == want


def test_dim_formula_errors_and_aliases():
    with pytest.raises(DomainError):
        se.dim_formula("quad", 1, 2)
    assert se.dim_formula("dendrC", 2, 4) == se.dim_formula("dendr", 2, 4)
    assert se.dim_formula("dup", 3, 5) == se.dim_formula("dendr", 3, 5)
    assert [se.dim_formula("as", 4, n) for n in range(1, 5)] == [1, 4, 4, 4]


def test_quadratic_series_examples():
    assert se.series_solution("dendr", 2, 5).as_list() == [1, 4, 20, 112, 672]
    assert se.series_solution("das", 4, 5).as_list() == [1, 4, 28, 244, 2380]
    assert se.series_solution("tdendr", 3, 4).as_list() == [1, 7, 61, 595]
    with pytest.raises(DomainError):
        se.functional_equation("dias", 2)


@pytest.mark.parametrize("fam", ["dendr", "dup", "das", "tdendr"])
@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_functional_equations_match_formula(fam, g):
    assert se.series_solution(fam, g, 10).as_list() == se.hilbert_series(fam, g, 10).as_list()


@pytest.mark.parametrize("a,b", se.KOSZUL_PAIRS)
@pytest.mark.parametrize("g", [1, 2, 3])
def test_koszul_inverse_identity(a, b, g):
    H, K = se.hilbert_series(a, g, 8), se.hilbert_series(b, g, 8)
    assert se.koszul_inverse_check(H, K, 8)
    assert se.koszul_inverse_check(K, H, 8)


def test_inverse_identity_rejects_mismatched_pair():
    assert not se.koszul_inverse_check(se.hilbert_series("dias", 2, 6), se.hilbert_series("dendr", 3, 6), 6)
    with pytest.raises(DomainError):
        se.koszul_inverse_check(se.hilbert_series("dias", 2, 3), se.hilbert_series("dendr", 2, 6), 6)


def test_compose_against_direct_expansion():
    # (1 + t)^2 with t -> t + t^2 is 1 + 2t + 3t^2 + 2t^3 + t^4
    f = [1, 2, 1]
    g = [0, 1, 1]
    assert se.compose(f, g, 4) == [Fraction(x) for x in (1, 2, 3, 2, 1)]


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_rational_forms(g):
    N = 10
    assert se.dias_series_expansion(g, N)[1:] == [n * g ** (n - 1) for n in range(1, N + 1)]
    assert se.as_series_expansion(g, N)[1:] == [1] + [g] * (N - 1)


@pytest.mark.parametrize("kind,g,n,want", [("evbt", 2, 4, 112), ("alt_schroder", 3, 3, 15), ("ev_schroder", 1, 4, 45)])
def test_count_structures_examples(kind, g, n, want):
    assert se.count_structures(kind, g, n) == want


@pytest.mark.parametrize("kind", list(se.COUNTERS))
@pytest.mark.parametrize("g", [1, 2, 3])
def test_counts_equal_formula(kind, g):
    fam = se.COUNTED_FAMILY[kind]
    for n in range(1, 8):
        assert se.count_structures(kind, g, n) == se.dim_formula(fam, g, n)


def test_tdendr_one_is_schroder():
    # an ev-Schroder tree with gamma = 1 is a plain Schroder tree with n + 1 leaves
    assert [se.dim_formula("tdendr", 1, n) for n in range(1, 6)] == [se.schroeder(n + 1) for n in range(1, 6)]


def test_count_guard():
    with pytest.raises(DomainError):
        se.count_structures("evbt", 2, 9)
    with pytest.raises(DomainError):
        se.count_structures("hedgehog", 2, 3)


def test_das_formula_by_independent_sum():
    # gamma^{k+1} (gamma-1)^{n-k-2} nar(n-1, k), evaluated here with math.comb
    def nar(n, k):
        return comb(n - 1, k) * comb(n, k) // (k + 1)

    for g in (2, 3):
        for n in range(2, 8):
            want = sum(g ** (k + 1) * (g - 1) ** (n - k - 2) * nar(n - 1, k) for k in range(n - 1))
            assert se.dim_formula("das", g, n) == want
