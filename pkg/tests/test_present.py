from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operadkit import present as pr
from operadkit.lincomb import LinComb
from operadkit.series import dim_formula
from operadkit.trees import generator_set
from operadkit.words import DomainError, enumerate_words, tm_compose, word


def rel(gens, *terms):
    return LinComb((pr.comp(gens, x, i, y), c) for c, x, i, y in terms)


def test_relation_counts():
    for g in (1, 2, 3):
        assert pr.dias_presentation(g).dim == 5 * g * g
        assert pr.dendr_concise_presentation(g).dim == 3 * g * g
        assert pr.das_simple_presentation(g).dim == g


def test_dias_presentations_agree():
    for g in (1, 2, 3):
        assert pr.spans_equal(pr.dias_presentation(g).relations, pr.dias_class_presentation(g).relations)


def test_dual_of_dias_1_is_the_three_dendriform_relations():
    C = generator_set("dendrC", 1)
    by_hand = [
        rel(C, (1, "lt1", 1, "lt1"), (-1, "lt1", 2, "lt1"), (-1, "lt1", 2, "gt1")),
        rel(C, (1, "lt1", 1, "gt1"), (-1, "gt1", 2, "lt1")),
        rel(C, (1, "gt1", 2, "gt1"), (-1, "gt1", 1, "lt1"), (-1, "gt1", 1, "gt1")),
    ]
    D = pr.koszul_dual(pr.dias_presentation(1))
    phi = pr.rename_map(D.gens, C, {"l": "lt", "r": "gt"})
    assert pr.spans_equal(pr.transport(D, C, phi), by_hand)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_kbasis_dual_is_concise_dendr(g):
    D = pr.koszul_dual(pr.dias_kbasis_presentation(g))
    T = pr.dendr_concise_presentation(g)
    phi = pr.rename_map(D.gens, T.gens, {"kl": "lt", "kr": "gt"})
    assert pr.spans_equal(pr.transport(D, T.gens, phi), T.relations)


@pytest.mark.parametrize("g", [1, 2, 3])
def test_as_dual_is_das(g):
    D = pr.koszul_dual(pr.as_presentation(g))
    T = pr.das_presentation(g)
    phi = pr.rename_map(D.gens, T.gens, {"st": "lz"})
    assert pr.spans_equal(pr.transport(D, T.gens, phi), T.relations)
    # As_g has g generators, so the dual has 2g^2 minus the As dimension
    assert D.dim == 2 * g * g - pr.as_presentation(g).dim
    assert T.dim == g


def test_spans_equal_basic():
    P = pr.dendr_presentation(2)
    rows = list(reversed([r * 3 for r in P.relations]))
    assert pr.spans_equal(P.relations, rows)
    D = pr.dias_presentation(2)
    phi = pr.rename_map(D.gens, P.gens, {"l": "pl", "r": "pr"})
    assert not pr.spans_equal(pr.transport(D, P.gens, phi), P.relations)


def test_dendr_standard_equals_concise_after_triangular_change():
    g = 2
    A, B = pr.dendr_presentation(g), pr.dendr_concise_presentation(g)
    psi = {}
    for b in range(1, g + 1):
        psi[f"lt{b}"] = LinComb((A.gens.corolla(f"pl{a}"), 1) for a in range(1, b + 1))
        psi[f"gt{b}"] = LinComb((A.gens.corolla(f"pr{a}"), 1) for a in range(1, b + 1))
    assert pr.spans_equal(pr.transport(B, A.gens, psi), A.relations)


@pytest.mark.parametrize("name", list(pr.PRESENTATIONS))
def test_dual_is_involutive(name):
    for g in (1, 2):
        P = pr.PRESENTATIONS[name](g)
        D = pr.koszul_dual(P)
        assert pr.spans_equal(pr.koszul_dual(D).relations, P.relations)
        assert P.dim + D.dim == 2 * len(P.gens) ** 2


def test_dependent_relations_rejected():
    G = generator_set("as", 1)
    r = rel(G, (1, "st1", 1, "st1"), (-1, "st1", 2, "st1"))
    with pytest.raises(DomainError):
        pr.Presentation(G, [r, r * 2])


@pytest.mark.parametrize("name,n,want", [("dendr:2", 3, 20), ("tdendr:1", 3, 11), ("das:3", 4, 93), ("dendr:2", 4, 112), ("das:2", 4, 22)])
def test_quotient_dimension_examples(name, n, want):
    assert pr.quotient_dimension(pr.presentation(name), n) == want


@pytest.mark.parametrize("name", ["dias", "dendr", "as", "das", "dup", "trias", "tdendr", "diasK", "dendrC", "dasS"])
@pytest.mark.parametrize("g", [1, 2])
def test_quotient_dimension_matches_formula(name, g):
    P = pr.PRESENTATIONS[name](g)
    for n in (1, 2, 3, 4):
        assert pr.quotient_dimension(P, n) == dim_formula(name, g, n)


@pytest.mark.parametrize("name", ["as:2", "das:2", "dasS:2", "dias:1", "dendr:1", "dup:1", "trias:1", "tdendr:1"])
def test_quotient_dimension_arity_five(name):
    g = int(name.split(":")[1])
    assert pr.quotient_dimension(pr.presentation(name), 5) == dim_formula(name, g, 5)


def test_reduce_mod_relations():
    C = pr.dendr_concise_presentation(2)
    G = C.gens
    for r in C.relations:
        assert not pr.reduce_mod_relations(r, C)
    x = rel(G, (1, "lt1", 1, "gt1"), (-1, "gt1", 2, "lt1"))
    assert not pr.reduce_mod_relations(x, C)
    assert pr.reduce_mod_relations(rel(G, (1, "lt1", 1, "lt1")), C)


def test_associative_elements():
    for g in (1, 2, 3):
        D = pr.dendr_presentation(g)
        for b in range(1, g + 1):
            assert pr.is_associative(pr.odot(g, b), D)
        U = pr.dup_presentation(g)
        for a in range(1, g + 1):
            assert pr.is_associative(pr.generator_lincomb(U, {f"u{a}": 1}), U)
            assert pr.is_associative(pr.generator_lincomb(U, {f"o{a}": 1}), U)
    C = pr.dendr_concise_presentation(1)
    assert not pr.is_associative(pr.generator_lincomb(C, {"lt1": 1}), C)


def test_morphisms():
    for g in (1, 2, 3):
        assert pr.morphism_check(pr.eta_map(g), pr.dias_presentation(g), pr.as_presentation(g))
        assert pr.morphism_check(pr.zeta_map(g), pr.das_simple_presentation(g), pr.dendr_concise_presentation(g))
    g = 2
    A = generator_set("as", g)
    doubled = {}
    for a in range(1, g + 1):
        doubled[f"l{a}"] = LinComb.of(A.corolla(f"st{a}"))
        doubled[f"r{a}"] = LinComb.of(A.corolla(f"st{a}"), 2)
    assert not pr.morphism_check(doubled, pr.dias_presentation(g), pr.as_presentation(g))
    with pytest.raises(DomainError):
        pr.morphism_check({}, pr.dias_presentation(g), pr.as_presentation(g))


def test_das_compose_examples():
    for a in (1, 2):
        c = pr.schroder_corolla(a, 2)
        for i in (1, 2):
            assert pr.das_compose(c, i, c) == pr.schroder_corolla(a, 3)
    s = pr.das_compose(pr.schroder_corolla(1, 2), 1, pr.schroder_corolla(2, 2))
    assert s.nodes == 2 and s.is_alternating
    assert len(pr.enumerate_alt_schroder(2, 4)) == 22


def _alt_trees(gamma, max_leaves):
    return [t for n in range(1, max_leaves + 1) for t in pr.enumerate_alt_schroder(gamma, n)]


ALT = _alt_trees(2, 4)


@settings(max_examples=150)
@given(st.sampled_from(ALT), st.sampled_from(ALT), st.sampled_from(ALT), st.data())
def test_das_compose_operad_axioms(x, y, z, data):
    i = data.draw(st.integers(1, x.arity))
    j = data.draw(st.integers(1, y.arity))
    xy = pr.das_compose(x, i, y)
    assert xy.is_alternating
    assert pr.das_compose(xy, i + j - 1, z) == pr.das_compose(x, i, pr.das_compose(y, j, z))
    if x.arity >= 2:
        i, k = sorted(data.draw(st.lists(st.integers(1, x.arity), min_size=2, max_size=2, unique=True)))
        lhs = pr.das_compose(pr.das_compose(x, k, z), i, y)
        rhs = pr.das_compose(pr.das_compose(x, i, y), k + y.arity - 1, z)
        assert lhs == rhs


def test_eta_image():
    for a in (1, 2):
        assert pr.eta_image(word(f"0{a}", 2)) == pr.schroder_corolla(a, 2)
    assert pr.eta_image(word("20413", 5)) == pr.schroder_corolla(4, 5)


def test_eta_commutes_with_composition():
    ws = [w for n in (1, 2, 3) for w in enumerate_words("dias", 2, n)]
    for x, y in itertools.product(ws, ws):
        for i in range(1, x.arity + 1):
            assert pr.eta_image(tm_compose(x, i, y)) == pr.as_compose(pr.eta_image(x), i, pr.eta_image(y))


def test_schroder_text_round_trip():
    for t in _alt_trees(3, 4):
        assert pr.parse_schroder(str(t)) == t
        assert pr.tree_to_schroder(pr.schroder_to_tree(t)) == t
    with pytest.raises(DomainError):
        pr.parse_schroder("(1 _)")


def test_presentation_lookup():
    assert pr.presentation("dup:2").dim == pr.dup_presentation(2).dim
    with pytest.raises(DomainError):
        pr.presentation("nope:1")
