from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operadkit.rewrite import (
    RewriteError,
    RewriteRule,
    RuleSet,
    as_rules,
    check_local_confluence,
    count_normal_forms,
    critical_pairs,
    dias_rules,
    dup_measure,
    dup_rules,
    is_dup_normal_form_shape,
    is_normal_form,
    normal_form,
    normal_forms,
    parse_rules,
    peak_trees,
    rewrite_once,
    rule_set,
)
from operadkit.series import dim_formula
from operadkit.trees import (
    LEAF,
    enumerate_trees,
    generate_hook_trees,
    generator_set,
    graft,
    hook_tree,
    is_hook_tree,
    parse_tree,
    word_of_tree,
)
from operadkit.words import DomainError

BUILDERS = {"dias": dias_rules, "as": as_rules, "dup": dup_rules}


def random_tree(rng, gens, degree):
    t = LEAF
    for _ in range(degree):
        t = graft(t, rng.randint(1, t.arity), gens.corolla(rng.choice(gens.names())))
    return t


def test_dias_redex_example():
    G = generator_set("dias", 1)
    rs = dias_rules(1)
    t = parse_tree("(l1 _ (r1 _ _))", G)
    assert rewrite_once(t, rs) == {parse_tree("(l1 (l1 _ _) _)", G)}


def test_lhs_rewrites_to_rhs():
    for rs in (dias_rules(2), as_rules(2), dup_rules(2)):
        for r in rs.rules:
            assert r.rhs in rewrite_once(r.lhs, rs)


def test_hooks_are_irreducible():
    for n in range(1, 6):
        for x in generate_hook_trees(2, n):
            assert rewrite_once(x, dias_rules(2)) == set()


@pytest.mark.parametrize("g", [1, 2, 3])
def test_degree_two_normal_form_is_hook(g):
    rs = dias_rules(g)
    for t in enumerate_trees(generator_set("dias", g), 3):
        assert normal_form(t, rs) == hook_tree(word_of_tree(t, g))


@pytest.mark.parametrize("fam,g,n,want", [("dias", 2, 4, 32), ("dup", 2, 3, 20), ("as", 3, 5, 3)])
def test_normal_form_counts(fam, g, n, want):
    assert count_normal_forms(BUILDERS[fam](g), n) == want


@pytest.mark.parametrize("fam", ["dias", "as", "dup"])
@pytest.mark.parametrize("g", [1, 2])
def test_normal_forms_match_brute_force_filter(fam, g):
    rs = BUILDERS[fam](g)
    for n in range(1, 5):
        brute = sorted((t for t in enumerate_trees(rs.gens, n) if is_normal_form(t, rs)), key=lambda t: t.sort_key())
        assert normal_forms(rs, n) == brute
        assert len(brute) == dim_formula(fam, g, n)


@pytest.mark.parametrize("fam", ["dias", "as", "dup"])
@pytest.mark.parametrize("g", [1, 2, 3])
def test_local_confluence(fam, g):
    rep = check_local_confluence(BUILDERS[fam](g))
    assert rep.confluent and not rep.failures


@pytest.mark.parametrize("g", [1, 2, 3])
def test_dup_has_four_gamma_cubed_peaks(g):
    assert len(peak_trees(dup_rules(g), "chain")) == 4 * g**3
    assert peak_trees(dup_rules(g), "fork") == []


def test_disjoint_alphabets_have_no_critical_pairs():
    G = generator_set("dup", 1)
    rs = parse_rules("(u1 (o1 _ _) _) => (o1 _ (u1 _ _))", G)
    # the only rule needs u at the root and o below; o never roots a redex
    assert [cp for cp in critical_pairs(rs) if cp.kind == "chain"] == []


def test_dup_measure_increases_on_every_rule():
    for g in (1, 2, 3):
        for r in dup_rules(g).rules:
            assert dup_measure(r.rhs) > dup_measure(r.lhs)


@settings(max_examples=60)
@given(st.randoms(use_true_random=False), st.integers(1, 5))
def test_dup_measure_increases_in_context(rnd, degree):
    rs = dup_rules(2)
    t = random_tree(rnd, rs.gens, degree)
    for u in rewrite_once(t, rs):
        assert dup_measure(u) > dup_measure(t)


@settings(max_examples=60)
@given(st.randoms(use_true_random=False))
def test_dup_normal_form_shape(rnd):
    rs = dup_rules(2)
    t = random_tree(rnd, rs.gens, 4)
    nf = normal_form(t, rs)
    assert is_dup_normal_form_shape(nf)
    assert is_normal_form(nf, rs)


@settings(max_examples=60)
@given(st.sampled_from(["dias", "as", "dup"]), st.randoms(use_true_random=False), st.integers(0, 6))
def test_normal_form_idempotent_and_path_independent(fam, rnd, degree):
    rs = BUILDERS[fam](2)
    t = random_tree(rnd, rs.gens, degree)
    nf = normal_form(t, rs)
    assert normal_form(nf, rs) == nf
    # follow a random rewriting path instead of the leftmost strategy
    u = t
    while True:
        nxt = sorted(rewrite_once(u, rs), key=lambda x: x.sort_key())
        if not nxt:
            break
        u = rnd.choice(nxt)
    assert u == nf


@settings(max_examples=60)
@given(st.randoms(use_true_random=False), st.integers(0, 6))
def test_dias_normal_forms_are_hooks_preserving_word(rnd, degree):
    rs = dias_rules(3)
    t = random_tree(rnd, rs.gens, degree)
    nf = normal_form(t, rs)
    assert is_hook_tree(nf)
    assert word_of_tree(nf, 3) == word_of_tree(t, 3)


def test_budget_exhaustion():
    rs = dup_rules(1)
    t = parse_tree("(u1 (u1 (u1 _ _) _) _)", rs.gens)
    with pytest.raises(RewriteError):
        normal_form(t, rs, step_budget=0)


def test_cycle_detection():
    G = generator_set("as", 1)
    rs = RuleSet(G, [RewriteRule(parse_tree("(st1 (st1 _ _) _)", G), parse_tree("(st1 _ (st1 _ _))", G)),
                     RewriteRule(parse_tree("(st1 _ (st1 _ _))", G), parse_tree("(st1 (st1 _ _) _)", G))])
    with pytest.raises(RewriteError):
        normal_form(parse_tree("(st1 (st1 _ _) _)", G), rs)


def test_rule_text_round_trip():
    rs = dias_rules(2)
    again = parse_rules(rs.to_text(), rs.gens)
    assert [str(r) for r in again.rules] == [str(r) for r in rs.rules]


def test_rule_errors():
    G = generator_set("as", 1)
    with pytest.raises(DomainError):
        parse_rules("(st1 _ _) => (st1 _ _)", G)
    with pytest.raises(DomainError):
        parse_rules("(st1 (st1 _ _) _) (st1 _ (st1 _ _))", G)
    with pytest.raises(DomainError):
        rule_set("tetra:2")
    with pytest.raises(DomainError):
        rewrite_once(parse_tree("(u1 _ _)", generator_set("dup", 1)), as_rules(1))


def test_rule_set_lookup():
    assert rule_set("dup:2").name == "dup:2"
    assert len(rule_set("as:2")) == 2 * 2 + 2
    assert len(rule_set("dias:1")) == 5
