from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operadkit.rewrite import dias_rules, rewrite_once
from operadkit.trees import (
    LEAF,
    Tree,
    enumerate_trees,
    extended_hook_tree,
    generate_extended_hook_trees,
    generate_hook_trees,
    generator_set,
    graft,
    hook_tree,
    is_extended_hook_tree,
    is_hook_tree,
    parse_tree,
    split_name,
    to_dot,
    word_of_tree,
)
from operadkit.words import DomainError, enumerate_words, full_compose, word

DIAS_SAMPLE = "(l2 (r3 (l4 _ _) (l1 _ (l2 _ _))) (r2 _ (r3 (r1 _ _) (l1 (r2 _ _) (r4 _ _)))))"
TRIAS_SAMPLE = "(r2 (l4 (r3 (l1 _ _) _) (bot _ _)) (bot (l3 _ (r4 _ _)) (l1 (r2 (r3 _ _) _) _)))"


def generator_word(name: str, gamma: int):
    kind, a = split_name(name)
    return word({"l": f"0{a}", "r": f"{a}0", "bot": "00"}[kind], gamma)


def word_by_composition(t: Tree, gamma: int):
    """Evaluate t in the word operad by full composition of generator words."""
    if t.is_leaf:
        return word("0", gamma)
    return full_compose(generator_word(t.name, gamma), [word_by_composition(c, gamma) for c in t.children])


def random_tree(rng: random.Random, gens, degree: int) -> Tree:
    t = LEAF
    names = gens.names()
    for _ in range(degree):
        t = graft(t, rng.randint(1, t.arity), gens.corolla(rng.choice(names)))
    return t


def test_sample_tree_words():
    assert str(word_of_tree(parse_tree(DIAS_SAMPLE, generator_set("dias", 4)), 4)) == "340122332242"
    assert str(word_of_tree(parse_tree(TRIAS_SAMPLE, generator_set("trias", 4)), 4)) == "332440433201"


def test_corolla_images():
    G = generator_set("trias", 3)
    for a in (1, 2, 3):
        assert str(word_of_tree(G.corolla(f"l{a}"), 3)) == f"0{a}"
        assert str(word_of_tree(G.corolla(f"r{a}"), 3)) == f"{a}0"
    assert str(word_of_tree(G.corolla("bot"), 3)) == "00"


@settings(max_examples=150)
@given(st.integers(1, 3), st.integers(0, 6), st.randoms(use_true_random=False))
def test_word_of_tree_matches_composition_oracle(g, degree, rnd):
    for fam in ("dias", "trias"):
        t = random_tree(rnd, generator_set(fam, g), degree)
        assert word_of_tree(t, g) == word_by_composition(t, g)


def test_graft_unit_and_comb():
    G = generator_set("dias", 2)
    s = parse_tree("(l1 _ (r2 _ _))", G)
    for i in (1, 2, 3):
        assert graft(s, i, LEAF) == s
    assert graft(LEAF, 1, s) == s
    assert str(graft(G.corolla("l1"), 1, G.corolla("r2"))) == "(l1 (r2 _ _) _)"
    with pytest.raises(DomainError):
        graft(s, 4, LEAF)


@settings(max_examples=100)
@given(st.randoms(use_true_random=False), st.data())
def test_graft_operad_axioms(rnd, data):
    G = generator_set("dup", 2)
    x, y, z = (random_tree(rnd, G, data.draw(st.integers(0, 5))) for _ in range(3))
    i = data.draw(st.integers(1, x.arity))
    j = data.draw(st.integers(1, y.arity))
    # sequential axiom
    assert graft(graft(x, i, y), i + j - 1, z) == graft(x, i, graft(y, j, z))
    # parallel axiom
    if x.arity >= 2:
        i, k = sorted(data.draw(st.lists(st.integers(1, x.arity), min_size=2, max_size=2, unique=True)))
        lhs = graft(graft(x, k, z), i, y)
        rhs = graft(graft(x, i, y), k + y.arity - 1, z)
        assert lhs == rhs


def test_parse_errors():
    G = generator_set("dias", 1)
    with pytest.raises(DomainError):
        parse_tree("(l2 _ _)", G)
    with pytest.raises(DomainError):
        parse_tree("(l1 _)", G)
    with pytest.raises(DomainError):
        parse_tree("(l1 _ _) _", G)


def test_enumerate_trees_counts():
    G = generator_set("dias", 1)
    # two binary generators: 2^(n-1) Catalan(n-1)
    assert [len(enumerate_trees(G, n)) for n in range(1, 6)] == [1, 2, 8, 40, 224]


def test_hook_examples():
    G = generator_set("dias", 3)
    for a in (1, 2, 3):
        assert hook_tree(word(f"0{a}", 3)) == G.corolla(f"l{a}")
        assert hook_tree(word(f"{a}0", 3)) == G.corolla(f"r{a}")
    assert extended_hook_tree(word("00", 2)) == generator_set("trias", 2).corolla("bot")
    # a r-node with a l-node in its right subtree is not a hook
    assert not is_hook_tree(parse_tree("(r1 _ (l2 _ _))", generator_set("dias", 2)))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_hook_round_trip(n):
    for x in enumerate_words("dias", 3, n):
        t = hook_tree(x)
        assert is_hook_tree(t)
        assert word_of_tree(t, 3) == x
    hooks = {hook_tree(x) for x in enumerate_words("dias", 3, n)}
    assert hooks == set(generate_hook_trees(3, n))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_extended_hook_round_trip(n):
    TG = generator_set("trias", 2)
    for x in enumerate_words("trias", 2, n):
        t = extended_hook_tree(x)
        assert is_extended_hook_tree(t)
        assert word_of_tree(t, 2) == x
    for x in enumerate_words("dias", 2, n):
        # hook trees reinterpreted over the trias generators
        h = hook_tree(x)
        assert str(extended_hook_tree(x)) == str(h)
    assert len(set(generate_extended_hook_trees(2, n))) == 3**n - 2**n
    assert all(t.gen is None or t.gen.name in TG for t in generate_extended_hook_trees(2, n))


@pytest.mark.parametrize("g", [1, 2, 3])
def test_word_of_tree_invariant_under_dias_rules(g):
    rs = dias_rules(g)
    G = generator_set("dias", g)
    for n in (3, 4):
        for t in enumerate_trees(G, n):
            w = word_of_tree(t, g)
            for u in rewrite_once(t, rs):
                assert word_of_tree(u, g) == w


def test_dot_output():
    t = parse_tree("(l1 _ (r1 _ _))", generator_set("dias", 1))
    dot = to_dot(t)
    assert dot.startswith("digraph tree {") and dot.endswith("}")
    assert dot.count("->") == 4
    assert dot == to_dot(t)


def test_generator_sets_are_ordered():
    assert generator_set("dias", 2).names() == ["l1", "l2", "r1", "r2"]
    assert generator_set("trias", 1).names() == ["l1", "bot", "r1"]
    assert generator_set("tdendr", 1).names() == ["pl1", "wedge", "pr1"]
    with pytest.raises(DomainError):
        generator_set("quads", 1)


def test_every_tree_shape_is_enumerated_once():
    G = generator_set("as", 2)
    trees = enumerate_trees(G, 4)
    assert len(set(trees)) == len(trees)
    assert all(t.arity == 4 for t in trees)
    assert len(trees) == 2**3 * 5
