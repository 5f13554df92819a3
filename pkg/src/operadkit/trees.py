"""Syntax trees over graded generator sets, and the Dias/Trias tree maps.

A syntax tree is a leaf or a node labeled by a generator whose children
count equals the generator arity. ``word_of_tree`` reads the image of each
leaf (its greatest eligible integer); ``hook_tree`` and
``extended_hook_tree`` give the normal-form section back.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .lincomb import LinComb
from .words import DomainError, GammaWord, is_dias_element, is_trias_element


@dataclass(frozen=True, order=True, slots=True)
class Generator:
    index: int
    name: str
    arity: int = 2

    def __str__(self) -> str:
        return self.name


class GeneratorSet:
    """Ordered, named generators; the order fixes basis orderings."""

    def __init__(self, entries: Iterable[tuple[str, int] | str], label: str = ""):
        gens = []
        for idx, e in enumerate(entries):
            name, arity = (e, 2) if isinstance(e, str) else e
            gens.append(Generator(idx, name, arity))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise DomainError("generator names must be unique")
        self.gens: tuple[Generator, ...] = tuple(gens)
        self.label = label
        self._by_name = {g.name: g for g in gens}

    def __getitem__(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise DomainError(f"unknown generator {name!r}") from None

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.gens)

    def __len__(self) -> int:
        return len(self.gens)

    def names(self) -> list[str]:
        return [g.name for g in self.gens]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GeneratorSet) and self.gens == other.gens

    def __hash__(self) -> int:
        return hash(self.gens)

    def __repr__(self) -> str:
        return f"GeneratorSet({self.label or ','.join(self.names())})"

    def corolla(self, name: str) -> "Tree":
        g = self[name]
        return Tree(g, (LEAF,) * g.arity)


class Tree:
    __slots__ = ("gen", "children", "_hash", "_arity", "_degree", "_key")

    def __init__(self, gen: Generator | None, children: Sequence["Tree"] = ()):
        children = tuple(children)
        if gen is None:
            if children:
                raise DomainError("a leaf has no children")
        elif len(children) != gen.arity:
            raise DomainError(f"{gen.name} expects {gen.arity} children, got {len(children)}")
        self.gen = gen
        self.children = children
        self._hash = hash((gen, children))
        if gen is None:
            self._arity, self._degree = 1, 0
        else:
            self._arity = sum(c._arity for c in children)
            self._degree = 1 + sum(c._degree for c in children)
        self._key = None

    @property
    def is_leaf(self) -> bool:
        return self.gen is None

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def degree(self) -> int:
        return self._degree

    @property
    def name(self) -> str | None:
        return None if self.gen is None else self.gen.name

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Tree) or self._hash != other._hash:
            return False
        return self.gen == other.gen and self.children == other.children

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        if self._key is None:
            if self.gen is None:
                self._key = (0,)
            else:
                self._key = (1, self.gen.index) + tuple(c.sort_key() for c in self.children)
        return self._key

    def __lt__(self, other: "Tree") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if self.gen is None:
            return "_"
        return "(" + " ".join([self.gen.name] + [str(c) for c in self.children]) + ")"

    __repr__ = __str__

    def nodes(self) -> Iterator["Tree"]:
        """Internal nodes in preorder."""
        if self.gen is not None:
            yield self
            for c in self.children:
                yield from c.nodes()


LEAF = Tree(None)

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def parse_tree(text: str, gens: GeneratorSet) -> Tree:
    tokens = _TOKEN.findall(text)
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if pos >= len(tokens):
            raise DomainError(f"unexpected end of tree at token {pos}")
        tok = tokens[pos]
        pos += 1
        if tok == "_":
            return LEAF
        if tok != "(":
            raise DomainError(f"unexpected token {tok!r} at position {pos - 1}")
        if pos >= len(tokens):
            raise DomainError("unexpected end of tree")
        g = gens[tokens[pos]]
        pos += 1
        kids = [parse() for _ in range(g.arity)]
        if pos >= len(tokens) or tokens[pos] != ")":
            raise DomainError(f"expected ')' at token {pos}")
        pos += 1
        return Tree(g, kids)

    t = parse()
    if pos != len(tokens):
        raise DomainError(f"trailing tokens after position {pos}")
    return t


def graft(s: Tree, i: int, t: Tree) -> Tree:
    """Graft the root of t on the i-th leaf of s."""
    if not 1 <= i <= s.arity:
        raise DomainError(f"position {i} out of range 1..{s.arity}")

    def go(node: Tree, k: int) -> Tree:
        if node.gen is None:
            return t
        kids = list(node.children)
        for j, c in enumerate(kids):
            if k <= c.arity:
                kids[j] = go(c, k)
                break
            k -= c.arity
        return Tree(node.gen, kids)

    return go(s, i)


def graft_lin(s: LinComb, i: int, t: LinComb) -> LinComb:
    return s.bilinear(t, lambda a, b: graft(a, i, b))


def substitute_leaves(pattern: Tree, subtrees: Sequence[Tree]) -> Tree:
    """Replace the leaves of pattern, left to right, by the given trees."""
    it = iter(subtrees)

    def go(node: Tree) -> Tree:
        if node.gen is None:
            return next(it)
        return Tree(node.gen, [go(c) for c in node.children])

    return go(pattern)


def leaf_subtrees(t: Tree) -> list[Tree]:
    """The list of leaves as trivial trees (helper for pattern arities)."""
    return [LEAF] * t.arity


@lru_cache(maxsize=None)
def enumerate_trees(gens: GeneratorSet, n: int) -> tuple[Tree, ...]:
    """All syntax trees of arity n, in sort_key order."""
    if n < 1:
        return ()
    out = [LEAF] if n == 1 else []
    for g in gens:
        for sizes in _compositions(n, g.arity):
            for kids in itertools.product(*(enumerate_trees(gens, s) for s in sizes)):
                out.append(Tree(g, kids))
    out.sort(key=Tree.sort_key)
    return tuple(out)


def _compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


def degree2_basis(gens: GeneratorSet) -> list[Tree]:
    """x o_1 y and x o_2 y ordered by (x, position, y)."""
    out = []
    for x in gens:
        for i in (1, 2):
            for y in gens:
                out.append(graft(gens.corolla(x.name), i, gens.corolla(y.name)))
    return out


def to_dot(t: Tree, name: str = "tree") -> str:
    lines = [f"digraph {name} {{"]
    counter = itertools.count()

    def go(node: Tree) -> str:
        ident = f"n{next(counter)}"
        if node.gen is None:
            lines.append(f'  {ident} [shape=point];')
        else:
            lines.append(f'  {ident} [label="{node.gen.name}"];')
            for c in node.children:
                cid = go(c)
                lines.append(f"  {ident} -> {cid};")
        return ident

    go(t)
    lines.append("}")
    return "\n".join(lines)


# Generator sets of the operad families.

FAMILY_PREFIXES = {
    "dias": ("l", "r"),
    "diasK": ("kl", "kr"),
    "dendr": ("pl", "pr"),
    "dendrC": ("lt", "gt"),
    "as": ("st",),
    "das": ("lz",),
    "dasS": ("d",),
    "dup": ("u", "o"),
    "trias": ("l", "bot", "r"),
    "tdendr": ("pl", "wedge", "pr"),
}

_UNINDEXED = {"bot", "wedge"}


@lru_cache(maxsize=None)
def generator_set(family: str, gamma: int) -> GeneratorSet:
    try:
        prefixes = FAMILY_PREFIXES[family]
    except KeyError:
        raise DomainError(f"unknown family {family!r}") from None
    names: list[str] = []
    for p in prefixes:
        if p in _UNINDEXED:
            names.append(p)
        else:
            names.extend(f"{p}{a}" for a in range(1, gamma + 1))
    return GeneratorSet(names, label=f"{family}:{gamma}")


_NAME = re.compile(r"^([a-z]+?)(\d*)$")


def split_name(name: str) -> tuple[str, int | None]:
    """'l3' -> ('l', 3); 'bot' -> ('bot', None)."""
    m = _NAME.match(name)
    if not m:
        raise DomainError(f"bad generator name {name!r}")
    return m.group(1), (int(m.group(2)) if m.group(2) else None)


def word_of_tree(t: Tree, gamma: int) -> GammaWord:
    """Leaf images of a tree over {l_a, r_a, bot}."""
    letters: list[int] = []

    def go(node: Tree, m: int) -> None:
        if node.gen is None:
            letters.append(m)
            return
        kind, a = split_name(node.gen.name)
        left, right = node.children
        if kind == "l":
            go(left, m)
            go(right, max(m, a))
        elif kind == "r":
            go(left, max(m, a))
            go(right, m)
        elif kind == "bot":
            go(left, m)
            go(right, m)
        else:
            raise DomainError(f"foreign generator {node.gen.name!r}")

    go(t, 0)
    return GammaWord(gamma, tuple(letters))


def _left_comb_l(gens: GeneratorSet, base: Tree, labels: Sequence[int]) -> Tree:
    """l_{v_k}( ... l_{v_1}(base, _) ..., _)."""
    t = base
    for a in labels:
        t = Tree(gens[f"l{a}"], (t, LEAF))
    return t


def _right_comb_r(gens: GeneratorSet, labels: Sequence[int]) -> Tree:
    """r_{u_1}(_, r_{u_2}(_, ... r_{u_m}(_, _)))."""
    t = LEAF
    for a in reversed(labels):
        t = Tree(gens[f"r{a}"], (LEAF, t))
    return t


def hook_tree(x: GammaWord, family: str = "dias") -> Tree:
    if not is_dias_element(x):
        raise DomainError(f"{x} is not a Dias element")
    gens = generator_set(family, x.gamma)
    z = x.letters.index(0)
    u, v = x.letters[:z], x.letters[z + 1 :]
    return _left_comb_l(gens, _right_comb_r(gens, u), v)


def _strip_left_comb_l(t: Tree) -> tuple[Tree, list[int]]:
    labels = []
    while t.gen is not None and split_name(t.gen.name)[0] == "l" and t.children[1].is_leaf:
        labels.append(split_name(t.gen.name)[1])
        t = t.children[0]
    return t, labels[::-1]


def _is_right_comb_r(t: Tree) -> bool:
    while t.gen is not None:
        if split_name(t.gen.name)[0] != "r" or not t.children[0].is_leaf:
            return False
        t = t.children[1]
    return True


def is_hook_tree(t: Tree) -> bool:
    rest, _ = _strip_left_comb_l(t)
    return _is_right_comb_r(rest)


def extended_hook_tree(x: GammaWord) -> Tree:
    if not is_trias_element(x):
        raise DomainError(f"{x} is not a Trias element")
    gens = generator_set("trias", x.gamma)
    zeros = [p for p, l in enumerate(x.letters) if l == 0]
    cut = zeros[1] if len(zeros) > 1 else len(x.letters)
    t = hook_tree(GammaWord(x.gamma, x.letters[:cut]), family="trias")
    bounds = zeros[1:] + [len(x.letters)]
    for start, end in zip(bounds, bounds[1:]):
        block = x.letters[start + 1 : end]
        t = Tree(gens["bot"], (t, _left_comb_l(gens, LEAF, block)))
    return t


def _is_left_comb_l(t: Tree) -> bool:
    rest, _ = _strip_left_comb_l(t)
    return rest.is_leaf


def is_extended_hook_tree(t: Tree) -> bool:
    while t.gen is not None and t.gen.name == "bot":
        if not _is_left_comb_l(t.children[1]):
            return False
        t = t.children[0]
    return is_hook_tree(t)


def generate_hook_trees(gamma: int, n: int, family: str = "dias") -> Iterator[Tree]:
    """Every hook-shaped tree of arity n, built from comb label sequences."""
    gens = generator_set(family, gamma)
    labels = range(1, gamma + 1)
    for k in range(n):
        for u in itertools.product(labels, repeat=k):
            comb = _right_comb_r(gens, u)
            for v in itertools.product(labels, repeat=n - 1 - k):
                yield _left_comb_l(gens, comb, v)


def generate_extended_hook_trees(gamma: int, n: int) -> Iterator[Tree]:
    """Every extended-hook-shaped tree of arity n."""
    gens = generator_set("trias", gamma)
    labels = range(1, gamma + 1)

    def blocks(m: int) -> Iterator[list[tuple[int, ...]]]:
        # sequences of l-comb label tuples whose arities (len + 1) sum to m
        if m == 0:
            yield []
            return
        for size in range(1, m + 1):
            for lab in itertools.product(labels, repeat=size - 1):
                for rest in blocks(m - size):
                    yield [lab] + rest

    for base_arity in range(1, n + 1):
        bases = list(generate_hook_trees(gamma, base_arity, family="trias"))
        for bl in blocks(n - base_arity):
            for base in bases:
                t = base
                for lab in bl:
                    t = Tree(gens["bot"], (t, _left_comb_l(gens, LEAF, lab)))
                yield t
