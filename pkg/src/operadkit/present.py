"""Binary quadratic presentations over the rationals.

A presentation is a set of binary generators together with a relation
subspace of the degree-2 part of the free operad, stored as linearly
independent TreeLinCombs. The degree-2 basis is ordered by
(index of x, position, index of y) so that the pairing defining Koszul
duality is a signed identity matrix.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

from .lincomb import LinComb
from .linalg import Echelon, nullspace, same_span
from .trees import (
    LEAF,
    GeneratorSet,
    Tree,
    degree2_basis,
    enumerate_trees,
    generator_set,
    graft,
    graft_lin,
    split_name,
    substitute_leaves,
)
from .words import DomainError, GammaWord, is_dias_element

SIZE_GUARD = 200_000


class Presentation:
    def __init__(self, gens: GeneratorSet, relations: Iterable[LinComb], name: str = ""):
        for g in gens:
            if g.arity != 2:
                raise DomainError("presentations here are binary")
        self.gens = gens
        self.name = name
        self.basis = degree2_basis(gens)
        self.index = {t: k for k, t in enumerate(self.basis)}
        rels = [r for r in relations]
        ech = Echelon()
        for r in rels:
            if not ech.add(self.vector(r)):
                raise DomainError(f"relations of {name or gens.label} are linearly dependent")
        self.relations: list[LinComb] = rels
        self._ideals: dict[int, tuple[list[Tree], dict[Tree, int], Echelon]] = {}

    @property
    def dim(self) -> int:
        return len(self.relations)

    def vector(self, r: LinComb) -> dict[int, Fraction]:
        out = {}
        for t, c in r.items():
            k = self.index.get(t)
            if k is None:
                raise DomainError(f"{t} is not a degree-2 tree over {self.gens!r}")
            out[k] = c
        return out

    def from_vector(self, v: Mapping[int, Fraction]) -> LinComb:
        return LinComb((self.basis[k], c) for k, c in v.items())

    def rows(self) -> list[dict[int, Fraction]]:
        return [self.vector(r) for r in self.relations]

    def __repr__(self) -> str:
        return f"Presentation({self.name or self.gens.label}, dim {self.dim})"


def comp(gens: GeneratorSet, x: str, i: int, y: str) -> Tree:
    return graft(gens.corolla(x), i, gens.corolla(y))


def _lin(gens: GeneratorSet, *terms: tuple[int, str, int, str]) -> LinComb:
    """Sum of coef * (x o_i y) for terms (coef, x, i, y)."""
    return LinComb((comp(gens, x, i, y), c) for c, x, i, y in terms)


def _from_classes(gens: GeneratorSet, chains: Iterable[Sequence[tuple[str, int, str]]]) -> list[LinComb]:
    """Relations induced by an equivalence relation given by chains of basis trees."""
    parent: dict[Tree, Tree] = {}

    def find(t: Tree) -> Tree:
        while parent.setdefault(t, t) != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    order: list[Tree] = []
    for chain in chains:
        trees = [comp(gens, *c) for c in chain]
        for t in trees:
            if t not in parent:
                order.append(t)
            find(t)
        for t in trees[1:]:
            ra, rb = find(trees[0]), find(t)
            if ra != rb:
                parent[rb] = ra
    rels = []
    reps: dict[Tree, Tree] = {}
    for t in order:
        r = find(t)
        if r not in reps:
            reps[r] = t
        elif reps[r] != t:
            rels.append(LinComb([(reps[r], 1), (t, -1)]))
    return rels


# Builders.

def _pairs(gamma: int) -> list[tuple[int, int]]:
    return [(a, b) for a in range(1, gamma + 1) for b in range(1, gamma + 1)]


@lru_cache(maxsize=None)
def dias_presentation(gamma: int) -> Presentation:
    g = generator_set("dias", gamma)
    rels = []
    P = _pairs(gamma)
    for a, a2 in P:
        rels.append(_lin(g, (1, f"l{a}", 1, f"r{a2}"), (-1, f"r{a2}", 2, f"l{a}")))
    for a, a2 in P:
        rels.append(_lin(g, (1, f"l{a}", 1, f"l{max(a, a2)}"), (-1, f"l{a}", 2, f"r{a2}")))
    for a, a2 in P:
        rels.append(_lin(g, (1, f"r{a}", 1, f"l{a2}"), (-1, f"r{a}", 2, f"r{max(a, a2)}")))
    for a, a2 in P:
        rels.append(_lin(g, (1, f"l{max(a, a2)}", 1, f"l{a}"), (-1, f"l{a}", 2, f"l{a2}")))
    for a, a2 in P:
        rels.append(_lin(g, (1, f"r{a}", 1, f"r{a2}"), (-1, f"r{max(a, a2)}", 2, f"r{a}")))
    return Presentation(g, rels, f"dias:{gamma}")


@lru_cache(maxsize=None)
def dias_class_presentation(gamma: int) -> Presentation:
    """Same space, generated from the equivalence classes of degree-2 trees."""
    g = generator_set("dias", gamma)
    rng = range(1, gamma + 1)
    chains = []
    for a, a2 in _pairs(gamma):
        chains.append([(f"l{a}", 1, f"r{a2}"), (f"r{a2}", 2, f"l{a}")])
    for a, b in _pairs(gamma):
        if a < b:
            chains.append([(f"l{a}", 1, f"l{b}"), (f"l{a}", 2, f"r{b}")])
            chains.append([(f"r{a}", 1, f"l{b}"), (f"r{a}", 2, f"r{b}")])
            chains.append([(f"l{b}", 1, f"l{a}"), (f"l{a}", 2, f"l{b}")])
            chains.append([(f"r{a}", 1, f"r{b}"), (f"r{b}", 2, f"r{a}")])
    for d in rng:
        for c in range(1, d + 1):
            chains.append([(f"l{d}", 1, f"l{d}"), (f"l{d}", 2, f"l{c}"), (f"l{d}", 2, f"r{c}")])
            chains.append([(f"r{d}", 1, f"l{c}"), (f"r{d}", 1, f"r{c}"), (f"r{d}", 2, f"r{d}")])
    return Presentation(g, _from_classes(g, chains), f"dias-classes:{gamma}")


@lru_cache(maxsize=None)
def dias_kbasis_presentation(gamma: int) -> Presentation:
    g = generator_set("diasK", gamma)
    rels = []
    for a, a2 in _pairs(gamma):
        rels.append(_lin(g, (1, f"kl{a}", 1, f"kr{a2}"), (-1, f"kr{a2}", 2, f"kl{a}")))
    for a, b in _pairs(gamma):
        if a < b:
            rels.append(_lin(g, (1, f"kr{b}", 1, f"kr{a}")))
            rels.append(_lin(g, (1, f"kl{b}", 2, f"kl{a}")))
            rels.append(_lin(g, (1, f"kr{b}", 1, f"kl{a}")))
            rels.append(_lin(g, (1, f"kl{b}", 2, f"kr{a}")))
            rels.append(_lin(g, (1, f"kr{a}", 1, f"kr{b}"), (-1, f"kr{b}", 2, f"kr{a}")))
            rels.append(_lin(g, (1, f"kl{b}", 1, f"kl{a}"), (-1, f"kl{a}", 2, f"kl{b}")))
            rels.append(_lin(g, (1, f"kr{a}", 1, f"kl{b}"), (-1, f"kr{a}", 2, f"kr{b}")))
            rels.append(_lin(g, (1, f"kl{a}", 1, f"kl{b}"), (-1, f"kl{a}", 2, f"kr{b}")))
    for a in range(1, gamma + 1):
        up = range(a, gamma + 1)
        rels.append(_lin(g, (1, f"kr{a}", 1, f"kr{a}"), *[(-1, f"kr{a}", 2, f"kr{b}") for b in up]))
        rels.append(_lin(g, *[(1, f"kl{a}", 1, f"kl{b}") for b in up], (-1, f"kl{a}", 2, f"kl{a}")))
        rels.append(_lin(g, (1, f"kr{a}", 1, f"kl{a}"), *[(-1, f"kr{b}", 2, f"kr{a}") for b in up]))
        rels.append(_lin(g, *[(1, f"kl{b}", 1, f"kl{a}") for b in up], (-1, f"kl{a}", 2, f"kr{a}")))
    return Presentation(g, rels, f"diasK:{gamma}")


@lru_cache(maxsize=None)
def dendr_presentation(gamma: int) -> Presentation:
    g = generator_set("dendr", gamma)
    rels = []
    for a, a2 in _pairs(gamma):
        rels.append(_lin(g, (1, f"pl{a}", 1, f"pr{a2}"), (-1, f"pr{a2}", 2, f"pl{a}")))
    for a, b in _pairs(gamma):
        if a < b:
            rels.append(_lin(g, (1, f"pl{a}", 1, f"pl{b}"), (-1, f"pl{a}", 2, f"pr{b}")))
            rels.append(_lin(g, (1, f"pr{a}", 1, f"pl{b}"), (-1, f"pr{a}", 2, f"pr{b}")))
            # labels on the o_1 side are b then a, as orthogonality to the Dias relations requires
            rels.append(_lin(g, (1, f"pl{b}", 1, f"pl{a}"), (-1, f"pl{a}", 2, f"pl{b}")))
            rels.append(_lin(g, (1, f"pr{a}", 1, f"pr{b}"), (-1, f"pr{b}", 2, f"pr{a}")))
    for d in range(1, gamma + 1):
        low = range(1, d + 1)
        rels.append(_lin(
            g, (1, f"pl{d}", 1, f"pl{d}"),
            *[(-1, f"pl{d}", 2, f"pl{c}") for c in low],
            *[(-1, f"pl{d}", 2, f"pr{c}") for c in low],
        ))
        rels.append(_lin(
            g, *[(1, f"pr{d}", 1, f"pr{c}") for c in low],
            *[(1, f"pr{d}", 1, f"pl{c}") for c in low],
            (-1, f"pr{d}", 2, f"pr{d}"),
        ))
    return Presentation(g, rels, f"dendr:{gamma}")


@lru_cache(maxsize=None)
def dendr_concise_presentation(gamma: int) -> Presentation:
    g = generator_set("dendrC", gamma)
    rels = []
    P = _pairs(gamma)
    for a, a2 in P:
        rels.append(_lin(g, (1, f"lt{a}", 1, f"gt{a2}"), (-1, f"gt{a2}", 2, f"lt{a}")))
    for a, a2 in P:
        m = min(a, a2)
        rels.append(_lin(g, (1, f"lt{a}", 1, f"lt{a2}"), (-1, f"lt{m}", 2, f"lt{a}"), (-1, f"lt{m}", 2, f"gt{a2}")))
    for a, a2 in P:
        m = min(a, a2)
        rels.append(_lin(g, (1, f"gt{m}", 1, f"lt{a2}"), (1, f"gt{m}", 1, f"gt{a}"), (-1, f"gt{a}", 2, f"gt{a2}")))
    return Presentation(g, rels, f"dendrC:{gamma}")


@lru_cache(maxsize=None)
def dendr_kbasis_presentation(gamma: int) -> Presentation:
    """The seven-family form over lt/gt, of which the concise form is a rewording."""
    g = generator_set("dendrC", gamma)
    rels = []
    for a, a2 in _pairs(gamma):
        rels.append(_lin(g, (1, f"lt{a}", 1, f"gt{a2}"), (-1, f"gt{a2}", 2, f"lt{a}")))
    for a, b in _pairs(gamma):
        if a < b:
            rels.append(_lin(g, (1, f"lt{a}", 1, f"lt{b}"), (-1, f"lt{a}", 2, f"gt{b}"), (-1, f"lt{a}", 2, f"lt{a}")))
            rels.append(_lin(g, (1, f"gt{a}", 1, f"gt{a}"), (1, f"gt{a}", 1, f"lt{b}"), (-1, f"gt{a}", 2, f"gt{b}")))
            rels.append(_lin(g, (1, f"lt{b}", 1, f"lt{a}"), (-1, f"lt{a}", 2, f"lt{b}"), (-1, f"lt{a}", 2, f"gt{a}")))
            rels.append(_lin(g, (1, f"gt{a}", 1, f"lt{a}"), (1, f"gt{a}", 1, f"gt{b}"), (-1, f"gt{b}", 2, f"gt{a}")))
    for a in range(1, gamma + 1):
        rels.append(_lin(g, (1, f"lt{a}", 1, f"lt{a}"), (-1, f"lt{a}", 2, f"gt{a}"), (-1, f"lt{a}", 2, f"lt{a}")))
        rels.append(_lin(g, (1, f"gt{a}", 1, f"gt{a}"), (1, f"gt{a}", 1, f"lt{a}"), (-1, f"gt{a}", 2, f"gt{a}")))
    return Presentation(g, rels, f"dendrK:{gamma}")


@lru_cache(maxsize=None)
def as_presentation(gamma: int) -> Presentation:
    g = generator_set("as", gamma)
    rels = []
    for a, b in _pairs(gamma):
        if a <= b:
            rels.append(_lin(g, (1, f"st{a}", 1, f"st{b}"), (-1, f"st{b}", 2, f"st{b}")))
    for a, b in _pairs(gamma):
        if a < b:
            rels.append(_lin(g, (1, f"st{b}", 1, f"st{a}"), (-1, f"st{b}", 2, f"st{b}")))
            rels.append(_lin(g, (1, f"st{a}", 2, f"st{b}"), (-1, f"st{b}", 2, f"st{b}")))
            rels.append(_lin(g, (1, f"st{b}", 2, f"st{a}"), (-1, f"st{b}", 2, f"st{b}")))
    return Presentation(g, rels, f"as:{gamma}")


@lru_cache(maxsize=None)
def das_presentation(gamma: int) -> Presentation:
    g = generator_set("das", gamma)
    rels = []
    for b in range(1, gamma + 1):
        terms = [(1, f"lz{b}", 1, f"lz{b}"), (-1, f"lz{b}", 2, f"lz{b}")]
        for a in range(1, b):
            terms += [
                (1, f"lz{a}", 1, f"lz{b}"), (1, f"lz{b}", 1, f"lz{a}"),
                (-1, f"lz{a}", 2, f"lz{b}"), (-1, f"lz{b}", 2, f"lz{a}"),
            ]
        rels.append(_lin(g, *terms))
    return Presentation(g, rels, f"das:{gamma}")


@lru_cache(maxsize=None)
def das_simple_presentation(gamma: int) -> Presentation:
    g = generator_set("dasS", gamma)
    rels = [_lin(g, (1, f"d{a}", 1, f"d{a}"), (-1, f"d{a}", 2, f"d{a}")) for a in range(1, gamma + 1)]
    return Presentation(g, rels, f"dasS:{gamma}")


@lru_cache(maxsize=None)
def dup_presentation(gamma: int) -> Presentation:
    g = generator_set("dup", gamma)
    rels = []
    for a, a2 in _pairs(gamma):
        m = min(a, a2)
        rels.append(_lin(g, (1, f"u{a}", 1, f"o{a2}"), (-1, f"o{a2}", 2, f"u{a}")))
        rels.append(_lin(g, (1, f"u{a}", 1, f"u{a2}"), (-1, f"u{m}", 2, f"u{a}")))
        rels.append(_lin(g, (1, f"o{m}", 1, f"o{a}"), (-1, f"o{a}", 2, f"o{a2}")))
    return Presentation(g, rels, f"dup:{gamma}")


@lru_cache(maxsize=None)
def trias_presentation(gamma: int) -> Presentation:
    g = generator_set("trias", gamma)
    rng = range(1, gamma + 1)
    chains = [[("bot", 1, "bot"), ("bot", 2, "bot")]]
    for a in rng:
        chains.append([(f"l{a}", 1, "bot"), ("bot", 2, f"l{a}")])
        chains.append([("bot", 1, f"r{a}"), (f"r{a}", 2, "bot")])
        chains.append([("bot", 1, f"l{a}"), ("bot", 2, f"r{a}")])
    for a, a2 in _pairs(gamma):
        chains.append([(f"l{a}", 1, f"r{a2}"), (f"r{a2}", 2, f"l{a}")])
    for a, b in _pairs(gamma):
        if a < b:
            chains.append([(f"l{a}", 1, f"l{b}"), (f"l{a}", 2, f"r{b}")])
            chains.append([(f"r{a}", 1, f"l{b}"), (f"r{a}", 2, f"r{b}")])
            chains.append([(f"l{b}", 1, f"l{a}"), (f"l{a}", 2, f"l{b}")])
            chains.append([(f"r{a}", 1, f"r{b}"), (f"r{b}", 2, f"r{a}")])
    for d in rng:
        for c in range(1, d + 1):
            chains.append([(f"l{d}", 1, f"l{d}"), (f"l{d}", 2, "bot"), (f"l{d}", 2, f"l{c}"), (f"l{d}", 2, f"r{c}")])
            chains.append([(f"r{d}", 1, f"l{c}"), (f"r{d}", 1, f"r{c}"), (f"r{d}", 1, "bot"), (f"r{d}", 2, f"r{d}")])
    return Presentation(g, _from_classes(g, chains), f"trias:{gamma}")


@lru_cache(maxsize=None)
def tdendr_presentation(gamma: int) -> Presentation:
    g = generator_set("tdendr", gamma)
    w = "wedge"
    rels = [_lin(g, (1, w, 1, w), (-1, w, 2, w))]
    for a in range(1, gamma + 1):
        rels.append(_lin(g, (1, f"pl{a}", 1, w), (-1, w, 2, f"pl{a}")))
        rels.append(_lin(g, (1, w, 1, f"pr{a}"), (-1, f"pr{a}", 2, w)))
        rels.append(_lin(g, (1, w, 1, f"pl{a}"), (-1, w, 2, f"pr{a}")))
    for a, a2 in _pairs(gamma):
        rels.append(_lin(g, (1, f"pl{a}", 1, f"pr{a2}"), (-1, f"pr{a2}", 2, f"pl{a}")))
    for a, b in _pairs(gamma):
        if a < b:
            rels.append(_lin(g, (1, f"pl{a}", 1, f"pl{b}"), (-1, f"pl{a}", 2, f"pr{b}")))
            rels.append(_lin(g, (1, f"pr{a}", 1, f"pl{b}"), (-1, f"pr{a}", 2, f"pr{b}")))
            rels.append(_lin(g, (1, f"pl{b}", 1, f"pl{a}"), (-1, f"pl{a}", 2, f"pl{b}")))
            rels.append(_lin(g, (1, f"pr{a}", 1, f"pr{b}"), (-1, f"pr{b}", 2, f"pr{a}")))
    for d in range(1, gamma + 1):
        low = range(1, d + 1)
        rels.append(_lin(
            g, (1, f"pl{d}", 1, f"pl{d}"), (-1, f"pl{d}", 2, w),
            *[(-1, f"pl{d}", 2, f"pl{c}") for c in low],
            *[(-1, f"pl{d}", 2, f"pr{c}") for c in low],
        ))
        rels.append(_lin(
            g, *[(1, f"pr{d}", 1, f"pl{c}") for c in low],
            *[(1, f"pr{d}", 1, f"pr{c}") for c in low],
            (1, f"pr{d}", 1, w), (-1, f"pr{d}", 2, f"pr{d}"),
        ))
    return Presentation(g, rels, f"tdendr:{gamma}")


PRESENTATIONS: dict[str, Callable[[int], Presentation]] = {
    "dias": dias_presentation,
    "diasK": dias_kbasis_presentation,
    "dendr": dendr_presentation,
    "dendrC": dendr_concise_presentation,
    "as": as_presentation,
    "das": das_presentation,
    "dasS": das_simple_presentation,
    "dup": dup_presentation,
    "trias": trias_presentation,
    "tdendr": tdendr_presentation,
}


def presentation(name: str) -> Presentation:
    fam, _, gam = name.partition(":")
    if fam not in PRESENTATIONS or not gam.isdigit():
        raise DomainError(f"unknown presentation {name!r}; known families: {', '.join(PRESENTATIONS)}")
    return PRESENTATIONS[fam](int(gam))


# Duality and comparison.

def _sign(t: Tree) -> int:
    return 1 if not t.children[0].is_leaf else -1


def koszul_dual(P: Presentation, name: str = "") -> Presentation:
    signs = [_sign(t) for t in P.basis]
    rows = [{k: signs[k] * c for k, c in row.items()} for row in P.rows()]
    ns = nullspace(rows, len(P.basis))
    return Presentation(P.gens, [P.from_vector(v) for v in ns], name or f"dual({P.name})")


def tree_image(t: Tree, phi: Mapping[str, LinComb]) -> LinComb:
    """Image of a syntax tree under the operad map generated by phi."""
    if t.gen is None:
        return LinComb.of(LEAF)
    out = phi[t.gen.name]
    for i in range(len(t.children), 0, -1):
        out = graft_lin(out, i, tree_image(t.children[i - 1], phi))
    return out


def map_lincomb(x: LinComb, phi: Mapping[str, LinComb]) -> LinComb:
    return x.linear(lambda t: tree_image(t, phi))


def rename_map(src: GeneratorSet, tgt: GeneratorSet, prefixes: Mapping[str, str]) -> dict[str, LinComb]:
    """phi sending each generator to the generator with a renamed prefix."""
    phi = {}
    for g in src:
        kind, a = split_name(g.name)
        new = prefixes[kind] + ("" if a is None else str(a))
        phi[g.name] = LinComb.of(tgt.corolla(new))
    return phi


def spans_equal(A: Sequence[LinComb], B: Sequence[LinComb]) -> bool:
    keys = {}
    for r in list(A) + list(B):
        for t in r.keys():
            keys.setdefault(t, len(keys))

    def vec(r: LinComb) -> dict[int, Fraction]:
        return {keys[t]: c for t, c in r.items()}

    return same_span([vec(r) for r in A], [vec(r) for r in B])


def transport(P: Presentation, tgt: GeneratorSet, phi: Mapping[str, LinComb]) -> list[LinComb]:
    return [map_lincomb(r, phi) for r in P.relations]


# Quotient dimensions.

def _contexts(t: Tree, path: tuple[int, ...] = ()):
    """Yield (path, outer-with-hole, hanging subtrees) for every parent-child edge."""
    if t.gen is None:
        return
    for i, c in enumerate(t.children):
        if c.gen is not None:
            hanging = t.children[:i] + c.children + t.children[i + 1 :]
            yield path, hanging
    for j, c in enumerate(t.children):
        yield from _contexts(c, path + (j,))


def _replace_at(t: Tree, path: tuple[int, ...], new: Tree) -> Tree:
    if not path:
        return new
    kids = list(t.children)
    kids[path[0]] = _replace_at(kids[path[0]], path[1:], new)
    return Tree(t.gen, kids)


def _ideal(P: Presentation, n: int):
    if n in P._ideals:
        return P._ideals[n]
    trees = list(enumerate_trees(P.gens, n))
    if len(trees) > SIZE_GUARD:
        raise DomainError(f"basis of size {len(trees)} exceeds the guard {SIZE_GUARD}")
    index = {t: k for k, t in enumerate(trees)}
    ech = Echelon()
    seen = set()
    for t in trees:
        for path, hanging in _contexts(t):
            key = (_replace_at(t, path, LEAF), path, hanging)
            if key in seen:
                continue
            seen.add(key)
            for r in P.relations:
                row: dict[int, Fraction] = {}
                for pat, c in r.items():
                    full = _replace_at(t, path, substitute_leaves(pat, hanging))
                    k = index[full]
                    row[k] = row.get(k, 0) + c
                ech.add(row)
    P._ideals[n] = (trees, index, ech)
    return P._ideals[n]


def quotient_dimension(P: Presentation, n: int) -> int:
    if n < 1:
        raise DomainError("arity must be >= 1")
    if n < 3:
        return len(enumerate_trees(P.gens, n))
    trees, _, ech = _ideal(P, n)
    return len(trees) - ech.rank


def reduce_mod_relations(x: LinComb, P: Presentation) -> LinComb:
    if not x:
        return x
    arities = {t.arity for t in x.keys()}
    if len(arities) != 1:
        raise DomainError("all terms must share one arity")
    n = arities.pop()
    if n < 3:
        return x
    trees, index, ech = _ideal(P, n)
    try:
        v = {index[t]: c for t, c in x.items()}
    except KeyError as exc:
        raise DomainError(f"tree {exc.args[0]} is not over {P.gens!r}") from None
    return LinComb((trees[k], c) for k, c in ech.reduce(v).items())


def generator_lincomb(P: Presentation, terms: Mapping[str, object] | Iterable[tuple[str, object]]) -> LinComb:
    items = terms.items() if isinstance(terms, Mapping) else terms
    return LinComb((P.gens.corolla(name), c) for name, c in items)


def is_associative(x: LinComb, P: Presentation) -> bool:
    for t in x.keys():
        if t.degree != 1:
            raise DomainError("expected a combination of generators")
    return not reduce_mod_relations(graft_lin(x, 1, x) - graft_lin(x, 2, x), P)


def morphism_check(phi: Mapping[str, LinComb], src: Presentation, tgt: Presentation) -> bool:
    missing = [g.name for g in src.gens if g.name not in phi]
    if missing:
        raise DomainError(f"map undefined on {', '.join(missing)}")
    return all(not reduce_mod_relations(map_lincomb(r, phi), tgt) for r in src.relations)


def eta_map(gamma: int) -> dict[str, LinComb]:
    A = generator_set("as", gamma)
    phi = {}
    for a in range(1, gamma + 1):
        phi[f"l{a}"] = LinComb.of(A.corolla(f"st{a}"))
        phi[f"r{a}"] = LinComb.of(A.corolla(f"st{a}"))
    return phi


def zeta_map(gamma: int) -> dict[str, LinComb]:
    D = generator_set("dendrC", gamma)
    return {f"d{a}": LinComb([(D.corolla(f"lt{a}"), 1), (D.corolla(f"gt{a}"), 1)]) for a in range(1, gamma + 1)}


def odot(gamma: int, b: int) -> LinComb:
    """Sum over a <= b of (pl_a + pr_a) in the Dendr generators."""
    D = generator_set("dendr", gamma)
    return LinComb([(D.corolla(f"pl{a}"), 1) for a in range(1, b + 1)] + [(D.corolla(f"pr{a}"), 1) for a in range(1, b + 1)])


# Schroder trees: the DAs realization and As corollas.

@dataclass(frozen=True)
class SchroderTree:
    """Leaf when label is None; otherwise a node with >= 2 children."""

    label: int | None = None
    children: tuple["SchroderTree", ...] = ()

    def __post_init__(self) -> None:
        if self.label is None and self.children:
            raise DomainError("a leaf has no children")
        if self.label is not None and len(self.children) < 2:
            raise DomainError("a Schroder node has at least two children")

    @property
    def is_leaf(self) -> bool:
        return self.label is None

    @property
    def arity(self) -> int:
        if self.label is None:
            return 1
        return sum(c.arity for c in self.children)

    @property
    def nodes(self) -> int:
        if self.label is None:
            return 0
        return 1 + sum(c.nodes for c in self.children)

    def is_alternating(self) -> bool:
        if self.label is None:
            return True
        return all(c.is_leaf or (c.label != self.label and c.is_alternating()) for c in self.children)

    def sort_key(self) -> tuple:
        if self.label is None:
            return (0,)
        return (1, self.label, len(self.children)) + tuple(c.sort_key() for c in self.children)

    def __str__(self) -> str:
        if self.label is None:
            return "_"
        return "(" + " ".join([str(self.label)] + [str(c) for c in self.children]) + ")"

    __repr__ = __str__


SLEAF = SchroderTree()


def schroder_corolla(label: int, arity: int) -> SchroderTree:
    if arity == 1:
        return SLEAF
    return SchroderTree(label, (SLEAF,) * arity)


def parse_schroder(text: str) -> SchroderTree:
    tokens = re.findall(r"\(|\)|[^\s()]+", text)
    pos = 0

    def go() -> SchroderTree:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == "_":
            return SLEAF
        if tok != "(":
            raise DomainError(f"unexpected token {tok!r} at position {pos - 1}")
        label = int(tokens[pos])
        pos += 1
        kids = []
        while tokens[pos] != ")":
            kids.append(go())
        pos += 1
        return SchroderTree(label, tuple(kids))

    try:
        t = go()
    except IndexError:
        raise DomainError("unexpected end of Schroder tree") from None
    if pos != len(tokens):
        raise DomainError("trailing tokens")
    return t


def das_compose(s: SchroderTree, i: int, t: SchroderTree) -> SchroderTree:
    if not 1 <= i <= s.arity:
        raise DomainError(f"position {i} out of range 1..{s.arity}")
    if s.is_leaf:
        return t

    def go(node: SchroderTree, k: int) -> SchroderTree:
        kids: list[SchroderTree] = []
        for c in node.children:
            if 1 <= k <= c.arity:
                if c.is_leaf:
                    if not t.is_leaf and t.label == node.label:
                        kids.extend(t.children)
                    else:
                        kids.append(t)
                else:
                    kids.append(go(c, k))
            else:
                kids.append(c)
            k -= c.arity
        return SchroderTree(node.label, tuple(kids))

    return go(s, i)


def as_compose(s: SchroderTree, i: int, t: SchroderTree) -> SchroderTree:
    """Composition of corollas in the As realization: labels combine by max."""
    for c in (s, t):
        if c.nodes > 1:
            raise DomainError("As elements are corollas")
    if not 1 <= i <= s.arity:
        raise DomainError(f"position {i} out of range 1..{s.arity}")
    if s.is_leaf:
        return t
    if t.is_leaf:
        return s
    return schroder_corolla(max(s.label, t.label), s.arity + t.arity - 1)


def eta_image(x: GammaWord) -> SchroderTree:
    if not is_dias_element(x):
        raise DomainError(f"{x} is not a Dias element")
    return schroder_corolla(max(x.letters), x.arity)


def enumerate_alt_schroder(gamma: int, n: int) -> list[SchroderTree]:
    """All gamma-alternating Schroder trees with n leaves."""
    return list(_alt(gamma, n, None))


@lru_cache(maxsize=None)
def _alt(gamma: int, n: int, forbidden: int | None) -> tuple[SchroderTree, ...]:
    if n == 1:
        return (SLEAF,)
    out = []
    for label in range(1, gamma + 1):
        if label == forbidden:
            continue
        for split in _splits(n):
            for kids in itertools.product(*[_alt(gamma, m, label) for m in split]):
                out.append(SchroderTree(label, kids))
    return tuple(out)


def _splits(n: int):
    """Compositions of n into at least two positive parts."""
    def rec(rest: int):
        if rest == 0:
            yield ()
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first):
                yield (first,) + tail

    for c in rec(n):
        if len(c) >= 2:
            yield c


def schroder_to_tree(s: SchroderTree, family: str = "dasS") -> Tree:
    """A syntax tree over the diamond generators mapping onto s.

    A k-ary node labeled a becomes a left comb of k-1 copies of d_a; children
    carry different labels, so no further contraction occurs.
    """
    if s.is_leaf:
        return LEAF
    gamma = max(_labels(s))
    g = generator_set(family, gamma)
    return _to_tree(s, g)


def _labels(s: SchroderTree):
    if s.label is not None:
        yield s.label
        for c in s.children:
            yield from _labels(c)


def _to_tree(s: SchroderTree, g: GeneratorSet) -> Tree:
    if s.is_leaf:
        return LEAF
    kids = [_to_tree(c, g) for c in s.children]
    gen = g[f"d{s.label}"]
    t = Tree(gen, (kids[0], kids[1]))
    for c in kids[2:]:
        t = Tree(gen, (t, c))
    return t


def tree_to_schroder(t: Tree) -> SchroderTree:
    """Evaluate a syntax tree over d_a in the Schroder realization."""
    if t.gen is None:
        return SLEAF
    _, a = split_name(t.gen.name)
    out = schroder_corolla(a, 2)
    out = das_compose(out, 2, tree_to_schroder(t.children[1]))
    return das_compose(out, 1, tree_to_schroder(t.children[0]))
