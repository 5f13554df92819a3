"""Quadratic rewrite systems on syntax trees.

Rules are degree-2 patterns ``x o_i y -> rhs``. A redex is a node labeled x
whose i-th child is an internal node labeled y; the three subtrees hanging
below the pattern are carried over unchanged to the same leaves of rhs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .trees import (
    LEAF,
    GeneratorSet,
    Tree,
    generator_set,
    graft,
    parse_tree,
    split_name,
    substitute_leaves,
)
from .words import DomainError


class RewriteError(RuntimeError):
    """Normal-form computation did not finish (budget or cycle)."""


@dataclass(frozen=True)
class RewriteRule:
    lhs: Tree
    rhs: Tree

    def __post_init__(self) -> None:
        if self.lhs.degree != 2 or self.rhs.degree != 2:
            raise DomainError("rules must be quadratic (degree 2 on both sides)")
        if self.lhs == self.rhs:
            raise DomainError("a rule must change its pattern")
        if self.lhs.arity != self.rhs.arity:
            raise DomainError("rule sides must have equal arity")

    @property
    def signature(self) -> tuple[str, int, str]:
        """(root name, child position, child name) of the left-hand side."""
        for i, c in enumerate(self.lhs.children, 1):
            if not c.is_leaf:
                return (self.lhs.gen.name, i, c.gen.name)
        raise AssertionError("degree-2 tree without internal child")

    def __str__(self) -> str:
        return f"{self.lhs} => {self.rhs}"


class RuleSet:
    def __init__(self, gens: GeneratorSet, rules: list[RewriteRule], name: str = ""):
        names = set(gens.names())
        for r in rules:
            for t in (r.lhs, r.rhs):
                for node in t.nodes():
                    if node.gen.name not in names or gens[node.gen.name] != node.gen:
                        raise DomainError(f"rule {r} uses a generator outside the set")
        self.gens = gens
        self.rules = list(rules)
        self.name = name
        self._index: dict[tuple[str, int, str], list[RewriteRule]] = {}
        for r in rules:
            self._index.setdefault(r.signature, []).append(r)

    def rules_at(self, root: str, i: int, child: str) -> list[RewriteRule]:
        return self._index.get((root, i, child), [])

    def has_redex_at(self, node: Tree) -> bool:
        if node.gen is None:
            return False
        for i, c in enumerate(node.children, 1):
            if c.gen is not None and (node.gen.name, i, c.gen.name) in self._index:
                return True
        return False

    def to_text(self) -> str:
        return "\n".join(str(r) for r in self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    def __repr__(self) -> str:
        return f"RuleSet({self.name or self.gens.label}, {len(self.rules)} rules)"


def parse_rules(text: str, gens: GeneratorSet, name: str = "") -> RuleSet:
    rules = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=>" not in line:
            raise DomainError(f"line {lineno}: expected 'lhs => rhs'")
        a, b = line.split("=>", 1)
        rules.append(RewriteRule(parse_tree(a, gens), parse_tree(b, gens)))
    return RuleSet(gens, rules, name)


def _comp(gens: GeneratorSet, x: str, i: int, y: str) -> Tree:
    return graft(gens.corolla(x), i, gens.corolla(y))


def _rule(gens: GeneratorSet, lhs: tuple[str, int, str], rhs: tuple[str, int, str]) -> RewriteRule:
    return RewriteRule(_comp(gens, *lhs), _comp(gens, *rhs))


@lru_cache(maxsize=None)
def dias_rules(gamma: int) -> RuleSet:
    g = generator_set("dias", gamma)
    rng = range(1, gamma + 1)
    rules = []
    for a in rng:
        for b in rng:
            rules.append(_rule(g, (f"r{b}", 2, f"l{a}"), (f"l{a}", 1, f"r{b}")))
    for a in rng:
        for b in rng:
            if a < b:
                rules.append(_rule(g, (f"l{a}", 2, f"r{b}"), (f"l{a}", 1, f"l{b}")))
                rules.append(_rule(g, (f"r{a}", 1, f"l{b}"), (f"r{a}", 2, f"r{b}")))
                rules.append(_rule(g, (f"l{a}", 2, f"l{b}"), (f"l{b}", 1, f"l{a}")))
                rules.append(_rule(g, (f"r{a}", 1, f"r{b}"), (f"r{b}", 2, f"r{a}")))
    for d in rng:
        for c in rng:
            if c <= d:
                rules.append(_rule(g, (f"l{d}", 2, f"l{c}"), (f"l{d}", 1, f"l{d}")))
                rules.append(_rule(g, (f"l{d}", 2, f"r{c}"), (f"l{d}", 1, f"l{d}")))
                rules.append(_rule(g, (f"r{d}", 1, f"l{c}"), (f"r{d}", 2, f"r{d}")))
                rules.append(_rule(g, (f"r{d}", 1, f"r{c}"), (f"r{d}", 2, f"r{d}")))
    return RuleSet(g, rules, f"dias:{gamma}")


@lru_cache(maxsize=None)
def as_rules(gamma: int) -> RuleSet:
    g = generator_set("as", gamma)
    rules = []
    for a in range(1, gamma + 1):
        for b in range(1, gamma + 1):
            m = max(a, b)
            rules.append(_rule(g, (f"st{a}", 1, f"st{b}"), (f"st{m}", 2, f"st{m}")))
            if a != b:
                rules.append(_rule(g, (f"st{a}", 2, f"st{b}"), (f"st{m}", 2, f"st{m}")))
    return RuleSet(g, rules, f"as:{gamma}")


@lru_cache(maxsize=None)
def dup_rules(gamma: int) -> RuleSet:
    g = generator_set("dup", gamma)
    rules = []
    for a in range(1, gamma + 1):
        for b in range(1, gamma + 1):
            m = min(a, b)
            rules.append(_rule(g, (f"u{a}", 1, f"o{b}"), (f"o{b}", 2, f"u{a}")))
            rules.append(_rule(g, (f"u{a}", 1, f"u{b}"), (f"u{m}", 2, f"u{a}")))
            rules.append(_rule(g, (f"o{a}", 2, f"o{b}"), (f"o{m}", 1, f"o{a}")))
    return RuleSet(g, rules, f"dup:{gamma}")


RULE_BUILDERS = {"dias": dias_rules, "as": as_rules, "dup": dup_rules}


def rule_set(name: str) -> RuleSet:
    """Look up a built-in rule set by ``family:gamma``."""
    fam, _, gam = name.partition(":")
    if fam not in RULE_BUILDERS or not gam.isdigit():
        raise DomainError(f"unknown rule set {name!r}; expected dias:G, as:G or dup:G")
    return RULE_BUILDERS[fam](int(gam))


def _apply_at(node: Tree, i: int, rule: RewriteRule) -> Tree:
    child = node.children[i - 1]
    hanging = list(node.children[: i - 1]) + list(child.children) + list(node.children[i:])
    return substitute_leaves(rule.rhs, hanging)


def _check_gens(t: Tree, rs: RuleSet) -> None:
    for node in t.nodes():
        if node.gen.name not in rs.gens or rs.gens[node.gen.name] != node.gen:
            raise DomainError(f"tree uses generator {node.gen.name!r} outside {rs.gens!r}")


def _redexes(t: Tree, rs: RuleSet) -> Iterator[Tree]:
    """Yield rewritten trees, one per (redex, rule), in leftmost-outermost order."""
    if t.gen is None:
        return
    for i, c in enumerate(t.children, 1):
        if c.gen is not None:
            for rule in rs.rules_at(t.gen.name, i, c.gen.name):
                yield _apply_at(t, i, rule)
    for j, c in enumerate(t.children):
        for new in _redexes(c, rs):
            kids = list(t.children)
            kids[j] = new
            yield Tree(t.gen, kids)


def rewrite_once(t: Tree, rs: RuleSet) -> set[Tree]:
    _check_gens(t, rs)
    return set(_redexes(t, rs))


def is_normal_form(t: Tree, rs: RuleSet) -> bool:
    return not any(rs.has_redex_at(n) for n in t.nodes())


def default_budget(t: Tree) -> int:
    return 10 * (t.degree ** 2 + 1)


def normal_form(t: Tree, rs: RuleSet, step_budget: int | None = None) -> Tree:
    _check_gens(t, rs)
    budget = default_budget(t) if step_budget is None else step_budget
    seen = {t}
    for _ in range(budget):
        nxt = next(_redexes(t, rs), None)
        if nxt is None:
            return t
        if nxt in seen:
            raise RewriteError(f"cycle detected at {nxt}")
        seen.add(nxt)
        t = nxt
    if next(_redexes(t, rs), None) is None:
        return t
    raise RewriteError(f"step budget {budget} exhausted")


@dataclass(frozen=True)
class CriticalPair:
    peak: Tree
    left: Tree
    right: Tree
    kind: str = "chain"  # "chain": root and child redexes share the middle node


def critical_pairs(rs: RuleSet, forks: bool = True) -> list[CriticalPair]:
    """Degree-3 overlaps of two redexes.

    Chain peaks stack a child redex under a root redex (they share the middle
    node). With ``forks`` the peaks whose two redexes share only the root are
    added too; they are needed for a complete local-confluence check when one
    generator heads rules at both child positions.
    """
    for r in rs.rules:
        if r.lhs.degree != 2:
            raise DomainError("non-quadratic rule")
    out: list[CriticalPair] = []
    seen: set[tuple[Tree, Tree, Tree]] = set()

    def add(peak: Tree, a: Tree, b: Tree, kind: str) -> None:
        key = (peak, a, b)
        if key not in seen:
            seen.add(key)
            out.append(CriticalPair(peak, a, b, kind))

    for r1 in rs.rules:
        root, i, mid = r1.signature
        for r2 in rs.rules:
            if r2.signature[0] != mid:
                continue
            # the root redex is r1 at the root; the child redex is r2 at the middle node
            peak = _stack(r1.lhs, i, r2.lhs)
            left = _apply_at(peak, i, r1)
            kids = list(peak.children)
            mid_node = kids[i - 1]
            kids[i - 1] = _apply_at(mid_node, r2.signature[1], r2)
            right = Tree(peak.gen, kids)
            add(peak, left, right, "chain")
    if forks:
        rules_by_root: dict[str, list[RewriteRule]] = {}
        for r in rs.rules:
            rules_by_root.setdefault(r.signature[0], []).append(r)
        for root, rules in rules_by_root.items():
            for r1 in rules:
                for r2 in rules:
                    s1, s2 = r1.signature, r2.signature
                    if s1[1] == s2[1]:
                        continue
                    if s1[1] > s2[1]:
                        continue
                    g = rs.gens
                    kids = [LEAF] * g[root].arity
                    kids[s1[1] - 1] = g.corolla(s1[2])
                    kids[s2[1] - 1] = g.corolla(s2[2])
                    peak = Tree(g[root], kids)
                    add(peak, _apply_at(peak, s1[1], r1), _apply_at(peak, s2[1], r2), "fork")
    out.sort(key=lambda cp: (cp.kind != "chain", cp.peak.sort_key(), cp.left.sort_key(), cp.right.sort_key()))
    return out


def _stack(lhs: Tree, i: int, inner: Tree) -> Tree:
    """Replace the i-th child of lhs (a corolla) by the tree inner."""
    kids = list(lhs.children)
    kids[i - 1] = inner
    return Tree(lhs.gen, kids)


def peak_trees(rs: RuleSet, kind: str = "chain") -> list[Tree]:
    """Distinct peak trees of the given kind."""
    out = []
    for cp in critical_pairs(rs):
        if cp.kind == kind and cp.peak not in out:
            out.append(cp.peak)
    return out


@dataclass
class ConfluenceReport:
    confluent: bool
    pairs: list[CriticalPair] = field(default_factory=list)
    failures: list[CriticalPair] = field(default_factory=list)


def check_local_confluence(rs: RuleSet, step_budget: int | None = None) -> ConfluenceReport:
    pairs = critical_pairs(rs)
    failures = []
    for cp in pairs:
        budget = step_budget if step_budget is not None else default_budget(cp.peak)
        if normal_form(cp.left, rs, budget) != normal_form(cp.right, rs, budget):
            failures.append(cp)
    return ConfluenceReport(not failures, pairs, failures)


def normal_forms(rs: RuleSet, n: int) -> list[Tree]:
    """All arity-n trees without redex, built bottom-up from smaller normal forms."""
    if n < 1:
        return []
    table: dict[int, list[Tree]] = {1: [LEAF]}
    for k in range(2, n + 1):
        found = []
        for g in rs.gens:
            if g.arity != 2:
                raise DomainError("normal-form enumeration expects binary generators")
            for a in range(1, k):
                for left in table[a]:
                    if left.gen is not None and rs.rules_at(g.name, 1, left.gen.name):
                        continue
                    for right in table[k - a]:
                        if right.gen is not None and rs.rules_at(g.name, 2, right.gen.name):
                            continue
                        found.append(Tree(g, (left, right)))
        table[k] = found
    return sorted(table[n], key=Tree.sort_key)


def count_normal_forms(rs: RuleSet, n: int) -> int:
    return len(normal_forms(rs, n))


def dup_measure(t: Tree) -> tuple[int, int]:
    """(alpha + alpha', beta) for a tree over the Dup generators.

    alpha counts, over u-nodes, internal nodes of the right subtree; alpha'
    counts, over o-nodes, internal nodes of the left subtree; beta counts,
    over o-nodes, internal nodes of the right subtree.
    """
    alpha = beta = 0
    for node in t.nodes():
        kind, _ = split_name(node.gen.name)
        left, right = node.children
        if kind == "u":
            alpha += right.degree
        elif kind == "o":
            alpha += left.degree
            beta += right.degree
        else:
            raise DomainError(f"foreign generator {node.gen.name!r}")
    return (alpha, beta)


def is_dup_normal_form_shape(t: Tree) -> bool:
    """Every u-node has a leaf left child; every o-node a leaf or u right child."""
    for node in t.nodes():
        kind, _ = split_name(node.gen.name)
        left, right = node.children
        if kind == "u" and not left.is_leaf:
            return False
        if kind == "o" and not (right.is_leaf or split_name(right.gen.name)[0] == "u"):
            return False
    return True
