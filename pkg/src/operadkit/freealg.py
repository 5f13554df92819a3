"""Free algebras over one generator and the multiprojection construction M.

Three families of free algebras are implemented directly on their carriers:
pluriassociative (Dias words), polydendriform (edge-valued binary trees with
sums) and multiplicial (the same trees, single-tree products). Relation
suites evaluate the quadratic relations of a presentation on concrete
triples, reading ``x o_1 y`` as ``(p op_y q) op_x r`` and ``x o_2 y`` as
``p op_x (q op_y r)``.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Iterator, Mapping, Sequence

from .lincomb import LinComb
from .trees import Tree
from .words import DomainError, GammaWord, is_dias_element


def _check_label(a: int, gamma: int) -> None:
    if not 1 <= a <= gamma:
        raise DomainError(f"label {a} outside [1, {gamma}]")


# Free pluriassociative algebra.

def h(a: int, u: GammaWord) -> GammaWord:
    _check_label(a, u.gamma)
    return GammaWord(u.gamma, tuple(max(a, l) for l in u.letters))


def _require_dias(*ws: GammaWord) -> None:
    for w in ws:
        if not is_dias_element(w):
            raise DomainError(f"{w} is not a Dias element")
    if len({w.gamma for w in ws}) > 1:
        raise DomainError("gamma mismatch")


def pluri_left(a: int, u: GammaWord, v: GammaWord) -> GammaWord:
    _require_dias(u, v)
    return GammaWord(u.gamma, u.letters + h(a, v).letters)


def pluri_right(a: int, u: GammaWord, v: GammaWord) -> GammaWord:
    _require_dias(u, v)
    return GammaWord(u.gamma, h(a, u).letters + v.letters)


# Edge-valued binary trees. A label None stands for the infinite label that
# sits on every edge leading to a leaf.

@dataclass(frozen=True)
class EVBT:
    left: "EVBT | None" = None
    llab: int | None = None
    right: "EVBT | None" = None
    rlab: int | None = None
    leaf: bool = True

    def __hash__(self) -> int:
        try:
            return self.__dict__["_hash"]
        except KeyError:
            v = hash((self.left, self.llab, self.right, self.rlab, self.leaf))
            object.__setattr__(self, "_hash", v)
            return v

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, EVBT) or hash(self) != hash(other):
            return False
        return (self.leaf, self.llab, self.rlab, self.left, self.right) == (
            other.leaf, other.llab, other.rlab, other.left, other.right)

    @staticmethod
    def node(left: "EVBT", llab: int | None, right: "EVBT", rlab: int | None) -> "EVBT":
        if left.leaf != (llab is None) or right.leaf != (rlab is None):
            raise DomainError("an edge label is infinite exactly when the child is a leaf")
        return EVBT(left, llab, right, rlab, False)

    @property
    def size(self) -> int:
        if self.leaf:
            return 0
        return 1 + self.left.size + self.right.size

    def labels(self) -> Iterator[int]:
        if not self.leaf:
            if self.llab is not None:
                yield self.llab
            if self.rlab is not None:
                yield self.rlab
            yield from self.left.labels()
            yield from self.right.labels()

    def sort_key(self) -> tuple:
        if self.leaf:
            return (0,)
        return (1, self.left.sort_key(), self.llab or 0, self.right.sort_key(), self.rlab or 0)

    def __str__(self) -> str:
        if self.leaf:
            return "_"
        return f"( {self.left} :{_lab(self.llab)} {self.right} :{_lab(self.rlab)} )"

    __repr__ = __str__


def _lab(x: int | None) -> str:
    return "inf" if x is None else str(x)


BLEAF = EVBT()
DOT = EVBT.node(BLEAF, None, BLEAF, None)


def parse_evbt(text: str) -> EVBT:
    tokens = re.findall(r"\(|\)|:[^\s()]+|_", text)
    if "".join(tokens).replace(" ", "") != re.sub(r"\s+", "", text):
        raise DomainError(f"cannot tokenize {text!r}")
    pos = 0

    def label() -> int | None:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if not tok.startswith(":"):
            raise DomainError(f"expected a label at token {pos - 1}")
        body = tok[1:]
        if body == "inf":
            return None
        if not body.isdigit():
            raise DomainError(f"bad label {tok!r}")
        return int(body)

    def go() -> EVBT:
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        if tok == "_":
            return BLEAF
        if tok != "(":
            raise DomainError(f"unexpected token {tok!r} at {pos - 1}")
        l = go()
        ll = label()
        r = go()
        rl = label()
        if tokens[pos] != ")":
            raise DomainError(f"expected ')' at token {pos}")
        pos += 1
        return EVBT.node(l, ll, r, rl)

    try:
        t = go()
    except IndexError:
        raise DomainError("unexpected end of tree") from None
    if pos != len(tokens):
        raise DomainError("trailing tokens")
    return t


def _min(a: int, b: int | None) -> int:
    return a if b is None else min(a, b)


def _both_leaves(s: EVBT, t: EVBT) -> None:
    if s.leaf and t.leaf:
        raise DomainError("product of two leaves is undefined")


def _prec(a: int | None, s: EVBT, t: EVBT) -> LinComb:
    if t.leaf:
        return LinComb.of(s)
    if s.leaf:
        return LinComb()
    z = _min(a, s.rlab) if a is not None else s.rlab
    out = _prec(a, s.right, t) + _succ(s.rlab, s.right, t)
    return out.map_keys(lambda r: EVBT.node(s.left, s.llab, r, z))


def _succ(a: int | None, s: EVBT, t: EVBT) -> LinComb:
    if s.leaf:
        return LinComb.of(t)
    if t.leaf:
        return LinComb()
    z = _min(a, t.llab) if a is not None else t.llab
    out = _succ(a, s, t.left) + _prec(t.llab, s, t.left)
    return out.map_keys(lambda l: EVBT.node(l, z, t.right, t.rlab))


def dendr_left(a: int, s: EVBT, t: EVBT) -> LinComb:
    """s <_a t."""
    _both_leaves(s, t)
    return _prec(a, s, t)


def dendr_right(a: int, s: EVBT, t: EVBT) -> LinComb:
    """s >_a t."""
    _both_leaves(s, t)
    return _succ(a, s, t)


def dup_under(a: int, s: EVBT, t: EVBT) -> EVBT:
    """Graft t on the rightmost leaf of s, taking min with a along that path."""
    _both_leaves(s, t)

    def go(x: EVBT) -> EVBT:
        if x.leaf:
            return t
        return EVBT.node(x.left, x.llab, go(x.right), _min(a, x.rlab))

    return s if t.leaf else go(s)


def dup_over(a: int, s: EVBT, t: EVBT) -> EVBT:
    """Graft s on the leftmost leaf of t, taking min with a along that path."""
    _both_leaves(s, t)

    def go(x: EVBT) -> EVBT:
        if x.leaf:
            return s
        return EVBT.node(go(x.left), _min(a, x.llab), x.right, x.rlab)

    return t if s.leaf else go(t)


def enumerate_evbt(gamma: int, n: int) -> list[EVBT]:
    """All EVBTs with n internal nodes."""
    return list(_evbt(gamma, n))


def _evbt(gamma: int, n: int) -> Iterator[EVBT]:
    if n == 0:
        yield BLEAF
        return
    for k in range(n):
        lefts = list(_evbt(gamma, k))
        rights = list(_evbt(gamma, n - 1 - k))
        llabs = [None] if k == 0 else range(1, gamma + 1)
        rlabs = [None] if n - 1 - k == 0 else range(1, gamma + 1)
        for l in lefts:
            for ll in llabs:
                for r in rights:
                    for rl in rlabs:
                        yield EVBT.node(l, ll, r, rl)


def random_evbt(rng: random.Random, gamma: int, n: int) -> EVBT:
    if n == 0:
        return BLEAF
    k = rng.randrange(n)
    l = random_evbt(rng, gamma, k)
    r = random_evbt(rng, gamma, n - 1 - k)
    return EVBT.node(l, None if l.leaf else rng.randint(1, gamma), r, None if r.leaf else rng.randint(1, gamma))


# Multiprojection algebras and the construction M.

@dataclass(frozen=True)
class Elem:
    """Wraps an algebra element as a LinComb key."""

    value: Any

    def sort_key(self) -> tuple:
        return (repr(self.value),)

    def __str__(self) -> str:
        return str(self.value)


class MultiprojectionAlgebra:
    """gamma associative products star(a, ., .) and projections proj(a, .)."""

    name = ""

    def __init__(self, gamma: int):
        if gamma < 1:
            raise DomainError("multiprojection instances need gamma >= 1")
        self.gamma = gamma

    def star(self, a: int, x, y):
        raise NotImplementedError

    def proj(self, a: int, x):
        raise NotImplementedError

    def universe(self) -> list:
        """A finite sample universe of elements."""
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def parse(self, text: str):
        raise NotImplementedError

    # the M construction
    def left(self, a: int, x, y):
        _check_label(a, self.gamma)
        return self.star(a, x, self.proj(a, y))

    def right(self, a: int, x, y):
        _check_label(a, self.gamma)
        return self.star(a, self.proj(a, x), y)

    def m_universe(self) -> list:
        """Elements on which the M-derived operations are used."""
        return self.universe()


class PosAlgebra(MultiprojectionAlgebra):
    name = "pos"

    def star(self, a, x, y):
        return max(x, y)

    def proj(self, a, x):
        return max(a, x)

    def universe(self):
        return list(range(1, self.gamma + 4))

    def parse(self, text):
        v = int(text)
        if v < 1:
            raise DomainError("positive integers only")
        return v


class SetsAlgebra(MultiprojectionAlgebra):
    name = "sets"

    def star(self, a, x, y):
        return x | y

    def proj(self, a, x):
        return frozenset(e for e in x if a <= e <= self.gamma)

    def universe(self, ground: int | None = None):
        m = self.gamma + 2 if ground is None else ground
        elems = range(1, m + 1)
        return [frozenset(c) for r in range(m + 1) for c in itertools.combinations(elems, r)]

    def format(self, x):
        return "{" + ",".join(str(e) for e in sorted(x)) + "}"

    def parse(self, text):
        body = text.strip().strip("{}")
        if not body:
            return frozenset()
        try:
            vals = [int(p) for p in body.split(",")]
        except ValueError:
            raise DomainError(f"cannot parse set {text!r}") from None
        if any(v < 1 for v in vals):
            raise DomainError("sets of positive integers only")
        return frozenset(vals)


class WordsAlgebra(MultiprojectionAlgebra):
    name = "words"

    def star(self, a, x, y):
        return x + y

    def proj(self, a, x):
        return tuple(l for l in x if l >= a)

    def universe(self):
        letters = range(1, self.gamma + 2)
        return [w for n in range(0, 5) for w in itertools.product(letters, repeat=n)]

    def format(self, x):
        return "".join(str(l) for l in x) if x else "()"

    def parse(self, text):
        text = text.strip()
        if text in ("", "()", "eps"):
            return ()
        if "," in text:
            return tuple(int(p) for p in text.split(","))
        if not text.isdigit() or "0" in text:
            raise DomainError(f"cannot parse word of positive integers {text!r}")
        return tuple(int(c) for c in text)


class MWordsAlgebra(MultiprojectionAlgebra):
    """Words with marked letters (value, marked), at least one marked."""

    name = "mwords"

    def star(self, a, x, y):
        c = max([a] + [v for v, m in x + y if m])
        return tuple((c, True) if m else (v, False) for v, m in x + y)

    def proj(self, a, x):
        return tuple((v, m) if m or v >= a else (a, False) for v, m in x)

    def universe(self):
        letters = [(v, m) for v in range(1, self.gamma + 2) for m in (False, True)]
        out = []
        for n in range(1, 5):
            for w in itertools.product(letters, repeat=n):
                if any(m for _, m in w):
                    out.append(w)
        return out

    def format(self, x):
        return " ".join(f"{v}'" if m else str(v) for v, m in x)

    def parse(self, text):
        out = []
        for tok in text.replace(",", " ").split():
            marked = tok.endswith("'")
            body = tok.rstrip("'")
            if not body.isdigit() or int(body) < 1:
                raise DomainError(f"bad marked-word letter {tok!r}")
            out.append((int(body), marked))
        if not any(m for _, m in out):
            raise DomainError("a marked word needs at least one marked letter")
        return tuple(out)


class FreeWordsAlgebra(MultiprojectionAlgebra):
    """Words over {0..gamma}, concatenation and h_a.

    Concatenation leaves Dias words (two zeros), so the products act on all
    words; the M-derived operations are closed on Dias words, which form
    ``m_universe``.
    """

    name = "free_words"

    def star(self, a, x, y):
        return x + y

    def proj(self, a, x):
        return tuple(max(a, l) for l in x)

    def universe(self):
        letters = range(0, self.gamma + 1)
        return [w for n in range(1, 4) for w in itertools.product(letters, repeat=n)]

    def m_universe(self):
        return [w for w in self.universe() if w.count(0) == 1]

    def format(self, x):
        return "".join(str(l) for l in x) if self.gamma <= 9 else ",".join(str(l) for l in x)

    def parse(self, text):
        from .words import parse_word

        return parse_word(text, self.gamma).letters


INSTANCES: dict[str, type[MultiprojectionAlgebra]] = {
    "pos": PosAlgebra,
    "sets": SetsAlgebra,
    "words": WordsAlgebra,
    "mwords": MWordsAlgebra,
    "free_words": FreeWordsAlgebra,
}


def instance(name: str, gamma: int) -> MultiprojectionAlgebra:
    try:
        return INSTANCES[name](gamma)
    except KeyError:
        raise DomainError(f"unknown instance {name!r}; known: {', '.join(INSTANCES)}") from None


@dataclass
class PluriOps:
    left: Callable[[int, Any, Any], Any]
    right: Callable[[int, Any, Any], Any]


def m_construction(A: MultiprojectionAlgebra) -> PluriOps:
    return PluriOps(A.left, A.right)


def is_bar_unit(ops: PluriOps, e, a: int, sample: Iterable) -> bool:
    return all(ops.left(a, x, e) == x and ops.right(a, e, x) == x for x in sample)


def is_wire_unit(ops: PluriOps, e, a: int, sample: Iterable) -> bool:
    return all(ops.left(a, e, x) == x and ops.right(a, x, e) == x for x in sample)


def wire_units(A: MultiprojectionAlgebra, sample: Sequence) -> list[tuple[Any, int]]:
    """All (e, a) in sample x [gamma] with e an a-wire-unit over the sample."""
    ops = m_construction(A)
    return [(e, a) for e in sample for a in range(1, A.gamma + 1) if is_wire_unit(ops, e, a, sample)]


def multiassociative_law(A: MultiprojectionAlgebra, x, y, z) -> bool:
    g = A.gamma
    for b in range(1, g + 1):
        ref = A.star(b, A.star(b, x, y), z)
        for a in range(1, b + 1):
            forms = (
                A.star(b, A.star(a, x, y), z),
                A.star(a, A.star(b, x, y), z),
                A.star(a, x, A.star(b, y, z)),
                A.star(b, x, A.star(a, y, z)),
            )
            if any(f != ref for f in forms):
                return False
    return True


def projection_law(A: MultiprojectionAlgebra, x) -> bool:
    g = A.gamma
    return all(
        A.proj(a, A.proj(b, x)) == A.proj(max(a, b), x)
        for a in range(1, g + 1)
        for b in range(1, g + 1)
    )


def projection_morphism(A: MultiprojectionAlgebra, x, y) -> bool:
    g = A.gamma
    return all(
        A.proj(a, A.star(b, x, y)) == A.star(b, A.proj(a, x), A.proj(a, y))
        for a in range(1, g + 1)
        for b in range(1, g + 1)
    )


# Relation suites.

Ops = Mapping[str, Callable[[LinComb, LinComb], LinComb]]


def eval_tree(t: Tree, ops: Ops, args: Sequence[LinComb]) -> LinComb:
    """Evaluate a syntax tree on arguments, left to right over its leaves."""
    it = iter(args)

    def go(node: Tree) -> LinComb:
        if node.gen is None:
            return next(it)
        vals = [go(c) for c in node.children]
        return ops[node.gen.name](*vals)

    return go(t)


def eval_relation(rel: LinComb, ops: Ops, args: Sequence[LinComb]) -> LinComb:
    out = LinComb()
    for t, c in rel.items():
        out = out + eval_tree(t, ops, args) * c
    return out


def lift_set_op(f: Callable[[Any, Any], Any]) -> Callable[[LinComb, LinComb], LinComb]:
    """Bilinear extension of a map returning one element (or None for zero)."""

    def op(x: LinComb, y: LinComb) -> LinComb:
        def g(p, q):
            r = f(p.value if isinstance(p, Elem) else p, q.value if isinstance(q, Elem) else q)
            if r is None:
                return None
            return r if hasattr(r, "sort_key") else Elem(r)

        return x.bilinear(y, g)

    return op


def lift_linear_op(f: Callable[[Any, Any], LinComb]) -> Callable[[LinComb, LinComb], LinComb]:
    return lambda x, y: x.bilinear(y, f)


def pluri_ops(gamma: int, left: Callable, right: Callable) -> dict:
    ops = {}
    for a in range(1, gamma + 1):
        ops[f"l{a}"] = lift_set_op(lambda x, y, a=a: left(a, x, y))
        ops[f"r{a}"] = lift_set_op(lambda x, y, a=a: right(a, x, y))
    return ops


def dendr_ops(gamma: int) -> dict:
    ops = {}
    for a in range(1, gamma + 1):
        ops[f"lt{a}"] = lift_linear_op(lambda x, y, a=a: dendr_left(a, x, y))
        ops[f"gt{a}"] = lift_linear_op(lambda x, y, a=a: dendr_right(a, x, y))
    return ops


def dup_ops(gamma: int) -> dict:
    ops = {}
    for a in range(1, gamma + 1):
        ops[f"u{a}"] = lift_set_op(lambda x, y, a=a: dup_under(a, x, y))
        ops[f"o{a}"] = lift_set_op(lambda x, y, a=a: dup_over(a, x, y))
    return ops


def relation_failures(relations: Sequence[LinComb], ops: Ops, triples: Iterable[tuple]) -> list[tuple]:
    """Triples (and relation) on which some relation does not vanish."""
    bad = []
    for triple in triples:
        args = [v if isinstance(v, LinComb) else LinComb.of(v if hasattr(v, "sort_key") else Elem(v)) for v in triple]
        for r in relations:
            if eval_relation(r, ops, args):
                bad.append((r, triple))
    return bad


def sample_triples(universe: Sequence, count: int, seed: int) -> list[tuple]:
    rng = random.Random(seed)
    return [tuple(rng.choice(universe) for _ in range(3)) for _ in range(count)]


def random_dias_word(rng: random.Random, gamma: int, max_len: int = 4) -> GammaWord:
    n = rng.randint(1, max_len)
    letters = [rng.randint(1, gamma) for _ in range(n)]
    letters[rng.randrange(n)] = 0
    return GammaWord(gamma, tuple(letters))
