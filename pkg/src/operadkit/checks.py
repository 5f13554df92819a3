"""Named invariant suites, shared by the ``check`` command and the tests.

Each suite takes the parameter ``gamma`` (and a seed where sampling is
involved) and returns a list of Check records.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

from . import freealg as fa
from . import present as pr
from . import rewrite as rw
from . import series as se
from .lincomb import LinComb
from .trees import generate_hook_trees, is_hook_tree
from .words import (
    DomainError,
    GammaWord,
    enumerate_words,
    full_compose,
    is_dias_element,
    is_trias_element,
    kbasis_compose,
    kbasis_compose_by_conjugation,
    kbasis_contract,
    kbasis_expand,
    mirror,
    root,
    tm_compose,
    word,
)

DEFAULT_SEED = 0xD1A5


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "pass" if self.ok else "FAIL"
        return f"{status}  {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _first_failure(items, pred) -> object | None:
    for it in items:
        if not pred(it):
            return it
    return None


def _check(name: str, items, pred) -> Check:
    bad = _first_failure(items, pred)
    return Check(name, bad is None, "" if bad is None else f"counterexample {bad}")


# words and operad structure

def dias_words_upto(gamma: int, n: int) -> list[GammaWord]:
    return [w for m in range(1, n + 1) for w in enumerate_words("dias", gamma, m)]


def operad_axioms(gamma: int, max_arity: int) -> Check:
    """Sequential and parallel associativity and the unit, on Dias words."""
    ws = dias_words_upto(gamma, max_arity)
    unit = GammaWord(gamma, (0,))
    for x in ws:
        if tm_compose(unit, 1, x) != x or any(tm_compose(x, i, unit) != x for i in range(1, x.arity + 1)):
            return Check("operad axioms", False, f"unit fails on {x}")
    small = [w for w in ws if w.arity <= max(1, max_arity - 1)]
    for x in ws:
        n = x.arity
        for y in small:
            m = y.arity
            if n + m - 1 > max_arity + 1:
                continue
            for z in small:
                k = z.arity
                if n + m + k - 2 > max_arity + 2:
                    continue
                for i in range(1, n + 1):
                    xy = tm_compose(x, i, y)
                    for j in range(1, m + 1):
                        if tm_compose(xy, i + j - 1, z) != tm_compose(x, i, tm_compose(y, j, z)):
                            return Check("operad axioms", False, f"sequential ({x},{i},{y},{j},{z})")
                    for j in range(i + 1, n + 1):
                        if tm_compose(xy, j + m - 1, z) != tm_compose(tm_compose(x, j, z), i, y):
                            return Check("operad axioms", False, f"parallel ({x},{i},{y},{j},{z})")
    return Check("operad axioms", True)


def closure(gamma: int, max_arity: int) -> list[Check]:
    ds = dias_words_upto(gamma, max_arity)
    ts = [w for m in range(1, max_arity + 1) for w in enumerate_words("trias", gamma, m)]
    out = []
    for name, ws, pred in (("dias closure", ds, is_dias_element), ("trias closure", ts, is_trias_element)):
        ok = all(pred(tm_compose(x, i, y)) for x in ws for y in ws for i in range(1, x.arity + 1))
        out.append(Check(name, ok))
    return out


def mirror_antiautomorphism(gamma: int, max_arity: int) -> Check:
    ws = dias_words_upto(gamma, max_arity)
    pairs = ((x, i, y) for x in ws for y in ws for i in range(1, x.arity + 1))
    return _check(
        "mirror antiautomorphism",
        pairs,
        lambda p: mirror(tm_compose(p[0], p[1], p[2])) == tm_compose(mirror(p[0]), p[0].arity - p[1] + 1, mirror(p[2])),
    )


def rooted_law(gamma: int, max_arity: int) -> Check:
    ws = dias_words_upto(gamma, max_arity)

    def expected(x: GammaWord, i: int, y: GammaWord) -> int:
        r = root(x)
        if i <= r - 1:
            return r + y.arity - 1
        if i == r:
            return r + root(y) - 1
        return r

    pairs = ((x, i, y) for x in ws for y in ws for i in range(1, x.arity + 1))
    return _check("rooted law", pairs, lambda p: root(tm_compose(*p)) == expected(*p))


def basic_injectivity(gamma: int, max_n: int = 3, max_y: int = 3) -> Check:
    ys = dias_words_upto(gamma, max_y)
    for n in range(1, max_n + 1):
        xs = enumerate_words("dias", gamma, n)
        for tup in itertools.product(ys, repeat=n):
            images = {full_compose(x, tup) for x in xs}
            if len(images) != len(xs):
                return Check("basic operad injectivity", False, f"y = {[str(t) for t in tup]}")
    return Check("basic operad injectivity", True)


def structure_suite(gamma: int = 2, max_arity: int = 4) -> list[Check]:
    return [
        operad_axioms(gamma, max_arity),
        mirror_antiautomorphism(gamma, max_arity),
        basic_injectivity(gamma, 3, 3),
        rooted_law(gamma, max_arity),
    ]


def composition_suite(gamma: int = 2) -> list[Check]:
    goldens = [
        (("211201", 4, "31103"), "2113222301", 3),
        (("111101", 3, "20"), "1121101", 2),
    ]
    out = []
    for (x, i, y), want, g in goldens:
        got = tm_compose(word(x, g), i, word(y, g))
        out.append(Check(f"compose {x} o{i} {y}", str(got) == want, "" if str(got) == want else f"got {got}"))
    out.append(Check("121013 is a Dias word", is_dias_element(word("121013", 3))))
    out.extend(closure(gamma, 3))
    return out


def enumeration_suite(gamma: int = 2, max_n: int = 7) -> list[Check]:
    out = []
    for fam in ("dias", "trias"):
        ok = all(len(enumerate_words(fam, gamma, n)) == se.dim_formula(fam, gamma, n) for n in range(1, max_n + 1))
        out.append(Check(f"{fam} words = formula", ok))
    for kind, fam in se.COUNTED_FAMILY.items():
        ok = all(se.count_structures(kind, gamma, n) == se.dim_formula(fam, gamma, n) for n in range(1, max_n + 1))
        out.append(Check(f"{kind} count = {fam} formula", ok))
    return out


def kbasis_suite(gamma: int = 2) -> list[Check]:
    g5 = 5
    x, y = word("20413", g5), word("304", g5)
    goldens = [
        (1, LinComb.of(word("3240413", g5))),
        (3, LinComb()),
        (5, LinComb((word(w, g5), 1) for w in ("2041334", "2041344", "2041354"))),
    ]
    out = [Check(f"K golden o{i}", kbasis_compose(x, i, y) == want) for i, want in goldens]
    ws = [w for n in (2, 3) for w in enumerate_words("dias", gamma, n)]
    triples = [(a, i, b) for a in ws for b in ws for i in range(1, a.arity + 1)]
    out.append(_check("K closed form = conjugation", triples,
                      lambda t: kbasis_compose(*t) == kbasis_compose_by_conjugation(*t)))
    out.append(_check("K structure constants in {0,1}", triples,
                      lambda t: all(c == 1 for _, c in kbasis_compose(*t).items())))
    out.append(_check("K round trip", ws, lambda w: kbasis_contract(kbasis_expand(w)) == LinComb.of(w)))
    return out


# rewriting

NF_FAMILY = {"dias": "dias", "as": "as", "dup": "dup"}


def rewrite_suite(gamma: int = 2, max_n: int = 6) -> list[Check]:
    out = []
    for name, builder in rw.RULE_BUILDERS.items():
        rs = builder(gamma)
        rep = rw.check_local_confluence(rs)
        out.append(Check(f"{name} rules locally confluent", rep.confluent, f"{len(rep.pairs)} pairs"))
        ok = all(rw.count_normal_forms(rs, n) == se.dim_formula(NF_FAMILY[name], gamma, n) for n in range(1, max_n + 1))
        out.append(Check(f"{name} normal forms = dims (n <= {max_n})", ok))
    peaks = rw.peak_trees(rw.dup_rules(gamma), "chain")
    forks = rw.peak_trees(rw.dup_rules(gamma), "fork")
    out.append(Check("dup peaks = 4 gamma^3", len(peaks) == 4 * gamma**3 and not forks, f"{len(peaks)} peaks"))
    nfs = [t for n in range(1, max_n + 1) for t in rw.normal_forms(rw.dias_rules(gamma), n)]
    out.append(_check("dias normal forms are hooks", nfs, is_hook_tree))
    hooks = {t for n in range(1, max_n + 1) for t in generate_hook_trees(gamma, n)}
    out.append(Check("dias normal forms = generated hooks", hooks == set(nfs)))
    return out


# presentations

DUAL_PAIRS = [
    ("dias", "dendr", {"l": "pl", "r": "pr"}),
    ("diasK", "dendrC", {"kl": "lt", "kr": "gt"}),
    ("as", "das", {"st": "lz"}),
    ("trias", "tdendr", {"l": "pl", "r": "pr", "bot": "wedge"}),
]


def dual_equivalent(src: str, tgt: str, prefixes: dict, gamma: int) -> bool:
    D = pr.koszul_dual(pr.PRESENTATIONS[src](gamma))
    T = pr.PRESENTATIONS[tgt](gamma)
    phi = pr.rename_map(D.gens, T.gens, prefixes)
    return pr.spans_equal(pr.transport(D, T.gens, phi), T.relations)


def duals_suite(gamma: int = 2) -> list[Check]:
    out = []
    for src, tgt, prefixes in DUAL_PAIRS:
        out.append(Check(f"dual({src}) = {tgt}", dual_equivalent(src, tgt, prefixes, gamma)))
    for name, build in pr.PRESENTATIONS.items():
        P = build(gamma)
        D = pr.koszul_dual(P)
        g = len(P.gens)
        ok = pr.spans_equal(pr.koszul_dual(D).relations, P.relations) and P.dim + D.dim == 2 * g * g
        out.append(Check(f"{name}: dual of dual, dim sum 2g^2", ok))
    return out


QDIM_FAMILIES = {"dias": "dias", "dendr": "dendr", "as": "as", "das": "das", "dup": "dup", "trias": "trias", "tdendr": "tdendr"}


def qdim_suite(gamma: int = 2, arities=(3, 4)) -> list[Check]:
    out = []
    for name in QDIM_FAMILIES:
        P = pr.PRESENTATIONS[name](gamma)
        got = [pr.quotient_dimension(P, n) for n in arities]
        want = [se.dim_formula(name, gamma, n) for n in arities]
        out.append(Check(f"qdim {name}", got == want, "" if got == want else f"got {got}, want {want}"))
    return out


# free algebras and M

def _dendr_goldens() -> tuple[fa.EVBT, fa.EVBT]:
    s = fa.parse_evbt("( ( _ :inf _ :inf ) :1 ( _ :inf ( _ :inf _ :inf ) :1 ) :3 )")
    t = fa.parse_evbt("( ( _ :inf _ :inf ) :1 ( _ :inf _ :inf ) :2 )")
    return s, t


def freealg_suite(gamma: int = 2, seed: int = DEFAULT_SEED, count: int = 200) -> list[Check]:
    out = []
    u, v = word("101241", 4), word("203", 4)
    out.append(Check("pluri left golden", str(fa.pluri_left(2, u, v)) == "101241223"))
    out.append(Check("pluri right golden", str(fa.pluri_right(3, u, v)) == "333343203"))
    s, t = _dendr_goldens()
    L, R = fa.dendr_left(2, s, t), fa.dendr_right(2, s, t)
    sizes_ok = all(k.size == s.size + t.size for k in L.keys() + R.keys())
    coefs_ok = all(c == 1 for _, c in L.items() + R.items())
    out.append(Check("dendr products have 6 and 4 terms", len(L) == 6 and len(R) == 4 and sizes_ok and coefs_ok))
    rng = random.Random(seed)
    trip = [tuple(fa.random_dias_word(rng, gamma) for _ in range(3)) for _ in range(count)]
    bad = fa.relation_failures(pr.dias_presentation(gamma).relations, fa.pluri_ops(gamma, fa.pluri_left, fa.pluri_right), trip)
    out.append(Check("pluriassociative relations", not bad, f"{len(bad)} failures"))
    trip = [tuple(fa.random_evbt(rng, gamma, rng.randint(1, 3)) for _ in range(3)) for _ in range(count)]
    bad = fa.relation_failures(pr.dendr_concise_presentation(gamma).relations, fa.dendr_ops(gamma), trip)
    out.append(Check("polydendriform relations", not bad, f"{len(bad)} failures"))
    bad = fa.relation_failures(pr.dup_presentation(gamma).relations, fa.dup_ops(gamma), trip)
    out.append(Check("multiplicial relations", not bad, f"{len(bad)} failures"))
    return out


def minstances_suite(gamma: int = 2, seed: int = DEFAULT_SEED, count: int = 200) -> list[Check]:
    out = []
    P, S, W, M = fa.PosAlgebra(5), fa.SetsAlgebra(5), fa.WordsAlgebra(5), fa.MWordsAlgebra(5)
    m = M.parse
    goldens = [
        ("pos", P.left(3, 2, 5) == 5 and P.right(3, 1, 2) == 3),
        ("sets", S.left(3, frozenset({2, 4}), frozenset({1, 3, 5})) == frozenset({2, 3, 4, 5})
         and S.right(3, frozenset({1, 2, 4}), frozenset({1, 3, 5})) == frozenset({1, 3, 4, 5})),
        ("words", W.left(3, (4, 1, 2), (1, 4, 2, 3, 1)) == (4, 1, 2, 4, 3) and W.right(2, (1, 1), (3, 2, 3)) == (3, 2, 3)),
        ("mwords", M.left(3, m("3 2' 5"), m("4 4' 1")) == m("3 4' 5 4 4' 3")
         and M.right(2, m("1 3' 4 1' 3"), m("3 1 2' 3 1' 1")) == m("2 3' 4 3' 3 3 1 3' 3 3' 1")),
    ]
    out.extend(Check(f"M golden {name}", ok) for name, ok in goldens)
    rels = pr.dias_presentation(gamma).relations
    for k, (name, cls) in enumerate(fa.INSTANCES.items()):
        A = cls(gamma)
        trip = fa.sample_triples(A.m_universe(), count, seed + k)
        bad = fa.relation_failures(rels, fa.pluri_ops(gamma, A.left, A.right), trip)
        law = all(fa.multiassociative_law(A, *t) for t in fa.sample_triples(A.universe(), count, seed + 100 + k))
        out.append(Check(f"M({name}) pluriassociative", not bad and law, f"{len(bad)} failures"))
    S5 = fa.SetsAlgebra(5)
    units = fa.wire_units(S5, S5.universe(5))
    out.append(Check("empty set is the unique wire-unit", units == [(frozenset(), 1)], f"found {units}"))
    return out


# morphisms

ZETA_WITNESS = (
    (1, "(1 (2 (1 _ _) _) _)"),
    (1, "(1 _ (2 _ (1 _ _)))"),
    (-1, "(1 _ (2 _ _) _)"),
    (-1, "(2 (1 _ _) (1 _ _))"),
)


def zeta_witness_image() -> LinComb:
    phi = pr.zeta_map(2)
    out = LinComb()
    for c, text in ZETA_WITNESS:
        t = pr.schroder_to_tree(pr.parse_schroder(text))
        out = out + pr.map_lincomb(LinComb.of(t), phi) * c
    return pr.reduce_mod_relations(out, pr.dendr_concise_presentation(2))


def morphisms_suite(gamma: int = 2) -> list[Check]:
    out = [
        Check("eta is a morphism", pr.morphism_check(pr.eta_map(gamma), pr.dias_presentation(gamma), pr.as_presentation(gamma))),
        Check("zeta is a morphism", pr.morphism_check(pr.zeta_map(gamma), pr.das_simple_presentation(gamma), pr.dendr_concise_presentation(gamma))),
        Check("zeta_2 witness maps to 0", not zeta_witness_image() and len({t for _, t in ZETA_WITNESS}) == 4),
    ]
    D = pr.dendr_presentation(gamma)
    out.append(Check("odot_b associative", all(pr.is_associative(pr.odot(gamma, b), D) for b in range(1, gamma + 1))))
    for fam, P, prefixes in (
        ("as", pr.as_presentation(gamma), ("st",)),
        ("dasS", pr.das_simple_presentation(gamma), ("d",)),
        ("dup", pr.dup_presentation(gamma), ("u", "o")),
    ):
        ok = all(
            pr.is_associative(pr.generator_lincomb(P, [(f"{p}{a}", 1)]), P)
            for p in prefixes
            for a in range(1, gamma + 1)
        )
        out.append(Check(f"{fam} generators associative", ok))
    C = pr.dendr_concise_presentation(gamma)
    out.append(Check("lt1 alone is not associative", not pr.is_associative(pr.generator_lincomb(C, [("lt1", 1)]), C)))
    return out


# series

def series_suite(gamma: int = 2, N: int = 10, order: int = 8) -> list[Check]:
    out = []
    for fam in ("dendr", "das", "tdendr"):
        ok = se.series_solution(fam, gamma, N).as_list() == se.hilbert_series(fam, gamma, N).as_list()
        out.append(Check(f"{fam} functional equation = formula", ok))
    for a, b in se.KOSZUL_PAIRS:
        ok = se.koszul_inverse_check(se.hilbert_series(a, gamma, order), se.hilbert_series(b, gamma, order), order)
        out.append(Check(f"inverse identity ({a}, {b})", ok))
    dias = se.dias_series_expansion(gamma, N)[1:]
    out.append(Check("dias rational form", dias == se.hilbert_series("dias", gamma, N).as_list()))
    asx = se.as_series_expansion(gamma, N)[1:]
    out.append(Check("as rational form", asx == se.hilbert_series("as", gamma, N).as_list()))
    return out


SUITES: dict[str, Callable[..., list[Check]]] = {
    "composition": composition_suite,
    "structure": structure_suite,
    "enumeration": enumeration_suite,
    "kbasis": kbasis_suite,
    "rewrite": rewrite_suite,
    "duals": duals_suite,
    "qdim": qdim_suite,
    "freealg": freealg_suite,
    "minstances": minstances_suite,
    "morphisms": morphisms_suite,
    "series": series_suite,
}

SEEDED = {"freealg", "minstances"}


def run_suite(name: str, gamma: int, seed: int = DEFAULT_SEED) -> list[Check]:
    if name == "all":
        out = []
        for n in SUITES:
            out.extend(run_suite(n, gamma, seed))
        return out
    try:
        fn = SUITES[name]
    except KeyError:
        raise DomainError(f"unknown suite {name!r}; known: all, {', '.join(SUITES)}") from None
    checks = fn(gamma, seed) if name in SEEDED else fn(gamma)
    return [Check(f"{name}: {c.name}", c.ok, c.detail) for c in checks]
