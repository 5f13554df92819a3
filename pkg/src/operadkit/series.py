"""Dimension formulas, structure counters and Hilbert series.

Series are truncated power series without constant term, stored as exact
coefficients c_1..c_N. Composition and the inverse identity between an
operad and its Koszul dual are computed over Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Callable, Iterator, Sequence

from .words import DomainError

ENUM_GUARD = 8
DEFAULT_N = 10


def catalan(n: int) -> int:
    if n < 1:
        raise DomainError("catalan needs n >= 1")
    return comb(2 * n, n) // (n + 1)


def narayana(n: int, k: int) -> int:
    if n < 1 or not 0 <= k <= n - 1:
        raise DomainError(f"narayana needs n >= 1 and 0 <= k <= n-1, got ({n}, {k})")
    return comb(n - 1, k) * comb(n, k) // (k + 1)


def schroeder(n: int) -> int:
    """Number of Schroder trees with n leaves."""
    if n < 1:
        raise DomainError("schroeder needs n >= 1")
    if n == 1:
        return 1
    return sum(2**k * narayana(n - 1, k) for k in range(n - 1))


def _dias(g: int, n: int) -> int:
    return n * g ** (n - 1)


def _dendr(g: int, n: int) -> int:
    return g ** (n - 1) * catalan(n)


def _as(g: int, n: int) -> int:
    return 1 if n == 1 else g


def _das(g: int, n: int) -> int:
    if n == 1:
        return 1
    return sum(g ** (k + 1) * (g - 1) ** (n - k - 2) * narayana(n - 1, k) for k in range(n - 1))


def _trias(g: int, n: int) -> int:
    return (g + 1) ** n - g**n


def _tdendr(g: int, n: int) -> int:
    return sum((g + 1) ** k * g ** (n - k - 1) * narayana(n, k) for k in range(n))


FORMULAS: dict[str, Callable[[int, int], int]] = {
    "dias": _dias,
    "dendr": _dendr,
    "dup": _dendr,
    "as": _as,
    "das": _das,
    "trias": _trias,
    "tdendr": _tdendr,
}

# presentations sharing a family's dimensions
ALIASES = {"diasK": "dias", "dendrC": "dendr", "dasS": "das"}


def family_of(name: str) -> str:
    base = name.split(":")[0]
    base = ALIASES.get(base, base)
    if base not in FORMULAS:
        raise DomainError(f"unknown operad {name!r}; known: {', '.join(FORMULAS)}")
    return base


def dim_formula(operad: str, gamma: int, n: int) -> int:
    fam = family_of(operad)
    if gamma < 0:
        raise DomainError("gamma must be nonnegative")
    if n < 1:
        raise DomainError("arity must be >= 1")
    return FORMULAS[fam](gamma, n)


@dataclass(frozen=True)
class IntSeries:
    """Coefficients c_1..c_N of a series with zero constant term."""

    coeffs: tuple

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int):
        if n == 0:
            return 0
        return self.coeffs[n - 1]

    def as_list(self) -> list:
        return list(self.coeffs)

    def __str__(self) -> str:
        return " ".join(str(c) for c in self.coeffs)


def hilbert_series(operad: str, gamma: int, N: int = DEFAULT_N) -> IntSeries:
    return IntSeries(tuple(dim_formula(operad, gamma, n) for n in range(1, N + 1)))


def solve_quadratic_series(p, q, r, N: int = DEFAULT_N, square_has_t: bool = True) -> IntSeries:
    """Solve H = p t + q t H + r t^e H^2 coefficientwise (e = 1, or 0 for the DAs form)."""
    if N < 1:
        raise DomainError("N must be >= 1")
    c = [Fraction(0)] * (N + 1)
    for n in range(1, N + 1):
        v = Fraction(p) if n == 1 else Fraction(0)
        v += q * c[n - 1]
        m = n - 1 if square_has_t else n
        v += r * sum(c[i] * c[m - i] for i in range(1, m))
        c[n] = v
    return IntSeries(tuple(int(x) if x.denominator == 1 else x for x in c[1:]))


def functional_equation(operad: str, gamma: int) -> tuple[tuple, bool]:
    """The quadratic equation (p, q, r), square_has_t satisfied by a Hilbert series."""
    fam = family_of(operad)
    g = gamma
    if fam in ("dendr", "dup"):
        return (1, 2 * g, g * g), True
    if fam == "das":
        return (1, 1, g - 1), False
    if fam == "tdendr":
        return (1, 2 * g + 1, g * (g + 1)), True
    raise DomainError(f"no quadratic functional equation recorded for {operad!r}")


def series_solution(operad: str, gamma: int, N: int = DEFAULT_N) -> IntSeries:
    (p, q, r), square_has_t = functional_equation(operad, gamma)
    return solve_quadratic_series(p, q, r, N, square_has_t)


# truncated polynomial arithmetic, index = degree

def _mul(a: Sequence[Fraction], b: Sequence[Fraction], N: int) -> list[Fraction]:
    out = [Fraction(0)] * (N + 1)
    for i, x in enumerate(a):
        if not x or i > N:
            continue
        for j in range(0, N + 1 - i):
            if j < len(b) and b[j]:
                out[i + j] += x * b[j]
    return out


def compose(f: Sequence, g: Sequence, N: int) -> list[Fraction]:
    """f(g(t)) mod t^{N+1}; both given as full coefficient lists from degree 0, g[0] = 0."""
    if g and g[0]:
        raise DomainError("inner series needs a zero constant term")
    out = [Fraction(0)] * (N + 1)
    for k in range(min(len(f) - 1, N), -1, -1):
        out = _mul(out, g, N)
        out[0] += Fraction(f[k])
    return out


def _full(s: IntSeries) -> list[Fraction]:
    return [Fraction(0)] + [Fraction(c) for c in s.coeffs]


def koszul_inverse_check(H: IntSeries, K: IntSeries, N: int) -> bool:
    """True iff H(-K(-t)) = t modulo t^{N+1}."""
    if H.order < N or K.order < N:
        raise DomainError("both series are needed to order N")
    k = _full(K)[: N + 1]
    inner = [-(c * (-1) ** n) for n, c in enumerate(k)]
    res = compose(_full(H)[: N + 1], inner, N)
    return res == [Fraction(0), Fraction(1)] + [Fraction(0)] * (N - 1)


def rational_expansion(num: Sequence[int], den: Sequence[int], N: int) -> list[Fraction]:
    """Coefficients 0..N of num/den, den[0] != 0."""
    if not den or den[0] == 0:
        raise DomainError("denominator needs a nonzero constant term")
    out = []
    for n in range(N + 1):
        v = Fraction(num[n]) if n < len(num) else Fraction(0)
        for j in range(1, min(n, len(den) - 1) + 1):
            v -= den[j] * out[n - j]
        out.append(v / den[0])
    return out


def dias_series_expansion(gamma: int, N: int) -> list[Fraction]:
    """t / (1 - gamma t)^2."""
    return rational_expansion([0, 1], [1, -2 * gamma, gamma * gamma], N)


def as_series_expansion(gamma: int, N: int) -> list[Fraction]:
    """(t + (gamma - 1) t^2) / (1 - t)."""
    return rational_expansion([0, 1, gamma - 1], [1, -1], N)


# counters by exhaustive shape generation

@lru_cache(maxsize=None)
def _binary_shapes(n: int) -> tuple:
    """Binary trees with n internal nodes as nested pairs; None is a leaf."""
    if n == 0:
        return (None,)
    out = []
    for k in range(n):
        for l in _binary_shapes(k):
            for r in _binary_shapes(n - 1 - k):
                out.append((l, r))
    return tuple(out)


@lru_cache(maxsize=None)
def _schroder_shapes(leaves: int) -> tuple:
    """Schroder trees with the given number of leaves as nested tuples; () is a leaf."""
    if leaves == 1:
        return ((),)
    out = []
    for parts in _compositions(leaves):
        for kids in _products([_schroder_shapes(m) for m in parts]):
            out.append(kids)
    return tuple(out)


def _compositions(n: int) -> Iterator[tuple[int, ...]]:
    def rec(rest: int) -> Iterator[tuple[int, ...]]:
        if rest == 0:
            yield ()
            return
        for first in range(1, rest + 1):
            for tail in rec(rest - first):
                yield (first,) + tail

    return (c for c in rec(n) if len(c) >= 2)


def _products(lists: Sequence[Sequence]) -> Iterator[tuple]:
    if not lists:
        yield ()
        return
    for x in lists[0]:
        for rest in _products(lists[1:]):
            yield (x,) + rest


def _schroder_nodes(s: tuple) -> int:
    return 0 if not s else 1 + sum(_schroder_nodes(c) for c in s)


def _count_evbt(g: int, n: int) -> int:
    # every binary tree with n nodes has n - 1 internal edges, each labeled in [g]
    return sum(g ** (n - 1) for _ in _binary_shapes(n))


def _count_alt_schroder(g: int, n: int) -> int:
    # root label free, every other node avoids its parent's label
    total = 0
    for s in _schroder_shapes(n):
        k = _schroder_nodes(s)
        total += 1 if k == 0 else g * (g - 1) ** (k - 1)
    return total


def _count_ev_schroder(g: int, n: int) -> int:
    # Schroder trees with n + 1 leaves; edges between internal nodes labeled in [g]
    return sum(g ** (_schroder_nodes(s) - 1) for s in _schroder_shapes(n + 1))


def _count_hook(g: int, n: int) -> int:
    from .trees import generate_hook_trees

    return sum(1 for _ in generate_hook_trees(g, n))


def _count_ext_hook(g: int, n: int) -> int:
    from .trees import generate_extended_hook_trees

    return sum(1 for _ in generate_extended_hook_trees(g, n))


COUNTERS: dict[str, Callable[[int, int], int]] = {
    "evbt": _count_evbt,
    "alt_schroder": _count_alt_schroder,
    "ev_schroder": _count_ev_schroder,
    "hook": _count_hook,
    "ext_hook": _count_ext_hook,
}

# which operad each counted structure indexes
COUNTED_FAMILY = {"evbt": "dendr", "alt_schroder": "das", "ev_schroder": "tdendr", "hook": "dias", "ext_hook": "trias"}


def count_structures(kind: str, gamma: int, n: int) -> int:
    if kind not in COUNTERS:
        raise DomainError(f"unknown structure {kind!r}; known: {', '.join(COUNTERS)}")
    if not 1 <= n <= ENUM_GUARD:
        raise DomainError(f"n must lie in [1, {ENUM_GUARD}] for enumeration, got {n}")
    if gamma < 1:
        raise DomainError("gamma must be >= 1")
    return COUNTERS[kind](gamma, n)


KOSZUL_PAIRS = (("dias", "dendr"), ("as", "das"), ("trias", "tdendr"))
