"""Words over {0, ..., gamma}: the operad T(M_gamma) and its suboperads.

The monoid M_gamma is {0, ..., gamma} under max. Composing ``v`` into the
``i``-th letter of ``u`` lifts every letter of ``v`` by ``u_i`` with max.
Dias_gamma is the set of words with exactly one 0, Trias_gamma the set of
words with at least one 0. This module also implements the K-basis of
Dias_gamma obtained by Moebius inversion over the letterwise order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lincomb import LinComb

MAX_GAMMA = 64


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


@dataclass(frozen=True, slots=True)
class GammaWord:
    gamma: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.gamma <= MAX_GAMMA:
            raise DomainError(f"gamma must lie in [0, {MAX_GAMMA}], got {self.gamma}")
        if not self.letters:
            raise DomainError("a word has at least one letter")
        for l in self.letters:
            if not 0 <= l <= self.gamma:
                raise DomainError(f"letter {l} outside [0, {self.gamma}]")

    @property
    def arity(self) -> int:
        return len(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __getitem__(self, i: int) -> int:
        return self.letters[i]

    def sort_key(self) -> tuple:
        return (len(self.letters), self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters, self.gamma)


def format_letters(letters: Sequence[int], gamma: int) -> str:
    if gamma <= 9:
        return "".join(str(l) for l in letters)
    return ",".join(str(l) for l in letters)


def parse_word(text: str, gamma: int) -> GammaWord:
    """Parse ``20413`` or ``10,0,12``. Bare digits are only allowed for gamma <= 9."""
    text = text.strip()
    if "," in text or " " in text:
        parts = [p for p in text.replace(",", " ").split()]
        try:
            letters = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise DomainError(f"cannot parse word {text!r}") from exc
    else:
        if not text.isdigit():
            raise DomainError(f"cannot parse word {text!r}")
        if gamma > 9 and len(text) > 1:
            raise DomainError(f"ambiguous word {text!r} for gamma > 9; use commas")
        letters = tuple(int(ch) for ch in text)
    return GammaWord(gamma, letters)


def word(text_or_letters: str | Iterable[int], gamma: int) -> GammaWord:
    if isinstance(text_or_letters, str):
        return parse_word(text_or_letters, gamma)
    return GammaWord(gamma, tuple(text_or_letters))


def tm_compose(u: GammaWord, i: int, v: GammaWord) -> GammaWord:
    if u.gamma != v.gamma:
        raise DomainError(f"gamma mismatch: {u.gamma} vs {v.gamma}")
    if not 1 <= i <= u.arity:
        raise DomainError(f"position {i} out of range 1..{u.arity}")
    ui = u.letters[i - 1]
    mid = tuple(max(ui, b) for b in v.letters)
    return GammaWord(u.gamma, u.letters[: i - 1] + mid + u.letters[i:])


def full_compose(x: GammaWord, ys: Sequence[GammaWord]) -> GammaWord:
    """x o (y_1, ..., y_n), composing from the last position to the first."""
    if len(ys) != x.arity:
        raise DomainError("need one word per letter")
    out = x
    for i in range(x.arity, 0, -1):
        out = tm_compose(out, i, ys[i - 1])
    return out


def is_dias_element(w: GammaWord) -> bool:
    return w.letters.count(0) == 1


def is_trias_element(w: GammaWord) -> bool:
    return 0 in w.letters


def enumerate_words(family: str, gamma: int, n: int) -> list[GammaWord]:
    if n < 1:
        raise DomainError("arity must be >= 1")
    if family == "dias":
        keep = is_dias_element
    elif family == "trias":
        keep = is_trias_element
    elif family == "all":
        keep = lambda w: True  # noqa: E731
    else:
        raise DomainError(f"unknown word family {family!r}")
    out = []
    for letters in itertools.product(range(gamma + 1), repeat=n):
        w = GammaWord(gamma, letters)
        if keep(w):
            out.append(w)
    return out


def mirror(w: GammaWord) -> GammaWord:
    return GammaWord(w.gamma, w.letters[::-1])


def root(w: GammaWord) -> int:
    if not is_dias_element(w):
        raise DomainError(f"{w} is not a Dias element")
    return w.letters.index(0) + 1


def _require_dias(x: GammaWord) -> None:
    if not is_dias_element(x):
        raise DomainError(f"{x} is not a Dias element")


def compose_lin(x: LinComb, i: int, y: LinComb) -> LinComb:
    """Bilinear extension of tm_compose."""
    return x.bilinear(y, lambda a, b: tm_compose(a, i, b))


# K-basis. A K-basis element is stored as the GammaWord indexing it, so a
# LinComb whose keys are read "in the K-basis" has the same shape as a word sum.

def kbasis_expand(x: GammaWord) -> LinComb:
    """K_x written in the word basis."""
    _require_dias(x)
    g = x.gamma
    movable = [p for p, l in enumerate(x.letters) if 1 <= l <= g - 1]
    terms = []
    for r in range(len(movable) + 1):
        for subset in itertools.combinations(movable, r):
            letters = list(x.letters)
            for p in subset:
                letters[p] += 1
            terms.append((GammaWord(g, tuple(letters)), (-1) ** r))
    return LinComb(terms)


def upper_set(x: GammaWord) -> list[GammaWord]:
    """All x' with x <= x' letterwise (the zero stays in place)."""
    ranges = [(0,) if l == 0 else range(l, x.gamma + 1) for l in x.letters]
    return [GammaWord(x.gamma, t) for t in itertools.product(*ranges)]


def kbasis_contract(c: LinComb | GammaWord) -> LinComb:
    """Rewrite a word-basis element in the K-basis."""
    if isinstance(c, GammaWord):
        c = LinComb.of(c)
    for w in c.keys():
        _require_dias(w)
    return c.linear(lambda w: LinComb((u, 1) for u in upper_set(w)))


def kbasis_to_words(c: LinComb) -> LinComb:
    """Inverse of kbasis_contract: expand each K_x in the word basis."""
    return c.linear(kbasis_expand)


def min_nonzero(y: GammaWord) -> int:
    nz = [l for l in y.letters if l]
    if not nz:
        raise DomainError(f"{y} has no nonzero letter")
    return min(nz)


def kbasis_compose(x: GammaWord, i: int, y: GammaWord) -> LinComb:
    """K_x o_i K_y in the K-basis, by the three-case closed form."""
    _require_dias(x)
    _require_dias(y)
    if x.arity < 2 or y.arity < 2:
        raise DomainError("K-basis composition needs arities >= 2")
    if not 1 <= i <= x.arity:
        raise DomainError(f"position {i} out of range 1..{x.arity}")
    xi = x.letters[i - 1]
    m = min_nonzero(y)
    base = tm_compose(x, i, y)
    if m > xi:
        return LinComb.of(base)
    if m < xi:
        return LinComb()
    zero_at = i - 1 + y.letters.index(0)
    terms = []
    for a in range(xi, x.gamma + 1):
        letters = list(base.letters)
        letters[zero_at] = a
        terms.append((GammaWord(x.gamma, tuple(letters)), 1))
    return LinComb(terms)


def kbasis_compose_by_conjugation(x: GammaWord, i: int, y: GammaWord) -> LinComb:
    """Reference route: expand both operands, compose words, contract back."""
    return kbasis_contract(compose_lin(kbasis_expand(x), i, kbasis_expand(y)))
