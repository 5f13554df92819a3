"""Finite formal sums with exact rational coefficients.

Keys are any hashable objects exposing ``sort_key()``; iteration is always
in ``sort_key`` order so that serialization is deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator


def to_fraction(c: Any) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c.strip())
    return Fraction(c)


def format_coef(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


class LinComb:
    """Immutable finite map key -> nonzero Fraction."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | Iterable[tuple[Any, Any]] | None = None):
        acc: dict = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                c = to_fraction(c)
                if c:
                    acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _make(cls, terms: dict) -> "LinComb":
        # terms already hold Fraction values
        out = cls.__new__(cls)
        out._terms = {k: c for k, c in terms.items() if c}
        out._hash = None
        return out

    @classmethod
    def of(cls, key: Any, coef: Any = 1) -> "LinComb":
        return cls([(key, coef)])

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    def items(self) -> list[tuple[Any, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def keys(self) -> list:
        return [k for k, _ in self.items()]

    def coef(self, key: Any) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def __iter__(self) -> Iterator[tuple[Any, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, key: Any) -> bool:
        return key in self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            if other == 0:
                return self
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LinComb._make(out)

    __radd__ = __add__

    def __neg__(self) -> "LinComb":
        return LinComb._make({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __mul__(self, scalar: Any) -> "LinComb":
        s = to_fraction(scalar)
        return LinComb._make({k: s * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def map_keys(self, f: Callable[[Any], Any]) -> "LinComb":
        """Apply ``f`` to every key; a ``None`` image drops the term."""
        out: dict = {}
        for k, c in self._terms.items():
            fk = f(k)
            if fk is not None:
                out[fk] = out.get(fk, 0) + c
        return LinComb._make(out)

    def bilinear(self, other: "LinComb", f: Callable[[Any, Any], Any]) -> "LinComb":
        """Extend ``f`` bilinearly; ``f`` may return a key, a LinComb or None."""
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                r = f(k1, k2)
                if r is None:
                    continue
                if isinstance(r, LinComb):
                    for k, c in r._terms.items():
                        out[k] = out.get(k, 0) + c1 * c2 * c
                else:
                    out[r] = out.get(r, 0) + c1 * c2
        return LinComb._make(out)

    def linear(self, f: Callable[[Any], Any]) -> "LinComb":
        """Extend ``f`` linearly; ``f`` may return a key, a LinComb or None."""
        out: dict = {}
        for k1, c1 in self._terms.items():
            r = f(k1)
            if r is None:
                continue
            if isinstance(r, LinComb):
                for k, c in r._terms.items():
                    out[k] = out.get(k, 0) + c1 * c
            else:
                out[r] = out.get(r, 0) + c1
        return LinComb._make(out)

    def to_text(self, key_str: Callable[[Any], str] = str) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.items():
            sign = "+" if c > 0 else "-"
            parts.append(f"{sign}{format_coef(abs(c))}*{key_str(k)}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LinComb({self.to_text()})"

    __str__ = to_text


def parse_lincomb(text: str, parse_key: Callable[[str], Any]) -> LinComb:
    """Parse ``+1*102 -1/2*202`` style text; a bare key means coefficient 1."""
    text = text.strip()
    if text == "0":
        return LinComb()
    terms = []
    for tok in text.split():
        sign = 1
        if tok[0] in "+-":
            sign = -1 if tok[0] == "-" else 1
            tok = tok[1:]
        if "*" in tok:
            c, k = tok.split("*", 1)
        else:
            c, k = "1", tok
        terms.append((parse_key(k), sign * Fraction(c)))
    return LinComb(terms)
