"""Exact sparse linear algebra over the rationals.

Vectors are dicts ``column -> Fraction`` with integer columns. Elimination
keeps every pivot row fully reduced against the others, so the reduced form
of a vector does not depend on the order rows were inserted.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Vector = dict


class Echelon:
    """Incrementally maintained reduced row echelon basis of a row space."""

    def __init__(self, rows: Iterable[Vector] = ()):
        self.pivots: dict[int, Vector] = {}
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: Vector) -> Vector:
        v = {c: Fraction(x) for c, x in vec.items() if x}
        # pivot rows contain no other pivot columns, so one pass suffices
        for c in [c for c in v if c in self.pivots]:
            x = v.get(c)
            if not x:
                continue
            for cc, y in self.pivots[c].items():
                nv = v.get(cc, 0) - x * y
                if nv:
                    v[cc] = nv
                else:
                    v.pop(cc, None)
        return v

    def add(self, vec: Vector) -> bool:
        """Insert a row; return True iff it increased the rank."""
        v = self.reduce(vec)
        if not v:
            return False
        lead = min(v)
        inv = 1 / v[lead]
        v = {c: x * inv for c, x in v.items()}
        for c, row in self.pivots.items():
            x = row.get(lead)
            if x:
                for cc, y in v.items():
                    nv = row.get(cc, 0) - x * y
                    if nv:
                        row[cc] = nv
                    else:
                        row.pop(cc, None)
        self.pivots[lead] = v
        return True

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[Vector]:
        return [dict(self.pivots[c]) for c in sorted(self.pivots)]


def rank(rows: Iterable[Vector]) -> int:
    return Echelon(rows).rank


def nullspace(rows: Iterable[Vector], ncols: int) -> list[Vector]:
    """Basis of {w : <row, w> = 0 for every row}, columns 0..ncols-1."""
    ech = Echelon(rows)
    free = [c for c in range(ncols) if c not in ech.pivots]
    out = []
    for f in free:
        w = {f: Fraction(1)}
        for p, row in ech.pivots.items():
            x = row.get(f)
            if x:
                w[p] = -x
        out.append(w)
    return out


def same_span(a: Iterable[Vector], b: Iterable[Vector]) -> bool:
    ea, eb = Echelon(a), Echelon(b)
    if ea.rank != eb.rank:
        return False
    return all(eb.contains(r) for r in ea.basis())
