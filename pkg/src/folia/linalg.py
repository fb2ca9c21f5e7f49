"""Sparse exact Gaussian elimination over Q.

Vectors are dicts ``{column: Fraction}``; columns are any mutually
comparable keys. Rows are kept with their pivot as the smallest column, so
eliminating a pivot only introduces larger columns and reduction terminates.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, Iterable, List

Vec = Dict[Hashable, Fraction]


class Echelon:
    """Incrementally maintained row-echelon basis of a subspace."""

    def __init__(self):
        self.rows: Dict[Hashable, Vec] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec: Vec) -> Vec:
        vec = {c: Fraction(a) for c, a in vec.items() if a}
        while True:
            hits = [c for c in vec if c in self.rows]
            if not hits:
                return vec
            c = min(hits)
            a = vec[c]
            for col, b in self.rows[c].items():
                v = vec.get(col, 0) - a * b
                if v:
                    vec[col] = v
                else:
                    vec.pop(col, None)

    def add(self, vec: Vec) -> bool:
        """Insert ``vec``; return False if it was already in the span."""
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        a = r[p]
        self.rows[p] = {c: b / a for c, b in r.items()}
        return True

    def __contains__(self, vec: Vec) -> bool:
        return not self.reduce(vec)


def rank(vectors: Iterable[Vec]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def kernel(vectors: List[Vec]) -> List[List[Fraction]]:
    """Basis of {a : sum a_i * vectors[i] = 0}, as dense coefficient lists."""
    ech = Echelon()
    n = len(vectors)
    out = []
    for i, v in enumerate(vectors):
        aug = {(0, c): a for c, a in v.items()}
        aug[(1, i)] = Fraction(1)
        r = ech.reduce(aug)
        if all(c[0] == 1 for c in r):
            coeffs = [Fraction(0)] * n
            for (_, j), a in r.items():
                coeffs[j] = a
            out.append(coeffs)
        else:
            p = min(r)
            a = r[p]
            ech.rows[p] = {c: b / a for c, b in r.items()}
    return out
