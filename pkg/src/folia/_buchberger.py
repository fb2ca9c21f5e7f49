"""Buchberger's algorithm on sparse vectors over Q[x].

A vector is a dict mapping terms ``(position, exponent)`` to nonzero
Fractions; ideals are the rank-one case (position always 0). The caller
supplies the term order as a key function on terms, so the same engine
serves polynomial orders, term-over-position module orders and the block
orders used for tag-component eliminations.

Pairs are pruned with the Gebauer-Moeller criteria. The coprime (product)
criterion is only valid for ideals and is switched off for modules.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, List, Sequence, Tuple

from .limits import ResourceLimitError, current

Term = Tuple[int, Tuple[int, ...]]
Vector = Dict[Term, Fraction]


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(x if x >= y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class Engine:
    """Gröbner basis engine for one fixed term order.

    Parameters
    ----------
    key
        Maps a term ``(pos, exp)`` to a sortable tuple; larger means bigger.
    module
        Disables the product criterion when True.
    """

    def __init__(self, key: Callable[[Term], tuple], module: bool = False):
        self._key_fn = key
        self._keys: Dict[Term, tuple] = {}
        self.module = module
        self.spairs = 0

    def key(self, t: Term) -> tuple:
        k = self._keys.get(t)
        if k is None:
            k = self._keys[t] = self._key_fn(t)
        return k

    def lead(self, v: Vector) -> Term:
        return max(v, key=self.key)

    # reduction

    def reduce(self, f: Vector, basis: Sequence[Tuple[Term, Vector]], full: bool = True) -> Vector:
        """Normal form of ``f`` modulo monic ``basis`` given as (leading term, vector)."""
        f = dict(f)
        rem: Vector = {}
        key = self.key
        while f:
            t = max(f, key=key)
            c = f[t]
            pos, e = t
            for (gpos, ge), g in basis:
                if gpos == pos and _divides(ge, e):
                    m = tuple(a - b for a, b in zip(e, ge))
                    for (p2, e2), k in g.items():
                        s = (p2, tuple(a + b for a, b in zip(m, e2)))
                        v = f.get(s, 0) - c * k
                        if v:
                            f[s] = v
                        else:
                            del f[s]
                    break
            else:
                if not full:
                    rem.update(f)
                    return rem
                rem[t] = c
                del f[t]
        return rem

    def monic(self, v: Vector) -> Tuple[Term, Vector]:
        t = self.lead(v)
        c = v[t]
        if c != 1:
            v = {s: a / c for s, a in v.items()}
        return t, v

    def spoly(self, a: Tuple[Term, Vector], b: Tuple[Term, Vector]) -> Vector:
        (pos, ea), va = a
        (_, eb), vb = b
        lcm = _lcm(ea, eb)
        ma = tuple(x - y for x, y in zip(lcm, ea))
        mb = tuple(x - y for x, y in zip(lcm, eb))
        out: Vector = {}
        for (p, e), c in va.items():
            out[(p, tuple(x + y for x, y in zip(ma, e)))] = c
        for (p, e), c in vb.items():
            s = (p, tuple(x + y for x, y in zip(mb, e)))
            v = out.get(s, 0) - c
            if v:
                out[s] = v
            else:
                del out[s]
        return out

    # main loop

    def groebner(self, vectors: Sequence[Vector]) -> List[Vector]:
        """Reduced Gröbner basis, monic and sorted by decreasing leading term."""
        max_spairs = current().max_spairs
        G: List[Tuple[Term, Vector]] = []
        active: List[int] = []
        pairs: Dict[Tuple[int, int], Term] = {}

        def pair_lcm(i, j):
            (p, a), (_, b) = G[i][0], G[j][0]
            return (p, _lcm(a, b))

        def update(h):
            hpos, he = G[h][0]
            cands = [g for g in active if G[g][0][0] == hpos]
            C = [(g, pair_lcm(g, h)) for g in cands]
            D = []
            while C:
                g1, l1 = C.pop(0)
                cop = not self.module and _coprime(G[g1][0][1], he)
                if cop or not any(_divides(l2[1], l1[1]) for _, l2 in C) and not any(
                    _divides(l2[1], l1[1]) for _, l2, _ in D
                ):
                    D.append((g1, l1, cop))
            new_pairs = {(g, h): l for g, l, cop in D if not cop}
            kept = {}
            for (i, j), l in pairs.items():
                if l[0] == hpos and _divides(he, l[1]):
                    if pair_lcm(i, h) != l and pair_lcm(j, h) != l:
                        continue
                kept[(i, j)] = l
            kept.update(new_pairs)
            active[:] = [g for g in active if not (G[g][0][0] == hpos and _divides(he, G[g][0][1]))]
            active.append(h)
            return kept

        start = [v for v in vectors if v]
        start.sort(key=lambda v: self.key(self.lead(v)))
        for v in start:
            r = self.reduce(v, [G[g] for g in active])
            if not r:
                continue
            G.append(self.monic(r))
            pairs = update(len(G) - 1)

        while pairs:
            ij = min(pairs, key=lambda p: (sum(pairs[p][1]), self.key(pairs[p]), p))
            del pairs[ij]
            self.spairs += 1
            if self.spairs > max_spairs:
                raise ResourceLimitError(f"S-pair budget of {max_spairs} exhausted")
            s = self.spoly(G[ij[0]], G[ij[1]])
            r = self.reduce(s, [G[g] for g in active])
            if r:
                G.append(self.monic(r))
                pairs = update(len(G) - 1)

        basis = [G[g] for g in active]
        reduced = []
        for i, (t, v) in enumerate(basis):
            others = basis[:i] + basis[i + 1:]
            tail = {s: c for s, c in v.items() if s != t}
            tail = self.reduce(tail, others)
            tail[t] = v[t]
            reduced.append((t, tail))
        reduced.sort(key=lambda tv: self.key(tv[0]), reverse=True)
        return [v for _, v in reduced]

    def with_leads(self, basis: Sequence[Vector]) -> List[Tuple[Term, Vector]]:
        return [(self.lead(v), v) for v in basis]
