"""Ideals and submodules of free modules over a polynomial ring.

Everything is computed from reduced Gröbner bases (see ``_buchberger``):

* membership and normal forms,
* syzygies and kernels through tag components under a block order,
* intersections, quotients and radical membership through an auxiliary
  eliminated variable,
* Krull dimension from maximal independent sets of the leading-term ideal.
"""

from __future__ import annotations

import itertools
import threading
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence

from ._buchberger import Engine
from .polycore import PolyRing, Polynomial, monomials_of_degree


def _poly_to_vec(p: Polynomial, pos: int = 0):
    return {(pos, e): c for e, c in p._terms.items()}


def _vec_to_poly(ring: PolyRing, v, pos: int = 0) -> Polynomial:
    return Polynomial(ring, {e: c for (p, e), c in v.items() if p == pos})


def _ideal_engine(ring: PolyRing) -> Engine:
    mk = ring.monomial_key
    return Engine(lambda t: mk(t[1]))


class Ideal:
    """An ideal given by generators, with a lazily computed reduced Gröbner basis."""

    def __init__(self, ring: PolyRing, generators: Iterable = ()):
        self.ring = ring
        gens = []
        for g in generators:
            g = ring(g)
            if g and g not in gens:
                gens.append(g)
        self.generators: List[Polynomial] = gens
        self._gb: Optional[List[Polynomial]] = None
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    def groebner_basis(self) -> List[Polynomial]:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    eng = _ideal_engine(self.ring)
                    basis = eng.groebner([_poly_to_vec(g) for g in self.generators])
                    self._gb = [_vec_to_poly(self.ring, v) for v in basis]
        return list(self._gb)

    def reduce(self, p: Polynomial) -> Polynomial:
        """Normal form of ``p`` modulo the reduced Gröbner basis."""
        p = self.ring(p)
        eng = _ideal_engine(self.ring)
        basis = [((0, g.leading_monomial()), _poly_to_vec(g)) for g in self.groebner_basis()]
        return _vec_to_poly(self.ring, eng.reduce(_poly_to_vec(p), basis))

    def __contains__(self, p) -> bool:
        return not self.reduce(p)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].is_constant()

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(g in self for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner_basis() == other.groebner_basis()

    __hash__ = None

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.generators + other.generators)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [a * b for a in self.generators for b in other.generators])

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def groebner_basis(I: Ideal) -> List[Polynomial]:
    return I.groebner_basis()


def ideal_member(p: Polynomial, I: Ideal) -> bool:
    if p.ring != I.ring:
        raise ValueError("ring mismatch")
    return p in I


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I == J


# elimination helpers


def _with_front_variable(ring: PolyRing, name: str = "_t"):
    """Ring with one extra variable in front under an elimination order."""
    while name in ring.names:
        name = "_" + name
    big = PolyRing((name,) + ring.names, order="elim", elim=1)
    lift = list(range(1, ring.nvars + 1))
    return big, lift


def _eliminate_front(big: PolyRing, ring: PolyRing, polys: Sequence[Polynomial]) -> List[Polynomial]:
    basis = Ideal(big, polys).groebner_basis()
    out = []
    for g in basis:
        if all(e[0] == 0 for e in g._terms):
            out.append(Polynomial(ring, {e[1:]: c for e, c in g._terms.items()}))
    return out


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I ∩ J as the t-free part of t*I + (1 - t)*J."""
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring)
    big, lift = _with_front_variable(ring)
    t = big.var(0)
    gens = [t * g.change_ring(big, lift) for g in I.generators]
    gens += [(1 - t) * g.change_ring(big, lift) for g in J.generators]
    return Ideal(ring, _eliminate_front(big, ring, gens))


def ideal_quotient(I: Ideal, g: Polynomial) -> Ideal:
    """(I : g) = (I ∩ (g)) / g."""
    g = I.ring(g)
    if not g:
        raise ValueError("quotient by the zero polynomial")
    if I.is_zero():
        return Ideal(I.ring)
    inter = intersect(I, Ideal(I.ring, [g]))
    quot = []
    for h in inter.generators:
        r = h.exact_divide(g)
        if r is None:
            raise ArithmeticError("intersection generator not divisible by g")
        quot.append(r)
    return Ideal(I.ring, quot)


def ideal_quotient_ideal(I: Ideal, G: Ideal) -> Ideal:
    """(I : G) as the intersection of the quotients by each generator of G."""
    if G.is_zero():
        raise ValueError("quotient by the zero ideal")
    result = None
    for g in G.generators:
        q = ideal_quotient(I, g)
        result = q if result is None else intersect(result, q)
    return result


def radical_member(g: Polynomial, I: Ideal) -> bool:
    """Decide g ∈ √I by checking 1 ∈ I + (1 - t*g)."""
    g = I.ring(g)
    if not g:
        return True
    big, lift = _with_front_variable(I.ring)
    t = big.var(0)
    gens = [f.change_ring(big, lift) for f in I.generators]
    gens.append(1 - t * g.change_ring(big, lift))
    return Ideal(big, gens).is_unit()


def radical_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise ValueError("ring mismatch")
    return all(radical_member(g, J) for g in I.generators) and all(
        radical_member(g, I) for g in J.generators
    )


def ideal_dimension(I: Ideal) -> int:
    """Krull dimension of S/I; -1 for the unit ideal."""
    n = I.ring.nvars
    if I.is_zero():
        return n
    if I.is_unit():
        return -1
    supports = [{i for i, a in enumerate(g.leading_monomial()) if a} for g in I.groebner_basis()]
    for size in range(n, -1, -1):
        for U in itertools.combinations(range(n), size):
            U = set(U)
            if not any(s <= U for s in supports):
                return size
    return 0


def graded_piece_dimension(I: Ideal, d: int) -> int:
    """dim_k I_d for a homogeneous ideal, counted on leading monomials."""
    leads = [g.leading_monomial() for g in I.groebner_basis()]
    return sum(
        1
        for e in monomials_of_degree(I.ring.nvars, d)
        if any(all(a <= b for a, b in zip(l, e)) for l in leads)
    )


# free modules


class FreeModuleElement:
    """A vector of polynomials, i.e. an element of S^rank."""

    __slots__ = ("ring", "entries")

    def __init__(self, ring: PolyRing, entries: Sequence):
        self.ring = ring
        self.entries = tuple(ring(e) for e in entries)

    @property
    def rank(self) -> int:
        return len(self.entries)

    @classmethod
    def zero(cls, ring, rank):
        return cls(ring, [ring.zero()] * rank)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other):
        self._check(other)
        return FreeModuleElement(self.ring, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        self._check(other)
        return FreeModuleElement(self.ring, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return FreeModuleElement(self.ring, [-a for a in self.entries])

    def scale(self, f) -> "FreeModuleElement":
        f = self.ring(f)
        return FreeModuleElement(self.ring, [f * a for a in self.entries])

    __rmul__ = scale

    def _check(self, other):
        if self.ring != other.ring or self.rank != other.rank:
            raise ValueError("rank or ring mismatch")

    def __eq__(self, other):
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.ring == other.ring and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "(" + ", ".join(str(e) for e in self.entries) + ")"

    def _vec(self, offset=0):
        v = {}
        for i, p in enumerate(self.entries):
            for e, c in p._terms.items():
                v[(i + offset, e)] = c
        return v


def _top_engine(ring: PolyRing) -> Engine:
    mk = ring.monomial_key
    return Engine(lambda t: (mk(t[1]), -t[0]), module=True)


def _tagged_engine(ring: PolyRing, nmain: int) -> Engine:
    """Block order: every main-position term beats every tag-position term."""
    mk = ring.monomial_key
    return Engine(lambda t: (t[0] < nmain, mk(t[1]), -t[0]), module=True)


def _vec_to_element(ring, v, start, stop) -> FreeModuleElement:
    entries = [dict() for _ in range(stop - start)]
    for (p, e), c in v.items():
        if start <= p < stop:
            entries[p - start][e] = c
    return FreeModuleElement(ring, [Polynomial(ring, d) for d in entries])


class Submodule:
    """Submodule of S^rank generated by a list of vectors."""

    def __init__(self, ring: PolyRing, rank: int, generators: Iterable[FreeModuleElement] = ()):
        self.ring = ring
        self.rank = rank
        gens = []
        for g in generators:
            if g.rank != rank or g.ring != ring:
                raise ValueError("generator rank or ring mismatch")
            if not g.is_zero() and g not in gens:
                gens.append(g)
        self.generators: List[FreeModuleElement] = gens
        self._gb = None
        self._lock = threading.Lock()

    def groebner_basis(self) -> List[FreeModuleElement]:
        """Reduced basis for the term-over-position extension of the ring order."""
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    eng = _top_engine(self.ring)
                    basis = eng.groebner([g._vec() for g in self.generators])
                    self._gb = [_vec_to_element(self.ring, v, 0, self.rank) for v in basis]
        return list(self._gb)

    def reduce(self, v: FreeModuleElement) -> FreeModuleElement:
        eng = _top_engine(self.ring)
        basis = eng.with_leads([g._vec() for g in self.groebner_basis()])
        return _vec_to_element(self.ring, eng.reduce(v._vec(), basis), 0, self.rank)

    def __contains__(self, v: FreeModuleElement) -> bool:
        if v.rank != self.rank:
            raise ValueError("rank mismatch")
        return self.reduce(v).is_zero()

    def contains_module(self, other: "Submodule") -> bool:
        return all(g in self for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.rank == other.rank
            and self.contains_module(other)
            and other.contains_module(self)
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.generators

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens={self.generators})"


def _tagged_basis(ring, gens: Sequence[FreeModuleElement], rank: int):
    """Gröbner basis of {(g_i, e_i)} in S^(rank + len(gens)) under the block order."""
    n = len(gens)
    vecs = []
    for i, g in enumerate(gens):
        v = g._vec()
        v[(rank + i, (0,) * ring.nvars)] = Fraction(1)
        vecs.append(v)
    eng = _tagged_engine(ring, rank)
    return eng, eng.groebner(vecs), n


def syzygies(gens: Sequence[FreeModuleElement]) -> Submodule:
    """First syzygy module of ``gens`` (a submodule of S^len(gens))."""
    if not gens:
        raise ValueError("need at least one generator")
    ring, rank = gens[0].ring, gens[0].rank
    if any(g.rank != rank or g.ring != ring for g in gens):
        raise ValueError("generators must share ring and rank")
    eng, basis, n = _tagged_basis(ring, gens, rank)
    syz = []
    for v in basis:
        if eng.lead(v)[0] >= rank:
            syz.append(_vec_to_element(ring, v, rank, rank + n))
    return Submodule(ring, n, syz)


def module_kernel(columns: Sequence[FreeModuleElement]) -> Submodule:
    """Kernel of the map S^a -> S^b whose i-th column is ``columns[i]``."""
    return syzygies(columns)


def submodule_member(v: FreeModuleElement, M: Submodule) -> Optional[List[Polynomial]]:
    """Cofactors c with v = sum c_i * M.generators[i], or None if v is not in M."""
    if v.rank != M.rank:
        raise ValueError("rank mismatch")
    ring = M.ring
    if v.is_zero():
        return [ring.zero()] * len(M.generators)
    if not M.generators:
        return None
    eng, basis, n = _tagged_basis(ring, M.generators, M.rank)
    reducers = [(eng.lead(b), b) for b in basis if eng.lead(b)[0] < M.rank]
    rem = eng.reduce(v._vec(), reducers, full=True)
    if any(p < M.rank for p, _ in rem):
        return None
    tag = _vec_to_element(ring, rem, M.rank, M.rank + n)
    return [-c for c in tag.entries]


def module_quotient(M: Submodule, v: FreeModuleElement) -> Ideal:
    """The ideal {h : h*v ∈ M}, read off a tag attached to v alone."""
    if v.rank != M.rank:
        raise ValueError("rank mismatch")
    ring = M.ring
    if v.is_zero():
        return Ideal.unit(ring)
    vecs = [g._vec() for g in M.generators]
    tagged = v._vec()
    tagged[(M.rank, (0,) * ring.nvars)] = Fraction(1)
    vecs.append(tagged)
    eng = _tagged_engine(ring, M.rank)
    basis = eng.groebner(vecs)
    gens = [_vec_to_poly(ring, b, M.rank) for b in basis if eng.lead(b)[0] == M.rank]
    return Ideal(ring, gens)
