"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is an immutable map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients, attached to a :class:`PolyRing`
that fixes the variable names and the monomial order.

The zero polynomial has ``homogeneous_degree() == 0`` by convention, so that
graded maps accept it.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

Rational = Fraction
Monomial = Tuple[int, ...]

ORDERS = ("degrevlex", "lex", "elim")


def _degrevlex_key(e: Monomial) -> tuple:
    return (sum(e), tuple(-a for a in reversed(e)))


def _lex_key(e: Monomial) -> tuple:
    return e


class PolyRing:
    """Polynomial ring Q[x_0, ..., x_{n-1}] with a fixed monomial order.

    ``order`` is one of ``"degrevlex"``, ``"lex"`` or ``"elim"``. The
    elimination order compares the first ``elim`` variables by degrevlex and
    breaks ties with degrevlex on the remaining ones, so any monomial that
    involves an eliminated variable beats every monomial that does not.
    """

    __slots__ = ("names", "order", "elim", "nvars", "_key")

    def __init__(self, names: Sequence[str], order: str = "degrevlex", elim: int = 0):
        names = tuple(names)
        if not names:
            raise ValueError("a ring needs at least one variable")
        if any(not n for n in names) or len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct and nonempty: {names}")
        if order not in ORDERS:
            raise ValueError(f"unknown monomial order {order!r}")
        if order == "elim" and not 0 < elim < len(names):
            raise ValueError("elimination block must be a proper nonempty prefix")
        self.names = names
        self.order = order
        self.elim = elim if order == "elim" else 0
        self.nvars = len(names)
        if order == "degrevlex":
            key = _degrevlex_key
        elif order == "lex":
            key = _lex_key
        else:
            k = self.elim

            def key(e, k=k):
                return (_degrevlex_key(e[:k]), _degrevlex_key(e[k:]))
        self._key = lru_cache(maxsize=None)(key)

    def monomial_key(self, e: Monomial) -> tuple:
        """Sort key; a larger key means a larger monomial."""
        return self._key(e)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.order == other.order
            and self.elim == other.elim
        )

    def __hash__(self):
        return hash((self.names, self.order, self.elim))

    def __repr__(self):
        extra = f", elim={self.elim}" if self.order == "elim" else ""
        return f"PolyRing({list(self.names)!r}, order={self.order!r}{extra})"

    def with_order(self, order: str, elim: int = 0) -> "PolyRing":
        return PolyRing(self.names, order, elim)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}") from None

    # constructors

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> Tuple["Polynomial", ...]:
        return tuple(self.var(i) for i in range(self.nvars))

    def monomial(self, e: Sequence[int], c=1) -> "Polynomial":
        e = tuple(e)
        if len(e) != self.nvars or any(a < 0 for a in e):
            raise ValueError(f"bad exponent vector {e} for {self.nvars} variables")
        c = Fraction(c)
        return Polynomial(self, {e: c} if c else {})

    def __call__(self, value) -> "Polynomial":
        """Coerce an int, Fraction or Polynomial of this ring."""
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise ValueError("polynomial belongs to a different ring")
            return value
        return self.constant(value)


def monomials_of_degree(nvars: int, d: int) -> Iterator[Monomial]:
    """All exponent tuples of total degree ``d``, in lex-descending order."""
    if nvars == 1:
        yield (d,)
        return
    for a in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - a):
            yield (a,) + rest


class Polynomial:
    """An immutable sparse polynomial.

    Terms are stored in a dict keyed by exponent tuples; zero coefficients
    are never stored. Iteration follows the ring's monomial order, largest
    term first.
    """

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Monomial, Fraction]):
        self.ring = ring
        self._terms = terms
        self._hash = None

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Iterable[Tuple[Sequence[int], object]]):
        acc: Dict[Monomial, Fraction] = {}
        for e, c in terms:
            e = tuple(e)
            if len(e) != ring.nvars:
                raise ValueError("exponent length does not match the ring")
            acc[e] = acc.get(e, Fraction(0)) + Fraction(c)
        return cls(ring, {e: c for e, c in acc.items() if c})

    # basic access

    @property
    def terms(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs, largest monomial first."""
        key = self.ring.monomial_key
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.ring.nvars, Fraction(0))

    def leading_term(self) -> Tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        key = self.ring.monomial_key
        e = max(self._terms, key=key)
        return e, self._terms[e]

    def leading_monomial(self) -> Monomial:
        return self.leading_term()[0]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_degree(self) -> Optional[int]:
        """Common total degree of all terms, ``None`` if inhomogeneous; 0 for zero."""
        degs = {sum(e) for e in self._terms}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    def variables(self) -> Tuple[int, ...]:
        """Indices of variables that occur."""
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        return tuple(sorted(used))

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self * (1 / self.leading_coefficient())

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return Polynomial(self.ring, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Monomial, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_term(self, e: Monomial, c) -> "Polynomial":
        if not c:
            return self.ring.zero()
        return Polynomial(
            self.ring,
            {tuple(a + b for a, b in zip(e, m)): c * k for m, k in self._terms.items()},
        )

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.ring.constant(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # calculus and evaluation

    def diff(self, i: int) -> "Polynomial":
        """Formal partial derivative with respect to variable ``i``."""
        if not 0 <= i < self.ring.nvars:
            raise IndexError(f"variable index {i} out of range")
        terms = {}
        for e, c in self._terms.items():
            a = e[i]
            if a:
                terms[e[:i] + (a - 1,) + e[i + 1:]] = c * a
        return Polynomial(self.ring, terms)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.ring.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, ring has {self.ring.nvars} variables"
            )
        pt = [Fraction(v) for v in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, a in zip(pt, e):
                if a:
                    v *= x**a
            total += v
        return total

    def exact_divide(self, other: "Polynomial") -> Optional["Polynomial"]:
        """Return ``r`` with ``self == other * r``, or ``None`` if no such polynomial exists."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        # multivariate division by a single divisor; remainder zero iff exact
        lm, lc = other.leading_term()
        key = self.ring.monomial_key
        rem = dict(self._terms)
        quot: Dict[Monomial, Fraction] = {}
        while rem:
            e = max(rem, key=key)
            if any(a < b for a, b in zip(e, lm)):
                return None
            m = tuple(a - b for a, b in zip(e, lm))
            c = rem[e] / lc
            quot[m] = c
            for f, k in other._terms.items():
                g = tuple(a + b for a, b in zip(m, f))
                s = rem.get(g, 0) - c * k
                if s:
                    rem[g] = s
                else:
                    rem.pop(g, None)
        return Polynomial(self.ring, quot)

    def change_ring(self, ring: PolyRing, positions: Optional[Sequence[int]] = None) -> "Polynomial":
        """Map into ``ring``, sending variable ``i`` to variable ``positions[i]``."""
        if positions is None:
            if ring.nvars != self.ring.nvars:
                raise ValueError("rings differ in size; give positions")
            return Polynomial(ring, dict(self._terms))
        terms = {}
        for e, c in self._terms.items():
            f = [0] * ring.nvars
            for i, a in enumerate(e):
                f[positions[i]] += a
            terms[tuple(f)] = c
        return Polynomial(ring, terms)

    # printing

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def _monomial_str(names, e) -> str:
    parts = []
    for n, a in zip(names, e):
        if a == 1:
            parts.append(n)
        elif a:
            parts.append(f"{n}^{a}")
    return "*".join(parts)


def format_polynomial(p: Polynomial) -> str:
    """Canonical text: terms in the ring's order, e.g. ``x1^2 - 3/2*x0*x2 + 1``."""
    if not p:
        return "0"
    out = []
    for e, c in p.items():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = _monomial_str(p.ring.names, e)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def partial_derivative(p: Polynomial, var_index: int) -> Polynomial:
    return p.diff(var_index)


def evaluate(p: Polynomial, point: Sequence) -> Fraction:
    return p.evaluate(point)


def homogeneous_degree(p: Polynomial) -> Optional[int]:
    return p.homogeneous_degree()


def exact_divide(p: Polynomial, q: Polynomial) -> Optional[Polynomial]:
    return p.exact_divide(q)
