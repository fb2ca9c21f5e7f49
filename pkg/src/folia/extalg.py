"""Polynomial differential forms and multivectors.

A q-form is stored as a map from strictly increasing index tuples
``(i_1 < ... < i_q)`` to nonzero polynomial coefficients, meaning
``sum f_I dx_{i_1} ^ ... ^ dx_{i_q}``. Multivectors use the same layout
with ``d/dx_i`` in place of ``dx_i``.

Sign convention for contraction: ``i_{u^v} = i_u o i_v``; so for a basis
multivector ``d_{j_1} ^ ... ^ d_{j_p}`` the innermost contraction is by
``d_{j_p}``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .groebner import Ideal
from .polycore import PolyRing, Polynomial

Index = Tuple[int, ...]


def sort_with_sign(idx: Sequence[int]) -> Tuple[int, Index]:
    """Sort an index sequence; return (sign of the permutation, sorted tuple).

    Sign is 0 when an index repeats.
    """
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class _Alternating:
    """Shared storage for forms and multivectors."""

    __slots__ = ("ring", "degree", "_comps")

    def __init__(self, ring: PolyRing, degree: int, components: Mapping = None):
        self.ring = ring
        self.degree = degree
        comps: Dict[Index, Polynomial] = {}
        if degree > ring.nvars or degree < 0:
            components = None
        for idx, f in (components or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not have length {degree}")
            if any(not 0 <= i < ring.nvars for i in idx):
                raise ValueError(f"index {idx} out of range")
            sign, key = sort_with_sign(idx)
            if not sign:
                continue
            f = ring(f) * sign
            if key in comps:
                f = comps[key] + f
            if f:
                comps[key] = f
            else:
                comps.pop(key, None)
        self._comps = comps

    def _new(self, degree, comps):
        out = object.__new__(type(self))
        out.ring = self.ring
        out.degree = degree
        out._comps = comps
        return out

    @property
    def components(self) -> Dict[Index, Polynomial]:
        return dict(self._comps)

    def items(self):
        return sorted(self._comps.items())

    def __getitem__(self, idx) -> Polynomial:
        sign, key = sort_with_sign(idx)
        if not sign or key not in self._comps:
            return self.ring.zero()
        return self._comps[key] * sign

    def is_zero(self) -> bool:
        return not self._comps

    def __bool__(self):
        return bool(self._comps)

    def coefficients(self):
        return [f for _, f in self.items()]

    def _check(self, other):
        if not isinstance(other, _Alternating) or other.ring != self.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            if not other._comps:
                return self
            if not self._comps:
                return other
            raise ValueError(f"cannot add degrees {self.degree} and {other.degree}")
        comps = dict(self._comps)
        for k, f in other._comps.items():
            g = comps[k] + f if k in comps else f
            if g:
                comps[k] = g
            else:
                comps.pop(k, None)
        return self._new(self.degree, comps)

    def __neg__(self):
        return self._new(self.degree, {k: -f for k, f in self._comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f):
        f = self.ring(f)
        if not f:
            return self._new(self.degree, {})
        comps = {}
        for k, g in self._comps.items():
            h = f * g
            if h:
                comps[k] = h
        return self._new(self.degree, comps)

    def __mul__(self, f):
        if isinstance(f, (int, Fraction, Polynomial)):
            return self.scale(f)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if self.ring != other.ring:
            return False
        if not self._comps and not other._comps:
            return True
        return self.degree == other.degree and self._comps == other._comps

    def __hash__(self):
        return hash((self.degree, frozenset(self._comps.items())))

    def map_coefficients(self, fn):
        comps = {}
        for k, g in self._comps.items():
            h = fn(g)
            if h:
                comps[k] = h
        return self._new(self.degree, comps)

    def homogeneous_degree(self):
        """Common degree of all coefficients, None if they differ."""
        degs = {f.homogeneous_degree() for f in self._comps.values()}
        if not degs:
            return 0
        if None in degs or len(degs) != 1:
            return None
        return degs.pop()


class DiffForm(_Alternating):
    """A differential form with polynomial coefficients."""

    __slots__ = ()

    _symbol = "d"

    def __repr__(self):
        return f"DiffForm({format_form(self)!r})"

    def __str__(self):
        return format_form(self)

    def change_ring(self, ring: PolyRing, positions=None) -> "DiffForm":
        if positions is None:
            positions = list(range(self.ring.nvars))
        comps = {}
        for idx, f in self._comps.items():
            comps[tuple(positions[i] for i in idx)] = f.change_ring(ring, positions)
        return DiffForm(ring, self.degree, comps)


class MultiVector(_Alternating):
    """A polynomial multivector field."""

    __slots__ = ()

    def __repr__(self):
        parts = [f"({f})*" + "^".join(f"d/d{self.ring.names[i]}" for i in k) for k, f in self.items()]
        return "MultiVector(" + " + ".join(parts or ["0"]) + ")"


# constructors


def zero_form(ring: PolyRing, degree: int) -> DiffForm:
    return DiffForm(ring, degree)


def function_form(f: Polynomial) -> DiffForm:
    """A polynomial as a 0-form."""
    return DiffForm(f.ring, 0, {(): f})


def dx(ring: PolyRing, *idx) -> DiffForm:
    """Basis form ``dx_{i_1} ^ ... ^ dx_{i_k}``; indices may be names."""
    idx = tuple(ring.index(i) if isinstance(i, str) else i for i in idx)
    return DiffForm(ring, len(idx), {idx: ring.one()})


def one_form(ring: PolyRing, coeffs: Sequence) -> DiffForm:
    """``sum coeffs[i] dx_i``."""
    return DiffForm(ring, 1, {(i,): c for i, c in enumerate(coeffs)})


def vector_field(ring: PolyRing, coeffs: Sequence) -> MultiVector:
    return MultiVector(ring, 1, {(i,): c for i, c in enumerate(coeffs)})


def coordinate_multivector(ring: PolyRing, idx: Sequence[int]) -> MultiVector:
    return MultiVector(ring, len(idx), {tuple(idx): ring.one()})


def radial_field(ring: PolyRing) -> MultiVector:
    """The Euler field ``sum x_i d/dx_i``."""
    return vector_field(ring, ring.gens())


def basis_indices(ring: PolyRing, degree: int):
    return list(combinations(range(ring.nvars), degree))


# operations


def _merge_sign(a: Index, b: Index):
    """Sign and sorted union for ``dx_a ^ dx_b``; sign 0 if they overlap."""
    if set(a) & set(b):
        return 0, ()
    # count inversions between the two blocks
    inv = 0
    j = 0
    for x in a:
        while j < len(b) and b[j] < x:
            j += 1
        inv += j
    return (-1 if inv % 2 else 1), tuple(sorted(a + b))


def wedge(a: DiffForm, b: DiffForm) -> DiffForm:
    """Exterior product."""
    a._check(b)
    deg = a.degree + b.degree
    comps: Dict[Index, Polynomial] = {}
    if deg <= a.ring.nvars:
        for ka, fa in a._comps.items():
            for kb, fb in b._comps.items():
                sign, k = _merge_sign(ka, kb)
                if not sign:
                    continue
                g = fa * fb
                if sign < 0:
                    g = -g
                if k in comps:
                    g = comps[k] + g
                if g:
                    comps[k] = g
                else:
                    comps.pop(k, None)
    out = DiffForm(a.ring, deg)
    out._comps = comps
    return out


def wedge_all(forms: Iterable[DiffForm], ring: PolyRing = None) -> DiffForm:
    forms = list(forms)
    if not forms:
        return function_form(ring.one())
    out = forms[0]
    for f in forms[1:]:
        out = wedge(out, f)
    return out


def exterior_derivative(a: DiffForm) -> DiffForm:
    ring = a.ring
    comps: Dict[Index, Polynomial] = {}
    for idx, f in a._comps.items():
        for i in f.variables():
            if i in idx:
                continue
            sign, k = _merge_sign((i,), idx)
            g = f.diff(i) * sign
            if k in comps:
                g = comps[k] + g
            if g:
                comps[k] = g
            else:
                comps.pop(k, None)
    out = DiffForm(ring, a.degree + 1)
    out._comps = comps
    return out


def _contract_basis(j: int, idx: Index):
    """``i_{d/dx_j} dx_idx`` as (sign, remaining index) or None."""
    if j not in idx:
        return None
    p = idx.index(j)
    return (-1 if p % 2 else 1), idx[:p] + idx[p + 1:]


def contract(xi: MultiVector, a: DiffForm) -> DiffForm:
    """Interior product ``i_xi a`` with ``i_{u^v} = i_u o i_v``."""
    if xi.ring != a.ring:
        raise ValueError("ring mismatch")
    if xi.degree > a.degree:
        raise ValueError(f"cannot contract a {xi.degree}-vector into a {a.degree}-form")
    deg = a.degree - xi.degree
    comps: Dict[Index, Polynomial] = {}
    for J, v in xi._comps.items():
        for I, f in a._comps.items():
            sign, rest = 1, I
            for j in reversed(J):
                r = _contract_basis(j, rest)
                if r is None:
                    sign = 0
                    break
                s, rest = r
                sign *= s
            if not sign:
                continue
            g = v * f * sign
            if rest in comps:
                g = comps[rest] + g
            if g:
                comps[rest] = g
            else:
                comps.pop(rest, None)
    out = DiffForm(a.ring, deg)
    out._comps = comps
    return out


def coefficient_ideal(a: DiffForm) -> Ideal:
    """Ideal generated by the coefficients of ``a``."""
    return Ideal(a.ring, a.coefficients())


def radial_contraction(a: DiffForm) -> DiffForm:
    if a.degree == 0:
        return DiffForm(a.ring, -1)
    return contract(radial_field(a.ring), a)


def evaluate_form(a: DiffForm, point: Sequence) -> DiffForm:
    """Substitute a point into every coefficient; the result has constant coefficients."""
    if len(point) != a.ring.nvars:
        raise ValueError(f"point has {len(point)} coordinates, ring has {a.ring.nvars} variables")
    ring = a.ring
    return a.map_coefficients(lambda f: ring.constant(f.evaluate(point)))


def form_to_vector(a: DiffForm, degree: int = None):
    """Coefficients in the lexicographic basis of ``degree``-forms."""
    from .groebner import FreeModuleElement

    degree = a.degree if degree is None else degree
    return FreeModuleElement(a.ring, [a[k] for k in basis_indices(a.ring, degree)])


def vector_to_form(v, degree: int) -> DiffForm:
    idx = basis_indices(v.ring, degree)
    if len(idx) != v.rank:
        raise ValueError("vector rank does not match the number of basis forms")
    return DiffForm(v.ring, degree, dict(zip(idx, v.entries)))


def format_form(a: DiffForm) -> str:
    """Text like ``-x3*dx1^dx2 + (x1 + x3)*dx1^dx3``."""
    if not a._comps:
        return "0"
    if a.degree == 0:
        return str(a._comps[()])
    names = a.ring.names
    out = []
    for idx, f in a.items():
        basis = "^".join("d" + names[i] for i in idx)
        if len(f) == 1:
            (e, c), = f.items()
            sign = "-" if c < 0 else "+"
            mag = -f if c < 0 else f
            body = basis if mag == 1 else f"{mag}*{basis}"
        else:
            sign, body = "+", f"({f})*{basis}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text
