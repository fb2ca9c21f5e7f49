"""First-order unfoldings of foliations over the dual numbers k[ε]/(ε²).

A form on X × Spec k[ε]/(ε²) is kept in four slots

    base + ε·eps + deps∧dε + ε·eps_deps∧dε

with ``base``, ``eps`` of degree p and the two dε slots of degree p-1. The
slots multiply as a graded algebra in which ε is even, dε is odd, ε² = 0 and
dε∧dε = 0. In Kähler differentials of the dual numbers ε·dε = d(ε²)/2 = 0
as well; :meth:`DualForm.reduced` applies that relation and every check
below works on reduced forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import PreconditionError
from .extalg import (
    DiffForm,
    basis_indices,
    dx,
    evaluate_form,
    exterior_derivative,
    form_to_vector,
    function_form,
    wedge,
    wedge_all,
    zero_form,
)
from .foliation import FoliationForm, TangentFrame
from .groebner import Submodule, submodule_member
from .polycore import Polynomial


class DualForm:
    __slots__ = ("base", "eps", "deps", "eps_deps")

    def __init__(self, base: DiffForm, eps=None, deps=None, eps_deps=None):
        ring, p = base.ring, base.degree
        self.base = base
        self.eps = zero_form(ring, p) if eps is None else eps
        self.deps = zero_form(ring, p - 1) if deps is None else deps
        self.eps_deps = zero_form(ring, p - 1) if eps_deps is None else eps_deps
        for slot, deg in ((self.eps, p), (self.deps, p - 1), (self.eps_deps, p - 1)):
            if slot.ring != ring:
                raise ValueError("ring mismatch between slots")
            if slot.degree != deg and not slot.is_zero():
                raise ValueError(f"slot of degree {slot.degree}, expected {deg}")

    @property
    def ring(self):
        return self.base.ring

    @property
    def degree(self) -> int:
        return self.base.degree

    def slots(self):
        return (self.base, self.eps, self.deps, self.eps_deps)

    def reduced(self) -> "DualForm":
        """Impose ε·dε = 0."""
        return DualForm(self.base, self.eps, self.deps)

    def restrict(self) -> DiffForm:
        """Set ε = 0 and dε = 0."""
        return self.base

    def is_zero(self) -> bool:
        return all(s.is_zero() for s in self.slots())

    def __add__(self, other: "DualForm") -> "DualForm":
        return DualForm(*(a + b for a, b in zip(self.slots(), other.slots())))

    def __neg__(self):
        return DualForm(*(-a for a in self.slots()))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, f) -> "DualForm":
        return DualForm(*(a.scale(f) for a in self.slots()))

    def __eq__(self, other):
        if not isinstance(other, DualForm):
            return NotImplemented
        return all(a == b for a, b in zip(self.slots(), other.slots()))

    def __hash__(self):
        return hash(self.slots())

    def __repr__(self):
        parts = [str(self.base)]
        for name, s in (("eps", self.eps), ("deps", self.deps), ("eps*deps", self.eps_deps)):
            if not s.is_zero():
                parts.append(f"{name}: {s}")
        return "DualForm(" + "; ".join(parts) + ")"


def dual_from_form(a: DiffForm) -> DualForm:
    return DualForm(a)


def dual_wedge(a: DualForm, b: DualForm) -> DualForm:
    if a.ring != b.ring:
        raise ValueError("ring mismatch")
    A0, A1, A2, A3 = a.slots()
    B0, B1, B2, B3 = b.slots()
    s = -1 if b.degree % 2 else 1
    return DualForm(
        wedge(A0, B0),
        wedge(A0, B1) + wedge(A1, B0),
        wedge(A0, B2) + wedge(A2, B0).scale(s),
        wedge(A0, B3) + wedge(A1, B2) + (wedge(A2, B1) + wedge(A3, B0)).scale(s),
    )


def dual_wedge_all(forms: Sequence[DualForm]) -> DualForm:
    out = forms[0]
    for f in forms[1:]:
        out = dual_wedge(out, f)
    return out


def dual_derivative(a: DualForm) -> DualForm:
    """d with d(ε) = dε, so d(ε·α) = dε∧α + ε·dα."""
    A0, A1, A2, A3 = a.slots()
    s = -1 if a.degree % 2 else 1
    return DualForm(
        exterior_derivative(A0),
        exterior_derivative(A1),
        A1.scale(s) + exterior_derivative(A2),
        exterior_derivative(A3),
    )


@dataclass
class UnfoldingDatum:
    h: List[Polynomial]
    eta: List[DiffForm]
    alpha: Optional[List[List[DiffForm]]] = None

    def __post_init__(self):
        if len(self.h) != len(self.eta):
            raise ValueError("h and eta must have the same length")
        if self.alpha is not None and (
            len(self.alpha) != len(self.h) or any(len(row) != len(self.h) for row in self.alpha)
        ):
            raise ValueError("alpha must be a q x q matrix")


def _factor(w: DiffForm, h: Polynomial, eta: DiffForm) -> DualForm:
    return DualForm(w, eta, function_form(h))


def build_unfolding_codim1(w: FoliationForm, eta: DiffForm) -> DualForm:
    """ω + ε·η + dε, valid when dω = ω∧η."""
    if w.q != 1:
        raise PreconditionError("codimension one construction needs a 1-form")
    if exterior_derivative(w.form) != wedge(w.form, eta):
        raise PreconditionError("dω is not ω∧η")
    return _factor(w.form, w.ring.one(), eta)


def _filtration_lift(E: TangentFrame, target: DiffForm):
    """{(j, k): c_jk} with target = Σ c_jk·ϖ_j∧dx_k, or None outside F¹."""
    ring = E.ring
    labels, vecs = [], []
    for j, g in enumerate(E.generators):
        for k in range(ring.nvars):
            v = form_to_vector(wedge(g, dx(ring, k)), 2)
            if not v.is_zero() and v not in vecs:
                labels.append((j, k))
                vecs.append(v)
    cof = submodule_member(form_to_vector(target, 2), Submodule(ring, len(basis_indices(ring, 2)), vecs))
    if cof is None:
        return None
    return {jk: c for jk, c in zip(labels, cof) if c}


def persistent_cofactor(w: FoliationForm, h: Polynomial) -> Optional[DiffForm]:
    """A 1-form η' with h·dω = ω∧η', or None if h is not in the persistent ideal."""
    if w.q != 1:
        raise PreconditionError("needs a 1-form")
    E = TangentFrame([w.form], None)
    lift = _filtration_lift(E, exterior_derivative(w.form).scale(h))
    if lift is None:
        return None
    return DiffForm(w.ring, 1, {(k,): c for (_, k), c in lift.items()})


def unfolding_from_persistent(w: FoliationForm, h: Polynomial):
    """ω + ε·η + h·dε with η = η' + dh, for h in the persistent ideal.

    Returns (unfolding, datum) or None when h is not persistent.
    """
    h = w.ring(h)
    eta1 = persistent_cofactor(w, h)
    if eta1 is None:
        return None
    eta = eta1 + exterior_derivative(function_form(h))
    return _factor(w.form, h, eta), UnfoldingDatum([h], [eta])


def solve_flatness(E: TangentFrame) -> Optional[List[List[DiffForm]]]:
    """α with dϖ_i = Σ_j α_ij∧ϖ_j, or None when some dϖ_i is outside F¹."""
    ring = E.ring
    q = len(E.generators)
    alpha = []
    for g in E.generators:
        lift = _filtration_lift(E, exterior_derivative(g))
        if lift is None:
            return None
        # ϖ_j∧dx_k = -dx_k∧ϖ_j
        row = [{} for _ in range(q)]
        for (j, k), c in lift.items():
            row[j][(k,)] = -c
        alpha.append([DiffForm(ring, 1, r) for r in row])
    return alpha


def check_flatness(E: TangentFrame, alpha) -> bool:
    ring = E.ring
    for i, g in enumerate(E.generators):
        rhs = zero_form(ring, 2)
        for j, wj in enumerate(E.generators):
            rhs = rhs + wedge(alpha[i][j], wj)
        if exterior_derivative(g) != rhs:
            return False
    return True


def unfolding_eta(E: TangentFrame, h: Sequence[Polynomial], alpha) -> List[DiffForm]:
    """η_i = dh_i - Σ_j h_j·α_ij."""
    ring = E.ring
    out = []
    for i in range(len(E.generators)):
        eta = exterior_derivative(function_form(ring(h[i])))
        for j in range(len(E.generators)):
            eta = eta - alpha[i][j].scale(h[j])
        out.append(eta)
    return out


def build_unfolding_codimq(E: TangentFrame, h: Sequence[Polynomial], alpha) -> DualForm:
    """⋀_i (ϖ_i + ε·η_i + h_i·dε) with η from :func:`unfolding_eta`."""
    q = len(E.generators)
    if len(h) != q or len(alpha) != q or any(len(row) != q for row in alpha):
        raise ValueError(f"expected {q} functions and a {q} x {q} matrix")
    if not check_flatness(E, alpha):
        raise PreconditionError("alpha does not satisfy dϖ_i = Σ α_ij∧ϖ_j")
    eta = unfolding_eta(E, h, alpha)
    return unfolding_product(E, UnfoldingDatum([E.ring(x) for x in h], eta, alpha))


def unfolding_product(E: TangentFrame, datum: UnfoldingDatum) -> DualForm:
    factors = [_factor(g, hi, ei) for g, hi, ei in zip(E.generators, datum.h, datum.eta)]
    return dual_wedge_all(factors).reduced()


def _hat(gens: Sequence[DiffForm], j: int, ring) -> DiffForm:
    rest = list(gens[:j]) + list(gens[j + 1:])
    return wedge_all(rest, ring) if rest else function_form(ring.one())


def unfolding_equations(E: TangentFrame, datum: UnfoldingDatum) -> List[DiffForm]:
    """(dh_i - η_i)∧ϖ + dϖ_i∧Σ_j (-1)^j h_j ϖ_ĵ for each i (j counted from 1)."""
    ring = E.ring
    gens = E.generators
    w = wedge_all(gens, ring)
    tail = None
    for j, hj in enumerate(datum.h):
        term = _hat(gens, j, ring).scale(ring(hj) * (-1 if (j + 1) % 2 else 1))
        tail = term if tail is None else tail + term
    out = []
    for i, g in enumerate(gens):
        lhs = wedge(exterior_derivative(function_form(ring(datum.h[i]))) - datum.eta[i], w)
        out.append(lhs + wedge(exterior_derivative(g), tail))
    return out


def frobenius_residuals(E: TangentFrame, datum: UnfoldingDatum) -> List[DualForm]:
    """dϖ̃_i∧ϖ̃ in the reduced dual algebra, for each unfolded generator ϖ̃_i."""
    factors = [_factor(g, hi, ei) for g, hi, ei in zip(E.generators, datum.h, datum.eta)]
    total = dual_wedge_all(factors)
    return [dual_wedge(dual_derivative(f), total).reduced() for f in factors]


def verify_unfolding(wt: DualForm, E: TangentFrame, datum: UnfoldingDatum) -> bool:
    """Check the first-order unfolding equations for ``wt`` built from ``datum``.

    The form must equal the product of the unfolded generators, every
    equation of :func:`unfolding_equations` must vanish and, for one
    generator, ω̃∧dω̃ must vanish modulo ε².
    """
    if len(datum.h) != len(E.generators):
        return False
    if wt.reduced() != unfolding_product(E, datum):
        return False
    if not all(r.is_zero() for r in unfolding_equations(E, datum)):
        return False
    if len(E.generators) == 1:
        return dual_wedge(wt, dual_derivative(wt)).reduced().is_zero()
    return True


def unfolding_nonvanishing(wt: DualForm, p: Sequence) -> bool:
    """Whether ω̃ is nonzero at (p, ε = 0), counting the dε slot."""
    p = [Fraction(x) for x in p]
    return not evaluate_form(wt.base, p).is_zero() or not evaluate_form(wt.deps, p).is_zero()
