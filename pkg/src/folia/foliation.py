"""Singular foliations given by polynomial q-forms.

A foliation is stored as a q-form ``ω`` on affine space or on the affine cone
over projective space. From it we compute

* the singular ideal J, generated by the coefficients of ω,
* the Kupka ideal K = (J : J(dω)),
* the persistent ideal I of functions h with h·dϖ ∈ F¹ for every tangent
  1-form ϖ, where F¹ is the span of the 2-forms ϖ_j∧dx_i,

together with the Plücker, Frobenius and descent checks and the module E of
1-forms η with ω∧η = 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence

from . import linalg
from .errors import PreconditionError, SemanticError
from .extalg import (
    DiffForm,
    basis_indices,
    coefficient_ideal,
    contract,
    coordinate_multivector,
    dx,
    evaluate_form,
    exterior_derivative,
    form_to_vector,
    radial_contraction,
    vector_to_form,
    wedge,
    wedge_all,
)
from .groebner import (
    Ideal,
    Submodule,
    graded_piece_dimension,
    ideal_dimension,
    ideal_member,
    ideal_quotient_ideal,
    intersect,
    module_kernel,
    module_quotient,
    radical_equal,
    syzygies,
)
from .polycore import Polynomial, monomials_of_degree

AMBIENTS = ("affine", "projective")


class FoliationForm:
    """A nonzero q-form together with its ambient space.

    ``twist_degree`` is the total degree of the form (coefficient degree plus
    q) when all coefficients are homogeneous of one degree, else None. The
    projective descent condition is not enforced here so that
    :func:`check_descent` can report it.
    """

    def __init__(self, form: DiffForm, ambient: str = "affine", twist_degree: Optional[int] = None):
        if ambient not in AMBIENTS:
            raise SemanticError(f"unknown ambient {ambient!r}")
        if form.is_zero():
            raise SemanticError("a foliation needs a non trivial form, got 0")
        if form.degree < 1:
            raise SemanticError("a foliation is defined by a form of degree at least 1")
        self.form = form
        self.ambient = ambient
        cd = form.homogeneous_degree()
        twist = None if cd is None else cd + form.degree
        if twist_degree is not None and twist_degree != twist:
            raise SemanticError(f"twist {twist_degree} does not match the form (computed {twist})")
        self.twist_degree = twist

    @property
    def ring(self):
        return self.form.ring

    @property
    def q(self) -> int:
        return self.form.degree

    @property
    def nvars(self) -> int:
        return self.form.ring.nvars

    @property
    def coefficient_degree(self) -> Optional[int]:
        return self.form.homogeneous_degree()

    def scaled(self, c) -> "FoliationForm":
        return FoliationForm(self.form.scale(c), self.ambient)

    def __repr__(self):
        return f"FoliationForm({self.form}, {self.ambient})"


@dataclass
class TangentFrame:
    """Generators of the module E of 1-forms annihilated by ω∧−."""

    generators: List[DiffForm]
    relations: Submodule

    @property
    def ring(self):
        return self.generators[0].ring

    def module(self) -> Submodule:
        return Submodule(self.ring, self.ring.nvars, [form_to_vector(g, 1) for g in self.generators])


@dataclass
class AnalysisReport:
    checks: Dict[str, Optional[bool]]
    ideals: Dict[str, Ideal]
    inclusions: Dict[str, Optional[bool]]
    dimensions: Dict[str, int]
    decomposability_defect: Ideal
    flags: Dict[str, Optional[bool]] = field(default_factory=dict)
    codimensions: Dict[str, Optional[int]] = field(default_factory=dict)
    # inclusions computed but withheld from ``inclusions`` for lack of hypothesis
    observed: Dict[str, bool] = field(default_factory=dict)


# checks


def _coordinate_contractions(w: FoliationForm):
    ring, q = w.ring, w.q
    for J in combinations(range(ring.nvars), q - 1):
        yield contract(coordinate_multivector(ring, J), w.form)


def check_plucker(w: FoliationForm) -> bool:
    """i_Ξ ω ∧ ω = 0 for every coordinate (q-1)-vector Ξ."""
    if w.q == 1:
        return True
    return all(wedge(a, w.form).is_zero() for a in _coordinate_contractions(w))


def check_integrability(w: FoliationForm) -> bool:
    if w.q == 1:
        return wedge(w.form, exterior_derivative(w.form)).is_zero()
    if not check_plucker(w):
        return False
    return all(wedge(exterior_derivative(a), w.form).is_zero() for a in _coordinate_contractions(w))


def check_descent(w: FoliationForm) -> bool:
    """Homogeneous coefficients and i_R ω = 0 for the radial field R."""
    if w.ambient != "projective":
        raise PreconditionError("descent only makes sense for projective forms")
    return w.coefficient_degree is not None and radial_contraction(w.form).is_zero()


def check_torsion_free_codim(w: FoliationForm) -> bool:
    """The singular set has codimension at least 2."""
    return ideal_dimension(singular_ideal(w)) <= w.nvars - 2


# ideals


def singular_ideal(w: FoliationForm) -> Ideal:
    return coefficient_ideal(w.form)


def kupka_ideal(w: FoliationForm) -> Ideal:
    """(J : J(dω)); the unit ideal when dω = 0."""
    d = exterior_derivative(w.form)
    if d.is_zero():
        return Ideal.unit(w.ring)
    return ideal_quotient_ideal(singular_ideal(w), coefficient_ideal(d))


def _prune(vectors):
    """Drop generators lying in the span of the remaining ones."""
    keep = list(vectors)
    i = len(keep) - 1
    while i >= 0 and len(keep) > 1:
        others = keep[:i] + keep[i + 1:]
        if keep[i] in Submodule(keep[i].ring, keep[i].rank, others):
            keep = others
        i -= 1
    return keep


def tangent_frame(w: FoliationForm, prune: bool = True) -> TangentFrame:
    """Kernel of η ↦ ω∧η on 1-forms, with the relations among its generators."""
    ring, q = w.ring, w.q
    if q == 1:
        gens = [form_to_vector(w.form, 1)]
    else:
        columns = [form_to_vector(wedge(w.form, dx(ring, i)), q + 1) for i in range(ring.nvars)]
        gens = [v for v in module_kernel(columns).groebner_basis()]
        if prune:
            gens = _prune(gens)
    forms = [vector_to_form(v, 1) for v in gens]
    return TangentFrame(forms, syzygies(gens))


def _divide_form(W: DiffForm, w: DiffForm) -> Polynomial:
    if W.is_zero():
        return w.ring.zero()
    idx, f = w.items()[0]
    r = W[idx].exact_divide(f)
    if r is None or w.scale(r) != W:
        raise PreconditionError("a wedge of tangent forms is not a polynomial multiple of the form")
    return r


def decomposability_defect(w: FoliationForm, E: Optional[TangentFrame] = None) -> Ideal:
    """Ideal D with ∧^q E = D·ω; the unit ideal where ω is locally decomposable."""
    E = E or tangent_frame(w)
    quotients = []
    for sub in combinations(E.generators, w.q):
        quotients.append(_divide_form(wedge_all(sub, w.ring), w.form))
    return Ideal(w.ring, quotients)


def first_filtration(E: TangentFrame) -> Submodule:
    """F¹ ⊂ Ω², spanned by ϖ_j∧dx_i, as a submodule of S^C(n,2)."""
    ring = E.ring
    n = ring.nvars
    gens = [form_to_vector(wedge(g, dx(ring, i)), 2) for g in E.generators for i in range(n)]
    return Submodule(ring, len(basis_indices(ring, 2)), gens)


def persistent_ideal(w: FoliationForm, E: Optional[TangentFrame] = None) -> Ideal:
    """Intersection over tangent generators ϖ_k of (F¹ : dϖ_k)."""
    if not check_integrability(w):
        raise PreconditionError("the persistent ideal needs an integrable form")
    E = E or tangent_frame(w)
    F1 = first_filtration(E)
    out = None
    for g in E.generators:
        Q = module_quotient(F1, form_to_vector(exterior_derivative(g), 2))
        out = Q if out is None else intersect(out, Q)
    return out


# graded linear-algebra cross-check


def default_oracle_bound(w: FoliationForm) -> int:
    return w.coefficient_degree + 3


def persistent_graded_pieces(w: FoliationForm, max_degree: int, E: Optional[TangentFrame] = None):
    """{d: basis of {h ∈ S_d : h·dϖ_k ∈ F¹ for all k}} for d = 0..max_degree.

    Each graded piece of F¹ is spanned by monomial multiples of ϖ_j∧dx_i and
    solved by exact elimination, without any Gröbner basis.
    """
    ring = w.ring
    n = ring.nvars
    if w.coefficient_degree is None:
        raise PreconditionError("the graded cross-check needs homogeneous coefficients")
    E = E or tangent_frame(w)
    spans = []
    for g in E.generators:
        c = g.homogeneous_degree()
        if c is None:
            raise PreconditionError("tangent generators must be homogeneous")
        spans.append((c, g))
    pieces = [(c, wedge(g, dx(ring, i))) for c, g in spans for i in range(n)]
    pieces = [(c, f) for c, f in pieces if not f.is_zero()]
    targets = []
    for c, g in spans:
        dg = exterior_derivative(g)
        if not dg.is_zero():
            targets.append((c - 1, dg))

    cache = {}

    def span_at(D):
        if D not in cache:
            ech = linalg.Echelon()
            for c, f in pieces:
                if D - c < 0:
                    continue
                for m in monomials_of_degree(n, D - c):
                    ech.add(_form_vector(f, m))
            cache[D] = ech
        return cache[D]

    out = {}
    for d in range(max_degree + 1):
        monos = list(monomials_of_degree(n, d))
        rows = []
        for m in monos:
            row = {}
            for k, (c, dg) in enumerate(targets):
                r = span_at(d + c).reduce(_form_vector(dg, m))
                row.update({(k, col): a for col, a in r.items()})
            rows.append(row)
        out[d] = [
            Polynomial(ring, {m: a for m, a in zip(monos, coeffs) if a})
            for coeffs in linalg.kernel(rows)
        ]
    return out


def _form_vector(f: DiffForm, m) -> Dict:
    vec = {}
    for idx, p in f.items():
        for e, a in p.terms.items():
            vec[(idx, tuple(x + y for x, y in zip(e, m)))] = a
    return vec


def persistent_truncation_oracle(w: FoliationForm, max_degree: Optional[int] = None, E=None) -> List[Polynomial]:
    """Concatenated graded bases up to ``max_degree`` (default coefficient degree + 3)."""
    if max_degree is None:
        max_degree = default_oracle_bound(w)
    pieces = persistent_graded_pieces(w, max_degree, E)
    return [h for d in sorted(pieces) for h in pieces[d]]


def oracle_agrees(w: FoliationForm, I: Ideal, max_degree: Optional[int] = None, E=None) -> bool:
    """Graded dimensions and membership of I match the linear-algebra pieces."""
    if max_degree is None:
        max_degree = default_oracle_bound(w)
    pieces = persistent_graded_pieces(w, max_degree, E)
    for d, basis in pieces.items():
        if graded_piece_dimension(I, d) != len(basis):
            return False
        if not all(ideal_member(h, I) for h in basis):
            return False
    return True


# reports


def _generators_in(A: Ideal, B: Ideal) -> bool:
    return all(ideal_member(g, B) for g in A.generators)


def inclusion_report(w: FoliationForm, radicals: bool = False) -> AnalysisReport:
    """J, I, K with their inclusions, dimensions and the decomposability defect.

    For q ≥ 2 the inclusion I ⊆ K is only asserted when ω is locally
    decomposable (defect ideal equal to (1)); otherwise it is reported as None.
    """
    frob = check_integrability(w)
    checks = {
        "plucker": check_plucker(w),
        "frobenius": frob,
        "descent": check_descent(w) if w.ambient == "projective" else None,
        "torsion_free_codim": check_torsion_free_codim(w),
    }
    if not frob:
        raise PreconditionError("inclusion report needs an integrable form")
    E = tangent_frame(w)
    J = singular_ideal(w)
    K = kupka_ideal(w)
    I = persistent_ideal(w, E)
    D = decomposability_defect(w, E)
    decomposable = w.q == 1 or D.is_unit()
    i_in_k = _generators_in(I, K)
    inclusions = {
        "J<=I": _generators_in(J, I),
        "I<=K": i_in_k if decomposable else None,
        "J<=K": _generators_in(J, K),
    }
    observed = {} if decomposable else {"I<=K": i_in_k}
    n = w.nvars
    dims = {name: ideal_dimension(X) for name, X in (("J", J), ("I", I), ("K", K))}
    flags = {
        "locally_decomposable": D.is_unit(),
        "K_is_unit": K.is_unit(),
        "one_in_I": I.is_unit(),
    }
    if radicals:
        flags["rad_I=rad_K"] = radical_equal(I, K)
        flags["rad_I=rad_J"] = radical_equal(I, J)
    codims = {k: n - v if v >= 0 else None for k, v in dims.items()}
    return AnalysisReport(checks, {"J": J, "I": I, "K": K}, inclusions, dims, D, flags, codims, observed)


# points


def is_kupka_point(w: FoliationForm, p: Sequence) -> bool:
    p = [Fraction(x) for x in p]
    return evaluate_form(w.form, p).is_zero() and not evaluate_form(exterior_derivative(w.form), p).is_zero()


def is_persistent_point(w: FoliationForm, p: Sequence, I: Optional[Ideal] = None) -> bool:
    """True iff 1 ∉ I localized at the singular point p."""
    p = [Fraction(x) for x in p]
    if not evaluate_form(w.form, p).is_zero():
        raise PreconditionError("point is not a singular point of the form")
    I = I or persistent_ideal(w)
    return all(g.evaluate(p) == 0 for g in I.groebner_basis())
