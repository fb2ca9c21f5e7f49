import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import R3, R4, forms
from frames import random_functions, unitriangular_frame
from folia.corpus import CASES, load
from folia.errors import PreconditionError
from folia.extalg import (
    contract,
    dx,
    evaluate_form,
    exterior_derivative,
    function_form,
    one_form,
    vector_field,
    wedge,
    zero_form,
)
from folia.foliation import FoliationForm, TangentFrame, persistent_ideal
from folia.linalg import kernel
from folia.polycore import PolyRing, monomials_of_degree
from folia.unfolding import (
    DualForm,
    UnfoldingDatum,
    _hat,
    build_unfolding_codim1,
    build_unfolding_codimq,
    dual_derivative,
    dual_wedge,
    frobenius_residuals,
    solve_flatness,
    unfolding_equations,
    unfolding_eta,
    unfolding_from_persistent,
    unfolding_nonvanishing,
    verify_unfolding,
)

x1, x2, x3 = R3.gens()
R2 = PolyRing(["x0", "x1"])
y0, y1 = R2.gens()
R4b = PolyRing(["x1", "x2", "x3", "x4"])


@st.composite
def dual_forms(draw, ring=R3, degree=None):
    if degree is None:
        degree = draw(st.integers(1, 2))
    slots = [draw(forms(ring, degree, 1)), draw(forms(ring, degree, 1)),
             draw(forms(ring, degree - 1, 1)), draw(forms(ring, degree - 1, 1))]
    return DualForm(*slots)


# algebra


@given(dual_forms(), dual_forms(), dual_forms())
def test_dual_wedge_associative(a, b, c):
    assert dual_wedge(dual_wedge(a, b), c) == dual_wedge(a, dual_wedge(b, c))


@given(dual_forms(), dual_forms())
def test_dual_wedge_graded_commutative(a, b):
    s = -1 if a.degree * b.degree % 2 else 1
    assert dual_wedge(a, b) == dual_wedge(b, a).scale(s)


@given(dual_forms())
def test_dual_derivative_squares_to_zero(a):
    assert dual_derivative(dual_derivative(a)).is_zero()


@given(dual_forms(), dual_forms())
def test_dual_leibniz(a, b):
    # holds modulo ε·dε only: d(ε·ε) = 2ε·dε although ε² = 0
    s = -1 if a.degree % 2 else 1
    lhs = dual_derivative(dual_wedge(a, b))
    rhs = dual_wedge(dual_derivative(a), b) + dual_wedge(a, dual_derivative(b)).scale(s)
    assert lhs.reduced() == rhs.reduced()


def test_dual_wedge_examples():
    a, b = dx(R3, 0), dx(R3, 1)
    assert dual_wedge(DualForm(a), DualForm(b)) == DualForm(wedge(a, b))
    h = x3 + 1
    got = dual_wedge(DualForm(a, None, function_form(h)), DualForm(b))
    assert got == DualForm(wedge(a, b), None, b.scale(-h))
    eps_a = DualForm(zero_form(R3, 1), a)
    eps_b = DualForm(zero_form(R3, 1), b)
    assert dual_wedge(eps_a, eps_b).is_zero()
    with pytest.raises(ValueError):
        dual_wedge(DualForm(a), DualForm(dx(R4, 0)))


def test_dual_derivative_examples():
    f = x1 * x2 + x3
    got = dual_derivative(DualForm(zero_form(R3, 0), function_form(f)))
    assert got == DualForm(zero_form(R3, 1), exterior_derivative(function_form(f)), function_form(f))
    # ω + εη + dε with ω, η closed: only dε∧η = -η∧dε survives
    w, eta = dx(R3, 0), dx(R3, 2).scale(2)
    got = dual_derivative(DualForm(w, eta, function_form(R3.one())))
    assert got == DualForm(zero_form(R3, 2), None, eta.scale(-1))


def test_reduced_and_restrict():
    a = DualForm(dx(R3, 0), dx(R3, 1), function_form(x1), function_form(x2))
    assert a.reduced() == DualForm(dx(R3, 0), dx(R3, 1), function_form(x1))
    assert a.restrict() == dx(R3, 0)
    with pytest.raises(ValueError):
        DualForm(dx(R3, 0), function_form(x1))


# codimension one


def test_build_codim1():
    w = FoliationForm(dx(R3, 0).scale(x2) + dx(R3, 1).scale(x1))  # closed
    wt = build_unfolding_codim1(w, zero_form(R3, 1))
    assert wt == DualForm(w.form, None, function_form(R3.one()))
    assert verify_unfolding(wt, TangentFrame([w.form], None), UnfoldingDatum([R3.one()], [zero_form(R3, 1)]))
    rot = FoliationForm(one_form(R2, [-y1, y0]))
    with pytest.raises(PreconditionError):
        build_unfolding_codim1(rot, zero_form(R2, 1))
    with pytest.raises(PreconditionError):
        build_unfolding_codim1(FoliationForm(wedge(dx(R3, 0), dx(R3, 1))), zero_form(R3, 1))


def test_vector_field_induced_cofactor():
    # h = i_v ω and η = i_v dω give h·dω = ω∧η
    w = FoliationForm(one_form(R2, [-y1, y0]))
    v = vector_field(R2, [1, 0])
    h = contract(v, w.form)[()]
    eta = contract(v, exterior_derivative(w.form))
    assert exterior_derivative(w.form).scale(h) == wedge(w.form, eta)
    built = unfolding_from_persistent(w, h)
    assert built is not None
    wt, datum = built
    assert verify_unfolding(wt, TangentFrame([w.form], None), datum)
    assert wt.restrict() == w.form


def test_plain_unfolding_fails_when_not_closed():
    w = FoliationForm(one_form(R2, [-y1, y0]))
    wt = DualForm(w.form, None, function_form(R2.one()))
    datum = UnfoldingDatum([R2.one()], [zero_form(R2, 1)])
    assert not verify_unfolding(wt, TangentFrame([w.form], None), datum)


CODIM1 = [c for c in CASES if c.checks["frobenius"] and load(c).foliation().q == 1]


@pytest.mark.parametrize("c", CODIM1, ids=lambda c: c.name)
def test_vector_field_induced_unfoldings_on_corpus(c):
    doc = load(c)
    w = doc.foliation()
    rng = random.Random(c.name)
    E = TangentFrame([w.form], None)
    dw = exterior_derivative(w.form)
    for _ in range(3):
        v = vector_field(w.ring, [rng.randint(-2, 2) * w.ring.var(rng.randrange(w.nvars)) + rng.randint(-1, 1)
                                  for _ in range(w.nvars)])
        h = contract(v, w.form)[()] if not contract(v, w.form).is_zero() else w.ring.zero()
        eta = contract(v, dw)
        assert dw.scale(h) == wedge(w.form, eta)
        built = unfolding_from_persistent(w, h)
        assert built is not None
        wt, datum = built
        assert verify_unfolding(wt, E, datum) and wt.restrict() == w.form


# flatness and codimension q


def test_solve_flatness_examples():
    E = TangentFrame([dx(R3, 0), dx(R3, 1)], None)
    alpha = solve_flatness(E)
    assert all(a.is_zero() for row in alpha for a in row)
    rot = one_form(R2, [-y1, y0])
    assert solve_flatness(TangentFrame([rot], None)) is None
    special = [one_form(R3, [0, x1, x1 + x3]), one_form(R3, [x1, 0, -x2]), one_form(R3, [x1 + x3, x2, 0])]
    assert solve_flatness(TangentFrame(special, None)) is None


def test_build_codimq_constant_frame():
    E = TangentFrame([dx(R3, 0), dx(R3, 1)], None)
    zero = [[zero_form(R3, 1)] * 2 for _ in range(2)]
    wt = build_unfolding_codimq(E, [R3.one(), R3.zero()], zero)
    assert wt == DualForm(wedge(dx(R3, 0), dx(R3, 1)), None, dx(R3, 1).scale(-1))
    datum = UnfoldingDatum([R3.one(), R3.zero()], unfolding_eta(E, [1, 0], zero), zero)
    assert verify_unfolding(wt, E, datum)

    E4 = TangentFrame([dx(R4b, 0), dx(R4b, 1)], None)
    z4 = [[zero_form(R4b, 1)] * 2 for _ in range(2)]
    h = [R4b.var("x3"), R4b.var("x4")]
    eta = unfolding_eta(E4, h, z4)
    assert eta == [exterior_derivative(function_form(f)) for f in h]
    wt = build_unfolding_codimq(E4, h, z4)
    assert verify_unfolding(wt, E4, UnfoldingDatum(h, eta, z4))


def test_build_codimq_errors():
    E = TangentFrame([dx(R3, 0), dx(R3, 1)], None)
    bad = [[dx(R3, 2), zero_form(R3, 1)], [zero_form(R3, 1)] * 2]
    with pytest.raises(PreconditionError):
        build_unfolding_codimq(E, [1, 0], bad)
    with pytest.raises(ValueError):
        build_unfolding_codimq(E, [1], [[zero_form(R3, 1)]])
    with pytest.raises(ValueError):
        UnfoldingDatum([1, 0], [zero_form(R3, 1)])


def _signed_hat_at(E, h, p):
    ring = E.ring
    total = None
    for j, hj in enumerate(h):
        term = _hat(E.generators, j, ring).scale(ring(hj) * (-1 if (j + 1) % 2 else 1))
        total = term if total is None else total + term
    return not evaluate_form(total, p).is_zero()


def test_random_flat_frames():
    for seed in range(12):
        rng = random.Random(seed)
        ring = R4 if seed % 2 else R3
        w, E = unitriangular_frame(rng, ring, 2 + (seed % 3 == 0))
        alpha = solve_flatness(E)
        assert alpha is not None
        h = random_functions(rng, ring, len(E.generators))
        wt = build_unfolding_codimq(E, h, alpha)
        datum = UnfoldingDatum(h, unfolding_eta(E, h, alpha), alpha)
        assert verify_unfolding(wt, E, datum)
        assert all(r.is_zero() for r in frobenius_residuals(E, datum))
        assert wt.restrict() == w.form
        p = [Fraction(rng.randint(-2, 2)) for _ in range(ring.nvars)]
        if _signed_hat_at(E, h, p):
            assert unfolding_nonvanishing(wt, p)


def _verbatim_eta(E, h, alpha):
    ring = E.ring
    out = []
    for i in range(len(h)):
        e = exterior_derivative(function_form(ring(h[i])))
        for j in range(len(h)):
            e = e + alpha[i][j].scale(ring(h[j]) * (-1 if (j + 1) % 2 else 1))
        out.append(e)
    return out


def test_alternating_sign_eta_is_not_an_unfolding():
    rng = random.Random(3)
    _, E = unitriangular_frame(rng, R4, 3)
    alpha = solve_flatness(E)
    h = random_functions(rng, R4, 3)
    datum = UnfoldingDatum(h, _verbatim_eta(E, h, alpha), alpha)
    assert not all(r.is_zero() for r in unfolding_equations(E, datum))
    assert not all(r.is_zero() for r in frobenius_residuals(E, datum))
    good = UnfoldingDatum(h, unfolding_eta(E, h, alpha), alpha)
    assert all(r.is_zero() for r in unfolding_equations(E, good))


def test_nonvanishing():
    w = FoliationForm(one_form(R3, [x2, x1, 0]))
    assert unfolding_nonvanishing(build_unfolding_codim1(w, zero_form(R3, 1)), (0, 0, 5))
    assert not unfolding_nonvanishing(DualForm(w.form), (0, 0, 5))


# bounded converse search


def _monomials(ring, bound):
    return [ring.monomial(e) for d in range(bound + 1) for e in monomials_of_degree(ring.nvars, d)]


def _nonvanishing_unfolding_exists(w, p, bound):
    """Whether some h, η of degree ≤ bound solve the codimension one unfolding
    equation with h(p) ≠ 0. The equation is linear in (h, η)."""
    ring = w.ring
    E = TangentFrame([w.form], None)
    monos = _monomials(ring, bound)
    unknowns = [(m, zero_form(ring, 1)) for m in monos]
    unknowns += [(ring.zero(), dx(ring, k).scale(m)) for k in range(ring.nvars) for m in monos]
    columns = []
    for h, eta in unknowns:
        (r,) = unfolding_equations(E, UnfoldingDatum([h], [eta]))
        columns.append({(idx, e): c for idx, f in r.items() for e, c in f.terms.items()})
    for vec in kernel(columns):
        if sum(a * h.evaluate(p) for a, (h, _) in zip(vec, unknowns)):
            return True
    return False


@pytest.mark.parametrize("name", ["p2_linear", "p2_shifted", "p2_pencil_2_2", "a3_codim1", "p2_pencil_1_2"])
def test_bounded_converse_search(name):
    doc = load(next(c for c in CASES if c.name == name))
    w = doc.foliation()
    (p,) = doc.points.values()
    I = persistent_ideal(w)
    persistent = all(g.evaluate(p) == 0 for g in I.groebner_basis())
    assert _nonvanishing_unfolding_exists(w, p, w.coefficient_degree) == (not persistent)
