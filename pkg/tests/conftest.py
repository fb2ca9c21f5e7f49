import random
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from folia.extalg import DiffForm, basis_indices
from folia.polycore import PolyRing, Polynomial, monomials_of_degree

settings.register_profile(
    "folia", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("folia")

R3 = PolyRing(["x1", "x2", "x3"])
R4 = PolyRing(["x0", "x1", "x2", "x3"])

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=3)


@st.composite
def polynomials(draw, ring=R3, max_degree=2, max_terms=4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.lists(st.integers(0, max_degree), min_size=ring.nvars, max_size=ring.nvars)))
        if sum(e) <= max_degree:
            terms[e] = draw(coefficients)
    return Polynomial(ring, {e: c for e, c in terms.items() if c})


@st.composite
def forms(draw, ring=R3, degree=None, max_degree=2):
    if degree is None:
        degree = draw(st.integers(0, ring.nvars))
    idx = basis_indices(ring, degree)
    chosen = draw(st.lists(st.sampled_from(idx), max_size=3, unique=True)) if idx else []
    return DiffForm(ring, degree, {k: draw(polynomials(ring, max_degree, 3)) for k in chosen})


def random_poly(rng: random.Random, ring, degree, homogeneous=True, terms=3):
    monos = []
    for d in ([degree] if homogeneous else range(degree + 1)):
        monos.extend(monomials_of_degree(ring.nvars, d))
    out = {}
    for e in rng.sample(monos, min(terms, len(monos))):
        c = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2]))
        if c:
            out[e] = c
    return Polynomial(ring, out)
