import random

import pytest

import oracles
from conftest import R3, R4, random_poly
from folia.groebner import (
    FreeModuleElement,
    Ideal,
    Submodule,
    graded_piece_dimension,
    groebner_basis,
    ideal_dimension,
    ideal_equal,
    ideal_member,
    ideal_quotient,
    ideal_quotient_ideal,
    intersect,
    module_kernel,
    module_quotient,
    radical_equal,
    radical_member,
    submodule_member,
    syzygies,
)
from folia.limits import ResourceLimitError, limits
from folia.polycore import monomials_of_degree

x1, x2, x3 = R3.gens()


def V(*entries):
    return FreeModuleElement(R3, entries)


def test_groebner_basis_examples():
    assert groebner_basis(Ideal(R3, [x1, x2])) == [x1, x2]
    assert groebner_basis(Ideal(R3, [1 + x1, x1])) == [R3.one()]
    G = groebner_basis(Ideal(R3, [x1**2, x1 * x2 - x1]))
    assert all(ideal_member(g, Ideal(R3, [x1**2, x1 * x2 - x1])) for g in G)
    # reduced: monic, no leading term divides another term of another element
    for g in G:
        assert g.leading_coefficient() == 1


def test_membership_examples():
    assert ideal_member(x1 * x2, Ideal(R3, [x1]))
    assert not ideal_member(x2, Ideal(R3, [x1]))
    assert not ideal_member(R3.constant(3), Ideal(R3, [x1, x2, x3]))
    with pytest.raises(ValueError):
        ideal_member(R4.gens()[0], Ideal(R3, [x1]))


def test_syzygy_examples():
    S = syzygies([FreeModuleElement(R3, [x1]), FreeModuleElement(R3, [x2])])
    assert S == Submodule(R3, 2, [FreeModuleElement(R3, [x2, -x1])])
    assert syzygies([FreeModuleElement(R3, [x1 + x2 * x3])]).is_zero()
    f1, f2, f3 = x1, x2, x3
    gens = [V(0, f3, f2), V(f3, 0, -f1), V(f2, f1, 0)]
    S = syzygies(gens)
    assert V(f1, f2, -f3) in S
    for s in S.generators:
        total = V(0, 0, 0)
        for c, g in zip(s.entries, gens):
            total = total + g.scale(c)
        assert total.is_zero()


def test_kernel_examples():
    assert module_kernel([FreeModuleElement(R3, [x1])]).is_zero()
    K = module_kernel([FreeModuleElement(R3, [x1]), FreeModuleElement(R3, [x2])])
    assert K == Submodule(R3, 2, [FreeModuleElement(R3, [x2, -x1])])


def test_submodule_membership_examples():
    M = Submodule(R3, 2, [FreeModuleElement(R3, [x2, 0])])
    assert submodule_member(FreeModuleElement(R3, [x1 * x2, 0]), M) == [x1]
    M = Submodule(R3, 2, [FreeModuleElement(R3, [x1, 0])])
    assert submodule_member(FreeModuleElement(R3, [0, 1]), M) is None


def test_quotient_examples():
    assert ideal_equal(ideal_quotient(Ideal(R3, [x1**2]), x1), Ideal(R3, [x1]))
    J = Ideal(R3, [x1, x2, x3])
    assert ideal_equal(ideal_quotient(J, R3.one()), J)
    assert ideal_equal(ideal_quotient(Ideal(R3, [x1 * x2, x1 * x3]), x1), Ideal(R3, [x2, x3]))
    assert ideal_equal(ideal_quotient_ideal(J, Ideal.unit(R3)), J)
    assert ideal_equal(ideal_quotient_ideal(Ideal(R3, [x1]), Ideal(R3, [x1, x2])), Ideal(R3, [x1]))
    with pytest.raises(ValueError):
        ideal_quotient(J, R3.zero())


def test_module_quotient_examples():
    M = Submodule(R3, 2, [FreeModuleElement(R3, [x1, 0]), FreeModuleElement(R3, [0, x1])])
    assert ideal_equal(module_quotient(M, FreeModuleElement(R3, [1, 1])), Ideal(R3, [x1]))
    assert module_quotient(M, FreeModuleElement(R3, [x1 * x2, x1])).is_unit()
    assert module_quotient(M, FreeModuleElement.zero(R3, 2)).is_unit()


def test_intersection_examples():
    assert ideal_equal(intersect(Ideal(R3, [x1]), Ideal(R3, [x2])), Ideal(R3, [x1 * x2]))
    I = Ideal(R3, [x1**2 + x3, x2])
    assert ideal_equal(intersect(I, Ideal.unit(R3)), I)
    assert ideal_equal(intersect(Ideal(R3, [x1, x2]), Ideal(R3, [x1, x3])), Ideal(R3, [x1, x2 * x3]))


def test_radical_examples():
    assert radical_member(x1, Ideal(R3, [x1**2]))
    assert not radical_member(x2, Ideal(R3, [x1**2]))
    assert radical_member(x1 + x2, Ideal(R3, [x1**2, x2**2]))
    assert radical_equal(Ideal(R3, [x1**2]), Ideal(R3, [x1]))
    assert not radical_equal(Ideal(R3, [x1]), Ideal(R3, [x2]))
    assert not radical_member(x1, Ideal(R3, [x1**2 + x2**2]))


def test_dimension_examples():
    y = R4.gens()
    assert ideal_dimension(Ideal(R4, [y[1], y[2], y[3]])) == 1
    assert ideal_dimension(Ideal(R4, [])) == 4
    assert ideal_dimension(Ideal(R3, [x1 * x2])) == 2
    assert ideal_dimension(Ideal(R3, [x1**2, x1 * x2])) == 2
    assert ideal_dimension(Ideal.unit(R3)) == -1
    assert ideal_dimension(Ideal(R3, [x1 - 1, x2 - 2, x3])) == 0


def test_resource_limit_is_a_hard_error():
    I = Ideal(R3, [x1**2 * x2 - x3**3, x1 * x2 * x3 - x2**2, x3**2 * x1 + x1])
    with limits(max_spairs=2):
        with pytest.raises(ResourceLimitError):
            I.groebner_basis()


def _random_homogeneous_ideal(rng):
    ngens = rng.randint(1, 3)
    return [random_poly(rng, R3, rng.randint(1, 3), terms=rng.randint(1, 3)) for _ in range(ngens)]


def test_membership_against_graded_oracle():
    """60 random homogeneous ideals, every degree up to 6."""
    rng = random.Random(20240611)
    checked = 0
    for _ in range(60):
        gens = [g for g in _random_homogeneous_ideal(rng) if g]
        if not gens:
            continue
        I = Ideal(R3, gens)
        for d in range(7):
            assert graded_piece_dimension(I, d) == oracles.graded_dimension(gens, d, 3)
            candidates = [random_poly(rng, R3, d, terms=2)]
            g = rng.choice(gens)
            dg = g.homogeneous_degree()
            if dg <= d:
                m = random_poly(rng, R3, d - dg, terms=2)
                candidates.append(m * g)
            for p in candidates:
                if p.is_zero():
                    continue
                assert ideal_member(p, I) == oracles.graded_member(p, gens)
        checked += 1
    assert checked >= 50


def test_quotient_soundness_and_completeness():
    rng = random.Random(7)
    for _ in range(15):
        gens = [g for g in _random_homogeneous_ideal(rng) if g]
        if not gens:
            continue
        I = Ideal(R3, gens)
        f = random_poly(rng, R3, rng.randint(1, 2), terms=2)
        if f.is_zero():
            continue
        Q = ideal_quotient(I, f)
        for q in Q.groebner_basis():
            assert ideal_member(q * f, I)
        for d in range(5):
            for e in monomials_of_degree(3, d):
                m = R3.monomial(e)
                assert ideal_member(m, Q) == ideal_member(m * f, I)


def test_module_quotient_unit_iff_member():
    rng = random.Random(11)
    for _ in range(10):
        gens = [FreeModuleElement(R3, [random_poly(rng, R3, 1, terms=2) for _ in range(2)]) for _ in range(2)]
        gens = [g for g in gens if not g.is_zero()]
        if not gens:
            continue
        M = Submodule(R3, 2, gens)
        member = gens[0].scale(random_poly(rng, R3, 1, terms=2))
        other = FreeModuleElement(R3, [random_poly(rng, R3, 1, terms=2) for _ in range(2)])
        for v in (member, other):
            assert module_quotient(M, v).is_unit() == (submodule_member(v, M) is not None)


def test_radical_membership_sanity():
    rng = random.Random(3)
    for _ in range(10):
        gens = [g for g in _random_homogeneous_ideal(rng) if g]
        if not gens:
            continue
        I = Ideal(R3, gens)
        g = random_poly(rng, R3, 1, terms=2)
        if any(ideal_member(g**k, I) for k in range(1, 7)):
            assert radical_member(g, I)


def test_groebner_bases_are_deterministic():
    gens = [x1**2 * x2 - x3**3, x1 * x2 * x3 - x2**2, x3**2 * x1 + x1]
    first = groebner_basis(Ideal(R3, gens))
    for _ in range(3):
        assert groebner_basis(Ideal(R3, list(gens))) == first


def test_limits_parse_env():
    from folia.limits import parse_env
    assert parse_env("max_spairs=10,max_degree=4") == {"max_spairs": 10, "max_degree": 4}
    assert parse_env("") == {}
    with pytest.raises(ValueError):
        parse_env("bogus=1")
