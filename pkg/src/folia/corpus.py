"""Built-in example documents and the expected outcome for each.

Every case is re-derived from scratch by :func:`run_case`: the document is
parsed and round-tripped through the printer, the checks are compared with
their expected values and, for integrable forms, the ideals J, I, K are
compared with the recorded generators. The structural invariants (inclusion
chain, radical coincidence for radical J in codimension one, graded
cross-check of I, unfoldings from persistent functions) are verified on
every case where they apply.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Dict, List, Optional

from .dsl import Document, parse, parse_form, print_document
from .foliation import (
    TangentFrame,
    check_descent,
    check_integrability,
    check_plucker,
    check_torsion_free_codim,
    inclusion_report,
    is_kupka_point,
    is_persistent_point,
    oracle_agrees,
)
from .groebner import Ideal, ideal_equal, radical_equal
from .unfolding import unfolding_from_persistent, verify_unfolding


@dataclass
class CorpusCase:
    name: str
    filename: str
    checks: Dict[str, Optional[bool]]
    ideals: Dict[str, List[str]] = field(default_factory=dict)
    # ideals only known up to radical
    radicals: Dict[str, List[str]] = field(default_factory=dict)
    flags: Dict[str, bool] = field(default_factory=dict)
    points: Dict[str, Dict[str, bool]] = field(default_factory=dict)


_LINEAR = {"plucker": True, "frobenius": True, "descent": True, "torsion_free_codim": True}
_AFFINE_OK = {"plucker": True, "frobenius": True, "descent": None, "torsion_free_codim": True}

CASES = [
    CorpusCase(
        "p3_example",
        "p3_example.fol",
        _LINEAR,
        ideals={"J": ["x1", "x2", "x3"], "K": ["x1", "x2", "x3"]},
        radicals={"I": ["x1", "x2", "x3"]},
        flags={"K_is_unit": False, "one_in_I": False},
        points={"p": {"kupka": True, "persistent": True}},
    ),
    CorpusCase(
        "a3_generic",
        "a3_generic.fol",
        _AFFINE_OK,
        ideals={"J": ["x1", "x2", "x3"], "K": ["x1", "x2", "x3"], "defect": ["x1", "x2", "x3"]},
        flags={"K_is_unit": False, "one_in_I": False, "locally_decomposable": False},
        points={"o": {"kupka": True, "persistent": True}},
    ),
    CorpusCase(
        "a3_special",
        "a3_special.fol",
        _AFFINE_OK,
        ideals={"J": ["x1", "x2", "x3"], "K": ["1"], "defect": ["x1", "x2", "x3"]},
        flags={"K_is_unit": True, "one_in_I": False, "locally_decomposable": False},
        points={"o": {"kupka": False, "persistent": True}},
    ),
    CorpusCase(
        "nondecomposable",
        "nondecomposable.fol",
        {"plucker": False, "frobenius": False, "descent": None, "torsion_free_codim": True},
    ),
    CorpusCase(
        "nonintegrable",
        "nonintegrable.fol",
        {"plucker": True, "frobenius": False, "descent": None, "torsion_free_codim": True},
    ),
    CorpusCase(
        "p2_linear",
        "p2_linear.fol",
        _LINEAR,
        ideals={"J": ["x0", "x1"], "I": ["x0", "x1"], "K": ["x0", "x1"]},
        points={"p": {"kupka": True, "persistent": True}},
    ),
    CorpusCase(
        "p3_linear",
        "p3_linear.fol",
        _LINEAR,
        ideals={"J": ["x0", "x1"], "I": ["x0", "x1"], "K": ["x0", "x1"]},
        points={"p": {"kupka": True, "persistent": True}},
    ),
    CorpusCase(
        "p2_shifted",
        "p2_shifted.fol",
        _LINEAR,
        ideals={"J": ["x0 + x1", "x2"], "I": ["x0 + x1", "x2"], "K": ["x0 + x1", "x2"]},
        points={"p": {"kupka": True, "persistent": True}},
    ),
    CorpusCase(
        "p2_pencil_1_2",
        "p2_pencil_1_2.fol",
        _LINEAR,
        ideals={"J": ["x0*x1", "x0*x2", "x1*x2"], "I": ["x0", "x1*x2"], "K": ["x0", "x1*x2"]},
        points={"p": {"kupka": False, "persistent": False}},
    ),
    CorpusCase(
        "p2_pencil_2_2",
        "p2_pencil_2_2.fol",
        _LINEAR,
        ideals={"I": ["x0^2 + x1*x2", "x0*x1"], "K": ["x0^2 + x1*x2", "x0*x1"]},
        points={"p": {"kupka": False, "persistent": True}},
    ),
    CorpusCase(
        "p3_pencil_2_2",
        "p3_pencil_2_2.fol",
        _LINEAR,
        ideals={"I": ["x0*x1", "x2*x3"], "K": ["x0*x1", "x2*x3"]},
        points={"p": {"kupka": True, "persistent": True}},
    ),
    CorpusCase(
        "a3_codim1",
        "a3_codim1.fol",
        _AFFINE_OK,
        ideals={"J": ["x1", "x2"], "I": ["x1", "x2"], "K": ["x1", "x2"]},
        points={"o": {"kupka": True, "persistent": True}},
    ),
]


def case(name: str) -> CorpusCase:
    for c in CASES:
        if c.name == name:
            return c
    raise KeyError(name)


def source(c: CorpusCase) -> str:
    return resources.files("folia").joinpath("corpus", c.filename).read_text(encoding="utf-8")


def load(c: CorpusCase) -> Document:
    return parse(source(c))


def _ideal(doc: Document, gens: List[str]) -> Ideal:
    ring = doc.ring
    return Ideal(ring, [parse_form(g, ring)[()] for g in gens])


def _variables_only(I: Ideal) -> bool:
    gens = I.groebner_basis()
    return all(len(g) == 1 and g.total_degree() == 1 for g in gens)


def run_case(c: CorpusCase) -> List[str]:
    """Failure messages for one case; empty when everything matches."""
    fail = []
    doc = load(c)
    if parse(print_document(doc)) != doc:
        fail.append("print/parse round trip changed the document")
    w = doc.foliation()
    checks = {
        "plucker": check_plucker(w),
        "frobenius": check_integrability(w),
        "descent": check_descent(w) if w.ambient == "projective" else None,
        "torsion_free_codim": check_torsion_free_codim(w),
    }
    for k, v in c.checks.items():
        if checks[k] != v:
            fail.append(f"check {k} = {checks[k]}, expected {v}")
    if not checks["frobenius"]:
        return fail

    rep = inclusion_report(w, radicals=True)
    ideals = dict(rep.ideals, defect=rep.decomposability_defect)
    for k, gens in c.ideals.items():
        if not ideal_equal(ideals[k], _ideal(doc, gens)):
            fail.append(f"ideal {k} = {ideals[k].groebner_basis()}, expected {gens}")
    for k, gens in c.radicals.items():
        if not radical_equal(ideals[k], _ideal(doc, gens)):
            fail.append(f"radical of {k} differs from {gens}")
    for k, v in c.flags.items():
        if rep.flags[k] != v:
            fail.append(f"flag {k} = {rep.flags[k]}, expected {v}")

    J, I, K = rep.ideals["J"], rep.ideals["I"], rep.ideals["K"]
    if not rep.inclusions["J<=I"] or not rep.inclusions["J<=K"]:
        fail.append(f"inclusions failed: {rep.inclusions}")
    if rep.inclusions["I<=K"] is False:
        fail.append("I is not contained in K")
    if w.q == 1 and _variables_only(J) and not rep.flags["rad_I=rad_K"]:
        fail.append("radicals of I and K differ although J is radical")
    if w.coefficient_degree is not None and not oracle_agrees(w, I):
        fail.append("graded cross-check disagrees with the persistent ideal")

    for pname, exp in c.points.items():
        p = doc.points[pname]
        got = {"kupka": is_kupka_point(w, p), "persistent": is_persistent_point(w, p, I)}
        for k, v in exp.items():
            if got[k] != v:
                fail.append(f"point {pname}: {k} = {got[k]}, expected {v}")

    if w.q == 1:
        E = TangentFrame([w.form], None)
        for h in I.groebner_basis():
            built = unfolding_from_persistent(w, h)
            if built is None:
                fail.append(f"no unfolding for persistent generator {h}")
                continue
            wt, datum = built
            if not verify_unfolding(wt, E, datum) or wt.restrict() != w.form:
                fail.append(f"unfolding for {h} does not verify")
    return fail


def run_corpus():
    """[(case name, failure messages)] for every built-in case."""
    return [(c.name, run_case(c)) for c in CASES]
