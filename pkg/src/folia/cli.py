"""Command line front end: ``folia COMMAND FILE [options]``.

Exit codes: 0 success, 1 a requested mathematical check failed, 2 parse or
semantic error, 3 resource limit exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from . import __version__
from .corpus import run_corpus
from .dsl import Document, parse, parse_form
from .errors import FoliaError, PreconditionError
from .extalg import format_form
from .foliation import (
    FoliationForm,
    TangentFrame,
    check_descent,
    check_integrability,
    check_plucker,
    check_torsion_free_codim,
    decomposability_defect,
    default_oracle_bound,
    inclusion_report,
    is_kupka_point,
    is_persistent_point,
    oracle_agrees,
    persistent_ideal,
    tangent_frame,
)
from .groebner import Ideal
from .limits import ResourceLimitError, current, limits, parse_env
from .unfolding import (
    UnfoldingDatum,
    build_unfolding_codimq,
    solve_flatness,
    unfolding_eta,
    unfolding_from_persistent,
    unfolding_nonvanishing,
    verify_unfolding,
)

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3
COMMANDS = ("check", "ideals", "compare", "decompose", "unfold")


# serialization


def _degrevlex(p):
    ring = p.ring
    return p if ring.order == "degrevlex" else p.change_ring(ring.with_order("degrevlex"))


def _canon(p) -> str:
    return str(_degrevlex(p))


def _ideal_json(I: Ideal) -> List[str]:
    """Reduced Gröbner basis printed in degrevlex, largest leading term first."""
    gens = [_degrevlex(g) for g in I.groebner_basis()]
    gens.sort(key=lambda g: g.ring.monomial_key(g.leading_monomial()), reverse=True)
    return [str(g) for g in gens]


def _form_json(f) -> str:
    ring = f.ring
    if ring.order != "degrevlex":
        f = f.change_ring(ring.with_order("degrevlex"))
    return format_form(f)


def _checks(w: FoliationForm) -> dict:
    return {
        "plucker": check_plucker(w),
        "frobenius": check_integrability(w),
        "descent": check_descent(w) if w.ambient == "projective" else None,
        "torsion_free_codim": check_torsion_free_codim(w),
    }


def _failed(checks: dict) -> bool:
    return any(v is False for v in checks.values())


# commands


def run_analysis(doc: Document, command: str, form: Optional[str] = None, h: Optional[str] = None,
                 frame: Optional[str] = None):
    """Return (report fields, exit code) for one form of ``doc``."""
    w = doc.foliation(form)
    name = form or next(iter(doc.forms))
    out = {"form": name, "q": w.q, "ambient": w.ambient}
    checks = _checks(w)
    out["checks"] = checks
    code = EXIT_CHECK if _failed(checks) else EXIT_OK

    if command == "check":
        return out, code

    if command == "decompose":
        E = doc.frame(frame) if frame else tangent_frame(w)
        out["tangent_frame"] = [_form_json(g) for g in E.generators]
        out["relations"] = [[_canon(c) for c in r.entries] for r in E.relations.generators]
        if checks["plucker"]:
            out["ideals"] = {"defect": _ideal_json(decomposability_defect(w, E))}
        return out, code

    if not checks["frobenius"]:
        return out, EXIT_CHECK

    if command in ("ideals", "compare"):
        rep = inclusion_report(w, radicals=command == "compare")
        out["ideals"] = {k: _ideal_json(v) for k, v in rep.ideals.items()}
        out["ideals"]["defect"] = _ideal_json(rep.decomposability_defect)
        out["inclusions"] = rep.inclusions
        if rep.observed:
            out["observed_inclusions"] = rep.observed
        out["dimensions"] = rep.dimensions
        out["codimensions"] = rep.codimensions
        out["flags"] = rep.flags
        if any(v is False for v in rep.inclusions.values()):
            code = EXIT_CHECK
        if doc.points:
            I = rep.ideals["I"]
            pts = {}
            for pname, p in doc.points.items():
                singular = all(f.evaluate(p) == 0 for f in w.form.coefficients())
                pts[pname] = {
                    "singular": singular,
                    "kupka": is_kupka_point(w, p),
                    "persistent": is_persistent_point(w, p, I) if singular else None,
                }
            out["points"] = pts
        if command == "compare" and w.coefficient_degree is not None:
            bound = current().max_degree
            bound = default_oracle_bound(w) if bound is None else bound
            agrees = oracle_agrees(w, rep.ideals["I"], bound)
            out["oracle"] = {"max_degree": bound, "agrees": agrees}
            if not agrees:
                code = EXIT_CHECK
        return out, code

    if command == "unfold":
        return _unfold(doc, w, out, code, h, frame)
    raise ValueError(f"unknown command {command!r}")


def _unfold(doc, w, out, code, h, frame):
    ring = w.ring
    hs = [parse_form(t, ring) for t in h.split(",")] if h else None
    if hs is not None and any(f.degree != 0 and not f.is_zero() for f in hs):
        raise PreconditionError("--h expects functions")
    hs = [f[()] for f in hs] if hs is not None else None
    results = []
    if w.q == 1:
        E = TangentFrame([w.form], None)
        candidates = hs if hs is not None else persistent_ideal(w).groebner_basis()
        for hi in candidates:
            built = unfolding_from_persistent(w, hi)
            entry = {"h": [_canon(ring(hi))]}
            if built is None:
                entry["persistent"] = False
                code = EXIT_CHECK
            else:
                wt, datum = built
                entry.update(_unfolding_json(wt, E, datum, doc))
                if not entry["verified"]:
                    code = EXIT_CHECK
            results.append(entry)
    else:
        E = doc.frame(frame) if frame else tangent_frame(w)
        alpha = solve_flatness(E) if len(E.generators) == w.q else None
        out["flatness"] = alpha is not None
        if alpha is None:
            out["unfoldings"] = []
            return out, EXIT_CHECK
        if hs is None:
            hs = [ring.one()] + [ring.zero()] * (w.q - 1)
        if len(hs) != w.q:
            raise PreconditionError(f"--h needs {w.q} comma separated functions")
        wt = build_unfolding_codimq(E, hs, alpha)
        datum = UnfoldingDatum(hs, unfolding_eta(E, hs, alpha), alpha)
        entry = {"h": [_canon(x) for x in hs]}
        entry.update(_unfolding_json(wt, E, datum, doc))
        if not entry["verified"]:
            code = EXIT_CHECK
        results.append(entry)
    out["unfoldings"] = results
    return out, code


def _unfolding_json(wt, E, datum, doc):
    return {
        "eta": [_form_json(e) for e in datum.eta],
        "unfolding": {
            "base": _form_json(wt.base),
            "eps": _form_json(wt.eps),
            "deps": _form_json(wt.deps),
        },
        "verified": verify_unfolding(wt, E, datum),
        "nonvanishing": {k: unfolding_nonvanishing(wt, p) for k, p in doc.points.items()},
    }


def _text(report: dict, indent: str = "") -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            for item in v:
                block = _text(item, indent + "    ")
                lines.append(indent + "  - " + block[len(indent) + 4:])
        elif isinstance(v, list):
            items = ("(" + ", ".join(x) + ")" if isinstance(x, list) else str(x) for x in v)
            lines.append(f"{indent}{k}: [{', '.join(items)}]")
        elif k != "input":
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(l for l in lines if l)


def _emit(report: dict, as_json: bool):
    if as_json:
        sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(_text(report) + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--max-spairs", type=int, help="S-pair budget for Gröbner computations")
    common.add_argument("--max-degree", type=int, help="degree bound of the graded cross-check")
    common.add_argument("--order", choices=("degrevlex", "lex"), default="degrevlex")
    common.add_argument("--no-timing", action="store_true", help="omit wall-clock time for reproducible output")

    ap = argparse.ArgumentParser(prog="folia", description="Singularity ideals of polynomial foliations.")
    ap.add_argument("--version", action="version", version=f"folia {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for cmd in COMMANDS:
        p = sub.add_parser(cmd, parents=[common])
        p.add_argument("file")
        p.add_argument("--form", help="name of the form to analyse (default: first)")
        if cmd in ("decompose", "unfold"):
            p.add_argument("--frame", help="use a declared frame instead of computing one")
        if cmd == "unfold":
            p.add_argument("--h", help="comma separated functions h_i")
    sub.add_parser("corpus", parents=[common])
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        overrides = parse_env()
    except ValueError as e:
        print(f"folia: {e}", file=sys.stderr)
        return EXIT_INPUT
    if args.max_spairs is not None:
        overrides["max_spairs"] = args.max_spairs
    if args.max_degree is not None:
        overrides["max_degree"] = args.max_degree

    start = time.perf_counter()
    report = {"version": __version__, "command": args.command}
    try:
        with limits(**overrides) as lim:
            report["limits"] = {"max_spairs": lim.max_spairs, "max_degree": lim.max_degree}
            if args.command == "corpus":
                code = _run_corpus(report)
            else:
                with open(args.file, encoding="utf-8") as fh:
                    text = fh.read()
                report["input"] = text
                doc = parse(text, args.order)
                fields, code = run_analysis(
                    doc, args.command, args.form, getattr(args, "h", None), getattr(args, "frame", None)
                )
                report.update(fields)
    except OSError as e:
        print(f"folia: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as e:
        print(f"folia: resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except PreconditionError as e:
        print(f"folia: {e}", file=sys.stderr)
        return EXIT_CHECK
    except FoliaError as e:
        print(f"folia: {e}", file=sys.stderr)
        return EXIT_INPUT
    report["timing_ms"] = None if args.no_timing else round((time.perf_counter() - start) * 1000, 3)
    _emit(report, args.json)
    return code


def _run_corpus(report: dict) -> int:
    results = run_corpus()
    report["cases"] = {name: {"passed": not fails, "failures": fails} for name, fails in results}
    for name, fails in results:
        if fails:
            report["first_failure"] = name
            return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
