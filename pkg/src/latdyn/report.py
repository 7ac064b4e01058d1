"""End-to-end analysis of a group document and corpus sweeps.

run_analyze executes every applicable stage over a MatrixGroupSpec and
collects the outcomes into one JSON-able report.  Stage failures are recorded
in place and never abort independent later stages.  Reports are deterministic:
given the same document, options, and seed the emitted bytes are identical
(wall-clock timings are only included on request, since they would break
that guarantee).

Violation identifiers are stable strings; documents may declare
expect_violation to exercise the negative paths of the checkers, and the
corpus runner grades observed violations against the declared ones.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .cones import fujiki_lieberman_pipeline, meng_zhang_report, preserves_cone
from .entropy import (
    EntropyKind,
    GradedRepresentation,
    check_degree_inequalities,
    classify_entropy,
    uniform_exponent,
)
from .groupspec import MatrixGroupSpec, SpecFormatError, load_spec_file
from .matrix import IntMatrix
from .series import (
    DEFAULT_WORD_BUDGET,
    corollary_chain_check,
    essential_length,
    group_series_report,
    robinson_check,
)
from .unipotent import unipotent_pipeline

REPORT_VERSION = 1


@dataclass(frozen=True)
class AnalyzeOptions:
    precision_bits: int = 16
    word_budget: int = DEFAULT_WORD_BUDGET
    group_cap: int = 10**6
    seed: int = 0
    include_timings: bool = False

    @property
    def width(self):
        return Fraction(1, 2**self.precision_bits)


def jsonable(obj):
    """Recursively convert to JSON-safe values; integers become decimal strings."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        raise TypeError("floats must not appear in reports")
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _matrix_doc(m):
    return [[x for x in row] for row in m.rows]


def _interval_doc(iv):
    return {"lo": iv.lo, "hi": iv.hi}


def _classification_doc(c):
    doc = {
        "kind": c.kind.value,
        "cyclotomic_profile": [[d, m] for d, m in c.cyclotomic_profile],
        "residual": list(c.residual.coeffs),
    }
    if c.quasi_order is not None:
        doc["quasi_order"] = c.quasi_order
    if c.spectral_radius is not None:
        doc["spectral_radius"] = _interval_doc(c.spectral_radius)
    return doc


def run_analyze(spec: MatrixGroupSpec, options: AnalyzeOptions | None = None) -> dict:
    """Full analysis report for one group document; see the module docstring."""
    options = options or AnalyzeOptions()
    t0 = time.monotonic()
    report = {
        "report_version": REPORT_VERSION,
        "name": spec.name,
        "r": spec.r,
        "n": spec.n,
        "num_generators": len(spec.generators),
        "options": {
            "precision_bits": options.precision_bits,
            "word_budget": options.word_budget,
            "group_cap": options.group_cap,
            "seed": options.seed,
        },
        "stages": {},
        "violations": [],
        "expect_violation": list(spec.expect_violation),
    }
    stages = report["stages"]
    violations = report["violations"]

    def run_stage(key, fn):
        try:
            stages[key] = fn()
        except Exception as e:  # recorded, never fatal to other stages
            stages[key] = {"error": f"{type(e).__name__}: {e}"}

    # --- entropy classification per generator --------------------------------
    classifications = []

    def stage_classify():
        for g in spec.generators:
            classifications.append(classify_entropy(g, width=options.width))
        all_zero = all(c.is_zero_entropy() for c in classifications)
        return {
            "generators": [_classification_doc(c) for c in classifications],
            "all_generators_zero_entropy": all_zero,
        }

    run_stage("entropy", stage_classify)

    # --- unipotence pipeline --------------------------------------------------
    pipeline = None

    def stage_pipeline():
        nonlocal pipeline
        pipeline = unipotent_pipeline(spec.generators, rank=spec.r)
        doc = {
            "applicable": pipeline.applicable,
            "message": pipeline.message,
        }
        if pipeline.applicable:
            doc["exponent_uniform"] = pipeline.exponent_uniform
            doc["exponent_effective"] = pipeline.exponent_effective
            doc["certified"] = pipeline.certified
            if pipeline.verdict is not None and pipeline.verdict.certificate is not None:
                cert = pipeline.verdict.certificate
                doc["flag_dims"] = list(cert.flag_dims)
                doc["basis_change"] = [[_frac(x) for x in row] for row in cert.basis_change.rows]
            if pipeline.verdict is not None and pipeline.verdict.witness is not None:
                w = pipeline.verdict.witness
                doc["witness"] = {
                    "algebra_word": list(w.algebra_word),
                    "group_word": [list(t) for t in w.group_word] if w.group_word else None,
                }
        return doc

    run_stage("unipotent_pipeline", stage_pipeline)

    # --- zero-entropy status (honest semi-decision) ---------------------------
    def stage_zero_entropy():
        all_zero = all(c.is_zero_entropy() for c in classifications) if classifications else None
        certified = bool(pipeline and pipeline.applicable and pipeline.certified)
        # bounded word sweep: quasi-unipotent generators can still produce
        # positive entropy words, so sample the ball and classify every element
        budget = min(options.word_budget, 6)
        checked, bad_word = _word_ball_entropy_sweep(spec.generators, budget, cap=200)
        if not all_zero:
            statement = "a generator has positive entropy"
        elif bad_word is not None:
            statement = f"positive entropy word found at length {len(bad_word)}"
        elif certified:
            statement = (
                "zero entropy on all checked words; the candidate finite-index image is "
                "certified unipotent, so the group is zero entropy if that image has finite "
                "index (finite-index-ness itself is not decided here)"
            )
        else:
            statement = (
                f"zero entropy unverified beyond words of length {budget}; "
                "no full-group claim is made"
            )
        return {
            "generators_zero_entropy": all_zero,
            "words_checked": checked,
            "word_length_bound": budget,
            "positive_entropy_word": list(bad_word) if bad_word else None,
            "image_certified_unipotent": certified,
            "statement": statement,
        }

    run_stage("zero_entropy", stage_zero_entropy)

    # --- series and bounds -----------------------------------------------------
    series_report = None

    def stage_series():
        nonlocal series_report
        if not (pipeline and pipeline.applicable and pipeline.certified):
            return {"skipped": "requires a certified unipotent image"}
        series_report = group_series_report(pipeline.replaced_generators, budget=options.word_budget)
        return {
            "derived_length": series_report.derived_length,
            "nilpotency_class": series_report.nilpotency_class,
            "derived_dims": list(series_report.derived_dims),
            "lcs_dims": list(series_report.lcs_dims),
            "word_search_lower_bound": series_report.word_search_lower_bound,
            "word_budget": series_report.word_budget,
        }

    run_stage("series", stage_series)

    essential_report = None

    def stage_essential():
        nonlocal essential_report
        if spec.n is None:
            return {"skipped": "no ambient dimension declared"}
        if not (pipeline and pipeline.applicable and pipeline.certified):
            return {"skipped": "requires a certified unipotent image"}
        rep = essential_length(
            spec.generators, spec.n, gradings=dict(spec.gradings) or None,
            budget=options.word_budget, pipeline=pipeline, series=series_report,
        )
        essential_report = rep
        doc = {
            "value": rep.value,
            "bound": spec.n - 1,
            "holds": rep.bound_holds,
            "maximal": rep.maximal,
            "statement": rep.message,
        }
        if rep.per_degree:
            doc["per_degree"] = [[k, v] for k, v in rep.per_degree]
            if len({v for _, v in rep.per_degree} | {rep.value}) > 1:
                violations.append("cross_degree_consistency")
        if rep.bound_holds is False:
            violations.append("essential_length_bound")
        return doc

    run_stage("essential_length", stage_essential)

    def stage_robinson():
        if series_report is None:
            return {"skipped": "requires the series stage"}
        v = robinson_check(series_report.derived_length, series_report.nilpotency_class)
        if not v.holds:
            violations.append("robinson")
        return {
            "holds": v.holds,
            "statement": "derived length vs nilpotency class: " + v.statement,
        }

    run_stage("robinson", stage_robinson)

    def stage_chain():
        if spec.kernel_abelian is None:
            return {"skipped": "no kernel_abelian flag"}
        if spec.n is None:
            return {"skipped": "no ambient dimension declared"}
        rep = corollary_chain_check(
            spec.generators, spec.n, spec.kernel_abelian,
            budget=options.word_budget, essential=essential_report,
        )
        if not rep.applicable:
            return {"skipped": rep.message}
        if rep.holds is False:
            violations.append("corollary_chain")
        return {
            "image_length": rep.image_length,
            "chain_value": rep.chain_value,
            "bound": rep.ambient_n,
            "holds": rep.holds,
            "statement": rep.message,
        }

    run_stage("corollary_chain", stage_chain)

    # --- graded degree growth ---------------------------------------------------
    def stage_degrees():
        if spec.n is None:
            return {"skipped": "no ambient dimension declared"}
        gradings = dict(spec.gradings)
        if gradings:
            degrees = []
            for k in range(spec.n + 1):
                if k in gradings:
                    degrees.append(tuple(gradings[k]))
                elif k == 0:
                    degrees.append(tuple(IntMatrix([[1]]) for _ in spec.generators))
                elif k == spec.n:
                    degrees.append(tuple(IntMatrix([[g.det()]]) for g in spec.generators))
                elif k == 1:
                    degrees.append(tuple(spec.generators))
                else:
                    degrees.append(tuple(g.exterior_power(k) for g in spec.generators))
            rep = GradedRepresentation(spec.n, degrees)
            checked = rep.spot_check_homomorphy()
        elif spec.n - 1 <= spec.r:
            rep = GradedRepresentation.compound_model(spec.generators, spec.n)
            checked = None
        else:
            return {"skipped": "ambient dimension exceeds rank + 1; no compound model"}
        reports = check_degree_inequalities(rep, width=options.width)
        rows = []
        any_fail = False
        for dr in reports:
            rows.append(
                {
                    "generator": dr.generator,
                    "degrees": [_interval_doc(iv) for iv in dr.degrees],
                    "submultiplicative": list(dr.submultiplicative),
                    "log_concave": list(dr.log_concave),
                }
            )
            any_fail = any_fail or any(
                v == "fails" for v in dr.submultiplicative + dr.log_concave
            )
        if any_fail:
            violations.append("degree_inequalities")
        doc = {"model": "supplied gradings" if gradings else "compound matrices", "generators": rows}
        if checked is not None:
            doc["homomorphy_collisions_checked"] = checked
        return doc

    run_stage("degree_growth", stage_degrees)

    # --- cone dynamics ------------------------------------------------------------
    def stage_cone():
        if spec.cone_rays is None:
            return {"skipped": "no cone declared"}
        cone = spec.cone()
        rows = []
        for i, g in enumerate(spec.generators):
            if not preserves_cone(g, cone):
                rows.append({"generator": i, "preserves": False})
                continue
            mz = meng_zhang_report(g, 1, cone)
            rows.append(
                {
                    "generator": i,
                    "preserves": True,
                    "interior_fixed": list(mz.interior_fixed) if mz.interior_fixed else None,
                    "power_bounded": mz.power_bounded_exact,
                    "diagonalizable": mz.diagonalizable,
                    "eigen_moduli_all_one": mz.eigen_moduli_all_q,
                    "iterate_norm_bound": mz.numeric_iterate_bound,
                    "sample_range": mz.sample_range,
                }
            )
        return {"facets": [list(f) for f in cone.facets], "generators": rows}

    run_stage("cone", stage_cone)

    def stage_fl():
        if spec.cone_rays is None or spec.fixed_classes is None:
            return {"skipped": "requires a cone and per-generator fixed classes"}
        rep = fujiki_lieberman_pipeline(
            spec.generators, spec.cone(), spec.fixed_classes, rank=spec.r, group_cap=options.group_cap
        )
        if not rep.success:
            violations.append("fl_pipeline")
        return {
            "success": rep.success,
            "exponent": rep.exponent,
            "image_order": rep.image_order,
            "conclusion": rep.conclusion,
            "steps": [
                {
                    "generator": s.generator,
                    "cone_preserved": s.cone_preserved,
                    "class_fixed": s.class_fixed,
                    "class_interior": s.class_interior,
                    "power_bounded": s.power_bounded,
                    "dual_interior_fixed": list(s.dual_interior_fixed) if s.dual_interior_fixed else None,
                    "order_divides_exponent": s.order_divides_exponent,
                    "ok": s.ok,
                    "message": s.message,
                }
                for s in rep.steps
            ],
        }

    run_stage("fujiki_lieberman", stage_fl)

    # --- violation bookkeeping ------------------------------------------------------
    stage_errors = sorted(k for k, v in stages.items() if isinstance(v, dict) and "error" in v)
    report["stage_errors"] = stage_errors
    observed = sorted(set(violations))
    expected = set(spec.expect_violation)
    report["violations"] = observed
    report["unexpected_violations"] = sorted(set(observed) - expected)
    report["missing_expected_violations"] = sorted(expected - set(observed))
    report["ok"] = not report["unexpected_violations"] and not report["missing_expected_violations"] and not stage_errors
    if options.include_timings:
        report["timings"] = {"total_seconds": f"{time.monotonic() - t0:.3f}"}
    return report


def _frac(x):
    return Fraction(x)


def _word_ball_entropy_sweep(generators, radius, cap=200):
    """Classify every element of a capped word ball; returns (count, bad_word).

    bad_word is a tuple of (generator index, exponent) letters for the first
    positive entropy element found in BFS order, or None.
    """
    from .entropy import strip_cyclotomic_factors

    if not generators:
        return 0, None
    dim = generators[0].dim
    letters = [((i, 1), g) for i, g in enumerate(generators)]
    letters += [((i, -1), g.inverse()) for i, g in enumerate(generators)]
    identity = IntMatrix.identity(dim)
    seen = {identity.rows}
    frontier = [((), identity)]
    checked = 0
    for _ in range(radius):
        nxt = []
        for word, mat in frontier:
            for letter, lm in letters:
                nm = mat * lm
                if nm.rows in seen:
                    continue
                seen.add(nm.rows)
                checked += 1
                _, residual = strip_cyclotomic_factors(nm.char_poly())
                if residual.degree() > 0:
                    return checked, word + (letter,)
                nxt.append((word + (letter,), nm))
                if len(seen) > cap:
                    return checked, None
        frontier = nxt
    return checked, None


def report_to_json(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# corpus runner


def run_corpus(directory, options: AnalyzeOptions | None = None):
    """Analyze every .json document under directory; returns (summary, reports).

    Files are processed in sorted order (analysis is per-file deterministic,
    so the aggregate is order-independent); unreadable files are reported
    individually instead of aborting the sweep.
    """
    options = options or AnalyzeOptions()
    directory = Path(directory)
    files = sorted(p for p in directory.glob("*.json"))
    reports = {}
    input_errors = {}
    for path in files:
        try:
            spec = load_spec_file(path)
        except (OSError, SpecFormatError) as e:
            input_errors[path.name] = str(e)
            continue
        reports[path.name] = run_analyze(spec, options)

    rows = []
    harness = []
    any_violation = False
    for fname in sorted(reports):
        rep = reports[fname]
        stages = rep["stages"]
        essential = stages.get("essential_length", {})
        series = stages.get("series", {})
        row = {
            "file": fname,
            "name": rep["name"],
            "n": rep["n"],
            "essential_length": essential.get("value"),
            "bound_holds": essential.get("holds"),
            "nilpotency_class": series.get("nilpotency_class"),
            "violations": rep["violations"],
            "unexpected_violations": rep["unexpected_violations"],
            "missing_expected_violations": rep["missing_expected_violations"],
            "stage_errors": rep["stage_errors"],
            "ok": rep["ok"],
        }
        rows.append(row)
        any_violation = any_violation or not rep["ok"]
        if rep["n"] is not None and series.get("nilpotency_class") is not None:
            harness.append(
                {
                    "name": rep["name"],
                    "n": rep["n"],
                    "nilpotency_class": series["nilpotency_class"],
                    "n_minus_1": rep["n"] - 1,
                    "within": series["nilpotency_class"] <= rep["n"] - 1,
                }
            )
    summary = {
        "files_analyzed": len(reports),
        "input_errors": input_errors,
        "rows": rows,
        "nilpotency_vs_bound": harness,
        "max_nilpotency_class": max((h["nilpotency_class"] for h in harness), default=None),
        "all_ok": not any_violation,
    }
    if any_violation:
        summary["exit_code"] = 1
    elif input_errors:
        summary["exit_code"] = 2
    else:
        summary["exit_code"] = 0
    return summary, reports
