"""Parsing and emission of matrix group documents.

The on-disk format is JSON with one convention: every integer is encoded as a
decimal string (and rationals as "p/q" strings), so arbitrary-precision
entries survive any tooling that would otherwise round-trip through doubles.
Parsing validates all structural invariants up front with positional error
messages; emission is deterministic, and parse(emit(spec)) == spec holds
field for field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .cones import cone_from_rays
from .matrix import IntMatrix


class SpecFormatError(ValueError):
    """Malformed group document; message carries the position of the offence."""


def _parse_int(value, where):
    if isinstance(value, bool):
        raise SpecFormatError(f"{where}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise SpecFormatError(f"{where}: {value!r} is not a decimal integer") from None
    raise SpecFormatError(f"{where}: expected an integer (as decimal string), got {type(value).__name__}")


def _parse_rational(value, where):
    if isinstance(value, bool):
        raise SpecFormatError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except ValueError:
            raise SpecFormatError(f"{where}: {value!r} is not a rational (use 'p' or 'p/q')") from None
    raise SpecFormatError(f"{where}: expected a rational string, got {type(value).__name__}")


def _parse_matrix(value, size, where):
    if not isinstance(value, list) or len(value) != size:
        raise SpecFormatError(f"{where}: expected {size} rows, got {len(value) if isinstance(value, list) else type(value).__name__}")
    rows = []
    for i, row in enumerate(value):
        if not isinstance(row, list) or len(row) != size:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise SpecFormatError(f"{where} row {i}: expected {size} entries, got {got}")
        rows.append([_parse_int(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return IntMatrix(rows)


@dataclass(frozen=True)
class ExpectedValue:
    key: str
    value: str
    provenance: str


@dataclass(frozen=True)
class MatrixGroupSpec:
    """A named finitely generated unimodular matrix group with optional extras.

    ``expected`` annotations are test-harness data only; no algorithm in the
    package reads them as truth.
    """

    name: str
    r: int
    generators: tuple
    n: int | None = None
    gradings: tuple = ()  # sorted ((degree, (IntMatrix, ...)), ...)
    cone_rays: tuple | None = None
    fixed_classes: tuple | None = None
    kernel_abelian: bool | None = None
    expected: tuple = ()
    expect_violation: tuple = ()

    def gradings_map(self):
        return {k: list(ms) for k, ms in self.gradings}

    def cone(self):
        return cone_from_rays(self.cone_rays) if self.cone_rays is not None else None

    def expected_map(self):
        return {e.key: e for e in self.expected}


def parse_spec(text_or_obj) -> MatrixGroupSpec:
    """Parse and validate a group document (JSON text or already-loaded object)."""
    if isinstance(text_or_obj, str):
        try:
            doc = json.loads(text_or_obj)
        except json.JSONDecodeError as e:
            raise SpecFormatError(f"not valid JSON: {e}") from None
    else:
        doc = text_or_obj
    if not isinstance(doc, dict):
        raise SpecFormatError("top level must be an object")
    unknown = set(doc) - {
        "name", "n", "r", "generators", "gradings", "cone", "fixed_classes",
        "kernel_abelian", "expected", "expect_violation",
    }
    if unknown:
        raise SpecFormatError(f"unknown fields: {sorted(unknown)}")
    if "name" not in doc or not isinstance(doc["name"], str):
        raise SpecFormatError("'name' (string) is required")
    name = doc["name"]
    if "r" not in doc:
        raise SpecFormatError("'r' (lattice rank) is required")
    r = _parse_int(doc["r"], "r")
    if r < 1:
        raise SpecFormatError(f"r: must be >= 1, got {r}")
    n = None
    if doc.get("n") is not None:
        n = _parse_int(doc["n"], "n")
        if n < 1:
            raise SpecFormatError(f"n: must be >= 1, got {n}")
    gens_doc = doc.get("generators")
    if not isinstance(gens_doc, list) or not gens_doc:
        raise SpecFormatError("'generators' must be a non-empty list of matrices")
    generators = []
    for i, g in enumerate(gens_doc):
        m = _parse_matrix(g, r, f"generators[{i}]")
        det = m.det()
        if abs(det) != 1:
            raise SpecFormatError(f"generators[{i}]: determinant is {det}, expected +-1 (unimodular)")
        generators.append(m)

    gradings = []
    if doc.get("gradings") is not None:
        if n is None:
            raise SpecFormatError("gradings require the ambient dimension 'n'")
        if not isinstance(doc["gradings"], dict):
            raise SpecFormatError("'gradings' must map degree -> list of matrices")
        for key in sorted(doc["gradings"], key=lambda s: _parse_int(s, "gradings key")):
            k = _parse_int(key, f"gradings[{key!r}] key")
            if not 0 <= k <= n:
                raise SpecFormatError(f"gradings[{key!r}]: degree out of range 0..{n}")
            mats_doc = doc["gradings"][key]
            if not isinstance(mats_doc, list) or len(mats_doc) != len(generators):
                raise SpecFormatError(
                    f"gradings[{key!r}]: need one matrix per generator ({len(generators)})"
                )
            size = None
            mats = []
            for gi, md in enumerate(mats_doc):
                if size is None:
                    if not isinstance(md, list) or not md:
                        raise SpecFormatError(f"gradings[{key!r}][{gi}]: expected a matrix")
                    size = len(md)
                mats.append(_parse_matrix(md, size, f"gradings[{key!r}][{gi}]"))
            if k == 1 and any(m.rows != g.rows for m, g in zip(mats, generators)):
                raise SpecFormatError("gradings['1'] must equal the generators")
            if k in (0, n) and size != 1:
                raise SpecFormatError(f"gradings[{key!r}]: degrees 0 and n are 1x1 by convention")
            gradings.append((k, tuple(mats)))

    cone_rays = None
    if doc.get("cone") is not None:
        cdoc = doc["cone"]
        if not isinstance(cdoc, dict) or "rays" not in cdoc:
            raise SpecFormatError("'cone' must be an object with a 'rays' list")
        rays = []
        for i, ray in enumerate(cdoc["rays"]):
            if not isinstance(ray, list):
                raise SpecFormatError(f"cone.rays[{i}]: expected a vector")
            rays.append(tuple(_parse_int(x, f"cone.rays[{i}][{j}]") for j, x in enumerate(ray)))
        try:
            cone_from_rays(rays)  # validates salient + full-dimensional
        except ValueError as e:
            raise SpecFormatError(f"cone: {e}") from None
        cone_rays = tuple(rays)

    fixed_classes = None
    if doc.get("fixed_classes") is not None:
        if cone_rays is None:
            raise SpecFormatError("fixed_classes require a cone")
        fdoc = doc["fixed_classes"]
        if not isinstance(fdoc, list) or len(fdoc) != len(generators):
            raise SpecFormatError(f"fixed_classes: need one vector per generator ({len(generators)})")
        dim = len(cone_rays[0])
        out = []
        for i, vec in enumerate(fdoc):
            if not isinstance(vec, list) or len(vec) != dim:
                raise SpecFormatError(f"fixed_classes[{i}]: expected a vector of length {dim}")
            out.append(tuple(_parse_rational(x, f"fixed_classes[{i}][{j}]") for j, x in enumerate(vec)))
        fixed_classes = tuple(out)

    kernel_abelian = None
    if doc.get("kernel_abelian") is not None:
        if not isinstance(doc["kernel_abelian"], bool):
            raise SpecFormatError("kernel_abelian must be a boolean")
        kernel_abelian = doc["kernel_abelian"]

    expected = []
    if doc.get("expected") is not None:
        if not isinstance(doc["expected"], dict):
            raise SpecFormatError("'expected' must map names to annotated values")
        for key in sorted(doc["expected"]):
            entry = doc["expected"][key]
            if not isinstance(entry, dict) or "value" not in entry or "provenance" not in entry:
                raise SpecFormatError(f"expected[{key!r}]: need 'value' and 'provenance'")
            expected.append(ExpectedValue(key=key, value=str(entry["value"]), provenance=str(entry["provenance"])))

    expect_violation = ()
    if doc.get("expect_violation") is not None:
        if not isinstance(doc["expect_violation"], list) or not all(
            isinstance(v, str) for v in doc["expect_violation"]
        ):
            raise SpecFormatError("expect_violation must be a list of violation names")
        expect_violation = tuple(doc["expect_violation"])

    return MatrixGroupSpec(
        name=name,
        r=r,
        generators=tuple(generators),
        n=n,
        gradings=tuple(gradings),
        cone_rays=cone_rays,
        fixed_classes=fixed_classes,
        kernel_abelian=kernel_abelian,
        expected=tuple(expected),
        expect_violation=expect_violation,
    )


def emit_spec(spec: MatrixGroupSpec) -> str:
    """Serialize back to the document format; deterministic byte-for-byte."""
    doc = {
        "name": spec.name,
        "r": str(spec.r),
        "generators": [[[str(x) for x in row] for row in g.rows] for g in spec.generators],
    }
    if spec.n is not None:
        doc["n"] = str(spec.n)
    if spec.gradings:
        doc["gradings"] = {
            str(k): [[[str(x) for x in row] for row in m.rows] for m in mats]
            for k, mats in spec.gradings
        }
    if spec.cone_rays is not None:
        doc["cone"] = {"rays": [[str(x) for x in ray] for ray in spec.cone_rays]}
    if spec.fixed_classes is not None:
        doc["fixed_classes"] = [[_frac_str(x) for x in vec] for vec in spec.fixed_classes]
    if spec.kernel_abelian is not None:
        doc["kernel_abelian"] = spec.kernel_abelian
    if spec.expected:
        doc["expected"] = {
            e.key: {"value": e.value, "provenance": e.provenance} for e in spec.expected
        }
    if spec.expect_violation:
        doc["expect_violation"] = list(spec.expect_violation)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _frac_str(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def load_spec_file(path) -> MatrixGroupSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_spec(fh.read())
