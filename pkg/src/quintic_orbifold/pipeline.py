"""Input files, end-to-end analysis, reports and batch runs."""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

from .cyclo import MAX_CONDUCTOR, format_coeff, parse_coeff
from .errors import (
    ConductorError,
    NotAutomorphismError,
    NotGorensteinError,
    OrbifoldError,
    SchemaError,
    SmoothnessError,
)
from .fixloc import f_lift, gorenstein_check
from .linalg import det
from .mckay import OrbifoldAnalysis
from .pgroup import DEFAULT_MAX_ORDER, close, element_order, normalize, perm_matrix
from .qform import NVARS, QuinticForm

log = logging.getLogger(__name__)

_TOP_KEYS = {"name", "description", "conductor", "quintic", "generators", "options"}


@dataclass(frozen=True)
class Options:
    max_group_order: int = DEFAULT_MAX_ORDER
    emit_classes: bool = True
    duality_check: bool = True
    expected_group_order: Optional[int] = None

    @classmethod
    def from_dict(cls, raw: dict) -> "Options":
        if not isinstance(raw, dict):
            raise SchemaError("'options' must be an object")
        unknown = set(raw) - set(cls.__dataclass_fields__)
        if unknown:
            raise SchemaError(f"unknown option(s): {', '.join(sorted(unknown))}")
        opts = cls(**raw)
        if not isinstance(opts.max_group_order, int) or opts.max_group_order < 1:
            raise SchemaError("max_group_order must be a positive integer")
        return opts


@dataclass(frozen=True)
class AnalysisInput:
    name: str
    conductor: int
    quintic: QuinticForm
    generators: tuple  # 5x5 matrices of CycNumber
    options: Options = field(default_factory=Options)
    description: str = ""


def _parse_matrix(raw, conductor: int, pos: int):
    if isinstance(raw, dict):
        if set(raw) != {"perm"} or not isinstance(raw["perm"], str):
            raise SchemaError(f"generator {pos}: expected {{'perm': 'cycles'}}")
        try:
            return perm_matrix(raw["perm"])
        except ValueError as exc:
            raise SchemaError(f"generator {pos}: {exc}") from None
    if not (isinstance(raw, list) and len(raw) == NVARS and all(isinstance(r, list) and len(r) == NVARS for r in raw)):
        raise SchemaError(f"generator {pos}: expected a 5x5 array of coefficient strings")
    rows = []
    for row in raw:
        if not all(isinstance(x, (str, int)) for x in row):
            raise SchemaError(f"generator {pos}: entries must be coefficient strings")
        rows.append(tuple(parse_coeff(str(x), conductor) for x in row))
    m = tuple(rows)
    if not det(m):
        raise SchemaError(f"generator {pos} is singular")
    return m


def parse_input(source: Union[str, os.PathLike, dict]) -> AnalysisInput:
    """Read and validate an input document (path to JSON, or an already-loaded dict)."""
    if isinstance(source, dict):
        doc, default_name = source, "input"
    else:
        path = Path(source)
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: not valid JSON ({exc})") from None
        default_name = path.stem
    if not isinstance(doc, dict):
        raise SchemaError("input must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise SchemaError(f"unknown field(s): {', '.join(sorted(unknown))}")
    for key in ("conductor", "quintic", "generators"):
        if key not in doc:
            raise SchemaError(f"missing field '{key}'")
    n = doc["conductor"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError("conductor must be a positive integer")
    if n > MAX_CONDUCTOR:
        raise ConductorError(f"conductor {n} exceeds the cap {MAX_CONDUCTOR}")
    if not isinstance(doc["quintic"], list) or not doc["quintic"]:
        raise SchemaError("'quintic' must be a non-empty list of terms")
    form = QuinticForm.from_records(doc["quintic"], n)
    if form.is_zero():
        raise SchemaError("the quintic is identically zero")
    if not isinstance(doc["generators"], list):
        raise SchemaError("'generators' must be a list")
    gens = tuple(_parse_matrix(g, n, i) for i, g in enumerate(doc["generators"]))
    return AnalysisInput(
        name=str(doc.get("name", default_name)),
        conductor=n,
        quintic=form,
        generators=gens,
        options=Options.from_dict(doc.get("options", {})),
        description=str(doc.get("description", "")),
    )


def input_to_dict(inp: AnalysisInput) -> dict:
    out = {
        "name": inp.name,
        "conductor": inp.conductor,
        "quintic": inp.quintic.to_records(inp.conductor),
        "generators": [[[format_coeff(x, inp.conductor) for x in row] for row in g] for g in inp.generators],
        "options": asdict(inp.options),
    }
    if inp.description:
        out["description"] = inp.description
    return out


def obvious_singularity(form: QuinticForm) -> Optional[int]:
    """A coordinate point where X is visibly singular, or None.

    F is singular at e_i exactly when it has no monomial x_i^5 or x_i^4 x_j.
    """
    for i in range(NVARS):
        if not any(e[i] >= 4 for e in form.terms):
            return i
    return None


# -- reports ------------------------------------------------------------------


@dataclass(frozen=True)
class AnalysisOutput:
    name: str
    group_order: int
    num_classes: int
    classes: list
    e_orbifold: int
    h11: int
    h21: int
    h22_check: Optional[int]
    pi1: dict
    warnings: list

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "AnalysisOutput":
        return cls(**{k: d[k] for k in cls.__dataclass_fields__})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @property
    def hodge_pair(self) -> tuple:
        return (self.h11, self.h21)


def describe_locus(strata: list) -> str:
    if not strata:
        return "empty"
    kinds = [s["kind"] for s in strata]
    if "WholeX" in kinds:
        return "X"
    points = sum(s["components"] for s in strata if s["kind"] in ("IsolatedPoint", "FinitePoints"))
    parts = []
    if points:
        parts.append(f"{points} pt" + ("s" if points > 1 else ""))
    for kind, short in (("LineInX", "line"), ("PlaneQuinticCurve", "C"), ("QuinticSurface", "S")):
        k = kinds.count(kind)
        if k:
            parts.append(short if k == 1 else f"{k} {short}")
    return " + ".join(parts)


def analyze(inp: AnalysisInput) -> AnalysisOutput:
    """gorenstein checks, closure, per-class fixed loci, orbifold invariants."""
    bad = obvious_singularity(inp.quintic)
    if bad is not None:
        raise SmoothnessError(f"X is singular at the coordinate point e{bad + 1}; a smooth quintic is required")
    for i, g in enumerate(inp.generators):
        check = gorenstein_check(g, inp.quintic)
        if not check.is_automorphism:
            raise NotAutomorphismError(f"generator {i} does not preserve the quintic")
        if not check.is_gorenstein:
            raise NotGorensteinError(f"generator {i} acts non-Gorensteinly: A(F) = ({check.scalar}) F, det A differs")
    table = close(inp.generators, inp.options.max_group_order)
    warnings = []
    expected = inp.options.expected_group_order
    if expected is not None and expected != table.order:
        warnings.append(f"generators produce a group of order {table.order}, expected {expected}")
    if len(set(table.generators)) < len(table.generators):
        warnings.append("some generators coincide projectively")
    for w in warnings:
        log.warning("%s: %s", inp.name, w)

    result = OrbifoldAnalysis(inp.quintic, table).run(inp.options.duality_check)
    classes = []
    if inp.options.emit_classes:
        for rep in result.classes:
            rec = rep.to_dict()
            rec["matrix"] = [[format_coeff(x, table.conductor) for x in row] for row in table.elements[rep.representative].matrix]
            rec["fixed_locus"] = describe_locus(rec["strata"])
            classes.append(rec)
    pi = result.pi1
    return AnalysisOutput(
        name=inp.name,
        group_order=table.order,
        num_classes=len(table.classes),
        classes=classes,
        e_orbifold=result.e_orbifold,
        h11=result.h11,
        h21=result.h21,
        h22_check=result.h22_check,
        pi1={
            "order": pi.order,
            "cyclic": pi.is_cyclic,
            "abelian_invariants": list(pi.abelian_invariants),
            "description": pi.describe(),
        },
        warnings=warnings,
    )


def verify(inp: AnalysisInput) -> list[dict]:
    """Per-generator automorphism/Gorenstein flags and F-lifting data."""
    out = []
    for i, g in enumerate(inp.generators):
        check = gorenstein_check(g, inp.quintic)
        rec = {"generator": i, "is_automorphism": check.is_automorphism, "is_gorenstein": check.is_gorenstein}
        pg = normalize(g)
        rec["order"] = element_order(pg, inp.options.max_group_order)
        if check.is_gorenstein:
            lift = f_lift(pg, inp.quintic, proj_order=rec["order"])
            rec["lift_order"] = lift.order
            rec["trace"] = format_coeff(lift.trace)
            rec["max_multiplicity"] = lift.max_multiplicity
        out.append(rec)
    return out


def format_table(out: AnalysisOutput) -> str:
    """Human-readable per-class table followed by the global invariants."""
    lines = [f"{out.name}: |G| = {out.group_order}, {out.num_classes} conjugacy classes"]
    if out.classes:
        rows = [
            ("class", [f"#{c['representative']}" for c in out.classes]),
            ("ord(g)", [c["order"] for c in out.classes]),
            ("#{g}", [c["size"] for c in out.classes]),
            ("|C(g)|", [c["centralizer_order"] for c in out.classes]),
            ("tr(A)", [c["trace"] for c in out.classes]),
            ("X^g", [c["fixed_locus"] for c in out.classes]),
            ("e(X^g)", [c["euler_fixed"] for c in out.classes]),
            ("h11_g", [c["h11"] for c in out.classes]),
            ("sum e", [c["size"] * c["centralizer_euler_sum"] for c in out.classes]),
        ]
        width = max(len(str(v)) for _, vals in rows for v in vals) + 2
        for label, vals in rows:
            lines.append(f"{label:<8}" + "".join(f"{str(v):>{width}}" for v in vals))
    h22 = "skipped" if out.h22_check is None else out.h22_check
    lines.append(
        f"e = {out.e_orbifold}  h11 = {out.h11}  h21 = {out.h21}  h22 check = {h22}  pi1 = {out.pi1['description']}"
    )
    lines.extend(f"warning: {w}" for w in out.warnings)
    return "\n".join(lines)


# -- batch --------------------------------------------------------------------


@dataclass(frozen=True)
class BatchResult:
    outputs: dict  # file name -> AnalysisOutput
    failures: dict  # file name -> error message

    @property
    def pairs(self) -> list:
        return sorted({o.hodge_pair for o in self.outputs.values()})

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "outputs": {k: v.to_dict() for k, v in sorted(self.outputs.items())},
            "failures": dict(sorted(self.failures.items())),
            "hodge_pairs": [list(p) for p in self.pairs],
        }

    def summary(self) -> str:
        lines = [f"{'file':<32}{'|G|':>6}{'h11':>6}{'h21':>6}{'e':>7}  pi1"]
        for k, o in sorted(self.outputs.items()):
            lines.append(f"{k:<32}{o.group_order:>6}{o.h11:>6}{o.h21:>6}{o.e_orbifold:>7}  {o.pi1['description']}")
        for k, msg in sorted(self.failures.items()):
            lines.append(f"{k:<32}FAILED: {msg}")
        lines.append("hodge pairs: " + ", ".join(f"({a},{b})" for a, b in self.pairs))
        return "\n".join(lines)


def _run_file(path: str):
    try:
        return path, analyze(parse_input(path)), None
    except OrbifoldError as exc:
        return path, None, f"{type(exc).__name__}: {exc}"


def batch(directory: Union[str, os.PathLike], jobs: int = 1) -> BatchResult:
    """Analyze every *.json file in a directory; failures are recorded, not raised."""
    files = sorted(str(p) for p in Path(directory).glob("*.json"))
    if jobs > 1 and len(files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_file, files))
    else:
        results = [_run_file(f) for f in files]
    outputs, failures = {}, {}
    for path, out, err in results:
        name = Path(path).name
        if err is None:
            outputs[name] = out
        else:
            failures[name] = err
    return BatchResult(outputs, failures)


def bundled_corpus() -> Path:
    return Path(__file__).parent / "data" / "corpus"


def bundled_parse_only() -> Path:
    return Path(__file__).parent / "data" / "parse_only"
