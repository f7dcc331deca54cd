"""Command-line front end: ``openbook-rho <command> [--input FILE] ...``.

Every command reads one JSON document (from ``--input`` or stdin).  Exit
status: 0 on success, 1 when an open-book spec fails its hypotheses, 2 on
malformed input or usage errors, 3 on internal errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from typing import Any, Optional, TextIO

from .errors import (
    InputError,
    IntegralityError,
    ModelError,
    OpenBookError,
    TruncationMismatch,
)
from .lie import GradedRanks, free_lie_ranks
from .milnor import (
    BrieskornExponents,
    VariationMatrix,
    bareiss_determinant,
    MAX_PAGE_SPHERES,
    milnor_openbook_spec,
    milnor_page,
    monodromy_constraint_report,
    variation_is_iso,
)
from .openbook import (
    Elliptic,
    FiniteHomotopyOrder,
    Hyperbolic,
    IdentityOnRationalHomotopy,
    MonodromyHypothesis,
    NotClassifiable,
    OpenBookSpec,
    Unverified,
    classify_dichotomy,
    homotopy_ranks,
    notes,
    validate_spec,
)
from .series import DEFAULT_TRUNCATION
from .spaces import (
    Contractible,
    EllipticRanks,
    SpaceModel,
    Sphere,
    WedgeOfSpheres,
    growth_estimate,
    space_ranks,
    wedge,
)

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_MALFORMED = 2
EXIT_INTERNAL = 3

COMMANDS = ("ranks", "classify", "brieskorn", "lie-ranks", "variation", "growth")
FORMATS = ("table", "csv", "json")
# Commands whose report is not a table of integers have no CSV rendering.
CSV_COMMANDS = ("ranks", "classify", "lie-ranks", "growth")

FLAG_NAMES = ("page_simply_connected", "boundary_nilpotent_connected", "total_simply_connected")


@dataclass(frozen=True)
class JobConfig:
    command: str
    input_path: Optional[str] = None
    truncation: int = DEFAULT_TRUNCATION
    output_format: str = "table"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")
        if self.truncation < 2:
            raise ValueError(f"truncation must be >= 2, got {self.truncation}")


# -- parsing ------------------------------------------------------------------

def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _object(doc, field: str) -> dict:
    if not isinstance(doc, dict):
        raise InputError(field, "expected a JSON object")
    return doc


def _int(doc: dict, key: str, field: str, minimum: Optional[int] = None) -> int:
    if key not in doc:
        raise InputError(f"{field}.{key}", "missing")
    value = doc[key]
    if not _is_int(value):
        raise InputError(f"{field}.{key}", f"expected an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise InputError(f"{field}.{key}", f"must be >= {minimum}, got {value}")
    return value


def _bool(doc: dict, key: str, field: str, default: bool) -> bool:
    value = doc.get(key, default)
    if not isinstance(value, bool):
        raise InputError(f"{field}.{key}", f"expected true or false, got {value!r}")
    return value


def parse_ranks(doc, field: str = "ranks", min_degree: int = 1) -> GradedRanks:
    _object(doc, field)
    out = {}
    for key, rank in doc.items():
        if not re.fullmatch(r"[0-9]+", key):
            raise InputError(f"{field}.{key}", "degree keys must be decimal integers")
        degree = int(key)
        if degree < min_degree:
            raise InputError(f"{field}.{key}", f"degree must be >= {min_degree}")
        if not _is_int(rank):
            raise InputError(f"{field}.{key}", f"rank must be an integer, got {rank!r}")
        if rank < 0:
            raise InputError(f"{field}.{key}", f"negative rank {rank}")
        out[degree] = out.get(degree, 0) + rank
    return GradedRanks(out)


def parse_space_model(doc, field: str = "space") -> SpaceModel:
    """Build a SpaceModel from its JSON form; singleton wedges become spheres."""
    _object(doc, field)
    kind = doc.get("kind")
    if kind == "contractible":
        return Contractible()
    if kind == "sphere":
        return Sphere(_int(doc, "dim", field, minimum=1))
    if kind == "wedge":
        dims = doc.get("dims")
        if not isinstance(dims, list) or not dims:
            raise InputError(f"{field}.dims", "expected a nonempty array of dimensions")
        for i, d in enumerate(dims):
            if not _is_int(d):
                raise InputError(f"{field}.dims[{i}]", f"expected an integer, got {d!r}")
            if d < 1:
                raise InputError(f"{field}.dims[{i}]", f"dimension must be >= 1, got {d}")
        return wedge(dims)
    if kind == "elliptic_ranks":
        if "ranks" not in doc:
            raise InputError(f"{field}.ranks", "missing")
        return EllipticRanks(parse_ranks(doc["ranks"], f"{field}.ranks", min_degree=2))
    raise InputError(f"{field}.kind",
                     "expected one of contractible, sphere, wedge, elliptic_ranks")


def parse_monodromy(doc, field: str = "monodromy") -> MonodromyHypothesis:
    if doc is None:
        return Unverified()
    _object(doc, field)
    kind = doc.get("kind")
    if kind == "identity_on_rational_homotopy":
        return IdentityOnRationalHomotopy()
    if kind == "unverified":
        return Unverified()
    if kind == "finite_order":
        m = _int(doc, "m", field, minimum=1)
        if "nilpotent_action" not in doc:
            raise InputError(f"{field}.nilpotent_action", "missing")
        nil = _bool(doc, "nilpotent_action", field, False)
        source = doc.get("nilpotence_source", "homotopy")
        if source not in ("homotopy", "homology"):
            raise InputError(f"{field}.nilpotence_source", "expected 'homotopy' or 'homology'")
        return FiniteHomotopyOrder(m, nil, source)
    raise InputError(f"{field}.kind",
                     "expected one of identity_on_rational_homotopy, finite_order, unverified")


def parse_openbook(doc) -> OpenBookSpec:
    _object(doc, "openbook")
    ambient = _int(doc, "ambient_dim", "openbook")
    if "page" not in doc:
        raise InputError("page", "missing")
    page = parse_space_model(doc["page"], "page")
    fibre = parse_space_model(doc["fibre"], "fibre") if doc.get("fibre") is not None else None
    flags = _object(doc.get("flags", {}), "flags")
    unknown = set(flags) - set(FLAG_NAMES)
    if unknown:
        raise InputError(f"flags.{sorted(unknown)[0]}", "unknown flag")
    return OpenBookSpec(
        ambient_dim=ambient,
        page=page,
        fibre=fibre,
        monodromy=parse_monodromy(doc.get("monodromy"), "monodromy"),
        **{name: _bool(flags, name, "flags", False) for name in FLAG_NAMES},
    )


def parse_brieskorn(doc) -> BrieskornExponents:
    _object(doc, "brieskorn")
    exps = doc.get("exponents")
    if not isinstance(exps, list) or not exps:
        raise InputError("exponents", "expected a nonempty array of integers")
    for i, a in enumerate(exps):
        if not _is_int(a) or a < 2:
            raise InputError(f"exponents[{i}]", f"expected an integer >= 2, got {a!r}")
    n = _int(doc, "n", "brieskorn", minimum=1)
    if len(exps) != n + 1:
        raise InputError("exponents", f"need n + 1 = {n + 1} exponents, got {len(exps)}")
    return BrieskornExponents(tuple(exps), n)


def parse_matrix(doc) -> VariationMatrix:
    _object(doc, "variation")
    rows = doc.get("matrix")
    if not isinstance(rows, list) or not rows:
        raise InputError("matrix", "expected a nonempty array of rows")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != len(rows):
            raise InputError(f"matrix[{i}]", f"expected a row of length {len(rows)}")
        for j, x in enumerate(row):
            if not _is_int(x):
                raise InputError(f"matrix[{i}][{j}]", f"expected an integer, got {x!r}")
    return VariationMatrix(tuple(tuple(r) for r in rows))


# -- serialization -------------------------------------------------------------

def ranks_to_json(ranks: GradedRanks) -> dict[str, int]:
    return {str(d): r for d, r in ranks.items()}


def model_to_json(model: Optional[SpaceModel]) -> Optional[dict[str, Any]]:
    if model is None:
        return None
    if isinstance(model, Contractible):
        return {"kind": "contractible"}
    if isinstance(model, Sphere):
        return {"kind": "sphere", "dim": model.n}
    if isinstance(model, WedgeOfSpheres):
        return {"kind": "wedge", "dims": list(model.dims)}
    if isinstance(model, EllipticRanks):
        return {"kind": "elliptic_ranks", "ranks": ranks_to_json(model.ranks)}
    raise TypeError(model)


def monodromy_to_json(mono: MonodromyHypothesis) -> dict[str, Any]:
    if isinstance(mono, IdentityOnRationalHomotopy):
        return {"kind": "identity_on_rational_homotopy"}
    if isinstance(mono, FiniteHomotopyOrder):
        return {"kind": "finite_order", "m": mono.m, "nilpotent_action": mono.nilpotent_action,
                "nilpotence_source": mono.nilpotence_source}
    return {"kind": "unverified"}


def openbook_to_json(spec: OpenBookSpec) -> dict[str, Any]:
    return {
        "ambient_dim": spec.ambient_dim,
        "page": model_to_json(spec.page),
        "fibre": model_to_json(spec.fibre),
        "monodromy": monodromy_to_json(spec.monodromy),
        "flags": {name: getattr(spec, name) for name in FLAG_NAMES},
    }


def verdict_to_json(verdict) -> dict[str, Any]:
    if isinstance(verdict, Elliptic):
        return {"elliptic": {"l": verdict.l, "ranks": ranks_to_json(verdict.ranks)}}
    if isinstance(verdict, Hyperbolic):
        return {"hyperbolic": {"reason": verdict.reason.value}}
    return {"not_classifiable": {"missing": list(verdict.missing)}}


# -- rendering -----------------------------------------------------------------

def render_ranks_csv(ranks: GradedRanks, header: str = "degree,rank") -> str:
    lines = [header] + [f"{d},{r}" for d, r in ranks.items()]
    return "\n".join(lines) + "\n"


def render_ranks_table(ranks: GradedRanks, title: str = "") -> str:
    lines = [title] if title else []
    if not ranks:
        lines.append("(all ranks zero)")
    else:
        width = max(6, len(str(max(ranks))), len(str(max(ranks.values()))))
        lines.append(f"{'degree':>{width}}  {'rank':>{width}}")
        lines += [f"{d:>{width}}  {r:>{width}}" for d, r in ranks.items()]
    return "\n".join(lines) + "\n"


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _spec_table(spec: OpenBookSpec) -> list[str]:
    js = openbook_to_json(spec)
    lines = ["spec:", f"  ambient_dim: {js['ambient_dim']}",
             f"  page: {json.dumps(js['page'])}", f"  fibre: {json.dumps(js['fibre'])}",
             f"  monodromy: {json.dumps(js['monodromy'])}"]
    lines += [f"  {k}: {str(v).lower()}" for k, v in js["flags"].items()]
    return lines


# -- commands ------------------------------------------------------------------

def _cmd_ranks(doc, cfg):
    model = parse_space_model(doc)
    ranks = space_ranks(model, cfg.truncation)
    if cfg.output_format == "json":
        return EXIT_OK, _dump({"space": model_to_json(model), "truncation": cfg.truncation,
                               "ranks": ranks_to_json(ranks)})
    if cfg.output_format == "csv":
        return EXIT_OK, render_ranks_csv(ranks)
    return EXIT_OK, render_ranks_table(
        ranks, f"rational homotopy ranks of {json.dumps(model_to_json(model))} "
               f"through degree {cfg.truncation}")


def _cmd_lie_ranks(doc, cfg):
    _object(doc, "lie-ranks")
    if "generators" not in doc:
        raise InputError("generators", "missing")
    gens = parse_ranks(doc["generators"], "generators")
    ranks = free_lie_ranks(gens, cfg.truncation)
    if cfg.output_format == "json":
        return EXIT_OK, _dump({"generators": ranks_to_json(gens), "truncation": cfg.truncation,
                               "ranks": ranks_to_json(ranks)})
    if cfg.output_format == "csv":
        return EXIT_OK, render_ranks_csv(ranks)
    return EXIT_OK, render_ranks_table(ranks, "free graded Lie algebra ranks")


def _cmd_classify(doc, cfg):
    spec = parse_openbook(doc)
    violations = validate_spec(spec)
    if violations:
        if cfg.output_format == "json":
            body = {"not_classifiable": {"missing": [str(v) for v in violations]},
                    "violations": [{"code": v.code, "message": v.message} for v in violations],
                    "spec": openbook_to_json(spec)}
            return EXIT_VIOLATIONS, _dump(body)
        return EXIT_VIOLATIONS, "".join(f"{v}\n" for v in violations)
    verdict = classify_dichotomy(spec, cfg.truncation)
    ranks = homotopy_ranks(spec, cfg.truncation)
    if cfg.output_format == "csv":
        return EXIT_OK, render_ranks_csv(ranks)
    if cfg.output_format == "json":
        body = verdict_to_json(verdict)
        body.update({"spec": openbook_to_json(spec), "truncation": cfg.truncation,
                     "homotopy_ranks": ranks_to_json(ranks), "notes": notes(spec)})
        return EXIT_OK, _dump(body)
    if isinstance(verdict, Elliptic):
        head = f"verdict: rationally elliptic, binding fibre ~ S^{verdict.l}"
    else:
        head = f"verdict: rationally hyperbolic ({verdict.reason.value})"
    lines = [head] + _spec_table(spec) + [f"note: {n}" for n in notes(spec)]
    return EXIT_OK, "\n".join(lines) + "\n" + render_ranks_table(
        ranks, f"rational homotopy ranks of M through degree {cfg.truncation}")


def _page_model(report) -> Optional[SpaceModel]:
    if report.n < 2 or report.mu > MAX_PAGE_SPHERES:
        return None
    return milnor_page(report.mu, report.n)


def _cmd_brieskorn(doc, cfg):
    b = parse_brieskorn(doc)
    mono = parse_monodromy(doc.get("monodromy")) if "monodromy" in doc else None
    fibre = parse_space_model(doc["fibre"], "fibre") if doc.get("fibre") is not None else None
    report = monodromy_constraint_report(b)
    verdict = spec = None
    if mono is not None and b.n >= 3:
        spec = milnor_openbook_spec(b, mono, fibre)
        verdict = classify_dichotomy(spec, cfg.truncation)
    body = {
        "exponents": list(report.exponents), "n": report.n, "mu": report.mu,
        "page": model_to_json(_page_model(report)),
        "page_hyperbolic": report.page_hyperbolic, "growth_base": report.growth_base,
        "obstruction": report.obstruction, "conclusions": list(report.conclusions),
        "reason": report.reason,
    }
    if spec is not None:
        body["spec"] = openbook_to_json(spec)
        body["verdict"] = verdict_to_json(verdict)
    if cfg.output_format == "json":
        return EXIT_OK, _dump(body)
    lines = [f"Brieskorn exponents {list(report.exponents)}, n = {report.n}",
             f"mu = {report.mu}",
             f"page: {json.dumps(body['page'])} "
             f"({'rationally hyperbolic' if report.page_hyperbolic else 'rationally elliptic'})"]
    if report.growth_base is not None:
        lines.append(f"growth base of page homotopy: {report.growth_base:.12g}")
    if report.obstruction:
        lines.append("obstruction on the Milnor monodromy h:")
        lines += [f"  - {c}" for c in report.conclusions]
        lines.append(f"because {report.reason}")
    else:
        lines.append(report.reason)
    if verdict is not None:
        lines.append(f"verdict: {json.dumps(verdict_to_json(verdict))}")
    return EXIT_OK, "\n".join(lines) + "\n"


def _cmd_variation(doc, cfg):
    v = parse_matrix(doc)
    iso = variation_is_iso(v)
    if cfg.output_format == "json":
        return EXIT_OK, _dump({"is_isomorphism": iso})
    det = bareiss_determinant(v.entries)
    return EXIT_OK, (f"size: {v.size}\ndeterminant: {det}\n"
                     f"is_isomorphism: {str(iso).lower()}\n")


def _cmd_growth(doc, cfg):
    model = parse_space_model(doc)
    if not isinstance(model, (Sphere, WedgeOfSpheres)):
        raise InputError("space.kind", "growth needs a sphere or a wedge of spheres")
    report = growth_estimate(model, cfg.truncation)
    if cfg.output_format == "json":
        return EXIT_OK, _dump({"partial_sums": list(report.partial_sums),
                               "classification": report.classification.value,
                               "growth_base": report.growth_base})
    if cfg.output_format == "csv":
        rows = ["degree,partial_sum"] + [f"{d},{s}" for d, s in enumerate(report.partial_sums)]
        return EXIT_OK, "\n".join(rows) + "\n"
    lines = [f"classification: {report.classification.value}"]
    if report.growth_base is not None:
        lines.append(f"growth base: {report.growth_base:.12g}")
    lines.append(f"total rank through degree {cfg.truncation}: {report.partial_sums[-1]}")
    return EXIT_OK, "\n".join(lines) + "\n"


HANDLERS = {
    "ranks": _cmd_ranks,
    "classify": _cmd_classify,
    "brieskorn": _cmd_brieskorn,
    "lie-ranks": _cmd_lie_ranks,
    "variation": _cmd_variation,
    "growth": _cmd_growth,
}


def run(config: JobConfig, payload: str) -> tuple[int, str, str]:
    """Run one job on the raw JSON ``payload``; returns (status, stdout, stderr)."""
    if config.output_format == "csv" and config.command not in CSV_COMMANDS:
        return EXIT_MALFORMED, "", f"error: no csv rendering for {config.command}\n"
    try:
        doc = json.loads(payload)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        return EXIT_MALFORMED, "", f"error: input: not valid JSON ({e})\n"
    if config.command == "growth" and config.truncation < 10:
        return EXIT_MALFORMED, "", "error: truncation: growth needs --truncation >= 10\n"
    try:
        status, out = HANDLERS[config.command](doc, config)
    except InputError as e:
        return EXIT_MALFORMED, "", f"error: {e}\n"
    except (IntegralityError, TruncationMismatch) as e:
        return EXIT_INTERNAL, "", f"internal error: {e}\n"
    except (ModelError, ValueError) as e:
        # Structurally fine documents that describe impossible models.
        return EXIT_MALFORMED, "", f"error: {e}\n"
    except OpenBookError as e:
        return EXIT_INTERNAL, "", f"internal error: {e}\n"
    return status, out, ""


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="openbook-rho",
        description="Rational homotopy ranks and elliptic/hyperbolic classification of open books.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", dest="input_path", metavar="FILE",
                        help="JSON input document (default: standard input)")
    parser.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION, metavar="N",
                        help=f"highest degree computed (default {DEFAULT_TRUNCATION})")
    parser.add_argument("--format", dest="output_format", choices=FORMATS, default="table")
    return parser


def main(argv=None, stdin: TextIO = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.truncation < 2:
        stderr.write("error: --truncation must be >= 2\n")
        return EXIT_MALFORMED
    config = JobConfig(args.command, args.input_path, args.truncation, args.output_format)
    try:
        if config.input_path:
            with open(config.input_path, encoding="utf-8") as fh:
                payload = fh.read()
        else:
            payload = stdin.read()
    except OSError as e:
        stderr.write(f"error: input: {e}\n")
        return EXIT_MALFORMED
    status, out, err = run(config, payload)
    stdout.write(out)
    stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
