"""Command line front end.

Subcommands: ``compute`` runs the full pipeline on a problem document,
``validate`` just checks one, ``catalog`` prints a catalog side document,
``batch`` processes a list of problems, and ``snf`` exposes the Smith
reduction for debugging.  Documents are JSON following the schema of the
model module.

Exit codes: 0 success, 1 I/O failure, 2 parse/validation failure,
3 internal assertion failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import engine, forms, model
from .intlat import IntMatrix, smith_normal_form
from .model import DocumentError, FibreSumProblem

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3

T_DEFAULT_WARNING = (
    "t defaulted to the zero vector; this is exact only when matched bounding "
    "surfaces with equal canonical pairings exist on both sides (for example "
    "vanishing-cycle disks of tori in cusp neighbourhoods)"
)


def _group_dict(group) -> dict[str, Any]:
    return {
        "free_rank": group.free_rank,
        "torsion": list(group.torsion),
        "rendered": str(group),
    }


def build_report(problem: FibreSumProblem, include_forms: bool = True) -> dict[str, Any]:
    """The full structured report for one problem.

    Every numeric field is produced by exactly one engine or forms
    operation; the text renderer only reformats this dictionary, so both
    output formats carry identical numbers.
    """
    kd = engine.kernel_data(problem)
    betti = engine.betti_numbers(problem)
    h1 = engine.first_homology(problem)
    rim = engine.rim_tori_group(problem)
    split = engine.split_class_basis(problem)

    warnings: list[str] = []
    t_effective = problem.t if problem.t is not None else (0,) * kd.d
    if problem.t is None and kd.d > 0:
        warnings.append(T_DEFAULT_WARNING)

    report: dict[str, Any] = {
        "problem": {
            "M": model.side_to_dict(problem.M),
            "N": model.side_to_dict(problem.N),
            "gluing": {"a": list(problem.gluing.a)},
            "t_supplied": None if problem.t is None else list(problem.t),
            "t_effective": list(t_effective),
            "alpha_basis": [list(v) for v in kd.alpha_basis.vectors],
            "a_adapted": list(kd.a_adapted),
        },
        "betti": {
            "b0": betti.b0,
            "b1": betti.b1,
            "b2": betti.b2,
            "b3": betti.b3,
            "b4": betti.b4,
            "b2_plus": betti.b2_plus,
            "b2_minus": betti.b2_minus,
            "e": betti.e,
            "sigma": betti.sigma,
            "d": betti.d,
        },
        "h1": _group_dict(h1),
        "rim_tori": _group_dict(rim),
        "split_classes": [
            {"B_M": c.b_m, "B_N": c.b_n, "alpha": list(c.alpha), "label": c.label()}
            for c in split.classes
        ],
    }

    b2_blocks = 2 * (kd.d + 1) + (problem.M.b2 - 2) + (problem.N.b2 - 2)
    b1_kernel = engine.first_cohomology_rank(problem)
    checks: dict[str, Any] = {
        "rank_bookkeeping": {
            "b2_from_blocks": b2_blocks,
            "b2_from_betti": betti.b2,
            "b1_from_kernel": b1_kernel,
            "b1_from_betti": betti.b1,
            "pass": b2_blocks == betti.b2 and b1_kernel == betti.b1,
        }
    }

    gate = forms.scope_gate(problem)
    if gate:
        report["forms"] = {"skipped": gate}
        warnings.extend(f"forms skipped: {msg}" for msg in gate)
    elif not include_forms:
        report["forms"] = {"skipped": ["disabled by --no-forms"]}
    else:
        cc = forms.canonical_class(problem)
        bf = forms.assemble_intersection_form(problem, cc)
        try:
            fc = forms.classify_form(bf, cc)
            form_class: dict[str, Any] = {
                "rank": fc.rank,
                "signature": fc.signature,
                "parity": fc.parity,
                "decomposition": fc.decomposition,
            }
        except forms.InputDataError as exc:
            if "p_parity" not in str(exc):
                raise
            form_class = {"unavailable": str(exc)}
        div = forms.divisibility(cc)
        k_sq = forms.canonical_square(cc, problem)
        ip = forms.ionel_parker_checks(problem, cc)
        report["forms"] = {
            "block_form": {
                "pm": {
                    "rank": bf.pm_block.rank,
                    "signature": bf.pm_block.signature,
                    "parity": bf.pm_block.parity,
                },
                "pn": {
                    "rank": bf.pn_block.rank,
                    "signature": bf.pn_block.signature,
                    "parity": bf.pn_block.parity,
                },
                "pair_s_sq_parities": [p.s_sq_parity for p in bf.pair_blocks],
                "nucleus_b_sq": bf.nucleus_block.b_sq,
                "rank": bf.rank,
                "signature": bf.signature,
            },
            "form_class": form_class,
            "canonical_class": {
                "r_coeffs": list(cc.r_coeffs),
                "sigma_coeff": cc.sigma_coeff,
                "t_coeffs": list(cc.t_coeffs),
                "eta": cc.eta,
                "eta_prime": cc.eta_prime,
                "b_coeff": cc.b_coeff,
                "s_coeffs": list(cc.s_coeffs),
                "kbar_m": {"square": cc.kbar_m_sq, "divisibility": cc.kbar_m_div},
                "kbar_n": {"square": cc.kbar_n_sq, "divisibility": cc.kbar_n_div},
            },
            "divisibility": {"value": div.value, "exact": div.exact},
        }
        checks["k_squared"] = {"value": k_sq.value, "target": k_sq.target, "pass": k_sq.ok}
        checks["ionel_parker"] = [
            {"name": line.name, "lhs": line.lhs, "rhs": line.rhs, "pass": line.ok} for line in ip
        ]

    report["checks"] = checks
    report["warnings"] = warnings
    return report


# -- text rendering ----------------------------------------------------------


def _side_line(label: str, side_doc: dict[str, Any]) -> str:
    return (
        f"{label}: {side_doc['name']}  (b1={side_doc['b1']}, "
        f"b2+={side_doc['b2_plus']}, b2-={side_doc['b2_minus']}, "
        f"K^2={side_doc['K_squared']}, K.B={side_doc['K_dot_B']}, "
        f"B^2={side_doc['B_squared']}, g={side_doc['genus']}, k={side_doc['k']})"
    )


def _vec(xs: Sequence[Any]) -> str:
    return "(" + ", ".join(str(x) for x in xs) + ")"


def render_text(report: dict[str, Any]) -> str:
    out: list[str] = []
    prob = report["problem"]
    out.append("fibre sum report")
    out.append("================")
    out.append(_side_line("M", prob["M"]))
    out.append(_side_line("N", prob["N"]))
    out.append(f"gluing a = {_vec(prob['gluing']['a'])}")
    out.append("alpha basis (gamma coordinates):")
    if prob["alpha_basis"]:
        for i, vec in enumerate(prob["alpha_basis"]):
            out.append(f"  alpha_{i + 1} = {_vec(vec)}")
    else:
        out.append("  (empty: the embeddings are injective on first homology)")
    out.append(f"a adapted to alpha basis = {_vec(prob['a_adapted'])}")
    t_note = "" if prob["t_supplied"] is not None else "  [defaulted]"
    out.append(f"t = {_vec(prob['t_effective'])}{t_note}")

    b = report["betti"]
    out.append("")
    out.append("betti numbers")
    out.append(f"  b0={b['b0']} b1={b['b1']} b2={b['b2']} b3={b['b3']} b4={b['b4']}")
    out.append(
        f"  b2+={b['b2_plus']} b2-={b['b2_minus']} e={b['e']} sigma={b['sigma']} d={b['d']}"
    )
    out.append("")
    out.append(f"H_1(X) = {report['h1']['rendered']}")
    out.append(f"rim tori R(X) = {report['rim_tori']['rendered']}")
    out.append(f"split classes S(X), rank {len(report['split_classes'])}:")
    for i, c in enumerate(report["split_classes"]):
        name = "B_X " if i == 0 else f"S_{i}  "
        out.append(f"  {name}= {c['label']}")

    fsec = report["forms"]
    out.append("")
    if "skipped" in fsec:
        out.append("intersection form / canonical class: skipped")
        for reason in fsec["skipped"]:
            out.append(f"  - {reason}")
    else:
        bf = fsec["block_form"]
        out.append("intersection form")
        out.append(
            f"  P(M) block: rank {bf['pm']['rank']}, signature {bf['pm']['signature']},"
            f" parity {bf['pm']['parity']}"
        )
        out.append(
            f"  P(N) block: rank {bf['pn']['rank']}, signature {bf['pn']['signature']},"
            f" parity {bf['pn']['parity']}"
        )
        out.append(f"  pair blocks S_i^2 parities = {_vec(bf['pair_s_sq_parities'])}")
        out.append(f"  nucleus block = [[{bf['nucleus_b_sq']}, 1], [1, 0]]")
        out.append(f"  totals: rank {bf['rank']}, signature {bf['signature']}")
        fc = fsec["form_class"]
        if "unavailable" in fc:
            out.append(f"  class: unavailable ({fc['unavailable']})")
        else:
            out.append(f"  class: {fc['parity']} {fc['decomposition']}")
        cc = fsec["canonical_class"]
        out.append("")
        out.append("canonical class")
        out.append(f"  push-off basis: r = {_vec(cc['r_coeffs'])}, sigma_coeff = {cc['sigma_coeff']}")
        out.append(
            f"  symmetric basis: t = {_vec(cc['t_coeffs'])}, eta = {cc['eta']},"
            f" eta' = {cc['eta_prime']}"
        )
        out.append(f"  b_coeff = {cc['b_coeff']}, split coefficients s = {_vec(cc['s_coeffs'])}")
        out.append(
            f"  Kbar_M: square {cc['kbar_m']['square']}, divisibility {cc['kbar_m']['divisibility']};"
            f" Kbar_N: square {cc['kbar_n']['square']}, divisibility {cc['kbar_n']['divisibility']}"
        )
        div = fsec["divisibility"]
        exactness = "exact" if div["exact"] else "necessary-condition bound"
        if div["value"] == 1:
            out.append(f"  K_X indivisible ({exactness})")
        elif div["value"] == 0:
            out.append(f"  K_X is the zero class ({exactness})")
        else:
            out.append(f"  K_X divisibility {div['value']} ({exactness})")

    out.append("")
    out.append("checks")
    checks = report["checks"]
    if "k_squared" in checks:
        ks = checks["k_squared"]
        status = "pass" if ks["pass"] else "FAIL"
        out.append(f"  K_X^2 = {ks['value']} vs K_M^2+K_N^2+(8g-8) = {ks['target']}  [{status}]")
    for line in checks.get("ionel_parker", []):
        status = "pass" if line["pass"] else "FAIL"
        out.append(f"  {line['name']}: {line['lhs']} vs {line['rhs']}  [{status}]")
    rb = checks["rank_bookkeeping"]
    status = "pass" if rb["pass"] else "FAIL"
    out.append(
        f"  rank bookkeeping: b2 blocks {rb['b2_from_blocks']} vs betti {rb['b2_from_betti']},"
        f" b1 kernel {rb['b1_from_kernel']} vs betti {rb['b1_from_betti']}  [{status}]"
    )

    if report["warnings"]:
        out.append("")
        out.append("warnings")
        for w in report["warnings"]:
            out.append(f"  - {w}")
    return "\n".join(out) + "\n"


def dump_structured(payload: Any) -> str:
    """Canonical JSON: re-emitting a parsed report is byte-identical."""
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _emit(payload: dict[str, Any], fmt: str, stream) -> None:
    if fmt == "text":
        stream.write(render_text(payload))
    else:
        stream.write(dump_structured(payload))


def _read_json_file(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as handle:
        text = handle.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError([f"{path}: not valid JSON: {exc}"]) from exc


def _parse_t_flag(value: str | None) -> tuple[int, ...] | None:
    if value is None:
        return None
    value = value.strip()
    if value == "":
        return ()
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError as exc:
        raise DocumentError([f"--t: expected a comma-separated integer list, got {value!r}"]) from exc


def cmd_compute(args, stdout, stderr) -> int:
    document = _read_json_file(args.path)
    problem = model.parse_problem(document)
    t_override = _parse_t_flag(args.t)
    if t_override is not None:
        problem = model.with_t(problem, t_override)
    report = build_report(problem, include_forms=not args.no_forms)
    _emit(report, args.format, stdout)
    return EXIT_OK


def cmd_validate(args, stdout, stderr) -> int:
    document = _read_json_file(args.path)
    model.parse_problem(document)
    stdout.write("valid\n")
    return EXIT_OK


def cmd_catalog(args, stdout, stderr) -> int:
    if args.name != "E":
        stderr.write(f"unknown catalog {args.name!r} (supported: 'E')\n")
        return EXIT_INVALID
    try:
        side = model.elliptic_surface(args.n)
    except ValueError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_INVALID
    stdout.write(dump_structured(model.side_to_dict(side)))
    return EXIT_OK


def cmd_batch(args, stdout, stderr) -> int:
    document = _read_json_file(args.path)
    if isinstance(document, dict) and set(document) == {"problems"}:
        document = document["problems"]
    if not isinstance(document, list):
        raise DocumentError(["batch document: expected an array of problem documents"])
    items: list[dict[str, Any]] = []
    failures = 0
    # Items are independent and could run in parallel; the report is
    # assembled in input order either way.
    for index, entry in enumerate(document):
        try:
            problem = model.parse_problem(entry)
            report = build_report(problem, include_forms=not args.no_forms)
            items.append({"index": index, "status": "ok", "report": report})
        except (DocumentError, forms.InputDataError) as exc:
            failures += 1
            items.append({"index": index, "status": "error", "error": str(exc)})
    payload = {"items": items, "count": len(items), "failures": failures}
    if args.format == "text":
        for item in items:
            stdout.write(f"--- problem {item['index']}: {item['status']}\n")
            if item["status"] == "ok":
                stdout.write(render_text(item["report"]))
            else:
                stdout.write(f"    {item['error']}\n")
        stdout.write(f"--- {len(items)} problem(s), {failures} failure(s)\n")
    else:
        stdout.write(dump_structured(payload))
    return EXIT_OK if failures == 0 else EXIT_INVALID


def cmd_snf(args, stdout, stderr) -> int:
    document = _read_json_file(args.path)
    if isinstance(document, dict) and set(document) == {"matrix"}:
        document = document["matrix"]
    if not isinstance(document, list) or any(not isinstance(r, list) for r in document):
        raise DocumentError(["matrix document: expected an array of integer rows"])
    try:
        matrix = IntMatrix.from_rows(document)
    except ValueError as exc:
        raise DocumentError([f"matrix document: {exc}"]) from exc
    snf = smith_normal_form(matrix)
    payload = {
        "U": snf.U.to_rows(),
        "D": snf.D.to_rows(),
        "V": snf.V.to_rows(),
        "diagonal": list(snf.diagonal()),
        "rank": snf.rank(),
    }
    if args.format == "text":
        for name in ("U", "D", "V"):
            stdout.write(f"{name} =\n")
            rows = payload[name]
            if not rows or not rows[0]:
                stdout.write(f"  <empty {len(rows)}x{0 if not rows else len(rows[0])}>\n")
            else:
                for row in rows:
                    stdout.write("  " + " ".join(str(x) for x in row) + "\n")
        stdout.write(f"diagonal = {payload['diagonal']}\nrank = {payload['rank']}\n")
    else:
        stdout.write(dump_structured(payload))
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibresum",
        description="Exact homological invariants of generalized fibre sums of 4-manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p) -> None:
        p.add_argument(
            "--format",
            choices=["text", "json", "structured"],
            default="text",
            help="output format (json and structured are synonyms)",
        )

    p_compute = sub.add_parser("compute", help="run the full pipeline on a problem document")
    p_compute.add_argument("path")
    add_format(p_compute)
    p_compute.add_argument("--no-forms", action="store_true", help="skip the forms module")
    p_compute.add_argument("--t", default=None, help="override the t-vector, e.g. --t 1,0")
    p_compute.set_defaults(func=cmd_compute)

    p_validate = sub.add_parser("validate", help="validate a problem document")
    p_validate.add_argument("path")
    p_validate.set_defaults(func=cmd_validate)

    p_catalog = sub.add_parser("catalog", help="print a catalog side document")
    p_catalog.add_argument("name", help="catalog family name (supported: E)")
    p_catalog.add_argument("n", type=int)
    p_catalog.set_defaults(func=cmd_catalog)

    p_batch = sub.add_parser("batch", help="process a list of problem documents")
    p_batch.add_argument("path")
    add_format(p_batch)
    p_batch.add_argument("--no-forms", action="store_true", help="skip the forms module")
    p_batch.set_defaults(func=cmd_batch)

    p_snf = sub.add_parser("snf", help="Smith normal form of a matrix document")
    p_snf.add_argument("path")
    add_format(p_snf)
    p_snf.set_defaults(func=cmd_snf)

    return parser


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "format", None) == "structured":
        args.format = "json"
    try:
        return args.func(args, stdout, stderr)
    except OSError as exc:
        stderr.write(f"i/o error: {exc}\n")
        return EXIT_IO
    except (DocumentError, forms.InputDataError) as exc:
        stderr.write(f"invalid input: {exc}\n")
        return EXIT_INVALID
    except (forms.InternalCheckError, AssertionError) as exc:
        stderr.write(f"internal check failed: {exc}\n")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
