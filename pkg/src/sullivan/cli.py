"""Command line interface.

Commands parse model files (or stdin), orchestrate the constructions and
report as deterministic text or canonical JSON: sorted keys, compact
separators, integers beyond 2^53 rendered as decimal strings.  Exit codes:
0 success, 1 verification or comparison failure, 2 input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import modelfile, models, series as series_mod
from .calculus import (
    CDGA,
    check_chain_map,
    check_differential,
    killed_residues,
    loop_model,
    minimality_check,
    quotient_by_generators,
    rename_generators,
    koszul_model,
    suspended_name,
)
from .errors import (
    InvalidDifferential,
    NotDifferentialIdeal,
    SullivanError,
    ZeroDivisor,
)
from .homology import (
    CohomologyReport,
    betti,
    h_algebra_generator_counts,
    quasi_iso_via_indecomposables,
)

_MATH_FAILURES = (InvalidDifferential, NotDifferentialIdeal, ZeroDivisor)


def _canonical(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) > 2**53 else value
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _canonical(v) for k, v in value.items()}
    raise TypeError(f"cannot serialize {type(value)!r}")


def canonical_json(report: dict) -> str:
    return json.dumps(_canonical(report), sort_keys=True, separators=(",", ":")) + "\n"


def model_hash(model: CDGA) -> str:
    return hashlib.sha256(modelfile.emit(model).encode("utf-8")).hexdigest()


def _report(command: str, **fields) -> dict:
    base = {
        "command": command,
        "model_hash": None,
        "window": None,
        "betti": None,
        "representatives": None,
        "series": None,
        "witnesses": None,
        "verdicts": {},
        "model_file": None,
        "details": {},
    }
    base.update(fields)
    return base


def _serialize_representatives(report: CohomologyReport) -> list:
    out = []
    for classes in report.representatives:
        degree_entry = []
        for rep in classes:
            degree_entry.append(
                [[rep.algebra.word_str(w), str(c)] for w, c in rep.sorted_terms()]
            )
        out.append(degree_entry)
    return out


def _read_model(path: str, validate: bool = True) -> CDGA:
    if path == "-":
        return modelfile.parse(sys.stdin.read(), validate=validate)
    return modelfile.parse_path(path, validate=validate)


def _emit_output(text: str, out_path: str | None) -> None:
    if out_path is None or out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)


def _finish(args, report: dict, text_lines: list[str]) -> None:
    if args.json:
        sys.stdout.write(canonical_json(report))
    else:
        for line in text_lines:
            print(line)


# -- commands -------------------------------------------------------------------


def cmd_verify(args) -> int:
    model = _read_model(args.model, validate=False)
    failure = check_differential(model)
    minimal = minimality_check(model)
    verdicts = {
        "d_squared_zero": failure is None,
        "minimal": minimal is None,
        "homogeneous": True,
    }
    details = {}
    if failure is not None:
        details["d_squared_counterexample"] = {
            "generator": failure[0].name,
            "value": str(failure[1]),
        }
    if minimal is not None:
        details["minimality_violation"] = {
            "generator": minimal[0].name,
            "linear_part": str(minimal[1]),
        }
    report = _report(
        "verify", model_hash=model_hash(model), verdicts=verdicts, details=details
    )
    lines = [f"model {report['model_hash']}"]
    if failure is None:
        lines.append("d_squared_zero: ok")
    else:
        lines.append(
            f"d_squared_zero: FAIL at {failure[0].name}: d(d({failure[0].name})) = {failure[1]}"
        )
    if minimal is None:
        lines.append("minimal: ok")
    else:
        lines.append(f"minimal: violation at {minimal[0].name}: linear part {minimal[1]}")
    lines.append("homogeneous: ok")
    _finish(args, report, lines)
    return 0 if failure is None else 1


def _betti_report(command: str, model: CDGA, computed_on: CDGA, args) -> tuple[dict, list[str], CohomologyReport]:
    result = betti(computed_on, args.max, cap=args.cap)
    report = _report(
        command,
        model_hash=model_hash(model),
        window=args.max,
        betti=list(result.betti),
        representatives=_serialize_representatives(result),
        series=list(result.betti),
    )
    lines = [f"window 0..{args.max}", "betti " + ",".join(str(b) for b in result.betti)]
    for n, classes in enumerate(result.representatives):
        if classes:
            lines.append(f"H^{n} dim {len(classes)}: " + "; ".join(str(c) for c in classes))
    return report, lines, result


def cmd_betti(args) -> int:
    model = _read_model(args.model)
    report, lines, _ = _betti_report("betti", model, model, args)
    _finish(args, report, lines)
    return 0


def cmd_loop(args) -> int:
    model = _read_model(args.model)
    loop = loop_model(model)
    mapping = {
        suspended_name(g.name): f"s_{g.name}" for g in model.algebra.generators
    }
    renamed = rename_generators(loop, mapping)
    text = modelfile.emit(
        renamed, header=(f"free loop space model of {model_hash(model)}",)
    )
    report = _report(
        "loop", model_hash=model_hash(model), model_file=text,
        verdicts={"d_squared_zero": True},
    )
    if args.json:
        sys.stdout.write(canonical_json(report))
    else:
        _emit_output(text, args.output)
    return 0


def cmd_loop_betti(args) -> int:
    model = _read_model(args.model)
    loop = loop_model(model)
    report, lines, _ = _betti_report("loop-betti", model, loop, args)
    _finish(args, report, lines)
    return 0


def cmd_tensor(args) -> int:
    left = _read_model(args.left)
    right = _read_model(args.right)
    from .calculus import tensor_cdga

    result = tensor_cdga(left, right)
    text = modelfile.emit(result)
    report = _report("tensor", model_hash=model_hash(result), model_file=text)
    if args.json:
        sys.stdout.write(canonical_json(report))
    else:
        _emit_output(text, args.output)
    return 0


def cmd_quotient(args) -> int:
    model = _read_model(args.model)
    kill = [name for name in args.kill.split(",") if name]
    residues = killed_residues(model, kill)
    for name in sorted(residues):
        print(
            f"warning: d({name}) = {residues[name]} survives the substitution; "
            "this quotient is by generators, not by the differential ideal",
            file=sys.stderr,
        )
    result = quotient_by_generators(model, kill)
    text = modelfile.emit(result)
    report = _report(
        "quotient",
        model_hash=model_hash(model),
        model_file=text,
        verdicts={"differential_ideal": not residues},
        details={"residues": {name: str(value) for name, value in sorted(residues.items())}},
    )
    if args.json:
        sys.stdout.write(canonical_json(report))
    else:
        _emit_output(text, args.output)
    return 0


def cmd_koszul(args) -> int:
    model = _read_model(args.model)
    parser = modelfile._ExprParser(args.by, 1, 0, model.algebra)
    cocycle = parser.parse()
    koszul = koszul_model(model, cocycle, args.max)
    computed = betti(koszul.model, args.max, cap=args.cap)
    matches = tuple(computed.betti) == koszul.quotient_dims
    report = _report(
        "koszul",
        model_hash=model_hash(model),
        window=args.max,
        betti=list(computed.betti),
        representatives=_serialize_representatives(computed),
        verdicts={"matches_quotient_oracle": matches},
        details={
            "quotient_dims": list(koszul.quotient_dims),
            "zero_divisor_checked_to": koszul.checked_to,
        },
        model_file=modelfile.emit(koszul.model),
    )
    lines = [
        f"window 0..{args.max}",
        "koszul betti   " + ",".join(str(b) for b in computed.betti),
        "quotient dims  " + ",".join(str(d) for d in koszul.quotient_dims),
        f"verdict {'EQUAL' if matches else 'DIFFER'}",
    ]
    if args.output:
        _emit_output(modelfile.emit(koszul.model), args.output)
    _finish(args, report, lines)
    return 0 if matches else 1


def cmd_mult_model(args) -> int:
    model = _read_model(args.model)
    mm = models.multiplication_model(model, args.max)
    d2 = check_differential(mm.model) is None
    chain = (
        check_chain_map(mm.phi, mm.model.differential, mm.target.differential) is None
    )
    quasi = quasi_iso_via_indecomposables(mm.model, mm.target, mm.phi).is_quasi_iso
    minimal = minimality_check(mm.model, mm.base) is None
    verdicts = {
        "d_squared_zero": d2,
        "chain_map": chain,
        "quasi_iso_indecomposables": quasi,
        "minimal": minimal,
    }
    text = modelfile.emit(mm.model)
    report = _report(
        "mult-model",
        model_hash=model_hash(model),
        window=args.max,
        verdicts=verdicts,
        model_file=text,
        details={
            "suspension_differentials": {
                suspended_name(g.name): str(mm.model.d_of(suspended_name(g.name)))
                for g in mm.target.algebra.generators
            }
        },
    )
    lines = []
    for g in mm.target.algebra.generators:
        s = suspended_name(g.name)
        lines.append(f"D({s}) = {mm.model.d_of(s)}")
    for key in sorted(verdicts):
        lines.append(f"{key}: {'ok' if verdicts[key] else 'FAIL'}")
    if args.output:
        _emit_output(text, args.output)
    _finish(args, report, lines)
    return 0 if all(verdicts.values()) else 1


def cmd_witness(args) -> int:
    model = _read_model(args.model)
    witness_report = models.vps_witnesses_for_model(model, args.k_max)
    loop = loop_model(model)
    loop_betti_report = betti(loop, args.max, cap=args.cap)
    generator_counts = h_algebra_generator_counts(model, args.max, cap=args.cap)
    entries = []
    lines = []
    ok = True
    for entry in witness_report.entries:
        in_window = entry.degree <= args.max
        b_n = loop_betti_report.betti[entry.degree] if in_window else None
        bounded = b_n is None or entry.count <= b_n
        certified = entry.cocycles_verified and entry.independent and bounded
        ok = ok and certified
        entries.append(
            {
                "k": entry.k,
                "degree": entry.degree,
                "count": entry.count,
                "exponents": [list(p) for p in entry.exponent_pairs],
                "classes": list(entry.labels),
                "cocycles": entry.cocycles_verified,
                "independent": entry.independent,
                "betti": b_n,
            }
        )
        lines.append(
            f"k={entry.k} degree={entry.degree} count={entry.count} "
            f"cocycles={'ok' if entry.cocycles_verified else 'FAIL'} "
            f"independent={'ok' if entry.independent else 'FAIL'} "
            f"betti={b_n if b_n is not None else 'outside window'}"
        )
    report = _report(
        "witness",
        model_hash=model_hash(model),
        window=args.max,
        witnesses=entries,
        betti=list(loop_betti_report.betti),
        verdicts={"all_certified": ok},
        details={
            "even_generators": list(witness_report.even_gens),
            "odd_pair": [witness_report.y, witness_report.z],
            "degree_period": witness_report.period,
            "h_algebra_generators_in_window": list(generator_counts),
        },
    )
    lines.append(
        "H* algebra generators per degree: "
        + ",".join(str(c) for c in generator_counts)
    )
    _finish(args, report, lines)
    return 0 if ok else 1


def cmd_series(args) -> int:
    form = series_mod.parse_rational(args.rational)
    expansion = series_mod.expand_rational(form, args.max)
    verdicts = {}
    betti_list = None
    hash_value = None
    equal = True
    if args.betti_of is not None:
        model = _read_model(args.betti_of)
        hash_value = model_hash(model)
        result = betti(model, args.max, cap=args.cap)
        betti_list = list(result.betti)
        equal = series_mod.series_from_report(result).agrees_with(expansion)
        verdicts["equal"] = equal
    report = _report(
        "series",
        model_hash=hash_value,
        window=args.max,
        series=list(expansion.coefficients),
        betti=betti_list,
        verdicts=verdicts,
    )
    lines = [f"series {expansion}"]
    if betti_list is not None:
        lines.append("betti  " + ",".join(str(b) for b in betti_list))
        lines.append(f"verdict {'EQUAL' if equal else 'DIFFER'}")
    _finish(args, report, lines)
    return 0 if equal else 1


def cmd_recipe(args) -> int:
    recipe = models.recipe_from_args(args.name, args.params)
    model = models.build(recipe)
    text = modelfile.emit(model, header=(f"recipe {recipe}",))
    report = _report("recipe", model_hash=model_hash(model), model_file=text)
    if args.json:
        sys.stdout.write(canonical_json(report))
    else:
        _emit_output(text, args.output)
    return 0


# -- argument parsing ---------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sullivan",
        description="Exact-arithmetic Sullivan models: cohomology, loop models, witnesses.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max", type=int, default=16, help="degree window bound (default 16)")
    common.add_argument("--json", action="store_true", help="emit a canonical JSON report")
    common.add_argument("--seed", type=int, default=None,
                        help="reserved; outputs are deterministic and ignore it")
    common.add_argument("--cap", type=int, default=200_000,
                        help="per-degree monomial basis cap (default 200000)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("verify", parents=[common], help="check d*d=0, minimality, homogeneity")
    p.add_argument("model", nargs="?", default="-")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("betti", parents=[common], help="Betti numbers and representatives")
    p.add_argument("model", nargs="?", default="-")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("loop", parents=[common], help="emit the free loop space model")
    p.add_argument("model", nargs="?", default="-")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_loop)

    p = sub.add_parser("loop-betti", parents=[common], help="Betti numbers of the loop model")
    p.add_argument("model", nargs="?", default="-")
    p.set_defaults(func=cmd_loop_betti)

    p = sub.add_parser("tensor", parents=[common], help="tensor product of two models")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_tensor)

    p = sub.add_parser("quotient", parents=[common], help="kill generators")
    p.add_argument("model", nargs="?", default="-")
    p.add_argument("--kill", required=True, help="comma-separated generator names")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("koszul", parents=[common], help="one-variable Koszul model")
    p.add_argument("model", nargs="?", default="-")
    p.add_argument("--by", required=True, help="even cocycle expression")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("mult-model", parents=[common],
                       help="relative model of the multiplication, with verdicts")
    p.add_argument("model", nargs="?", default="-")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_mult_model)

    p = sub.add_parser("witness", parents=[common], help="witness cocycle families")
    p.add_argument("model", nargs="?", default="-")
    p.add_argument("--k-max", type=int, default=4, dest="k_max")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("series", parents=[common], help="expand a rational function")
    p.add_argument("--rational", required=True)
    p.add_argument("--betti-of", default=None, dest="betti_of",
                   help="model file to compare the expansion against")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("recipe", parents=[common], help="emit a built-in model")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_recipe)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.max < 0:
        print("error: --max must be non-negative", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except _MATH_FAILURES as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SullivanError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
