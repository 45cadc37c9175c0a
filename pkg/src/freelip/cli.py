"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 verify assertion failure,
3 I/O or malformed-input errors.  Reports are JSON with sorted keys, so a
fixed seed and fixed inputs reproduce them byte for byte; experiment tables
are CSV with a wall-time column.  The default arithmetic mode can be
overridden by the FREELIP_MODE environment variable, which is echoed into
the report header.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from . import order, weighting
from .errors import FreeLipError, MetricValidationError
from .experiments import gen_ambrosio, gen_gallery, gen_weaver, run_ambrosio, run_weaver
from .functions import mcshane_extend, weight_g, weight_h, weight_lambda, weight_pi
from .scalars import EXACT, format_scalar
from .serialize import (
    MalformedInput,
    function_to_obj,
    function_values_obj,
    partial_values_from_obj,
    plan_to_obj,
    space_from_obj,
    space_to_obj,
    vector_from_obj,
    vector_to_obj,
)
from .solver import DEFAULT_TOLERANCE, kr_norm
from .space import radial_alpha, uniform_separation
from .vectors import molecule_decompose, norm1, pair, support
from .sampling import DEFAULT_SEED
from .verification import PROFILES, manifest, run_suite

_WEIGHT_FAMILIES = {"H": weight_h, "G": weight_g, "Lambda": weight_lambda,
                    "Pi": weight_pi}


def _mode_from_args(args) -> tuple[str, str]:
    """Resolve the arithmetic mode and where it came from."""
    if getattr(args, "mode", None):
        return args.mode, "flag"
    env = os.environ.get("FREELIP_MODE")
    if env:
        if env not in ("exact", "float"):
            raise MalformedInput(f"FREELIP_MODE must be exact or float, not {env!r}")
        return env, "env"
    return EXACT, "default"


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _IOFailure(f"{path} is not valid JSON: {exc}") from exc


class _IOFailure(Exception):
    pass


def _emit(args, report: dict) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if getattr(args, "report", None):
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise _IOFailure(f"cannot write {args.report}: {exc}") from exc


def _header(args, command: str) -> dict:
    mode, source = _mode_from_args(args)
    header = {"command": command, "mode": mode, "mode_source": source}
    if getattr(args, "seed", None) is not None:
        header["seed"] = args.seed
    return header


def _space_and_vector(args, mode):
    space = space_from_obj(_load_json(args.space), mode)
    m = vector_from_obj(_load_json(args.vector), space)
    return space, m


def cmd_validate(args) -> int:
    mode, _ = _mode_from_args(args)
    space = space_from_obj(_load_json(args.space), mode)
    report = _header(args, "validate")
    report["valid"] = True
    report["points"] = len(space.labels)
    report["uniform_separation"] = format_scalar(uniform_separation(space)) \
        if space.n >= 2 else None
    _emit(args, report)
    return 0


def cmd_norm(args) -> int:
    mode, _ = _mode_from_args(args)
    space, m = _space_and_vector(args, mode)
    value, plan = kr_norm(m, tolerance=args.tolerance)
    report = _header(args, "norm")
    report["plan"] = plan_to_obj(value, plan)
    _emit(args, report)
    return 0


def cmd_pair(args) -> int:
    mode, _ = _mode_from_args(args)
    space, m = _space_and_vector(args, mode)
    from .serialize import function_from_obj

    f = function_from_obj(_load_json(args.function), space)
    report = _header(args, "pair")
    report["value"] = format_scalar(pair(m, f))
    _emit(args, report)
    return 0


def cmd_support(args) -> int:
    mode, _ = _mode_from_args(args)
    space, m = _space_and_vector(args, mode)
    report = _header(args, "support")
    report["support"] = list(support(m))
    report["mass"] = format_scalar(norm1(m))
    _emit(args, report)
    return 0


def cmd_extend(args) -> int:
    mode, _ = _mode_from_args(args)
    space = space_from_obj(_load_json(args.space), mode)
    partial = partial_values_from_obj(_load_json(args.function), space)
    f = mcshane_extend(space, partial)
    report = _header(args, "extend")
    report["function"] = function_to_obj(f)
    _emit(args, report)
    return 0


def cmd_weights(args) -> int:
    mode, _ = _mode_from_args(args)
    space = space_from_obj(_load_json(args.space), mode)
    build = _WEIGHT_FAMILIES[args.family]
    w = build(space, args.n)
    op = weighting.WeightOperator(w)
    report = _header(args, "weights")
    report["family"] = args.family
    report["n"] = args.n
    report["values"] = function_values_obj(w)
    report["lip_const"] = format_scalar(w.lip_const)
    report["support_radius"] = format_scalar(w.rad_support)
    report["operator_norm_bound"] = format_scalar(op.norm_bound)
    if args.exact_norm:
        report["operator_norm"] = format_scalar(weighting.operator_norm(op))
    _emit(args, report)
    return 0


def cmd_decompose(args) -> int:
    mode, _ = _mode_from_args(args)
    space, m = _space_and_vector(args, mode)
    decomp = molecule_decompose(m)
    rep = weighting.class_report(m)
    report = _header(args, "decompose")
    report["molecules"] = [
        {"x": space.labels[mol.x], "y": space.labels[mol.y],
         "weight": format_scalar(mol.weight)}
        for mol in decomp.molecules]
    report["residual"] = (
        None if decomp.residual_point is None
        else {"point": space.labels[decomp.residual_point],
              "coefficient": format_scalar(decomp.residual_coeff)})
    report["classes"] = {
        "strongly_bounded": rep.strongly_bounded,
        "strongly_bounded_witness": rep.strongly_bounded_witness,
        "avoids_infinity": rep.avoids_infinity,
        "concentrated_at_infinity": rep.concentrated_at_infinity,
        "concentrated_at_zero": rep.concentrated_at_zero,
        "avoids_zero": rep.avoids_zero,
        "avoids_zero_strongly": rep.avoids_zero_strongly,
        "avoids_zero_witness": rep.avoids_zero_witness,
        "norm_additivity_holds": rep.norm_additivity_holds,
    }
    report["kalton"] = {
        "part_norms": {str(n): format_scalar(v) for n, v in rep.kalton_norms.items()},
        "total": format_scalar(rep.kalton_total),
        "reconstruction_exact": rep.kalton_reconstruction_exact,
        "bound_holds": rep.kalton_bound_holds,
        "measured_ratio": (None if rep.kalton_measured_ratio is None
                           else format_scalar(rep.kalton_measured_ratio)),
    }
    _emit(args, report)
    return 0


def cmd_positivity(args) -> int:
    mode, _ = _mode_from_args(args)
    space, m = _space_and_vector(args, mode)
    by_coeffs = order.is_positive(m, "coefficients")
    by_lp = order.is_positive(m, "lp")
    report = _header(args, "positivity")
    report["coefficients_route"] = by_coeffs
    report["lp_route"] = by_lp
    report["routes_agree"] = by_coeffs == by_lp
    _emit(args, report)
    return 0


def cmd_majorant(args) -> int:
    mode, _ = _mode_from_args(args)
    space, m = _space_and_vector(args, mode)
    report = _header(args, "majorant")
    pairm = order.minimum_majorant(m)
    report["m_plus"] = vector_to_obj(pairm.m_plus)
    report["m_minus"] = vector_to_obj(pairm.m_minus)
    if args.psi:
        psi = vector_from_obj(_load_json(args.psi), space)
        res = order.check_majorant(m, psi)
        report["check"] = {
            "is_majorant": res.is_majorant,
            "psi_positive": res.psi_positive,
            "difference_positive": res.difference_positive,
            "certificate": (None if res.certificate is None
                            else function_values_obj(res.certificate)),
        }
    _emit(args, report)
    return 0


def cmd_variation(args) -> int:
    mode, _ = _mode_from_args(args)
    space, m = _space_and_vector(args, mode)
    var = order.variation(m)
    ids = order.support_identities(m)
    report = _header(args, "variation")
    report["variation"] = vector_to_obj(var)
    report["supports"] = {
        "m": list(ids.supp_m), "m_plus": list(ids.supp_plus),
        "m_minus": list(ids.supp_minus), "variation": list(ids.supp_variation),
        "identity_holds": ids.holds,
    }
    _emit(args, report)
    return 0


def cmd_radial(args) -> int:
    mode, _ = _mode_from_args(args)
    space = space_from_obj(_load_json(args.space), mode)
    rep = radial_alpha(space)
    report = _header(args, "radial")
    report["alpha"] = format_scalar(rep.alpha)
    report["witness"] = list(rep.witness) if rep.witness else None
    report["vacuous"] = rep.vacuous
    report["is_radially_discrete"] = rep.is_radially_discrete
    report["uniform_separation"] = format_scalar(uniform_separation(space))
    _emit(args, report)
    return 0


def cmd_gen(args) -> int:
    mode, _ = _mode_from_args(args)
    out = {}
    if args.kind == "gallery":
        for entry in gen_gallery(mode):
            out[entry.name] = space_to_obj(entry.space)
    elif args.kind == "ambrosio":
        inst = gen_ambrosio(args.n, mode)
        out["space"] = space_to_obj(inst.space)
        out["vector"] = vector_to_obj(inst.vector)
    else:
        inst = gen_weaver(args.n, mode)
        out["space"] = space_to_obj(inst.space)
        out["vector"] = vector_to_obj(inst.vector)
        out["plateau"] = function_values_obj(inst.plateau)
    report = _header(args, "gen")
    report["kind"] = args.kind
    if args.kind != "gallery":
        report["n"] = args.n
    report["generated"] = out
    _emit(args, report)
    return 0


def cmd_experiment(args) -> int:
    mode, _ = _mode_from_args(args)
    runner = run_ambrosio if args.experiment == "ambrosio" else run_weaver
    diag_name = "mass" if args.experiment == "ambrosio" else "plus_pairing"
    rows = runner(args.n, mode)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["N", "norm", diag_name, "wall_time_s", "mode"])
    for row in rows:
        writer.writerow([row.n, format_scalar(row.norm), format_scalar(row.diagnostic),
                         f"{row.wall_time_s:.6f}", row.mode])
    text = buf.getvalue()
    print(text, end="")
    if args.report:
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise _IOFailure(f"cannot write {args.report}: {exc}") from exc
    return 0


def cmd_verify(args) -> int:
    if args.manifest:
        report = _header(args, "verify-manifest")
        report["manifest"] = manifest()
        _emit(args, report)
        return 0
    results = run_suite(args.suite, args.seed)
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.check_id:40s} "
              f"[{r.module}] {r.detail}")
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed "
          f"(suite={args.suite}, seed={args.seed})")
    report = _header(args, "verify")
    report["suite"] = args.suite
    report["results"] = [
        {"id": r.check_id, "module": r.module, "statement": r.statement,
         "passed": r.passed, "detail": r.detail}
        for r in results]
    report["passed"] = not failed
    if args.report:
        text = json.dumps(report, indent=2, sort_keys=True)
        try:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            raise _IOFailure(f"cannot write {args.report}: {exc}") from exc
    return 0 if not failed else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freelip",
        description="Free-space norms, weightings and order structure over "
                    "finite pointed metric spaces.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def common(p, space=True, vector=False):
        if space:
            p.add_argument("--space", required=True, help="space JSON file")
        if vector:
            p.add_argument("--vector", required=True, help="vector JSON file")
        p.add_argument("--mode", choices=["exact", "float"], default=None)
        p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--report", default=None, help="also write the report here")

    p = sub.add_parser("validate", help="check the metric axioms")
    common(p)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("norm", help="free-space norm with flow and dual")
    common(p, vector=True)
    p.set_defaults(fn=cmd_norm)

    p = sub.add_parser("pair", help="pair a vector with a function")
    common(p, vector=True)
    p.add_argument("--function", required=True)
    p.set_defaults(fn=cmd_pair)

    p = sub.add_parser("support", help="support and mass of a vector")
    common(p, vector=True)
    p.set_defaults(fn=cmd_support)

    p = sub.add_parser("extend", help="extend a partial function")
    common(p)
    p.add_argument("--function", required=True, help="partial values JSON file")
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("weights", help="evaluate a dyadic weight")
    common(p)
    p.add_argument("--family", choices=sorted(_WEIGHT_FAMILIES), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--exact-norm", action="store_true",
                   help="also compute the exact operator norm")
    p.set_defaults(fn=cmd_weights)

    p = sub.add_parser("decompose", help="molecules, annulus parts and classes")
    common(p, vector=True)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("positivity", help="positivity by both routes")
    common(p, vector=True)
    p.set_defaults(fn=cmd_positivity)

    p = sub.add_parser("majorant", help="minimum majorant, optionally check a candidate")
    common(p, vector=True)
    p.add_argument("--psi", default=None, help="candidate majorant JSON file")
    p.set_defaults(fn=cmd_majorant)

    p = sub.add_parser("variation", help="variation and support identities")
    common(p, vector=True)
    p.set_defaults(fn=cmd_variation)

    p = sub.add_parser("radial", help="radial and separation constants")
    common(p)
    p.set_defaults(fn=cmd_radial)

    p = sub.add_parser("gen", help="generate gallery or net instances")
    p.add_argument("kind", choices=["gallery", "ambrosio", "weaver"])
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--mode", choices=["exact", "float"], default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report", default=None)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("experiment", help="run a divergence experiment (CSV)")
    p.add_argument("experiment", choices=["ambrosio", "weaver"])
    p.add_argument("--n", type=int, default=10, help="largest net size")
    p.add_argument("--mode", choices=["exact", "float"], default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report", default=None, help="also write the CSV here")
    p.set_defaults(fn=cmd_experiment)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--suite", choices=sorted(PROFILES), default="all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--manifest", action="store_true",
                   help="print the check manifest instead of running")
    p.add_argument("--mode", choices=["exact", "float"], default=None)
    p.add_argument("--report", default=None)
    p.set_defaults(fn=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (MetricValidationError,) as exc:
        print(json.dumps({"error": exc.payload()}, sort_keys=True), file=sys.stderr)
        return 1
    except (MalformedInput, _IOFailure) as exc:
        payload = exc.payload() if isinstance(exc, FreeLipError) else \
            {"code": "io-error", "message": str(exc)}
        print(json.dumps({"error": payload}, sort_keys=True), file=sys.stderr)
        return 3
    except FreeLipError as exc:
        print(json.dumps({"error": exc.payload()}, sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
