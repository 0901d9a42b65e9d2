"""Command-line entry point: load JSON action specs, dispatch computations,
emit deterministic JSON reports (sorted keys, canonical rationals) or SVG
weight diagrams.

Exit codes: 0 success, 2 validation error, 3 an Undecided result under
--strict.  Undecided is otherwise a first-class result, not an error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence

from .action import (
    ExplicitPoint,
    GroupSpec,
    SupportPoint,
    TorusAction,
    build_product_action,
)
from .qpoly import BiPoly, InnerProduct, RationalVector, parse_rational
from .stability import (
    OneParamSubgroup,
    SweepStatus,
    adapted_region,
    admissible_cone,
    cocharacter_fan,
    h_stable_explicit,
    stab_u_dimension,
    torus_status,
    uhat_stable_explicit,
    universal_1ps,
)
from .strata import beta_index_set, verify_stratification
from .svg import svg_weight_diagram
from .vgit import verify_external_change, wall_chamber_decomposition


class SpecError(ValueError):
    """Input validation failure; the message names the offending field."""


@dataclass
class LoadedSpec:
    action: TorusAction
    group: Optional[GroupSpec]
    variants: dict[str, GroupSpec]
    points: dict[str, ExplicitPoint | SupportPoint]
    external: Optional[dict[str, Any]]
    name: str


def _require(data: dict, key: str, context: str) -> Any:
    if key not in data:
        raise SpecError(f"{context}: missing required field {key!r}")
    return data[key]


def _rational(value: Any, context: str) -> Fraction:
    try:
        if isinstance(value, str):
            return parse_rational(value)
        if isinstance(value, int):
            return Fraction(value)
    except ValueError:
        pass
    raise SpecError(f"{context}: expected a rational literal, got {value!r}")


def _vector(value: Any, rank: int, context: str) -> RationalVector:
    if not isinstance(value, list) or len(value) != rank:
        raise SpecError(f"{context}: expected a list of {rank} rationals")
    return RationalVector([_rational(v, context) for v in value])


def load_spec(path: str) -> LoadedSpec:
    """Validate an action-spec JSON file into the in-memory model."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read input file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SpecError("top level: expected a JSON object")

    rank = _require(data, "rank", "top level")
    if not isinstance(rank, int) or rank < 1:
        raise SpecError("rank: must be a positive integer")
    gram = _require(data, "inner_product", "top level")
    try:
        ip = InnerProduct(gram)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"inner_product: {exc}") from exc

    factors_data = _require(data, "factors", "top level")
    if not isinstance(factors_data, list) or not factors_data:
        raise SpecError("factors: expected a nonempty list")
    factor_actions = []
    for fi, fdata in enumerate(factors_data):
        ctx = f"factors[{fi}]"
        wts = _require(fdata, "weights", ctx)
        if not isinstance(wts, list) or not wts:
            raise SpecError(f"{ctx}.weights: expected a nonempty list")
        weights = []
        for wi, w in enumerate(wts):
            vec = _vector(w, rank, f"{ctx}.weights[{wi}]")
            if not vec.is_integral():
                raise SpecError(f"{ctx}.weights[{wi}]: weights must be integral")
            weights.append(vec)
        factor_actions.append(TorusAction(rank, weights, ip))
    action = build_product_action(factor_actions)
    if "twist" in data:
        action = action.with_twist(_vector(data["twist"], rank, "twist"))

    group = None
    if "group" in data:
        group = _load_group(data["group"], action, rank, "group")
    variants = {}
    for vname, vdata in (data.get("variants") or {}).items():
        variants[vname] = _load_group(vdata, action, rank, f"variants.{vname}")

    points: dict[str, ExplicitPoint | SupportPoint] = {}
    for pname, pdata in (data.get("points") or {}).items():
        ctx = f"points.{pname}"
        if "support" in pdata:
            blocks = pdata["support"]
            if not isinstance(blocks, list) or len(blocks) != len(
                action.factor_partition
            ):
                raise SpecError(f"{ctx}.support: one index list per factor required")
            idx = []
            for blk, local in zip(action.factor_partition, blocks):
                for i in local:
                    if not isinstance(i, int) or i < 0 or i >= len(blk):
                        raise SpecError(f"{ctx}.support: index {i} out of range")
                    idx.append(blk[i])
            sp = SupportPoint(idx)
            try:
                action.validate_support(sp)
            except ValueError as exc:
                raise SpecError(f"{ctx}.support: {exc}") from exc
            points[pname] = sp
        elif "coords" in pdata:
            blocks = pdata["coords"]
            if not isinstance(blocks, list) or len(blocks) != len(
                action.factor_partition
            ):
                raise SpecError(f"{ctx}.coords: one list per factor required")
            try:
                points[pname] = ExplicitPoint(
                    [[_rational(v, ctx) for v in blk] for blk in blocks]
                )
            except ValueError as exc:
                raise SpecError(f"{ctx}.coords: {exc}") from exc
        else:
            raise SpecError(f"{ctx}: needs either 'support' or 'coords'")

    external = data.get("external")
    if external is not None:
        for key in ("m_lambda", "m_mu", "N"):
            _require(external, key, "external")

    return LoadedSpec(
        action, group, variants, points, external, data.get("name", "action")
    )


def _load_group(
    gdata: dict, action: TorusAction, rank: int, ctx: str
) -> GroupSpec:
    aw = []
    for wi, w in enumerate(gdata.get("adjoint_weights", [])):
        aw.append(_vector(w, rank, f"{ctx}.adjoint_weights[{wi}]"))
    u_params = gdata.get("u_params", 0)
    mats_data = gdata.get("u_matrices", [])
    if mats_data and len(mats_data) != len(action.factor_partition):
        raise SpecError(f"{ctx}.u_matrices: one matrix per factor required")
    mats = []
    for mi, mat in enumerate(mats_data):
        rows = []
        for ri, row in enumerate(mat):
            entries = []
            for ci, cell in enumerate(row):
                try:
                    entries.append(BiPoly.parse(str(cell)))
                except ValueError as exc:
                    raise SpecError(
                        f"{ctx}.u_matrices[{mi}][{ri}][{ci}]: {exc}"
                    ) from exc
            rows.append(entries)
        mats.append(rows)
    try:
        return GroupSpec(aw, u_params, mats)
    except ValueError as exc:
        raise SpecError(f"{ctx}: {exc}") from exc


# ---------------------------------------------------------------------------
# JSON rendering helpers (canonical: rationals as strings, sorted keys)
# ---------------------------------------------------------------------------


def _jq(q: Fraction) -> str:
    return str(q)


def _jvec(v: RationalVector) -> list[str]:
    return [_jq(e) for e in v.entries]


def _jfamily(family) -> list[list[int]]:
    return sorted(sorted(s) for s in family)


def _jsupport(s: SupportPoint) -> list[int]:
    return sorted(s.support)


def _emit(payload: dict, output: Optional[str]) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def _group_for(spec: LoadedSpec, args) -> GroupSpec:
    if getattr(args, "variant", None):
        if args.variant not in spec.variants:
            raise SpecError(f"variant {args.variant!r} not present in the input")
        return spec.variants[args.variant]
    if spec.group is None:
        raise SpecError("this command needs a 'group' block in the input")
    return spec.group


def _point_for(spec: LoadedSpec, args) -> tuple[str, ExplicitPoint | SupportPoint]:
    name = getattr(args, "point", None)
    if not name:
        raise SpecError("this command needs --point NAME")
    if name not in spec.points:
        raise SpecError(f"point {name!r} not present in the input")
    return name, spec.points[name]


def _twist_for(spec: LoadedSpec, args) -> TorusAction:
    action = spec.action
    if getattr(args, "twist", None):
        parts = [p.strip() for p in args.twist.split(",")]
        if len(parts) != action.rank:
            raise SpecError(f"--twist needs {action.rank} comma-separated rationals")
        action = action.with_twist(
            RationalVector([parse_rational(p) for p in parts])
        )
    return action


def _lambda_for(args, rank: int) -> OneParamSubgroup:
    if not getattr(args, "lam", None):
        raise SpecError("this command needs --lambda \"a,b\"")
    parts = [p.strip() for p in args.lam.split(",")]
    if len(parts) != rank:
        raise SpecError(f"--lambda needs {rank} comma-separated integers")
    try:
        return OneParamSubgroup(RationalVector([int(p) for p in parts]))
    except ValueError as exc:
        raise SpecError(f"--lambda: {exc}") from exc


def _cmd_stability(spec: LoadedSpec, args) -> dict:
    action = _twist_for(spec, args)
    results = {}
    if args.point == "all" and "all" not in spec.points:
        for sp in action.iter_supports():
            key = ",".join(str(i) for i in _jsupport(sp))
            results[key] = torus_status(
                action, sp, relative_interior=args.relative_interior
            ).value
    else:
        name, pt = _point_for(spec, args)
        sp = pt if isinstance(pt, SupportPoint) else pt.support(action)
        results[name] = torus_status(
            action, sp, relative_interior=args.relative_interior
        ).value
    return {"statuses": results, "twist": _jvec(action.twist)}


def _cmd_beta(spec: LoadedSpec, args) -> dict:
    action = _twist_for(spec, args)
    out = []
    for bi in beta_index_set(action):
        out.append(
            {
                "beta": _jvec(bi.beta),
                "norm_sq": _jq(bi.norm_sq),
                "lambda": (
                    [str(int(e)) for e in bi.lambda_beta.cochar.entries]
                    if bi.lambda_beta
                    else None
                ),
            }
        )
    return {"beta_set": out}


def _cmd_chambers(spec: LoadedSpec, args) -> dict:
    action = spec.action
    cc = wall_chamber_decomposition(action)
    if cc.rank == 1:
        walls = [
            {
                "at": _jq(w.cells[0].sample.entries[0]),
                "family": _jfamily(w.cells[0].family),
            }
            for w in cc.walls
        ]
        chambers = [
            {
                "interval": [_jq(ch.interval[0]), _jq(ch.interval[1])],
                "sample": _jvec(ch.sample),
                "family": _jfamily(ch.family),
            }
            for ch in cc.chambers
        ]
        return {"rank": 1, "walls": walls, "chambers": chambers}
    walls = []
    for w in cc.walls:
        walls.append(
            {
                "line": {
                    "normal": _jvec(w.line.normal),
                    "offset": _jq(w.line.offset),
                },
                "cells": [
                    {
                        "sample": _jvec(cell.sample),
                        "family": _jfamily(cell.family),
                        "signs": list(cell.signs),
                    }
                    for cell in w.cells
                ],
            }
        )
    chambers = [
        {
            "sample": _jvec(ch.sample),
            "family": _jfamily(ch.family),
            "signs": list(ch.signs),
        }
        for ch in cc.chambers
    ]
    vertices = [
        {"point": _jvec(v.point), "family": _jfamily(v.family)}
        for v in cc.vertices
    ]
    return {
        "rank": 2,
        "walls": walls,
        "chambers": chambers,
        "vertices": vertices,
        "effective_vertices": [_jvec(v) for v in cc.effective.vertices],
    }


def _cmd_strata(spec: LoadedSpec, args) -> dict:
    action = _twist_for(spec, args)
    rep = verify_stratification(action)
    return {
        "betas": [
            {"beta": _jvec(b.beta), "norm_sq": _jq(b.norm_sq)} for b in rep.betas
        ],
        "stratum_sizes": {
            ",".join(_jq(v) for v in key): size
            for key, size in sorted(rep.stratum_sizes.items())
        },
        "supports": {
            ",".join(str(i) for i in sorted(s)): [_jq(v) for v in beta]
            for s, beta in sorted(
                rep.support_beta.items(), key=lambda kv: sorted(kv[0])
            )
        },
        "violations": list(rep.violations),
        "ok": rep.ok,
    }


def _cmd_admissible_cone(spec: LoadedSpec, args) -> dict:
    g = _group_for(spec, args)
    cone = admissible_cone(g, spec.action.rank)
    return {
        "halfspaces": [
            {"normal": _jvec(n), "strict": strict} for n, strict in cone.halfspaces
        ],
        "full_space": cone.is_full_space,
    }


def _cmd_adapted(spec: LoadedSpec, args) -> dict:
    action = _twist_for(spec, args)
    lam = _lambda_for(args, action.rank)
    eps = parse_rational(args.epsilon) if args.epsilon else None
    region = adapted_region(action, lam, eps)
    t = lam.pairing(action.twist)
    return {
        "lambda": [str(int(e)) for e in lam.cochar.entries],
        "adapted_interval": [_jq(region.lower), _jq(region.upper)],
        "well_adapted_interval": [_jq(v) for v in region.well_adapted_interval()],
        "epsilon": _jq(region.epsilon),
        "current_t": _jq(t),
        "current_adapted": region.is_adapted(t),
        "current_well_adapted": region.is_well_adapted(t),
    }


def _cmd_fan(spec: LoadedSpec, args) -> dict:
    g = _group_for(spec, args)
    cone = admissible_cone(g, spec.action.rank)
    result = universal_1ps(spec.action, cone)
    fan = cocharacter_fan(spec.action, cone)
    pieces = []
    for p in fan.pieces:
        pieces.append(
            {
                "kind": p.face.kind,
                "sample": [str(int(e)) for e in p.sample.cochar.entries],
                "min_support": sorted(p.min_support),
            }
        )
    return {"universal": result.unique, "pieces": pieces}


def _cmd_usweep(spec: LoadedSpec, args) -> dict:
    g = _group_for(spec, args)
    lam = _lambda_for(args, spec.action.rank)
    name, pt = _point_for(spec, args)
    if isinstance(pt, SupportPoint):
        raise SpecError("usweep needs an explicit-coordinates point")
    verdict = uhat_stable_explicit(pt, spec.action, g, lam)
    return {
        "point": name,
        "status": verdict.status.value,
        "witness": [_jq(v) for v in verdict.witness] if verdict.witness else None,
    }


def _cmd_hstable(spec: LoadedSpec, args) -> dict:
    g = _group_for(spec, args)
    name, pt = _point_for(spec, args)
    if isinstance(pt, SupportPoint):
        raise SpecError("hstable needs an explicit-coordinates point")
    verdict = h_stable_explicit(pt, spec.action, g)
    out = {"point": name, "status": verdict.status.value}
    dim = stab_u_dimension(pt, g)
    out["stab_u_dimension"] = dim.value
    return out


def _cmd_external_equiv(spec: LoadedSpec, args) -> dict:
    if spec.external is None:
        raise SpecError("this command needs an 'external' block in the input")
    eps = (
        parse_rational(args.epsilon)
        if args.epsilon
        else _rational(spec.external.get("epsilon", "1/2"), "external.epsilon")
    )
    rep = verify_external_change(
        spec.action,
        [int(v) for v in spec.external["m_lambda"]],
        [int(v) for v in spec.external["m_mu"]],
        int(spec.external["N"]),
        eps,
    )
    return {
        "lambda_check": rep.lambda_check,
        "mu_check": rep.mu_check,
        "passed": rep.passed,
        "single_lambda_family": _jfamily(rep.single_lambda_family),
        "single_mu_family": _jfamily(rep.single_mu_family),
    }


def _cmd_svg(spec: LoadedSpec, args) -> str:
    cone = None
    if spec.group is not None:
        cone = admissible_cone(spec.group, spec.action.rank)
    betas = None
    if spec.action.rank == 2 and len(spec.action.distinct_segre_weights()) <= 14:
        betas = [b.beta for b in beta_index_set(spec.action)]
    return svg_weight_diagram(spec.action, cone=cone, betas=betas)


_COMMANDS = {
    "stability": _cmd_stability,
    "beta": _cmd_beta,
    "chambers": _cmd_chambers,
    "strata": _cmd_strata,
    "admissible-cone": _cmd_admissible_cone,
    "adapted": _cmd_adapted,
    "fan": _cmd_fan,
    "usweep": _cmd_usweep,
    "hstable": _cmd_hstable,
    "external-equiv": _cmd_external_equiv,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gitloci",
        description="Exact stability loci, chambers and stratifications for linearised torus actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd in list(_COMMANDS) + ["svg"]:
        p = sub.add_parser(cmd)
        p.add_argument("--input", required=True, help="action spec JSON file")
        p.add_argument("--output", default=None, help="output file (default stdout)")
        p.add_argument("--epsilon", default=None, help="rational epsilon")
        p.add_argument("--twist", default=None, help='character twist "q1,q2"')
        p.add_argument("--point", default=None, help="named point, or 'all'")
        p.add_argument("--lambda", dest="lam", default=None, help='cocharacter "a,b"')
        p.add_argument("--variant", default=None, help="named group variant")
        p.add_argument("--strict", action="store_true", help="exit 3 on Undecided")
        p.add_argument(
            "--relative-interior",
            action="store_true",
            help="read stability as relative-interior membership",
        )
    return parser


_VALUE_FLAGS = {"--input", "--output", "--epsilon", "--twist", "--point", "--lambda", "--variant"}


def _glue_flag_values(argv: Sequence[str]) -> list[str]:
    """Join value-taking flags with their argument so that values beginning
    with a minus sign (negative rationals) survive argparse."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            val = next(it, None)
            if val is None:
                out.append(tok)
            else:
                out.append(f"{tok}={val}")
        else:
            out.append(tok)
    return out


def run(argv: Sequence[str]) -> int:
    parser = _build_parser()
    args = parser.parse_args(_glue_flag_values(argv))
    try:
        spec = load_spec(args.input)
        if args.command == "svg":
            text = _cmd_svg(spec, args)
            if args.output:
                with open(args.output, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        payload = _COMMANDS[args.command](spec, args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, "input": spec.name, "result": payload}
    _emit(report, args.output)
    if args.strict and _has_undecided(payload):
        return 3
    return 0


def _has_undecided(payload) -> bool:
    if isinstance(payload, dict):
        return any(_has_undecided(v) for v in payload.values())
    if isinstance(payload, list):
        return any(_has_undecided(v) for v in payload)
    return payload == SweepStatus.UNDECIDED.value


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
