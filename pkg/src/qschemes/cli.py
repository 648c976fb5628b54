"""Command-line surface.

Exit codes: 0 success, 1 a verification/check reported failures, 2 usage or
input errors.  Every error prints ``error[<code>]: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import orbit as orbit_mod
from . import regularize as reg_mod
from . import serialize as ser
from .errors import QschemeError
from .quiver import cartan, expected_dim, parse_quiver, serialize_quiver, to_dot
from .reflect import random_level_point, reflection_functor
from .repn import level_check, mesh_check, moment_map, random_rep
from .suites import SUITE_NAMES, run_suite
from .weyl import reflect_dim, reflect_param, verify_coxeter


def _read(path):
    return Path(path).read_text(encoding="utf-8")


def _load_quiver(path):
    return parse_quiver(_read(path))


def _load_json(path):
    return json.loads(_read(path))


def _parse_dims(text):
    return tuple(int(x) for x in text.split(","))


def _emit(args, obj, text):
    if args.format == "json":
        sys.stdout.write(ser.dumps(obj))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_parse(args):
    q = _load_quiver(args.file)
    if args.dot:
        sys.stdout.write(to_dot(q))
    else:
        sys.stdout.write(serialize_quiver(q))
    return 0


def cmd_cartan(args):
    q = _load_quiver(args.file)
    cd = cartan(q)
    obj = {
        "vertices": [v.name for v in q.vertices],
        "a": [list(r) for r in cd.a],
        "aprime": [[str(x) for x in r] for r in cd.aprime],
        "d": list(cd.d),
        "c": [list(r) for r in cd.c],
    }
    text = "\n".join(
        f"{q.name(i)}: " + " ".join(str(x) for x in row)
        for i, row in enumerate(cd.c)
    )
    _emit(args, obj, "C =\n" + text)
    return 0


def cmd_dim(args):
    q = _load_quiver(args.file)
    v = _parse_dims(args.v)
    value = expected_dim(q, v)
    _emit(args, {"v": list(v), "expected_dim": value}, f"expected dim: {value}")
    return 0


def cmd_reflect(args):
    q = _load_quiver(args.file)
    lam = ser.params_from_obj(q, _load_json(args.lam))
    v = _parse_dims(args.v)
    new_lam = reflect_param(q, args.vertex, lam)
    new_v = reflect_dim(q, args.vertex, v)
    obj = {"lambda": ser.params_to_obj(q, new_lam), "v": list(new_v)}
    _emit(args, obj, ser.dumps(obj))
    return 0


def cmd_weyl_verify(args):
    q = _load_quiver(args.file)
    report = verify_coxeter(q)
    obj = {
        "ok": report.all_ok,
        "checks": [
            {"action": c.action, "vertices": list(c.vertices),
             "order": c.order, "ok": c.ok}
            for c in report.checks
        ],
        "skipped": [
            {"vertices": list(pair), "product": prod}
            for pair, prod in report.skipped
        ],
    }
    _emit(args, obj, report.summary())
    return 0 if report.all_ok else 1


def cmd_moment(args):
    q = _load_quiver(args.file)
    rep = ser.rep_from_obj(q, _load_json(args.rep))
    mu = moment_map(rep)
    obj = {q.name(i): ser.rmap_to_obj(m) for i, m in enumerate(mu)}
    _emit(args, obj, ser.dumps(obj))
    return 0


def cmd_mesh(args):
    q = _load_quiver(args.file)
    rep = ser.rep_from_obj(q, _load_json(args.rep))
    lam = ser.params_from_obj(q, _load_json(args.lam))
    res = mesh_check(rep, lam)
    zero = all(r.is_zero() for r in res)
    obj = {
        "zero": zero,
        "residuals": {q.name(i): ser.rmap_to_obj(r) for i, r in enumerate(res)},
        "level_ok": level_check(q, lam, rep.v),
    }
    _emit(args, obj, f"residuals zero: {zero}")
    return 0 if zero else 1


def cmd_random_rep(args):
    q = _load_quiver(args.file)
    rep = random_rep(q, _parse_dims(args.v), args.seed)
    out = ser.dumps(ser.rep_to_obj(rep))
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


def cmd_orbit_check(args):
    spec = ser.orbit_spec_from_obj(_load_json(args.spec))
    a = ser.rmap_from_obj(_load_json(args.a))
    witness = orbit_mod.orbit_membership(spec, a)
    obj = {"member": witness.ok, "reasons": witness.reasons}
    _emit(args, obj, "member" if witness.ok else "not a member:\n  "
          + "\n  ".join(witness.reasons))
    return 0 if witness.ok else 1


def cmd_leg_factor(args):
    spec = ser.orbit_spec_from_obj(_load_json(args.spec))
    a = ser.rmap_from_obj(_load_json(args.a))
    point = orbit_mod.leg_factorize(spec, a)
    out = ser.dumps(ser.leg_point_to_obj(point))
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


def cmd_functor(args):
    q = _load_quiver(args.file)
    rep = ser.rep_from_obj(q, _load_json(args.rep))
    lam = ser.params_from_obj(q, _load_json(args.lam))
    out_rep = reflection_functor(rep, args.vertex, lam)
    new_lam = reflect_param(q, args.vertex, lam)
    obj = {
        "rep": ser.rep_to_obj(out_rep),
        "lambda": ser.params_to_obj(q, new_lam),
        "v": list(out_rep.v),
    }
    out = ser.dumps(obj)
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


def cmd_random_level(args):
    q = _load_quiver(args.file)
    lam = ser.params_from_obj(q, _load_json(args.lam))
    rep = random_level_point(q, lam, _parse_dims(args.v), args.vertex, args.seed)
    out = ser.dumps(ser.rep_to_obj(rep))
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


def cmd_legs(args):
    q = _load_quiver(args.file)
    legs = reg_mod.find_legs(q)
    obj = [
        {
            "base": q.name(leg.base),
            "vertices": [q.name(i) for i in leg.vertices],
            "d": leg.d,
        }
        for leg in legs
    ]
    text = "\n".join(
        f"leg: base {o['base']}, chain {','.join(o['vertices'])}, d={o['d']}"
        for o in obj
    ) or "no legs"
    _emit(args, obj, text)
    return 0


def _leg_from_arg(q, text):
    names = [x.strip() for x in text.split(",")]
    return reg_mod.leg_from_names(q, names)


def cmd_regularize(args):
    q = _load_quiver(args.file)
    leg = _leg_from_arg(q, args.leg)
    reg = reg_mod.regularize_quiver(q, leg)
    out_text = serialize_quiver(reg)
    result = {"quiver": out_text}
    if args.lam and args.v:
        lam = ser.params_from_obj(q, _load_json(args.lam))
        v = _parse_dims(args.v)
        lamc, vc = reg_mod.regularize_params(q, leg, lam, v)
        hyp = reg_mod.check_theorem_hypotheses(q, leg, lam, v)
        result["lambda"] = ser.params_to_obj(reg, lamc)
        result["v"] = list(vc)
        result["hypotheses_ok"] = hyp.all_ok
    if args.out:
        Path(args.out).write_text(out_text, encoding="utf-8")
        if args.format == "json":
            sys.stdout.write(ser.dumps(result))
    elif args.format == "json":
        sys.stdout.write(ser.dumps(result))
    else:
        sys.stdout.write(out_text)
        if "v" in result:
            sys.stdout.write(f"# v: {result['v']}\n")
            sys.stdout.write(f"# hypotheses ok: {result['hypotheses_ok']}\n")
    return 0


def cmd_reg_verify(args):
    q = _load_quiver(args.file)
    leg = _leg_from_arg(q, args.leg)
    iso = reg_mod.isometry_check(q, leg)
    sd = reg_mod.verify_semidirect(q, leg)
    pe = reg_mod.verify_param_equivariance(q, leg)
    ok = iso and sd.all_ok and pe.all_ok
    obj = {
        "isometry": iso,
        "semidirect": [{"label": l, "ok": o} for l, o in sd.items],
        "equivariance": [{"label": l, "ok": o} for l, o in pe.items],
        "ok": ok,
    }
    text = "\n".join([
        f"isometry: {'ok' if iso else 'FAIL'}",
        "semidirect: " + sd.summary(),
        "equivariance: " + pe.summary(),
    ])
    _emit(args, obj, text)
    return 0 if ok else 1


def cmd_check(args):
    corpus_dir = Path(args.corpus)
    quivers = {}
    for path in sorted(corpus_dir.glob("*.quiver")):
        quivers[path.stem] = parse_quiver(path.read_text(encoding="utf-8"))
    if not quivers:
        raise QschemeError(f"no .quiver files in {corpus_dir}")
    report = run_suite(quivers, args.suite, seed=args.seed, trials=args.trials)
    if args.format == "json":
        sys.stdout.write(ser.dumps(report.to_obj()))
    else:
        sys.stdout.write(report.summary() + "\n")
    return 0 if report.ok else 1


def build_parser():
    p = argparse.ArgumentParser(
        prog="qs", description="exact quiver-scheme computations"
    )
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", help="parse a quiver file and echo it")
    sp.add_argument("file")
    sp.add_argument("--dot", action="store_true")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("cartan", help="Cartan data of a quiver")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_cartan)

    sp = sub.add_parser("dim", help="expected dimension for a dimension vector")
    sp.add_argument("file")
    sp.add_argument("--v", required=True)
    sp.set_defaults(func=cmd_dim)

    sp = sub.add_parser("reflect", help="reflect parameters and dimensions")
    sp.add_argument("file")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--v", required=True)
    sp.set_defaults(func=cmd_reflect)

    sp = sub.add_parser("weyl-verify", help="verify the reflection relations")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_weyl_verify)

    sp = sub.add_parser("moment", help="moment values of a representation")
    sp.add_argument("file")
    sp.add_argument("--rep", required=True)
    sp.set_defaults(func=cmd_moment)

    sp = sub.add_parser("mesh", help="level-set residuals of a representation")
    sp.add_argument("file")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.set_defaults(func=cmd_mesh)

    sp = sub.add_parser("random-rep", help="deterministic random representation")
    sp.add_argument("file")
    sp.add_argument("--v", required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_random_rep)

    sp = sub.add_parser("orbit-check", help="orbit membership with witnesses")
    sp.add_argument("spec")
    sp.add_argument("--a", required=True)
    sp.set_defaults(func=cmd_orbit_check)

    sp = sub.add_parser("leg-factor", help="factor an orbit member through a chain")
    sp.add_argument("spec")
    sp.add_argument("--a", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_leg_factor)

    sp = sub.add_parser("functor", help="apply the reflection functor")
    sp.add_argument("file")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--rep", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_functor)

    sp = sub.add_parser("random-level", help="random vertex level-set point")
    sp.add_argument("file")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--lambda", dest="lam", required=True)
    sp.add_argument("--v", required=True)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_random_level)

    sp = sub.add_parser("legs", help="list the legs of a quiver")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_legs)

    sp = sub.add_parser("regularize", help="rewrite a quiver along a leg")
    sp.add_argument("file")
    sp.add_argument("--leg", required=True, help="base,v1,...,vl vertex names")
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--v")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_regularize)

    sp = sub.add_parser("reg-verify", help="verify the regularization identities")
    sp.add_argument("file")
    sp.add_argument("--leg", required=True)
    sp.set_defaults(func=cmd_reg_verify)

    sp = sub.add_parser("check", help="run property suites over a corpus")
    sp.add_argument("corpus")
    sp.add_argument("--suite", choices=SUITE_NAMES, default="all")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--trials", type=int, default=25)
    sp.set_defaults(func=cmd_check)

    # --format is also accepted after the subcommand
    for sp in sub.choices.values():
        sp.add_argument(
            "--format", choices=("text", "json"), default=argparse.SUPPRESS
        )
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except QschemeError as e:
        sys.stderr.write(f"error[{e.code}]: {e}\n")
        return 2
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as e:
        sys.stderr.write(f"error[input]: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
