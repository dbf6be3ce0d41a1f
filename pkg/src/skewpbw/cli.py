"""Command-line front end.

Exit codes: 0 ok / verified_on_domain, 1 refuted or failing check,
2 hypothesis_failed, 3 input error, 4 inconclusive_cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import yaml

from . import catalog, config
from .errors import ParseError, SkewPBWError
from .finring import PROPERTIES, ideal_generated, property_witness, validate_ring
from .niltheory import THEOREMS, Budget, verify
from .pbw import check_presentation
from .sigdelta import format_word, is_compatible, is_sigma_rigid, is_weak_sigma_delta_symmetric

EXIT_OK, EXIT_FAIL, EXIT_HYP, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _out(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _cfg(args) -> config.Config:
    return config.load(args.config or [])


def _presentation(args):
    ref = args.presentation
    path, _, name = ref.partition(":") if ":" in ref and not Path(ref).exists() else (ref, "", "")
    if Path(path).is_file():
        cfg = config.load([path])
        names = list(cfg.entries["presentations"])
        if not name:
            if len(names) != 1:
                raise InputError(f"{path} defines {len(names)} presentations; pick one with {path}:NAME")
            name = names[0]
        P = cfg.presentation(name)
    else:
        P = _cfg(args).presentation(ref)
    if getattr(args, "order", None) and args.order != P.order.kind:
        P = P.with_order(args.order)
    return P


def _ring(args):
    ref = args.spec
    path, _, name = ref.partition(":")
    if Path(path).is_file():
        cfg = config.load([path])
        names = list(cfg.entries["rings"])
        if not name:
            if len(names) != 1:
                raise InputError(f"{path} defines {len(names)} rings; pick one with {path}:NAME")
            name = names[0]
        return cfg.ring(name)
    return _cfg(args).ring(ref)


def _labels(R, wit):
    return [R.label(v) for v in wit]


# ---------------------------------------------------------------------------
# verbs


def cmd_ring_validate(args) -> int:
    R = _ring(args)
    res = validate_ring(R)
    payload = {"ring": R.name, "order": R.order, "ok": res.ok, "axiom": res.axiom,
               "witness": None if res.witness is None else list(res.witness), "message": res.message}
    text = "ok" if res.ok else f"fails {res.axiom} at {res.witness}: {res.message}"
    _out(args, payload, text)
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_ring_props(args) -> int:
    R = _ring(args)
    props = [args.prop] if args.prop else list(PROPERTIES)
    results = {}
    for p in props:
        if p not in PROPERTIES:
            raise InputError(f"unknown property {p!r}; choose from {', '.join(PROPERTIES)}")
        wit = property_witness(R, p)
        results[p] = {"holds": wit is None, "witness": None if wit is None else _labels(R, wit)}
    if args.prop:
        r = results[args.prop]
        text = "true" if r["holds"] else "false\nwitness (" + ", ".join(r["witness"]) + ")"
    else:
        width = max(map(len, props))
        text = "\n".join(
            f"{p:<{width}}  {'true' if r['holds'] else 'false'}"
            + ("" if r["holds"] else "  witness (" + ", ".join(r["witness"]) + ")")
            for p, r in results.items()
        )
    _out(args, {"ring": R.name, "properties": results}, text)
    return EXIT_OK


def cmd_sys_check(args) -> int:
    if args.system:
        S = _cfg(args).system(args.system)
    else:
        S = _presentation(args).system
    R = S.ring
    res = S.validate()
    rows = {"valid": (res.ok, None if res.ok else f"{res.axiom} {res.witness}")}
    if res.ok:
        comp = is_compatible(S)
        rig = is_sigma_rigid(S)
        ws = is_weak_sigma_delta_symmetric(S)

        def ew(w):
            return None if w is None else ", ".join(_labels(R, w[:2])) + f", {format_word(w[2])}"

        rows["compatible"] = (comp.holds, None if comp.holds else f"{comp.note}: {ew(comp.witness)}")
        rows["sigma_rigid"] = (rig.holds, None if rig.holds else f"{R.label(rig.witness[0])}, {format_word(rig.witness[1])}")
        w = ws.witness
        rows["weak_sigma_delta_symmetric"] = (
            ws.holds, None if ws.holds else ", ".join(_labels(R, w[:3])) + f", i={w[3]}")
    width = max(map(len, rows))
    text = "\n".join(f"{k:<{width}}  {'true' if v else 'false'}" + (f"  witness ({w})" if w else "")
                     for k, (v, w) in rows.items())
    _out(args, {k: {"holds": v, "witness": w} for k, (v, w) in rows.items()}, text)
    return EXIT_OK if res.ok else EXIT_FAIL


def cmd_pbw_check(args) -> int:
    P = _presentation(args)
    res = check_presentation(P)
    payload = {"presentation": P.name, "ok": res.ok, "failure": res.axiom,
               "witness": None if res.witness is None else list(res.witness), "message": res.message,
               "flags": vars(P.flags) if res.ok else None}
    if res.ok:
        f = P.flags
        text = "ok\n" + "\n".join(f"{k}: {str(v).lower()}" for k, v in vars(f).items())
    else:
        text = f"fails {res.axiom} at {res.witness}: {res.message}"
    _out(args, payload, text)
    if res.ok:
        return EXIT_OK
    return EXIT_INPUT if res.axiom in ("c_invertible", "system") else EXIT_FAIL


def _poly_payload(P, f):
    return {"normal_form": P.format(f),
            "terms": [{"monomial": list(m), "coefficient": P.coeffs.fmt(c)} for m, c in f.items()]}


def _parse(P, text):
    try:
        return P.parse(text)
    except ParseError as exc:
        raise InputError(f"expression {exc}") from None


def cmd_pbw_nf(args) -> int:
    P = _presentation(args)
    f = _parse(P, args.expr)
    _out(args, _poly_payload(P, f), P.format(f))
    return EXIT_OK


def cmd_pbw_mul(args) -> int:
    P = _presentation(args)
    polys = [_parse(P, e) for e in args.expr]
    f = P.product(*polys)
    _out(args, _poly_payload(P, f), P.format(f))
    return EXIT_OK


def cmd_verify(args) -> int:
    P = _presentation(args)
    budget = Budget(args.max_terms, args.max_deg, args.mode, args.samples, args.seed,
                    all_witnesses=args.all_witnesses)
    ideal = None
    if args.ideal:
        cfg = _cfg(args)
        if args.ideal in cfg.names("ideals"):
            gens = cfg.ideal(args.ideal).labels()
        else:
            gens = [g.strip() for g in args.ideal.split(";") if g.strip()]
        ideal = ideal_generated(P.ring, [P.ring.element(g) for g in gens])
    rep = verify(args.theorem, P, budget, ideal)
    _out(args, rep.to_dict(), rep.to_text())
    return rep.exit_code


def cmd_catalog_list(args) -> int:
    entries = catalog.list_entries()
    payload = [{"name": e.name, "description": e.description, "defaults": dict(e.defaults)} for e in entries]
    width = max(len(e.name) for e in entries)
    lines = []
    for e in entries:
        params = " ".join(f"{k}={v}" for k, v in e.defaults.items())
        lines.append(f"{e.name:<{width}}  {e.description}" + (f"  [{params}]" if params else ""))
    _out(args, {"entries": payload}, "\n".join(lines))
    return EXIT_OK


def cmd_catalog_emit(args) -> int:
    params = {}
    for item in args.params or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"parameter {item!r} must look like name=value")
        params[key.strip()] = yaml.safe_load(value)
    P = catalog.instantiate(args.name, params)
    doc = config.presentation_document(P, args.as_name or args.name)
    text = config.dump(doc)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", action="append", metavar="PATH",
                        help="config file or directory (repeatable)")
    common.add_argument("--json", action="store_true", help="emit the machine-readable report")

    parser = argparse.ArgumentParser(prog="skewpbw", description=__doc__.splitlines()[0],
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    groups = parser.add_subparsers(dest="group", required=True)

    ring = groups.add_parser("ring").add_subparsers(dest="verb", required=True)
    p = ring.add_parser("validate", parents=[common])
    p.add_argument("--spec", required=True)
    p.set_defaults(func=cmd_ring_validate)
    p = ring.add_parser("props", parents=[common])
    p.add_argument("--spec", required=True)
    p.add_argument("--prop")
    p.set_defaults(func=cmd_ring_props)

    sysp = groups.add_parser("sys").add_subparsers(dest="verb", required=True)
    p = sysp.add_parser("check", parents=[common])
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--system")
    src.add_argument("--presentation")
    p.set_defaults(func=cmd_sys_check)

    pbw = groups.add_parser("pbw").add_subparsers(dest="verb", required=True)
    p = pbw.add_parser("check", parents=[common])
    p.add_argument("--presentation", required=True)
    p.set_defaults(func=cmd_pbw_check)
    p = pbw.add_parser("nf", parents=[common])
    p.add_argument("--presentation", required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--order", choices=("deglex", "lex"))
    p.set_defaults(func=cmd_pbw_nf)
    p = pbw.add_parser("mul", parents=[common])
    p.add_argument("--presentation", required=True)
    p.add_argument("--expr", action="append", required=True, help="factor (repeat for each)")
    p.add_argument("--order", choices=("deglex", "lex"))
    p.set_defaults(func=cmd_pbw_mul)

    p = groups.add_parser("verify", parents=[common])
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--presentation", required=True)
    p.add_argument("--mode", choices=("exhaustive", "seeded"), default="exhaustive")
    p.add_argument("--max-terms", type=int, default=2)
    p.add_argument("--max-deg", type=int, default=2)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ideal", help="named ideal, or generator labels separated by ';'")
    p.add_argument("--all-witnesses", action="store_true")
    p.add_argument("--order", choices=("deglex", "lex"))
    p.set_defaults(func=cmd_verify)

    cat = groups.add_parser("catalog").add_subparsers(dest="verb", required=True)
    p = cat.add_parser("list", parents=[common])
    p.set_defaults(func=cmd_catalog_list)
    p = cat.add_parser("emit", parents=[common])
    p.add_argument("name")
    p.add_argument("--params", nargs="*", metavar="NAME=VALUE")
    p.add_argument("--as", dest="as_name", help="presentation name in the emitted file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog_emit)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (InputError, SkewPBWError, KeyError, IndexError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
