"""Command-line front end.

Exit codes: 0 success, 1 internal invariant failure, 2 validation
failure (the input is well-formed but not a valid category / prime),
3 I/O or schema error, 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from .chartab import CharTableError, certified_prime, choose_splitting_prime
from .eicat import load_category
from .errors import InvariantError, OracleMismatch, SchemaError, ValidationError
from .permgrp import GroupError


def _read_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}") from e


def _load(args):
    doc = _read_json(args.input)
    return load_category(doc, max_group=args.max_group,
                         max_paths=args.max_paths)


def _prime(args, cat):
    groups = list(cat.groups.values())
    if args.prime is not None:
        try:
            return certified_prime(args.prime, groups)
        except CharTableError as e:
            raise ValidationError("bad-prime", str(e)) from e
    return choose_splitting_prime(groups)


def _emit(args, payload: dict, text_lines=None, dot: str | None = None) -> None:
    if args.format == "json":
        json.dump(payload, sys.stdout, indent=2, sort_keys=True)
        sys.stdout.write("\n")
    elif args.format == "dot":
        if dot is None:
            raise ValidationError("bad-format",
                                  "this command has no DOT rendering")
        sys.stdout.write(dot + "\n")
    else:
        for line in (text_lines if text_lines is not None
                     else [json.dumps(payload, sort_keys=True)]):
            sys.stdout.write(line + "\n")


def cmd_validate(args) -> int:
    cat = _load(args)
    payload = {"ok": True, "objects": len(cat.objects),
               "morphisms": cat.morphism_count(),
               "object_order": list(cat.topological_order)}
    _emit(args, payload,
          [f"valid: {len(cat.objects)} objects, "
           f"{cat.morphism_count()} morphisms"])
    return 0


def cmd_quiver(args) -> int:
    from .quiveralg import build_quiver, quiver_document, quiver_dot
    cat = _load(args)
    q = build_quiver(cat, _prime(args, cat))
    lines = [f"prime {q.prime.p}"]
    for v in q.vertices:
        lines.append(f"vertex {v.label} dim {v.dim}")
    for a in q.arrows:
        lines.append(f"arrow {q.vertices[a.source].label} -> "
                     f"{q.vertices[a.target].label} x{a.mult}")
    _emit(args, quiver_document(q), lines, quiver_dot(q))
    return 0


def cmd_classify(args) -> int:
    from .reptype import rep_type
    cat = _load(args)
    verdict = rep_type(cat, _prime(args, cat))
    payload = {"verdict": verdict.verdict,
               "certificates": [{"rule": r, "witness": w}
                                for r, w in verdict.certificates]}
    lines = [verdict.verdict] + [f"  {r}: {w}"
                                 for r, w in verdict.certificates]
    _emit(args, payload, lines)
    return 0


def cmd_screen(args) -> int:
    from .reptype import screen_two_object
    cat = _load(args)
    findings = screen_two_object(cat, _prime(args, cat))
    payload = {"findings": [{"pair": list(pair), "rule": rule,
                             "witness": witness}
                            for pair, rule, witness in findings]}
    lines = ([f"{pair[0]}->{pair[1]}: {rule} ({witness})"
              for pair, rule, witness in findings]
             or ["no screen fired"])
    _emit(args, payload, lines)
    return 0


def cmd_cover(args) -> int:
    from .freecover import free_cover
    cat = _load(args)
    cover = free_cover(cat, max_paths=args.max_paths)
    sizes = {f"{x}->{y}": hs.size for (x, y), hs in sorted(cover.homs.items())}
    payload = {"objects": list(cover.objects),
               "hom_sizes": sizes,
               "morphisms": cover.morphism_count(),
               "original_morphisms": cat.morphism_count()}
    lines = [f"cover has {cover.morphism_count()} morphisms "
             f"(original {cat.morphism_count()})"] + \
            [f"  {k}: {v}" for k, v in sizes.items()]
    _emit(args, payload, lines)
    return 0


def cmd_is_free(args) -> int:
    from .freecover import is_free
    cat = _load(args)
    free = is_free(cat, max_paths=args.max_paths)
    _emit(args, {"free": free}, ["free" if free else "not free"])
    return 0


def cmd_oracle(args) -> int:
    from .oracle import check_against_quiver
    from .quiveralg import build_quiver
    cat = _load(args)
    q = build_quiver(cat, _prime(args, cat))
    oracle = check_against_quiver(q)
    payload = {"ok": True,
               "multiplicities": [
                   {"from": list(a), "to": list(b), "mult": m}
                   for (a, b), m in sorted(oracle.items())]}
    _emit(args, payload,
          ["oracle agrees with the quiver computation"] +
          [f"  {a} -> {b}: {m}" for (a, b), m in sorted(oracle.items())])
    return 0


def cmd_functor(args) -> int:
    from .morita import (MoritaContext, apply_functor, load_catrep,
                         quiverrep_document)
    from .quiveralg import build_quiver
    cat = _load(args)
    q = build_quiver(cat, _prime(args, cat))
    rep = load_catrep(cat, _read_json(args.rep))
    ctx = MoritaContext(q)
    qrep = apply_functor(ctx, rep)
    payload = quiverrep_document(qrep)
    lines = [f"vertex {q.vertices[i].label}: dim {d}"
             for i, d in enumerate(qrep.dims)]
    for a, m in zip(payload["arrows"], qrep.arrow_mats):
        lines.append(f"arrow v{a['from']} -> v{a['to']}: "
                     f"{m.shape[0]}x{m.shape[1]}")
    _emit(args, payload, lines)
    return 0


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eiquiver",
        description="Quivers, freeness and representation type of finite "
                    "EI categories")
    parser.add_argument("--prime", type=int, default=None,
                        help="splitting prime to use (certified before use)")
    parser.add_argument("--format", choices=("json", "dot", "text"),
                        default="json")
    parser.add_argument("--max-paths", type=int, default=100000,
                        help="bound on free-category path enumeration")
    parser.add_argument("--max-group", type=int, default=10000,
                        help="bound on group enumeration")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized internals (outputs are "
                             "deterministic regardless)")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, extra in (
            ("validate", cmd_validate, False),
            ("quiver", cmd_quiver, False),
            ("classify", cmd_classify, False),
            ("screen", cmd_screen, False),
            ("cover", cmd_cover, False),
            ("is-free", cmd_is_free, False),
            ("oracle", cmd_oracle, False),
            ("functor", cmd_functor, True)):
        sp = sub.add_parser(name)
        sp.add_argument("input", help="category JSON document")
        if extra:
            sp.add_argument("rep", help="category representation JSON")
        sp.set_defaults(fn=fn)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as e:
        print(f"schema error: {e}", file=sys.stderr)
        return 3
    except (ValidationError, GroupError, CharTableError) as e:
        print(f"validation error: {e}", file=sys.stderr)
        return 2
    except OracleMismatch as e:
        print(f"oracle mismatch: {e}", file=sys.stderr)
        return 4
    except InvariantError as e:
        print(f"invariant failure: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
