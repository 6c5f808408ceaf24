"""Command-line surface: one binary, subcommand style.

Exit codes: 0 success, 1 a checked property fails (e.g. `verify` on a
non-intersecting instance), 2 usage, parse, or I/O errors.  Machine
output is JSON under --json with a versioned top-level "schema" field;
instance files use the text format of :mod:`ryser.core`.  No
configuration files or environment variables are consulted, so a command
line is a complete record of a run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .core import FormatError, HypergraphError, load, render, save
from .cover import cover_number
from .constructions import (ConstructionError, pad_to, paper_instance,
                            truncated_projective_plane)
from .analysis import (HypothesisError, check_8edge_lemma,
                       classify_degree_scheme, linearity_report,
                       render_degree_table, ryser_ratio)
from .search import SearchError, canonical_form, resume, search_extremal

OK, FAIL, USAGE = 0, 1, 2


def _schema(command: str) -> str:
    return f"ryser/{command}/v1"


def _emit(payload: dict, human: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(human)


def _write_instance(h, out) -> None:
    if out is None or out == "-":
        sys.stdout.write(render(h))
    else:
        save(h, out)


# -- subcommands -----------------------------------------------------------

def _cmd_verify(args) -> int:
    h = load(args.file)
    ok, witness = h.is_intersecting()
    payload = {"schema": _schema("verify"), "r": h.r, "m": h.m,
               "intersecting": ok}
    if ok:
        _emit(payload, f"ok: {h.r}-partite, {h.m} edges, intersecting",
              args.json)
        return OK
    payload["witness"] = list(witness)
    _emit(payload,
          f"not intersecting: E{witness[0]} and E{witness[1]} are disjoint",
          args.json)
    return FAIL


def _cmd_tau(args) -> int:
    h = load(args.file)
    tau, cert = cover_number(h, limit=args.limit)
    payload = {"schema": _schema("tau")}
    if tau is None:
        payload.update({"tau": None, "exhausted": args.limit})
        _emit(payload, f"tau > {args.limit} (size {args.limit} exhausted)",
              args.json)
        return OK
    payload["tau"] = tau
    if args.certificate:
        payload.update(cert.to_json())
        cover = " ".join(str(v) for v in cert.sorted_vertices())
        _emit(payload, f"tau {tau}\ncover {cover}", args.json)
    else:
        _emit(payload, f"tau {tau}", args.json)
    return OK


def _cmd_report(args) -> int:
    h = load(args.file)
    rep = linearity_report(h)
    ratio = ryser_ratio(h)
    payload = {
        "schema": _schema("report"),
        "r": h.r, "m": h.m,
        "linear": rep.is_linear,
        "nonsingleton_pairs": [[list(p), s] for p, s in rep.pairs],
        "ryser_ratio": [ratio.numerator, ratio.denominator],
    }
    lines = [render_degree_table(h), ""]
    lines.append("linear" if rep.is_linear else "non-singleton pairs: "
                 + ", ".join(f"(E{i},E{j})={s}" for (i, j), s in rep.pairs))
    lines.append(f"ryser ratio {ratio}")
    try:
        lemma = check_8edge_lemma(h)
        scheme = classify_degree_scheme(h)
        payload["lemma_8edge"] = {
            "deg3_in_every_part": lemma.deg3_in_every_part,
            "deg3_vertices": [[v.part, v.index] for v in lemma.deg3_vertices],
            "heavy_pair": list(lemma.heavy_pair) if lemma.heavy_pair else None,
            "part_kinds": list(scheme.kinds),
        }
        lines.append(f"8-edge lemma: degree-3 vertex in every part: "
                     f"{lemma.deg3_in_every_part}; heavy pair: "
                     f"{lemma.heavy_pair}; parts: {' '.join(scheme.kinds)}")
    except HypothesisError:
        pass  # verdicts only apply to 6-partite 8-edge tau=4 input
    _emit(payload, "\n".join(lines), args.json)
    return OK


def _cmd_gen(args) -> int:
    if args.kind == "tpp":
        if args.q is None:
            raise SystemExit2("gen tpp requires --q")
        h = truncated_projective_plane(args.q)
    else:
        if args.name is None:
            raise SystemExit2("gen paper requires --name")
        h = paper_instance(args.name)
    _write_instance(h, args.out)
    return OK


def _cmd_pad(args) -> int:
    h = load(args.file)
    _write_instance(pad_to(h, args.to), args.out)
    return OK


def _cmd_canon(args) -> int:
    h = load(args.file)
    _write_instance(canonical_form(h).hypergraph(), args.out)
    return OK


def _cmd_search(args) -> int:
    threads = args.threads if args.threads else (os.cpu_count() or 1)
    if args.checkpoint and os.path.exists(args.checkpoint) and args.resume:
        outcome = resume(args.checkpoint, node_budget=args.node_budget)
    else:
        outcome = search_extremal(
            args.r, args.m, args.tau, cap=args.cap, mode=args.mode,
            prunes=not args.no_prunes, max_instances=args.max_instances,
            threads=threads, checkpoint=args.checkpoint,
            node_budget=args.node_budget)
    for k, h in enumerate(outcome.instances, start=1):
        sys.stdout.write(f"# instance {k}\n")
        sys.stdout.write(render(h))
    summary = outcome.summary()
    summary["schema"] = _schema("search")
    print(json.dumps(summary, sort_keys=True))
    return OK


class SystemExit2(Exception):
    """Usage error detected past argparse."""


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="ryser",
        description="Construct, verify, analyze and exhaustively search "
                    "r-partite intersecting hypergraphs extremal for "
                    "Ryser's conjecture.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify", help="format + intersecting check")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_verify)

    sp = sub.add_parser("tau", help="exact cover number")
    sp.add_argument("file")
    sp.add_argument("--limit", type=int, default=None,
                    help="stop after exhausting covers of this size")
    sp.add_argument("--certificate", action="store_true",
                    help="print a minimum cover")
    sp.add_argument("--threads", type=int, default=0,
                    help="accepted for interface stability; the exact "
                         "solver is single-pass")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_tau)

    sp = sub.add_parser("report", help="degree table, linearity, ratio, "
                                       "lemma verdicts")
    sp.add_argument("file")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(fn=_cmd_report)

    sp = sub.add_parser("gen", help="built-in generators")
    sp.add_argument("kind", choices=["tpp", "paper"])
    sp.add_argument("--q", type=int, default=None,
                    help="plane order for tpp")
    sp.add_argument("--name", choices=["f6", "f7"], default=None,
                    help="built-in instance for paper")
    sp.add_argument("-o", "--out", default=None)
    sp.set_defaults(fn=_cmd_gen)

    sp = sub.add_parser("pad", help="lift an instance to more parts")
    sp.add_argument("file")
    sp.add_argument("--to", type=int, required=True)
    sp.add_argument("-o", "--out", default=None)
    sp.set_defaults(fn=_cmd_pad)

    sp = sub.add_parser("canon", help="canonical representative")
    sp.add_argument("file")
    sp.add_argument("-o", "--out", default=None)
    sp.set_defaults(fn=_cmd_canon)

    sp = sub.add_parser("search", help="exhaustive extremal search")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--tau", type=int, required=True)
    sp.add_argument("--cap", type=int, default=None)
    sp.add_argument("--mode", choices=["first", "all"], default="first")
    sp.add_argument("--threads", type=int, default=0,
                    help="0 = available parallelism")
    sp.add_argument("--checkpoint", default=None)
    sp.add_argument("--resume", action="store_true",
                    help="continue from an existing checkpoint file")
    sp.add_argument("--node-budget", type=int, default=None)
    sp.add_argument("--max-instances", type=int, default=None)
    sp.add_argument("--no-prunes", action="store_true",
                    help="disable pruning rules (validation runs)")
    sp.set_defaults(fn=_cmd_search)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help/--version
        return USAGE if exc.code not in (0, None) else OK
    try:
        return args.fn(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (ConstructionError, SearchError, HypothesisError,
            HypergraphError, SystemExit2) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
