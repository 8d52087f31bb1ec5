#!/usr/bin/env python3
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd
from dotenv import load_dotenv

# Add project root to Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

from backend.core import chartables as ct
from backend.core import towers
from backend.services import analysis, datasets, verification
from backend.services.exceptions import InputError, ParseError, ServiceError
from backend.services.formatting import render_json, render_results, render_text

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

logger = logging.getLogger("critgroup.cli")


def _rep_vector(table: ct.CharacterTable, text: str) -> ct.RepVector:
    """Multiplicities by position ("1,1,0,0,0") or by irreducible name ("sign=1,psi1=1")."""

    if "=" not in text:
        return ct.RepVector.from_string(text).check(table)
    named = {}
    for piece in filter(None, (chunk.strip() for chunk in text.split(","))):
        name, _, count = piece.rpartition("=")
        try:
            named[name.strip()] = int(count)
        except ValueError as exc:
            raise InputError(f"Multiplicity in {piece!r} is not an integer") from exc
    return ct.RepVector.from_named(table, named)


def _abelian_factors(name: str) -> List[int]:
    try:
        return [int(piece.strip().lstrip("Zz")) for piece in name.split("x")]
    except ValueError as exc:
        raise InputError(f"{name!r} is not a built-in abelian table like Z6 or Z2xZ2") from exc


def _images(text: str) -> List[List[int]]:
    try:
        return [[int(v) for v in chunk.split(",")] for chunk in text.split(";") if chunk.strip()]
    except ValueError as exc:
        raise InputError(f"Cannot read generator images {text!r}") from exc


def _fusion(args, group: ct.CharacterTable, subgroup: ct.CharacterTable) -> ct.ClassFusion:
    if args.fusion:
        return datasets.load_fusion(args.fusion, group, subgroup)
    if getattr(args, "images", None):
        return ct.abelian_fusion(_abelian_factors(args.group), _abelian_factors(args.subgroup), _images(args.images))
    raise InputError("Give --fusion FILE or --images for the subgroup embedding")


def cmd_snf(args) -> int:
    _emit(args, analysis.analyse_matrix(datasets.load_matrix(args.matrix)))
    return EXIT_OK


def cmd_graph(args) -> int:
    _emit(args, analysis.analyse_graph(datasets.load_graph(args.graph), args.sink))
    return EXIT_OK


def cmd_rep(args) -> int:
    table = datasets.load_table(args.table or args.builtin)
    V = _rep_vector(table, args.rep)
    subgroup = fusion = None
    if args.restrict_to:
        subgroup = datasets.load_table(args.restrict_to)
        if not args.fusion:
            raise InputError("--restrict-to needs --fusion FILE")
        fusion = datasets.load_fusion(args.fusion, table, subgroup)
    _emit(args, analysis.analyse_representation(table, V, subgroup, fusion))
    return EXIT_OK


def cmd_tower(args) -> int:
    f, word = analysis.tower_operator(args.r, word=args.word, coefficients=args.f)
    _emit(args, analysis.analyse_tower(args.r, args.n, f, word))
    return EXIT_OK


def cmd_cayley(args) -> int:
    group, subgroup = datasets.load_table(args.group), datasets.load_table(args.subgroup)
    V = _rep_vector(group, args.rep)
    _emit(args, analysis.analyse_cayley(group, subgroup, _fusion(args, group, subgroup), V))
    return EXIT_OK


def cmd_conjecture(args) -> int:
    if args.grid:
        frame = verification.conjecture_grid(args.grid[0], args.grid[1])
        records = json.loads(frame.to_json(orient="records"))
        _emit(args, {"cells": records}, frame=frame)
        asserted_failures = frame[(frame["asserted"]) & (~frame["match"])]
        return EXIT_FAILED if len(asserted_failures) else EXIT_OK
    if args.r is None or args.n is None or args.k is None:
        raise InputError("conjecture needs --r, --n and --k, or --grid RMAX NMAX")
    report = towers.check_conjecture(args.r, args.n, args.k)
    _emit(args, report.to_dict())
    return EXIT_FAILED if report.asserted and not report.match else EXIT_OK


def cmd_verify(args) -> int:
    results = verification.run_suite(args.suite, seed=args.seed)
    frame = verification.results_frame(results)
    if args.format == "json":
        print(render_json([r.to_dict() for r in results]))
    else:
        print(render_results(results))
    _write_output(args, [r.to_dict() for r in results], frame)
    return verification.suite_exit_code(results)


def _emit(args, payload, frame: Optional[pd.DataFrame] = None) -> None:
    print(render_json(payload) if args.format == "json" else render_text(payload))
    _write_output(args, payload, frame)


def _write_output(args, payload, frame: Optional[pd.DataFrame] = None) -> None:
    if not args.output:
        return
    outdir = Path(args.output)
    outdir.mkdir(exist_ok=True, parents=True)
    with open(outdir / f"{args.command}.json", "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, ensure_ascii=False, default=str)
    if frame is not None:
        frame.to_csv(outdir / f"{args.command}.csv", index=False)
    logger.info("Saved %s results to %s", args.command, outdir)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Critical groups of graphs, representations and differential towers")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--seed", type=int, default=None, help="seed for randomized checks (default $CRITGROUP_SEED or 0)")
    parser.add_argument("--output", help="directory for JSON/CSV copies of the results")
    sub = parser.add_subparsers(dest="command", required=True)

    snf = sub.add_parser("snf", help="Smith normal form and cokernel of an integer matrix")
    snf.add_argument("matrix", help="matrix JSON file or bundled dataset name")
    snf.set_defaults(handler=cmd_snf)

    graph = sub.add_parser("graph", help="sandpile group and spanning-tree count of a digraph")
    graph.add_argument("graph", help="graph JSON file or bundled dataset name")
    graph.add_argument("--sink")
    graph.set_defaults(handler=cmd_graph)

    rep = sub.add_parser("rep", help="critical group of a representation")
    source = rep.add_mutually_exclusive_group(required=True)
    source.add_argument("--table", help="character table JSON file or bundled table name")
    source.add_argument("--builtin", help="S1..S8, Dn, Zn, Z2xZ2, trivial")
    rep.add_argument("--rep", required=True, help='multiplicities "1,1,0,0,0" or names "sign=1,psi1=1"')
    rep.add_argument("--restrict-to", help="subgroup table for the restriction map")
    rep.add_argument("--fusion", help="class fusion JSON for --restrict-to")
    rep.set_defaults(handler=cmd_rep)

    tower = sub.add_parser("tower", help="critical group of V(f)_n over Y^r")
    tower.add_argument("--r", type=int, required=True)
    tower.add_argument("--n", type=int, required=True)
    operator = tower.add_mutually_exclusive_group(required=True)
    operator.add_argument("--word", help='expression such as "UDUD", "U^2D^2 + 2UD", "(UD)^2"')
    operator.add_argument("--f", help='coefficients of U^iD^i as "i:c_i,...", e.g. "2:1,1:2"')
    tower.set_defaults(handler=cmd_tower)

    cayley = sub.add_parser("cayley", help="Cayley graph covering induced by an abelian subgroup")
    cayley.add_argument("--group", required=True)
    cayley.add_argument("--subgroup", required=True)
    cayley.add_argument("--rep", required=True)
    cayley.add_argument("--fusion")
    cayley.add_argument("--images", help='images of the subgroup generators, e.g. "3" or "1,0;0,1"')
    cayley.set_defaults(handler=cmd_cayley)

    conjecture = sub.add_parser("conjecture", help="smallest-factor prediction for K(V(U^kD^k)_n)")
    conjecture.add_argument("--r", type=int)
    conjecture.add_argument("--n", type=int)
    conjecture.add_argument("--k", type=int)
    conjecture.add_argument("--grid", type=int, nargs=2, metavar=("RMAX", "NMAX"))
    conjecture.set_defaults(handler=cmd_conjecture)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify.add_argument("--suite", choices=list(verification.SUITES), default="paper")
    verify.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    load_dotenv()
    logging.basicConfig(level=os.getenv("CRITGROUP_LOG_LEVEL", "WARNING").upper())
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"Parse error: {exc.message}", file=sys.stderr)
        if exc.context:
            print(exc.context, file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"Input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ServiceError as exc:
        print(f"Internal consistency error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
