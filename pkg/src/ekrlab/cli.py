"""Command-line front end.

Exit codes: 0 verified, 1 mathematical violation or counterexample,
2 usage or input error, 3 resource cap reached before a verdict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass

from .compression import DecompositionError, PreconditionError, decompose, decomposition_to_json, \
    star_components, verify_partition_lemma
from .families import FamilyError, enumerate_independent, family_from_json
from .graph import EdgeRef, GraphError, parse_spec
from .solver import (DEFAULT_FAMILY_CAP, DEFAULT_NODE_BUDGET, SWEEP_CLASSES, EkrReport, counterexample_certificate,
                     ekr_verdict, theorem_sweep)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

log = logging.getLogger("ekrlab")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    graph: str | None = None
    r: int | None = None
    edge: EdgeRef | None = None
    x: int | None = None
    family: str | None = None
    out: str | None = None
    node_budget: int = DEFAULT_NODE_BUDGET
    family_cap: int = DEFAULT_FAMILY_CAP
    seed: int = 0
    workers: int = 1
    format: str = "text"

    def __post_init__(self):
        if self.node_budget < 1 or self.family_cap < 1:
            raise UsageError("caps must be positive")
        if self.workers < 1:
            raise UsageError("--workers must be at least 1")
        if self.r is not None and self.r < 1:
            raise UsageError("--r must be at least 1")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _edge(text: str) -> EdgeRef:
    try:
        return EdgeRef.parse(text)
    except GraphError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _fmt_bool(value) -> str:
    return "?" if value is None else str(bool(value)).lower()


# ---------------------------------------------------------------- verify

def _report_text(rep: EkrReport) -> str:
    lines = [
        f"graph            {rep.spec}",
        f"r                {rep.r}",
        f"largest star     {rep.max_star_size} at {list(rep.star_argmax)}",
        f"max intersecting {'?' if rep.max_intersecting_size is None else rep.max_intersecting_size}",
        f"r-EKR            {_fmt_bool(rep.is_ekr)}",
        f"strictness       {rep.is_strict}",
    ]
    if rep.non_star_witness is not None:
        lines.append(f"non-star family  {[list(s) for s in rep.non_star_witness]}")
    lines.append(f"search nodes     {rep.stats.get('nodes', 0)} + {rep.stats.get('strict_nodes', 0)}")
    return "\n".join(lines) + "\n"


CSV_COLUMNS = ("spec", "r", "star", "max", "ekr", "strict", "nodes", "ms")


def _csv_row(rep: EkrReport) -> list:
    nodes = rep.stats.get("nodes", 0) + rep.stats.get("strict_nodes", 0)
    return [rep.spec, rep.r, rep.max_star_size,
            "" if rep.max_intersecting_size is None else rep.max_intersecting_size,
            _fmt_bool(rep.is_ekr), rep.is_strict, nodes, f"{rep.elapsed_ms:.1f}"]


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_verify(cfg: RunConfig) -> int:
    g = parse_spec(cfg.graph)
    rep = ekr_verdict(g, cfg.r, node_budget=cfg.node_budget, family_cap=cfg.family_cap)
    if cfg.format == "json":
        _emit(_dumps(rep.to_json()), cfg.out)
    elif cfg.format == "csv":
        _emit(_csv([_csv_row(rep)]), cfg.out)
    else:
        _emit(_report_text(rep), cfg.out)
    if rep.is_ekr is None:
        return EXIT_CAP
    return EXIT_OK if rep.is_ekr else EXIT_VIOLATION


# ------------------------------------------------------------- decompose

def _read_family(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read family file: {exc}") from None
    return family_from_json(text)


def cmd_decompose(cfg: RunConfig) -> int:
    if cfg.edge is None:
        raise UsageError("decompose needs --edge v,w")
    if cfg.family is None and cfg.x is None:
        raise UsageError("decompose needs --family, --x, or both")
    g = parse_spec(cfg.graph)
    payload: dict = {}
    ok = True
    text = []
    if cfg.family is not None:
        fam = _read_family(cfg.family)
        d = decompose(g, cfg.edge, fam)
        rep = verify_partition_lemma(d)
        ok &= rep.ok
        payload["decomposition"] = decomposition_to_json(d, rep)
        text.append(f"|A| = {len(d.A)} = {len(d.B)} + {len(d.C)} + {len(d.D)} + {len(d.E)}  (B + C + D + E)")
        for c in rep.checks:
            mark = "pass" if c.passed else f"FAIL witness={c.witness}"
            text.append(f"  ({c.name}) {c.description}: {mark}")
    if cfg.x is not None:
        r = cfg.r
        if r is None:
            if cfg.family is None:
                raise UsageError("--x needs --r (or a family to take the arity from)")
            r = payload["decomposition"]["A"]["r"]
        sc = star_components(g, cfg.edge, cfg.x, r)
        ok &= sc.holds
        payload["star_components"] = sc.to_json()
        text.append(f"star identity at x={cfg.x}, r={r}: {sc.equation()}  "
                    f"(G = G/e + G-down-e + D_x + E_x): {'holds' if sc.holds else 'FAILS'}")
    if cfg.format == "json":
        _emit(_dumps(payload), cfg.out)
    else:
        _emit("\n".join(text) + "\n", cfg.out)
    return EXIT_OK if ok else EXIT_VIOLATION


# ----------------------------------------------------------------- sweep

def _sweep_text(result) -> str:
    header = ("spec", "r", "star", "max", "ekr", "strict", "nodes", "ms", "status")
    rows = []
    for row in result.rows:
        rep = row.report
        cells = _csv_row(rep) if rep is not None else [row.point.spec, row.point.r, "", "", "?", "", "", ""]
        rows.append([str(c) for c in cells] + [row.status])
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows]
    failures = result.failures
    lines.append(f"{len(result.rows)} points, {len(failures)} failing, "
                 f"{sum(r.status == 'skipped' for r in result.rows)} skipped")
    for row in failures:
        lines.append(f"FAIL {row.point.spec} r={row.point.r}: {'; '.join(row.problems)}")
    return "\n".join(lines) + "\n"


def cmd_sweep(cfg: RunConfig, cls: str, n_max: int, k_max: int, n_min: int, certificate: str) -> int:
    result = theorem_sweep(cls, n_max, k_max=k_max, r=cfg.r, n_min=n_min, node_budget=cfg.node_budget,
                           workers=cfg.workers)
    if cfg.format == "json":
        _emit(_dumps(result.to_json()), cfg.out)
    elif cfg.format == "csv":
        _emit(_csv([_csv_row(row.report) for row in result.rows if row.report is not None]), cfg.out)
    else:
        _emit(_sweep_text(result), cfg.out)
    if result.failures:
        with open(certificate, "w", encoding="utf-8") as fh:
            fh.write(_dumps(counterexample_certificate(result.failures[0])))
        log.error("counterexample written to %s", certificate)
        return EXIT_VIOLATION
    if any(row.status == "skipped" for row in result.rows):
        return EXIT_CAP
    return EXIT_OK


def cmd_enumerate(cfg: RunConfig) -> int:
    fam = enumerate_independent(parse_spec(cfg.graph), cfg.r)
    _emit(json.dumps(fam.to_json()) + "\n", cfg.out)
    return EXIT_OK


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--node-budget", type=_positive_int, default=DEFAULT_NODE_BUDGET)
    common.add_argument("--family-cap", type=_positive_int, default=DEFAULT_FAMILY_CAP)
    common.add_argument("--workers", type=_positive_int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="ekrlab", description="Exact EKR checks for small graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="decide r-EKR and strict r-EKR for one graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=_positive_int, required=True)

    p = sub.add_parser("decompose", parents=[common], help="contraction decomposition and star identity")
    p.add_argument("--graph", required=True)
    p.add_argument("--edge", type=_edge, required=True, help="v,w (w is absorbed into v)")
    p.add_argument("--family", help="Family JSON file ('-' for stdin)")
    p.add_argument("--x", type=_positive_int, help="vertex for the star identity")
    p.add_argument("--r", type=_positive_int)

    p = sub.add_parser("sweep", parents=[common], help="verify a theorem class over a parameter range")
    p.add_argument("--class", dest="cls", choices=SWEEP_CLASSES, required=True)
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--n-min", type=_positive_int, default=1)
    p.add_argument("--k-max", type=_positive_int, default=3)
    p.add_argument("--r", type=_positive_int, help="restrict to one r (mixed class: defaults to 2)")
    p.add_argument("--certificate", default="ekr-counterexample.json",
                   help="where a counterexample certificate is written on failure")

    p = sub.add_parser("enumerate", parents=[common], help="dump the independent r-sets as Family JSON")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=_positive_int, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="ekrlab: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(args.command, graph=getattr(args, "graph", None), r=getattr(args, "r", None),
                        edge=getattr(args, "edge", None), x=getattr(args, "x", None),
                        family=getattr(args, "family", None), out=args.out, node_budget=args.node_budget,
                        family_cap=args.family_cap, seed=args.seed, workers=args.workers, format=args.format)
        log.debug("seed %d", cfg.seed)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "decompose":
            return cmd_decompose(cfg)
        if args.command == "sweep":
            return cmd_sweep(cfg, args.cls, args.n_max, args.k_max, args.n_min, args.certificate)
        return cmd_enumerate(cfg)
    except (UsageError, GraphError, FamilyError, DecompositionError, PreconditionError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
