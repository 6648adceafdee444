"""Command line interface.

Exit codes: 0 verified pass, 1 verified fail, 2 indeterminate or
vacuous verdict, 3 usage error, 4 input/output error.  Identical
configuration (flags plus LAGRANGIA_SEED) produces byte-identical
structured output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field

from ._version import VERSION
from .core import (
    EdgeListFormatError,
    Hypergraph,
    as_edge,
    colex_graph,
    colex_rank,
    colex_unrank,
    complete_graph,
    format_edge_list,
    load_edge_list,
)
from .lagrangian import OptOptions, certify, lagrangian
from .structure import clique_number, compress, enumerate_left_compressed, maximum_cliques
from .theorems import (
    DEFAULT_VERIFY,
    VerifyOptions,
    bp_check,
    lemma_tal9_audit,
    lemmaeq_dichotomy_audit,
    proposition_k4_check,
    theorem43_check,
    verify_colex_plateau,
    verify_corollary,
    verify_pz18,
    verify_theorem1,
    verify_theorem2,
    witness_report,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INDETERMINATE = 2
EXIT_USAGE = 3
EXIT_IO = 4

_VERDICT_EXIT = {
    "pass": EXIT_PASS,
    "fail": EXIT_FAIL,
    "indeterminate": EXIT_INDETERMINATE,
    "vacuous": EXIT_INDETERMINATE,
}


class CliUsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags, which collides with the
    # indeterminate verdict; surface usage problems as exceptions instead.
    def error(self, message):
        raise CliUsageError(message)


@dataclass(frozen=True)
class RunConfig:
    """One fully resolved invocation."""

    command: str
    params: dict
    fmt: str = "text"
    output: str | None = None
    count_only: bool = False
    verify: VerifyOptions = DEFAULT_VERIFY

    def __post_init__(self):
        if self.verify.tol <= 0 or self.verify.margin <= 0:
            raise CliUsageError("tolerances must be positive")
        if self.verify.parallelism < 1:
            raise CliUsageError("parallelism must be at least 1")


_VERIFIERS = {
    "colex-plateau": lambda a, o: verify_colex_plateau(a["t"], o),
    "theorem1": lambda a, o: verify_theorem1(a["t"], o),
    "pz18": lambda a, o: verify_pz18(a["t"], o),
    "tal9": lambda a, o: lemma_tal9_audit(a["t"], o),
    "theorem2": lambda a, o: verify_theorem2(a["t"], o),
    "corollary": lambda a, o: verify_corollary(a["t"], o),
    "k4": lambda a, o: proposition_k4_check(a["t"], o),
    "bp": lambda a, o: bp_check(a["t"], a["p"], o),
    "theorem43": lambda a, o: theorem43_check(a["t"], a["a"], o),
    "lemmaeq": lambda a, o: lemmaeq_dichotomy_audit(a["t"], o),
    "witness": lambda a, o: witness_report(a["r"], a["t"], o),
}


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-7)
    common.add_argument("--margin", type=float, default=1e-6)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--random-starts", type=int, default=8)
    common.add_argument("--max-iters", type=int, default=20000)
    common.add_argument("--parallelism", type=int, default=os.cpu_count() or 1)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--output", metavar="PATH", default=None)

    parser = _Parser(prog="lagrangia", description=__doc__)
    parser.add_argument("--version", action="version", version=f"lagrangia {VERSION}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_input(p):
        p.add_argument("file", nargs="?", default=None, help="edge list file")
        p.add_argument("--colex", nargs=2, type=int, metavar=("R", "M"))
        p.add_argument("--complete", nargs=2, type=int, metavar=("T", "R"))

    p = sub.add_parser("lagrangian", parents=[common])
    graph_input(p)

    p = sub.add_parser("clique", parents=[common])
    graph_input(p)

    p = sub.add_parser("compress", parents=[common])
    graph_input(p)

    # common flags live on the leaves so they can follow the subcommand
    p = sub.add_parser("colex")
    colex_sub = p.add_subparsers(dest="colex_command", required=True, parser_class=_Parser)
    pr = colex_sub.add_parser("rank", parents=[common])
    pr.add_argument("vertices", nargs="+", type=int)
    pu = colex_sub.add_parser("unrank", parents=[common])
    pu.add_argument("r", type=int)
    pu.add_argument("k", type=int)
    pg = colex_sub.add_parser("generate", parents=[common])
    pg.add_argument("r", type=int)
    pg.add_argument("m", type=int)

    p = sub.add_parser("enumerate", parents=[common])
    p.add_argument("t", type=int)
    p.add_argument("r", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("theorem_id", choices=sorted(_VERIFIERS))
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--r", type=int, default=3)

    return parser


def _env_seed() -> int | None:
    raw = os.environ.get("LAGRANGIA_SEED")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise CliUsageError(f"LAGRANGIA_SEED must be an integer, got {raw!r}")


def parse_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    seed = _env_seed()
    if seed is None:
        seed = ns.seed
    opt = OptOptions(
        max_iters=ns.max_iters,
        random_starts=ns.random_starts,
        seed=seed,
    )
    verify = VerifyOptions(
        tol=ns.tol,
        margin=ns.margin,
        seed=seed,
        parallelism=ns.parallelism,
        opt=opt,
    )
    params = {
        k: v
        for k, v in vars(ns).items()
        if k
        not in {
            "tol",
            "margin",
            "seed",
            "random_starts",
            "max_iters",
            "parallelism",
            "format",
            "output",
            "command",
            "count_only",
        }
    }
    if ns.command == "verify" and ns.format == "csv":
        pass  # violation tables are the one CSV surface
    elif ns.format == "csv":
        raise CliUsageError("--format csv is only available for verify")
    return RunConfig(
        command=ns.command,
        params=params,
        fmt=ns.format,
        output=ns.output,
        count_only=getattr(ns, "count_only", False),
        verify=verify,
    )


def _meta(config: RunConfig) -> dict:
    return {
        "version": VERSION,
        "command": config.command,
        "seed": config.verify.seed,
        "tolerances": {"tol": config.verify.tol, "margin": config.verify.margin},
    }


def _emit(config: RunConfig, text: str) -> None:
    if config.output is None:
        sys.stdout.write(text)
    else:
        with open(config.output, "w") as fh:
            fh.write(text)


def _json_dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def _input_graph(config: RunConfig) -> tuple[Hypergraph, str]:
    params = config.params
    sources = [
        params.get("file") is not None,
        params.get("colex") is not None,
        params.get("complete") is not None,
    ]
    if sum(sources) != 1:
        raise CliUsageError("provide exactly one of FILE, --colex R M, --complete T R")
    if params.get("file") is not None:
        return load_edge_list(params["file"]), params["file"]
    if params.get("colex") is not None:
        r, m = params["colex"]
        return colex_graph(r, m), f"colex r={r} m={m}"
    t, r = params["complete"]
    return complete_graph(t, r), f"complete t={t} r={r}"


def _cmd_lagrangian(config: RunConfig) -> int:
    g, desc = _input_graph(config)
    res = lagrangian(g, config.verify.opt)
    cert = certify(g, res)
    if config.fmt == "json":
        rec = _meta(config)
        rec.update(
            {
                "input": desc,
                "search_space": "single graph",
                "graph": {"r": g.r, "n": g.n, "m": g.m},
                "result": res.to_record(),
                "certificate": cert.to_record(),
            }
        )
        _emit(config, _json_dump(rec))
    else:
        lines = [
            f"graph: {desc} (r={g.r} n={g.n} m={g.m})",
            f"value: {res.value!r}",
            f"method: {res.method}",
            f"iterations: {res.iterations}",
            f"support: {' '.join(map(str, res.support)) or '-'}",
            f"kkt_residual: {res.kkt_residual!r}",
            f"certificate_ok: {cert.ok}",
            "weights: " + " ".join(repr(float(w)) for w in res.weighting),
        ]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_PASS


def _cmd_clique(config: RunConfig) -> int:
    g, desc = _input_graph(config)
    omega = clique_number(g)
    cliques = maximum_cliques(g)
    if config.fmt == "json":
        rec = _meta(config)
        rec.update(
            {
                "input": desc,
                "graph": {"r": g.r, "n": g.n, "m": g.m},
                "clique_number": omega,
                "maximum_cliques": [list(c) for c in cliques],
            }
        )
        _emit(config, _json_dump(rec))
    else:
        lines = [f"clique_number: {omega}"]
        lines += ["  " + " ".join(map(str, c)) for c in cliques]
        _emit(config, "\n".join(lines) + "\n")
    return EXIT_PASS


def _cmd_compress(config: RunConfig) -> int:
    g, desc = _input_graph(config)
    out, trace = compress(g)
    if config.fmt == "json":
        rec = _meta(config)
        rec.update(
            {
                "input": desc,
                "fixed_point": trace.fixed_point,
                "steps": [[list(a), list(b)] for a, b in trace.steps],
                "graph": {"r": out.r, "n": out.n, "m": out.m},
                "edges": [list(e) for e in out.edge_list()],
            }
        )
        _emit(config, _json_dump(rec))
    else:
        head = (
            "# already left-compressed\n"
            if trace.fixed_point
            else f"# compression steps: {len(trace.steps)}\n"
        )
        _emit(config, head + format_edge_list(out))
    return EXIT_PASS


def _cmd_colex(config: RunConfig) -> int:
    params = config.params
    sub = params["colex_command"]
    if sub == "rank":
        edge = as_edge(params["vertices"])
        rank = colex_rank(edge)
        if config.fmt == "json":
            rec = _meta(config)
            rec.update({"edge": list(edge), "rank": rank})
            _emit(config, _json_dump(rec))
        else:
            _emit(config, f"{rank}\n")
    elif sub == "unrank":
        edge = colex_unrank(params["r"], params["k"])
        if config.fmt == "json":
            rec = _meta(config)
            rec.update({"edge": list(edge), "rank": params["k"]})
            _emit(config, _json_dump(rec))
        else:
            _emit(config, " ".join(map(str, edge)) + "\n")
    else:
        g = colex_graph(params["r"], params["m"])
        if config.fmt == "json":
            rec = _meta(config)
            rec.update(
                {
                    "graph": {"r": g.r, "n": g.n, "m": g.m},
                    "edges": [list(e) for e in g.edge_list()],
                }
            )
            _emit(config, _json_dump(rec))
        else:
            _emit(config, format_edge_list(g))
    return EXIT_PASS


def _cmd_enumerate(config: RunConfig) -> int:
    params = config.params
    t, r, m = params["t"], params["r"], params["m"]
    if t > config.verify.max_ground:
        raise CliUsageError(
            f"ground set [{t}] exceeds the enumeration guard"
            f" (max_ground={config.verify.max_ground})"
        )
    graphs = list(enumerate_left_compressed(t, r, m))
    if config.fmt == "json":
        rec = _meta(config)
        rec.update({"t": t, "r": r, "m": m, "count": len(graphs)})
        if not config.count_only:
            rec["graphs"] = [[list(e) for e in g.edge_list()] for g in graphs]
        _emit(config, _json_dump(rec))
    elif config.count_only:
        _emit(config, f"{len(graphs)}\n")
    else:
        _emit(config, "\n".join(format_edge_list(g) for g in graphs))
    return EXIT_PASS


def _csv_cell(value) -> str:
    if isinstance(value, list):
        if value and isinstance(value[0], list):
            return ";".join(" ".join(map(str, item)) for item in value)
        return ";".join(map(str, value))
    return str(value)


def _violations_csv(report) -> str:
    rows = [dict(v) for v in report.violations]
    cols = sorted({key for row in rows for key in row})
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["theorem_id", "verdict", "index"] + cols)
    for i, row in enumerate(rows):
        writer.writerow(
            [report.theorem_id, report.verdict, i]
            + [_csv_cell(row.get(c, "")) for c in cols]
        )
    return buf.getvalue()


def _cmd_verify(config: RunConfig) -> int:
    params = config.params
    theorem_id = params["theorem_id"]
    if theorem_id == "theorem43" and params.get("a") is None:
        raise CliUsageError("verify theorem43 requires --a")
    try:
        report = _VERIFIERS[theorem_id](params, config.verify)
    except ValueError as exc:
        raise CliUsageError(str(exc))
    if config.fmt == "json":
        _emit(config, report.to_json())
    elif config.fmt == "csv":
        _emit(config, _violations_csv(report))
    else:
        _emit(config, report.to_text())
    return _VERDICT_EXIT[report.verdict]


_COMMANDS = {
    "lagrangian": _cmd_lagrangian,
    "clique": _cmd_clique,
    "compress": _cmd_compress,
    "colex": _cmd_colex,
    "enumerate": _cmd_enumerate,
    "verify": _cmd_verify,
}


def run(config: RunConfig) -> int:
    """Dispatch one resolved configuration; returns the exit status."""
    return _COMMANDS[config.command](config)


def main(argv=None) -> int:
    try:
        config = parse_args(argv)
    except CliUsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return run(config)
    except CliUsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EdgeListFormatError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
