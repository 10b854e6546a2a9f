"""Command-line front end: `gcm <subcommand> --group SPEC --m M ...`.

Exit codes: 0 when every check passed, 1 when a checked claim failed, 2 on
usage or input errors.  Group orders and other potentially large integers are
written to JSON as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from . import config
from .acceptance import run_all
from .cliques import max_cliques_through_e, neighbor_graph, predicted_clique_number
from .errors import ExceptionalCase, GcmError, NoConvergence
from .graph import build_graph
from .groups import build_group, groups_isomorphic
from .morphisms import (assemble_full_aut, canonical_aut_order, graphs_isomorphic,
                        predicted_aut_order)
from .spectral import abelian_spectrum, check_regularity, lambda_min_numeric, question26_probe
from .trace import (INFEASIBLE, build_trace_system, check_fixture, express_monomial,
                    load_identity, rational_rank)

FORMATS = ("json", "csv", "dot", "text")


@dataclass
class RunConfig:
    group: str | None
    m: int | None
    fmt: str
    seed: int
    caps: dict[str, int]
    out: str | None


class Usage(Exception):
    """Bad flag combination detected after parsing."""


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("caps must be positive")
    return v


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", help="group spec such as C4, S3, C2xC2, Q8 or table:<path.csv>")
    common.add_argument("--m", type=int, help="number of coordinates (m >= 2)")
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for numeric eigenvalue runs")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--cap-group", type=_positive, default=config.GROUP_CAP)
    common.add_argument("--cap-materialize", type=_positive, default=config.MATERIALIZE_CAP)
    common.add_argument("--cap-exact", type=_positive, default=config.EXACT_CAP)
    common.add_argument("--cap-numeric", type=_positive, default=config.NUMERIC_CAP)
    common.add_argument("--cap-ir", type=_positive, default=config.IR_CAP)

    p = argparse.ArgumentParser(prog="gcm", description="Generic Cayley graphs G_m(G) and their checks.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("build", parents=[common], help="summary, adjacency CSV or DOT of G_m(G)")
    sub.add_parser("spectrum", parents=[common], help="exact spectrum (abelian) or lambda_min")
    sub.add_parser("regularity", parents=[common], help="edge and strong regularity")
    sub.add_parser("cliques", parents=[common], help="maximum cliques through e and their types")
    sub.add_parser("trace-rank", parents=[common], help="rank of the trace matrix B")
    ex = sub.add_parser("express", parents=[common], help="write a monomial through trace elements")
    ex.add_argument("--target", required=True, help="tuple of element names, e.g. (e,e)")
    vi = sub.add_parser("verify-identity", parents=[common], help="check a trace identity fixture")
    vi.add_argument("--fixture", help="JSON fixture; the bundled C3 identity when omitted")
    sub.add_parser("aut", parents=[common], help="automorphism-group order by three routes")
    iso = sub.add_parser("iso", parents=[common], help="compare G_m(G) and G_m(H)")
    iso.add_argument("--other", required=True, help="second group spec")
    sub.add_parser("probe-q26", parents=[common], help="lambda_min against -C(m+1,2)")
    va = sub.add_parser("verify-all", parents=[common], help="run every reproduction check")
    va.add_argument("--keep-going", action="store_true", help="run all checks after a failure")
    return p


def _need(cfg: RunConfig) -> tuple:
    if cfg.group is None or cfg.m is None:
        raise Usage("--group and --m are required")
    G = build_group(cfg.group, cfg.caps["group"])
    return G, build_graph(G, cfg.m, materialize_cap=cfg.caps["materialize"])


def _big(x: int | None) -> str | None:
    return None if x is None else str(x)


# --- subcommands: each returns (payload, passed) -------------------------------------


def cmd_build(cfg: RunConfig, args) -> tuple[Any, bool]:
    _, graph = _need(cfg)
    if cfg.fmt == "csv":
        return graph.to_csv(), True
    if cfg.fmt == "dot":
        return graph.to_dot(), True
    return graph.summary(), True


def cmd_spectrum(cfg: RunConfig, args) -> tuple[Any, bool]:
    G, graph = _need(cfg)
    if G.is_abelian:
        spec = abelian_spectrum(G, cfg.m)
        if cfg.fmt == "csv":
            return spec.to_csv(), True
        ok = spec.size == graph.num_vertices and spec.trace == 0 and spec.lambda_max == graph.degree
        return {"exact": True, "spectrum": [[lam, mult] for lam, mult in spec.pairs]}, ok
    try:
        est = lambda_min_numeric(graph, cfg.caps["numeric"], cfg.seed)
    except NoConvergence as exc:
        return {"exact": False, "error": str(exc)}, False
    if cfg.fmt == "csv":
        return f"{est.rounded},?\n", True
    return {"exact": False, "lambda_min": est.rounded, "bracket": list(est.bracket),
            "iterations": est.iterations}, True


def cmd_regularity(cfg: RunConfig, args) -> tuple[Any, bool]:
    _, graph = _need(cfg)
    rep = check_regularity(graph)
    return rep.to_dict(), rep.ok


def cmd_cliques(cfg: RunConfig, args) -> tuple[Any, bool]:
    _, graph = _need(cfg)
    recs = max_cliques_through_e(graph, cfg.caps["materialize"])
    cliques = [r.to_dict(graph, neighbor_graph(graph, r).degree_histogram()) for r in recs]
    size = len(recs[0])
    want = predicted_clique_number(graph.m, graph.n)
    ok = size == want and all(r.type.kind != "MixedInvalid" for r in recs)
    return {"clique_number": size, "predicted": want, "count": len(recs), "cliques": cliques}, ok


def cmd_trace_rank(cfg: RunConfig, args) -> tuple[Any, bool]:
    G, _ = _need(cfg)
    system = build_trace_system(G, cfg.m, cfg.caps["exact"])
    r = rational_rank(system)
    return {"rows": len(system), "columns": system.num_columns, "rank": r,
            "full": r == system.num_columns}, True


def cmd_express(cfg: RunConfig, args) -> tuple[Any, bool]:
    G, graph = _need(cfg)
    system = build_trace_system(G, cfg.m, cfg.caps["exact"])
    target = graph.decode(graph.parse_vertex(args.target))
    res = express_monomial(system, target)
    if res is INFEASIBLE:
        return {"target": args.target, "feasible": False}, True
    terms = [{"coeff": str(c), "row": system.describe(row)} for c, row in res]
    return {"target": args.target, "feasible": True, "terms": terms}, True


def cmd_verify_identity(cfg: RunConfig, args) -> tuple[Any, bool]:
    fx = load_identity(args.fixture)
    ok = check_fixture(fx)
    return {"group": fx.group.label, "m": fx.m, "terms": len(fx.terms), "verified": ok}, ok


def cmd_aut(cfg: RunConfig, args) -> tuple[Any, bool]:
    G, graph = _need(cfg)
    pred = predicted_aut_order(G, cfg.m)
    out: dict[str, Any] = {"predicted": _big(pred.order), "exceptional": pred.exceptional}
    values = [pred.order] if pred.order is not None else []
    try:
        gen = assemble_full_aut(G, cfg.m, graph).order()
        out["generated"] = _big(gen)
        values.append(gen)
    except ExceptionalCase:
        out["generated"] = None
    if graph.num_vertices <= cfg.caps["ir"]:
        canon = canonical_aut_order(graph, cfg.caps["ir"])
        out["canonical"] = _big(canon)
        values.append(canon)
    else:
        out["canonical"] = None
    out["match"] = len(set(values)) == 1
    return out, out["match"]


def cmd_iso(cfg: RunConfig, args) -> tuple[Any, bool]:
    G, ga = _need(cfg)
    H = build_group(args.other, cfg.caps["group"])
    gb = build_graph(H, cfg.m, materialize_cap=cfg.caps["materialize"])
    graphs = graphs_isomorphic(ga, gb, cfg.caps["ir"]) if ga.num_vertices == gb.num_vertices else False
    groups = groups_isomorphic(G, H, cfg.caps["group"]) is not None
    return {"graphs_isomorphic": graphs, "groups_isomorphic": groups, "match": graphs == groups}, graphs == groups


def cmd_probe(cfg: RunConfig, args) -> tuple[Any, bool]:
    if cfg.group is None or cfg.m is None:
        raise Usage("--group and --m are required")
    G = build_group(cfg.group, cfg.caps["group"])
    res = question26_probe(G, cfg.m, cfg.caps["numeric"], cfg.seed)
    return res.to_dict(), res.verdict.value != "Below"


def cmd_verify_all(cfg: RunConfig, args) -> tuple[Any, bool]:
    results = run_all(fail_fast=not args.keep_going)
    ok = all(r.passed for r in results)
    if cfg.fmt == "text":
        return "".join(r.line() + "\n" for r in results), ok
    return [{"check": r.number, "claim": r.claim, "passed": r.passed,
             "detail": _jsonable(r.detail)} for r in results], ok


COMMANDS = {
    "build": cmd_build, "spectrum": cmd_spectrum, "regularity": cmd_regularity,
    "cliques": cmd_cliques, "trace-rank": cmd_trace_rank, "express": cmd_express,
    "verify-identity": cmd_verify_identity, "aut": cmd_aut, "iso": cmd_iso,
    "probe-q26": cmd_probe, "verify-all": cmd_verify_all,
}


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= 2**53 else x
    if isinstance(x, float):
        return x if x == x and abs(x) != float("inf") else str(x)
    if hasattr(x, "item"):
        return _jsonable(x.item())
    return str(x)


def _render(payload: Any, fmt: str) -> str:
    if isinstance(payload, str):
        return payload
    if fmt == "text":
        if isinstance(payload, dict):
            return "".join(f"{k}: {json.dumps(_jsonable(v), ensure_ascii=False)}\n" for k, v in payload.items())
    return json.dumps(_jsonable(payload), indent=2, ensure_ascii=False) + "\n"


def run(argv: list[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(args.group, args.m, args.fmt, args.seed,
                    {"group": args.cap_group, "materialize": args.cap_materialize, "exact": args.cap_exact,
                     "numeric": args.cap_numeric, "ir": args.cap_ir}, args.out)
    try:
        payload, ok = COMMANDS[args.command](cfg, args)
    except Usage as exc:
        print(f"gcm: {exc}", file=sys.stderr)
        return 2
    except (GcmError, OSError) as exc:
        print(f"gcm: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = _render(payload, cfg.fmt)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        stdout.write(text)
    if not ok:
        print(f"gcm: check failed in {args.command}", file=sys.stderr)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
