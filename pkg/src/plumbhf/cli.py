"""Command-line front end.

Exit status 0 on success, 1 for input or validation errors, 2 when a step
budget runs out or a value overflows 64 bits.

Examples::

    plumb-hf mazur 2 | plumb-hf hf --d0 --format json
    plumb-hf brieskorn 2 3 7 --seifert
    plumb-hf rank-check
    plumb-hf batch manifest.json
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import io
from .engine import DEFAULT_STEP_BUDGET, compute_tau
from .errors import ArithmeticOverflowError, NonTerminationError, PlumbingError
from .families import (
    BrieskornTriple,
    CassonHarerFamily,
    Family,
    brieskorn_graph,
    mazur_graph,
    mazur_rank,
    rank_casson_harer,
    seifert_invariants,
    tau_casson_harer_sequence,
)
from .graph import PlumbingGraph, validate
from .engine import reduce_tau
from .root import Grading, build_root, casson_check, hf_from_root, render_text, to_dot

SCHEMA = "plumb-hf/1"
COMMANDS = ("tau", "hf", "root", "validate", "brieskorn", "mazur", "rank-check")
ELIDE_AFTER = 10**4

DEFAULT_MAZUR_GRID = tuple(range(1, 8))
DEFAULT_CH_GRID = (
    (1, 3, 1, 1), (1, 5, 1, 1), (1, 5, 1, -1), (1, 7, 1, 1), (1, 7, 1, -1),
    (2, 2, 3, None), (2, 2, 5, None), (2, 4, 1, None), (2, 4, 3, None),
)


@dataclass
class RunConfig:
    """One unit of work. ``source`` is a graph path ("-" for stdin), or
    inline ``{"mazur": n}``, ``{"brieskorn": [p, q, r]}`` or ``{"graph": {...}}``."""

    command: str
    source: object = "-"
    grading: str = "d0"
    d: Optional[int] = None
    output_format: str = "text"
    step_budget: int = DEFAULT_STEP_BUDGET
    v0: Optional[int] = None
    seifert: bool = False
    check_rationality: bool = False
    expected_lambda: Optional[int] = None
    mazur: tuple[int, ...] = ()
    casson_harer: tuple[tuple, ...] = ()
    params: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise PlumbingError(f"unknown command {self.command!r}")
        if self.output_format not in ("text", "json", "dot"):
            raise PlumbingError(f"unknown format {self.output_format!r}")
        if self.output_format == "dot" and self.command not in ("root", "mazur", "brieskorn"):
            raise PlumbingError("dot output is only available for graded roots and graphs")
        if self.grading not in ("d0", "user", "relative"):
            raise PlumbingError(f"unknown grading {self.grading!r}")

    def grading_mode(self) -> Grading:
        if self.grading == "user":
            return Grading.user(self.d)
        return Grading.relative() if self.grading == "relative" else Grading.d0()


def _read_stdin() -> str:
    return sys.stdin.read()


def resolve_graph(source) -> PlumbingGraph:
    if isinstance(source, dict):
        if "mazur" in source:
            return mazur_graph(int(source["mazur"]))
        if "brieskorn" in source:
            return brieskorn_graph(BrieskornTriple(*source["brieskorn"]))
        if "graph" in source:
            return io.parse_json(json.dumps(source["graph"]))
        raise PlumbingError(f"unrecognised inline input {source!r}")
    if source in (None, "-"):
        return io.parse_graph(_read_stdin())
    return io.load_graph(source)


def _v0_index(graph: PlumbingGraph, label: Optional[int]) -> Optional[int]:
    if label is None:
        return None
    try:
        return graph.labels.index(label)
    except ValueError:
        raise PlumbingError(f"--v0 {label} is not a vertex id of the graph") from None


def _summary(graph: PlumbingGraph) -> dict:
    return {"vertices": len(graph), "edges": len(graph.edges), "weights": list(graph.weights),
            "labels": list(graph.labels)}


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _fmt_seq(seq: Sequence[int]) -> str:
    if len(seq) > ELIDE_AFTER:
        head = ", ".join(map(str, seq[:20]))
        return f"[{head}, ... ({len(seq) - 20} more entries; use --format json)]"
    return "[" + ", ".join(map(str, seq)) + "]"


def _pipeline(config: RunConfig) -> dict:
    graph = resolve_graph(config.source)
    tau = compute_tau(graph, _v0_index(graph, config.v0), step_budget=config.step_budget)
    doc = {
        "schema": SCHEMA,
        "graph_summary": {**_summary(graph), "v0": graph.labels[tau.v0]},
        "validation": validate(graph).as_dict(),
        "tau_full": list(tau.full),
        "tau_reduced": list(tau.reduced),
    }
    if config.command == "tau":
        return doc
    root = build_root(tau.reduced)
    module = hf_from_root(root, config.grading_mode())
    doc["hf"] = module.as_dict()
    doc["rank_red"] = module.rank_red
    doc["casson"] = None
    if module.grading.is_absolute and module.tower_bottom == 0:
        doc["casson"] = casson_check(module, config.expected_lambda).as_dict()
    doc["_module"] = module
    doc["_root"] = root
    return doc


def _rank_rows(config: RunConfig) -> list[dict]:
    mazur = config.mazur
    grid = config.casson_harer
    if not mazur and not grid:
        mazur, grid = DEFAULT_MAZUR_GRID, DEFAULT_CH_GRID
    rows = []
    for n in mazur:
        module = hf_from_root(build_root(compute_tau(mazur_graph(n), step_budget=config.step_budget).reduced))
        rows.append({"manifold": f"G_{n}", "closed_form_rank": mazur_rank(n),
                     "pipeline_rank": module.rank_red, "tau_match": None,
                     "match": mazur_rank(n) == module.rank_red})
    for entry in grid:
        family, p, s, *rest = entry
        fam = CassonHarerFamily(Family(family), p, s, rest[0] if rest else None)
        triple = fam.triple()
        tau = compute_tau(brieskorn_graph(triple), step_budget=config.step_budget)
        module = hf_from_root(build_root(tau.reduced))
        closed = rank_casson_harer(fam)
        tau_match = reduce_tau(tau_casson_harer_sequence(fam)) == list(tau.reduced)
        rows.append({"manifold": "Sigma({}, {}, {})".format(*fam.exponents()),
                     "family": family, "p": p, "s": s, "sign": fam.sign,
                     "closed_form_rank": closed, "pipeline_rank": module.rank_red,
                     "tau_match": tau_match, "match": closed == module.rank_red and tau_match})
    return rows


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one command. Returns (exit status, emitted document)."""
    fmt = config.output_format
    cmd = config.command
    if cmd == "mazur":
        if len(config.params) != 1:
            raise PlumbingError("mazur takes one argument n")
        graph = mazur_graph(config.params[0])
        return 0, _emit_graph(graph, fmt)
    if cmd == "brieskorn":
        if len(config.params) != 3:
            raise PlumbingError("brieskorn takes three exponents p q r")
        triple = BrieskornTriple(*config.params)
        if config.seifert:
            inv = seifert_invariants(triple)
            if fmt == "json":
                return 0, _dump({"schema": SCHEMA, "triple": list(triple), "e0": inv.e0,
                                 "pairs": [list(pr) for pr in inv.pairs]})
            pairs = ", ".join(f"({a},{b})" for a, b in inv.pairs)
            return 0, f"e0={inv.e0} pairs {pairs}\n"
        return 0, _emit_graph(brieskorn_graph(triple), fmt)
    if cmd == "validate":
        graph = resolve_graph(config.source)
        report = validate(graph, check_rationality=config.check_rationality)
        status = 0 if report.ok else 1
        if fmt == "json":
            data = {"schema": SCHEMA, "graph_summary": _summary(graph), "validation": report.as_dict(),
                    "problems": report.problems}
            return status, _dump(data)
        lines = [f"{k}: {v}" for k, v in report.as_dict().items()]
        lines += [f"problem: {p}" for p in report.problems]
        return status, "\n".join(lines) + "\n"
    if cmd == "rank-check":
        rows = _rank_rows(config)
        status = 0 if all(r["match"] for r in rows) else 1
        if fmt == "json":
            return status, _dump({"schema": SCHEMA, "rows": rows})
        lines = [f"{'manifold':<22}{'closed':>8}{'pipeline':>10}{'tau':>7}  ok"]
        for r in rows:
            tau = "-" if r["tau_match"] is None else ("yes" if r["tau_match"] else "no")
            lines.append(f"{r['manifold']:<22}{r['closed_form_rank']:>8}{r['pipeline_rank']:>10}{tau:>7}  "
                         f"{'PASS' if r['match'] else 'FAIL'}")
        return status, "\n".join(lines) + "\n"

    doc = _pipeline(config)
    module = doc.pop("_module", None)
    root = doc.pop("_root", None)
    if cmd == "root":
        if root is None:
            root = build_root(doc["tau_reduced"])
        if fmt == "dot":
            return 0, to_dot(root)
        if fmt == "json":
            return 0, _dump({"schema": SCHEMA, "tau_reduced": doc["tau_reduced"],
                             "leaves": list(root.leaves),
                             "merges": [asdict(m) for m in root.merges]})
        return 0, render_text(root)
    if fmt == "json":
        return 0, _dump(doc)
    lines = [f"tau_full: {_fmt_seq(doc['tau_full'])}", f"tau_reduced: {_fmt_seq(doc['tau_reduced'])}"]
    if cmd == "hf":
        lines.append(f"HF+ = {module.notation()}")
        lines.append(f"rank HF_red = {module.rank_red}")
        if doc["casson"] is not None:
            c = doc["casson"]
            line = f"lambda = {c['lambda']} ({c['advisory']})"
            if c["matches"] is not None:
                line += f"; expected {c['expected_lambda']}: {'match' if c['matches'] else 'MISMATCH'}"
            lines.append(line)
    return 0, "\n".join(lines) + "\n"


def _emit_graph(graph: PlumbingGraph, fmt: str) -> str:
    if fmt == "json":
        return _dump(io.to_json_obj(graph))
    if fmt == "dot":
        return io.to_dot(graph)
    return io.to_text(graph)


def safe_run(config: RunConfig) -> tuple[int, str]:
    """``run`` with errors turned into (status, diagnostic)."""
    try:
        return run(config)
    except PlumbingError as exc:
        return 1, f"error: {exc}\n"
    except (NonTerminationError, ArithmeticOverflowError) as exc:
        return 2, f"error: {exc}\n"


def config_from_entry(entry: dict) -> RunConfig:
    """Build a RunConfig from one batch manifest object."""
    if not isinstance(entry, dict) or "command" not in entry:
        raise PlumbingError(f"manifest entry needs a 'command': {entry!r}")
    grading = entry.get("grading", "d0")
    d = None
    if isinstance(grading, dict):
        d, grading = int(grading["d"]), "user"
    source = entry.get("input", "-")
    for key in ("mazur", "brieskorn", "graph"):
        if key in entry and entry["command"] not in ("mazur", "brieskorn"):
            source = {key: entry[key]}
    params = ()
    if entry["command"] == "mazur":
        params = (int(entry["mazur"]),)
    elif entry["command"] == "brieskorn":
        params = tuple(int(x) for x in entry["brieskorn"])
    return RunConfig(
        command=entry["command"], source=source, grading=grading, d=d, output_format="json",
        step_budget=int(entry.get("budget", DEFAULT_STEP_BUDGET)), v0=entry.get("v0"),
        seifert=bool(entry.get("seifert", False)), expected_lambda=entry.get("expected_lambda"),
        mazur=tuple(entry.get("mazur_grid", ())),
        casson_harer=tuple(tuple(x) for x in entry.get("casson_harer", ())), params=params,
    )


def _batch_one(entry) -> tuple[int, dict]:
    try:
        config = config_from_entry(entry)
    except PlumbingError as exc:
        return 1, {"status": 1, "error": str(exc)}
    if config.command in ("tau", "hf", "root", "validate") and config.source == "-":
        return 1, {"status": 1, "error": "batch entries need an explicit input"}
    status, text = safe_run(config)
    if text.startswith("error: "):
        return status, {"status": status, "error": text[len("error: "):].strip()}
    return status, {"status": status, "result": json.loads(text)}


def batch(manifest: list, jobs: int = 1) -> tuple[int, list[dict]]:
    """Run manifest entries independently; results keep manifest order."""
    if jobs > 1 and len(manifest) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_batch_one, manifest))
    else:
        results = [_batch_one(e) for e in manifest]
    status = max((s for s, _ in results), default=0)
    return status, [r for _, r in results]


def _parse_ch(text: str) -> tuple:
    parts = [p.strip() for p in text.split(",")]
    try:
        family, p, s = int(parts[0]), int(parts[1]), int(parts[2])
        sign = None
        if len(parts) > 3:
            sign = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}[parts[3]]
    except (IndexError, ValueError, KeyError):
        raise argparse.ArgumentTypeError(f"expected FAMILY,P,S[,SIGN], got {text!r}") from None
    return (family, p, s, sign)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plumb-hf", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--out", help="write output to this file instead of stdout")

    def graph_input(p):
        p.add_argument("graph", nargs="?", default="-", help="graph file (text or JSON); '-' or omitted reads stdin")
        p.add_argument("--mazur", type=int, metavar="N", help="use the Mazur plumbing G_N")
        p.add_argument("--brieskorn", type=int, nargs=3, metavar=("P", "Q", "R"), help="use Sigma(P,Q,R)")
        p.add_argument("--v0", type=int, help="vertex id to use as the distinguished vertex")
        p.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET, help="inner step budget")

    HELP = {"tau": "full and reduced tau function", "hf": "HF+ module and Casson check",
            "root": "graded root as text, JSON or DOT"}
    for name in ("tau", "hf", "root"):
        p = sub.add_parser(name, help=HELP[name])
        graph_input(p)
        common(p, ("text", "json", "dot") if name == "root" else ("text", "json"))
        if name == "hf":
            g = p.add_mutually_exclusive_group()
            g.add_argument("--d0", action="store_true", help="tower bottom at degree 0 (default)")
            g.add_argument("--d", type=int, help="tower bottom at the given degree")
            g.add_argument("--relative", action="store_true", help="relative grading")
            p.add_argument("--lambda", dest="expected_lambda", type=int, help="expected Casson invariant")

    p = sub.add_parser("validate", help="check the graph preconditions")
    graph_input(p)
    p.add_argument("--ar", action="store_true", help="also run the almost-rationality advisory test")
    common(p)

    p = sub.add_parser("mazur", help="emit the Mazur plumbing G_n")
    p.add_argument("n", type=int)
    common(p, ("text", "json", "dot"))

    p = sub.add_parser("brieskorn", help="emit the plumbing of Sigma(p,q,r)")
    p.add_argument("exponents", type=int, nargs=3, metavar="P")
    p.add_argument("--seifert", action="store_true", help="print Seifert invariants instead of the graph")
    common(p, ("text", "json", "dot"))

    p = sub.add_parser("rank-check", help="closed-form ranks and tau against the pipeline")
    p.add_argument("--mazur", type=int, nargs="+", default=[], metavar="N")
    p.add_argument("--casson-harer", type=_parse_ch, nargs="+", default=[], metavar="F,P,S[,SIGN]")
    p.add_argument("--budget", type=int, default=DEFAULT_STEP_BUDGET)
    common(p)

    p = sub.add_parser("batch", help="run a JSON manifest of commands")
    p.add_argument("manifest")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    return parser


def _config_from_args(args) -> RunConfig:
    source = getattr(args, "graph", "-")
    if getattr(args, "mazur", None) is not None and args.command != "rank-check":
        source = {"mazur": args.mazur}
    if getattr(args, "brieskorn", None):
        source = {"brieskorn": args.brieskorn}
    grading, d = "d0", None
    if getattr(args, "relative", False):
        grading = "relative"
    elif getattr(args, "d", None) is not None:
        grading, d = "user", args.d
    params: tuple = ()
    if args.command == "mazur":
        params = (args.n,)
    elif args.command == "brieskorn":
        params = tuple(args.exponents)
    return RunConfig(
        command=args.command, source=source, grading=grading, d=d, output_format=args.format,
        step_budget=getattr(args, "budget", DEFAULT_STEP_BUDGET), v0=getattr(args, "v0", None),
        seifert=getattr(args, "seifert", False), check_rationality=getattr(args, "ar", False),
        expected_lambda=getattr(args, "expected_lambda", None),
        mazur=tuple(args.mazur) if args.command == "rank-check" else (),
        casson_harer=tuple(getattr(args, "casson_harer", ())), params=params,
    )


def _write(text: str, out: Optional[str], stream) -> None:
    if out:
        Path(out).write_text(text)
    else:
        stream.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "batch":
        try:
            manifest = json.loads(Path(args.manifest).read_text())
        except (OSError, ValueError) as exc:
            sys.stderr.write(f"error: cannot read manifest: {exc}\n")
            return 1
        if not isinstance(manifest, list):
            sys.stderr.write("error: manifest must be a JSON array\n")
            return 1
        status, results = batch(manifest, jobs=args.jobs)
        _write(_dump({"schema": SCHEMA, "results": results}), args.out, sys.stdout)
        return status
    try:
        config = _config_from_args(args)
    except PlumbingError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    status, text = safe_run(config)
    if text.startswith("error: "):
        sys.stderr.write(text)
        return status
    _write(text, args.out, sys.stdout)
    return status


if __name__ == "__main__":
    sys.exit(main())
