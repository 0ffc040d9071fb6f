"""Command-line front end and the ``PLR r s n`` text format.

File format: a header line ``PLR r s n`` followed by ``r`` lines of ``s``
whitespace-separated tokens, each ``.`` (empty) or a symbol in ``1..n``.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .errors import CapExceeded, PLRError, SearchTimeout
from .plr import AutotopismGroup, PartialLatinRectangle, from_grid, reduce


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line, self.column = line, column
        where = "" if line is None else f"line {line}" + ("" if column is None else f", token {column}") + ": "
        super().__init__(where + message)


class ValidationError(ValueError):
    """A well-formed file whose grid is not a partial Latin rectangle."""

    def __init__(self, cause: PLRError):
        self.cause = cause
        super().__init__(f"{type(cause).__name__}: {cause}")


def parse_plr_file(text: str) -> PartialLatinRectangle:
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise ParseError("empty input")
    no, head = lines[0]
    if len(head) != 4 or head[0] != "PLR":
        raise ParseError("expected header 'PLR r s n'", no)
    try:
        r, s, n = (int(t) for t in head[1:])
    except ValueError:
        raise ParseError("dimensions must be integers", no) from None
    if min(r, s, n) < 0:
        raise ParseError("dimensions must be nonnegative", no)
    body = lines[1:]
    if len(body) != r:
        raise ParseError(f"expected {r} grid rows, found {len(body)}")
    grid = []
    for no, toks in body:
        if len(toks) != s:
            raise ParseError(f"expected {s} tokens, found {len(toks)}", no)
        row = []
        for col, tok in enumerate(toks, 1):
            if tok == ".":
                row.append(None)
            elif tok.isdigit():
                row.append(int(tok))
            else:
                raise ParseError(f"bad token {tok!r}", no, col)
        grid.append(row)
    try:
        return from_grid(r, s, n, grid)
    except PLRError as exc:
        raise ValidationError(exc) from exc


def format_plr(L: PartialLatinRectangle) -> str:
    return f"PLR {L.r} {L.s} {L.n}\n" + (str(L) + "\n" if L.r else "")


def format_group(g: AutotopismGroup) -> str:
    """``order N``, the factorial factors, then one autotopism per line in cycle notation.

    Autotopisms are shown on the original indices, acting as the identity on
    empty lines and unused symbols.
    """
    red = g.reduction
    if red is not None:
        o, R = red.original, red.reduced
        factors = f"factors {o.r - R.r}! {o.s - R.s}! {o.n - R.n}!"
    else:
        factors = "factors 0! 0! 0!"
    lines = [f"order {g.total_order}", factors]
    lines += [t.cycle_string() for t in sorted(g.lifted())]
    return "\n".join(lines) + "\n"


def _seed(args) -> int:
    env = os.environ.get("PLR_SEED")
    return int(env) if env is not None else args.seed


def _read(path: str) -> PartialLatinRectangle:
    return parse_plr_file(Path(path).read_text())


def cmd_compute(args) -> int:
    from .methods import MethodSpec, compute_atop

    L = _read(args.file)
    method = MethodSpec.parse(f"{args.method}+{args.invariant}")
    sys.stdout.write(format_group(compute_atop(L, method, timeout=args.timeout)))
    return 0


def cmd_generate(args) -> int:
    from .bench import generate_sample

    L = generate_sample(args.suite, args.r, args.s, args.n, args.x, _seed(args), args.moves)
    text = format_plr(L)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_invariants(args) -> int:
    from .invariants import compute_entry_invariant

    L = _read(args.file)
    table = compute_entry_invariant(L, args.kind)
    sys.stdout.write(table.format_matrix(L) + "\n")
    return 0


def cmd_graph(args) -> int:
    from .graphs import build_graph
    from .invariants import compute_entry_invariant

    R = reduce(_read(args.file)).reduced
    table = None if args.invariant == "none" else compute_entry_invariant(R, args.invariant)
    sys.stdout.write(build_graph(R, args.kind, table).graph.to_text())
    return 0


def cmd_agree(args) -> int:
    from .bench import DivergenceFound, generate_sample, parse_int_list, sample_seed, verify_agreement
    from .methods import ALL_METHODS, MethodSpec

    if args.methods == "all":
        methods = list(ALL_METHODS)
    else:
        methods = [MethodSpec.parse(m) for m in args.methods.split(",") if m.strip()]
    xs = parse_int_list(args.x) if args.x else list(range(args.r * args.s + 1))
    seed = _seed(args)
    samples = []
    for idx in range(args.samples):
        x = xs[idx % len(xs)]
        samples.append(generate_sample(args.suite, args.r, args.s, args.n, x, sample_seed(seed, x, idx)))
    try:
        report = verify_agreement(methods, samples)
    except DivergenceFound as exc:
        print(exc.report.summary(), file=sys.stderr)
        return 2
    print(report.summary())
    return 0


def cmd_bench(args) -> int:
    from .bench import BenchConfig, emit_aggregates_csv, emit_csv, run_bench

    cfg = BenchConfig.from_text(Path(args.config).read_text())
    if os.environ.get("PLR_SEED") is not None:
        cfg.seed = int(os.environ["PLR_SEED"])
    result = run_bench(cfg)
    records, summary = emit_csv(result.records), emit_aggregates_csv(result.aggregates)
    if args.out:
        Path(args.out).write_text(records)
        Path(args.summary or str(Path(args.out).with_suffix(".summary.csv"))).write_text(summary)
    else:
        sys.stdout.write(records)
        sys.stdout.write("\n" + summary)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plratop", description="Autotopism groups of partial Latin rectangles.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="compute the autotopism group of a PLR file")
    c.add_argument("--method", default="plr-expanded")
    c.add_argument("--invariant", default="square", choices=["none", "sei", "square", "combined"])
    c.add_argument("--timeout", type=float, default=None)
    c.add_argument("file")
    c.set_defaults(func=cmd_compute)

    g = sub.add_parser("generate", help="write a random PLR from set A or B")
    g.add_argument("--suite", choices=["a", "b"], required=True)
    for dim in ("r", "s", "n", "x"):
        g.add_argument(f"--{dim}", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--moves", type=int, default=None, help="Jacobson-Matthews steps (set B)")
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    i = sub.add_parser("invariants", help="print the relabelled invariant matrix")
    i.add_argument("--kind", choices=["sei", "square", "combined"], default="sei")
    i.add_argument("file")
    i.set_defaults(func=cmd_invariants)

    gr = sub.add_parser("graph", help="dump a graph encoding as an adjacency list")
    gr.add_argument("--kind", default="plr-expanded",
                    choices=["mmm", "bipartite", "plr-flat", "plr-expanded", "rook-flat", "rook-expanded"])
    gr.add_argument("--invariant", default="none", choices=["none", "sei", "square", "combined"])
    gr.add_argument("file")
    gr.set_defaults(func=cmd_graph)

    a = sub.add_parser("agree", help="check that methods agree on random PLRs")
    a.add_argument("--methods", default="all", help="comma-separated method specs, or 'all'")
    a.add_argument("--samples", type=int, default=100)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--suite", choices=["a", "b"], default="a")
    a.add_argument("--x", default=None, help="x values, e.g. '0..16' (default: 0..rs)")
    for dim in ("r", "s", "n"):
        a.add_argument(f"--{dim}", type=int, default=4)
    a.set_defaults(func=cmd_agree)

    b = sub.add_parser("bench", help="run a benchmark described by a key=value config")
    b.add_argument("--config", required=True)
    b.add_argument("--out", help="per-sample CSV path (default: stdout)")
    b.add_argument("--summary", help="aggregate CSV path (default: <out>.summary.csv)")
    b.set_defaults(func=cmd_bench)
    return p


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValidationError, PLRError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CapExceeded, SearchTimeout) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
