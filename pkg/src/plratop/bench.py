"""Timing and agreement harness over random suites of partial Latin rectangles.

Each sample is generated from its own 64-bit seed, derived from the run
seed, the entry parameter ``x`` and the sample index, and every method in
the configuration is timed on the same sample.
"""

from __future__ import annotations

import csv
import io
import logging
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence, Union

from .errors import CapExceeded, SearchTimeout
from .generators import gen_set_a, gen_set_b
from .invariants import InvariantKind
from .methods import MethodSpec, compute_atop, computation_required
from .plr import AutotopismGroup, PartialLatinRectangle

log = logging.getLogger(__name__)

CSV_HEADER = (
    "method", "invariant", "suite", "r", "s", "n", "x", "entries",
    "seed", "time_us", "group_order", "computation_required", "timeout",
)
AGG_HEADER = ("method", "invariant", "x", "samples", "timeouts", "mean_us", "stddev_us", "proportion_computed")


class Suite(str, Enum):
    A = "a"
    B = "b"


@dataclass
class BenchConfig:
    suite: Suite
    r: int
    s: int
    n: int
    xs: list[int]
    methods: list[MethodSpec]
    samples: int = 10000
    seed: int = 0
    timeout: float = 10.0
    warmup: int = 10
    moves: int | None = None
    workers: int = 1

    def __post_init__(self):
        self.suite = Suite(self.suite)
        if min(self.r, self.s, self.n) < 1 or self.samples < 1:
            raise ValueError("dimensions and sample count must be positive")
        if self.suite is Suite.B and self.n < max(self.r, self.s):
            raise ValueError("set B needs n >= max(r, s)")
        limit = self.r * self.s if self.suite is Suite.B else None
        for x in self.xs:
            if x < 0 or (limit is not None and x > limit):
                raise ValueError(f"x={x} outside [0, {limit}]")

    @classmethod
    def from_text(cls, text: str) -> BenchConfig:
        """Parse ``key = value`` lines; ``#`` starts a comment.

        ``xs`` accepts ``1,5,9`` or an inclusive range ``10..20``; ``methods``
        is a comma-separated list such as ``plr-expanded+square, mmm``.
        """
        raw: dict[str, str] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"line {lineno}: expected key = value")
            raw[key.strip()] = value.strip()
        kw: dict = {}
        for key, value in raw.items():
            if key in ("r", "s", "n", "samples", "seed", "warmup", "moves", "workers"):
                kw[key] = int(value)
            elif key == "timeout":
                kw[key] = float(value)
            elif key == "suite":
                kw[key] = Suite(value.lower().removeprefix("set"))
            elif key == "xs":
                kw[key] = parse_int_list(value)
            elif key == "methods":
                kw[key] = [MethodSpec.parse(m) for m in value.split(",") if m.strip()]
            else:
                raise ValueError(f"unknown config key {key!r}")
        return cls(**kw)


def parse_int_list(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


@dataclass
class SampleRecord:
    method: str
    invariant: str
    suite: str
    r: int
    s: int
    n: int
    x: int
    entries: int
    seed: int
    time_us: float | None
    group_order: int | None
    computation_required: bool
    timeout: bool = False


@dataclass
class Aggregate:
    method: str
    invariant: str
    x: int
    samples: int
    timeouts: int
    mean_us: float | None
    stddev_us: float | None
    proportion_computed: float


@dataclass
class BenchResult:
    records: list[SampleRecord]
    aggregates: list[Aggregate] = field(default_factory=list)


def sample_seed(seed: int, x: int, index: int) -> int:
    return random.Random(f"{seed}:{x}:{index}").getrandbits(64)


def generate_sample(suite: Suite | str, r: int, s: int, n: int, x: int, seed: int, moves: int | None = None) -> PartialLatinRectangle:
    if Suite(suite) is Suite.A:
        return gen_set_a(r, s, n, x, seed)
    return gen_set_b(r, s, n, x, seed, moves)


def _time_one(L: PartialLatinRectangle, method: MethodSpec, timeout: float | None) -> tuple[float | None, int | None]:
    t0 = time.perf_counter_ns()
    try:
        group = compute_atop(L, method, timeout=timeout)
    except (SearchTimeout, CapExceeded):
        return None, None
    return (time.perf_counter_ns() - t0) / 1000.0, group.total_order


def _run_sample(args) -> list[SampleRecord]:
    cfg, x, index = args
    seed = sample_seed(cfg.seed, x, index)
    L = generate_sample(cfg.suite, cfg.r, cfg.s, cfg.n, x, seed, cfg.moves)
    required = {k: computation_required(L, k) for k in {m.invariant for m in cfg.methods}}
    out = []
    for m in cfg.methods:
        t_us, order = _time_one(L, m, cfg.timeout)
        out.append(SampleRecord(
            m.family.value, m.invariant.value, cfg.suite.value, cfg.r, cfg.s, cfg.n, x,
            len(L.entries), seed, t_us, order, required[m.invariant], t_us is None,
        ))
    return out


def aggregate(records: Iterable[SampleRecord]) -> list[Aggregate]:
    groups: dict[tuple, list[SampleRecord]] = {}
    for rec in records:
        groups.setdefault((rec.method, rec.invariant, rec.x), []).append(rec)
    out = []
    for (method, inv, x), recs in sorted(groups.items()):
        times = [rec.time_us for rec in recs if not rec.timeout]
        out.append(Aggregate(
            method, inv, x, len(recs), len(recs) - len(times),
            statistics.fmean(times) if times else None,
            statistics.stdev(times) if len(times) > 1 else (0.0 if times else None),
            sum(rec.computation_required for rec in recs) / len(recs),
        ))
    return out


def run_bench(cfg: BenchConfig) -> BenchResult:
    """Time every method on ``cfg.samples`` random PLRs per value of ``x``."""
    tasks = [(cfg, x, idx) for x in cfg.xs for idx in range(cfg.samples)]
    if cfg.warmup and tasks:
        for idx in range(cfg.warmup):
            _, x, i = tasks[idx % len(tasks)]
            L = generate_sample(cfg.suite, cfg.r, cfg.s, cfg.n, x, sample_seed(cfg.seed, x, i), cfg.moves)
            for m in cfg.methods:
                _time_one(L, m, cfg.timeout)
    records: list[SampleRecord] = []
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            for recs in pool.map(_run_sample, tasks, chunksize=16):
                records.extend(recs)
    else:
        for task in tasks:
            records.extend(_run_sample(task))
    timeouts = sum(rec.timeout for rec in records)
    if timeouts:
        log.warning("%d of %d timed calls hit the timeout or cap", timeouts, len(records))
    return BenchResult(records, aggregate(records))


# ---------------------------------------------------------------- agreement

class DivergenceFound(AssertionError):
    def __init__(self, report: AgreementReport):
        self.report = report
        super().__init__(report.summary())


Method = Union[MethodSpec, Callable[[PartialLatinRectangle], AutotopismGroup]]


@dataclass
class Divergence:
    index: int
    plr: str
    orders: dict[str, int | None]


@dataclass
class AgreementReport:
    methods: list[str]
    checked: int = 0
    divergences: list[Divergence] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.divergences

    def summary(self) -> str:
        lines = [f"{self.checked} samples, {len(self.methods)} methods, {len(self.divergences)} divergences"]
        for d in self.divergences[:10]:
            orders = ", ".join(f"{k}={v}" for k, v in d.orders.items())
            lines.append(f"sample {d.index}: {orders}\n{d.plr}")
        return "\n".join(lines)


def _method_name(m: Method) -> str:
    return str(m) if isinstance(m, MethodSpec) else getattr(m, "__name__", repr(m))


def verify_agreement(
    methods: Sequence[Method],
    samples: Iterable[PartialLatinRectangle],
    *,
    shortcut: bool = False,
    raise_on_divergence: bool = True,
) -> AgreementReport:
    """Check that all methods give the same order and the same reduced autotopisms."""
    if len(methods) < 2:
        raise ValueError("need at least two methods to compare")
    from .cli import format_plr  # local import: cli imports this module

    report = AgreementReport([_method_name(m) for m in methods])
    for index, L in enumerate(samples):
        results = {}
        for m in methods:
            name = _method_name(m)
            try:
                g = compute_atop(L, m, shortcut=shortcut) if isinstance(m, MethodSpec) else m(L)
                results[name] = (g.total_order, g.key_set())
            except (SearchTimeout, CapExceeded):
                results[name] = (None, None)
        report.checked += 1
        if len(set(results.values())) > 1:
            report.divergences.append(
                Divergence(index, format_plr(L), {k: v[0] for k, v in results.items()})
            )
    if raise_on_divergence and report.divergences:
        raise DivergenceFound(report)
    return report


# ---------------------------------------------------------------- CSV

def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit_csv(records: Iterable[SampleRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for rec in records:
        w.writerow([_fmt(getattr(rec, name)) for name in CSV_HEADER])
    return buf.getvalue()


def parse_csv(text: str) -> list[SampleRecord]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        kw = {}
        for name in CSV_HEADER:
            v = row[name]
            if name in ("method", "invariant", "suite"):
                kw[name] = v
            elif name in ("computation_required", "timeout"):
                kw[name] = v == "1"
            elif v == "":
                kw[name] = None
            elif name == "time_us":
                kw[name] = float(v)
            else:
                kw[name] = int(v)
        out.append(SampleRecord(**kw))
    return out


def emit_aggregates_csv(aggs: Iterable[Aggregate]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(AGG_HEADER)
    for a in aggs:
        w.writerow([_fmt(getattr(a, name)) for name in AGG_HEADER])
    return buf.getvalue()


def proportion_computed(records: Iterable[SampleRecord], invariant: InvariantKind | str, x: int | None = None) -> float:
    inv = InvariantKind(invariant).value
    recs = [rec for rec in records if rec.invariant == inv and (x is None or rec.x == x)]
    return sum(rec.computation_required for rec in recs) / len(recs)
