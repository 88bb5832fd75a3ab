"""Sink-finding by principal pivoting over an orientation oracle.

The simple engine walks one outgoing edge per iteration, with the edge
picked by a pluggable rule; the greedy engine flips a whole set of
outgoing coordinates per iteration, either jumping to the antipode of the
outgoing span or to that subcube's sink.

Run lengths are tracked two ways: `step_count` counts engine iterations,
while `total_flips` counts elementary coordinate flips (the directed path
length; both agree for simple rules).

Deterministic rules (everything except random-edge; the randomized
least-index rule is deterministic once its permutation is drawn) detect
revisited vertices and stop with 'cycle-detected'.  A random-edge walk may
legitimately revisit vertices, so it only ever stops at the sink or the
step limit.

Trace CSV columns: step, vertex, outmap, chosen, level, L, status; the
terminal row repeats the final vertex and carries the status.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional

from .cube import Subcube, Vertex, check_vertex, flip_one, vertex_to_string
from .rng import Prng, XorShift128
from .uso import MINUS, PLUS, OrientationOracle, Outmap, TABLE_CAP, outmap_to_string
from .verify import level, upper_minus_count

SIMPLE_RULES = ("murty", "murty-pi", "randomized-murty", "random-edge")
GREEDY_RULES = ("greedy-antipodal", "greedy-subcube-sink")
RULE_KINDS = SIMPLE_RULES + GREEDY_RULES

SINK_REACHED = "sink-reached"
CYCLE_DETECTED = "cycle-detected"
STEP_LIMIT = "step-limit"


def default_step_limit(n: int) -> int:
    # comfortably above the quadratic worst-case iteration counts
    return 50 * n * n


@dataclass(frozen=True)
class PivotRule:
    kind: str
    pi: Optional[tuple] = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown pivot rule {self.kind!r}; choose from {RULE_KINDS}")
        if self.pi is not None:
            if self.kind != "murty-pi":
                raise ValueError("a fixed permutation is only valid with murty-pi")
            if sorted(self.pi) != list(range(1, len(self.pi) + 1)):
                raise ValueError(f"pi must be a permutation of 1..n, got {self.pi}")
        elif self.kind == "murty-pi":
            raise ValueError("murty-pi requires a permutation")

    @property
    def deterministic(self) -> bool:
        return self.kind != "random-edge"


def murty() -> PivotRule:
    return PivotRule("murty")


def murty_pi(pi) -> PivotRule:
    return PivotRule("murty-pi", pi=tuple(pi))


def randomized_murty(seed: int) -> PivotRule:
    return PivotRule("randomized-murty", seed=seed)


def random_edge(seed: int) -> PivotRule:
    return PivotRule("random-edge", seed=seed)


def greedy_antipodal() -> PivotRule:
    return PivotRule("greedy-antipodal")


def greedy_subcube_sink() -> PivotRule:
    return PivotRule("greedy-subcube-sink")


class RuleState:
    """Per-run rule state: permutation drawn once, random stream advanced."""

    def __init__(self, rule: PivotRule, n: int):
        self.rule = rule
        self.n = n
        self.pi: Optional[tuple] = None
        self._scan: Optional[tuple] = None
        self._prng: Optional[XorShift128] = None
        if rule.kind == "murty-pi":
            if len(rule.pi) != n:
                raise ValueError(f"pi has length {len(rule.pi)}, dimension is {n}")
            self.pi = rule.pi
        elif rule.kind == "randomized-murty":
            self.pi = Prng(rule.seed).permutation(n)
        elif rule.kind == "random-edge":
            # same stream as the compiled walk kernels, so runs replay exactly
            self._prng = XorShift128(rule.seed)
        if self.pi is not None:
            self._scan = self.pi

    def choose(self, outgoing) -> int:
        """Pick the pivot coordinate from the nonempty outgoing set."""
        if not outgoing:
            raise ValueError("choose() requires a nonempty outgoing set")
        if self.rule.kind == "murty":
            return min(outgoing)
        if self._scan is not None:
            members = set(outgoing)
            for c in self._scan:
                if c in members:
                    return c
            raise ValueError("outgoing set contains out-of-range coordinates")
        return tuple(outgoing)[self._prng.below(len(outgoing))]


def choose(rule: PivotRule, outgoing, n: Optional[int] = None) -> int:
    """One-shot rule application (a fresh RuleState; randomized rules draw
    from the start of their seeded stream)."""
    if n is None:
        n = len(rule.pi) if rule.pi is not None else max(outgoing)
    return RuleState(rule, n).choose(outgoing)


@dataclass(frozen=True)
class TraceStep:
    index: int
    vertex: Vertex
    outmap: Outmap
    chosen: tuple
    level: int
    upper_minus: int


@dataclass
class RunTrace:
    rule: str
    start: Vertex
    status: str
    final_vertex: Vertex
    final_outmap: Outmap
    step_count: int
    total_flips: int
    steps: list = field(default_factory=list)
    pi: Optional[tuple] = None

    @property
    def length(self) -> int:
        """Directed path length in elementary coordinate flips."""
        return self.total_flips

    def visited(self) -> list:
        return [s.vertex for s in self.steps] + [self.final_vertex]


def _outgoing(o: Outmap) -> list:
    return [j + 1 for j, s in enumerate(o) if s == MINUS]


def run(
    oracle: OrientationOracle,
    rule: PivotRule,
    start: Vertex,
    max_steps: Optional[int] = None,
    record: bool = True,
) -> RunTrace:
    """Iterate the simple pivoting loop from `start` until the outgoing set
    is empty, a deterministic rule revisits a vertex, or the step limit."""
    if rule.kind not in SIMPLE_RULES:
        raise ValueError(f"run() handles simple rules only, got {rule.kind!r}")
    n = oracle.n
    check_vertex(start)
    if len(start) != n:
        raise ValueError("start vertex dimension mismatch")
    if max_steps is None:
        max_steps = default_step_limit(n)
    if max_steps < 1:
        raise ValueError("step limit must be >= 1")
    state = RuleState(rule, n)
    deterministic = rule.deterministic
    visited = {start} if deterministic else None
    v = start
    steps = 0
    trace: list = []
    status = None
    while True:
        o = oracle.outmap(v)
        out = _outgoing(o)
        if not out:
            status = SINK_REACHED
            break
        if steps >= max_steps:
            status = STEP_LIMIT
            break
        c = state.choose(out)
        if record:
            trace.append(
                TraceStep(steps, v, o, (c,), level(o, v), upper_minus_count(o, v))
            )
        v = flip_one(v, c)
        steps += 1
        if deterministic:
            if v in visited:
                status = CYCLE_DETECTED
                break
            visited.add(v)
    return RunTrace(
        rule=rule.kind,
        start=start,
        status=status,
        final_vertex=v,
        final_outmap=oracle.outmap(v),
        step_count=steps,
        total_flips=steps,
        steps=trace,
        pi=state.pi,
    )


def _subcube_sink(oracle: OrientationOracle, base: Vertex, free: list) -> Vertex:
    sinks = []
    for w in Subcube(base, frozenset(free)).vertices():
        ow = oracle.outmap(w)
        if all(ow[j - 1] == PLUS for j in free):
            sinks.append(w)
    if len(sinks) != 1:
        raise ValueError(
            f"subcube at {vertex_to_string(base)} spanned by {sorted(free)} has "
            f"{len(sinks)} sinks; not a unique-sink orientation"
        )
    return sinks[0]


def run_greedy(
    oracle: OrientationOracle,
    start: Vertex,
    variant: str = "antipodal",
    max_steps: Optional[int] = None,
    record: bool = True,
) -> RunTrace:
    """Block pivoting: flip all outgoing coordinates at once (antipodal) or
    jump to the sink of the subcube they span (subcube-sink)."""
    if variant not in ("antipodal", "subcube-sink"):
        raise ValueError(f"unknown greedy variant {variant!r}")
    n = oracle.n
    check_vertex(start)
    if len(start) != n:
        raise ValueError("start vertex dimension mismatch")
    if max_steps is None:
        max_steps = default_step_limit(n)
    v = start
    visited = {start}
    steps = 0
    flips = 0
    trace: list = []
    status = None
    while True:
        o = oracle.outmap(v)
        out = _outgoing(o)
        if not out:
            status = SINK_REACHED
            break
        if steps >= max_steps:
            status = STEP_LIMIT
            break
        if variant == "antipodal":
            target = v
            for c in out:
                target = flip_one(target, c)
        else:
            if len(out) > TABLE_CAP:
                raise ValueError(
                    f"subcube-sink pivot needs outdegree <= {TABLE_CAP}, got {len(out)}"
                )
            target = _subcube_sink(oracle, v, out)
        changed = tuple(j for j in out if target[j - 1] != v[j - 1])
        if record:
            trace.append(
                TraceStep(steps, v, o, changed, level(o, v), upper_minus_count(o, v))
            )
        v = target
        steps += 1
        flips += len(changed)
        if v in visited:
            status = CYCLE_DETECTED
            break
        visited.add(v)
    return RunTrace(
        rule=f"greedy-{variant}",
        start=start,
        status=status,
        final_vertex=v,
        final_outmap=oracle.outmap(v),
        step_count=steps,
        total_flips=flips,
        steps=trace,
    )


def solve(
    oracle: OrientationOracle,
    rule: PivotRule,
    start: Vertex,
    max_steps: Optional[int] = None,
    record: bool = True,
) -> RunTrace:
    """Dispatch to the simple or greedy engine based on the rule kind."""
    if rule.kind in GREEDY_RULES:
        variant = rule.kind.removeprefix("greedy-")
        return run_greedy(oracle, start, variant, max_steps, record)
    return run(oracle, rule, start, max_steps, record)


def detect_cycle(trace: RunTrace) -> Optional[dict]:
    """First repeated vertex and the enclosed segment; None for sink runs.

    Needs a recorded trace (run with record=True) to see the sequence.
    """
    if trace.status == SINK_REACHED:
        return None
    seen: dict = {}
    seq = trace.visited()
    for pos, v in enumerate(seq):
        if v in seen:
            first = seen[v]
            return {
                "vertex": v,
                "first_index": first,
                "repeat_index": pos,
                "cycle": seq[first:pos],
                "length": pos - first,
            }
        seen[v] = pos
    return None


def write_trace_csv(trace: RunTrace, path) -> None:
    with open(path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["step", "vertex", "outmap", "chosen", "level", "L", "status"])
        for s in trace.steps:
            w.writerow(
                [
                    s.index,
                    vertex_to_string(s.vertex),
                    outmap_to_string(s.outmap),
                    ";".join(str(c) for c in s.chosen),
                    s.level,
                    s.upper_minus,
                    "",
                ]
            )
        fo = trace.final_outmap
        fv = trace.final_vertex
        w.writerow(
            [
                trace.step_count,
                vertex_to_string(fv),
                outmap_to_string(fo),
                "",
                level(fo, fv),
                upper_minus_count(fo, fv),
                trace.status,
            ]
        )
