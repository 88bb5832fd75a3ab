"""Property checkers over tabulated orientations.

Each checker returns a VerifyReport: a named pass/fail verdict, an
evaluation count, and on failure a minimal JSON-friendly witness that can
be re-checked independently (a subcube with the wrong sink count, an
offending face, a vertex pair, or a path length).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .cube import (
    Subcube,
    Vertex,
    enumerate_subcubes,
    pack,
    unpack,
    vertex_to_string,
)
from .lcp import ExhaustiveLimitError
from .uso import MINUS, PLUS, Outmap, UsoTable

LONGEST_PATH_LIMIT = 4


@dataclass
class VerifyReport:
    name: str
    passed: bool
    witness: Optional[dict] = None
    evaluations: int = 0

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("failing report requires a witness")

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json_dict(self) -> dict:
        return {
            "property": self.name,
            "verdict": self.verdict,
            "witness": self.witness,
            "evaluations": self.evaluations,
        }


def _subcube_witness(sub: Subcube, sinks) -> dict:
    return {
        "base": vertex_to_string(sub.base),
        "free": sorted(sub.free),
        "sinks": [vertex_to_string(v) for v in sinks],
    }


def is_uso(t: UsoTable) -> VerifyReport:
    """Every nonempty subcube must have exactly one sink."""
    for sub in enumerate_subcubes(t.n):
        free = sorted(sub.free)
        sinks = [
            v for v in sub.vertices() if all(t.outmap(v)[j - 1] == PLUS for j in free)
        ]
        if len(sinks) != 1:
            return VerifyReport("uso", False, _subcube_witness(sub, sinks), 1 << t.n)
    return VerifyReport("uso", True, None, 1 << t.n)


def unique_completion_holds(t: UsoTable) -> VerifyReport:
    """Prescribing bits on A and signs on the complement pins down exactly
    one vertex, for every partition and every prescription."""
    n = t.n
    counts: dict = {}
    for v, o in t.items():
        vm = pack(v)
        for amask in range(1 << n):
            bits = vm & amask
            sgn = 0
            for j in range(n):
                if not amask >> j & 1 and o[j] == MINUS:
                    sgn |= 1 << j
            key = (amask, bits, sgn)
            counts[key] = counts.get(key, 0) + 1
    total = 1 << (2 * n)
    bad = next((k for k, c in counts.items() if c != 1), None)
    if bad is None and len(counts) == total:
        return VerifyReport("unique-completion", True, None, 1 << n)
    if bad is None:
        # some prescription matched no vertex; find one
        for amask in range(1 << n):
            for bits in range(1 << n):
                if bits & ~amask:
                    continue
                for sgn in range(1 << n):
                    if sgn & amask:
                        continue
                    if (amask, bits, sgn) not in counts:
                        bad = (amask, bits, sgn)
                        break
                if bad:
                    break
            if bad:
                break
    amask, bits, sgn = bad
    matches = [
        vertex_to_string(v)
        for v, o in t.items()
        if pack(v) & amask == bits
        and all((o[j] == MINUS) == bool(sgn >> j & 1) for j in range(n) if not amask >> j & 1)
    ]
    witness = {
        "fixed_bits": {j + 1: bits >> j & 1 for j in range(n) if amask >> j & 1},
        "signs": {
            j + 1: "-" if sgn >> j & 1 else "+" for j in range(n) if not amask >> j & 1
        },
        "matches": matches,
    }
    return VerifyReport("unique-completion", False, witness, 1 << n)


class DependencyError(ValueError):
    """A checker's precondition (another property) does not hold."""


def holt_klee(t: UsoTable) -> VerifyReport:
    """At least n internally-vertex-disjoint directed source-to-sink paths.

    Computed as max flow in the vertex-split digraph with unit vertex
    capacities; the flow value needed is at most n, so breadth-first
    augmentation suffices.
    """
    n = t.n
    source, sink = t.global_source(), t.global_sink()
    if source is None or sink is None:
        raise DependencyError("holt-klee requires a unique global source and sink (run 'uso' first)")
    smask, tmask = pack(source), pack(sink)
    # node ids: 2*m = in-node of vertex m, 2*m+1 = out-node
    cap: dict = {}
    adj: dict = {}

    def add_edge(a, b, c):
        if (a, b) not in cap:
            cap[(a, b)] = 0
            cap[(b, a)] = cap.get((b, a), 0)
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        cap[(a, b)] += c

    big = n + 1
    for m in range(1 << n):
        add_edge(2 * m, 2 * m + 1, big if m in (smask, tmask) else 1)
        o = t.outmap_of_mask(m)
        for j in range(n):
            if o[j] == MINUS:
                add_edge(2 * m + 1, 2 * (m ^ (1 << j)), 1)
    s, target = 2 * smask + 1, 2 * tmask
    flow = 0
    while flow < n:
        parent = {s: None}
        queue = deque([s])
        while queue and target not in parent:
            a = queue.popleft()
            for b in adj.get(a, ()):
                if b not in parent and cap.get((a, b), 0) > 0:
                    parent[b] = a
                    queue.append(b)
        if target not in parent:
            break
        b = target
        while parent[b] is not None:
            a = parent[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    if flow >= n:
        return VerifyReport("holt-klee", True, None, 1 << n)
    # min vertex cut: in-node reachable, out-node not
    reach = {s}
    queue = deque([s])
    while queue:
        a = queue.popleft()
        for b in adj.get(a, ()):
            if b not in reach and cap.get((a, b), 0) > 0:
                reach.add(b)
                queue.append(b)
    cut = [
        vertex_to_string(unpack(m, n))
        for m in range(1 << n)
        if 2 * m in reach and 2 * m + 1 not in reach
    ]
    witness = {"flow": flow, "required": n, "vertex_cut": cut}
    return VerifyReport("holt-klee", False, witness, 1 << n)


def is_two_up_uniform(t: UsoTable) -> VerifyReport:
    """Every 2-face whose 00-corner is its source must be uniformly oriented."""
    n = t.n
    for v, o in t.items():
        for i in range(1, n + 1):
            if v[i - 1] != 0 or o[i - 1] != MINUS:
                continue
            for j in range(i + 1, n + 1):
                if v[j - 1] != 0 or o[j - 1] != MINUS:
                    continue
                vi = t.outmap(_flipped(v, i))
                vj = t.outmap(_flipped(v, j))
                if vi[j - 1] != MINUS or vj[i - 1] != MINUS:
                    witness = {
                        "base": vertex_to_string(v),
                        "free": [i, j],
                        "broken": _face_break(v, i, j, vi, vj),
                    }
                    return VerifyReport("2uu", False, witness, 1 << n)
    return VerifyReport("2uu", True, None, 1 << n)


def _flipped(v: Vertex, coord: int) -> Vertex:
    i = coord - 1
    return v[:i] + (1 - v[i],) + v[i + 1:]


def _face_break(v, i, j, vi, vj):
    if vi[j - 1] != MINUS:
        return {"vertex": vertex_to_string(_flipped(v, i)), "coord": j, "sign": "+"}
    return {"vertex": vertex_to_string(_flipped(v, j)), "coord": i, "sign": "+"}


def is_two_uniform(t: UsoTable) -> VerifyReport:
    """2-up-uniform, and still 2-up-uniform after reversing every edge."""
    fwd = is_two_up_uniform(t)
    if not fwd.passed:
        w = dict(fwd.witness)
        w["direction"] = "forward"
        return VerifyReport("2u", False, w, fwd.evaluations)
    rev = is_two_up_uniform(t.reoriented(range(1, t.n + 1)))
    if not rev.passed:
        w = dict(rev.witness)
        w["direction"] = "reversed"
        return VerifyReport("2u", False, w, 2 << t.n)
    return VerifyReport("2u", True, None, 2 << t.n)


def is_locally_up_uniform(t: UsoTable) -> VerifyReport:
    """The subcube spanned by the outgoing zero coordinates of any vertex
    must be uniformly oriented (every dimension, not just 2-faces)."""
    n = t.n
    for u, o in t.items():
        span = [j for j in range(1, n + 1) if u[j - 1] == 0 and o[j - 1] == MINUS]
        k = len(span)
        for mask in range(1 << k):
            w = list(u)
            for idx, j in enumerate(span):
                if mask >> idx & 1:
                    w[j - 1] = 1
            w = tuple(w)
            ow = t.outmap(w)
            for j in span:
                want = MINUS if w[j - 1] == 0 else PLUS
                if ow[j - 1] != want:
                    witness = {
                        "base": vertex_to_string(u),
                        "free": span,
                        "vertex": vertex_to_string(w),
                        "coord": j,
                    }
                    return VerifyReport("local-uu", False, witness, 1 << n)
    return VerifyReport("local-uu", True, None, 1 << n)


def _resolve_outmap(source, v: Vertex) -> Outmap:
    if hasattr(source, "outmap"):
        return source.outmap(v)
    return source


def level(source, v: Vertex) -> int:
    """Number of coordinates showing bit 0 with an outgoing edge."""
    o = _resolve_outmap(source, v)
    return sum(1 for b, s in zip(v, o) if b == 0 and s == MINUS)


def upper_minus_count(source, v: Vertex) -> int:
    """Number of coordinates showing bit 1 with an outgoing edge."""
    o = _resolve_outmap(source, v)
    return sum(1 for b, s in zip(v, o) if b == 1 and s == MINUS)


def potential(source, v: Vertex, k: int) -> int:
    """Descent potential after cyclically relabeling coordinate k to 1.

    Counts the bit-1 outgoing coordinates, plus the sum of relabeled
    indices of the bit-0 outgoing coordinates.
    """
    o = _resolve_outmap(source, v)
    n = len(v)
    if not 1 <= k <= n:
        raise ValueError(f"coordinate {k} out of range 1..{n}")
    total = 0
    for j in range(1, n + 1):
        if o[j - 1] != MINUS:
            continue
        if v[j - 1] == 1:
            total += 1
        else:
            total += (j - k) % n + 1
    return total


def monotone_path_exists(t: UsoTable, v: Vertex) -> bool:
    """A directed path from v to the global sink of length exactly the
    Hamming distance, searched inside the spanned difference subcube."""
    sink = t.global_sink()
    if sink is None:
        raise DependencyError("monotone path search requires a unique global sink")
    target = pack(sink)
    memo: dict = {}

    def ok(m: int) -> bool:
        if m == target:
            return True
        hit = memo.get(m)
        if hit is not None:
            return hit
        memo[m] = False
        o = t.outmap_of_mask(m)
        diff = m ^ target
        res = False
        j = 0
        d = diff
        while d:
            if d & 1 and o[j] == MINUS and ok(m ^ (1 << j)):
                res = True
                break
            d >>= 1
            j += 1
        memo[m] = res
        return res

    return ok(pack(v))


def longest_path_exact(t: UsoTable, limit: int = LONGEST_PATH_LIMIT) -> int:
    """Length of the longest directed simple path (exhaustive; n <= limit)."""
    n = t.n
    if n > limit:
        raise ExhaustiveLimitError(
            f"longest_path_exact enumerates simple paths; n <= {limit} required"
        )
    size = 1 << n
    nbrs = []
    for m in range(size):
        o = t.outmap_of_mask(m)
        nbrs.append([m ^ (1 << j) for j in range(n) if o[j] == MINUS])
    memo: dict = {}

    def rec(m: int, visited: int) -> int:
        key = (m, visited)
        hit = memo.get(key)
        if hit is not None:
            return hit
        best = 0
        for u in nbrs[m]:
            if not visited >> u & 1:
                cand = 1 + rec(u, visited | (1 << u))
                if cand > best:
                    best = cand
        memo[key] = best
        return best

    return max(rec(m, 1 << m) for m in range(size))


def longest_path_check(t: UsoTable) -> VerifyReport:
    """CLI-facing wrapper: passes iff the longest directed path is <= 2n."""
    length = longest_path_exact(t)
    bound = 2 * t.n
    witness = {"length": length, "bound": bound}
    return VerifyReport("longest-path", length <= bound, witness, 1 << t.n)


CHECKS = {
    "uso": is_uso,
    "unique-completion": unique_completion_holds,
    "holt-klee": holt_klee,
    "2uu": is_two_up_uniform,
    "2u": is_two_uniform,
    "local-uu": is_locally_up_uniform,
    "longest-path": longest_path_check,
}


def run_check(name: str, t: UsoTable) -> VerifyReport:
    if name not in CHECKS:
        raise ValueError(f"unknown check {name!r}; choose from {sorted(CHECKS)}")
    return CHECKS[name](t)
