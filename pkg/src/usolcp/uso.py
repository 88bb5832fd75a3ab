"""Orientation oracles and tabulated cube orientations.

An outmap assigns each coordinate of a vertex a sign: '-' means the edge
leaves the vertex along that coordinate, '+' means it enters.  Signs are
stored as ints (-1 / +1); text form is the corresponding '-'/'+' string.

Oracles map vertices to outmaps.  The algebraic oracle reads signs off
exact basis solutions of an LCP instance; the Morris family also has a
two-state transducer oracle, which is the reference implementation (the
algebraic route exists to validate it).  Combinators reverse coordinates,
restrict to subcubes, or relabel antipodally.  Oracles memoize per
instance, and the memo size doubles as the distinct-evaluation count that
verifiers and experiments report.

Table file format: line 1 is n, then 2^n lines "bitstring signstring"
(e.g. "101 +--"), leftmost character = coordinate 1, vertices in
lexicographic order.
"""

from __future__ import annotations

from fractions import Fraction

from . import lcp
from .cube import (
    Subcube,
    Vertex,
    all_vertices,
    check_vertex,
    coord_set,
    pack,
    unpack,
    vertex_from_string,
    vertex_to_string,
)
from .lcp import DegenerateInstanceError, LcpInstance, basis_of_vertex

MINUS = -1
PLUS = 1

TABLE_CAP = 20

Outmap = tuple


class InconsistentOrientationError(ValueError):
    """Two endpoints of an edge claim the same direction for it."""

    def __init__(self, v: Vertex, coord: int):
        super().__init__(
            f"malformed orientation: edge at {vertex_to_string(v)} in coordinate "
            f"{coord} has equal signs on both endpoints"
        )
        self.vertex = v
        self.coord = coord


def outmap_to_string(o: Outmap) -> str:
    return "".join("-" if s == MINUS else "+" for s in o)


def outmap_from_string(s: str) -> Outmap:
    if any(c not in "+-" for c in s):
        raise ValueError(f"outmap string must be over '+'/'-', got {s!r}")
    return tuple(MINUS if c == "-" else PLUS for c in s)


class OrientationOracle:
    """Vertex-evaluation interface with per-instance memoization."""

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("dimension must be >= 0")
        self.n = n
        self._memo: dict = {}

    def outmap(self, v: Vertex) -> Outmap:
        o = self._memo.get(v)
        if o is None:
            if len(v) != self.n:
                raise ValueError(f"vertex has dimension {len(v)}, oracle expects {self.n}")
            if self.n:
                check_vertex(v)
            o = self._evaluate(v)
            self._memo[v] = o
        return o

    @property
    def evaluations(self) -> int:
        """Number of distinct vertices evaluated so far."""
        return len(self._memo)

    def _evaluate(self, v: Vertex) -> Outmap:
        raise NotImplementedError


def plcp_outmap(inst: LcpInstance, v: Vertex) -> Outmap:
    """Signs of the basis solution at the basis of v: '-' where negative."""
    b = basis_of_vertex(v)
    x = lcp.basis_solution(inst, b)
    signs = []
    for i, xi in enumerate(x):
        if xi == 0:
            raise DegenerateInstanceError(b, i + 1)
        signs.append(MINUS if xi < 0 else PLUS)
    return tuple(signs)


class PlcpOracle(OrientationOracle):
    """Orientation induced by an LCP instance with a P-matrix."""

    def __init__(self, inst: LcpInstance):
        super().__init__(inst.n)
        self.instance = inst

    def _evaluate(self, v: Vertex) -> Outmap:
        return plcp_outmap(self.instance, v)


def morris_instance(n: int) -> LcpInstance:
    """The cyclic worst-case family: unit diagonal, 2 on the superdiagonal
    and in the bottom-left corner, right-hand side all -1.  Odd n only."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be an odd integer >= 3, got {n}")
    zero, one, two = Fraction(0), Fraction(1), Fraction(2)
    rows = []
    for i in range(n):
        row = [zero] * n
        row[i] = one
        if i + 1 < n:
            row[i + 1] = two
        rows.append(row)
    rows[n - 1][0] = two
    q = tuple(Fraction(-1) for _ in range(n))
    return LcpInstance(n, tuple(tuple(r) for r in rows), q)


def morris_outmap(n: int, v: Vertex, zero_coord: int | None = None) -> Outmap:
    """Transducer evaluation of the Morris orientation at v.

    The all-ones vertex is the sink.  Otherwise pick a coordinate i with
    v_i = 0 and feed v_{i-1}, v_{i-2}, ..., v_1, v_n, ..., v_i to a
    two-state transducer started in state S:

        S reading 1 -> emit '+', go to T      T reading 1 -> emit '-', go to S
        S reading 0 -> emit '-', stay in S    T reading 0 -> emit '+', go to S

    The emitted sign for input bit v_j is the sign at coordinate j.  The
    choice of i does not matter; `zero_coord` pins it for testing that.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"n must be an odd integer >= 3, got {n}")
    if len(v) != n:
        raise ValueError("vertex dimension mismatch")
    check_vertex(v)
    if all(v):
        return (PLUS,) * n
    if zero_coord is None:
        i = next(j + 1 for j in range(n) if v[j] == 0)
    else:
        i = zero_coord
        if not 1 <= i <= n or v[i - 1] != 0:
            raise ValueError(f"coordinate {i} is not a zero coordinate of {v}")
    out = [0] * n
    in_t = False
    p = (i - 2) % n  # 0-based position of coordinate i-1 (cyclically)
    for _ in range(n):
        bit = v[p]
        if in_t:
            out[p] = MINUS if bit else PLUS
            in_t = False
        else:
            if bit:
                out[p] = PLUS
                in_t = True
            else:
                out[p] = MINUS
        p = (p - 1) % n
    return tuple(out)


class MorrisOracle(OrientationOracle):
    """Reference transducer oracle for the Morris orientations."""

    def __init__(self, n: int):
        if n < 3 or n % 2 == 0:
            raise ValueError(f"n must be an odd integer >= 3, got {n}")
        super().__init__(n)

    def _evaluate(self, v: Vertex) -> Outmap:
        return morris_outmap(self.n, v)


class UniformOracle(OrientationOracle):
    """All edges oriented from bit 0 to bit 1; sink at the all-ones vertex."""

    def _evaluate(self, v: Vertex) -> Outmap:
        return tuple(MINUS if b == 0 else PLUS for b in v)


def uniform(n: int) -> UniformOracle:
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return UniformOracle(n)


class ReorientedOracle(OrientationOracle):
    """Base oracle with all edges in coordinates F reversed."""

    def __init__(self, base: OrientationOracle, flip_coords):
        super().__init__(base.n)
        self.base = base
        self.flip_coords = coord_set(flip_coords, base.n)

    def _evaluate(self, v: Vertex) -> Outmap:
        o = self.base.outmap(v)
        return tuple(-s if j + 1 in self.flip_coords else s for j, s in enumerate(o))


def reorient(o: OrientationOracle, flip_coords) -> ReorientedOracle:
    return ReorientedOracle(o, flip_coords)


class RestrictedOracle(OrientationOracle):
    """Base oracle restricted to a subcube, free coordinates re-indexed 1..k
    in increasing order of the parent coordinates."""

    def __init__(self, base: OrientationOracle, sub: Subcube):
        if sub.ambient_dimension != base.n:
            raise ValueError("subcube dimension mismatch")
        super().__init__(sub.dimension)
        self.base = base
        self.sub = sub
        self._free = sorted(sub.free)

    def _evaluate(self, v: Vertex) -> Outmap:
        parent = list(self.sub.base)
        for idx, j in enumerate(self._free):
            parent[j - 1] = v[idx]
        o = self.base.outmap(tuple(parent))
        return tuple(o[j - 1] for j in self._free)


def restrict(o: OrientationOracle, sub: Subcube) -> RestrictedOracle:
    return RestrictedOracle(o, sub)


class AntipodalOracle(OrientationOracle):
    """Vertex labels complemented: outmap(v) = base outmap of the antipode."""

    def __init__(self, base: OrientationOracle):
        super().__init__(base.n)
        self.base = base

    def _evaluate(self, v: Vertex) -> Outmap:
        return self.base.outmap(tuple(1 - b for b in v))


def antipodal_relabel(o: OrientationOracle) -> AntipodalOracle:
    return AntipodalOracle(o)


class UsoTable:
    """Materialized orientation: one outmap per vertex, edge-consistent."""

    def __init__(self, n: int, signs, check: bool = True):
        if not 1 <= n <= TABLE_CAP:
            raise ValueError(f"table dimension must be in 1..{TABLE_CAP}, got {n}")
        signs = tuple(tuple(o) for o in signs)
        if len(signs) != 1 << n or any(len(o) != n for o in signs):
            raise ValueError("table must hold 2^n outmaps of length n")
        self.n = n
        self.signs = signs
        if check:
            self.check_consistency()

    def check_consistency(self) -> None:
        n = self.n
        for mask in range(1 << n):
            o = self.signs[mask]
            for j in range(n):
                if not mask >> j & 1:
                    if o[j] == self.signs[mask | (1 << j)][j]:
                        raise InconsistentOrientationError(unpack(mask, n), j + 1)

    def outmap(self, v: Vertex) -> Outmap:
        return self.signs[pack(v)]

    def outmap_of_mask(self, mask: int) -> Outmap:
        return self.signs[mask]

    def vertices(self):
        return all_vertices(self.n)

    def items(self):
        for v in all_vertices(self.n):
            yield v, self.signs[pack(v)]

    def global_sink(self) -> Vertex | None:
        hits = [v for v, o in self.items() if all(s == PLUS for s in o)]
        return hits[0] if len(hits) == 1 else None

    def global_source(self) -> Vertex | None:
        hits = [v for v, o in self.items() if all(s == MINUS for s in o)]
        return hits[0] if len(hits) == 1 else None

    def reoriented(self, flip_coords) -> "UsoTable":
        f = coord_set(flip_coords, self.n)
        signs = [
            tuple(-s if j + 1 in f else s for j, s in enumerate(o)) for o in self.signs
        ]
        return UsoTable(self.n, signs, check=False)

    def as_oracle(self) -> "TableOracle":
        return TableOracle(self)

    def __eq__(self, other):
        return (
            isinstance(other, UsoTable)
            and self.n == other.n
            and self.signs == other.signs
        )

    def __hash__(self):
        return hash((self.n, self.signs))


class TableOracle(OrientationOracle):
    def __init__(self, table: UsoTable):
        super().__init__(table.n)
        self.table = table

    def _evaluate(self, v: Vertex) -> Outmap:
        return self.table.outmap(v)


def tabulate(o: OrientationOracle, cap: int = TABLE_CAP) -> UsoTable:
    """Evaluate every vertex and validate edge consistency."""
    if o.n > cap:
        raise ValueError(f"tabulate needs n <= {cap}, got {o.n}")
    signs = [None] * (1 << o.n)
    for v in all_vertices(o.n):
        signs[pack(v)] = o.outmap(v)
    return UsoTable(o.n, signs)


def write_table(t: UsoTable, path) -> None:
    with open(path, "w") as f:
        f.write(f"{t.n}\n")
        for v, o in t.items():
            f.write(f"{vertex_to_string(v)} {outmap_to_string(o)}\n")


def read_table(path) -> UsoTable:
    with open(path) as f:
        lines = [ln.strip() for ln in f if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty table file")
    try:
        n = int(lines[0])
    except ValueError as e:
        raise ValueError(f"{path}: first line must be the dimension") from e
    if len(lines) != 1 + (1 << n):
        raise ValueError(f"{path}: expected {1 << n} vertex lines, found {len(lines) - 1}")
    signs = [None] * (1 << n)
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"{path}: bad line {ln!r}")
        v = vertex_from_string(parts[0])
        o = outmap_from_string(parts[1])
        if len(v) != n or len(o) != n:
            raise ValueError(f"{path}: wrong width on line {ln!r}")
        m = pack(v)
        if m in seen:
            raise ValueError(f"{path}: duplicate vertex {parts[0]}")
        seen.add(m)
        signs[m] = o
    return UsoTable(n, signs)


def morris_table(n: int) -> UsoTable:
    return tabulate(MorrisOracle(n))
