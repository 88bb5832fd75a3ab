"""Bit-vector combinatorics of the n-cube.

A vertex of the n-cube is a tuple of n bits.  Coordinates are numbered
1..n throughout the public API; coordinate 1 is the leftmost bit, and the
text form of a vertex is the corresponding string of '0'/'1' characters.
Packed-integer helpers exist for hot paths, with bit j-1 holding
coordinate j; they are a representation detail, not part of the contract.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Vertex = tuple
CoordSet = frozenset


def check_vertex(v: Vertex) -> None:
    if len(v) < 1:
        raise ValueError("vertex must have dimension >= 1")
    for b in v:
        if b not in (0, 1):
            raise ValueError(f"vertex bits must be 0 or 1, got {v!r}")


def coord_set(coords: Iterable[int], n: int) -> CoordSet:
    """Normalize an iterable of 1-based coordinates, range-checking against n."""
    s = frozenset(coords)
    for j in s:
        if not isinstance(j, int) or not 1 <= j <= n:
            raise ValueError(f"coordinate {j!r} out of range 1..{n}")
    return s


def flip(v: Vertex, coords: Iterable[int]) -> Vertex:
    """Flip the bits of v at the given 1-based coordinates.

    flip(flip(v, I), I) == v for any coordinate set I.
    """
    s = coord_set(coords, len(v))
    return tuple(1 - b if j + 1 in s else b for j, b in enumerate(v))


def flip_one(v: Vertex, coord: int) -> Vertex:
    """Flip a single 1-based coordinate (no set construction)."""
    i = coord - 1
    return v[:i] + (1 - v[i],) + v[i + 1:]


def cyclic_shift(v: Vertex, s: int) -> Vertex:
    """Rotate coordinates: input coordinate j lands at ((j+s-1) mod n)+1."""
    n = len(v)
    out = [0] * n
    for j in range(n):
        out[(j + s) % n] = v[j]
    return tuple(out)


@dataclass(frozen=True)
class Subcube:
    """All vertices reachable from `base` by flipping subsets of `free`.

    The stored base is canonical: its bits at free coordinates are zeroed,
    so equal vertex sets compare equal.
    """

    base: Vertex
    free: CoordSet

    def __post_init__(self):
        check_vertex(self.base)
        free = coord_set(self.free, len(self.base))
        base = tuple(0 if j + 1 in free else b for j, b in enumerate(self.base))
        object.__setattr__(self, "free", free)
        object.__setattr__(self, "base", base)

    @property
    def ambient_dimension(self) -> int:
        return len(self.base)

    @property
    def dimension(self) -> int:
        return len(self.free)

    def vertices(self) -> Iterator[Vertex]:
        """Yield the 2^dimension vertices, free coordinates counted up in
        ascending-coordinate binary order."""
        fr = sorted(self.free)
        base = list(self.base)
        for mask in range(1 << len(fr)):
            w = list(base)
            for idx, j in enumerate(fr):
                if mask >> idx & 1:
                    w[j - 1] = 1
            yield tuple(w)

    def contains(self, v: Vertex) -> bool:
        return len(v) == len(self.base) and all(
            v[j] == self.base[j] for j in range(len(v)) if j + 1 not in self.free
        )


def enumerate_subcubes(n: int) -> Iterator[Subcube]:
    """Yield every subcube of the n-cube exactly once (3^n in total).

    Each coordinate is fixed at 0, fixed at 1, or free.  Order: ascending
    free-coordinate mask, then ascending assignment of the fixed bits.
    """
    if n < 1:
        raise ValueError("dimension must be >= 1")
    for free_mask in range(1 << n):
        fixed = [j for j in range(n) if not free_mask >> j & 1]
        free = frozenset(j + 1 for j in range(n) if free_mask >> j & 1)
        for bits in range(1 << len(fixed)):
            base = [0] * n
            for idx, j in enumerate(fixed):
                base[j] = bits >> idx & 1
            yield Subcube(tuple(base), free)


def pack(v: Vertex) -> int:
    """Pack a vertex into an int; bit j-1 holds coordinate j."""
    m = 0
    for j, b in enumerate(v):
        if b:
            m |= 1 << j
    return m


def unpack(mask: int, n: int) -> Vertex:
    return tuple(mask >> j & 1 for j in range(n))


def vertex_to_string(v: Vertex) -> str:
    return "".join(str(b) for b in v)


def vertex_from_string(s: str) -> Vertex:
    if not s or any(c not in "01" for c in s):
        raise ValueError(f"vertex string must be nonempty over '0'/'1', got {s!r}")
    return tuple(int(c) for c in s)


def all_vertices(n: int) -> Iterator[Vertex]:
    """All 2^n vertices in lexicographic order of their text form."""
    for k in range(1 << n):
        yield vertex_from_string(format(k, f"0{n}b"))


def zeros(n: int) -> Vertex:
    return (0,) * n


def ones(n: int) -> Vertex:
    return (1,) * n


def weight(v: Vertex) -> int:
    return sum(v)


def hamming(u: Vertex, v: Vertex) -> int:
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum(a != b for a, b in zip(u, v))
