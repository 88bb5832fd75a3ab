"""Linear complementarity instances and basis algebra.

An instance asks for w, z >= 0 with w - M z = q and w^T z = 0.  A basis
B subsets the coordinates; its matrix A_B takes column i from -M when
i is in B and from the identity otherwise.  When M is a P-matrix (all
principal minors positive) every A_B is invertible and the signs of
A_B^{-1} q drive everything downstream.

Instance file format (JSON):
    {"n": int, "M": [[rational-string, ...], ...], "q": [rational-string, ...]}
with rationals written as "a" or "a/b".
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from . import exact
from .cube import Vertex, coord_set
from .exact import Matrix, SingularMatrixError, Vector

EXHAUSTIVE_LIMIT = 12


class ExhaustiveLimitError(ValueError):
    """Predicate refused: the check enumerates 2^n objects and n is too big."""


class SingularBasisError(ValueError):
    """A basis matrix was singular, witnessing that M is not a P-matrix."""

    def __init__(self, basis: frozenset, pivot_column: int):
        b = sorted(basis)
        super().__init__(
            f"basis matrix for B={b} is singular at pivot column {pivot_column}; "
            "M is not a P-matrix"
        )
        self.basis = frozenset(basis)
        self.pivot_column = pivot_column


class DegenerateInstanceError(ValueError):
    """A basis solution had an exactly-zero coordinate, so no edge sign exists."""

    def __init__(self, basis: frozenset, coordinate: int):
        b = sorted(basis)
        super().__init__(
            f"degenerate right-hand side: (A_B^-1 q)_{coordinate} = 0 for B={b}"
        )
        self.basis = frozenset(basis)
        self.coordinate = coordinate


class NotASolutionError(ValueError):
    def __init__(self, coordinate: int):
        super().__init__(
            f"basis solution has negative coordinate {coordinate}; not an LCP solution"
        )
        self.coordinate = coordinate


@dataclass(frozen=True)
class LcpInstance:
    n: int
    M: Matrix
    q: Vector

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        m = exact.as_matrix(self.M)
        q = exact.as_vector(self.q)
        if len(m) != self.n or len(m[0]) != self.n:
            raise ValueError(f"M must be {self.n}x{self.n}")
        if len(q) != self.n:
            raise ValueError(f"q must have length {self.n}")
        object.__setattr__(self, "M", m)
        object.__setattr__(self, "q", q)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "M": [[exact.format_rational(x) for x in row] for row in self.M],
            "q": [exact.format_rational(x) for x in self.q],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "LcpInstance":
        try:
            n = int(d["n"])
            m = [[exact.parse_rational(x) for x in row] for row in d["M"]]
            q = [exact.parse_rational(x) for x in d["q"]]
        except (KeyError, TypeError, ValueError) as e:
            raise ValueError(f"malformed instance JSON: {e}") from e
        return cls(n, tuple(tuple(r) for r in m), tuple(q))


def save_instance(inst: LcpInstance, path) -> None:
    with open(path, "w") as f:
        json.dump(inst.to_json_dict(), f, indent=1)
        f.write("\n")


def load_instance(path) -> LcpInstance:
    with open(path) as f:
        return LcpInstance.from_json_dict(json.load(f))


@dataclass(frozen=True)
class LcpSolution:
    w: Vector
    z: Vector


def basis_of_vertex(v: Vertex) -> frozenset:
    """The canonical basis of a vertex: its set of 1-coordinates."""
    return frozenset(j + 1 for j, b in enumerate(v) if b)


def basis_matrix(inst: LcpInstance, basis: Iterable[int]) -> Matrix:
    """Column i is -M e_i for i in the basis, e_i otherwise."""
    b = coord_set(basis, inst.n)
    one, zero = Fraction(1), Fraction(0)
    rows = []
    for i in range(inst.n):
        row = []
        for j in range(inst.n):
            if j + 1 in b:
                row.append(-inst.M[i][j])
            else:
                row.append(one if i == j else zero)
        rows.append(tuple(row))
    return tuple(rows)


def basis_solution(inst: LcpInstance, basis: Iterable[int]) -> Vector:
    """Exact A_B^{-1} q; singularity is evidence that M is not a P-matrix."""
    b = coord_set(basis, inst.n)
    try:
        return exact.rat_solve(basis_matrix(inst, b), inst.q)
    except SingularMatrixError as e:
        raise SingularBasisError(b, e.pivot_column) from e


def extract_solution(inst: LcpInstance, basis: Iterable[int]) -> LcpSolution:
    """Read off (w, z) from a basis whose solution is componentwise >= 0."""
    b = coord_set(basis, inst.n)
    x = basis_solution(inst, b)
    for i, xi in enumerate(x):
        if xi < 0:
            raise NotASolutionError(i + 1)
    zero = Fraction(0)
    w = tuple(zero if i + 1 in b else x[i] for i in range(inst.n))
    z = tuple(x[i] if i + 1 in b else zero for i in range(inst.n))
    return LcpSolution(w, z)


def check_solution(inst: LcpInstance, sol: LcpSolution) -> bool:
    """Exact check of w - Mz = q, w,z >= 0, w^T z = 0."""
    if len(sol.w) != inst.n or len(sol.z) != inst.n:
        raise ValueError("solution dimension mismatch")
    w, z = exact.as_vector(sol.w), exact.as_vector(sol.z)
    if any(x < 0 for x in w) or any(x < 0 for x in z):
        return False
    if sum(wi * zi for wi, zi in zip(w, z)) != 0:
        return False
    mz = exact.mat_vec(inst.M, z)
    return all(wi - mzi == qi for wi, mzi, qi in zip(w, mz, inst.q))


def _require_square(m: Matrix) -> int:
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix must be square")
    return n


def is_p_matrix(m: Matrix, limit: int = EXHAUSTIVE_LIMIT) -> bool:
    """True iff all 2^n - 1 principal minors are positive (exact).

    Enumerates every principal submatrix, so it refuses n above `limit`.
    """
    m = exact.as_matrix(m)
    n = _require_square(m)
    if n > limit:
        raise ExhaustiveLimitError(
            f"is_p_matrix enumerates 2^{n} principal minors; raise limit={limit} to allow"
        )
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            sub = tuple(tuple(m[i][j] for j in idx) for i in idx)
            if exact.rat_det(sub) <= 0:
                return False
    return True


def is_k_matrix(m: Matrix, limit: int = EXHAUSTIVE_LIMIT) -> bool:
    """P-matrix with all off-diagonal entries <= 0."""
    m = exact.as_matrix(m)
    n = _require_square(m)
    for i in range(n):
        for j in range(n):
            if i != j and m[i][j] > 0:
                return False
    return is_p_matrix(m, limit)


def is_nondegenerate(inst: LcpInstance, limit: int = EXHAUSTIVE_LIMIT) -> bool:
    """True iff no basis solution has an exactly-zero coordinate."""
    if inst.n > limit:
        raise ExhaustiveLimitError(
            f"is_nondegenerate enumerates 2^{inst.n} bases; raise limit={limit} to allow"
        )
    coords = list(range(1, inst.n + 1))
    for size in range(inst.n + 1):
        for b in combinations(coords, size):
            if any(x == 0 for x in basis_solution(inst, b)):
                return False
    return True


def principal_pivot_transform(m: Matrix, alpha: Iterable[int]) -> Matrix:
    """Block pivot of M on the principal submatrix indexed by alpha.

    With the alpha block permuted first and M = [[A, B], [C, D]], the
    transform is [[A^-1, -A^-1 B], [C A^-1, D - C A^-1 B]], mapped back to
    the original index positions.  Applying it twice with the same alpha
    returns M.
    """
    m = exact.as_matrix(m)
    n = _require_square(m)
    a = coord_set(alpha, n)
    if not a:
        return m
    order = [j - 1 for j in sorted(a)] + [j for j in range(n) if j + 1 not in a]
    k = len(a)
    perm = [[m[order[i]][order[j]] for j in range(n)] for i in range(n)]
    blk_a = tuple(tuple(perm[i][j] for j in range(k)) for i in range(k))
    # A^{-1} column by column
    zero, one = Fraction(0), Fraction(1)
    inv_cols = [
        exact.rat_solve(blk_a, tuple(one if r == c else zero for r in range(k)))
        for c in range(k)
    ]
    ainv = [[inv_cols[c][r] for c in range(k)] for r in range(k)]
    out = [[zero] * n for _ in range(n)]
    for i in range(k):
        for j in range(k):
            out[i][j] = ainv[i][j]
    for i in range(k):
        for j in range(k, n):
            out[i][j] = -sum(ainv[i][l] * perm[l][j] for l in range(k))
    for i in range(k, n):
        for j in range(k):
            out[i][j] = sum(perm[i][l] * ainv[l][j] for l in range(k))
    for i in range(k, n):
        for j in range(k, n):
            out[i][j] = perm[i][j] + sum(perm[i][l] * out[l][j] for l in range(k))
    result = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            result[order[i]][order[j]] = out[i][j]
    return tuple(tuple(row) for row in result)


def ppt_companion_rhs(inst: LcpInstance, alpha: Iterable[int]) -> Vector:
    """Right-hand side pairing with principal_pivot_transform(M, alpha).

    For inst = (M, q), the instance (M', q') with M' the pivot transform
    and q' = A_alpha^{-1} q induces the orientation of inst with vertex
    labels XORed by alpha.
    """
    return basis_solution(inst, alpha)
