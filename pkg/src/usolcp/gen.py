"""Seeded generators: matrix families, right-hand sides, orientation tables.

Everything is a pure function of (parameters, seed) via the splitmix64
stream, so identical requests reproduce identical artifacts on any
platform.  Class guarantees (K-matrix, P-matrix, nondegeneracy) are by
construction where possible and validated by the exact predicates in the
tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import lcp
from .exact import Matrix, Vector, identity
from .lcp import LcpInstance, principal_pivot_transform, ppt_companion_rhs
from .rng import Prng, derive_seed
from .uso import UsoTable, morris_instance

FAMILIES = ("morris", "random-k", "random-p", "uniform", "random-orientation")


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int
    seed: int = 0
    max_entry: int = 4

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {FAMILIES}")
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.max_entry < 1:
            raise ValueError("entry range must be nonempty")


def gen_k_matrix(n: int, seed: int, max_offdiag: int = 4, max_margin: int = 3) -> Matrix:
    """Strictly diagonally dominant matrix with nonpositive off-diagonal
    entries and positive diagonal; dominance makes it a K-matrix."""
    p = Prng(seed)
    rows = []
    for i in range(n):
        row = [Fraction(0)] * n
        total = 0
        for j in range(n):
            if j != i:
                e = p.below(max_offdiag + 1)
                row[j] = Fraction(-e)
                total += e
        row[i] = Fraction(total + 1 + p.below(max_margin))
        rows.append(tuple(row))
    return tuple(rows)


def gen_p_matrix(n: int, seed: int, strategy: str = "gram", max_entry: int = 3) -> Matrix:
    """P-matrix by construction.

    gram: G G^T + I for a random integer G (symmetric positive definite).
    k-ppt: principal pivot transform of a random K-matrix on a random
    index set (reaches non-symmetric P-matrices).
    """
    if strategy == "gram":
        p = Prng(seed)
        g = [[p.randint(-max_entry, max_entry) for _ in range(n)] for _ in range(n)]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                x = sum(g[i][l] * g[j][l] for l in range(n))
                row.append(Fraction(x + 1 if i == j else x))
            rows.append(tuple(row))
        return tuple(rows)
    if strategy == "k-ppt":
        k = gen_k_matrix(n, derive_seed(seed, 0), max_offdiag=max_entry)
        alpha = Prng(derive_seed(seed, 1)).subset(n)
        return principal_pivot_transform(k, alpha)
    raise ValueError(f"unknown strategy {strategy!r}; use 'gram' or 'k-ppt'")


def gen_q(
    m: Matrix,
    n: int,
    seed: int,
    max_entry: int = 9,
    max_attempts: int = 500,
    limit: int = lcp.EXHAUSTIVE_LIMIT,
) -> Vector:
    """Nonzero integer right-hand side, resampled until nondegenerate.

    Above the exhaustive-check cap the candidate is returned after the
    entry-level screen only; downstream sign evaluation rejects lazily.
    """
    p = Prng(seed)
    for _ in range(max_attempts):
        q = tuple(
            Fraction(p.choice([x for x in range(-max_entry, max_entry + 1) if x != 0]))
            for _ in range(n)
        )
        inst = LcpInstance(n, m, q)
        if n > limit:
            return q
        try:
            if lcp.is_nondegenerate(inst, limit=limit):
                return q
        except lcp.SingularBasisError as e:
            raise GenerationError(f"matrix is not a P-matrix: {e}") from e
    raise GenerationError(
        f"no nondegenerate right-hand side found in {max_attempts} attempts"
    )


def gen_instance(
    family: str, n: int, seed: int = 0, max_entry: int = 4
) -> LcpInstance:
    """Instance factory behind the CLI families (all but random-orientation)."""
    if family == "morris":
        return morris_instance(n)
    if family == "uniform":
        return LcpInstance(n, identity(n), tuple(Fraction(-1) for _ in range(n)))
    if family == "random-k":
        m = gen_k_matrix(n, derive_seed(seed, 10), max_offdiag=max_entry)
    elif family == "random-p":
        m = gen_p_matrix(n, derive_seed(seed, 11), strategy="gram", max_entry=max_entry)
    else:
        raise ValueError(f"family {family!r} does not define an LCP instance")
    q = gen_q(m, n, derive_seed(seed, 12))
    return LcpInstance(n, m, q)


def gen_ppt_instance(inst: LcpInstance, seed: int) -> tuple:
    """Principal-pivot-transformed companion of an instance.

    Picks a random nonempty index set alpha; the companion's orientation
    is the original with vertex labels XORed by alpha.  Returns
    (companion instance, alpha).
    """
    p = Prng(seed)
    alpha = p.subset(inst.n)
    while not alpha:
        alpha = p.subset(inst.n)
    m2 = principal_pivot_transform(inst.M, alpha)
    q2 = ppt_companion_rhs(inst, alpha)
    return LcpInstance(inst.n, m2, q2), alpha


def gen_random_orientation(n: int, seed: int) -> UsoTable:
    """Fair-coin orientation of every edge (rarely a USO; negative control)."""
    if not 1 <= n <= 20:
        raise ValueError("random orientation tables need 1 <= n <= 20")
    p = Prng(seed)
    signs = [[0] * n for _ in range(1 << n)]
    for m in range(1 << n):
        for j in range(n):
            if not m >> j & 1:
                other = m | (1 << j)
                if p.below(2):
                    signs[m][j] = -1
                    signs[other][j] = +1
                else:
                    signs[m][j] = +1
                    signs[other][j] = -1
    return UsoTable(n, [tuple(row) for row in signs])


def generate(spec: GenSpec):
    """Dispatch a GenSpec to the right generator (instance or table)."""
    if spec.family == "random-orientation":
        return gen_random_orientation(spec.n, spec.seed)
    return gen_instance(spec.family, spec.n, spec.seed, spec.max_entry)
