"""Brute-force ground truth over F_2 at tiny ambient dimension.

Subspaces are canonical reduced-row-echelon bases stored as tuples of row
bitmasks, so enumeration, distance computation, exhaustive maximum-code
search and the unreduced nonnegative-theta program can all be checked
against the closed-form machinery of the rest of the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .optim import SdpBlock, SemidefiniteProgram, ipm_solve
from .qcombinat import Metric

__all__ = [
    "Subspace",
    "enumerate_projective",
    "rank_f2",
    "dim_intersection",
    "distance",
    "conflict_edges",
    "max_code_exact",
    "theta_prime_program",
    "theta_prime_unreduced",
]

Subspace = tuple[int, ...]  # RREF rows, bit j = coordinate j; dim = len

_MAX_ENUM_N = 6
_MAX_SOLVE_N = 4


@lru_cache(maxsize=None)
def enumerate_projective(n: int) -> tuple[Subspace, ...]:
    """Every subspace of F_2^n exactly once, via canonical RREF bases."""
    if not 1 <= n <= _MAX_ENUM_N:
        raise ValueError(f"enumeration supported for 1 <= n <= {_MAX_ENUM_N}")
    out: list[Subspace] = [()]
    for k in range(1, n + 1):
        for pivots in combinations(range(n), k):
            free: list[list[int]] = []
            for r, piv in enumerate(pivots):
                free.append([c for c in range(piv + 1, n) if c not in pivots])
            total = sum(len(f) for f in free)
            for bits in range(1 << total):
                rows = []
                off = 0
                for r, piv in enumerate(pivots):
                    row = 1 << piv
                    for c in free[r]:
                        if (bits >> off) & 1:
                            row |= 1 << c
                        off += 1
                    rows.append(row)
                out.append(tuple(rows))
    return tuple(out)


def rank_f2(rows) -> int:
    basis: list[int] = []
    for v in rows:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def dim_intersection(u: Subspace, v: Subspace) -> int:
    return len(u) + len(v) - rank_f2(u + v)


def distance(u: Subspace, v: Subspace, metric: Metric = Metric.SUBSPACE) -> int:
    inter = dim_intersection(u, v)
    if Metric(metric) == Metric.SUBSPACE:
        return len(u) + len(v) - 2 * inter
    return max(len(u), len(v)) - inter


def conflict_edges(
    spaces, d: int, metric: Metric = Metric.SUBSPACE
) -> list[tuple[int, int]]:
    """Pairs closer than d (and distinct): the edges whose independent sets
    are exactly the codes of minimum distance >= d."""
    edges = []
    for a in range(len(spaces)):
        for b in range(a + 1, len(spaces)):
            if 0 < distance(spaces[a], spaces[b], metric) < d:
                edges.append((a, b))
    return edges


def max_code_exact(
    n: int, d: int, metric: Metric = Metric.SUBSPACE
) -> tuple[int, list[Subspace]]:
    """Exact maximum code size by branch-and-bound maximum independent set."""
    if n > _MAX_SOLVE_N:
        raise ValueError(f"exact search supported for n <= {_MAX_SOLVE_N}")
    spaces = enumerate_projective(n)
    nv = len(spaces)
    adj = [0] * nv
    for a, b in conflict_edges(spaces, d, metric):
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    best_size = 0
    best_set = 0

    def expand(cand: int, cur: int, cur_size: int) -> None:
        nonlocal best_size, best_set
        if cur_size + cand.bit_count() <= best_size:
            return
        if cand == 0:
            best_size, best_set = cur_size, cur
            return
        v = (cand & -cand).bit_length() - 1
        expand(cand & ~adj[v] & ~(1 << v), cur | (1 << v), cur_size + 1)
        # only worth excluding v if the bound still allows improvement
        expand(cand & ~(1 << v), cur, cur_size)

    expand((1 << nv) - 1, 0, 0)
    witness = [spaces[a] for a in range(nv) if (best_set >> a) & 1]
    return best_size, witness


def theta_prime_program(num_vertices: int, edges) -> SemidefiniteProgram:
    """Nonnegative-theta primal on an explicit graph.

    maximize sum of all kernel entries over PSD, entrywise-nonnegative
    kernels with unit trace and zeros on edges.  Variables: one per vertex
    (diagonal entry) plus one per non-edge pair, each used symmetrically.
    """
    edge_set = {(min(a, b), max(a, b)) for a, b in edges}
    pairs = [
        (a, b)
        for a in range(num_vertices)
        for b in range(a + 1, num_vertices)
        if (a, b) not in edge_set
    ]
    names = [f"d{v}" for v in range(num_vertices)] + [f"p{a}_{b}" for a, b in pairs]
    objective = [Fraction(1)] * num_vertices + [Fraction(2)] * len(pairs)
    normalization = (
        tuple([Fraction(1)] * num_vertices + [Fraction(0)] * len(pairs)),
        Fraction(1),
    )
    block = SdpBlock(size=num_vertices)
    for v in range(num_vertices):
        block.add(v, v, v, Fraction(1))
    for j, (a, b) in enumerate(pairs):
        block.add(a, b, num_vertices + j, Fraction(1))
    return SemidefiniteProgram(
        var_names=names,
        objective=objective,
        normalization=normalization,
        blocks=[block],
    )


def theta_prime_unreduced(
    n: int, d: int, metric: Metric = Metric.SUBSPACE, tol: float = 1e-8
) -> float:
    """Solve the full |X| x |X| program on the projective conflict graph."""
    if n > _MAX_SOLVE_N:
        raise ValueError(
            f"unreduced program supported for n <= {_MAX_SOLVE_N} "
            "(the matrix side grows like the number of subspaces)"
        )
    spaces = enumerate_projective(n)
    program = theta_prime_program(len(spaces), conflict_edges(spaces, d, metric))
    res = ipm_solve(program.to_float_model(), tol=tol)
    if res.status != "optimal":
        raise RuntimeError(f"unreduced solve failed: {res.status} {res.message}")
    return res.primal_value
