"""Symmetry-reduced semidefinite program for projective codes.

The variables are orbit weights x_{sti}, one per orbit of pairs of
subspaces under the general linear group: s, t are the two dimensions and
i the intersection dimension.  Admissible orbits (the set ``omega``) are
the diagonal ones (s = t = i) plus those at distance >= d.  Positive
semidefiniteness of the underlying invariant kernel is equivalent to one
PSD condition per isotypic block k = 0..n/2, whose (s, t) entry is a
linear form in the x_{sti} with q-Hahn coefficients (``fk_entry_coeff``).
Dimension-distribution cut rows tighten the program and are on by default.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction

from .grassmann import grassmann_cap
from .optim import SdpBlock, SemidefiniteProgram, ipm_solve
from .optim.model import LinRow
from .projective_lp import CapFunction, CutSet, cap_delta, packing_radius
from .qcombinat import (
    Metric,
    ProjectiveParams,
    ball_slice_injection,
    ball_slice_subspace,
    qbinom,
)
from .qhahn import hahn_eval, hahn_family

__all__ = [
    "TripleIndex",
    "SdpBoundReport",
    "omega",
    "fk_entry_coeff",
    "sdp_model",
    "solve_sdp",
]


@dataclass(frozen=True)
class TripleIndex:
    """Canonical orbit index: dimensions s <= t, intersection dimension i.

    ``multiplicity`` counts the ordered orientations folded into the
    canonical one (2 off the diagonal s < t, else 1).
    """

    s: int
    t: int
    i: int

    @property
    def multiplicity(self) -> int:
        return 1 if self.s == self.t else 2

    @property
    def diagonal(self) -> bool:
        return self.s == self.t == self.i


def omega(n: int, d: int, metric: Metric = Metric.SUBSPACE) -> list[TripleIndex]:
    """All realizable canonical triples admissible at minimum distance d."""
    metric = Metric(metric)
    out = []
    for s in range(n + 1):
        for t in range(s, n + 1):
            for i in range(max(0, s + t - n), min(s, t) + 1):
                if s == t == i:
                    out.append(TripleIndex(s, t, i))
                    continue
                dist = s + t - 2 * i if metric == Metric.SUBSPACE else t - i
                if dist >= d:
                    out.append(TripleIndex(s, t, i))
    return out


def fk_entry_coeff(k: int, s: int, t: int, i: int, n: int, q: int = 2) -> Fraction:
    """Coefficient of x_{sti} in entry (s, t) of PSD block k.

    The overall positive 1/|X| factor of the block is dropped (PSD-ness is
    scale invariant and the raw entries would be astronomically small).
    """
    if not k <= s <= t <= n - k:
        raise ValueError(f"need k <= s <= t <= n-k, got k={k}, s={s}, t={t}, n={n}")
    if not max(0, s + t - n) <= i <= min(s, t):
        raise ValueError(f"triple ({s},{t},{i}) not realizable in dimension {n}")
    fam = hahn_family(n, s, t, q)
    qk = hahn_eval(fam[k], s - i)
    return (
        Fraction(
            qbinom(t - k, s - k, q),
            qbinom(n, t, q) * qbinom(t, s, q) * qbinom(n - 2 * k, s - k, q),
        )
        * Fraction(1, q ** (k * (s - k)))
        * qk
    )


def _aggregate_coeff(tri: TripleIndex, dim: int) -> int:
    """Weight of x_tri in the ordered-pair count at first dimension ``dim``."""
    if tri.s == tri.t:
        return 1 if tri.s == dim else 0
    return (tri.s == dim) + (tri.t == dim)


def sdp_model(
    p: ProjectiveParams,
    with_dim_cuts: bool = True,
    cap: CapFunction | None = None,
    extra_cuts: CutSet | None = None,
    with_packing_rows: bool = False,
) -> SemidefiniteProgram:
    """Assemble the reduced program for parameters ``p``.

    ``with_packing_rows`` additionally folds the ball-packing rows of the
    linear program into the SDP.  That combined program is known to behave
    badly numerically, so it is off by default and meant for export and
    experimentation only.
    """
    n, d, q = p.n, p.d, p.q
    if cap is None:
        cap = lambda nn, kk, dd: grassmann_cap(nn, kk, dd, q)
    om = omega(n, d, p.metric)
    index = {(tr.s, tr.t, tr.i): j for j, tr in enumerate(om)}
    names = [f"x_{tr.s}_{tr.t}_{tr.i}" for tr in om]
    objective = [Fraction(tr.multiplicity) for tr in om]
    normalization = (
        tuple(Fraction(1) if tr.diagonal else Fraction(0) for tr in om),
        Fraction(1),
    )
    blocks = []
    for k in range(n // 2 + 1):
        blk = SdpBlock(size=n - 2 * k + 1)
        for s in range(k, n - k + 1):
            for t in range(s, n - k + 1):
                for i in range(max(0, s + t - n), min(s, t) + 1):
                    j = index.get((s, t, i))
                    if j is None:
                        continue
                    blk.add(s - k, t - k, j, fk_entry_coeff(k, s, t, i, n, q))
        blocks.append(blk)
    cut_rows: list[LinRow] = []
    if with_dim_cuts:
        delta = cap_delta(p)
        for dim in range(n + 1):
            coeffs = tuple(Fraction(_aggregate_coeff(tr, dim)) for tr in om)
            cut_rows.append(
                LinRow(coeffs, "<=", Fraction(cap(n, dim, delta)), "dimension_cap")
            )
    if extra_cuts:
        for cut in extra_cuts.rows:
            coeffs = tuple(
                sum(
                    (cut.coeffs[dim] * _aggregate_coeff(tr, dim) for dim in range(n + 1)),
                    Fraction(0),
                )
                for tr in om
            )
            cut_rows.append(LinRow(coeffs, "<=", cut.rhs, cut.tag))
    if with_packing_rows:
        e = packing_radius(d)
        slice_fn = (
            ball_slice_subspace if p.metric == Metric.SUBSPACE else ball_slice_injection
        )
        for k in range(n + 1):
            coeffs = tuple(
                sum(
                    (
                        Fraction(slice_fn(n, dim, k, e, q)) * _aggregate_coeff(tr, dim)
                        for dim in range(n + 1)
                    ),
                    Fraction(0),
                )
                for tr in om
            )
            cut_rows.append(LinRow(coeffs, "<=", Fraction(qbinom(n, k, q)), "packing"))
    return SemidefiniteProgram(
        var_names=names,
        objective=objective,
        normalization=normalization,
        blocks=blocks,
        cut_rows=cut_rows,
    )


@dataclass
class SdpBoundReport:
    params: ProjectiveParams | None
    raw_value: float  # primal objective, maximize orientation
    dual_value: float  # safe bound side
    gap: float  # absolute duality gap
    rel_gap: float
    floored: int | None  # only set when the solve converged
    iterations: int
    status: str
    wall_ms: float = 0.0
    cuts_applied: tuple[str, ...] = ()


def solve_sdp(
    model: SemidefiniteProgram,
    tol: float = 1e-8,
    params: ProjectiveParams | None = None,
    max_iter: int = 200,
) -> SdpBoundReport:
    """Interior-point solve; the floor gets a 10*gap safety margin so the
    reported integer stays an upper bound up to solver accuracy."""
    t0 = time.perf_counter()
    res = ipm_solve(model.to_float_model(), tol=tol, max_iter=max_iter)
    wall_ms = (time.perf_counter() - t0) * 1e3
    floored = None
    if res.status == "optimal":
        # the dual side certifies the bound from above; one extra gap of
        # margin covers the residual solver error
        floored = math.floor(max(res.primal_value, res.dual_value) + res.gap + 1e-12)
    return SdpBoundReport(
        params=params,
        raw_value=res.primal_value,
        dual_value=res.dual_value,
        gap=res.gap,
        rel_gap=res.rel_gap,
        floored=floored,
        iterations=res.iterations,
        status=res.status,
        wall_ms=wall_ms,
        cuts_applied=tuple(sorted({r.tag for r in model.cut_rows})),
    )
