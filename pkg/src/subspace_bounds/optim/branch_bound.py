"""Best-first branch-and-bound over the exact LP relaxation.

All integer programs here have at most a few dozen variables and an
all-integer objective, so the bound ``floor(LP value)`` prunes hard and the
search closes in a handful of nodes.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .model import LinearProgram, LinRow
from .simplex import simplex_solve

__all__ = ["BnbResult", "branch_and_bound"]


@dataclass
class BnbResult:
    status: str  # "optimal" | "infeasible"
    value: Fraction | None = None
    x: list | None = None
    nodes: int = 0


def branch_and_bound(
    lp: LinearProgram, integer_vars=None, max_nodes: int = 200_000
) -> BnbResult:
    """Exact integer optimum of a (maximizing) LP via LP-relaxation search."""
    if not lp.maximize:
        raise ValueError("branch_and_bound expects a maximization program")
    if integer_vars is None:
        integer_vars = lp.integer_vars or frozenset(range(lp.num_vars))
    integral_obj = all(Fraction(cv).denominator == 1 for cv in lp.objective)

    def solve_with(extra: tuple[LinRow, ...]):
        sub = LinearProgram(
            var_names=lp.var_names,
            objective=list(lp.objective),
            rows=list(lp.rows) + list(extra),
            maximize=True,
        )
        return simplex_solve(sub, arithmetic="exact")

    best_val: Fraction | None = None
    best_x = None
    nodes = 0
    counter = itertools.count()
    root = solve_with(())
    if root.status == "infeasible":
        return BnbResult(status="infeasible")
    heap = [(-float(root.value), next(counter), root, ())]
    while heap:
        nodes += 1
        if nodes > max_nodes:
            raise RuntimeError("branch and bound node budget exceeded")
        _, _, res, extra = heapq.heappop(heap)
        bound = res.value
        if best_val is not None:
            limit = bound.__floor__() if integral_obj else bound
            if limit <= best_val:
                continue
        frac_var, frac_dist = -1, Fraction(0)
        for j in sorted(integer_vars):
            v = res.x[j]
            if v.denominator != 1:
                dist = min(v - v.__floor__(), v.__ceil__() - v)
                if dist > frac_dist:
                    frac_var, frac_dist = j, dist
        if frac_var < 0:
            if best_val is None or bound > best_val:
                best_val, best_x = bound, res.x
            continue
        v = res.x[frac_var]
        unit = [Fraction(0)] * lp.num_vars
        unit[frac_var] = Fraction(1)
        for sense, rhs in (("<=", v.__floor__()), (">=", v.__ceil__())):
            child_rows = extra + (LinRow(tuple(unit), sense, Fraction(rhs), "branch"),)
            child = solve_with(child_rows)
            if child.status != "optimal":
                continue
            if best_val is not None:
                limit = child.value.__floor__() if integral_obj else child.value
                if limit <= best_val:
                    continue
            heapq.heappush(heap, (-float(child.value), next(counter), child, child_rows))
    if best_val is None:
        return BnbResult(status="infeasible", nodes=nodes)
    return BnbResult(status="optimal", value=best_val, x=best_x, nodes=nodes)
