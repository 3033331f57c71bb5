"""Dense two-phase simplex over exact rationals (Bland's rule).

Model sizes here are tiny (tens of rows and columns), so the priorities are
exactness and a verified optimality certificate rather than speed.  Every
optimal solve returns dual multipliers and checks primal feasibility, dual
feasibility and strong duality in exact arithmetic before reporting.

A floating-point mode exists for speed comparisons; it skips certification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import LinearProgram

__all__ = ["SimplexResult", "simplex_solve"]


@dataclass
class SimplexResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | float | None = None
    x: list | None = None
    duals: list | None = None  # one multiplier per row, max-problem convention


def simplex_solve(lp: LinearProgram, arithmetic: str = "exact") -> SimplexResult:
    """Solve ``lp`` (nonnegative variables).  Exact mode certifies optimality."""
    if arithmetic not in ("exact", "float"):
        raise ValueError(f"unknown arithmetic {arithmetic!r}")
    exact = arithmetic == "exact"
    conv = Fraction if exact else float
    tol = Fraction(0) if exact else 1e-9

    n = lp.num_vars
    sign = 1 if lp.maximize else -1
    c = [sign * conv(v) for v in lp.objective]
    rows = []
    senses = []
    rhs = []
    for row in lp.rows:
        coeffs = [conv(v) for v in row.coeffs]
        b = conv(row.rhs)
        sense = row.sense
        if b < 0:  # keep rhs nonnegative for phase 1
            coeffs = [-v for v in coeffs]
            b = -b
            sense = {"<=": ">=", ">=": "<=", "==": "=="}[sense]
        rows.append(coeffs)
        senses.append(sense)
        rhs.append(b)
    m = len(rows)

    # column layout: structural | slack/surplus | artificial
    slack_col = [-1] * m
    art_col = [-1] * m
    ncols = n
    for i, s in enumerate(senses):
        if s in ("<=", ">="):
            slack_col[i] = ncols
            ncols += 1
    for i, s in enumerate(senses):
        if s in (">=", "=="):
            art_col[i] = ncols
            ncols += 1

    zero, one = conv(0), conv(1)
    T = [[zero] * (ncols + 1) for _ in range(m)]
    basis = [0] * m
    for i in range(m):
        for j, v in enumerate(rows[i]):
            T[i][j] = v
        if slack_col[i] >= 0:
            T[i][slack_col[i]] = one if senses[i] == "<=" else -one
        T[i][ncols] = rhs[i]
        if art_col[i] >= 0:
            T[i][art_col[i]] = one
            basis[i] = art_col[i]
        else:
            basis[i] = slack_col[i]

    artificials = frozenset(a for a in art_col if a >= 0)

    def pivot(pr: int, pc: int, obj: list) -> None:
        piv = T[pr][pc]
        T[pr] = [v / piv for v in T[pr]]
        prow = T[pr]
        for i in range(m):
            if i != pr and T[i][pc] != 0:
                f = T[i][pc]
                T[i] = [a - f * b for a, b in zip(T[i], prow)]
        if obj[pc] != 0:
            f = obj[pc]
            for j in range(ncols + 1):
                obj[j] -= f * prow[j]
        basis[pr] = pc

    def run(obj: list, banned: frozenset) -> str:
        # Bland's rule: smallest-index entering and leaving, guarantees
        # termination without any anti-cycling perturbation
        while True:
            pc = -1
            for j in range(ncols):
                if j not in banned and obj[j] < -tol:
                    pc = j
                    break
            if pc < 0:
                return "optimal"
            pr, best = -1, None
            for i in range(m):
                if T[i][pc] > tol:
                    ratio = T[i][ncols] / T[i][pc]
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[pr]
                    ):
                        pr, best = i, ratio
            if pr < 0:
                return "unbounded"
            pivot(pr, pc, obj)

    # phase 1: minimize sum of artificials (as reduced-cost row)
    if artificials:
        obj1 = [zero] * (ncols + 1)
        for a in artificials:
            obj1[a] = one
        for i in range(m):
            if basis[i] in artificials:
                for j in range(ncols + 1):
                    obj1[j] -= T[i][j]
        run(obj1, frozenset())
        if -obj1[ncols] > tol:
            return SimplexResult(status="infeasible")
        # drive remaining zero-level artificials out of the basis
        for i in range(m):
            if basis[i] in artificials:
                for j in range(ncols):
                    if j not in artificials and abs(T[i][j]) > tol:
                        pivot(i, j, obj1)
                        break

    # phase 2
    obj = [zero] * (ncols + 1)
    for j in range(n):
        obj[j] = -c[j]
    for i in range(m):
        if obj[basis[i]] != 0:
            f = obj[basis[i]]
            for j in range(ncols + 1):
                obj[j] -= f * T[i][j]
    status = run(obj, artificials)
    if status == "unbounded":
        return SimplexResult(status="unbounded")

    x = [zero] * ncols
    for i in range(m):
        x[basis[i]] = T[i][ncols]
    xs = x[:n]
    value = sum(ci * xi for ci, xi in zip(c, xs))

    # duals from reduced costs of the unit columns of each row
    duals = []
    for i in range(m):
        if senses[i] == "<=":
            y = obj[slack_col[i]]
        elif senses[i] == ">=":
            y = -obj[slack_col[i]]
        else:
            y = obj[art_col[i]]
        duals.append(y)

    if exact:
        _certify(c, rows, senses, rhs, xs, duals, value)

    # translate back to the caller's orientation; duals keep the
    # internal max-problem convention after rhs-sign normalization
    out_value = value if lp.maximize else -value
    return SimplexResult(status="optimal", value=out_value, x=xs, duals=duals)


def _certify(c, rows, senses, rhs, x, y, value) -> None:
    """Exact optimality certificate for max{c.x : rows, x >= 0}."""
    for xi in x:
        assert xi >= 0, "primal negativity"
    for coeffs, sense, b, yi in zip(rows, senses, rhs, y):
        lhs = sum(a * xi for a, xi in zip(coeffs, x))
        if sense == "<=":
            assert lhs <= b, "primal row violated"
            assert yi >= 0, "dual sign violated on <= row"
        elif sense == ">=":
            assert lhs >= b, "primal row violated"
            assert yi <= 0, "dual sign violated on >= row"
        else:
            assert lhs == b, "primal equality violated"
    for j, cj in enumerate(c):
        red = cj - sum(y[i] * rows[i][j] for i in range(len(rows)))
        assert red <= 0, "dual feasibility violated"
    dual_value = sum(yi * b for yi, b in zip(y, rhs))
    assert dual_value == value, "strong duality violated"
