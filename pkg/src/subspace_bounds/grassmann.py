"""Upper bounds for constant-dimension (Grassmann) codes.

Closed-form classical bounds, the recursive floor-chain bound, and the
Delsarte linear program, all over exact rationals.  Every routine first
folds k to min(k, n-k) (orthogonal complementation preserves the answer)
and returns the trivial bound 1 when delta exceeds the folded dimension,
since two distinct k-spaces are never further apart than 2*min(k, n-k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .optim import LinearProgram, simplex_solve
from .qcombinat import GrassmannParams, qbinom
from .qhahn import hahn_family, hahn_eval

__all__ = [
    "GrassmannBoundReport",
    "METHODS",
    "sphere_packing_bound",
    "singleton_bound",
    "anticode_bound",
    "johnson1_bound",
    "johnson2_chain_bound",
    "combined_bound",
    "delsarte_lp_bound",
    "grassmann_bounds",
    "best_grassmann_bound",
    "grassmann_cap",
]

METHODS = (
    "sphere_packing",
    "singleton",
    "anticode",
    "johnson1",
    "johnson2_chain",
    "combined",
    "delsarte_lp",
)


@dataclass
class GrassmannBoundReport:
    params: GrassmannParams
    method: str
    value: Fraction | None  # pre-floor bound; None when not applicable
    floored: int | None
    applicable: bool = True
    status: str = "ok"


def _fold(p: GrassmannParams) -> tuple[int, int, int, int]:
    return p.n, p.k_normalized, p.delta, p.q


def _trivial(p: GrassmannParams) -> bool:
    return p.delta > p.k_normalized


def sphere_packing_bound(p: GrassmannParams) -> Fraction:
    n, k, delta, q = _fold(p)
    if _trivial(p):
        return Fraction(1)
    ball = sum(
        qbinom(k, m, q) * qbinom(n - k, m, q) * q ** (m * m)
        for m in range((delta - 1) // 2 + 1)
    )
    return Fraction(qbinom(n, k, q), ball)


def singleton_bound(p: GrassmannParams) -> Fraction:
    n, k, delta, q = _fold(p)
    if _trivial(p):
        return Fraction(1)
    return Fraction(qbinom(n - delta + 1, k - delta + 1, q))


def anticode_bound(p: GrassmannParams) -> Fraction:
    n, k, delta, q = _fold(p)
    if _trivial(p):
        return Fraction(1)
    value = Fraction(1)
    for j in range(k - delta + 1):
        value *= Fraction(q ** (n - j) - 1, q ** (k - j) - 1)
    return value


def johnson1_bound(p: GrassmannParams) -> Fraction | None:
    """Absent (None) when the positivity precondition fails."""
    n, k, delta, q = _fold(p)
    if _trivial(p):
        return Fraction(1)
    den = (q ** k - 1) ** 2 - (q ** n - 1) * (q ** (k - delta) - 1)
    if den <= 0:
        return None
    return Fraction((q ** n - 1) * (q ** k - q ** (k - delta)), den)


def _floor_chain(n: int, k: int, delta: int, q: int, sharpen: bool) -> int:
    inner = (q ** (n - k + delta) - 1) // (q ** delta - 1)
    if sharpen and (n - k) % delta != 0:
        inner -= 1
    value = inner
    for j in range(delta + 1, k + 1):
        value = (Fraction(q ** (n - k + j) - 1, q ** j - 1) * value).__floor__()
    return int(value)


def johnson2_chain_bound(p: GrassmannParams) -> int:
    """Iterated second Johnson bound (floor chain, no sharpening)."""
    n, k, delta, q = _fold(p)
    if _trivial(p):
        return 1
    return _floor_chain(n, k, delta, q, sharpen=False)


def combined_bound(p: GrassmannParams) -> int:
    """Floor chain with the extra -1 on the innermost term whenever
    delta does not divide n - k; reduces to the exact spread count
    (q^n - 1)/(q^k - 1) when delta = k and k | n."""
    n, k, delta, q = _fold(p)
    if _trivial(p):
        return 1
    return _floor_chain(n, k, delta, q, sharpen=True)


def delsarte_lp_bound(
    p: GrassmannParams, arithmetic: str = "exact"
) -> GrassmannBoundReport:
    """Delsarte LP: minimize 1 + f_1 + ... + f_k over f >= 0 with
    1 + sum_i f_i Q_i(u) <= 0 for u = delta..k (zonal family s = t = k)."""
    n, k, delta, q = _fold(p)
    if _trivial(p):
        return GrassmannBoundReport(p, "delsarte_lp", Fraction(1), 1)
    fam = hahn_family(n, k, k, q)
    lp = LinearProgram(
        var_names=[f"f{i}" for i in range(1, k + 1)],
        objective=[Fraction(1)] * k,
        maximize=False,
    )
    for u in range(delta, k + 1):
        lp.add_row(
            [hahn_eval(fam[i], u) for i in range(1, k + 1)],
            "<=",
            Fraction(-1),
            tag=f"nonpositivity_u{u}",
        )
    res = simplex_solve(lp, arithmetic=arithmetic)
    if res.status != "optimal":
        return GrassmannBoundReport(
            p, "delsarte_lp", None, None, applicable=False, status="no_finite_bound"
        )
    value = 1 + res.value
    return GrassmannBoundReport(
        p, "delsarte_lp", Fraction(value), int(Fraction(value).__floor__())
    )


def grassmann_bounds(p: GrassmannParams, methods=METHODS) -> dict[str, GrassmannBoundReport]:
    out: dict[str, GrassmannBoundReport] = {}
    for method in methods:
        if method == "delsarte_lp":
            out[method] = delsarte_lp_bound(p)
            continue
        fn = {
            "sphere_packing": sphere_packing_bound,
            "singleton": singleton_bound,
            "anticode": anticode_bound,
            "johnson1": johnson1_bound,
            "johnson2_chain": johnson2_chain_bound,
            "combined": combined_bound,
        }[method]
        value = fn(p)
        if value is None:
            out[method] = GrassmannBoundReport(
                p, method, None, None, applicable=False, status="precondition_failed"
            )
        else:
            value = Fraction(value)
            out[method] = GrassmannBoundReport(p, method, value, int(value.__floor__()))
    return out


def best_grassmann_bound(
    p: GrassmannParams, methods=("combined",)
) -> GrassmannBoundReport:
    reports = grassmann_bounds(p, methods)
    applicable = [r for r in reports.values() if r.applicable]
    if not applicable:
        return GrassmannBoundReport(
            p, "best", None, None, applicable=False, status="no_finite_bound"
        )
    best = min(applicable, key=lambda r: r.floored)
    return GrassmannBoundReport(p, "best", best.value, best.floored)


def grassmann_cap(n: int, k: int, delta: int, q: int = 2) -> int:
    """Default per-dimension cap for the projective models (floor-chain bound)."""
    return combined_bound(GrassmannParams(n=n, k=k, delta=delta, q=q))
