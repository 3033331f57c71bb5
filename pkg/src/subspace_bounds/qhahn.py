"""q-Hahn orthogonal polynomials, constructed exactly.

The family Q_0, ..., Q_L with L = min(s, n-t) is determined by three
properties: Q_l has degree l in the bracket variable [u], the family is
orthogonal under the discrete weights w(n,s,t;i) on the nodes u = 0..L,
and Q_l(0) = 1.  We build it by Gram-Schmidt over the monomials
1, [u], [u]^2, ... in exact rational arithmetic, so orthogonality and
normalization hold with no tolerance at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qcombinat import bracket, hahn_weight

__all__ = ["HahnPolynomial", "hahn_family", "hahn_eval", "q1_closed_form"]


@dataclass(frozen=True)
class HahnPolynomial:
    """One member Q_l(n,s,t; u), stored as coefficients of powers of [u]."""

    n: int
    s: int
    t: int
    ell: int
    q: int
    coeffs: tuple[Fraction, ...]  # c_0..c_ell, value = sum c_j * [u]^j

    def __call__(self, u: int) -> Fraction:
        return hahn_eval(self, u)


def _inner_product(p1, p2, nodes, weights) -> Fraction:
    total = Fraction(0)
    for z, w in zip(nodes, weights):
        v1 = _eval_at(p1, z)
        v2 = _eval_at(p2, z)
        total += w * v1 * v2
    return total


def _eval_at(coeffs, z: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


@lru_cache(maxsize=None)
def hahn_family(n: int, s: int, t: int, q: int = 2) -> tuple[HahnPolynomial, ...]:
    """All q-Hahn polynomials Q_0..Q_L for parameters (n, s, t), L = min(s, n-t)."""
    if not 0 <= s <= t <= n:
        raise ValueError(f"need 0 <= s <= t <= n, got {(s, t, n)}")
    L = min(s, n - t)
    nodes = [bracket(i, q) for i in range(L + 1)]
    weights = [Fraction(hahn_weight(n, s, t, i, q)) for i in range(L + 1)]

    family: list[tuple[Fraction, ...]] = []
    out: list[HahnPolynomial] = []
    for ell in range(L + 1):
        mono = [Fraction(0)] * ell + [Fraction(1)]
        p = list(mono)
        for prev in family:
            coef = _inner_product(mono, prev, nodes, weights) / _inner_product(
                prev, prev, nodes, weights
            )
            for j, pc in enumerate(prev):
                p[j] -= coef * pc
        # normalize so Q_ell(0) = 1; the value at u=0 is the constant term
        # (nonzero: zeros of discrete orthogonal polynomials lie strictly
        # inside the node range, and [0] = 0 is the smallest node)
        c0 = p[0]
        p = [c / c0 for c in p]
        family.append(tuple(p))
        out.append(HahnPolynomial(n=n, s=s, t=t, ell=ell, q=q, coeffs=tuple(p)))
    return tuple(out)


def hahn_eval(p: HahnPolynomial, u: int) -> Fraction:
    """Evaluate Q_l at integer argument u (exact)."""
    return _eval_at(p.coeffs, bracket(u, p.q))


def q1_closed_form(n: int, k: int, u: int, q: int = 2) -> Fraction:
    """Degree-one member for s = t = k in closed form:
    Q_1(u) = 1 - (q^n - 1)(1 - q^-u) / ((q^k - 1)(q^(n-k) - 1))."""
    num = (q ** n - 1) * (1 - Fraction(1, q ** u)) if u > 0 else Fraction(0)
    return 1 - Fraction(num, (q ** k - 1) * (q ** (n - k) - 1))
