"""Exact q-combinatorics: Gaussian binomials, orbit counts, ball and slice volumes.

Everything here is computed in arbitrary-precision rational arithmetic:
plain ``int`` where the quantity is integer-valued, ``fractions.Fraction``
otherwise.  Model coefficients downstream are assembled from these exact
values and converted to floating point only at solver entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "Metric",
    "GrassmannParams",
    "ProjectiveParams",
    "qbinom",
    "bracket",
    "hahn_weight",
    "pair_count",
    "ball_size_subspace",
    "ball_slice_subspace",
    "ball_size_injection",
    "ball_slice_injection",
    "projective_size",
]


class Metric(str, Enum):
    """Distance on projective space: subspace or injection metric."""

    SUBSPACE = "subspace"
    INJECTION = "injection"


def _check_q(q: int) -> None:
    if q < 2:
        raise ValueError(f"field order must be >= 2, got {q}")


@dataclass(frozen=True)
class GrassmannParams:
    """Parameters of a constant-dimension code question: max size of a set of
    k-subspaces of F_q^n with pairwise subspace distance >= 2*delta."""

    n: int
    k: int
    delta: int
    q: int = 2

    def __post_init__(self) -> None:
        _check_q(self.q)
        if not 0 <= self.k <= self.n:
            raise ValueError(f"need 0 <= k <= n, got k={self.k}, n={self.n}")
        if self.delta < 1:
            raise ValueError(f"delta must be >= 1, got {self.delta}")

    @property
    def k_normalized(self) -> int:
        """Codeword dimension folded into [0, n/2] via orthogonal complements."""
        return min(self.k, self.n - self.k)


@dataclass(frozen=True)
class ProjectiveParams:
    """Parameters of a projective-code question: max size of a set of
    subspaces of F_q^n (any dimensions) with pairwise distance >= d."""

    n: int
    d: int
    q: int = 2
    metric: Metric = Metric.SUBSPACE

    def __post_init__(self) -> None:
        _check_q(self.q)
        if self.n < 1:
            raise ValueError(f"ambient dimension must be >= 1, got {self.n}")
        if not 1 <= self.d <= 2 * self.n:
            raise ValueError(f"need 1 <= d <= 2n, got d={self.d}, n={self.n}")
        # accept plain strings for convenience
        object.__setattr__(self, "metric", Metric(self.metric))


@lru_cache(maxsize=None)
def qbinom(n: int, k: int, q: int = 2) -> int:
    """Gaussian binomial coefficient: the number of k-subspaces of F_q^n.

    Out-of-range arguments (k < 0, k > n, n < 0) give 0, which lets the
    summation formulas below be written down verbatim.
    """
    _check_q(q)
    if k < 0 or n < 0 or k > n:
        return 0
    k = min(k, n - k)
    num = den = 1
    for j in range(k):
        num *= q ** (n - j) - 1
        den *= q ** (k - j) - 1
    assert num % den == 0
    return num // den


def bracket(u: int, q: int = 2) -> Fraction:
    """Bracket variable [u] = q^(1-u) * (q^u - 1)/(q - 1).

    This is the natural argument of the q-Hahn polynomials; it is fractional
    for u >= 2.
    """
    _check_q(q)
    if u < 0:
        raise ValueError(f"bracket argument must be >= 0, got {u}")
    if u == 0:
        return Fraction(0)
    return Fraction(q ** u - 1, q ** (u - 1) * (q - 1))


def hahn_weight(n: int, s: int, t: int, i: int, q: int = 2) -> int:
    """Orthogonality weight w(n,s,t;i): the number of t-subspaces meeting a
    fixed s-subspace in dimension s - i (for 0 <= s <= t <= n)."""
    if not 0 <= s <= t <= n:
        raise ValueError(f"need 0 <= s <= t <= n, got {(s, t, n)}")
    if not 0 <= i <= min(s, n - t):
        raise ValueError(f"weight index {i} outside [0, {min(s, n - t)}]")
    return qbinom(s, i, q) * qbinom(n - s, t - s + i, q) * q ** (i * (t - s + i))


def pair_count(n: int, s: int, t: int, i: int, q: int = 2) -> int:
    """Number of ordered pairs (x, y) of subspaces of F_q^n with
    dim x = s, dim y = t, dim(x ∩ y) = i.  Symmetric in (s, t);
    unrealizable triples give 0."""
    if not (0 <= s <= n and 0 <= t <= n):
        return 0
    lo, hi = max(0, s + t - n), min(s, t)
    if not lo <= i <= hi:
        return 0
    a, b = min(s, t), max(s, t)
    return qbinom(n, a, q) * hahn_weight(n, a, b, a - i, q)


def ball_size_subspace(n: int, i: int, e: int, q: int = 2) -> int:
    """Number of subspaces of F_q^n within subspace distance e of a fixed
    i-dimensional subspace."""
    total = 0
    for ell in range(e + 1):
        for j in range(ell + 1):
            total += qbinom(i, j, q) * qbinom(n - i, ell - j, q) * q ** (j * (ell - j))
    return total


def ball_slice_subspace(n: int, i: int, k: int, e: int, q: int = 2) -> int:
    """c(i,k,e): number of k-subspaces within subspace distance e of a fixed
    i-dimensional subspace.  Empty summation range gives 0."""
    lo = max(0, -((i + k - e) // -2))  # ceil((i+k-e)/2) clamped to 0
    total = 0
    for j in range(lo, min(k, i) + 1):
        total += qbinom(i, j, q) * qbinom(n - i, k - j, q) * q ** ((i - j) * (k - j))
    return total


def ball_size_injection(n: int, i: int, e: int, q: int = 2) -> int:
    """Number of subspaces of F_q^n within injection distance e of a fixed
    i-dimensional subspace."""
    total = 0
    for r in range(e + 1):
        total += q ** (r * r) * qbinom(i, r, q) * qbinom(n - i, r, q)
        for a in range(1, r + 1):
            total += q ** (r * (r - a)) * (
                qbinom(i, r, q) * qbinom(n - i, r - a, q)
                + qbinom(i, r - a, q) * qbinom(n - i, r, q)
            )
    return total


def ball_slice_injection(n: int, i: int, k: int, e: int, q: int = 2) -> int:
    """c_inj(i,k,e): number of k-subspaces within injection distance e of a
    fixed i-dimensional subspace."""
    a = abs(i - k)
    total = 0
    for r in range(e + 1):
        if r - a < 0:
            continue  # qbinom(*, negative) = 0
        if i >= k:
            total += q ** (r * (r - a)) * qbinom(i, r, q) * qbinom(n - i, r - a, q)
        else:
            total += q ** (r * (r - a)) * qbinom(i, r - a, q) * qbinom(n - i, r, q)
    return total


def projective_size(n: int, q: int = 2) -> int:
    """Total number of subspaces of F_q^n, all dimensions together."""
    return sum(qbinom(n, k, q) for k in range(n + 1))
