"""Chebyshev polynomials of the second kind and their zero sets.

U_m is evaluated by the three-term recurrence.  The node set of U_{2n+1}
carries the antisymmetry alpha_{2n+2-k} = -alpha_k exactly by construction:
the right half of the node list is the mirrored negation of the left half,
and the middle node is literally 0.0.

The endpoint identity implemented here states, for an even polynomial q of
degree at most 2n (n even),

    q(1) = q(0) + 2 * sum_{k=1..n} (-1)^(k+1) q(alpha_k),

where alpha_k = cos(k*pi/(2n+2)).  ``endpoint_identity_residual`` returns the
absolute defect of this identity for a given coefficient vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInputError

__all__ = ["ChebNodeSet", "cheb_u", "cheb_nodes", "endpoint_identity_residual"]


def cheb_u(degree: int, x: float) -> float:
    """Evaluate U_degree(x) via U_0 = 1, U_1 = 2x, U_{m+1} = 2x*U_m - U_{m-1}."""
    if degree < 0:
        raise InvalidInputError(f"degree must be nonnegative, got {degree}")
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInputError(f"x must be finite, got {x}")
    if degree == 0:
        return 1.0
    prev, cur = 1.0, 2.0 * x
    for _ in range(degree - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


@dataclass(frozen=True)
class ChebNodeSet:
    """Zeros cos(k*pi/(2n+2)), k = 1..2n+1, of U_{2n+1}, strictly decreasing.

    ``n`` is the half-count parameter: the node list has 2n+1 entries, the
    middle one (index n, i.e. k = n+1) is exactly 0.0, and nodes[2n+1-k] is
    exactly -nodes[k-1].
    """

    n: int
    nodes: tuple[float, ...]

    def __post_init__(self):
        if self.n < 0 or self.n % 2 != 0:
            raise InvalidInputError(f"n must be an even nonnegative integer, got {self.n}")
        if len(self.nodes) != 2 * self.n + 1:
            raise InvalidInputError(
                f"expected {2 * self.n + 1} nodes for n={self.n}, got {len(self.nodes)}"
            )

    def node(self, k: int) -> float:
        """Return alpha_k, indexed k = 1..2n+1 as in the defining formula."""
        if not 1 <= k <= 2 * self.n + 1:
            raise InvalidInputError(f"k must be in 1..{2 * self.n + 1}, got {k}")
        return self.nodes[k - 1]

    @property
    def positive_nodes(self) -> tuple[float, ...]:
        """The first n nodes alpha_1 > ... > alpha_n > 0."""
        return self.nodes[: self.n]


def cheb_nodes(n: int) -> ChebNodeSet:
    """Construct the 2n+1 zeros of U_{2n+1} for even n >= 0.

    The left half is computed by cosine evaluation; the right half mirrors it
    with a sign flip so the antisymmetry holds bitwise.
    """
    if n < 0 or n % 2 != 0:
        raise InvalidInputError(f"n must be an even nonnegative integer, got {n}")
    half = [math.cos(k * math.pi / (2 * n + 2)) for k in range(1, n + 1)]
    nodes = tuple(half) + (0.0,) + tuple(-a for a in reversed(half))
    return ChebNodeSet(n=n, nodes=nodes)


def _even_part(coeffs: Sequence[float]) -> list[float]:
    """Validate that only even-degree coefficients are present and return them.

    ``coeffs`` is ascending: coeffs[i] multiplies x^i.  Trailing zeros are
    ignored for the degree check.
    """
    coeffs = [float(c) for c in coeffs]
    degree = 0
    for i, c in enumerate(coeffs):
        if c != 0.0:
            degree = i
    for i in range(1, degree + 1, 2):
        if coeffs[i] != 0.0:
            raise InvalidInputError(
                f"polynomial has an odd-degree term (coefficient {coeffs[i]} at x^{i})"
            )
    return coeffs[0 : degree + 1 : 2]


def _eval_even(even_coeffs: Sequence[float], x: float) -> float:
    # Horner in the variable x^2: enforces evenness, halves roundoff steps.
    u = x * x
    acc = 0.0
    for c in reversed(even_coeffs):
        acc = acc * u + c
    return acc


def endpoint_identity_residual(coeffs: Sequence[float], n: int) -> float:
    """Absolute defect of the alternating-node endpoint identity.

    ``coeffs`` are ascending coefficients of an even polynomial q with
    degree(q) <= 2n; odd-degree terms and degrees above 2n are rejected.
    Returns |q(1) - q(0) - 2*sum_{k=1..n} (-1)^(k+1) q(alpha_k)|, which is
    zero up to roundoff for every admissible q.
    """
    if n < 0 or n % 2 != 0:
        raise InvalidInputError(f"n must be an even nonnegative integer, got {n}")
    even = _even_part(coeffs)
    degree = 2 * (len(even) - 1)
    if degree > 2 * n:
        raise InvalidInputError(f"degree {degree} exceeds the admissible 2n = {2 * n}")
    alpha = cheb_nodes(n).positive_nodes
    terms = [(-1.0) ** (k + 1) * _eval_even(even, alpha[k - 1]) for k in range(1, n + 1)]
    alternating = 2.0 * math.fsum(terms)
    return abs(_eval_even(even, 1.0) - _eval_even(even, 0.0) - alternating)
