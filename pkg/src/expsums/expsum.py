"""Finite exponential sums g(t) = sum_j a_j * exp(i*lambda_j*t) and their analysis.

The central object is :class:`ExpSum`, an immutable list of complex
coefficients and exponents with strictly increasing real parts.  On top of it
this module provides evaluation (double precision with compensated summation,
or arbitrary precision via mpmath), termwise differentiation, the uniform
derivative bound sum_j |a_j|*|lambda_j|^m, vanishing-order detection at a
point, grid-plus-golden-section sup-norms over an interval, adaptive L1
norms, and membership tests for the coefficient/exponent growth class
|a_0| = 1, |a_j| <= M*j^mu, Re(lambda_j) >= j*delta.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import IO, NamedTuple, Optional, Sequence

import mpmath
import numpy as np
from mpmath import mp

from .errors import InvalidInputError, PrecisionError, UnsupportedInputError
from .quadrature import adaptive_gauss_legendre

__all__ = [
    "ExpSum",
    "Interval",
    "ClassParams",
    "Membership",
    "SupNormResult",
    "evaluate",
    "derivative",
    "derivative_sup_bound",
    "derivative_magnitudes",
    "vanishing_order",
    "sup_norm",
    "l1_norm",
    "class_membership",
    "to_json",
    "from_json",
    "write_scan_csv",
]

# Tolerance absorbing serialization roundoff in exact-value checks (|a_0| = 1,
# Re(lambda_0) = 0, gap comparisons).
EXACT_TOL = 1e-12

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ExpSum:
    """Coefficients a_0..a_n and exponents lambda_0..lambda_n of the sum.

    Exponents may be complex but must have strictly increasing real parts;
    the first real part may be 0.
    """

    coefficients: tuple[complex, ...]
    exponents: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        exps = tuple(complex(x) for x in self.exponents)
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "exponents", exps)
        if len(coeffs) != len(exps):
            raise InvalidInputError(
                f"{len(coeffs)} coefficients but {len(exps)} exponents"
            )
        if not coeffs:
            raise InvalidInputError("an exponential sum needs at least one term")
        for z in coeffs + exps:
            if not (math.isfinite(z.real) and math.isfinite(z.imag)):
                raise InvalidInputError("coefficients and exponents must be finite")
        re = [x.real for x in exps]
        if any(b <= a for a, b in zip(re, re[1:])):
            raise InvalidInputError("exponent real parts must be strictly increasing")

    def __len__(self) -> int:
        return len(self.coefficients)

    def __call__(self, t: float) -> complex:
        return evaluate(self, t)

    @property
    def has_real_exponents(self) -> bool:
        return all(x.imag == 0.0 for x in self.exponents)


def _real_exponents(g: ExpSum) -> np.ndarray:
    if not g.has_real_exponents:
        raise UnsupportedInputError(
            "operation requires real exponents; sum has nonzero imaginary parts"
        )
    return np.array([x.real for x in g.exponents])


@dataclass(frozen=True)
class Interval:
    """Interval [y, y+a] given by left endpoint ``y`` and positive length ``a``."""

    y: float
    a: float

    def __post_init__(self):
        if not (math.isfinite(self.y) and math.isfinite(self.a)):
            raise InvalidInputError("interval endpoints must be finite")
        if self.a <= 0:
            raise InvalidInputError(f"interval length must be positive, got {self.a}")

    @classmethod
    def from_endpoints(cls, lo: float, hi: float) -> "Interval":
        return cls(y=lo, a=hi - lo)

    @property
    def left(self) -> float:
        return self.y

    @property
    def right(self) -> float:
        return self.y + self.a

    @property
    def length(self) -> float:
        return self.a


@dataclass(frozen=True)
class ClassParams:
    """Growth-class parameters: |a_j| <= M*j^mu and Re(lambda_j) >= j*delta."""

    M: float
    mu: int
    delta: float

    def __post_init__(self):
        if self.M < 1:
            raise InvalidInputError(f"M must be >= 1, got {self.M}")
        if self.mu < 0 or int(self.mu) != self.mu:
            raise InvalidInputError(f"mu must be a nonnegative integer, got {self.mu}")
        if self.delta <= 0:
            raise InvalidInputError(f"delta must be positive, got {self.delta}")


def evaluate(g: ExpSum, t: float, dps: Optional[int] = None):
    """Evaluate g(t).

    With ``dps`` unset, terms are evaluated in double precision and combined
    with exactly rounded (fsum) summation of real and imaginary parts.  With
    ``dps`` set, everything is computed with mpmath at that many significant
    digits and an ``mpmath.mpc`` is returned.
    """
    if not math.isfinite(t):
        raise InvalidInputError(f"t must be finite, got {t}")
    if dps is None:
        terms = [a * cmath.exp(1j * lam * t) for a, lam in zip(g.coefficients, g.exponents)]
        return complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))
    with mp.workdps(dps):
        tt = mpmath.mpf(t)
        return mpmath.fsum(
            (mpmath.mpc(a) * mpmath.exp(1j * mpmath.mpc(lam) * tt)
             for a, lam in zip(g.coefficients, g.exponents)),
            absolute=False,
        )


def _values_on_grid(g: ExpSum, ts: np.ndarray) -> np.ndarray:
    """Vectorized g(ts) for real exponents; fixed term order for determinism."""
    lam = _real_exponents(g)
    acc = np.zeros(np.shape(ts), dtype=complex)
    for a, x in zip(g.coefficients, lam):
        acc = acc + a * np.exp(1j * x * np.asarray(ts, dtype=float))
    return acc


def derivative(g: ExpSum, m: int) -> ExpSum:
    """m-th derivative: coefficients become a_j*(i*lambda_j)^m, exponents unchanged."""
    if m < 0:
        raise InvalidInputError(f"derivative order must be nonnegative, got {m}")
    if m == 0:
        return g
    coeffs = tuple(a * (1j * lam) ** m for a, lam in zip(g.coefficients, g.exponents))
    return ExpSum(coefficients=coeffs, exponents=g.exponents)


def derivative_sup_bound(g: ExpSum, m: int) -> float:
    """Uniform bound sum_j |a_j|*|lambda_j|^m on |g^(m)| over the real line."""
    if m < 0:
        raise InvalidInputError(f"derivative order must be nonnegative, got {m}")
    lam = _real_exponents(g)
    if m == 0:
        return math.fsum(abs(a) for a in g.coefficients)
    return math.fsum(abs(a) * abs(x) ** m for a, x in zip(g.coefficients, lam))


def _default_dps(g: ExpSum) -> int:
    # Derivatives near a high-order zero cancel terms of size up to the sup
    # bound; 30 + 2n digits keeps the 1e-12 relative test meaningful.
    return 30 + 2 * max(len(g) - 2, 0)


def _magnitudes_up_to(
    g: ExpSum, t0: float, max_order: int, dps: Optional[int], stop_rel: Optional[float]
) -> list[tuple[float, float]]:
    """(|g^(m)(t0)|, sup bound) for m = 0.., computed incrementally in mpmath.

    Stops after max_order, or as soon as the relative magnitude exceeds
    ``stop_rel`` when that is given.
    """
    _real_exponents(g)
    if dps is None:
        dps = _default_dps(g)
    dps = max(dps, _default_dps(g))
    out = []
    with mp.workdps(dps):
        t = mpmath.mpf(t0)
        factors = [
            mpmath.mpc(a) * mpmath.exp(1j * mpmath.mpf(lam.real) * t)
            for a, lam in zip(g.coefficients, g.exponents)
        ]
        rotations = [1j * mpmath.mpf(lam.real) for lam in g.exponents]
        bounds = [mpmath.mpf(abs(a)) for a in g.coefficients]
        bound_factors = [abs(r) for r in rotations]
        for m in range(max_order + 1):
            if m > 0:
                factors = [f * r for f, r in zip(factors, rotations)]
                bounds = [b * bf for b, bf in zip(bounds, bound_factors)]
            value = float(abs(mpmath.fsum(factors, absolute=False)))
            bound = float(mpmath.fsum(bounds))
            out.append((value, bound))
            if stop_rel is not None and bound > 0.0 and value > stop_rel * bound:
                break
    return out


def derivative_magnitudes(
    g: ExpSum, t0: float, max_order: int, dps: Optional[int] = None
) -> list[tuple[float, float]]:
    """Pairs (|g^(m)(t0)|, sup bound) for m = 0..max_order, at working precision.

    The magnitudes are computed with mpmath and rounded to float on the way
    out; the bound for m >= 1 is sum |a_j|*|lambda_j|^m.
    """
    if max_order < 0:
        raise InvalidInputError(f"max_order must be nonnegative, got {max_order}")
    return _magnitudes_up_to(g, t0, max_order, dps, stop_rel=None)


def vanishing_order(
    g: ExpSum,
    t0: float = 0.0,
    rel_tol: float = 1e-12,
    dps: Optional[int] = None,
    m_max: Optional[int] = None,
) -> Optional[int]:
    """Smallest m with |g^(m)(t0)| > rel_tol * sum_j |a_j|*|lambda_j|^m.

    The relative normalization makes the answer invariant under exponent
    scaling.  Returns ``None`` if no order below ``m_max`` (default
    2*len(g) + 8) exceeds the threshold.  Raises :class:`PrecisionError` if a
    zero sup bound coexists with a nonzero computed value, which can only be
    a precision artifact.
    """
    if not 0 < rel_tol < 1e-3:
        raise InvalidInputError(f"rel_tol must lie in (0, 1e-3), got {rel_tol}")
    if m_max is None:
        m_max = 2 * len(g) + 8
    pairs = _magnitudes_up_to(g, t0, m_max, dps, stop_rel=rel_tol)
    for m, (value, bound) in enumerate(pairs):
        if bound == 0.0:
            if value > 0.0:
                raise PrecisionError(
                    f"zero derivative bound with nonzero value {value} at order {m}"
                )
            continue
        if value > rel_tol * bound:
            return m
    return None


class SupNormResult(NamedTuple):
    """Certified-from-below sup of |g|: the true sup exceeds ``value`` by at
    most ``slack`` (grid spacing times the first-derivative bound)."""

    value: float
    argmax: float
    slack: float


def _golden_max(f, lo: float, hi: float, tol: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    t = 0.5 * (a + b)
    return f(t), t


def default_grid_points(g: ExpSum, interval: Interval) -> int:
    """Grid density matched to the oscillation rate max|Re lambda| * length."""
    rate = max(abs(x.real) for x in g.exponents) * interval.length
    return int(max(1024, 32 * (1 + math.ceil(rate))))


def sup_norm(g: ExpSum, interval: Interval, grid_points: Optional[int] = None) -> SupNormResult:
    """Maximum of |g| over the interval by grid scan plus golden-section refinement.

    Scans a uniform grid, then refines around the three best local maxima.
    The returned value is a lower bound on the true sup; ``slack`` bounds the
    possible shortfall via the Lipschitz constant of g.
    """
    if grid_points is None:
        grid_points = default_grid_points(g, interval)
    if grid_points < 16:
        raise InvalidInputError(f"grid_points must be >= 16, got {grid_points}")
    ts = np.linspace(interval.left, interval.right, grid_points)
    vals = np.abs(_values_on_grid(g, ts))

    def f(t: float) -> float:
        return abs(evaluate(g, t))

    # local maxima (plateau-tolerant), ranked by value
    interior = (vals[1:-1] >= vals[:-2]) & (vals[1:-1] >= vals[2:])
    candidates = [i + 1 for i in np.flatnonzero(interior)]
    candidates += [0, grid_points - 1]
    candidates.sort(key=lambda i: vals[i], reverse=True)

    h = (interval.right - interval.left) / (grid_points - 1)
    tol = max(h * 1e-10, abs(interval.right) * 1e-15, 1e-300)
    best_value = float(vals.max())
    best_arg = float(ts[int(np.argmax(vals))])
    for i in candidates[:3]:
        lo = ts[max(i - 1, 0)]
        hi = ts[min(i + 1, grid_points - 1)]
        if hi <= lo:
            continue
        value, arg = _golden_max(f, float(lo), float(hi), tol)
        if value > best_value:
            best_value, best_arg = value, arg
    slack = h * derivative_sup_bound(g, 1)
    return SupNormResult(value=best_value, argmax=best_arg, slack=slack)


def l1_norm(g: ExpSum, interval: Interval, abs_tol: float = 1e-10) -> float:
    """Integral of |g| over the interval by adaptive Gauss-Legendre quadrature.

    Bisection handles the derivative kinks of |g| at zero crossings.  Raises
    :class:`~expsums.errors.QuadratureError` (with partial result and achieved
    tolerance attached) if the subdivision cap is reached.
    """
    if abs_tol <= 0:
        raise InvalidInputError(f"abs_tol must be positive, got {abs_tol}")
    _real_exponents(g)

    def f(ts: np.ndarray) -> np.ndarray:
        return np.abs(_values_on_grid(g, ts))

    value, _err = adaptive_gauss_legendre(f, interval.left, interval.right, abs_tol)
    return value


@dataclass(frozen=True)
class Membership:
    """Outcome of a growth-class membership test.

    ``index`` and ``condition`` identify the first violated constraint when
    ``ok`` is False.
    """

    ok: bool
    index: Optional[int] = None
    condition: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def class_membership(g: ExpSum, p: ClassParams) -> Membership:
    """Check |a_0| = 1, Re(lambda_0) = 0, |a_j| <= M*j^mu, Re(lambda_j) >= j*delta."""
    if abs(abs(g.coefficients[0]) - 1.0) > EXACT_TOL:
        return Membership(False, 0, f"|a_0| = {abs(g.coefficients[0])!r} != 1")
    if abs(g.exponents[0].real) > EXACT_TOL:
        return Membership(False, 0, f"Re(lambda_0) = {g.exponents[0].real!r} != 0")
    for j in range(1, len(g)):
        cap = p.M * float(j) ** p.mu
        if abs(g.coefficients[j]) > cap + EXACT_TOL:
            return Membership(False, j, f"|a_{j}| = {abs(g.coefficients[j])!r} > {cap!r}")
        if g.exponents[j].real < j * p.delta - EXACT_TOL:
            return Membership(
                False, j, f"Re(lambda_{j}) = {g.exponents[j].real!r} < {j * p.delta!r}"
            )
    return Membership(True)


# ---------------------------------------------------------------------------
# serialization

def _f17(x: float) -> str:
    return format(float(x), ".17g")


def to_json(g: ExpSum) -> str:
    """Render the sum as JSON with 17-significant-digit numbers.

    Only real exponents are serializable (the schema has a single exponent
    array).
    """
    lam = _real_exponents(g)
    fields = [
        ("exponents", [_f17(x) for x in lam]),
        ("coefficients_re", [_f17(c.real) for c in g.coefficients]),
        ("coefficients_im", [_f17(c.imag) for c in g.coefficients]),
    ]
    body = ", ".join(
        '"{}": [{}]'.format(name, ", ".join(vals)) for name, vals in fields
    )
    return "{" + body + "}"


def from_json(text: str) -> ExpSum:
    """Parse the JSON schema produced by :func:`to_json`."""
    try:
        obj = json.loads(text)
        exps = [float(x) for x in obj["exponents"]]
        re = [float(x) for x in obj["coefficients_re"]]
        im = [float(x) for x in obj["coefficients_im"]]
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise InvalidInputError(f"malformed exponential-sum JSON: {exc}") from exc
    if not len(exps) == len(re) == len(im):
        raise InvalidInputError("exponent and coefficient arrays differ in length")
    return ExpSum(
        coefficients=tuple(complex(a, b) for a, b in zip(re, im)),
        exponents=tuple(complex(x) for x in exps),
    )


def write_scan_csv(g: ExpSum, interval: Interval, points: int, fh: IO[str]) -> None:
    """Write ``t,re,im,abs`` rows for g sampled on a uniform grid."""
    if points < 2:
        raise InvalidInputError(f"need at least 2 points, got {points}")
    ts = np.linspace(interval.left, interval.right, points)
    vals = _values_on_grid(g, ts)
    fh.write("t,re,im,abs\n")
    for t, v in zip(ts, vals):
        fh.write(f"{_f17(t)},{_f17(v.real)},{_f17(v.imag)},{_f17(abs(v))}\n")
