"""Filter functions of pulse sequences and the dephasing decay integral.

A sequence of n instantaneous spin-flip pulses inside [0, T] is described by
the full time grid 0 = t_0 < t_1 < ... < t_n < t_{n+1} = T.  Its frequency
fingerprint is

    f(omega) = sum_{j=0..n} (-1)^j * (exp(i*t_j*omega) - exp(i*t_{j+1}*omega)),

and the residual dephasing under an environment with spectral density
Lambda(omega) is chi = integral_0^inf Lambda(omega)*|f(omega)|^2 domega.

Collecting terms, f is itself an exponential sum in omega with exponents t_j
and coefficients (1, -2, +2, ..., -(-1)^n); :func:`filter_expsum` builds that
form so the generic machinery (vanishing order, etc.) applies.  The direct
summation in :func:`filter_function` is kept independent so the two routes
can be checked against each other.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence, Union

import mpmath
import numpy as np
from mpmath import mp

from .errors import InvalidInputError
from .expsum import ExpSum, vanishing_order
from .quadrature import adaptive_gauss_legendre

__all__ = [
    "PulseSequence",
    "SpectralDensity",
    "filter_function",
    "filter_expsum",
    "decay_factor",
    "vanishing_order_filter",
    "uhrig_filter_magnitude",
    "min_separation",
    "load_pulse_sequence",
    "load_spectral_density",
    "sequence_to_json",
]

FLAT = "hard-cutoff-flat"
OHMIC = "ohmic-exponential"
TABULATED = "tabulated"


@dataclass(frozen=True)
class PulseSequence:
    """Strictly increasing time grid with t_0 = 0 and t_{n+1} = T exactly."""

    times: tuple[float, ...]

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        object.__setattr__(self, "times", times)
        if len(times) < 2:
            raise InvalidInputError("a pulse sequence needs at least the two endpoints")
        if times[0] != 0.0:
            raise InvalidInputError(f"first time must be exactly 0, got {times[0]!r}")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise InvalidInputError("times must be strictly increasing")
        if not math.isfinite(times[-1]):
            raise InvalidInputError("total time must be finite")

    @classmethod
    def from_pulses(cls, pulses: Sequence[float], total_time: float) -> "PulseSequence":
        """Build from the n interior pulse times and the total duration."""
        return cls(times=(0.0, *map(float, pulses), float(total_time)))

    @property
    def n_pulses(self) -> int:
        return len(self.times) - 2

    @property
    def total_time(self) -> float:
        return self.times[-1]

    @cached_property
    def min_separation(self) -> float:
        """Smallest consecutive difference, endpoints included."""
        return min(b - a for a, b in zip(self.times, self.times[1:]))


def min_separation(seq: PulseSequence) -> float:
    return seq.min_separation


def filter_function(seq: PulseSequence, omega: float) -> complex:
    """The alternating telescoped sum of exp(i*t_j*omega) differences."""
    if not math.isfinite(omega):
        raise InvalidInputError(f"omega must be finite, got {omega}")
    t = seq.times
    total = 0j
    for j in range(len(t) - 1):
        total += (-1) ** j * (
            complex(math.cos(t[j] * omega), math.sin(t[j] * omega))
            - complex(math.cos(t[j + 1] * omega), math.sin(t[j + 1] * omega))
        )
    return total


def _filter_on_grid(seq: PulseSequence, omegas: np.ndarray) -> np.ndarray:
    omegas = np.asarray(omegas, dtype=float)
    t = seq.times
    acc = np.zeros(omegas.shape, dtype=complex)
    for j in range(len(t) - 1):
        acc += (-1) ** j * (np.exp(1j * t[j] * omegas) - np.exp(1j * t[j + 1] * omegas))
    return acc


def filter_expsum(seq: PulseSequence) -> ExpSum:
    """The filter function as an exponential sum in omega.

    Adjacent differences share each interior time, so interior coefficients
    are +-2 while the endpoints contribute 1 and -(-1)^n.
    """
    n = seq.n_pulses
    coeffs = [1.0] + [2.0 * (-1.0) ** j for j in range(1, n + 1)] + [-((-1.0) ** n)]
    return ExpSum(coefficients=tuple(coeffs), exponents=tuple(seq.times))


def vanishing_order_filter(
    seq: PulseSequence, rel_tol: float = 1e-12, dps: Optional[int] = None
) -> Optional[int]:
    """Order of the first nonvanishing Taylor coefficient of f at omega = 0.

    Reported as the raw derivative order of the exponential-sum form: a
    sequence whose filter starts at omega^(m+1) suppresses the leading m
    orders of the decay integrand.
    """
    return vanishing_order(filter_expsum(seq), 0.0, rel_tol=rel_tol, dps=dps)


def uhrig_filter_magnitude(n: int, total_time: float, omega: float, dps: int = 50) -> float:
    """|f(omega)| for sin^2 timings, with the timings recomputed at ``dps`` digits.

    Near omega = 0 the filter of an n-pulse sin^2 sequence is of size
    omega^(n+1), far below what double-precision stored times can resolve
    (their rounding alone perturbs the sum at relative 1e-16 of the term
    size).  Recomputing the timings at working precision keeps the tiny true
    value, so log-log slope measurements stay clean.
    """
    if n < 1:
        raise InvalidInputError(f"n must be >= 1, got {n}")
    if not total_time > 0:
        raise InvalidInputError(f"total time must be positive, got {total_time}")
    with mp.workdps(dps):
        T = mpmath.mpf(total_time)
        w = mpmath.mpf(omega)
        times = (
            [mpmath.mpf(0)]
            + [T * mpmath.sin(j * mpmath.pi / (2 * n + 2)) ** 2 for j in range(1, n + 1)]
            + [T]
        )
        coeffs = [1] + [2 * (-1) ** j for j in range(1, n + 1)] + [-((-1) ** n)]
        value = mpmath.fsum(
            (c * mpmath.exp(1j * t * w) for c, t in zip(coeffs, times)),
            absolute=False,
        )
        return float(abs(value))


@dataclass(frozen=True)
class SpectralDensity:
    """Nonnegative environment weight Lambda(omega) for omega >= 0.

    Kinds: ``hard-cutoff-flat`` (amplitude on [0, cutoff], zero above),
    ``ohmic-exponential`` (amplitude * omega * exp(-omega/cutoff)), and
    ``tabulated`` (linear interpolation on a strictly increasing grid, zero
    outside it).
    """

    kind: str
    amplitude: float = 1.0
    cutoff: Optional[float] = None
    table: Optional[tuple[tuple[float, float], ...]] = None

    def __post_init__(self):
        if self.kind not in (FLAT, OHMIC, TABULATED):
            raise InvalidInputError(f"unknown spectral density kind {self.kind!r}")
        if self.amplitude < 0:
            raise InvalidInputError(f"amplitude must be >= 0, got {self.amplitude}")
        if self.kind in (FLAT, OHMIC):
            if self.cutoff is None or self.cutoff <= 0:
                raise InvalidInputError(f"{self.kind} needs a positive cutoff")
        if self.kind == TABULATED:
            if not self.table:
                raise InvalidInputError("tabulated density needs a nonempty table")
            table = tuple((float(w), float(v)) for w, v in self.table)
            object.__setattr__(self, "table", table)
            ws = [w for w, _ in table]
            if any(b <= a for a, b in zip(ws, ws[1:])):
                raise InvalidInputError("table frequencies must be strictly increasing")
            if ws[0] < 0:
                raise InvalidInputError("table frequencies must be nonnegative")
            if any(v < 0 for _, v in table):
                raise InvalidInputError("table values must be nonnegative")

    def __call__(self, omega):
        """Evaluate Lambda; accepts scalars or numpy arrays."""
        w = np.asarray(omega, dtype=float)
        if self.kind == FLAT:
            out = np.where((w >= 0) & (w <= self.cutoff), self.amplitude, 0.0)
        elif self.kind == OHMIC:
            out = np.where(w >= 0, self.amplitude * w * np.exp(-w / self.cutoff), 0.0)
        else:
            ws = np.array([p[0] for p in self.table])
            vs = np.array([p[1] for p in self.table])
            out = self.amplitude * np.interp(w, ws, vs, left=0.0, right=0.0)
            out = np.where((w < ws[0]) | (w > ws[-1]), 0.0, out)
        return float(out) if np.isscalar(omega) else out

    @property
    def support_bound(self) -> Optional[float]:
        """Frequency above which Lambda vanishes, or None for infinite support."""
        if self.kind == FLAT:
            return self.cutoff
        if self.kind == TABULATED:
            return self.table[-1][0]
        return None

    def tail_weight(self, w: float) -> float:
        """Upper bound on the integral of Lambda over [w, infinity)."""
        if self.kind == OHMIC:
            return self.amplitude * self.cutoff * math.exp(-w / self.cutoff) * (w + self.cutoff)
        bound = self.support_bound
        return 0.0 if w >= bound else math.inf


def decay_factor(seq: PulseSequence, density: SpectralDensity, abs_tol: float = 1e-10) -> float:
    """chi = integral of Lambda(omega)*|f(omega)|^2 over omega >= 0.

    Compactly supported densities are integrated over their support.  For the
    exponential tail the integral is truncated where |f|^2 <= 4*(n+1)^2 times
    the remaining density weight drops below a tenth of the tolerance budget.
    """
    if abs_tol <= 0:
        raise InvalidInputError(f"abs_tol must be positive, got {abs_tol}")
    if density.amplitude == 0.0:
        return 0.0
    upper = density.support_bound
    quad_tol = abs_tol
    if upper is None:
        fsq_bound = 4.0 * (seq.n_pulses + 1) ** 2
        upper = density.cutoff
        while fsq_bound * density.tail_weight(upper) > abs_tol / 10.0:
            upper *= 2.0
        quad_tol = 0.9 * abs_tol

    def integrand(ws: np.ndarray) -> np.ndarray:
        return density(ws) * np.abs(_filter_on_grid(seq, ws)) ** 2

    value, _err = adaptive_gauss_legendre(integrand, 0.0, upper, quad_tol)
    return value


# ---------------------------------------------------------------------------
# file formats

def _f17(x: float) -> str:
    return format(float(x), ".17g")


def sequence_to_json(seq: PulseSequence) -> str:
    times = ", ".join(_f17(t) for t in seq.times)
    return '{"times": [%s], "T": %s}' % (times, _f17(seq.total_time))


def _load_json(source: Union[str, Path, dict]) -> dict:
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {source}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON in {source}: {exc}") from exc
    if not isinstance(obj, dict):
        raise InvalidInputError(f"expected a JSON object in {source}")
    return obj


def load_pulse_sequence(source: Union[str, Path, dict]) -> PulseSequence:
    """Load ``{"times": [...], "T": ...}``; times include both endpoints."""
    obj = _load_json(source)
    try:
        times = tuple(float(t) for t in obj["times"])
        total = float(obj["T"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed pulse-sequence JSON: {exc}") from exc
    seq = PulseSequence(times=times)
    if seq.total_time != total:
        raise InvalidInputError(
            f"last time {seq.total_time!r} does not equal declared T {total!r}"
        )
    return seq


def load_spectral_density(source: Union[str, Path, dict]) -> SpectralDensity:
    """Load ``{"kind": ..., "amplitude": ..., "cutoff": ..., "table": ...}``."""
    obj = _load_json(source)
    try:
        kind = obj["kind"]
        amplitude = float(obj.get("amplitude", 1.0))
        cutoff = obj.get("cutoff")
        table = obj.get("table")
    except (TypeError, ValueError, KeyError) as exc:
        raise InvalidInputError(f"malformed spectral-density JSON: {exc}") from exc
    return SpectralDensity(
        kind=kind,
        amplitude=amplitude,
        cutoff=None if cutoff is None else float(cutoff),
        table=None if table is None else tuple((float(w), float(v)) for w, v in table),
    )
