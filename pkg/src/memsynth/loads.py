"""Built-in benchmark load spectra.

Three classic distorting loads exercise every branch type:

* ``motivating``: a three-term spectrum (fundamental cosine and sine plus a
  second-harmonic cosine) on a 230 V rms, 50 Hz supply;
* ``rectifier``: the half-wave rectified supply current
  ``i = max(0, A sin(w t)) / 1 ohm`` with dc A/pi, fundamental sine A/2 and
  even cosines ``-2A / (pi (n^2 - 1))``;
* ``bridge``: the phase-delayed square wave of an ideal line-commutated
  converter, odd harmonics ``-(4 I_dc / n pi) sin(n delta)`` (cosine part)
  and ``(4 I_dc / n pi) cos(n delta)`` (sine part), whose ideal power factor
  is ``(2 sqrt(2) / pi) cos(delta)``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import ValidationError
from .harmonics import HarmonicSpectrum, HarmonicTerm, SupplyVoltage

#: truncation order used when none is requested
DEFAULT_N_MAX = 199

#: environment override for the default truncation order
N_MAX_ENV_VAR = "MEMSYNTH_NMAX_DEFAULT"

MOTIVATING_AMPLITUDE = 230.0 * math.sqrt(2.0)
MOTIVATING_OMEGA = 100.0 * math.pi


def default_n_max() -> int:
    """Default truncation order, honoring the environment override."""
    raw = os.environ.get(N_MAX_ENV_VAR)
    if raw is None:
        return DEFAULT_N_MAX
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValidationError(f"{N_MAX_ENV_VAR} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise ValidationError(f"{N_MAX_ENV_VAR} must be >= 1, got {value}")
    return value


def motivating_supply() -> SupplyVoltage:
    return SupplyVoltage(MOTIVATING_AMPLITUDE, MOTIVATING_OMEGA)


def motivating_spectrum() -> HarmonicSpectrum:
    """The fixed three-term example load: a1 = -100 sqrt2, b1 = 80 sqrt2, a2 = 50 sqrt2."""
    s2 = math.sqrt(2.0)
    return HarmonicSpectrum(
        omega=MOTIVATING_OMEGA,
        dc=0.0,
        terms=(
            HarmonicTerm(1, -100.0 * s2, 80.0 * s2),
            HarmonicTerm(2, 50.0 * s2, 0.0),
        ),
    )


def rectifier_spectrum(
    amplitude: float, omega: float, n_max: Optional[int] = None
) -> HarmonicSpectrum:
    """Half-wave rectified sine through a unit resistance, truncated at n_max."""
    amplitude = float(amplitude)
    omega = float(omega)
    if not (math.isfinite(amplitude) and amplitude > 0):
        raise ValidationError("rectifier amplitude must be positive")
    n_max = default_n_max() if n_max is None else int(n_max)
    if n_max < 2:
        raise ValidationError("rectifier spectrum needs n_max >= 2")
    terms = [HarmonicTerm(1, 0.0, amplitude / 2.0)]
    for n in range(2, n_max + 1, 2):
        terms.append(HarmonicTerm(n, -2.0 * amplitude / (math.pi * (n * n - 1)), 0.0))
    return HarmonicSpectrum(omega=omega, dc=amplitude / math.pi, terms=tuple(terms))


def bridge_spectrum(
    i_dc: float, delta: float, omega: float, n_max: Optional[int] = None
) -> HarmonicSpectrum:
    """Square-wave line current of amplitude i_dc delayed by angle delta."""
    i_dc = float(i_dc)
    delta = float(delta)
    if not (math.isfinite(i_dc) and i_dc > 0):
        raise ValidationError("bridge dc-side current must be positive")
    if not (0.0 <= delta <= math.pi):
        raise ValidationError("bridge delay angle must lie in [0, pi]")
    n_max = default_n_max() if n_max is None else int(n_max)
    if n_max < 1:
        raise ValidationError("bridge spectrum needs n_max >= 1")
    terms = []
    for n in range(1, n_max + 1, 2):
        base = 4.0 * i_dc / (n * math.pi)
        a = -base * math.sin(n * delta)
        b = base * math.cos(n * delta)
        if abs(a) < 1e-15 and abs(b) < 1e-15:
            continue
        terms.append(HarmonicTerm(n, a, b))
    return HarmonicSpectrum(omega=omega, dc=0.0, terms=tuple(terms))


class LoadKind(str, Enum):
    MOTIVATING = "motivating"
    RECTIFIER = "rectifier"
    BRIDGE = "bridge"


@dataclass(frozen=True)
class LoadModel:
    """Parameter bundle the command line turns into supply + spectrum."""

    kind: LoadKind
    amplitude: float = MOTIVATING_AMPLITUDE
    omega: float = MOTIVATING_OMEGA
    n_max: Optional[int] = None
    i_dc: float = 1.0
    delta: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", LoadKind(self.kind))

    def supply(self) -> SupplyVoltage:
        if self.kind is LoadKind.MOTIVATING:
            return motivating_supply()
        return SupplyVoltage(self.amplitude, self.omega)

    def spectrum(self) -> HarmonicSpectrum:
        if self.kind is LoadKind.MOTIVATING:
            return motivating_spectrum()
        if self.kind is LoadKind.RECTIFIER:
            return rectifier_spectrum(self.amplitude, self.omega, self.n_max)
        return bridge_spectrum(self.i_dc, self.delta, self.omega, self.n_max)
