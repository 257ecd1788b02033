"""Steady-state time-domain simulation of decomposed shunt branches.

The supply states are sampled on a uniform endpoint-exclusive grid
(``t_k = k T / samples_per_period``), so periodic averages reduce to plain
means and full-period trapezoid integrals are spectrally exact for the
trigonometric polynomials handled here.

Branch currents are evaluated element by element:

* memristor       ``i = G_M(phi) u``
* meminductor     ``i = Gamma_M(sigma) phi``
* memcapacitor    ``q = C_M(phi) u``, ``i = C_M(phi) u' + u^2 dC_M/dphi``
  with the chain rule applied analytically (the derivative series is exact,
  and ``dphi/dt = u``); ``u'`` is the known closed-form cosine, never a
  numerical difference
* resistor u/R, inductor phi/L on the zero-mean flux, capacitor C u',
  dc source a constant

Charge columns exist where a charge is defined without integrating the
current: the memcapacitor (q = C_M(phi) u) and the LTI capacitor (q = C u).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Optional

import numpy as np

from .elements import ControlVariable, ElementKind, MemoryElement
from .errors import ValidationError
from .harmonics import SupplyVoltage

if TYPE_CHECKING:  # pragma: no cover - typing only
    from .synthesis import LoadDecomposition


class Integrator(str, Enum):
    CLOSED_FORM = "closed-form"
    TRAPEZOID = "trapezoid"


@dataclass(frozen=True)
class SimulationConfig:
    """Sampling plan for steady-state traces.

    ``phi0`` defaults to the zero-mean steady state value -A/w (matching the
    closed forms at t = 0) and ``sigma0`` to 0; both are only consumed by the
    trapezoid integrator, the closed-form path is exact by construction.
    """

    periods: int = 2
    samples_per_period: int = 8192
    integrator: Integrator = Integrator.CLOSED_FORM
    phi0: Optional[float] = None
    sigma0: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "integrator", Integrator(self.integrator))
        if int(self.periods) != self.periods or self.periods < 1:
            raise ValidationError("periods must be a positive integer")
        if int(self.samples_per_period) != self.samples_per_period or self.samples_per_period < 64:
            raise ValidationError("samples_per_period must be an integer >= 64")
        object.__setattr__(self, "periods", int(self.periods))
        object.__setattr__(self, "samples_per_period", int(self.samples_per_period))
        if self.phi0 is not None and not math.isfinite(float(self.phi0)):
            raise ValidationError("phi0 must be finite")
        if not math.isfinite(float(self.sigma0)):
            raise ValidationError("sigma0 must be finite")


@dataclass(frozen=True)
class SupplyStates:
    """Sampled supply voltage and its first and second time integrals."""

    supply: SupplyVoltage
    config: SimulationConfig
    t: np.ndarray
    u: np.ndarray
    phi: np.ndarray
    sigma: np.ndarray


def _cumulative_trapezoid(y: np.ndarray, dt: float, y0: float) -> np.ndarray:
    out = np.empty_like(y)
    out[0] = y0
    out[1:] = y0 + np.cumsum(0.5 * dt * (y[1:] + y[:-1]))
    return out


def supply_states(supply: SupplyVoltage, config: Optional[SimulationConfig] = None) -> SupplyStates:
    """Sample u, phi, sigma on the uniform grid of ``config``."""
    config = config or SimulationConfig()
    n = config.periods * config.samples_per_period
    dt = supply.period / config.samples_per_period
    t = np.arange(n) * dt
    u = supply.voltage(t)
    if config.integrator is Integrator.CLOSED_FORM:
        phi = supply.flux(t)
        sigma = supply.integrated_flux(t)
    else:
        phi0 = -supply.amplitude / supply.omega if config.phi0 is None else float(config.phi0)
        phi = _cumulative_trapezoid(u, dt, phi0)
        sigma = _cumulative_trapezoid(phi, dt, float(config.sigma0))
    return SupplyStates(supply=supply, config=config, t=t, u=u, phi=phi, sigma=sigma)


def branch_current(
    element: MemoryElement, states: SupplyStates
) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """Current (and charge, where defined) of one branch on given states."""
    supply = states.supply
    kind = element.kind
    if kind is ElementKind.DC_SOURCE:
        return np.full_like(states.u, element.scalar_value), None
    if kind is ElementKind.RESISTOR:
        return states.u / element.scalar_value, None
    if kind is ElementKind.INDUCTOR:
        phi = states.phi - states.phi.mean()  # no dc flux offset in steady state
        return phi / element.scalar_value, None
    if kind is ElementKind.CAPACITOR:
        du = supply.amplitude * supply.omega * np.cos(supply.omega * states.t)
        return element.scalar_value * du, element.scalar_value * states.u
    if kind is ElementKind.MEMRISTOR:
        if element.control is not ControlVariable.FLUX:
            raise ValidationError("memristor control not derivable from supply states")
        return element.incremental.evaluate(states.phi) * states.u, None
    if kind is ElementKind.MEMINDUCTOR:
        if element.control is not ControlVariable.TIME_INTEGRATED_FLUX:
            raise ValidationError("meminductor control not derivable from supply states")
        return element.incremental.evaluate(states.sigma) * states.phi, None
    if kind is ElementKind.MEMCAPACITOR:
        if element.control is not ControlVariable.FLUX:
            raise ValidationError("memcapacitor control not derivable from supply states")
        cap = element.incremental.evaluate(states.phi)
        dcap = element.incremental.derivative().evaluate(states.phi)
        du = supply.amplitude * supply.omega * np.cos(supply.omega * states.t)
        charge = cap * states.u
        current = cap * du + states.u * states.u * dcap
        return current, charge
    raise ValidationError(f"unsupported element kind {kind!r}")


@dataclass(frozen=True)
class TraceBranch:
    label: str
    element: MemoryElement
    current: np.ndarray
    charge: Optional[np.ndarray] = None


@dataclass(frozen=True)
class SimulationTrace:
    """Per-branch steady-state waveforms plus their sum."""

    states: SupplyStates
    branches: tuple[TraceBranch, ...]
    i_total: np.ndarray
    capacitance: Optional[np.ndarray] = None

    @property
    def t(self) -> np.ndarray:
        return self.states.t

    @property
    def u(self) -> np.ndarray:
        return self.states.u

    def branch(self, label: str) -> TraceBranch:
        for branch in self.branches:
            if branch.label == label:
                return branch
        raise ValidationError(f"no branch labelled {label!r}")


def simulate(
    decomposition: "LoadDecomposition", config: Optional[SimulationConfig] = None
) -> SimulationTrace:
    """Evaluate every branch of a decomposition on a fresh state grid."""
    states = supply_states(decomposition.supply, config)
    branches = []
    total = np.zeros_like(states.u)
    capacitance = None
    for label, element in decomposition.branches():
        current, charge = branch_current(element, states)
        branches.append(TraceBranch(label, element, current, charge))
        total = total + current
        if element.kind is ElementKind.MEMCAPACITOR:
            capacitance = element.incremental.evaluate(states.phi)
    return SimulationTrace(
        states=states, branches=tuple(branches), i_total=total, capacitance=capacitance
    )


def branch_average_power(trace: SimulationTrace, label: str) -> float:
    """Average of u * i over the whole (integer number of) periods."""
    return float(np.mean(trace.u * trace.branch(label).current))


def hysteresis_loop(
    element: MemoryElement, states: SupplyStates
) -> tuple[np.ndarray, np.ndarray]:
    """One closed period of the element's characteristic loop.

    Returns (drive, response) pairs: (u, i) for a memristor, (u, q) for a
    memcapacitor, (phi, i) for a meminductor.  The arrays span one period
    plus the closing sample so start and end coincide up to roundoff.
    """
    if not element.is_memory:
        raise ValidationError("hysteresis loops are defined for memory elements")
    spp = states.config.samples_per_period
    if len(states.t) > spp:
        sel = slice(0, spp + 1)
        t = states.t[sel]
        u = states.u[sel]
        phi = states.phi[sel]
        sigma = states.sigma[sel]
    else:
        idx = np.concatenate([np.arange(spp), [0]])
        t = states.t[idx]
        u = states.u[idx]
        phi = states.phi[idx]
        sigma = states.sigma[idx]
    one = SupplyStates(
        supply=states.supply,
        config=states.config,
        t=t,
        u=u,
        phi=phi,
        sigma=sigma,
    )
    current, charge = branch_current(element, one)
    if element.kind is ElementKind.MEMCAPACITOR:
        return u, charge
    if element.kind is ElementKind.MEMINDUCTOR:
        return phi, current
    return u, current


_GM_KINDS = (ElementKind.MEMRISTOR, ElementKind.RESISTOR)
_GAMMA_KINDS = (ElementKind.MEMINDUCTOR, ElementKind.INDUCTOR)
_CM_KINDS = (ElementKind.MEMCAPACITOR, ElementKind.CAPACITOR)

TRACE_HEADER = "t,u,phi,sigma,i_total,i_dc,i_GM,i_GammaM,i_CM,q_CM,C_of_t"


def trace_to_csv(trace: SimulationTrace) -> str:
    """Render a trace with the fixed column layout.

    Branch families are summed into their columns (an LTI companion inductor
    lands in i_GammaM, a companion capacitor in i_CM) so every row satisfies
    i_total = i_dc + i_GM + i_GammaM + i_CM.  q_CM and C_of_t describe the
    memcapacitor element itself.  Families with no branch yield empty cells.
    """
    n = len(trace.t)

    def family(kinds) -> Optional[np.ndarray]:
        picked = [b.current for b in trace.branches if b.element.kind in kinds]
        if not picked:
            return None
        out = picked[0].copy()
        for extra in picked[1:]:
            out += extra
        return out

    i_dc = family((ElementKind.DC_SOURCE,))
    i_gm = family(_GM_KINDS)
    i_gamma = family(_GAMMA_KINDS)
    i_cm = family(_CM_KINDS)
    q_cm = None
    for branch in trace.branches:
        if branch.element.kind is ElementKind.MEMCAPACITOR:
            q_cm = branch.charge
    columns = [trace.t, trace.u, trace.states.phi, trace.states.sigma, trace.i_total,
               i_dc, i_gm, i_gamma, i_cm, q_cm, trace.capacitance]
    lines = [TRACE_HEADER]
    if trace.branches:
        for k in range(n):
            cells = ["" if col is None else repr(float(col[k])) for col in columns]
            lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
