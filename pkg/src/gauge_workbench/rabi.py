"""SI observables built on the length-gauge amplitude.

The dimensionless amplitude is turned into the two-photon excitation
coefficient beta(x) in Hz per (W/m^2), the Rabi frequency at a given laser
intensity, and the linear expansion of beta about the two-photon resonance.
The SI prefactor is

    beta = - e^2 hbar / (alpha^4 m^3 c^5 (4 pi eps0)) * Q(x),

which is positive at resonance since Q is negative.  (Multiplying beta by
an intensity in W/m^2 yields Hz; the s^2/kg carried by the prefactor is
exactly Hz per W/m^2.)

Physical constants are pinned to a named vintage in one frozen record so
every derived number can state which constants produced it.  A JSON file
(flag or GAUGE_WORKBENCH_CONSTANTS environment variable) can override any
subset of them.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, fields, replace

from .closedform import X_RESONANCE, q_length
from .errors import ConvergenceError, DomainError

ENV_CONSTANTS = "GAUGE_WORKBENCH_CONSTANTS"

_LINEAR_TRUST_RADIUS = 0.05
_SLOPE_STEP = 1e-6
_SLOPE_CHECK_STEP = 1e-7
_SLOPE_AGREEMENT = 1e-4


@dataclass(frozen=True)
class PhysicalConstants:
    """SI constants with a provenance tag naming their vintage."""

    alpha: float = 7.2973525693e-3
    m_e: float = 9.1093837015e-31
    c: float = 299792458.0
    hbar: float = 1.054571817e-34
    e: float = 1.602176634e-19
    eps0: float = 8.8541878128e-12
    provenance_tag: str = "CODATA-2018"

    def __post_init__(self) -> None:
        for f in fields(self):
            if f.name == "provenance_tag":
                continue
            if not getattr(self, f.name) > 0.0:
                raise DomainError(f"constant {f.name} must be positive")

    @classmethod
    def from_file(cls, path: str) -> "PhysicalConstants":
        """Load overrides from a JSON object of constant-name: value pairs."""
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
        if not isinstance(raw, dict):
            raise DomainError(f"constants file {path} must hold a JSON object")
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise DomainError(f"unknown constant names in {path}: {sorted(unknown)}")
        base = cls()
        if "provenance_tag" not in raw:
            raw = dict(raw, provenance_tag=f"file:{os.path.basename(path)}")
        return replace(base, **raw)


DEFAULT_CONSTANTS = PhysicalConstants()


def load_constants(path: str | None = None) -> PhysicalConstants:
    """Resolve the constants record: explicit path, then the environment
    variable, then the built-in pinned defaults."""
    if path is None:
        path = os.environ.get(ENV_CONSTANTS) or None
    if path is None:
        return DEFAULT_CONSTANTS
    return PhysicalConstants.from_file(path)


@dataclass(frozen=True)
class RabiInput:
    """A photon energy fraction together with a laser intensity in W/m^2."""

    x: float
    intensity: float

    def __post_init__(self) -> None:
        if self.intensity < 0.0:
            raise DomainError(f"intensity must be nonnegative, got {self.intensity}")


def beta_prefactor(k: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """The SI factor e^2 hbar / (alpha^4 m^3 c^5 (4 pi eps0)), in s^2/kg."""
    return (k.e**2 * k.hbar
            / (k.alpha**4 * k.m_e**3 * k.c**5 * 4.0 * math.pi * k.eps0))


def beta(x: float, k: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Two-photon excitation coefficient in Hz per (W/m^2)."""
    return -beta_prefactor(k) * q_length(x)


def rabi_frequency(inp: RabiInput, k: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Angular Rabi frequency 2 (2 pi beta) I_L in rad/s; linear in intensity."""
    return 2.0 * (2.0 * math.pi * beta(inp.x, k)) * inp.intensity


def _slope_at_resonance(k: PhysicalConstants, step: float) -> float:
    return (beta(X_RESONANCE + step, k) - beta(X_RESONANCE - step, k)) / (2.0 * step)


def beta_slope(k: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """d beta / dx at the resonance, by central differences.

    Two independent step sizes must agree; a disagreement beyond 1e-4
    relative would mean the amplitude evaluation lost smoothness and the
    slope cannot be trusted."""
    slope = _slope_at_resonance(k, _SLOPE_STEP)
    check = _slope_at_resonance(k, _SLOPE_CHECK_STEP)
    if abs(slope - check) > _SLOPE_AGREEMENT * abs(slope):
        raise ConvergenceError(
            f"finite-difference slopes disagree: {slope!r} vs {check!r}"
        )
    return slope


def beta_linearized(x: float, k: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """First-order expansion of beta about the resonance.

    Only trusted within |x - 3/16| < 0.05; outside that radius the full
    evaluation must be used instead."""
    if abs(x - X_RESONANCE) >= _LINEAR_TRUST_RADIUS:
        raise DomainError(
            f"x = {x} outside the linearization trust region around {X_RESONANCE}"
        )
    return beta(X_RESONANCE, k) + beta_slope(k) * (x - X_RESONANCE)
