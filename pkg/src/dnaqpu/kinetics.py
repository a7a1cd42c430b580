"""Proton-transfer time scales and thermal tautomer occupation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import ANGSTROM, C_LIGHT, EV, HBAR, K_B
from .errors import ValidationError

DEFAULT_NU_TILDE = 3225.0     # cm^-1, middle of the N-H stretch band
DEFAULT_R = 2.86              # angstrom
DEFAULT_LOCALIZATION = 1.03   # angstrom, typical N-H bond length
DEFAULT_BARRIER = 0.7         # eV


def _positive(**kw):
    for name, x in kw.items():
        if not (np.isfinite(x) and x > 0):
            raise ValidationError(f"{name} must be positive and finite, got {x!r}")


@dataclass(frozen=True)
class KineticsParams:
    nu_tilde: float = DEFAULT_NU_TILDE
    R: float = DEFAULT_R
    r: float = DEFAULT_LOCALIZATION
    deltaE: float = DEFAULT_BARRIER
    deltaE_star: float | None = None
    gap: float | None = None

    def __post_init__(self):
        _positive(nu_tilde=self.nu_tilde, R=self.R, r=self.r, deltaE=self.deltaE)
        if self.deltaE_star is not None:
            _positive(deltaE_star=self.deltaE_star)
        if self.gap is not None:
            _positive(gap=self.gap)


def pt_time(nu_tilde: float, R: float, r: float) -> float:
    """Quasiclassical transfer time exp(R/r) / (c nu_tilde), in seconds.

    nu_tilde in cm^-1, R and r in the same length unit.
    """
    _positive(nu_tilde=nu_tilde, R=R, r=r)
    nu = C_LIGHT * 100.0 * nu_tilde
    return float(np.exp(R / r) / nu)


def decoherence_time(delta_e: float) -> float:
    """hbar / delta_e with delta_e in eV, in seconds."""
    _positive(deltaE=delta_e)
    return HBAR / (delta_e * EV)


def occupation(temperature: float, gap: float) -> float:
    """Tautomer weight |b|^2 = 1 / (1 + exp(gap / kT)); gap in eV, T in K."""
    if not temperature > 0:
        raise ValidationError(f"temperature must be positive, got {temperature!r}")
    if gap < 0:
        raise ValidationError("gap must be non-negative")
    x = gap * EV / (K_B * temperature)
    return float(1.0 / (1.0 + np.exp(x))) if x < 700 else float(np.exp(-x))


def thermal_weights(temperature: float, gap: float) -> tuple[float, float]:
    """Real amplitudes (a, b) with a^2 + b^2 = 1."""
    p = occupation(temperature, gap)
    return float(np.sqrt(1.0 - p)), float(np.sqrt(p))


def calibrate_gap(p_target: float, temperature: float) -> float:
    """Gap (eV) for which :func:`occupation` returns ``p_target`` at ``temperature``."""
    if not 0 < p_target < 0.5:
        raise ValidationError(f"target occupation must lie in (0, 1/2), got {p_target!r}")
    if not temperature > 0:
        raise ValidationError("temperature must be positive")
    return float(K_B * temperature * np.log((1 - p_target) / p_target) / EV)


def summary(params: KineticsParams, temperature: float = 300.0,
            p_target: float | None = None) -> dict:
    """tau_pt_s, tau_s_s, occupation, gap_eV for one parameter set."""
    if params.gap is not None:
        gap = params.gap
    elif p_target is not None:
        gap = calibrate_gap(p_target, temperature)
    else:
        raise ValidationError("either a gap or a target occupation is required")
    return {
        "tau_pt_s": pt_time(params.nu_tilde, params.R * ANGSTROM, params.r * ANGSTROM),
        "tau_s_s": decoherence_time(params.deltaE),
        "occupation": occupation(temperature, gap),
        "gap_eV": gap,
    }
