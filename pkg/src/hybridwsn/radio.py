"""First-order radio energy model.

Transmit cost is electronics plus an amplifier term that switches from
free-space (d**2) to multipath (d**4) at the crossover distance
``sqrt(e_fs / e_amp)``. All values are joules, bits and meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np


@dataclass(frozen=True)
class EnergyParams:
    e_elec: float = 5e-9  # J/bit, transmitter and receiver electronics
    e_fs: float = 10e-12  # J/bit/m^2
    e_amp: float = 0.0013e-12  # J/bit/m^4
    e_da: float = 5e-12  # J/bit/signal
    l: int = 4000  # bits per data packet

    def __post_init__(self):
        for name in ("e_elec", "e_fs", "e_amp", "e_da"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"invalid energy constants: {name}={value!r}")
        if self.l <= 0:
            raise ValueError(f"invalid energy constants: l={self.l!r}")

    @cached_property
    def d0(self) -> float:
        return threshold_distance(self)


def threshold_distance(p: EnergyParams) -> float:
    """Crossover distance between the free-space and multipath amplifier terms."""
    if not (p.e_fs > 0 and p.e_amp > 0):
        raise ValueError("invalid energy constants")
    return math.sqrt(p.e_fs / p.e_amp)


def tx_energy(p: EnergyParams, bits, d):
    """Energy to transmit ``bits`` over distance ``d``.

    Accepts scalars or numpy arrays (broadcast together). The multipath
    branch is used strictly beyond the crossover distance.
    """
    bits_a = np.asarray(bits, dtype=float)
    d_a = np.asarray(d, dtype=float)
    if not (np.all(bits_a >= 0) and np.all(d_a >= 0)):
        raise ValueError("invalid transmission")
    out = tx_energy_unchecked(p, bits_a, d_a)
    if out.ndim == 0:
        return float(out)
    return out


def tx_energy_unchecked(p: EnergyParams, bits, d: np.ndarray) -> np.ndarray:
    d2 = d * d
    amp = np.where(d <= p.d0, p.e_fs * d2, p.e_amp * d2 * d2)
    return (p.e_elec + amp) * bits


def rx_energy(p: EnergyParams, bits):
    bits_a = np.asarray(bits, dtype=float)
    if np.any(bits_a < 0):
        raise ValueError("invalid reception")
    out = p.e_elec * bits_a
    if out.ndim == 0:
        return float(out)
    return out


def aggregation_energy(p: EnergyParams, signals):
    """Data-fusion cost of merging ``signals`` packets of ``p.l`` bits each."""
    out = p.e_da * p.l * np.asarray(signals, dtype=float)
    if out.ndim == 0:
        return float(out)
    return out
