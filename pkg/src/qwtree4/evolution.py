"""Transfer amplitude, fidelity and its time derivative.

The walk operator is U(t) = exp(itA) = sum_lam e^{it lam} E_lam, so the
(x, y) amplitude only needs the pair's projection data.  The derivative of
the fidelity between a strongly cospectral pair is evaluated exactly as the
double-sum expression over the sign partition

    df/dt = 2 [ sum_{j,l in plus}  s_j s_l lam_l sin(t(lam_j - lam_l))
              + sum_{j,l in minus} s_j s_l lam_l sin(t(lam_j - lam_l))
              + sum_{j in plus, l in minus}
                    s_j s_l (lam_j - lam_l) sin(t(lam_j - lam_l)) ]

with no algebraic simplification; the simplified per-family forms serve as
test oracles against this code path, not as the implementation.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exact import TimeLike, reduced_phase, time_value
from .spectrum import ProjectionData, projection_data
from .tree import TreeParams


@dataclass(frozen=True)
class TransferRecord:
    """Amplitude, fidelity and (for cospectral pairs) sensitivity at one time."""

    time: float
    amplitude: complex
    fidelity: float
    sensitivity: float | None


def _phases(data: ProjectionData, t: TimeLike) -> list[float]:
    return [reduced_phase(l.exact if l.exact is not None else l.value, t) for l in data.lines]


def amplitude_from_projections(data: ProjectionData, t: TimeLike) -> complex:
    phases = _phases(data, t)
    return sum(
        l.cross * cmath.exp(1j * th) for l, th in zip(data.lines, phases) if l.cross != 0.0
    )


def fidelity_from_projections(data: ProjectionData, t: TimeLike) -> float:
    return abs(amplitude_from_projections(data, t)) ** 2


def sensitivity_from_projections(data: ProjectionData, t: TimeLike) -> float:
    plus, minus = data.sigma_partition()
    phases = {id(l): th for l, th in zip(data.lines, _phases(data, t))}
    total = 0.0
    for group in (plus, minus):
        for lj in group:
            for ll in group:
                total += lj.s_x * ll.s_x * ll.value * math.sin(phases[id(lj)] - phases[id(ll)])
    for lj in plus:
        for ll in minus:
            total += (
                lj.s_x * ll.s_x * (lj.value - ll.value)
                * math.sin(phases[id(lj)] - phases[id(ll)])
            )
    return 2.0 * total


def amplitude(p: TreeParams, x: int, y: int, t: TimeLike, **kw) -> complex:
    """U(t)_{x,y} via the spectral closed form."""
    return amplitude_from_projections(projection_data(p, x, y, **kw), t)


def fidelity(p: TreeParams, x: int, y: int, t: TimeLike, **kw) -> float:
    """|U(t)_{x,y}|^2, the state-transfer probability."""
    return fidelity_from_projections(projection_data(p, x, y, **kw), t)


def sensitivity(p: TreeParams, x: int, y: int, t: TimeLike, **kw) -> float:
    """df/dt at time t for a strongly cospectral pair."""
    return sensitivity_from_projections(projection_data(p, x, y, **kw), t)


def dense_unitary_oracle(A: np.ndarray, t: float) -> np.ndarray:
    """Full exp(itA) through a fresh eigendecomposition.

    Independent of the closed-form code paths (no grouping, no exact
    phases); used to cross-check amplitudes entry by entry.
    """
    values, vectors = np.linalg.eigh(A)
    phases = np.exp(1j * t * values)
    return (vectors * phases) @ vectors.T


def scan(p: TreeParams, x: int, y: int, times: Sequence[float], **kw) -> list[TransferRecord]:
    """One record per grid time, in input order.

    Sensitivity is filled only when the pair is strongly cospectral.
    """
    data = projection_data(p, x, y, **kw)
    cospectral = data.is_strongly_cospectral()
    out = []
    for t in times:
        amp = amplitude_from_projections(data, t)
        sens = sensitivity_from_projections(data, t) if cospectral else None
        out.append(
            TransferRecord(
                time=time_value(t), amplitude=amp, fidelity=abs(amp) ** 2, sensitivity=sens
            )
        )
    return out
