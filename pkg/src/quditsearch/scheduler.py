"""Phase-matched search schedules.

Writing beta = arcsin(1/sqrt(N)), a phase-matched Grover iteration with
oracle and diffusion phases both equal to phi rotates the state inside
the two-dimensional subspace spanned by the marked state and the
equal-weight superposition.  Choosing

    phi = 2 arcsin( sin(pi / (4 N_G + 2)) / sin(beta) )

makes the rotation land exactly on the marked state after N_G steps, for
any N_G >= pi/(4 beta) - 1/2 (the arcsin argument is then <= 1).  The
deterministic schedule picks N_G = j or j + 1, with
j = floor(pi/(4 beta) + 1/2), according to whether (2j+1) beta or
(2j-1) beta is closer to pi/2.  The canonical schedule is the familiar
phi = pi with round((pi/4) sqrt(N)) steps, which peaks near but not at
unit population.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import numpy as np


@dataclass(frozen=True)
class SearchSchedule:
    """Iteration plan: rotation half-angle beta, phase phi, and step count."""

    N: int
    beta: float
    j: int
    phi: float
    steps: int
    mode: str


def _beta(N: int) -> float:
    if N < 2:
        raise ValueError(f"database size must be >= 2, got N={N}")
    return math.asin(N**-0.5)


def _floor_step_index(N: int, beta: float) -> int:
    """Mathematical floor of pi/(4 beta) + 1/2, stable at representation edges.

    The double-precision value can straddle an integer (N = 4 lands on
    exactly 2 in real arithmetic); when a 1-ulp perturbation changes the
    floor, warn and settle the boundary with 50-digit arithmetic.
    """
    x = math.pi / (4.0 * beta) + 0.5
    lo = math.floor(math.nextafter(x, -math.inf))
    hi = math.floor(math.nextafter(x, math.inf))
    if lo == hi:
        return math.floor(x)
    warnings.warn(
        f"floor of pi/(4 beta) + 1/2 is unstable to 1 ulp at N={N}; "
        f"resolving with 50-digit arithmetic",
        RuntimeWarning,
        stacklevel=3,
    )
    with mpmath.workdps(50):
        exact = mpmath.pi / (4 * mpmath.asin(1 / mpmath.sqrt(N))) + mpmath.mpf(1) / 2
        return int(mpmath.floor(exact))


def matched_phase(N: int, steps: int) -> float:
    """Phase that lands exactly on the marked state after ``steps`` iterations."""
    beta = _beta(N)
    arg = math.sin(math.pi / (4 * steps + 2)) / math.sin(beta)
    if arg > 1.0:
        raise ValueError(
            f"no matched phase: {steps} steps is below the minimum for N={N}"
        )
    return 2.0 * math.asin(arg)


def deterministic_schedule(N: int) -> SearchSchedule:
    """Schedule reaching unit marked-state population at a finite step count."""
    beta = _beta(N)
    j = _floor_step_index(N, beta)
    half_pi = 0.5 * math.pi
    if abs((2 * j + 1) * beta - half_pi) <= abs((2 * j - 1) * beta - half_pi):
        steps = j
    else:
        steps = j + 1
    phi = matched_phase(N, steps)
    return SearchSchedule(N, beta, j, phi, steps, "deterministic")


def canonical_schedule(N: int) -> SearchSchedule:
    """phi = pi with the usual round((pi/4) sqrt(N)) iterations (min 1)."""
    beta = _beta(N)
    j = _floor_step_index(N, beta)
    steps = max(1, round(0.25 * math.pi * math.sqrt(N)))
    return SearchSchedule(N, beta, j, math.pi, steps, "canonical_pi")


def custom_schedule(N: int, phi: float, steps: int) -> SearchSchedule:
    """User-supplied phase and step count; no optimality claims."""
    beta = _beta(N)
    if steps < 0:
        raise ValueError(f"step count must be >= 0, got {steps}")
    j = _floor_step_index(N, beta)
    return SearchSchedule(N, beta, j, float(phi), int(steps), "custom")


def predicted_population(N: int, k: int, phi: float) -> float:
    """Marked-state population after k phase-matched steps, from the 2D model.

    For phi = pi this is the closed form sin^2((2k+1) beta).  Otherwise the
    Grover operator restricted to span{|marked>, |superposition>} (overlap
    1/sqrt(N)) is iterated exactly as a 2x2 complex matrix.
    """
    beta = _beta(N)
    if k < 0:
        raise ValueError(f"step count must be >= 0, got {k}")
    if phi == math.pi:
        return math.sin((2 * k + 1) * beta) ** 2
    overlap = N**-0.5
    s = np.array([overlap, math.sqrt(1.0 - overlap**2)], dtype=np.complex128)
    phase = np.exp(1j * phi)
    m_marked = np.diag([phase, 1.0]).astype(np.complex128)
    m_super = np.eye(2, dtype=np.complex128) + (phase - 1.0) * np.outer(s, s.conj())
    g = m_super @ m_marked
    v = s.copy()
    for _ in range(k):
        v = g @ v
    return float(abs(v[0]) ** 2)
