"""Full search runs: initialization, iteration, trajectory recording.

A run prepares |0...0>, applies F to every qudit, then iterates the
Grover step.  The diffusion axis F^(x)n |0> is precomputed once; the
default path applies it as a rank-1 update (two O(N) passes per step),
while the via-gates path rebuilds the diffusion from 2n local-gate
sweeps and exists for cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fgates import FGate, make_f
from .reflections import apply_local_gate, diffusion_via_gates, grover_step, oracle
from .register import BasisIndex, QuditShape, StateVector, basis_state, population
from .scheduler import SearchSchedule

DIFFUSION_PATHS = ("direct", "via_gates")


@dataclass(frozen=True)
class ExperimentConfig:
    """One search experiment: geometry, target, schedule, and gate choices."""

    shape: QuditShape
    marked: BasisIndex
    schedule: SearchSchedule
    f_kind: str = "householder"
    diffusion_path: str = "direct"
    record: bool = True

    def __post_init__(self) -> None:
        if not 0 <= self.marked.flat < self.shape.N:
            raise ValueError(
                f"marked index {self.marked.flat} outside [0, {self.shape.N})"
            )
        if self.schedule.N != self.shape.N:
            raise ValueError(
                f"schedule is for N={self.schedule.N}, register has N={self.shape.N}"
            )
        if self.diffusion_path not in DIFFUSION_PATHS:
            raise ValueError(
                f"diffusion path {self.diffusion_path!r} not in {DIFFUSION_PATHS}"
            )


@dataclass(frozen=True)
class Trajectory:
    """Marked-state population after each Grover step (entry 0 = start)."""

    populations: np.ndarray
    peak_step: int
    peak_population: float

    @classmethod
    def from_populations(cls, populations: list[float]) -> "Trajectory":
        pops = np.asarray(populations, dtype=float)
        peak = int(np.argmax(pops))  # earliest index on ties
        return cls(pops, peak, float(pops[peak]))


def superposition_register(shape: QuditShape, f: FGate | np.ndarray) -> StateVector:
    """F^(x)n |0>: the equal-weight starting superposition."""
    matrix = f.matrix if isinstance(f, FGate) else np.asarray(f, dtype=np.complex128)
    state = basis_state(shape, 0)
    for k in range(shape.n):
        apply_local_gate(state, matrix, k)
    return state


def _resolve_f(cfg: ExperimentConfig, f_gate: FGate | None) -> FGate:
    return f_gate if f_gate is not None else make_f(cfg.shape.d, cfg.f_kind)


def _run(cfg: ExperimentConfig, steps: int, f_gate: FGate | None) -> Trajectory:
    f = _resolve_f(cfg, f_gate)
    state = superposition_register(cfg.shape, f)
    axis = state.copy()
    phi = cfg.schedule.phi
    marked = cfg.marked.flat
    populations = [population(state, marked)]
    for _ in range(steps):
        if cfg.diffusion_path == "direct":
            grover_step(state, marked, phi, phi, axis)
        else:
            oracle(state, marked, phi)
            diffusion_via_gates(state, f.matrix, phi)
        if cfg.record:
            populations.append(population(state, marked))
    if not cfg.record:
        populations.append(population(state, marked))
    return Trajectory.from_populations(populations)


def run_search(cfg: ExperimentConfig, f_gate: FGate | None = None) -> Trajectory:
    """Run the scheduled number of Grover steps and record the trajectory.

    With record=False only the initial and final populations are kept.
    An explicit ``f_gate`` (e.g. a pulse-synthesized matrix) overrides
    the config's f_kind tag.
    """
    return _run(cfg, cfg.schedule.steps, f_gate)


def run_extended(
    cfg: ExperimentConfig, extra_steps: int, f_gate: FGate | None = None
) -> Trajectory:
    """Keep iterating past the schedule to expose the oscillatory tail."""
    if extra_steps < 0:
        raise ValueError(f"extra_steps must be >= 0, got {extra_steps}")
    return _run(cfg, cfg.schedule.steps + extra_steps, f_gate)


def dense_grover_matrix(
    cfg: ExperimentConfig, f_gate: FGate | None = None
) -> np.ndarray:
    """Brute-force N x N Grover operator, one basis vector per column."""
    N = cfg.shape.N
    if N > 1024:
        raise ValueError(f"dense matrix limited to N <= 1024, got N={N}")
    f = _resolve_f(cfg, f_gate)
    axis = superposition_register(cfg.shape, f)
    phi = cfg.schedule.phi
    marked = cfg.marked.flat
    matrix = np.zeros((N, N), dtype=np.complex128)
    for col in range(N):
        state = basis_state(cfg.shape, col)
        grover_step(state, marked, phi, phi, axis)
        matrix[:, col] = state.amps
    return matrix
