"""Generalized Householder reflections and the Grover step.

The workhorse operator is M(chi, phi) = 1 + (e^{i phi} - 1)|chi><chi|,
applied to a state vector as a rank-1 update in O(N) arithmetic.  Two
special cases drive the search:

* oracle: chi is a basis state, so the update touches one amplitude;
* diffusion: chi is the equal-weight register superposition F^(x)n |0>,
  either applied directly as a rank-1 update or assembled from local
  gates as F^(x)n M(0, phi) (F^dagger)^(x)n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .register import IndexLike, StateVector, _flat

SQRT2_INV = 1.0 / np.sqrt(2.0)


def hadamard() -> np.ndarray:
    """The 2x2 Hadamard matrix (1/sqrt(2)) [[1, 1], [1, -1]]."""
    return SQRT2_INV * np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128)


def unitarity_defect(g: np.ndarray) -> float:
    """Max entrywise deviation of G^dagger G from the identity."""
    g = np.asarray(g)
    return float(np.max(np.abs(g.conj().T @ g - np.eye(g.shape[0]))))


@dataclass
class Reflection:
    """Axis state |chi> plus a phase phi, defining M(chi, phi)."""

    axis: StateVector
    phase: float

    def __post_init__(self) -> None:
        if abs(self.axis.norm() - 1.0) > 1e-12:
            raise ValueError(f"reflection axis is not unit norm: {self.axis.norm()}")

    def inverse(self) -> "Reflection":
        return Reflection(self.axis, -self.phase)


def apply_reflection(s: StateVector, r: Reflection) -> StateVector:
    """In-place rank-1 update s += (e^{i phi} - 1) <chi|s> |chi>."""
    if r.axis.shape != s.shape:
        raise ValueError(f"shape mismatch: axis {r.axis.shape} vs state {s.shape}")
    coef = (np.exp(1j * r.phase) - 1.0) * np.vdot(r.axis.amps, s.amps)
    s.amps += coef * r.axis.amps
    return s


def oracle(s: StateVector, marked: IndexLike, phi: float) -> StateVector:
    """Multiply the marked amplitude by e^{i phi}; O(1), all others untouched."""
    flat = _flat(marked)
    if not 0 <= flat < s.shape.N:
        raise ValueError(f"marked index {flat} outside [0, {s.shape.N})")
    s.amps[flat] *= np.exp(1j * phi)
    return s


def apply_local_gate(s: StateVector, g: np.ndarray, k: int) -> StateVector:
    """Apply a d x d gate to qudit k: s' = (1 ... (x) g at slot k (x) ... 1) s.

    The amplitude array is viewed as (d**k, d, d**(n-1-k)); the gate
    contracts the middle axis, i.e. groups of d amplitudes at stride
    d**(n-1-k), vectorized over all N/d groups.
    """
    d, n = s.shape.d, s.shape.n
    if not 0 <= k < n:
        raise ValueError(f"qudit position {k} outside [0, {n})")
    g = np.asarray(g, dtype=np.complex128)
    if g.shape != (d, d):
        raise ValueError(f"gate has shape {g.shape}, expected ({d}, {d})")
    view = s.amps.reshape(d**k, d, d ** (n - 1 - k))
    s.amps = np.einsum("ij,ljr->lir", g, view).reshape(s.shape.N)
    return s


def diffusion_via_gates(s: StateVector, f: np.ndarray, phi: float) -> StateVector:
    """Reflection about F^(x)n |0>, assembled from local gates.

    Applies F^dagger to every qudit, shifts the phase of |0...0>, then
    applies F to every qudit.
    """
    f = np.asarray(f, dtype=np.complex128)
    if unitarity_defect(f) > 1e-10:
        raise ValueError("diffusion gate is not unitary")
    f_dag = f.conj().T
    for k in range(s.shape.n):
        apply_local_gate(s, f_dag, k)
    oracle(s, 0, phi)
    for k in range(s.shape.n):
        apply_local_gate(s, f, k)
    return s


def diffusion_direct(s: StateVector, axis_state: StateVector, phi: float) -> StateVector:
    """Reflection about a precomputed unit axis, as a single rank-1 pass.

    The axis is assumed unit-norm (it is F^(x)n |0> in the search loop);
    no per-call normalization check, to keep the step at two O(N) passes.
    """
    if axis_state.shape != s.shape:
        raise ValueError(f"shape mismatch: axis {axis_state.shape} vs state {s.shape}")
    coef = (np.exp(1j * phi) - 1.0) * np.vdot(axis_state.amps, s.amps)
    s.amps += coef * axis_state.amps
    return s


def grover_step(
    s: StateVector,
    marked: IndexLike,
    phi_m: float,
    phi_a: float,
    axis: StateVector,
) -> StateVector:
    """One search iteration: oracle at the marked index, then diffusion."""
    oracle(s, marked, phi_m)
    diffusion_direct(s, axis, phi_a)
    return s
