"""Synthesis of the equal-superposition gate F.

F is any d x d unitary whose first column has entries of equal modulus
1/sqrt(d); it generalizes the Hadamard gate and seeds the search with
F^(x)n |0>.  Three constructions are provided:

* householder_f: the reflection 1 - 2|xi><xi| built from the coupling
  amplitudes Omega_0 = sqrt((1 - 1/sqrt(d))/2),
  Omega_k = sqrt(1/(2(d - sqrt(d)))) for k != 0.  Real, symmetric, and
  an involution; realizable in a single resonant multipod interaction.
* dft: the unitary discrete Fourier transform, entries
  exp(2i pi jk/d)/sqrt(d).
* random_phase_f: householder_f with a seeded random diagonal phase
  factor on the right, exercising the freedom in the superposition's
  relative phases.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FGate:
    """A d x d unitary with an equal-moduli first column."""

    matrix: np.ndarray
    kind: str  # householder | dft | custom

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=np.complex128)
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def d(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class FValidation:
    """Result of checking the F-gate contract."""

    d: int
    unitarity_defect: float
    column_deviation: float
    passed: bool


def coupling_design(d: int) -> np.ndarray:
    """Multipod Rabi amplitudes with unit RMS that realize F as a reflection.

    Omega_0 = sqrt((1 - 1/sqrt(d))/2), Omega_{k!=0} = sqrt(1/(2(d - sqrt(d)))).
    """
    if d < 2:
        raise ValueError(f"coupling design needs d >= 2, got d={d}")
    sd = np.sqrt(d)
    omegas = np.empty(d)
    omegas[0] = np.sqrt(0.5 * (1.0 - 1.0 / sd))
    omegas[1:] = np.sqrt(1.0 / (2.0 * (d - sd)))
    return omegas


def householder_f(d: int) -> FGate:
    """F as the phase-pi reflection 1 - 2|xi><xi| with xi = coupling_design(d).

    Real symmetric, hence F = F^dagger = F^{-1}; first column
    (1/sqrt(d), -1/sqrt(d), ..., -1/sqrt(d)).
    """
    xi = coupling_design(d)
    matrix = np.eye(d) - 2.0 * np.outer(xi, xi)
    return FGate(matrix, "householder")


def dft(d: int) -> FGate:
    """Unitary discrete Fourier transform, entries exp(2i pi jk/d)/sqrt(d)."""
    if d < 2:
        raise ValueError(f"dft needs d >= 2, got d={d}")
    j, k = np.meshgrid(np.arange(d), np.arange(d), indexing="ij")
    matrix = np.exp(2j * np.pi * j * k / d) / np.sqrt(d)
    return FGate(matrix, "dft")


def random_phase_f(d: int, seed: int) -> FGate:
    """householder_f with seeded random phases as a right diagonal factor.

    Right multiplication by diag(e^{i theta_q}) rescales whole columns, so
    the first column keeps its equal moduli while the relative phases of
    the remaining columns vary.  The generator is numpy's PCG64, so a
    given 64-bit seed reproduces the same matrix on any platform.
    """
    rng = np.random.default_rng(int(seed))
    thetas = rng.uniform(0.0, 2.0 * np.pi, size=d)
    matrix = householder_f(d).matrix * np.exp(1j * thetas)[np.newaxis, :]
    return FGate(matrix, "custom")


def validate_f(f: FGate | np.ndarray) -> FValidation:
    """Check unitarity and the equal-moduli first-column contract.

    Passes iff both the unitarity defect (max entrywise |F^dagger F - 1|)
    and the first-column moduli deviation from 1/sqrt(d) are below 1e-10.
    """
    matrix = f.matrix if isinstance(f, FGate) else np.asarray(f, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"F must be a square matrix, got shape {matrix.shape}")
    d = matrix.shape[0]
    unit_defect = float(np.max(np.abs(matrix.conj().T @ matrix - np.eye(d))))
    col_dev = float(np.max(np.abs(np.abs(matrix[:, 0]) - d**-0.5)))
    return FValidation(d, unit_defect, col_dev, unit_defect < 1e-10 and col_dev < 1e-10)


def make_f(d: int, kind: str) -> FGate:
    """Build an F gate from a tag: 'householder', 'dft', or 'random:SEED'."""
    if kind == "householder":
        return householder_f(d)
    if kind == "dft":
        return dft(d)
    if kind.startswith("random:"):
        return random_phase_f(d, int(kind.split(":", 1)[1]))
    raise ValueError(
        f"unknown F kind {kind!r}; expected 'householder', 'dft', or 'random:SEED'"
    )
