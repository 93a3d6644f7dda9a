"""Gaussian states in the moment representation and symplectic optics.

Conventions used throughout the package:

* hbar = 2, so the quadratures obey ``[Q, P] = 2i`` and the vacuum
  covariance matrix is the identity.
* Quadratures are ordered ``(Q1, P1, ..., Qm, Pm)``; the symplectic form
  is block diagonal with 2x2 blocks ``[[0, 1], [-1, 0]]``.
* A displacement of amplitude ``alpha = (q + i p) / 2`` on a mode shifts
  its mean by ``(q, p)`` and leaves the covariance untouched.

Only first and second moments are tracked.  All values are immutable and
every operation is a pure function, so everything here is safe to use
from any number of threads without synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "GaussianState",
    "SymplecticOp",
    "symplectic_form",
    "vacuum",
    "make_thermal",
    "single_mode_squeezer",
    "two_mode_squeezer",
    "beam_splitter",
    "displacement",
    "displace",
    "apply",
]

# numerical tolerances for the structural invariants
SYMMETRY_TOL = 1e-12
SYMPLECTIC_TOL = 1e-12
PHYSICALITY_TOL = 1e-10


def symplectic_form(num_modes: int) -> np.ndarray:
    """Return the 2m x 2m symplectic form Omega for ``num_modes`` modes.

    Omega encodes the commutators via ``[Z_j, Z_k] = 2i Omega_jk``; a
    covariance matrix V is physical iff ``V + i Omega >= 0``.
    """
    if num_modes < 1:
        raise ValueError("number of modes must be at least 1")
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * num_modes, 2 * num_modes))
    for k in range(num_modes):
        out[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = block
    return out


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class GaussianState:
    """An m-mode Gaussian state given by its mean vector and covariance.

    Args:
        mean (array): length 2m vector of quadrature means
        cov (array): real symmetric 2m x 2m covariance matrix

    Construction validates symmetry of ``cov`` and the uncertainty
    relation ``cov + i Omega >= 0`` (vacuum saturates it with cov = I).
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.atleast_1d(np.asarray(self.mean, dtype=float))
        cov = np.asarray(self.cov, dtype=float)
        if mean.ndim != 1 or mean.size % 2 != 0 or mean.size == 0:
            raise ValueError("mean must be a vector of even, positive length")
        if cov.shape != (mean.size, mean.size):
            raise ValueError(
                f"covariance shape {cov.shape} does not match mean of length {mean.size}"
            )
        if np.max(np.abs(cov - cov.T)) > SYMMETRY_TOL:
            raise ValueError("covariance matrix is not symmetric")
        omega = symplectic_form(mean.size // 2)
        eigs = np.linalg.eigvalsh(cov + 1j * omega)
        # tolerance scales with the covariance magnitude so that strongly
        # squeezed states are not rejected for rounding in their large
        # eigenvalues; for unit-scale states this is the absolute -1e-10
        scale = max(1.0, float(np.max(np.abs(cov))))
        if eigs.min() < -PHYSICALITY_TOL * scale:
            raise ValueError(
                f"covariance violates the uncertainty relation (min eig {eigs.min():.3e})"
            )
        object.__setattr__(self, "mean", _readonly(mean))
        object.__setattr__(self, "cov", _readonly(cov))

    @property
    def num_modes(self) -> int:
        return self.mean.size // 2

    def is_pure(self, tol: float = 1e-9) -> bool:
        """Whether the state is pure, i.e. ``det(cov) = 1`` within ``tol``."""
        return abs(np.linalg.det(self.cov) - 1.0) <= tol


@dataclass(frozen=True)
class SymplecticOp:
    """A linear phase-space transform: mean -> S mean + d, cov -> S cov S^T.

    Args:
        matrix (array): real 2m x 2m symplectic matrix S
        offset (array): length 2m displacement d

    Construction validates ``S Omega S^T = Omega``.
    """

    matrix: np.ndarray
    offset: np.ndarray

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=float)
        offset = np.atleast_1d(np.asarray(self.offset, dtype=float))
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
            raise ValueError("matrix must be square with even dimension")
        if offset.shape != (matrix.shape[0],):
            raise ValueError("offset length does not match matrix dimension")
        omega = symplectic_form(matrix.shape[0] // 2)
        err = np.max(np.abs(matrix @ omega @ matrix.T - omega))
        if err > SYMPLECTIC_TOL:
            raise ValueError(f"matrix is not symplectic (S Omega S^T deviates by {err:.3e})")
        object.__setattr__(self, "matrix", _readonly(matrix))
        object.__setattr__(self, "offset", _readonly(offset))

    @property
    def num_modes(self) -> int:
        return self.matrix.shape[0] // 2


def vacuum(num_modes: int = 1) -> GaussianState:
    """The ``num_modes``-mode vacuum: zero mean, identity covariance."""
    if num_modes < 1:
        raise ValueError("number of modes must be at least 1")
    return GaussianState(np.zeros(2 * num_modes), np.eye(2 * num_modes))


def make_thermal(mean_photons: float, num_modes: int = 1) -> GaussianState:
    """Tensor power of single-mode thermal states.

    Args:
        mean_photons (float): mean photon number N >= 0 per mode
        num_modes (int): number of modes

    Returns:
        GaussianState: zero mean, covariance ``(2N + 1) I``
    """
    if num_modes < 1:
        raise ValueError("number of modes must be at least 1")
    if mean_photons < 0:
        raise ValueError("mean photon number must be non-negative")
    dim = 2 * num_modes
    return GaussianState(np.zeros(dim), (2.0 * mean_photons + 1.0) * np.eye(dim))


def _check_mode(mode: int, num_modes: int):
    if not 0 <= mode < num_modes:
        raise ValueError(f"mode {mode} out of range for {num_modes} modes")


def _embed_pair(block: np.ndarray, mode_a: int, mode_b: int, num_modes: int) -> np.ndarray:
    """Embed a 4x4 two-mode block, given in (Qa, Pa, Qb, Pb) order."""
    out = np.eye(2 * num_modes)
    idx = [2 * mode_a, 2 * mode_a + 1, 2 * mode_b, 2 * mode_b + 1]
    out[np.ix_(idx, idx)] = block
    return out


def single_mode_squeezer(r: float, mode: int = 0, num_modes: int = 1) -> SymplecticOp:
    """Single-mode squeezer with parameter r.

    On the target mode, ``S = diag(e^-r, e^r)``, so acting on vacuum gives
    quadrature variances ``(e^-2r, e^2r)``.

    Args:
        r (float): squeezing parameter (r > 0 squeezes Q)
        mode (int): target mode index
        num_modes (int): total mode count of the operator

    Returns:
        SymplecticOp
    """
    _check_mode(mode, num_modes)
    matrix = np.eye(2 * num_modes)
    matrix[2 * mode, 2 * mode] = np.exp(-r)
    matrix[2 * mode + 1, 2 * mode + 1] = np.exp(r)
    return SymplecticOp(matrix, np.zeros(2 * num_modes))


def two_mode_squeezer(r: float, mode_a: int = 0, mode_b: int = 1,
                      num_modes: int = 2) -> SymplecticOp:
    """Two-mode squeezer producing the EPR state from vacuum.

    In (Qa, Pa, Qb, Pb) order the block is::

        [[ cosh r, 0,       sinh r, 0      ],
         [ 0,      cosh r,  0,     -sinh r ],
         [ sinh r, 0,       cosh r, 0      ],
         [ 0,     -sinh r,  0,      cosh r ]]

    Acting on two-mode vacuum this yields the covariance with diagonal
    ``cosh 2r`` and cross blocks ``sinh 2r * diag(1, -1)``: correlated Q
    quadratures, anti-correlated P quadratures.

    Args:
        r (float): two-mode squeezing parameter
        mode_a (int): first mode index
        mode_b (int): second mode index
        num_modes (int): total mode count of the operator

    Returns:
        SymplecticOp
    """
    if mode_a == mode_b:
        raise ValueError("two-mode squeezer requires two distinct modes")
    _check_mode(mode_a, num_modes)
    _check_mode(mode_b, num_modes)
    ch, sh = np.cosh(r), np.sinh(r)
    block = np.array(
        [
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ]
    )
    return SymplecticOp(_embed_pair(block, mode_a, mode_b, num_modes),
                        np.zeros(2 * num_modes))


def beam_splitter(tau: float, mode_a: int = 0, mode_b: int = 1,
                  num_modes: int = 2) -> SymplecticOp:
    """Beam splitter of transmissivity tau mixing two modes.

    Phase convention (in (Qa, Pa, Qb, Pb) order, t = sqrt(tau),
    u = sqrt(1 - tau))::

        [[ t, 0, -u, 0 ],
         [ 0, t,  0, -u],
         [ u, 0,  t, 0 ],
         [ 0, u,  0, t ]]

    This choice makes the balanced splitter (tau = 1/2) send the EPR state
    of ``two_mode_squeezer(r)`` to a rotation-free product of single-mode
    squeezed vacua, Q-squeezed on output a and P-squeezed on output b, and
    maps a displacement (q, p) on input a to (q, p)/sqrt(2) on both
    outputs.  The matrix is orthogonal as well as symplectic.

    Args:
        tau (float): transmissivity in [0, 1] (tau = 1 is the identity)
        mode_a (int): first mode index
        mode_b (int): second mode index
        num_modes (int): total mode count of the operator

    Returns:
        SymplecticOp
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError("transmissivity must lie in [0, 1]")
    if mode_a == mode_b:
        raise ValueError("beam splitter requires two distinct modes")
    _check_mode(mode_a, num_modes)
    _check_mode(mode_b, num_modes)
    t, u = np.sqrt(tau), np.sqrt(1.0 - tau)
    block = np.array(
        [
            [t, 0.0, -u, 0.0],
            [0.0, t, 0.0, -u],
            [u, 0.0, t, 0.0],
            [0.0, u, 0.0, t],
        ]
    )
    return SymplecticOp(_embed_pair(block, mode_a, mode_b, num_modes),
                        np.zeros(2 * num_modes))


def displacement(q: float, p: float, mode: int = 0, num_modes: int = 1) -> SymplecticOp:
    """Displacement as a SymplecticOp: identity matrix, offset (q, p) on ``mode``."""
    _check_mode(mode, num_modes)
    offset = np.zeros(2 * num_modes)
    offset[2 * mode] = q
    offset[2 * mode + 1] = p
    return SymplecticOp(np.eye(2 * num_modes), offset)


def displace(state: GaussianState, q: float, p: float, mode: int = 0) -> GaussianState:
    """Shift the mean of ``mode`` by (q, p); the covariance is unchanged."""
    _check_mode(mode, state.num_modes)
    mean = state.mean.copy()
    mean[2 * mode] += q
    mean[2 * mode + 1] += p
    return GaussianState(mean, state.cov)


def apply(op: SymplecticOp, state: GaussianState) -> GaussianState:
    """Apply a symplectic operation to a state.

    Returns a new state with ``mean -> S mean + d`` and ``cov -> S cov S^T``.
    The conjugated covariance is re-symmetrized to suppress round-off drift.
    """
    if op.matrix.shape[0] != state.mean.size:
        raise ValueError(
            f"operator acts on {op.num_modes} modes but state has {state.num_modes}"
        )
    mean = op.matrix @ state.mean + op.offset
    cov = op.matrix @ state.cov @ op.matrix.T
    cov = 0.5 * (cov + cov.T)
    return GaussianState(mean, cov)
