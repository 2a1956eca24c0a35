"""Classical trap-plus-repulsion energy landscape in scaled coordinates.

N particles sit in a unit harmonic trap and repel each other through an
inverse power law 1/|x|**d.  Pulling the coupling strength out of the
coordinates leaves a one-parameter family of landscapes,

    V(beta) = 0.5*sum(beta**2) + sum_{i<j} 1/|beta_i - beta_j|**d,

and, for the logarithmic small-d limit (separate alpha coordinates),

    V(alpha) = sum(alpha**2) - sum_{i<j} log((alpha_i - alpha_j)**2).

Both variants get analytic values, gradients and curvature matrices here.
The hard-core d -> infinity limit has no smooth landscape and is rejected;
callers special-case it (its equilibrium is the unit lattice).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CoincidentPositions, UnsupportedLimit

_POWER_LAW = "power_law"
_LOG_LIMIT = "log_limit"
_HARD_CORE = "hard_core"


@dataclass(frozen=True)
class Interaction:
    """Repulsion variant: a finite power d, the log limit, or the hard core.

    Build instances through :meth:`power_law`, :meth:`log_limit` and
    :meth:`hard_core` rather than the raw constructor.
    """

    kind: str
    d: float | None = None

    def __post_init__(self):
        if self.kind not in (_POWER_LAW, _LOG_LIMIT, _HARD_CORE):
            raise ValueError(f"unknown interaction kind {self.kind!r}")
        if self.kind == _POWER_LAW:
            if self.d is None or not self.d > 0:
                raise ValueError("the power-law exponent d must be positive")
        elif self.d is not None:
            raise ValueError(f"{self.kind} carries no exponent")

    @classmethod
    def power_law(cls, d: float) -> "Interaction":
        return cls(_POWER_LAW, float(d))

    @classmethod
    def log_limit(cls) -> "Interaction":
        return cls(_LOG_LIMIT)

    @classmethod
    def hard_core(cls) -> "Interaction":
        return cls(_HARD_CORE)

    @property
    def is_power_law(self) -> bool:
        return self.kind == _POWER_LAW

    @property
    def is_log_limit(self) -> bool:
        return self.kind == _LOG_LIMIT

    @property
    def is_hard_core(self) -> bool:
        return self.kind == _HARD_CORE


@dataclass(frozen=True)
class SystemSpec:
    """Particle number plus repulsion variant."""

    n_particles: int
    interaction: Interaction

    def __post_init__(self):
        if self.n_particles < 2:
            raise ValueError("at least two particles are needed for a pair repulsion")


def _checked_positions(spec: SystemSpec, positions) -> tuple[np.ndarray, np.ndarray]:
    """Return (positions, pairwise differences), rejecting coincident pairs."""
    pos = np.atleast_1d(np.asarray(positions, dtype=float))
    n = spec.n_particles
    if pos.shape != (n,):
        raise ValueError(f"expected {n} positions, got shape {pos.shape}")
    diff = pos[:, None] - pos[None, :]
    off_diag = ~np.eye(n, dtype=bool)
    if np.any(diff[off_diag] == 0.0):
        raise CoincidentPositions("two particles share the same position")
    return pos, diff


def _reject_hard_core(spec: SystemSpec):
    if spec.interaction.is_hard_core:
        raise UnsupportedLimit("the hard-core limit has no smooth potential")


def potential_value(spec: SystemSpec, positions) -> float:
    """Scalar landscape value at the given scaled positions.

    Parameters
    ----------
    spec : SystemSpec
        Particle number and repulsion variant.
    positions : array_like, shape (N,)
        Scaled coordinates, pairwise distinct.

    Raises
    ------
    CoincidentPositions
        If two positions coincide exactly.
    UnsupportedLimit
        For the hard-core variant.
    """
    _reject_hard_core(spec)
    pos, diff = _checked_positions(spec, positions)
    sep = np.abs(diff[np.triu_indices(spec.n_particles, k=1)])
    if spec.interaction.is_log_limit:
        return float(np.sum(pos**2) - np.sum(np.log(sep**2)))
    return float(0.5 * np.sum(pos**2) + np.sum(sep ** (-spec.interaction.d)))


def potential_gradient(spec: SystemSpec, positions) -> np.ndarray:
    """Analytic first derivatives of :func:`potential_value`.

    At a solved equilibrium the max-norm of the result sits below the
    solver tolerance.  Raises like :func:`potential_value`.
    """
    _reject_hard_core(spec)
    pos, diff = _checked_positions(spec, positions)
    n = spec.n_particles
    eye = np.eye(n, dtype=bool)
    if spec.interaction.is_log_limit:
        inv = np.zeros_like(diff)
        inv[~eye] = 1.0 / diff[~eye]
        return 2.0 * pos - 2.0 * inv.sum(axis=1)
    d = spec.interaction.d
    sep = np.abs(diff)
    sep[eye] = 1.0
    slope = np.sign(diff) * sep ** (-d - 1.0)
    return pos - d * slope.sum(axis=1)


def potential_hessian(spec: SystemSpec, positions) -> np.ndarray:
    """Analytic curvature matrix at the given scaled positions.

    For the log-limit variant the returned matrix is half the raw second
    derivative of the alpha landscape.  That convention makes it the
    curvature of the physical-coordinate potential, which is what the
    normal-mode analysis needs; it also fixes the uniform vector as an
    exact eigenvector with eigenvalue 1 for every variant.
    """
    _reject_hard_core(spec)
    _, diff = _checked_positions(spec, positions)
    n = spec.n_particles
    eye = np.eye(n, dtype=bool)
    sep = np.abs(diff)
    sep[eye] = 1.0
    if spec.interaction.is_log_limit:
        coupling = sep**-2.0
    else:
        d = spec.interaction.d
        coupling = d * (d + 1.0) * sep ** (-d - 2.0)
    coupling[eye] = 0.0
    hess = -coupling
    hess[np.diag_indices(n)] = 1.0 + coupling.sum(axis=1)
    return hess
