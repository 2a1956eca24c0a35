"""Independent brute-force validators for the closed-form pipeline.

Nothing here reuses the marginalization formulas it is meant to check:
the kernel integral is done by Gauss-Hermite quadrature on the raw
wavepacket product, occupancies are recovered as eigenvalues of the
grid-discretized kernel, derivatives are checked by central differences,
and the equilibrium is re-found by a derivative-free coordinate search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equilibrium import ALPHA, BETA, Configuration, lattice_guess
from .errors import CoincidentPositions, DimensionTooLarge, NoConvergence, UnsupportedLimit
from .modes import NormalModes, ground_state_precision
from .potential import SystemSpec, potential_gradient, potential_value

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Hermite order and grid extent (in site-width units)."""

    points_per_dim: int = 40
    grid_halfwidth: float = 8.0

    def __post_init__(self):
        if self.points_per_dim < 2:
            raise ValueError("points_per_dim must be at least 2")
        if not self.grid_halfwidth > 0:
            raise ValueError("grid_halfwidth must be positive")


def quadrature_kernel(
    modes: NormalModes,
    config: Configuration,
    site: int,
    x: float,
    x_prime: float,
    quad: QuadratureSpec | None = None,
) -> float:
    """Direct (N-1)-dimensional integral defining the site kernel.

    The two wavepacket factors are evaluated pointwise from the mode data
    and integrated over the off-site coordinates on a tensor Gauss-Hermite
    grid.  Nodes are placed in the eigenbasis of the off-site precision
    block, which makes the weight function exactly the Gauss-Hermite one,
    so convergence in ``points_per_dim`` is superexponential.

    Raises DimensionTooLarge beyond four particles (cost grows as
    points**(N-1)).
    """
    quad = QuadratureSpec() if quad is None else quad
    n = config.n_particles
    if n > 4:
        raise DimensionTooLarge("direct quadrature is limited to four particles")
    if not 1 <= site <= n:
        raise ValueError(f"site must lie in 1..{n}")
    freqs = modes.frequencies
    rows = modes.mode_matrix
    idx = site - 1
    rest = [j for j in range(n) if j != idx]
    precision = ground_state_precision(modes)
    block = precision[np.ix_(rest, rest)]
    block_eigs, block_vecs = np.linalg.eigh(block)

    nodes, weights = np.polynomial.hermite.hermgauss(quad.points_per_dim)
    grids = np.meshgrid(*([nodes] * (n - 1)), indexing="ij")
    t = np.stack([g.ravel() for g in grids], axis=1)
    weight = np.ones(t.shape[0])
    for g in np.meshgrid(*([weights] * (n - 1)), indexing="ij"):
        weight = weight * g.ravel()
    off_site = (t / np.sqrt(block_eigs)) @ block_vecs.T

    def log_amplitude(points: np.ndarray) -> np.ndarray:
        mode_coords = points @ rows.T
        return 0.25 * np.sum(np.log(freqs / np.pi)) - 0.5 * (mode_coords**2) @ freqs

    z = np.empty((t.shape[0], n))
    z[:, rest] = off_site
    z[:, idx] = x - config.positions[idx]
    z_prime = z.copy()
    z_prime[:, idx] = x_prime - config.positions[idx]
    # the Gauss-Hermite weight exp(-|t|^2) is divided back out of the integrand
    exponent = log_amplitude(z) + log_amplitude(z_prime) + np.sum(t**2, axis=1)
    jacobian = float(np.prod(1.0 / np.sqrt(block_eigs)))
    return float(weight @ np.exp(exponent)) * jacobian / n


def nystrom_grid(kernel, points: int = 400, halfwidth: float = 8.0) -> np.ndarray:
    """Uniform grid covering ``halfwidth`` site widths around the center."""
    reach = halfwidth * kernel.width
    return np.linspace(kernel.center - reach, kernel.center + reach, points)


def _trapezoid_weights(grid: np.ndarray) -> np.ndarray:
    weights = np.empty_like(grid)
    weights[1:-1] = 0.5 * (grid[2:] - grid[:-2])
    weights[0] = 0.5 * (grid[1] - grid[0])
    weights[-1] = 0.5 * (grid[-1] - grid[-2])
    return weights


def nystrom_occupancies(kernel_evaluator, grid, top_k: int) -> np.ndarray:
    """Leading eigenvalues of a symmetric kernel discretized on a grid.

    ``kernel_evaluator(x, x_prime)`` must broadcast over arrays.  The
    kernel matrix is scaled by sqrt of the trapezoid weights on both
    sides, which preserves the spectrum of the integral operator.
    """
    grid = np.asarray(grid, dtype=float)
    mesh_x, mesh_xp = np.meshgrid(grid, grid, indexing="ij")
    matrix = np.asarray(kernel_evaluator(mesh_x, mesh_xp), dtype=float)
    root_w = np.sqrt(_trapezoid_weights(grid))
    scaled = root_w[:, None] * matrix * root_w[None, :]
    scaled = 0.5 * (scaled + scaled.T)
    eigenvalues = np.linalg.eigvalsh(scaled)[::-1]
    return eigenvalues[:top_k]


def _golden_section(func, lo: float, hi: float, xtol: float) -> float:
    left = hi - _GOLDEN * (hi - lo)
    right = lo + _GOLDEN * (hi - lo)
    f_left, f_right = func(left), func(right)
    while hi - lo > xtol:
        if f_left < f_right:
            hi, right, f_right = right, left, f_left
            left = hi - _GOLDEN * (hi - lo)
            f_left = func(left)
        else:
            lo, left, f_left = left, right, f_right
            right = lo + _GOLDEN * (hi - lo)
            f_right = func(right)
    return 0.5 * (lo + hi)


def _parabolic_sweeps(value, positions, step, max_sweeps, move_tol):
    n = positions.size
    for _ in range(max_sweeps):
        moved = 0.0
        for k in range(n):
            bump = np.zeros(n)
            bump[k] = step
            f0 = value(positions)
            f_plus = value(positions + bump)
            f_minus = value(positions - bump)
            denom = f_plus - 2.0 * f0 + f_minus
            if denom > 0:
                delta = -0.5 * step * (f_plus - f_minus) / denom
                positions[k] += delta
                moved = max(moved, abs(delta))
        if moved < move_tol:
            break
    return positions


def independent_minimum(spec: SystemSpec, tol: float = 1e-8) -> Configuration:
    """Re-find the ordered minimum without derivatives.

    Cyclic golden-section search per coordinate from the plain unit
    lattice, followed by parabolic-fit polish sweeps that push the result
    well below ``tol`` despite working from function values only.  Meant
    for cross-checking the Newton solver at small N.
    """
    if spec.interaction.is_hard_core:
        raise UnsupportedLimit("the hard-core equilibrium is the lattice itself")
    n = spec.n_particles
    golden_xtol = min(1e-7, tol * 10.0)
    golden_settle = min(1e-6, tol * 100.0)
    polish_settle = min(1e-11, tol / 10.0)

    def value(pos: np.ndarray) -> float:
        try:
            return potential_value(spec, pos)
        except CoincidentPositions:
            return np.inf

    positions = lattice_guess(n).positions.copy()
    for sweep in range(400):
        moved = 0.0
        for k in range(n):
            lo = positions[k - 1] + 1e-9 if k > 0 else positions[k] - 3.0
            hi = positions[k + 1] - 1e-9 if k < n - 1 else positions[k] + 3.0

            def line(coord: float, k: int = k) -> float:
                trial = positions.copy()
                trial[k] = coord
                return value(trial)

            best = _golden_section(line, lo, hi, golden_xtol)
            moved = max(moved, abs(best - positions[k]))
            positions[k] = best
        if moved < golden_settle:
            break
    else:
        raise NoConvergence("coordinate descent did not settle within 400 sweeps")
    positions = _parabolic_sweeps(value, positions, 1e-5, 300, polish_settle)
    positions = _parabolic_sweeps(value, positions, 3e-6, 100, polish_settle)
    residual = float(np.max(np.abs(potential_gradient(spec, positions))))
    kind = ALPHA if spec.interaction.is_log_limit else BETA
    return Configuration(positions, kind, residual)


def momentum_quadrature(kernels, k: float, points: int = 60) -> float:
    """Two-dimensional quadrature of the momentum integral at one k.

    Integrates (1/2pi) * kernel(x, x') * cos(k (x - x')) per site with a
    tensor Gauss-Hermite rule, as an independent check of the analytic
    per-site Fourier transform.
    """
    nodes, weights = np.polynomial.hermite.hermgauss(points)
    mesh_s, mesh_sp = np.meshgrid(nodes, nodes, indexing="ij")
    weight = np.outer(weights, weights)
    total = 0.0
    for kernel in kernels:
        scale = np.sqrt(kernel.a)
        integrand = np.exp((kernel.b / kernel.a) * mesh_s * mesh_sp) * np.cos(k * (mesh_s - mesh_sp) / scale)
        total += kernel.amplitude / (2.0 * np.pi * kernel.a) * float(np.sum(weight * integrand))
    return total


def fd_gradient(func, positions: np.ndarray, step: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of a scalar function."""
    positions = np.asarray(positions, dtype=float)
    grad = np.zeros_like(positions)
    for k in range(positions.size):
        bump = np.zeros_like(positions)
        bump[k] = step
        grad[k] = (func(positions + bump) - func(positions - bump)) / (2.0 * step)
    return grad


def fd_jacobian(vector_func, positions: np.ndarray, step: float = 1e-5) -> np.ndarray:
    """Central-difference Jacobian of a vector function (columns vary one coordinate)."""
    positions = np.asarray(positions, dtype=float)
    columns = []
    for k in range(positions.size):
        bump = np.zeros_like(positions)
        bump[k] = step
        columns.append((vector_func(positions + bump) - vector_func(positions - bump)) / (2.0 * step))
    return np.stack(columns, axis=1)


def random_admissible_positions(rng: np.random.Generator, n: int, min_gap: float = 0.4, span: float = 3.0) -> np.ndarray:
    """Sorted random positions with a guaranteed minimum pair separation."""
    for _ in range(1000):
        candidate = np.sort(rng.uniform(-span, span, size=n))
        if np.all(np.diff(candidate) >= min_gap):
            return candidate
    raise NoConvergence("could not draw well-separated positions; lower min_gap or raise span")
