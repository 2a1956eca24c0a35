"""Momentum distributions and assembled real-space density profiles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equilibrium import coordinate_scale, lattice_guess
from .potential import SystemSpec
from .rdm import SiteKernel, site_density


@dataclass(frozen=True)
class SampledFunction:
    """A non-negative function tabulated on a strictly increasing grid."""

    abscissae: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.array(self.abscissae, dtype=float)
        vals = np.array(self.values, dtype=float)
        if grid.shape != vals.shape or grid.ndim != 1:
            raise ValueError("abscissae and values must be 1-d arrays of equal length")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("abscissae must be strictly increasing")
        if np.any(vals < 0):
            raise ValueError("values must be non-negative")
        grid.flags.writeable = False
        vals.flags.writeable = False
        object.__setattr__(self, "abscissae", grid)
        object.__setattr__(self, "values", vals)

    def integral(self) -> float:
        """Trapezoid integral over the grid."""
        return float(np.trapezoid(self.values, self.abscissae))


def default_k_grid(points: int = 801, halfwidth: float = 8.0) -> np.ndarray:
    return np.linspace(-halfwidth, halfwidth, points)


def default_x_grid(kernels, centers=None, points: int = 2001, pad: float = 6.0) -> np.ndarray:
    """Grid spanning all centers plus ``pad`` site widths on each side."""
    kernels = tuple(kernels)
    if centers is None:
        centers = np.array([k.center for k in kernels])
    margin = pad * max(k.width for k in kernels)
    return np.linspace(np.min(centers) - margin, np.max(centers) + margin, points)


def momentum_distribution(kernels, k_grid=None) -> SampledFunction:
    """Momentum density of the kernel sum.

    Every site kernel Fourier-transforms to a centered Gaussian
    (A/eta) * exp(-(2a - b) k**2 / eta**2); the site centers drop out
    because only the coordinate difference carries the phase.  The total
    integrates to one.
    """
    k = default_k_grid() if k_grid is None else np.asarray(k_grid, dtype=float)
    total = np.zeros_like(k)
    for kernel in kernels:
        decay = (2.0 * kernel.a - kernel.b) / kernel.eta**2
        total = total + (kernel.amplitude / kernel.eta) * np.exp(-decay * k**2)
    return SampledFunction(k, total)


def fictitious_spacing(kernels) -> float:
    """Default plotting spacing: six times the widest site orbital."""
    return 6.0 * max(k.width for k in kernels)


def density_profile(
    kernels,
    spec: SystemSpec,
    x_grid=None,
    g: float | None = None,
    spacing: float | None = None,
    d_aux: float | None = None,
) -> SampledFunction:
    """Sum of site densities with relocated centers.

    Centers are placed either at the physical equilibrium positions for
    coupling ``g`` (pass ``d_aux`` as well for the log limit) or on an
    equispaced fictitious lattice with the given ``spacing``, the usual
    device for drawing the infinite-coupling profile on one axis.  With
    neither given, :func:`fictitious_spacing` is used.  Peak shapes stay
    in scaled coordinates, so the profile integrates to one regardless of
    placement.
    """
    kernels = tuple(kernels)
    if g is not None and spacing is not None:
        raise ValueError("give either g or spacing, not both")
    if g is not None:
        centers = np.array([k.center for k in kernels]) * coordinate_scale(spec, g, d_aux)
    else:
        if spacing is None:
            spacing = fictitious_spacing(kernels)
        centers = spacing * lattice_guess(len(kernels)).positions
    x = default_x_grid(kernels, centers) if x_grid is None else np.asarray(x_grid, dtype=float)
    total = np.zeros_like(x)
    for kernel, center in zip(kernels, centers):
        shifted = SiteKernel(kernel.site, float(center), kernel.amplitude, kernel.a, kernel.b, kernel.eta, kernel.y)
        total = total + site_density(shifted, x)
    return SampledFunction(x, total)


def hardcore_density(n: int, x_grid=None) -> SampledFunction:
    """Limiting density for an impenetrable repulsion.

    All N peaks share one profile, exp(-N (x - c_i)**2) / sqrt(pi N), on
    the unit lattice c_i = (2i - N - 1)/2.
    """
    centers = lattice_guess(n).positions
    if x_grid is None:
        width = 1.0 / np.sqrt(n)
        x = np.linspace(centers[0] - 6.0 * width, centers[-1] + 6.0 * width, 2001)
    else:
        x = np.asarray(x_grid, dtype=float)
    total = np.zeros_like(x)
    for center in centers:
        total = total + np.exp(-n * (x - center) ** 2) / np.sqrt(np.pi * n)
    return SampledFunction(x, total)
