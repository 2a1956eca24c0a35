"""Per-site Gaussian kernels of the one-body density matrix and their spectra.

In the strongly localized regime each particle contributes a Gaussian
kernel to the one-body reduced density matrix,

    rho_i(x, x') = A * exp(-a*(u**2 + u'**2) + b*u*u'),   u = x - center_i,

obtained by integrating the ground-state wavepacket over every other
coordinate.  With m the on-site entry of the wavepacket precision matrix
M, r the coupling column and w = r.T @ inv(M_rest) @ r the Schur weight,
the marginalization gives a = m/2 - w/4 and b = w/2, while A follows from
the per-site trace 1/N.

Such a kernel diagonalizes in closed form: its eigenfunctions are
Hermite-Gaussian orbitals of width parameter eta = sqrt(4a**2 - b**2)
about the site center, and the occupancies form a geometric ladder
lambda_l = lambda_0 * y**l with

    y = (sqrt(2a + b) - sqrt(2a - b)) / (sqrt(2a + b) + sqrt(2a - b)).

The inverse purity of the assembled spectrum counts how many orbitals
carry significant weight; its relative excess over N measures how far
the state is from an N-orbital description.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .equilibrium import Configuration
from .errors import SingularBlock
from .modes import NormalModes, ground_state_precision

DEFAULT_TAIL_TOL = 1e-12
_LADDER_CAP = 200_000


@dataclass(frozen=True)
class SiteKernel:
    """Gaussian kernel parameters for one site (1-based site index)."""

    site: int
    center: float
    amplitude: float
    a: float
    b: float
    eta: float
    y: float

    @property
    def width(self) -> float:
        """Length scale 1/sqrt(eta) of the site orbitals."""
        return self.eta**-0.5


def site_kernel(modes: NormalModes, config: Configuration, site: int) -> SiteKernel:
    """Marginalize the ground-state wavepacket down to one site.

    Parameters
    ----------
    modes : NormalModes
        Modes of the solved configuration.
    config : Configuration
        The solved configuration itself (provides the site centers).
    site : int
        Site index in 1..N.

    Raises
    ------
    SingularBlock
        If the off-site block of the precision matrix cannot be inverted.
    """
    n = config.n_particles
    if not 1 <= site <= n:
        raise ValueError(f"site must lie in 1..{n}")
    precision = ground_state_precision(modes)
    idx = site - 1
    rest = [j for j in range(n) if j != idx]
    on_site = precision[idx, idx]
    column = precision[rest, idx]
    block = precision[np.ix_(rest, rest)]
    try:
        schur_weight = float(column @ np.linalg.solve(block, column))
    except np.linalg.LinAlgError:
        raise SingularBlock(f"off-site precision block is singular for site {site}")
    a = 0.5 * on_site - 0.25 * schur_weight
    b = 0.5 * schur_weight
    if not (0.0 < b < 2.0 * a):
        raise SingularBlock(f"kernel parameters out of range for site {site}: a={a:g}, b={b:g}")
    amplitude = np.sqrt((2.0 * a - b) / np.pi) / n
    sum_root = np.sqrt(2.0 * a + b)
    diff_root = np.sqrt(2.0 * a - b)
    eta = sum_root * diff_root
    y = (sum_root - diff_root) / (sum_root + diff_root)
    return SiteKernel(site, float(config.positions[idx]), float(amplitude), float(a), float(b), float(eta), float(y))


def all_site_kernels(modes: NormalModes, config: Configuration) -> tuple[SiteKernel, ...]:
    """Kernels for every site, computing each mirror pair once.

    Reflection symmetry ties site i to site N - i + 1 with identical
    (A, a, b) and negated center, so only the left half is marginalized.
    """
    n = config.n_particles
    left = [site_kernel(modes, config, i + 1) for i in range((n + 1) // 2)]
    kernels = list(left)
    for idx in range((n + 1) // 2, n):
        partner = left[n - 1 - idx]
        kernels.append(
            SiteKernel(
                idx + 1,
                float(config.positions[idx]),
                partner.amplitude,
                partner.a,
                partner.b,
                partner.eta,
                partner.y,
            )
        )
    return tuple(kernels)


def kernel_value(kernel: SiteKernel, x, x_prime) -> np.ndarray:
    """Evaluate the kernel rho_i(x, x'); broadcasts over array input."""
    u = np.asarray(x, dtype=float) - kernel.center
    u_prime = np.asarray(x_prime, dtype=float) - kernel.center
    return kernel.amplitude * np.exp(-kernel.a * (u**2 + u_prime**2) + kernel.b * u * u_prime)


def site_density(kernel: SiteKernel, x) -> np.ndarray:
    """Diagonal of the kernel: A * exp(-(2a - b) * (x - center)**2)."""
    u = np.asarray(x, dtype=float) - kernel.center
    return kernel.amplitude * np.exp(-(2.0 * kernel.a - kernel.b) * u**2)


def natural_orbital(kernel: SiteKernel, l: int, x) -> np.ndarray:
    """Hermite-Gaussian eigenfunction u_l of the kernel, evaluated at x.

    Uses the stable two-term recurrence for orthonormal oscillator
    functions, so large l does not overflow.
    """
    if l < 0:
        raise ValueError("the orbital index l must be non-negative")
    xi = np.sqrt(kernel.eta) * (np.asarray(x, dtype=float) - kernel.center)
    previous = np.pi**-0.25 * np.exp(-0.5 * xi**2)
    if l == 0:
        return kernel.eta**0.25 * previous
    current = np.sqrt(2.0) * xi * previous
    for k in range(1, l):
        current, previous = xi * np.sqrt(2.0 / (k + 1)) * current - np.sqrt(k / (k + 1)) * previous, current
    return kernel.eta**0.25 * current


def leading_occupancy(kernel: SiteKernel) -> float:
    """lambda_0 = A * sqrt(pi * (1 - y**2) / eta)."""
    return float(kernel.amplitude * np.sqrt(np.pi * (1.0 - kernel.y**2) / kernel.eta))


def occupancy(kernel: SiteKernel, l: int) -> float:
    """l-th rung of the geometric occupancy ladder of one site."""
    return leading_occupancy(kernel) * kernel.y**l


def site_purity(kernel: SiteKernel) -> float:
    """Closed-form sum of squared occupancies of one site: A**2 * pi / eta."""
    return float(kernel.amplitude**2 * np.pi / kernel.eta)


@dataclass(frozen=True)
class OccupancySpectrum:
    """Truncated occupancy ladders plus the derived correlation numbers.

    ``ladders[i]`` holds lambda_0 .. lambda_lmax for site i + 1, truncated
    where the analytic geometric tail drops below the requested tolerance;
    ``tail_bounds[i]`` is that remaining tail.  ``degree_of_correlation``
    is the inverse purity and ``delta_k`` its relative excess over N.
    """

    ladders: tuple[np.ndarray, ...]
    tail_bounds: np.ndarray
    purity: float
    degree_of_correlation: float
    delta_k: float

    def __post_init__(self):
        tails = np.array(self.tail_bounds, dtype=float)
        tails.flags.writeable = False
        frozen = []
        for ladder in self.ladders:
            arr = np.array(ladder, dtype=float)
            arr.flags.writeable = False
            frozen.append(arr)
        object.__setattr__(self, "tail_bounds", tails)
        object.__setattr__(self, "ladders", tuple(frozen))

    @property
    def n_sites(self) -> int:
        return len(self.ladders)

    @property
    def l_max(self) -> int:
        return max(ladder.size for ladder in self.ladders) - 1

    @property
    def tail_bound(self) -> float:
        return float(np.sum(self.tail_bounds))


def _ladder(kernel: SiteKernel, tail_tol: float) -> tuple[np.ndarray, float]:
    lam0 = leading_occupancy(kernel)
    y = kernel.y
    # smallest l_max with lam0 * y**(l_max + 1) / (1 - y) below tail_tol
    target = tail_tol * (1.0 - y) / lam0
    if y**1 < target:
        l_max = 0
    else:
        l_max = min(int(np.ceil(np.log(target) / np.log(y))) - 1, _LADDER_CAP)
        l_max = max(l_max, 0)
    # seeding the cumulative product with lam0 keeps every rung exactly
    # the previous one times y, even in floating point
    ladder = np.cumprod(np.concatenate(([lam0], np.full(l_max, y))))
    tail = float(ladder[-1] * y / (1.0 - y))
    return ladder, tail


def occupancy_spectrum(kernels, tail_tol: float = DEFAULT_TAIL_TOL) -> OccupancySpectrum:
    """Assemble the occupancy spectrum of a full kernel set.

    The purity is accumulated in closed form from mirror pairs (plus the
    unpaired middle site for odd N); the ladders are truncated per site by
    the analytic geometric tail.
    """
    kernels = tuple(kernels)
    n = len(kernels)
    ladders, tails = zip(*(_ladder(k, tail_tol) for k in kernels))
    half = n // 2
    purity = 2.0 * sum(site_purity(k) for k in kernels[:half])
    if n % 2:
        purity += site_purity(kernels[half])
    degree = 1.0 / purity
    return OccupancySpectrum(ladders, np.array(tails), purity, degree, (degree - n) / n)


def rank_n_density_approximation(kernels, spectrum: OccupancySpectrum, x) -> np.ndarray:
    """Density rebuilt from the leading orbital of every site.

    Keeping only the l = 0 rung of each ladder gives the N-orbital
    approximation sum_i lambda_0_i * u_0_i(x)**2; it is accurate exactly
    when the correlation excess delta_k is small.
    """
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x, dtype=float)
    for kernel, ladder in zip(kernels, spectrum.ladders):
        total = total + ladder[0] * natural_orbital(kernel, 0, x) ** 2
    return total
