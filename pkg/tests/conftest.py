"""Shared helpers: cached pipeline runs keyed by (n, interaction token)."""

import functools

from wigmol import (
    Interaction,
    SystemSpec,
    all_site_kernels,
    compute_modes,
    solve_equilibrium,
)

LOG = "log"


def interaction_for(token):
    if token == LOG:
        return Interaction.log_limit()
    if token == "inf":
        return Interaction.hard_core()
    return Interaction.power_law(float(token))


@functools.lru_cache(maxsize=None)
def solved(n, token, tol=1e-12):
    spec = SystemSpec(n, interaction_for(token))
    return spec, solve_equilibrium(spec, tol=tol)


@functools.lru_cache(maxsize=None)
def kernel_set(n, token, tol=1e-12):
    spec, config = solved(n, token, tol)
    normal_modes = compute_modes(spec, config)
    kernels = all_site_kernels(normal_modes, config)
    return spec, config, normal_modes, kernels
