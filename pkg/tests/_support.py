"""Shared helpers for the test suite: random valid parameter draws."""

from __future__ import annotations

import dataclasses
import math
import random

from ossecon import ModelParams, derived_constants, entry_mass, utility_multiplier


def draw_valid_params(
    rng: random.Random,
    interior_through_v: float = 0.0,
    q0_target: float = 1.02,
    first_best_ok: bool = False,
) -> ModelParams:
    """One random parameter set satisfying every model restriction.

    With ``interior_through_v > 0`` the sharing cost is scaled up so the
    long-run solve stays interior (q0 >= q0_target) for every v up to
    that share; the long-run cutoff is decreasing in v, so checking the
    endpoint suffices.  ``first_best_ok`` additionally enforces
    gamma > 1 + beta so the planner problem has an interior maximum.
    """
    sigma = rng.uniform(1.1, 2.6)
    beta = rng.uniform(0.05, 0.85)
    gamma_floor = sigma + 0.3
    if first_best_ok:
        gamma_floor = max(gamma_floor, 1.0 + beta + 0.1)
    gamma = rng.uniform(gamma_floor, 7.0)
    theta = rng.uniform(max(sigma + 0.1, 1.2), 6.0)
    params = ModelParams(
        sigma=sigma,
        gamma=gamma,
        theta=theta,
        beta=beta,
        kappa=math.exp(rng.uniform(-1.0, 1.0)),
        tau=math.exp(rng.uniform(-1.0, 1.0)),
        pi_bar=math.exp(rng.uniform(-1.0, 1.0)),
        zeta=0.0,
        u_base=math.exp(rng.uniform(-0.5, 0.5)),
    )
    if interior_through_v <= 0.0:
        return params
    v = interior_through_v
    pi_eff = params.pi_bar * (1.0 - v)
    u_eff = params.u_base * utility_multiplier(v, theta)
    q0 = _cutoff(params, pi_eff, u_eff)
    if q0 >= q0_target:
        return params
    # q0**gamma scales as tau**((1 - beta/sigma)/eta); solve for the tau
    # factor that lifts the long-run cutoff to the target.
    eta = derived_constants(params).eta
    exponent = (1.0 - beta / sigma) / eta
    factor = math.exp(gamma * math.log(q0_target / q0) / exponent)
    return dataclasses.replace(params, tau=params.tau * factor)


def _cutoff(params: ModelParams, pi_eff: float, u_eff: float) -> float:
    d = derived_constants(params)
    m = entry_mass(params, pi_eff, u_eff)
    return (params.tau * m * d.lambda_agg**params.sigma / pi_eff) ** (1.0 / params.gamma)
