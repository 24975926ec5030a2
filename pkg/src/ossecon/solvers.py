"""Numerical routes that re-derive the closed forms independently.

Three cross-checks on :mod:`ossecon.model`: a damped fixed-point
iteration on the free-entry condition, a planner optimum found by
golden-section search, and entry elasticities from central finite
differences through full solves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .model import (
    Equilibrium,
    EntryElasticities,
    ModelParams,
    derived_constants,
    development_cost,
    equilibrium_from_mass,
    solve_baseline,
)

__all__ = [
    "SolverSettings",
    "FirstBestResult",
    "ConvergenceError",
    "free_entry_fixed_point",
    "welfare_coefficients",
    "first_best",
    "fd_elasticities",
]

# Half damping in log space.  The free-entry map has log-slope beta/gamma
# in (0, 1), so the damped iteration contracts at factor 1 - eta/2.
_DAMPING = 0.5

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class ConvergenceError(RuntimeError):
    """An iterative routine ran out of iterations or lost its bracket."""

    def __init__(self, message: str, last_value: float, residual: float):
        self.last_value = last_value
        self.residual = residual
        super().__init__(f"{message} (last value {last_value:.6g}, residual {residual:.3g})")


@dataclass(frozen=True)
class SolverSettings:
    """Tolerances and brackets for the numerical routines.

    Attributes:
        rel_tol: Relative convergence tolerance on the iterate.
        max_iter: Iteration cap before raising :class:`ConvergenceError`.
        fd_step: Log-space step for central finite differences.
        bracket_lo: Lower end of the entry-mass search bracket.
        bracket_hi: Upper end of the entry-mass search bracket.
    """

    rel_tol: float = 1e-12
    max_iter: int = 10_000
    fd_step: float = 1e-4
    bracket_lo: float = 1e-8
    bracket_hi: float = 1e8

    def __post_init__(self):
        if not self.rel_tol > 0.0:
            raise ValueError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        if not self.fd_step > 0.0:
            raise ValueError(f"fd_step must be positive, got {self.fd_step}")
        if not 0.0 < self.bracket_lo < self.bracket_hi:
            raise ValueError(
                f"need 0 < bracket_lo < bracket_hi, got [{self.bracket_lo}, {self.bracket_hi}]"
            )


@dataclass(frozen=True)
class FirstBestResult:
    """Planner benchmark against the equilibrium entry mass.

    Attributes:
        m_fb: Welfare-maximizing entry mass.
        welfare_fb: Welfare (user utility net of total build cost) at
            ``m_fb``.
        foc_residual: Absolute first-order-condition residual at ``m_fb``.
        m_eq: Free-entry equilibrium mass for the same fundamentals.
        underprovision: True when the market enters less than the planner
            would (``m_eq < m_fb``).
    """

    m_fb: float
    welfare_fb: float
    foc_residual: float
    m_eq: float
    underprovision: bool


def _fixed_point_log_mass(
    params: ModelParams,
    pi_eff: float,
    u_eff: float,
    s: SolverSettings,
    m_start: float,
) -> float:
    """Converged ``log m`` of the damped free-entry iteration."""
    if not pi_eff > 0.0:
        raise ValueError(f"pi_effective must be positive, got {pi_eff}")
    if not u_eff > 0.0:
        raise ValueError(f"u_effective must be positive, got {u_eff}")
    if not m_start > 0.0:
        raise ValueError(f"m_start must be positive, got {m_start}")
    d = derived_constants(params)
    coef = (
        params.sigma
        / (params.gamma - params.sigma)
        * pi_eff
        / d.lambda_agg**params.sigma
    )
    log_m = math.log(m_start)
    for _ in range(s.max_iter):
        phi = development_cost(params, math.exp(log_m), pi_eff, u_eff)
        step = _DAMPING * (math.log(coef / phi) - log_m)
        log_m += step
        if abs(step) <= s.rel_tol:
            return log_m
    raise ConvergenceError(
        "free-entry iteration did not converge", math.exp(log_m), abs(step)
    )


def free_entry_fixed_point(
    params: ModelParams,
    pi_effective: float | None = None,
    u_effective: float | None = None,
    settings: SolverSettings | None = None,
    m_start: float = 1.0,
) -> Equilibrium:
    """Solve for entry mass by iterating the free-entry condition.

    Iterates ``m -> (sigma / (gamma - sigma)) * pi / (Lambda**sigma *
    Phi(m))``, the mass at which the expected entry payoff equals the
    build cost evaluated at the current mass, with half damping in log
    space.  Agrees with the closed form without ever using it.
    """
    s = settings if settings is not None else SolverSettings()
    pi_eff = params.pi_bar if pi_effective is None else pi_effective
    u_eff = params.u_base if u_effective is None else u_effective
    log_m = _fixed_point_log_mass(params, pi_eff, u_eff, s, m_start)
    return equilibrium_from_mass(params, math.exp(log_m), pi_eff, u_eff)


def welfare_coefficients(
    params: ModelParams,
    pi_effective: float | None = None,
    u_effective: float | None = None,
) -> tuple[float, float]:
    """Coefficients ``(c_u, c_phi)`` of welfare ``W(m) = c_u * m**(1/gamma) - c_phi * m**eta``.

    The first term is user utility as a function of entry mass, the
    second the total build cost ``m * Phi(m)``.
    """
    pi_eff = params.pi_bar if pi_effective is None else pi_effective
    u_eff = params.u_base if u_effective is None else u_effective
    d = derived_constants(params)
    b, s, g = params.beta, params.sigma, params.gamma
    c_u = (
        d.lambda_agg ** (s / g)
        * (pi_eff / params.tau) ** (1.0 / s - 1.0 / g)
        * u_eff
    )
    c_phi = (
        params.kappa ** (1.0 - b)
        * u_eff**-b
        * d.lambda_agg ** (-b * s / g)
        * (params.tau / pi_eff) ** (b / s - b / g)
    )
    return c_u, c_phi


def first_best(
    params: ModelParams,
    pi_effective: float | None = None,
    u_effective: float | None = None,
    settings: SolverSettings | None = None,
) -> FirstBestResult:
    """Maximize welfare over entry mass and compare with the market.

    Golden-section search over ``log m`` brackets the maximum (the
    bracket is expanded geometrically if the optimum sits on an edge);
    one Newton step on the first-order condition, which is linear in
    ``log m`` for this objective, then sharpens the result to full
    precision.  Requires ``gamma > 1 + beta`` for an interior maximum.
    """
    s = settings if settings is not None else SolverSettings()
    if not params.gamma > 1.0 + params.beta:
        raise ValueError(
            "no interior welfare maximum: need gamma > 1 + beta, got "
            f"gamma={params.gamma}, beta={params.beta}"
        )
    c_u, c_phi = welfare_coefficients(params, pi_effective, u_effective)
    inv_g = 1.0 / params.gamma
    eta = derived_constants(params).eta

    def welfare(x: float) -> float:
        return c_u * math.exp(inv_g * x) - c_phi * math.exp(eta * x)

    lo, hi = math.log(s.bracket_lo), math.log(s.bracket_hi)
    xtol = max(s.rel_tol, 1e-13)
    edge = math.log(1e2)
    for _ in range(32):
        x_star = _golden_max(welfare, lo, hi, xtol, s.max_iter)
        if x_star - lo < edge:
            lo -= math.log(1e4)
        elif hi - x_star < edge:
            hi += math.log(1e4)
        else:
            break
    else:
        raise ConvergenceError(
            "first-best bracket expansion failed", math.exp(x_star), hi - lo
        )

    # FOC in logs: log(c_u/gamma) + x/gamma = log(eta*c_phi) + eta*x, linear
    # in x, so a single Newton step from the bracketed point is exact.
    x_newton = x_star - _foc_log(x_star, c_u, c_phi, inv_g, eta) / (inv_g - eta)
    if abs(x_newton - x_star) > 1e-4:
        raise ConvergenceError(
            "golden-section result far from the stationary point",
            math.exp(x_star),
            abs(x_newton - x_star),
        )
    m_fb = math.exp(x_newton)
    foc_residual = abs(
        inv_g * c_u * m_fb ** (inv_g - 1.0) - eta * c_phi * m_fb ** (eta - 1.0)
    )
    m_eq = solve_baseline(params, pi_effective, u_effective).m
    return FirstBestResult(
        m_fb=m_fb,
        welfare_fb=welfare(x_newton),
        foc_residual=foc_residual,
        m_eq=m_eq,
        underprovision=m_eq < m_fb,
    )


def _foc_log(x: float, c_u: float, c_phi: float, inv_g: float, eta: float) -> float:
    return math.log(c_u * inv_g) + inv_g * x - math.log(c_phi * eta) - eta * x


def _golden_max(f, lo: float, hi: float, xtol: float, max_iter: int) -> float:
    """Golden-section maximizer of a unimodal function on [lo, hi]."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (a + b) / 2.0


def fd_elasticities(
    params: ModelParams, settings: SolverSettings | None = None
) -> EntryElasticities:
    """Entry elasticities from central log-differences of full solves.

    Each fundamental is perturbed by ``exp(+-fd_step)`` and the entry
    mass re-solved through the free-entry iteration, so the result is
    independent of the closed-form elasticity algebra.  Only the mass is
    differentiated; the perturbations are valid even at parameter points
    sitting exactly on the interiority boundary.
    """
    s = settings if settings is not None else SolverSettings()
    h = s.fd_step

    def log_m(p: ModelParams, pi_scale: float = 1.0, u_scale: float = 1.0) -> float:
        return _fixed_point_log_mass(
            p, p.pi_bar * pi_scale, p.u_base * u_scale, s, 1.0
        )

    up, down = math.exp(h), math.exp(-h)
    wrt_pi = (log_m(params, pi_scale=up) - log_m(params, pi_scale=down)) / (2.0 * h)
    wrt_u = (log_m(params, u_scale=up) - log_m(params, u_scale=down)) / (2.0 * h)
    wrt_kappa = (
        log_m(replace(params, kappa=params.kappa * up))
        - log_m(replace(params, kappa=params.kappa * down))
    ) / (2.0 * h)
    wrt_tau = (
        log_m(replace(params, tau=params.tau * up))
        - log_m(replace(params, tau=params.tau * down))
    ) / (2.0 * h)
    return EntryElasticities(
        wrt_pi=wrt_pi, wrt_u=wrt_u, wrt_kappa=wrt_kappa, wrt_tau=wrt_tau
    )
