"""Closed-form core of the open-source ecosystem entry model.

Developers sink a build cost, learn their project's quality (a Pareto
draw), and release it as open source only if the usage-based reward
covers a fixed sharing cost.  Users pick among shared packages under
Frechet taste shocks; when AI-mediated ("vibe") coding is available
they also choose, inside a second Frechet nest, between using a package
directly and using it through an AI intermediary.  Free entry pins down
the mass of projects started.

Everything in this module is exact algebra on the primitives.  The
independent numerical routes live in :mod:`ossecon.solvers` and the
agent-level simulation in :mod:`ossecon.mc`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "ModelParams",
    "DerivedConstants",
    "Equilibrium",
    "CounterfactualRatios",
    "BusinessModel",
    "SustainabilityChecks",
    "EntryElasticities",
    "Scenario",
    "NonInteriorEquilibriumError",
    "lambda_agg",
    "derived_constants",
    "vibe_share",
    "zeta_for_share",
    "utility_multiplier",
    "entry_mass",
    "development_cost",
    "equilibrium_from_mass",
    "solve_baseline",
    "solve_scenario",
    "developer_payoff",
    "expected_entry_payoff",
    "entry_elasticities",
    "welfare_and_quality",
    "short_run_ratios",
    "long_run_ratios",
    "min_monetization",
    "business_model_pi_ratio",
    "sustainability_checks",
]

# Relative slack on the q0 >= 1 interiority check.  The clean-defaults
# calibration puts the cutoff exactly on the lower support, so rounding in
# the closed forms must not trip the error there.  No clamping: q0 is
# reported as computed.
_INTERIOR_RTOL = 1e-9


class NonInteriorEquilibriumError(ValueError):
    """Sharing cutoff fell below the quality support.

    The truncated-Pareto algebra assumes every shared project has quality
    at least 1, i.e. ``q0 >= 1``, which holds iff
    ``tau * m * Lambda**sigma >= pi``.  When the reward per user is too
    large relative to the sharing cost, even the worst project would be
    shared and the interior formulas no longer apply.
    """

    def __init__(self, q0: float, tau_m_lambda: float, pi_effective: float):
        self.q0 = q0
        self.tau_m_lambda = tau_m_lambda
        self.pi_effective = pi_effective
        super().__init__(
            f"non-interior equilibrium: sharing cutoff q0={q0:.6g} < 1 "
            f"(tau*m*Lambda^sigma={tau_m_lambda:.6g} < pi={pi_effective:.6g})"
        )


class Scenario(str, Enum):
    """Usage-technology regimes the model can be solved under.

    ``BASELINE`` has no AI-mediated usage (v = 0).  ``SHORT_RUN`` gives
    developers the AI productivity multiplier while rewards and end-user
    consumption are still evaluated at the direct-usage technology.
    ``LONG_RUN`` additionally scales the per-user reward by the direct
    share ``1 - v`` and lets end users consume through the AI channel.
    ``CUSTOM_BUSINESS_MODEL`` is the long run with the reward decline
    softened by attribution and monetization coverage.
    """

    BASELINE = "baseline"
    SHORT_RUN = "short_run"
    LONG_RUN = "long_run"
    CUSTOM_BUSINESS_MODEL = "custom_business_model"


@dataclass(frozen=True)
class ModelParams:
    """Structural primitives of the ecosystem model.

    Defaults are the preferred calibration: quality tails from repository
    usage data, a software cost share of one third, and unit scale
    normalizations for the cost and reward shifters.

    Attributes:
        sigma: Substitutability across packages (outer Frechet shape).
            Must exceed 1 for the mean taste shock to exist.
        gamma: Pareto shape of project quality.  Must exceed ``sigma`` so
            the quality aggregate over shared projects is finite.
        theta: Substitutability between direct and AI-mediated usage of
            the same package (inner Frechet shape).  Must exceed 1, and
            also ``sigma``: two ways of using one package are closer
            substitutes than two distinct packages.
        beta: Software share in software production, in (0, 1).
        kappa: Labor cost shifter for building a project, > 0.
        tau: Fixed cost of sharing (maintenance, support), > 0.
        pi_bar: Reward per direct user, > 0.
        zeta: Relative productivity of AI-mediated usage, >= 0.
        u_base: Baseline productivity level absent vibe coding, > 0.
    """

    sigma: float = 1.5
    gamma: float = 3.0
    theta: float = 3.0
    beta: float = 1.0 / 3.0
    kappa: float = 1.0
    tau: float = 1.0
    pi_bar: float = 1.0
    zeta: float = 0.0
    u_base: float = 1.0

    def __post_init__(self):
        if not self.sigma > 1.0:
            raise ValueError(f"sigma must exceed 1, got {self.sigma}")
        if not self.gamma > self.sigma:
            raise ValueError(
                f"gamma must exceed sigma, got gamma={self.gamma} <= sigma={self.sigma}"
            )
        if not self.theta > 1.0:
            raise ValueError(f"theta must exceed 1, got {self.theta}")
        if not self.theta > self.sigma:
            raise ValueError(
                f"theta must exceed sigma, got theta={self.theta} <= sigma={self.sigma}"
            )
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must lie in (0, 1), got {self.beta}")
        for name in ("kappa", "tau", "pi_bar", "u_base"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.zeta < 0.0:
            raise ValueError(f"zeta must be non-negative, got {self.zeta}")


@dataclass(frozen=True)
class DerivedConstants:
    """Constants implied by the primitives, used throughout the algebra.

    Attributes:
        lambda_agg: Quality amplification from aggregation,
            ``(gamma / (gamma - sigma)) ** (1 / sigma)``.  Ratio of the
            ecosystem quality index to the cutoff quality.
        eta: Congestion exponent ``1 - beta / gamma``.  Entry mass scales
            as (fundamentals) ** (1 / eta).
        a_pi: Reward exponent ``1 + beta / sigma - beta / gamma`` in the
            reduced-form entry condition.
        omega_welfare: Welfare exponent ``1 / (gamma - beta)``: elasticity
            of equilibrium utility with respect to a pure reward shift.
        omega_bound: Monetization-floor exponent
            ``(1 / theta) / (1 / beta + 1 / sigma - 1 / gamma)``.  The
            reward may fall at most like ``(1 - v) ** omega_bound`` before
            long-run utility drops below its baseline.
    """

    lambda_agg: float
    eta: float
    a_pi: float
    omega_welfare: float
    omega_bound: float


def lambda_agg(sigma: float, gamma: float) -> float:
    """Quality amplification factor ``(gamma / (gamma - sigma)) ** (1 / sigma)``.

    Scale of the power ``sigma`` mean of Pareto(gamma) qualities above a
    cutoff, relative to the cutoff itself.  Diverges as ``gamma`` falls
    to ``sigma`` and tends to 1 as tails thin out.
    """
    if not sigma > 1.0:
        raise ValueError(f"sigma must exceed 1, got {sigma}")
    if not gamma > sigma:
        raise ValueError(f"gamma must exceed sigma, got gamma={gamma}, sigma={sigma}")
    return (gamma / (gamma - sigma)) ** (1.0 / sigma)


def derived_constants(params: ModelParams) -> DerivedConstants:
    """Evaluate the reduced-form constants for one parameter set."""
    inv_gap = 1.0 / params.beta + 1.0 / params.sigma - 1.0 / params.gamma
    return DerivedConstants(
        lambda_agg=lambda_agg(params.sigma, params.gamma),
        eta=1.0 - params.beta / params.gamma,
        a_pi=1.0 + params.beta / params.sigma - params.beta / params.gamma,
        omega_welfare=1.0 / (params.gamma - params.beta),
        omega_bound=(1.0 / params.theta) / inv_gap,
    )


def vibe_share(zeta: float, theta: float) -> float:
    """Share of usage routed through the AI channel.

    Each user draws independent Frechet(theta) shocks for the two usage
    modes and takes the better of quality ``q`` directly or ``zeta * q``
    through the intermediary, giving
    ``v = zeta**theta / (1 + zeta**theta)``.
    """
    if zeta < 0.0:
        raise ValueError(f"zeta must be non-negative, got {zeta}")
    if not theta > 1.0:
        raise ValueError(f"theta must exceed 1, got {theta}")
    if zeta <= 1.0:
        t = zeta**theta
        return t / (1.0 + t)
    # For zeta > 1 work with zeta**(-theta) so huge zeta cannot overflow;
    # clamp below 1 where the ratio rounds up, keeping the [0, 1) range
    # every consumer relies on.
    r = zeta**-theta
    return min(1.0 / (1.0 + r), math.nextafter(1.0, 0.0))


def zeta_for_share(v: float, theta: float) -> float:
    """Inverse of :func:`vibe_share`: the relative productivity behind share ``v``."""
    if not 0.0 <= v < 1.0:
        raise ValueError(f"v must lie in [0, 1), got {v}")
    if not theta > 1.0:
        raise ValueError(f"theta must exceed 1, got {theta}")
    return (v / (1.0 - v)) ** (1.0 / theta)


def utility_multiplier(v: float, theta: float) -> float:
    """Productivity gain from the usage nest, ``(1 - v) ** (-1 / theta)``.

    Expected best-of-both-modes payoff per unit of package quality.  Equals
    1 when the AI channel is unused and diverges as v approaches 1.
    """
    if not 0.0 <= v < 1.0:
        raise ValueError(f"v must lie in [0, 1), got {v}")
    if not theta > 1.0:
        raise ValueError(f"theta must exceed 1, got {theta}")
    return (1.0 - v) ** (-1.0 / theta)


@dataclass(frozen=True)
class Equilibrium:
    """A solved free-entry equilibrium.

    Attributes:
        m: Mass of projects started.
        q0: Sharing cutoff: the lowest quality released as open source.
        q_bar: Ecosystem quality index over shared projects,
            ``lambda_agg * q0``.
        m_s: Mass of shared projects, ``m * q0**(-gamma)``.  Equals
            ``pi / (tau * lambda_agg**sigma)``, independent of the cost
            side.
        phi: Per-project development cost at the equilibrium ecosystem
            productivity.
        utility: Expected best-choice utility of a user,
            ``q_bar * u * m_s**(1/sigma)``.
        pi: Reward per direct user in effect for this solve.
        u: Productivity multiplier entering user consumption.
        v: AI-usage share in effect.
        interior: True when the cutoff is at or above the quality
            support.  Baseline solves raise instead of returning a
            non-interior record; counterfactual scenario solves report
            the formula values with this flag cleared, because the
            counterfactual statements are about exactly those
            expressions.
    """

    m: float
    q0: float
    q_bar: float
    m_s: float
    phi: float
    utility: float
    pi: float
    u: float
    v: float
    interior: bool


@dataclass(frozen=True)
class CounterfactualRatios:
    """Equilibrium objects under a counterfactual, relative to v = 0.

    Attributes:
        m_ratio: Projects started, counterfactual over baseline.
        ms_ratio: Shared projects, counterfactual over baseline.
        qbar_ratio: Quality index ratio.
        utility_ratio: User utility ratio.
    """

    m_ratio: float
    ms_ratio: float
    qbar_ratio: float
    utility_ratio: float


@dataclass(frozen=True)
class BusinessModel:
    """Monetization coverage of AI-mediated usage.

    Attributes:
        alpha: Share of mediated usage attributed back to the package and
            rewarded at the full rate, in [0, 1].
        rho: Share of the remaining mediated usage that escapes any
            monetization, in [0, 1].
    """

    alpha: float
    rho: float

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError(f"rho must lie in [0, 1], got {self.rho}")


@dataclass(frozen=True)
class SustainabilityChecks:
    """Whether a business model keeps long-run utility at its baseline.

    Attributes:
        constraint_lhs: Unmonetized usage share ``(1 - alpha) * rho * v``.
        constraint_rhs: Largest reward decline compatible with baseline
            utility, ``1 - (1 - v) ** omega_bound``.
        sustainable: True when lhs <= rhs.
        rho_max: Largest leakage sustainable with no attribution
            (alpha = 0).
        alpha_min: Smallest attribution sustainable with full leakage
            (rho = 1).
    """

    constraint_lhs: float
    constraint_rhs: float
    sustainable: bool
    rho_max: float
    alpha_min: float


@dataclass(frozen=True)
class EntryElasticities:
    """Log-derivatives of entry mass with respect to the fundamentals.

    Attributes:
        wrt_pi: With respect to the reward per user.
        wrt_u: With respect to the productivity level.
        wrt_kappa: With respect to the labor cost shifter.
        wrt_tau: With respect to the sharing cost.
    """

    wrt_pi: float
    wrt_u: float
    wrt_kappa: float
    wrt_tau: float


def entry_mass(params: ModelParams, pi_effective: float, u_effective: float) -> float:
    """Closed-form mass of projects started under free entry.

    Solves ``m**eta = (sigma / (gamma - sigma)) * Lambda**(beta*sigma/gamma
    - sigma) * kappa**(beta-1) * u**beta * pi**a_pi * tau**(beta/gamma -
    beta/sigma)`` where the right side collects the fundamentals.
    """
    if not pi_effective > 0.0:
        raise ValueError(f"pi_effective must be positive, got {pi_effective}")
    if not u_effective > 0.0:
        raise ValueError(f"u_effective must be positive, got {u_effective}")
    d = derived_constants(params)
    b, s, g = params.beta, params.sigma, params.gamma
    rhs = (
        s
        / (g - s)
        * d.lambda_agg ** (b * s / g - s)
        * params.kappa ** (b - 1.0)
        * u_effective**b
        * pi_effective**d.a_pi
        * params.tau ** (b / g - b / s)
    )
    return rhs ** (1.0 / d.eta)


def development_cost(
    params: ModelParams, m: float, pi_effective: float, u_effective: float
) -> float:
    """Cost of building one project when ``m`` projects have been started.

    Labor is combined with the open-source ecosystem itself, so the cost
    ``kappa**(1-beta) * U**(-beta)`` falls as entry deepens the ecosystem:
    here evaluated at the ecosystem productivity implied by ``m``.
    """
    if not m > 0.0:
        raise ValueError(f"m must be positive, got {m}")
    d = derived_constants(params)
    b, s, g = params.beta, params.sigma, params.gamma
    return (
        params.kappa ** (1.0 - b)
        * u_effective**-b
        * d.lambda_agg ** (-b * s / g)
        * m ** (-b / g)
        * (params.tau / pi_effective) ** (b / s - b / g)
    )


def equilibrium_from_mass(
    params: ModelParams,
    m: float,
    pi_effective: float,
    u_effective: float,
    *,
    u_user: float | None = None,
    v: float = 0.0,
    strict: bool = True,
) -> Equilibrium:
    """Assemble the equilibrium objects implied by an entry mass ``m``.

    ``u_effective`` is the productivity entering costs; ``u_user`` is the
    multiplier entering user consumption and defaults to the same value.
    When the implied cutoff falls below the quality support a strict
    assembly raises :class:`NonInteriorEquilibriumError`; with
    ``strict=False`` the formula values are returned with ``interior``
    cleared instead, which is how counterfactual solves report points
    past the support.
    """
    if u_user is None:
        u_user = u_effective
    d = derived_constants(params)
    lam_sig = d.lambda_agg**params.sigma
    tau_m_lambda = params.tau * m * lam_sig
    q0 = (tau_m_lambda / pi_effective) ** (1.0 / params.gamma)
    interior = q0 >= 1.0 - _INTERIOR_RTOL
    if strict and not interior:
        raise NonInteriorEquilibriumError(q0, tau_m_lambda, pi_effective)
    q_bar = d.lambda_agg * q0
    m_s = pi_effective / (params.tau * lam_sig)
    phi = development_cost(params, m, pi_effective, u_effective)
    utility = q_bar * u_user * m_s ** (1.0 / params.sigma)
    return Equilibrium(
        m=m,
        q0=q0,
        q_bar=q_bar,
        m_s=m_s,
        phi=phi,
        utility=utility,
        pi=pi_effective,
        u=u_user,
        v=v,
        interior=interior,
    )


def solve_baseline(
    params: ModelParams,
    pi_effective: float | None = None,
    u_effective: float | None = None,
) -> Equilibrium:
    """Solve the free-entry equilibrium in closed form.

    ``pi_effective`` and ``u_effective`` default to ``pi_bar`` and
    ``u_base``; passing other values solves the same economy under a
    shifted reward or productivity level.
    """
    pi_eff = params.pi_bar if pi_effective is None else pi_effective
    u_eff = params.u_base if u_effective is None else u_effective
    m = entry_mass(params, pi_eff, u_eff)
    return equilibrium_from_mass(params, m, pi_eff, u_eff)


def solve_scenario(
    params: ModelParams,
    scenario: Scenario,
    v: float | None = None,
    business_model: BusinessModel | None = None,
) -> Equilibrium:
    """Solve the equilibrium under a usage-technology scenario.

    ``v`` is the AI-usage share; when omitted it is read off ``zeta`` and
    ``theta``.  The baseline ignores ``v`` entirely.  In the short run
    developers enjoy the nest multiplier while end users still consume at
    the direct technology; in the long run the multiplier applies on both
    sides and the per-user reward scales with the direct share ``1 - v``.
    A custom business model softens that reward decline to
    ``1 - (1 - alpha) * rho * v``.

    The baseline (and any scenario at ``v = 0``, where all scenarios
    coincide) solves strictly and raises on a cutoff below the support.
    Counterfactual solves at ``v > 0`` return the formula values with the
    ``interior`` flag cleared instead.
    """
    scenario = Scenario(scenario)
    if scenario is Scenario.CUSTOM_BUSINESS_MODEL and business_model is None:
        raise ValueError("custom_business_model scenario requires a BusinessModel")
    if v is None:
        v = vibe_share(params.zeta, params.theta)
    if not 0.0 <= v < 1.0:
        raise ValueError(f"v must lie in [0, 1), got {v}")
    if scenario is Scenario.BASELINE or v == 0.0:
        m = entry_mass(params, params.pi_bar, params.u_base)
        return equilibrium_from_mass(params, m, params.pi_bar, params.u_base, v=0.0)
    mult = utility_multiplier(v, params.theta)
    u_cost = params.u_base * mult
    if scenario is Scenario.SHORT_RUN:
        m = entry_mass(params, params.pi_bar, u_cost)
        return equilibrium_from_mass(
            params, m, params.pi_bar, u_cost, u_user=params.u_base, v=v, strict=False
        )
    if scenario is Scenario.LONG_RUN:
        pi_eff = params.pi_bar * (1.0 - v)
    else:  # CUSTOM_BUSINESS_MODEL
        pi_eff = params.pi_bar * business_model_pi_ratio(business_model, v)
    m = entry_mass(params, pi_eff, u_cost)
    return equilibrium_from_mass(params, m, pi_eff, u_cost, v=v, strict=False)


def developer_payoff(q: float, equilibrium: Equilibrium, params: ModelParams) -> float:
    """Gross payoff from sharing a project of quality ``q``.

    Engagement scales with the project's share of the quality aggregate,
    giving ``tau * (q / q0)**sigma``: the marginal shared project exactly
    recovers the sharing cost.
    """
    if not q >= 1.0:
        raise ValueError(f"q must be at least 1 (the quality support), got {q}")
    return params.tau * (q / equilibrium.q0) ** params.sigma


def expected_entry_payoff(equilibrium: Equilibrium, params: ModelParams) -> float:
    """Expected net payoff of starting a project, before quality is known.

    Integrates ``max(payoff - tau, 0)`` over the Pareto quality draw:
    ``(sigma / (gamma - sigma)) * pi / (m * Lambda**sigma)``.  Equals the
    development cost in equilibrium.
    """
    d = derived_constants(params)
    return (
        params.sigma
        / (params.gamma - params.sigma)
        * equilibrium.pi
        / (equilibrium.m * d.lambda_agg**params.sigma)
    )


def entry_elasticities(params: ModelParams) -> EntryElasticities:
    """Closed-form elasticities of entry mass in the fundamentals.

    All four follow from the reduced-form entry condition; the reward
    elasticity ``a_pi / eta`` always exceeds 1 because more entry thickens
    the ecosystem and lowers build costs, amplifying the direct effect.
    """
    d = derived_constants(params)
    b = params.beta
    return EntryElasticities(
        wrt_pi=d.a_pi / d.eta,
        wrt_u=b / d.eta,
        wrt_kappa=-(1.0 - b) / d.eta,
        wrt_tau=(b / params.gamma - b / params.sigma) / d.eta,
    )


def welfare_and_quality(
    equilibrium: Equilibrium, params: ModelParams
) -> tuple[float, float]:
    """Quality index and user utility expressed through entry mass alone.

    Returns ``(q_bar, utility)`` computed from ``m`` via
    ``q_bar = Lambda**(1 + sigma/gamma) * (tau/pi)**(1/gamma) * m**(1/gamma)``
    and
    ``utility = Lambda**(sigma/gamma) * (pi/tau)**(1/sigma - 1/gamma) * u * m**(1/gamma)``,
    an independent route that must agree with the fields on the record.
    """
    d = derived_constants(params)
    s, g = params.sigma, params.gamma
    q_bar = (
        d.lambda_agg ** (1.0 + s / g)
        * (params.tau / equilibrium.pi) ** (1.0 / g)
        * equilibrium.m ** (1.0 / g)
    )
    utility = (
        d.lambda_agg ** (s / g)
        * (equilibrium.pi / params.tau) ** (1.0 / s - 1.0 / g)
        * equilibrium.u
        * equilibrium.m ** (1.0 / g)
    )
    return q_bar, utility


def _check_share(v: float) -> None:
    if not 0.0 <= v < 1.0:
        raise ValueError(f"v must lie in [0, 1), got {v}")


def short_run_ratios(params: ModelParams, v: float) -> CounterfactualRatios:
    """Short-run counterfactual at AI-usage share ``v``, relative to v = 0.

    Developers build with the nest multiplier but rewards and end-user
    consumption stay at the direct technology, so entry rises, the shared
    mass is unchanged, and quality and utility rise together.
    """
    _check_share(v)
    d = derived_constants(params)
    one_minus = 1.0 - v
    m_ratio = one_minus ** (-params.beta / (params.theta * d.eta))
    qbar_ratio = one_minus ** (-params.beta / (params.theta * params.gamma * d.eta))
    return CounterfactualRatios(
        m_ratio=m_ratio,
        ms_ratio=1.0,
        qbar_ratio=qbar_ratio,
        utility_ratio=qbar_ratio,
    )


def long_run_ratios(params: ModelParams, v: float) -> CounterfactualRatios:
    """Long-run counterfactual at AI-usage share ``v``, relative to v = 0.

    The reward per user falls with the direct share while the nest
    multiplier raises productivity on both sides.  With ``theta > sigma``
    the reward channel dominates: entry, sharing, quality, and utility
    all fall below baseline.
    """
    _check_share(v)
    d = derived_constants(params)
    one_minus = 1.0 - v
    gap = 1.0 / params.sigma - 1.0 / params.theta
    m_ratio = one_minus ** (1.0 + params.beta * gap / d.eta)
    qbar_ratio = one_minus ** (params.beta * gap / (params.gamma * d.eta))
    utility_ratio = one_minus ** (gap + params.beta * gap / (params.gamma * d.eta))
    return CounterfactualRatios(
        m_ratio=m_ratio,
        ms_ratio=one_minus,
        qbar_ratio=qbar_ratio,
        utility_ratio=utility_ratio,
    )


def min_monetization(params: ModelParams, v: float) -> tuple[float, float]:
    """Reward floor that keeps long-run utility at its baseline.

    Returns ``(omega_bound, pi_floor_ratio)``: utility is weakly above
    baseline iff the realized reward ratio ``pi / pi_bar`` stays at or
    above ``(1 - v) ** omega_bound``.
    """
    _check_share(v)
    d = derived_constants(params)
    return d.omega_bound, (1.0 - v) ** d.omega_bound


def business_model_pi_ratio(business_model: BusinessModel, v: float) -> float:
    """Realized reward ratio ``1 - (1 - alpha) * rho * v``.

    Attributed mediated usage (share ``alpha``) pays in full; of the rest,
    only the leaking share ``rho`` pays nothing.
    """
    _check_share(v)
    return 1.0 - (1.0 - business_model.alpha) * business_model.rho * v


def sustainability_checks(
    params: ModelParams, business_model: BusinessModel, v: float
) -> SustainabilityChecks:
    """Test a business model against the monetization floor.

    The model sustains baseline utility iff the unmonetized usage share
    ``(1 - alpha) * rho * v`` is at most ``1 - (1 - v) ** omega_bound``.
    At v = 0 the constraint is vacuous: any model sustains, reported as
    ``rho_max = 1`` and ``alpha_min = 0``.
    """
    _check_share(v)
    _, floor = min_monetization(params, v)
    rhs = 1.0 - floor
    lhs = (1.0 - business_model.alpha) * business_model.rho * v
    if v == 0.0:
        rho_max, alpha_min = 1.0, 0.0
    else:
        rho_max = rhs / v
        alpha_min = 1.0 - rhs / v
    return SustainabilityChecks(
        constraint_lhs=lhs,
        constraint_rhs=rhs,
        sustainable=lhs <= rhs,
        rho_max=rho_max,
        alpha_min=alpha_min,
    )
