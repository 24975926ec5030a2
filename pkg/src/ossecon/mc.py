"""Agent-level Monte Carlo checks of the model's distributional claims.

Simulates the primitives directly: Frechet taste shocks, Pareto quality
draws, discrete package choice, the direct-vs-AI usage nest, and a
finite-agent free-entry market.  Nothing here uses the closed-form
aggregation constants, so agreement with :mod:`ossecon.model` is a real
test of the algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    BusinessModel,
    ModelParams,
    Scenario,
    business_model_pi_ratio,
    utility_multiplier,
)

__all__ = [
    "RngSpec",
    "ChoiceSimResult",
    "MarketSimSettings",
    "MarketSimResult",
    "MarketConvergenceError",
    "DegenerateMarketError",
    "frechet_scale",
    "sample_frechet",
    "sample_pareto",
    "simulate_package_choice",
    "simulate_usage_nest",
    "simulate_market",
]


@dataclass(frozen=True)
class RngSpec:
    """Identity of a deterministic random stream.

    The same ``(seed, stream_id)`` always reproduces the same draws bit
    for bit; distinct ``stream_id`` values under one seed are independent
    substreams.

    Attributes:
        seed: Non-negative base seed.
        stream_id: Non-negative substream index under that seed.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self):
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        if not isinstance(self.stream_id, int) or self.stream_id < 0:
            raise ValueError(
                f"stream_id must be a non-negative integer, got {self.stream_id!r}"
            )

    def seed_sequence(self) -> np.random.SeedSequence:
        return np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_id,))

    def generator(self) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed_sequence()))


def _as_generator(rng: RngSpec | np.random.Generator) -> np.random.Generator:
    if isinstance(rng, RngSpec):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError(f"rng must be an RngSpec or numpy Generator, got {type(rng)!r}")


def frechet_scale(shape: float) -> float:
    """Scale ``1 / Gamma(1 - 1/shape)`` that gives a Frechet draw mean 1."""
    if not shape > 1.0:
        raise ValueError(f"shape must exceed 1 for the mean to exist, got {shape}")
    return 1.0 / math.gamma(1.0 - 1.0 / shape)


def sample_frechet(
    shape: float, n: int, rng: RngSpec | np.random.Generator
) -> np.ndarray:
    """Unit-mean Frechet draws by inverse CDF, ``c * (-ln U)**(-1/shape)``."""
    c = frechet_scale(shape)
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    g = _as_generator(rng)
    u = g.random(n)
    # u == 0 has probability 2**-53 and maps to a zero draw; silence the
    # log-of-zero warning rather than branch on it.
    with np.errstate(divide="ignore"):
        return c * (-np.log(u)) ** (-1.0 / shape)


def sample_pareto(
    shape: float, n: int, rng: RngSpec | np.random.Generator
) -> np.ndarray:
    """Pareto(shape) draws on [1, inf), survival ``x**(-shape)``, via ``U**(-1/shape)``."""
    if not shape > 0.0:
        raise ValueError(f"shape must be positive, got {shape}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    g = _as_generator(rng)
    # 1 - random() lies in (0, 1], keeping the inverse CDF finite.
    return (1.0 - g.random(n)) ** (-1.0 / shape)


@dataclass(frozen=True)
class ChoiceSimResult:
    """Outcome of a discrete package-choice simulation.

    Attributes:
        frequencies: Empirical choice probability per package.
        mean_max_utility: Sample mean of the chosen (maximal) utility.
        quantiles: Sample quantiles of the maximal utility keyed by
            probability.
        n_draws: Number of simulated users.
        standard_errors: Binomial standard error per frequency.
    """

    frequencies: tuple[float, ...]
    mean_max_utility: float
    quantiles: dict[float, float]
    n_draws: int
    standard_errors: tuple[float, ...]


def simulate_package_choice(
    qualities,
    sigma: float,
    u: float,
    n_users: int,
    rng: RngSpec | np.random.Generator,
) -> ChoiceSimResult:
    """Simulate users picking the best package under Frechet shocks.

    Each user draws one Frechet(sigma) shock per package and chooses the
    largest ``shock * quality * u``.  Choice frequencies estimate
    ``q_k**sigma / sum_j q_j**sigma`` and the mean of the maximum
    estimates ``(sum_j q_j**sigma)**(1/sigma) * u``.
    """
    q = np.asarray(qualities, dtype=float)
    if q.ndim != 1 or q.size == 0:
        raise ValueError("qualities must be a non-empty 1-d array")
    if np.any(q < 1.0):
        raise ValueError("all qualities must be at least 1")
    if not u > 0.0:
        raise ValueError(f"u must be positive, got {u}")
    if n_users < 1:
        raise ValueError(f"n_users must be at least 1, got {n_users}")
    g = _as_generator(rng)
    shocks = sample_frechet(sigma, n_users * q.size, g).reshape(n_users, q.size)
    util = shocks * (q * u)
    winners = np.argmax(util, axis=1)
    best = np.max(util, axis=1)
    freq = np.bincount(winners, minlength=q.size) / n_users
    se = np.sqrt(freq * (1.0 - freq) / n_users)
    quantiles = {p: float(np.quantile(best, p)) for p in (0.1, 0.5, 0.9)}
    return ChoiceSimResult(
        frequencies=tuple(float(x) for x in freq),
        mean_max_utility=float(best.mean()),
        quantiles=quantiles,
        n_draws=n_users,
        standard_errors=tuple(float(x) for x in se),
    )


def simulate_usage_nest(
    zeta: float, theta: float, n: int, rng: RngSpec | np.random.Generator
) -> tuple[float, float]:
    """Simulate the direct-vs-AI usage nest.

    Each user draws Frechet(theta) shocks for both modes and takes the
    better of 1 (direct) or ``zeta`` (AI-mediated) per unit of quality.
    Returns ``(share choosing the AI mode, mean of the chosen maximum)``,
    estimating ``zeta**theta / (1 + zeta**theta)`` and
    ``(1 + zeta**theta)**(1/theta)``.
    """
    if zeta < 0.0:
        raise ValueError(f"zeta must be non-negative, got {zeta}")
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    g = _as_generator(rng)
    direct = sample_frechet(theta, n, g)
    mediated = zeta * sample_frechet(theta, n, g)
    v_hat = float(np.mean(mediated > direct))
    mean_hat = float(np.mean(np.maximum(direct, mediated)))
    return v_hat, mean_hat


@dataclass(frozen=True)
class MarketSimSettings:
    """Outer-loop controls for the finite-agent market simulation.

    Attributes:
        residual_tol: Stop when ``|log(mean payoff / build cost)|`` falls
            below this.  The finite developer pool makes the map jump at
            one-agent granularity, so tolerances far below
            ``1 / n_dev_scale`` are unattainable.
        max_iter: Entry-adjustment cap before raising
            :class:`MarketConvergenceError`.
        damping: Log-space damping of the entry update.
        pool_chunk: Quality draws appended per pool extension.
        m_start: Initial entry mass.
    """

    residual_tol: float = 1e-4
    max_iter: int = 200
    damping: float = 0.5
    pool_chunk: int = 1 << 20
    m_start: float = 1.0

    def __post_init__(self):
        if not self.residual_tol > 0.0:
            raise ValueError(f"residual_tol must be positive, got {self.residual_tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be at least 1, got {self.max_iter}")
        if not 0.0 < self.damping <= 1.0:
            raise ValueError(f"damping must lie in (0, 1], got {self.damping}")
        if self.pool_chunk < 1:
            raise ValueError(f"pool_chunk must be at least 1, got {self.pool_chunk}")
        if not self.m_start > 0.0:
            raise ValueError(f"m_start must be positive, got {self.m_start}")


@dataclass(frozen=True)
class MarketSimResult:
    """Converged state of the finite-agent market.

    Attributes:
        m_hat: Simulated entry mass.
        q0_hat: Lowest quality in the realized shared set.
        ms_share_hat: Fraction of started projects that are shared.
        residual: ``|log(mean payoff / build cost)|`` at the reported
            mass.
        iterations: Entry adjustments used.
    """

    m_hat: float
    q0_hat: float
    ms_share_hat: float
    residual: float
    iterations: int


class MarketConvergenceError(RuntimeError):
    """Entry adjustment failed to settle within the iteration cap."""

    def __init__(self, m_last: float, residual: float, iterations: int):
        self.m_last = m_last
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"market simulation did not converge after {iterations} iterations "
            f"(m={m_last:.6g}, residual {residual:.3g})"
        )


class DegenerateMarketError(RuntimeError):
    """No simulated project can cover the sharing cost, or entry collapsed."""


def simulate_market(
    params: ModelParams,
    scenario: Scenario,
    n_users: int,
    n_dev_scale: int,
    settings: MarketSimSettings | None = None,
    rng: RngSpec | None = None,
    business_model: BusinessModel | None = None,
) -> MarketSimResult:
    """Finite-agent free-entry market with simulated sharing decisions.

    A fixed pool of Pareto quality draws stands in for the developer
    continuum (``n_dev_scale`` draws per unit of entry mass), so entry
    adjustment reuses common random numbers.  In each round the highest
    qualities that individually cover the sharing cost, given the
    engagement they would realize inside that same shared set, constitute
    the shared set; entry then moves toward equality of the mean realized
    net payoff with the build cost implied by the realized ecosystem
    productivity.  Scenario quantities are taken at the nest share
    simulated from ``n_users`` draws, not the analytic share, so the user
    side is simulated as well.  Substream 0 feeds the developer pool,
    substream 1 the usage nest.
    """
    scenario = Scenario(scenario)
    s = settings if settings is not None else MarketSimSettings()
    spec = rng if rng is not None else RngSpec(seed=0)
    if n_users < 1:
        raise ValueError(f"n_users must be at least 1, got {n_users}")
    if n_dev_scale < 1:
        raise ValueError(f"n_dev_scale must be at least 1, got {n_dev_scale}")
    pool_ss, nest_ss = spec.seed_sequence().spawn(2)
    pool_g = np.random.Generator(np.random.PCG64(pool_ss))
    nest_g = np.random.Generator(np.random.PCG64(nest_ss))

    if scenario is Scenario.BASELINE or params.zeta == 0.0:
        v_hat = 0.0
    else:
        v_hat, _ = simulate_usage_nest(params.zeta, params.theta, n_users, nest_g)
    if scenario is Scenario.BASELINE:
        pi_eff, u_cost = params.pi_bar, params.u_base
    else:
        u_cost = params.u_base * utility_multiplier(v_hat, params.theta)
        if scenario is Scenario.SHORT_RUN:
            pi_eff = params.pi_bar
        elif scenario is Scenario.LONG_RUN:
            pi_eff = params.pi_bar * (1.0 - v_hat)
        else:  # CUSTOM_BUSINESS_MODEL
            if business_model is None:
                raise ValueError("custom_business_model scenario requires a BusinessModel")
            pi_eff = params.pi_bar * business_model_pi_ratio(business_model, v_hat)

    b, sig, tau = params.beta, params.sigma, params.tau
    pool = sample_pareto(params.gamma, s.pool_chunk, pool_g)
    m = s.m_start
    for iteration in range(1, s.max_iter + 1):
        n_draw = int(m * n_dev_scale)
        if n_draw < 1:
            raise DegenerateMarketError(
                f"entry mass collapsed below one simulated developer (m={m:.3g})"
            )
        while pool.size < n_draw:
            pool = np.concatenate(
                [pool, sample_pareto(params.gamma, s.pool_chunk, pool_g)]
            )
        qual = np.sort(pool[:n_draw])[::-1]
        qs = qual**sig
        cum = np.cumsum(qs)
        # Project i is shared iff its engagement payoff inside the shared
        # set of the i best projects covers tau; the ratio is decreasing
        # in i, so the shared set is the prefix where it stays >= 1.
        k = int(np.count_nonzero(pi_eff * qs * n_dev_scale >= tau * cum))
        if k == 0:
            raise DegenerateMarketError(
                "no simulated project covers the sharing cost; the market has "
                f"no shared set (best payoff {pi_eff * n_dev_scale:.3g} < tau={tau:.3g})"
            )
        agg = cum[k - 1] / n_dev_scale
        # Shared projects absorb all engagement, so gross payoffs sum to
        # pi * n_dev_scale and the mean net payoff needs only k.
        mean_payoff = (pi_eff * n_dev_scale - k * tau) / n_draw
        if mean_payoff <= 0.0:
            raise DegenerateMarketError(
                "mean net entry payoff is non-positive at the realized shared set"
            )
        phi_hat = params.kappa ** (1.0 - b) * (u_cost * agg ** (1.0 / sig)) ** -b
        residual = abs(math.log(mean_payoff / phi_hat))
        if residual <= s.residual_tol:
            return MarketSimResult(
                m_hat=m,
                q0_hat=float(qual[k - 1]),
                ms_share_hat=k / n_draw,
                residual=residual,
                iterations=iteration,
            )
        m *= (mean_payoff / phi_hat) ** s.damping
    raise MarketConvergenceError(m, residual, s.max_iter)
