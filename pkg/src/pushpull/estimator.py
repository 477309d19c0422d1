"""Monte Carlo harness and the closed-form quantities used to judge it.

Every estimate flows from a single 64-bit seed: trial i draws from a
counter-based Philox stream keyed by (seed, i), so runs are reproducible
and trials are independent no matter how they are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import async_engine, sync_engine
from .errors import (
    DegenerateFitError,
    InfeasiblePairError,
    ParameterOutOfRangeError,
)
from .graph import Graph, star, string_of_diamonds

DEFAULT_TRIALS = 10_000

SUMMARY_CSV_HEADER = "graph,params,protocol,n,trials,seed,mean,stderr,median,q05,q95"


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial of one seeded experiment."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, trial))))


def _sync_rounds(g, s, rng):
    return float(sync_engine.run_sync_round_based(g, s, rng).spread_time)


def _sync_clocks(g, s, rng):
    outcome, _ = sync_engine.run_sync_clock_based(g, s, rng, record_trace=False)
    return float(outcome.spread_time)


def _async_events(g, s, rng):
    return async_engine.run_async_event_driven(g, s, rng).spread_time


def _async_fpp(g, s, rng):
    weights = async_engine.sample_edge_weights(g, rng)
    return async_engine.fpp_spread_time(g, s, weights)


ENGINES = {
    ("sync", "rounds"): _sync_rounds,
    ("sync", "clocks"): _sync_clocks,
    ("async", "events"): _async_events,
    ("async", "fpp"): _async_fpp,
}
DEFAULT_ENGINE = {"sync": "rounds", "async": "events"}


def sample_spread_times(
    protocol: str,
    g: Graph,
    s: int,
    trials: int,
    seed: int,
    engine: str | None = None,
) -> np.ndarray:
    """Spread times from ``trials`` independent seeded runs."""
    if trials < 1:
        raise ParameterOutOfRangeError(f"need at least one trial, got {trials}")
    if protocol not in DEFAULT_ENGINE:
        raise ParameterOutOfRangeError(f"unknown protocol {protocol!r}")
    engine = engine or DEFAULT_ENGINE[protocol]
    try:
        run = ENGINES[(protocol, engine)]
    except KeyError:
        raise ParameterOutOfRangeError(
            f"no engine {engine!r} for protocol {protocol!r}"
        ) from None
    return np.array([run(g, s, trial_rng(seed, t)) for t in range(trials)])


@dataclass(frozen=True)
class TrialSummary:
    protocol: str
    trials: int
    mean: float
    std_error: float
    median: float
    q05: float
    q95: float
    seed: int


def nearest_rank(sorted_values: np.ndarray, q: float) -> float:
    """Nearest-rank quantile: the ceil(q*N)-th smallest value."""
    rank = max(1, math.ceil(q * sorted_values.size))
    return float(sorted_values[rank - 1])


def summarize(protocol: str, samples: np.ndarray, seed: int) -> TrialSummary:
    ordered = np.sort(samples)
    stderr = (
        float(samples.std(ddof=1) / math.sqrt(samples.size)) if samples.size > 1 else 0.0
    )
    return TrialSummary(
        protocol=protocol,
        trials=int(samples.size),
        mean=float(samples.mean()),
        std_error=stderr,
        median=nearest_rank(ordered, 0.5),
        q05=nearest_rank(ordered, 0.05),
        q95=nearest_rank(ordered, 0.95),
        seed=int(seed),
    )


def estimate(
    protocol: str,
    g: Graph,
    s: int,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    engine: str | None = None,
) -> TrialSummary:
    """Seeded Monte Carlo summary of the spread time distribution."""
    return summarize(protocol, sample_spread_times(protocol, g, s, trials, seed, engine), seed)


def summary_csv_row(graph_name: str, params: str, g: Graph, summary: TrialSummary) -> str:
    fields = [
        graph_name,
        params,
        summary.protocol,
        str(g.n),
        str(summary.trials),
        str(summary.seed),
        repr(summary.mean),
        repr(summary.std_error),
        repr(summary.median),
        repr(summary.q05),
        repr(summary.q95),
    ]
    return ",".join(fields)


def diamond_S_bounds(m: int, k: int, l: int) -> tuple[int, int]:
    """Closed-form bracket [2m, 4m+1] for the mean synchronous spread time."""
    if m < 1 or k < 2 or l < 0:
        raise ParameterOutOfRangeError(f"invalid diamond parameters ({m}, {k}, {l})")
    return 2 * m, 4 * m + 1


def z_tail(k: int, t: float) -> float:
    """P[Z > t] for the min of k sums of two rate-1/2 exponentials."""
    if k < 1 or t < 0:
        raise ParameterOutOfRangeError(f"need k >= 1 and t >= 0, got ({k}, {t})")
    return float(math.exp(k * math.log1p(t / 2.0) - k * t / 2.0))


def z_mean_upper_bound(k: int) -> float:
    """The closed form 2 e^k k! / k^(k+1) dominating the mean of Z."""
    return float(
        math.exp(math.log(2.0) + k + math.lgamma(k + 1) - (k + 1) * math.log(k))
    )


def z_mean(k: int) -> float:
    """E[Z] by quadrature of the tail.

    The integrand decays like exp(-k t^2 / 8) near 0 and at least
    exponentially beyond, so cutting the integral at
    max(200/k, 40/sqrt(k)) leaves a remainder below 1e-12 for every k.
    """
    if k < 1:
        raise ParameterOutOfRangeError(f"need k >= 1, got {k}")
    cut = max(200.0 / k, 40.0 / math.sqrt(k))
    value, _ = integrate.quad(
        lambda t: z_tail(k, t), 0.0, cut, epsabs=1e-12, epsrel=1e-12, limit=200
    )
    value = float(value)
    assert z_tail(k, cut) < 1e-12
    assert value <= z_mean_upper_bound(k) * (1 + 1e-9)
    return value


def y_hop_samples(g: Graph, trials: int, seed: int = 0) -> np.ndarray:
    """Times for the rumour to cross one diamond, i.e. reach hub 1.

    ``g`` must be a single diamond S_{1,k,0} with hubs 0 and 1; each
    sample is the asynchronous informing time of hub 1 from hub 0.
    """
    k = int(g.degrees[0])
    if k < 2 or g.n != k + 2 or g.degrees[1] != k or g.has_edge(0, 1):
        raise ParameterOutOfRangeError("graph is not a single diamond S_{1,k,0}")
    out = np.empty(trials)
    for t in range(trials):
        outcome = async_engine.run_async_event_driven(g, 0, trial_rng(seed, t))
        out[t] = outcome.informed_time[1]
    return out


def y_lower_bound_threshold(k: int) -> float:
    """The explicit constant (5/18) / (3 sqrt(k)) below the hop time mean."""
    if k < 2:
        raise ParameterOutOfRangeError(f"need k >= 2, got {k}")
    return (5.0 / 18.0) / (3.0 * math.sqrt(k))


def y_lower_bound_check(g: Graph, trials: int = DEFAULT_TRIALS, seed: int = 0) -> bool:
    """Does the measured one-diamond crossing time clear its lower bound?"""
    samples = y_hop_samples(g, trials, seed)
    k = int(g.degrees[0])
    se = samples.std(ddof=1) / math.sqrt(samples.size)
    return bool(samples.mean() >= y_lower_bound_threshold(k) - 3.0 * se)


def restart_median_check(
    g: Graph, s: int, trials: int = DEFAULT_TRIALS, seed: int = 0
) -> bool:
    """Restart argument: halving tails at multiples of the median.

    With M the empirical median of the synchronous spread time, checks
    Pr[S > iM] <= 2^-i plus 3 s.e. for i = 1..5, and mean <= 2M plus
    3 s.e.
    """
    if trials < 1000:
        raise ParameterOutOfRangeError(f"need at least 1000 trials, got {trials}")
    samples = sample_spread_times("sync", g, s, trials, seed)
    m = nearest_rank(np.sort(samples), 0.5)
    for i in range(1, 6):
        phat = float((samples > i * m).mean())
        se = math.sqrt(phat * (1.0 - phat) / samples.size)
        if phat > 0.5**i + 3.0 * se:
            return False
    se_mean = samples.std(ddof=1) / math.sqrt(samples.size)
    return bool(samples.mean() <= 2.0 * m + 3.0 * se_mean)


@dataclass(frozen=True)
class ExponentFit:
    points: tuple[tuple[float, float], ...]
    slope: float
    intercept: float
    r_squared: float


def fit_exponent(points) -> ExponentFit:
    """Least-squares slope of log(value) against log(n)."""
    pts = tuple((float(n), float(v)) for n, v in points)
    if len(pts) < 3:
        raise DegenerateFitError(f"need at least 3 points, got {len(pts)}")
    if any(n <= 0 or v <= 0 for n, v in pts):
        raise ParameterOutOfRangeError("points must be positive to fit exponents")
    x = np.log([n for n, _ in pts])
    y = np.log([v for _, v in pts])
    if np.ptp(x) == 0.0:
        raise DegenerateFitError("all sizes equal; slope undetermined")
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    ss_res = float((resid**2).sum())
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return ExponentFit(pts, float(slope), float(intercept), float(r2))


def theorem1_illustration(
    g: Graph,
    s: int,
    t: float,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    c: float = 1.0,
    k_exp: float = 1.0,
) -> tuple[float, float]:
    """Both sides of the sync-vs-async tail comparison, for chosen constants.

    Returns (lhs, rhs) with lhs = Pr[S > c (t + t^(2/3) n^(1/3) log n)]
    and rhs = Pr[A > t] + c n^(-k_exp), estimated from seeded trials.
    The constants in the underlying statement are existential, so this
    is a diagnostic report, never a pass/fail check.
    """
    if t < 1:
        raise ParameterOutOfRangeError(f"need t >= 1, got {t}")
    n = g.n
    threshold = c * (t + t ** (2.0 / 3.0) * n ** (1.0 / 3.0) * math.log(n))
    s_samples = sample_spread_times("sync", g, s, trials, seed)
    a_samples = sample_spread_times("async", g, s, trials, seed + 1)
    lhs = float((s_samples > threshold).mean())
    rhs = float((a_samples > t).mean()) + c * n ** (-k_exp)
    return lhs, rhs


def attainable(alpha: float, beta: float, tol: float = 1e-9) -> bool:
    """Membership in the attainable exponent region."""
    return (
        -tol <= alpha <= 1.0 + tol
        and alpha - tol <= beta <= 1.0 / 3.0 + 2.0 * alpha / 3.0 + tol
    )


@dataclass(frozen=True)
class FamilyMember:
    graph: Graph
    name: str
    params: str
    m: int = 0
    k: int = 0
    l: int = 0
    k_clamped: bool = False


def _nearest_int(x: float) -> int:
    return int(math.floor(x + 0.5))


def attainability_family_member(alpha: float, beta: float, n: int) -> FamilyMember:
    """The witness graph of size ~n for an attainable pair.

    For beta > 0 this is the diamond string with m ~ n^beta / 2 and
    k ~ n^(2 beta - 2 alpha), padded to exactly n vertices with pendant
    leaves; k is clamped up to 2 (and flagged) when the target rounds
    below the generator's minimum.  For beta = 0 (hence alpha = 0) it
    is the star.
    """
    if not attainable(alpha, beta):
        raise InfeasiblePairError(
            f"(alpha, beta) = ({alpha}, {beta}) violates "
            "0 <= alpha <= 1 and alpha <= beta <= 1/3 + 2 alpha/3"
        )
    if beta <= 0.0:
        return FamilyMember(star(n), "star", str(n))
    m = max(1, _nearest_int(n**beta / 2.0))
    k = _nearest_int(n ** (2.0 * beta - 2.0 * alpha))
    clamped = k < 2
    k = max(2, k)
    l = n - 1 - m * (k + 1)
    if l < 0:
        raise ParameterOutOfRangeError(
            f"n = {n} too small for (alpha, beta) = ({alpha}, {beta})"
        )
    return FamilyMember(
        string_of_diamonds(m, k, l), "diamonds", f"{m},{k},{l}", m, k, l, clamped
    )


def tight_ratio_family_member(n: int) -> FamilyMember:
    """Diamond string maximizing the sync/async ratio at ~n vertices.

    Takes m ~ n^(1/3) (log n)^(2/3) and the largest feasible k, leaving
    fewer than m pendant leaves to land on exactly n vertices.
    """
    if n < 16:
        raise ParameterOutOfRangeError(f"need n >= 16, got {n}")
    m = max(1, _nearest_int(n ** (1.0 / 3.0) * math.log(n) ** (2.0 / 3.0)))
    k = (n - 1) // m - 1
    if k < 2:
        raise ParameterOutOfRangeError(f"n = {n} too small for the tight family")
    l = n - 1 - m * (k + 1)
    return FamilyMember(
        string_of_diamonds(m, k, l), "diamonds", f"{m},{k},{l}", m, k, l, False
    )
