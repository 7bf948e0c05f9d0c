"""Measurement scheduling protocols and full trajectory execution.

Five procedures share the same Preparation-Exposure-Readout step structure
and differ only in their delay-time schedule and preparation rule:

* ``lama``             -- linearly increasing delays, fixed XY-plane prep.
* ``classical``        -- constant delay, fixed XY-plane prep.
* ``kitaev``           -- geometrically increasing delays, balanced prep.
* ``fourier``          -- geometrically decreasing delays, outcome-dependent
                          phase feedback on a balanced-amplitude prep.
* ``fourier_modified`` -- Fourier schedule with the feedback applied to the
                          XY-amplitude prep.

All schedules are outcome-independent in their delay times, so trajectories
from different runs align on a common phase-accumulation axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bayes import (FieldDistribution, GainRecord, ImpossibleOutcomeError,
                    bayes_update, entropy, T_SATURATION)
from .core import balanced_state, fourier_gate, xy_state
from .decoherence import DecoherenceParams, likelihood_grid, outcome_probabilities

PROTOCOL_KINDS = ("lama", "classical", "kitaev", "fourier", "fourier_modified")


@dataclass(frozen=True)
class StepPlan:
    """One planned PER step: delay time, prep state, readout unitary."""

    delay: float
    prep: np.ndarray = field(repr=False)
    readout: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.delay > 0:
            raise ValueError("delay must be positive")


@dataclass(frozen=True)
class ProtocolConfig:
    kind: str
    t1: float
    n_steps: int
    dt: float = 0.0              # LAMA only: per-step delay increment
    d: int = 3
    decoherence: DecoherenceParams = DecoherenceParams.none()
    alpha: float = 0.0           # XY-prep phases for lama/classical
    beta: float = 0.0

    def __post_init__(self):
        if self.kind not in PROTOCOL_KINDS:
            raise ValueError(f"unknown protocol kind {self.kind!r}")
        if self.t1 <= 0:
            raise ValueError("t1 must be positive")
        if self.n_steps < 0:
            raise ValueError("n_steps must be non-negative")
        if self.d != 3:
            raise ValueError("protocols are implemented for qutrits (d = 3)")


@dataclass(frozen=True)
class StepRecord:
    plan: StepPlan
    outcome: int
    posterior: FieldDistribution
    gain: GainRecord


@dataclass(frozen=True)
class ProtocolTrajectory:
    steps: list[StepRecord]

    @property
    def phase_accumulation_time(self) -> float:
        return sum(s.plan.delay for s in self.steps)

    def cumulative_times(self) -> np.ndarray:
        return np.cumsum([s.plan.delay for s in self.steps])

    def cumulative_gain_bits(self) -> np.ndarray:
        return np.cumsum([s.gain.gain_bits for s in self.steps])

    def outcomes(self) -> list[int]:
        return [s.outcome for s in self.steps]


def fourier_feedback_phase(previous_outcomes) -> float:
    """Phase alpha_i = -(2 pi / 3) sum_j xi_{i-j} / 3^j accumulated from the
    outcome history (most recent outcome weighted strongest)."""
    alpha = 0.0
    for j, xi in enumerate(reversed(list(previous_outcomes)), start=1):
        alpha -= (2.0 * np.pi / 3.0) * xi / 3.0 ** j
    return alpha


def lama_step(i: int, config: ProtocolConfig) -> StepPlan:
    """Delay t1 + (i-1) dt; outcome-independent XY-plane prep; F_3 readout."""
    if i < 1:
        raise ValueError("step index starts at 1")
    return StepPlan(delay=config.t1 + (i - 1) * config.dt,
                    prep=xy_state(config.alpha, config.beta),
                    readout=fourier_gate(3))


def classical_step(i: int, config: ProtocolConfig) -> StepPlan:
    """Constant delay t1; same prep and readout as LAMA."""
    if i < 1:
        raise ValueError("step index starts at 1")
    return StepPlan(delay=config.t1,
                    prep=xy_state(config.alpha, config.beta),
                    readout=fourier_gate(3))


def kitaev_step(i: int, config: ProtocolConfig) -> StepPlan:
    """Delay t1 * 3^(i-1); balanced prep; F_3 readout."""
    if i < 1:
        raise ValueError("step index starts at 1")
    return StepPlan(delay=config.t1 * 3.0 ** (i - 1),
                    prep=balanced_state(3),
                    readout=fourier_gate(3))


def fourier_step(i: int, config: ProtocolConfig, previous_outcomes) -> StepPlan:
    """Delay t1 / 3^(i-1); balanced-amplitude prep with feedback phase."""
    if i < 1:
        raise ValueError("step index starts at 1")
    if len(previous_outcomes) < i - 1:
        raise ValueError("outcome history shorter than step index")
    alpha = fourier_feedback_phase(previous_outcomes[:i - 1])
    prep = np.exp(1j * alpha * np.arange(3)) / np.sqrt(3)
    return StepPlan(delay=config.t1 / 3.0 ** (i - 1),
                    prep=prep, readout=fourier_gate(3))


def modified_fourier_step(i: int, config: ProtocolConfig, previous_outcomes) -> StepPlan:
    """Fourier schedule and feedback with XY-plane amplitudes (1/2, 1/sqrt 2, 1/2)."""
    if i < 1:
        raise ValueError("step index starts at 1")
    if len(previous_outcomes) < i - 1:
        raise ValueError("outcome history shorter than step index")
    alpha = fourier_feedback_phase(previous_outcomes[:i - 1])
    amps = np.array([0.5, 1.0 / np.sqrt(2), 0.5])
    prep = amps * np.exp(1j * alpha * np.arange(3))
    return StepPlan(delay=config.t1 / 3.0 ** (i - 1),
                    prep=prep, readout=fourier_gate(3))


def plan_step(i: int, config: ProtocolConfig, previous_outcomes) -> StepPlan:
    if config.kind == "lama":
        return lama_step(i, config)
    if config.kind == "classical":
        return classical_step(i, config)
    if config.kind == "kitaev":
        return kitaev_step(i, config)
    if config.kind == "fourier":
        return fourier_step(i, config, previous_outcomes)
    return modified_fourier_step(i, config, previous_outcomes)


def schedule_delays(config: ProtocolConfig) -> np.ndarray:
    """Delay times of all steps (deterministic for every protocol kind)."""
    return np.array([plan_step(i, config, [0] * (i - 1)).delay
                     for i in range(1, config.n_steps + 1)])


def fourier_max_steps(t1: float, t_floor: float = T_SATURATION) -> int:
    """Number of Fourier steps with delay still above the pulse-limited floor."""
    n = int(np.floor(np.log(t1 / t_floor) / np.log(3.0))) + 1
    return max(n, 0)


def kitaev_max_steps(t1: float, t_ceiling: float) -> int:
    """Number of Kitaev steps with delay at most t_ceiling."""
    if t_ceiling < t1:
        return 0
    return int(np.floor(np.log(t_ceiling / t1) / np.log(3.0))) + 1


def _sample_outcome(probs: np.ndarray, rng: np.random.Generator) -> int:
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    return int(np.searchsorted(cdf, rng.random(), side="right"))


def run_protocol(config: ProtocolConfig, prior: FieldDistribution,
                 rng_seed: int, mode: str = "predictive",
                 true_omega: float | None = None,
                 forced_outcomes=None) -> ProtocolTrajectory:
    """Execute a full trajectory of PER steps against the Bayes engine.

    Outcome generation:

    * ``predictive``  -- sample from the outcome marginal under the current
      posterior (the simulation prescription used for all ensemble runs);
    * ``fixed``       -- sample from P(xi | true_omega, t);
    * ``forced_outcomes`` overrides sampling with a given outcome list
      (used to replay specific outcome sets).

    Deterministic given (config, prior, rng_seed, mode).
    """
    if mode not in ("predictive", "fixed"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "fixed" and true_omega is None:
        raise ValueError("fixed mode requires true_omega")
    if forced_outcomes is not None and len(forced_outcomes) < config.n_steps:
        raise ValueError("forced outcome list shorter than n_steps")

    rng = np.random.default_rng(rng_seed)
    dist = prior
    steps: list[StepRecord] = []
    outcomes: list[int] = []
    for i in range(1, config.n_steps + 1):
        plan = plan_step(i, config, outcomes)
        lik = likelihood_grid(plan.prep, plan.delay, plan.readout,
                              dist.grid.points, config.decoherence)
        if forced_outcomes is not None:
            xi = int(forced_outcomes[i - 1])
        elif mode == "predictive":
            xi = _sample_outcome(dist.weights @ lik, rng)
        else:
            xi = _sample_outcome(
                outcome_probabilities(plan.prep, plan.delay, plan.readout,
                                      true_omega, config.decoherence), rng)
        s_before = entropy(dist)
        try:
            dist = bayes_update(dist, lik[:, xi])
        except ImpossibleOutcomeError as err:
            raise ImpossibleOutcomeError(f"step {i}: {err}") from err
        record = GainRecord(step_index=i, entropy_before=s_before,
                            entropy_after=entropy(dist))
        steps.append(StepRecord(plan=plan, outcome=xi, posterior=dist, gain=record))
        outcomes.append(xi)
    return ProtocolTrajectory(steps=steps)
