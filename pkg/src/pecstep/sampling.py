"""Quasi-probability Monte Carlo over Pauli-sampled mitigation steps.

Each trajectory carries a physical 2x2 state and a signed scalar weight.
Per step the plan's deterministic superoperator is applied, then one of
I/X/Y/Z is drawn from the plan's sampling distribution; the Pauli is applied
to the state and the signed prefactor multiplies the weight.  Only the
weight ever becomes non-physical.

Reproducibility contract: trajectories are organized in fixed blocks of
CHUNK; block c consumes the Philox stream seeded by SeedSequence(seed,
spawn_key=(c,)) and trajectory i uses row i % CHUNK of that block's uniform
draws.  Results therefore depend only on (seed, samples), never on the
worker count.  run_trajectory(plan, seed, i) replays exactly the branch
sequence of ensemble trajectory i (states agree to floating rounding, the
weights exactly).
"""

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import PAULI_CONJUGATIONS, SamplingDistribution
from .linalg import devectorize

CHUNK = 1 << 16

# Branch order: 0=X, 1=Y, 2=Z, 3=identity.  The conjugation superoperators
# are signed permutations, applied as a gather + sign flip.
_BRANCH_MATS = tuple(PAULI_CONJUGATIONS) + (np.eye(4),)
_BRANCH_COL = np.array([np.argmax(np.abs(m), axis=1) for m in _BRANCH_MATS])
_BRANCH_SIGN = np.array(
    [m[np.arange(4), c] for m, c in zip(_BRANCH_MATS, _BRANCH_COL)]
)

VEC_RHO0 = np.array([1.0, 0.0, 0.0, 0.0], dtype=complex)  # |1><1| column-stacked
VEC_RHO0.setflags(write=False)


@dataclass(frozen=True, eq=False)
class StepPlan:
    """One experiment step, repeated `steps` times from vec(rho0).

    `parts` holds the physical superoperators in application order (unitary
    then noise channel for digital hardware, the single combined exponential
    for analog); `deterministic` is their product.  `mitigation` is the
    infinite-sample matrix of the sampled mitigation step.
    """

    parts: tuple[np.ndarray, ...]
    deterministic: np.ndarray
    mitigation: np.ndarray
    distribution: SamplingDistribution
    steps: int
    rho0: np.ndarray = VEC_RHO0


@dataclass(frozen=True, eq=False)
class TrajectoryResult:
    states: np.ndarray  # (steps+1, 2, 2), physical at every step
    weights: np.ndarray  # (steps+1,), signed

    def observable(self) -> np.ndarray:
        """Weighted excited-state population w * <1|rho|1> per step."""
        return self.weights * self.states[:, 0, 0].real


@dataclass(frozen=True, eq=False)
class EnsembleStats:
    """Per-step statistics of the weighted observable over an ensemble."""

    samples: int
    mean: np.ndarray
    std: np.ndarray  # sample standard deviation (ddof=1)
    stderr: np.ndarray  # std / sqrt(samples)
    mean_state: np.ndarray  # (steps+1, 2, 2) weighted mean density matrix


@dataclass(frozen=True, eq=False)
class ExhaustiveResult:
    """Exact branch-enumeration averages (the infinite-sample limit)."""

    mean: np.ndarray
    weight_mean: np.ndarray  # expected weight per step, ignoring the state
    mean_state: np.ndarray


def _branch_tables(dist: SamplingDistribution):
    cum = np.cumsum(dist.mu_tuple())
    g = dist.prefactor
    pref = np.array([dist.signs[0] * g, dist.signs[1] * g, dist.signs[2] * g, g])
    return cum, pref


def _chunk_uniforms(seed: int, chunk: int, rows: int, steps: int) -> np.ndarray:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(chunk,))
    return np.random.Generator(np.random.Philox(ss)).random((rows, steps))


def run_trajectory(plan: StepPlan, seed: int, index: int = 0) -> TrajectoryResult:
    """Simulate the single trajectory `index` of the ensemble (seed, ...)."""
    chunk, row = divmod(index, CHUNK)
    u = _chunk_uniforms(seed, chunk, row + 1, plan.steps)[row]
    cum, pref = _branch_tables(plan.distribution)

    v = plan.rho0.copy()
    w = 1.0
    states = np.empty((plan.steps + 1, 2, 2), dtype=complex)
    weights = np.empty(plan.steps + 1)
    states[0], weights[0] = devectorize(v), w
    for s in range(plan.steps):
        v = plan.deterministic @ v
        b = int(np.searchsorted(cum, u[s], side="right"))
        v = v[_BRANCH_COL[b]] * _BRANCH_SIGN[b]
        w = w * pref[b]
        states[s + 1], weights[s + 1] = devectorize(v), w
    return TrajectoryResult(states=states, weights=weights)


def _chunk_stats(plan: StepPlan, seed: int, chunk: int, rows: int):
    """Per-block partials: observable sum, centered second moment (two-pass
    within the block, which keeps the spread of a constant observable at
    zero) and the weighted state sum."""
    steps = plan.steps
    u = _chunk_uniforms(seed, chunk, rows, steps)
    cum, pref = _branch_tables(plan.distribution)
    det_t = np.ascontiguousarray(plan.deterministic.T)

    v = np.tile(plan.rho0, (rows, 1))
    w = np.ones(rows)
    s1 = np.zeros(steps + 1)
    m2 = np.zeros(steps + 1)
    sv = np.zeros((steps + 1, 4), dtype=complex)

    def record(step, obs):
        s1[step] = obs.sum()
        centered = obs - s1[step] / rows
        m2[step] = (centered * centered).sum()
        sv[step] = (w[:, None] * v).sum(axis=0)

    record(0, w * v[:, 0].real)
    row_idx = np.arange(rows)[:, None]
    for s in range(steps):
        v = v @ det_t
        b = np.searchsorted(cum, u[:, s], side="right")
        v = v[row_idx, _BRANCH_COL[b]] * _BRANCH_SIGN[b]
        w = w * pref[b]
        record(s + 1, w * v[:, 0].real)
    return s1, m2, sv


def _chunk_stats_star(args):
    return _chunk_stats(*args)


def default_workers() -> int:
    return max(1, int(os.environ.get("PECSTEP_WORKERS", "1")))


def run_ensemble(
    plan: StepPlan, samples: int, seed: int, workers: int | None = None
) -> EnsembleStats:
    """Ensemble statistics over `samples` independent trajectories.

    Deterministic given (seed, samples): chunk partial sums are merged in
    chunk order regardless of how many workers computed them.
    """
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    workers = default_workers() if workers is None else workers

    n_chunks = (samples + CHUNK - 1) // CHUNK
    jobs = [
        (plan, seed, c, min(CHUNK, samples - c * CHUNK)) for c in range(n_chunks)
    ]
    if workers > 1 and n_chunks > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_chunk_stats_star, jobs))
    else:
        partials = [_chunk_stats(*job) for job in jobs]

    steps = plan.steps
    s1 = np.zeros(steps + 1)
    sv = np.zeros((steps + 1, 4), dtype=complex)
    for p1, _, pv in partials:
        s1 += p1
        sv += pv
    mean = s1 / samples

    # sum of squares about the global mean, rebuilt from the block-centered
    # moments: sum (x-mean)^2 = sum_c [M2_c + n_c (mean_c - mean)^2]
    m2 = np.zeros(steps + 1)
    for job, (p1, pm2, _) in zip(jobs, partials):
        rows_c = job[3]
        m2 += pm2 + rows_c * (p1 / rows_c - mean) ** 2
    std = np.sqrt(m2 / (samples - 1)) if samples > 1 else np.zeros(steps + 1)
    mean_state = np.array([devectorize(row / samples) for row in sv])
    return EnsembleStats(
        samples=samples,
        mean=mean,
        std=std,
        stderr=std / np.sqrt(samples),
        mean_state=mean_state,
    )


def exhaustive_expectation(plan: StepPlan, steps: int | None = None) -> ExhaustiveResult:
    """Exact expectation by enumerating all Pauli branch sequences.

    Independent of the matrix form of the mitigation map: walks every
    sequence of I/X/Y/Z draws with its probability and signed prefactor.
    Limited to 4^steps branches, steps <= 6.
    """
    steps = plan.steps if steps is None else steps
    if steps > 6:
        raise ValueError(f"exhaustive enumeration limited to 6 steps, got {steps}")

    dist = plan.distribution
    cum, pref = _branch_tables(dist)
    probs = np.array([dist.mu1, dist.mu2, dist.mu3, 1.0 - cum[-1]])
    live = [b for b in range(4) if probs[b] > 0.0]

    v = plan.rho0[None, :].copy()
    p = np.ones(1)
    w = np.ones(1)
    mean = np.empty(steps + 1)
    weight_mean = np.empty(steps + 1)
    mean_state = np.empty((steps + 1, 2, 2), dtype=complex)

    def record(n):
        pw = p * w
        mean[n] = (pw * v[:, 0].real).sum()
        weight_mean[n] = pw.sum()
        mean_state[n] = devectorize((pw[:, None] * v).sum(axis=0))

    record(0)
    det_t = plan.deterministic.T
    for s in range(steps):
        v = v @ det_t
        v = np.concatenate([v[:, _BRANCH_COL[b]] * _BRANCH_SIGN[b] for b in live])
        p = np.concatenate([p * probs[b] for b in live])
        w = np.concatenate([w * pref[b] for b in live])
        record(s + 1)
    return ExhaustiveResult(mean=mean, weight_mean=weight_mean, mean_state=mean_state)
