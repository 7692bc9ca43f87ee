"""Distinguishability after L trials: the chi-square (Wootters) and JSD criteria.

Both criteria are of the form statistic(L) > threshold(L). ``min_trials`` is
the smallest L for which it holds, or ``math.inf`` when the two
distributions coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import simplex
from .errors import ValidationError
from .tables import SweepTable


@dataclass(frozen=True)
class CriterionVerdict:
    distinguishable: bool
    statistic: float
    threshold: float
    min_trials: float  # int-valued, or math.inf


def _min_trials(holds, guess: float) -> float:
    """Smallest positive L with holds(L), starting from a closed-form guess.

    The guess comes from inverting a strict inequality and can be off by one
    in floating point; a short scan settles the boundary.
    """
    if not math.isfinite(guess):
        return math.inf
    m = max(int(guess), 1)
    while m > 1 and holds(m - 1):
        m -= 1
    while not holds(m):
        m += 1
    return m


def _wootters_statistic(chi2: float, L: int) -> float:
    return 0.5 * math.sqrt(L) * math.sqrt(chi2)


def wootters_criterion(p1, p2, L: int) -> CriterionVerdict:
    """(sqrt(L)/2) sqrt(sum dp_i^2 / p1_i) > 1.

    Order sensitive: the denominator uses ``p1``. Raises
    :class:`~qdist.errors.SingularityError` if p1_i = 0 where p2_i differs.
    """
    if L < 1:
        raise ValidationError("L must be a positive integer")
    chi2 = simplex.chi2_sum(p1, p2)
    stat = _wootters_statistic(chi2, L)
    guess = math.floor(4.0 / chi2) + 1 if chi2 > 0 else math.inf
    m = _min_trials(lambda n: _wootters_statistic(chi2, n) > 1.0, guess)
    return CriterionVerdict(stat > 1.0, stat, 1.0, m)


def jsd_criterion(p1, p2, L: int) -> CriterionVerdict:
    """sqrt(JSD) > 1/sqrt(2L); symmetric and finite even for disjoint supports."""
    if L < 1:
        raise ValidationError("L must be a positive integer")
    d = float(simplex.jsd(p1, p2))
    stat = math.sqrt(d)
    guess = math.floor(1.0 / (2.0 * d)) + 1 if d > 0 else math.inf
    m = _min_trials(lambda n: stat > 1.0 / math.sqrt(2.0 * n), guess)
    thr = 1.0 / math.sqrt(2.0 * L)
    return CriterionVerdict(stat > thr, stat, thr, m)


def criteria_agreement_profile(p1, direction, separations) -> SweepTable:
    """min_trials under both criteria for p2 = p1 + s * direction.

    ``direction`` is scaled so its largest component is 1. ``ratio`` is
    jsd/wootters min_trials; it is NaN (undefined) where both are infinite.
    """
    p = simplex.as_probvec(p1).values
    if np.any(p <= 0.0):
        raise ValidationError("p1 must be strictly interior")
    d = np.asarray(direction, dtype=float).reshape(-1)
    if d.size != p.size or abs(d.sum()) > 1e-12 or not np.any(d):
        raise ValidationError("direction must be nonzero, sum to zero and match p1")
    d = d / np.max(np.abs(d))
    rows = []
    for s in separations:
        q = p + s * d
        if np.any(q < 0.0) or np.any(q > 1.0):
            raise ValidationError(f"separation {s} leaves the simplex")
        q = simplex.ProbVec(q / q.sum())
        mw = wootters_criterion(p, q, 1).min_trials
        mj = jsd_criterion(p, q, 1).min_trials
        ratio = mj / mw if math.isfinite(mw) and math.isfinite(mj) else math.nan
        rows.append((s, mw, mj, ratio))
    return SweepTable(("separation", "min_trials_wootters", "min_trials_jsd", "ratio"), rows)


@dataclass(frozen=True)
class MonteCarloResult:
    success_rate: float
    experiments: int
    trials: int
    seed: int

    @property
    def stderr(self) -> float:
        r = self.success_rate
        return math.sqrt(max(r * (1.0 - r), 0.0) / self.experiments)


def _loglik(counts: np.ndarray, p: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        logp = np.log(p)
    terms = np.where(counts > 0, counts * np.where(p > 0, logp, 0.0), 0.0)
    impossible = np.any((counts > 0) & (p == 0.0), axis=-1)
    return np.where(impossible, -np.inf, terms.sum(axis=-1))


def monte_carlo_discrimination(p1, p2, L: int, experiments: int = 10_000, seed: int = 0,
                               batch_size: int = 2_000) -> MonteCarloResult:
    """Empirical success rate of maximum-likelihood discrimination from L samples.

    Each experiment flips a fair coin for the source, draws L outcomes from
    it and guesses the hypothesis with the larger likelihood (ties go to
    ``p1``). Batch b draws from the substream ``SeedSequence(seed,
    spawn_key=(b,))`` so results do not depend on how batches are scheduled.
    """
    a = simplex.as_probvec(p1).values
    b = simplex.as_probvec(p2).values
    if a.size != b.size:
        raise ValidationError("dimension mismatch")
    if L < 1 or experiments < 1:
        raise ValidationError("L and experiments must be positive")
    correct = 0
    done = 0
    batch = 0
    while done < experiments:
        n = min(batch_size, experiments - done)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(batch,)))
        source_is_2 = rng.random(n) < 0.5
        probs = np.where(source_is_2[:, None], b, a)
        counts = rng.multinomial(L, probs)
        guess_2 = _loglik(counts, b) > _loglik(counts, a)
        correct += int(np.sum(guess_2 == source_is_2))
        done += n
        batch += 1
    return MonteCarloResult(correct / experiments, experiments, L, seed)
