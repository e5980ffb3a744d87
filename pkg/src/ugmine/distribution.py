"""Exact score distributions for subgraph features, without world enumeration.

The support count of a feature in one class is a sum of independent Bernoulli
indicators (one per graph), i.e. Poisson-binomial. Its law is computed by an
O(m^2) dynamic program; the two class marginals are independent, so their
outer product gives the exact joint law over support pairs, and every cell
maps through the score function to yield the full score distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .graphs import Dataset, Subgraph, UncertainGraph, containment_probability
from .scores import ScoreFunction, eval_score

EXPECTATION = "exp"
MEDIAN = "median"
MODE = "mode"
PHI_PROBABILITY = "phi-pr"

MEASURE_KINDS = (EXPECTATION, MEDIAN, MODE, PHI_PROBABILITY)

# Guard against float dust when a cumulative probability sits on the 1/2
# boundary or two grouped masses are nominally equal; both the DP route and
# the brute-force worlds route share these, so selections stay consistent.
_CDF_EPS = 1e-12
_TIE_EPS = 1e-12


@dataclass
class MultiplyAddCounter:
    """Counts scalar multiply-add operations performed by the support DP."""

    count: int = 0


@dataclass(frozen=True)
class MeasureSpec:
    """Statistic of the score distribution used to rank features."""

    kind: str
    phi: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in MEASURE_KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}; expected one of {MEASURE_KINDS}")
        if self.kind == PHI_PROBABILITY and self.phi is None:
            raise ValueError("phi threshold required for the phi-probability measure")
        if self.kind != PHI_PROBABILITY and self.phi is not None:
            raise ValueError(f"phi threshold only applies to phi-probability, not {self.kind!r}")


def poisson_binomial(probs: Sequence[float], counter: MultiplyAddCounter | None = None) -> np.ndarray:
    """Distribution of the number of successes among independent Bernoulli trials.

    Entry i of the result is Pr[exactly i successes]. Computed by the textbook
    convolution recurrence

        new[i] = (1 - p) * old[i] + p * old[i - 1]

    iterated over trials, which costs exactly m(m+1) multiply-adds for m
    trials when the two boundary cells are updated with their single
    surviving term.
    """
    dist = [1.0]
    ops = 0
    for p in probs:
        q = 1.0 - p
        k = len(dist)
        new = [0.0] * (k + 1)
        new[0] = dist[0] * q
        ops += 1
        for i in range(1, k):
            new[i] = dist[i] * q + dist[i - 1] * p
            ops += 2
        new[k] = dist[k - 1] * p
        ops += 1
        dist = new
    if counter is not None:
        counter.count += ops
    return np.asarray(dist)


def support_distribution(
    g: Subgraph,
    graphs: Sequence[UncertainGraph],
    counter: MultiplyAddCounter | None = None,
) -> np.ndarray:
    """Exact law of the number of graphs in ``graphs`` whose world contains ``g``."""
    probs = [containment_probability(g, graph) for graph in graphs]
    return poisson_binomial(probs, counter)


def joint_distribution(pos: Sequence[float], neg: Sequence[float]) -> np.ndarray:
    """Joint law over support pairs; the class marginals are independent."""
    return np.outer(np.asarray(pos), np.asarray(neg))


def score_group_key(s: float) -> float:
    """Canonical representative of a score for grouping distribution atoms.

    Scores are merged when equal after rounding to 12 significant digits;
    +-inf are their own groups. Distinct support pairs can produce
    mathematically identical scores that differ in the last ulp, which bitwise
    grouping would split unpredictably.
    """
    if math.isinf(s):
        return s
    return float(f"{s:.12g}")


@dataclass(frozen=True)
class ScoreDistribution:
    """Grouped (score, probability) atoms, scores strictly increasing."""

    atoms: tuple[tuple[float, float], ...]

    def scores(self) -> tuple[float, ...]:
        return tuple(s for s, _ in self.atoms)

    def probabilities(self) -> tuple[float, ...]:
        return tuple(p for _, p in self.atoms)

    def total_mass(self) -> float:
        return sum(p for _, p in self.atoms)


def distribution_from_pairs(pairs: Iterable[tuple[float, float]]) -> ScoreDistribution:
    """Group raw (score, probability) pairs into a ScoreDistribution.

    Zero-probability pairs are dropped; scores are grouped by
    ``score_group_key`` and the result is sorted ascending.
    """
    grouped: dict[float, float] = {}
    for s, p in pairs:
        if p == 0.0:
            continue
        key = score_group_key(s)
        grouped[key] = grouped.get(key, 0.0) + p
    atoms = tuple(sorted(grouped.items()))
    return ScoreDistribution(atoms)


def score_distribution(joint: np.ndarray, spec: ScoreFunction) -> ScoreDistribution:
    """Distribution of the score induced by a joint support-pair law."""
    n_pos = joint.shape[0] - 1
    n_neg = joint.shape[1] - 1
    pairs = []
    for a in range(n_pos + 1):
        for b in range(n_neg + 1):
            p = float(joint[a, b])
            if p != 0.0:
                pairs.append((eval_score(spec, a, b, n_pos, n_neg), p))
    return distribution_from_pairs(pairs)


def exp_of_pairs(pairs: Iterable[tuple[float, float]]) -> float:
    """Expectation over raw (score, probability) pairs.

    Cells with zero probability never contribute, so +inf scores there are
    ignored; any +inf score with positive probability makes the whole
    expectation +inf.
    """
    total = 0.0
    has_inf = False
    for s, p in pairs:
        if p == 0.0:
            continue
        if math.isinf(s):
            has_inf = True
        else:
            total += s * p
    return math.inf if has_inf else total


def measure_exp(joint: np.ndarray, spec: ScoreFunction) -> float:
    """Probability-weighted mean score; +inf if any reachable cell scores +inf."""
    n_pos = joint.shape[0] - 1
    n_neg = joint.shape[1] - 1
    pairs = []
    for a in range(n_pos + 1):
        for b in range(n_neg + 1):
            p = float(joint[a, b])
            if p != 0.0:
                pairs.append((eval_score(spec, a, b, n_pos, n_neg), p))
    return exp_of_pairs(pairs)


def median_from_masses(scores: Sequence[float], masses: Sequence[float]) -> float:
    """Largest score S with CDF(S) <= 1/2, over atoms listed ascending.

    When even the first atom exceeds half the mass the defining set is empty;
    the smallest atom score is returned as the limiting value.
    """
    best = None
    cum = 0.0
    first = None
    for s, p in zip(scores, masses):
        if p == 0.0:
            continue
        if first is None:
            first = s
        cum += p
        if cum <= 0.5 + _CDF_EPS:
            best = s
        else:
            break
    if best is not None:
        return best
    if first is None:
        raise ValueError("empty score distribution")
    return first


def mode_from_masses(scores: Sequence[float], masses: Sequence[float]) -> float:
    """Score whose grouped probability is maximal; ties go to the smaller score."""
    best_s = None
    best_p = 0.0
    for s, p in zip(scores, masses):
        if p == 0.0:
            continue
        if best_s is None or p > best_p + _TIE_EPS:
            best_s = s
            best_p = p
    if best_s is None:
        raise ValueError("empty score distribution")
    return best_s


def measure_median(dist: ScoreDistribution) -> float:
    return median_from_masses(dist.scores(), dist.probabilities())


def measure_mode(dist: ScoreDistribution) -> float:
    return mode_from_masses(dist.scores(), dist.probabilities())


def phi_pr_of_pairs(pairs: Iterable[tuple[float, float]], phi: float) -> float:
    """Probability mass on raw (score, probability) pairs scoring at least phi."""
    return sum(p for s, p in pairs if s >= phi)


def measure_phi_pr(joint: np.ndarray, spec: ScoreFunction, phi: float) -> float:
    """Total probability mass on support pairs scoring at least ``phi``."""
    n_pos = joint.shape[0] - 1
    n_neg = joint.shape[1] - 1
    total = 0.0
    for a in range(n_pos + 1):
        for b in range(n_neg + 1):
            p = float(joint[a, b])
            if p != 0.0 and eval_score(spec, a, b, n_pos, n_neg) >= phi:
                total += p
    return total


def measure_from_joint(joint: np.ndarray, score: ScoreFunction, measure: MeasureSpec) -> float:
    """Evaluate any of the four measures from a joint support-pair law."""
    if measure.kind == EXPECTATION:
        return measure_exp(joint, score)
    if measure.kind == PHI_PROBABILITY:
        assert measure.phi is not None
        return measure_phi_pr(joint, score, measure.phi)
    dist = score_distribution(joint, score)
    if measure.kind == MEDIAN:
        return measure_median(dist)
    return measure_mode(dist)


def measure_from_distribution(dist: ScoreDistribution, measure: MeasureSpec) -> float:
    """Evaluate a measure directly from a grouped score distribution."""
    if measure.kind == EXPECTATION:
        return exp_of_pairs(dist.atoms)
    if measure.kind == PHI_PROBABILITY:
        assert measure.phi is not None
        return phi_pr_of_pairs(dist.atoms, measure.phi)
    if measure.kind == MEDIAN:
        return measure_median(dist)
    return measure_mode(dist)


def expected_frequency(g: Subgraph, dataset: Dataset) -> float:
    """Mean containment probability over the whole dataset.

    Anti-monotone under subgraph extension, hence a sound frequency-pruning
    bound for the miner.
    """
    if len(dataset) == 0:
        raise ValueError("expected frequency needs at least one graph")
    total = sum(containment_probability(g, graph) for graph in dataset.graphs)
    return total / len(dataset)


def ub_exp(joint: np.ndarray, envelope: np.ndarray) -> float:
    """Upper bound on the expected score of a feature and all its supergraphs."""
    if joint.shape != envelope.shape:
        raise ValueError("joint and envelope shapes differ")
    pairs = []
    rows, cols = joint.shape
    for a in range(rows):
        for b in range(cols):
            p = float(joint[a, b])
            if p != 0.0:
                pairs.append((float(envelope[a, b]), p))
    return exp_of_pairs(pairs)


def ub_phi_pr(joint: np.ndarray, envelope: np.ndarray, phi: float) -> float:
    """Upper bound on the phi-probability of a feature and all its supergraphs."""
    if joint.shape != envelope.shape:
        raise ValueError("joint and envelope shapes differ")
    total = 0.0
    rows, cols = joint.shape
    for a in range(rows):
        for b in range(cols):
            p = float(joint[a, b])
            if p != 0.0 and float(envelope[a, b]) >= phi:
                total += p
    return total
