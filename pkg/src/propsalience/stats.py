"""Correlation and distribution summaries used by the salience analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MetricUndefinedError
from .special import student_t_two_sided_p


@dataclass(frozen=True)
class CorrelationResult:
    r: float
    p_value: float
    n: int


def pearson(x, y) -> CorrelationResult:
    """Pearson correlation with a two-sided p-value from the t distribution."""
    x = [float(v) for v in x]
    y = [float(v) for v in y]
    n = len(x)
    if len(y) != n:
        raise ValueError(f"length mismatch: {n} vs {len(y)}")
    if n < 3:
        raise MetricUndefinedError("pearson needs at least 3 paired observations")
    mean_x = sum(x) / n
    mean_y = sum(y) / n
    dx = [v - mean_x for v in x]
    dy = [v - mean_y for v in y]
    ss_x = sum(v * v for v in dx)
    ss_y = sum(v * v for v in dy)
    if ss_x == 0.0 or ss_y == 0.0:
        raise MetricUndefinedError("correlation is undefined for a constant vector")
    r = sum(a * b for a, b in zip(dx, dy)) / math.sqrt(ss_x * ss_y)
    r = max(-1.0, min(1.0, r))
    if abs(r) == 1.0:
        p = 0.0
    else:
        t = r * math.sqrt((n - 2) / (1.0 - r * r))
        p = student_t_two_sided_p(t, n - 2)
    return CorrelationResult(r=r, p_value=p, n=n)


def score_histogram(score_sets, summary_count: int) -> list[int]:
    """Counts of propositions per salience score 0..summary_count over a corpus."""
    counts = [0] * (summary_count + 1)
    for scores in score_sets:
        for value in scores.score.values():
            if value < 0 or value > summary_count:
                raise ValueError(f"score {value} outside 0..{summary_count}")
            counts[value] += 1
    return counts
