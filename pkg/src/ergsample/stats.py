"""Sufficient statistics and change scores for exponential-family graph models.

A change score is the difference in a statistic from toggling one dyad,
evaluated with the rest of the graph held fixed; for the built-in counting
statistics it is computed in closed form (degree table lookups, common
neighbor popcounts) rather than by re-evaluating the statistic.

Each statistic declares a monotonicity class that the bounding machinery
relies on:

* census-monotone: the change score itself is weakly increasing in edge
  addition and nonnegative (true of all subgraph-count statistics).
* statistic-monotone: only the statistic value is weakly increasing.
* general: no monotonicity; usable for sampling only when the statistic
  supplies its own change-score range over a (lower, upper) state interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .graphs import AdjacencyState, Dyad, GraphSpace

CENSUS_MONOTONE = "census-monotone"
STATISTIC_MONOTONE = "statistic-monotone"
GENERAL = "general"


class IncompatibleStatisticError(ValueError):
    """The statistic is not defined on the given space."""


def inverse_logit(x: float) -> float:
    """Numerically stable logistic function."""
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def logit(p: float) -> float:
    if not 0.0 < p < 1.0:
        raise ValueError(f"logit needs p in (0,1), got {p}")
    return math.log(p / (1.0 - p))


@lru_cache(maxsize=None)
def _comb_table(n: int) -> tuple[tuple[float, ...], ...]:
    """Float binomial coefficients C(d, k) for all d, k in 0..n."""
    return tuple(
        tuple(float(math.comb(d, k)) for k in range(n + 1)) for d in range(n + 1)
    )


class Statistic:
    """One component of the sufficient statistic vector.

    Subclasses implement value() and change(); change() takes 0-based
    endpoints and must be independent of the current state of that dyad.
    """

    name: str = "stat"
    monotonicity: str = GENERAL

    def check_space(self, space: GraphSpace) -> None:
        """Raise IncompatibleStatisticError if undefined on the space."""

    def value(self, y: AdjacencyState) -> float:
        raise NotImplementedError

    def change(self, y: AdjacencyState, i: int, j: int) -> float:
        raise NotImplementedError

    def delta_range(self, lower, upper, i: int, j: int):
        """Extrema (lo, hi) of the change score over all states between
        lower and upper. Only required for general-monotonicity statistics;
        None means not available."""
        return None


@dataclass(frozen=True)
class EdgeCount(Statistic):
    """Number of edges; its change score is identically 1."""

    name = "edges"
    monotonicity = CENSUS_MONOTONE

    def value(self, y):
        return float(y.n_edges)

    def change(self, y, i, j):
        return 1.0


@dataclass(frozen=True)
class KStar(Statistic):
    """k-star count: sum over vertices of C(degree, k).

    The change score for dyad {i,j} is C(d_i, k-1) + C(d_j, k-1) with
    degrees taken on the graph with the dyad removed. Undirected spaces
    only.
    """

    k: int

    monotonicity = CENSUS_MONOTONE

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k-star order must be >= 1, got {self.k}")

    @property
    def name(self):
        return f"kstar{self.k}"

    def check_space(self, space):
        if space.directed:
            raise IncompatibleStatisticError("k-star statistics are defined on undirected spaces")
        if self.k > space.n - 1:
            raise IncompatibleStatisticError(f"kstar{self.k} needs k <= n-1 = {space.n - 1}")

    def value(self, y):
        table = _comb_table(y.space.n)
        k = self.k
        return sum(table[d][k] for d in y.deg)

    def change(self, y, i, j):
        table = _comb_table(y.space.n)
        km = self.k - 1
        present = (y.out[i] >> j) & 1
        if i == j:
            return table[y.deg[i] - present][km]
        return table[y.deg[i] - present][km] + table[y.deg[j] - present][km]


@dataclass(frozen=True)
class Triangle(Statistic):
    """Triangle count; change score is the number of common neighbors of
    the endpoints in the rest of the graph. Undirected spaces only."""

    name = "triangle"
    monotonicity = CENSUS_MONOTONE

    def check_space(self, space):
        if space.directed:
            raise IncompatibleStatisticError("the triangle statistic is defined on undirected spaces")

    def value(self, y):
        out = y.out
        total = 0
        for j in range(y.space.n):
            row_j = out[j]
            above = ~((1 << (j + 1)) - 1)
            for i in range(j):
                if (row_j >> i) & 1:
                    total += (out[i] & row_j & above).bit_count()
        return float(total)

    def change(self, y, i, j):
        if i == j:
            return 0.0
        mask = ~((1 << i) | (1 << j))
        return float((y.out[i] & y.out[j] & mask).bit_count())


@dataclass(frozen=True)
class Mutual(Statistic):
    """Count of reciprocated ordered pairs. Directed spaces only; the
    change score for (i,j) is the indicator of the reverse arc."""

    name = "mutual"
    monotonicity = CENSUS_MONOTONE

    def check_space(self, space):
        if not space.directed:
            raise IncompatibleStatisticError("the mutual statistic requires a directed space")

    def value(self, y):
        out = y.out
        total = 0
        for i in range(y.space.n):
            for j in range(i):
                total += ((out[i] >> j) & 1) & ((out[j] >> i) & 1)
        return float(total)

    def change(self, y, i, j):
        if i == j:
            return 0.0
        return float((y.out[j] >> i) & 1)


@dataclass(frozen=True)
class CustomStatistic(Statistic):
    """User-supplied statistic.

    value_fn(state) -> float and change_fn(state, i, j) -> float with
    0-based endpoints, following the same contract as the built-ins.
    General-monotonicity statistics must also supply delta_range_fn
    (lower, upper, i, j) -> (lo, hi) giving the change-score extrema over
    states between lower and upper, or sampling will refuse the model.
    """

    label: str
    value_fn: Callable[[AdjacencyState], float]
    change_fn: Callable[[AdjacencyState, int, int], float]
    monotonicity: str = GENERAL
    delta_range_fn: Callable | None = None

    def __post_init__(self):
        if self.monotonicity not in (CENSUS_MONOTONE, STATISTIC_MONOTONE, GENERAL):
            raise ValueError(f"unknown monotonicity class {self.monotonicity!r}")

    @property
    def name(self):
        return self.label

    def value(self, y):
        return float(self.value_fn(y))

    def change(self, y, i, j):
        return float(self.change_fn(y, i, j))

    def delta_range(self, lower, upper, i, j):
        if self.delta_range_fn is None:
            return None
        lo, hi = self.delta_range_fn(lower, upper, i, j)
        return float(lo), float(hi)


@dataclass(frozen=True)
class ModelSpec:
    """Statistics plus a finite parameter vector of the same length."""

    stats: tuple[Statistic, ...]
    theta: tuple[float, ...]

    def __init__(self, stats: Sequence[Statistic], theta: Sequence[float]):
        stats = tuple(stats)
        theta = tuple(float(t) for t in theta)
        if len(stats) == 0:
            raise ValueError("a model needs at least one statistic")
        if len(stats) != len(theta):
            raise ValueError(f"{len(stats)} statistics but {len(theta)} parameters")
        for t in theta:
            if not math.isfinite(t):
                raise ValueError(f"parameters must be finite, got {t}")
        object.__setattr__(self, "stats", stats)
        object.__setattr__(self, "theta", theta)

    @property
    def p(self) -> int:
        return len(self.stats)

    def check_space(self, space: GraphSpace) -> None:
        for s in self.stats:
            s.check_space(space)

    def stat_names(self) -> list[str]:
        return [s.name for s in self.stats]


def evaluate(stat: Statistic, y: AdjacencyState) -> float:
    """Exact value of the statistic on y."""
    stat.check_space(y.space)
    return stat.value(y)


def change_score(stat: Statistic, y: AdjacencyState, d: Dyad | tuple) -> float:
    """t(y with d present) - t(y with d absent), computed in closed form."""
    stat.check_space(y.space)
    d = y.space._as_dyad(d)
    return stat.change(y, d.i - 1, d.j - 1)


def change_vector(model: ModelSpec, y: AdjacencyState, d: Dyad | tuple) -> list[float]:
    """Component-wise change scores for every statistic in the model."""
    model.check_space(y.space)
    d = y.space._as_dyad(d)
    i, j = d.i - 1, d.j - 1
    return [s.change(y, i, j) for s in model.stats]


def statistic_vector(model: ModelSpec, y: AdjacencyState) -> list[float]:
    """Values of every statistic in the model on y."""
    model.check_space(y.space)
    return [s.value(y) for s in model.stats]
