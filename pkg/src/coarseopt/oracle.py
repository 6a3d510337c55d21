"""Cost oracles over indexed search spaces.

A cost oracle is a pure mapping from a state index to a cost.  Infeasible
states carry the sentinel ``INFEASIBLE`` (positive infinity), which orders
above every finite cost, so search methods need no feasibility branch:
an infeasible state simply never becomes the incumbent.
"""

from __future__ import annotations

import math
from typing import Protocol, runtime_checkable

import numpy as np

from .space import MixedRadixSpace, SubsetSpace

INFEASIBLE = math.inf


def is_feasible(cost: float) -> bool:
    return math.isfinite(cost)


@runtime_checkable
class CostOracle(Protocol):
    """Minimal protocol the search methods rely on."""

    space: MixedRadixSpace

    def __call__(self, index: int) -> float: ...

    def batch(self, indices: np.ndarray) -> np.ndarray: ...


class BatchedOracle:
    """Base class: implement ``batch``; scalar calls evaluate a singleton
    batch so that both paths produce bit-identical costs."""

    space: MixedRadixSpace

    def batch(self, indices: np.ndarray) -> np.ndarray:  # pragma: no cover
        raise NotImplementedError

    def __call__(self, index: int) -> float:
        return float(self.batch(np.asarray([index], dtype=np.int64))[0])


class ArrayOracle(BatchedOracle):
    """Costs read from a prebuilt array; handy for tests and toy problems."""

    def __init__(self, space: MixedRadixSpace, costs):
        costs = np.asarray(costs, dtype=float)
        if costs.shape != (space.cardinality,):
            raise ValueError("cost array must have one entry per state")
        self.space = space
        self._costs = costs

    def batch(self, indices: np.ndarray) -> np.ndarray:
        return self._costs[np.asarray(indices, dtype=np.int64)]


class FunctionOracle(BatchedOracle):
    """Wrap a scalar ``index -> cost`` callable."""

    def __init__(self, space: MixedRadixSpace, fn):
        self.space = space
        self._fn = fn

    def batch(self, indices: np.ndarray) -> np.ndarray:
        return np.array([float(self._fn(int(i))) for i in np.asarray(indices)])


class CountingOracle:
    """Wrapper that counts per-state evaluations.

    ``peek_batch`` bypasses the counters: it is the simulator bookkeeping
    port used by the quantum-search simulation to compute marked-set sizes,
    whose work is charged to a separate ledger, never to the algorithm's
    classical account.
    """

    def __init__(self, base):
        self.base = base
        self.space = base.space
        self.evals = 0
        self.feasible_evals = 0

    def __call__(self, index: int) -> float:
        return float(self.batch(np.asarray([index], dtype=np.int64))[0])

    def batch(self, indices: np.ndarray) -> np.ndarray:
        indices = np.asarray(indices, dtype=np.int64)
        costs = self.base.batch(indices)
        self.evals += int(indices.size)
        self.feasible_evals += int(np.isfinite(costs).sum())
        return costs

    def peek_batch(self, indices: np.ndarray) -> np.ndarray:
        return self.base.batch(np.asarray(indices, dtype=np.int64))


Domain = MixedRadixSpace | SubsetSpace


def domain_size(domain: Domain) -> int:
    return domain.cardinality


def domain_to_parent(domain: Domain, positions: np.ndarray) -> np.ndarray:
    """Map domain positions to indices of the underlying full space."""
    positions = np.asarray(positions, dtype=np.int64)
    if isinstance(domain, SubsetSpace):
        return domain.parent_indices()[positions]
    return positions


def domain_space(domain: Domain) -> MixedRadixSpace:
    return domain.parent if isinstance(domain, SubsetSpace) else domain
