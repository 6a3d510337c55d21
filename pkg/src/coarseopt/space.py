"""Mixed-radix finite search spaces.

A search space is a Cartesian product of per-dimension real-valued level
sets.  States are addressed by a single integer index in ``[0, N)`` with a
fixed, most-significant-dimension-first mixed-radix encoding, so that runs
are reproducible and index ranges can be partitioned across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class LevelSet:
    """Ordered set of admissible real values for one dimension."""

    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise ValueError("level set must be nonempty")
        vals = self.values
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ValueError("level values must be strictly increasing")

    @classmethod
    def equidistant(cls, lo: float, hi: float, count: int) -> "LevelSet":
        """``count`` equally spaced levels from ``lo`` to ``hi`` inclusive.

        ``count == 1`` requires ``lo == hi`` (a degenerate dimension).
        """
        if count < 1:
            raise ValueError(f"level count must be >= 1, got {count}")
        if lo > hi:
            raise ValueError(f"need lo <= hi, got ({lo}, {hi})")
        if count == 1:
            if lo != hi:
                raise ValueError("count == 1 requires lo == hi")
            return cls((float(lo),))
        return cls(tuple(np.linspace(lo, hi, count).tolist()))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def lo(self) -> float:
        return self.values[0]

    @property
    def hi(self) -> float:
        return self.values[-1]


@dataclass(frozen=True)
class MixedRadixSpace:
    """Product of level sets with a bijective integer indexing.

    ``index_to_tuple`` returns the mixed-radix digits of the index, most
    significant dimension first; the last dimension varies fastest.
    """

    dims: tuple[LevelSet, ...]
    _strides: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.dims) == 0:
            raise ValueError("space needs at least one dimension")
        strides = [1] * len(self.dims)
        for i in range(len(self.dims) - 2, -1, -1):
            strides[i] = strides[i + 1] * len(self.dims[i + 1])
        object.__setattr__(self, "_strides", tuple(strides))

    @property
    def cardinality(self) -> int:
        n = 1
        for d in self.dims:
            n *= len(d)
        return n

    @property
    def radices(self) -> tuple[int, ...]:
        return tuple(len(d) for d in self.dims)

    def _check_index(self, i: int) -> None:
        if not 0 <= i < self.cardinality:
            raise IndexError(f"index {i} out of range [0, {self.cardinality})")

    def index_to_tuple(self, i: int) -> tuple[int, ...]:
        self._check_index(i)
        out = []
        for stride, dim in zip(self._strides, self.dims):
            d, i = divmod(i, stride)
            out.append(d)
        return tuple(out)

    def tuple_to_index(self, digits) -> int:
        if len(digits) != len(self.dims):
            raise ValueError("digit tuple has wrong length")
        i = 0
        for d, stride, dim in zip(digits, self._strides, self.dims):
            if not 0 <= d < len(dim):
                raise IndexError(f"digit {d} out of range for radix {len(dim)}")
            i += d * stride
        return i

    def decode(self, i: int) -> tuple[float, ...]:
        """Real values addressed by index ``i``."""
        return tuple(
            dim.values[d] for dim, d in zip(self.dims, self.index_to_tuple(i))
        )

    def digits_of(self, indices: np.ndarray) -> np.ndarray:
        """Vectorized ``index_to_tuple``: shape ``(len(indices), ndim)``."""
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size and (idx.min() < 0 or idx.max() >= self.cardinality):
            raise IndexError("index out of range")
        cols = []
        for stride, dim in zip(self._strides, self.dims):
            cols.append((idx // stride) % len(dim))
        return np.stack(cols, axis=1)

    def decode_batch(self, indices: np.ndarray) -> np.ndarray:
        """Vectorized ``decode``: float array of shape ``(len(indices), ndim)``."""
        digits = self.digits_of(indices)
        out = np.empty(digits.shape, dtype=float)
        for j, dim in enumerate(self.dims):
            out[:, j] = np.asarray(dim.values)[digits[:, j]]
        return out

    def value_index(self, dim: int, value: float, atol: float = 1e-12) -> int:
        """Position of ``value`` in dimension ``dim``'s level set."""
        arr = np.asarray(self.dims[dim].values)
        j = int(np.argmin(np.abs(arr - value)))
        if abs(arr[j] - value) > atol:
            raise ValueError(f"{value} is not a level of dimension {dim}")
        return j


@dataclass(frozen=True)
class SubsetSpace:
    """A sampled subset of a parent space's indices.

    Positions ``0..s-1`` address the chosen parent indices in draw order.
    """

    parent: MixedRadixSpace
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        n = self.parent.cardinality
        seen = set()
        for i in self.indices:
            if not 0 <= i < n:
                raise IndexError(f"subset index {i} outside parent range")
            if i in seen:
                raise ValueError(f"duplicate subset index {i}")
            seen.add(i)
        if not self.indices:
            raise ValueError("subset must be nonempty")

    @property
    def cardinality(self) -> int:
        return len(self.indices)

    def to_parent(self, position: int) -> int:
        return self.indices[position]

    def parent_indices(self) -> np.ndarray:
        return np.asarray(self.indices, dtype=np.int64)


def make_equidistant_space(specs) -> MixedRadixSpace:
    """Build a space from ``(lo, hi, count)`` triples, one per dimension."""
    return MixedRadixSpace(
        tuple(LevelSet.equidistant(lo, hi, count) for lo, hi, count in specs)
    )


def sample_subset(space: MixedRadixSpace, s: int, rng: np.random.Generator) -> SubsetSpace:
    """Draw ``s`` indices uniformly without replacement.

    Partial Fisher-Yates over a sparse swap map, so the parent space is never
    materialized; ``s == N`` yields a full permutation.
    """
    n = space.cardinality
    if not 1 <= s <= n:
        raise ValueError(f"subset size must be in [1, {n}], got {s}")
    swapped: dict[int, int] = {}
    picks = np.empty(s, dtype=np.int64)
    for k in range(s):
        j = int(rng.integers(k, n))
        picks[k] = swapped.get(j, j)
        swapped[j] = swapped.get(k, k)
    return SubsetSpace(space, tuple(int(p) for p in picks))


@dataclass(frozen=True)
class RefinementSpec:
    """Per-dimension refinement: half-width around the center value and a
    finer step, both in the dimension's own units.

    A single ``(half_width, step)`` pair is broadcast to every dimension.
    """

    half_widths: tuple[float, ...]
    steps: tuple[float, ...]

    @classmethod
    def uniform(cls, half_width: float, step: float, ndim: int) -> "RefinementSpec":
        return cls((half_width,) * ndim, (step,) * ndim)

    def __post_init__(self) -> None:
        if len(self.half_widths) != len(self.steps):
            raise ValueError("half_widths and steps must have equal length")
        for w, st in zip(self.half_widths, self.steps):
            if w < 0:
                raise ValueError("half-width must be nonnegative")
            if st <= 0:
                raise ValueError("refinement step must be positive")


def refine_around(
    space: MixedRadixSpace, center: int, spec: RefinementSpec
) -> MixedRadixSpace:
    """Finer space spanning ``[v - w, v + w]`` per dimension around ``center``.

    Each refined range is clipped to the parent dimension's bounding box and
    always contains the center value itself.
    """
    if len(spec.half_widths) != len(space.dims):
        raise ValueError("refinement spec does not match space dimensionality")
    center_values = space.decode(center)
    dims = []
    for dim, v, w, st in zip(space.dims, center_values, spec.half_widths, spec.steps):
        if w == 0:
            dims.append(LevelSet((v,)))
            continue
        k = int(np.floor(w / st + 1e-12))
        vals = v + st * np.arange(-k, k + 1)
        vals = vals[(vals >= dim.lo - 1e-12) & (vals <= dim.hi + 1e-12)]
        vals = np.clip(vals, dim.lo, dim.hi)
        dims.append(LevelSet(tuple(dict.fromkeys(vals.tolist()))))
    return MixedRadixSpace(tuple(dims))
