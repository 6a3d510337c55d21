"""Polynomials, Lagrange interpolation, quadrature, and root finding.

The quadrature rule is composite Gauss-Legendre with an optional dyadic
panel cascade toward one declared singular endpoint, so integrable
singularities (the brachistochrone integrand behaves like ``x**-1/2`` at
the start of the descent) never get sampled at the endpoint itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil, log2

import numpy as np


class BracketError(ValueError):
    """Root bracket does not contain a sign change."""


class ToleranceNotMet(RuntimeError):
    """Quadrature failed to converge; carries the best estimate."""

    def __init__(self, message: str, estimate: float, achieved: float):
        super().__init__(message)
        self.estimate = estimate
        self.achieved = achieved


class Polynomial:
    """Dense polynomial with ascending coefficients ``a0 + a1 x + ...``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = [float(v) for v in coeffs]
        if not c:
            raise ValueError("polynomial needs at least one coefficient")
        self.coeffs = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        acc = np.full_like(x, self.coeffs[-1])
        for c in self.coeffs[-2::-1]:
            acc = acc * x + c
        return acc if acc.ndim else float(acc)

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial((0.0,))
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


class LagrangeBasis:
    """Lagrange cardinal basis on a set of distinct nodes.

    Basis values and derivatives are evaluated with stable product-form
    formulas; monomial coefficients are only produced on request (via the
    Vandermonde solve) since that conversion is the ill-conditioned step.
    """

    def __init__(self, nodes):
        nodes = tuple(float(v) for v in nodes)
        if len(nodes) < 1:
            raise ValueError("need at least one node")
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate interpolation nodes")
        self.nodes = nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def values_at(self, x) -> np.ndarray:
        """Matrix ``phi[k, j] = phi_k(x_j)``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        n = len(self.nodes)
        phi = np.ones((n, x.size))
        for k in range(n):
            xk = self.nodes[k]
            for j in range(n):
                if j != k:
                    phi[k] *= (x - self.nodes[j]) / (xk - self.nodes[j])
        return phi

    def derivatives_at(self, x) -> np.ndarray:
        """Matrix ``dphi[k, j] = phi_k'(x_j)``, by the product-rule sum."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        n = len(self.nodes)
        dphi = np.zeros((n, x.size))
        for k in range(n):
            xk = self.nodes[k]
            for i in range(n):
                if i == k:
                    continue
                term = np.full(x.size, 1.0 / (xk - self.nodes[i]))
                for j in range(n):
                    if j != k and j != i:
                        term *= (x - self.nodes[j]) / (xk - self.nodes[j])
                dphi[k] += term
        return dphi


def lagrange_interpolate(basis: LagrangeBasis, values) -> Polynomial:
    """Monomial-form interpolant through ``(node_k, value_k)``.

    Solved via the Vandermonde system with partial pivoting; adequate for
    the node counts used here (degree <= 13).
    """
    values = np.asarray(values, dtype=float)
    if values.shape != (len(basis),):
        raise ValueError("values length must match node count")
    v = np.vander(np.asarray(basis.nodes), len(basis), increasing=True)
    return Polynomial(np.linalg.solve(v, values).tolist())


@dataclass(frozen=True)
class Grading:
    """Dyadic panel grading toward one endpoint.

    ``strength`` bounds the singularity exponent: the integrand may blow up
    no faster than ``dist**-strength`` at the graded endpoint.
    """

    endpoint: str = "left"
    strength: float = 0.75

    def __post_init__(self) -> None:
        if self.endpoint not in ("left", "right"):
            raise ValueError("grading endpoint must be 'left' or 'right'")
        if not 0.0 < self.strength < 1.0:
            raise ValueError("grading strength must lie in (0, 1)")


@dataclass(frozen=True)
class QuadratureSpec:
    order: int = 16
    base_panels: int = 4
    grading: Grading | None = None
    rel_tol: float = 1e-9
    max_refinements: int = 8

    def __post_init__(self) -> None:
        if self.order < 2:
            raise ValueError("panel rule order must be >= 2")
        if self.base_panels < 1:
            raise ValueError("need at least one base panel")
        if self.rel_tol <= 0:
            raise ValueError("rel_tol must be positive")
        if self.max_refinements < 1:
            raise ValueError("max_refinements must be >= 1")


_ABS_FLOOR = 1e-14


@lru_cache(maxsize=None)
def _gauss_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _cascade_depth(spec: QuadratureSpec, level: int) -> int:
    # Innermost-panel truncation scales like width**(1 - strength); pick the
    # depth so that term sits below rel_tol with margin, deepening per level.
    p = spec.grading.strength
    bits = -log2(spec.rel_tol)
    return ceil((bits + 4.0) / (1.0 - p)) + level * ceil(2.0 / (1.0 - p))


@lru_cache(maxsize=None)
def _panel_edges(spec: QuadratureSpec, a: float, b: float, level: int) -> np.ndarray:
    panels = spec.base_panels * (2**level)
    edges = np.linspace(a, b, panels + 1)
    if spec.grading is None:
        return edges
    depth = _cascade_depth(spec, level)
    w = (b - a) / panels
    cascade = w * (0.5 ** np.arange(depth, 0, -1))
    if spec.grading.endpoint == "left":
        graded = np.concatenate([[a], a + cascade, edges[1:]])
    else:
        graded = np.concatenate([edges[:-1], b - cascade[::-1], [b]])
    return graded


@lru_cache(maxsize=None)
def quadrature_nodes(
    spec: QuadratureSpec, a: float, b: float, level: int
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite rule at one refinement level."""
    edges = _panel_edges(spec, a, b, level)
    x, w = _gauss_rule(spec.order)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    xs = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()
    return xs, ws


def _eval_integrand(f, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape == x.shape:
            return y
    except (TypeError, ValueError):
        pass
    return np.array([float(f(v)) for v in x])


def integrate(f, a: float, b: float, spec: QuadratureSpec | None = None, *,
              full_output: bool = False):
    """Integrate ``f`` over ``[a, b]``, refining until successive estimates
    agree to ``spec.rel_tol`` (with an absolute floor of 1e-14).

    The rule never samples the interval endpoints, so integrable endpoint
    singularities are admissible when a matching ``Grading`` is set.
    Raises :class:`ToleranceNotMet` if ``max_refinements`` is exhausted.
    """
    if spec is None:
        spec = QuadratureSpec()
    if not a < b:
        raise ValueError("need a < b")
    prev = None
    achieved = np.inf
    for level in range(spec.max_refinements + 1):
        xs, ws = quadrature_nodes(spec, float(a), float(b), level)
        est = float(np.sum(_eval_integrand(f, xs) * ws))
        if prev is not None:
            diff = abs(est - prev)
            achieved = diff / max(abs(est), _ABS_FLOOR)
            if diff <= max(spec.rel_tol * abs(est), _ABS_FLOOR):
                if full_output:
                    return est, {"achieved_rel": achieved, "levels": level + 1}
                return est
        prev = est
    raise ToleranceNotMet(
        f"quadrature did not reach rel_tol={spec.rel_tol} in "
        f"{spec.max_refinements} refinements (best achieved {achieved:.3e})",
        estimate=prev,
        achieved=achieved,
    )


class ChebyshevTable:
    """Integer coefficient table of Chebyshev polynomials of the first kind.

    Row ``n`` holds the ascending coefficients of ``T_n``; the three-term
    recurrence ``T_{n+1} = 2 x T_n - T_{n-1}`` is carried out in exact
    integer arithmetic.
    """

    def __init__(self, max_degree: int):
        if max_degree < 0:
            raise ValueError("max_degree must be nonnegative")
        rows: list[tuple[int, ...]] = [(1,), (0, 1)]
        while len(rows) <= max_degree:
            tn, tn1 = rows[-1], rows[-2]
            nxt = [0] + [2 * c for c in tn]
            for k, c in enumerate(tn1):
                nxt[k] -= c
            rows.append(tuple(nxt))
        self._rows = tuple(rows[: max_degree + 1])

    @property
    def max_degree(self) -> int:
        return len(self._rows) - 1

    def coeffs(self, n: int) -> tuple[int, ...]:
        if n > self.max_degree:
            raise ValueError(f"table only populated to degree {self.max_degree}")
        return self._rows[n]


def coefficient_bounds(table: ChebyshevTable, zeta: int) -> tuple[float, ...]:
    """Bounds ``B_1..B_{zeta-1}`` on the coefficients of a polynomial of
    degree ``zeta - 1`` that is bounded by 1 on ``[-1, 1]``.

    The bound on coefficient ``j`` is the matching-index coefficient of
    ``T_{zeta-1}`` when ``zeta - 1 - j`` is even, else of ``T_{zeta-2}``.
    """
    if zeta < 2:
        raise ValueError("need zeta >= 2")
    n = zeta - 1
    if table.max_degree < n:
        raise ValueError("Chebyshev table too small")
    top, sub = table.coeffs(n), table.coeffs(n - 1)
    bounds = []
    for j in range(1, zeta):
        row = top if (n - j) % 2 == 0 else sub
        bounds.append(float(abs(row[j])))
    return tuple(bounds)


def bisect_root(f, lo: float, hi: float, tol: float = 1e-10) -> float:
    """Bisection root of a continuous ``f`` with ``f(lo) * f(hi) <= 0``."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}]")
    neg_low = flo < 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break  # bracket at floating-point resolution
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == neg_low:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
