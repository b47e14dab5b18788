"""Angular factors and their differential identities.

Two polynomial families carry the symmetry classes used throughout the
package: the Vandermonde product ``prod_{i<j} (x_j - x_i)`` for
antisymmetric functions and the linear form ``sum_k x_k`` for odd
functions.  Both are harmonic, homogeneous polynomials, so they satisfy
the Euler relation ``<x, grad F(x)> = lam * F(x)`` with ``lam`` the
homogeneity order, and the Schwarz ratio

    t(x) = (|x| |grad F(x)| / F(x))**2

is bounded below by ``lam**2`` wherever ``F`` does not vanish.  These two
facts are what every certificate computation downstream relies on, so
this module also exposes residual evaluators for them plus an exact
rational backend that anchors the floating-point tolerances.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    DomainError,
    InvalidDimensionError,
    OnBoundaryError,
    SymHardyError,
    UnsupportedDimensionError,
)

__all__ = [
    "AngularKind",
    "AngularFactor",
    "Vandermonde",
    "OddLinear",
    "CustomFactor",
    "constant_factor",
    "vandermonde",
    "odd_linear",
    "vandermonde_value",
    "vandermonde_gradient",
    "euler_residual",
    "laplacian_residual",
    "schwarz_ratio",
    "vandermonde_value_exact",
    "vandermonde_gradient_exact",
    "vandermonde_laplacian_exact",
    "MAX_EXPANSION_DIM",
]

# Largest dimension for which the exact pair-omission expansion of second
# derivatives is offered; beyond it the finite-difference backend is used.
MAX_EXPANSION_DIM = 6

# Largest dimension for the exact rational backend.
MAX_EXACT_DIM = 4


class AngularKind(Enum):
    VANDERMONDE = "vandermonde"
    ODD_LINEAR = "odd_linear"
    CUSTOM = "custom"


def _as_batch(x):
    """Normalize a point (d,) or batch (n, d) to a 2-d float array."""
    X = np.asarray(x, dtype=float)
    if X.ndim == 1:
        return X[None, :], True
    if X.ndim == 2:
        return X, False
    raise ValueError("expected a point of shape (d,) or a batch of shape (n, d)")


class AngularFactor:
    """Shared interface of angular factors.

    Concrete subclasses provide the vectorized internals ``_value``,
    ``_gradient`` and ``_laplacian`` on (n, d) arrays; the public methods
    accept either a single point or a batch and unwrap accordingly.
    """

    kind: AngularKind
    dimension: int
    homogeneity: float

    def value(self, x):
        X, single = _as_batch(x)
        self._check_dim(X)
        v = self._value(X)
        return float(v[0]) if single else v

    def gradient(self, x):
        X, single = _as_batch(x)
        self._check_dim(X)
        g = self._gradient(X)
        return g[0] if single else g

    def laplacian(self, x, backend="auto"):
        X, single = _as_batch(x)
        self._check_dim(X)
        v = self._laplacian(X, backend=backend)
        return float(v[0]) if single else v

    def schwarz_ratio(self, x):
        """Return t = (|x| |grad F| / F)**2, clipped up to lam**2.

        The lower bound t >= lam**2 follows from the Euler relation and
        the Cauchy-Schwarz inequality; it is asserted here, not assumed.
        """
        X, single = _as_batch(x)
        self._check_dim(X)
        v = self._value(X)
        if np.any(v == 0.0):
            raise OnBoundaryError(
                "angular factor vanishes at the point; the Schwarz ratio "
                "is defined on the interior of the sector only"
            )
        g = self._gradient(X)
        t = (X * X).sum(axis=1) * (g * g).sum(axis=1) / (v * v)
        lam2 = self.homogeneity**2
        if np.any(t < lam2 * (1.0 - 1e-9) - 1e-9):
            raise SymHardyError(
                "Schwarz ratio fell below the homogeneity bound; "
                "numerical breakdown at the sampled point"
            )
        t = np.maximum(t, lam2)
        return float(t[0]) if single else t

    def _check_dim(self, X):
        if X.shape[-1] != self.dimension:
            raise InvalidDimensionError(
                f"point has dimension {X.shape[-1]}, factor expects {self.dimension}"
            )

    def __repr__(self):
        return f"{type(self).__name__}(d={self.dimension}, lam={self.homogeneity})"


class Vandermonde(AngularFactor):
    """The alternating product prod_{i<j} (x_j - x_i) in dimension d >= 2.

    Antisymmetric under any coordinate transposition, harmonic and
    homogeneous of order d (d - 1) / 2.  Gradients use logarithmic
    differentiation away from coordinate coincidences and an exact
    pair-omission product form on the coincidence set, so they are valid
    polynomial evaluations everywhere.
    """

    kind = AngularKind.VANDERMONDE

    def __init__(self, dimension):
        if dimension < 2:
            raise InvalidDimensionError("the Vandermonde factor needs d >= 2")
        self.dimension = int(dimension)
        self.homogeneity = dimension * (dimension - 1) / 2.0
        self._pairs = [
            (i, j) for i in range(dimension) for j in range(i + 1, dimension)
        ]
        self._pair_index = {pair: q for q, pair in enumerate(self._pairs)}

    def _diffs(self, X):
        return np.stack([X[:, j] - X[:, i] for i, j in self._pairs], axis=1)

    def _value(self, X):
        return self._diffs(X).prod(axis=1)

    def _gradient(self, X):
        d = self.dimension
        v = self._value(X)
        D = X[:, :, None] - X[:, None, :]  # D[:, k, j] = x_k - x_j
        with np.errstate(divide="ignore", invalid="ignore"):
            inv = 1.0 / D
            idx = np.arange(d)
            inv[:, idx, idx] = 0.0
            grad = v[:, None] * inv.sum(axis=2)
        bad = ~np.isfinite(grad).all(axis=1)
        for i in np.nonzero(bad)[0]:
            grad[i] = self._gradient_products(X[i])
        return grad

    def _gradient_products(self, x):
        # Exact polynomial route: d/dx_k of the product is a sum of signed
        # products with one pair factor omitted.  O(d^4) but coincidence-safe.
        d = self.dimension
        out = np.zeros(d)
        for k in range(d):
            acc = 0.0
            for j in range(d):
                if j == k:
                    continue
                skip = self._pair_index[(min(j, k), max(j, k))]
                prod = 1.0
                for q, (a, b) in enumerate(self._pairs):
                    if q == skip:
                        continue
                    prod *= x[b] - x[a]
                acc += prod if k > j else -prod
            out[k] = acc
        return out

    def _laplacian(self, X, backend="auto"):
        d = self.dimension
        if backend == "auto":
            backend = "analytic" if d <= MAX_EXPANSION_DIM else "fd"
        elif backend == "expansion":
            if d > MAX_EXPANSION_DIM:
                raise UnsupportedDimensionError(
                    f"exact second derivatives are offered for d <= "
                    f"{MAX_EXPANSION_DIM}; use the 'fd' backend beyond that"
                )
            backend = "analytic"
        if backend == "analytic":
            return self._laplacian_analytic(X)
        if backend == "fd":
            return self._laplacian_fd(X)
        raise ValueError(f"unknown laplacian backend {backend!r}")

    def _laplacian_analytic(self, X):
        # Second derivatives via twofold pair omission; exact polynomial
        # evaluation, no expansion into monomials needed.
        d = self.dimension
        pairs = self._pairs
        pidx = self._pair_index
        P = len(pairs)
        Dp = self._diffs(X)
        res = np.zeros(len(X))
        for k in range(d):
            for j in range(d):
                if j == k:
                    continue
                sj = 1.0 if k > j else -1.0
                pj = pidx[(min(j, k), max(j, k))]
                for l in range(d):
                    if l == k or l == j:
                        continue
                    sl = 1.0 if k > l else -1.0
                    pl = pidx[(min(l, k), max(l, k))]
                    keep = [q for q in range(P) if q != pj and q != pl]
                    res += sj * sl * Dp[:, keep].prod(axis=1)
        return res

    def _laplacian_fd(self, X):
        out = np.zeros(len(X))
        for i, x in enumerate(X):
            h = 1e-3 * max(1.0, float(np.max(np.abs(x))))
            acc = 0.0
            f0 = float(self._value(x[None, :])[0])
            for k in range(self.dimension):
                xp = x.copy()
                xm = x.copy()
                xp[k] += h
                xm[k] -= h
                fp = float(self._value(xp[None, :])[0])
                fm = float(self._value(xm[None, :])[0])
                acc += (fp - 2.0 * f0 + fm) / (h * h)
            out[i] = acc
        return out


class OddLinear(AngularFactor):
    """The linear form sum_k x_k; odd, harmonic, homogeneous of order one."""

    kind = AngularKind.ODD_LINEAR

    def __init__(self, dimension):
        if dimension < 1:
            raise InvalidDimensionError("the odd linear factor needs d >= 1")
        self.dimension = int(dimension)
        self.homogeneity = 1.0

    def _value(self, X):
        return X.sum(axis=1)

    def _gradient(self, X):
        return np.ones_like(X)

    def _laplacian(self, X, backend="auto"):
        return np.zeros(len(X))


class CustomFactor(AngularFactor):
    """User-supplied angular factor with a declared homogeneity order.

    ``value_fn`` and ``gradient_fn`` should accept (n, d) arrays; plain
    pointwise callables are wrapped row by row.  The Euler relation is
    verified statistically on construction, since everything downstream
    silently relies on it.  If ``laplacian_fn`` is omitted the factor is
    assumed harmonic.
    """

    kind = AngularKind.CUSTOM

    def __init__(
        self,
        dimension,
        homogeneity,
        value_fn,
        gradient_fn,
        laplacian_fn=None,
        check=True,
        check_points=64,
        seed=0,
        tol=1e-6,
    ):
        if dimension < 1:
            raise InvalidDimensionError("custom factors need d >= 1")
        self.dimension = int(dimension)
        self.homogeneity = float(homogeneity)
        self._value_fn = value_fn
        self._gradient_fn = gradient_fn
        self._laplacian_fn = laplacian_fn
        if check:
            self._verify_euler(check_points, seed, tol)

    def _value(self, X):
        v = np.asarray(self._value_fn(X), dtype=float)
        if v.shape != (len(X),):
            v = np.array([float(self._value_fn(row)) for row in X])
        return v

    def _gradient(self, X):
        g = np.asarray(self._gradient_fn(X), dtype=float)
        if g.shape != X.shape:
            g = np.array([np.asarray(self._gradient_fn(row), dtype=float) for row in X])
        return g

    def _laplacian(self, X, backend="auto"):
        if self._laplacian_fn is None:
            return np.zeros(len(X))
        v = np.asarray(self._laplacian_fn(X), dtype=float)
        if v.shape != (len(X),):
            v = np.array([float(self._laplacian_fn(row)) for row in X])
        return v

    def _verify_euler(self, n, seed, tol):
        rng = np.random.default_rng(seed)
        X = rng.standard_normal((n, self.dimension))
        v = self._value(X)
        g = self._gradient(X)
        res = np.abs((X * g).sum(axis=1) - self.homogeneity * v)
        scale = 1.0 + np.abs(v) + np.abs(X * g).sum(axis=1)
        worst = float(np.max(res / scale))
        if worst > tol:
            raise DomainError(
                f"custom factor fails the Euler identity check "
                f"(worst relative residual {worst:.3e} > {tol:.1e}); "
                "the declared homogeneity order is inconsistent"
            )


def constant_factor(dimension):
    """Degree-zero factor F = 1; the 'no symmetry class' angular part."""
    return CustomFactor(
        dimension,
        0.0,
        lambda X: np.ones(len(np.atleast_2d(X))),
        lambda X: np.zeros_like(np.atleast_2d(np.asarray(X, dtype=float))),
        laplacian_fn=lambda X: np.zeros(len(np.atleast_2d(X))),
        check=False,
    )


@lru_cache(maxsize=None)
def vandermonde(dimension):
    return Vandermonde(dimension)


@lru_cache(maxsize=None)
def odd_linear(dimension):
    return OddLinear(dimension)


def vandermonde_value(x):
    """prod_{i<j} (x_j - x_i), computed by the O(d^2) product formula."""
    x = np.asarray(x, dtype=float)
    return vandermonde(x.shape[-1]).value(x)


def vandermonde_gradient(x):
    x = np.asarray(x, dtype=float)
    return vandermonde(x.shape[-1]).gradient(x)


def euler_residual(x, factor=None):
    """sum_i x_i dF/dx_i(x) - lam F(x); zero for exact arithmetic."""
    x = np.asarray(x, dtype=float)
    if factor is None:
        factor = vandermonde(x.shape[-1])
    X, single = _as_batch(x)
    v = factor.value(X)
    g = factor.gradient(X)
    res = (X * g).sum(axis=1) - factor.homogeneity * v
    return float(res[0]) if single else res


def laplacian_residual(x, backend="auto"):
    """Laplacian of the Vandermonde factor; identically zero up to rounding.

    ``backend='expansion'`` forces the exact second-derivative route and
    raises for d > 6; ``'fd'`` uses central second differences with a
    documented 1e-4 tolerance; ``'auto'`` picks exact for d <= 6.
    """
    x = np.asarray(x, dtype=float)
    return vandermonde(x.shape[-1]).laplacian(x, backend=backend)


def schwarz_ratio(x, factor=None):
    """t = (|x| |grad F| / F)**2 for the given factor (Vandermonde default)."""
    x = np.asarray(x, dtype=float)
    if factor is None:
        factor = vandermonde(x.shape[-1])
    return factor.schwarz_ratio(x)


# ---------------------------------------------------------------------------
# Exact rational backend (d <= 4): ground truth for the float tolerances.


def _exact_coords(x):
    coords = [Fraction(v) for v in x]
    d = len(coords)
    if d < 2:
        raise InvalidDimensionError("the Vandermonde factor needs d >= 2")
    if d > MAX_EXACT_DIM:
        raise UnsupportedDimensionError(
            f"the exact backend is offered for d <= {MAX_EXACT_DIM}"
        )
    return coords, d


def vandermonde_value_exact(x):
    coords, d = _exact_coords(x)
    prod = Fraction(1)
    for i in range(d):
        for j in range(i + 1, d):
            prod *= coords[j] - coords[i]
    return prod


def vandermonde_gradient_exact(x):
    coords, d = _exact_coords(x)
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    grad = []
    for k in range(d):
        acc = Fraction(0)
        for j in range(d):
            if j == k:
                continue
            skip = (min(j, k), max(j, k))
            prod = Fraction(1)
            for a, b in pairs:
                if (a, b) == skip:
                    continue
                prod *= coords[b] - coords[a]
            acc += prod if k > j else -prod
        grad.append(acc)
    return grad


def vandermonde_laplacian_exact(x):
    coords, d = _exact_coords(x)
    pairs = [(i, j) for i in range(d) for j in range(i + 1, d)]
    total = Fraction(0)
    for k in range(d):
        for j in range(d):
            if j == k:
                continue
            sj = 1 if k > j else -1
            pj = (min(j, k), max(j, k))
            for l in range(d):
                if l == k or l == j:
                    continue
                sl = 1 if k > l else -1
                pl = (min(l, k), max(l, k))
                prod = Fraction(1)
                for a, b in pairs:
                    if (a, b) == pj or (a, b) == pl:
                        continue
                    prod *= coords[b] - coords[a]
                total += sj * sl * prod
    return total
