"""Closed-form Hardy and Rellich constants with admissibility checks.

A Hardy constant ``C`` bounds the weighted gradient energy from below,

    int |grad u|^p |x|^{-gamma} dx  >=  C  int |u|^p |x|^{-p-gamma} dx,

and a Rellich constant does the same with ``|Delta u|^p`` on the left and
``|x|^{-2p-gamma}`` on the right.  Restricting ``u`` to the antisymmetric
or odd class enlarges the constant; the formulas here evaluate every such
constant in closed form.

Inadmissible parameter combinations do not raise: the algebraic value is
still computed (NaN when it is not real) and flagged ``admissible=False``,
so sweep tools can plot the admissibility boundary.  Hard preconditions
such as ``p >= 2`` for the class-restricted Hardy formulas do raise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidDimensionError, OutOfRangeError

__all__ = [
    "FunctionClass",
    "Functional",
    "Params",
    "ConstantValue",
    "classical_hardy",
    "hardy_antisymmetric",
    "hardy_odd",
    "rellich_mitidieri",
    "rellich_antisymmetric",
    "rellich_odd",
    "reference_constant",
    "asymptotic_checks",
    "AsymptoticsReport",
]


class FunctionClass(Enum):
    GENERAL = "general"
    ANTISYMMETRIC = "antisym"
    ODD = "odd"


class Functional(Enum):
    HARDY = "hardy"
    RELLICH = "rellich"


@dataclass(frozen=True)
class Params:
    """Problem parameters: dimension, exponent, weight power, class."""

    d: int
    p: float
    gamma: float = 0.0
    klass: FunctionClass = FunctionClass.GENERAL

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 1:
            raise InvalidDimensionError("d must be an integer >= 1")
        object.__setattr__(self, "d", int(self.d))
        if self.p < 1.0:
            raise OutOfRangeError("p must be >= 1")
        if self.klass is FunctionClass.ANTISYMMETRIC and self.d < 2:
            raise InvalidDimensionError("the antisymmetric class needs d >= 2")

    @property
    def lam(self):
        """Homogeneity order of the class's angular factor."""
        if self.klass is FunctionClass.ANTISYMMETRIC:
            return self.d * (self.d - 1) / 2.0
        if self.klass is FunctionClass.ODD:
            return 1.0
        return 0.0


@dataclass(frozen=True)
class ConstantValue:
    """A constant together with its admissibility verdict.

    ``condition_residual`` is the quantity whose nonnegativity the Rellich
    formulas require (the numerator before the outer power); it is None
    for the Hardy family.
    """

    value: float
    formula_id: str
    admissible: bool
    condition_residual: float | None = None

    def __float__(self):
        return float(self.value)


def _check_d(d, minimum=1):
    if int(d) != d or d < minimum:
        raise InvalidDimensionError(f"d must be an integer >= {minimum}")


def _real_power(base, p):
    """base**p on the reals: NaN when base < 0 and p is fractional."""
    if base >= 0.0:
        return base**p
    n = round(p)
    if abs(p - n) < 1e-12:
        return float(base ** int(n))
    return float("nan")


def classical_hardy(d, p):
    """(|d - p| / p)**p; vanishes at p = d."""
    _check_d(d)
    if p < 1.0:
        raise OutOfRangeError("the classical constant needs p >= 1")
    value = (abs(d - p) / p) ** p
    return ConstantValue(value, "classical_hardy", True)


def hardy_antisymmetric(d, p, gamma=0.0):
    """Antisymmetric-class Hardy constant.

    C(d, p, gamma) = (2 (p-2+gamma) d (d-1) / p^2
                      + ((d^2 - p - gamma) / p)^2)^(p/2).

    Defined by the certificate method for p >= 2 and d >= 2; the value is
    still computed for d = 1 with admissible=False.
    """
    _check_d(d)
    if p < 2.0:
        raise OutOfRangeError("the certificate method needs p >= 2")
    base = 2.0 * (p - 2.0 + gamma) * d * (d - 1.0) / p**2 + (
        (d * d - p - gamma) / p
    ) ** 2
    value = _real_power(base, p / 2.0)
    admissible = d >= 2 and base >= 0.0
    return ConstantValue(value, "hardy_antisymmetric", admissible)


def hardy_odd(d, p, gamma=0.0):
    """Odd-class Hardy constant.

    D(d, p, gamma) = (4 (p-2+gamma) / p^2
                      + ((d - p - gamma + 2) / p)^2)^(p/2).
    """
    _check_d(d)
    if p < 2.0:
        raise OutOfRangeError("the certificate method needs p >= 2")
    base = 4.0 * (p - 2.0 + gamma) / p**2 + ((d - p - gamma + 2.0) / p) ** 2
    value = _real_power(base, p / 2.0)
    return ConstantValue(value, "hardy_odd", base >= 0.0)


def rellich_mitidieri(d, p, gamma=0.0):
    """Unrestricted weighted Rellich constant.

    ((d - gamma - 2p) ((p-1) d + gamma) / p^2)^p, sharp on the open
    interval -(p-1) d < gamma < d - 2p.  Outside it the algebraic value is
    returned with admissible=False; the residual is the distance to the
    nearer interval endpoint.
    """
    _check_d(d)
    if p <= 1.0:
        raise OutOfRangeError("the Rellich constants need p > 1")
    f1 = d - gamma - 2.0 * p
    f2 = (p - 1.0) * d + gamma
    residual = min(f1, f2)
    value = _real_power(f1 * f2 / p**2, p)
    return ConstantValue(value, "rellich_mitidieri", residual > 0.0, residual)


def rellich_antisymmetric(d, p, gamma=0.0):
    """Antisymmetric-class Rellich constant, (N / p^2)^p with

    N = (gamma + 2p - 2) (2 (p-1) d (d-1) + p (d - gamma - 2p))
        + (p-1) (d^2 - gamma - 2p)^2,

    admissible while N >= 0 (and d >= 2).
    """
    _check_d(d)
    if p <= 1.0:
        raise OutOfRangeError("the Rellich constants need p > 1")
    N = (gamma + 2.0 * p - 2.0) * (
        2.0 * (p - 1.0) * d * (d - 1.0) + p * (d - gamma - 2.0 * p)
    ) + (p - 1.0) * (d * d - gamma - 2.0 * p) ** 2
    value = _real_power(N / p**2, p)
    return ConstantValue(value, "rellich_antisymmetric", d >= 2 and N >= 0.0, N)


def rellich_odd(d, p, gamma=0.0):
    """Odd-class Rellich constant, (N / p^2)^p with

    N = (gamma + 2p - 2) (4 (p-1) + p (d - gamma - 2p))
        + (p-1) (d - gamma - 2p + 2)^2.
    """
    _check_d(d)
    if p <= 1.0:
        raise OutOfRangeError("the Rellich constants need p > 1")
    N = (gamma + 2.0 * p - 2.0) * (
        4.0 * (p - 1.0) + p * (d - gamma - 2.0 * p)
    ) + (p - 1.0) * (d - gamma - 2.0 * p + 2.0) ** 2
    value = _real_power(N / p**2, p)
    return ConstantValue(value, "rellich_odd", N >= 0.0, N)


def reference_constant(params: Params, functional: Functional) -> ConstantValue:
    """The constant a Rayleigh quotient in this class is compared against."""
    d, p, gamma = params.d, params.p, params.gamma
    if functional is Functional.HARDY:
        if params.klass is FunctionClass.ANTISYMMETRIC:
            return hardy_antisymmetric(d, p, gamma)
        if params.klass is FunctionClass.ODD:
            return hardy_odd(d, p, gamma)
        if gamma != 0.0:
            raise OutOfRangeError(
                "the unrestricted Hardy reference is implemented for gamma = 0"
            )
        return classical_hardy(d, p)
    if params.klass is FunctionClass.ANTISYMMETRIC:
        return rellich_antisymmetric(d, p, gamma)
    if params.klass is FunctionClass.ODD:
        return rellich_odd(d, p, gamma)
    return rellich_mitidieri(d, p, gamma)


@dataclass(frozen=True)
class AsymptoticsReport:
    """Limit behavior of the constants; see ``asymptotic_checks``."""

    d: int
    p: float
    limit: float
    p_grid: tuple
    antisym_gaps: tuple
    odd_gaps: tuple
    antisym_gaps_decreasing: bool
    odd_gaps_decreasing: bool
    d_grid: tuple
    antisym_rate_ratios: tuple
    classical_rate_ratios: tuple
    rellich_rate_ratios: tuple


def asymptotic_checks(d, p=2.0, p_grid=(1e2, 1e3, 1e4), d_grid=(10, 100, 1000)):
    """Sanity report for the large-p and large-d behavior.

    For fixed d, both class constants converge to exp(-d) as p grows; for
    fixed p the antisymmetric constant grows like (d^2/p)^p, the classical
    one like (d/p)^p, and the antisymmetric Rellich constant like
    ((p-1) d^4 / p^2)^p.
    """
    _check_d(d)
    limit = math.exp(-d)
    a_gaps = tuple(abs(hardy_antisymmetric(d, q).value - limit) for q in p_grid)
    o_gaps = tuple(abs(hardy_odd(d, q).value - limit) for q in p_grid)
    a_dec = all(x > y for x, y in zip(a_gaps, a_gaps[1:]))
    o_dec = all(x > y for x, y in zip(o_gaps, o_gaps[1:]))
    a_ratio = tuple(
        hardy_antisymmetric(D, p).value / (D * D / p) ** p for D in d_grid
    )
    c_ratio = tuple(classical_hardy(D, p).value / (D / p) ** p for D in d_grid)
    r_ratio = tuple(
        rellich_antisymmetric(D, p).value / ((p - 1.0) * D**4 / p**2) ** p
        for D in d_grid
    )
    return AsymptoticsReport(
        d=d,
        p=p,
        limit=limit,
        p_grid=tuple(p_grid),
        antisym_gaps=a_gaps,
        odd_gaps=o_gaps,
        antisym_gaps_decreasing=a_dec,
        odd_gaps_decreasing=o_dec,
        d_grid=tuple(d_grid),
        antisym_rate_ratios=a_ratio,
        classical_rate_ratios=c_ratio,
        rellich_rate_ratios=r_ratio,
    )
