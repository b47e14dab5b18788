"""Certificate optimization: max over (alpha, beta) of min over t of f.

The scalar certificate function

    f(t; alpha, beta) = alpha (d - p - gamma) + beta (p - 2 + gamma) lam
                        + beta t
                        - (p - 1) (alpha^2 - 2 alpha beta lam
                                   + beta^2 t)^(p / (2 (p - 1)))

bounds the pointwise divergence expression of the certificate vector
field, with t the Schwarz ratio of the angular factor (t >= lam^2).  For
p > 2 the inner minimum over t has the closed form t0 and the outer
maximum has closed-form coordinates (alpha0, beta0); this module exposes
both and a derivative-free multistart search that must land on the same
value.  For p = 2 the map t -> f is linear, so the inner minimum sits at
t = lam^2 whenever the t-coefficient beta (1 - beta) is nonnegative, and
the closed-form optimum extends by continuity (beta0 = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .constants import FunctionClass, Params, hardy_antisymmetric, hardy_odd
from .errors import DomainError, OutOfRangeError, SymHardyError

__all__ = [
    "CertificateParams",
    "MinimaxResult",
    "SearchConfig",
    "f_certificate",
    "t_minimizer",
    "min_over_t",
    "closed_form_optimum",
    "closed_form_value",
    "g_envelope",
    "numeric_minimax",
    "class_constant",
]

_P2_TOL = 1e-12


@dataclass(frozen=True)
class CertificateParams:
    """A candidate (alpha, beta) pair together with the problem data."""

    alpha: float
    beta: float
    lam: float
    d: int
    p: float
    gamma: float = 0.0

    @property
    def albe_residual(self):
        """Slack of |alpha - lam beta| <= (p beta / 2)^((p-1)/(p-2)).

        Nonnegative exactly when the inner minimizer t0 lies in the
        admissible region t >= lam^2.  Infinite for p = 2, where the
        linear branch replaces the t0 formula.
        """
        if abs(self.p - 2.0) < _P2_TOL:
            return math.inf
        rhs = (self.p * self.beta / 2.0) ** ((self.p - 1.0) / (self.p - 2.0))
        return rhs - abs(self.alpha - self.lam * self.beta)

    @property
    def feasible(self):
        if abs(self.p - 2.0) < _P2_TOL:
            return True
        scale = 1.0 + abs(self.alpha) + self.beta
        return self.albe_residual >= -1e-12 * scale


@dataclass(frozen=True)
class MinimaxResult:
    alpha_star: float
    beta_star: float
    t_star: float
    value_numeric: float
    value_closed_form: float
    gap: float
    converged: bool
    n_starts: int = 0
    hessian_eigs: tuple | None = None


@dataclass(frozen=True)
class SearchConfig:
    n_starts: int = 16
    box_factor: float = 3.0
    xatol: float = 1e-11
    fatol: float = 1e-13
    maxiter: int = 4000


def class_constant(params: Params) -> float:
    """Closed-form Hardy constant of the params' symmetry class."""
    if params.klass is FunctionClass.ANTISYMMETRIC:
        return hardy_antisymmetric(params.d, params.p, params.gamma).value
    if params.klass is FunctionClass.ODD:
        return hardy_odd(params.d, params.p, params.gamma).value
    raise OutOfRangeError(
        "the minimax certificate needs the antisymmetric or odd class"
    )


def f_certificate(t, alpha, beta, params: Params):
    """Evaluate f(t; alpha, beta) for the given (d, p, gamma, class)."""
    p, d, gamma, lam = params.p, params.d, params.gamma, params.lam
    if p < 2.0:
        raise OutOfRangeError("the certificate function needs p >= 2")
    if t < 0.0:
        raise DomainError("t must be nonnegative")
    if beta < 0.0:
        raise DomainError("beta must be nonnegative")
    rad = alpha * alpha - 2.0 * alpha * beta * lam + beta * beta * t
    if rad < 0.0:
        raise DomainError(
            "negative radicand: (alpha, beta, t) is outside the "
            "geometrically realizable set"
        )
    return (
        alpha * (d - p - gamma)
        + beta * (p - 2.0 + gamma) * lam
        + beta * t
        - (p - 1.0) * rad ** (p / (2.0 * (p - 1.0)))
    )


def t_minimizer(alpha, beta, params: Params, clamp=True):
    """Closed-form minimizer of t -> f(t; alpha, beta) for p > 2.

    t0 = ((p beta / 2)^(2(p-1)/(p-2)) - alpha^2 + 2 alpha beta lam) / beta^2;
    with ``clamp`` the result is projected onto the admissible t >= lam^2.
    """
    p, lam = params.p, params.lam
    if abs(p - 2.0) < _P2_TOL or p < 2.0:
        raise DomainError(
            "t0 is defined for p > 2 only; for p = 2 the map is linear in t, "
            "use min_over_t"
        )
    if beta <= 0.0:
        raise DomainError("t0 needs beta > 0")
    t0 = (
        (p * beta / 2.0) ** (2.0 * (p - 1.0) / (p - 2.0))
        - alpha * alpha
        + 2.0 * alpha * beta * lam
    ) / (beta * beta)
    if not clamp:
        return t0
    return max(t0, lam * lam)


def min_over_t(alpha, beta, params: Params):
    """(t_star, min value) of f over t >= lam^2; -inf when unbounded below."""
    p, lam = params.p, params.lam
    lam2 = lam * lam
    if beta < 0.0:
        return math.nan, -math.inf
    if abs(p - 2.0) < _P2_TOL:
        # Linear branch: f = const + beta (1 - beta) t.
        if beta > 1.0:
            return math.inf, -math.inf
        return lam2, f_certificate(lam2, alpha, beta, params)
    if beta == 0.0:
        value = alpha * (params.d - p - params.gamma) - (p - 1.0) * abs(alpha) ** (
            p / (p - 1.0)
        )
        return lam2, value
    t_star = t_minimizer(alpha, beta, params, clamp=True)
    return t_star, f_certificate(t_star, alpha, beta, params)


def closed_form_optimum(params: Params) -> CertificateParams:
    """The maximizing (alpha0, beta0) of the certificate value.

    alpha0 = A K and beta0 = K with A = (d - p - gamma + 2 lam) / 2 and
    K = ((p - 2 + gamma) lam + A^2)^((p-2)/2) (2/p)^(p-1).  Feasibility
    holds through the identity |alpha0 - lam beta0| = |d - p - gamma|/2 beta0,
    which is asserted here.
    """
    p, d, gamma, lam = params.p, params.d, params.gamma, params.lam
    if p < 2.0:
        raise OutOfRangeError("the certificate optimum needs p >= 2")
    A = (d - p - gamma + 2.0 * lam) / 2.0
    bracket = (p - 2.0 + gamma) * lam + A * A
    if bracket < 0.0:
        raise DomainError("the certificate bracket is negative for these params")
    K = bracket ** ((p - 2.0) / 2.0) * (2.0 / p) ** (p - 1.0)
    cert = CertificateParams(alpha=A * K, beta=K, lam=lam, d=d, p=p, gamma=gamma)
    ident = abs(d - p - gamma) * cert.beta / 2.0
    if abs(abs(cert.alpha - lam * cert.beta) - ident) > 1e-9 * (1.0 + ident):
        raise SymHardyError("optimum identity |alpha0 - lam beta0| broke down")
    if not cert.feasible:
        raise SymHardyError("closed-form optimum violates the feasibility band")
    return cert


def closed_form_value(params: Params) -> float:
    """The certificate maximum (2/p)^p ((p-2+gamma) lam + A^2)^(p/2)."""
    p, d, gamma, lam = params.p, params.d, params.gamma, params.lam
    if p < 2.0:
        raise OutOfRangeError("the certificate optimum needs p >= 2")
    A = (d - p - gamma + 2.0 * lam) / 2.0
    bracket = (p - 2.0 + gamma) * lam + A * A
    return (2.0 / p) ** p * bracket ** (p / 2.0)


def g_envelope(alpha, beta, params: Params):
    """f evaluated at the unclamped t0, in the explicit envelope form.

    Valid for p > 2, beta > 0 and feasible (alpha, beta); this is an
    independent expression used to cross-check min_over_t.
    """
    p, d, gamma, lam = params.p, params.d, params.gamma, params.lam
    if p <= 2.0:
        raise DomainError("the envelope form needs p > 2")
    if beta <= 0.0:
        raise DomainError("the envelope form needs beta > 0")
    return (
        alpha * (d - p - gamma)
        + beta * (p - 2.0 + gamma) * lam
        + 2.0 * alpha * lam
        - alpha * alpha / beta
        - beta ** (p / (p - 2.0)) * (p / 2.0) ** (p / (p - 2.0)) * (p / 2.0 - 1.0)
    )


def _fd_hessian_eigs(fun, x, h=1e-5):
    x = np.asarray(x, dtype=float)
    n = len(x)
    H = np.zeros((n, n))
    for i in range(n):
        for j in range(i, n):
            hi = h * max(1.0, abs(x[i]))
            hj = h * max(1.0, abs(x[j]))
            if i == j:
                H[i, i] = (
                    fun(x + hi * _e(n, i)) - 2.0 * fun(x) + fun(x - hi * _e(n, i))
                ) / hi**2
            else:
                pp = fun(x + hi * _e(n, i) + hj * _e(n, j))
                pm = fun(x + hi * _e(n, i) - hj * _e(n, j))
                mp = fun(x - hi * _e(n, i) + hj * _e(n, j))
                mm = fun(x - hi * _e(n, i) - hj * _e(n, j))
                H[i, j] = H[j, i] = (pp - pm - mp + mm) / (4.0 * hi * hj)
    return tuple(np.linalg.eigvalsh(H))


def _e(n, i):
    v = np.zeros(n)
    v[i] = 1.0
    return v


def numeric_minimax(params: Params, config: SearchConfig | None = None):
    """Reproduce the closed-form constant by direct optimization.

    p > 2: inner minimization is analytic (convexity in t), the outer
    maximization runs a multistart Nelder-Mead search on a box covering
    three times the closed-form optimum.  p = 2: the linear t-branch is
    evaluated directly at the continuity limit of the optimum.
    """
    config = config or SearchConfig()
    opt = closed_form_optimum(params)
    target = class_constant(params)

    if abs(params.p - 2.0) < _P2_TOL:
        t_star, value = min_over_t(opt.alpha, opt.beta, params)
        return MinimaxResult(
            alpha_star=opt.alpha,
            beta_star=opt.beta,
            t_star=t_star,
            value_numeric=value,
            value_closed_form=target,
            gap=abs(value - target),
            converged=True,
        )

    alpha_box = config.box_factor * max(abs(opt.alpha), opt.lam * opt.beta, 1.0)
    beta_box = config.box_factor * max(opt.beta, 1.0)

    def objective(v):
        a, b = v
        if b <= 0.0 or b > beta_box or abs(a) > alpha_box:
            return 1e300
        value = min_over_t(a, b, params)[1]
        if not math.isfinite(value):
            return 1e300
        return -value

    n_beta = max(config.n_starts // 2, 1)
    betas = opt.beta * np.logspace(math.log10(0.25), math.log10(4.0), n_beta)
    spread = 0.5 * max(abs(opt.alpha), opt.beta * opt.lam, 1.0)
    starts = []
    for b in betas:
        starts.append((opt.alpha - spread, b))
        starts.append((opt.alpha + spread, b))
    starts = starts[: config.n_starts]

    best = None
    any_success = False
    for x0 in starts:
        res = minimize(
            objective,
            np.asarray(x0, dtype=float),
            method="Nelder-Mead",
            options={
                "xatol": config.xatol,
                "fatol": config.fatol,
                "maxiter": config.maxiter,
                "maxfev": config.maxiter,
            },
        )
        any_success = any_success or bool(res.success)
        if best is None or res.fun < best.fun:
            best = res
    # Polish from the winner; ties between starts break toward smaller gap.
    res = minimize(
        objective,
        best.x,
        method="Nelder-Mead",
        options={
            "xatol": config.xatol,
            "fatol": config.fatol,
            "maxiter": config.maxiter,
            "maxfev": config.maxiter,
        },
    )
    if res.fun <= best.fun:
        best = res
        any_success = any_success or bool(res.success)

    alpha_star, beta_star = map(float, best.x)
    t_star, value = min_over_t(alpha_star, beta_star, params)
    gap = abs(value - target)
    eigs = None
    if beta_star > 0.0:
        try:
            eigs = _fd_hessian_eigs(
                lambda v: min_over_t(v[0], v[1], params)[1],
                (alpha_star, beta_star),
            )
        except (DomainError, FloatingPointError):
            eigs = None
    return MinimaxResult(
        alpha_star=alpha_star,
        beta_star=beta_star,
        t_star=t_star,
        value_numeric=value,
        value_closed_form=target,
        gap=gap,
        converged=any_success,
        n_starts=len(starts),
        hessian_eigs=eigs,
    )
