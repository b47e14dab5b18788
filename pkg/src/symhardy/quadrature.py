"""Integration engines for Hardy and Rellich functionals over R^d.

Two generic engines are exposed through ``QuadratureConfig.method``:

* ``mc``: importance-sampled Monte Carlo.  Directions are uniform on the
  sphere; radii follow a generalized-gamma density r^(k-1) exp(-r^2/2s^2)
  whose shape k is matched to the integrand's behavior near the origin
  (for Gaussian-profile trials the radial part of the weighted mass
  integrand is matched exactly).  Sampling is partitioned into
  independently seeded streams and reduced in a fixed pairwise order, so
  estimates are bit-identical given (seed, samples, n_streams).
* ``product``: a log-radial Gauss-Legendre rule times a tensor angular
  rule on the sphere (d <= 4).  The reported error is the change under
  halving both node counts.

For separable trials u = F psi(|x|) there is additionally an exact
radial-reduction path: the angular moment factors out (and cancels in
quotients), pure-power profile segments integrate in closed form, and
only collar/cutoff segments need one-dimensional quadrature.  This is
the route the sharpness sweeps use, since power-law tails defeat the
gamma importance density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import gammaln

from .constants import (
    ConstantValue,
    FunctionClass,
    Functional,
    Params,
    reference_constant,
)
from .errors import (
    DegenerateSampleError,
    DomainError,
    SymmetryClassError,
    UnsupportedDimensionError,
)
from .polynomials import AngularKind
from .trials import TrialFunction

__all__ = [
    "QuadratureConfig",
    "Estimate",
    "QuotientReport",
    "sphere_area",
    "sphere_grid",
    "mc_integral",
    "product_integral",
    "hardy_numerator",
    "hardy_denominator",
    "rellich_numerator",
    "rellich_denominator",
    "rayleigh_quotient",
    "angular_moment",
    "vandermonde_sphere_moment_p2",
    "separable_hardy_quotient",
    "separable_rellich_quotient",
    "separable_mass",
]

MAX_PRODUCT_DIM = 4
DEGENERATE_FRACTION = 1e-3


@dataclass(frozen=True)
class QuadratureConfig:
    """Engine selection and its reproducibility-relevant knobs."""

    method: str = "mc"  # "mc" or "product"
    samples: int = 200_000
    seed: int = 0
    n_streams: int = 8
    r_min: float = 1e-6
    r_max: float = 40.0
    radial_nodes: int = 200
    angular_nodes: int = 48


@dataclass(frozen=True)
class Estimate:
    """An integral estimate with a one-sigma (or refinement) error bar."""

    value: float
    error: float
    n: int
    degenerate: int = 0
    method: str = "mc"


@dataclass(frozen=True)
class QuotientReport:
    """A Rayleigh quotient against its reference constant.

    ``margin`` is (quotient - constant) in units of the propagated
    combined error; the report only treats the comparison as conclusive
    when |margin| >= 2.
    """

    numerator: Estimate
    denominator: Estimate
    quotient: float
    quotient_error: float
    reference_constant: float
    margin: float
    functional: str
    formula_id: str

    @property
    def conclusive(self):
        return abs(self.margin) >= 2.0

    @property
    def violation(self):
        return self.margin < -2.0


def sphere_area(d):
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def sphere_grid(d, n):
    """Nodes and weights integrating over the unit sphere S^(d-1), d <= 4."""
    if d < 1:
        raise UnsupportedDimensionError("d must be >= 1")
    if d == 1:
        return np.array([[1.0], [-1.0]]), np.array([1.0, 1.0])
    if d == 2:
        theta = 2.0 * math.pi * np.arange(n) / n
        pts = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return pts, np.full(n, 2.0 * math.pi / n)
    if d > MAX_PRODUCT_DIM:
        raise UnsupportedDimensionError(
            f"the tensor sphere rule is offered for d <= {MAX_PRODUCT_DIM}; "
            "use the Monte Carlo engine beyond that"
        )
    grids = []
    for k in range(1, d - 1):
        nodes, wts = np.polynomial.legendre.leggauss(n)
        theta = 0.5 * math.pi * (nodes + 1.0)
        w = 0.5 * math.pi * wts * np.sin(theta) ** (d - 1 - k)
        grids.append((theta, w))
    phi = 2.0 * math.pi * np.arange(n) / n
    grids.append((phi, np.full(n, 2.0 * math.pi / n)))
    mesh = np.meshgrid(*[g[0] for g in grids], indexing="ij")
    wmesh = np.meshgrid(*[g[1] for g in grids], indexing="ij")
    W = np.ones_like(mesh[0])
    for wm in wmesh:
        W = W * wm
    angles = [m.ravel() for m in mesh]
    W = W.ravel()
    pts = np.empty((len(W), d))
    sin_prod = np.ones(len(W))
    for k in range(d - 1):
        pts[:, k] = sin_prod * np.cos(angles[k])
        sin_prod = sin_prod * np.sin(angles[k])
    pts[:, d - 1] = sin_prod
    return pts, W


def _chunk_sizes(total, parts):
    base = total // parts
    sizes = [base] * parts
    for i in range(total - base * parts):
        sizes[i] += 1
    return [s for s in sizes if s > 0]


def _tree_reduce(stats):
    # Fixed pairwise reduction keeps the estimate independent of how the
    # streams would be scheduled concurrently.
    stats = list(stats)
    while len(stats) > 1:
        nxt = []
        for i in range(0, len(stats) - 1, 2):
            a, b = stats[i], stats[i + 1]
            nxt.append(tuple(x + y for x, y in zip(a, b)))
        if len(stats) % 2:
            nxt.append(stats[-1])
        stats = nxt
    return stats[0]


def mc_integral(fn, d, config: QuadratureConfig, radial_shape, radial_scale):
    """Importance-sampled estimate of the integral of fn over R^d.

    ``radial_shape`` (k) and ``radial_scale`` (s) define the radial
    proposal density r^(k-1) exp(-r^2 / (2 s^2)).  Non-finite integrand
    samples are zeroed and counted; more than 0.1 percent of them aborts.
    """
    if radial_shape <= 0.0:
        raise DomainError(
            "non-positive radial shape: the integrand is not integrable "
            "near the origin for these parameters"
        )
    k, s = float(radial_shape), float(radial_scale)
    area = sphere_area(d)
    log_norm = (k / 2.0 - 1.0) * math.log(2.0) + gammaln(k / 2.0) + k * math.log(s)
    children = np.random.SeedSequence(config.seed).spawn(config.n_streams)
    sizes = _chunk_sizes(config.samples, config.n_streams)
    stats = []
    for child, m in zip(children, sizes):
        rng = np.random.default_rng(child)
        z = rng.standard_normal((m, d))
        norms = np.linalg.norm(z, axis=1)
        norms[norms == 0.0] = 1.0
        r = s * np.sqrt(rng.gamma(k / 2.0, 2.0, size=m))
        X = z * (r / norms)[:, None]
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            vals = np.asarray(fn(X), dtype=float)
            logw = (d - k) * np.log(r) + r * r / (2.0 * s * s) + log_norm
            w = np.where(vals == 0.0, 0.0, area * np.exp(logw) * vals)
        w[(r < config.r_min) | (r > config.r_max)] = 0.0
        bad = ~np.isfinite(w)
        degen = int(bad.sum())
        w[bad] = 0.0
        stats.append((m, float(w.sum()), float((w * w).sum()), degen))
    n, s1, s2, degen = _tree_reduce(stats)
    if degen > DEGENERATE_FRACTION * n:
        raise DegenerateSampleError(
            f"{degen} of {n} integrand samples were non-finite"
        )
    mean = s1 / n
    var = max(s2 / n - mean * mean, 0.0)
    return Estimate(mean, math.sqrt(var / n), n, degen, "mc")


def _product_pass(fn, d, config, nr, na, r_min=None):
    r_lo = max(r_min if r_min is not None else config.r_min, 1e-12)
    r_hi = config.r_max
    if not (0.0 < r_lo < r_hi < math.inf):
        raise DomainError("the product rule needs finite radial cutoffs")
    nodes, wts = np.polynomial.legendre.leggauss(nr)
    s_lo, s_hi = math.log(r_lo), math.log(r_hi)
    svals = 0.5 * (s_hi + s_lo) + 0.5 * (s_hi - s_lo) * nodes
    swts = 0.5 * (s_hi - s_lo) * wts
    r = np.exp(svals)
    pts, aw = sphere_grid(d, na)
    total = 0.0
    degen = 0
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for ri, wi in zip(r, swts):
            vals = np.asarray(fn(ri * pts), dtype=float)
            bad = ~np.isfinite(vals)
            degen += int(bad.sum())
            vals = np.where(bad, 0.0, vals)
            total += wi * ri**d * float(aw @ vals)
    return total, degen, len(r) * len(aw)


def product_integral(fn, d, config: QuadratureConfig):
    """Log-radial Gauss-Legendre times tensor sphere rule.

    The error estimate combines two Richardson-style deltas, one against
    half the node counts and one against half the inner cutoff, kept
    separate so they cannot cancel; halving r_min therefore always moves
    the estimate by less than one error bar.
    """
    fine, degen, n = _product_pass(
        fn, d, config, config.radial_nodes, config.angular_nodes
    )
    coarse_nodes, _, _ = _product_pass(
        fn, d, config, max(config.radial_nodes // 2, 8),
        max(config.angular_nodes // 2, 4),
    )
    coarse_rmin, _, _ = _product_pass(
        fn, d, config, config.radial_nodes, config.angular_nodes,
        r_min=config.r_min / 2.0,
    )
    if degen > DEGENERATE_FRACTION * n:
        raise DegenerateSampleError(f"{degen} of {n} quadrature nodes non-finite")
    err = (
        2.0 * (abs(fine - coarse_nodes) + abs(fine - coarse_rmin))
        + 1e-15 * abs(fine)
    )
    return Estimate(fine, err, n, degen, "product")


# ---------------------------------------------------------------------------
# Weighted functional integrands.


def _origin_shift(u: TrialFunction):
    if u.radial.kind == "piecewise_power":
        return -u.radial.meta["alpha_in"]
    return 0.0


def _radial_scale(u: TrialFunction, p):
    sigma = u.radial.sigma if u.radial.sigma is not None else 1.0
    return sigma / math.sqrt(p)


def _weight(X, exponent):
    if exponent == 0.0:
        return 1.0
    r2 = (X * X).sum(axis=1)
    return r2 ** (-exponent / 2.0)


def hardy_numerator(u: TrialFunction, params: Params, config: QuadratureConfig):
    """Estimate of the integral of |grad u|^p |x|^(-gamma)."""
    p, gamma = params.p, params.gamma

    def fn(X):
        return u.grad_norm_sq(X) ** (p / 2.0) * _weight(X, gamma)

    if config.method == "product":
        return product_integral(fn, params.d, config)
    lam = u.angular.homogeneity + _origin_shift(u)
    grad_exp = lam - 1.0 if lam > 0.0 else 1.0
    k = p * grad_exp + params.d - gamma
    return mc_integral(fn, params.d, config, k, _radial_scale(u, p))


def hardy_denominator(u: TrialFunction, params: Params, config: QuadratureConfig):
    """Estimate of the integral of |u|^p |x|^(-p-gamma)."""
    p, gamma = params.p, params.gamma

    def fn(X):
        return np.abs(u.value(X)) ** p * _weight(X, p + gamma)

    if config.method == "product":
        return product_integral(fn, params.d, config)
    lam = u.angular.homogeneity + _origin_shift(u)
    k = p * lam + params.d - p - gamma
    return mc_integral(fn, params.d, config, k, _radial_scale(u, p))


def rellich_numerator(u: TrialFunction, params: Params, config: QuadratureConfig):
    """Estimate of the integral of |Delta u|^p |x|^(-gamma)."""
    p, gamma = params.p, params.gamma

    def fn(X):
        return np.abs(u.laplacian(X)) ** p * _weight(X, gamma)

    if config.method == "product":
        return product_integral(fn, params.d, config)
    lam = u.angular.homogeneity + _origin_shift(u)
    k = p * lam + params.d - gamma
    return mc_integral(fn, params.d, config, k, _radial_scale(u, p))


def rellich_denominator(u: TrialFunction, params: Params, config: QuadratureConfig):
    """Estimate of the integral of |u|^p |x|^(-2p-gamma)."""
    p, gamma = params.p, params.gamma

    def fn(X):
        return np.abs(u.value(X)) ** p * _weight(X, 2.0 * p + gamma)

    if config.method == "product":
        return product_integral(fn, params.d, config)
    lam = u.angular.homogeneity + _origin_shift(u)
    k = p * lam + params.d - 2.0 * p - gamma
    return mc_integral(fn, params.d, config, k, _radial_scale(u, p))


def _verify_class(u: TrialFunction, params: Params, seed):
    if u.class_tag is not params.klass:
        raise SymmetryClassError(
            f"trial is tagged {u.class_tag.value}, params declare "
            f"{params.klass.value}"
        )
    if params.klass is FunctionClass.GENERAL:
        return
    rng = np.random.default_rng(np.random.SeedSequence((seed, 0x5EED)))
    residual = u.class_residual(100, rng=rng)
    if residual > 1e-10:
        raise SymmetryClassError(
            f"symmetrizer residual {residual:.3e} exceeds 1e-10; the trial "
            "does not belong to its declared class"
        )


def _build_report(num: Estimate, den: Estimate, ref: ConstantValue, functional):
    if den.value <= 0.0:
        raise DomainError("denominator estimate is not positive")
    quotient = num.value / den.value
    rel = math.hypot(
        num.error / num.value if num.value else 0.0,
        den.error / den.value,
    )
    q_err = abs(quotient) * rel
    margin = (quotient - ref.value) / q_err if q_err > 0.0 else math.inf
    return QuotientReport(
        numerator=num,
        denominator=den,
        quotient=quotient,
        quotient_error=q_err,
        reference_constant=ref.value,
        margin=margin,
        functional=functional.value,
        formula_id=ref.formula_id,
    )


def rayleigh_quotient(
    u: TrialFunction,
    functional: Functional,
    params: Params,
    config: QuadratureConfig,
):
    """Quotient of the weighted energy by the weighted mass, with margin.

    The trial's symmetry class is verified against the declared params
    (projector residual below 1e-10 at 100 seeded points) before any
    integration happens; inadmissible reference constants refuse with
    their condition residual.
    """
    _verify_class(u, params, config.seed)
    ref = reference_constant(params, functional)
    if not ref.admissible:
        raise DomainError(
            f"reference constant {ref.formula_id} is inadmissible for "
            f"(d={params.d}, p={params.p}, gamma={params.gamma}); "
            f"condition residual {ref.condition_residual}"
        )
    if functional is Functional.HARDY:
        num = hardy_numerator(u, params, config)
        den = hardy_denominator(u, params, config)
    else:
        num = rellich_numerator(u, params, config)
        den = rellich_denominator(u, params, config)
    return _build_report(num, den, ref, functional)


# ---------------------------------------------------------------------------
# Separable (radial-reduction) path.


def vandermonde_sphere_moment_p2(d):
    """Closed form of the squared Vandermonde moment over the sphere.

    Follows from the classical Gaussian ensemble normalization
    integral of prod |x_i - x_j|^2 exp(-|x|^2/2) = (2 pi)^(d/2) prod_j j!.
    """
    lam = d * (d - 1) / 2.0
    log_sf = sum(math.lgamma(j + 1) for j in range(1, d + 1))
    log_m = (
        (d / 2.0) * math.log(2.0 * math.pi)
        + log_sf
        - (lam + d / 2.0 - 1.0) * math.log(2.0)
        - math.lgamma(lam + d / 2.0)
    )
    return math.exp(log_m)


def angular_moment(factor, p, nodes=96, seed=0, mc_samples=200_000):
    """Estimate of the sphere integral of |F|^p."""
    d = factor.dimension
    if d <= MAX_PRODUCT_DIM:
        pts, w = sphere_grid(factor.dimension, nodes)
        fine = float(w @ np.abs(factor.value(pts)) ** p)
        pts_c, w_c = sphere_grid(factor.dimension, max(nodes // 2, 4))
        coarse = float(w_c @ np.abs(factor.value(pts_c)) ** p)
        return Estimate(fine, abs(fine - coarse) + 1e-15 * abs(fine),
                        len(w), 0, "product")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((mc_samples, d))
    z /= np.linalg.norm(z, axis=1)[:, None]
    vals = np.abs(factor.value(z)) ** p * sphere_area(d)
    return Estimate(
        float(vals.mean()),
        float(vals.std(ddof=1) / math.sqrt(mc_samples)),
        mc_samples,
        0,
        "mc",
    )


def _power_primitive(lo, hi, q):
    if lo < 0.0:
        raise DomainError("radial bounds must be nonnegative")
    if hi == math.inf:
        if q >= -1.0:
            raise DomainError("divergent tail integral")
        return -(lo ** (q + 1.0)) / (q + 1.0)
    if lo == 0.0 and q <= -1.0:
        raise DomainError("divergent integral at the origin")
    if q == -1.0:
        return math.log(hi / lo)
    return (hi ** (q + 1.0) - lo ** (q + 1.0)) / (q + 1.0)


def _quad(fn, lo, hi):
    val, err = quad(fn, lo, hi, limit=200)
    return val, err


def radial_mass(profile, m, p):
    """(value, error) of the integral of r^m psi(r)^p over (0, inf)."""
    if profile.segments is None:
        return _quad(lambda r: r**m * float(profile.psi(r)) ** p, 0.0, math.inf)
    total, err = 0.0, 0.0
    for seg in profile.segments:
        if seg[0] == "zero":
            continue
        if seg[0] == "power":
            _, lo, hi, rho = seg
            total += _power_primitive(lo, hi, m - p * rho)
        else:
            _, lo, hi = seg
            v, e = _quad(lambda r: r**m * float(profile.psi(r)) ** p, lo, hi)
            total += v
            err += e
    return total, err


def radial_second_order(profile, m, p, c):
    """(value, error) of the integral of r^m |psi'' + c psi'/r|^p."""

    def local(r):
        return float(profile.d2psi(r)) + c * float(profile.dpsi(r)) / r

    if profile.segments is None:
        return _quad(lambda r: r**m * abs(local(r)) ** p, 0.0, math.inf)
    total, err = 0.0, 0.0
    for seg in profile.segments:
        if seg[0] == "zero":
            continue
        if seg[0] == "power":
            _, lo, hi, rho = seg
            coef = abs(rho * (rho + 1.0 - c)) ** p
            total += coef * _power_primitive(lo, hi, m - p * (rho + 2.0))
        else:
            _, lo, hi = seg
            v, e = _quad(lambda r: r**m * abs(local(r)) ** p, lo, hi)
            total += v
            err += e
    return total, err


def radial_hardy_forms(profile, q0):
    """I1 = int r^q0 psi^2, I2 = int r^(q0+1) psi psi', I3 = int r^(q0+2) psi'^2."""
    if profile.segments is None:
        i1 = _quad(lambda r: r**q0 * float(profile.psi(r)) ** 2, 0.0, math.inf)
        i2 = _quad(
            lambda r: r ** (q0 + 1.0) * float(profile.psi(r)) * float(profile.dpsi(r)),
            0.0,
            math.inf,
        )
        i3 = _quad(
            lambda r: r ** (q0 + 2.0) * float(profile.dpsi(r)) ** 2, 0.0, math.inf
        )
        return (i1[0], i2[0], i3[0]), i1[1] + i2[1] + i3[1]
    I = [0.0, 0.0, 0.0]
    err = 0.0
    for seg in profile.segments:
        if seg[0] == "zero":
            continue
        if seg[0] == "power":
            _, lo, hi, rho = seg
            base = _power_primitive(lo, hi, q0 - 2.0 * rho)
            I[0] += base
            I[1] += -rho * base
            I[2] += rho * rho * base
        else:
            _, lo, hi = seg
            v1, e1 = _quad(lambda r: r**q0 * float(profile.psi(r)) ** 2, lo, hi)
            v2, e2 = _quad(
                lambda r: r ** (q0 + 1.0)
                * float(profile.psi(r))
                * float(profile.dpsi(r)),
                lo,
                hi,
            )
            v3, e3 = _quad(
                lambda r: r ** (q0 + 2.0) * float(profile.dpsi(r)) ** 2, lo, hi
            )
            I[0] += v1
            I[1] += v2
            I[2] += v3
            err += e1 + e2 + e3
    return tuple(I), err


def separable_mass(u: TrialFunction, params: Params, weight_exponent):
    """Factorized weighted mass: angular moment times a radial integral.

    ``weight_exponent`` is the power of |x| dividing |u|^p (p + gamma for
    the Hardy denominator, 2p + gamma for the Rellich one).
    """
    p, d = params.p, params.d
    lam = u.angular.homogeneity
    mom = angular_moment(u.angular, p)
    m = p * lam + d - 1.0 - weight_exponent
    rad, rad_err = radial_mass(u.radial, m, p)
    value = mom.value * rad
    err = abs(rad) * mom.error + mom.value * rad_err
    return Estimate(value, err, mom.n, 0, "separable")


def separable_hardy_quotient(u: TrialFunction, params: Params):
    """Exact radial reduction of the Hardy quotient for p = 2.

    For u = F psi with F a degree-lam spherical harmonic, the sphere
    moment of |grad F|^2 equals lam (2 lam + d - 2) times that of F^2, so
    the quotient reduces to one-dimensional integrals of the profile.
    """
    p, d, gamma = params.p, params.d, params.gamma
    if abs(p - 2.0) > 1e-12:
        raise DomainError("the radial reduction of the gradient needs p = 2")
    if u.angular.kind not in (AngularKind.VANDERMONDE, AngularKind.ODD_LINEAR):
        raise DomainError("the reduction needs a harmonic built-in factor")
    lam = u.angular.homogeneity
    q0 = 2.0 * lam + d - 3.0 - gamma
    (i1, i2, i3), err = radial_hardy_forms(u.radial, q0)
    if i1 <= 0.0:
        raise DomainError("degenerate radial mass")
    g2_over_m2 = lam * (2.0 * lam + d - 2.0)
    quotient = g2_over_m2 + (2.0 * lam * i2 + i3) / i1
    mom = angular_moment(u.angular, 2.0)
    num_rad = g2_over_m2 * i1 + 2.0 * lam * i2 + i3
    num = Estimate(mom.value * num_rad, mom.error * abs(num_rad) + err, mom.n,
                   0, "separable")
    den = Estimate(mom.value * i1, mom.error * abs(i1) + err, mom.n, 0,
                   "separable")
    ref = reference_constant(params, Functional.HARDY)
    rel_err = err * (1.0 + abs(quotient)) / i1
    q_err = max(rel_err, 1e-14 * abs(quotient))
    margin = (quotient - ref.value) / q_err if q_err > 0.0 else math.inf
    return QuotientReport(
        numerator=num,
        denominator=den,
        quotient=quotient,
        quotient_error=q_err,
        reference_constant=ref.value,
        margin=margin,
        functional=Functional.HARDY.value,
        formula_id=ref.formula_id,
    )


def separable_rellich_quotient(u: TrialFunction, params: Params):
    """Radial reduction of the Rellich quotient (any p >= 1).

    Delta(F psi) = F (psi'' + (d - 1 + 2 lam) psi'/r) for harmonic
    homogeneous F, so numerator and denominator share the angular moment
    and the quotient is a ratio of radial integrals.
    """
    p, d, gamma = params.p, params.d, params.gamma
    if u.angular.kind not in (AngularKind.VANDERMONDE, AngularKind.ODD_LINEAR):
        raise DomainError("the reduction needs a harmonic built-in factor")
    lam = u.angular.homogeneity
    c = d - 1.0 + 2.0 * lam
    m_num = p * lam + d - 1.0 - gamma
    m_den = p * lam + d - 1.0 - 2.0 * p - gamma
    num_rad, num_err = radial_second_order(u.radial, m_num, p, c)
    den_rad, den_err = radial_mass(u.radial, m_den, p)
    if den_rad <= 0.0:
        raise DomainError("degenerate radial mass")
    quotient = num_rad / den_rad
    mom = angular_moment(u.angular, p)
    num = Estimate(mom.value * num_rad, mom.error * abs(num_rad)
                   + mom.value * num_err, mom.n, 0, "separable")
    den = Estimate(mom.value * den_rad, mom.error * abs(den_rad)
                   + mom.value * den_err, mom.n, 0, "separable")
    ref = reference_constant(params, Functional.RELLICH)
    rel = num_err / num_rad + den_err / den_rad
    q_err = max(abs(quotient) * rel, 1e-14 * abs(quotient))
    margin = (quotient - ref.value) / q_err if q_err > 0.0 else math.inf
    return QuotientReport(
        numerator=num,
        denominator=den,
        quotient=quotient,
        quotient_error=q_err,
        reference_constant=ref.value,
        margin=margin,
        functional=Functional.RELLICH.value,
        formula_id=ref.formula_id,
    )
