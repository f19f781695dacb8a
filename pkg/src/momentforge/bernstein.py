"""Bernstein-function catalog and the product-moment machinery built on it.

Each catalog entry carries its closed form, an analytic derivative, the
triple (a, b, levy) of its integral representation, and, where available,
the analytic measure kappa with f'/f as Laplace transform.  From kappa the
module derives the measure sigma on (0, 1), the log-moment representation
log s_n = n log f(alpha) + integral of (x^n - 1 - n(x-1)) d sigma, and the
exponent psi with psi(n) = -log s_n.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, PreconditionError, UnsupportedError
from .measures import (AtomicMeasure, DensityMeasure, MomentSequence,
                       moment)
from .quadrature import integrate, integrate_exp_decay


@dataclass(frozen=True)
class BernsteinFunction:
    """A Bernstein function f(s) = a + b s + integral (1 - e^{-sx}) d nu."""

    catalog_id: str
    a: float
    b: float
    levy: Optional[object]  # AtomicMeasure | DensityMeasure | None
    closed_form: Callable
    deriv: Callable
    kappa_factory: Optional[Callable] = None  # tol -> measure
    params: tuple = ()

    def __call__(self, s):
        return self.closed_form(s)


@dataclass(frozen=True)
class LevyKhinchinRep:
    """Symbols (a, b, sigma) of the log-moment representation
    log s_n = a n + b n^2 + integral (x^n - 1 - n(x-1)) d sigma."""

    a: float
    b: float
    sigma: Optional[object]  # AtomicMeasure | DensityMeasure | None


# ---------------------------------------------------------------------------
# catalog constructors

def _self_test(f, tol=1e-7):
    # closed form must match a + b s + integral (1 - e^{-sx}) d nu,
    # and f must be nonnegative nondecreasing on a spot-check grid
    if f.levy is not None:
        for s in (0.1, 1.0, 10.0):
            if isinstance(f.levy, AtomicMeasure):
                integral = sum(wt * -math.expm1(-s * loc)
                               for loc, wt in f.levy.atoms)
                integral_err = f.levy.truncation_error
            else:
                integral, integral_err = integrate_exp_decay(
                    lambda x, s=s: -np.expm1(-s * x) * f.levy.density(x),
                    tol=1e-11)
            rep = f.a + f.b * s + integral
            if abs(rep - f(s)) > tol * max(1.0, abs(f(s))) + 10 * integral_err:
                raise PreconditionError(
                    "%s: integral representation mismatch at s=%g "
                    "(%.12g vs %.12g)" % (f.catalog_id, s, rep, f(s)))
    grid = [0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0]
    values = [f(s) for s in grid]
    if any(v < 0 for v in values):
        raise PreconditionError("%s: negative value on grid" % f.catalog_id)
    if any(v2 < v1 - 1e-12 for v1, v2 in zip(values, values[1:])):
        raise PreconditionError("%s: not nondecreasing on grid" % f.catalog_id)
    return f


def affine(a):
    """f(s) = a + s with a > 0; kappa has density e^{-a x}."""
    if a <= 0:
        raise DomainError("affine catalog entry needs a > 0 (use linear())")
    return _self_test(BernsteinFunction(
        catalog_id="affine:%g" % a, a=float(a), b=1.0, levy=None,
        closed_form=lambda s: a + s, deriv=lambda s: 1.0,
        kappa_factory=lambda tol=0.0: DensityMeasure(
            lambda x: np.exp(-a * x), (0.0, math.inf), "exponential-decay",
            catalog_id="kappa:affine", params=(("a", a),)),
        params=(a,)))


def linear():
    """f(s) = s; kappa is Lebesgue measure on (0, inf)."""
    return _self_test(BernsteinFunction(
        catalog_id="linear", a=0.0, b=1.0, levy=None,
        closed_form=lambda s: s, deriv=lambda s: 1.0,
        kappa_factory=lambda tol=0.0: DensityMeasure(
            lambda x: np.ones_like(np.asarray(x, dtype=float)),
            (0.0, math.inf), "exponential-decay",
            catalog_id="kappa:linear", params=()),
        params=()))


def ratio(a, b):
    """f(s) = (a + s)/(b + s), 0 < a < b; kappa density e^{-ax} - e^{-bx}."""
    if not 0 < a < b:
        raise DomainError("ratio catalog entry needs 0 < a < b")
    levy = DensityMeasure(lambda x: (b - a) * np.exp(-b * x),
                          (0.0, math.inf), "exponential-decay")
    return _self_test(BernsteinFunction(
        catalog_id="ratio:%g:%g" % (a, b), a=a / b, b=0.0, levy=levy,
        closed_form=lambda s: (a + s) / (b + s),
        deriv=lambda s: (b - a) / (b + s) ** 2,
        kappa_factory=lambda tol=0.0: DensityMeasure(
            lambda x: np.exp(-a * x) - np.exp(-b * x),
            (0.0, math.inf), "exponential-decay",
            catalog_id="kappa:ratio", params=(("a", a), ("b", b))),
        params=(a, b)))


def mobius():
    """f(s) = s/(s + 1); kappa density 1 - e^{-x}."""
    levy = DensityMeasure(lambda x: np.exp(-x), (0.0, math.inf),
                          "exponential-decay")
    return _self_test(BernsteinFunction(
        catalog_id="mobius", a=0.0, b=0.0, levy=levy,
        closed_form=lambda s: s / (s + 1.0),
        deriv=lambda s: 1.0 / (s + 1.0) ** 2,
        kappa_factory=lambda tol=0.0: DensityMeasure(
            lambda x: -np.expm1(-x), (0.0, math.inf), "exponential-decay",
            catalog_id="kappa:mobius", params=()),
        params=()))


def qratio(a, b, q, tol=1e-14):
    """f(s) = (1 - a q^s)/(1 - b q^s), 0 <= b < a < 1, 0 < q < 1.

    The Levy measure and kappa are atomic on the lattice k log(1/q);
    kappa weight at k log(1/q) is (a^k - b^k) log(1/q).
    """
    if not (0 <= b < a < 1):
        raise DomainError("qratio needs 0 <= b < a < 1")
    if not 0 < q < 1:
        raise DomainError("qratio needs 0 < q < 1")
    log1q = math.log(1.0 / q)
    lnq = math.log(q)

    def closed(s):
        return (1.0 - a * q ** s) / (1.0 - b * q ** s)

    def deriv(s):
        qs = q ** s
        denom = 1.0 - b * qs
        return (-a * lnq * qs * denom + (1.0 - a * qs) * b * lnq * qs) \
            / denom ** 2

    def lattice_atoms(weight_fn, bound_ratio):
        pairs = []
        k = 1
        while True:
            wt = weight_fn(k)
            pairs.append((k * log1q, wt))
            tail = bound_ratio ** (k + 1) / (1.0 - bound_ratio)
            if tail < tol:
                return pairs, tail
            k += 1

    levy_pairs, levy_tail = lattice_atoms(
        lambda k: (a - b) * b ** (k - 1) if b > 0 else
        ((a - b) if k == 1 else 0.0), max(b, 1e-300))
    if b == 0:
        levy_pairs, levy_tail = [(log1q, a - b)], 0.0
    levy = AtomicMeasure.from_pairs(levy_pairs, truncation_error=levy_tail)

    def kappa_factory(kappa_tol=None):
        eff = tol if kappa_tol is None else kappa_tol
        pairs = []
        k = 1
        while True:
            pairs.append((k * log1q, (a ** k - b ** k) * log1q))
            tail = log1q * a ** (k + 1) / (1.0 - a)
            if tail < eff:
                return AtomicMeasure.from_pairs(pairs, truncation_error=tail)
            k += 1

    return _self_test(BernsteinFunction(
        catalog_id="qratio:%g:%g:%g" % (a, b, q),
        a=(1.0 - a) / (1.0 - b), b=0.0, levy=levy,
        closed_form=closed, deriv=deriv,
        kappa_factory=kappa_factory, params=(a, b, q)))


def powertower():
    """f(s) = s (1 + 1/s)^{s+1}, closed form only; no analytic kappa.

    With alpha = beta = 1 the product moments telescope to (n+1)^{n+1}.
    """

    def closed(s):
        if s == 0:
            return 1.0
        return s * math.exp((s + 1.0) * math.log1p(1.0 / s))

    def deriv(s, h=1e-6):
        # central difference; entry is closed-form only and the derivative
        # is used nowhere quantitative
        return (closed(s + h) - closed(max(s - h, 0.0))) / (
            h + min(h, s))

    return BernsteinFunction(
        catalog_id="powertower", a=1.0, b=0.0, levy=None,
        closed_form=closed, deriv=deriv, kappa_factory=None, params=())


# ---------------------------------------------------------------------------
# operations

def kappa_of(f, tol=1e-14):
    """The measure with f'/f as Laplace transform, for catalog entries."""
    if f.kappa_factory is None:
        raise UnsupportedError(
            "%s has no analytic kappa in the catalog" % f.catalog_id)
    return f.kappa_factory(tol)


def power_moments(f, alpha, beta):
    """The moment sequence s_n = f(alpha) f(alpha+beta) ... f(alpha+(n-1)beta).

    Accumulated and cached in log domain.
    """
    if alpha < 0 or beta <= 0:
        raise DomainError("need alpha >= 0 and beta > 0")
    if f(alpha) <= 0:
        raise PreconditionError(
            "%s: f(alpha)=%g must be positive" % (f.catalog_id, f(alpha)))
    log_cache = [0.0]

    def log_fn(n):
        while len(log_cache) <= n:
            k = len(log_cache) - 1
            log_cache.append(log_cache[-1]
                             + math.log(f(alpha + k * beta)))
        return log_cache[n]

    return MomentSequence(log_fn=log_fn, normalized=True)


def _stable_centered_power(u, n):
    """x^n - 1 - n(x - 1) evaluated without cancellation near x = 1.

    For |x - 1| < 1/2 uses the binomial tail sum_{k>=2} C(n,k)(x-1)^k.
    """
    u = np.asarray(u, dtype=float)
    d = u - 1.0
    direct = u ** n - 1.0 - n * d
    if n < 2:
        return np.zeros_like(u)
    series = np.zeros_like(u)
    term = np.ones_like(u)
    coeff = 1.0
    for k in range(1, n + 1):
        coeff = coeff * (n - k + 1) / k
        term = term * d
        if k >= 2:
            series += coeff * term
    return np.where(np.abs(d) < 0.5, series, direct)


def sigma_of(f, alpha, beta, tol=1e-14):
    """The measure sigma on (0, 1): image of e^{-alpha x} d kappa(x) /
    (x (1 - e^{-beta x})) under x -> e^{-beta x}.

    Exact atom arithmetic for atomic kappa; a reweighted density otherwise.
    """
    if alpha == 0 and f(0.0) <= 0:
        raise PreconditionError(
            "alpha = 0 requires f(0) > 0 for sigma to be integrable")
    kappa = kappa_of(f, tol)
    if isinstance(kappa, AtomicMeasure):
        pairs = []
        for x, wt in kappa.atoms:
            u = math.exp(-beta * x)
            pairs.append((u, wt * math.exp(-alpha * x)
                          / (x * -math.expm1(-beta * x))))
        return AtomicMeasure.from_pairs(
            pairs, truncation_error=kappa.truncation_error)

    dens_kappa = kappa.density

    def sigma_density(u):
        u = np.asarray(u, dtype=float)
        x = -np.log(u) / beta
        return (dens_kappa(x) * np.exp((alpha / beta - 1.0) * np.log(u))
                / (-np.log(u) * (1.0 - u)))

    return DensityMeasure(sigma_density, (0.0, 1.0), "finite-interval",
                          catalog_id="sigma:%s:%g:%g" % (f.catalog_id,
                                                         alpha, beta))


def log_moment_via_rep(f, alpha, beta, n, tol=1e-11):
    """log s_n computed from the sigma-representation.

    Returns n log f(alpha) + integral of (x^n - 1 - n(x-1)) d sigma; the
    integrand vanishes to second order at x = 1.
    """
    sigma = sigma_of(f, alpha, beta)
    head = n * math.log(f(alpha))
    if n == 0:
        return 0.0
    if isinstance(sigma, AtomicMeasure):
        total = sum(wt * float(_stable_centered_power(u, n))
                    for u, wt in sigma.atoms)
        return head + total
    value, _ = integrate(
        lambda u: _stable_centered_power(u, n) * sigma.density(u),
        0.0, 1.0, tol=tol)
    return head + value


def psi(f, alpha, beta, z, tol=1e-11):
    """The Mellin exponent: psi(n) = -log s_n, defined for Re z >= 0.

    psi(z) = -z log f(alpha) + integral of
    ((1 - e^{-z beta x}) - z (1 - e^{-beta x})) e^{-alpha x}
    / (x (1 - e^{-beta x})) d kappa(x).
    """
    z = complex(z)
    if z.real < 0:
        raise DomainError("psi requires Re z >= 0")
    kappa = kappa_of(f)
    head = -z * math.log(f(alpha))

    def core(x):
        # ((1-e^{-z w}) - z(1-e^{-w})) / (x (1-e^{-w})), w = beta x,
        # with a series patch below w = 1e-4 (removable point at 0)
        x = np.asarray(x, dtype=float)
        w = beta * x
        small = w <= 1e-4
        ws = np.where(small, 1.0, w)  # placeholder to avoid 0/0
        num = -np.expm1(-z * ws) + z * np.expm1(-ws)
        den = (ws / beta) * -np.expm1(-ws)
        direct = num / den
        A = (z - z * z) / 2.0
        B = (z ** 3 - z) / 6.0
        C = -(z ** 4 - z) / 24.0
        series = beta * (A + (B + A / 2.0) * w
                         + (C + B / 2.0 + A / 12.0) * w * w)
        return np.where(small, series, direct)

    if isinstance(kappa, AtomicMeasure):
        total = 0.0 + 0.0j
        for x, wt in kappa.atoms:
            total += wt * complex(core(x)) * math.exp(-alpha * x)
        result = head + total
    else:
        dens = kappa.density
        value, _ = integrate_exp_decay(
            lambda x: core(x) * np.exp(-alpha * x) * dens(x), tol=tol)
        result = head + value
    if z.imag == 0:
        return float(result.real)
    return result


def lk_rep_of(f, alpha, beta, tol=1e-14):
    """The (a, b, sigma) symbols of the log-moment representation for the
    moment product of f at (alpha, beta): a = log f(alpha), b = 0."""
    if f(alpha) <= 0:
        raise PreconditionError(
            "%s: f(alpha)=%g must be positive" % (f.catalog_id, f(alpha)))
    return LevyKhinchinRep(math.log(f(alpha)), 0.0,
                           sigma_of(f, alpha, beta, tol))


def lk_log_moment(rep, n, tol=1e-11):
    """log s_n from a Levy-Khinchin-type representation (a, b, sigma)."""
    head = rep.a * n + rep.b * n * n
    if rep.sigma is None or n == 0:
        return head
    if isinstance(rep.sigma, AtomicMeasure):
        return head + sum(wt * float(_stable_centered_power(u, n))
                          for u, wt in rep.sigma.atoms)
    sigma = rep.sigma
    lo, hi = sigma.support

    def integrand(u):
        return _stable_centered_power(u, n) * sigma.density(u)

    if sigma.quadrature_hint == "finite-interval":
        value, _ = integrate(integrand, lo, hi, tol=tol)
    else:
        value, _ = integrate_exp_decay(integrand, tol=tol)
    return head + value


def product_upper_bound_log(f, alpha, beta, n):
    """log of the bound f(alpha) f(beta)^{n-1} (1 + alpha/beta)_{n-1}.

    Valid for n >= 1 because f(s) <= (f(beta)/beta) s for s >= beta.
    """
    from scipy.special import gammaln
    if n < 1:
        raise DomainError("bound defined for n >= 1")
    r = 1.0 + alpha / beta
    return (math.log(f(alpha)) + (n - 1) * math.log(f(beta))
            + gammaln(r + n - 1) - gammaln(r))
