"""Orthonormal Hermite polynomials, the Szasz bound |h_n(x)| <= e^{x^2/2},
and certified positivity of the generating function

    G(t, x) = sum_{k>=0} h_k(x) t^k,   |t| < 1.

The partial sum carries the explicit tail majorant
e^{x^2/2} |t|^{N+1}/(1-|t|), so every scan value comes with a certified
lower bound.  Summation runs in binary64 with a roundoff-noise estimate;
points where the noise could eat the certification margin are recomputed
with mpmath at a working precision sized to the term magnitudes.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import mpmath

from .errors import BudgetError, DomainError, InconsistencyError, RangeError

_EPS = 2.0 ** -52
_MAX_TERMS = 200000


@dataclass(frozen=True)
class HermiteEval:
    """A joint evaluation of H_n and the orthonormal h_n at one point."""

    n: int
    x: float
    H: float
    h: float


@dataclass(frozen=True)
class GenFunValue:
    """A certified partial sum of G(t, x).

    ``tail_bound`` is e^{x^2/2} |t|^{N+1}/(1-|t|) for N = terms_used - 1,
    so the true value lies in [value - tail_bound, value + tail_bound]
    up to summation roundoff (kept below the certification margin).
    """

    t: float
    x: float
    value: float
    tail_bound: float
    terms_used: int

    @property
    def certified_lower(self):
        return self.value - self.tail_bound


@dataclass(frozen=True)
class ScanReport:
    """Grid report of positivity_scan."""

    all_positive: bool
    min_value: float
    min_certified: float
    argmin: Tuple[float, float]
    points: Tuple[GenFunValue, ...]

    def to_json_dict(self):
        return {"all_positive": self.all_positive,
                "min_value": self.min_value,
                "min_certified": self.min_certified,
                "argmin": list(self.argmin),
                "n_points": len(self.points)}


def hermite_H(n, x):
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence
    H_{n+1} = 2x H_n - 2n H_{n-1}, H_0 = 1, H_1 = 2x."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    prev, curr = 1.0, 2.0 * x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, curr = curr, 2.0 * x * curr - 2.0 * k * prev
        if math.isinf(curr):
            raise RangeError(
                "H_%d overflows binary64 at x = %g; use the normalized "
                "hermite_h instead" % (k + 1, x))
    return curr


def hermite_h(n, x, check_szasz=True):
    """Orthonormal Hermite value h_n(x) = H_n(x)/sqrt(2^n n!), computed by
    the normalized recurrence

        h_{n+1} = (sqrt(2) x h_n - sqrt(n) h_{n-1}) / sqrt(n+1),

    which stays bounded by e^{x^2/2} for all n (Szasz inequality)."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    prev, curr = 1.0, math.sqrt(2.0) * x
    if n == 0:
        curr = prev
    else:
        for k in range(1, n):
            prev, curr = curr, ((math.sqrt(2.0) * x * curr
                                 - math.sqrt(k) * prev)
                                / math.sqrt(k + 1.0))
    if check_szasz and abs(curr) > math.exp(0.5 * x * x) * (1.0 + 1e-10):
        raise InconsistencyError(
            "computed |h_%d(%g)| = %g violates the e^{x^2/2} bound; "
            "the recurrence has lost too much precision" % (n, x, curr))
    return curr


def hermite_eval(n, x):
    """Both normalizations at once; H is reconstructed from h in log
    domain and overflows to a range error exactly when hermite_H would."""
    h = hermite_h(n, x)
    if h == 0.0:
        return HermiteEval(n, x, 0.0, 0.0)
    log_scale = 0.5 * (n * math.log(2.0) + math.lgamma(n + 1.0))
    log_H = math.log(abs(h)) + log_scale
    if log_H > math.log(_float_max()):
        raise RangeError(
            "H_%d(%g) overflows binary64; the orthonormal value is %g"
            % (n, x, h))
    return HermiteEval(n, x, math.copysign(math.exp(log_H), h), h)


def _float_max():
    return 1.7976931348623157e308


def _terms_needed(t, x, tol):
    """Smallest N with e^{x^2/2} |t|^{N+1}/(1-|t|) <= tol; terms 0..N."""
    at = abs(t)
    if at == 0.0:
        return 0
    log_target = math.log(tol) + math.log1p(-at) - 0.5 * x * x
    n_plus_1 = max(1.0, log_target / math.log(at))
    return int(math.ceil(n_plus_1))


def _sum_float(t, x, n_terms):
    """Partial sum over k = 0..n_terms in binary64, plus the largest
    magnitude met (term or running total) for the noise estimate."""
    total = 1.0
    maxmag = 1.0
    prev, curr = 1.0, math.sqrt(2.0) * x
    tk = t
    for k in range(1, n_terms + 1):
        term = curr * tk
        total += term
        mag = max(abs(term), abs(total))
        if mag > maxmag:
            maxmag = mag
        prev, curr = curr, ((math.sqrt(2.0) * x * curr
                             - math.sqrt(k) * prev)
                            / math.sqrt(k + 1.0))
        tk *= t
    return total, maxmag


def _sum_mp(t, x, n_terms, dps):
    with mpmath.workdps(dps):
        tm = mpmath.mpf(t)
        xm = mpmath.mpf(x)
        total = mpmath.mpf(1)
        prev, curr = mpmath.mpf(1), mpmath.sqrt(2) * xm
        tk = tm
        for k in range(1, n_terms + 1):
            total += curr * tk
            prev, curr = curr, ((mpmath.sqrt(2) * xm * curr
                                 - mpmath.sqrt(k) * prev)
                                / mpmath.sqrt(k + 1))
            tk *= tm
        return float(total)


def generating_G(t, x, tol=1e-10, max_terms=_MAX_TERMS):
    """Certified evaluation of G(t, x) = sum h_k(x) t^k for |t| < 1.

    The number of terms is fixed in advance from the Szasz tail majorant;
    if binary64 roundoff (about N eps max|partial|) could exceed a quarter
    of ``tol`` the sum is redone in multiprecision.
    """
    t = float(t)
    x = float(x)
    if not abs(t) < 1.0:
        raise DomainError("generating_G needs |t| < 1, got t = %g" % t)
    if tol <= 0:
        raise DomainError("tol must be positive")
    n_top = _terms_needed(t, x, tol)
    if n_top > max_terms:
        raise BudgetError(
            "reaching tol = %g at (t, x) = (%g, %g) needs %d terms, "
            "budget is %d" % (tol, t, x, n_top, max_terms))
    at = abs(t)
    if at == 0.0:
        return GenFunValue(t, x, 1.0, 0.0, 1)
    tail = math.exp(0.5 * x * x + (n_top + 1) * math.log(at)
                    - math.log1p(-at))
    value, maxmag = _sum_float(t, x, n_top)
    noise = (n_top + 2) * _EPS * maxmag
    if noise > 0.25 * tol:
        digits = int(math.ceil(math.log10(max(maxmag, 1.0) / tol))) + 12
        value = _sum_mp(t, x, n_top, max(30, digits))
    return GenFunValue(t, x, value, tail, n_top + 1)


def positivity_scan(t_grid, x_grid, tol=1e-10):
    """Evaluate G with certified tails on a grid; all_positive is true iff
    value - tail_bound > 0 at every grid point."""
    points = []
    min_value = math.inf
    min_cert = math.inf
    argmin = None
    for t in t_grid:
        for x in x_grid:
            g = generating_G(t, x, tol=tol)
            points.append(g)
            if g.value < min_value:
                min_value = g.value
                argmin = (g.t, g.x)
            min_cert = min(min_cert, g.certified_lower)
    if not points:
        raise DomainError("empty scan grid")
    return ScanReport(all_positive=min_cert > 0.0,
                      min_value=min_value,
                      min_certified=min_cert,
                      argmin=argmin,
                      points=tuple(points))
