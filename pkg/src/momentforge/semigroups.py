"""Closed-form product convolution semigroups: Gamma, Beta and the
q-log-normal family, plus the T-transform on Hausdorff moment sequences.

Fractional powers (c != 1) are exposed only through moments and Mellin
transforms; densities exist in closed form for c = 1 only.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import betaln, loggamma

from .errors import DomainError, UnsupportedError
from .measures import DensityMeasure, MomentSequence


@dataclass(frozen=True)
class GammaFamily:
    """Product convolution powers of the Gamma distribution with shape a."""

    a: float
    c: float = 1.0

    def __post_init__(self):
        if self.a <= 0 or self.c <= 0:
            raise DomainError("GammaFamily needs a > 0 and c > 0")


@dataclass(frozen=True)
class BetaFamily:
    """Product convolution powers of the Beta-type law with moments
    (a)_n/(b)_n, 0 < a < b."""

    a: float
    b: float
    c: float = 1.0

    def __post_init__(self):
        if not 0 < self.a < self.b:
            raise DomainError("BetaFamily needs 0 < a < b")
        if self.c <= 0:
            raise DomainError("BetaFamily needs c > 0")


@dataclass(frozen=True)
class LogNormalQFamily:
    """The log-normal semigroup with moments q^{-c n(n+1)/2}."""

    q: float
    c: float = 1.0

    def __post_init__(self):
        if not 0 < self.q < 1:
            raise DomainError("LogNormalQFamily needs 0 < q < 1")
        if self.c <= 0:
            raise DomainError("LogNormalQFamily needs c > 0")


def gamma_density(fam):
    """Density x^{a-1} e^{-x} / Gamma(a) on (0, inf); c = 1 only."""
    if fam.c != 1.0:
        raise UnsupportedError(
            "no closed-form density for gamma powers with c != 1")
    a = fam.a
    log_norm = loggamma(a).real

    def density(x):
        x = np.asarray(x, dtype=float)
        return np.exp((a - 1.0) * np.log(x) - x - log_norm)

    return DensityMeasure(density, (0.0, math.inf), "exponential-decay",
                          strip_min_re=-a, catalog_id="gamma",
                          params=(("a", a), ("c", 1.0)))


def gamma_mellin(fam, z):
    """(Gamma(a+z)/Gamma(a))^c, for Re z > -a."""
    z = complex(z)
    if z.real <= -fam.a:
        raise DomainError("gamma Mellin transform needs Re z > -a")
    value = cmath.exp(fam.c * (loggamma(fam.a + z) - loggamma(fam.a)))
    if z.imag == 0:
        return complex(value.real, 0.0)
    return value


def beta_density(fam):
    """Density x^{a-1}(1-x)^{b-a-1}/B(a, b-a) on (0, 1); c = 1 only."""
    if fam.c != 1.0:
        raise UnsupportedError(
            "no closed-form density for beta powers with c != 1")
    a, b = fam.a, fam.b
    log_norm = betaln(a, b - a)

    def density(x):
        x = np.asarray(x, dtype=float)
        return np.exp((a - 1.0) * np.log(x)
                      + (b - a - 1.0) * np.log1p(-x) - log_norm)

    return DensityMeasure(density, (0.0, 1.0), "finite-interval",
                          strip_min_re=-a, catalog_id="beta",
                          params=(("a", a), ("b", b), ("c", 1.0)))


def beta_mellin(fam, z):
    """((Gamma(a+z)/Gamma(a)) / (Gamma(b+z)/Gamma(b)))^c, Re z > -a."""
    z = complex(z)
    if z.real <= -fam.a:
        raise DomainError("beta Mellin transform needs Re z > -a")
    value = cmath.exp(fam.c * (loggamma(fam.a + z) - loggamma(fam.a)
                               - loggamma(fam.b + z) + loggamma(fam.b)))
    if z.imag == 0:
        return complex(value.real, 0.0)
    return value


def vc_density(fam):
    """The density with Mellin transform q^{-c z(z+1)/2}:

    v_c(x) = q^{c/8} / sqrt(2 pi log(1/q^c)) x^{-1/2}
             exp(-(log x)^2 / (2 log(1/q^c))), x > 0.
    """
    L = fam.c * math.log(1.0 / fam.q)
    norm = fam.q ** (fam.c / 8.0) / math.sqrt(2.0 * math.pi * L)

    def density(x):
        x = np.asarray(x, dtype=float)
        logx = np.log(x)
        return norm * np.exp(-0.5 * logx - logx * logx / (2.0 * L))

    return DensityMeasure(density, (0.0, math.inf), "log-substitution",
                          catalog_id="vclognormal",
                          params=(("q", fam.q), ("c", fam.c)))


def vc_mellin(fam, z):
    """q^{-c z(z+1)/2}, entire in z."""
    z = complex(z)
    value = cmath.exp(0.5 * fam.c * z * (z + 1.0) * math.log(1.0 / fam.q))
    if z.imag == 0:
        return complex(value.real, 0.0)
    return value


def t_transform(a):
    """Map a normalized nonvanishing Hausdorff sequence (a_n) to
    s_n = 1/(a_1 ... a_n); log-domain accumulation."""
    if a(0) != 1.0:
        raise DomainError("input sequence must be normalized (a_0 = 1)")
    log_cache = [0.0]

    def log_fn(n):
        while len(log_cache) <= n:
            k = len(log_cache)
            value = a(k)
            if value <= 0:
                raise DomainError("a_%d = %g must be positive" % (k, value))
            log_cache.append(log_cache[-1] - math.log(value))
        return log_cache[n]

    return MomentSequence(log_fn=log_fn, normalized=True)
