"""Adaptive Gauss-Legendre quadrature with explicit error estimates.

Every integral returns a pair ``(value, abs_error)``.  Three entry points
cover the integrand classes used by the measure catalog:

* :func:`integrate` -- finite interval, adaptive bisection;
* :func:`integrate_exp_decay` -- ``(0, inf)`` with exponentially decaying
  integrand, handled by the substitution ``x = -log(u)``;
* :func:`integrate_log_sub` -- ``(0, inf)`` with a heavy-tailed integrand
  that is well-behaved in ``u = log(x)``; the window in ``u`` is expanded
  until the boundary strips are negligible.

Integrands must accept numpy arrays and may return complex values.
The subdivision budget defaults to 2**14 panels and can be overridden with
the ``MOMENTFORGE_QUAD_BUDGET`` environment variable.
"""

import heapq
import os

import numpy as np

from .errors import QuadratureError

DEFAULT_PANEL_BUDGET = 2 ** 14


def panel_budget():
    value = os.environ.get("MOMENTFORGE_QUAD_BUDGET")
    return int(value) if value else DEFAULT_PANEL_BUDGET


_GL_CACHE = {}


def _gl_nodes(n):
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _panel(f, a, b, n):
    nodes, weights = _gl_nodes(n)
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    values = f(mid + half * nodes)
    return half * np.sum(weights * values)


def _panel_with_error(f, a, b):
    # error estimated by comparing 15- and 30-point rules on the same panel
    coarse = _panel(f, a, b, 15)
    fine = _panel(f, a, b, 30)
    return fine, abs(fine - coarse)


def integrate(f, a, b, tol=1e-12, budget=None):
    """Integrate ``f`` over ``[a, b]`` by adaptive panel bisection.

    Stops when the summed error estimate is below ``tol * max(1, |I|)``.
    Raises :class:`QuadratureError` when the panel budget is exhausted.
    """
    if budget is None:
        budget = panel_budget()
    value, err = _panel_with_error(f, a, b)
    heap = [(-err, a, b, value, err)]
    total, total_err = value, err
    panels = 1
    while True:
        if total_err <= tol * max(1.0, abs(total)):
            return total, total_err
        if panels >= budget:
            raise QuadratureError(
                "quadrature budget of %d panels exhausted (residual %.3g)"
                % (budget, total_err),
                value=total,
                residual=total_err,
            )
        _, lo, hi, val0, err0 = heapq.heappop(heap)
        total -= val0
        total_err -= err0
        mid = 0.5 * (lo + hi)
        for left, right in ((lo, mid), (mid, hi)):
            val, e = _panel_with_error(f, left, right)
            heapq.heappush(heap, (-e, left, right, val, e))
            total += val
            total_err += e
        panels += 1


def integrate_exp_decay(f, tol=1e-12, budget=None):
    """Integrate ``f`` over ``(0, inf)`` assuming exponential decay.

    Uses the substitution ``x = -log(u)`` mapping the half-line onto
    ``(0, 1)``; the decay factor in ``f`` cancels the Jacobian blow-up.
    """

    def g(u):
        return f(-np.log(u)) / u

    return integrate(g, 0.0, 1.0, tol=tol, budget=budget)


def integrate_log_sub(f, tol=1e-12, budget=None, center=0.0, strip=8.0,
                      max_strips=60):
    """Integrate ``f`` over ``(0, inf)`` via ``u = log(x)``.

    The window in ``u`` starts at ``[center - strip, center + strip]`` and
    grows one strip at a time in each direction until two consecutive
    strips contribute below tolerance.  Suits log-normal-type tails whose
    mass may sit far from ``u = 0``.
    """

    def g(u):
        x = np.exp(u)
        return f(x) * x

    total, total_err = integrate(g, center - strip, center + strip,
                                 tol=tol, budget=budget)
    for direction in (+1, -1):
        edge = center + direction * strip
        quiet = 0
        for _ in range(max_strips):
            lo = edge if direction > 0 else edge - strip
            hi = edge + strip if direction > 0 else edge
            part, err = integrate(g, lo, hi, tol=tol, budget=budget)
            total += part
            total_err += err
            edge += direction * strip
            if abs(part) <= tol * max(1.0, abs(total)):
                quiet += 1
                if quiet >= 2:
                    break
            else:
                quiet = 0
    return total, total_err
