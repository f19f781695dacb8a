"""Named verification suites behind ``verify`` in the CLI.

Every check is deterministic (no randomness anywhere in the package), so
rendering the same suite twice gives byte-identical reports.  A check
passes when its residual is at most its tolerance; the optional ``tol``
argument overrides every default tolerance in the suite.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import bernstein, hankel, hermite, qseries, semigroups
from .measures import (MomentSequence, additive_convolve, moment,
                       product_convolve)

SUITE_NAMES = ("hankel", "bernstein-rep", "qseries", "semigroup", "hermite")


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self):
        return self.residual <= self.tolerance

    def line(self):
        return "%s %s/%s residual=%.17g tol=%.17g" % (
            "PASS" if self.passed else "FAIL", self.suite, self.name,
            self.residual, self.tolerance)


def _check(results, suite, name, residual, default_tol, tol):
    results.append(CheckResult(suite, name, float(residual),
                               default_tol if tol is None else tol))


# ---------------------------------------------------------------- hankel

def _factorial_seq():
    return MomentSequence(log_fn=lambda n: math.lgamma(n + 1.0),
                          normalized=True)


def _poch_seq(a):
    return MomentSequence(
        log_fn=lambda n: math.lgamma(a + n) - math.lgamma(a),
        normalized=True)


def _poch_ratio_seq(a, b):
    return MomentSequence(
        log_fn=lambda n: (math.lgamma(a + n) - math.lgamma(a)
                          - math.lgamma(b + n) + math.lgamma(b)),
        normalized=True)


def _lognormal_seq(q):
    log1q = math.log(1.0 / q)
    return MomentSequence(log_fn=lambda n: 0.5 * n * (n + 1) * log1q,
                          normalized=True)


def suite_hankel(tol=None):
    results = []
    p = qseries.QParams(0.5, 0.25, 0.5)
    qb = qseries.qbeta_moment_sequence(p)
    tseq = semigroups.t_transform(qb)
    cases = [
        ("factorial", _factorial_seq(), 6),
        ("pochhammer:1.5", _poch_seq(1.5), 6),
        ("pochhammer-ratio:1:2.5", _poch_ratio_seq(1.0, 2.5), 8),
        ("qbeta:0.5:0.25:0.5", qb, 8),
        ("lognormal:0.5", _lognormal_seq(0.5), 6),
        ("t-transform-qbeta", tseq, 8),
    ]
    for name, seq, order in cases:
        for c in (0.5, 1.0, 2.0):
            verdict = hankel.stieltjes_check(
                hankel.power_sequence(seq, c), order)
            residual = math.inf if not verdict.is_psd \
                else max(0.0, -verdict.min_pivot)
            _check(results, "hankel", "psd:%s:c=%g" % (name, c),
                   residual, 1e-9, tol)
    carleman_cases = [
        ("factorial:c=1", _factorial_seq(), 1.0, hankel.DIVERGENT),
        ("factorial:c=3", _factorial_seq(), 3.0, hankel.CONVERGENT),
        ("constant", MomentSequence(fn=lambda n: 1.0, normalized=True),
         1.0, hankel.DIVERGENT),
    ]
    for name, seq, c, expected in carleman_cases:
        diag = hankel.carleman_diagnostic(hankel.power_sequence(seq, c), 40)
        _check(results, "hankel", "carleman:%s" % name,
               0.0 if diag.verdict == expected else 1.0, 0.5, tol)
    tri = hankel.trichotomy_classify(_factorial_seq(), 10)
    _check(results, "hankel", "trichotomy:all-positive",
           0.0 if tri.case == hankel.ALL_POSITIVE else 1.0, 0.5, tol)
    tri = hankel.trichotomy_classify(MomentSequence.dirac_zero(), 10)
    _check(results, "hankel", "trichotomy:dirac-zero",
           0.0 if tri.case == hankel.DIRAC_AT_ZERO else 1.0, 0.5, tol)
    return results


# ---------------------------------------------------------- bernstein-rep

def _rep_catalog():
    return [
        bernstein.affine(1.0),
        bernstein.affine(2.0),
        bernstein.ratio(1.0, 2.0),
        bernstein.ratio(0.5, 3.0),
        bernstein.qratio(0.5, 0.25, 0.5),
        bernstein.linear(),
    ]


_AB_PAIRS = ((0.0, 1.0), (1.0, 1.0), (0.5, 2.0))


def suite_bernstein_rep(tol=None, n_max=15):
    results = []
    for f in _rep_catalog():
        rep_worst = 0.0
        psi_worst = 0.0
        psi0_worst = 0.0
        psi1_worst = 0.0
        for alpha, beta in _AB_PAIRS:
            if f(alpha) <= 0.0:
                continue
            seq = bernstein.power_moments(f, alpha, beta)
            for n in range(n_max + 1):
                via_rep = bernstein.log_moment_via_rep(f, alpha, beta, n)
                rep_worst = max(rep_worst, abs(via_rep - seq.log(n)))
                psi_n = bernstein.psi(f, alpha, beta, float(n))
                psi_worst = max(psi_worst, abs(psi_n + seq.log(n)))
            psi0_worst = max(psi0_worst,
                             abs(bernstein.psi(f, alpha, beta, 0.0)))
            psi1_worst = max(psi1_worst,
                             abs(bernstein.psi(f, alpha, beta, 1.0)
                                 + math.log(f(alpha))))
        _check(results, "bernstein-rep", "rep:%s" % f.catalog_id,
               rep_worst, 1e-7, tol)
        _check(results, "bernstein-rep", "psi:%s" % f.catalog_id,
               psi_worst, 1e-7, tol)
        _check(results, "bernstein-rep", "psi0:%s" % f.catalog_id,
               psi0_worst, 1e-12, tol)
        _check(results, "bernstein-rep", "psi1:%s" % f.catalog_id,
               psi1_worst, 1e-12, tol)
    pt = bernstein.powertower()
    seq = bernstein.power_moments(pt, 1.0, 1.0)
    _check(results, "bernstein-rep", "powertower:s3",
           abs(seq(3) - 256.0), 1e-9, tol)
    return results


# ---------------------------------------------------------------- qseries

_ABQ_GRID = tuple((a, b, q)
                  for a in (0.3, 0.5, 0.7)
                  for b in (0.0, 0.1, 0.25)
                  for q in (0.3, 0.5, 0.8))


def qbinom_product(p, n):
    """prod_{k<n} ((1-bq^k)/(1-aq^k))^{n-k}."""
    total = 0.0
    for k in range(n):
        total += (n - k) * (math.log1p(-p.b * p.q ** k)
                            - math.log1p(-p.a * p.q ** k))
    return math.exp(total)


def suite_qseries(tol=None):
    results = []
    worst = 0.0
    for a, b, q in _ABQ_GRID:
        p = qseries.QParams(a, b, q)
        mu = qseries.mu_abq(p)
        seq = qseries.qbeta_moment_sequence(p)
        for n in range(11):
            worst = max(worst, abs(moment(mu, n).value - seq(n)))
    _check(results, "qseries", "qbeta-atomic-moments", worst, 1e-12, tol)
    worst = 0.0
    for a, b, q in _ABQ_GRID:
        p = qseries.QParams(a, b, q)
        for c in (0.5, 1.0, 2.0, 3.0):
            mu = qseries.mu_c(p, c)
            seq = qseries.qbeta_moment_sequence(p, c)
            for n in range(11):
                worst = max(worst, abs(moment(mu, n).value - seq(n)))
    _check(results, "qseries", "qbeta-semigroup-moments", worst, 1e-10, tol)
    p = qseries.QParams(0.5, 0.25, 0.5)
    tau = qseries.tau_c(p, 1.0)
    worst = max(abs(tau.laplace(s) - qseries.mellin_qbeta(p, 1.0, s).real)
                for s in (0.5, 1.0, 2.0))
    _check(results, "qseries", "tau-laplace-closed-form", worst, 1e-10, tol)
    _check(results, "qseries", "qbinomial",
           qseries.qbinomial_check(0.5, 0.25 / 0.5, 0.5), 1e-12, tol)
    nu = qseries.nu_a(0.5, 0.5)
    _check(results, "qseries", "nu-mass",
           abs(nu.total_mass + math.log(qseries.qpoch(0.5, 0.5))),
           1e-11, tol)
    worst = max(abs(qseries.mellin_qbeta(p, c, n).real
                    - qseries.qbeta_moment_sequence(p, c)(n))
                for c in (0.5, 1.0, 2.0) for n in range(7))
    _check(results, "qseries", "qbeta-mellin-at-integers", worst, 1e-10, tol)
    neg = 0.0
    for pp in (0.1, 0.3, 0.7):
        for q in (0.3, 0.5, 0.8):
            series = qseries.hp_coefficients(pp, q, 50)
            neg = max(neg, -min(series.coefficients))
    _check(results, "qseries", "hp-nonnegative", neg, 1e-14, tol)
    sig = qseries.sigma_abgamma(p)
    tseq = semigroups.t_transform(qseries.qbeta_moment_sequence(p))
    worst_t = max(abs(moment(sig, n).value - tseq(n)) for n in range(7))
    worst_p = max(abs(moment(sig, n).value - qbinom_product(p, n))
                  for n in range(7))
    _check(results, "qseries", "sigmaq-vs-t-transform", worst_t, 1e-9, tol)
    _check(results, "qseries", "sigmaq-vs-product", worst_p, 1e-9, tol)
    return results


# -------------------------------------------------------------- semigroup

_CD_PAIRS = ((0.5, 0.5), (1.0, 1.0), (0.3, 1.7))


def suite_semigroup(tol=None):
    results = []
    p = qseries.QParams(0.5, 0.25, 0.5)
    worst_tau = 0.0
    worst_mu = 0.0
    for c, d in _CD_PAIRS:
        tau_cd = additive_convolve(qseries.tau_c(p, c), qseries.tau_c(p, d))
        tau_sum = qseries.tau_c(p, c + d)
        mu_cd = product_convolve(qseries.mu_c(p, c), qseries.mu_c(p, d))
        mu_sum = qseries.mu_c(p, c + d)
        for n in range(7):
            worst_tau = max(worst_tau, abs(moment(tau_cd, n).value
                                           - moment(tau_sum, n).value))
            worst_mu = max(worst_mu, abs(moment(mu_cd, n).value
                                         - moment(mu_sum, n).value))
    _check(results, "semigroup", "tau-additive", worst_tau, 1e-9, tol)
    _check(results, "semigroup", "mu-product", worst_mu, 1e-9, tol)
    worst = 0.0
    for q in (0.3, 0.5, 0.8):
        for c in (0.5, 1.0, 2.0):
            fam = semigroups.LogNormalQFamily(q, c)
            dens = semigroups.vc_density(fam)
            for n in range(7):
                target = semigroups.vc_mellin(fam, n).real
                worst = max(worst,
                            abs(moment(dens, n, tol=1e-11).value - target)
                            / target)
    _check(results, "semigroup", "vc-quadrature-relative", worst, 1e-8, tol)
    worst = 0.0
    for a, b in ((1.0, 2.0), (0.5, 3.0)):
        gam_a = semigroups.GammaFamily(a, 1.0)
        gam_b = semigroups.GammaFamily(b, 1.0)
        bet = semigroups.BetaFamily(a, b, 1.0)
        for z in (0.5, 1.0, 2.0 + 1.0j):
            lhs = (semigroups.gamma_mellin(gam_b, z)
                   * semigroups.beta_mellin(bet, z))
            worst = max(worst, abs(lhs - semigroups.gamma_mellin(gam_a, z)))
    _check(results, "semigroup", "mellin-factorization", worst, 1e-12, tol)
    worst = 0.0
    for z in (0.5, 1.0, 2.0 + 1.0j):
        for c, d in _CD_PAIRS:
            for make, args in ((semigroups.GammaFamily, (1.5,)),
                               (semigroups.BetaFamily, (1.0, 2.5)),
                               (semigroups.LogNormalQFamily, (0.5,))):
                fc, fd, fcd = (make(*args, c), make(*args, d),
                               make(*args, c + d))
                if make is semigroups.GammaFamily:
                    mell = semigroups.gamma_mellin
                elif make is semigroups.BetaFamily:
                    mell = semigroups.beta_mellin
                else:
                    mell = semigroups.vc_mellin
                worst = max(worst, abs(mell(fc, z) * mell(fd, z)
                                       - mell(fcd, z))
                            / abs(mell(fcd, z)))
    _check(results, "semigroup", "mellin-semigroup-law", worst, 1e-13, tol)
    return results


# ---------------------------------------------------------------- hermite

def suite_hermite(tol=None):
    results = []
    t_grid = [round(-0.95 + 0.05 * i, 10) for i in range(39)]
    x_grid = [round(-10.0 + 0.25 * i, 10) for i in range(81)]
    report = hermite.positivity_scan(t_grid, x_grid, tol=1e-10)
    _check(results, "hermite", "scan-certified-positive",
           -report.min_certified, 0.0, tol)
    worst = 0.0
    for x in np.arange(-6.0, 6.0001, 0.1):
        for n in range(0, 201, 5):
            worst = max(worst, abs(hermite.hermite_h(n, float(x)))
                        - math.exp(0.5 * x * x))
    _check(results, "hermite", "szasz", worst, 1e-12, tol)
    worst = 0.0
    for x in np.arange(-3.0, 3.0001, 0.5):
        for z in np.arange(-0.8, 0.8001, 0.2):
            total = 0.0
            for k in range(61):
                total += (hermite.hermite_H(k, float(x)) * float(z) ** k
                          / math.factorial(k))
            worst = max(worst, abs(total - math.exp(2 * x * z - z * z)))
    _check(results, "hermite", "exp-generating-function", worst, 1e-9, tol)
    g = hermite.generating_G(0.5, 0.0)
    oracle = sum(hermite.hermite_h(2 * k, 0.0) * 0.5 ** (2 * k)
                 for k in range(100))
    _check(results, "hermite", "g-direct-oracle",
           abs(g.value - oracle), 1e-10, tol)
    return results


_SUITES = {
    "hankel": suite_hankel,
    "bernstein-rep": suite_bernstein_rep,
    "qseries": suite_qseries,
    "semigroup": suite_semigroup,
    "hermite": suite_hermite,
}


def run_suite(name, tol=None):
    """Run one named suite, or all of them for name == 'all'."""
    if name == "all":
        results = []
        for key in SUITE_NAMES:
            results.extend(_SUITES[key](tol))
        return results
    if name not in _SUITES:
        raise KeyError("unknown suite %r; choose from %s or 'all'"
                       % (name, ", ".join(SUITE_NAMES)))
    return _SUITES[name](tol)


def render_report(results):
    """Deterministic plain-text report with one line per check."""
    lines = [r.line() for r in results]
    n_pass = sum(1 for r in results if r.passed)
    lines.append("passed %d/%d" % (n_pass, len(results)))
    return "\n".join(lines) + "\n"


def all_passed(results):
    return all(r.passed for r in results)
