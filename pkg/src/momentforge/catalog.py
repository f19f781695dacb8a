"""String-id resolution for everything addressable from the CLI.

Ids follow a colon-separated convention, e.g. ``ratio:1:2`` or
``qbeta:0.5:0.25:0.5:1``.  Bernstein-function ids produce moment products
for a chosen (alpha, beta); family and measure ids expose moments, Mellin
values and (where available) a dumpable measure.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

from . import bernstein, qseries, semigroups
from .errors import DomainError, UnsupportedError
from .measures import AtomicMeasure, mellin as measure_mellin, moment

_SPEC = {
    "affine": 1, "linear": 0, "ratio": 2, "mobius": 0, "qratio": 3,
    "powertower": 0,
    "gamma": 2, "beta": 3, "vclognormal": 2,
    "qbeta": 4, "nu": 2, "hp": 2, "sigmaq": 3,
}


@dataclass(frozen=True)
class CatalogObject:
    """A resolved catalog entry with whatever evaluators it supports."""

    object_id: str
    kind: str
    moment_fn: Optional[Callable] = None
    mellin_fn: Optional[Callable] = None
    measure_factory: Optional[Callable] = None
    bernstein_fn: Optional[object] = None

    def moments(self, n_max):
        if self.moment_fn is None:
            raise UnsupportedError(
                "%s does not expose a moment sequence" % self.object_id)
        return [self.moment_fn(n) for n in range(n_max + 1)]

    def mellin(self, z):
        if self.mellin_fn is None:
            raise UnsupportedError(
                "%s has no Mellin evaluator" % self.object_id)
        return self.mellin_fn(z)

    def measure(self):
        if self.measure_factory is None:
            raise UnsupportedError(
                "%s has no dumpable measure" % self.object_id)
        return self.measure_factory()


def _parse(object_id):
    parts = object_id.split(":")
    head = parts[0]
    if head not in _SPEC:
        raise DomainError("unknown catalog id %r" % object_id)
    want = _SPEC[head]
    if len(parts) - 1 != want:
        raise DomainError(
            "%s takes %d parameter(s), got %d" % (head, want, len(parts) - 1))
    try:
        args = [float(p) for p in parts[1:]]
    except ValueError:
        raise DomainError("non-numeric parameter in %r" % object_id)
    return head, args


def _bernstein_entry(object_id, f, params):
    alpha = float(params.get("alpha", 1.0))
    beta = float(params.get("beta", 1.0))
    seq = bernstein.power_moments(f, alpha, beta)
    factory = None
    if f.kappa_factory is not None:
        factory = f.kappa_factory
    return CatalogObject(object_id, "bernstein", moment_fn=seq,
                         measure_factory=factory, bernstein_fn=f)


def resolve(object_id, params=None):
    """Resolve a string id to a CatalogObject.

    ``params`` is an optional dict of extra settings; Bernstein ids honor
    ``alpha`` and ``beta`` (both default 1) for their moment products.
    """
    params = params or {}
    head, args = _parse(object_id)

    if head == "affine":
        return _bernstein_entry(object_id, bernstein.affine(args[0]), params)
    if head == "linear":
        return _bernstein_entry(object_id, bernstein.linear(), params)
    if head == "ratio":
        return _bernstein_entry(object_id,
                                bernstein.ratio(args[0], args[1]), params)
    if head == "mobius":
        return _bernstein_entry(object_id, bernstein.mobius(), params)
    if head == "qratio":
        return _bernstein_entry(
            object_id, bernstein.qratio(args[0], args[1], args[2]), params)
    if head == "powertower":
        return _bernstein_entry(object_id, bernstein.powertower(), params)

    if head == "gamma":
        fam = semigroups.GammaFamily(args[0], args[1])
        factory = (lambda: semigroups.gamma_density(fam)) \
            if fam.c == 1.0 else None
        return CatalogObject(
            object_id, "family",
            moment_fn=lambda n: semigroups.gamma_mellin(fam, n).real,
            mellin_fn=lambda z: semigroups.gamma_mellin(fam, z),
            measure_factory=factory)
    if head == "beta":
        fam = semigroups.BetaFamily(args[0], args[1], args[2])
        factory = (lambda: semigroups.beta_density(fam)) \
            if fam.c == 1.0 else None
        return CatalogObject(
            object_id, "family",
            moment_fn=lambda n: semigroups.beta_mellin(fam, n).real,
            mellin_fn=lambda z: semigroups.beta_mellin(fam, z),
            measure_factory=factory)
    if head == "vclognormal":
        fam = semigroups.LogNormalQFamily(args[0], args[1])
        return CatalogObject(
            object_id, "family",
            moment_fn=lambda n: semigroups.vc_mellin(fam, n).real,
            mellin_fn=lambda z: semigroups.vc_mellin(fam, z),
            measure_factory=lambda: semigroups.vc_density(fam))

    if head == "qbeta":
        p = qseries.QParams(args[0], args[1], args[2])
        c = args[3]
        seq = qseries.qbeta_moment_sequence(p, c)
        return CatalogObject(
            object_id, "measure", moment_fn=seq,
            mellin_fn=lambda z: qseries.mellin_qbeta(p, c, z),
            measure_factory=lambda: qseries.mu_c(p, c))
    if head == "nu":
        a, q = args
        factory = lambda: qseries.nu_a(a, q)
        return CatalogObject(
            object_id, "measure",
            moment_fn=lambda n: moment(factory(), n).value,
            mellin_fn=lambda z: measure_mellin(factory(), z).value,
            measure_factory=factory)
    if head == "sigmaq":
        p = qseries.QParams(args[0], args[1], args[2])
        factory = lambda: qseries.sigma_abgamma(p)
        return CatalogObject(
            object_id, "measure",
            moment_fn=lambda n: moment(factory(), n).value,
            mellin_fn=lambda z: measure_mellin(factory(), z).value,
            measure_factory=factory)
    if head == "hp":
        p_, q = args
        cache = {}

        def coeff(n):
            if n not in cache:
                series = qseries.hp_coefficients(p_, q, n)
                for k, ck in enumerate(series.coefficients):
                    cache[k] = ck
            return cache[n]

        return CatalogObject(object_id, "series", moment_fn=coeff)
    raise DomainError("unknown catalog id %r" % object_id)


def density_from_json(data):
    """Rebuild a catalog density measure from its JSON form
    {"density": "<id>", "params": {...}}."""
    cid = data.get("density")
    params = data.get("params", {})
    if cid == "gamma":
        return semigroups.gamma_density(
            semigroups.GammaFamily(params["a"], params.get("c", 1.0)))
    if cid == "beta":
        return semigroups.beta_density(
            semigroups.BetaFamily(params["a"], params["b"],
                                  params.get("c", 1.0)))
    if cid == "vclognormal":
        return semigroups.vc_density(
            semigroups.LogNormalQFamily(params["q"], params["c"]))
    if cid == "kappa:affine":
        return bernstein.affine(params["a"]).kappa_factory()
    if cid == "kappa:linear":
        return bernstein.linear().kappa_factory()
    if cid == "kappa:ratio":
        return bernstein.ratio(params["a"], params["b"]).kappa_factory()
    if cid == "kappa:mobius":
        return bernstein.mobius().kappa_factory()
    raise DomainError("unknown density id %r" % cid)


def measure_from_json(data):
    """Deserialize either an atomic dump or a catalog density."""
    if "atoms" in data:
        return AtomicMeasure.from_json_dict(data)
    if "density" in data:
        return density_from_json(data)
    raise DomainError("not a serialized measure: %r" % sorted(data))
