"""Thermodynamic models of a spin-1/2 particle under noncommuting observables.

Two ensembles over the Bloch-ball state space are implemented and compared:

* :mod:`spinthermo.semiclassical` -- the maximum-entropy density matrix fit
  to the expectation values of two noncommuting Pauli observables, with its
  closed-form mean, variance and covariance maps;
* :mod:`spinthermo.bures` -- the Boltzmann ensemble weighted against the
  geometry-induced measure of the state space (uniform pi/8 on the unit disk
  for two observables, the singular ball measure for three), evaluated by
  deterministic adaptive quadrature.

:mod:`spinthermo.specfun` supplies the modified-Bessel machinery behind the
one-parameter magnetization laws; :mod:`spinthermo.analysis` builds curves,
surfaces, difference maps and inverse-temperature fits; :mod:`spinthermo.cli`
exposes everything as a command-line tool.
"""

from spinthermo.quadrature import QuadResult, QuadratureError, Tolerance
from spinthermo.specfun import (
    bessel_i,
    bessel_i_scaled,
    bessel_j0,
    bessel_ratio,
    heat_capacity,
    magnetization,
    magnetization_slope,
)

__version__ = "0.1.0"

__all__ = [
    "QuadResult",
    "QuadratureError",
    "Tolerance",
    "bessel_i",
    "bessel_i_scaled",
    "bessel_j0",
    "bessel_ratio",
    "heat_capacity",
    "magnetization",
    "magnetization_slope",
    "__version__",
]
