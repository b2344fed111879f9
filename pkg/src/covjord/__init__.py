"""covjord: exact covariant bi-differential operator families on simple
real Jordan algebras, with symbolic certificates and numeric cross-checks.

Layers, bottom up:

  scalars      exact coefficient ring Q[s,t,lam,mu][tau,tau^-1]
  polynomials  sparse multivariate polynomials over it, exact division
  fischer      derivative pairing, derivative spaces, product-rule expansion
  jordan       concrete simple real Jordan algebras + classification registry
  detpower     det-power calculus: factorization identities, operator family
  weyl         normal-ordered differential operators, Fourier conjugation
  conformal    quadric model, cocycles, infinitesimal action, covariance
  rpq          explicit quadratic-space operators and the bracket family
  zeta         gamma factors, functional-equation matrices, numeric checks
  suites, cli  seeded verification suites and the command-line runner
"""

from .jordan import algebra_from_spec, registry_json, registry_rows

__version__ = "0.1.0"

__all__ = ["algebra_from_spec", "registry_rows", "registry_json", "__version__"]
