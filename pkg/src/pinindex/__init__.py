"""Exact computations around a mod 2 index theorem for pin^- manifolds.

Modules
-------
clifford     Clifford algebras c(R^n), pin^- words, explicit representations
exterior     operators on Lambda((R^m)^*) and the harmonic-oscillator identities
projective   Stiefel-Whitney classes of RP^q and the pin^- criterion
ko           KO(RP^{8k+2}) and the topological index q
series       exact truncated power series in the Euler class e
charclasses  graded polynomials in p_i and e, A-hat, ch, pairings
congruence   assemble-and-check for the Rokhlin-type congruences
verify       property suites behind ``pinindex verify-all``
"""

from ._kernels import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
