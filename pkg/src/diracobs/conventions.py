"""Sign and index conventions, fixed once for the whole package.

Everything downstream derives its signs from the constants and statements
collected here; nothing re-derives them locally.

* Metric signature: ``eta = diag(1, -1, -1, -1)``.  Momentum variables are
  the contravariant components ``p0..p3``; index lowering is always written
  out explicitly, ``P_mu = eta_{mu mu} p^mu`` (the metric is diagonal).
* Bracket normalization: ``(A, B) = (A*B - B*A) / (i*hbar)``.  The canonical
  pair is fixed by ``(P_mu, x_nu) = -eta_{mu nu}``.  Equivalently, a
  coefficient ``f(p, w)`` moves right past a position generator as
  ``f * x_nu = x_nu * f - i*hbar * df/dp^nu``, which is the single rewrite
  rule of the normal-form engine.
* Levi-Civita tensor: ``eps_{0123} = +1`` and hence ``eps^{0123} = -1``
  (one timelike, three spacelike indices).
* Accelerated-frame series: the shift of ``A`` is ``sum_n ad^n(A)/n!`` with
  ``ad(A) = SIGMA * (A, alpha^rho C_rho)`` and ``SIGMA = +1``.  The branch is
  anchored by requiring the alpha-linear term of the order-1 mass shift to
  be ``-2 * M . (alpha^mu x_mu)`` (symmetrised product); the anchor is kept
  as a test.
* Adjoint: the antilinear anti-automorphism that fixes ``p``, ``w``,
  ``hbar``, ``alpha`` and the built ``M``, ``D``, ``J``, ``gamma5``.  Its
  generator images, derived by the oracle kept in the test suite, are

      x_mu^+     = x_mu + 2i * gamma5 * W_mu / M^2
      gamma_mu^+ = 2 V_mu - gamma_mu

  and they are shipped as constants (see ``observables.adjoint``).
"""

from fractions import Fraction

#: Diagonal of the Minkowski tensor, signature (+, -, -, -).
SIGNATURE = (Fraction(1), Fraction(-1), Fraction(-1), Fraction(-1))

#: Sign of the adjoint action in the conjugation series.
SIGMA = 1

#: Value of the fully lowered Levi-Civita symbol on (0, 1, 2, 3).
EPS0123 = 1

#: Default truncation order for acceleration series (CLI / suite default).
DEFAULT_ORDER = 3


def eta(mu: int) -> Fraction:
    """Diagonal metric entry eta_{mu mu}."""
    return SIGNATURE[mu]
