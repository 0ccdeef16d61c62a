#!/usr/bin/env python3
"""A first walk through the operator kernel.

Positions, momenta and Clifford generators live in one normal-form algebra:
every element is a sum of monomials x-part * Clifford-word * coefficient,
and equality is literal comparison of canonical forms.  This script builds
the canonical pairs and shows the single rewrite rule at work.
"""

from diracobs import NCElement, Scalar, bracket, dot

one = NCElement.one()
x0, x1 = NCElement.x(0), NCElement.x(1)
p0 = NCElement.from_scalar(Scalar.p(0))

print("The reordering rule moves a coefficient past a position:")
print("p0 * x0  ->")
print(p0 * x0)
print()

print("Canonical commutator (P_mu, x_nu) = -eta_{mu nu}:")
P0 = NCElement.from_scalar(Scalar.p_lower(0))
P1 = NCElement.from_scalar(Scalar.p_lower(1))
print("(P_0, x_0) =", bracket(P0, x0).render())
print("(P_1, x_1) =", bracket(P1, x1).render())
print("(P_0, x_1) =", bracket(P0, x1).render())
print()

print("Positions commute among themselves:")
print("(x_0, x_1) =", bracket(x0, x1).render())
print()

print("The square root w of p.p differentiates through the chain rule,")
print("so rational coefficients reorder exactly:")
wm2 = NCElement.from_scalar(Scalar.w_pow(-2))
print("w^-2 * x0  ->")
print(wm2 * x0)
print()

print("Brackets satisfy the Jacobi identity; a random-looking spot check:")
a = x0 * p0 + NCElement.gamma(1) * 2
b = x1 * x1 - NCElement.gamma5()
c = wm2 * NCElement.x(2) + one
jac = (bracket(a, bracket(b, c)) + bracket(b, bracket(c, a))
       + bracket(c, bracket(a, b)))
print("Jacobi residual is zero:", jac.is_zero)
print()

print("The symmetrised product builds hermitian combinations:")
print("gamma_1 . gamma_1 =", dot(NCElement.gamma(1), NCElement.gamma(1)).render())
print("gamma_1 . gamma_2 =", dot(NCElement.gamma(1), NCElement.gamma(2)).render())
