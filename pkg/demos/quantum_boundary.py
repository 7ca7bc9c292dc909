"""Rational boundary values of the indicator sum.

As tau approaches a rational point x vertically, the finite indicator-weighted
sum converges to an exact rational number depending only on x; the resulting
function of x is 1-periodic.  This is the quantum-modular face of the series.

Run:  python3 demos/quantum_boundary.py
"""

from fractions import Fraction

from localforms.series import EisParams, eis_tilde, quantum_limit

kappa, D = 6, 5
p = EisParams(kappa, D, 1, 0.0)

print(f"kappa = {kappa}, D = {D}")
print(f"{'x':>8} {'exact limit':>24} {'float':>16} {'tilde at x + i/10^4':>22}")
for x in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 7)):
    exact = quantum_limit(kappa, D, x)
    numeric = eis_tilde(p, float(x) + 1e-4j).real
    print(f"{str(x):>8} {str(exact):>24} {float(exact):16.6f} {numeric:22.6f}")

print()
x = Fraction(1, 3)
print(f"periodicity: limit({x}) == limit({x + 1}) == limit({x - 4}):",
      quantum_limit(kappa, D, x)
      == quantum_limit(kappa, D, x + 1)
      == quantum_limit(kappa, D, x - 4))
