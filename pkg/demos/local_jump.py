"""Local behavior of the completed weight-2 series across a geodesic.

The completed series is continuous off a locally finite net of geodesics and
jumps across each of them; the value on the net (summing with sgn(0) = 0)
equals the average of the two one-sided limits.

Run:  python3 demos/local_jump.py
"""

from localforms.cycles import geodesic_apex
from localforms.operators import local_behavior_report
from localforms.qforms import QForm
from localforms.series import eis2_hat

D, d = 5, 1
Q = QForm(1, 1, -1)
p = geodesic_apex(Q)
print(f"geodesic of {Q}, apex p = {p:.6f}")

f = lambda tau: eis2_hat(D, d, tau).value
rep = local_behavior_report(f, Q, eps_list=(4e-3, 2e-3, 1e-3))

print(f"limit from above : {rep['limit_above']:+.8f}")
print(f"limit from below : {rep['limit_below']:+.8f}")
print(f"jump             : {rep['jump']:+.8f}")
print(f"average          : {rep['average']:+.8f}")
print()
print("approach along p + i*eps and p - i*eps:")
for e, va, vb in zip((4e-3, 2e-3, 1e-3), rep["above"], rep["below"]):
    print(f"  eps = {e:.0e}:  above {va:+.8f}   below {vb:+.8f}")
