"""Tour of the exact layer: classes, Pell solutions, genus characters.

Run:  python3 demos/class_data.py
"""

from localforms import class_representatives, pell_fundamental
from localforms.arith import fundamental_divisors
from localforms.characters import GenusCharacter, genus_char

for D in (5, 8, 12, 13, 20, 40, 60):
    reps = class_representatives(D)
    pell = pell_fundamental(D)
    print(f"D = {D}: h = {len(reps)}, Pell (t, r) = ({pell.t}, {pell.r})")
    divs = fundamental_divisors(D)
    header = "  form".ljust(16) + "".join(f"chi_{d}".rjust(8) for d in divs)
    print(header)
    for Q in reps:
        row = f"  {Q}".ljust(16)
        for d in divs:
            row += str(genus_char(GenusCharacter(d, D), Q)).rjust(8)
        print(row)
    print()
