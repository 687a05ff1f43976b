"""Print heralding probabilities and fidelities next to the brute-force density result.

Shows where the textbook presence fidelity departs from the exact value (N = 2).
"""

import math

from wherald import analytic as an
from wherald.channels import averaged_channel
from wherald.encoding import LogicalQubit, decode_density, encode
from wherald.fock import apply_uniform_loss
from wherald.herald import herald

q = LogicalQubit(1 / math.sqrt(2), 1 / math.sqrt(2))
eta = 0.1
print(f"{'N':>4} {'lambda':>7} {'P_Hp':>9} {'P_Ha':>9} {'F_Hp sim':>9} {'F_Hp':>9} {'textbook':>9}")
for n in (2, 3, 4, 8, 16, 64):
    for lam in (0.0, 0.5, 0.9):
        d = apply_uniform_loss(decode_density(averaged_channel(encode(q, n), lam)), eta)
        p = herald(d, q, "presence")
        print(
            f"{n:>4} {lam:>7.2f} {an.p_herald_presence(lam, eta, n):>9.6f} "
            f"{an.p_herald_absence(lam, eta, n):>9.6f} {p.fidelity:>9.6f} "
            f"{an.f_herald_presence(lam, q, n):>9.6f} {an.f_presence_table(lam, q, n):>9.6f}"
        )
