"""
Ockham cycles and the discriminator
===================================

C_m is the m-antichain with g a cyclic shift.  Its dual algebra has a
discriminator term exactly when m is odd.  For even m the failure is
visible as a product subalgebra that is neither a product nor a graph.
"""

import numpy as np

from priestley import E, quasi_primal_pair
from priestley.cornish import Word, orbit
from priestley.ockham import build_Cm
from priestley.primality import even_cycle_witness

for m in range(1, 5):
    x = build_Cm(m)
    a = E(x)
    v = quasi_primal_pair(a, a)
    print(f"C{m}: |E(C{m})| = {a.n:2d}, quasi-primal: {v.outcome} ({v.route})")

# the orbit of point 0 under g reaches a cycle of length m
for m in (3, 4):
    o = orbit(build_Cm(m), 0, Word.parse(build_Cm(m).sig, "g"))
    print(f"orbit of 0 in C{m}:", o)

# even m: split the cycle into even and odd steps and map onto a 3-chain
w = even_cycle_witness(2)
print("witness images phi1:", w.pair.phi1.img, "phi2:", w.pair.phi2.img)
members = np.array([(w.subuniverse.members >> i) & 1 for i in range(16)]).reshape(4, 4)
print("witness subalgebra of E(C2) x E(C2) as a 0/1 grid:\n", members)
print("kind:", w.kind)
