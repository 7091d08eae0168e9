"""
Duality round trip on small posets
==================================

Every finite poset P comes back from its lattice of up-sets: the prime
filters of K(P) form a poset isomorphic to P.  This script walks through
that on a few posets and shows the lattice tables as numpy arrays.
"""

import numpy as np

from priestley import H, K, Poset
from priestley.birkhoff import eval_eps
from priestley.order import all_posets_up_to

# a 2-element antichain: its up-sets are the four subsets
p = Poset.from_pairs(2, [])
lat = K(p)
print("up-sets of the 2-antichain:", [bin(s) for s in lat.sets])
print("join table:\n", np.asarray(lat.join))

# the prime filters of K(P) come back as a poset with the same shape
q, filters = H(lat)
print("prime filters:", [bin(f) for f in filters], "order size", q.n)

# the evaluation map is an order isomorphism, for every poset up to 5 points
sizes = []
for n in range(1, 6):
    ps = list(all_posets_up_to(n))
    for x in ps:
        eval_eps(x)  # raises if it is not an isomorphism
    sizes.append(len(ps))
print("posets checked per size:", dict(zip(range(1, 6), sizes)))

# lattice sizes grow fast: the n-antichain gives 2^n up-sets, the n-chain n+1
for n in range(1, 7):
    chain = Poset.from_pairs(n, [(i, i + 1) for i in range(n - 1)])
    anti = Poset.from_pairs(n, [])
    print(f"n={n}: chain -> {K(chain).n:3d}, antichain -> {K(anti).n:3d}")
