"""
An internal test for quasi-primality
====================================

Rather than search a product for subalgebras, one can look inside the dual
spaces: if an order-reversing unary term pushes every point onto an odd
cycle and no space has a proper substructure, the dual algebras share a
discriminator.  The three spaces X1, X2, X3 of the corpus all pass with the
term f f g.
"""

from priestley import E, internal_sufficient, quasi_primal_pair
from priestley import corpus
from priestley.cornish import Word, word_action_space

xs = [corpus.get(k) for k in ("X1", "X2", "X3")]
t = Word.parse(xs[0].sig, "f f g")
for k, x in enumerate(xs, 1):
    print(f"X{k}: {x.n} points, f f g acts as {word_action_space(t, x)}")

v = internal_sufficient(xs, "f f g")
print("orbit criterion:", v.outcome)

# the brute-force route agrees where the product is small enough
a2 = E(xs[1])
print("E(X2) has", a2.n, "elements; brute force on E(X2)^2:", quasi_primal_pair(a2, a2).outcome)

# E(X1) has 128 elements, so its square is past the default product guard
a1 = E(xs[0])
print("E(X1)^2 by brute force:", quasi_primal_pair(a1, a1).outcome)

# a single g is not enough on these spaces
print("with g alone:", internal_sufficient(xs, "g").outcome)
