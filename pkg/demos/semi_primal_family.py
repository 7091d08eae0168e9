"""
A semi-primal family
====================

Y_n is an n-chain with f shifting each point one step up and fixing the top,
and g reversing the chain.  Its dual
algebra A_n is semi-primal: every operation preserving the subalgebras is a
term.  The inner check is that f^(n-1) is constant on Y_n.
"""

import numpy as np

from priestley import semi_primal
from priestley import corpus
from priestley.cornish import Word, word_action_space

for n in (2, 3, 4):
    a = corpus.get(f"A{n}")
    v = semi_primal(a)
    y = corpus.get(f"Y{n}")
    word = " ".join("f" * (n - 1))
    img = np.array(word_action_space(Word.parse(y.sig, word), y))
    print(f"A{n}: {a.n} elements, semi-primal {v.outcome}; f^{n - 1} on Y{n} = {img}, constant {np.all(img == img[0])}")
