import numpy as np
from hypothesis import given, settings, strategies as st

from priestley.cornish import MINUS, _check_polarity_map
from priestley.verify import CRITERIA, random_order_reversing, random_poset


def test_twelve_criteria_registered():
    assert sorted(CRITERIA) == list(range(1, 13))
    assert all(limit > 0 for _, limit, _ in CRITERIA.values())


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8))
def test_random_maps_are_order_reversing(seed, n):
    rng = np.random.default_rng(seed)
    p = random_poset(rng, n)
    img = random_order_reversing(rng, p)
    _check_polarity_map(p, img, MINUS, "map")


def test_generator_is_seeded():
    a = [random_poset(np.random.default_rng(7), 6).up for _ in range(2)]
    assert a[0] == a[1]
