"""Slow, independent reference computations used by the tests."""
import itertools


def brute_h0(lat, degrees, m, p=3):
    """dim H^0 by listing every polynomial section and testing lattice membership (prime fields)."""
    r = lat.r
    slots = [(k, i) for i in range(r) for k in range(lat.low, degrees[i] + m + 1)]
    count = 0
    for vals in itertools.product(range(p), repeat=len(slots)):
        vec = {}
        for (k, i), x in zip(slots, vals):
            vec.setdefault(k, [0] * r)[i] = x
        if lat.contains(vec):
            count += 1
    h = 0
    while count > 1:
        assert count % p == 0
        count //= p
        h += 1
    return h


def h0_of_type(split_type, m):
    return sum(max(0, b + m + 1) for b in split_type)


def slots(lat, degrees, m):
    return sum(max(0, a + m - lat.low + 1) for a in degrees)
