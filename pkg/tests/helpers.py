"""Shared generators for the test suite."""

import random

from hypothesis import strategies as st

from xaconf.groupoid import SigmaPoint, YPoint, make_element

LETTERS = st.integers(min_value=1, max_value=4)
SIGNS = st.sampled_from([1, -1])


def signed_words(max_size=12):
    return st.lists(st.tuples(LETTERS, SIGNS), max_size=max_size)


def leading_letter(p):
    if isinstance(p, YPoint):
        return p.stem[0] if p.stem else None
    return p.preperiod[0] if p.preperiod else p.period[0]


def prepend(p, a):
    if isinstance(p, YPoint):
        return YPoint((a,) + p.stem)
    return SigmaPoint((a,) + p.preperiod, p.period)


def random_predecessor(p, rng: random.Random):
    first = leading_letter(p)
    if first is None:
        return prepend(p, 1)
    return prepend(p, rng.choice((1, first + 1)))


def random_tail(rng: random.Random):
    if rng.random() < 0.6:
        p = YPoint(())
        for _ in range(rng.randint(0, 4)):
            p = random_predecessor(p, rng)
        return p
    k = rng.randint(1, 4)
    return SigmaPoint((), tuple(range(k, 0, -1)))


def random_branch(tail, length, rng):
    p = tail
    for _ in range(length):
        p = random_predecessor(p, rng)
    return p


def random_composable_pair(rng: random.Random):
    tail = random_tail(rng)
    a, b, c = (rng.randint(0, 5) for _ in range(3))
    x, y, z = (random_branch(tail, n, rng) for n in (a, b, c))
    return make_element(x, a - b, y), make_element(y, b - c, z)
