import random
from fractions import Fraction

import pytest

from instanton.poly import Poly, RingDescriptor


def random_poly(rng: RingDescriptor, rand: random.Random, terms: int = 5,
                max_exp: int = 2, coeff_bound: int = 9) -> Poly:
    """Small random polynomial with nonzero rational coefficients."""
    out = {}
    for _ in range(terms):
        exps = tuple(rand.randint(0, max_exp) for _ in range(rng.nvars))
        num = rand.randint(-coeff_bound, coeff_bound) or 1
        den = rand.randint(1, 4)
        out[exps] = Fraction(num, den)
    return Poly(rng, out)


@pytest.fixture
def rand():
    return random.Random(20240817)
