import math

import pytest

from diophlab.config import FormParams
from diophlab.primes import sieve


@pytest.fixture(scope="session")
def table():
    return sieve(2 * 10**5)


@pytest.fixture(scope="session")
def sqrt2_params():
    return FormParams(math.sqrt(2), -1.0, 1.0, 1.2, math.pi, 0.1, 0.05)


@pytest.fixture(scope="session")
def goldbach_params():
    return FormParams(1.0, 1.0, -1.0, 1.0, 0.0, 0.1, 0.01, irrational=False)


def trial_division_primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]
