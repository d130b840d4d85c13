from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lgstate import Poly, RingSpec

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

R1 = RingSpec(("x",))
R2 = RingSpec(("x", "y"))
R3 = RingSpec(("x", "y", "z"))

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def polys(ring: RingSpec, max_deg: int = 3, max_terms: int = 4):
    exps = st.tuples(*[st.integers(0, max_deg)] * ring.n).filter(lambda e: sum(e) <= max_deg)
    return st.dictionaries(exps, small_rationals, max_size=max_terms).map(lambda d: Poly(ring, d))


@pytest.fixture
def r2():
    return R2


def F(x) -> Fraction:
    return Fraction(x)
