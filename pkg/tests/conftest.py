import cmath
from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from mckay.cyclotomic import Cyclotomic

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def numeric(x: Cyclotomic) -> complex:
    """Independent floating evaluation from the stored power-basis terms."""
    return sum(float(c) * cmath.exp(2j * cmath.pi * e / x.N) for e, c in x.items())


small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclotomics(draw, conductors=(1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 20, 24)):
    N = draw(st.sampled_from(conductors))
    exps = draw(st.lists(st.integers(0, 2 * N), max_size=4))
    acc = {}
    for e in exps:
        acc[e] = acc.get(e, Fraction(0)) + draw(small_fractions)
    return Cyclotomic.from_group_ring(N, acc)
