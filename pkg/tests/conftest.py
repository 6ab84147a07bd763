import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from seqchain import families
from seqchain.sequences import FiniteRational, zero
from seqchain.supports import Arith, PowersOfTwo

settings.register_profile(
    "ci", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=60
)
settings.load_profile("ci")

BUDGET = 4096
PREC = 64


def catalog():
    """Representative sequences covering every membership behaviour."""
    evens = Arith(0, 2)
    return {
        "zero": zero(),
        "finite": FiniteRational({0: Fraction(3, 4), 2: (Fraction(1, 2), Fraction(-1, 3))}),
        "prop28": families.prop28(),
        "rem29-evens": families.rem29(Arith(0, 2)),
        "rem29-pow2": families.rem29(PowersOfTwo()),
        "nat": families.nat(),
        "nat-power": families.nat_power(),
        "nn-evens": families.nn_on_support(evens),
        "const-one": families.const_one(),
        "gap-lp-cap-1": families.gap_lp_cap(Fraction(1)),
        "gap-lp-cap-2": families.gap_lp_cap(Fraction(2)),
        "gap-cap-lp-01": families.gap_cap_lp(Fraction(0), Fraction(1)),
        "gap-cap-lp-12": families.gap_cap_lp(Fraction(1), Fraction(2)),
        "gap-cap-c0": families.gap_cap_c0(Fraction(2)),
    }


@pytest.fixture(scope="session")
def catalog_sequences():
    return catalog()


def random_rational(rng: random.Random, span: int = 8) -> Fraction:
    num = rng.randint(-span, span)
    den = rng.randint(1, span)
    return Fraction(num, den)


def random_finite(rng: random.Random, *, real_only=False, max_index=12) -> FiniteRational:
    entries = {}
    for _ in range(rng.randint(0, 6)):
        n = rng.randint(0, max_index)
        re = random_rational(rng)
        im = Fraction(0) if real_only else random_rational(rng)
        entries[n] = (re, im)
    return FiniteRational(entries)
