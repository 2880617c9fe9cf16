from fractions import Fraction

import pytest

from flopwall.flopgeom import FlopConfig


@pytest.fixture
def cfg21() -> FlopConfig:
    # resolved-conifold-sized instance used across the suites
    return FlopConfig(
        2, 1,
        (Fraction(31, 100), Fraction(-17, 100)),
        (Fraction(3, 25), Fraction(47, 100)),
    )


@pytest.fixture
def cfg31() -> FlopConfig:
    return FlopConfig(
        3, 1,
        (Fraction(31, 100), Fraction(-17, 100), Fraction(23, 100)),
        (Fraction(3, 25), Fraction(47, 100), Fraction(-29, 100)),
    )


@pytest.fixture
def cfg32() -> FlopConfig:
    return FlopConfig(
        3, 2,
        (Fraction(31, 100), Fraction(-17, 100), Fraction(23, 100)),
        (Fraction(3, 25), Fraction(47, 100), Fraction(-29, 100)),
    )


@pytest.fixture
def cfg42() -> FlopConfig:
    return FlopConfig(
        4, 2,
        (Fraction(31, 100), Fraction(-17, 100), Fraction(23, 100), Fraction(-41, 100)),
        (Fraction(3, 25), Fraction(47, 100), Fraction(-29, 100), Fraction(53, 100)),
    )
