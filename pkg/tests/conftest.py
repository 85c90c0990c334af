from fractions import Fraction

import pytest

from cubeq import Family, SignSets, SubsetMask


def mask(n, *elements):
    return SubsetMask.from_elements(n, elements)


def family(n, *element_lists):
    return Family.of(n, (SubsetMask.from_elements(n, e) for e in element_lists))


def signsets(n, *element_lists):
    return SignSets.of(n, (SubsetMask.from_elements(n, e) for e in element_lists))


@pytest.fixture
def frac():
    return Fraction
