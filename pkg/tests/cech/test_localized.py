import ipdb
import pytest

from algebra.ring import CoefficientField, RingPresentation
from cech.localized import LocalizedElement, localized

QQ = CoefficientField()


def test_fractions_with_different_exponents_compare_equal():
    ring = RingPresentation(QQ, ["x", "y"])

    assert localized(ring, "x", "x", 1) == localized(ring, "x", 1, 0)
    assert localized(ring, "x", "y", 1) != localized(ring, "x", 1, 0)


def test_elements_killed_by_a_power_of_the_base_vanish():
    ring = RingPresentation(QQ, ["x", "y"], quotient=["x*y"])

    assert localized(ring, "x", "y", 0).is_zero()
    assert not localized(ring, "x", "x", 0).is_zero()
    assert not localized(RingPresentation(QQ, ["x", "y"]), "x", "y", 0).is_zero()


def test_arithmetic_over_a_common_base():
    ring = RingPresentation(QQ, ["x"])
    inverse = localized(ring, "x", 1, 1)

    assert inverse + inverse == localized(ring, "x", 2, 1)
    assert inverse * localized(ring, "x", "x", 0) == localized(ring, "x", 1, 0)
    assert (inverse + (-inverse)).is_zero()


def test_restriction_multiplies_into_the_larger_base():
    ring = RingPresentation(QQ, ["x", "y"])

    restricted = localized(ring, "x", 1, 1).restrict("y")

    assert restricted.base == ring.coerce("x*y")
    assert restricted == localized(ring, "x*y", "y", 1)


def test_normalized_finds_the_least_exponent():
    ring = RingPresentation(QQ, ["x"])

    reduced = localized(ring, "x", "x^2", 3).normalized()

    assert reduced.exponent == 1
    assert reduced == localized(ring, "x", 1, 1)


def test_normalized_zero():
    ring = RingPresentation(QQ, ["x", "y"], quotient=["x*y"])

    reduced = localized(ring, "x", "y", 2).normalized()

    assert reduced.exponent == 0
    assert not reduced.numerator


def test_invalid_elements():
    ring = RingPresentation(QQ, ["x", "y"])

    with pytest.raises(ValueError):
        LocalizedElement(ring, "x", 1, -1)
    with pytest.raises(ValueError):
        localized(ring, "x", 1, 1) + localized(ring, "y", 1, 1)


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_fractions_with_different_exponents_compare_equal()
        test_elements_killed_by_a_power_of_the_base_vanish()
        test_arithmetic_over_a_common_base()
        test_restriction_multiplies_into_the_larger_base()
        test_normalized_finds_the_least_exponent()
        test_normalized_zero()
        test_invalid_elements()
