import ipdb
import numpy as np
import pytest

from algebra.ring import CoefficientField, ElementSequence, RingMap, RingPresentation, polynomial_ring
from constants.errors import GradingError, ScenarioError, ZeroRingError

QQ = CoefficientField()


def _random_polynomial(ring, rng, terms=4, degree=3):
    f = ring.zero
    for _ in range(terms):
        monom = tuple(int(e) for e in rng.integers(0, degree + 1, size=len(ring.variables)))
        f += ring.constant(int(rng.integers(-5, 6))) * ring.monomial(monom)
    return f


def test_quotient_reduces_products():
    ring = RingPresentation(QQ, ["x"], ["x^2"])
    x = ring.var("x")

    assert ring.reduce(x * x) == ring.zero
    assert ring.parse("x^3 + x + 1") == x + ring.one


def test_polynomial_ring_is_graded_when_weighted():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 1])

    assert ring.is_graded
    assert ring.is_polynomial_ring
    assert ring.hilbert_function(range(4)) == {0: 1, 1: 2, 2: 3, 3: 4}


def test_zero_ring_is_rejected():
    with pytest.raises(ZeroRingError):
        RingPresentation(QQ, ["x"], ["x", "1 - x"])


def test_non_homogeneous_quotient_under_grading_is_rejected():
    with pytest.raises(GradingError):
        RingPresentation(QQ, ["x", "y"], ["x*y - 1"], weights=[1, 1])


def test_prime_field_and_parsing_errors():
    assert CoefficientField.parse("GF(7)").characteristic == 7
    with pytest.raises(ValueError):
        CoefficientField(6)

    ring = polynomial_ring(["x", "y"])
    with pytest.raises(ScenarioError) as error:
        ring.parse("x + z")
    assert error.value.column == 5


def test_normal_forms_are_canonical():
    rng = np.random.default_rng(seed=1337)
    ring = RingPresentation(QQ, ["x", "y"], ["x^2 - y^3", "x*y^2"])

    for _ in range(16):
        f = _random_polynomial(ring, rng)
        g = _random_polynomial(ring, rng)
        assert ring.reduce(f + g) == ring.reduce(ring.reduce(f) + ring.reduce(g))


def test_standard_monomials_of_quotient():
    ring = RingPresentation(QQ, ["x", "y"], ["x^2", "y^2"], weights=[1, 1])

    assert ring.hilbert_function(range(4)) == {0: 1, 1: 2, 2: 1, 3: 0}


def test_sequence_powers_and_degrees():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 2])
    sequence = ElementSequence(ring, ["x", "y"])

    assert sequence.power(3).elements == (ring.parse("x^3"), ring.parse("y^3"))
    assert sequence.degrees() == (1, 2)
    assert sequence.power(2).degrees() == (2, 4)


def test_vanishing_powers_keep_their_degrees():
    source = RingPresentation(QQ, ["x"], weights=[1])
    dual_numbers = RingPresentation(QQ, ["x"], ["x^2"], weights=[1])
    sequence = ElementSequence(dual_numbers, ["x"])

    assert sequence.power(2).elements == (dual_numbers.zero,)
    assert sequence.power(2).degrees() == (2,)
    assert sequence.power(3).degrees() == (3,)
    image = RingMap(source, dual_numbers, ["x"]).apply_sequence(ElementSequence(source, ["x^2"]))
    assert image.elements == (dual_numbers.zero,)
    assert image.degrees() == (2,)


def test_ring_map_must_kill_the_ideal():
    source = RingPresentation(QQ, ["x"], ["x^2"])
    target = RingPresentation(QQ, ["t"], ["t^4"])

    phi = RingMap(source, target, ["t^2"])
    assert phi(source.parse("1 + x")) == target.parse("1 + t^2")

    with pytest.raises(ValueError):
        RingMap(source, target, ["t"])


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_quotient_reduces_products()
        test_polynomial_ring_is_graded_when_weighted()
        test_zero_ring_is_rejected()
        test_non_homogeneous_quotient_under_grading_is_rejected()
        test_prime_field_and_parsing_errors()
        test_normal_forms_are_canonical()
        test_standard_monomials_of_quotient()
        test_sequence_powers_and_degrees()
        test_vanishing_powers_keep_their_degrees()
        test_ring_map_must_kill_the_ideal()
