import ipdb

from algebra.calculus import module_calculus
from algebra.matrix import PolyMatrix
from algebra.modules import FpModule
from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from complexes.cohomology import cohomology, cohomology_module, is_acyclic, is_quasi_iso
from complexes.complex import Complex, ComplexMap, complex_from_matrices
from complexes.graded import graded_cohomology_dimension, graded_map_cell
from complexes.reduction import minimize
from koszul.tower import KoszulTower, koszul_complex

QQ = CoefficientField()


def test_koszul_cohomology_of_a_regular_pair():
    ring = RingPresentation(QQ, ["x", "y"])
    sequence = ElementSequence(ring, ["x", "y"])
    k = koszul_complex(sequence)

    assert cohomology(k, -2).is_zero()
    assert cohomology(k, -1).is_zero()
    assert module_calculus(KoszulTower(sequence, 1).h0_comparison(1)).is_isomorphism


def test_koszul_complex_of_a_zero_element():
    ring = RingPresentation(QQ, ["x"], ["x^2"])
    k = koszul_complex(ElementSequence(ring, ["x^2"]))

    h = cohomology(k, -1)

    assert h.rank == 1
    assert h.is_free


def test_cycle_classes_over_the_dual_numbers():
    ring = RingPresentation(QQ, ["x"], ["x^2"])
    x = ring.var("x")
    k = koszul_complex(ElementSequence(ring, ["x"]))

    h = cohomology_module(k, -1)

    # H^{-1}(K(x)) over ℚ[x]/(x²) is ann(x) = (x).
    assert h.module.rank == 1
    assert not h.is_zero()
    assert h.express((x,)) != (ring.zero,)


def test_identity_is_a_quasi_isomorphism():
    ring = RingPresentation(QQ, ["x", "y"])
    k = koszul_complex(ElementSequence(ring, ["x", "y"]))

    assert is_quasi_iso(ComplexMap.identity(k))


def test_multiplication_is_not_a_quasi_isomorphism():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")
    unit = Complex.unit(ring)

    verdict = is_quasi_iso(ComplexMap(unit, unit, {0: PolyMatrix(ring, 1, [(x,)])}))

    assert not verdict
    assert list(verdict.failures) == [0]
    assert verdict.failures[0]["kernel"] == []
    assert len(verdict.failures[0]["cokernel"]) == 1


def test_koszul_augmentation_onto_the_quotient():
    ring = RingPresentation(QQ, ["x"])
    k = koszul_complex(ElementSequence(ring, ["x"]))
    quotient = Complex.concentrated(FpModule.cyclic(ring, ["x"]))

    augmentation = ComplexMap(k, quotient, {0: PolyMatrix.identity(ring, 1)})

    assert is_quasi_iso(augmentation)


def test_minimize_cancels_unit_entries():
    ring = RingPresentation(QQ, ["x"])
    x = complex_from_matrices(ring, {-1: 2, 0: 2}, {-1: [["1", "0"], ["0", "x"]]})

    reduction = minimize(x)

    assert reduction.reduced.rank_profile() == {-1: 1, 0: 1}
    reduction.projection.verify()
    reduction.inclusion.verify()
    assert reduction.projection.compose(reduction.inclusion).equals(ComplexMap.identity(reduction.reduced))
    assert not is_acyclic(x)


def test_graded_cohomology_of_a_koszul_complex():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 1])
    k = koszul_complex(ElementSequence(ring, ["x^2", "y"]))

    dimensions = [graded_cohomology_dimension(k, 0, d) for d in range(4)]

    assert dimensions == [1, 1, 0, 0]
    assert all(graded_cohomology_dimension(k, -1, d) == 0 for d in range(5))


def test_graded_map_cell_of_the_augmentation():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 1])
    k = koszul_complex(ElementSequence(ring, ["x", "y"]))
    quotient = Complex.concentrated(FpModule.cyclic(ring, ["x", "y"]))

    augmentation = ComplexMap(k, quotient, {0: PolyMatrix.identity(ring, 1)})
    cell = graded_map_cell(augmentation, 0, 0)

    assert cell.is_isomorphism


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_koszul_cohomology_of_a_regular_pair()
        test_koszul_complex_of_a_zero_element()
        test_cycle_classes_over_the_dual_numbers()
        test_identity_is_a_quasi_isomorphism()
        test_multiplication_is_not_a_quasi_isomorphism()
        test_koszul_augmentation_onto_the_quotient()
        test_minimize_cancels_unit_entries()
        test_graded_cohomology_of_a_koszul_complex()
        test_graded_map_cell_of_the_augmentation()
