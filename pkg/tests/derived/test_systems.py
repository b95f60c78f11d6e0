import ipdb
import pytest

from algebra.modules import FpModule
from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from complexes.cohomology import cohomology
from complexes.complex import Complex
from complexes.graded import graded_cohomology_dimension
from constants.errors import ComplexError, ValidityWindowError
from derived.systems import cohomology_bounds, free_model, llambda, rgamma
from derived.window import graded_window_table

QQ = CoefficientField()


def test_local_cohomology_of_the_plane_at_level_two():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 1])

    system = rgamma(FpModule.free(ring, 1, [0]), ElementSequence(ring, ["x", "y"]), 2)
    level = system.level(2)

    # H^2 = A/(x^2, y^2) with top generator in internal degree -4.
    assert sum(graded_cohomology_dimension(level, 2, d) for d in range(-8, 1)) == 4
    assert cohomology(level, 0).is_zero()
    assert cohomology(level, 1).is_zero()
    assert system.bounds_hold(2)


def test_stable_top_cohomology_in_a_window():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 1])
    system = rgamma(FpModule.free(ring, 1, [0]), ElementSequence(ring, ["x", "y"]), 4)

    table = graded_window_table(system.system, (-3, 0))

    assert table.is_stable
    assert table.dimensions(2) == {-3: 2, -2: 1, -1: 0, 0: 0}
    assert table.entries[(2, -3)].stable_level == 2
    assert list(table.as_dict()) == [2]


def test_v_map_and_the_triangle():
    ring = RingPresentation(QQ, ["x", "y"])
    m = FpModule.cyclic(ring, ["x^2", "y"])
    system = rgamma(m, ElementSequence(ring, ["x", "y"]), 3)

    assert system.torsion().level == 2
    with pytest.raises(ValueError):
        system.v_map(1)
    assert system.triangle_holds(2)
    assert system.triangle_holds(3)


def test_sigma_lands_in_the_module():
    ring = RingPresentation(QQ, ["x"])
    system = rgamma(FpModule.cyclic(ring, ["x"]), ElementSequence(ring, ["x"]), 2)

    sigma = system.sigma(2)

    sigma.verify()
    assert sigma.target is system.module
    assert sigma is system.sigma(2)


def test_cohomology_bounds():
    ring = RingPresentation(QQ, ["x"])

    assert cohomology_bounds(Complex.concentrated(FpModule.free(ring, 1), 3)) == (3, 3)
    assert cohomology_bounds(Complex.zero(ring)) is None


def test_llambda_of_a_polynomial_ring_needs_no_resolution():
    ring = RingPresentation(QQ, ["t"])

    tower = llambda(FpModule.free(ring, 1), ElementSequence(ring, ["t"]), 3)

    assert tower.resolution is None
    assert tower.floor is None
    for j in (1, 2, 3):
        assert tower.xi_holds(j)
        assert tower.u_compatible(j)
        assert tower.bounds_hold(j)
    assert not cohomology(tower.level(2), 0).is_zero()


def test_llambda_of_the_residue_field_resolves_it():
    ring = RingPresentation(QQ, ["x", "y"])

    tower = llambda(FpModule.cyclic(ring, ["x", "y"]), ElementSequence(ring, ["x", "y"]), 2)

    assert tower.resolution is not None
    assert not tower.resolution.truncated
    assert tower.free.rank_profile() == {-2: 1, -1: 2, 0: 1}
    assert tower.xi_holds(1)
    assert tower.bounds_hold(1)


def test_truncated_resolution_bounds_the_valid_degrees():
    ring = RingPresentation(QQ, ["x"], ["x^2"])

    tower = llambda(FpModule.cyclic(ring, ["x"]), ElementSequence(ring, ["x"]), 2, length=2)

    assert tower.resolution.truncated
    assert tower.floor == -1
    tower.check(-1)
    with pytest.raises(ValidityWindowError):
        tower.cohomology(1, -2)


def test_free_model_rejects_spread_out_non_free_complexes():
    ring = RingPresentation(QQ, ["x"])
    m = FpModule.cyclic(ring, ["x"])

    with pytest.raises(ComplexError):
        free_model(Complex(ring, {0: m, 1: m}, {}), None, 1)


def test_free_model_shifts_a_module_placed_in_another_degree():
    ring = RingPresentation(QQ, ["x"])
    m = Complex.concentrated(FpModule.cyclic(ring, ["x"]), 2)

    p, resolution, degree = free_model(m, None, 1)

    assert degree == 2
    assert p.rank_profile() == {1: 1, 2: 1}
    assert not resolution.truncated


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_local_cohomology_of_the_plane_at_level_two()
        test_stable_top_cohomology_in_a_window()
        test_v_map_and_the_triangle()
        test_sigma_lands_in_the_module()
        test_cohomology_bounds()
        test_llambda_of_a_polynomial_ring_needs_no_resolution()
        test_llambda_of_the_residue_field_resolves_it()
        test_truncated_resolution_bounds_the_valid_degrees()
        test_free_model_rejects_spread_out_non_free_complexes()
        test_free_model_shifts_a_module_placed_in_another_degree()
