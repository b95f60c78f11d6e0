import ipdb
import pytest

from algebra.modules import FpModule
from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from cech.level import CechSystem, cech_hom_system, cech_level, cech_transition, cech_tuples, derived_localization
from complexes.complex import Complex

QQ = CoefficientField()


def test_tuples_are_strictly_increasing():
    assert cech_tuples(3, 0) == [(0,), (1,), (2,)]
    assert cech_tuples(3, 1) == [(0, 1), (0, 2), (1, 2)]
    assert cech_tuples(2, 2) == []


def test_two_element_level_complex():
    ring = RingPresentation(QQ, ["x", "y"])
    x, y = ring.gens

    level = cech_level(ElementSequence(ring, ["x", "y"]), 1)

    assert level.complex.rank_profile() == {0: 2, 1: 1}
    assert level.complex.d(0).matrix.rows()[0] == (-y, x)
    assert level.base((0, 1)) == x * y


def test_coboundary_squares_to_zero():
    ring = RingPresentation(QQ, ["x", "y", "z"])

    level = cech_level(ElementSequence(ring, ["x", "y", "z"]), 2)

    assert level.complex.rank_profile() == {0: 3, 1: 3, 2: 1}
    assert level.complex.d(1).compose(level.complex.d(0)).is_zero()


def test_one_element_lives_in_degree_zero():
    ring = RingPresentation(QQ, ["x"])

    level = cech_level(ElementSequence(ring, ["x"]), 3)

    assert level.complex.degrees == (0,)
    assert level.denominator((0,)) == ring.coerce("x^3")


def test_graded_generators_sit_in_negative_degrees():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 2])

    level = cech_level(ElementSequence(ring, ["x", "y"]), 2)

    assert level.generator_degree((0,)) == -2
    assert level.generator_degree((0, 1)) == -6
    assert level.complex.is_graded


def test_levels_start_at_one():
    ring = RingPresentation(QQ, ["x"])

    with pytest.raises(ValueError):
        cech_level(ElementSequence(ring, ["x"]), 0)


def test_transitions_carry_the_localization_maps():
    ring = RingPresentation(QQ, ["x", "y"])
    system = CechSystem(ElementSequence(ring, ["x", "y"]), 3)

    for j in (1, 2):
        transition = system.system.transition(j)
        transition.verify()
        assert transition.compose(system.localization(j)).equals(system.localization(j + 1))


def test_transitions_connect_adjacent_levels_only():
    ring = RingPresentation(QQ, ["x"])
    sequence = ElementSequence(ring, ["x"])

    with pytest.raises(ValueError):
        cech_transition(cech_level(sequence, 1), cech_level(sequence, 3))


def test_derived_localization_of_a_torsion_module_vanishes():
    ring = RingPresentation(QQ, ["x"])
    m = FpModule.cyclic(ring, ["x"])

    localization = derived_localization(m, ElementSequence(ring, ["x"]), 4)

    assert localization.vanishing().complete
    localization.localization(2).verify()


def test_derived_localization_of_the_ring_survives():
    ring = RingPresentation(QQ, ["x"])

    localization = derived_localization(FpModule.free(ring, 1), ElementSequence(ring, ["x"]), 4)

    assert not localization.vanishing().complete


def test_hom_system_levels():
    ring = RingPresentation(QQ, ["x"])

    hom = cech_hom_system(ElementSequence(ring, ["x"]), Complex.unit(ring), 3)

    assert hom.level(2).rank_profile() == {0: 1}
    assert not hom.transition(1).is_zero()


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_tuples_are_strictly_increasing()
        test_two_element_level_complex()
        test_coboundary_squares_to_zero()
        test_one_element_lives_in_degree_zero()
        test_graded_generators_sit_in_negative_degrees()
        test_levels_start_at_one()
        test_transitions_carry_the_localization_maps()
        test_transitions_connect_adjacent_levels_only()
        test_derived_localization_of_a_torsion_module_vanishes()
        test_derived_localization_of_the_ring_survives()
        test_hom_system_levels()
