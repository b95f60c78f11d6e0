import ipdb
import pytest

from algebra.calculus import module_calculus
from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from complexes.cohomology import cohomology
from koszul.tower import DualKoszulSystem, KoszulTower, dual_koszul, koszul_complex, koszul_transition

QQ = CoefficientField()


def test_koszul_ranks_are_binomial():
    ring = RingPresentation(QQ, ["x", "y", "z"])

    k = koszul_complex(ElementSequence(ring, ["x", "y", "z"]))

    assert k.rank_profile() == {-3: 1, -2: 3, -1: 3, 0: 1}
    k.verify()


def test_tower_levels_and_transitions():
    ring = RingPresentation(QQ, ["x", "y"])
    x, y = ring.gens
    tower = KoszulTower(ElementSequence(ring, ["x", "y"]), 3)

    transition = tower.transition(1)

    transition.verify()
    assert tower.level(2).d(-1).matrix.rows()[0] == (x**2, y**2)
    assert transition.at(0).matrix.columns == ((ring.one,),)
    # Degree -2 carries a·b with a = x and b = y.
    assert transition.at(-2).matrix.columns == ((x * y,),)


def test_transition_composite_matches_direct_formula():
    ring = RingPresentation(QQ, ["x", "y"])
    sequence = ElementSequence(ring, ["x", "y"])
    tower = KoszulTower(sequence, 3)

    composite = tower.system.composite(1, 3)
    direct = koszul_transition(sequence, 3, 1).between(tower.level(3), tower.level(1))

    assert composite.equals(direct)


def test_transition_needs_increasing_levels():
    ring = RingPresentation(QQ, ["x"])

    with pytest.raises(ValueError):
        koszul_transition(ElementSequence(ring, ["x"]), 1, 2)


def test_h0_comparison_is_an_isomorphism():
    ring = RingPresentation(QQ, ["x", "y"])
    tower = KoszulTower(ElementSequence(ring, ["x", "y"]), 2)

    assert module_calculus(tower.h0_comparison(2)).is_isomorphism


def test_levels_over_the_dual_numbers_have_zero_differential():
    ring = RingPresentation(QQ, ["x"], ["x^2"])
    tower = KoszulTower(ElementSequence(ring, ["x"]), 3)

    assert not tower.level(1).d(-1).matrix.is_zero()
    assert tower.level(2).d(-1).matrix.is_zero()
    assert tower.level(3).d(-1).matrix.is_zero()


def test_dual_koszul_system():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")
    system = DualKoszulSystem(ElementSequence(ring, ["x"]), 3)

    for j in (1, 2, 3):
        level = system.level(j)
        h1 = cohomology(level, 1)
        assert level.d(0).matrix.columns == ((x**j,),)
        assert h1.rank == 1
        assert h1.contains((x**j,))
        assert not h1.contains((x ** (j - 1),))

    transition = system.transition(1)
    transition.verify()
    assert transition.at(1).matrix.columns == ((x,),)
    assert transition.at(0).matrix.columns == ((ring.one,),)


def test_dual_augmentations_are_compatible():
    ring = RingPresentation(QQ, ["x", "y"])
    system = DualKoszulSystem(ElementSequence(ring, ["x", "y"]), 3)

    for j in (1, 2):
        composite = system.augmentation(j + 1).compose(system.transition(j))
        assert composite.equals(system.augmentation(j))


def test_dual_koszul_degrees():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 1])

    dual = dual_koszul(ElementSequence(ring, ["x", "y"]))

    assert dual.rank_profile() == {0: 1, 1: 2, 2: 1}
    assert dual.module(2).degrees == (-2,)


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_koszul_ranks_are_binomial()
        test_tower_levels_and_transitions()
        test_transition_composite_matches_direct_formula()
        test_transition_needs_increasing_levels()
        test_h0_comparison_is_an_isomorphism()
        test_levels_over_the_dual_numbers_have_zero_differential()
        test_dual_koszul_system()
        test_dual_augmentations_are_compatible()
        test_dual_koszul_degrees()
