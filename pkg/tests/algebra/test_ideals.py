import ipdb
import pytest

from algebra.calculus import module_calculus
from algebra.ideals import ideal_contains, ideal_power, ideals_contained, radical_equal, torsion_submodule
from algebra.modules import FpModule
from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from constants.errors import LevelCapExceeded

QQ = CoefficientField()


def test_ideal_power_of_a_pair():
    ring = RingPresentation(QQ, ["x", "y"])
    x, y = ring.gens
    powers, products = ideal_power(ElementSequence(ring, [x, y]), 2)

    assert powers == [x**2, y**2]
    assert len(products) == 3
    assert not ideal_contains(ring, powers, x * y)
    assert ideal_contains(ring, powers, (x * y) ** 2)


def test_ideal_power_trivial_cases():
    ring = RingPresentation(QQ, ["x", "y"])
    x, y = ring.gens

    powers, products = ideal_power(ElementSequence(ring, [x]), 3)
    assert powers == products == [x**3]

    powers, products = ideal_power(ElementSequence(ring, [x, y]), 1)
    assert ideals_contained(ring, powers, products) and ideals_contained(ring, products, powers)


def test_inclusion_chain_of_powers():
    ring = RingPresentation(QQ, ["x", "y", "z"])
    sequence = ElementSequence(ring, ["x", "y + z", "x*z"])

    for j in range(1, 4):
        powers, products = ideal_power(sequence, j)
        _, wide = ideal_power(sequence, j * sequence.n)
        assert ideals_contained(ring, powers, products)
        assert ideals_contained(ring, wide, powers)


def test_radical_equality():
    ring = RingPresentation(QQ, ["x", "y"])

    assert radical_equal(ring, ["x", "y"], ["x^2", "y"]).equal
    assert radical_equal(ring, ["x", "y"], ["x + y", "y"]).equal
    verdict = radical_equal(ring, ["x"], ["y"])
    assert not verdict.equal
    assert verdict.witness == "x"


def test_torsion_of_a_torsion_module():
    ring = RingPresentation(QQ, ["x"])
    module = FpModule.cyclic(ring, ["x^2"])

    torsion = torsion_submodule(module, ElementSequence(ring, ["x"]))

    assert torsion.level == 2
    assert module_calculus(torsion.inclusion).is_isomorphism


def test_torsion_of_a_domain_is_zero():
    ring = RingPresentation(QQ, ["x", "y"])

    torsion = torsion_submodule(FpModule.free(ring, 1), ElementSequence(ring, ["x", "y"]))

    assert torsion.module.is_zero()


def test_torsion_killed_by_the_ideal_and_idempotence():
    ring = RingPresentation(QQ, ["x", "y"])
    module = FpModule.cyclic(ring, ["x"])
    sequence = ElementSequence(ring, ["x"])

    torsion = torsion_submodule(module, sequence)
    again = torsion_submodule(torsion.module, sequence)

    assert torsion.level == 1
    assert module_calculus(torsion.inclusion).is_isomorphism
    assert module_calculus(again.inclusion).is_isomorphism


def test_torsion_level_cap():
    ring = RingPresentation(QQ, ["x"])
    module = FpModule.cyclic(ring, ["x^5"])

    with pytest.raises(LevelCapExceeded):
        torsion_submodule(module, ElementSequence(ring, ["x"]), level_cap=3)


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_ideal_power_of_a_pair()
        test_ideal_power_trivial_cases()
        test_inclusion_chain_of_powers()
        test_radical_equality()
        test_torsion_of_a_torsion_module()
        test_torsion_of_a_domain_is_zero()
        test_torsion_killed_by_the_ideal_and_idempotence()
        test_torsion_level_cap()
