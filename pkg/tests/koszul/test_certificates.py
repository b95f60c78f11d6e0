import ipdb
import pytest

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from complexes.levels import DIRECT, INVERSE, LevelSystem
from constants import VERDICT_PASS, VERDICT_UNDETERMINED
from koszul.certificates import pro_zero_check, required_levels, wpr_check, wpr_systems

QQ = CoefficientField()


def _constant_system(direction, module, matrix, last):
    return LevelSystem(direction, 1, last, lambda j: module, lambda j: ModuleMap(module, module, matrix))


def test_required_levels():
    assert list(required_levels(4)) == [1, 2]
    assert list(required_levels(5)) == [1, 2, 3]


def test_zero_system_is_pro_zero():
    ring = RingPresentation(QQ, ["x"])
    zero = FpModule.zero(ring)
    system = LevelSystem(INVERSE, 1, 4, lambda j: zero, lambda j: ModuleMap.zero(zero, zero))

    certificate = pro_zero_check(system, 4)

    assert certificate.complete
    assert certificate.offset() == 0
    assert certificate.verdict == VERDICT_PASS


def test_surjections_stay_undetermined():
    ring = RingPresentation(QQ, ["x"])
    free = FpModule.free(ring, 1)
    system = _constant_system(INVERSE, free, PolyMatrix.identity(ring, 1), 4)

    certificate = pro_zero_check(system, 4, degree=-1)

    assert not certificate.complete
    assert certificate.undetermined == (-1,)
    assert certificate.verdict == f"{VERDICT_UNDETERMINED} at cap 4"


def test_nilpotent_transitions_have_offset_two():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")
    module = FpModule.cyclic(ring, [x**2])
    system = _constant_system(INVERSE, module, PolyMatrix(ring, 1, [(x,)]), 6)

    certificate = pro_zero_check(system, 6)

    assert certificate.complete
    assert certificate.offset() == 2
    assert (1, 3) in certificate.pairs[0]
    assert certificate.recheck({0: system})


def test_cap_is_bounded_by_the_system():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")
    module = FpModule.cyclic(ring, [x**2])
    system = _constant_system(INVERSE, module, PolyMatrix(ring, 1, [(x,)]), 3)

    certificate = pro_zero_check(system, 10)

    assert certificate.cap == 3


def test_direct_systems_are_rejected():
    ring = RingPresentation(QQ, ["x"])
    free = FpModule.free(ring, 1)

    with pytest.raises(ValueError):
        pro_zero_check(_constant_system(DIRECT, free, PolyMatrix.identity(ring, 1), 3), 3)


def test_regular_sequence_is_weakly_proregular():
    ring = RingPresentation(QQ, ["x", "y"])
    sequence = ElementSequence(ring, ["x", "y"])

    certificate = wpr_check(sequence, 4)

    assert certificate.complete
    assert sorted(certificate.pairs) == [-2, -1]
    assert certificate.offset(-1) == 0
    assert certificate.offset(-2) == 0


def test_nilpotent_element_over_the_dual_numbers():
    ring = RingPresentation(QQ, ["x"], ["x^2"])
    sequence = ElementSequence(ring, ["x"])

    certificate = wpr_check(sequence, 4)

    assert certificate.complete
    assert certificate.offset(-1) == 2
    assert certificate.recheck(wpr_systems(sequence, 4))


def test_wpr_needs_two_levels():
    ring = RingPresentation(QQ, ["x"])

    with pytest.raises(ValueError):
        wpr_check(ElementSequence(ring, ["x"]), 1)


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_required_levels()
        test_zero_system_is_pro_zero()
        test_surjections_stay_undetermined()
        test_nilpotent_transitions_have_offset_two()
        test_cap_is_bounded_by_the_system()
        test_direct_systems_are_rejected()
        test_regular_sequence_is_weakly_proregular()
        test_nilpotent_element_over_the_dual_numbers()
        test_wpr_needs_two_levels()
