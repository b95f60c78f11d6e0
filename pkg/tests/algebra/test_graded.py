import ipdb
import pytest

from algebra.graded import ModuleSlice, restrict_truncated
from algebra.modules import FpModule
from algebra.ring import CoefficientField, RingMap, RingPresentation
from constants.errors import GradingError

QQ = CoefficientField()


def test_restriction_of_the_dual_numbers():
    line = RingPresentation(QQ, ["x"], weights=[1])
    dual_numbers = RingPresentation(QQ, ["x"], ["x^2"], weights=[1])
    f = RingMap(line, dual_numbers, ["x"])

    restricted = restrict_truncated(f, FpModule.free(dual_numbers, 1, [0]), 4)

    assert restricted.ring == line
    assert restricted.degrees == (0, 1)
    assert [restricted.graded_dimension(d) for d in range(4)] == [1, 1, 0, 0]


def test_restriction_of_the_plane_to_a_line():
    line = RingPresentation(QQ, ["x"], weights=[1])
    plane = RingPresentation(QQ, ["x", "y"], weights=[1, 1])
    f = RingMap(line, plane, ["x"])

    restricted = restrict_truncated(f, FpModule.free(plane, 1, [0]), 2)

    assert restricted.rank == 6
    assert [restricted.graded_dimension(d) for d in range(5)] == [1, 2, 3, 0, 0]


def test_restriction_keeps_the_module_structure():
    line = RingPresentation(QQ, ["x"], weights=[1])
    plane = RingPresentation(QQ, ["x", "y"], weights=[1, 1])
    f = RingMap(line, plane, ["x"])
    m = FpModule.cyclic(plane, ["x^2", "y"])

    restricted = restrict_truncated(f, m, 3)

    # x·e_0 spans degree 1 and x^2·e_0 dies, as in ℚ[x]/(x^2).
    assert [restricted.graded_dimension(d) for d in range(4)] == [1, 1, 0, 0]
    assert ModuleSlice(restricted, 1).dimension == 1


def test_restriction_below_the_generators_is_zero():
    line = RingPresentation(QQ, ["x"], weights=[1])
    plane = RingPresentation(QQ, ["x", "y"], weights=[1, 1])
    f = RingMap(line, plane, ["x"])

    restricted = restrict_truncated(f, FpModule.free(plane, 1, [2]), 1)

    assert restricted.rank == 0


def test_restriction_needs_a_graded_map():
    line = RingPresentation(QQ, ["x"])
    plane = RingPresentation(QQ, ["x", "y"], weights=[1, 1])

    with pytest.raises(GradingError):
        restrict_truncated(RingMap(line, plane, ["x"]), FpModule.free(plane, 1, [0]), 2)


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_restriction_of_the_dual_numbers()
        test_restriction_of_the_plane_to_a_line()
        test_restriction_keeps_the_module_structure()
        test_restriction_below_the_generators_is_zero()
        test_restriction_needs_a_graded_map()
