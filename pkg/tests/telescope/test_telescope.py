import ipdb
import pytest

from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from complexes.cohomology import is_quasi_iso
from telescope.maps import u_map, w_map
from telescope.telescope import TelescopeSystem, single_telescope, tel_inclusion, telescope

QQ = CoefficientField()


def test_single_telescope_differential():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")

    tel = single_telescope(ring, x, 1, None)

    assert tel.rank_profile() == {0: 2, 1: 2}
    assert tel.d(0).matrix.columns == ((ring.one, ring.zero), (ring.one, -x))


def test_telescope_level_must_be_positive():
    ring = RingPresentation(QQ, ["x"])

    with pytest.raises(ValueError):
        single_telescope(ring, ring.var("x"), 0, None)


def test_telescope_of_a_pair():
    ring = RingPresentation(QQ, ["x", "y"])

    tel = telescope(ElementSequence(ring, ["x", "y"]), 1)

    assert tel.complex.rank_profile() == {0: 4, 1: 8, 2: 4}
    tel.complex.verify()
    assert tel.indices(0, tel.position(0, (1, 0))) == ((0, 1), (0, 0))


def test_telescopes_are_complexes():
    ring = RingPresentation(QQ, ["x", "y", "z"])

    for n in (1, 2, 3):
        sequence = ElementSequence(ring, ["x", "y", "z"][:n])
        for j in (1, 2):
            telescope(sequence, j).complex.verify()


def test_inclusion_commutes():
    ring = RingPresentation(QQ, ["x", "y"])
    sequence = ElementSequence(ring, ["x", "y"])

    inclusion = tel_inclusion(telescope(sequence, 1), telescope(sequence, 2))

    inclusion.verify()
    with pytest.raises(ValueError):
        tel_inclusion(telescope(sequence, 2), telescope(sequence, 1))


def test_telescope_system_composites():
    ring = RingPresentation(QQ, ["x"])
    system = TelescopeSystem(ElementSequence(ring, ["x"]), 3)

    composite = system.system.composite(1, 3)

    composite.verify()
    assert system.telescope(2) is system.telescope(2)
    assert composite.target.rank_profile() == {0: 4, 1: 4}


def test_w_on_a_single_element():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")

    w = w_map(ElementSequence(ring, ["x"]), 2)

    w.verify()
    assert w.at(1).matrix.rows()[0] == (x**2, x, ring.one)
    assert w.at(0).matrix.rows()[0] == (ring.one, ring.zero, ring.zero)


def test_w_is_a_quasi_isomorphism():
    ring = RingPresentation(QQ, ["x", "y"])

    w = w_map(ElementSequence(ring, ["x", "y"]), 2)

    w.verify()
    assert is_quasi_iso(w)


def test_u_sends_the_base_vector_to_one():
    ring = RingPresentation(QQ, ["x", "y"])

    u = u_map(ElementSequence(ring, ["x", "y"]), 1)

    u.verify()
    assert u.at(0).matrix.rows()[0] == (ring.one, ring.zero, ring.zero, ring.zero)
    assert u.at(1).is_zero()


def test_graded_telescope_degrees():
    ring = RingPresentation(QQ, ["t"], weights=[2])

    tel = telescope(ElementSequence(ring, ["t"]), 3)

    assert tel.complex.module(0).degrees == (0, 0, -2, -4)
    assert tel.complex.module(1).degrees == (0, -2, -4, -6)


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_single_telescope_differential()
        test_telescope_level_must_be_positive()
        test_telescope_of_a_pair()
        test_telescopes_are_complexes()
        test_inclusion_commutes()
        test_telescope_system_composites()
        test_w_on_a_single_element()
        test_w_is_a_quasi_isomorphism()
        test_u_sends_the_base_vector_to_one()
        test_graded_telescope_degrees()
