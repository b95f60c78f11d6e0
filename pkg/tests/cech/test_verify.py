import ipdb
import numpy as np
import pytest

from algebra.modules import FpModule
from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from cech.level import cech_level
from cech.verify import COMPLETE, NOT_COMPLETE, complete_char_verify, cone_iso, cone_triangle_verify, product_verify
from constants import VERDICT_PASS

QQ = CoefficientField()


@pytest.mark.parametrize("j", [1, 2, 3])
def test_cone_triangle_for_one_element(j):
    ring = RingPresentation(QQ, ["x"])

    report = cone_triangle_verify(ElementSequence(ring, ["x"]), j)

    assert report.verdict == VERDICT_PASS
    assert report.check("iso").passed
    assert report.check("les").passed


def test_cone_triangle_for_two_elements():
    ring = RingPresentation(QQ, ["x", "y"])

    report = cone_triangle_verify(ElementSequence(ring, ["x", "y"]), 1)

    assert report.verdict == VERDICT_PASS


def test_cone_triangle_with_a_zero_element():
    ring = RingPresentation(QQ, ["x"])

    report = cone_triangle_verify(ElementSequence(ring, ["x", "0"]), 1)

    assert report.verdict == VERDICT_PASS


def test_cone_iso_signs():
    ring = RingPresentation(QQ, ["x", "y"])

    phi = cone_iso(cech_level(ElementSequence(ring, ["x", "y"]), 2))

    assert phi.source.rank_profile() == phi.target.rank_profile() == {-1: 1, 0: 2, 1: 1}
    assert phi.at(-1).matrix.columns == ((ring.one,),)
    assert phi.at(1).matrix.columns == ((ring.one,),)
    assert all(f in (-ring.one, ring.zero) for column in phi.at(0).matrix.columns for f in column)


def test_residue_field_is_complete():
    ring = RingPresentation(QQ, ["x", "y"])

    report = complete_char_verify(FpModule.cyclic(ring, ["x", "y"]), ElementSequence(ring, ["x", "y"]), 4)

    assert report.verdict == VERDICT_PASS
    assert report.check("llambda").details["conclusion"] == COMPLETE
    assert report.check("cech").details["conclusion"] == COMPLETE
    assert report.check("agreement").details["complete"] is True


def test_polynomial_ring_is_not_complete():
    ring = RingPresentation(QQ, ["x", "y"])

    report = complete_char_verify(FpModule.free(ring, 1), ElementSequence(ring, ["x", "y"]), 3)

    assert report.verdict == VERDICT_PASS
    assert report.check("agreement").details["conclusion"] == NOT_COMPLETE
    assert report.check("llambda").witnesses == ["H^0 class 1 is not torsion"]


@pytest.mark.parametrize("relation", ["y", "x*y - 1"])
def test_modules_with_non_torsion_classes_are_not_complete(relation):
    ring = RingPresentation(QQ, ["x", "y"])

    report = complete_char_verify(FpModule.cyclic(ring, [relation]), ElementSequence(ring, ["x"]), 3)

    assert report.check("agreement").details["complete"] is False
    assert report.check("cech").details["conclusion"] == NOT_COMPLETE


def test_zero_module_is_complete():
    ring = RingPresentation(QQ, ["x"])

    report = complete_char_verify(FpModule.zero(ring), ElementSequence(ring, ["x"]), 2)

    assert report.verdict == VERDICT_PASS
    assert report.check("agreement").details["complete"] is True


def test_graded_completeness_of_a_line_in_the_plane():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 1])
    m = FpModule.cyclic(ring, ["y"], 0)

    report = complete_char_verify(m, ElementSequence(ring, ["x"]), 5, (0, 2))

    assert report.verdict == VERDICT_PASS
    assert report.tables["completion"] == report.tables["module"] == {0: {0: 1, 1: 1, 2: 1}}
    assert report.tables["cech_hom"] == {}
    assert report.check("agreement").details["complete"] is True


def test_product_laws_on_random_cochains():
    ring = RingPresentation(QQ, ["x", "y", "z"])
    rng = np.random.default_rng(seed=1337)

    report = product_verify(ElementSequence(ring, ["x", "y", "z"]), 1, rng)

    assert report.verdict == VERDICT_PASS
    assert [c.name for c in report.checks] == ["unit", "leibniz", "associativity"]


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        for j in (1, 2, 3):
            test_cone_triangle_for_one_element(j)
        test_cone_triangle_for_two_elements()
        test_cone_triangle_with_a_zero_element()
        test_cone_iso_signs()
        test_residue_field_is_complete()
        test_polynomial_ring_is_not_complete()
        for relation in ("y", "x*y - 1"):
            test_modules_with_non_torsion_classes_are_not_complete(relation)
        test_zero_module_is_complete()
        test_graded_completeness_of_a_line_in_the_plane()
        test_product_laws_on_random_cochains()
