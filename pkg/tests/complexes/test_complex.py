import ipdb
import pytest

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from algebra.ring import CoefficientField, ElementSequence, RingPresentation
from complexes.cohomology import is_acyclic
from complexes.complex import Complex, ComplexMap, complex_from_matrices
from complexes.levels import DIRECT, INVERSE, LevelSystem, cohomology_system
from complexes.operations import cone, shift, stupid_truncate, stupid_truncation_sequence, tensor
from constants.errors import ComplexError
from koszul.tower import koszul_complex

QQ = CoefficientField()


def test_nonzero_square_is_rejected():
    ring = RingPresentation(QQ, ["x"])

    with pytest.raises(ComplexError):
        complex_from_matrices(ring, {0: 1, 1: 1, 2: 1}, {0: [["x"]], 1: [["x"]]})


def test_amplitude_and_support():
    ring = RingPresentation(QQ, ["x"])
    x = complex_from_matrices(ring, {-1: 1, 0: 1, 1: 1}, {-1: [["x"]], 0: [["0"]]})

    assert x.support == (-1, 1)
    assert x.inf() == -1
    assert x.sup() == 1
    assert x.amp() == 2


def test_truncation_to_the_middle_degree():
    ring = RingPresentation(QQ, ["x"])
    x = complex_from_matrices(ring, {-1: 1, 0: 1, 1: 1}, {-1: [["x"]], 0: [["0"]]})

    middle = stupid_truncate(x, 0, 0)

    assert middle.rank_profile() == {0: 1}
    assert stupid_truncation_sequence(x, 0).is_degreewise_exact()


def test_cone_of_identity_is_acyclic():
    ring = RingPresentation(QQ, ["x"])
    k = koszul_complex(ElementSequence(ring, ["x"]))

    assert is_acyclic(cone(ComplexMap.identity(k)))
    cone(ComplexMap.identity(k)).verify()


def test_shift_negates_the_differential():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")
    k = koszul_complex(ElementSequence(ring, ["x"]))

    shifted = shift(k, 1)

    assert shifted.degrees == (-2, -1)
    assert shifted.d(-2).matrix.columns == ((-x,),)


def test_tensor_of_koszul_factors():
    ring = RingPresentation(QQ, ["x", "y"])
    kx = koszul_complex(ElementSequence(ring, ["x"]))
    ky = koszul_complex(ElementSequence(ring, ["y"]))

    product = tensor(kx, ky)

    assert product.rank_profile() == {-2: 1, -1: 2, 0: 1}
    product.verify()


def test_tensor_square_over_dual_numbers():
    ring = RingPresentation(QQ, ["x"], ["x^2"])
    k = koszul_complex(ElementSequence(ring, ["x"]))

    square = tensor(k, k)

    square.verify()
    assert sum(square.rank_profile().values()) == 4


def test_tensor_of_two_non_free_complexes_is_rejected():
    ring = RingPresentation(QQ, ["x"])
    torsion = Complex.concentrated(FpModule.cyclic(ring, ["x"]))

    with pytest.raises(ComplexError):
        tensor(torsion, torsion)


def test_non_commuting_map_is_rejected():
    ring = RingPresentation(QQ, ["x"])
    k = koszul_complex(ElementSequence(ring, ["x"]))

    with pytest.raises(ComplexError):
        ComplexMap(k, k, {0: PolyMatrix.identity(ring, 1), -1: PolyMatrix.zero(ring, 1, 1)})


def test_level_system_composites():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")
    modules = [FpModule.free(ring, 1) for _ in range(3)]
    maps = [
        ModuleMap(modules[i + 1], modules[i], PolyMatrix(ring, 1, [(x,)])) for i in range(2)
    ]
    system = LevelSystem.from_lists(INVERSE, 1, modules, maps)

    assert system.composite(1, 3).matrix.columns == ((x**2,),)
    assert system.composite(2, 2).matrix == PolyMatrix.identity(ring, 1)
    with pytest.raises(IndexError):
        system.level(4)


def test_cohomology_system_of_a_direct_system():
    ring = RingPresentation(QQ, ["x"])
    levels = [koszul_complex(ElementSequence(ring, ["x"]).power(j)) for j in (1, 2)]
    x = ring.var("x")
    transition = ComplexMap(levels[0], levels[1], {0: PolyMatrix(ring, 1, [(x,)]), -1: PolyMatrix.identity(ring, 1)})
    system = LevelSystem.from_lists(DIRECT, 1, levels, [transition])

    h0 = cohomology_system(system, 0)

    assert h0.level(1).contains((x,))
    assert not h0.level(2).contains((x,))
    assert not h0.transition(1).is_zero()
    assert h0.direction == DIRECT


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_nonzero_square_is_rejected()
        test_amplitude_and_support()
        test_truncation_to_the_middle_degree()
        test_cone_of_identity_is_acyclic()
        test_shift_negates_the_differential()
        test_tensor_of_koszul_factors()
        test_tensor_square_over_dual_numbers()
        test_tensor_of_two_non_free_complexes_is_rejected()
        test_non_commuting_map_is_rejected()
        test_level_system_composites()
        test_cohomology_system_of_a_direct_system()
