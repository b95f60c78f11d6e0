import ipdb
import pytest

from algebra.calculus import cokernel, direct_sum, image, kernel, module_calculus, prune, submodule
from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from algebra.ring import CoefficientField, RingPresentation
from constants.errors import GradingError, WellDefinednessError

QQ = CoefficientField()


def _multiplication(ring, f):
    free = FpModule.free(ring, 1)
    return ModuleMap(free, free, PolyMatrix(ring, 1, [(f,)]))


def test_cokernel_of_multiplication():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")

    quotient, projection = cokernel(_multiplication(ring, x))

    assert quotient.rank == 1
    assert quotient.contains((x,))
    assert not quotient.contains((ring.one,))
    assert not quotient.is_zero()
    assert projection.source.rank == 1


def test_kernel_over_a_quotient_ring():
    ring = RingPresentation(QQ, ["x"], ["x^2"])
    x = ring.var("x")

    module, inclusion = kernel(_multiplication(ring, x))

    assert module.rank == 1
    generator = inclusion.matrix.columns[0][0]
    assert generator
    assert ring.reduce(x * generator) == ring.zero
    # The kernel is (x) ≅ A/(x): one-dimensional over ℚ.
    assert module.contains((x,))
    assert not module.contains((ring.one,))


def test_cokernel_of_identity_is_zero():
    ring = RingPresentation(QQ, ["x", "y"])

    calculus = module_calculus(ModuleMap.identity(FpModule.free(ring, 2)))

    assert calculus.is_isomorphism
    assert calculus.cokernel.is_zero()
    assert calculus.kernel.rank == 0


def test_image_then_cokernel_matches_cokernel():
    ring = RingPresentation(QQ, ["x", "y"])
    x, y = ring.gens
    phi = ModuleMap(FpModule.free(ring, 2), FpModule.free(ring, 1), PolyMatrix(ring, 1, [(x,), (y,)]))

    _, inclusion = image(phi)
    direct, _ = cokernel(phi)
    through_image, _ = cokernel(inclusion)
    comparison = ModuleMap(direct, through_image, PolyMatrix.identity(ring, 1))

    assert module_calculus(comparison).is_isomorphism


def test_ill_defined_map_is_rejected():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")
    torsion = FpModule.cyclic(ring, [x])

    with pytest.raises(WellDefinednessError):
        ModuleMap(torsion, FpModule.free(ring, 1), PolyMatrix.identity(ring, 1))


def test_graded_relations_must_be_homogeneous():
    ring = RingPresentation(QQ, ["x", "y"], weights=[1, 1])

    with pytest.raises(GradingError):
        FpModule(ring, 1, PolyMatrix(ring, 1, [(ring.parse("x + y^2"),)]), degrees=[0])

    module = FpModule.cyclic(ring, ["x^2", "y"])
    assert [module.graded_dimension(d) for d in range(4)] == [1, 1, 0, 0]


def test_prune_drops_unit_relations():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")
    module = FpModule(ring, 2, PolyMatrix(ring, 2, [(ring.one, -x)]))

    pruned = prune(module)

    assert pruned.module.rank == 1
    assert pruned.module.is_free
    # e_0 = x e_1 in the original module.
    assert pruned.to_pruned.matrix.columns[0] == (x,)


def test_submodule_and_direct_sum():
    ring = RingPresentation(QQ, ["x", "y"])
    x, y = ring.gens
    free = FpModule.free(ring, 1)

    ideal, inclusion = submodule(free, [(x,), (y,)])
    summed = direct_sum([free, FpModule.cyclic(ring, [x])])

    assert ideal.rank == 2
    assert ideal.relations.ncols == 1
    assert summed.rank == 2
    assert summed.contains((ring.zero, x))
    assert not summed.contains((x, ring.zero))


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_cokernel_of_multiplication()
        test_kernel_over_a_quotient_ring()
        test_cokernel_of_identity_is_zero()
        test_image_then_cokernel_matches_cokernel()
        test_ill_defined_map_is_rejected()
        test_graded_relations_must_be_homogeneous()
        test_prune_drops_unit_relations()
        test_submodule_and_direct_sum()
