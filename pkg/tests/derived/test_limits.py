import ipdb
import pytest

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from algebra.ring import CoefficientField, RingPresentation
from complexes.levels import DIRECT, INVERSE, LevelSystem
from constants import VERDICT_PASS, VERDICT_UNDETERMINED
from derived.limits import constant_system, map_limit_check, vanishing_check

QQ = CoefficientField()


def _truncations(ring, power, last):
    """The inverse system A/(x^{power·j}) with the quotient maps."""
    x = ring.var("x")
    level = lambda j: FpModule.cyclic(ring, [x ** (power * j)])
    return LevelSystem(
        INVERSE,
        1,
        last,
        level,
        lambda j: ModuleMap(level(j + 1), level(j), PolyMatrix.identity(ring, 1)),
        name=f"A/(x^{power}j)",
    )


def test_identity_of_a_constant_system():
    ring = RingPresentation(QQ, ["x"])
    free = FpModule.free(ring, 1)
    system = constant_system(DIRECT, free, 1, 4)

    certificate = map_limit_check(system, system, lambda j: ModuleMap.identity(free), 4)

    assert certificate.complete
    assert certificate.verdict == VERDICT_PASS
    assert certificate.offset(0) == 0
    assert certificate.kernel_pairs[0] == ((1, 1), (2, 2), (3, 3), (4, 4))


def test_cofinal_powers_have_the_same_limit():
    ring = RingPresentation(QQ, ["x"])
    source = _truncations(ring, 2, 4)
    target = _truncations(ring, 1, 4)

    certificate = map_limit_check(
        source, target, lambda j: ModuleMap(source.level(j), target.level(j), PolyMatrix.identity(ring, 1)), 4, degree=-1
    )

    assert certificate.direction == INVERSE
    assert certificate.complete
    assert certificate.kernel_pairs[-1][:2] == ((1, 2), (2, 4))
    assert certificate.offset(-1) == 2
    assert certificate.max_offset == 2


def test_multiplication_by_x_never_hits_the_generator():
    ring = RingPresentation(QQ, ["x"])
    free = FpModule.free(ring, 1)
    system = constant_system(DIRECT, free, 1, 4)
    x = PolyMatrix(ring, 1, [(ring.var("x"),)])

    certificate = map_limit_check(system, system, lambda j: ModuleMap(free, free, x), 4)

    assert not certificate.complete
    assert certificate.undetermined == (0,)
    assert certificate.verdict == f"{VERDICT_UNDETERMINED} at cap 4"
    assert certificate.cokernel_pairs[0] == ()


def test_directions_must_agree():
    ring = RingPresentation(QQ, ["x"])
    free = FpModule.free(ring, 1)

    with pytest.raises(ValueError):
        map_limit_check(
            constant_system(DIRECT, free, 1, 3),
            constant_system(INVERSE, free, 1, 3),
            lambda j: ModuleMap.identity(free),
            3,
        )


def test_merged_certificates_keep_every_degree():
    ring = RingPresentation(QQ, ["x"])
    free = FpModule.free(ring, 1)
    system = constant_system(DIRECT, free, 1, 4)
    identity = lambda j: ModuleMap.identity(free)

    merged = map_limit_check(system, system, identity, 4, degree=0).merged(map_limit_check(system, system, identity, 4, degree=2))

    assert set(merged.kernel_pairs) == {0, 2}
    assert merged.as_dict()["undetermined"] == []


def test_nilpotent_direct_system_vanishes():
    ring = RingPresentation(QQ, ["x"])
    x = ring.var("x")
    module = FpModule.cyclic(ring, [x**2])
    system = LevelSystem(DIRECT, 1, 6, lambda j: module, lambda j: ModuleMap(module, module, PolyMatrix(ring, 1, [(x,)])))

    certificate = vanishing_check(system, 6)

    assert certificate.complete
    assert certificate.offset() == 2


def test_constant_direct_system_does_not_vanish():
    ring = RingPresentation(QQ, ["x"])
    system = constant_system(DIRECT, FpModule.free(ring, 1), 1, 4)

    certificate = vanishing_check(system, 4, degree=1)

    assert certificate.undetermined == (1,)


if __name__ == "__main__":
    with ipdb.launch_ipdb_on_exception():
        test_identity_of_a_constant_system()
        test_cofinal_powers_have_the_same_limit()
        test_multiplication_by_x_never_hits_the_generator()
        test_directions_must_agree()
        test_merged_certificates_keep_every_degree()
        test_nilpotent_direct_system_vanishes()
        test_constant_direct_system_does_not_vanish()
