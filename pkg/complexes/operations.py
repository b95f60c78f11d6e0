"""Shift, truncation, cone, tensor and Hom of complexes, with their functoriality.

Sign conventions:
  shift      d_{X[k]} = (-1)^k d_X
  cone(φ)^k  = X^{k+1} ⊕ Y^k, d(x, y) = (-d_X x, φ x + d_Y y)
  tensor     d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy
  Hom        generator p^∨⊗n with p in P^i is scaled by (-1)^{i(i-1)/2}; in that
             basis d(p^∨⊗n) = p^∨⊗dn + (-1)^{|n|} Σ_{p'} (d_P)_{p,p'} p'^∨⊗n.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

from algebra.matrix import PolyMatrix
from algebra.modules import FpModule, ModuleMap
from algebra.ring import RingMap, RingPresentation
from complexes.complex import Complex, ComplexMap
from constants.errors import ComplexError


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def hom_twist(i: int) -> int:
    return _sign(i * (i - 1) // 2)


# ---------------------------------
# Modules.
# ---------------------------------


def tensor_modules(m: FpModule, n: FpModule) -> FpModule:
    """M ⊗ N on generators (i, j) in i-major order; relations R_M ⊗ 1 and 1 ⊗ R_N."""
    ring = m.ring
    rank = m.rank * n.rank
    columns = []
    for column in m.relations.columns:
        for j in range(n.rank):
            vector = [ring.zero] * rank
            for i, f in enumerate(column):
                vector[i * n.rank + j] = f
            columns.append(vector)
    for column in n.relations.columns:
        for i in range(m.rank):
            vector = [ring.zero] * rank
            for j, f in enumerate(column):
                vector[i * n.rank + j] = f
            columns.append(vector)
    degrees = None
    if m.degrees is not None and n.degrees is not None:
        degrees = [a + b for a in m.degrees for b in n.degrees]
    labels = [a + b for a in m.labels for b in n.labels]
    return FpModule(ring, rank, PolyMatrix(ring, rank, columns, reduce=False), degrees, labels)


def dual_free_module(p: FpModule) -> FpModule:
    if not p.is_free:
        raise ComplexError("Hom source component is not free")
    degrees = None if p.degrees is None else [-d for d in p.degrees]
    labels = [tuple(("dual", a) for a in label) for label in p.labels]
    return FpModule.free(p.ring, p.rank, degrees, labels)


def kronecker(ring: RingPresentation, a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Matrix of φ⊗ψ in the i-major generator order of tensor_modules."""
    columns = []
    for col_a in a.columns:
        for col_b in b.columns:
            columns.append([ring.reduce(f * g) for f in col_a for g in col_b])
    return PolyMatrix(ring, a.nrows * b.nrows, columns, reduce=False)


# ---------------------------------
# Block bookkeeping.
# ---------------------------------


@dataclass
class _Blocks:
    """Offsets of the summands (keyed by any hashable) inside each degree."""

    keys: Dict[int, List[Tuple]]
    offsets: Dict[Tuple[int, Tuple], int]
    sizes: Dict[int, int]

    @classmethod
    def build(cls, summands: Mapping[int, Sequence[Tuple[Tuple, int]]]) -> "_Blocks":
        keys, offsets, sizes = {}, {}, {}
        for k, items in summands.items():
            offset = 0
            keys[k] = []
            for key, size in items:
                if not size:
                    continue
                keys[k].append(key)
                offsets[(k, key)] = offset
                offset += size
            sizes[k] = offset
        return cls(keys, offsets, sizes)


def _matrix(ring, rows: int, cols: int, entries: Dict[Tuple[int, int], object]) -> PolyMatrix:
    return PolyMatrix.from_entries(ring, rows, cols, entries)


# ---------------------------------
# Shift, truncation, cone, sums.
# ---------------------------------


def shift(x: Complex, k: int) -> Complex:
    """X[k] with X[k]^i = X^{i+k} and d = (-1)^k d_X."""
    modules = {i - k: x.module(i) for i in x.degrees}
    differentials = {i - k: x.d(i).matrix.scale(_sign(k)) if k % 2 else x.d(i).matrix for i in x.degrees}
    return Complex(x.ring, modules, differentials, check=False, name=f"{x.name}[{k}]")


def shift_map(phi: ComplexMap, k: int) -> ComplexMap:
    return ComplexMap(shift(phi.source, k), shift(phi.target, k), {i - k: phi.at(i).matrix for i in phi.degrees()}, check=False)


def stupid_truncate(x: Complex, low: int, high: int) -> Complex:
    """Keeps the components in [low, high] and the differentials between them."""
    modules = {k: x.module(k) for k in x.degrees if low <= k <= high}
    differentials = {k: x.d(k) for k in x.degrees if low <= k < high}
    return Complex(x.ring, modules, differentials, check=False, name=f"σ[{low},{high}]{x.name}")


@dataclass(frozen=True)
class TruncationSequence:
    """σ_{≥m}X → X → σ_{<m}X with its inclusion and projection."""

    upper: Complex
    lower: Complex
    inclusion: ComplexMap
    projection: ComplexMap

    def is_degreewise_exact(self) -> bool:
        for k in self.inclusion.target.degrees:
            top = self.upper.module(k).rank
            bottom = self.lower.module(k).rank
            if top + bottom != self.inclusion.target.module(k).rank:
                return False
            if not self.projection.compose(self.inclusion).at(k).is_zero():
                return False
        return True


def stupid_truncation_sequence(x: Complex, m: int) -> TruncationSequence:
    """The degreewise split sequence 0 → σ_{≥m}X → X → σ_{<m}X → 0."""
    support = x.support or (0, 0)
    upper = stupid_truncate(x, m, support[1])
    lower = stupid_truncate(x, support[0], m - 1)
    ring = x.ring
    identity = {k: PolyMatrix.identity(ring, x.rank(k)) for k in x.degrees}
    inclusion = ComplexMap(upper, x, {k: identity[k] for k in upper.degrees}, check=True)
    projection = ComplexMap(x, lower, {k: identity[k] for k in lower.degrees}, check=True)
    return TruncationSequence(upper, lower, inclusion, projection)


def _tagged(module: FpModule, tag) -> FpModule:
    return module.with_labels([(tag,) + label for label in module.labels])


def cone(phi: ComplexMap) -> Complex:
    x, y = phi.source, phi.target
    ring = phi.ring
    degrees = {k - 1 for k in x.degrees} | set(y.degrees)
    modules, differentials = {}, {}
    for k in degrees:
        modules[k] = _direct_sum_pair(_tagged(x.module(k + 1), ("cone", 1)), _tagged(y.module(k), ("cone", 0)))
    for k in degrees:
        a, b = x.rank(k + 1), y.rank(k)
        a2, b2 = x.rank(k + 2), y.rank(k + 1)
        entries = {}
        _place(entries, -x.d(k + 1).matrix, 0, 0)
        _place(entries, phi.at(k + 1).matrix, a2, 0)
        _place(entries, y.d(k).matrix, a2, a)
        differentials[k] = _matrix(ring, a2 + b2, a + b, entries)
    return Complex(ring, modules, differentials, check=False, name=f"cone({x.name}→{y.name})")


def _place(entries: Dict, matrix: PolyMatrix, row: int, col: int):
    for j, column in enumerate(matrix.columns):
        for i, f in enumerate(column):
            if f:
                key = (row + i, col + j)
                entries[key] = entries[key] + f if key in entries else f


def _direct_sum_pair(a: FpModule, b: FpModule) -> FpModule:
    ring = a.ring
    relations = PolyMatrix.block_diagonal(ring, [a.relations, b.relations])
    if a.rank == 0:
        degrees = b.degrees
    elif b.rank == 0:
        degrees = a.degrees
    elif a.degrees is not None and b.degrees is not None:
        degrees = list(a.degrees) + list(b.degrees)
    else:
        degrees = None
    return FpModule(ring, a.rank + b.rank, relations, degrees, list(a.labels) + list(b.labels))


def direct_sum(complexes: Sequence[Complex]) -> Complex:
    ring = complexes[0].ring
    degrees = sorted({k for c in complexes for k in c.degrees})
    modules, differentials = {}, {}
    for k in degrees:
        module = FpModule.zero(ring)
        for t, c in enumerate(complexes):
            module = _direct_sum_pair(module, _tagged(c.module(k), ("sum", t)))
        modules[k] = module
        differentials[k] = PolyMatrix.block_diagonal(ring, [c.d(k).matrix for c in complexes])
    return Complex(ring, modules, differentials, check=False)


# ---------------------------------
# Tensor.
# ---------------------------------


def _tensor_blocks(x: Complex, y: Complex) -> _Blocks:
    summands = {}
    for a in x.degrees:
        for b in y.degrees:
            summands.setdefault(a + b, []).append(((a, b), x.rank(a) * y.rank(b)))
    for k in summands:
        summands[k].sort(key=lambda item: item[0][0])
    return _Blocks.build(summands)


def tensor(x: Complex, y: Complex) -> Complex:
    """The total tensor complex, summands ordered by ascending X-degree.

    Raises:
        ComplexError: If some X^a and Y^b are both non-free, which would need a resolution first.
    """
    ring = x.ring
    for a in x.degrees:
        for b in y.degrees:
            if not x.module(a).is_free and not y.module(b).is_free:
                raise ComplexError(
                    f"tensor of non-free components in degrees {a} and {b}; resolve one factor first"
                )
    blocks = _tensor_blocks(x, y)
    modules, differentials = {}, {}
    for k, keys in blocks.keys.items():
        module = FpModule.zero(ring)
        for a, b in keys:
            module = _direct_sum_pair(module, tensor_modules(x.module(a), y.module(b)))
        modules[k] = module
    for k, keys in blocks.keys.items():
        entries = {}
        for a, b in keys:
            col0 = blocks.offsets[(k, (a, b))]
            ny = y.rank(b)
            if (k + 1, (a + 1, b)) in blocks.offsets:
                row0 = blocks.offsets[(k + 1, (a + 1, b))]
                dx = x.d(a).matrix
                for i, column in enumerate(dx.columns):
                    for i2, f in enumerate(column):
                        if f:
                            for j in range(ny):
                                entries[(row0 + i2 * ny + j, col0 + i * ny + j)] = f
            if (k + 1, (a, b + 1)) in blocks.offsets:
                row0 = blocks.offsets[(k + 1, (a, b + 1))]
                dy = y.d(b).matrix
                ny2 = y.rank(b + 1)
                sign = _sign(a)
                for j, column in enumerate(dy.columns):
                    for j2, f in enumerate(column):
                        if f:
                            for i in range(x.rank(a)):
                                entries[(row0 + i * ny2 + j2, col0 + i * ny + j)] = f * sign
        differentials[k] = _matrix(ring, blocks.sizes.get(k + 1, 0), blocks.sizes[k], entries)
    name = f"{x.name}⊗{y.name}" if x.name or y.name else ""
    return Complex(ring, modules, differentials, check=False, name=name)


def tensor_map(phi: ComplexMap, psi: ComplexMap) -> ComplexMap:
    """φ⊗ψ for degree-preserving maps; no signs."""
    source = tensor(phi.source, psi.source)
    target = tensor(phi.target, psi.target)
    src_blocks = _tensor_blocks(phi.source, psi.source)
    tgt_blocks = _tensor_blocks(phi.target, psi.target)
    ring = phi.ring
    maps = {}
    for k, keys in src_blocks.keys.items():
        entries = {}
        for a, b in keys:
            if (k, (a, b)) not in tgt_blocks.offsets:
                continue
            block = kronecker(ring, phi.at(a).matrix, psi.at(b).matrix)
            _place(entries, block, tgt_blocks.offsets[(k, (a, b))], src_blocks.offsets[(k, (a, b))])
        maps[k] = _matrix(ring, tgt_blocks.sizes.get(k, 0), src_blocks.sizes[k], entries)
    return ComplexMap(source, target, maps, check=False)


def tensor_with_identity(phi: ComplexMap, y: Complex) -> ComplexMap:
    return tensor_map(phi, ComplexMap.identity(y))


def identity_tensor(x: Complex, psi: ComplexMap) -> ComplexMap:
    return tensor_map(ComplexMap.identity(x), psi)


# ---------------------------------
# Hom out of a bounded free complex.
# ---------------------------------


def _hom_blocks(p: Complex, n: Complex) -> _Blocks:
    summands = {}
    for i in p.degrees:
        for m in n.degrees:
            summands.setdefault(m - i, []).append(((i, m), p.rank(i) * n.rank(m)))
    for k in summands:
        summands[k].sort(key=lambda item: item[0][0])
    return _Blocks.build(summands)


def hom_from_free(p: Complex, n: Complex) -> Complex:
    """Hom(P, N) realized as P^∨ ⊗ N, generator labels (("dual", a)...) + n_label.

    Raises:
        ComplexError: If some component of P is not free.
    """
    if not p.is_free:
        raise ComplexError("hom_from_free needs a complex of free modules as source")
    ring = p.ring
    blocks = _hom_blocks(p, n)
    modules, differentials = {}, {}
    for k, keys in blocks.keys.items():
        module = FpModule.zero(ring)
        for i, m in keys:
            module = _direct_sum_pair(module, tensor_modules(dual_free_module(p.module(i)), n.module(m)))
        modules[k] = module
    for k, keys in blocks.keys.items():
        entries = {}
        for i, m in keys:
            col0 = blocks.offsets[(k, (i, m))]
            nn = n.rank(m)
            # N-part: p^∨ ⊗ d_N n.
            if (k + 1, (i, m + 1)) in blocks.offsets:
                row0 = blocks.offsets[(k + 1, (i, m + 1))]
                nn2 = n.rank(m + 1)
                for j, column in enumerate(n.d(m).matrix.columns):
                    for j2, f in enumerate(column):
                        if f:
                            for t in range(p.rank(i)):
                                entries[(row0 + t * nn2 + j2, col0 + t * nn + j)] = f
            # P-part: (-1)^m Σ (d_P)_{p,p'} p'^∨ ⊗ n with p' in P^{i-1}.
            if (k + 1, (i - 1, m)) in blocks.offsets:
                row0 = blocks.offsets[(k + 1, (i - 1, m))]
                sign = _sign(m)
                dp = p.d(i - 1).matrix
                for t2, column in enumerate(dp.columns):
                    for t, f in enumerate(column):
                        if f:
                            for j in range(nn):
                                entries[(row0 + t2 * nn + j, col0 + t * nn + j)] = f * sign
        differentials[k] = _matrix(ring, blocks.sizes.get(k + 1, 0), blocks.sizes[k], entries)
    name = f"Hom({p.name},{n.name})" if p.name or n.name else ""
    return Complex(ring, modules, differentials, check=False, name=name)


def hom_map_source(phi: ComplexMap, n: Complex) -> ComplexMap:
    """Hom(φ, N): Hom(P', N) → Hom(P, N) for φ: P → P', f ↦ f∘φ."""
    p, p2 = phi.source, phi.target
    source = hom_from_free(p2, n)
    target = hom_from_free(p, n)
    src_blocks, tgt_blocks = _hom_blocks(p2, n), _hom_blocks(p, n)
    ring = phi.ring
    maps = {}
    for k, keys in src_blocks.keys.items():
        entries = {}
        for i, m in keys:
            if (k, (i, m)) not in tgt_blocks.offsets:
                continue
            row0, col0 = tgt_blocks.offsets[(k, (i, m))], src_blocks.offsets[(k, (i, m))]
            nn = n.rank(m)
            for t, column in enumerate(phi.at(i).matrix.columns):
                for t2, f in enumerate(column):
                    if f:
                        for j in range(nn):
                            entries[(row0 + t * nn + j, col0 + t2 * nn + j)] = f
        maps[k] = _matrix(ring, tgt_blocks.sizes.get(k, 0), src_blocks.sizes[k], entries)
    return ComplexMap(source, target, maps, check=False)


def hom_map_target(p: Complex, psi: ComplexMap) -> ComplexMap:
    """Hom(P, ψ): Hom(P, N) → Hom(P, N') for ψ: N → N', f ↦ ψ∘f."""
    n, n2 = psi.source, psi.target
    source = hom_from_free(p, n)
    target = hom_from_free(p, n2)
    src_blocks, tgt_blocks = _hom_blocks(p, n), _hom_blocks(p, n2)
    ring = psi.ring
    maps = {}
    for k, keys in src_blocks.keys.items():
        entries = {}
        for i, m in keys:
            if (k, (i, m)) not in tgt_blocks.offsets:
                continue
            block = kronecker(ring, PolyMatrix.identity(ring, p.rank(i)), psi.at(m).matrix)
            _place(entries, block, tgt_blocks.offsets[(k, (i, m))], src_blocks.offsets[(k, (i, m))])
        maps[k] = _matrix(ring, tgt_blocks.sizes.get(k, 0), src_blocks.sizes[k], entries)
    return ComplexMap(source, target, maps, check=False)


# ---------------------------------
# Canonical isomorphisms.
# ---------------------------------


def _index_positions(blocks: _Blocks, ranks_inner) -> Dict[int, Dict[Tuple, int]]:
    """degree -> {(outer key, i, j): position} for product blocks."""
    out = {}
    for k, keys in blocks.keys.items():
        out[k] = {}
        for key in keys:
            left, right = ranks_inner(key)
            offset = blocks.offsets[(k, key)]
            for i in range(left):
                for j in range(right):
                    out[k][(key, i, j)] = offset + i * right + j
    return out


def permutation_map(source: Complex, target: Complex, images: Mapping[int, Sequence[Tuple[int, int]]]) -> ComplexMap:
    """A map sending generator g of source^k to sign·(generator pos) of target^k, images[k][g] = (pos, sign)."""
    ring = source.ring
    maps = {}
    for k in source.degrees:
        entries = {(pos, g): ring.constant(sign) for g, (pos, sign) in enumerate(images[k])}
        maps[k] = _matrix(ring, target.rank(k), source.rank(k), entries)
    return ComplexMap(source, target, maps, check=False)


def label_matching_map(source: Complex, target: Complex, relabel=lambda label: label, sign=lambda label: 1) -> ComplexMap:
    """Sends each source generator to the target generator with the (relabelled) same label.

    Raises:
        ComplexError: If some label has no unique partner.
    """
    images = {}
    for k in source.degrees:
        positions = {}
        for pos, label in enumerate(target.module(k).labels):
            if label in positions:
                raise ComplexError(f"label {label} repeated in degree {k}")
            positions[label] = pos
        images[k] = []
        for label in source.module(k).labels:
            key = relabel(label)
            if key not in positions:
                raise ComplexError(f"no partner for generator {label} in degree {k}")
            images[k].append((positions[key], sign(label)))
    return permutation_map(source, target, images)


def tensor_unitor(x: Complex) -> ComplexMap:
    """A⊗X → X; the unit carries the empty label so generators match exactly."""
    return label_matching_map(tensor(Complex.unit(x.ring), x), x)


def tensor_right_unitor(x: Complex) -> ComplexMap:
    return label_matching_map(tensor(x, Complex.unit(x.ring)), x)


def tensor_associator(x: Complex, y: Complex, z: Complex) -> ComplexMap:
    """(X⊗Y)⊗Z → X⊗(Y⊗Z), no signs."""
    xy = tensor(x, y)
    yz = tensor(y, z)
    source = tensor(xy, z)
    target = tensor(x, yz)
    xy_pos = _index_positions(_tensor_blocks(x, y), lambda key: (x.rank(key[0]), y.rank(key[1])))
    yz_pos = _index_positions(_tensor_blocks(y, z), lambda key: (y.rank(key[0]), z.rank(key[1])))
    src_pos = _index_positions(_tensor_blocks(xy, z), lambda key: (xy.rank(key[0]), z.rank(key[1])))
    tgt_pos = _index_positions(_tensor_blocks(x, yz), lambda key: (x.rank(key[0]), yz.rank(key[1])))
    xy_inverse = {k: {pos: key for key, pos in table.items()} for k, table in xy_pos.items()}
    images = {}
    for k, table in src_pos.items():
        row = [None] * source.rank(k)
        for ((ab, c), m, r), pos in table.items():
            (a, b), i, j = xy_inverse[ab][m]
            inner = yz_pos[b + c][((b, c), j, r)]
            row[pos] = (tgt_pos[k][((a, b + c), i, inner)], 1)
        images[k] = row
    return permutation_map(source, target, images)


def hom_tensor_adjunction(p: Complex, q: Complex, m: Complex) -> ComplexMap:
    """Hom(P⊗Q, M) → Hom(P, Hom(Q, M)) with sign (-1)^{|p||q|} on (p⊗q)^∨⊗m."""
    pq = tensor(p, q)
    qm = hom_from_free(q, m)
    source = hom_from_free(pq, m)
    target = hom_from_free(p, qm)
    pq_pos = _index_positions(_tensor_blocks(p, q), lambda key: (p.rank(key[0]), q.rank(key[1])))
    pq_inverse = {k: {pos: key for key, pos in table.items()} for k, table in pq_pos.items()}
    qm_pos = _index_positions(_hom_blocks(q, m), lambda key: (q.rank(key[0]), m.rank(key[1])))
    src_pos = _index_positions(_hom_blocks(pq, m), lambda key: (pq.rank(key[0]), m.rank(key[1])))
    tgt_pos = _index_positions(_hom_blocks(p, qm), lambda key: (p.rank(key[0]), qm.rank(key[1])))
    images = {}
    for k, table in src_pos.items():
        row = [None] * source.rank(k)
        for ((ab, c), g, r), pos in table.items():
            (a, b), i, j = pq_inverse[ab][g]
            inner = qm_pos[c - b][((b, c), j, r)]
            row[pos] = (tgt_pos[k][((a, c - b), i, inner)], _sign(a * b))
        images[k] = row
    return permutation_map(source, target, images)


# ---------------------------------
# Base change along a ring map.
# ---------------------------------


def base_change_matrix(f: RingMap, matrix: PolyMatrix) -> PolyMatrix:
    return PolyMatrix(f.target, matrix.nrows, [[f(g) for g in column] for column in matrix.columns])


def base_change(f: RingMap, x: Complex) -> Complex:
    """B ⊗_A X entrywise: f applied to relations and differentials, labels kept.

    Internal degrees survive only when f is graded.
    """
    graded = f.is_graded()
    modules = {}
    for k in x.degrees:
        m = x.module(k)
        degrees = m.degrees if graded else None
        modules[k] = FpModule(f.target, m.rank, base_change_matrix(f, m.relations), degrees, m.labels)
    differentials = {k: base_change_matrix(f, x.d(k).matrix) for k in x.degrees}
    return Complex(f.target, modules, differentials, check=False, name=f"B⊗{x.name}")
