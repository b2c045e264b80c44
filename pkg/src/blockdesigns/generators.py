"""Ingredient designs: trivial designs, one-factorizations, affine
hyperplane designs, and cyclic development of a base parallel class."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Block, Design, DesignError, PointSet
from .galois import GaloisError, field
from .resolution import ParallelClass, Resolution

__all__ = [
    "CyclicBaseSpec",
    "InvalidBaseClass",
    "OddPointCount",
    "UnsupportedField",
    "affine_hyperplane_design",
    "cyclic_develop",
    "cyclic_point_set",
    "round_robin_one_factorization",
    "sub_factorization_embedding",
    "trivial_design",
]


class OddPointCount(DesignError):
    pass


class InvalidBaseClass(DesignError):
    pass


class UnsupportedField(DesignError):
    pass


def trivial_design(v: int, k: int) -> Design:
    """All C(v, k) k-subsets of 0..v-1 in lexicographic order."""
    if not 2 <= k < v:
        raise DesignError(f"need 2 <= k < v, got k={k} v={v}")
    blocks = tuple(itertools.combinations(range(v), k))
    return Design(points=PointSet(v), blocks=blocks, k=k)


def _resolution_from_classes(points: PointSet, class_blocks, k: int):
    """Assemble a design plus resolution from per-class block lists."""
    blocks: list[Block] = []
    classes = []
    for cls in class_blocks:
        refs = []
        for block in cls:
            refs.append(len(blocks))
            blocks.append(block)
        classes.append(ParallelClass(tuple(refs)))
    design = Design(points=points, blocks=tuple(blocks), k=k)
    return design, Resolution(design, tuple(classes))


def round_robin_one_factorization(v: int) -> tuple[Design, Resolution]:
    """Circle-method one-factorization of K_v: point v-1 sits fixed, the
    rest rotate; round t pairs the fixed point with t."""
    if v < 4 or v % 2:
        raise OddPointCount(f"one-factorization needs an even v >= 4, got {v}")
    m = v - 1
    classes = []
    for t in range(m):
        factor = [tuple(sorted((v - 1, t)))]
        for j in range(1, v // 2):
            factor.append(tuple(sorted(((t + j) % m, (t - j) % m))))
        classes.append(factor)
    return _resolution_from_classes(PointSet(v), classes, 2)


def sub_factorization_embedding(n: int) -> tuple[Design, Resolution]:
    """One-factorization of K_{4n} containing a sub-one-factorization of
    the K_{2n} on points 0..2n-1.

    The first 2n-1 one-factors pair a factor of each half; the remaining
    2n factors are the cyclic perfect matchings between the halves.  Such
    resolutions are the standard source of replacement-property swaps: the
    half-factors of any two mixed classes can be exchanged.
    """
    if n < 2:
        raise DesignError(f"need n >= 2, got {n}")
    half = 2 * n
    _, low_res = round_robin_one_factorization(half)
    low = low_res.design
    classes = []
    for cls in low_res.classes:
        factor = [low.blocks[ref] for ref in cls.block_refs]
        factor += [
            tuple(p + half for p in low.blocks[ref]) for ref in cls.block_refs
        ]
        classes.append(factor)
    for t in range(half):
        classes.append([(i, half + (i + t) % half) for i in range(half)])
    return _resolution_from_classes(PointSet(2 * half), classes, 2)


def affine_hyperplane_design(m: int, q: int) -> tuple[Design, Resolution]:
    """Hyperplanes of the affine geometry AG(m, q) with their natural
    resolution (one class per direction, q parallel hyperplanes each).

    Points are the q^m coordinate vectors over GF(q), indexed by rank with
    the first coordinate most significant.  Directions are normal vectors
    normalized so the first nonzero coordinate is 1.
    """
    if m < 2:
        raise DesignError(f"need dimension m >= 2, got {m}")
    try:
        spec = field(q)
    except GaloisError as exc:
        raise UnsupportedField(str(exc)) from exc
    elems = spec.elements()
    zero, one = spec.zero(), spec.one()
    vectors = list(itertools.product(elems, repeat=m))
    index = {vec: i for i, vec in enumerate(vectors)}
    classes = []
    for normal in vectors:
        nonzero = [c for c in normal if c != zero]
        if not nonzero or nonzero[0] != one:
            continue
        buckets: dict = {c: [] for c in elems}
        for vec in vectors:
            total = zero
            for a, x in zip(normal, vec):
                total = spec.add(total, spec.mul(a, x))
            buckets[total].append(index[vec])
        classes.append([tuple(bucket) for bucket in buckets.values()])
    return _resolution_from_classes(PointSet(q**m), classes, q ** (m - 1))


def cyclic_point_set(n: int, has_infinity: bool) -> PointSet:
    """Points 0..n-1 labelled by residue; with has_infinity, point n is
    the fixed point labelled "inf"."""
    if has_infinity:
        return PointSet(n + 1, tuple(str(i) for i in range(n)) + ("inf",))
    return PointSet(n, tuple(str(i) for i in range(n)))


@dataclass(frozen=True)
class CyclicBaseSpec:
    """A base parallel class to be developed through Z_n.

    Blocks live on v = n (+1 with the fixed point) points; they must be
    disjoint and cover every point so each translate is again a parallel
    class.
    """

    n: int
    has_infinity: bool
    base_class: tuple[Block, ...]

    def __post_init__(self) -> None:
        v = self.v
        if not self.base_class:
            raise InvalidBaseClass("base class has no blocks")
        k = len(self.base_class[0])
        seen: set[int] = set()
        for block in self.base_class:
            if len(block) != k:
                raise InvalidBaseClass(f"block {block} has size {len(block)}, expected {k}")
            if tuple(sorted(block)) != tuple(block) or len(set(block)) != k:
                raise InvalidBaseClass(f"block {block} is not strictly increasing")
            if block[0] < 0 or block[-1] >= v:
                raise InvalidBaseClass(f"block {block} has points outside 0..{v - 1}")
            if seen & set(block):
                raise InvalidBaseClass("base class blocks are not disjoint")
            seen.update(block)
        if len(seen) != v:
            raise InvalidBaseClass(
                f"base class covers {len(seen)} of {v} points"
            )

    @property
    def v(self) -> int:
        return self.n + (1 if self.has_infinity else 0)

    @property
    def k(self) -> int:
        return len(self.base_class[0])


def cyclic_develop(spec: CyclicBaseSpec) -> tuple[Design, Resolution]:
    """Develop the base class through Z_n: translate t maps x < n to
    (x+t) mod n and fixes the point n.  Classes are the n translates."""
    n = spec.n
    classes = []
    for t in range(n):
        translated = []
        for block in spec.base_class:
            members = sorted((x + t) % n if x < n else x for x in block)
            translated.append(tuple(members))
        classes.append(translated)
    points = cyclic_point_set(n, spec.has_infinity)
    return _resolution_from_classes(points, classes, spec.k)
