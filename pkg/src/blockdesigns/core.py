"""Design types and the verifiers for their defining properties.

A design is a multiset of equal-size blocks over points 0..v-1.  Blocks are
stored as strictly increasing tuples so that block equality is set equality
and the block list can carry multiset semantics (duplicates allowed and
significant).  All counting here is exact: spectra and replication counts
use Python integers, derived coverage numbers use ``fractions.Fraction``,
and the pairwise intersection histogram runs on packed 64-bit bitsets.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Block",
    "Design",
    "DesignError",
    "DesignParams",
    "DivisibilityViolation",
    "IntersectionProfile",
    "NonConstantReplication",
    "PointSet",
    "block_mask",
    "intersection_profile",
    "is_simple",
    "is_trivial",
    "lambda_j",
    "make_design",
    "nontriviality_bound_holds",
    "t_coverage_spectrum",
    "verify_ibd",
]


class DesignError(ValueError):
    """Malformed design data or a violated operation precondition."""


class NonConstantReplication(DesignError):
    """Some point's replication count differs from the rest."""

    def __init__(self, point: int, count: int, expected: int):
        super().__init__(
            f"point {point} lies in {count} blocks, expected {expected}"
        )
        self.point = point
        self.count = count
        self.expected = expected


class DivisibilityViolation(DesignError):
    pass


Block = tuple[int, ...]


@dataclass(frozen=True)
class PointSet:
    """v labelled points indexed 0..v-1.

    Labels are optional display names; the cyclic generators use them to
    mark the fixed point (points 0..n-1 carry their residue, point n is
    labelled "inf").
    """

    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.size < 2:
            raise DesignError(f"point set needs at least 2 points, got {self.size}")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise DesignError(
                    f"{len(self.labels)} labels for {self.size} points"
                )
            if len(set(self.labels)) != self.size:
                raise DesignError("point labels must be distinct")


@dataclass(frozen=True)
class Design:
    """A block multiset over a point set; every block has size k."""

    points: PointSet
    blocks: tuple[Block, ...]
    k: int

    def __post_init__(self) -> None:
        v = self.points.size
        if not 2 <= self.k < v:
            raise DesignError(f"block size must satisfy 2 <= k < v (k={self.k}, v={v})")
        for block in self.blocks:
            if len(block) != self.k:
                raise DesignError(f"block {block} has size {len(block)}, expected {self.k}")
            if block[0] < 0 or block[-1] >= v:
                raise DesignError(f"block {block} has points outside 0..{v - 1}")
            if any(block[i] >= block[i + 1] for i in range(len(block) - 1)):
                raise DesignError(f"block {block} is not strictly increasing")

    @property
    def v(self) -> int:
        return self.points.size

    @property
    def b(self) -> int:
        return len(self.blocks)


def make_design(v, blocks, labels=None, k=None) -> Design:
    """Canonicalize raw block member lists (sorting each) into a Design."""
    canon = []
    for block in blocks:
        members = sorted(block)
        if len(set(members)) != len(members):
            raise DesignError(f"block {block} repeats a point")
        canon.append(tuple(members))
    if k is None:
        if not canon:
            raise DesignError("cannot infer block size from an empty design")
        k = len(canon[0])
    points = PointSet(v, tuple(labels) if labels is not None else None)
    return Design(points=points, blocks=tuple(canon), k=k)


@dataclass(frozen=True)
class DesignParams:
    """Exact (t, v, b, r, k, lambda) bundle for a t-design.

    Construction enforces the counting identities that any real design
    satisfies: b k = v r, and the derived coverages at levels 0 and 1
    (block count and replication) must come out integral and equal to b
    and r.  For t = 2 this is the usual lambda = r(k-1)/(v-1) relation.
    """

    t: int
    v: int
    b: int
    r: int
    k: int
    lam: int

    def __post_init__(self) -> None:
        if not 2 <= self.k < self.v:
            raise DesignError(f"need 2 <= k < v, got k={self.k} v={self.v}")
        if not 1 <= self.t <= self.k:
            raise DesignError(f"need 1 <= t <= k, got t={self.t} k={self.k}")
        if min(self.b, self.r, self.lam) < 0:
            raise DesignError("counts must be nonnegative")
        if self.b * self.k != self.v * self.r:
            raise DesignError(
                f"bk = vr violated: {self.b}*{self.k} != {self.v}*{self.r}"
            )
        for j, expected in ((0, self.b), (1, self.r)):
            if j <= self.t:
                derived = lambda_j(self, j)
                if derived != expected:
                    raise DesignError(
                        f"coverage at level {j} is {derived}, "
                        f"inconsistent with declared value {expected}"
                    )

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.v, self.b, self.r, self.k)


@dataclass(frozen=True)
class IntersectionProfile:
    """Histogram of |A∩B| over unordered pairs of distinct block instances.

    counts[i] is the number of pairs meeting in exactly i points; the
    vector has length k+1 and counts[k] > 0 exactly when some block is
    repeated.
    """

    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.counts:
            raise DesignError("profile needs at least one entry")
        if any(c < 0 for c in self.counts):
            raise DesignError("profile entries must be nonnegative")

    @property
    def pair_count(self) -> int:
        return sum(self.counts)

    @property
    def simple(self) -> bool:
        return self.counts[-1] == 0


def verify_ibd(design: Design) -> DesignParams:
    """Check constant replication and return the (v, b, r, k) parameters.

    Raises NonConstantReplication naming the first deviating point.
    """
    v = design.points.size
    counts = [0] * v
    for block in design.blocks:
        for p in block:
            counts[p] += 1
    r = counts[0]
    for point, count in enumerate(counts):
        if count != r:
            raise NonConstantReplication(point=point, count=count, expected=r)
    return DesignParams(t=1, v=v, b=len(design.blocks), r=r, k=design.k, lam=r)


def t_coverage_spectrum(design: Design, t: int) -> dict[int, int]:
    """Map coverage-count -> number of t-subsets with that coverage.

    Exhaustive over all C(v, t) t-subsets; the design is a t-design with
    coverage lam exactly when the result is {lam: C(v, t)}.
    """
    if not 1 <= t <= design.k:
        raise DesignError(f"need 1 <= t <= k, got t={t} k={design.k}")
    cover: Counter = Counter()
    for block in design.blocks:
        cover.update(itertools.combinations(block, t))
    spectrum: Counter = Counter(cover.values())
    uncovered = math.comb(design.points.size, t) - len(cover)
    if uncovered:
        spectrum[0] += uncovered
    return dict(sorted(spectrum.items()))


def lambda_j(params: DesignParams, j: int) -> Fraction:
    """Coverage of a j-subset derived from t-design parameters, exact.

    lambda_j = lam * C(v-j, t-j) / C(k-j, t-j).  The caller decides what a
    non-integral value means; it is never rounded here.
    """
    if not 0 <= j <= params.t:
        raise DesignError(f"need 0 <= j <= t, got j={j} t={params.t}")
    return Fraction(
        params.lam * math.comb(params.v - j, params.t - j),
        math.comb(params.k - j, params.t - j),
    )


def is_simple(design: Design) -> bool:
    """True when no two block instances are equal as point sets."""
    return len(set(design.blocks)) == len(design.blocks)


def is_trivial(design: Design) -> bool:
    """True when the design consists of all C(v, k) k-subsets, once each."""
    if len(set(design.blocks)) != len(design.blocks):
        return False
    return len(design.blocks) == math.comb(design.points.size, design.k)


def block_mask(block: Block) -> int:
    mask = 0
    for p in block:
        mask |= 1 << p
    return mask


def _packed_masks(design: Design) -> np.ndarray:
    """Blocks as rows of 64-bit words, low word first."""
    nwords = (design.points.size + 63) // 64
    word = (1 << 64) - 1
    rows = []
    for block in design.blocks:
        mask = block_mask(block)
        rows.append([(mask >> (64 * w)) & word for w in range(nwords)])
    return np.array(rows, dtype=np.uint64).reshape(len(design.blocks), nwords)


def intersection_profile(design: Design) -> IntersectionProfile:
    """Exact pair counts by intersection size over all unordered pairs of
    distinct block instances (duplicates each counted)."""
    k = design.k
    b = len(design.blocks)
    counts = np.zeros(k + 1, dtype=np.int64)
    if b >= 2:
        masks = _packed_masks(design)
        multiword = masks.shape[1] > 1
        for i in range(b - 1):
            meet = masks[i] & masks[i + 1 :]
            sizes = np.bitwise_count(meet)
            if multiword:
                sizes = sizes.sum(axis=1, dtype=np.int64)
            else:
                sizes = sizes.reshape(-1)
            counts += np.bincount(sizes, minlength=k + 1)
    return IntersectionProfile(tuple(int(c) for c in counts))


def nontriviality_bound_holds(v: int, k: int) -> bool:
    """True when r_max * C(v/k, v/2k) < C(v, v/2) for simple ingredients.

    This is the exact block-count comparison showing that unioning half of
    each parallel class of a simple master design cannot reach the trivial
    design with block size v/2.
    """
    if k < 2 or v % (2 * k) != 0 or v // k < 4:
        raise DivisibilityViolation(
            f"need 2k | v and v/k >= 4, got v={v} k={k}"
        )
    bound = math.comb(v - 1, k - 1) * math.comb(v // k, v // (2 * k))
    return bound < math.comb(v, v // 2)
