"""The Shrikhande-Raghavarao union construction and its parameter theory.

Given a resolvable master design and an indexing design on w = v/k points,
each block C of the indexing design turns every parallel class of the
master into a constructed block: the union of the class's blocks at the
positions named by C.  This module builds those designs, predicts their
parameters exactly, classifies when the result is a 3-design, and applies
the PRP criterion for simplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .core import (
    Design,
    DesignError,
    DesignParams,
    lambda_j,
    t_coverage_spectrum,
    verify_ibd,
)
from .resolution import (
    ParallelClass,
    Resolution,
    prp_violations,
    verify_resolution,
)

__all__ = [
    "ConstructedDesign",
    "DimensionMismatch",
    "IndexingParams",
    "NonIntegral",
    "SimplicityVerdict",
    "ThreeDesignAnalysis",
    "ThreeDesignCase",
    "classify_three_design",
    "inherited_resolution",
    "predict_bibd_lambda",
    "predict_ibd_params",
    "predicted_mu",
    "predicted_mu_affine",
    "predicted_mu_w4",
    "shrikhande_raghavarao",
    "simplicity_verdict",
    "triple_coverage_by_alpha",
]


class DimensionMismatch(DesignError):
    pass


class NonIntegral(DesignError):
    """A parameter formula produced a non-integer; the combination of
    ingredient parameters is inapplicable."""

    def __init__(self, value: Fraction, context: str):
        super().__init__(f"{context} is not integral: {value}")
        self.value = value


@dataclass(frozen=True)
class IndexingParams:
    """(w, b', r', k') parameters of an indexing design, together with its
    pair coverage and triple coverage (triple coverage 0 stands for the
    degenerate k' = 2 case)."""

    w: int
    b_prime: int
    r_prime: int
    k_prime: int
    lambda_prime: int
    lambda2_prime: int

    def __post_init__(self) -> None:
        if not 2 <= self.k_prime < self.w:
            raise DesignError(
                f"need 2 <= k' < w, got k'={self.k_prime} w={self.w}"
            )
        if self.b_prime * self.k_prime != self.w * self.r_prime:
            raise DesignError(
                f"b'k' = wr' violated: {self.b_prime}*{self.k_prime} "
                f"!= {self.w}*{self.r_prime}"
            )
        if min(self.lambda_prime, self.lambda2_prime) < 0:
            raise DesignError("coverages must be nonnegative")

    @classmethod
    def from_design(cls, design: Design) -> "IndexingParams":
        """Measure the parameters of an indexing design directly.

        The design must be 2-balanced, and 3-balanced as well unless its
        block size is 2 (where the triple coverage is identically 0).
        """
        params = verify_ibd(design)
        pair = t_coverage_spectrum(design, 2)
        if len(pair) != 1:
            raise DesignError("indexing design is not 2-balanced")
        if params.k == 2:
            lam3 = 0
        else:
            triple = t_coverage_spectrum(design, 3)
            if len(triple) != 1:
                raise DesignError("indexing design is not 3-balanced")
            lam3 = next(iter(triple))
        return cls(
            w=params.v,
            b_prime=params.b,
            r_prime=params.r,
            k_prime=params.k,
            lambda_prime=lam3,
            lambda2_prime=next(iter(pair)),
        )


@dataclass(frozen=True)
class ConstructedDesign:
    """Output of the union construction with per-block provenance:
    provenance[i] = (master class index, indexing block index)."""

    design: Design
    provenance: tuple[tuple[int, int], ...]
    indexing: Design

    def __post_init__(self) -> None:
        if len(self.provenance) != len(self.design.blocks):
            raise DesignError("provenance must cover every constructed block")


class ThreeDesignCase(Enum):
    MASTER_IS_3_DESIGN = "master-is-3-design"
    MASTER_BLOCK_SIZE_2 = "master-block-size-2"
    K_PRIME_HALF_W = "k-prime-is-half-w"
    NOT_3_DESIGN = "not-a-3-design"


class SimplicityVerdict(Enum):
    SIMPLE_GUARANTEED = "simple-guaranteed"
    NOT_SIMPLE = "not-simple"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ThreeDesignAnalysis:
    """Triple coverage of the constructed design as c1 + alpha*c2, where
    alpha is the master coverage of the triple.  For k' > 2 the
    coefficients are per unit of indexing triple coverage; for k' = 2 the
    degenerate rule gives c1 = 3*lambda, c2 = w - 4 directly."""

    c1: Fraction
    c2: Fraction
    case: ThreeDesignCase
    note: str | None = None

    @property
    def is_three_design(self) -> bool:
        return self.case is not ThreeDesignCase.NOT_3_DESIGN


def _master_w(master: DesignParams) -> int:
    if master.v % master.k:
        raise DimensionMismatch(
            f"master block size {master.k} does not divide {master.v}"
        )
    return master.v // master.k


def _master_pair_coverage(master: DesignParams) -> int:
    """Pair coverage of a master declared as a t >= 2 design."""
    if master.t < 2:
        raise DesignError("master must be declared a 2-design or stronger")
    if master.t == 2:
        return master.lam
    lam2 = lambda_j(master, 2)
    if lam2.denominator != 1:
        raise NonIntegral(lam2, "master pair coverage")
    return int(lam2)


def shrikhande_raghavarao(
    master_res: Resolution, indexing: Design
) -> ConstructedDesign:
    """Union the blocks of each master parallel class at the positions
    selected by each indexing block.

    Indexing point j names the j-th block of every class in the stored
    class order.  Output blocks are ordered by (class index, indexing
    block index) and duplicates are preserved.
    """
    master = master_res.design
    check = verify_resolution(master, master_res)
    if not check:
        raise DesignError(f"master resolution invalid: {check.reason}")
    w = master.points.size // master.k
    if indexing.points.size != w:
        raise DimensionMismatch(
            f"indexing design has {indexing.points.size} points, "
            f"but master classes hold w={w} blocks"
        )
    blocks = []
    provenance = []
    for i, cls in enumerate(master_res.classes):
        class_blocks = [master.blocks[ref] for ref in cls.block_refs]
        for ci, chosen in enumerate(indexing.blocks):
            members: list[int] = []
            for j in chosen:
                members.extend(class_blocks[j])
            blocks.append(tuple(sorted(members)))
            provenance.append((i, ci))
    constructed = Design(
        points=master.points,
        blocks=tuple(blocks),
        k=master.k * indexing.k,
    )
    return ConstructedDesign(constructed, tuple(provenance), indexing)


def predict_ibd_params(
    master: DesignParams, indexing: IndexingParams
) -> DesignParams:
    """(v, rb', rr', kk') for the constructed design."""
    if _master_w(master) != indexing.w:
        raise DimensionMismatch(
            f"indexing on {indexing.w} points, master has w={_master_w(master)}"
        )
    return DesignParams(
        t=1,
        v=master.v,
        b=master.r * indexing.b_prime,
        r=master.r * indexing.r_prime,
        k=master.k * indexing.k_prime,
        lam=master.r * indexing.r_prime,
    )


def predict_bibd_lambda(master: DesignParams, indexing: IndexingParams) -> int:
    """Pair coverage of the constructed design: lam*r' + (r-lam)*lam2'."""
    lam = _master_pair_coverage(master)
    return lam * indexing.r_prime + (master.r - lam) * indexing.lambda2_prime


def triple_coverage_by_alpha(
    master: DesignParams, indexing: IndexingParams, alpha: int
) -> int:
    """Constructed coverage of a triple appearing in alpha master blocks:

        alpha*r' + 3(lam-alpha)*lam2' + (r - alpha - 3(lam-alpha))*lam3'

    (classes where the triple sits in one block / split 2+1 / split
    1+1+1).  lam3' = 0 covers the pair-indexing case.
    """
    lam = _master_pair_coverage(master)
    if not 0 <= alpha <= lam:
        raise DesignError(f"need 0 <= alpha <= {lam}, got {alpha}")
    return (
        alpha * indexing.r_prime
        + 3 * (lam - alpha) * indexing.lambda2_prime
        + (master.r - alpha - 3 * (lam - alpha)) * indexing.lambda_prime
    )


def classify_three_design(
    master: DesignParams, k_prime: int
) -> ThreeDesignAnalysis:
    """Decide when the construction yields a 3-design.

    The triple coverage is affine in the master triple coverage alpha, so
    the result is a 3-design exactly when alpha is constant (master is a
    3-design, or k = 2 forces alpha = 0) or the alpha coefficient
    vanishes, which for 2 <= k' < w happens exactly at k' = w/2.
    """
    if k_prime < 2:
        raise DesignError(f"need k' >= 2, got {k_prime}")
    w = _master_w(master)
    lam = _master_pair_coverage(master)
    if k_prime == 2:
        c1 = Fraction(3 * lam)
        c2 = Fraction(w - 4)
    else:
        c1 = Fraction(3 * lam * (w - 2), k_prime - 2) + master.r - 3 * lam
        c2 = (
            Fraction((w - 1) * (w - 2), (k_prime - 1) * (k_prime - 2))
            - Fraction(3 * (w - 2), k_prime - 2)
            + 2
        )
    note = None
    if master.t >= 3:
        case = ThreeDesignCase.MASTER_IS_3_DESIGN
    elif master.k == 2:
        case = ThreeDesignCase.MASTER_BLOCK_SIZE_2
        if k_prime == 2:
            note = (
                "master block size 2 with pair indexing: the triple "
                "coverage is the constant 3*lambda"
            )
    elif c2 == 0 and 2 * k_prime == w:
        case = ThreeDesignCase.K_PRIME_HALF_W
    else:
        case = ThreeDesignCase.NOT_3_DESIGN
    return ThreeDesignAnalysis(c1=c1, c2=c2, case=case, note=note)


def predicted_mu(master: DesignParams, lambda_prime: int) -> int:
    """Triple coverage lam'*(3*lam*w/(w-4) + r) for the half-class case
    with w > 4; exact, erroring on a non-integral result."""
    w = _master_w(master)
    if w <= 4 or w % 2:
        raise DesignError(f"need w = v/k even and > 4, got w={w}")
    lam = _master_pair_coverage(master)
    value = lambda_prime * (Fraction(3 * lam * w, w - 4) + master.r)
    if value.denominator != 1:
        raise NonIntegral(value, "predicted triple coverage")
    return int(value)


def predicted_mu_w4(master: DesignParams) -> int:
    """Triple coverage for pair indexing at w = 4: always 3*lambda."""
    if _master_w(master) != 4:
        raise DesignError(f"need w = v/k = 4, got w={_master_w(master)}")
    return 3 * _master_pair_coverage(master)


def predicted_mu_affine(q: int, m: int, lambda_prime: int) -> int:
    """Triple coverage lam'*(q^m - 4)/(q - 4) for the hyperplane master of
    AG(m, q), q a power of two above 4."""
    if q <= 4 or q & (q - 1):
        raise DesignError(f"need q = 2^n > 4, got q={q}")
    if m < 2:
        raise DesignError(f"need m >= 2, got m={m}")
    value = Fraction(lambda_prime * (q**m - 4), q - 4)
    if value.denominator != 1:
        raise NonIntegral(value, "predicted triple coverage")
    return int(value)


def inherited_resolution(
    constructed: ConstructedDesign, indexing_res: Resolution
) -> Resolution:
    """Group constructed blocks by (master class, indexing class): when the
    indexing design is resolvable, so is the constructed design."""
    check = verify_resolution(constructed.indexing, indexing_res)
    if not check:
        raise DesignError(f"indexing resolution invalid: {check.reason}")
    class_of_block: dict[int, int] = {}
    for ci, cls in enumerate(indexing_res.classes):
        for ref in cls.block_refs:
            class_of_block[ref] = ci
    groups: dict[tuple[int, int], list[int]] = {}
    for pos, (i, ci) in enumerate(constructed.provenance):
        groups.setdefault((i, class_of_block[ci]), []).append(pos)
    classes = tuple(
        ParallelClass(tuple(groups[key])) for key in sorted(groups)
    )
    result = Resolution(constructed.design, classes)
    check = verify_resolution(constructed.design, result)
    if not check:
        raise DesignError(f"inherited resolution invalid: {check.reason}")
    return result


def simplicity_verdict(
    master_res: Resolution, k_prime: int, indexing_is_trivial: bool
) -> SimplicityVerdict:
    """Apply the replacement-property criterion: a k'-PRP-free master
    resolution guarantees a simple constructed design, and with a trivial
    indexing design the converse holds as well."""
    violations = prp_violations(
        master_res.design, master_res, alpha_filter={k_prime}
    )
    if not violations:
        return SimplicityVerdict.SIMPLE_GUARANTEED
    if indexing_is_trivial:
        return SimplicityVerdict.NOT_SIMPLE
    return SimplicityVerdict.UNKNOWN
