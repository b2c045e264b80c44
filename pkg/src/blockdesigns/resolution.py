"""Resolutions into parallel classes, resolution search, and the
partial-replacement-property (PRP) machinery.

A resolution partitions a design's block *instances* into parallel classes
(each class: v/k disjoint blocks covering every point).  Two classes
satisfy alpha-PRP when the 2w blocks they hold can be re-partitioned into
a different pair of parallel classes overlapping the first class in
exactly alpha blocks; resolutions free of such swaps make the union
construction produce simple designs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .core import Design, DesignError, block_mask

__all__ = [
    "BadAlpha",
    "CheckResult",
    "DEFAULT_NODE_BUDGET",
    "ParallelClass",
    "Resolution",
    "SearchBudgetExceeded",
    "canonical_resolution",
    "find_resolutions",
    "has_unique_resolution",
    "is_alpha_prp",
    "prp_violations",
    "verify_resolution",
]

DEFAULT_NODE_BUDGET = 100_000_000


class SearchBudgetExceeded(DesignError):
    """Search node budget exhausted before the enumeration completed."""

    def __init__(self, nodes: int, found):
        super().__init__(
            f"search budget of {nodes} nodes exhausted "
            f"({len(found)} resolution(s) found so far)"
        )
        self.nodes = nodes
        self.found = list(found)


class BadAlpha(DesignError):
    pass


@dataclass(frozen=True)
class ParallelClass:
    """Indices into the parent design's block list forming one class."""

    block_refs: tuple[int, ...]


@dataclass(frozen=True)
class Resolution:
    """A partition of a design's block instances into parallel classes.

    The constructor only checks index validity; use verify_resolution for
    the semantic partition checks.
    """

    design: Design
    classes: tuple[ParallelClass, ...]

    def __post_init__(self) -> None:
        b = len(self.design.blocks)
        for cls in self.classes:
            for ref in cls.block_refs:
                if not 0 <= ref < b:
                    raise DesignError(f"block reference {ref} out of range 0..{b - 1}")


@dataclass(frozen=True)
class CheckResult:
    """Boolean verdict carrying a diagnostic on failure."""

    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _class_check(design: Design, refs: tuple[int, ...]) -> str | None:
    """None if refs form a parallel class, else a diagnostic."""
    v, k = design.points.size, design.k
    if v % k:
        return f"block size {k} does not divide {v}"
    w = v // k
    if len(refs) != len(set(refs)):
        return f"class repeats a block instance: {refs}"
    if len(refs) != w:
        return f"class has {len(refs)} blocks, expected {w}"
    cover = 0
    for ref in refs:
        mask = block_mask(design.blocks[ref])
        if cover & mask:
            return f"blocks in class {refs} are not pairwise disjoint"
        cover |= mask
    if cover != (1 << v) - 1:
        return f"class {refs} does not cover every point"
    return None


def verify_resolution(design: Design, res: Resolution) -> CheckResult:
    """Check that res partitions design's block instances into parallel
    classes; the result is falsy with a reason when it does not."""
    if res.design != design:
        return CheckResult(False, "resolution refers to a different design")
    used: list[int] = []
    for index, cls in enumerate(res.classes):
        problem = _class_check(design, cls.block_refs)
        if problem:
            return CheckResult(False, f"class {index}: {problem}")
        used.extend(cls.block_refs)
    if len(used) != len(set(used)):
        dup = next(ref for ref, n in Counter(used).items() if n > 1)
        return CheckResult(False, f"block instance {dup} appears in two classes")
    if len(used) != len(design.blocks):
        missing = min(set(range(len(design.blocks))) - set(used))
        return CheckResult(False, f"block instance {missing} is in no class")
    return CheckResult(True)


def canonical_resolution(res: Resolution) -> Resolution:
    """Order classes and in-class refs by block content (idempotent)."""
    blocks = res.design.blocks
    ordered = []
    for cls in res.classes:
        refs = tuple(sorted(cls.block_refs, key=lambda i: (blocks[i], i)))
        ordered.append(refs)
    ordered.sort(key=lambda refs: (tuple(blocks[i] for i in refs), refs))
    return Resolution(res.design, tuple(ParallelClass(refs) for refs in ordered))


def _content_key(design: Design, classes) -> tuple:
    blocks = design.blocks
    return tuple(sorted(tuple(sorted(blocks[i] for i in refs)) for refs in classes))


def find_resolutions(
    design: Design, limit: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> list[Resolution]:
    """Backtracking exact-cover search for up to `limit` resolutions.

    Results are canonically deduplicated: two instance-partitions that are
    equal as multisets of classes-of-block-sets count once.  An empty list
    means the search completed without finding any resolution.  Raises
    SearchBudgetExceeded when the node budget runs out first.
    """
    if limit < 1:
        return []
    v, k, b = design.points.size, design.k, len(design.blocks)
    if v % k:
        raise DesignError(f"block size {k} does not divide {v}")
    w = v // k
    if b == 0 or b % w:
        return []
    blocks = design.blocks
    masks = [block_mask(block) for block in blocks]
    full = (1 << v) - 1
    by_point: list[list[int]] = [[] for _ in range(v)]
    for i, block in enumerate(blocks):
        for p in block:
            by_point[p].append(i)

    results: list[Resolution] = []
    seen: set[tuple] = set()
    used = [False] * b
    classes: list[tuple[int, ...]] = []
    nodes = 0

    def record() -> bool:
        key = _content_key(design, classes)
        if key not in seen:
            seen.add(key)
            res = Resolution(
                design, tuple(ParallelClass(tuple(refs)) for refs in classes)
            )
            results.append(canonical_resolution(res))
        return len(results) >= limit

    def extend_class(current: list[int], cover: int) -> bool:
        nonlocal nodes
        if cover == full:
            classes.append(tuple(current))
            done = next_class()
            classes.pop()
            return done
        lowest = ((~cover) & full)
        point = (lowest & -lowest).bit_length() - 1
        for i in by_point[point]:
            if used[i] or (masks[i] & cover):
                continue
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceeded(node_budget, results)
            used[i] = True
            current.append(i)
            done = extend_class(current, cover | masks[i])
            current.pop()
            used[i] = False
            if done:
                return True
        return False

    def next_class() -> bool:
        # The lowest-indexed unused block must open the next class: classes
        # are unordered, so fixing it prunes the r! class-order symmetry.
        try:
            seed = used.index(False)
        except ValueError:
            return record()
        used[seed] = True
        done = extend_class([seed], masks[seed])
        used[seed] = False
        return done

    next_class()
    return results


def has_unique_resolution(
    design: Design, node_budget: int = DEFAULT_NODE_BUDGET
) -> bool:
    """True when the completed search finds exactly one resolution."""
    return len(find_resolutions(design, limit=2, node_budget=node_budget)) == 1


def _replacement_alphas(
    design: Design,
    class_a: ParallelClass,
    class_b: ParallelClass,
    budget: list[int] | None = None,
) -> set[int]:
    """All values of |S ∩ class_a| over parallel classes S built from the
    2w block instances of class_a ∪ class_b.

    Every such S leaves a complementary parallel class (each point is
    covered exactly twice by the two classes), so S ranges over all valid
    replacement pairs.  The intersection with class_a is counted on block
    contents as a multiset.  `budget` is a single-element node counter
    shared across calls; it raises when it hits zero.
    """
    refs = list(class_a.block_refs) + list(class_b.block_refs)
    blocks = [design.blocks[ref] for ref in refs]
    masks = [block_mask(block) for block in blocks]
    v = design.points.size
    full = (1 << v) - 1
    a_content = Counter(design.blocks[ref] for ref in class_a.block_refs)
    in_use = [False] * len(refs)
    chosen: list[int] = []
    alphas: set[int] = set()

    def dfs(cover: int) -> None:
        if cover == full:
            overlap = Counter(blocks[j] for j in chosen) & a_content
            alphas.add(sum(overlap.values()))
            return
        lowest = (~cover) & full
        point = (lowest & -lowest).bit_length() - 1
        for j, mask in enumerate(masks):
            if in_use[j] or not (mask >> point) & 1 or (mask & cover):
                continue
            if budget is not None:
                budget[0] -= 1
                if budget[0] < 0:
                    raise SearchBudgetExceeded(0, [])
            in_use[j] = True
            chosen.append(j)
            dfs(cover | mask)
            chosen.pop()
            in_use[j] = False

    dfs(0)
    return alphas


def is_alpha_prp(
    design: Design,
    class_a: ParallelClass,
    class_b: ParallelClass,
    alpha: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> bool:
    """True when class_a and class_b admit a replacement pair of parallel
    classes overlapping class_a in exactly alpha blocks."""
    v, k = design.points.size, design.k
    if v % k:
        raise DesignError(f"block size {k} does not divide {v}")
    w = v // k
    if not 1 <= alpha <= w - 1:
        raise BadAlpha(f"alpha must be in 1..{w - 1}, got {alpha}")
    for cls in (class_a, class_b):
        problem = _class_check(design, cls.block_refs)
        if problem:
            raise DesignError(problem)
    if set(class_a.block_refs) & set(class_b.block_refs):
        raise DesignError("classes share a block instance")
    try:
        alphas = _replacement_alphas(design, class_a, class_b, [node_budget])
    except SearchBudgetExceeded:
        raise SearchBudgetExceeded(node_budget, []) from None
    return alpha in alphas


def prp_violations(
    design: Design,
    res: Resolution,
    alpha_filter=None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> list[tuple[int, int, int]]:
    """All (i, j, alpha) with i < j where classes i and j satisfy alpha-PRP.

    alpha_filter restricts the reported alphas (default: all of 1..w-1).
    An empty list certifies the resolution (alpha-)PRP-free.  On budget
    exhaustion the raised error carries the violations found so far.
    """
    check = verify_resolution(design, res)
    if not check:
        raise DesignError(f"invalid resolution: {check.reason}")
    w = design.points.size // design.k
    allowed = set(range(1, w)) if alpha_filter is None else set(alpha_filter)
    for alpha in allowed:
        if not 1 <= alpha <= w - 1:
            raise BadAlpha(f"alpha must be in 1..{w - 1}, got {alpha}")
    out: list[tuple[int, int, int]] = []
    budget = [node_budget]
    for i in range(len(res.classes)):
        for j in range(i + 1, len(res.classes)):
            try:
                alphas = _replacement_alphas(
                    design, res.classes[i], res.classes[j], budget
                )
            except SearchBudgetExceeded:
                raise SearchBudgetExceeded(node_budget, out) from None
            for alpha in sorted(alphas & allowed):
                out.append((i, j, alpha))
    return out
