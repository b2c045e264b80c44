"""Catalog of known simple 3-designs built from cyclic resolvable masters.

Each entry names a constructed design "3-(v, v/2, mu)" and records the base
parallel class whose Z_n development (plus a fixed point) is the resolvable
master, the trivial indexing design's block size, and golden values for the
result: the triple coverage mu and the full pairwise intersection
histogram.  The goldens pin the reproduction down bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import DesignError, DesignParams, IntersectionProfile
from .generators import CyclicBaseSpec

__all__ = ["CatalogEntry", "UnknownEntry", "catalog_entry", "catalog_names"]


class UnknownEntry(DesignError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    master_params: DesignParams
    base: CyclicBaseSpec
    k_prime: int
    mu: int
    profile: IntersectionProfile
    description: str

    @property
    def w(self) -> int:
        return self.master_params.v // self.master_params.k


def _entry(name, master_vkl, n, base_blocks, mu, profile, description):
    v, k, lam = master_vkl
    r = lam * (v - 1) // (k - 1)
    params = DesignParams(t=2, v=v, b=v * r // k, r=r, k=k, lam=lam)
    base = CyclicBaseSpec(
        n=n,
        has_infinity=True,
        base_class=tuple(tuple(sorted(block)) for block in base_blocks),
    )
    return CatalogEntry(
        name=name,
        master_params=params,
        base=base,
        k_prime=(v // k) // 2,
        mu=mu,
        profile=IntersectionProfile(tuple(profile)),
        description=description,
    )


# The fixed point is stored as index n per the global convention.
_ENTRIES: dict[str, CatalogEntry] = {
    entry.name: entry
    for entry in (
        _entry(
            "3-(24,12,15)",
            (24, 6, 5),
            23,
            (
                (23, 0, 1, 7, 15, 20),
                (2, 3, 4, 5, 10, 14),
                (6, 11, 13, 17, 19, 22),
                (8, 9, 12, 16, 18, 21),
            ),
            15,
            (69, 0, 46, 0, 506, 2208, 3864, 2208, 506, 0, 46, 0, 0),
            "cyclic (24,6,5) master over Z_23 plus a fixed point",
        ),
        _entry(
            "3-(28,14,18)",
            (28, 7, 6),
            27,
            (
                (27, 0, 5, 14, 15, 24, 25),
                (1, 10, 17, 20, 22, 23, 26),
                (2, 6, 8, 9, 13, 19, 21),
                (3, 4, 7, 11, 12, 16, 18),
            ),
            18,
            (81, 0, 0, 0, 54, 1080, 3132, 4428, 3132, 1080, 54, 0, 0, 0, 0),
            "cyclic (28,7,6) master over Z_27 plus a fixed point",
        ),
        _entry(
            "3-(30,15,65)",
            (30, 5, 4),
            29,
            (
                (29, 4, 8, 17, 18),
                (0, 1, 7, 24, 27),
                (2, 12, 15, 16, 23),
                (9, 11, 13, 21, 26),
                (3, 14, 20, 22, 25),
                (5, 6, 10, 19, 28),
            ),
            65,
            (290, 0, 0, 58, 1044, 10382, 24940, 47386, 47386, 24940,
             10382, 1044, 58, 0, 0, 0),
            "cyclic (30,5,4) master over Z_29 plus a fixed point",
        ),
        _entry(
            "3-(24,12,50)",
            (24, 4, 3),
            23,
            (
                (23, 0, 7, 10),
                (1, 8, 12, 22),
                (2, 5, 6, 11),
                (3, 9, 14, 18),
                (4, 16, 17, 19),
                (13, 15, 20, 21),
            ),
            50,
            (230, 0, 0, 1242, 9982, 23414, 36064, 23414, 9982, 1242, 0, 0, 0),
            "cyclic (24,4,3) master over Z_23 plus a fixed point",
        ),
        _entry(
            "3-(24,12,175)",
            (24, 3, 2),
            23,
            (
                (23, 16, 20),
                (0, 7, 21),
                (1, 3, 11),
                (4, 5, 18),
                (6, 12, 17),
                (2, 10, 13),
                (8, 9, 14),
                (15, 19, 22),
            ),
            175,
            (805, 46, 1380, 30314, 99958, 289432, 452180, 289432, 99958,
             30314, 1380, 46, 0),
            "cyclic (24,3,2) master over Z_23 plus a fixed point",
        ),
        _entry(
            "3-(30,15,819)",
            (30, 3, 2),
            29,
            (
                (29, 2, 22),
                (0, 1, 19),
                (6, 8, 27),
                (9, 15, 16),
                (7, 10, 14),
                (11, 25, 28),
                (12, 18, 23),
                (13, 21, 26),
                (4, 20, 24),
                (3, 5, 17),
            ),
            819,
            (3654, 0, 928, 115594, 242730, 1356272, 4482530, 7150008,
             7150008, 4482530, 1356272, 242730, 115594, 928, 0, 0),
            "cyclic (30,3,2) master over Z_29 plus a fixed point",
        ),
        _entry(
            "3-(32,16,21)",
            (32, 8, 7),
            31,
            (
                (31, 0, 1, 5, 16, 18, 25, 28),
                (3, 9, 17, 19, 20, 21, 24, 26),
                (2, 6, 7, 12, 14, 15, 23, 27),
                (4, 8, 10, 11, 13, 22, 29, 30),
            ),
            21,
            (93, 0, 0, 0, 0, 372, 930, 4836, 4836, 4836, 930, 372,
             0, 0, 0, 0, 0),
            "cyclic (32,8,7) master over Z_31 plus a fixed point",
        ),
        _entry(
            "3-(36,18,24)",
            (36, 9, 8),
            35,
            (
                (35, 1, 10, 11, 13, 15, 25, 26, 29),
                (0, 9, 16, 17, 18, 19, 22, 24, 30),
                (3, 4, 6, 12, 21, 23, 27, 31, 34),
                (2, 5, 7, 8, 14, 20, 28, 32, 33),
            ),
            24,
            (105, 0, 0, 0, 0, 70, 280, 2100, 4970, 7000, 4970, 2100,
             280, 70, 0, 0, 0, 0, 0),
            "cyclic (36,9,8) master over Z_35 plus a fixed point",
        ),
    )
}


def catalog_names() -> list[str]:
    return list(_ENTRIES)


def catalog_entry(name: str) -> CatalogEntry:
    try:
        return _ENTRIES[name]
    except KeyError:
        known = ", ".join(_ENTRIES)
        raise UnknownEntry(f"unknown catalog entry {name!r} (known: {known})") from None
