"""Brute-force subset oracle: solve every independent d-subset and deduplicate.

This is the ground truth the search algorithms are checked against.  It never
pivots; each vertex comes from an independent elimination of its defining
subsystem, so agreement between the oracle and a search is a two-route check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .arrangement import Arrangement, VertexRecord
from .rational import Rat, ONE


def independent_cobases(arr: Arrangement) -> Iterator[tuple[tuple[int, ...], tuple[Rat, ...]]]:
    """Yield (cobasis, vertex) for every independent d-subset, lexicographically.

    Depth-first over label combinations, keeping a Jordan-reduced copy of the
    chosen rows so dependent branches are pruned as soon as they appear and the
    vertex drops out of the reduction for free at the leaves.
    """
    d, n = arr.dim, arr.n
    augmented = [list(arr.plane(i).normal) + [arr.plane(i).offset] for i in range(1, n + 1)]

    def descend(start: int, chosen: tuple[int, ...],
                rows: list[list[Rat]], cols: list[int]):
        if len(chosen) == d:
            coords = [None] * d
            for row, col in zip(rows, cols):
                coords[col] = row[d]
            yield chosen, tuple(coords)
            return
        slots = d - len(chosen)
        for j in range(start, n - slots + 2):
            v = list(augmented[j - 1])
            for row, col in zip(rows, cols):
                f = v[col]
                if f != 0:
                    v = [x - f * y for x, y in zip(v, row)]
            col = next((c for c in range(d) if v[c] != 0), None)
            if col is None:
                continue  # dependent on the chosen prefix
            inv = ONE / v[col]
            v = [x * inv for x in v]
            new_rows = []
            for row in rows:
                f = row[col]
                new_rows.append([x - f * y for x, y in zip(row, v)] if f != 0 else row)
            new_rows.append(v)
            yield from descend(j + 1, chosen + (j,), new_rows, cols + [col])

    yield from descend(1, (), [], [])


@dataclass(frozen=True)
class OracleResult:
    """Every distinct vertex once, plus all co-bases through each vertex."""

    vertices: tuple[VertexRecord, ...]
    cobases_by_vertex: dict[tuple[Rat, ...], tuple[tuple[int, ...], ...]]
    cobasis_count: int

    @property
    def count(self) -> int:
        return len(self.vertices)

    def coord_set(self) -> set[tuple[Rat, ...]]:
        return {v.coords for v in self.vertices}


def oracle_enumerate(arr: Arrangement) -> OracleResult:
    """Enumerate all vertices by brute force, deterministically ordered by coords.

    Each record carries the lexicographically minimum basis over all co-bases
    through its vertex, so records line up with what the searches emit.
    """
    groups: dict[tuple[Rat, ...], list[tuple[int, ...]]] = {}
    total = 0
    for cobasis, coords in independent_cobases(arr):
        total += 1
        groups.setdefault(coords, []).append(arr.to_user(cobasis))
    all_user = set(arr.label_map)
    records = []
    for coords in sorted(groups):
        cobases = sorted(groups[coords])
        basis = min(tuple(sorted(all_user - set(cb))) for cb in cobases)
        cobasis = tuple(sorted(all_user - set(basis)))
        records.append(VertexRecord(coords, cobasis, basis))
    frozen = {coords: tuple(sorted(cbs)) for coords, cbs in groups.items()}
    return OracleResult(tuple(records), frozen, total)
