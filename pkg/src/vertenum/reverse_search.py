"""Vertex enumeration by reverse search over the Zero rule's spanning tree.

The terminal dictionary (co-basis {1..d} after relabeling) is the root.
Children are the valid reverse entries, scanned in ascending column then row
order.  Backtracking just applies the forward rule: because the reverse
condition is exact, the forward step lands on the parent and the entry we
came through is known, so the scan resumes right after it.  Auxiliary state
is the current dictionary, the depth, and one scan position; there is no
visited set and no stack.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .arrangement import Arrangement, VertexRecord, vertex_from_cobasis, initial_cobasis
from .dictionary import Dictionary, build_dictionary, lexmin_test, pivot
from .zero_rule import candidate_index, reverse_candidates, zero_select


@dataclass
class SearchStats:
    """Operation counters used to validate the complexity claims."""

    dictionaries_visited: int = 0
    pivots: int = 0
    reverse_tests: int = 0
    lexmin_tests: int = 0
    max_depth: int = 0
    layer_counts: list[int] = field(default_factory=list)
    vertices_emitted: int = 0
    stored_cobases: int | None = None

    def as_dict(self) -> dict:
        out = {
            "dictionaries_visited": self.dictionaries_visited,
            "pivots": self.pivots,
            "reverse_tests": self.reverse_tests,
            "lexmin_tests": self.lexmin_tests,
            "max_depth": self.max_depth,
            "layer_counts": list(self.layer_counts),
            "vertices_emitted": self.vertices_emitted,
        }
        if self.stored_cobases is not None:
            out["stored_cobases"] = self.stored_cobases
        return out


@dataclass(frozen=True)
class EnumerationResult:
    """Vertices in discovery order (user labels) plus run counters."""

    vertices: tuple[VertexRecord, ...]
    stats: SearchStats

    def coord_set(self):
        return {v.coords for v in self.vertices}


VisitHook = Callable[[tuple[int, ...], int], None]


def _emit(arr: Arrangement, dic: Dictionary) -> VertexRecord:
    coords = vertex_from_cobasis(arr, dic.cobasis)
    return VertexRecord(coords, arr.to_user(dic.cobasis), arr.to_user(dic.basis))


def enumerate_zero(arr: Arrangement, on_visit: VisitHook | None = None) -> EnumerationResult:
    """Enumerate every vertex exactly once using the Zero rule.

    ``on_visit`` is a test instrumentation hook called once per visited
    dictionary with (user-label co-basis, depth); the search itself never
    consults anything it records.
    """
    relabeled, root_cobasis = initial_cobasis(arr)
    d = relabeled.dim
    stats = SearchStats(layer_counts=[0] * (d + 1))
    vertices: list[VertexRecord] = []

    def visit(dic: Dictionary, depth: int) -> None:
        stats.dictionaries_visited += 1
        stats.layer_counts[depth] += 1
        stats.max_depth = max(stats.max_depth, depth)
        stats.lexmin_tests += 1
        if on_visit is not None:
            on_visit(relabeled.to_user(dic.cobasis), depth)
        if lexmin_test(dic):
            vertices.append(_emit(relabeled, dic))
            stats.vertices_emitted += 1

    dic = build_dictionary(relabeled, root_cobasis)
    stats.pivots = 0
    visit(dic, 0)
    depth = 0
    pos = 0
    total = len(dic.basis) * len(dic.cobasis)
    cands = reverse_candidates(dic) if d > 0 else []

    while True:
        nxt = None
        if depth < d:
            for cand in cands:
                idx = candidate_index(dic, cand.row, cand.col)
                if idx >= pos:
                    nxt = (cand, idx)
                    break
            # entries a naive scan would have examined before stopping
            stats.reverse_tests += (nxt[1] - pos + 1) if nxt else (total - pos)
        if nxt is not None:
            entry, _ = nxt
            dic = pivot(dic, entry.row, entry.col)
            stats.pivots += 1
            depth += 1
            visit(dic, depth)
            pos = 0
            # at the deepest layer only the lex-min test matters; skip scanning
            cands = reverse_candidates(dic) if depth < d else []
        else:
            if depth == 0:
                break
            sel = zero_select(dic)
            dic = pivot(dic, sel.row, sel.col)
            stats.pivots += 1
            depth -= 1
            cands = reverse_candidates(dic)
            pos = candidate_index(dic, sel.col, sel.row) + 1

    return EnumerationResult(tuple(vertices), stats)
