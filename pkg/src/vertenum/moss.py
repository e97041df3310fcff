"""Stored-search baseline: ratio-test adjacency plus breadth-first search.

Every column of a dictionary is ratio-tested; the rows attaining the smallest
positive ratio, the largest negative ratio, and every zero ratio are pivot
candidates (ties included).  Zero ratios keep co-bases at a degenerate vertex
reachable; without them completeness fails.  The search stores every co-basis
it has seen, which is exactly the storage cost this baseline is known for.
"""

from __future__ import annotations

from collections import deque

from .arrangement import Arrangement, initial_cobasis
from .dictionary import Dictionary, build_dictionary, lexmin_test, pivot
from .reverse_search import EnumerationResult, SearchStats, VisitHook, _emit
from .zero_rule import PivotPosition


def adjacent_pivots(dic: Dictionary) -> list[PivotPosition]:
    """All candidate exchanges: per column, the extreme-ratio and zero-ratio rows."""
    out: list[PivotPosition] = []
    for k, s in enumerate(dic.cobasis):
        zeros: list[int] = []
        best_pos = None
        pos_rows: list[int] = []
        best_neg = None
        neg_rows: list[int] = []
        for i, row in zip(dic.basis, dic.rows):
            a_is = row[1 + k]
            if a_is == 0:
                continue
            t = row[0] / a_is
            if t == 0:
                zeros.append(i)
            elif t > 0:
                if best_pos is None or t < best_pos:
                    best_pos, pos_rows = t, [i]
                elif t == best_pos:
                    pos_rows.append(i)
            else:
                if best_neg is None or t > best_neg:
                    best_neg, neg_rows = t, [i]
                elif t == best_neg:
                    neg_rows.append(i)
        for i in sorted(zeros + pos_rows + neg_rows):
            out.append(PivotPosition(i, s))
    return out


def enumerate_moss(arr: Arrangement, on_visit: VisitHook | None = None) -> EnumerationResult:
    """Breadth-first enumeration with a stored visited co-basis set."""
    relabeled, root_cobasis = initial_cobasis(arr)
    stats = SearchStats(layer_counts=[])
    vertices = []
    root = build_dictionary(relabeled, root_cobasis)
    visited = {root.cobasis}
    queue: deque[tuple[Dictionary, int]] = deque([(root, 0)])
    while queue:
        dic, level = queue.popleft()
        stats.dictionaries_visited += 1
        stats.max_depth = max(stats.max_depth, level)
        while len(stats.layer_counts) <= level:
            stats.layer_counts.append(0)
        stats.layer_counts[level] += 1
        stats.lexmin_tests += 1
        if on_visit is not None:
            on_visit(relabeled.to_user(dic.cobasis), level)
        if lexmin_test(dic):
            vertices.append(_emit(relabeled, dic))
            stats.vertices_emitted += 1
        for r, s in adjacent_pivots(dic):
            child_cobasis = tuple(sorted(set(dic.cobasis) - {s} | {r}))
            if child_cobasis in visited:
                continue
            visited.add(child_cobasis)
            child = pivot(dic, r, s)
            stats.pivots += 1
            queue.append((child, level + 1))
    stats.stored_cobases = len(visited)
    return EnumerationResult(tuple(vertices), stats)
