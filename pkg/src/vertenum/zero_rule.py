"""The Zero pivot rule, its terminal test, and the exact reverse condition.

The forward rule picks the smallest co-basis column s that has a nonzero
entry in some row with a smaller index, then the smallest such row.  An entry
(s, r) is a valid reverse exactly when pivoting it yields a dictionary on
which the forward rule selects (r, s); that holds if and only if

  i)   r < s and a_sr != 0,
  ii)  a_sj = 0 for every co-basic j with r < j < s,
  iii) a_ij = 0 for every co-basic j < s and every basic i < j.

Both directions are decided by inspecting the dictionary's entries alone; no
trial pivot is performed.
"""

from __future__ import annotations

from typing import NamedTuple

from .dictionary import Dictionary


class PivotPosition(NamedTuple):
    """A (basic row, co-basic column) pair naming an exchange."""

    row: int
    col: int


def zero_select(dic: Dictionary) -> PivotPosition | None:
    """The unique entry the rule selects, or None iff the dictionary is terminal."""
    for k, s in enumerate(dic.cobasis):
        best = None
        for i, row in zip(dic.basis, dic.rows):
            if i >= s:
                break
            if row[1 + k] != 0:
                best = i
                break
        if best is not None:
            return PivotPosition(best, s)
    return None


def valid_reverse_zero(dic: Dictionary, s: int, r: int) -> bool:
    """Entry-wise reverse test for a single (s, r); s basic, r co-basic."""
    pos_s = dic.basis.index(s)
    row_s = dic.rows[pos_s]
    if not (r < s) or row_s[1 + dic.cobasis.index(r)] == 0:
        return False
    for k, j in enumerate(dic.cobasis):
        if r < j < s and row_s[1 + k] != 0:
            return False
    for k, j in enumerate(dic.cobasis):
        if j >= s:
            break
        for i, row in zip(dic.basis, dic.rows):
            if i >= j:
                break
            if row[1 + k] != 0:
                return False
    return True


def reverse_candidates(dic: Dictionary) -> list[PivotPosition]:
    """All valid reverse entries, in scan order (ascending column, then row).

    One pass over the matrix: per basic row s the only entry that can satisfy
    conditions i)-ii) is the largest nonzero co-basic column below s, and
    condition iii) collapses to a single threshold on s.
    """
    # Condition iii fails exactly for rows s above the first co-basic column
    # that has a nonzero entry in a smaller-indexed row.
    bound = None
    for k, j in enumerate(dic.cobasis):
        for i, row in zip(dic.basis, dic.rows):
            if i >= j:
                break
            if row[1 + k] != 0:
                bound = j
                break
        if bound is not None:
            break
    found = []
    for s, row in zip(dic.basis, dic.rows):
        if bound is not None and s > bound:
            continue
        r = None
        for k, j in enumerate(dic.cobasis):
            if j >= s:
                break
            if row[1 + k] != 0:
                r = j
        if r is not None:
            found.append(PivotPosition(s, r))
    found.sort(key=lambda p: (p.col, p.row))
    return found


def candidate_index(dic: Dictionary, s: int, r: int) -> int:
    """Position of entry (s, r) in the scan order over all |B| x |N| entries."""
    return dic.cobasis.index(r) * len(dic.basis) + dic.basis.index(s)
