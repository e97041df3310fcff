"""Criss-Cross pivoting: the baseline rule, both reverse conditions, and a
reverse search that reproduces the original condition's failure modes.

The rule needs an objective row.  The search is rooted at every optimal
(primal and dual feasible) dictionary, found by scanning all co-bases; roots
are processed in descending co-basis order.  In ``af-original`` mode the
necessary-only reverse condition is used and a shadow visited set watches for
descents into already-seen co-bases: such a revisit means the traversal left
the tree and would repeat work forever, so the run stops and reports the
closed walk.  In ``complemented`` mode the exact if-and-only-if condition is
used and the traversal is a clean forest walk needing no memory at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .arrangement import Arrangement, DependentCobasisError, initial_cobasis, solve_exact
from .dictionary import (
    Dictionary,
    ObjectiveRow,
    build_dictionary,
    lexmin_test,
    pivot,
)
from .oracle import independent_cobases
from .rational import Rat, ONE, ZERO
from .reverse_search import EnumerationResult, SearchStats, VisitHook, _emit
from .zero_rule import PivotPosition

AF_ORIGINAL = "af-original"
COMPLEMENTED = "complemented"


class CcNoPartnerError(RuntimeError):
    """The rule picked an infeasible variable but no pivot entry qualifies."""

    def __init__(self, index: int):
        super().__init__(f"no pivot partner for infeasible x{index}")
        self.index = index


@dataclass(frozen=True)
class ObjectiveDictionary:
    """A dictionary plus an objective row that pivots jointly with it."""

    base: Dictionary
    objective: ObjectiveRow

    @property
    def basis(self) -> tuple[int, ...]:
        return self.base.basis

    @property
    def cobasis(self) -> tuple[int, ...]:
        return self.base.cobasis

    def dump(self) -> str:
        row = self.objective.coefficients
        from .rational import format_rational

        text = f"x_f = {format_rational(row[0])} x_g"
        for label, c in zip(self.base.cobasis, row[1:]):
            sign = "-" if c < 0 else "+"
            text += f" {sign} {format_rational(abs(c))} x{label}"
        return self.base.dump() + "\n" + text


def attach_objective(dic: Dictionary, coefficients=None) -> ObjectiveDictionary:
    """Extend a dictionary with an objective row.

    The default is x_f = -sum of the current co-basic variables (constant
    term zero); any (d+1)-vector aligned to [g, co-basis] may be supplied.
    """
    d = dic.arr.dim
    if coefficients is None:
        coefficients = (ZERO,) + (-ONE,) * d
    coefficients = tuple(coefficients)
    if len(coefficients) != d + 1:
        raise ValueError(f"objective row needs {d + 1} coefficients")
    return ObjectiveDictionary(dic, ObjectiveRow(coefficients))


def pivot_objective(od: ObjectiveDictionary, r: int, s: int) -> ObjectiveDictionary:
    """Pivot (r, s) on the base dictionary, carrying the objective row along."""
    old = od.base
    new_base = pivot(old, r, s)
    js = 1 + old.cobasis.index(s)
    a_rs = old.rows[old.basis.index(r)][js]
    scaled = [x / a_rs for x in old.rows[old.basis.index(r)]]
    frow = od.objective.coefficients
    f_s = frow[js]
    old_col = {label: 1 + k for k, label in enumerate(old.cobasis)}
    out = [frow[0] - f_s * scaled[0]]
    for label in new_base.cobasis:
        if label == r:
            out.append(f_s / a_rs)
        else:
            k = old_col[label]
            out.append(frow[k] - f_s * scaled[k])
    return ObjectiveDictionary(new_base, ObjectiveRow(tuple(out)))


def cc_select(od: ObjectiveDictionary) -> PivotPosition | None:
    """Smallest primal- or dual-infeasible index and its pivot partner.

    Returns None iff the dictionary is optimal.  Primal infeasible: a basic
    row with negative constant; dual infeasible: a positive objective entry.
    """
    base, frow = od.base, od.objective.coefficients
    primal = next((i for i, row in zip(base.basis, base.rows) if row[0] < 0), None)
    dual = next((j for k, j in enumerate(base.cobasis) if frow[1 + k] > 0), None)
    if primal is None and dual is None:
        return None
    if dual is None or (primal is not None and primal < dual):
        row = base.rows[base.basis.index(primal)]
        for k, j in enumerate(base.cobasis):
            if row[1 + k] > 0:
                return PivotPosition(primal, j)
        raise CcNoPartnerError(primal)
    col = 1 + base.cobasis.index(dual)
    for i, row in zip(base.basis, base.rows):
        if row[col] < 0:
            return PivotPosition(i, dual)
    raise CcNoPartnerError(dual)


def cc_reverse_af(od: ObjectiveDictionary, s: int, r: int) -> bool:
    """The original, necessary-only reverse condition for entry (s, r)."""
    base, frow = od.base, od.objective.coefficients
    row_s = base.rows[base.basis.index(s)]
    col_r = 1 + base.cobasis.index(r)
    if row_s[0] > 0 and row_s[col_r] > 0:
        if all(c >= 0 for j, c in zip(base.cobasis, row_s[1:]) if j < s):
            return True
    if frow[col_r] < 0 and row_s[col_r] < 0:
        if all(row[col_r] <= 0 for i, row in zip(base.basis, base.rows) if i < r):
            return True
    return False


def cc_reverse_iff(od: ObjectiveDictionary, s: int, r: int) -> bool:
    """Exact reverse test for entry (s, r): true iff the rule applied after
    the pivot selects (r, s).  Decided from the current entries alone."""
    base, frow = od.base, od.objective.coefficients
    basis, cobasis = base.basis, base.cobasis
    row_s = base.rows[basis.index(s)]
    col_of = {label: 1 + k for k, label in enumerate(cobasis)}
    row_of = {label: base.rows[k] for k, label in enumerate(basis)}
    col_r = col_of[r]
    a_sg, a_sr, f_r = row_s[0], row_s[col_r], frow[col_r]

    if a_sr > 0 and a_sg > 0:
        ok = all(c >= 0 for j, c in zip(cobasis, row_s[1:]) if j < s)
        if ok:
            for j in range(1, r):
                if j in row_of:
                    row = row_of[j]
                    if row[0] * a_sr < row[col_r] * a_sg:
                        ok = False
                        break
                elif j in col_of:
                    if f_r * row_s[col_of[j]] < frow[col_of[j]] * a_sr:
                        ok = False
                        break
        if ok and s < r and f_r > 0:
            ok = False
        if ok:
            return True

    if a_sr < 0 and f_r < 0:
        ok = all(row[col_r] <= 0 for i, row in zip(basis, base.rows) if i < r)
        if ok:
            for i in range(1, s):
                if i in row_of:
                    row = row_of[i]
                    if row[col_r] * a_sg < row[0] * a_sr:
                        ok = False
                        break
                elif i in col_of:
                    if frow[col_of[i]] * a_sr < f_r * row_s[col_of[i]]:
                        ok = False
                        break
        if ok and r < s and a_sg < 0:
            ok = False
        if ok:
            return True

    return False


@dataclass(frozen=True)
class CycleReport:
    """Diagnostics from an af-original run.

    When a revisit is detected, ``cycle_cobases`` is the closed walk of
    co-bases (user labels) from the first arrival at the offending co-basis
    through the arrival that tripped the detector; its first and last entries
    coincide.
    """

    detected: bool
    cycle_cobases: tuple[tuple[int, ...], ...] = ()
    steps_before_detection: int = 0
    budget_exhausted: bool = False


class _Stop(Exception):
    def __init__(self, report: CycleReport):
        self.report = report


def _objective_row_at(arr: Arrangement, cobasis, c_f, b_f) -> tuple[Rat, ...]:
    """Re-express the affine objective b_f - <c_f, y> over a co-basis."""
    labels = sorted(cobasis)
    d = arr.dim
    matrix = [[arr.plane(j).normal[axis] for j in labels] for axis in range(d)]
    rhs = [[c_f[axis]] for axis in range(d)]
    solution = solve_exact(matrix, rhs)
    if solution is None:
        raise DependentCobasisError(f"co-basis {tuple(labels)} has dependent normals")
    coeffs = [solution[k][0] for k in range(d)]
    const = b_f - sum((a * arr.plane(j).offset for a, j in zip(coeffs, labels)), ZERO)
    return (const, *coeffs)


def default_step_budget(arr: Arrangement) -> int:
    return 10 * arr.n * math.comb(arr.n, arr.dim)


def enumerate_cc(
    arr: Arrangement,
    mode: str = COMPLEMENTED,
    step_budget: int | None = None,
    on_visit: VisitHook | None = None,
) -> tuple[EnumerationResult, CycleReport]:
    """Reverse search driven by the Criss-Cross rule.

    ``mode`` selects the reverse condition: ``complemented`` (exact) or
    ``af-original`` (necessary-only, with revisit detection and a step
    budget).  Returns the enumeration plus a cycle report; the report is all
    zeros for a clean run.
    """
    mode = mode.replace("_", "-").lower()
    if mode in ("af", "af-original", "original"):
        mode = AF_ORIGINAL
    elif mode in ("complemented", "iff"):
        mode = COMPLEMENTED
    else:
        raise ValueError(f"unknown mode {mode!r}")

    relabeled, root_cobasis = initial_cobasis(arr)
    d, n = relabeled.dim, relabeled.n
    budget = default_step_budget(relabeled) if step_budget is None else step_budget

    # The objective is fixed on the initial dictionary as -sum of its
    # co-basic slacks, then carried to every other co-basis as the same
    # affine function b_f - <c_f, y>.
    c_f = tuple(-sum((relabeled.plane(j).normal[axis] for j in root_cobasis), ZERO)
                for axis in range(d))
    b_f = -sum((relabeled.plane(j).offset for j in root_cobasis), ZERO)

    # Roots: every optimal dictionary, located by checking each co-basis.
    # Primal feasibility is read off the slack values at the vertex; the
    # objective row is only solved for the few that pass.
    roots = []
    for cobasis, coords in independent_cobases(relabeled):
        members = set(cobasis)
        if any(relabeled.plane(i).slack(coords) < 0
               for i in range(1, n + 1) if i not in members):
            continue
        frow = _objective_row_at(relabeled, cobasis, c_f, b_f)
        if any(c > 0 for c in frow[1:]):
            continue
        roots.append(cobasis)
    roots.sort(reverse=True)

    stats = SearchStats(layer_counts=[])
    vertices = []
    predicate = cc_reverse_af if mode == AF_ORIGINAL else cc_reverse_iff
    visited: set[tuple[int, ...]] = set()
    walk: list[tuple[int, ...]] = []

    def detect(cob: tuple[int, ...]) -> None:
        first = walk.index(cob)
        cycle = tuple(relabeled.to_user(c) for c in walk[first:])
        raise _Stop(CycleReport(True, cycle, stats.pivots))

    def arrive(od: ObjectiveDictionary, depth: int, backtrack: bool) -> None:
        cob = od.base.cobasis
        if mode == AF_ORIGINAL:
            walk.append(cob)
        if not backtrack:
            if mode == AF_ORIGINAL and cob in visited:
                detect(cob)
            stats.dictionaries_visited += 1
            stats.max_depth = max(stats.max_depth, depth)
            stats.lexmin_tests += 1
            if on_visit is not None:
                on_visit(relabeled.to_user(cob), depth)
            if lexmin_test(od.base):
                vertices.append(_emit(relabeled, od.base))
                stats.vertices_emitted += 1
        if mode == AF_ORIGINAL:
            visited.add(cob)

    def spend_pivot() -> None:
        stats.pivots += 1
        if stats.pivots > budget:
            raise _Stop(CycleReport(False, (), stats.pivots, budget_exhausted=True))

    def run_root(cobasis) -> None:
        frow = _objective_row_at(relabeled, cobasis, c_f, b_f)
        od = ObjectiveDictionary(build_dictionary(relabeled, cobasis), ObjectiveRow(frow))
        arrive(od, 0, backtrack=False)
        depth = 0
        pos = 0
        nb = n - d
        total = nb * d
        while True:
            found = None
            for idx in range(pos, total):
                col = od.base.cobasis[idx // nb]
                row = od.base.basis[idx % nb]
                stats.reverse_tests += 1
                if predicate(od, row, col):
                    found = (row, col)
                    break
            if found is not None:
                od = pivot_objective(od, found[0], found[1])
                spend_pivot()
                depth += 1
                arrive(od, depth, backtrack=False)
                pos = 0
            else:
                try:
                    sel = cc_select(od)
                except CcNoPartnerError:
                    return  # the rule cannot move; treat like a terminal
                if sel is None:
                    return  # scan finished at an optimal dictionary
                od = pivot_objective(od, sel.row, sel.col)
                spend_pivot()
                depth = max(depth - 1, 0)
                arrive(od, depth, backtrack=True)
                pos = _resume_after(od.base, sel.col, sel.row)

    report = CycleReport(False)
    try:
        for cobasis in roots:
            run_root(cobasis)
    except _Stop as stop:
        report = stop.report
    return EnumerationResult(tuple(vertices), stats), report


def _resume_after(base: Dictionary, s: int, r: int) -> int:
    """Scan position just after entry (s, r) in (column, row) order."""
    nb = len(base.basis)
    return base.cobasis.index(r) * nb + base.basis.index(s) + 1
