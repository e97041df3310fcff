"""Dictionaries over co-bases and the exact pivot operation.

A dictionary expresses the basic slack variables x_i (i in B) as affine
combinations of the co-basic ones: x_i = a_ig x_g + sum_j a_ij x_j, where x_g
is the constant 1.  Rows are kept in ascending basis order and columns in
[g, ascending co-basis] order, so equal dictionaries compare equal
structurally.  Dictionaries are immutable; pivoting returns a new value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement, DependentCobasisError, solve_exact
from .rational import Rat, ONE, ZERO, format_rational


class SingularPivotError(ValueError):
    """Pivot entry is exactly zero."""


class PivotIndexError(LookupError):
    """Pivot row is not basic or pivot column is not co-basic."""


class ConsistencyError(RuntimeError):
    """A dictionary's rows stopped agreeing with the instance data."""


_CHECK = False
checks_performed = 0


def set_consistency_checks(enabled: bool) -> None:
    """Toggle re-derivation of every built/pivoted dictionary from the instance."""
    global _CHECK
    _CHECK = enabled


@dataclass(frozen=True)
class Dictionary:
    """One combinatorial state: basis B, co-basis N, and exact coefficients.

    ``rows[i]`` belongs to ``basis[i]``; ``rows[i][0]`` is the constant column
    and ``rows[i][1 + j]`` the coefficient of ``cobasis[j]``.
    """

    arr: Arrangement
    basis: tuple[int, ...]
    cobasis: tuple[int, ...]
    rows: tuple[tuple[Rat, ...], ...]

    def entry(self, i: int, j: int) -> Rat:
        """Coefficient of co-basic x_j in the row of basic x_i."""
        return self.rows[self.basis.index(i)][1 + self.cobasis.index(j)]

    def constant(self, i: int) -> Rat:
        """Constant-column entry of the row of basic x_i."""
        return self.rows[self.basis.index(i)][0]

    def dump(self) -> str:
        """One line per basic variable, exact rationals, for golden comparisons."""
        lines = []
        for i, row in zip(self.basis, self.rows):
            text = f"x{i} = {format_rational(row[0])} x_g"
            for label, c in zip(self.cobasis, row[1:]):
                sign = "-" if c < 0 else "+"
                text += f" {sign} {format_rational(abs(c))} x{label}"
            lines.append(text)
        return "\n".join(lines)


@dataclass(frozen=True)
class ObjectiveRow:
    """Extra row of objective coefficients, aligned to [g, co-basis] columns."""

    coefficients: tuple[Rat, ...]


def _verify(dic: Dictionary) -> None:
    global checks_performed
    checks_performed += 1
    arr, d = dic.arr, dic.arr.dim
    planes = [arr.plane(j) for j in dic.cobasis]
    for i, row in zip(dic.basis, dic.rows):
        target = arr.plane(i)
        for axis in range(d):
            acc = ZERO
            for coeff, plane in zip(row[1:], planes):
                acc += coeff * plane.normal[axis]
            if acc != target.normal[axis]:
                raise ConsistencyError(f"row x{i}: normals no longer combine exactly")
        acc = ZERO
        for coeff, plane in zip(row[1:], planes):
            acc += coeff * plane.offset
        if row[0] != target.offset - acc:
            raise ConsistencyError(f"row x{i}: constant column drifted")


def build_dictionary(arr: Arrangement, cobasis) -> Dictionary:
    """Construct the unique dictionary for a co-basis directly from the instance.

    For each basic i, solve c_i = sum_j a_ij c_j over the co-basis normals,
    then read off the constant a_ig = b_i - sum_j a_ij b_j.
    """
    d = arr.dim
    nlabels = sorted(cobasis)
    if len(nlabels) != d or len(set(nlabels)) != d:
        raise DependentCobasisError(f"co-basis must be {d} distinct labels")
    blabels = [i for i in range(1, arr.n + 1) if i not in set(nlabels)]
    matrix = [[arr.plane(j).normal[axis] for j in nlabels] for axis in range(d)]
    rhs = [[arr.plane(i).normal[axis] for i in blabels] for axis in range(d)]
    solution = solve_exact(matrix, rhs)
    if solution is None:
        raise DependentCobasisError(f"co-basis {tuple(nlabels)} has dependent normals")
    offsets = [arr.plane(j).offset for j in nlabels]
    rows = []
    for k, i in enumerate(blabels):
        coeffs = [solution[j][k] for j in range(d)]
        const = arr.plane(i).offset - sum((a * b for a, b in zip(coeffs, offsets)), ZERO)
        rows.append((const, *coeffs))
    dic = Dictionary(arr, tuple(blabels), tuple(nlabels), tuple(rows))
    if _CHECK:
        _verify(dic)
    return dic


def pivot(dic: Dictionary, r: int, s: int) -> Dictionary:
    """Exchange basic x_r with co-basic x_s; rows and columns stay sorted."""
    if r not in dic.basis:
        raise PivotIndexError(f"x{r} is not basic")
    if s not in dic.cobasis:
        raise PivotIndexError(f"x{s} is not co-basic")
    ir = dic.basis.index(r)
    js = 1 + dic.cobasis.index(s)
    a_rs = dic.rows[ir][js]
    if a_rs == 0:
        raise SingularPivotError(f"entry ({r},{s}) is zero")
    inv = ONE / a_rs
    scaled = [x * inv for x in dic.rows[ir]]  # pivot row divided by a_rs

    new_basis = tuple(sorted(set(dic.basis) - {r} | {s}))
    new_cobasis = tuple(sorted(set(dic.cobasis) - {s} | {r}))
    old_col = {label: 1 + k for k, label in enumerate(dic.cobasis)}

    def entering_row() -> tuple[Rat, ...]:
        out = [-scaled[0]]
        for label in new_cobasis:
            out.append(inv if label == r else -scaled[old_col[label]])
        return tuple(out)

    def carried_row(old: tuple[Rat, ...]) -> tuple[Rat, ...]:
        a_is = old[js]
        if a_is == 0:
            out = [old[0]]
            for label in new_cobasis:
                out.append(ZERO if label == r else old[old_col[label]])
            return tuple(out)
        out = [old[0] - a_is * scaled[0]]
        for label in new_cobasis:
            if label == r:
                out.append(a_is * inv)
            else:
                k = old_col[label]
                out.append(old[k] - a_is * scaled[k])
        return tuple(out)

    rows = []
    for i in new_basis:
        if i == s:
            rows.append(entering_row())
        else:
            rows.append(carried_row(dic.rows[dic.basis.index(i)]))
    result = Dictionary(dic.arr, new_basis, new_cobasis, tuple(rows))
    if _CHECK:
        _verify(result)
    return result


def lexmin_test(dic: Dictionary) -> bool:
    """True iff the basis is lexicographically minimum among all dictionaries
    at the same vertex: no basic row has a zero constant together with a
    nonzero entry in a smaller-labeled column."""
    for i, row in zip(dic.basis, dic.rows):
        if row[0] == 0:
            for label, c in zip(dic.cobasis, row[1:]):
                if label >= i:
                    break
                if c != 0:
                    return False
    return True
