"""Problem instances: hyperplanes, arrangements, and exact linear algebra.

A hyperplane is <c, y> = b with a rational normal c and offset b.  An
arrangement is an ordered list of n >= d hyperplanes in R^d whose normals
span the space, so at least one vertex exists.  Hyperplanes carry 1-based
labels; a relabeled arrangement remembers the permutation back to the labels
the user supplied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .rational import Rat, ZERO, ONE, format_rational, parse_rational, rat


class InstanceError(ValueError):
    """Malformed or invalid instance text/data."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
        self.line = line
        self.column = column


class RankDeficientError(InstanceError):
    """Normals do not span R^d: no vertex exists."""


class DependentCobasisError(ValueError):
    """The selected hyperplane normals are linearly dependent."""


def solve_exact(matrix: list[list[Rat]], rhs: list[list[Rat]]) -> list[list[Rat]] | None:
    """Solve A X = B exactly for square A; returns X (d x m) or None if singular.

    Plain Gauss-Jordan with first-nonzero pivoting.  Exactness makes pivot
    choice irrelevant for correctness.
    """
    d = len(matrix)
    m = len(rhs[0]) if d else 0
    a = [list(row_a) + list(row_b) for row_a, row_b in zip(matrix, rhs)]
    for col in range(d):
        pivot_row = next((r for r in range(col, d) if a[r][col] != 0), None)
        if pivot_row is None:
            return None
        a[col], a[pivot_row] = a[pivot_row], a[col]
        inv = ONE / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(d):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[d:d + m] for row in a]


def rank_of(vectors: list[tuple[Rat, ...]]) -> int:
    """Rank of a list of rational vectors, by exact row reduction."""
    rows = [list(v) for v in vectors]
    width = len(rows[0]) if rows else 0
    rank = 0
    for col in range(width):
        pivot_row = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        inv = ONE / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


@dataclass(frozen=True)
class Hyperplane:
    """One hyperplane <normal, y> = offset."""

    normal: tuple[Rat, ...]
    offset: Rat

    def __post_init__(self):
        if all(c == 0 for c in self.normal):
            raise InstanceError("zero normal vector")

    def slack(self, point: tuple[Rat, ...]) -> Rat:
        """offset - <normal, point>; zero exactly on the hyperplane."""
        return self.offset - sum((c * y for c, y in zip(self.normal, point)), ZERO)


@dataclass(frozen=True)
class Arrangement:
    """An ordered, validated collection of hyperplanes with full-rank normals.

    ``label_map[i-1]`` is the user label of the hyperplane carrying internal
    label i; it is the identity for freshly parsed or generated instances.
    """

    dim: int
    hyperplanes: tuple[Hyperplane, ...]
    label_map: tuple[int, ...] = field(default=())

    def __post_init__(self):
        n, d = len(self.hyperplanes), self.dim
        if d < 1:
            raise InstanceError("dimension must be positive")
        if n < d:
            raise InstanceError(f"need at least d={d} hyperplanes, got {n}")
        for h in self.hyperplanes:
            if len(h.normal) != d:
                raise InstanceError("hyperplane dimension mismatch")
        if not self.label_map:
            object.__setattr__(self, "label_map", tuple(range(1, n + 1)))
        if sorted(self.label_map) != list(range(1, n + 1)):
            raise InstanceError("label map is not a permutation of 1..n")
        if rank_of([h.normal for h in self.hyperplanes]) < d:
            raise RankDeficientError("normals do not span the space; no vertex exists")

    @property
    def n(self) -> int:
        return len(self.hyperplanes)

    def plane(self, label: int) -> Hyperplane:
        """Hyperplane with internal label (1-based)."""
        return self.hyperplanes[label - 1]

    def to_user(self, labels) -> tuple[int, ...]:
        """Map internal labels back to the user's labels, sorted."""
        return tuple(sorted(self.label_map[i - 1] for i in labels))


@dataclass(frozen=True)
class VertexRecord:
    """A vertex with the co-basis/basis that certifies it, in user labels."""

    coords: tuple[Rat, ...]
    cobasis: tuple[int, ...]
    basis: tuple[int, ...]


def parse_arrangement(text: str) -> Arrangement:
    """Parse the instance file format.

    First non-comment line is "d n"; each of the next n lines is
    "b c1 c2 ... cd".  Tokens are integers or p/q rationals; '#' starts a
    comment.  The result always has the identity label map.
    """
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body.split()))
    if not rows:
        raise InstanceError("empty instance")
    head_line, head = rows[0]
    if len(head) != 2:
        raise InstanceError("header must be 'd n'", line=head_line)
    try:
        d, n = int(head[0]), int(head[1])
    except ValueError:
        raise InstanceError("header must contain two integers", line=head_line) from None
    if len(rows) - 1 != n:
        raise InstanceError(f"expected {n} hyperplane lines, found {len(rows) - 1}")
    planes = []
    for lineno, tokens in rows[1:]:
        if len(tokens) != d + 1:
            raise InstanceError(f"expected {d + 1} tokens, found {len(tokens)}", line=lineno)
        values = []
        for col, tok in enumerate(tokens, start=1):
            try:
                values.append(parse_rational(tok))
            except ValueError:
                raise InstanceError(f"bad rational {tok!r}", line=lineno, column=col) from None
        normal = tuple(values[1:])
        if all(c == 0 for c in normal):
            raise InstanceError("zero normal vector", line=lineno)
        planes.append(Hyperplane(normal, values[0]))
    return Arrangement(d, tuple(planes))


def format_instance(arr: Arrangement, comment: str = "") -> str:
    """Write the instance file format; parse(format(a)) reproduces a exactly."""
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"{arr.dim} {arr.n}")
    for h in arr.hyperplanes:
        lines.append(" ".join([format_rational(h.offset)] + [format_rational(c) for c in h.normal]))
    return "\n".join(lines) + "\n"


def vertex_from_cobasis(arr: Arrangement, cobasis) -> tuple[Rat, ...]:
    """Exact solution of the d equations <c_j, y> = b_j for j in the co-basis."""
    labels = sorted(cobasis)
    matrix = [list(arr.plane(j).normal) for j in labels]
    rhs = [[arr.plane(j).offset] for j in labels]
    solution = solve_exact(matrix, rhs)
    if solution is None:
        raise DependentCobasisError(f"co-basis {tuple(labels)} has dependent normals")
    return tuple(row[0] for row in solution)


def initial_cobasis(arr: Arrangement) -> tuple[Arrangement, tuple[int, ...]]:
    """Pick the greedy lexicographically-first independent d-subset and relabel.

    The selected hyperplanes get labels 1..d and the rest d+1..n, preserving
    relative order on both sides.  In the relabeled instance {1, ..., d} is
    the lexicographically smallest co-basis.
    """
    d = arr.dim
    chosen: list[int] = []
    rows: list[list[Rat]] = []  # Jordan-reduced normals of the chosen planes
    pivot_cols: list[int] = []
    for label in range(1, arr.n + 1):
        v = list(arr.plane(label).normal)
        for row, col in zip(rows, pivot_cols):
            f = v[col]
            if f != 0:
                v = [x - f * y for x, y in zip(v, row)]
        col = next((c for c in range(d) if v[c] != 0), None)
        if col is None:
            continue
        inv = ONE / v[col]
        v = [x * inv for x in v]
        for row in rows:
            f = row[col]
            if f != 0:
                row[:] = [x - f * y for x, y in zip(row, v)]
        rows.append(v)
        pivot_cols.append(col)
        chosen.append(label)
        if len(chosen) == d:
            break
    if len(chosen) < d:  # excluded by the Arrangement rank invariant
        raise RankDeficientError("normals do not span the space; no vertex exists")
    rest = [label for label in range(1, arr.n + 1) if label not in set(chosen)]
    order = chosen + rest
    planes = tuple(arr.hyperplanes[label - 1] for label in order)
    label_map = tuple(arr.label_map[label - 1] for label in order)
    return Arrangement(d, planes, label_map), tuple(range(1, d + 1))
