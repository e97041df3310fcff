"""Instance families for experiments, plus sign-pattern vertex filtering.

The random generator uses SplitMix64 with documented draw order, so a (seed,
dimension, size, bound) tuple denotes the same instance in any implementation
of this format.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement, Hyperplane, RankDeficientError
from .rational import rat
from .reverse_search import EnumerationResult

_MASK = (1 << 64) - 1


class GenerationError(RuntimeError):
    """Random draws kept failing validation within the retry budget."""


class SplitMix64:
    """SplitMix64: state += 0x9E3779B97F4A7C15; output is the mixed state."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def int_in(self, lo: int, hi: int) -> int:
        return lo + self.next_u64() % (hi - lo + 1)


def _axis_planes(d: int) -> list[Hyperplane]:
    zero, one = rat(0), rat(1)
    planes = []
    for axis in range(d):
        normal = tuple(one if k == axis else zero for k in range(d))
        planes.append(Hyperplane(normal, zero))  # y_axis = 0
        planes.append(Hyperplane(normal, one))   # y_axis = 1
    return planes


def gen_hypercube(d: int) -> Arrangement:
    """2d hyperplanes y_i = 0 and y_i = 1, ordered (y1=0, y1=1, y2=0, ...)."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return Arrangement(d, tuple(_axis_planes(d)))


def gen_cube_cone(d: int) -> Arrangement:
    """The unit cube's planes plus the cut y1 + ... + yd = 3/2 as the last label."""
    if d < 2:
        raise ValueError("d must be >= 2")
    planes = _axis_planes(d)
    planes.append(Hyperplane(tuple(rat(1) for _ in range(d)), rat(3, 2)))
    return Arrangement(d, tuple(planes))


def gen_stacked_cubes(d: int, k: int) -> Arrangement:
    """Unit cube plus k parallel planes y1 = 2, ..., y1 = k+1 (n = 2d + k)."""
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    planes = _axis_planes(d)
    zero = rat(0)
    e1 = tuple(rat(1) if axis == 0 else zero for axis in range(d))
    for level in range(2, k + 2):
        planes.append(Hyperplane(e1, rat(level)))
    return Arrangement(d, tuple(planes))


def gen_random(d: int, n: int, seed: int, coeff_bound: int = 10,
               max_attempts: int = 100) -> Arrangement:
    """Random integer arrangement, reproducible from the seed.

    Per hyperplane the offset is drawn first, then the d normal coordinates,
    each uniform in [-coeff_bound, coeff_bound]; a hyperplane is redrawn
    whole while its normal is the zero vector.  Rank-deficient instances are
    redrawn from the continuing stream.  Degenerate (coinciding-vertex)
    instances are kept.
    """
    if not (n >= d >= 1) or coeff_bound < 1:
        raise ValueError("need n >= d >= 1 and coeff_bound >= 1")
    rng = SplitMix64(seed)
    for _ in range(max_attempts):
        planes = []
        for _ in range(n):
            for _ in range(max_attempts):
                offset = rng.int_in(-coeff_bound, coeff_bound)
                normal = tuple(rng.int_in(-coeff_bound, coeff_bound) for _ in range(d))
                if any(c != 0 for c in normal):
                    planes.append(Hyperplane(tuple(rat(c) for c in normal), rat(offset)))
                    break
            else:
                raise GenerationError("could not draw a nonzero normal")
        try:
            return Arrangement(d, tuple(planes))
        except RankDeficientError:
            continue
    raise GenerationError("could not draw a full-rank instance")


@dataclass(frozen=True)
class SignPattern:
    """Per-hyperplane side constraints: '<=', '>=', or 'free' (user labels)."""

    signs: tuple[str, ...]

    def __post_init__(self):
        for s in self.signs:
            if s not in ("<=", ">=", "free"):
                raise ValueError(f"bad sign {s!r}")

    @classmethod
    def from_string(cls, text: str) -> "SignPattern":
        """'-' means <c,y> <= b, '+' means >=, '.' means free."""
        table = {"-": "<=", "+": ">=", ".": "free"}
        try:
            return cls(tuple(table[ch] for ch in text.strip()))
        except KeyError as exc:
            raise ValueError(f"bad sign character {exc.args[0]!r}") from None

    @classmethod
    def all_free(cls, n: int) -> "SignPattern":
        return cls(("free",) * n)


def filter_by_signs(result: EnumerationResult, arr: Arrangement,
                    pattern: SignPattern) -> EnumerationResult:
    """Keep the vertices satisfying every constrained side, exactly."""
    if len(pattern.signs) != arr.n:
        raise ValueError(f"pattern length {len(pattern.signs)} != n={arr.n}")
    plane_by_user = {user: arr.hyperplanes[k] for k, user in enumerate(arr.label_map)}
    kept = []
    for record in result.vertices:
        ok = True
        for user, sign in enumerate(pattern.signs, start=1):
            if sign == "free":
                continue
            slack = plane_by_user[user].slack(record.coords)
            if sign == "<=" and slack < 0:
                ok = False
                break
            if sign == ">=" and slack > 0:
                ok = False
                break
        if ok:
            kept.append(record)
    return EnumerationResult(tuple(kept), result.stats)
