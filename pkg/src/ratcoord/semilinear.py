"""Linear and semilinear sets: membership, enumeration, and disambiguation.

A linear set is ``{base + n_1*p_1 + ... + n_k*p_k : n_j in N}``; a semilinear
set is a finite union of linear sets.  A linear set is unambiguous when every
member has exactly one coefficient tuple.  The operations here are all exact
and bounded: representation counting is an exhaustive pruned search, and the
disambiguation procedure is a restricted greedy search whose output is only
ever returned together with a successful box certification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import _kernels
from ._exactlinalg import rank, solve_columns
from .errors import BudgetExceeded, DecompositionError


@dataclass(frozen=True)
class LinearSet:
    """Base-plus-periods lattice point set.

    Zero periods and duplicate periods are dropped at construction (either
    makes unambiguity impossible) and recorded in ``stripped_periods`` so the
    normalization is visible to callers.
    """

    base: tuple[int, ...]
    periods: tuple[tuple[int, ...], ...] = ()
    stripped_periods: tuple[tuple[int, ...], ...] = field(
        default=(), compare=False
    )

    def __post_init__(self):
        base = tuple(int(x) for x in self.base)
        object.__setattr__(self, "base", base)
        kept: list[tuple[int, ...]] = []
        stripped: list[tuple[int, ...]] = []
        for period in self.periods:
            period = tuple(int(x) for x in period)
            if len(period) != len(base):
                raise ValueError(
                    f"period {period} has wrong dimension (base is {base})"
                )
            if all(x == 0 for x in period) or period in kept:
                stripped.append(period)
            else:
                kept.append(period)
        object.__setattr__(self, "periods", tuple(kept))
        object.__setattr__(
            self, "stripped_periods", self.stripped_periods + tuple(stripped)
        )

    @property
    def dim(self) -> int:
        return len(self.base)


@dataclass(frozen=True)
class SemilinearSet:
    """Finite union of linear sets of one common dimension.

    ``certified`` means the parts are known pairwise disjoint and each
    unambiguous over a verification box; it is set only by the validation
    path, never by constructing the value.
    """

    parts: tuple[LinearSet, ...]
    certified: bool = field(default=False, init=False)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        dims = {part.dim for part in self.parts}
        if len(dims) > 1:
            raise ValueError(f"parts have mixed dimensions {sorted(dims)}")

    @property
    def dim(self):
        return self.parts[0].dim if self.parts else None


def _mark_certified(s: SemilinearSet) -> SemilinearSet:
    out = SemilinearSet(s.parts)
    object.__setattr__(out, "certified", True)
    return out


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class Unambiguous:
    """Every member has exactly one coefficient tuple."""


@dataclass(frozen=True)
class AmbiguousWitness:
    """A concrete point with at least two coefficient tuples."""

    point: tuple[int, ...]


@dataclass(frozen=True)
class Unknown:
    """Search exhausted the box or budget without a verdict."""


# ---------------------------------------------------------------------------
# helpers

@lru_cache(maxsize=4096)
def _positive_functional(periods: tuple, dim: int):
    """Integer w with w . p >= 1 for every period, or None.

    Searched over a small grid; enough for every set this package builds
    (coordination-set periods all advance the path-length coordinate).
    """
    if not periods:
        return None
    if dim > 6:
        candidates = [
            tuple(1 if i == j else 0 for i in range(dim)) for j in range(dim)
        ]
        candidates += [tuple(-w for w in c) for c in candidates]
    else:
        radius = 3 if dim <= 4 else 1
        candidates = sorted(
            itertools.product(range(-radius, radius + 1), repeat=dim),
            key=lambda w: (sum(abs(x) for x in w), w),
        )
    for w in candidates:
        if any(x != 0 for x in w) and all(
            sum(a * b for a, b in zip(w, p)) >= 1 for p in periods
        ):
            return w
    return None


@lru_cache(maxsize=4096)
def _congruence_invariants(periods: tuple, dim: int):
    """Functionals w and moduli q with w . p = 0 mod q for all periods.

    Any member v of the linear set then satisfies w.(v - base) = 0 mod q, a
    cheap necessary condition used to prune representation searches.
    """
    invariants = []
    for q in (2, 3):
        if dim > 6:
            break
        for w in itertools.product(range(q), repeat=dim):
            if all(x == 0 for x in w):
                continue
            if all(sum(a * b for a, b in zip(w, p)) % q == 0 for p in periods):
                invariants.append((q, w))
    return tuple(invariants)


def _check_dim(l_or_s, v):
    dim = l_or_s.dim
    if dim is not None and len(v) != dim:
        raise ValueError(f"vector {v} has wrong dimension (expected {dim})")


# ---------------------------------------------------------------------------
# representation counting and membership

def count_representations(
    l: LinearSet,
    v,
    budget: int = 1_000_000,
    congruence_pruning: bool = True,
) -> int:
    """Exact number of coefficient tuples representing v in the linear set.

    Exhaustive search over coefficient tuples, pruned by sign-monotone
    coordinates, a positive functional when one exists, congruence
    invariants, and a rational-relaxation feasibility check; ``budget`` caps
    explored nodes and exceeding it raises BudgetExceeded.
    """
    _check_dim(l, v)
    target = tuple(int(a) - b for a, b in zip(v, l.base))
    periods = l.periods
    k = len(periods)
    if k == 0:
        return 1 if all(x == 0 for x in target) else 0
    if congruence_pruning:
        for q, w in _congruence_invariants(periods, l.dim):
            if sum(a * b for a, b in zip(w, target)) % q != 0:
                return 0
    relaxed = solve_columns(periods, target)
    if relaxed is None:
        return 0
    solution, free = relaxed
    if not free:
        ok = all(x.denominator == 1 and x >= 0 for x in solution)
        return 1 if ok else 0
    return _count_search(periods, target, budget)


def _count_search(periods, target, budget):
    dim = len(target)
    k = len(periods)
    w = _positive_functional(periods, dim)
    suffix_nonneg = [[True] * dim for _ in range(k + 1)]
    suffix_nonpos = [[True] * dim for _ in range(k + 1)]
    for j in range(k - 1, -1, -1):
        for i in range(dim):
            suffix_nonneg[j][i] = suffix_nonneg[j + 1][i] and periods[j][i] >= 0
            suffix_nonpos[j][i] = suffix_nonpos[j + 1][i] and periods[j][i] <= 0
    if w is not None:
        wperiods = [sum(a * b for a, b in zip(w, p)) for p in periods]
    nodes = 0

    def rec(j, residual):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(
                f"representation search exceeded {budget} nodes"
            )
        if j == k:
            return 1 if all(x == 0 for x in residual) else 0
        for i in range(dim):
            if suffix_nonneg[j][i] and residual[i] < 0:
                return 0
            if suffix_nonpos[j][i] and residual[i] > 0:
                return 0
        period = periods[j]
        if j == k - 1:
            # single remaining period: the multiplicity is forced
            pivot = next(i for i in range(dim) if period[i] != 0)
            n, r = divmod(residual[pivot], period[pivot])
            if r != 0 or n < 0:
                return 0
            ok = all(residual[i] == n * period[i] for i in range(dim))
            return 1 if ok else 0
        bound = None
        for i in range(dim):
            if period[i] > 0 and suffix_nonneg[j + 1][i]:
                b = residual[i] // period[i]
                bound = b if bound is None else min(bound, b)
            elif period[i] < 0 and suffix_nonpos[j + 1][i]:
                b = residual[i] // period[i]  # both negative: floor is fine
                bound = b if bound is None else min(bound, b)
        if w is not None:
            room = sum(a * b for a, b in zip(w, residual))
            if room < 0:
                return 0
            b = room // wperiods[j]
            bound = b if bound is None else min(bound, b)
        if bound is None:
            bound = budget  # no structural bound; node budget backstops
        total = 0
        res = list(residual)
        for _ in range(bound + 1):
            total += rec(j + 1, res)
            res = [a - b for a, b in zip(res, period)]
        return total

    return rec(0, list(target))


def member(s: SemilinearSet, v, budget: int = 1_000_000) -> bool:
    """True iff some part represents v at least once."""
    _check_dim(s, v)
    return any(
        count_representations(part, v, budget=budget) >= 1 for part in s.parts
    )


# ---------------------------------------------------------------------------
# enumeration

def _part_points_in_box(part: LinearSet, lo, hi, budget):
    w = _positive_functional(part.periods, part.dim)
    return _kernels.linear_points_in_box(
        part.base, part.periods, tuple(lo), tuple(hi), w, budget
    )


def enumerate_in_box(s: SemilinearSet, lo, hi, budget: int = 5_000_000):
    """Members of the set inside the box, with set semantics across parts."""
    lo, hi = tuple(int(x) for x in lo), tuple(int(x) for x in hi)
    _check_dim(s, lo)
    _check_dim(s, hi)
    if any(a > b for a, b in zip(lo, hi)):
        raise ValueError(f"box is empty: lo={lo} hi={hi}")
    points = set()
    for part in s.parts:
        points |= _part_points_in_box(part, lo, hi, budget)
    return points


def _slice_points(part: LinearSet, idx: int, y_max: int):
    """Points of one part with coordinate-idx projection <= y_max."""
    weights = [p[idx] for p in part.periods]
    out = set()
    seen = set()

    def rec(j, cur):
        if j == len(part.periods):
            out.add(tuple(cur))
            return
        key = (j, tuple(cur))
        if key in seen:
            return
        seen.add(key)
        step = part.periods[j]
        point = list(cur)
        for _ in range((y_max - cur[idx]) // weights[j] + 1):
            rec(j + 1, point)
            point = [a + b for a, b in zip(point, step)]

    if part.base[idx] <= y_max:
        rec(0, list(part.base))
    return out


def slice_counts(s: SemilinearSet, i: int, y_max: int) -> list[int]:
    """Number of members with coordinate-i projection equal to y, y=0..y_max.

    Requires every period to have strictly positive projection on i (which
    makes every slice finite) and every base projection nonnegative.
    """
    if y_max < 0:
        raise ValueError("y_max must be nonnegative")
    idx = i - 1
    for part in s.parts:
        if not (0 <= idx < part.dim):
            raise ValueError(f"coordinate index {i} out of range")
        if part.base[idx] < 0:
            raise ValueError(
                f"base {part.base} has negative coordinate-{i} projection"
            )
        for period in part.periods:
            if period[idx] <= 0:
                raise ValueError(
                    f"finite-slice condition violated: period {period} has "
                    f"coordinate-{i} projection {period[idx]} <= 0"
                )
    points = set()
    for part in s.parts:
        points |= _slice_points(part, idx, y_max)
    counts = [0] * (y_max + 1)
    for point in points:
        counts[point[idx]] += 1
    return counts


# ---------------------------------------------------------------------------
# unambiguity

def _default_radius(parts) -> int:
    magnitude = 1
    for part in parts:
        for vec in (part.base, *part.periods):
            magnitude = max(magnitude, *(abs(x) for x in vec)) if vec else magnitude
    return 4 * magnitude


def _representation_map(l: LinearSet, lo, hi, budget):
    """Map from box points to their representation multiplicities."""
    dim = l.dim
    periods = l.periods
    k = len(periods)
    w = _positive_functional(periods, dim)
    suffix_nonneg = [[True] * dim for _ in range(k + 1)]
    suffix_nonpos = [[True] * dim for _ in range(k + 1)]
    for j in range(k - 1, -1, -1):
        for i in range(dim):
            suffix_nonneg[j][i] = suffix_nonneg[j + 1][i] and periods[j][i] >= 0
            suffix_nonpos[j][i] = suffix_nonpos[j + 1][i] and periods[j][i] <= 0
    if w is not None:
        whi = sum(
            wi * (h if wi > 0 else low) for wi, low, h in zip(w, lo, hi)
        )
        wperiods = [sum(a * b for a, b in zip(w, p)) for p in periods]
    counts: dict[tuple, int] = {}
    nodes = 0

    def rec(j, cur):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"representation map exceeded {budget} nodes")
        if j == k:
            if all(low <= c <= h for low, c, h in zip(lo, cur, hi)):
                key = tuple(cur)
                counts[key] = counts.get(key, 0) + 1
            return
        for i in range(dim):
            if suffix_nonneg[j][i] and cur[i] > hi[i]:
                return
            if suffix_nonpos[j][i] and cur[i] < lo[i]:
                return
        period = periods[j]
        bound = None
        for i in range(dim):
            if period[i] > 0 and suffix_nonneg[j + 1][i]:
                b = (hi[i] - cur[i]) // period[i]
                bound = b if bound is None else min(bound, b)
            elif period[i] < 0 and suffix_nonpos[j + 1][i]:
                b = (cur[i] - lo[i]) // (-period[i])
                bound = b if bound is None else min(bound, b)
        if w is not None:
            room = whi - sum(a * b for a, b in zip(w, cur))
            b = room // wperiods[j]
            bound = b if bound is None else min(bound, b)
        if bound is None:
            bound = budget
        point = list(cur)
        for _ in range(bound + 1):
            rec(j + 1, point)
            point = [a + b for a, b in zip(point, period)]

    rec(0, list(l.base))
    return counts


def check_unambiguous(l: LinearSet, box_radius: int | None = None, budget: int = 1_000_000):
    """Decide unambiguity of one linear set.

    Linearly independent periods are certified directly (exact rank over the
    rationals).  Otherwise the box of the given radius around the base is
    searched for a point with two representations; the smallest witness is
    returned, and exhausting the box or the budget yields Unknown.
    """
    k = len(l.periods)
    if k == 0 or rank(l.periods) == k:
        return Unambiguous()
    radius = box_radius if box_radius is not None else _default_radius([l])
    lo = tuple(b - radius for b in l.base)
    hi = tuple(b + radius for b in l.base)
    try:
        counts = _representation_map(l, lo, hi, budget)
    except BudgetExceeded:
        return Unknown()
    witnesses = [point for point, c in counts.items() if c >= 2]
    if not witnesses:
        return Unknown()
    w = _positive_functional(l.periods, l.dim) or (0,) * l.dim
    witness = min(
        witnesses, key=lambda p: (sum(a * b for a, b in zip(w, p)), p)
    )
    return AmbiguousWitness(witness)


# ---------------------------------------------------------------------------
# decomposition

def validate_decomposition(
    original: SemilinearSet,
    candidate: SemilinearSet,
    lo,
    hi,
    budget: int = 5_000_000,
) -> bool:
    """Box certification of a decomposition.

    True iff, inside the box: the candidate covers exactly the original's
    points, the candidate parts are pairwise disjoint, and every candidate
    part represents each of its box points exactly once.
    """
    lo, hi = tuple(int(x) for x in lo), tuple(int(x) for x in hi)
    orig_points = enumerate_in_box(original, lo, hi, budget)
    part_points = [
        _part_points_in_box(part, lo, hi, budget) for part in candidate.parts
    ]
    union = set()
    for points in part_points:
        if union & points:
            return False
        union |= points
    if union != orig_points:
        return False
    for part, points in zip(candidate.parts, part_points):
        for point in sorted(points):
            if count_representations(part, point, budget=budget) != 1:
                return False
    return True


def _independent_subsets(universe, max_size):
    subsets = [()]
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(universe, size):
            if rank(combo) == size:
                subsets.append(combo)
    return subsets


def disambiguate(
    s: SemilinearSet,
    box_radius: int | None = None,
    budget: int = 1_000_000,
) -> SemilinearSet:
    """Equivalent-on-box union of pairwise disjoint unambiguous linear sets.

    Restricted greedy search: candidate parts are cones ``L(u; P)`` where u
    is the least uncovered box point and P is a linearly independent subset
    of the periods appearing in the input.  Every accepted candidate must
    stay inside the input's box points and avoid covered ones.  The result
    is returned only when validate_decomposition certifies it; otherwise
    DecompositionError is raised.

    The verification box is ``[-r, r]^dim`` with r defaulting to four times
    the largest coordinate magnitude among bases and periods; an explicit
    ``box_radius`` is clamped up so the box always contains every base.
    """
    parts = []
    for part in s.parts:
        if part not in parts:
            parts.append(part)
    if not parts:
        return _mark_certified(SemilinearSet(()))
    dim = parts[0].dim
    magnitude = max(1, _default_radius(parts) // 4)
    radius = box_radius if box_radius is not None else 4 * magnitude
    radius = max(radius, magnitude + 1)
    lo = (-radius,) * dim
    hi = (radius,) * dim

    universe = sorted({p for part in parts for p in part.periods})
    weights = _positive_functional(tuple(universe), dim) if universe else None
    if universe and weights is None:
        raise DecompositionError(
            "periods admit no positive functional; the restricted search "
            "cannot order the box"
        )

    source = SemilinearSet(tuple(parts))
    orig_points = enumerate_in_box(source, lo, hi, budget)

    def sort_key(point):
        wv = sum(a * b for a, b in zip(weights, point)) if weights else 0
        return (wv, point)

    # fast path: the input itself may already be certifiable
    if all(rank(part.periods) == len(part.periods) for part in parts):
        if validate_decomposition(source, source, lo, hi, budget):
            return _mark_certified(source)

    subsets = _independent_subsets(universe, min(dim, len(universe)))
    if len(subsets) > 5000:
        raise DecompositionError(
            f"period universe too large ({len(universe)} periods) for the "
            "restricted search"
        )

    uncovered = set(orig_points)
    covered: set = set()
    chosen: list[LinearSet] = []
    while uncovered:
        if len(chosen) >= 1000:
            raise DecompositionError("greedy cover exceeded 1000 parts")
        base = min(uncovered, key=sort_key)
        best = None
        for periods in subsets:
            try:
                points = _kernels.linear_points_in_box(
                    base, periods, lo, hi, weights, budget
                )
            except BudgetExceeded:
                continue
            if not points <= orig_points or points & covered:
                continue
            key = (-len(points), len(periods), periods)
            if best is None or key < best[0]:
                best = (key, periods, points)
        if best is None:
            raise DecompositionError(
                f"no admissible candidate part covers {base}"
            )
        _, periods, points = best
        chosen.append(LinearSet(base, periods))
        covered |= points
        uncovered -= points
    result = SemilinearSet(tuple(chosen))
    if not validate_decomposition(source, result, lo, hi, budget):
        raise DecompositionError(
            "greedy cover failed box certification"
        )
    return _mark_certified(result)


# ---------------------------------------------------------------------------
# serialization

def linear_set_to_json(l: LinearSet) -> dict:
    return {"base": list(l.base), "periods": [list(p) for p in l.periods]}


def linear_set_from_json(data: dict) -> LinearSet:
    return LinearSet(tuple(data["base"]), tuple(tuple(p) for p in data["periods"]))


def semilinear_to_json(s: SemilinearSet) -> dict:
    return {
        "parts": [linear_set_to_json(part) for part in s.parts],
        "certified": s.certified,
    }


def semilinear_from_json(data: dict) -> SemilinearSet:
    s = SemilinearSet(tuple(linear_set_from_json(p) for p in data["parts"]))
    if data.get("certified"):
        s = _mark_certified(s)
    return s
