"""Exhaustive enumeration engine: contraction maps, the C# collapse measure,
simple closed curves, and small-graph isomorphism."""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .image import FLOAT_TOL, DigitalImage, ImageError, Metric
from .selfmap import SelfMap, collapse_depth, fixed_points

DEFAULT_CAP = 7
ISO_CAP = 10
EUCLID = Metric("lp", 2)


class CapExceeded(ValueError):
    """The requested enumeration is larger than the configured cap."""


def _check_cap(img: DigitalImage, cap: int) -> None:
    if len(img) > cap:
        raise CapExceeded(
            f"image has {len(img)} points, above the enumeration cap of {cap}"
        )


def enumerate_contractions(
    metric: Metric,
    img: DigitalImage,
    cap: int = DEFAULT_CAP,
    require_continuous: bool = False,
    first: int | None = None,
) -> Iterator[SelfMap]:
    """Every self-map with d(fx, fy) < d(x, y) for x != y, in lexicographic
    table order.  On a finite image this is exactly gamma* < 1.

    ``first`` restricts to tables starting with that entry, which partitions
    the map space for parallel runs.
    """
    _check_cap(img, cap)
    n = len(img)
    pay = metric.payloads(img)
    tol = 0 if metric.exact else FLOAT_TOL
    adj = img.adjacency
    table = [0] * n
    starts = range(n) if first is None else (first,)

    def ok(i: int, v: int) -> bool:
        row = pay[v]
        for j in range(i):
            if not row[table[j]] < pay[i][j] - tol:
                return False
            if require_continuous and adj[i][j] and v != table[j] and not adj[v][table[j]]:
                return False
        return True

    def extend(i: int):
        if i == n:
            yield SelfMap(tuple(table))
            return
        for v in (starts if i == 0 else range(n)):
            if ok(i, v):
                table[i] = v
                yield from extend(i + 1)

    yield from extend(0)


@dataclass(frozen=True)
class ComplexityResult:
    c_sharp: int
    witness: SelfMap | None
    maps_enumerated: int

    def to_json(self) -> dict:
        return {
            "c_sharp": self.c_sharp,
            "witness_map": None if self.witness is None else list(self.witness.table),
            "maps_enumerated": self.maps_enumerated,
        }


def _c_sharp_part(metric, img, cap, require_continuous, first) -> ComplexityResult:
    best, witness, count = 0, None, 0
    for f in enumerate_contractions(metric, img, cap, require_continuous, first):
        count += 1
        m = collapse_depth(f)
        if m is not None and m > best:
            best, witness = m, f
    return ComplexityResult(best, witness, count)


def _merge(parts: Sequence[ComplexityResult]) -> ComplexityResult:
    best, witness = 0, None
    for part in parts:
        if part.c_sharp > best:
            best, witness = part.c_sharp, part.witness
    return ComplexityResult(best, witness, sum(p.maps_enumerated for p in parts))


def c_sharp(
    metric: Metric,
    img: DigitalImage,
    cap: int = DEFAULT_CAP,
    require_continuous: bool = False,
    workers: int = 1,
) -> ComplexityResult:
    """Largest m such that some contraction has |f^(m-1)(X)| > 1 and |f^m(X)| = 1.

    0 when no contraction qualifies (a singleton image).  The witness is the
    lexicographically first map reaching the maximum.
    """
    _check_cap(img, cap)
    if workers <= 1:
        return _c_sharp_part(metric, img, cap, require_continuous, None)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(
            pool.map(
                _c_sharp_part,
                itertools.repeat(metric),
                itertools.repeat(img),
                itertools.repeat(cap),
                itertools.repeat(require_continuous),
                range(len(img)),
            )
        )
    return _merge(parts)


# -- isomorphism ---------------------------------------------------------------


def is_isomorphic(
    a: DigitalImage, b: DigitalImage, cap: int = ISO_CAP
) -> tuple[bool, tuple[int, ...] | None]:
    """Graph isomorphism of the adjacency graphs by backtracking.

    Returns the bijection as a table: vertex i of ``a`` goes to ``bij[i]`` of ``b``.
    """
    if len(a) > cap or len(b) > cap:
        raise CapExceeded(f"isomorphism search is capped at {cap} points")
    if len(a) != len(b):
        return False, None
    deg_a = [len(nb) for nb in a.neighbors]
    deg_b = [len(nb) for nb in b.neighbors]
    if sorted(deg_a) != sorted(deg_b):
        return False, None
    n = len(a)
    order = sorted(range(n), key=lambda v: (-deg_a[v], v))
    image = [-1] * n
    used = [False] * n

    def search(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used[w] or deg_b[w] != deg_a[v]:
                continue
            if all(
                a.adjacency[v][x] == b.adjacency[w][image[x]] for x in order[:k]
            ):
                image[v], used[w] = w, True
                if search(k + 1):
                    return True
                image[v], used[w] = -1, False
        return False

    if search(0):
        return True, tuple(image)
    return False, None


# -- simple closed curves --------------------------------------------------------


def is_simple_closed_curve(img: DigitalImage) -> bool:
    """Connected and every point has exactly two neighbours."""
    if len(img) < 4:
        raise ImageError("a simple closed curve needs at least 4 points")
    return img.is_connected() and all(len(nb) == 2 for nb in img.neighbors)


@dataclass(frozen=True)
class SccSearchResult:
    found: bool
    curve: tuple[tuple[int, ...], ...]
    length: int
    budget_exhausted: bool = False

    def image(self, u: int) -> DigitalImage:
        return DigitalImage(self.curve, u)

    def to_json(self) -> dict:
        return {
            "found": self.found,
            "length": self.length,
            "curve": [list(p) for p in self.curve],
            "budget_exhausted": self.budget_exhausted,
        }


def parse_window(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(s) for s in text.lower().split("x"))
    except ValueError:
        raise ValueError(f"window {text!r} is not of the form AxB[xC...]") from None
    if not sizes or any(s < 1 for s in sizes):
        raise ValueError(f"window {text!r} needs positive sizes")
    return sizes


def window_points(window: Sequence[int]) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(s) for s in window)))


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        self.used += 1
        return self.limit is None or self.used <= self.limit


def _induced_cycles(n, u, length, window, budget: _Budget):
    """Induced cycles of ``length`` points in the window, each once: it starts
    at its least point and runs in the direction with the smaller second point."""
    if len(window) != n:
        raise ValueError(f"window has {len(window)} axes but the dimension is {n}")
    if not 1 <= u <= n:
        raise ImageError(f"adjacency c_{u} is undefined in dimension {n}")
    pts = window_points(window)
    index = {p: i for i, p in enumerate(pts)}
    offsets = [
        d for d in itertools.product((-1, 0, 1), repeat=n)
        if 0 < sum(abs(c) for c in d) <= u
    ]
    nbrs = []
    for p in pts:
        row = []
        for d in offsets:
            q = tuple(a + b for a, b in zip(p, d))
            if q in index:
                row.append(index[q])
        nbrs.append(sorted(row))
    nbr_sets = [set(r) for r in nbrs]

    path: list[int] = []
    on_path = [False] * len(pts)

    def extend():
        k = len(path)
        if k == length:
            if path[1] < path[-1]:
                yield tuple(pts[i] for i in path)
            return
        for w in nbrs[path[-1]]:
            if w <= path[0] or on_path[w]:
                continue
            if not budget.spend():
                return
            adjacent = nbr_sets[w]
            closing = k == length - 1
            if closing and path[0] not in adjacent:
                continue
            if any(path[j] in adjacent for j in range(1 if closing else 0, k - 1)):
                continue
            path.append(w)
            on_path[w] = True
            yield from extend()
            path.pop()
            on_path[w] = False

    for s in range(len(pts)):
        path.append(s)
        on_path[s] = True
        yield from extend()
        path.pop()
        on_path[s] = False


def find_scc(
    n: int, u: int, length: int, window: Sequence[int], budget: int | None = 2_000_000
) -> SccSearchResult:
    """First induced cycle of ``length`` points under c_u inside the window,
    in lexicographic search order."""
    if length < 4:
        raise ImageError("a simple closed curve needs at least 4 points")
    spent = _Budget(budget)
    for curve in _induced_cycles(n, u, length, tuple(window), spent):
        return SccSearchResult(True, curve, length)
    return SccSearchResult(False, (), length, budget_exhausted=spent.limit is not None and spent.used > spent.limit)


def all_sccs(
    n: int, u: int, length: int, window: Sequence[int], up_to_translation: bool = True
) -> list[tuple[tuple[int, ...], ...]]:
    """Every induced ``length``-cycle in the window (optionally one per translation class)."""
    seen = set()
    found = []
    for curve in _induced_cycles(n, u, length, tuple(window), _Budget(None)):
        key = frozenset(curve)
        if up_to_translation:
            low = [min(p[i] for p in curve) for i in range(n)]
            curve = tuple(tuple(c - m for c, m in zip(p, low)) for p in curve)
            key = frozenset(curve)
        if key not in seen:
            seen.add(key)
            found.append(curve)
    return found


@dataclass(frozen=True)
class Han44Result:
    premise: bool
    c_sharp: int
    contractions: int

    @property
    def bound_holds(self) -> bool:
        """C# <= 3, which only has to hold when the premise does."""
        return not self.premise or self.c_sharp <= 3


def han44_premise_and_bound(
    img: DigitalImage, metric: Metric = EUCLID, cap: int = DEFAULT_CAP
) -> Han44Result:
    """Does every contraction send X into the radius-1 neighbourhood of its
    fixed point?  Reported together with C#."""
    if not is_simple_closed_curve(img):
        raise ImageError("image is not a simple closed curve")
    premise = True
    best = 0
    count = 0
    for f in enumerate_contractions(metric, img, cap):
        count += 1
        fix = fixed_points(img, f)
        if len(fix) != 1:
            raise AssertionError(f"contraction {f.table} has fixed points {sorted(fix)}")
        (x,) = fix
        if not f.image() <= img.neighborhood(img.points[x], 1):
            premise = False
        best = max(best, collapse_depth(f))
    return Han44Result(premise, best, count)
