"""Digital images as graphs on the integer lattice.

A digital image is a finite, ordered set of lattice points together with a
c_u adjacency.  Points keep a stable index (their position in ``points``) so
that self-maps can be written as index tables.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

Point = tuple[int, ...]

FLOAT_TOL = 1e-9


class ImageError(ValueError):
    """Malformed image, unknown point, or an operation undefined on this image."""


def cu_adjacent(x: Sequence[int], y: Sequence[int], u: int) -> bool:
    """True iff ``x != y`` and they differ by exactly 1 in at most ``u`` coordinates
    while agreeing everywhere else."""
    if len(x) != len(y):
        raise ImageError(f"dimension mismatch: {len(x)} vs {len(y)}")
    n = len(x)
    if not 1 <= u <= n:
        raise ImageError(f"adjacency parameter u={u} outside 1..{n}")
    differing = 0
    for a, b in zip(x, y):
        gap = abs(a - b)
        if gap > 1:
            return False
        differing += gap
    return 0 < differing <= u


@dataclass(frozen=True)
class DigitalImage:
    """The graph (X, c_u) for a finite X in Z^n."""

    points: tuple[Point, ...]
    u: int = 1

    def __post_init__(self):
        pts = tuple(tuple(int(c) for c in p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ImageError("an image needs at least one point")
        n = len(pts[0])
        if n < 1:
            raise ImageError("points need at least one coordinate")
        for p in pts:
            if len(p) != n:
                raise ImageError(f"point {p} does not have {n} coordinates")
        if len(set(pts)) != len(pts):
            raise ImageError("points must be pairwise distinct")
        if not 1 <= self.u <= n:
            raise ImageError(f"adjacency c_{self.u} is undefined in dimension {n}")

    @classmethod
    def from_points(cls, points: Iterable[Sequence[int]], u: int = 1) -> "DigitalImage":
        return cls(tuple(tuple(p) for p in points), u)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def index(self, x: Sequence[int]) -> int:
        try:
            return self._index[tuple(x)]
        except KeyError:
            raise ImageError(f"point {tuple(x)} is not in the image") from None

    @cached_property
    def _index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def adjacency(self) -> tuple[tuple[bool, ...], ...]:
        pts = self.points
        return tuple(
            tuple(cu_adjacent(p, q, self.u) for q in pts) for p in pts
        )

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            tuple(j for j, a in enumerate(row) if a) for row in self.adjacency
        )

    def adjacent(self, i: int, j: int) -> bool:
        return self.adjacency[i][j]

    def with_adjacency(self, u: int) -> "DigitalImage":
        return DigitalImage(self.points, u)

    def translated(self, shift: Sequence[int]) -> "DigitalImage":
        return DigitalImage(
            tuple(tuple(a + b for a, b in zip(p, shift)) for p in self.points), self.u
        )

    # -- connectivity -------------------------------------------------------

    @cached_property
    def hops(self) -> tuple[tuple[int | None, ...], ...]:
        """All-pairs shortest path lengths (BFS); ``None`` across components."""
        rows = []
        for s in range(len(self)):
            dist: list[int | None] = [None] * len(self)
            dist[s] = 0
            queue = deque([s])
            while queue:
                v = queue.popleft()
                for w in self.neighbors[v]:
                    if dist[w] is None:
                        dist[w] = dist[v] + 1
                        queue.append(w)
            rows.append(tuple(dist))
        return tuple(rows)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        blocks = []
        for s in range(len(self)):
            if s in seen:
                continue
            block = tuple(j for j, d in enumerate(self.hops[s]) if d is not None)
            seen.update(block)
            blocks.append(block)
        return tuple(blocks)

    def is_connected(self) -> bool:
        return len(self.components) == 1

    def shortest_path_length(self, x: Sequence[int], y: Sequence[int]) -> int | None:
        return self.hops[self.index(x)][self.index(y)]

    def neighborhood(self, x: Sequence[int], r: int) -> frozenset[int]:
        """Indices within hop distance ``r`` of ``x``, inside the component of ``x``.

        Always measured by path length, independent of any metric in use.
        """
        if r < 0:
            raise ImageError("radius must be nonnegative")
        row = self.hops[self.index(x)]
        return frozenset(j for j, d in enumerate(row) if d is not None and d <= r)

    def is_uniformly_connected(self) -> bool:
        """Every adjacent pair at Euclidean distance exactly sqrt(u)."""
        if not self.is_connected():
            raise ImageError("uniform connectedness needs a connected image")
        for i, row in enumerate(self.neighbors):
            for j in row:
                if _pow_sum(self.points[i], self.points[j], 2) != self.u:
                    return False
        return True

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "adjacency": {"cu": self.u},
            "points": [list(p) for p in self.points],
        }

    @classmethod
    def from_json(cls, data: dict) -> "DigitalImage":
        try:
            points = data["points"]
            u = data["adjacency"]["cu"]
            dim = data["dim"]
        except (KeyError, TypeError) as exc:
            raise ImageError(f"image JSON is missing field {exc}") from None
        if not isinstance(points, list) or not all(isinstance(p, list) for p in points):
            raise ImageError("image JSON 'points' must be a list of coordinate lists")
        for p in points:
            if not all(isinstance(c, int) and not isinstance(c, bool) for c in p):
                raise ImageError(f"non-integer coordinate in point {p}")
        if not isinstance(u, int) or not isinstance(dim, int):
            raise ImageError("'dim' and 'adjacency.cu' must be integers")
        img = cls.from_points(points, u)
        if img.dim != dim:
            raise ImageError(f"declared dim {dim} but points have {img.dim} coordinates")
        return img

    @classmethod
    def load(cls, path) -> "DigitalImage":
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ImageError(f"malformed image JSON: {exc}") from None
        return cls.from_json(data)


def _pow_sum(x: Point, y: Point, p: int) -> int:
    return sum(abs(a - b) ** p for a, b in zip(x, y))


# -- metrics -----------------------------------------------------------------


@dataclass(frozen=True)
class DistanceValue:
    """A distance carried exactly where possible.

    For an integer exponent ``p`` the payload is the integer sum |x_i - y_i|^p,
    i.e. the p-th power of the distance (hop counts use p = 1).  For other
    exponents the payload is the float distance itself and comparisons use a
    1e-9 tolerance.
    """

    payload: int | float
    p: int | float = field(default=1, compare=False)

    @property
    def exact(self) -> bool:
        return isinstance(self.payload, int)

    @property
    def value(self) -> float:
        if not self.exact:
            return float(self.payload)
        if self.p == 1:
            return float(self.payload)
        if self.p == 2:
            return math.sqrt(self.payload)
        return self.payload ** (1.0 / self.p)

    def _key(self, other: "DistanceValue"):
        if self.exact and other.exact and self.p == other.p:
            return self.payload, other.payload, 0.0
        return self.value, other.value, FLOAT_TOL

    def __lt__(self, other: "DistanceValue") -> bool:
        a, b, tol = self._key(other)
        return a < b - tol

    def __le__(self, other: "DistanceValue") -> bool:
        a, b, tol = self._key(other)
        return a <= b + tol

    def __gt__(self, other: "DistanceValue") -> bool:
        return other < self

    def __ge__(self, other: "DistanceValue") -> bool:
        return other <= self

    def __eq__(self, other) -> bool:
        if not isinstance(other, DistanceValue):
            return NotImplemented
        a, b, tol = self._key(other)
        return abs(a - b) <= tol

    def __hash__(self):
        return hash(self.payload if self.exact else round(float(self.payload), 6))

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        if self.exact and self.p != 1:
            return f"DistanceValue({self.payload}^(1/{self.p}))"
        return f"DistanceValue({self.payload})"


@dataclass(frozen=True)
class Metric:
    """An l_p metric (p >= 1) or the shortest-path metric of the image's adjacency."""

    kind: str = "lp"
    p: int | Fraction = 2

    def __post_init__(self):
        if self.kind not in ("lp", "hop"):
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if self.kind == "lp":
            p = Fraction(self.p)
            if p < 1:
                raise ValueError("l_p needs p >= 1")
            object.__setattr__(self, "p", int(p) if p.denominator == 1 else p)
        else:
            object.__setattr__(self, "p", 1)

    @classmethod
    def parse(cls, text: str) -> "Metric":
        text = text.strip().lower()
        if text == "hop":
            return cls("hop")
        if text in ("l1", "l2"):
            return cls("lp", int(text[1]))
        if text.startswith("lp:"):
            try:
                return cls("lp", Fraction(text[3:]))
            except (ValueError, ZeroDivisionError):
                pass
        raise ValueError(f"unrecognised metric {text!r}; expected l1, l2, lp:<p> or hop")

    @property
    def name(self) -> str:
        if self.kind == "hop":
            return "hop"
        return f"l{self.p}" if self.p in (1, 2) else f"lp:{self.p}"

    @property
    def exact(self) -> bool:
        """Distances compare exactly (integer p, or hop counts)."""
        return self.kind == "hop" or isinstance(self.p, int)

    @property
    def integral(self) -> bool:
        """Distances themselves are integers, so sums of them are exact too."""
        return self.kind == "hop" or self.p == 1

    def payloads(self, img: DigitalImage):
        return _payloads(self, img)

    def values(self, img: DigitalImage):
        return _values(self, img)

    def distance(self, img: DigitalImage, x: Sequence[int], y: Sequence[int]) -> DistanceValue:
        i, j = img.index(x), img.index(y)
        return DistanceValue(self.payloads(img)[i][j], self.p)

    def dist(self, img: DigitalImage, i: int, j: int) -> DistanceValue:
        return DistanceValue(self.payloads(img)[i][j], self.p)


@lru_cache(maxsize=8192)
def _payloads(metric: Metric, img: DigitalImage) -> tuple[tuple, ...]:
    if metric.kind == "hop":
        if not img.is_connected():
            raise ImageError("the shortest-path metric needs a connected image")
        return img.hops
    pts = img.points
    if isinstance(metric.p, int):
        return tuple(tuple(_pow_sum(a, b, metric.p) for b in pts) for a in pts)
    p = float(metric.p)
    return tuple(
        tuple(sum(abs(s - t) ** p for s, t in zip(a, b)) ** (1.0 / p) for b in pts)
        for a in pts
    )


@lru_cache(maxsize=8192)
def _values(metric: Metric, img: DigitalImage) -> tuple[tuple, ...]:
    """Distances as numbers for arithmetic: ints for integral metrics, floats otherwise."""
    pay = _payloads(metric, img)
    if metric.integral:
        return pay
    if isinstance(metric.p, int):
        p = metric.p
        root = math.sqrt if p == 2 else (lambda v: v ** (1.0 / p))
        return tuple(tuple(float(root(v)) for v in row) for row in pay)
    return pay


def distance(metric: Metric, img: DigitalImage, x, y) -> DistanceValue:
    return metric.distance(img, x, y)


def diameter(metric: Metric, img: DigitalImage) -> DistanceValue:
    pay = metric.payloads(img)
    best = DistanceValue(0 if metric.exact else 0.0, metric.p)
    for row in pay:
        for v in row:
            cand = DistanceValue(v, metric.p)
            if cand > best:
                best = cand
    return best


def distinct_positive_distances(metric: Metric, img: DigitalImage) -> int:
    pay = metric.payloads(img)
    vals = {v for row in pay for v in row if v != 0}
    if not metric.exact:
        vals = {round(v, 9) for v in vals}
    return len(vals)


def uniform_discreteness_witness(metric: Metric, img: DigitalImage) -> DistanceValue:
    """Minimum positive pairwise distance; 1 by convention for a singleton."""
    if len(img) < 2:
        return DistanceValue(1, metric.p)
    pay = metric.payloads(img)
    best = None
    for i in range(len(img)):
        for j in range(i + 1, len(img)):
            cand = DistanceValue(pay[i][j], metric.p)
            if best is None or cand < best:
                best = cand
    return best
