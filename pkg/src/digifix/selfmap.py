"""Self-maps of a digital image written as index tables."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .image import DigitalImage, ImageError


@dataclass(frozen=True)
class SelfMap:
    """Total map X -> X; ``table[i]`` is the index of f(x_i)."""

    table: tuple[int, ...]

    def __post_init__(self):
        table = tuple(int(t) for t in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        for t in table:
            if not 0 <= t < n:
                raise ImageError(f"map entry {t} is not a point index in 0..{n - 1}")

    def __len__(self) -> int:
        return len(self.table)

    def __call__(self, i: int) -> int:
        return self.table[i]

    @classmethod
    def identity(cls, n: int) -> "SelfMap":
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, c: int) -> "SelfMap":
        return cls((c,) * n)

    def image(self, subset=None) -> frozenset[int]:
        if subset is None:
            return frozenset(self.table)
        return frozenset(self.table[i] for i in subset)

    def check_fits(self, img: DigitalImage) -> None:
        if len(self) != len(img):
            raise ImageError(f"map has {len(self)} entries but the image has {len(img)} points")

    def to_json(self) -> dict:
        return {"table": list(self.table)}

    @classmethod
    def from_json(cls, data: dict) -> "SelfMap":
        try:
            table = data["table"]
        except (KeyError, TypeError):
            raise ImageError("map JSON is missing field 'table'") from None
        if not isinstance(table, list) or not all(
            isinstance(t, int) and not isinstance(t, bool) for t in table
        ):
            raise ImageError("map JSON 'table' must be a list of integer indices")
        return cls(tuple(table))

    @classmethod
    def load(cls, path) -> "SelfMap":
        with open(path) as fh:
            try:
                return cls.from_json(json.load(fh))
            except json.JSONDecodeError as exc:
                raise ImageError(f"malformed map JSON: {exc}") from None


def is_constant(f: SelfMap) -> bool:
    return len(set(f.table)) <= 1


def compose(f: SelfMap, g: SelfMap) -> SelfMap:
    """f o g, i.e. x -> f(g(x))."""
    if len(f) != len(g):
        raise ImageError("cannot compose maps on images of different sizes")
    return SelfMap(tuple(f.table[t] for t in g.table))


def iterate(f: SelfMap, n: int) -> SelfMap:
    if n < 0:
        raise ValueError("iteration count must be nonnegative")
    result = SelfMap.identity(len(f))
    for _ in range(n):
        result = compose(f, result)
    return result


def is_continuous(img: DigitalImage, f: SelfMap) -> bool:
    """Adjacent points go to equal or adjacent points."""
    f.check_fits(img)
    adj = img.adjacency
    t = f.table
    for i, row in enumerate(img.neighbors):
        for j in row:
            if t[i] != t[j] and not adj[t[i]][t[j]]:
                return False
    return True


def fixed_points(img: DigitalImage, f: SelfMap) -> frozenset[int]:
    f.check_fits(img)
    return frozenset(i for i, t in enumerate(f.table) if t == i)


def common_fixed_points(img: DigitalImage, *maps: SelfMap) -> frozenset[int]:
    result = frozenset(range(len(img)))
    for f in maps:
        result &= fixed_points(img, f)
    return result


@dataclass(frozen=True)
class ImageSequence:
    sets: tuple[frozenset[int], ...]
    stabilized: bool

    def sizes(self) -> list[int]:
        return [len(s) for s in self.sets]


def image_sequence(img: DigitalImage, f: SelfMap, max_steps: int | None = None) -> ImageSequence:
    """[X, f(X), f^2(X), ...] until two consecutive sets agree or ``max_steps`` is hit."""
    f.check_fits(img)
    if max_steps is None:
        max_steps = 2 * len(img)
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    sets = [frozenset(range(len(img)))]
    for _ in range(max_steps):
        nxt = f.image(sets[-1])
        sets.append(nxt)
        if nxt == sets[-2]:
            return ImageSequence(tuple(sets), True)
    return ImageSequence(tuple(sets), False)


def collapse_depth(f: SelfMap) -> int | None:
    """Least m with |f^m(X)| = 1, or None if the images never shrink to a point."""
    current = frozenset(range(len(f)))
    m = 0
    while len(current) > 1:
        nxt = f.image(current)
        if nxt == current:
            return None
        current = nxt
        m += 1
    return m


def orbit(f: SelfMap, x0: int, steps: int) -> list[int]:
    seq = [x0]
    for _ in range(steps):
        seq.append(f(seq[-1]))
    return seq


@dataclass(frozen=True)
class SequenceWindow:
    """A finite prefix of a sequence of point indices, optionally with a
    claimed stabilization index."""

    values: tuple[int, ...]
    claimed_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(self.values))
        m = self.claimed_index
        if m is not None:
            if not 0 <= m < len(self.values):
                raise ValueError("claimed stabilization index lies outside the window")
            if any(v != self.values[m] for v in self.values[m:]):
                raise ValueError("entries past the claimed index are not all equal")


def is_eventually_constant(window: SequenceWindow | Sequence[int]) -> tuple[bool, int | None]:
    """Whether the window ends in a constant run, and where that run starts.

    A run must have at least two entries to count, except for a window of
    length one.
    """
    if not isinstance(window, SequenceWindow):
        window = SequenceWindow(tuple(window))
    vals = window.values
    if not vals:
        raise ValueError("empty window")
    if len(vals) == 1:
        return True, 0
    start = len(vals) - 1
    while start > 0 and vals[start - 1] == vals[-1]:
        start -= 1
    if start == len(vals) - 1:
        return False, None
    return True, start
