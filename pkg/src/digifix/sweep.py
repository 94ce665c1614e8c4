"""Exhaustive sweeps over small images in a lattice window and over all of
their self-maps.  Every sweep here is a full enumeration, never a sample."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .complexity import window_points
from .image import DigitalImage, Metric


def images_in_window(
    window: Sequence[int],
    sizes: Sequence[int],
    u: int = 1,
    connected_only: bool = False,
) -> Iterator[DigitalImage]:
    """All point subsets of the window with the given sizes, in lexicographic order."""
    pts = window_points(window)
    for k in sizes:
        for subset in itertools.combinations(pts, k):
            img = DigitalImage(subset, u)
            if connected_only and not img.is_connected():
                continue
            yield img


_TABLE_CACHE: dict[int, np.ndarray] = {}


def all_tables(n: int) -> np.ndarray:
    """Every self-map table on n points, one per row, lexicographic."""
    if n not in _TABLE_CACHE:
        grids = np.indices((n,) * n).reshape(n, -1).T
        _TABLE_CACHE[n] = np.ascontiguousarray(grids, dtype=np.int64)
    return _TABLE_CACHE[n]


@dataclass
class MapScan:
    tables: np.ndarray
    contraction: np.ndarray
    constant: np.ndarray
    fixed_count: np.ndarray


def scan_all_maps(metric: Metric, img: DigitalImage) -> MapScan:
    """Classify every self-map of ``img`` at once.

    ``contraction`` is strict distance decrease on all distinct pairs, compared
    on exact integer p-th powers; the metric must be exact.
    """
    if not metric.exact:
        raise ValueError("vectorised scans need an exact metric")
    n = len(img)
    tables = all_tables(n)
    pay = np.array(metric.payloads(img), dtype=np.int64)
    contraction = np.ones(len(tables), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            contraction &= pay[tables[:, i], tables[:, j]] < pay[i, j]
    constant = (tables == tables[:, :1]).all(axis=1)
    fixed_count = (tables == np.arange(n)).sum(axis=1)
    return MapScan(tables, contraction, constant, fixed_count)
