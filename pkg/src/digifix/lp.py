"""Minimum-sum feasibility for three nonnegative coefficients.

Every inequality family in the contraction module has the shape

    lhs <= w1 * c1 + w2 * c2 + w3 * c3      (one row per point pair)

with nonnegative data.  The least admissible w1 + w2 + w3 is found by
enumerating vertices of the feasible polyhedron: the minimum of a linear
objective bounded below on a pointed polyhedron is attained at a vertex.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

Row = tuple[object, tuple[object, object, object]]


def _normalize(rows: Iterable[Row], exact: bool):
    """Scale rows to ``coeffs . w >= 1``; drop vacuous and dominated rows.

    Returns None when some row has positive lhs and all-zero coefficients.
    """
    scaled = set()
    for lhs, coeffs in rows:
        if lhs <= 0:
            continue
        if all(c <= 0 for c in coeffs):
            return None
        if exact:
            scaled.add(tuple(Fraction(c) / Fraction(lhs) for c in coeffs))
        else:
            scaled.add(tuple(float(c) / float(lhs) for c in coeffs))
    ordered = sorted(scaled)
    kept = []
    for row in ordered:
        # a row with componentwise smaller coefficients is the stronger one
        if any(all(o <= r for o, r in zip(other, row)) for other in kept):
            continue
        kept = [k for k in kept if not all(r <= o for r, o in zip(row, k))]
        kept.append(row)
    return kept


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _solve3(m, rhs, exact):
    det = _det3(m)
    if (det == 0) if exact else abs(det) < 1e-14:
        return None
    out = []
    for k in range(3):
        mk = [list(row) for row in m]
        for r in range(3):
            mk[r][k] = rhs[r]
        out.append(_det3(mk) / det)
    return tuple(out)


def min_coefficient_sum(
    rows: Sequence[Row], exact: bool, tol: float = 1e-9
) -> tuple[object, tuple] | None:
    """Least ``w1 + w2 + w3`` over nonnegative w satisfying every row, with a witness.

    ``None`` means no nonnegative w satisfies the rows at all.  In exact mode
    the data must be ints/Fractions and the answer is a Fraction.
    """
    kept = _normalize(rows, exact)
    if kept is None:
        return None
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    if not kept:
        return zero, (zero, zero, zero)
    axes = [tuple(one if i == k else zero for i in range(3)) for k in range(3)]
    planes = [(row, one) for row in kept] + [(ax, zero) for ax in axes]
    slack = 0 if exact else tol

    best = None
    for trio in combinations(planes, 3):
        w = _solve3([p[0] for p in trio], [p[1] for p in trio], exact)
        if w is None:
            continue
        if any(c < -slack for c in w):
            continue
        if any(sum(a * c for a, c in zip(row, w)) < one - slack for row in kept):
            continue
        if not exact:
            w = tuple(max(c, 0.0) for c in w)
        key = (sum(w), w)
        if best is None or _better(key, best, exact, tol):
            best = key
    return best


def _better(key, best, exact, tol) -> bool:
    if exact:
        return key < best
    if key[0] < best[0] - tol:
        return True
    if key[0] > best[0] + tol:
        return False
    return key[1] < best[1]
