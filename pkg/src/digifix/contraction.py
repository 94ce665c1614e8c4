"""Contraction notions on finite digital metric spaces and the fixed-point
procedures that go with them.

Distances are compared exactly whenever the metric allows it: ratios of l_p
distances with integer p are compared through their p-th powers, and the
l_1 and shortest-path metrics give integer distances, so sums of them are
exact as well.  Everything else (sums of square roots, say) is evaluated in
floating point with a 1e-9 tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .image import FLOAT_TOL, DigitalImage, Metric, distinct_positive_distances
from .lp import min_coefficient_sum
from .selfmap import (
    SelfMap,
    collapse_depth,
    common_fixed_points,
    fixed_points,
    image_sequence,
    is_constant,
    is_continuous,
    is_eventually_constant,
    orbit,
)


class PremiseError(ValueError):
    """A theorem's hypotheses do not hold for the given input."""

    def __init__(self, violations: Sequence[str] | str):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def _tol(metric: Metric) -> float:
    return 0 if metric.integral else FLOAT_TOL


def _le(a, b, tol) -> bool:
    return a <= b + tol


def _lt(a, b, tol) -> bool:
    return a < b - tol


def _pairs(n: int):
    for i in range(n):
        for j in range(n):
            if i != j:
                yield i, j


def _fits(img: DigitalImage, *maps: SelfMap) -> None:
    for f in maps:
        f.check_fits(img)


# -- Banach ------------------------------------------------------------------


@dataclass(frozen=True)
class BanachModulus:
    """sup d(fx,fy)/d(x,y).  ``power`` is that ratio raised to the metric's
    exponent, exact (a Fraction) whenever the metric is."""

    power: Fraction | float
    exponent: int | float

    @property
    def gamma(self) -> float:
        if self.exponent == 1:
            return float(self.power)
        return float(self.power) ** (1.0 / float(self.exponent))

    @property
    def is_banach(self) -> bool:
        if isinstance(self.power, Fraction):
            return self.power < 1
        return self.power < 1 - FLOAT_TOL


def banach_modulus(metric: Metric, img: DigitalImage, f: SelfMap) -> BanachModulus:
    _fits(img, f)
    pay = metric.payloads(img)
    t = f.table
    exact = metric.exact
    best: Fraction | float = Fraction(0) if exact else 0.0
    for i in range(len(img)):
        for j in range(i + 1, len(img)):
            num, den = pay[t[i]][t[j]], pay[i][j]
            ratio = Fraction(num, den) if exact else num / den
            if ratio > best:
                best = ratio
    exponent = 1 if metric.kind == "hop" else metric.p
    if not exact:
        exponent = 1
    return BanachModulus(best, exponent)


def is_banach(metric: Metric, img: DigitalImage, f: SelfMap) -> bool:
    return banach_modulus(metric, img, f).is_banach


def is_distance_decreasing(metric: Metric, img: DigitalImage, f: SelfMap) -> bool:
    """d(fx, fy) < d(x, y) for every pair of distinct points."""
    _fits(img, f)
    pay = metric.payloads(img)
    t = f.table
    tol = 0 if metric.exact else FLOAT_TOL
    n = len(img)
    return all(
        _lt(pay[t[i]][t[j]], pay[i][j], tol) for i in range(n) for j in range(i + 1, n)
    )


@dataclass(frozen=True)
class Collapse:
    steps: int
    fixed_point: int
    distance_bound: int


def singleton_collapse(metric: Metric, img: DigitalImage, f: SelfMap) -> Collapse:
    """Least n with f^n(X) a single point, for a distance-decreasing f.

    The diameter of f^i(X) strictly drops while more than one point is left,
    so n never exceeds the number of distinct positive distances in X.
    """
    if not is_distance_decreasing(metric, img, f):
        raise PremiseError("map is not distance-decreasing")
    n = collapse_depth(f)
    assert n is not None
    last = image_sequence(img, f, max(n, 1)).sets[n]
    (x,) = last
    return Collapse(n, x, distinct_positive_distances(metric, img))


# -- Kannan ------------------------------------------------------------------


@dataclass(frozen=True)
class KannanModulus:
    k_star: Fraction | float  # math.inf when no k works

    @property
    def feasible(self) -> bool:
        return self.k_star != math.inf

    @property
    def is_kannan(self) -> bool:
        if isinstance(self.k_star, Fraction):
            return self.k_star < Fraction(1, 2)
        return self.k_star < 0.5 - FLOAT_TOL


def kannan_modulus(metric: Metric, img: DigitalImage, f: SelfMap) -> KannanModulus:
    """sup d(fx,fy) / (d(x,fx) + d(y,fy)); 0/0 pairs contribute nothing and a
    positive numerator over zero makes the map infeasible."""
    _fits(img, f)
    d = metric.values(img)
    t = f.table
    exact = metric.integral
    tol = _tol(metric)
    best: Fraction | float = Fraction(0) if exact else 0.0
    for i in range(len(img)):
        for j in range(i + 1, len(img)):
            num = d[t[i]][t[j]]
            den = d[i][t[i]] + d[j][t[j]]
            if num <= tol:
                continue
            if den <= tol:
                return KannanModulus(math.inf)
            ratio = Fraction(num, den) if exact else num / den
            if ratio > best:
                best = ratio
    return KannanModulus(best)


@dataclass(frozen=True)
class KannanRun:
    fixed_point: int
    orbit: tuple[int, ...]
    stabilized_at: int


def kannan_fixed_point(metric: Metric, img: DigitalImage, f: SelfMap, x0: int = 0) -> KannanRun:
    """Iterate x_{n+1} = f(x_n) from ``x0`` until the orbit is constant.

    Any finite digital metric space is uniformly discrete, so the Cauchy
    orbit of a Kannan map settles on a point, and that point is the only
    fixed point.
    """
    if not kannan_modulus(metric, img, f).is_kannan:
        raise PremiseError("map is not a Kannan contraction (needs k* < 1/2)")
    if not 0 <= x0 < len(img):
        raise PremiseError(f"start index {x0} is not a point of the image")
    seq = orbit(f, x0, len(img) + 1)
    ok, start = is_eventually_constant(seq)
    if not ok:
        raise AssertionError("Kannan orbit failed to settle")
    fix = fixed_points(img, f)
    if fix != {seq[-1]}:
        raise AssertionError(f"fixed point set {sorted(fix)} is not {{{seq[-1]}}}")
    return KannanRun(seq[-1], tuple(seq), start)


# -- Reich and its universal variants ------------------------------------------


@dataclass(frozen=True)
class ReichResult:
    feasible: bool
    witness: tuple | None  # (a, b, c) attaining the least a + b + c
    least_sum: Fraction | float | None


def reich_existential_feasible(metric: Metric, img: DigitalImage, f: SelfMap) -> ReichResult:
    """Do some a, b, c >= 0 with a + b + c < 1 satisfy
    d(fx,fy) <= a d(x,fx) + b d(y,fy) + c d(x,y) for all x, y?"""
    _fits(img, f)
    d = metric.values(img)
    t = f.table
    rows = [
        (d[t[i]][t[j]], (d[i][t[i]], d[j][t[j]], d[i][j])) for i, j in _pairs(len(img))
    ]
    return _least_sum(rows, metric)


def _least_sum(rows, metric: Metric) -> ReichResult:
    exact = metric.integral
    best = min_coefficient_sum(rows, exact)
    if best is None:
        return ReichResult(False, None, None)
    total, witness = best
    feasible = total < 1 if exact else total < 1 - FLOAT_TOL
    return ReichResult(feasible, witness, total)


def _holds_for_all_admissible(lhs, coeffs, tol) -> bool:
    # RHS is linear in (a, b, c) with nonnegative data; over {a,b,c >= 0,
    # a+b+c < 1} its infimum is 0, approached at the origin.
    infimum = 0
    return _le(lhs, infimum, tol)


def reich_universal_holds(metric: Metric, img: DigitalImage, f: SelfMap) -> bool:
    """The inequality for every admissible (a, b, c) at once."""
    _fits(img, f)
    d = metric.values(img)
    t = f.table
    tol = _tol(metric)
    return all(
        _holds_for_all_admissible(d[t[i]][t[j]], (d[i][t[i]], d[j][t[j]], d[i][j]), tol)
        for i, j in _pairs(len(img))
    )


def okak_selfcomposed_holds(
    metric: Metric, img: DigitalImage, f: SelfMap, variant: int = 1
) -> bool:
    """Self-composed Reich-type inequality for every admissible (a, b, c).

    variant 1:  d(Fu,Fv) <= a d(Fu,FFu) + b d(Fv,FFv) + c d(Fu,Fv)
    variant 2:  d(Fu,Fv) <= a d(Fu,FFv) + b d(Fv,FFv) + c d(Fu,Fv)
    """
    _fits(img, f)
    d = metric.values(img)
    t = f.table
    tol = _tol(metric)
    n = len(img)
    for u in range(n):
        for v in range(n):
            fu, fv = t[u], t[v]
            first = d[fu][t[fu]] if variant == 1 else d[fu][t[fv]]
            coeffs = (first, d[fv][t[fv]], d[fu][fv])
            if not _holds_for_all_admissible(d[fu][fv], coeffs, tol):
                return False
    return True


# -- pairs of maps -------------------------------------------------------------


def is_weakly_commutative(metric: Metric, img: DigitalImage, s: SelfMap, t: SelfMap) -> bool:
    """d(S(T(x)), T(S(x))) <= d(S(x), T(x)) for all x."""
    _fits(img, s, t)
    d = metric.values(img)
    tol = _tol(metric)
    S, T = s.table, t.table
    return all(_le(d[S[T[x]]][T[S[x]]], d[S[x]][T[x]], tol) for x in range(len(img)))


def is_weakly_compatible(s: SelfMap, t: SelfMap) -> bool:
    """S and T commute at each of their coincidence points."""
    S, T = s.table, t.table
    return all(S[T[x]] == T[S[x]] for x in range(len(S)) if S[x] == T[x])


def contains_image(j: SelfMap, k: SelfMap) -> bool:
    """J(X) is a subset of K(X)."""
    return j.image() <= k.image()


def _saluja_rows(metric: Metric, img: DigitalImage, j: SelfMap, k: SelfMap):
    d = metric.values(img)
    J, K = j.table, k.table
    n = len(img)
    return [
        (d[J[u]][J[q]], (d[K[u]][K[q]], d[K[u]][J[u]], d[K[q]][J[q]]))
        for u in range(n)
        for q in range(n)
    ]


def saluja_inequality_holds(
    metric: Metric, img: DigitalImage, j: SelfMap, k: SelfMap, xi: Sequence[float]
) -> bool:
    tol = _tol(metric) if all(isinstance(x, (int, Fraction)) for x in xi) else FLOAT_TOL
    for lhs, coeffs in _saluja_rows(metric, img, j, k):
        rhs = sum(x * c for x, c in zip(xi, coeffs))
        if not _le(lhs, rhs, tol):
            return False
    return True


def saluja_coefficients(metric: Metric, img: DigitalImage, j: SelfMap, k: SelfMap) -> ReichResult:
    """Least xi1 + xi2 + xi3 making the Saluja inequality hold."""
    _fits(img, j, k)
    return _least_sum(_saluja_rows(metric, img, j, k), metric)


@dataclass(frozen=True)
class PairReport:
    weakly_commutative: bool
    weakly_compatible: bool
    saluja_coeffs: tuple | None
    containment: bool

    def to_json(self) -> dict:
        return {
            "weakly_commutative": self.weakly_commutative,
            "weakly_compatible": self.weakly_compatible,
            "saluja_coeffs": _num_list(self.saluja_coeffs),
            "containment": self.containment,
        }


def pair_report(metric: Metric, img: DigitalImage, j: SelfMap, k: SelfMap) -> PairReport:
    coeffs = saluja_coefficients(metric, img, j, k)
    return PairReport(
        weakly_commutative=is_weakly_commutative(metric, img, j, k),
        weakly_compatible=is_weakly_compatible(j, k),
        saluja_coeffs=coeffs.witness if coeffs.feasible else None,
        containment=contains_image(j, k),
    )


def _lowest_preimage(g: SelfMap, value: int) -> int:
    return g.table.index(value)


@dataclass(frozen=True)
class CommonFixedPoint:
    point: int
    sequence: tuple[int, ...]
    xi: tuple
    unique: bool


def saluja_common_fixed_point(
    metric: Metric,
    img: DigitalImage,
    j: SelfMap,
    k: SelfMap,
    xi: Sequence | None = None,
    u0: int = 0,
    max_steps: int = 10_000,
) -> CommonFixedPoint:
    """Common fixed point of J and K by the sequence K u_n = J u_{n-1}.

    ``xi=None`` searches for the least feasible coefficients.  Preimages under
    K are taken at the lowest point index.
    """
    _fits(img, j, k)
    violations = []
    if not contains_image(j, k):
        violations.append("containment J(X) subset of K(X) fails")
    if not is_weakly_commutative(metric, img, j, k):
        violations.append("J and K are not weakly commutative")
    if xi is None:
        found = saluja_coefficients(metric, img, j, k)
        if not found.feasible:
            violations.append("no xi1, xi2, xi3 >= 0 with sum < 1 satisfy the inequality")
            xi = (0, 0, 0)
        else:
            xi = found.witness
    else:
        xi = tuple(xi)
        if len(xi) != 3 or any(x < 0 for x in xi) or sum(xi) >= 1:
            violations.append("xi must be three nonnegative numbers with sum < 1")
        elif not saluja_inequality_holds(metric, img, j, k, xi):
            violations.append("Saluja inequality fails for the given xi")
    if not 0 <= u0 < len(img):
        violations.append(f"start index {u0} is not a point of the image")
    if violations:
        raise PremiseError(violations)

    u = u0
    ks = [k(u)]
    for _ in range(max_steps):
        u = _lowest_preimage(k, j(u))
        ks.append(k(u))
        if ks[-1] == ks[-2]:
            break
    else:
        raise AssertionError("K u_n did not settle")
    a = ks[-1]
    if j(a) != k(a):
        raise AssertionError("limit is not a coincidence point")
    sigma = j(a)
    common = common_fixed_points(img, j, k)
    if sigma not in common:
        raise AssertionError(f"J(a) = {sigma} is not a common fixed point")
    return CommonFixedPoint(sigma, tuple(ks), tuple(xi), common == {sigma})


def four_map_inequality_holds(
    metric: Metric, img: DigitalImage, j, k, l, m, xi
) -> bool:
    d = metric.values(img)
    tol = FLOAT_TOL if not metric.integral or isinstance(xi, float) else 0
    J, K, L, M = j.table, k.table, l.table, m.table
    n = len(img)
    return all(
        _le(d[J[u]][K[q]], xi * d[L[u]][M[q]], tol) for u in range(n) for q in range(n)
    )


def _commute(a: SelfMap, b: SelfMap) -> bool:
    return all(a(b(x)) == b(a(x)) for x in range(len(a)))


def four_map_common_fixed_point(
    metric: Metric,
    img: DigitalImage,
    j: SelfMap,
    k: SelfMap,
    l: SelfMap,
    m: SelfMap,
    xi,
    u0: int = 0,
    max_steps: int = 10_000,
) -> CommonFixedPoint:
    """Common fixed point of J, K, L, M via the interleaved sequence

        q_{2n} = J u_{2n} = M u_{2n+1},   q_{2n+1} = K u_{2n+1} = L u_{2n+2}.
    """
    _fits(img, j, k, l, m)
    violations = []
    if not contains_image(j, m):
        violations.append("containment J(X) subset of M(X) fails")
    if not contains_image(k, l):
        violations.append("containment K(X) subset of L(X) fails")
    if not 0 < xi < 1:
        violations.append("xi must lie strictly between 0 and 1")
    elif not four_map_inequality_holds(metric, img, j, k, l, m, xi):
        violations.append("inequality d(Ju,Kq) <= xi d(Lu,Mq) fails")
    if not _commute(j, l):
        violations.append("J and L do not commute")
    if not _commute(k, m):
        violations.append("K and M do not commute")
    if not 0 <= u0 < len(img):
        violations.append(f"start index {u0} is not a point of the image")
    if violations:
        raise PremiseError(violations)

    u = u0
    qs = []
    for step in range(max_steps):
        if step % 2 == 0:
            qs.append(j(u))
            u = _lowest_preimage(m, qs[-1])
        else:
            qs.append(k(u))
            u = _lowest_preimage(l, qs[-1])
        if len(qs) >= 3 and qs[-1] == qs[-2] == qs[-3]:
            break
    else:
        raise AssertionError("interleaved sequence did not settle")
    sigma = qs[-1]
    common = common_fixed_points(img, j, k, l, m)
    if sigma not in common:
        raise AssertionError(f"limit {sigma} is not fixed by all four maps")
    return CommonFixedPoint(sigma, tuple(qs), (xi,), common == {sigma})


@dataclass(frozen=True)
class LMCollapse:
    j_equals_k: bool
    j_constant: bool
    constancy_applies: bool

    @property
    def holds(self) -> bool:
        return self.j_equals_k and (self.j_constant or not self.constancy_applies)


def lm_collapse_check(
    metric: Metric, img: DigitalImage, j: SelfMap, k: SelfMap, l: SelfMap, xi
) -> LMCollapse:
    """With d(Ju,Kq) <= xi d(Lu,Lq) for all u, q: J = K, and J is constant
    when X is c_1-connected and L is c_1-continuous."""
    _fits(img, j, k, l)
    if not 0 < xi < 1:
        raise PremiseError("xi must lie strictly between 0 and 1")
    if not four_map_inequality_holds(metric, img, j, k, l, l, xi):
        raise PremiseError("inequality d(Ju,Kq) <= xi d(Lu,Lq) fails")
    c1 = img.with_adjacency(1)
    applies = c1.is_connected() and is_continuous(c1, l)
    return LMCollapse(j.table == k.table, is_constant(j), applies)


# -- triviality checks ---------------------------------------------------------


def uniformly_connected_collapse_check(img: DigitalImage, f: SelfMap) -> bool:
    """A c_u-continuous Euclidean contraction of a uniformly c_u-connected image
    must be constant; returns whether ``f`` is."""
    violations = []
    if not img.is_connected():
        violations.append("image is not connected")
    elif not img.is_uniformly_connected():
        violations.append("image is not uniformly connected")
    if not is_continuous(img, f):
        violations.append("map is not continuous")
    if not is_banach(Metric("lp", 2), img, f):
        violations.append("map is not a Euclidean contraction")
    if violations:
        raise PremiseError(violations)
    return is_constant(f)


def powers_of_two_window_check(N: int) -> bool:
    """Exact check of the halving map on X_N = {2^0, ..., 2^N} under |x - y|.

    Verifies d(f1, f2^n) < d(1, 2^n)/2 for 1 <= n <= N, d(f2^m, f2^n) =
    d(2^m, 2^n)/2 for 1 <= m <= n <= N, and that f(X_N) misses only 2^N.
    """
    if N < 2:
        raise ValueError("window needs N >= 2")
    xs = [2**n for n in range(N + 1)]

    def f(x: int) -> int:
        return 1 if x == 1 else x // 2

    for n in range(1, N + 1):
        # halves compared after doubling, to stay in integers
        if not 2 * abs(f(1) - f(xs[n])) < abs(1 - xs[n]):
            return False
    for m in range(1, N + 1):
        for n in range(m, N + 1):
            lhs = abs(f(xs[m]) - f(xs[n]))
            if lhs != 2 ** (n - 1) - 2 ** (m - 1) or 2 * lhs != abs(xs[n] - xs[m]):
                return False
    return {f(x) for x in xs} == set(xs[:-1])


def midpoint_halving_escape(j: Sequence[int]) -> int:
    """Smallest k >= 1 with j / 2^k outside the integer lattice."""
    coords = [int(c) for c in j]
    if all(c == 0 for c in coords):
        raise ValueError("the zero vector never leaves the lattice")
    k = 1
    while all(c % 2 == 0 for c in coords):
        coords = [c // 2 for c in coords]
        k += 1
    return k


# -- one-shot classification ---------------------------------------------------


@dataclass(frozen=True)
class ClassificationReport:
    gamma_star: BanachModulus
    is_distance_decreasing: bool
    kannan: KannanModulus
    reich: ReichResult
    reich_universal: bool
    continuous: bool
    constant: bool
    fixed_points: tuple[int, ...] = field(default=())

    @property
    def is_banach(self) -> bool:
        return self.gamma_star.is_banach

    def to_json(self) -> dict:
        k_star = self.kannan.k_star
        return {
            "gamma_star": self.gamma_star.gamma,
            "gamma_star_power": str(self.gamma_star.power),
            "gamma_exponent": _num(self.gamma_star.exponent),
            "is_banach": self.is_banach,
            "is_distance_decreasing": self.is_distance_decreasing,
            "kannan_k_star": None if k_star == math.inf else float(k_star),
            "is_kannan": self.kannan.is_kannan,
            "reich_feasible": self.reich.feasible,
            "reich_witness": _num_list(self.reich.witness) if self.reich.feasible else None,
            "reich_universal": self.reich_universal,
            "continuous": self.continuous,
            "constant": self.constant,
            "fixed_points": list(self.fixed_points),
        }


def classify(metric: Metric, img: DigitalImage, f: SelfMap) -> ClassificationReport:
    _fits(img, f)
    return ClassificationReport(
        gamma_star=banach_modulus(metric, img, f),
        is_distance_decreasing=is_distance_decreasing(metric, img, f),
        kannan=kannan_modulus(metric, img, f),
        reich=reich_existential_feasible(metric, img, f),
        reich_universal=reich_universal_holds(metric, img, f),
        continuous=is_continuous(img, f),
        constant=is_constant(f),
        fixed_points=tuple(sorted(fixed_points(img, f))),
    )


def _num(x):
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else float(x)
    return x


def _num_list(xs):
    if xs is None:
        return None
    return [float(x) for x in xs]
