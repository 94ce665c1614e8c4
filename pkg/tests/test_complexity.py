import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from digifix.complexity import (
    CapExceeded,
    all_sccs,
    c_sharp,
    enumerate_contractions,
    find_scc,
    han44_premise_and_bound,
    is_isomorphic,
    is_simple_closed_curve,
    parse_window,
)
from digifix.contraction import is_distance_decreasing
from digifix.image import DigitalImage, ImageError
from digifix.selfmap import SelfMap, image_sequence, iterate
from tests.conftest import L1, L2
from tests.strategies import images


def brute_contractions(metric, img):
    n = len(img)
    out = []
    for t in itertools.product(range(n), repeat=n):
        f = SelfMap(t)
        if is_distance_decreasing(metric, img, f):
            out.append(f)
    return out


def brute_c_sharp(metric, img):
    best = 0
    for f in brute_contractions(metric, img):
        sizes = image_sequence(img, f).sizes()
        for m in range(1, len(sizes)):
            if sizes[m] == 1 and sizes[m - 1] > 1:
                best = max(best, m)
                break
    return best


def test_enumerate_contains_counterexample(cx_image, cx_map):
    assert cx_map in list(enumerate_contractions(L2, cx_image))


def test_enumerate_singleton_and_pair():
    assert list(enumerate_contractions(L2, DigitalImage(((4, 4),), 1))) == [SelfMap((0,))]
    pair = DigitalImage(((0, 0), (2, 0)), 1)
    assert list(enumerate_contractions(L2, pair)) == [SelfMap((0, 0)), SelfMap((1, 1))]


@given(images(max_points=5))
def test_enumerate_matches_brute_force(img):
    for metric in (L1, L2):
        assert list(enumerate_contractions(metric, img)) == brute_contractions(metric, img)


def test_c_sharp_examples(cx_image):
    assert c_sharp(L2, DigitalImage(((0,),), 1)).c_sharp == 0
    res = c_sharp(L2, cx_image)
    assert res.c_sharp == 2 and res.maps_enumerated > 0
    assert c_sharp(L2, DigitalImage(((0, 0), (2, 0)), 1)).c_sharp == 1


def test_cap_exceeded():
    img = DigitalImage(tuple((i,) for i in range(8)), 1)
    with pytest.raises(CapExceeded):
        c_sharp(L2, img)
    with pytest.raises(CapExceeded):
        list(enumerate_contractions(L2, img, cap=5))


def test_parallel_matches_serial(cx_image):
    img = DigitalImage(((0, 0), (1, 0), (2, 1), (0, 2), (3, 3)), 2)
    assert c_sharp(L2, img, workers=2) == c_sharp(L2, img)


def test_require_continuous_subset():
    img = DigitalImage(((0, 0), (1, 0), (2, 0), (2, 1)), 1)
    all_c = set(enumerate_contractions(L2, img))
    cont = set(enumerate_contractions(L2, img, require_continuous=True))
    assert cont <= all_c
    # c1-connected: continuous contractions are constant
    assert all(len(f.image()) == 1 for f in cont)


@given(images(max_points=5))
def test_c_sharp_matches_brute_force_and_witness_rechecks(img):
    res = c_sharp(L2, img)
    assert res.c_sharp == brute_c_sharp(L2, img)
    if res.c_sharp:
        f, m = res.witness, res.c_sharp
        assert is_distance_decreasing(L2, img, f)
        assert len(iterate(f, m - 1).image()) > 1
        assert len(iterate(f, m).image()) == 1


@given(images(max_points=5), st.randoms(use_true_random=False),
       st.tuples(*[st.integers(-5, 5)] * 3))
def test_c_sharp_invariant_under_order_and_translation(img, rnd, shift):
    pts = list(img.points)
    rnd.shuffle(pts)
    shuffled = DigitalImage(tuple(pts), img.u)
    base = c_sharp(L2, img).c_sharp
    assert c_sharp(L2, shuffled).c_sharp == base
    assert c_sharp(L2, img.translated(shift[: img.dim])).c_sharp == base


# -- isomorphism -------------------------------------------------------------------

def test_isomorphic_examples(cx_image):
    ok, bij = is_isomorphic(cx_image, cx_image)
    assert ok and bij == (0, 1, 2)
    path = DigitalImage(((0, 0), (1, 0), (2, 0)), 1)
    triangle = DigitalImage(((0, 0), (1, 0), (1, 1)), 2)
    assert is_isomorphic(path, triangle) == (False, None)


def test_isomorphism_bijection_preserves_adjacency():
    a = DigitalImage(((0, 0), (1, 0), (2, 0), (2, 1)), 1)
    b = DigitalImage(((5, 5), (5, 6), (4, 6), (3, 6)), 1)
    ok, bij = is_isomorphic(a, b)
    assert ok
    for i, j in itertools.combinations(range(4), 2):
        assert a.adjacency[i][j] == b.adjacency[bij[i]][bij[j]]


def test_isomorphic_cycles_with_unequal_c_sharp():
    curves = [DigitalImage(c, 2) for c in all_sccs(2, 2, 8, (5, 5))]
    values = {}
    for img in curves:
        values.setdefault(c_sharp(L2, img, cap=8).c_sharp, img)
    assert len(values) >= 2
    a, b = list(values.values())[:2]
    ok, _ = is_isomorphic(a, b)
    assert ok


# -- simple closed curves ----------------------------------------------------------

def test_simple_closed_curve_examples():
    res = find_scc(2, 2, 7, (5, 5))
    assert res.found and len(res.curve) == 7
    assert is_simple_closed_curve(res.image(2))
    with pytest.raises(ImageError):
        is_simple_closed_curve(DigitalImage(((0, 0), (1, 0), (1, 1)), 2))
    assert is_simple_closed_curve(DigitalImage(((1, 0), (0, 1), (-1, 0), (0, -1)), 2))
    assert not is_simple_closed_curve(DigitalImage(((0, 0), (1, 0), (2, 0), (3, 0)), 1))


def test_find_scc_examples():
    sq = find_scc(2, 1, 4, (5, 5))
    assert sq.found and is_simple_closed_curve(sq.image(1))
    with pytest.raises(ImageError):
        find_scc(2, 2, 3, (5, 5))
    # no room for a 5-cycle under c1 (bipartite lattice)
    assert not find_scc(2, 1, 5, (4, 4)).found


def test_find_scc_budget():
    res = find_scc(2, 1, 5, (6, 6), budget=10)
    assert not res.found and res.budget_exhausted


@pytest.mark.parametrize("length", [4, 6, 7, 8])
def test_every_found_curve_is_simple_closed(length):
    for curve in all_sccs(2, 2, length, (5, 5)):
        img = DigitalImage(curve, 2)
        assert is_simple_closed_curve(img)
        for i in range(length):
            assert img.adjacency[i][(i + 1) % length]


def test_fig_curve_neighbourhood_has_three_points():
    res = find_scc(2, 2, 7, (5, 5))
    img = res.image(2)
    assert len(img.neighborhood(res.curve[4], 1)) == 3


def test_han44_bound_on_small_curves():
    for length in (4, 6):
        for curve in all_sccs(2, 2, length, (5, 5)):
            out = han44_premise_and_bound(DigitalImage(curve, 2))
            assert out.bound_holds
            if out.premise:
                assert out.c_sharp <= 3


def test_han44_rejects_non_curve():
    with pytest.raises(ImageError):
        han44_premise_and_bound(DigitalImage(((0, 0), (1, 0), (2, 0), (3, 0)), 1))


def test_parse_window():
    assert parse_window("5x5") == (5, 5)
    assert parse_window("3X4x2") == (3, 4, 2)
    assert parse_window("5") == (5,)
    for bad in ("0x3", "axb", ""):
        with pytest.raises(ValueError):
            parse_window(bad)
