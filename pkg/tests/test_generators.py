from math import comb, gcd

import pytest

from curvedefect import (
    connected_sum,
    cycle_graph,
    cylindrical_grid,
    defect_polyak,
    random_curve,
    rectangular_grid,
    small_curves,
    torus_knot,
)
from curvedefect.generators import is_unicursal_torus

from oracles import geometric_torus_defect


@pytest.mark.parametrize("p", range(2, 7))
@pytest.mark.parametrize("q", range(2, 7))
def test_torus_shape(p, q):
    c = torus_knot(p, q)
    c.validate()
    assert c.n == (p - 1) * q
    assert c.is_unicursal() == (gcd(p, q) == 1) == is_unicursal_torus(p, q)
    assert c.component_count() == gcd(p, q)


@pytest.mark.parametrize("p,q", [(2, 7), (3, 10), (5, 6), (6, 5), (7, 3)])
def test_torus_geometry(p, q):
    assert (torus_knot(p, q).n, defect_polyak(torus_knot(p, q))) == geometric_torus_defect(p, q)


def test_bad_torus_args():
    assert torus_knot(1, 3).n == 0
    with pytest.raises(ValueError):
        torus_knot(0, 3)


def test_grids():
    g = rectangular_grid(3, 4)
    assert (g.vertex_count, g.edge_count) == (12, 17)
    c = cylindrical_grid(2, 5)
    assert (c.vertex_count, c.edge_count, c.face_count()) == (10, 15, 7)
    assert cycle_graph(4).edge_count == 4


def test_connected_sum_additive():
    pairs = [(torus_knot(3, 4), torus_knot(4, 3)), (torus_knot(2, 3), torus_knot(2, 5)), (random_curve(6, 1), random_curve(5, 2))]
    for a, b in pairs:
        s = connected_sum(a, b)
        s.validate()
        assert s.n == a.n + b.n and s.is_unicursal()
        assert defect_polyak(s) == defect_polyak(a) + defect_polyak(b)


def test_random_curve():
    for n in range(0, 15):
        c = random_curve(n, n)
        c.validate()
        assert c.n == n and c.is_unicursal()
    assert random_curve(12, 4) == random_curve(12, 4)
    with pytest.raises(ValueError):
        random_curve(-1, 0)


def test_small_curves_counts():
    # distinct spherical curves up to reflection: 1, 2, 6, 19, 76 for n = 1..5
    counts = [0] * 6
    for c in small_curves(5):
        counts[c.n] += 1
    assert counts == [1, 1, 2, 6, 19, 76]


def test_torus_formula_small():
    for p in range(2, 5):
        assert defect_polyak(torus_knot(p, p + 1)) == 2 * comb(p + 1, 3)
