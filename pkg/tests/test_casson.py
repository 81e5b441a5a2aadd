import random
from fractions import Fraction

import pytest

from curvedefect import (
    CurveMap,
    KnotDiagram,
    casson_c2,
    connected_sum,
    defect_polyak,
    expected_c2_exhaustive,
    expected_c2_monte_carlo,
    gauss_code,
    random_curve,
    torus_knot,
)
from curvedefect.casson import defect_over_eight

from oracles import alexander_c2


def oracle(diagram):
    code = gauss_code(diagram.shadow)
    return alexander_c2(code.sequence, code.signs, dict(enumerate(diagram.over_bits)))


@pytest.mark.parametrize("seed", range(40))
def test_c2_matches_alexander(seed):
    rng = random.Random(seed)
    c = random_curve(rng.randint(1, 9), seed)
    d = KnotDiagram(c, tuple(rng.randint(0, 1) for _ in range(c.n)))
    assert casson_c2(d) == oracle(d)


def test_standard_knots(trefoil):
    # traversal meets crossings 1, 2, 0; over-under-over on first passages alternates
    assert casson_c2(KnotDiagram(trefoil, (1, 1, 0))) == 1
    assert casson_c2(KnotDiagram.all_ascending(trefoil)) == 0
    assert casson_c2(KnotDiagram.all_ascending(torus_knot(3, 7))) == 0


def test_c2_basepoint_and_orientation():
    rng = random.Random(4)
    for seed in range(20):
        c = random_curve(8, seed)
        d = KnotDiagram(c, tuple(rng.randint(0, 1) for _ in range(c.n)))
        v = casson_c2(d)
        for e in rng.sample(list(c.darts()), 5):
            assert casson_c2(d.with_basepoint(e)) == v
        assert casson_c2(d.reversed()) == v
        assert casson_c2(d.mirror_signs()) == v


@pytest.mark.parametrize(
    "curve,expected",
    [
        (torus_knot(2, 3), Fraction(1, 4)),
        (torus_knot(4, 3), Fraction(-1, 4)),
        (torus_knot(3, 4), Fraction(1)),
        (connected_sum(torus_knot(3, 4), torus_knot(4, 3)), Fraction(3, 4)),
        (connected_sum(torus_knot(2, 3), torus_knot(4, 3)), Fraction(0)),
    ],
)
def test_expected_c2_exact(curve, expected):
    num, den = expected_c2_exhaustive(curve)
    assert Fraction(num, den) == expected == defect_over_eight(curve)


def test_expected_c2_brute_force():
    c = random_curve(6, 2)
    total = 0
    for mask in range(1 << c.n):
        bits = tuple((mask >> i) & 1 for i in range(c.n))
        total += oracle(KnotDiagram(c, bits))
    assert Fraction(total, 1 << c.n) == Fraction(defect_polyak(c), 8)


def test_monte_carlo():
    c = torus_knot(5, 4)
    mean, se = expected_c2_monte_carlo(c, 20000, seed=1)
    assert abs(mean - defect_polyak(c) / 8) <= 4 * se
    assert expected_c2_monte_carlo(c, 5000, seed=3) == expected_c2_monte_carlo(c, 5000, seed=3)
    assert expected_c2_monte_carlo(CurveMap.circle(), 10) == (0.0, 0.0)
    with pytest.raises(ValueError):
        expected_c2_monte_carlo(c, 0)


def test_bad_bits(trefoil):
    with pytest.raises(ValueError):
        KnotDiagram(trefoil, (1, 0))
    with pytest.raises(ValueError):
        KnotDiagram(trefoil, (1, 0, 2))
