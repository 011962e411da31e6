from decimal import Decimal
from fractions import Fraction
from math import floor, sqrt

import pytest
from hypothesis import given, strategies as st

from surfdom import generators as gen
from surfdom.pipeline import (
    F_iter, F_step, CONSTANT_C, bound_constants, dominate_surface, f_iter, f_step, growth_ratios, iterate_bounds,
    reduce_to_spheres, theorem2_constant_check, constant_discriminant,
)
from surfdom.surface_map import Triangulation, TriangulationError, euler_genus

from oracles import dominates


# ------------------------------------------------------------ iterates
def test_iterate_examples():
    assert f_step(100) == 116 and F_step(100) == 121
    assert f_iter(100, 0) == 100 and F_iter(100, 2) == F_step(121) == 144


@given(st.integers(3, 10 ** 9))
def test_steps_match_real_formulas(m):
    # skip values where a float rounding could flip the floor
    fr = m + sqrt(2 * m) + 2
    Fr = (sqrt(m) + 1) ** 2
    if abs(fr - round(fr)) > 1e-6:
        assert f_step(m) == floor(fr)
    if abs(Fr - round(Fr)) > 1e-6:
        assert F_step(m) == floor(Fr)


@given(st.integers(3, 10 ** 7), st.integers(1, 8))
def test_iterate_bounds_hold(n, i):
    ib = iterate_bounds(n, i)
    assert ib.f_ok and ib.F_ok and ib.ordered
    assert ib.f_exact <= ib.f_bound + Decimal("1e-30") and ib.F_exact <= ib.F_bound + Decimal("1e-30")


def test_iterate_bounds_fifth():
    ib = iterate_bounds(1000, 5)
    assert ib.f_exact == f_iter(1000, 5)
    assert ib.f_bound == 1000 + 5 * Decimal(2000).sqrt() + 25 + 15 - 2
    with pytest.raises(ValueError):
        iterate_bounds(2, 1)
    with pytest.raises(ValueError):
        iterate_bounds(10, 0)


# ------------------------------------------------------------ constants
def test_sphere_constants():
    k = bound_constants(True, 0, 1, Fraction(2, 25))
    assert k.a == 0 and abs(k.b - Decimal(1) / 3) < Decimal("1e-40") and abs(k.c - k.b) < Decimal("1e-40")
    # 1/4 - 1/6 - 2/25 = 1/300
    assert abs(k.threshold_n() - 100) < Decimal("1e-30")
    assert k.surface == "S0" and k.to_json()["epsilon"] == "2/25"


def test_torus_constants():
    k = bound_constants(True, 1, 0, Fraction(2, 25))
    expect = sqrt(2) / 6 + 6 * sqrt(3) + 2 * sqrt(2)
    assert float(k.a) == pytest.approx(expect) and round(float(k.a), 3) == 13.456
    assert float(k.c) == pytest.approx(float(k.a) ** 2 / (4 * 0.08) + float(k.b))


def test_constants_accept_float_epsilon():
    assert bound_constants(False, 1, 2, 0.08).c == bound_constants(False, 1, 2, Fraction(2, 25)).c


@pytest.mark.parametrize("args", [(True, 0, 1, 0), (True, -1, 0, Fraction(1, 10)), (False, 0, 1, Fraction(1, 10)),
                                  (True, 1, -2, Fraction(1, 10))])
def test_constants_errors(args):
    with pytest.raises(ValueError):
        bound_constants(*args)


def test_threshold_none_for_large_eps():
    assert bound_constants(True, 1, 1, Fraction(1, 10)).threshold_n() is None


def test_growth_ratios_bounded():
    ra, rc = growth_ratios(True, range(1, 30), range(0, 30), Fraction(1, 10))
    ra2, rc2 = growth_ratios(True, range(1, 60), range(0, 60), Fraction(1, 10))
    assert 0 < ra and 0 < rc
    # a = O(sqrt(g)(g+t)) and c = O((g^3 + g t^2)/eps): ratios stay put on a larger grid
    assert ra2 <= ra * Decimal("1.01") and rc2 <= rc * Decimal("1.01")


def test_constant_check_numbers():
    left, right = constant_discriminant()
    assert (left, right) == (1755758592, 1761548400)
    assert theorem2_constant_check()
    assert not theorem2_constant_check(CONSTANT_C // 2)
    assert (42 * Fraction(CONSTANT_C) - 36) / 1008 > 420_000


# ------------------------------------------------------------ reduction
@pytest.mark.parametrize("spec,orientable,genus", [
    (("torus_grid", 12, 12, 0), True, 2),
    (("torus_grid", 9, 11, 4), True, 2),
    (("projective_quotient", 4), False, 1),
    (("klein_grid", 8, 8), False, 2),
    (("geodesic_sphere", 3), True, 0),
])
def test_dominate_surface(spec, orientable, genus):
    G = gen.generate(spec[0], *spec[1:]).graph
    res = dominate_surface(G)
    tr = res.trace
    assert (tr.orientable, euler_genus(G)) == (orientable, genus)
    assert dominates(G, res.D)
    assert all(tr.invariants().values()), tr.invariants()
    assert res.pullback_identity()
    assert res.size <= res.theorem_bound()
    assert all(euler_genus(H) == 0 for H, _ in tr.final.values())
    assert len(tr.events) == tr.g0 + tr.g1 + tr.g2 and len(tr.final) == 1 + tr.g0
    if genus == 0:
        assert not tr.events and tr.cycle_sum_bound() is None
    else:
        assert tr.cycle_sum_within_bound() is not None
    js = tr.to_json()
    assert js["sum_C"] == sum(len(e.record.cycle) for e in tr.events)


def test_tallies():
    tr = reduce_to_spheres(gen.torus_grid(6, 6).graph)
    assert (tr.g0, tr.g1, tr.g2) == (0, 0, 1) and tr.sum_C == 6
    tr = reduce_to_spheres(gen.projective_quotient(3).graph)
    assert (tr.g0, tr.g1, tr.g2) == (0, 1, 0)


def test_disconnected_input_rejected():
    G = gen.octahedron().graph
    rots = [list(r) for r in G.rotations] + [[u + 6 for u in r] for r in G.rotations]
    H = Triangulation.from_rotations(rots)
    with pytest.raises(TriangulationError):
        reduce_to_spheres(H)
