import itertools
from math import gcd

import pytest

from cubiconics.cayley import T4
from cubiconics.cubic_conics import find_lines
from cubiconics.errors import BudgetError, DomainError
from cubiconics.multipoly import MultiPoly
from cubiconics.pointcount import (conic_points, enumerate_affine,
                                   enumerate_projective, homogenize,
                                   integral_conics_experiment,
                                   points_on_conics_experiment)

P2 = ("T0", "T1", "T2")
A3 = ("T1", "T2", "T3")


def brute_projective(forms, names, B):
    pts = set()
    for raw in itertools.product(range(-B, B + 1), repeat=len(names)):
        if all(v == 0 for v in raw):
            continue
        sub = {n: v for n, v in zip(names, raw)}
        if any(not f.substitute(sub).is_zero() for f in forms):
            continue
        g = 0
        for v in raw:
            g = gcd(g, abs(v))
        pt = tuple(v // g for v in raw)
        lead = next(v for v in pt if v != 0)
        if lead < 0:
            pt = tuple(-v for v in pt)
        pts.add(pt)
    return pts


def test_p1_full():
    r = enumerate_projective([], ("T0", "T1"), 1)
    assert r.count == 4
    assert set(r.points) == {(0, 1), (1, 0), (1, 1), (1, -1)}


def test_conic_p2_example():
    conic = MultiPoly.parse("T0*T2 - T1^2", P2)
    r = enumerate_projective([conic], P2, 2)
    assert set(r.points) == {(1, 0, 0), (0, 0, 1), (1, 1, 1), (1, -1, 1)}
    # cross-check with the parameterization [s^2 : s t : t^2]
    par = set()
    for s in range(-2, 3):
        for t in range(-2, 3):
            if (s, t) == (0, 0):
                continue
            v = (s * s, s * t, t * t)
            if max(abs(x) for x in v) > 2:
                continue
            g = 0
            for x in v:
                g = gcd(g, abs(x))
            pt = tuple(x // g for x in v)
            lead = next(x for x in pt if x != 0)
            par.add(tuple(lead // abs(lead) * x for x in pt))
    assert set(r.points) == par


def test_empty_variety():
    r = enumerate_projective([MultiPoly.parse("T0^2 + T1^2 + T2^2", P2)], P2, 10)
    assert r.count == 0


def test_exactness_small_B_rescan():
    f = MultiPoly.parse("T0^3 + T1^3 + T2^3 + T3^3", T4)
    for B in (2, 4, 8):
        fast = set(enumerate_projective([f], T4, B).points)
        assert fast == brute_projective([f], T4, B)


def test_solve_variable_permutation_invariance():
    f = MultiPoly.parse("T0^3 + T1^3 + T2^3 + T3^3", T4)
    base = set(enumerate_projective([f], T4, 6).points)
    for var in T4:
        assert set(enumerate_projective([f], T4, 6, solve_var=var).points) == base


def test_heights_filter_exact():
    f = MultiPoly.parse("T0*T3 - T1*T2", T4)
    r = enumerate_projective([f], T4, 5)
    assert all(max(abs(c) for c in p) <= 5 for p in r.points)
    assert all(gcd(gcd(abs(p[0]), abs(p[1])), gcd(abs(p[2]), abs(p[3]))) == 1
               for p in r.points)


def test_affine_examples():
    line = MultiPoly.parse("T1 - T2", ("T1", "T2"))
    # euclidean ball of radius 1 on x = y contains only the origin
    r = enumerate_affine([line], ("T1", "T2"), 1)
    assert set(r.points) == {(0, 0)}
    # the max-norm box of side 1 contains the three diagonal points
    r2 = enumerate_affine([line], ("T1", "T2"), 1, norm="max")
    assert set(r2.points) == {(-1, -1), (0, 0), (1, 1)}
    # B = 0: only the origin when it solves the system
    r3 = enumerate_affine([line], ("T1", "T2"), 0)
    assert set(r3.points) == {(0, 0)}


def test_affine_trivial_bound():
    f = MultiPoly.parse("T1^3 + T2^3 + T3^3 - 1", A3)
    delta = 3
    for B in (4, 16, 64):
        r = enumerate_affine([f], A3, B)
        assert r.count <= delta * (2 * B + 1) ** 2


def test_budget_errors():
    f = MultiPoly.parse("T0^3 + T1^3 + T2^3 + T3^3", T4)
    with pytest.raises(BudgetError):
        enumerate_projective([f], T4, 10 ** 5)
    with pytest.raises(DomainError):
        enumerate_projective([f], T4, 0)


def test_conic_points_paths_agree():
    Q = MultiPoly.parse("T0*T2 - T1^2", T4)
    ell = MultiPoly.parse("T3", T4)
    r = conic_points(Q, ell, 2)
    assert r.count == 4 and "agree" in r.note
    r2 = conic_points(Q, ell, 32)
    assert "agree" in r2.note
    # growth on an isotropic conic: doubling B doubles the count roughly
    import math
    c1 = conic_points(Q, ell, 16).count
    c2 = conic_points(Q, ell, 32).count
    slope = math.log(c2 / c1) / math.log(2)
    assert abs(slope - 1.0) < 0.5


def test_conic_points_anisotropic():
    Q = MultiPoly.parse("T2^2 - T2*T3 + T3^2", T4)
    ell = MultiPoly.parse("T0 + T1", T4)
    r = conic_points(Q, ell, 50)
    # the scheme has exactly one rational point (the vertex where the two
    # conjugate lines meet); no smooth base point exists so acceleration
    # falls back with a note
    assert r.points == ((1, -1, 0, 0),)
    assert "skipped" in r.note or "brute" in r.note


def test_homogenize():
    f = MultiPoly.parse("T1^3 + T2*T3 - 1", A3)
    F = homogenize(f)
    assert F.is_homogeneous() and F.total_degree() == 3
    assert F.coefficient((3, 0, 0, 0)) == -1


def test_points_on_conics_experiment(fermat_surface):
    lines = find_lines(fermat_surface, 1)
    rep = points_on_conics_experiment(fermat_surface, lines, [4, 8, 16])
    assert rep["counts"] == sorted(rep["counts"])
    assert rep["fitted_exponent"] is not None
    assert all(rep["bound_satisfied"])
    assert abs(rep["overlay_exponent"] - 1.6495) < 1e-3


def test_integral_conics_experiment(fermat_surface):
    lines = find_lines(fermat_surface, 1)
    aff = MultiPoly.parse("1 + T1^3 + T2^3 + T3^3", A3)
    rep = integral_conics_experiment(aff, [8, 16, 32], lines=lines)
    assert all(rep["trivial_bound_ok"])
    assert rep["counts"] == sorted(rep["counts"])
    empty = integral_conics_experiment(aff, [])
    assert empty["counts"] == [] and empty["fitted_exponent"] is None
