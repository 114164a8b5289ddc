import random
from fractions import Fraction
from math import gcd

import pytest

from cubiconics.cayley import T4, TPAR, cayley_plane_curve
from cubiconics.cubic_conics import (CubicSurface, absolutely_irreducible_cubic_mod_p,
                                     census_cutoff_constant, classify_cubic,
                                     cofactor_pair, conic_census, conic_family,
                                     family_image, find_lines,
                                     height_pairing_check, leading_family,
                                     residual_conic, specialized_height)
from cubiconics.errors import DomainError
from cubiconics.multipoly import MultiPoly, gcd_binary_forms

P3C = ("T0", "T1", "T2")


def test_find_lines_fermat(fermat_surface):
    lines = find_lines(fermat_surface, 1)
    assert len(lines) == 3
    pluckers = {l.line.plucker for l in lines}
    assert len(pluckers) == 3
    reps = {(str(l.line.u), str(l.line.v)) for l in lines}
    assert ("1 * T0 + 1 * T1", "1 * T2 + 1 * T3") in reps
    # ideal-membership certificates are part of the result
    for rl in lines:
        assert rl.cofactor_u * rl.line.u + rl.cofactor_v * rl.line.v == fermat_surface.f


def test_found_count_below_27(corpus_forms):
    for f in corpus_forms[:4]:
        surf = CubicSurface.make(f)
        assert len(find_lines(surf, 1)) <= 27


def test_classify_fermat(fermat_surface):
    rec = classify_cubic(fermat_surface.f)
    assert rec["essential_vars"] == 4
    assert rec["non_ruled"] == "certified"
    assert rec["ncc"]
    assert not rec["cylinder_over_curve"]


def test_classify_skew_normal_form():
    rec = classify_cubic(MultiPoly.parse("T0^2*T2 + T1^2*T3", T4))
    assert rec["non_ruled"] == "ruled-skew-evidence"
    assert rec["singular_lines"]


def test_classify_cylinder():
    f = MultiPoly.parse("T0^3 + 3*T0^2*T1 + 3*T0*T1^2 + T1^3 + T2^3", T4)
    rec = classify_cubic(f)
    assert rec["essential_vars"] == 2
    assert rec["is_cone"]


def test_absolutely_irreducible():
    assert absolutely_irreducible_cubic_mod_p(
        MultiPoly.parse("T0^3 + T1^3 + T2^3", P3C), 5) == "certified-irreducible"
    assert absolutely_irreducible_cubic_mod_p(
        MultiPoly.parse("T0*T1^2 + T0*T2^2", P3C), 5) == "reducible"
    # content divisible by p: degenerate reduction
    assert absolutely_irreducible_cubic_mod_p(
        MultiPoly.parse("5*T0^3 + 5*T1^3 + 5*T2^3", P3C), 5) == "inconclusive"
    # reduction with a visible factor mod p only
    assert absolutely_irreducible_cubic_mod_p(
        MultiPoly.parse("3*T0^3 + T1^2*T2", P3C), 3) == "reducible"


def test_cofactor_pair(fermat_surface, fermat_line):
    A, B = fermat_surface.f, None
    a, b = cofactor_pair(fermat_surface.f, fermat_line.line.u, fermat_line.line.v)
    assert a == MultiPoly.parse("T0^2 - T0*T1 + T1^2", T4)
    assert b == MultiPoly.parse("T2^2 - T2*T3 + T3^2", T4)


def test_residual_conic_examples(fermat_surface, fermat_line):
    ell, Q = residual_conic(fermat_surface, fermat_line, (1, 0))
    assert ell == MultiPoly.parse("T0 + T1", T4)
    assert Q == MultiPoly.parse("T2^2 - T2*T3 + T3^2", T4)
    ell2, Q2 = residual_conic(fermat_surface, fermat_line, (0, 1))
    assert ell2 == MultiPoly.parse("T2 + T3", T4)
    assert Q2 == MultiPoly.parse("T0^2 - T0*T1 + T1^2", T4)
    ell_s, Q_s = residual_conic(fermat_surface, fermat_line, None)
    assert Q_s.degree_in(TPAR) <= 3
    with pytest.raises(DomainError):
        residual_conic(fermat_surface, fermat_line, (0, 0))


def test_conic_family_structure(fermat_pencil):
    pencil = fermat_pencil
    live = [q for q in pencil.b_ij.values() if not q.is_zero()]
    # coefficients all homogeneous of one measured degree, gcd-free family
    assert {q.total_degree() for q in live} == {pencil.family_degree}
    assert gcd_binary_forms(live, TPAR).total_degree() == 0
    # the content plus the family degree exhausts the resultant budget 3
    assert pencil.b_content.total_degree() + pencil.family_degree == 3
    # nonvanishing at sampled parameters
    rng = random.Random(2)
    for _ in range(100):
        t1, t2 = rng.randint(-40, 40), rng.randint(-40, 40)
        if (t1, t2) == (0, 0):
            continue
        g = gcd(abs(t1), abs(t2))
        assert specialized_height(pencil, t1 // g, t2 // g) >= 1


def test_family_degree_is_three(fermat_pencil):
    # the universal conic over the pencil sweeps the cubic surface
    # birationally, so a generic line meets deg X = 3 members
    assert fermat_pencil.family_degree == 3


def test_specialization_coherence(fermat_surface, fermat_line, fermat_pencil):
    for t in ((1, 0), (0, 1), (2, 3), (-1, 4)):
        ell, Q = residual_conic(fermat_surface, fermat_line, t)
        direct = cayley_plane_curve(Q, ell)
        assert fermat_pencil.specialize(*t).poly == direct.poly


def test_leading_family(fermat_pencil):
    rep = leading_family(fermat_pencil, "certified-irreducible")
    assert rep["rank"] >= 2
    assert rep["no_common_zero"]


def test_family_image(fermat_pencil):
    img_b = family_image(fermat_pencil.b_ij.values())
    assert img_b["image_degree"] * img_b["cover_degree"] == \
        fermat_pencil.family_degree
    img_a = family_image(fermat_pencil.a_family)
    assert img_a["image_degree"] * img_a["cover_degree"] == \
        fermat_pencil.family_degree
    # synthetic rank-3 family: the quadratic monomial curve
    tn = TPAR
    fam3 = [MultiPoly.parse("t1^2", tn), MultiPoly.parse("t1*t2", tn),
            MultiPoly.parse("t2^2", tn)]
    r3 = family_image(fam3)
    assert r3 == {**r3, "rank": 3, "image_degree": 2, "cover_degree": 1,
                  "double_cover": False}
    # synthetic rank-2 family: line with a double cover
    fam2 = [MultiPoly.parse("t1^2", tn), MultiPoly.parse("t2^2", tn)]
    r2 = family_image(fam2)
    assert r2["rank"] == 2 and r2["double_cover"] and r2["image_degree"] == 1
    with pytest.raises(DomainError):
        family_image([MultiPoly.parse("t1^2", tn)])


def test_census(fermat_pencil):
    c = conic_census(fermat_pencil, 100)
    assert c["certified_complete"]
    assert c["count"] >= 1
    # below the minimum family height nothing counts
    mins = min(s["H"] for s in c["samples"])
    if mins > 1:
        c0 = conic_census(fermat_pencil, mins - 1)
        assert all(s["H"] >= mins for s in c0["samples"])
    # monotone in B
    c2 = conic_census(fermat_pencil, 200)
    assert c2["count"] >= c["count"]


def test_census_cutoff_certificate(fermat_pencil):
    cut = census_cutoff_constant(fermat_pencil)
    assert cut is not None
    c = cut[0]
    assert c > 0
    # the cutoff really bounds heights from below on a sample
    d = fermat_pencil.family_degree
    rng = random.Random(8)
    for _ in range(60):
        t1, t2 = rng.randint(-25, 25), rng.randint(-25, 25)
        if (t1, t2) == (0, 0):
            continue
        g = gcd(abs(t1), abs(t2))
        t1, t2 = t1 // g, t2 // g
        H = specialized_height(fermat_pencil, t1, t2)
        assert Fraction(H) >= c * max(abs(t1), abs(t2)) ** d


def test_height_pairing(fermat_pencil):
    rep = height_pairing_check(fermat_pencil, n_samples=80, seed=1)
    assert rep["samples"] == 80
    # the fitted height exponent matches the measured family degree
    assert abs(rep["fitted_height_exponent"] - fermat_pencil.family_degree) < 0.2
    # and the 2h(t)-residual slope therefore sits near degree - 2
    assert abs(rep["slope"] - (fermat_pencil.family_degree - 2)) < 0.2


def _plane_through(x, seed):
    c = [Fraction(v) for v in seed]
    dot = sum(ci * xi for ci, xi in zip(c, x))
    k = next(i for i, v in enumerate(x) if v)
    c[k] -= Fraction(dot, x[k])
    return MultiPoly(T4, {tuple(1 if i == j else 0 for i in range(4)): c[j]
                          for j in range(4) if c[j]})


def test_family_matches_incidence_geometry(fermat_surface, fermat_line,
                                           fermat_pencil):
    """Independent consistency route: specializing the family at the line
    coordinates of any line through a surface point x (off the base line)
    gives a binary form in the pencil parameters that must vanish at the
    parameter of the unique pencil member through x."""
    from cubiconics.cayley import LineP3, PLUCKER
    from cubiconics.multipoly import restrict
    fam = fermat_pencil.psi_family.poly
    for x in ((3, 4, 5, -6), (9, -12, 10, -1), (4, 5, 3, -6)):
        assert sum(v ** 3 for v in x) == 0
        M = LineP3.make(_plane_through(x, (1, 2, 0, 0)),
                        _plane_through(x, (0, 1, 3, 1)))
        subx = {n: Fraction(v) for n, v in zip(T4, x)}
        l1x = fermat_line.line.u.substitute(subx).coefficient((0,) * 4)
        l2x = fermat_line.line.v.substitute(subx).coefficient((0,) * 4)
        assert (l1x, l2x) != (0, 0)
        bin_t = restrict(fam.substitute(
            {n: Fraction(v) for n, v in zip(PLUCKER, M.plucker)}), TPAR)
        assert bin_t.total_degree() == fermat_pencil.family_degree
        assert bin_t.substitute({"t1": l2x, "t2": -l1x}).is_zero()


def test_bad_reduction_census_on_pencil_member(fermat_pencil):
    # the census also consumes the degree-2 forms in the six line coordinates
    from cubiconics.hilbert_samuel import bad_reduction_census
    psi = fermat_pencil.specialize(1, 2)
    c = bad_reduction_census(psi.poly)
    assert c.complete and c.threshold == 432
    assert all(p > 432 for p, _ in c.bad_primes)


def test_pencil_on_corpus_member(corpus_forms):
    f = corpus_forms[3]
    surf = CubicSurface.make(f)
    lines = find_lines(surf, 2)
    assert lines
    pencil = conic_family(surf, lines[0])
    live = [q for q in pencil.b_ij.values() if not q.is_zero()]
    assert gcd_binary_forms(live, TPAR).total_degree() == 0
