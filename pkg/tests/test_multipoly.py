import random
from fractions import Fraction

import pytest

from cubiconics.errors import DomainError, NonDivisibleError
from cubiconics.multipoly import (MultiPoly, det_fraction, embed,
                                  essential_variable_count, frac_kernel,
                                  frac_rank, gcd_binary_forms,
                                  macaulay_resultant, sylvester_resultant)

T = ("T0", "T1", "T2", "T3")
B2 = ("T0", "T1")


def rand_poly(rng, names, deg, nterms, cmax=5):
    terms = {}
    for _ in range(nterms):
        e = [0] * len(names)
        for _ in range(deg):
            e[rng.randrange(len(names))] += 1
        c = rng.randint(-cmax, cmax)
        if c:
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return MultiPoly(names, terms)


def test_ring_laws_random():
    rng = random.Random(11)
    for _ in range(25):
        f = rand_poly(rng, T, 2, 4)
        g = rand_poly(rng, T, 3, 4)
        h = rand_poly(rng, T, 1, 3)
        assert (f + g) + h == f + (g + h)
        assert f * (g + h) == f * g + f * h
        assert f * g == g * f
        assert f * MultiPoly.constant(1, T) == f


def test_exact_divide_examples():
    f = MultiPoly.parse("T2^3 + T3^3", T)
    g = MultiPoly.parse("T2 + T3", T)
    q = f.exact_divide(g)
    assert q == MultiPoly.parse("T2^2 - T2*T3 + T3^2", T)
    assert q * g == f
    with pytest.raises(NonDivisibleError) as ei:
        MultiPoly.parse("T0", T).exact_divide(MultiPoly.parse("T1", T))
    assert ei.value.remainder is not None


def test_exact_divide_multiply_back_random():
    rng = random.Random(5)
    for _ in range(20):
        f = rand_poly(rng, T, 2, 4)
        g = rand_poly(rng, T, 2, 3)
        if f.is_zero() or g.is_zero():
            continue
        assert (f * g).exact_divide(g) == f


def test_content_primitive():
    c, p = MultiPoly.parse("6*T0 + 4*T1", T).rational_content()
    assert c == 2 and p == MultiPoly.parse("3*T0 + 2*T1", T)
    c2, p2 = MultiPoly.parse("-T0", T).rational_content()
    assert abs(c2) == 1 and p2 == MultiPoly.parse("T0", T)
    assert c2 * p2 == MultiPoly.parse("-T0", T)  # sign lives in the content
    names = ("p01", "p23", "t1", "t2")
    h = MultiPoly.parse("t1^2*p01 + t1^2*p23", names)
    ct, pt = h.content_primitive(wrt=("t1", "t2"))
    assert pt == MultiPoly.parse("p01 + p23", names)
    assert ct == MultiPoly.parse("t1^2", names)
    with pytest.raises(DomainError):
        MultiPoly.zero(T).rational_content()


def test_homogeneous_component_partition():
    f = MultiPoly.parse("p01 + p23", ("p01", "p02", "p03", "p12", "p13", "p23"))
    sub = [n for n in f.names if "3" in n[1:]]
    assert f.homogeneous_component(sub, 1) == MultiPoly.parse("p23", f.names)
    assert f.homogeneous_component(sub, 5).is_zero()
    rng = random.Random(3)
    g = rand_poly(rng, T, 3, 8)
    parts = g.split_by_degree(("T0", "T1"))
    total = MultiPoly.zero(T)
    for part in parts.values():
        total = total + part
    assert total == g


def test_essential_variable_count():
    k1, basis1 = essential_variable_count(
        MultiPoly.parse("T0^3 + 3*T0^2*T1 + 3*T0*T1^2 + T1^3", T))
    assert k1 == 1 and basis1[0] == MultiPoly.parse("T0 + T1", T)
    assert essential_variable_count(MultiPoly.parse("T0*T1", T))[0] == 2
    assert essential_variable_count(
        MultiPoly.parse("T0^3+T1^3+T2^3+T3^3", T))[0] == 4


def test_essential_variables_invariant_under_unimodular_change():
    rng = random.Random(9)
    f = MultiPoly.parse("T0^3 + T1^3 + T0*T1*T2", T)
    k0, _ = essential_variable_count(f)
    for _ in range(5):
        # random shear (unimodular)
        i, j = rng.sample(range(4), 2)
        c = rng.choice((-2, -1, 1, 2))
        sub = {T[i]: MultiPoly.variable(T[i], T) + c * MultiPoly.variable(T[j], T)}
        f = f.substitute(sub)
        assert essential_variable_count(f)[0] == k0


def test_sylvester_resultant():
    assert sylvester_resultant(MultiPoly.parse("T0^2", B2),
                               MultiPoly.parse("T1^3", B2)) == 1
    assert sylvester_resultant(MultiPoly.parse("T0 - T1", B2),
                               MultiPoly.parse("T0 + T1", B2)) == 2
    f = MultiPoly.parse("T0^2 + T1^2", B2)
    assert sylvester_resultant(f, f) == 0
    with pytest.raises(DomainError):
        sylvester_resultant(MultiPoly.zero(B2), f)


def test_macaulay_normalization_and_zero():
    V3 = ("T0", "T1", "T2")
    assert macaulay_resultant([MultiPoly.variable(n, V3) for n in V3], V3) == 1
    forms = [MultiPoly.variable("T0", V3), MultiPoly.variable("T1", V3),
             MultiPoly.parse("T0 + T1", V3)]
    assert macaulay_resultant(forms, V3) == 0
    # pure powers stay normalized in mixed degrees
    for degs in ((2, 3), (3, 1, 2), (2, 2, 2, 3)):
        names = tuple(f"T{i}" for i in range(len(degs)))
        fs = [MultiPoly(names, {tuple(d if i == j else 0 for i in range(len(degs))): 1})
              for j, d in enumerate(degs)]
        assert macaulay_resultant(fs, names) == 1


def test_macaulay_linear_forms_equal_determinant():
    rng = random.Random(2)
    for _ in range(5):
        rows = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(4)]
        fs = [MultiPoly(T, {tuple(1 if i == k else 0 for i in range(4)): rows[j][k]
                            for k in range(4) if rows[j][k]}) for j in range(4)]
        if any(f.is_zero() for f in fs):
            continue
        det = det_fraction([[Fraction(x) for x in r] for r in rows])
        assert macaulay_resultant(fs, T) == det


def test_macaulay_symbolic_degree_homogeneity():
    # Res(q, l, h1, h2) has degree prod(deltas)/delta_i in slot i's coefficients
    names = T + ("u0", "u1", "u2", "u3", "v0", "v1", "v2", "v3")
    q = embed(MultiPoly.parse("T2^2 - T2*T3 + T3^2", T), names)
    ell = embed(MultiPoly.parse("T0 + T1", T), names)
    h1 = sum((MultiPoly.variable(f"u{i}", names) * MultiPoly.variable(f"T{i}", names)
              for i in range(4)), MultiPoly.zero(names))
    h2 = sum((MultiPoly.variable(f"v{i}", names) * MultiPoly.variable(f"T{i}", names)
              for i in range(4)), MultiPoly.zero(names))
    res = macaulay_resultant([q, ell, h1, h2], T)
    uvars = [f"u{i}" for i in range(4)]
    vvars = [f"v{i}" for i in range(4)]
    assert res.is_homogeneous(uvars) and res.degree_in(uvars) == 2
    assert res.is_homogeneous(vvars) and res.degree_in(vvars) == 2


def test_binary_gcd():
    tn = ("t1", "t2")
    a = MultiPoly.parse("t1^3*t2 + t1^2*t2^2", tn)
    b = MultiPoly.parse("t1^2*t2^2 + t1*t2^3", tn)
    g = gcd_binary_forms([a, b], tn)
    assert g == MultiPoly.parse("t1^2*t2 + t1*t2^2", tn)
    assert gcd_binary_forms([MultiPoly.parse("t1^2", tn),
                             MultiPoly.parse("t2^2", tn)], tn) == \
        MultiPoly.constant(1, tn)


def test_parse_roundtrip():
    rng = random.Random(17)
    for _ in range(20):
        f = rand_poly(rng, T, 3, 6)
        if f.is_zero():
            continue
        assert MultiPoly.parse(str(f), T) == f
    assert MultiPoly.parse("0", T).is_zero()
    assert str(MultiPoly.parse("-2/3*T0^2*T1 + 5", T)) == "-2/3 * T0^2*T1 + 5"


def test_frac_linear_algebra():
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    assert frac_rank(rows, 2) == 1
    ker = frac_kernel(rows, 2)
    assert len(ker) == 1 and rows[0][0] * ker[0][0] + rows[0][1] * ker[0][1] == 0
