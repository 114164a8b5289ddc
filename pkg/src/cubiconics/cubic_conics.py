"""Cubic surfaces, rational lines, and the pencil of residual conics.

A plane through a rational line on a cubic surface cuts the surface in that
line plus a residual conic; as the plane varies over the pencil the conic
Cayley forms assemble into a family whose 21 coefficients are binary forms
in the pencil parameters.  This module computes that family exactly, checks
the structural facts it must satisfy (coefficient degree exactly 2, trivial
family gcd, leading-part rank 2 or 3, image shape), and counts family
members of bounded height with a certified cutoff.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .cayley import (PLUCKER, T4, TPAR, LineP3, PluckerForm, UV,
                     cycle_resultant_biform, incidence_biform,
                     rewrite_biform_to_plucker)
from .errors import (BudgetError, DomainError, PropertyViolationError)
from .exactarith import ff_factor_linear
from .multipoly import (MultiPoly, coefficients_in, embed, frac_rank,
                        frac_solve, gcd_binary_forms, restrict,
                        sylvester_resultant)

DEFAULT_LINE_BUDGET = 2_000_000
SMOOTHNESS_PRIMES = (2, 3, 5, 7, 11)


# --- surfaces and lines -----------------------------------------------------------


@dataclass
class CubicSurface:
    f: MultiPoly
    classification: dict | None = None

    @classmethod
    def make(cls, f: MultiPoly) -> "CubicSurface":
        f = restrict(f, T4)
        if f.is_zero() or not f.is_homogeneous() or f.total_degree() != 3:
            raise DomainError("need a nonzero homogeneous cubic in T0..T3")
        _, prim = f.rational_content()
        return cls(prim)


@dataclass(frozen=True)
class RationalLine:
    line: LineP3
    cofactor_u: MultiPoly  # f == cofactor_u * u + cofactor_v * v, exactly
    cofactor_v: MultiPoly


def cofactor_pair(f: MultiPoly, l1: MultiPoly, l2: MultiPoly):
    """Quadratic cofactors (A, B) with f = A*l1 + B*l2; DomainError when f is
    not in the ideal."""
    piv = _pivot_substitution(l1)
    r1 = f.substitute(piv)
    l2bar = l2.substitute(piv)
    if l2bar.is_zero():
        raise DomainError("plane forms are proportional")
    B = r1.exact_divide(l2bar) if not r1.is_zero() else MultiPoly.zero(f.names)
    A = (f - B * l2).exact_divide(l1)
    assert A * l1 + B * l2 == f
    return A, B


def _pivot_substitution(l: MultiPoly):
    """{pivot var -> solved expression} killing the linear form l."""
    coeffs = {}
    for e, c in l.terms.items():
        coeffs[e.index(1)] = c
    piv = min(coeffs)
    expr = MultiPoly.zero(l.names)
    for i, c in coeffs.items():
        if i != piv:
            expr = expr - (c / coeffs[piv]) * MultiPoly.variable(l.names[i], l.names)
    return {l.names[piv]: expr}


def rationals_of_height(bound: int):
    """All rationals a/b with max(|a|, b) <= bound, gcd(a, b) = 1."""
    out = [Fraction(0)]
    for b in range(1, bound + 1):
        for a in range(1, bound + 1):
            if gcd(a, b) == 1:
                out.append(Fraction(a, b))
                out.append(Fraction(-a, b))
    return out


def _rref_line_candidates(height_bound: int, budget: int):
    """Row-reduced 2x4 hyperplane pairs with entries of height <= bound."""
    vals = rationals_of_height(height_bound)
    total = 0
    for i, j in itertools.combinations(range(4), 2):
        free1 = [c for c in range(4) if c > i and c != j]
        free2 = [c for c in range(4) if c > j]
        combos = len(vals) ** (len(free1) + len(free2))
        total += combos
        if total > budget:
            raise BudgetError(f"line search would try > {budget} candidates")
    for i, j in itertools.combinations(range(4), 2):
        free1 = [c for c in range(4) if c > i and c != j]
        free2 = [c for c in range(4) if c > j]
        for a in itertools.product(vals, repeat=len(free1)):
            row1 = [Fraction(0)] * 4
            row1[i] = Fraction(1)
            for c, x in zip(free1, a):
                row1[c] = x
            for b in itertools.product(vals, repeat=len(free2)):
                row2 = [Fraction(0)] * 4
                row2[j] = Fraction(1)
                for c, x in zip(free2, b):
                    row2[c] = x
                yield row1, row2


def _form_from_row(row):
    return MultiPoly(T4, {tuple(1 if k == m else 0 for k in range(4)): c
                          for m, c in enumerate(row) if c != 0})


def line_in_forms(row1, row2, forms) -> bool:
    """Exact ideal membership of every form in (l1, l2), by substituting the
    solved pivot variables."""
    piv1 = next(k for k, c in enumerate(row1) if c != 0)
    piv2 = next(k for k, c in enumerate(row2) if c != 0)
    sub = {}
    for piv, row in ((piv1, row1), (piv2, row2)):
        expr = MultiPoly.zero(T4)
        for c in range(4):
            if c != piv and row[c] != 0:
                expr = expr - (row[c] / row[piv]) * MultiPoly.variable(T4[c], T4)
        sub[T4[piv]] = expr
    # substitute sequentially (rows are in RREF so pivots do not collide)
    for f in forms:
        g = f.substitute({T4[piv1]: sub[T4[piv1]]})
        g = g.substitute({T4[piv2]: sub[T4[piv2]]})
        if not g.is_zero():
            return False
    return True


def find_lines(surface: CubicSurface, height_bound: int = 1,
               budget: int = DEFAULT_LINE_BUDGET):
    """All lines on the surface whose row-reduced hyperplane pair has entries
    of height <= height_bound, with exact ideal-membership certificates."""
    f = surface.f
    seen = {}
    for row1, row2 in _rref_line_candidates(height_bound, budget):
        if not line_in_forms(row1, row2, [f]):
            continue
        l1, l2 = _form_from_row(row1), _form_from_row(row2)
        line = LineP3.make(l1, l2)
        if line.plucker in seen:
            continue
        A, B = cofactor_pair(f, line.u, line.v)
        seen[line.plucker] = RationalLine(line, A, B)
    return list(seen.values())


# --- classification -----------------------------------------------------------------


def _proj_reps(p: int, nvars: int):
    reps = []
    for lead in range(nvars):
        tails = itertools.product(range(p), repeat=nvars - lead - 1)
        for t in tails:
            reps.append((0,) * lead + (1,) + t)
    return reps


def smooth_mod_p(f: MultiPoly, p: int) -> bool:
    """Exhaustive Jacobian scan over P^3(F_p): no common projective zero of f
    and its partials means the reduction is nonsingular."""
    _, prim = f.rational_content()
    polys = [prim] + [prim.partial(n) for n in T4]
    tables = []
    for g in polys:
        tab = {e: int(c) % p for e, c in g.terms.items() if int(c) % p}
        tables.append(tab)
    if not tables[0]:
        return False  # degenerate reduction
    for pt in _proj_reps(p, 4):
        ok = False
        for tab in tables:
            v = 0
            for e, c in tab.items():
                term = c
                for x, ei in zip(pt, e):
                    if ei:
                        if x == 0:
                            term = 0
                            break
                        term = term * pow(x, ei, p) % p
                v = (v + term) % p
            if v:
                ok = True
                break
        if not ok:
            return False
    return True


def classify_cubic(f: MultiPoly, primes=SMOOTHNESS_PRIMES,
                   singular_line_height: int = 1) -> dict:
    """Structure report for a cubic surface: essential variables (cones),
    the affine cylinder test, smoothness evidence mod small primes, and a
    search for lines inside the singular locus.

    Flags carry confidence labels: smoothness mod a good prime certifies
    non-ruledness; a singular line is evidence of a ruled (skew) surface.
    """
    from .multipoly import essential_variable_count

    surface = CubicSurface.make(f)
    f = surface.f
    k, basis = essential_variable_count(f)
    is_cone = k <= 3
    # affine question: drop T0 at 1 and test expressibility in two forms
    aff = restrict(f.substitute({"T0": Fraction(1)}), ("T1", "T2", "T3"))
    if aff.is_zero() or aff.total_degree() < 1:
        k_aff = 0
    else:
        k_aff, _ = essential_variable_count(aff)
    cylinder_over_curve = k_aff <= 2

    evidence = []
    certified_smooth = None
    for p in primes:
        ok = smooth_mod_p(f, p)
        evidence.append((p, ok))
        if ok:
            certified_smooth = p
            break

    singular_lines = []
    if certified_smooth is None:
        partials = [f.partial(n) for n in T4]
        for row1, row2 in _rref_line_candidates(singular_line_height, DEFAULT_LINE_BUDGET):
            if line_in_forms(row1, row2, partials + [f]):
                singular_lines.append((tuple(row1), tuple(row2)))

    if certified_smooth is not None:
        non_ruled = "certified"
    elif singular_lines:
        non_ruled = "ruled-skew-evidence"
    elif is_cone:
        non_ruled = "cone"
    else:
        non_ruled = "evidence-only"

    record = {
        "essential_vars": k,
        "essential_basis": [str(b) for b in basis],
        "is_cone": is_cone,
        "ncc": k >= 3,
        "affine_essential_vars": k_aff,
        "cylinder_over_curve": cylinder_over_curve,
        "smooth_mod_p": evidence,
        "smooth_certified_at": certified_smooth,
        "singular_lines": singular_lines,
        "non_ruled": non_ruled,
    }
    surface.classification = record
    return record


def absolutely_irreducible_cubic_mod_p(f: MultiPoly, p: int,
                                       budget: int = 4_000_000) -> str:
    """One-sided absolute-irreducibility certificate for a cubic form.

    A cubic is geometrically reducible over F_p-bar exactly when it has a
    linear factor over the cubic extension or below, so exhaustive linear
    factor search decides the reduction; a certified-irreducible reduction
    of full degree lifts to absolute irreducibility in characteristic zero.
    The representative is reduced as given (denominators cleared, content
    kept), so a content divisible by p degenerates to "inconclusive".
    """
    den = 1
    for c in f.terms.values():
        den = den * c.denominator // gcd(den, c.denominator)
    if den % p == 0:
        return "inconclusive"
    work = f * den
    red_deg = -1
    for e, c in work.terms.items():
        if int(c) % p:
            red_deg = max(red_deg, sum(e))
    if red_deg != 3:
        return "inconclusive"
    try:
        for e in (1, 2, 3):
            factors, _ = ff_factor_linear(work, p, e, budget=budget)
            if factors:
                return "reducible"
    except BudgetError:
        return "inconclusive"
    return "certified-irreducible"


# --- residual conics and the pencil ---------------------------------------------------


def residual_conic(surface: CubicSurface, rline: RationalLine, t=None):
    """Plane of the pencil and the residual-conic lift at parameter t.

    ``t`` is a rational pair, or None for the symbolic family (coefficients
    in Q[t1, t2]).  The defining identity t1*f = A*ell_t + Q_t*l2 (and its
    t1 = 0 mirror) is asserted exactly.
    """
    f, L = surface.f, rline.line
    A, B = rline.cofactor_u, rline.cofactor_v
    names = T4 + TPAR
    fx, Ax, Bx = embed(f, names), embed(A, names), embed(B, names)
    l1x, l2x = embed(L.u, names), embed(L.v, names)
    t1 = MultiPoly.variable("t1", names)
    t2 = MultiPoly.variable("t2", names)
    ell_t = t1 * l1x + t2 * l2x
    Q_t = t1 * Bx - t2 * Ax
    # exact cycle identities
    assert t1 * fx == Ax * ell_t + Q_t * l2x
    assert t2 * fx == Bx * ell_t - Q_t * l1x
    if t is None:
        _, Q_t = Q_t.content_primitive()
        return ell_t, Q_t
    tv1, tv2 = Fraction(t[0]), Fraction(t[1])
    if tv1 == 0 and tv2 == 0:
        raise DomainError("parameter (0, 0) is not a pencil member")
    sub = {"t1": tv1, "t2": tv2}
    ell_num = restrict(ell_t.substitute(sub), T4)
    Q_num = restrict(Q_t.substitute(sub), T4)
    if Q_num.is_zero():
        raise DomainError("residual conic degenerated to zero at this t")
    _, Q_num = Q_num.rational_content()
    _, ell_num = ell_num.rational_content()
    return ell_num, Q_num


@dataclass
class ConicPencil:
    surface: CubicSurface
    rline: RationalLine
    ell_t: MultiPoly            # symbolic plane, in T and t variables
    Q_t: MultiPoly              # symbolic residual conic lift
    b_content: MultiPoly        # stripped family content b(t1, t2)
    psi_family: PluckerForm     # canonical conic Cayley family, p and t vars
    b_ij: dict                  # degree-2 p-monomial -> binary form in t
    a_family: list              # a1..a6 in the leading-part monomial order
    family_degree: int          # common parameter degree of the coefficients

    def specialize(self, t1, t2) -> PluckerForm:
        return self.psi_family.specialize_t(t1, t2)


A_MONOMIAL_ORDER = (
    ("p01", "p01"), ("p02", "p02"), ("p03", "p03"),
    ("p01", "p02"), ("p01", "p03"), ("p02", "p03"),
)


def _pmono_exponent(pair):
    e = [0] * 6
    for name in pair:
        e[PLUCKER.index(name)] += 1
    return tuple(e)


def conic_family(surface: CubicSurface, rline: RationalLine) -> ConicPencil:
    """Symbolic family of residual-conic Cayley forms along the pencil.

    Computes the Cayley form of the full plane section, strips the fixed
    line's incidence form and the polynomial content in the parameters, and
    descends to canonical line coordinates.

    The enforced invariants are the ones every valid instance satisfies:
    all surviving coefficients are homogeneous of one common parameter
    degree, their gcd is 1, and content degree + family degree exhausts the
    parameter-degree budget 3 of the section resultant.  The common degree
    itself is measured and recorded (see ``family_degree``): the universal
    conic over the pencil sweeps the cubic surface birationally, so a
    generic line meets deg X = 3 members and the honest degree is 3.
    """
    f, L = surface.f, rline.line
    ell_t = embed(MultiPoly.variable("t1", TPAR), T4 + TPAR) * embed(L.u, T4 + TPAR) \
        + embed(MultiPoly.variable("t2", TPAR), T4 + TPAR) * embed(L.v, T4 + TPAR)
    cycle = cycle_resultant_biform(embed(f, T4 + TPAR), ell_t, tvars=TPAR)
    uvt = UV + TPAR
    line_biform = embed(incidence_biform(L), uvt)
    conic_b = cycle.exact_divide(line_biform)
    # polynomial content in the pencil parameters
    coeffs = list(coefficients_in(conic_b, TPAR).values())
    b_content = gcd_binary_forms(coeffs, TPAR)
    conic_b = conic_b.exact_divide(embed(b_content, uvt))
    psi = rewrite_biform_to_plucker(conic_b, certify=False)
    if psi.degree != 2:
        raise PropertyViolationError(
            f"conic Cayley family has Pluecker degree {psi.degree}, expected 2")

    groups = coefficients_in(psi.poly, TPAR)
    b_ij = {}
    for e in _all_degree2_pmonos():
        b_ij[e] = groups.get(e, MultiPoly.zero(TPAR))
    live = [q for q in b_ij.values() if not q.is_zero()]
    degs = {q.total_degree() for q in live}
    for q in live:
        if not q.is_homogeneous():
            raise PropertyViolationError(f"family coefficient {q} is inhomogeneous")
    if len(degs) != 1:
        raise PropertyViolationError(f"family coefficients of mixed degrees {degs}")
    family_degree = degs.pop()
    if b_content.total_degree() + family_degree != 3:
        raise PropertyViolationError(
            "content and family degrees do not exhaust the section's parameter budget")
    if len(live) > 1:
        g = gcd_binary_forms(live, TPAR)
        if g.total_degree() != 0:
            raise PropertyViolationError(f"family coefficients share the factor {g}")

    ell_sym, Q_sym = residual_conic(surface, rline, None)
    a_family = [b_ij[_pmono_exponent(pair)] for pair in A_MONOMIAL_ORDER]
    return ConicPencil(surface, rline, ell_sym, Q_sym, b_content, psi, b_ij,
                       a_family, family_degree)


def _all_degree2_pmonos():
    out = []
    for i in range(6):
        for j in range(i, 6):
            e = [0] * 6
            e[i] += 1
            e[j] += 1
            out.append(tuple(e))
    return out


# --- leading family and image shape ---------------------------------------------------


def _binary_coeff_row(q: MultiPoly, d: int):
    """Coefficients (c_{d,0}, ..., c_{0,d}) of a degree-d binary form."""
    row = [Fraction(0)] * (d + 1)
    for e, c in q.terms.items():
        i1 = e[q.names.index("t1")]
        row[d - i1] = c
    return row


def _family_rows(family):
    live = [q for q in family if q and not q.is_zero()]
    if not live:
        return [], 0
    d = max(q.total_degree() for q in live)
    return [_binary_coeff_row(q, d) for q in live], d


def family_rank(family) -> int:
    rows, d = _family_rows(family)
    if not rows:
        return 0
    return frac_rank(rows, d + 1)


def leading_family(pencil: ConicPencil, irreducibility_certificate: str | None = None) -> dict:
    """The six leading coefficients (top part in the index-0 grading) with
    their rank analysis and the no-common-zero certificate.

    With the absolute-irreducibility hypothesis on the top affine part
    certified, a rank below 2 is impossible (it would force a common factor,
    hence a common zero) and raises PropertyViolationError.
    """
    a = pencil.a_family
    live = [q for q in a if not q.is_zero()]
    if not live:
        raise PropertyViolationError("leading family vanishes identically")
    rank = family_rank(a)
    certified = irreducibility_certificate == "certified-irreducible"
    if rank <= 1 and certified:
        raise PropertyViolationError(f"leading-family rank {rank} is below 2")
    coprime_pair = None
    res_val = None
    for q1, q2 in itertools.combinations(live, 2):
        r = sylvester_resultant(restrict(q1, TPAR), restrict(q2, TPAR))
        if r != 0:
            coprime_pair, res_val = (str(q1), str(q2)), r
            break
    if coprime_pair is None:
        g = gcd_binary_forms(live, TPAR)
        if g.total_degree() != 0:
            if certified:
                raise PropertyViolationError("leading family has a common factor")
            return {"a_family": [str(q) for q in a], "rank": rank,
                    "no_common_zero": False, "certificate": f"common factor {g}",
                    "hypothesis_degree3_part": irreducibility_certificate}
        no_common_zero_via = "family gcd = 1"
    else:
        no_common_zero_via = f"Res{coprime_pair} = {res_val}"
    return {
        "a_family": [str(q) for q in a],
        "rank": rank,
        "rank_in_stated_window": rank in (2, 3),
        "no_common_zero": True,
        "certificate": no_common_zero_via,
        "hypothesis_degree3_part": irreducibility_certificate,
    }


def family_image(family) -> dict:
    """Shape of the coefficient map P^1 -> P^k induced by a gcd-1 family of
    binary forms of one degree d.

    The image is a rational curve with deg(image) * deg(cover) = d.  The
    covering degree is measured by solving a generic fiber exactly; full
    rank means the map is a linear embedding of the degree-d parameter curve.
    """
    live = [restrict(q, TPAR) for q in family if q and not q.is_zero()]
    if not live:
        raise DomainError("empty family")
    rows, d = _family_rows(live)
    rank = frac_rank(rows, d + 1)
    if rank < 2:
        raise DomainError(f"family rank {rank} below 2; no curve image")
    cover = _covering_degree(live, d)
    image_degree = d // cover
    return {
        "rank": rank,
        "family_degree": d,
        "image_degree": image_degree,
        "cover_degree": cover,
        "double_cover": cover == 2,
        "rank_in_stated_window": rank in (2, 3),
        "certificate": (f"generic fiber of the coefficient map has {cover} "
                        f"point(s); image degree {image_degree} = {d}/{cover}"),
    }


def _covering_degree(live, d: int) -> int:
    """Generic fiber size of the full coefficient map t -> [q_1(t): ...].

    The fiber over the image of t* is cut by the forms
    q_0(t*) q_k(t) - q_k(t*) q_0(t) for a base member with q_0(t*) != 0;
    its point count is the distinct-root count of their gcd.  Sampling a few
    generic t* and taking the minimum measures the covering degree.
    """
    best = None
    for m in range(1, 40):
        tstar = (Fraction(1), Fraction(m))
        vals = [_eval_binary(q, tstar) for q in live]
        base = next((i for i, v in enumerate(vals) if v != 0), None)
        if base is None:
            continue
        fibers = []
        for k, q in enumerate(live):
            if k == base:
                continue
            fb = vals[base] * q - vals[k] * live[base]
            if not fb.is_zero():
                fibers.append(fb)
        if not fibers:
            continue
        g = gcd_binary_forms(fibers, TPAR)
        k = _distinct_projective_roots(g) if g.total_degree() > 0 else 0
        if k == 0:
            continue
        best = k if best is None else min(best, k)
        if best == 1:
            break
    return best or 1


def _eval_binary(q: MultiPoly, t):
    val = q.substitute({"t1": t[0], "t2": t[1]})
    return val.coefficient((0,) * len(val.names))


def _distinct_projective_roots(q: MultiPoly) -> int:
    """Number of distinct roots of a binary form in P^1 over the algebraic
    closure: deg(q) - deg(gcd(q, q'))."""
    d = q.total_degree()
    qp = q.partial("t1")
    if qp.is_zero():
        qp = q.partial("t2")
    if qp.is_zero():
        return 0
    g = gcd_binary_forms([q, qp], TPAR)
    return d - g.total_degree()


# --- census of bounded-height members ---------------------------------------------------


def _int_binary_forms(pencil: ConicPencil):
    """Integer coefficient rows (length family_degree + 1) of all 21 family
    coefficients, jointly denominator-cleared."""
    d = pencil.family_degree
    rows = []
    for e in _all_degree2_pmonos():
        q = pencil.b_ij[e]
        row = _binary_coeff_row(q, d) if not q.is_zero() else [Fraction(0)] * (d + 1)
        rows.append(row)
    den = 1
    for row in rows:
        for c in row:
            den = den * c.denominator // gcd(den, c.denominator)
    return [[int(c * den) for c in row] for row in rows], d


def _eval_row(row, t1: int, t2: int, d: int) -> int:
    tot = 0
    for i, c in enumerate(row):
        if c:
            tot += c * t1 ** (d - i) * t2 ** i
    return tot


def census_cutoff_constant(pencil: ConicPencil):
    """Exact c > 0 with H(psi^t) >= c * H(t)^d for primitive t (d the family
    degree), from the integer Bezout identities
        A(t) q_i + B(t) q_j = R * t1^(2d-1)  and  = R * t2^(2d-1)
    of a coprime coefficient pair; None when no coprime pair exists.  The
    identities also bound the specialization content by |R|, which is what
    makes the census region certified."""
    rows, d = _int_binary_forms(pencil)
    live = [r for r in rows if any(r)]
    best = None
    for r1, r2 in itertools.combinations(live, 2):
        c = _bezout_cutoff(r1, r2, d)
        if c is not None and (best is None or c > best[0]):
            best = (c, (r1, r2))
    return best


def _bezout_cutoff(r1, r2, d: int):
    """c with max(|q1(t)|, |q2(t)|)/content >= c * H(t)^d at primitive t,
    from the two Sylvester Bezout identities rescaled to one common
    multiplier D (which then also bounds the specialization content)."""
    syl = _sylvester_rows(r1, r2, d)
    n = 2 * d
    cols = [[Fraction(1 if i == 0 else 0) for i in range(n)],
            [Fraction(1 if i == n - 1 else 0) for i in range(n)]]
    try:
        sols = frac_solve([list(map(Fraction, row)) for row in zip(*syl)], cols, n)
    except DomainError:
        return None  # resultant vanished: pair not coprime
    D = 1
    for sol in sols:
        for x in sol:
            D = D * x.denominator // gcd(D, x.denominator)
    worst = 0
    for sol in sols:
        worst = max(worst, sum(abs(int(x * D)) for x in sol))
    if worst == 0:
        return None
    return Fraction(1, worst)


def _sylvester_rows(r1, r2, d: int):
    """Sylvester matrix rows of two degree-d binary forms (size 2d)."""
    n = 2 * d
    rows = []
    for k in range(d):
        rows.append([0] * k + list(r1) + [0] * (d - 1 - k))
    for k in range(d):
        rows.append([0] * k + list(r2) + [0] * (d - 1 - k))
    return rows


def specialized_height(pencil: ConicPencil, t1: int, t2: int) -> int:
    """Naive height of the family member at primitive integer (t1, t2)."""
    rows, d = _int_binary_forms(pencil)
    vals = [_eval_row(r, t1, t2, d) for r in rows]
    g = 0
    for v in vals:
        g = gcd(g, abs(v))
    if g == 0:
        raise PropertyViolationError(f"family vanishes at t = ({t1}, {t2})")
    return max(abs(v) for v in vals) // g


def _primitive_pairs(m_max: int):
    yield (0, 1)
    for t1 in range(1, m_max + 1):
        for t2 in range(-m_max, m_max + 1):
            if gcd(t1, abs(t2)) == 1:
                yield (t1, t2)


def conic_census(pencil: ConicPencil, B, hard_cap: int = 4000) -> dict:
    """Count pencil parameters [t1:t2] whose family member has height <= B.

    The enumeration region is certified complete via the exact cutoff
    constant; with no coprime coefficient pair available it falls back to a
    hard cap and says so.
    """
    if B < 1:
        raise DomainError("B must be >= 1")
    cut = census_cutoff_constant(pencil)
    d = pencil.family_degree
    if cut is not None:
        c = cut[0]
        m_max = int((B / float(c)) ** (1.0 / d)) + 1
        certified = True
    else:
        m_max = hard_cap
        certified = False
    rows, _unused = _int_binary_forms(pencil)
    count = 0
    samples = []
    for t1, t2 in _primitive_pairs(m_max):
        vals = [_eval_row(r, t1, t2, d) for r in rows]
        g = 0
        for v in vals:
            g = gcd(g, abs(v))
        if g == 0:
            raise PropertyViolationError(f"family vanishes at ({t1}, {t2})")
        H = max(abs(v) for v in vals) // g
        if H <= B:
            count += 1
            if len(samples) < 12:
                samples.append({"t": (t1, t2), "H": H})
    return {"B": float(B), "count": count, "certified_complete": certified,
            "cutoff_m": m_max, "family_degree": d,
            "cutoff_constant": str(cut[0]) if cut else None,
            "samples": samples}


def height_pairing_check(pencil: ConicPencil, n_samples: int = 200,
                         max_height: int = 1000, seed: int = 0) -> dict:
    """Residual h(psi^t) - 2 h(t) over sampled parameters of growing height.

    Reports the max residual and the regression slope of the residual
    against h(t), plus the directly fitted exponent of h(psi^t) in h(t).
    With the measured family degree d the honest pairing is
    h(psi^t) = d * h(t) + O(1), so the slope of the 2h(t)-residual comes out
    near d - 2 (zero exactly when the family degree is 2).
    """
    rng = random.Random(seed)
    pts = {(1, 0), (0, 1), (1, 1)}
    while len(pts) < n_samples:
        m = rng.randint(1, max_height)
        t1 = rng.randint(-m, m)
        t2 = rng.choice((m, -m))
        if rng.random() < 0.5:
            t1, t2 = t2, t1
        if t1 == 0 and t2 == 0:
            continue
        g = gcd(abs(t1), abs(t2))
        t1, t2 = t1 // g, t2 // g
        if t1 < 0 or (t1 == 0 and t2 < 0):
            t1, t2 = -t1, -t2
        pts.add((t1, t2))
    xs, ys, hs = [], [], []
    res_max = 0.0
    for t1, t2 in sorted(pts):
        H = specialized_height(pencil, t1, t2)
        ht = math.log(max(abs(t1), abs(t2)))
        resid = math.log(H) - 2 * ht
        xs.append(ht)
        ys.append(resid)
        hs.append(math.log(H))
        res_max = max(res_max, abs(resid))
    slope, intercept = np.polyfit(np.array(xs), np.array(ys), 1)
    exp_fit = np.polyfit(np.array(xs), np.array(hs), 1)[0] if len(xs) > 1 else 0.0
    return {"samples": len(xs), "max_abs_residual": res_max,
            "slope": float(slope), "intercept": float(intercept),
            "fitted_height_exponent": float(exp_fit),
            "family_degree": pencil.family_degree,
            "seed": seed}
