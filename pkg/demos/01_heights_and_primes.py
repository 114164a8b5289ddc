#!/usr/bin/env python3
"""Heights over Q and the prime-distribution functions.

Everything here is exact: heights are rationals computed place by place, and
the product formula is checked by honest factorization.
"""
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cubiconics import (MultiPoly, affine_height, bertrand_prime, mertens_check,
                        point_height, poly_height, prime_sum_over_divisors,
                        product_formula_check, theta_psi_phi)

T = ("T0", "T1", "T2", "T3")

print("== projective heights ==")
for coords in ([1, 0], [2, 3], [4, 6], [9, -12, 30]):
    hv = point_height(coords)
    print(f"  H{coords} = {hv.H}   (h = {hv.h:.4f})")

print("\n== polynomial heights (the finite places collapse the content) ==")
for s in ("2*T0^2 + 4*T1^2", "3*T0^2 + 5*T1^2", "T0"):
    f = MultiPoly.parse(s, T)
    print(f"  H({s}) = {poly_height(f).H}")

print("\n== affine height keeps the scale ==")
print("  projective H[4:6] =", point_height([4, 6]).H,
      " vs affine H(4,6) =", affine_height((4, 6)).H)

print("\n== product formula, exactly ==")
for x in (6, Fraction(-5, 7), Fraction(2 ** 20, 3 ** 13)):
    print(f"  prod_v |{x}|_v = 1 :", product_formula_check(x))

print("\n== prime sums ==")
for x in (10, 10 ** 3, 10 ** 5):
    th, ps, ph = theta_psi_phi(x)
    print(f"  x = {x:>6}: theta = {th:10.3f}  psi = {ps:7.4f}  phi = {ph:6.4f}")
rep = mertens_check(10 ** 5, 50)
print(f"  sup |psi(x) - log x| on [2, 1e5] = {rep['sup_abs_dev']:.4f}"
      f"  (attained near x = {rep['argmax_x']:.0f})")

print("\n== divisor-weighted sums and the Bertrand window ==")
for a in (2, 12, 720, 510510):
    r = prime_sum_over_divisors(a)
    print(f"  a = {a:>6}: sum = {r.value:.4f}  <= log log|a| + 2 = {r.bound:.4f}"
          f"  [{r.within_bound}]")
for R in (10, 100, 10 ** 4):
    print(f"  largest prime in (R/2, R] for R = {R}: {bertrand_prime(R)}")
