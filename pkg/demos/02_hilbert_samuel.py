#!/usr/bin/env python3
"""Hilbert-Samuel combinatorics, reduction censuses, bound evaluators."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cubiconics import (ExternalConstants, MultiPoly, bad_reduction_census,
                        bound_evaluator, bound_exponent, geometric_hs,
                        geometric_hs_window, local_hs, q_lower_bound_check,
                        q_partial_sum, reduction_point_census)

print("== local values and the partial-sum lower bound ==")
print("  local_hs(d=2, mu=1, s) for s = 0..7:",
      [local_hs(2, 1, s) for s in range(8)])
print("  local_hs(d=2, mu=2, s) for s = 0..7:",
      [local_hs(2, 2, s) for s in range(8)])
print("  Q(2,1,m) for m = 1..8:", [q_partial_sum(2, 1, m) for m in range(1, 9)])
rep = q_lower_bound_check(2, 1, 2000)
print(f"  bound check d=2, mu=1, m<=2000: {rep['violations']} violations,"
      f" min slack {rep['min_slack']:.4f} at m = {rep['argmin_m']}")

print("\n== graded ranks and their exact window ==")
for (d, delta, D) in ((1, 2, 2), (2, 3, 3), (2, 3, 12), (3, 5, 40)):
    lo, hi, rg = geometric_hs_window(d, delta, D)
    print(f"  rg(d={d}, delta={delta}, D={D}) = {rg:>7}  window ok: {lo and hi}")

print("\n== point censuses of plane-curve reductions ==")
conic = MultiPoly.parse("T0*T2 - T1^2", ("T0", "T1", "T2"))
for p in (3, 5, 7, 11):
    n, _ = reduction_point_census(conic, p)
    print(f"  smooth conic mod {p:>2}: n = {n} (= p + 1)")
two_lines = MultiPoly.parse("T0*T1", ("T0", "T1", "T2"))
n, pts = reduction_point_census(two_lines, 2)
print("  T0*T1 mod 2: n =", n, " multiplicities:",
      {x["point"]: x["mu"] for x in pts})

print("\n== bad-reduction census of quadratics (threshold 27 * 2^4 = 432) ==")
for s in ("T0*T2 - T1^2", "T0^2 + T1^2 + 433*T2^2"):
    c = bad_reduction_census(MultiPoly.parse(s, ("T0", "T1", "T2")))
    print(f"  {s}: bad primes {c.bad_primes}  b' = {c.b_prime:.6f}"
          f"  (certifying minor {c.certifying_minor})")

print("\n== closed-form bound shapes (external constants default to 0) ==")
k = ExternalConstants()
print("  rational-conics exponent :", bound_exponent("conics-rational"))
print("  integral-conics exponent :", bound_exponent("conics-integral"))
for B in (16, 64, 256):
    v = bound_evaluator("conics-rational", {"B": B}, k)
    print(f"  rational-conics bound at B = {B:>3}: {v:.3e}  (vacuously large)")
