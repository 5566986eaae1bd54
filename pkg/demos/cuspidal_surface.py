"""Walk through the surface Z^3 = XY and its two Rees valuations.

Run with ``python3 demos/cuspidal_surface.py``.
"""

from reesval.hypersurface import (dicriticals, family_build, ideal_membership, qdt_reduce,
                                  reduction_report, tangent_cone_reduced, v_value,
                                  verify_normality)

fam = family_build(2, 3, ["X", "Y"])
print("surface:", fam.equation(), f"(m={fam.m}, h={fam.h}, t={fam.t})")

# In the chart X = z x', Y = z y' the equation becomes z = x'y', so every
# element of the surface ring turns into a polynomial in x', y'.
for y in ("X", "z", "X + Y"):
    print(f"  {y:>6} in the chart: {[str(d) for d in qdt_reduce(fam, y)]}")

print("\none valuation per line in the tangent cone:")
for V in dicriticals(fam):
    row = {y: V(y) for y in ("X", "Y", "z", "X + Y", "X*Y")}
    print(f"  {V}: {row}")

print("\nmembership in powers of the maximal ideal:")
for y, p in (("z^2", 2), ("X", 2), ("X*Y", 3)):
    print(f"  {y} in M^{p}: {ideal_membership(fam, y, p)}")

print("\nelements with all values >= p are exactly M^p (checked up to degree 8):")
rep = verify_normality(fam, 3, 8)
for case in rep.values["cases"]:
    print(f"  p={case['p']}: subspace of dimension {case['dimension']}, {case['status']}")

print("\nX + Y together with z generates a reduction:")
for p in (1, 2, 3):
    r = reduction_report(fam, ["X + Y"], p)
    print(f"  p={p}: {r.status}, minimum values {r.values['min_values']}, "
          f"Nakayama exponent {r.values['nakayama_n']}")
print("tangent cone reduced:", tangent_cone_reduced(fam))
print("value of X under V_1 and V_2:", v_value(fam, 1, "X"), v_value(fam, 2, "X"))
