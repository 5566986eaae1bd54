"""Chains of infinitely near points, their values, curvettes and contact numbers.

Run with ``python3 demos/plane_valuations.py``.
"""

from reesval.contact import contact_number
from reesval.exactfield import QQField, field_from_config, parse_poly
from reesval.plane import PlaneValuation, curvette, order_valuation

def poly(text, field=QQField):
    return parse_poly(text, field, ("X", "Y"))

ord_ = order_valuation()
cusp = PlaneValuation.from_steps(["Free(0)", "Free(0)", "inf"], name="cusp")
print("cusp chain:", cusp)
for f in ("X", "Y", "Y^2 - X^3", "Y^2 - X^3 + X^4"):
    p = poly(f)
    print(f"  v({f}) = {cusp.value(p)}, point multiplicities {cusp.point_multiplicities(p)}")

c = curvette(cusp)
print("\na curvette of the cusp:", c.equation, "with c* =", c.c_star)
print("  its value is the self contact:", cusp.value(c.equation))

print("\ncontact numbers:")
for V, W in ((ord_, ord_), (ord_, cusp), (cusp, ord_), (cusp, cusp)):
    print(f"  c({V.name}, {W.name}) = {contact_number(V, W)}"
          f"  (curvette method: {contact_number(V, W, 'curvette')})")

# A point defined over Q(sqrt 2) and its conjugate are counted together.
K = field_from_config({"tower": [{"name": "alpha", "minpoly": "alpha^2 - 2"}]})
V = PlaneValuation.from_steps(["Free(0)", "Free(alpha)"], K, name="V_alpha")
W = PlaneValuation.from_steps(["Free(0)", "Free(1)"], K, name="W_1")
print(f"\n{V} has residue degree {V.chi}")
print(f"  chi(V) c(V, W) = {V.chi * contact_number(V, W)}"
      f" = chi(W) c(W, V) = {W.chi * contact_number(W, V)}")
