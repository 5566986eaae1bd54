"""Moving between polynomials over Q(t, ...) and polynomials over Q."""

from .fields import QQField
from .poly import MultiPoly


def lift_to_polynomial_ring(polys):
    """Clear denominators and treat the field generators as variables.

    Each polynomial over ``Q(t, ...)`` in variables ``V`` is scaled by the
    lcm of its coefficient denominators and returned over Q in ``V + gens``.
    Scaling by a unit of the function field does not change gcds or
    ideals, which is all the callers need.
    """
    out = []
    for p in polys:
        field = p.field
        names = field.gen_names()
        vars = p.vars + tuple(names)
        den = None
        for c in p.terms.values():
            den = c.denom if den is None else den.lcm(c.denom)
        t = {}
        for e, c in p.terms.items():
            scaled = c * field._K(den)
            num = scaled.numer
            d = scaled.denom
            inv = 1 / d.LC
            for ex, q in num.terms():
                t[e + tuple(ex)] = QQField(q * inv)
        out.append(MultiPoly(QQField, vars, t))
    return out
