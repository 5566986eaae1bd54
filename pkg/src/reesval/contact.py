"""Contact numbers, local intersection multiplicities and the product formulas.

The contact number of two chains over Q sums, over the conjugates of the
second chain, the multiplicity products along the points the chains share.
For chains defined over Q this is the classical Noether formula.  Summing
over conjugates keeps ``chi(V) c(V, W) = chi(W) c(W, V)`` true when the
chains need an extension field.
"""

import random

from .errors import (DegenerateConstant, FieldMismatch, IncompatibleFields, NotPrimary,
                     NotYGeneral, UnsupportedConjugation)
from .exactfield.algebra import gcd, norm_to_rationals, resultant
from .exactfield.fields import QQField, common_field, function_field
from .exactfield.lift import lift_to_polynomial_ring
from .exactfield.parse import parse_poly
from .exactfield.poly import INF, MultiPoly
from .local import colength, common_factor_at_origin
from .plane import AtInfinity, PlaneValuation, curvette, extension_constants
from .report import VerificationReport, status_of


def shared_prefix(V, W):
    k = 0
    for a, b in zip(V.steps, W.steps):
        if a is AtInfinity or b is AtInfinity:
            if a is not b:
                break
        elif a.c != b.c:
            break
        k += 1
    return k


def _common(V, W):
    try:
        F = common_field(V.field, W.field)
    except FieldMismatch as e:
        raise IncompatibleFields(str(e)) from None
    return V.with_field(F), W.with_field(F), F


def noether_contact(V, W):
    """Sum of m_i(V) m_i(W) over the points the two chains share."""
    V, W, _ = _common(V, W)
    k = shared_prefix(V, W)
    return sum(V.mult[i] * W.mult[i] for i in range(k))


def conjugates(W, field=None):
    """The distinct conjugates of W (W itself first)."""
    if W.chi == 1:
        return [W]
    F = field or W.field
    W = W.with_field(F)
    out = []
    for sigma in F.automorphisms():
        C = W.conjugate(sigma)
        if not any(C.seq.prefix_equal(D.seq, C.n) and C.n == D.n for D in out):
            out.append(C)
    if len(out) != W.chi:
        raise UnsupportedConjugation(f"found {len(out)} conjugates of a chain with chi={W.chi}")
    return out


def contact_number(V, W, method="noether"):
    """Contact number c(R, V, W) = V(simple complete ideal of W).

    ``method`` is ``"noether"`` (multiplicity products, summed over the
    conjugates of W) or ``"curvette"`` (value of V on the norm down to Q of
    a curvette of W).
    """
    V, W, F = _common(V, W)
    if method == "noether":
        return sum(noether_contact(V, C) for C in conjugates(W, F))
    if method == "curvette":
        return curvette_contact(V, W)
    raise ValueError(f"unknown method {method!r}")


def curvette_contact(V, W, c_star=None):
    V, W, F = _common(V, W)
    others = conjugates(V, F) if V.chi > 1 else [V]
    avoid = []
    for C in conjugates(W, F):
        avoid.extend(extension_constants(C, others))
    # a rational c* is fixed by every automorphism, so the norm of the
    # curvette is the product of curvettes of the conjugate chains
    rational_avoid = []
    for a in avoid:
        try:
            rational_avoid.append(QQField(a))
        except FieldMismatch:
            pass
    if c_star is not None and QQField(c_star) in rational_avoid:
        raise DegenerateConstant(f"c* = {c_star} is degenerate for this pair")
    Wq = W
    cur = curvette(Wq, c_star=c_star, avoid=rational_avoid)
    eq = cur.equation
    if getattr(F, "level", 0) > 0:
        eq = norm_to_rationals(eq)
        spread = F.degree // W.chi
    else:
        spread = 1
    val = V.value(eq)
    assert val % spread == 0
    return val // spread


# -- intersection multiplicity -----------------------------------------------

def intersection_multiplicity(f, g):
    """Length of R/(f, g) at the origin, by truncated local linear algebra."""
    return colength([f, g])


def _y_general(f, g):
    x, y = f.vars
    f0 = f.partial_evaluate(x, 0)
    g0 = g.partial_evaluate(x, 0)
    if not f0 and not g0:
        return False
    h = gcd(f0, g0)
    if len(h.terms) != 1:
        return False
    lf = f.lc_in(y).constant_term()
    lg = g.lc_in(y).constant_term()
    return bool(lf) or bool(lg)


def intersection_resultant_oracle(f, g):
    """Order in X of the resultant in Y; valid only in Y-general position.

    Y-general here means: the only common zero of f and g on the line X = 0
    is the origin, and one of the two leading coefficients in Y does not
    vanish at X = 0.  Then every root near X = 0 is accounted for at the
    origin.
    """
    if not _y_general(f, g):
        raise NotYGeneral("pair is not in Y-general position; change coordinates first")
    x, y = f.vars
    r = resultant(f, g, y)
    if not r:
        return INF
    return r.min_degree(x)


def generic_coordinates(f, g, seed=0, tries=50):
    """Apply X -> X + lam*Y for seeded small lam until the pair is Y-general."""
    rng = random.Random(seed)
    x, y = f.vars
    X = MultiPoly.var(f.field, f.vars, x)
    Y = MultiPoly.var(f.field, f.vars, y)
    if _y_general(f, g):
        return f, g, 0
    for _ in range(tries):
        lam = rng.choice([1, -1, 2, -2, 3, -3]) * rng.randint(1, 5)
        sub = {x: X + Y * lam, y: Y}
        f2, g2 = f.substitute(sub), g.substitute(sub)
        if _y_general(f2, g2):
            return f2, g2, lam
    raise NotYGeneral("no linear change among the tried ones made the pair Y-general")


# -- complete ideals described by their Rees valuations -----------------------

class CompleteIdealSpec:
    """A complete ideal over Q as a product of simple complete ideals.

    ``components`` lists (valuation, exponent); a valuation needing an
    extension field stands for its whole conjugacy class.
    """

    def __init__(self, components, generators=None):
        comps = []
        for V, n in components:
            if int(n) != n or n < 1:
                raise ValueError("exponents must be positive integers")
            comps.append((V, int(n)))
        for i in range(len(comps)):
            for j in range(i):
                if _same_class(comps[i][0], comps[j][0]):
                    raise ValueError("components must be distinct up to conjugation")
        self.components = comps
        self.generators = generators

    def valuations(self):
        return [V for V, _ in self.components]

    def value(self, V):
        """Value of the ideal at a chain: sum n_i c(V, V_i)."""
        return sum(n * contact_number(V, W) for W, n in self.components)

    def __repr__(self):
        return "CompleteIdealSpec(" + ", ".join(f"{V!r}^{n}" for V, n in self.components) + ")"


def _same_class(V, W):
    try:
        V, W, F = _common(V, W)
    except IncompatibleFields:
        return False
    for C in conjugates(W, F):
        if C.n == V.n and shared_prefix(V, C) == V.n:
            return True
    return False


def contact_ideal(I, J):
    """c(R, I, J) = sum n_i n*_j chi(V_i) c(V_i, V*_j)."""
    total = 0
    for V, n in I.components:
        for W, m in J.components:
            total += n * m * V.chi * contact_number(V, W)
    return total


def completion_spec(F, G, field=None):
    """Complete ideal of the integral closure of (F, G), from its pencil."""
    from .pencil import Pencil, resolve, zariski_exponents
    pen = Pencil(F, G, field=field)
    tree = resolve(pen)
    comps = zariski_exponents(pen, tree)
    merged = []
    for V, n in comps:
        if not any(_same_class(V, W) for W, _ in merged):
            merged.append((V, n))
    return CompleteIdealSpec(merged, generators=(pen.F, pen.G))


# -- the product formulas ---------------------------------------------------

def _general_members(F, G, Fs, Gs, names):
    K = function_field(*names)
    vars = F.vars
    lift = [p.change_field(K) for p in (F, G, Fs, Gs)]
    t = MultiPoly.const(K, vars, K.gen(names[0]))
    ts = MultiPoly.const(K, vars, K.gen(names[-1]))
    return K, lift, t, ts


def _pair(F, G):
    from .pencil import Pencil
    p = Pencil(F, G)
    return p.F, p.G


def verify_4_6_1(F, G, Fstar, Gstar):
    """Intersection of general members equals the contact number (one parameter)."""
    F, G = _pair(F, G)
    Fstar, Gstar = _pair(Fstar, Gstar)
    I = completion_spec(F, G)
    J = completion_spec(Fstar, Gstar)
    K, (f, g, fs, gs), t, _ = _general_members(F, G, Fstar, Gstar, ("t",))
    phi = f + g * t
    phis = fs + gs * t
    notes = []
    if common_factor_at_origin(phi, phis):
        phis = gs + fs * t
        notes.append("general members shared a factor; used G* + t F* instead")
        if common_factor_at_origin(phi, phis):
            return VerificationReport("(4.6.1)", "inconclusive",
                                      {"lhs": "inf", "rhs": contact_ideal(I, J)},
                                      witness="members are not coprime even after the swap",
                                      notes=notes)
    lhs = colength([phi, phis])
    rhs = contact_ideal(I, J)
    rhs_sw = contact_ideal(J, I)
    ok = lhs == rhs == rhs_sw
    return VerificationReport("(4.6.1)", status_of(ok),
                              {"lhs": lhs, "rhs": rhs, "rhs_swapped": rhs_sw},
                              witness=None if ok else {"phi": str(phi), "phistar": str(phis)},
                              notes=notes)


def verify_4_6_2(I, J):
    """Symmetry c(R, I, J) = c(R, J, I)."""
    a = contact_ideal(I, J)
    b = contact_ideal(J, I)
    return VerificationReport("(4.6.2)", status_of(a == b), {"lhs": a, "rhs": b})


def verify_4_6_3(F, G, Fstar, Gstar):
    """Intersection of general members with independent parameters t, tstar."""
    F, G = _pair(F, G)
    Fstar, Gstar = _pair(Fstar, Gstar)
    I = completion_spec(F, G)
    J = completion_spec(Fstar, Gstar)
    K, (f, g, fs, gs), t, ts = _general_members(F, G, Fstar, Gstar, ("t", "tstar"))
    phi = f + g * t
    phis = fs + gs * ts
    lhs = colength([phi, phis])
    rhs = contact_ideal(I, J)
    ok = lhs == rhs
    return VerificationReport("(4.6.3)", status_of(ok), {"lhs": lhs, "rhs": rhs},
                              witness=None if ok else {"phi": str(phi), "phistar": str(phis)})


def probe_special_members(F, G, Fstar, Gstar, phi, phistar):
    """Compare i(phi, phistar) with c(R, I, I*) for chosen members over Q.

    The product formula is only claimed for general members; this probe
    reports whether a particular pair happens to satisfy it.
    """
    I = completion_spec(F, G)
    J = completion_spec(Fstar, Gstar)
    lhs = colength([phi, phistar])
    rhs = contact_ideal(I, J)
    status = "pass" if lhs == rhs else "fail"
    return VerificationReport("(4.10)", status, {"lhs": lhs, "rhs": rhs},
                              witness=None if lhs == rhs else "counterexample pair",
                              notes=["special members: equality is not implied"])


def parse_pair(a, b, field=QQField, vars=("X", "Y")):
    return parse_poly(a, field, vars), parse_poly(b, field, vars)


__all__ = [
    "noether_contact", "contact_number", "curvette_contact", "conjugates", "shared_prefix",
    "intersection_multiplicity", "intersection_resultant_oracle", "generic_coordinates",
    "CompleteIdealSpec", "contact_ideal", "completion_spec",
    "verify_4_6_1", "verify_4_6_2", "verify_4_6_3", "probe_special_members",
    "lift_to_polynomial_ring", "NotPrimary",
]
