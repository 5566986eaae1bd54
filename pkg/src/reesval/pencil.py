"""Resolution of the base points of a plane pencil ``F + t G``.

Starting at the origin, each base point is blown up: both members are
pulled back to the first chart and the common power ``u^r`` of the
exceptional line is removed, where ``r`` is the smaller of the two orders.
The exceptional line is dicritical when the two restrictions (the degree
``r`` forms) are both nonzero and not proportional; the next base points are
the common zeros of those restrictions.
"""

from fractions import Fraction

from .errors import NonIntegralExponent, NotPrimary, RootOutsideField, SingularContactMatrix
from .exactfield import upoly
from .exactfield.algebra import gcd
from .exactfield.fields import QQField
from .exactfield.linalg import solve
from .exactfield.parse import parse_poly
from .exactfield.poly import MultiPoly
from .plane import CHART, AtInfinity, Free, PlaneValuation, PointSequence, transition

MAX_DEPTH = 64


class Pencil:
    """A pair of polynomials in X, Y with no common factor through the origin.

    Any common factor is divided out first, so the ideal they generate is
    primary to the maximal ideal at the origin.
    """

    def __init__(self, F, G, field=None, vars=("X", "Y")):
        if isinstance(F, str):
            F = parse_poly(F, field or QQField, vars)
        if isinstance(G, str):
            G = parse_poly(G, field or F.field, vars)
        field = field or F.field
        if F.field != field:
            F = F.change_field(field)
        if G.field != field:
            G = G.change_field(field)
        if not F or not G:
            raise NotPrimary("pencil members must be nonzero")
        h = gcd(F, G)
        if not h.is_constant():
            F, G = F.exact_divide(h), G.exact_divide(h)
        if F.origin_order() < 1 or G.origin_order() < 1:
            raise NotPrimary("both members must vanish at the origin (after removing the gcd)")
        self.F, self.G = F, G
        self.field = field
        self.vars = tuple(F.vars)

    def members(self):
        return self.F, self.G

    def __repr__(self):
        return f"Pencil({self.F}, {self.G})"


class BasePoint:
    """One node of the base point tree."""

    def __init__(self, steps, orders, dicritical, children=()):
        self.steps = tuple(steps)
        self.orders = orders
        self.multiplicity = min(orders)
        self.dicritical = dicritical
        self.children = list(children)
        self.local_iota = None

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def depth(self):
        return len(self.steps)

    def __repr__(self):
        flag = " dicritical" if self.dicritical else ""
        return f"<point {list(self.steps)} r={self.multiplicity}{flag}>"


class BasePointTree:
    def __init__(self, pencil, root):
        self.pencil = pencil
        self.root = root

    def points(self):
        return list(self.root.walk())

    def dicritical_points(self):
        return [p for p in self.points() if p.dicritical]

    def dicriticals(self):
        return [PlaneValuation(PointSequence(p.steps, self.pencil.field))
                for p in self.dicritical_points()]

    def depth(self):
        return max(p.depth() for p in self.points())

    def multiplicity_square_sum(self):
        return sum(p.multiplicity ** 2 for p in self.points())

    def text(self):
        lines = []

        def rec(node, indent):
            lines.append("  " * indent + repr(node))
            for c in node.children:
                rec(c, indent + 1)
        rec(self.root, 0)
        return "\n".join(lines)


def _to_chart(p):
    x, y = p.vars
    u = MultiPoly.var(p.field, CHART, "u")
    v = MultiPoly.var(p.field, CHART, "v")
    return p.substitute({x: u, y: v})


def _proportional(a, b):
    ea, ca = a.leading_term()
    cb = b.coeff(ea)
    if not cb:
        return False
    return a.scale(cb) == b.scale(ca)


def _roots_in_field(poly_v, field):
    """Roots in ``field`` of a univariate polynomial in v (chart variable)."""
    dense = [poly_v.terms.get((0, k), field.zero) for k in range(int(poly_v.degree("v")) + 1)]
    dense = upoly.trim(dense)
    if len(dense) <= 1:
        return []
    if field.is_rational:
        roots = upoly.rational_roots(dense)
        rest = _strip_roots(dense, roots)
        if len(rest) > 1:
            raise RootOutsideField(
                f"base point coordinates need an extension: factor {_factor_text(rest)} has no root in Q",
                factor=_factor_text(rest))
        return roots
    if getattr(field, "level", 0) == 1:
        return _roots_number_field(dense, field)
    raise RootOutsideField("root finding is supported over Q and one-step extensions only")


def _strip_roots(dense, roots):
    sq = upoly.squarefree_part(dense)
    for r in roots:
        sq, rem = upoly.divmod_(sq, [-r, 1])
        assert not rem
    return sq


def _factor_text(dense):
    import sympy
    v = sympy.Symbol("v")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * v ** k
               for k, c in enumerate(dense))
    _, facs = sympy.factor_list(expr, v)
    return " * ".join(str(f) for f, _ in facs if sympy.Poly(f, v).degree() > 1)


def _roots_number_field(dense, field):
    import sympy
    x = sympy.Symbol("x")
    mp = field.minpoly
    mexpr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x ** k for k, c in enumerate(mp))
    theta = sympy.CRootOf(mexpr, 0)
    K = sympy.QQ.algebraic_field(theta)

    def to_k(c):
        vals = [sympy.Rational(int(a.numerator), int(a.denominator)) for a in c.c]
        return K.from_sympy(sum(a * theta ** k for k, a in enumerate(vals)))

    poly = sympy.Poly.from_list([to_k(c) for c in reversed(dense)], x, domain=K)
    _, facs = poly.factor_list()
    roots = []
    bad = []
    for f, _ in facs:
        if f.degree() == 1:
            a1, a0 = f.rep.to_list()
            r = K.quo(-a0, a1)
            coeffs = [QQField(c) for c in reversed(K.to_list(r) if hasattr(K, "to_list") else r.to_list())]
            roots.append(field._from_list(coeffs))
        elif f.degree() > 1:
            bad.append(str(f.as_expr()))
    if bad:
        raise RootOutsideField(f"base point coordinates need a further extension: {', '.join(bad)}",
                               factor=", ".join(bad))
    return roots


def resolve(pencil, check=False):
    """Base point tree of the pencil.

    With ``check`` the local intersection number is computed at every base
    point and the drop by the squared multiplicity is asserted; this is the
    termination measure of the blow-up sequence.
    """
    field = pencil.field
    P0, Q0 = _to_chart(pencil.F), _to_chart(pencil.G)

    def build(P, Q, steps):
        if len(steps) > MAX_DEPTH:
            raise RuntimeError("base point resolution exceeded its depth cap")
        a, b = P.origin_order(), Q.origin_order()
        r = min(a, b)
        inP = P.homogeneous_part(r)
        inQ = Q.homogeneous_part(r)
        dicritical = bool(inP) and bool(inQ) and not _proportional(inP, inQ)
        node = BasePoint(steps, (a, b), dicritical)
        if inP and inQ:
            H = gcd(inP, inQ)
        else:
            H = inP if inP else inQ
        directions = []
        if H.total_degree() > 0:
            if not H.coeff((0, H.total_degree())):
                directions.append(AtInfinity)
            h1 = H.partial_evaluate("u", 1)
            for c in _roots_in_field(h1, field):
                directions.append(Free(c))
        for st in directions:
            P1 = transition(P, st).divide_monomial((r, 0))
            Q1 = transition(Q, st).divide_monomial((r, 0))
            assert not P1.constant_term() and not Q1.constant_term()
            node.children.append(build(P1, Q1, steps + (st,)))
        if check:
            from .local import colength
            node.local_iota = colength([P, Q])
            below = sum(c.local_iota for c in node.children)
            assert node.local_iota == r * r + below, "intersection number did not drop by r^2"
        return node

    return BasePointTree(pencil, build(P0, Q0, (Free(field.zero),)))


def dicriticals(pencil):
    return resolve(pencil).dicriticals()


def completion_values(pencil, V):
    """Value of the integral closure of (F, G) at V: min of the two values."""
    return min(V.value(pencil.F), V.value(pencil.G))


def zariski_exponents(pencil, tree=None):
    """Exponents n_i with completion of (F, G) = product of simple ideals^n_i.

    Solves sum_i n_i * c(V_k, V_i) = min(V_k(F), V_k(G)) over the rationals,
    where c is the contact number of two geometric chains.
    """
    from .contact import noether_contact
    tree = tree or resolve(pencil)
    vals = tree.dicriticals()
    if not vals:
        raise NotPrimary("pencil has no dicritical divisor")
    M = [[QQField(noether_contact(Vk, Vi)) for Vi in vals] for Vk in vals]
    rhs = [QQField(completion_values(pencil, Vk)) for Vk in vals]
    sol = solve(M, rhs)
    if sol is None:
        raise SingularContactMatrix("contact matrix of the dicriticals is singular")
    out = []
    for x in sol:
        x = Fraction(int(x.numerator), int(x.denominator))
        if x.denominator != 1 or x <= 0:
            raise NonIntegralExponent(f"exponent {x} is not a positive integer")
        out.append(int(x))
    return list(zip(vals, out))
