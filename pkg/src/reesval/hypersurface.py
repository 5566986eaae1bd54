"""Hypersurfaces ``Z^m + sum G_i = 0`` whose tangent cone is a product of lines.

The family is fixed by the linear forms ``F_1..F_h`` in ``X_1..X_d`` and by
optional extra homogeneous terms divisible by ``F = F_1...F_h``.  With no
extras the equation is ``Z^m - F``.  The local ring at the origin has exactly
``h`` Rees valuations for its maximal ideal, one per form; they are computed
by pushing elements through the chart ``X_i = z x'_i`` and reading off orders
along the lines ``f'_j = 0``.
"""

import math

from .errors import (BadDegrees, BadExtraTerm, DegreeBoundExceeded, DividesTangentCone,
                     IndexOutOfRange, InexactDivision, NotCoprime, NotEisenstein, NotIndependent)
from .exactfield.algebra import factor_order, gcd
from .exactfield.fields import QQField, field_from_config
from .exactfield.linalg import Echelon, dense_rank
from .exactfield.parse import parse_poly
from .exactfield.poly import INF, MultiPoly
from .local import as_vector, covers_degree, monomials_of_degree, monomials_up_to, multiples_echelon
from .report import VerificationReport, status_of


def x_names(d):
    if d == 1:
        return ("X",)
    if d == 2:
        return ("X", "Y")
    return tuple(f"X{i}" for i in range(1, d + 1))


def chart_names(d):
    if d == 1:
        return ("x'",)
    if d == 2:
        return ("x'", "y'")
    return tuple(f"x{i}'" for i in range(1, d + 1))


def _proportional(a, b):
    ea, ca = a.leading_term()
    cb = b.coeff(ea)
    return bool(cb) and a.scale(cb) == b.scale(ca)


def _linear_coeffs(form):
    n = form.nvars
    out = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        out.append(form.coeff(tuple(e)))
    return out


def _straighten(form):
    """Substitution making the linear ``form`` a coordinate.

    Returns ``(k, sub)`` where after ``sub`` the form equals variable ``k``.
    """
    a = _linear_coeffs(form)
    k = next(i for i, c in enumerate(a) if c)
    field, vars = form.field, form.vars
    img = MultiPoly.var(field, vars, vars[k])
    for i, c in enumerate(a):
        if i != k and c:
            img = img - MultiPoly.var(field, vars, vars[i]).scale(c)
    return k, {vars[k]: img.scale(1 / a[k])}


def _low(poly, k, bound):
    """Terms whose exponent at variable ``k`` is below ``bound``."""
    return poly._new({e: c for e, c in poly.terms.items() if e[k] < bound})


class HypersurfaceFamily:
    """The hypersurface ``Z^m - F_1...F_h + extras`` over a field.

    ``extras`` is a list of pairs ``(i, G_i)`` where ``G_i`` is homogeneous of
    degree ``i`` with ``h <= i < m`` and divisible by the product of the forms.
    """

    def __init__(self, d, m, forms, extras=(), field=None):
        field = field or QQField
        if d < 1:
            raise BadDegrees("need at least one X variable")
        self.d, self.m, self.field = int(d), int(m), field
        self.xvars = x_names(self.d)
        self.cvars = self.xvars + ("Z",)
        self.pvars = chart_names(self.d)
        forms = [parse_poly(f, field, self.xvars) for f in forms]
        self.h = len(forms)
        if self.h < 1:
            raise BadDegrees("at least one linear form is needed")
        for f in forms:
            if not f or not f.is_homogeneous() or f.total_degree() != 1:
                raise BadDegrees(f"{f} is not a nonzero linear form")
        if self.m <= self.h:
            raise BadDegrees(f"degree m={self.m} must exceed the number of forms h={self.h}")
        for i in range(len(forms)):
            for j in range(i):
                if _proportional(forms[i], forms[j]):
                    raise NotCoprime(f"forms {forms[j]} and {forms[i]} are proportional")
        self.forms = forms
        self.t = self.m - self.h
        F = MultiPoly.const(field, self.xvars, 1)
        for f in forms:
            F = F * f
        self.F = F
        Fc = F.with_vars(self.cvars)

        comps = {self.h: -Fc}
        self.extras = []
        for i, Gi in extras:
            i = int(i)
            Gi = parse_poly(Gi, field, self.cvars) if isinstance(Gi, str) else Gi.with_vars(self.cvars)
            if not (self.h <= i <= self.m - 1):
                raise BadExtraTerm(f"extra term degree {i} is outside [{self.h}, {self.m - 1}]")
            if not Gi:
                continue
            if not Gi.is_homogeneous() or Gi.total_degree() != i:
                raise BadExtraTerm(f"extra term {Gi} is not homogeneous of degree {i}")
            try:
                Gi.exact_divide(Fc)
            except InexactDivision:
                raise BadExtraTerm(f"extra term {Gi} is not divisible by {F}") from None
            self.extras.append((i, Gi))
            comps[i] = comps.get(i, MultiPoly.zero(field, self.cvars)) + Gi
        self.components = {i: c for i, c in sorted(comps.items()) if c}
        if self.h not in self.components:
            raise NotEisenstein("the extra terms cancel the tangent cone")
        Z = MultiPoly.var(field, self.cvars, "Z")
        self.G = Z ** self.m
        for c in self.components.values():
            self.G = self.G + c
        self._tail = (self.G - Z ** self.m).as_univariate("Z")

        # chart data: g = z^t + sum g_i z^(t-i), g_i = G_(m-i)(x', 1)
        self.g_coeffs = {}
        for i in range(1, self.t + 1):
            Gi = self.components.get(self.m - i)
            if Gi is None:
                continue
            gi = self._dehomogenize(Gi)
            if gi:
                self.g_coeffs[i] = gi
        self.fprime_j = [self._to_chart_vars(f) for f in forms]
        fp = MultiPoly.const(field, self.pvars, 1)
        for f in self.fprime_j:
            fp = fp * f
        self.fprime = fp
        gt = self.g_coeffs.get(self.t)
        for j, fj in enumerate(self.fprime_j, 1):
            if gt is None or factor_order(fj, gt) != 1:
                raise NotEisenstein(f"g_t is not exactly divisible once by f'_{j} = {fj}")
            for i, gi in self.g_coeffs.items():
                if factor_order(fj, gi) < 1:
                    raise NotEisenstein(f"g_{i} is not divisible by f'_{j}")
        self._zpow = [self._unit(0)]
        self._member_cache = {}

    # conversions -------------------------------------------------------------
    def _to_chart_vars(self, p):
        return MultiPoly(self.field, self.pvars, dict(p.terms), trusted=True)

    def _dehomogenize(self, Gi):
        """G_i(x', 1) as a polynomial in the chart variables."""
        t = {}
        for e, c in Gi.terms.items():
            ne = e[:-1]
            v = t.get(ne)
            t[ne] = c if v is None else v + c
        return MultiPoly(self.field, self.pvars, {e: c for e, c in t.items() if c}, trusted=True)

    def _unit(self, s):
        out = [MultiPoly.zero(self.field, self.pvars) for _ in range(self.t)]
        out[s] = MultiPoly.const(self.field, self.pvars, 1)
        return out

    def zpow(self, n):
        """z^n reduced modulo g, as coefficients of 1, z, ..., z^(t-1)."""
        while len(self._zpow) <= n:
            prev = self._zpow[-1]
            top = prev[-1]
            nxt = [MultiPoly.zero(self.field, self.pvars)] + prev[:-1]
            if top:
                for i, gi in self.g_coeffs.items():
                    nxt[self.t - i] = nxt[self.t - i] - top * gi
            self._zpow.append(nxt)
        return self._zpow[n]

    def reduce(self, P):
        """Coefficients c_0..c_(m-1) of P modulo G, as polynomials in X."""
        u = P.with_vars(self.cvars).as_univariate("Z")
        zero = MultiPoly.zero(self.field, self.cvars)
        while u and max(u) >= self.m:
            k = max(u)
            c = u.pop(k)
            for i, q in self._tail.items():
                u[k - self.m + i] = u.get(k - self.m + i, zero) - c * q
        out = []
        for b in range(self.m):
            c = u.get(b, zero)
            out.append(MultiPoly(self.field, self.xvars, {e[:-1]: x for e, x in c.terms.items()},
                                 trusted=True))
        return out

    def element(self, y):
        """Coerce a string, polynomial in X and Z (or z), or element into B."""
        if isinstance(y, SurfaceElement):
            return y
        if isinstance(y, str):
            text = y.replace("z", "Z")
            y = parse_poly(text, self.field, self.cvars)
        if not isinstance(y, MultiPoly):
            y = MultiPoly.const(self.field, self.cvars, y)
        return SurfaceElement(self, self.reduce(y))

    # description ---------------------------------------------------------------
    def equation(self):
        return self.G

    def config(self):
        return {"d": self.d, "m": self.m, "forms": [str(f) for f in self.forms],
                "extras": [[i, str(G)] for i, G in self.extras]}

    def __repr__(self):
        return f"HypersurfaceFamily({self.G} = 0)"


class SurfaceElement:
    """An element sum c_b z^b (b < m) of B = K[X, Z]/(G)."""

    def __init__(self, fam, coeffs):
        if len(coeffs) != fam.m:
            raise ValueError(f"expected {fam.m} coefficients, got {len(coeffs)}")
        self.fam = fam
        self.coeffs = list(coeffs)

    def to_poly(self):
        fam = self.fam
        out = MultiPoly.zero(fam.field, fam.cvars)
        for b, c in enumerate(self.coeffs):
            if c:
                out = out + MultiPoly(fam.field, fam.cvars,
                                      {e + (b,): x for e, x in c.terms.items()}, trusted=True)
        return out

    def is_zero(self):
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def total_degree(self):
        degs = [c.total_degree() + b for b, c in enumerate(self.coeffs) if c]
        return max(degs) if degs else -INF

    def _other(self, o):
        return self.fam.element(o)

    def __add__(self, o):
        o = self._other(o)
        return SurfaceElement(self.fam, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return SurfaceElement(self.fam, [-a for a in self.coeffs])

    def __sub__(self, o):
        return self + (-self._other(o))

    def __mul__(self, o):
        o = self._other(o)
        return self.fam.element(self.to_poly() * o.to_poly())

    __rmul__ = __mul__

    def __pow__(self, k):
        acc = self.fam.element(1)
        for _ in range(k):
            acc = acc * self
        return acc

    def __eq__(self, o):
        try:
            o = self._other(o)
        except Exception:
            return False
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __str__(self):
        p = self.to_poly()
        return str(MultiPoly(p.field, p.vars[:-1] + ("z",), p.terms, trusted=True))

    def __repr__(self):
        return f"SurfaceElement({self})"


def family_build(d, m, linear_forms, extra_terms=(), field=None):
    return HypersurfaceFamily(d, m, linear_forms, extra_terms, field=field)


def family_from_config(cfg):
    field = field_from_config(cfg.get("field", "Q"))
    return HypersurfaceFamily(cfg["d"], cfg["m"], cfg["forms"],
                              [tuple(e) for e in cfg.get("extras", [])], field=field)


def qdt_reduce(fam, y):
    """Image of y in A = A'[z]/(g): coefficients d_0..d_(t-1) in x'."""
    y = fam.element(y)
    groups = {}
    for b, c in enumerate(y.coeffs):
        for e, x in c.terms.items():
            n = sum(e) + b
            groups.setdefault(n, {})[e] = x
    out = [MultiPoly.zero(fam.field, fam.pvars) for _ in range(fam.t)]
    for n, terms in groups.items():
        P = MultiPoly(fam.field, fam.pvars, terms, trusted=True)
        for s, zc in enumerate(fam.zpow(n)):
            if zc:
                out[s] = out[s] + P * zc
    return out


def _check_index(fam, j):
    if not (1 <= j <= fam.h):
        raise IndexOutOfRange(f"valuation index {j} outside 1..{fam.h}")


def v_value(fam, j, y):
    """Value of the j-th Rees valuation (1-based) on y."""
    _check_index(fam, j)
    ds = qdt_reduce(fam, y)
    fj = fam.fprime_j[j - 1]
    vals = [s + fam.t * factor_order(fj, d) for s, d in enumerate(ds) if d]
    if not vals:
        return INF
    assert len({v % fam.t for v in vals}) == len(vals)
    return min(vals)


def sharpened_value(fam, j, c):
    """Value on an element of K[X] via a (t+1)-th root of F_j.

    Independent of the chart computation: write F_j as a coordinate, replace
    it by Y^(t+1) and take the order at the origin.
    """
    _check_index(fam, j)
    if isinstance(c, str):
        c = parse_poly(c, fam.field, fam.xvars)
    if isinstance(c, SurfaceElement):
        if any(c.coeffs[1:]):
            raise ValueError("sharpened value is defined for elements of K[X] only")
        c = c.coeffs[0]
    k, sub = _straighten(fam.forms[j - 1])
    # after sub the k-th variable is F_j itself; raise it to the (t+1)-th power
    xk = fam.xvars[k]
    root = MultiPoly.var(fam.field, fam.xvars, xk) ** (fam.t + 1)
    img = sub[xk].substitute({xk: root})
    return c.substitute({xk: img}).origin_order()


class DicriticalValuation:
    """The j-th Rees valuation of the maximal ideal of the surface."""

    def __init__(self, fam, j):
        _check_index(fam, j)
        self.fam = fam
        self.index = j
        self.form = fam.forms[j - 1]
        self.t = fam.t
        self.fprime = fam.fprime
        self.fprime_j = fam.fprime_j[j - 1]
        z = fam.element("Z")
        if v_value(fam, j, z) != 1 or v_value(fam, j, fam.element(self.form.with_vars(fam.cvars))) != self.t + 1:
            raise NotEisenstein(f"valuation {j} does not take the expected values on z and F_{j}")

    def __call__(self, y):
        return v_value(self.fam, self.index, y)

    def __repr__(self):
        return f"<V_{self.index} along {self.form}, t={self.t}>"


def dicriticals(fam):
    return [DicriticalValuation(fam, j) for j in range(1, fam.h + 1)]


# -- ideal membership in B ---------------------------------------------------

def _multiples_of_G(fam, p):
    """Echelon of degree < p truncations of mu*G, cached per p."""
    ech = fam._member_cache.get(p)
    if ech is None:
        ech = Echelon()
        n = fam.d + 1
        for mu in monomials_up_to(n, p - 1 - fam.h) if p - 1 - fam.h >= 0 else []:
            row = fam.G * MultiPoly.monomial(fam.field, fam.cvars, mu)
            v = as_vector(row, p - 1)
            if v:
                ech.add(v)
        fam._member_cache[p] = ech
    return ech


def _member(fam, P, p):
    if p <= 0:
        return True
    low = as_vector(P, p - 1)
    if not low:
        return True
    return _multiples_of_G(fam, p).contains(low)


def ideal_membership(fam, y, p, degree_bound=None):
    """Whether y lies in (X_1, ..., X_d, z)^p B.

    The ideal contains a power of the maximal ideal, so membership only
    depends on the part of y (as a polynomial in X and Z) of degree below p,
    modulo multiples of G.
    """
    y = fam.element(y)
    if degree_bound is not None and y.total_degree() > degree_bound:
        raise DegreeBoundExceeded(f"element of degree {y.total_degree()} exceeds bound {degree_bound}")
    P = y.to_poly()
    if _member(fam, P, p):
        return True
    # retry once with a unit at the origin; the ideal is primary to the
    # maximal ideal so this never changes the answer, but it is cheap
    unit = MultiPoly.var(fam.field, fam.cvars, fam.xvars[0]) + 1
    return _member(fam, P * unit, p)


def _basis_monomials(fam, D):
    out = []
    for b in range(fam.m):
        for a in monomials_up_to(fam.d, D - b) if D - b >= 0 else []:
            out.append((a, b))
    return out


def valuation_subspace(fam, p, D):
    """Basis of {y of degree <= D : V_j(y) >= p for all j}.

    Each basis vector is a dict from (a, b), meaning X^a z^b, to a
    coefficient.
    """
    basis = _basis_monomials(fam, D)
    t = fam.t
    bounds = [math.ceil((p - s) / t) if p > s else 0 for s in range(t)]
    kmax = max(bounds)
    straight = []
    for fj in fam.fprime_j:
        k, sub = _straighten(fj)
        straight.append((k, sub, {}, {}))

    def image(j, a, n):
        k, sub, xcache, zcache = straight[j]
        xa = xcache.get(a)
        if xa is None:
            xa = _low(MultiPoly.monomial(fam.field, fam.pvars, a).substitute(sub), k, kmax)
            xcache[a] = xa
        zs = zcache.get(n)
        if zs is None:
            zs = [_low(c.substitute(sub), k, kmax) if c else c for c in fam.zpow(n)]
            zcache[n] = zs
        return k, xa, zs

    ech = Echelon()
    for idx, (a, b) in enumerate(basis):
        vec = {}
        n = sum(a) + b
        for j in range(fam.h):
            k, xa, zs = image(j, a, n)
            for s in range(t):
                if not bounds[s] or not zs[s]:
                    continue
                prod = _low(xa, k, bounds[s]) * _low(zs[s], k, bounds[s])
                for e, c in prod.terms.items():
                    if e[k] < bounds[s]:
                        vec[(0, j, s, e)] = c
        vec[(1, idx)] = fam.field.one
        ech.add(vec)
    kernel = []
    for lead, row in ech.rows.items():
        if lead[0] == 1:
            kernel.append({basis[key[1]]: c for key, c in row.items()})
    kernel.sort(key=lambda v: min(basis.index(k) for k in v))
    return kernel


def _from_basis_vector(fam, vec):
    t = {}
    for (a, b), c in vec.items():
        t[tuple(a) + (b,)] = c
    return SurfaceElement(fam, fam.reduce(MultiPoly(fam.field, fam.cvars, t)))


def verify_normality(fam, p_max, degree_bound=None):
    """Check that the valuation ideals I_p equal the powers M^p, p <= p_max.

    Inclusion of I_p in M^p is tested on every element of degree at most
    ``degree_bound``; the reverse inclusion on the generators of M^p.
    """
    if p_max < 0:
        raise ValueError("p_max must be nonnegative")
    D = degree_bound if degree_bound is not None else p_max * fam.m + fam.h
    cases = []
    witness = None
    for p in range(1, p_max + 1):
        kernel = valuation_subspace(fam, p, D)
        bad = None
        for vec in kernel:
            y = _from_basis_vector(fam, vec)
            if not ideal_membership(fam, y, p, degree_bound=None):
                bad = y
                break
        gens_ok = True
        for e in monomials_of_degree(fam.d + 1, p):
            y = fam.element(MultiPoly.monomial(fam.field, fam.cvars, e))
            if any(v_value(fam, j, y) < p for j in range(1, fam.h + 1)):
                gens_ok = False
                bad = bad or y
                break
        ok = bad is None and gens_ok
        cases.append({"p": p, "dimension": len(kernel), "status": status_of(ok)})
        if not ok and witness is None:
            witness = {"p": p, "element": str(bad)}
    ok = all(c["status"] == "pass" for c in cases)
    return VerificationReport("(33)", status_of(ok),
                              {"p_max": p_max, "degree_bound": D, "cases": cases},
                              witness=witness,
                              notes=[f"verified up to degree {D}"])


# -- reductions ------------------------------------------------------------------

def _validate_reduction_forms(fam, forms):
    forms = [parse_poly(H, fam.field, fam.xvars) for H in forms]
    if len(forms) != fam.d - 1:
        raise NotIndependent(f"expected {fam.d - 1} linear forms, got {len(forms)}")
    for H in forms:
        if not H or not H.is_homogeneous() or H.total_degree() != 1:
            raise NotIndependent(f"{H} is not a nonzero linear form")
    if forms and dense_rank([_linear_coeffs(H) for H in forms]) != len(forms):
        raise NotIndependent("the linear forms are linearly dependent")
    for H in forms:
        try:
            fam.F.exact_divide(H)
        except InexactDivision:
            continue
        raise DividesTangentCone(f"{H} divides the tangent cone form {fam.F}")
    return forms


def reduction_witness(fam, forms, p, n_max=3):
    """Smallest n <= n_max with J (M^p)^n = (M^p)^(n+1), or None.

    J is generated by the p-th powers of the forms and z^p.  By Nakayama it
    is enough that every monomial of degree p(n+1) lies in J M^(pn) plus
    multiples of G, modulo the next power of the maximal ideal.
    """
    Z = MultiPoly.var(fam.field, fam.cvars, "Z")
    J = [H.with_vars(fam.cvars) ** p for H in forms] + [Z ** p]
    n_vars = fam.d + 1
    for n in range(n_max + 1):
        N = p * (n + 1)
        gens = []
        for Jg in J:
            for mu in monomials_of_degree(n_vars, p * n):
                gens.append(Jg * MultiPoly.monomial(fam.field, fam.cvars, mu))
        gens.append(fam.G)
        ech = multiples_echelon(gens, N)
        if covers_degree(ech, n_vars, N):
            return n
    return None


def is_reduction(fam, forms, p):
    """Whether (H_1^p, ..., H_(d-1)^p, z^p) is a reduction of M^p."""
    forms = _validate_reduction_forms(fam, forms)
    if p < 1:
        raise ValueError("p must be positive")
    gens = [fam.element(H.with_vars(fam.cvars) ** p) for H in forms] + [fam.element("Z") ** p]
    for j in range(1, fam.h + 1):
        if min(v_value(fam, j, y) for y in gens) != p:
            return False
    return reduction_witness(fam, forms, p) is not None


def reduction_report(fam, forms, p):
    forms = _validate_reduction_forms(fam, forms)
    gens = [fam.element(H.with_vars(fam.cvars) ** p) for H in forms] + [fam.element("Z") ** p]
    mins = [min(v_value(fam, j, y) for y in gens) for j in range(1, fam.h + 1)]
    n = reduction_witness(fam, forms, p)
    ok = all(v == p for v in mins) and n is not None
    witness = None
    if not ok:
        low = [j + 1 for j, v in enumerate(mins) if v != p]
        if low:
            witness = {"valuations_below_p": low}
        else:
            # the forms and z then cut out more than the origin on the tangent cone
            witness = {"nakayama": "no n <= 3 with J (M^p)^n = (M^p)^(n+1)"}
    return VerificationReport("(45)", status_of(ok),
                              {"p": p, "forms": [str(H) for H in forms], "min_values": mins,
                               "nakayama_n": n}, witness=witness)


def tangent_cone_reduced(fam):
    """Whether the lowest-degree form of G is squarefree."""
    Gh = fam.components[fam.h]
    h = Gh
    for v in fam.cvars:
        dv = Gh.derivative(v)
        if dv:
            h = gcd(h, dv)
    return h.is_constant()


__all__ = [
    "HypersurfaceFamily", "SurfaceElement", "DicriticalValuation", "family_build",
    "family_from_config", "qdt_reduce", "v_value", "sharpened_value", "dicriticals",
    "ideal_membership", "valuation_subspace", "verify_normality", "is_reduction",
    "reduction_witness", "reduction_report", "tangent_cone_reduced",
]
