"""GCD, resultant and factor order for sparse polynomials.

Both gcd and resultant work recursively: a polynomial is viewed in one
main variable with coefficients in the remaining ones.  The gcd uses a
primitive pseudo-remainder sequence; the resultant uses the subresultant
sequence, which only needs exact divisions in the coefficient ring.
"""

from collections import namedtuple

from ..errors import InexactDivision, ZeroInput
from .poly import MultiPoly


def _main_var(*polys):
    vars = polys[0].vars
    for i, v in enumerate(vars):
        for p in polys:
            if any(e[i] for e in p.terms):
                return v
    return None


def _deg(u):
    return max(u) if u else -1


def _from_u(u, var, like):
    return MultiPoly.from_univariate(u, var, like.field, like.vars)


def pseudo_remainder(a, b, var):
    """lc(b)^(deg a - deg b + 1) * a mod b, in ``var``."""
    ua, ub = a.as_univariate(var), b.as_univariate(var)
    da, db = _deg(ua), _deg(ub)
    if db < 0:
        raise ZeroDivisionError("pseudo-remainder by zero")
    if da < db:
        return a
    lc = ub[db]
    r = dict(ua)
    zero = MultiPoly.zero(a.field, a.vars)
    for k in range(da, db - 1, -1):
        ck = r.get(k, zero)
        r = {i: c * lc for i, c in r.items() if i != k}
        if ck:
            for j, bj in ub.items():
                if j == db:
                    continue
                i = k - db + j
                r[i] = r.get(i, zero) - ck * bj
        r = {i: c for i, c in r.items() if c}
    return _from_u(r, var, a)


def content(p, var):
    """Gcd of the coefficients of ``p`` seen as a polynomial in ``var``."""
    g = MultiPoly.zero(p.field, p.vars)
    for c in p.as_univariate(var).values():
        g = gcd(g, c)
        if g.is_constant() and g:
            return MultiPoly.const(p.field, p.vars, 1)
    return g


def primitive_part(p, var):
    if not p:
        return p
    c = content(p, var)
    return p if c.is_constant() else p.exact_divide(c)


def _normalize(p):
    return p.monic() if p else p


def gcd(f, g):
    """Monic greatest common divisor (leading term in graded-lex order is 1).

    Over Q with two or more variables the work is handed to sympy, whose
    heuristic gcd avoids the coefficient growth of pseudo-remainders; other
    fields use the primitive remainder sequence of :func:`prs_gcd`.
    """
    if f and g and f.nvars >= 2 and getattr(f.field, "is_rational", False):
        return _sympy_gcd(f, g)
    return prs_gcd(f, g)


def _to_sympy(p, gens):
    from sympy import Poly, QQ
    rep = {e: QQ(int(c.numerator), int(c.denominator)) for e, c in p.terms.items()}
    return Poly.from_dict(rep, *gens, domain=QQ)


def _sympy_gcd(f, g):
    import sympy
    gens = sympy.symbols(f"x0:{f.nvars}")
    h = _to_sympy(f, gens).gcd(_to_sympy(g, gens))
    terms = {tuple(e): f.field(c.numerator) / f.field(c.denominator)
             for e, c in h.as_dict().items()}
    return _normalize(MultiPoly(f.field, f.vars, terms))


def prs_gcd(f, g):
    """Gcd by a primitive pseudo-remainder sequence, over any exact field."""
    if not f:
        return _normalize(g)
    if not g:
        return _normalize(f)
    var = _main_var(f, g)
    if var is None:
        return MultiPoly.const(f.field, f.vars, 1)
    if not f.involves(var):
        return gcd(f, content(g, var))
    if not g.involves(var):
        return gcd(content(f, var), g)
    cf, cg = content(f, var), content(g, var)
    a = f.exact_divide(cf) if not cf.is_constant() else f
    b = g.exact_divide(cg) if not cg.is_constant() else g
    c = gcd(cf, cg)
    if a.degree(var) < b.degree(var):
        a, b = b, a
    while b and b.degree(var) > 0:
        r = pseudo_remainder(a, b, var)
        a = b
        if not r:
            b = r
            break
        cr = content(r, var)
        b = r.exact_divide(cr) if not cr.is_constant() else r
    if b:
        # remainder sequence reached a nonzero constant in var
        return _normalize(c)
    pa = content(a, var)
    a = a.exact_divide(pa) if not pa.is_constant() else a
    return _normalize(c * a)


def resultant(f, g, var):
    """Resultant of ``f`` and ``g`` with respect to ``var``."""
    if not f or not g:
        return MultiPoly.zero(f.field, f.vars)
    A, B = f, g
    da, db = A.degree(var), B.degree(var)
    s = 1
    if da < db:
        A, B = B, A
        da, db = db, da
        if da % 2 and db % 2:
            s = -s
    if db == 0:
        return B ** da * s
    one = MultiPoly.const(f.field, f.vars, 1)
    gg, h = one, one
    while True:
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = pseudo_remainder(A, B, var)
        A = B
        if not R:
            return MultiPoly.zero(f.field, f.vars)
        B = R.exact_divide(gg * h ** delta)
        gg = A.lc_in(var)
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = (gg ** delta).exact_divide(h ** (delta - 1))
        da, db = A.degree(var), B.degree(var)
        if db == 0:
            break
    if da == 1:
        return B * s
    return (B ** da).exact_divide(h ** (da - 1)) * s


def factor_order(p, f):
    """Largest k with p^k dividing f; p must be non-constant."""
    if not f:
        raise ZeroInput("factor order of the zero polynomial is infinite")
    if p.is_constant():
        raise ValueError("factor order needs a non-constant factor")
    k = 0
    while True:
        q, r = f.divmod_lex(p)
        if r:
            return k
        f = q
        k += 1


UnivariateTools = namedtuple("UnivariateTools", "gcd resultant")


def univariate_tools(f, g, main_var):
    """Gcd and resultant in ``main_var`` of two polynomials."""
    return UnivariateTools(gcd(f, g), resultant(f, g, main_var))


def sylvester_resultant(f, g, var):
    """Resultant by an explicit Sylvester determinant (slow; for testing)."""
    uf, ug = f.as_univariate(var), g.as_univariate(var)
    m, n = _deg(uf), _deg(ug)
    zero = MultiPoly.zero(f.field, f.vars)
    size = m + n
    if size == 0:
        return MultiPoly.const(f.field, f.vars, 1)
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in uf.items():
            row[i + m - k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in ug.items():
            row[i + n - k] = c
        rows.append(row)
    return _bareiss_det(rows)


def _bareiss_det(M):
    M = [list(r) for r in M]
    n = len(M)
    one = MultiPoly.const(M[0][0].field, M[0][0].vars, 1)
    sign = 1
    prev = one
    for k in range(n - 1):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return MultiPoly.zero(one.field, one.vars)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]).exact_divide(prev)
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


__all__ = ["gcd", "resultant", "factor_order", "univariate_tools", "pseudo_remainder",
           "content", "sylvester_resultant", "InexactDivision"]


def norm_to_rationals(f):
    """Product of all conjugates of ``f`` over Q, via resultants.

    The coefficients of ``f`` live in a number field tower; each level is
    removed by taking the resultant with its minimal polynomial.
    """
    while getattr(f.field, "level", 0) > 0:
        K = f.field
        g = "_gen%d" % K.level
        vars = f.vars + (g,)
        terms = {}
        for e, c in f.terms.items():
            for k, ck in enumerate(c.c):
                if ck:
                    terms[e + (k,)] = ck
        lifted = MultiPoly(K.base, vars, terms)
        n = len(f.vars)
        mu = MultiPoly(K.base, vars, {(0,) * n + (k,): c for k, c in enumerate(K.minpoly) if c})
        f = resultant(mu, lifted, g).with_vars(f.vars)
    return f
