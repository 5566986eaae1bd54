"""Sparse multivariate polynomials over an exact field.

A :class:`MultiPoly` is a dict from exponent tuples to nonzero
coefficients together with its field and an ordered tuple of variable
names.  Instances are treated as immutable.  Printing is canonical
(graded-lex, highest term first) and is read back by ``parse.parse_poly``.
"""

import math

from ..errors import FieldMismatch, InexactDivision


INF = math.inf


def _grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("field", "vars", "terms", "_hash")

    def __init__(self, field, vars, terms=None, trusted=False):
        self.field = field
        self.vars = tuple(vars)
        if terms is None:
            terms = {}
        if trusted:
            self.terms = terms
        else:
            n = len(self.vars)
            clean = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                c = field(c)
                if c:
                    clean[e] = c
            self.terms = clean
        self._hash = None

    # construction helpers --------------------------------------------------
    @classmethod
    def zero(cls, field, vars):
        return cls(field, vars, {}, trusted=True)

    @classmethod
    def const(cls, field, vars, c):
        c = field(c)
        n = len(vars)
        return cls(field, vars, {(0,) * n: c} if c else {}, trusted=True)

    @classmethod
    def var(cls, field, vars, name):
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(field, vars, {tuple(e): field.one}, trusted=True)

    @classmethod
    def monomial(cls, field, vars, exps, c=1):
        c = field(c)
        return cls(field, vars, {tuple(exps): c} if c else {}, trusted=True)

    def _new(self, terms):
        return MultiPoly(self.field, self.vars, terms, trusted=True)

    def _check(self, other):
        if self.vars != other.vars:
            raise FieldMismatch(f"variable lists differ: {self.vars} vs {other.vars}")
        if self.field is not other.field and self.field != other.field:
            raise FieldMismatch(f"fields differ: {self.field.name} vs {other.field.name}")

    def _lift(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(self.field, self.vars, other)

    # basic queries ---------------------------------------------------------
    @property
    def nvars(self):
        return len(self.vars)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def total_degree(self):
        if not self.terms:
            return -INF
        return max(sum(e) for e in self.terms)

    def origin_order(self):
        """Lowest total degree of a term; infinity for zero."""
        if not self.terms:
            return INF
        return min(sum(e) for e in self.terms)

    def degree(self, var):
        i = self.vars.index(var)
        if not self.terms:
            return -INF
        return max(e[i] for e in self.terms)

    def min_degree(self, var):
        i = self.vars.index(var)
        if not self.terms:
            return INF
        return min(e[i] for e in self.terms)

    def involves(self, var):
        i = self.vars.index(var)
        return any(e[i] for e in self.terms)

    def coeff(self, exps):
        return self.terms.get(tuple(exps), self.field.zero)

    def leading_term(self):
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = self._lift(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        c = self.field(c)
        if not c:
            return self._new({})
        return self._new({e: x * c for e, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        if len(self.terms) < len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        t = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return self._new({e: c for e, c in t.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        acc = MultiPoly.const(self.field, self.vars, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            k >>= 1
            if k:
                base = base * base
        return acc

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return self.exact_divide(other)
        return self.scale(1 / self.field(other))

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if self.vars != other.vars:
                return False
            if self.field != other.field:
                return False
            return self.terms == other.terms
        try:
            return self == self._lift(other)
        except (FieldMismatch, TypeError, ValueError):
            return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # structure ---------------------------------------------------------------
    def homogeneous_components(self):
        out = {}
        for e, c in self.terms.items():
            out.setdefault(sum(e), {})[e] = c
        return {d: self._new(t) for d, t in sorted(out.items())}

    def homogeneous_part(self, d):
        return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

    def initial_form(self):
        """Lowest-degree homogeneous component."""
        if not self.terms:
            return self
        return self.homogeneous_part(self.origin_order())

    def truncate(self, maxdeg):
        """Terms of total degree at most ``maxdeg``."""
        return self._new({e: c for e, c in self.terms.items() if sum(e) <= maxdeg})

    def map_coeffs(self, fn, field=None):
        field = field or self.field
        return MultiPoly(field, self.vars, {e: fn(c) for e, c in self.terms.items()})

    def change_field(self, field):
        return MultiPoly(field, self.vars, {e: field(c) for e, c in self.terms.items()})

    def with_vars(self, new_vars):
        """Embed into a larger (or reordered) variable list."""
        new_vars = tuple(new_vars)
        idx = []
        for i, v in enumerate(self.vars):
            if v not in new_vars:
                if any(e[i] for e in self.terms):
                    raise FieldMismatch(f"variable {v} missing from {new_vars}")
                idx.append(None)
            else:
                idx.append(new_vars.index(v))
        t = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in enumerate(e):
                if idx[i] is not None:
                    ne[idx[i]] = k
            t[tuple(ne)] = c
        return MultiPoly(self.field, new_vars, t, trusted=True)

    def as_univariate(self, var):
        """Coefficients in ``var``: dict power -> polynomial without ``var``."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: self._new(t) for k, t in out.items()}

    @classmethod
    def from_univariate(cls, coeffs, var, field, vars):
        vars = tuple(vars)
        i = vars.index(var)
        t = {}
        for k, p in coeffs.items():
            for e, c in p.terms.items():
                ne = e[:i] + (e[i] + k,) + e[i + 1:]
                v = t.get(ne)
                t[ne] = c if v is None else v + c
        return cls(field, vars, {e: c for e, c in t.items() if c}, trusted=True)

    def lc_in(self, var):
        u = self.as_univariate(var)
        return u[max(u)] if u else self

    def substitute(self, assignment):
        """Replace variables by polynomials (all over one common ring).

        ``assignment`` maps variable names to MultiPolys sharing a variable
        list; unassigned variables must be present in that list too.
        """
        targets = list(assignment.values())
        if not targets:
            return self
        tv = targets[0].vars
        field = targets[0].field
        images = []
        for v in self.vars:
            if v in assignment:
                images.append(assignment[v])
            else:
                images.append(MultiPoly.var(field, tv, v))
        result = MultiPoly.zero(field, tv)
        cache = [dict() for _ in images]

        def power(i, k):
            d = cache[i]
            if k not in d:
                d[k] = images[i] ** k if k < 2 or (k - 1) not in d else d[k - 1] * images[i]
            return d[k]

        acc = {}
        for e, c in self.terms.items():
            term = MultiPoly.const(field, tv, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term.terms.items():
                v = acc.get(te)
                acc[te] = tc if v is None else v + tc
        result = MultiPoly(field, tv, {e: c for e, c in acc.items() if c}, trusted=True)
        return result

    def evaluate(self, values):
        """Evaluate at field values given for every variable (dict or list)."""
        if isinstance(values, dict):
            values = [values[v] for v in self.vars]
        acc = self.field.zero
        for e, c in self.terms.items():
            term = c
            for x, k in zip(values, e):
                if k:
                    term = term * x ** k
            acc = acc + term
        return acc

    def partial_evaluate(self, var, value):
        i = self.vars.index(var)
        t = {}
        value = self.field(value)
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            x = c * value ** k if k else c
            v = t.get(ne)
            t[ne] = x if v is None else v + x
        return self._new({e: c for e, c in t.items() if c})

    def derivative(self, var):
        i = self.vars.index(var)
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                t[ne] = c * e[i]
        return self._new({e: c for e, c in t.items() if c})

    def divide_monomial(self, exps):
        """Exact division by a monomial; raises if some term is not divisible."""
        t = {}
        for e, c in self.terms.items():
            ne = tuple(a - b for a, b in zip(e, exps))
            if min(ne, default=0) < 0:
                raise InexactDivision(f"monomial {exps} does not divide {self}")
            t[ne] = c
        return self._new(t)

    def monic(self):
        if not self.terms:
            return self
        _, c = self.leading_term()
        return self.scale(1 / c)

    def exact_divide(self, other):
        """Exact quotient; raises InexactDivision if ``other`` does not divide."""
        q, r = self.divmod_lex(other)
        if r:
            raise InexactDivision(f"{other} does not divide {self}")
        return q

    def divmod_lex(self, other):
        """Multivariate division by one polynomial, lex leading terms."""
        if isinstance(other, MultiPoly):
            self._check(other)
        else:
            other = self._lift(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        le = max(other.terms)
        lc = other.terms[le]
        inv = 1 / lc
        rest = [(e, c) for e, c in other.terms.items() if e != le]
        p = dict(self.terms)
        q = {}
        r = {}
        while p:
            e = max(p)
            c = p.pop(e)
            d = tuple(a - b for a, b in zip(e, le))
            if min(d) < 0:
                r[e] = c
                continue
            f = c * inv
            q[d] = f
            for e2, c2 in rest:
                ne = tuple(a + b for a, b in zip(d, e2))
                v = p.get(ne)
                nv = -f * c2 if v is None else v - f * c2
                if nv:
                    p[ne] = nv
                else:
                    p.pop(ne, None)
        return self._new(q), self._new(r)

    # printing ----------------------------------------------------------------
    def _mono(self, e):
        parts = []
        for v, k in zip(self.vars, e):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = self._mono(e)
            s = self.field.fmt(c)
            comp = self.field.is_compound(c)
            neg = False
            if comp:
                body = f"({s})*{mono}" if mono else f"({s})"
            else:
                if s.startswith("-"):
                    neg, s = True, s[1:]
                if not mono:
                    body = s
                elif s == "1":
                    body = mono
                else:
                    body = f"{s}*{mono}"
            if not out:
                out.append(("-" if neg else "") + body)
            else:
                out.append((" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, vars={self.vars}, field={self.field.name})"
