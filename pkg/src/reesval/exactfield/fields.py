"""Exact coefficient fields.

Three kinds are supported:

* ``Q``: the rationals, elements are ``gmpy2.mpq``;
* number field towers ``Q(alpha)`` and ``Q(alpha)(beta)`` of total degree
  at most 8, elements are :class:`NFElement`;
* rational function fields ``Q(t)`` and ``Q(t, tstar)`` over the
  rationals, backed by sympy's sparse fraction field.

Fields compare equal when their descriptors agree, so two independently
built copies of ``Q(sqrt 2)`` interoperate.
"""

from fractions import Fraction
from itertools import product

from gmpy2 import mpq, mpz
from sympy.polys.domains import QQ
from sympy.polys.fields import FracField

from ..errors import (FieldMismatch, ReducibleMinimalPolynomial, TowerTooDeep,
                      UnsupportedConjugation, UntrustedMinimalPolynomial)
from . import linalg, upoly


def _to_mpq(x):
    if isinstance(x, (int, mpz)):
        return mpq(x)
    if type(x).__name__ == "mpq":
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    raise FieldMismatch(f"cannot read {x!r} as a rational number")


class Field:
    """Common interface of the coefficient fields."""

    name = "?"
    level = 0

    def __eq__(self, other):
        return isinstance(other, Field) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return self.name

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def gen_names(self):
        return ()

    def gen(self, name):
        raise KeyError(name)

    def is_compound(self, c):
        """True when ``c`` prints as a sum and needs brackets in a product."""
        return False

    def contains_field(self, other):
        """True when ``other`` embeds in this field via the obvious map."""
        return other == self or other.descriptor == ("Q",)


class RationalField(Field):
    name = "Q"
    descriptor = ("Q",)
    degree = 1
    is_rational = True
    is_function_field = False

    def __call__(self, x):
        if isinstance(x, NFElement):
            if any(x.c[1:]):
                raise FieldMismatch(f"{x} is not rational")
            return self(x.c[0])
        return _to_mpq(x)

    def fmt(self, c):
        c = mpq(c)
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def to_vector(self, c):
        return [mpq(c)]

    def from_vector(self, vec):
        return mpq(vec[0])

    def automorphisms(self):
        return [()]

    def apply_automorphism(self, sigma, c):
        return c

    def config(self):
        return "Q"


QQField = RationalField()


class NFElement:
    """Element of a number field, stored as coefficients over the base field."""

    __slots__ = ("field", "c")

    def __init__(self, field, coeffs):
        self.field = field
        self.c = tuple(coeffs)

    def _co(self, other):
        f = self.field
        if isinstance(other, NFElement):
            if other.field is f or other.field == f:
                return other
            if other.field.level > f.level:
                return None
        try:
            return f(other)
        except FieldMismatch:
            return None

    def __add__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return NFElement(self.field, [-a for a in self.c])

    def __sub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        f = self.field
        if isinstance(other, NFElement) and other.field.level < f.level:
            return NFElement(f, [a * other for a in self.c])
        if not isinstance(other, NFElement):
            try:
                s = f.base(other)
            except FieldMismatch:
                return NotImplemented
            return NFElement(f, [a * s for a in self.c])
        o = self._co(other)
        if o is None:
            return NotImplemented
        return f._mul(self.c, o.c)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in a number field")
        f = self.field
        g, s, _ = upoly.xgcd(upoly.trim(self.c), f.minpoly)
        if len(g) != 1:
            raise ReducibleMinimalPolynomial(f"{f.name}: zero divisor found")
        return f._from_list(s)

    def __truediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._co(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        acc = self.field.one
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __bool__(self):
        return any(bool(a) for a in self.c)

    def __eq__(self, other):
        o = self._co(other)
        if o is None:
            return False
        return all(a == b for a, b in zip(self.c, o.c))

    def __hash__(self):
        if not any(bool(a) for a in self.c[1:]):
            return hash(self.c[0])
        return hash((self.field.descriptor, self.c))

    def __repr__(self):
        return self.field.fmt(self)

    __str__ = __repr__


class NumberField(Field):
    """Simple algebraic extension ``base[x]/(minpoly)`` named ``name``.

    ``minpoly`` is a monic list of base field elements, lowest degree
    first.  Use :func:`number_field` to build one with validation.
    """

    is_rational = False
    is_function_field = False

    def __init__(self, base, name, minpoly):
        self.base = base
        self.gen_name = name
        self.minpoly = [base(c) for c in minpoly]
        if self.minpoly[-1] != 1:
            lead = self.minpoly[-1]
            self.minpoly = [c / lead for c in self.minpoly]
        self.rel_degree = len(self.minpoly) - 1
        self.degree = base.degree * self.rel_degree
        self.level = base.level + 1
        self.descriptor = (base.descriptor, name,
                           tuple(str(c) for c in self.minpoly))
        self.name = f"{base.name}({name})" if base.level == 0 else f"{base.name[:-1]},{name})"
        self.root = self
        n = self.rel_degree
        # reductions of x^k for n <= k <= 2n-2
        self._red = {}
        cur = [-c for c in self.minpoly[:-1]]
        for k in range(n, 2 * n - 1):
            self._red[k] = cur
            nxt = [base.zero] + cur[:-1]
            top = cur[-1]
            nxt = [a - top * m for a, m in zip(nxt, self.minpoly[:-1])]
            cur = nxt

    def __call__(self, x):
        if isinstance(x, NFElement):
            if x.field is self or x.field == self:
                return x
            if x.field.level < self.level:
                return NFElement(self, [self.base(x)] + [self.base.zero] * (self.rel_degree - 1))
            # narrow from a bigger field when possible
            if x.field.level > self.level:
                if any(x.c[1:]):
                    raise FieldMismatch(f"{x} does not lie in {self.name}")
                return self(x.c[0])
            raise FieldMismatch(f"{x.field.name} vs {self.name}")
        return NFElement(self, [self.base(x)] + [self.base.zero] * (self.rel_degree - 1))

    def _from_list(self, coeffs):
        coeffs = list(coeffs)
        n = self.rel_degree
        if len(coeffs) > n:
            coeffs = upoly.rem(coeffs, self.minpoly)
        coeffs = [self.base(c) for c in coeffs]
        return NFElement(self, coeffs + [self.base.zero] * (n - len(coeffs)))

    def _mul(self, a, b):
        n = self.rel_degree
        prod = [self.base.zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = prod[i + j] + x * y
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            ck = prod[k]
            if ck:
                out = [o + ck * r for o, r in zip(out, self._red[k])]
        return NFElement(self, out)

    def generator(self):
        z = self.base.zero
        return NFElement(self, [z, self.base.one] + [z] * (self.rel_degree - 2))

    def gen_names(self):
        return self.base.gen_names() + (self.gen_name,)

    def gen(self, name):
        if name == self.gen_name:
            return self.generator()
        return self(self.base.gen(name))

    def tower(self):
        out = []
        f = self
        while f.level > 0:
            out.append(f)
            f = f.base
        return out[::-1]

    def fmt(self, c):
        parts = []
        for k in range(self.rel_degree - 1, -1, -1):
            a = c.c[k]
            if not a:
                continue
            s = self.base.fmt(a)
            comp = self.base.is_compound(a)
            mon = "" if k == 0 else (self.gen_name if k == 1 else f"{self.gen_name}^{k}")
            if not mon:
                term = f"({s})" if comp and parts else s
            elif comp:
                term = f"({s})*{mon}"
            elif s == "1":
                term = mon
            elif s == "-1":
                term = "-" + mon
            else:
                term = f"{s}*{mon}"
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def is_compound(self, c):
        s = self.fmt(c)
        return (" + " in s) or (" - " in s)

    def to_vector(self, c):
        out = []
        for a in c.c:
            out.extend(self.base.to_vector(a))
        return out

    def from_vector(self, vec):
        step = self.base.degree
        coeffs = []
        for i in range(self.rel_degree):
            chunk = vec[i * step:(i + 1) * step]
            coeffs.append(self.base.from_vector(chunk))
        return NFElement(self, coeffs)

    def minimal_polynomial(self, c):
        """Monic minimal polynomial over Q of ``c``, lowest degree first."""
        vecs = []
        p = self.one
        for k in range(self.degree + 1):
            vecs.append([mpq(x) for x in self.to_vector(p)])
            # columns are the powers: solve sum a_k c^k = 0
            cols = list(zip(*vecs))
            ker = linalg.nullspace([list(r) for r in cols], len(vecs))
            if ker:
                v = ker[0]
                lead = v[-1]
                return [x / lead for x in v]
            p = p * c
        raise AssertionError("minimal polynomial search overran the degree")

    def _quadratic_rational_levels(self):
        out = []
        for f in self.tower():
            mp = f.minpoly
            if f.rel_degree != 2:
                return None
            try:
                out.append((QQField(mp[0]), QQField(mp[1])))
            except FieldMismatch:
                return None
        return out

    def automorphisms(self):
        """Automorphisms as tuples of sign flips, one per tower level.

        Only towers whose every level is a quadratic with rational
        coefficients are supported; the flip sends the generator to its
        conjugate root ``-b - alpha``.
        """
        levels = self._quadratic_rational_levels()
        if levels is None:
            raise UnsupportedConjugation(
                f"conjugates over {self.name} need quadratic levels with rational coefficients")
        return list(product((False, True), repeat=len(levels)))

    def apply_automorphism(self, sigma, c):
        if not sigma:
            return c
        base_sigma = sigma[:-1]
        a = [self.base.apply_automorphism(base_sigma, x) for x in c.c]
        if sigma[-1]:
            b = self.minpoly[1]
            conj_gen = -b - self.generator()
            return self(a[0]) + self(a[1]) * conj_gen
        return NFElement(self, a)

    def config(self):
        tower = []
        for f in self.tower():
            mp = " + ".join(f"({f.base.fmt(c)})*{f.gen_name}^{k}" for k, c in enumerate(f.minpoly) if c)
            tower.append({"name": f.gen_name, "minpoly": mp})
        return {"tower": tower}


def number_field(base, name, minpoly, assume_irreducible=False):
    """Build and validate a simple extension of ``base``.

    Minimal polynomials of degree at most 4 are checked for irreducibility:
    over Q by rational-root and resolvent tests, over a number field by
    testing a primitive element of the would-be extension.  Higher degrees
    need ``assume_irreducible``.
    """
    if base.level >= 2:
        raise TowerTooDeep("towers are limited to two levels")
    if getattr(base, "is_function_field", False):
        raise FieldMismatch("algebraic extensions of function fields are not supported")
    mp = upoly.trim([base(c) for c in minpoly])
    n = len(mp) - 1
    if n < 1:
        raise ReducibleMinimalPolynomial("minimal polynomial must have degree >= 1")
    if base.degree * n > 8:
        raise TowerTooDeep("total degree over Q is limited to 8")
    field = NumberField(base, name, mp)
    if n == 1:
        return field
    if n > 4:
        if not assume_irreducible:
            raise UntrustedMinimalPolynomial(
                f"degree {n} minimal polynomial needs assume_irreducible")
        return field
    if base.level == 0:
        if not upoly.is_irreducible_rational(field.minpoly):
            raise ReducibleMinimalPolynomial(f"{name}: minimal polynomial is reducible over Q")
        return field
    if not _tower_is_field(field):
        if assume_irreducible:
            raise ReducibleMinimalPolynomial(f"{name}: minimal polynomial is reducible")
        raise ReducibleMinimalPolynomial(f"{name}: minimal polynomial is reducible over {base.name}")
    return field


def _irreducible_over_q(poly):
    if len(poly) - 1 <= 4:
        return upoly.is_irreducible_rational(poly)
    # degrees 6 and 8 only arise from two-level towers
    import sympy
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * x ** k
               for k, c in enumerate(poly))
    _, factors = sympy.factor_list(expr, x)
    return len(factors) == 1 and factors[0][1] == 1


def _tower_is_field(field):
    # The algebra is a field iff some element has an irreducible minimal
    # polynomial over Q of full degree; beta + k*alpha works for almost all k.
    N = field.degree
    beta = field.generator()
    alpha = field(field.base.generator())
    for k in range(N * (N - 1) // 2 + 2):
        theta = beta + alpha * k
        try:
            mp = field.minimal_polynomial(theta)
        except ReducibleMinimalPolynomial:
            return False
        if len(mp) - 1 < N:
            continue
        return _irreducible_over_q(mp)
    return False


class RationalFunctionField(Field):
    """``Q(t)`` or ``Q(t, tstar)`` with sympy fraction field elements."""

    is_rational = False
    is_function_field = True
    degree = None

    def __init__(self, names):
        self.names = tuple(names)
        self._K = FracField(self.names, QQ)
        self._gens = dict(zip(self.names, self._K.gens))
        self.descriptor = ("RF", self.names)
        self.name = "Q(" + ",".join(self.names) + ")"

    def __call__(self, x):
        if hasattr(x, "field") and x.field is self._K:
            return x
        if hasattr(x, "numer") and hasattr(x, "denom") and hasattr(x, "field"):
            if tuple(str(s) for s in x.field.symbols) == self.names:
                return self._K(x.as_expr())
        if isinstance(x, NFElement):
            x = QQField(x)
        return self._K(_to_mpq(x))

    def gen_names(self):
        return self.names

    def gen(self, name):
        return self._gens[name]

    def _fmt_poly(self, p):
        terms = sorted(p.terms(), key=lambda tc: (sum(tc[0]), tc[0]), reverse=True)
        parts = []
        for exps, c in terms:
            mon = "*".join(n if e == 1 else f"{n}^{e}"
                           for n, e in zip(self.names, exps) if e)
            s = QQField.fmt(c)
            if not mon:
                term = s
            elif s == "1":
                term = mon
            elif s == "-1":
                term = "-" + mon
            else:
                term = f"{s}*{mon}"
            parts.append(term)
        if not parts:
            return "0"
        out = parts[0]
        for t in parts[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def fmt(self, c):
        num, den = c.numer, c.denom
        if den.is_ground:
            num = num.quo_ground(den.LC) if hasattr(num, "quo_ground") else num * (1 / den.LC)
            return self._fmt_poly(num)
        return f"({self._fmt_poly(num)})/({self._fmt_poly(den)})"

    def is_compound(self, c):
        s = self.fmt(c)
        return (" + " in s) or (" - " in s) or ("/(" in s)

    def contains_field(self, other):
        return other == self or other.descriptor == ("Q",) or (
            isinstance(other, RationalFunctionField) and set(other.names) <= set(self.names))

    def config(self):
        return "Q(" + ",".join(self.names) + ")"


def function_field(*names):
    return RationalFunctionField(names)


def common_field(a, b):
    """Smallest of two fields containing the other, else FieldMismatch."""
    if a == b:
        return a
    if a.contains_field(b) or _extends(a, b):
        return a
    if b.contains_field(a) or _extends(b, a):
        return b
    raise FieldMismatch(f"fields {a.name} and {b.name} are incompatible")


def _extends(big, small):
    f = big
    while f.level > small.level:
        f = f.base
    return f == small


def field_from_config(cfg):
    """Read a field declaration as used in scenario files."""
    if cfg is None or cfg == "Q":
        return QQField
    if isinstance(cfg, str):
        s = cfg.replace(" ", "")
        if s.startswith("Q(") and s.endswith(")"):
            return function_field(*s[2:-1].split(","))
        raise FieldMismatch(f"unknown field {cfg!r}")
    if isinstance(cfg, dict):
        if "transcendentals" in cfg:
            return function_field(*cfg["transcendentals"])
        from .parse import parse_poly
        field = QQField
        trust = bool(cfg.get("assume_irreducible", False))
        for level in cfg.get("tower", []):
            name = level["name"]
            mp = level["minpoly"]
            if isinstance(mp, str):
                p = parse_poly(mp, field, (name,))
                coeffs = [p.terms.get((k,), field.zero) for k in range(p.total_degree() + 1)]
            else:
                coeffs = [field(c) for c in mp]
            field = number_field(field, name, coeffs, assume_irreducible=trust)
        return field
    raise FieldMismatch(f"unknown field declaration {cfg!r}")
