"""Dense univariate polynomials over an exact field.

A polynomial is a list of coefficients, lowest degree first, with no
trailing zeros.  The zero polynomial is the empty list.  These helpers are
the workhorse for number field arithmetic and root finding; the sparse
multivariate class lives in ``poly.py``.
"""

from fractions import Fraction
from math import gcd as igcd

from gmpy2 import mpq, mpz


def trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def degree(a):
    return len(a) - 1 if a else -1


def add(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(x + y)
    return trim(out)


def neg(a):
    return [-x for x in a]


def sub(a, b):
    return add(a, neg(b))


def scale(a, c):
    if not c:
        return []
    return trim([x * c for x in a])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim(out)


def divmod_(a, b):
    """Euclidean division over a field; ``b`` must be nonzero."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    if len(a) - 1 < db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = a[k + j] - c * b[j]
    return trim(q), trim(a[:db])


def rem(a, b):
    return divmod_(a, b)[1]


def monic(a):
    if not a:
        return []
    inv = 1 / a[-1]
    return [x * inv for x in a]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def xgcd(a, b):
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    inv = 1 / r0[-1]
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def derivative(a):
    return trim([a[i] * i for i in range(1, len(a))])


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def squarefree_part(a):
    a = trim(a)
    if len(a) <= 1:
        return monic(a)
    g = gcd(a, derivative(a))
    return monic(divmod_(a, g)[0])


# -- rational specifics -------------------------------------------------------

def _divisors(n):
    n = abs(int(n))
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def integer_primitive(a):
    """Scale a rational polynomial to coprime integer coefficients."""
    den = 1
    for c in a:
        c = Fraction(int(mpq(c).numerator), int(mpq(c).denominator))
        den = den * c.denominator // igcd(den, c.denominator)
    ints = [int(mpq(c) * den) for c in a]
    g = 0
    for x in ints:
        g = igcd(g, x)
    g = g or 1
    ints = [x // g for x in ints]
    if ints and ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def rational_roots(a):
    """Distinct rational roots of a rational polynomial, sorted."""
    a = trim(a)
    if not a:
        raise ValueError("zero polynomial has every root")
    roots = set()
    while a and not a[0]:
        roots.add(mpq(0))
        a = a[1:]
    if len(a) <= 1:
        return sorted(roots)
    ints = integer_primitive(squarefree_part(a))
    lead, const = ints[-1], ints[0]
    for p in _divisors(const):
        for q in _divisors(lead):
            for s in (1, -1):
                r = mpq(s * p, q)
                if r not in roots and evaluate(ints, r) == 0:
                    roots.add(r)
    return sorted(roots)


def _is_rational_square(x):
    x = mpq(x)
    if x < 0:
        return None
    n, d = mpz(x.numerator), mpz(x.denominator)
    from gmpy2 import is_square, isqrt
    if is_square(n) and is_square(d):
        return mpq(isqrt(n), isqrt(d))
    return None


def is_irreducible_rational(a):
    """Irreducibility over Q for degree at most 4.

    Degrees 2 and 3 reduce to a rational root test.  For quartics the
    quadratic splitting is decided through the resolvent cubic.
    """
    a = monic([mpq(c) for c in trim(a)])
    n = len(a) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if n > 4:
        raise ValueError("rational irreducibility test handles degree <= 4")
    if rational_roots(a):
        return False
    if n <= 3:
        return True
    # depress: x = y - a3/4
    a3 = a[3]
    shift = -a3 / 4
    # expand a(y + shift)
    dep = [mpq(0)] * 5
    binom = [[1], [1, 1], [1, 2, 1], [1, 3, 3, 1], [1, 4, 6, 4, 1]]
    for k, c in enumerate(a):
        for j in range(k + 1):
            dep[j] += c * binom[k][j] * shift ** (k - j)
    r, q, p = dep[0], dep[1], dep[2]
    if q:
        # (y^2+sy+u)(y^2-sy+v) needs S = s^2 a rational root of the resolvent
        cubic = [-q * q, p * p - 4 * r, 2 * p, mpq(1)]
        for S in rational_roots(cubic):
            if S > 0 and _is_rational_square(S) is not None:
                return False
        return True
    # biquadratic y^4 + p y^2 + r
    if _is_rational_square(p * p - 4 * r) is not None:
        return False
    for u in (_is_rational_square(r),):
        if u is None:
            continue
        for uu in (u, -u):
            if uu and _is_rational_square(2 * uu - p) is not None:
                return False
    return True
