"""Finite-dimensional linear algebra for ideals in a local ring at the origin.

Everything here works modulo a power of the maximal ideal: a polynomial is
cut down to its terms of total degree at most ``N`` and stored as a sparse
vector whose columns are ordered low degree first.  With that order the
echelon pivots sitting in degree ``N`` count exactly the degree-``N`` part of
the span, which is what Nakayama-type coverage tests need.
"""

from itertools import combinations_with_replacement

from .errors import TruncationExhausted
from .exactfield.algebra import gcd
from .exactfield.linalg import Echelon
from .exactfield.poly import INF, MultiPoly


def monomials_of_degree(nvars, d):
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def monomials_up_to(nvars, d):
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out


def count_monomials(nvars, d):
    """Number of monomials of total degree exactly d."""
    from math import comb
    return comb(d + nvars - 1, nvars - 1)


def as_vector(p, maxdeg=None):
    """Sparse vector of ``p`` keyed by (degree, exponent), optionally truncated."""
    out = {}
    for e, c in p.terms.items():
        d = sum(e)
        if maxdeg is None or d <= maxdeg:
            out[(d, e)] = c
    return out


def multiples_echelon(gens, maxdeg, extra_rows=()):
    """Echelon of all ``mu * g`` truncated at degree ``maxdeg``.

    ``mu`` runs over monomials with ``deg mu + ord g <= maxdeg``.
    """
    ech = Echelon()
    for g in gens:
        o = g.origin_order()
        if o == INF or o > maxdeg:
            continue
        items = [(e, c) for e, c in g.terms.items() if sum(e) <= maxdeg]
        for d in range(0, maxdeg - o + 1):
            for mu in monomials_of_degree(g.nvars, d):
                vec = {}
                for e, c in items:
                    ne = tuple(a + b for a, b in zip(e, mu))
                    nd = d + sum(e)
                    if nd <= maxdeg:
                        vec[(nd, ne)] = c
                if vec:
                    ech.add(vec)
    for row in extra_rows:
        ech.add(row)
    return ech


def pivots_by_degree(ech):
    out = {}
    for (d, _e) in ech.pivots():
        out[d] = out.get(d, 0) + 1
    return out


def covers_degree(ech, nvars, k):
    """True when every degree-k monomial lies in span + M^(k+1)."""
    return pivots_by_degree(ech).get(k, 0) == count_monomials(nvars, k)


def _unit_at_origin(p):
    return bool(p.constant_term())


def common_factor_at_origin(f, g):
    """True when f and g share a factor vanishing at the origin."""
    field = f.field
    if getattr(field, "is_function_field", False):
        from .exactfield.lift import lift_to_polynomial_ring
        F, G = lift_to_polynomial_ring([f, g])
        h = gcd(F, G)
        # origin here means the polynomial variables only; the field
        # generators stay generic
        for v in f.vars:
            h = h.partial_evaluate(v, 0)
        return not h
    h = gcd(f, g)
    return not _unit_at_origin(h)


def colength(gens, start=None, cap=64):
    """Length of R/J for J generated by ``gens`` in the local ring at 0.

    Returns ``INF`` when J is not primary to the maximal ideal (only
    detected for two generators, through their gcd).  The truncation degree
    grows from ``start`` until the maximal-ideal power is covered.
    """
    gens = [g for g in gens if g]
    if not gens:
        return INF
    if any(_unit_at_origin(g) for g in gens):
        return 0
    nvars = gens[0].nvars
    if len(gens) == 2 and common_factor_at_origin(gens[0], gens[1]):
        return INF
    if len(gens) < nvars:
        return INF
    orders = sorted(g.origin_order() for g in gens)
    N = start if start is not None else max(1, sum(orders[:nvars]) - 1)
    N = min(N, cap)
    while True:
        ech = multiples_echelon(gens, N)
        if covers_degree(ech, nvars, N):
            below = sum(c for d, c in pivots_by_degree(ech).items() if d < N)
            total = sum(count_monomials(nvars, d) for d in range(N))
            return total - below
        if N >= cap:
            break
        N = min(cap, N + max(1, N // 4))
    raise TruncationExhausted(f"maximal ideal power not reached below degree {cap}")
