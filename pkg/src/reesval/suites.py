"""Seeded generators for the randomized property suites.

Every generator takes a ``random.Random`` (or a seed) and returns plain
JSON-friendly data, so a suite can be written to a scenario file and rerun
bit for bit.  Objects are built from that data by the usual config readers.
"""

import random

from .errors import NotPrimary, ReesvalError, RootOutsideField
from .exactfield.fields import QQField, field_from_config

SQRT2 = {"tower": [{"name": "alpha", "minpoly": "alpha^2 - 2"}]}

_CONSTANTS = ["0", "0", "1", "-1", "2", "-2", "1/2"]


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def _term(c, mono):
    a, b = mono
    parts = []
    if a:
        parts.append("X" if a == 1 else f"X^{a}")
    if b:
        parts.append("Y" if b == 1 else f"Y^{b}")
    body = "*".join(parts) or "1"
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def _poly_text(terms):
    out = ""
    for c, mono in terms:
        t = _term(c, mono)
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out or "0"


# -- chains ------------------------------------------------------------------

def random_steps(rng, max_depth=5, extension=False):
    """Steps of a random chain; with ``extension`` one constant involves alpha."""
    rng = _rng(rng)
    n = rng.randint(2 if extension else 1, max_depth)
    steps = ["Free(0)"]
    for _ in range(1, n):
        if rng.random() < 0.3:
            steps.append("inf")
        else:
            steps.append(f"Free({rng.choice(_CONSTANTS)})")
    if extension:
        i = rng.randint(1, n - 1)
        a = rng.choice(["", "1", "-1"])
        sign = rng.choice(["+", "-"])
        if a:
            steps[i] = f"Free({a} {sign} alpha)"
        else:
            steps[i] = "Free(alpha)" if sign == "+" else "Free(-alpha)"
    return steps


def extend_steps(rng, prefix, max_depth=5):
    rng = _rng(rng)
    steps = list(prefix)
    n = rng.randint(len(steps), max_depth)
    while len(steps) < n:
        steps.append("inf" if rng.random() < 0.3 else f"Free({rng.choice(_CONSTANTS)})")
    return steps


def valuation_pairs(seed, count, max_depth=5, extension_rate=0.2):
    """Pairs of valuation configs, often sharing a prefix of points."""
    rng = _rng(seed)
    out = []
    for _ in range(count):
        ext = rng.random() < extension_rate
        field = SQRT2 if ext else "Q"
        V = random_steps(rng, max_depth, extension=ext)
        if rng.random() < 0.6:
            k = rng.randint(1, len(V))
            W = extend_steps(rng, V[:k], max_depth)
        else:
            W = random_steps(rng, max_depth)
        if rng.random() < 0.5:
            V, W = W, V
        out.append(({"field": field, "steps": V}, {"field": field, "steps": W}))
    return out


# -- complete ideals -------------------------------------------------------------

def _spec_components(rng, field_cfg, max_depth, ext, max_parts=3):
    from .contact import _same_class
    from .plane import PlaneValuation, PointSequence
    field = field_from_config(field_cfg)
    comps = []
    vals = []
    want = rng.randint(1, max_parts)
    tries = 0
    while len(comps) < want and tries < 20:
        tries += 1
        steps = random_steps(rng, max_depth, extension=ext and not comps)
        V = PlaneValuation(PointSequence(steps, field))
        if any(_same_class(V, W) for W in vals):
            continue
        vals.append(V)
        comps.append({"steps": steps, "n": rng.randint(1, 3)})
    return comps


def ideal_spec_pairs(seed, count, max_depth=5, min_extension=10):
    """Pairs (I, J) of complete-ideal specs; at least ``min_extension`` use alpha."""
    rng = _rng(seed)
    out = []
    for k in range(count):
        ext = k < min_extension or rng.random() < 0.15
        field = SQRT2 if ext else "Q"
        I = _spec_components(rng, field, max_depth, ext)
        J = _spec_components(rng, field, max_depth, False)
        out.append({"field": field, "I": I, "J": J})
    return out


# -- pencils ---------------------------------------------------------------------

_MONOS = [(a, b) for a in range(5) for b in range(5) if 1 <= a + b <= 4]


def random_member(rng, max_order=3):
    rng = _rng(rng)
    while True:
        k = rng.randint(1, 3)
        monos = rng.sample(_MONOS, k)
        if min(a + b for a, b in monos) <= max_order:
            break
    monos.sort(key=lambda e: (-(e[0] + e[1]), e))
    return _poly_text([(rng.choice([1, 1, -1, 2, -2]), m) for m in monos])


def _pencil_ok(F, G, max_depth):
    from .pencil import Pencil, resolve, zariski_exponents
    try:
        pen = Pencil(F, G)
        tree = resolve(pen)
        if tree.depth() > max_depth:
            return False
        zariski_exponents(pen, tree)
    except (NotPrimary, RootOutsideField):
        return False
    except ReesvalError:
        return False
    return True


def random_pencil(rng, max_order=3, max_depth=4):
    rng = _rng(rng)
    while True:
        F = random_member(rng, max_order)
        G = random_member(rng, max_order)
        if F != G and _pencil_ok(F, G, max_depth):
            return F, G


def pencil_quadruples(seed, count, max_order=3, max_depth=4):
    rng = _rng(seed)
    out = []
    for _ in range(count):
        F, G = random_pencil(rng, max_order, max_depth)
        Fs, Gs = random_pencil(rng, max_order, max_depth)
        out.append({"F": F, "G": G, "Fstar": Fs, "Gstar": Gs})
    return out


def y_general_pairs(seed, count):
    """Pairs meeting only at the origin near X = 0, in Y-general position."""
    from .contact import _y_general
    from .exactfield.parse import parse_poly
    from .local import common_factor_at_origin
    rng = _rng(seed)
    out = []
    while len(out) < count:
        f = random_member(rng, 3)
        g = random_member(rng, 3)
        pf = parse_poly(f, QQField, ("X", "Y"))
        pg = parse_poly(g, QQField, ("X", "Y"))
        if common_factor_at_origin(pf, pg) or not _y_general(pf, pg):
            continue
        out.append((f, g))
    return out


# -- hypersurface families -----------------------------------------------------------

def _linear_text(coeffs, names):
    return _poly_text_general([(c, {n: 1}) for c, n in zip(coeffs, names) if c])


def _poly_text_general(terms):
    out = ""
    for c, mono in terms:
        body = "*".join(n if k == 1 else f"{n}^{k}" for n, k in mono.items() if k) or "1"
        t = body if c == 1 else ("-" + body if c == -1 else f"{c}*{body}")
        if not out:
            out = t
        elif t.startswith("-"):
            out += " - " + t[1:]
        else:
            out += " + " + t
    return out or "0"


def random_family(rng, d=2, max_m=6, with_extras=True):
    """Config of an admissible family: distinct lines plus extras in F*C."""
    from .hypersurface import HypersurfaceFamily, x_names
    from .local import monomials_of_degree
    rng = _rng(rng)
    names = x_names(d)
    while True:
        h = rng.randint(1, min(3, max_m - 1))
        m = rng.randint(h + 1, max_m)
        forms = []
        for _ in range(h):
            coeffs = [rng.randint(-2, 2) for _ in range(d)]
            if any(coeffs):
                forms.append(_linear_text(coeffs, names))
        extras = []
        if with_extras:
            for _ in range(rng.randint(1, 2)):
                i = rng.randint(h, m - 1)
                F = "*".join(f"({f})" for f in forms)
                if i == len(forms):
                    extras.append([i, f"{rng.choice([2, -1, 3])}*{F}"])
                else:
                    cvars = names + ("Z",)
                    monos = rng.sample(monomials_of_degree(d + 1, i - len(forms)),
                                       min(2, len(monomials_of_degree(d + 1, i - len(forms)))))
                    cof = _poly_text_general([(rng.choice([1, -1, 2]), dict(zip(cvars, e)))
                                              for e in monos])
                    extras.append([i, f"({cof})*{F}"])
        cfg = {"d": d, "m": m, "forms": forms, "extras": extras}
        try:
            HypersurfaceFamily(d, m, forms, [tuple(e) for e in extras])
        except ReesvalError:
            continue
        return cfg


def families(seed, count, d=2, max_m=6):
    rng = _rng(seed)
    return [random_family(rng, d, max_m) for _ in range(count)]


# -- scenario files ---------------------------------------------------------------

SUITE_KINDS = ("hypersurface", "contact", "theorem", "ideal", "intersect")


def emit_suite(kind, seed, count):
    """A scenario dict holding ``count`` generated jobs of the given kind."""
    if count > 10000:
        raise ValueError("count is limited to 10000")
    jobs = []
    if kind == "hypersurface":
        for cfg in families(seed, count):
            job = {"kind": "hypersurface-verify", "p_max": 2}
            job.update(cfg)
            jobs.append(job)
    elif kind == "contact":
        for V, W in valuation_pairs(seed, count):
            jobs.append({"kind": "contact", "field": _field_name(V["field"]),
                         "V": {"steps": V["steps"]}, "W": {"steps": W["steps"]},
                         "method": "both"})
    elif kind == "theorem":
        for q in pencil_quadruples(seed, count):
            job = {"kind": "theorem-check", "check": "4.6.1"}
            job.update(q)
            jobs.append(job)
    elif kind == "ideal":
        for p in ideal_spec_pairs(seed, count, min_extension=min(10, count)):
            jobs.append({"kind": "theorem-check", "check": "4.6.2", "field": _field_name(p["field"]),
                         "I": p["I"], "J": p["J"]})
    elif kind == "intersect":
        for f, g in y_general_pairs(seed, count):
            jobs.append({"kind": "intersect", "f": f, "g": g})
    else:
        raise ValueError(f"unknown suite kind {kind!r}; expected one of {', '.join(SUITE_KINDS)}")
    return {"seed": seed, "field": "Q", "fields": {"sqrt2": SQRT2}, "jobs": jobs}


def _field_name(cfg):
    return "sqrt2" if cfg == SQRT2 else cfg
