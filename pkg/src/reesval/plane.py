"""Prime divisors of the plane given by chains of infinitely near points.

A chain is a list of steps.  Step 1 is always ``Free(0)`` and names the
origin itself.  Step ``i >= 2`` locates the next point on the exceptional
line created by blowing up the previous one:

* ``Free(c)`` is the point ``v = c`` of the first chart, i.e. the direction
  of slope ``c`` measured in the current local coordinates;
* ``AtInfinity`` is the remaining point ``u = 0`` of the second chart.

The valuation of the chain is the order along the exceptional line of the
last point.  Local coordinates ``(u, v)`` are carried along; after each
step the newest exceptional line is ``u = 0``.
"""

from .errors import (ConstantOutsideField, DegenerateConstant, FieldMismatch,
                     NotAnInfinitelyNearPoint, NotUnitOrder, UnknownSymbol)
from .exactfield.algebra import resultant
from .exactfield.fields import QQField, common_field
from .exactfield.linalg import Echelon
from .exactfield.parse import parse_element, parse_poly
from .exactfield.poly import INF, MultiPoly

CHART = ("u", "v")


class Free:
    """A free direction ``v = c`` on the newest exceptional line."""

    __slots__ = ("c",)

    def __init__(self, c=0):
        self.c = c

    def __eq__(self, other):
        return isinstance(other, Free) and self.c == other.c

    def __hash__(self):
        return hash(("Free", self.c))

    def __repr__(self):
        return f"Free({self.c})"


class _AtInfinity:
    """The point of the newest exceptional line not seen by the first chart."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "AtInfinity"

    def __reduce__(self):
        return (_AtInfinity, ())


AtInfinity = _AtInfinity()


def transition(p, step):
    """Pull a chart polynomial in (u, v) back to the chart of the next point."""
    u = MultiPoly.var(p.field, CHART, "u")
    v = MultiPoly.var(p.field, CHART, "v")
    if step is AtInfinity:
        return p.substitute({"u": u * v, "v": u})
    return p.substitute({"u": u, "v": u * (v + step.c)})


def parse_step(obj, field=QQField):
    """Read a step from text or JSON: ``"Free(1/2)"``, ``"inf"``, ``{"free": "alpha"}``."""
    try:
        return _parse_step(obj, field)
    except (UnknownSymbol, FieldMismatch) as e:
        raise ConstantOutsideField(f"step {obj!r} does not lie in {field.name}: {e}") from None


def _parse_step(obj, field):
    if obj is AtInfinity or isinstance(obj, Free):
        return obj if obj is AtInfinity else Free(field(obj.c) if not isinstance(obj.c, str)
                                                    else parse_element(obj.c, field))
    if isinstance(obj, dict):
        if "free" in obj:
            return Free(parse_element(str(obj["free"]), field))
        if obj.get("at_infinity") or obj.get("infinity"):
            return AtInfinity
        raise NotAnInfinitelyNearPoint(f"unknown step {obj!r}")
    s = str(obj).strip()
    if s.lower() in ("inf", "infinity", "atinfinity", "at_infinity", "∞"):
        return AtInfinity
    if s.startswith("Free(") and s.endswith(")"):
        return Free(parse_element(s[5:-1], field))
    return Free(parse_element(s, field))


def step_config(step, field):
    if step is AtInfinity:
        return "AtInfinity"
    return f"Free({field.fmt(step.c)})"


class PointSequence:
    """A chain of infinitely near points with its chart data and proximity."""

    def __init__(self, steps, field=QQField):
        steps = [parse_step(s, field) for s in steps]
        if not steps:
            raise NotAnInfinitelyNearPoint("a chain needs at least the origin")
        if not (isinstance(steps[0], Free) and not steps[0].c):
            raise NotAnInfinitelyNearPoint("the first step must be Free(0), the origin")
        self.field = field
        self.steps = tuple(steps)
        self.n = len(steps)
        u = MultiPoly.var(field, CHART, "u")
        v = MultiPoly.var(field, CHART, "v")
        phi_x, phi_y = u, v
        other = None
        prox = [frozenset()]
        for i in range(1, self.n):
            st = self.steps[i]
            phi_x, phi_y = transition(phi_x, st), transition(phi_y, st)
            if st is AtInfinity:
                other = i - 2 if i >= 2 else None
            elif st.c:
                other = None
            near = {i - 1}
            if other is not None:
                near.add(other)
            prox.append(frozenset(near))
        self.phi = (phi_x, phi_y)
        self.proximity = tuple(prox)

    def multiplicities(self):
        """Multiplicities forced by the proximity equalities, last one 1."""
        m = [0] * self.n
        m[-1] = 1
        for i in range(self.n - 2, -1, -1):
            m[i] = sum(m[j] for j in range(i + 1, self.n) if i in self.proximity[j])
        return tuple(m)

    def satellite_flags(self):
        return tuple(len(p) == 2 for p in self.proximity)

    def constants(self):
        return [s.c for s in self.steps[1:] if isinstance(s, Free)]

    def prefix_equal(self, other, k):
        """True when the first k steps agree (over a common field)."""
        if self.n < k or other.n < k:
            return False
        return all(_step_eq(a, b) for a, b in zip(self.steps[:k], other.steps[:k]))

    def __repr__(self):
        return "[" + ", ".join(repr(s) for s in self.steps) + "]"


def _step_eq(a, b):
    if a is AtInfinity or b is AtInfinity:
        return a is b
    return a.c == b.c


def _field_degree_generated(field, constants):
    """Degree over Q of the field generated by ``constants``."""
    if field.is_rational or field.degree == 1:
        return 1
    ech = Echelon()
    basis = []

    def push(x):
        vec = {i: c for i, c in enumerate(field.to_vector(x)) if c}
        if ech.add(vec) is not None:
            basis.append(x)
            return True
        return False

    push(field.one)
    changed = True
    while changed:
        changed = False
        for c in constants:
            for b in list(basis):
                if push(c * b):
                    changed = True
    return len(basis)


class PlaneValuation:
    """Order function of the last exceptional line of a chain."""

    def __init__(self, seq, name=None):
        if not isinstance(seq, PointSequence):
            seq = PointSequence(seq)
        self.seq = seq
        self.field = seq.field
        self.name = name
        self.mult = seq.multiplicities()
        self.chi = _field_degree_generated(self.field, seq.constants())

    @classmethod
    def from_steps(cls, steps, field=QQField, name=None):
        return cls(PointSequence(steps, field), name=name)

    @property
    def n(self):
        return self.seq.n

    @property
    def steps(self):
        return self.seq.steps

    def _prepare(self, f):
        if len(f.vars) != 2:
            raise FieldMismatch("plane valuations act on polynomials in two variables")
        field = common_field(self.field, f.field)
        if field != f.field:
            f = f.change_field(field)
        phi = [p if field == self.field else p.change_field(field) for p in self.seq.phi]
        return f, phi, field

    def value(self, f):
        """Order of ``f`` along the last exceptional line (total transform)."""
        if not f:
            return INF
        f, phi, _ = self._prepare(f)
        x, y = f.vars
        g = f.with_vars((x, y)).substitute({x: phi[0], y: phi[1]})
        return g.origin_order()

    def point_multiplicities(self, f):
        """Multiplicities of the strict transforms of ``f`` at the chain points."""
        f, _, field = self._prepare(f)
        x, y = f.vars
        u = MultiPoly.var(field, CHART, "u")
        v = MultiPoly.var(field, CHART, "v")
        cur = f.substitute({x: u, y: v})
        out = []
        for i in range(self.n):
            e = cur.origin_order()
            out.append(e)
            if i + 1 < self.n:
                st = self.steps[i + 1]
                if st is not AtInfinity and field != self.field:
                    st = Free(field(st.c))
                cur = transition(cur, st).divide_monomial((e, 0))
        return tuple(out)

    def noether_value(self, f):
        """Value via the sum of multiplicity products along the chain."""
        if not f:
            return INF
        return sum(a * b for a, b in zip(self.mult, self.point_multiplicities(f)))

    def conjugate(self, sigma):
        """Image of the chain under a field automorphism."""
        F = self.field
        steps = [s if s is AtInfinity else Free(F.apply_automorphism(sigma, s.c))
                 for s in self.steps]
        return PlaneValuation(PointSequence(steps, F), name=self.name)

    def with_field(self, field):
        if field == self.field:
            return self
        steps = [s if s is AtInfinity else Free(field(s.c)) for s in self.steps]
        return PlaneValuation(PointSequence(steps, field), name=self.name)

    def config(self):
        return {"steps": [step_config(s, self.field) for s in self.steps],
                "field": self.field.config()}

    def __repr__(self):
        tag = f"{self.name}: " if self.name else ""
        return f"<{tag}{self.seq!r} m={self.mult} chi={self.chi}>"


def valuation_from_config(cfg, field=QQField):
    from .exactfield.fields import field_from_config
    if isinstance(cfg, PlaneValuation):
        return cfg
    if isinstance(cfg, dict):
        if "field" in cfg:
            field = field_from_config(cfg["field"])
        return PlaneValuation(PointSequence(cfg["steps"], field), name=cfg.get("name"))
    return PlaneValuation(PointSequence(cfg, field))


def order_valuation(field=QQField):
    """The order function of the local ring itself."""
    return PlaneValuation(PointSequence([Free(0)], field), name="ord")


# -- curvettes ----------------------------------------------------------------

class Curvette:
    """A smooth branch through the chain, transversal to the last line."""

    def __init__(self, valuation, c_star, param, equation):
        self.valuation = valuation
        self.c_star = c_star
        self.param = param
        self.equation = equation

    def __repr__(self):
        return f"Curvette({self.equation}, c*={self.c_star})"


def extension_constants(V, others):
    """Constants c such that some chain in ``others`` continues V by Free(c)."""
    bad = []
    for W in others:
        if W.n > V.n and W.seq.prefix_equal(V.seq, V.n):
            st = W.steps[V.n]
            if st is not AtInfinity:
                bad.append(st.c)
    return bad


def _series_mul(a, b, K):
    out = [0] * (K + 1)
    for i, x in enumerate(a[:K + 1]):
        if not x:
            continue
        for j, y in enumerate(b[:K + 1 - i]):
            out[i + j] = out[i + j] + x * y
    return out


def _series_eval(poly, tau, K, field):
    """Substitute the series ``tau`` into a dense polynomial (Horner)."""
    acc = [field.zero] * (K + 1)
    for c in reversed(poly):
        acc = _series_mul(acc, tau, K)
        acc[0] = acc[0] + c
    return acc


def _series_root_inverse(w, m, K, field):
    """(1 + w)^(-1/m) for a series w without constant term."""
    alpha = QQField(-1) / m
    out = [field.zero] * (K + 1)
    out[0] = field.one
    power = [field.one] + [field.zero] * K
    binom = QQField(1)
    for k in range(1, K + 1):
        power = _series_mul(power, w, K)
        binom = binom * (alpha - (k - 1)) / k
        if not any(power):
            break
        out = [o + p * binom for o, p in zip(out, power)]
    return out


def _dense(p, field):
    if not p:
        return []
    deg = p.total_degree()
    return [p.terms.get((k,), field.zero) for k in range(deg + 1)]


def curvette(V, c_star=None, avoid=(), vars=("X", "Y"), precision=None):
    """Equation of a curvette of ``V``: a smooth branch at the last point.

    The branch is the line ``v = c_star * u`` of the last chart.  It is
    reparametrised so that its lead coordinate is exactly ``a * s^m``
    (m = multiplicity at the origin), which vanishes only at ``s = 0``; the
    other coordinate is truncated at ``precision`` and the germ is
    implicitised by a resultant in ``s``.  Truncating high enough keeps the
    whole chain plus the next free point, which is all any valuation that
    does not pass through that point can see.

    ``c_star`` must be nonzero (zero may run along an older exceptional
    line) and must avoid ``avoid``, where other chains of interest continue.
    """
    field = V.field
    bad = [field(0)] + [field(a) for a in avoid]
    if c_star is None:
        k = 1
        while True:
            for cand in (k, -k):
                if field(cand) not in bad:
                    c_star = field(cand)
                    break
            else:
                k += 1
                continue
            break
    else:
        c_star = field(c_star)
        if c_star in bad:
            raise DegenerateConstant(f"c* = {c_star} is degenerate for this chain")
    tv = ("tau",)
    tau = MultiPoly.var(field, tv, "tau")
    px, py = (p.substitute({"u": tau, "v": tau * c_star}) for p in V.seq.phi)
    m = V.mult[0]
    if px.origin_order() == m:
        lead, other, lv, ov = px, py, vars[0], vars[1]
    else:
        lead, other, lv, ov = py, px, vars[1], vars[0]
    assert lead.origin_order() == m
    K = precision or (2 * sum(x * x for x in V.mult) + 2 * m + 4)
    L = _dense(lead, field)
    a = L[m]
    w = [field.zero] * (K + 1)
    for i, c in enumerate(L[m + 1:], start=1):
        if i <= K:
            w[i] = c / a
    # solve lead(tau(s)) = a s^m by fixed point: tau = s * (1 + w(tau))^(-1/m)
    ts = [field.zero, field.one] + [field.zero] * (K - 1)
    for _ in range(K):
        wt = _series_eval(w, ts, K, field)
        r = _series_root_inverse(wt, m, K, field)
        nts = [field.zero] + r[:K]
        if nts == ts:
            break
        ts = nts
    yt = _series_eval(_dense(other, field), ts, K, field)
    ring = tuple(vars) + ("s",)
    S = MultiPoly.var(field, ring, "s")
    lead_eq = MultiPoly.var(field, ring, lv) - S ** m * a
    other_poly = MultiPoly(field, ring, {})
    for k, c in enumerate(yt):
        if c:
            other_poly = other_poly + S ** k * c
    other_eq = MultiPoly.var(field, ring, ov) - other_poly
    eq = resultant(lead_eq, other_eq, "s").with_vars(tuple(vars)).monic()
    sv = ("s",)
    s1 = MultiPoly.var(field, sv, "s")
    param = {lv: s1 ** m * a, ov: other_poly.with_vars(ring).substitute(
        {vars[0]: MultiPoly.zero(field, sv), vars[1]: MultiPoly.zero(field, sv), "s": s1})}
    check = eq.substitute(param)
    assert not check, "curvette equation does not vanish on its parametrization"
    return Curvette(V, c_star, (px, py), eq)


# -- the family of testing curves ---------------------------------------------

def testing_valuation(t):
    """Order valuation of the first-neighbourhood point on ``y + t*x = 0``.

    ``t`` is a rational number or ``"inf"`` (the line ``x = 0``).
    """
    if isinstance(t, str) and t.strip().lower() in ("inf", "infinity", "∞"):
        return PlaneValuation(PointSequence([Free(0), AtInfinity]), name="W_inf")
    t = QQField(t)
    return PlaneValuation(PointSequence([Free(0), Free(-t)]), name=f"W_{QQField.fmt(t)}")


def testing_curve_values(theta, t):
    """Value of the testing valuation at ``t`` on ``theta``."""
    if isinstance(theta, str):
        theta = parse_poly(theta, QQField, ("X", "Y"))
    if theta.origin_order() != 1:
        raise NotUnitOrder(f"{theta} does not have order one at the origin")
    return testing_valuation(t).value(theta)


def line_for(t):
    if isinstance(t, str) and t.strip().lower() in ("inf", "infinity", "∞"):
        return parse_poly("X", QQField, ("X", "Y"))
    t = QQField(t)
    return parse_poly("Y", QQField, ("X", "Y")) + parse_poly("X", QQField, ("X", "Y")).scale(t)


class TestingCurveTable:
    """Rows of testing-curve values, one row per curve in the catalog."""

    def __init__(self, ts, rows):
        self.ts = ts
        self.rows = rows

    def to_dict(self):
        return {"ts": [str(t) for t in self.ts],
                "rows": [{"delta": str(d), "values": vals, "tangent_t": str(tau)}
                         for d, vals, tau in self.rows]}

    def text(self):
        head = ["delta"] + [f"t={t}" for t in self.ts] + ["tangent t"]
        lines = ["  ".join(f"{h:>10}" for h in head)]
        for d, vals, tau in self.rows:
            cells = [str(d)] + [str(v) for v in vals] + [str(tau)]
            lines.append("  ".join(f"{c:>10}" for c in cells))
        return "\n".join(lines)


def _tangent_parameter(delta):
    lin = delta.homogeneous_part(1)
    a = lin.coeff((1, 0))
    b = lin.coeff((0, 1))
    if not b:
        return "inf"
    return QQField.fmt(a / b)


def demo_testing_curve(sample_ts=("0", "1", "2", "3", "inf"), catalog=None):
    """Evaluate every testing valuation on a catalog of smooth curves.

    By default the catalog holds the tangent line of each sampled member, so
    each row shows a single 2 at the matching column and 1 elsewhere.
    """
    ts = [str(t) for t in sample_ts]
    if catalog is None:
        catalog = [line_for(t) for t in ts]
    else:
        catalog = [parse_poly(c, QQField, ("X", "Y")) if isinstance(c, str) else c for c in catalog]
    rows = []
    for delta in catalog:
        vals = [testing_curve_values(delta, t) for t in ts]
        rows.append((delta, vals, _tangent_parameter(delta)))
    return TestingCurveTable(ts, rows)
