"""One-parameter families of maps over k[t]: the tame pathology family,
the inseparable-limit transformation, and limit analysis.

A family is a pair of polynomials in x whose coefficients are polynomials
in t (exact, never power series).  The transformation composes with a
fractional linear transformation with inseparable coefficients built from
Bezout data of the special fiber; its determinant is 1, so the Wronskian
of the new pair is the old one with a positive power of t removed, which
is asserted at every step and forces termination.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import (
    Poly,
    bezout_inseparable,
    poly_gcd,
    poly_valuation,
)
from .ratmap import (
    InseparableMapError,
    ProjPoint,
    RatMap,
    is_separable,
    ram_index,
    ramification_profile,
)


class SeparableSpecialFiberError(ValueError):
    """The transform needs an inseparable special fiber."""


# ---------------------------------------------------------------------------
# polynomials in x with k[t] coefficients
# ---------------------------------------------------------------------------

class FamilyPoly:
    """Element of k[t][x]: coeffs[i] is the t-polynomial on x^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def lift(cls, poly):
        """Constant-in-t lift of an x-polynomial."""
        field = poly.field
        return cls(field, tuple(Poly.constant(field, c) for c in poly.coeffs))

    @classmethod
    def from_tuples(cls, field, rows):
        """rows: iterable of iterables of encodings; rows[i] = t-coeffs on x^i."""
        return cls(field, tuple(Poly(field, row) for row in rows))

    @property
    def x_degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def is_zero(self):
        return not self.coeffs

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Poly.zero(self.field)

    def __eq__(self, other):
        return (isinstance(other, FamilyPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return FamilyPoly(self.field, tuple(self.coeff(i) + other.coeff(i)
                                            for i in range(n)))

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return FamilyPoly(self.field, tuple(self.coeff(i) - other.coeff(i)
                                            for i in range(n)))

    def __mul__(self, other):
        if self.is_zero or other.is_zero:
            return FamilyPoly.zero(self.field)
        out = [Poly.zero(self.field)
               for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero:
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero:
                    out[i + j] = out[i + j] + a * b
        return FamilyPoly(self.field, out)

    def scale_t(self, tpoly):
        return FamilyPoly(self.field, tuple(c * tpoly for c in self.coeffs))

    def deriv_x(self):
        field = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(self.coeffs[i].scale(i % field.p))
        return FamilyPoly(field, out)

    def at_zero(self):
        """The x-polynomial at t = 0."""
        return Poly(self.field, tuple(c.coeff(0) for c in self.coeffs))

    def eval_t(self, c):
        """The x-polynomial at t = c (encoding)."""
        return Poly(self.field, tuple(coeff(c) for coeff in self.coeffs))

    def t_valuation(self):
        """Largest v with t^v dividing every coefficient; None for zero."""
        if self.is_zero:
            return None
        return min(poly_valuation(c, 0) for c in self.coeffs if not c.is_zero)

    def shift_t_down(self, v):
        """Divide by t^v exactly."""
        if v == 0 or self.is_zero:
            return self
        out = []
        for c in self.coeffs:
            if c.is_zero:
                out.append(c)
            else:
                out.append(Poly(self.field, c.coeffs[v:]))
        return FamilyPoly(self.field, out)

    def max_t_degree(self):
        return max((c.degree for c in self.coeffs if not c.is_zero), default=-1)

    def to_string(self):
        """Nested exchange format: [(t-coeffs of x^0),(x^1),...], low first."""
        parts = []
        for c in self.coeffs:
            inner = ",".join(self.field.element_str(v) for v in c.coeffs) or "0"
            parts.append(f"({inner})")
        return "[" + ",".join(parts) + "]"

    @classmethod
    def from_string(cls, field, text):
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise ValueError("family polynomial must be bracketed")
        body = text[1:-1].strip()
        if not body:
            return cls.zero(field)
        rows = []
        depth = 0
        token = ""
        groups = []
        for ch in body:
            if ch == "(":
                depth += 1
                if depth == 1:
                    token = ""
                    continue
            if ch == ")":
                depth -= 1
                if depth == 0:
                    groups.append(token)
                    continue
            if depth >= 1:
                token += ch
        for g in groups:
            g = g.strip()
            if not g:
                rows.append(Poly.zero(field))
            else:
                rows.append(Poly(field, tuple(field.element_parse(tok)
                                              for tok in g.split(","))))
        return cls(field, rows)

    def __repr__(self):
        return f"FamilyPoly{self.to_string()}"


def family_wronskian(F, G):
    return F.deriv_x() * G - F * G.deriv_x()


# ---------------------------------------------------------------------------
# marked sections and families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Section:
    """A point of P^1 moving with t: num(t)/den(t), or the constant infinity."""

    num: object = None          # Poly in t
    den: object = None          # Poly in t; None means 1
    order: int = 1
    at_infinity: bool = False

    def value_at(self, field, c):
        if self.at_infinity:
            return ProjPoint.infinity(field)
        num = self.num(c)
        den = self.den(c) if self.den is not None else 1
        if den == 0:
            return ProjPoint.infinity(field)
        return ProjPoint(field, field.div_i(num, den))

    @classmethod
    def constant(cls, field, point, order):
        if point.is_infinity:
            return cls(order=order, at_infinity=True)
        return cls(num=Poly.constant(field, point.i), order=order)


class MapFamily:
    """A family F(x,t)/G(x,t) with optional marked sections.

    The pair is normalized so that no positive power of t divides both
    members; the generic fiber must be nonconstant and coprime over k(t).
    """

    __slots__ = ("field", "F", "G", "sections")

    def __init__(self, F, G, sections=(), check_coprime=True):
        if F.field != G.field:
            raise ValueError("family members over different fields")
        if F.is_zero or G.is_zero:
            raise ValueError("family members must be nonzero")
        v = min(F.t_valuation(), G.t_valuation())
        if v:
            F, G = F.shift_t_down(v), G.shift_t_down(v)
        self.field = F.field
        self.F = F
        self.G = G
        self.sections = tuple(sections)
        if max(F.x_degree, G.x_degree) < 1:
            raise ValueError("generic fiber is constant")
        if check_coprime and not self._generically_coprime():
            raise ValueError("family members share a factor over k(t)")

    @property
    def degree(self):
        return max(self.F.x_degree, self.G.x_degree)

    def _generically_coprime(self):
        """gcd over k(t) is 1 iff some specialization is coprime with full
        degree; the number of bad values of t is bounded by resultant and
        leading-coefficient degrees, so scanning enough values is sound."""
        dx = self.degree
        bound = 2 * dx * (max(self.F.max_t_degree(), self.G.max_t_degree()) + 1) + 1
        field = self.field
        tried = 0
        for c in range(field.q):
            Fc, Gc = self.F.eval_t(c), self.G.eval_t(c)
            if Fc.is_zero or Gc.is_zero:
                continue
            if max(Fc.degree, Gc.degree) != dx:
                continue
            tried += 1
            if poly_gcd(Fc, Gc).degree == 0:
                return True
            if tried > bound:
                break
        ext = field.extension(2)
        emb = field.embedding(ext)
        F2 = FamilyPoly(ext, tuple(Poly(ext, tuple(emb(v) for v in c.coeffs))
                                   for c in self.F.coeffs))
        G2 = FamilyPoly(ext, tuple(Poly(ext, tuple(emb(v) for v in c.coeffs))
                                   for c in self.G.coeffs))
        for c in range(ext.q):
            Fc, Gc = F2.eval_t(c), G2.eval_t(c)
            if Fc.is_zero or Gc.is_zero or max(Fc.degree, Gc.degree) != dx:
                continue
            if poly_gcd(Fc, Gc).degree == 0:
                return True
        return False

    def member(self, c):
        """The fiber at t = c as a RatMap (base points cancelled)."""
        Fc, Gc = self.F.eval_t(c), self.G.eval_t(c)
        m, _ = RatMap.new(Fc, Gc)
        return m

    def special_pair(self):
        return self.F.at_zero(), self.G.at_zero()

    def wronskian(self):
        return family_wronskian(self.F, self.G)

    def generic_separable(self):
        return not self.wronskian().is_zero

    def special_fiber_separable(self):
        """Separability of the reduced limit map at t = 0 (after choosing a
        basis whose specialization is nonconstant)."""
        _, _, _, Fb, Gb = _nonconstant_basis(self.F, self.G)
        return not (Fb.derivative() * Gb - Fb * Gb.derivative()).is_zero

    def to_json(self):
        return {
            "schema": 1,
            "p": self.field.p,
            "k": self.field.k,
            "F": self.F.to_string(),
            "G": self.G.to_string(),
            "sections": [_section_json(s, self.field) for s in self.sections],
        }

    @classmethod
    def from_json(cls, payload):
        from .algebra import finite_field
        field = finite_field(int(payload["p"]), int(payload.get("k", 1)))
        F = FamilyPoly.from_string(field, payload["F"])
        G = FamilyPoly.from_string(field, payload["G"])
        sections = tuple(_section_from_json(item, field)
                         for item in payload.get("sections", ()))
        return cls(F, G, sections)


def _section_json(s, field):
    if s.at_infinity:
        return {"point": "inf", "order": s.order}
    out = {"num": s.num.to_string() or "0", "order": s.order}
    if s.den is not None:
        out["den"] = s.den.to_string() or "0"
    return out


def _section_from_json(item, field):
    if item.get("point") == "inf":
        return Section(order=int(item["order"]), at_infinity=True)
    num = Poly.from_string(field, item["num"])
    den = Poly.from_string(field, item["den"]) if "den" in item else None
    return Section(num=num, den=den, order=int(item["order"]))


def _nonconstant_basis(F, G):
    """Replace F by nu(F - cG) until the reduced special pair is nonconstant.

    Returns (F, G, g, Fb, Gb): the adjusted basis, the common factor of the
    special pair, and the reduced special pair.
    """
    field = F.field
    guard = 0
    limit = 2 * (F.max_t_degree() + G.max_t_degree() + 2)
    while True:
        F0, G0 = F.at_zero(), G.at_zero()
        if F0.is_zero or G0.is_zero:
            raise ArithmeticError("family not normalized: zero special member")
        g = poly_gcd(F0, G0)
        Fb = F0 // g if g.degree else F0
        Gb = G0 // g if g.degree else G0
        if max(Fb.degree, Gb.degree) > 0:
            return F, G, g, Fb, Gb
        # special fiber is constant: this basis degenerates at t = 0
        c = field.div_i(Fb.coeffs[0], Gb.coeffs[0])
        F = F - G.scale_t(Poly.constant(field, c))
        v = F.t_valuation()
        if v is None:
            raise ArithmeticError("family members dependent over k(t)")
        F = F.shift_t_down(v)
        guard += 1
        if guard > limit:
            raise ArithmeticError("basis normalization did not terminate")


def family_domain_mobius(fam, M):
    """Pre-compose the whole family with a t-constant fractional linear map
    x -> (ax+b)/(cx+e); sections are carried along by the inverse matrix.

    Useful for moving marked sections away from infinity so that the
    limit-law hypotheses hold.
    """
    field = fam.field
    (a, b), (c, e) = ((x % field.q for x in row) for row in M)
    a, b, c, e = int(a), int(b), int(c), int(e)
    det = field.sub_i(field.mul_i(a, e), field.mul_i(b, c))
    if det == 0:
        raise ValueError("matrix is singular")
    d = fam.degree
    lin1 = FamilyPoly.lift(Poly(field, (b, a)))
    lin2 = FamilyPoly.lift(Poly(field, (e, c)))
    one = FamilyPoly.lift(Poly.one(field))
    pow1, pow2 = [one], [one]
    for _ in range(d):
        pow1.append(pow1[-1] * lin1)
        pow2.append(pow2[-1] * lin2)

    def subst(fp):
        acc = FamilyPoly.zero(field)
        for i, coeff in enumerate(fp.coeffs):
            if not coeff.is_zero:
                acc = acc + (pow1[i] * pow2[d - i]).scale_t(coeff)
        return acc

    new_sections = []
    for s in fam.sections:
        if s.at_infinity:
            num, den = Poly.one(field), Poly.zero(field)
        else:
            num = s.num
            den = s.den if s.den is not None else Poly.one(field)
        # inverse matrix (e, -b; -c, a) acting on (num : den)
        new_num = num.scale(e) - den.scale(b)
        new_den = num.scale(field.neg_i(c)) + den.scale(a)
        if new_den.is_zero:
            new_sections.append(Section(order=s.order, at_infinity=True))
        else:
            new_sections.append(Section(num=new_num, den=new_den, order=s.order))
    return MapFamily(subst(fam.F), subst(fam.G), tuple(new_sections))


# ---------------------------------------------------------------------------
# the tame pathology family f - t x^p
# ---------------------------------------------------------------------------

def pathology_family(F, G, root_budget=None):
    """The family F/G - t x^p, for maps with a tame pole of order e1 > p at
    infinity and all finite orders < p.  Every member has the same
    ramification divisor while the pencils are pairwise distinct."""
    from .algebra import DEFAULT_ROOT_BUDGET
    if root_budget is None:
        root_budget = DEFAULT_ROOT_BUDGET
    base_map, base = RatMap.new(F, G)
    if base.total:
        raise ValueError("input pair must be coprime")
    field = F.field
    p = field.p
    e1 = base_map.F.degree - base_map.G.degree
    if e1 <= 0:
        raise ValueError("map must send infinity to infinity (deg F > deg G)")
    if e1 <= p:
        raise ValueError(f"order at infinity must exceed p: got {e1} <= {p}")
    if e1 % p == 0:
        raise ValueError("order at infinity must be prime to p")
    profile = ramification_profile(base_map, root_budget)
    sections = [Section(order=e1, at_infinity=True)]
    for pt, e in profile.items():
        if pt.is_infinity:
            continue
        if e >= p:
            raise ValueError(f"finite ramification order {e} at {pt} is not < p")
        if pt.field == field:
            sections.append(Section.constant(field, pt, e))
    t_xp = FamilyPoly(field, tuple([Poly.zero(field)] * p + [Poly.x(field)]))
    Ffam = FamilyPoly.lift(base_map.F) - FamilyPoly.lift(base_map.G) * t_xp
    Gfam = FamilyPoly.lift(base_map.G)
    return MapFamily(Ffam, Gfam, tuple(sections))


# ---------------------------------------------------------------------------
# the inseparable-limit transformation
# ---------------------------------------------------------------------------

def insep_limit_transform(fam):
    """One step: compose with the inseparable unimodular transformation built
    from the special fiber, then factor the maximal power of t out of the
    new numerator.  The Wronskian loses exactly that (positive) power of t;
    both facts are asserted."""
    field = fam.field
    F, G, g, Fb, Gb = _nonconstant_basis(fam.F, fam.G)
    if not (Fb.derivative() * Gb - Fb * Gb.derivative()).is_zero:
        raise SeparableSpecialFiberError("special fiber is already separable")
    h1, h2 = bezout_inseparable(Fb, Gb)
    w_before = family_wronskian(F, G)
    raw = F * FamilyPoly.lift(Gb) - G * FamilyPoly.lift(Fb)
    if raw.is_zero:
        raise ArithmeticError("transform collapsed the family")
    v = raw.t_valuation()
    if v < 1:
        raise ArithmeticError("expected a positive power of t in the new numerator")
    Fnew = raw.shift_t_down(v)
    Gnew = F * FamilyPoly.lift(h2) - G * FamilyPoly.lift(h1)
    # determinant of the transformation is Fb*h2 - Gb*h1 = 1, so the
    # Wronskian is divided by exactly t^v
    w_after = family_wronskian(Fnew, Gnew)
    if not w_before.is_zero:
        t_pow = FamilyPoly(field, (Poly(field, (0,) * v + (1,)),))
        if w_after * t_pow != w_before:
            raise ArithmeticError("wronskian bookkeeping failed")
    g0_check = Gnew.at_zero()
    if g0_check.is_zero or (g0_check.monic()[0] != g.monic()[0]):
        raise ArithmeticError("new denominator at t=0 is not the cancelled factor")
    return MapFamily(Fnew, Gnew, fam.sections)


def tame_at_infinity_reduce(F0, G0):
    """Remove wild ramification at infinity by subtracting inseparable
    image translates: while p divides the index at infinity, subtract the
    matching multiple of x^{e_inf} G0.  Swaps and constant translates (image
    automorphisms) orient the pair.  None of the moves touches the affine
    Wronskian (up to scalar), which is asserted before returning."""
    field = F0.field
    p = field.p
    rmap, _ = RatMap.new(F0, G0)
    if not is_separable(rmap):
        raise InseparableMapError("tame reduction needs a separable map")
    F0, G0 = rmap.F, rmap.G
    w_in = (F0.derivative() * G0 - F0 * G0.derivative()).monic()[0]
    guard = 0
    while True:
        guard += 1
        if guard > 4 * (F0.degree + G0.degree + 4):
            raise ArithmeticError("tame reduction did not terminate")
        e_inf = ram_index(RatMap(F0, G0), ProjPoint.infinity(field))
        if e_inf % p:
            w_out = (F0.derivative() * G0 - F0 * G0.derivative()).monic()[0]
            if w_out != w_in:
                raise ArithmeticError("tame reduction changed the affine different")
            return F0, G0
        if F0.degree < G0.degree:
            F0, G0 = G0, F0  # image swap 0 <-> infinity
            continue
        if F0.degree == G0.degree:
            c = field.div_i(F0.leading(), G0.leading())
            F0 = F0 - G0.scale(c)  # image translate, drops deg F0
            continue
        e = F0.degree - G0.degree  # the wild pole order
        c = field.div_i(F0.leading(), G0.leading())
        F0 = F0 - (G0.shift(e)).scale(c)
        if F0.is_zero:
            raise ArithmeticError("reduction annihilated the numerator")


# ---------------------------------------------------------------------------
# limit analysis
# ---------------------------------------------------------------------------

@dataclass
class LimitReport:
    separable_limit: bool
    iterations: int
    m: int
    b: int
    degrees: tuple      # (d_tilde, d_0) after tame reduction, before base removal
    e_infinity: int
    epsilon: object = None
    hypotheses_ok: bool = False
    warnings: tuple = ()
    collision: object = None  # (point, combined order) when a pair collides

    def to_json(self):
        return {
            "schema": 1,
            "separable_limit": self.separable_limit,
            "iterations": self.iterations,
            "m": self.m,
            "b": self.b,
            "degrees": list(self.degrees),
            "e_infinity": self.e_infinity,
            "epsilon": self.epsilon,
            "hypotheses_ok": self.hypotheses_ok,
            "warnings": list(self.warnings),
        }


def _check_hypotheses(fam):
    """Limit-law hypotheses, checked as far as the data allows."""
    warnings = []
    field = fam.field
    p = field.p
    if not fam.generic_separable():
        warnings.append("generic fiber is inseparable")
        return False, warnings, None
    if not fam.sections:
        warnings.append("no marked sections: hypothesis checks are partial")
    collision = None
    for s in fam.sections:
        if s.at_infinity or s.value_at(field, 0).is_infinity:
            warnings.append("a marked section meets infinity")
        if s.order >= p:
            warnings.append(f"marked order {s.order} is not < p")
    limits = [s.value_at(field, 0) for s in fam.sections]
    seen = {}
    for s, pt in zip(fam.sections, limits):
        key = (pt.field, pt.i)
        seen.setdefault(key, []).append(s)
    for key, group in seen.items():
        if len(group) == 2:
            combined = group[0].order + group[1].order
            if combined >= p:
                warnings.append("colliding pair has combined order >= p")
            pt = group[0].value_at(field, 0)
            collision = (pt, combined)
        elif len(group) > 2:
            warnings.append("more than two sections collide")
    ok = not warnings
    return ok, warnings, collision


def analyze_limit(fam, max_iterations=None):
    """Iterate the transform to a separable limit, tame-reduce at infinity,
    remove base points at the collision point, and report the limit data:
    m = d - deg(G0), e_infinity, b, and the measured epsilon."""
    field = fam.field
    p = field.p
    d = fam.degree
    if not fam.generic_separable():
        raise InseparableMapError("generic fiber must be separable")
    hypotheses_ok, warnings, collision = _check_hypotheses(fam)
    warnings = list(warnings)

    w = fam.wronskian()
    initial_val = w.t_valuation()
    if max_iterations is None:
        max_iterations = (initial_val or 0) + 1
    iterations = 0
    separable_limit = fam.special_fiber_separable()
    current = fam
    last_val = initial_val
    while not current.special_fiber_separable():
        if iterations >= max_iterations:
            raise ArithmeticError("limit transform exceeded its iteration bound")
        current = insep_limit_transform(current)
        iterations += 1
        new_val = current.wronskian().t_valuation()
        if new_val is not None and last_val is not None and not new_val < last_val:
            raise ArithmeticError("t-valuation of the Wronskian did not drop")
        last_val = new_val

    _, _, g, F0r, G0r = _nonconstant_basis(current.F, current.G)
    F0t, G0t = tame_at_infinity_reduce(F0r, G0r)
    d_tilde = max(F0t.degree, G0t.degree)
    d0 = G0t.degree if not G0t.is_zero else 0
    m = d - d0
    e_inf = ram_index(RatMap(F0t, G0t), ProjPoint.infinity(field))

    b = 0
    if collision is not None and g.degree:
        pt, _ = collision
        if not pt.is_infinity and pt.field == field:
            b = poly_valuation(g, pt.i)
    if g.degree and g.degree != b:
        warnings.append("base points appeared away from the collision point")

    epsilon = None
    if iterations and not separable_limit:
        # measured degree after base removal, minus the expected d + m - 1 - b
        epsilon = (d_tilde - b) - (d + m - 1 - b)
        checks = []
        if e_inf != 2 * m - 1:
            checks.append(f"e_infinity = {e_inf} != 2m-1 = {2 * m - 1}")
        if not (p <= m <= d):
            checks.append(f"m = {m} outside [p, d] = [{p}, {d}]")
        if 2 * d_tilde - 2 != 2 * d - 2 + e_inf - 1:
            checks.append("degree bookkeeping 2d~-2 = 2d-2+e_inf-1 failed")
        if checks:
            if hypotheses_ok:
                raise ArithmeticError("; ".join(checks))
            warnings.extend(checks)
    return LimitReport(
        separable_limit=separable_limit,
        iterations=iterations,
        m=m,
        b=b,
        degrees=(d_tilde, d0),
        e_infinity=e_inf,
        epsilon=epsilon,
        hypotheses_ok=hypotheses_ok,
        warnings=tuple(warnings),
        collision=collision,
    )
