"""Rational self-maps of P^1 with ramification queries.

A map is a coprime pair (F, G) of polynomials up to a common scalar; the
degree is max(deg F, deg G).  Ramification at infinity and at poles is
handled by reversing coefficient sequences (the coordinate swap x -> 1/x)
so a single valuation code path covers every point.
"""

from __future__ import annotations

from .algebra import (
    DEFAULT_ROOT_BUDGET,
    Poly,
    poly_gcd,
    poly_valuation,
    splitting_field_roots,
)


class InseparableMapError(ValueError):
    """Raised when an operation requires a separable map."""


class WildRamificationError(ArithmeticError):
    """Tame different accounting refused at a wildly ramified point.

    Carries the point, its ramification index, and the raw Wronskian
    valuation there (which exceeds index - 1 in the wild case).
    """

    def __init__(self, point, ram, wronskian_valuation):
        self.point = point
        self.ram = ram
        self.wronskian_valuation = wronskian_valuation
        super().__init__(
            f"wild ramification at {point}: index {ram}, "
            f"wronskian valuation {wronskian_valuation}")


class ProjPoint:
    """A point of P^1(F_q): a field element or infinity."""

    __slots__ = ("field", "i")

    def __init__(self, field, i):
        self.field = field
        self.i = i  # encoding, or None for infinity

    @classmethod
    def finite(cls, field, value):
        if hasattr(value, "i") and hasattr(value, "field"):
            if value.field != field:
                raise ValueError("field mismatch")
            return cls(field, value.i)
        return cls(field, int(value) % field.q)

    @classmethod
    def infinity(cls, field):
        return cls(field, None)

    @property
    def is_infinity(self):
        return self.i is None

    def __eq__(self, other):
        return (isinstance(other, ProjPoint)
                and self.field == other.field and self.i == other.i)

    def __hash__(self):
        return hash((self.field, self.i))

    def __repr__(self):
        return "inf" if self.is_infinity else self.field.element_str(self.i)

    @staticmethod
    def parse(field, text):
        text = text.strip()
        if text == "inf":
            return ProjPoint.infinity(field)
        return ProjPoint(field, field.element_parse(text))


class Divisor:
    """Finitely supported map ProjPoint -> positive multiplicity."""

    __slots__ = ("_data",)

    def __init__(self, data=()):
        items = dict(data)
        for pt, m in items.items():
            if m < 1:
                raise ValueError("divisor multiplicities must be >= 1")
        self._data = items

    def multiplicity(self, point):
        return self._data.get(point, 0)

    def items(self):
        return self._data.items()

    def points(self):
        return self._data.keys()

    @property
    def total(self):
        return sum(self._data.values())

    def __len__(self):
        return len(self._data)

    def __eq__(self, other):
        return isinstance(other, Divisor) and self._data == other._data

    def __hash__(self):
        return hash(frozenset(self._data.items()))

    def __add__(self, other):
        merged = dict(self._data)
        for pt, m in other.items():
            merged[pt] = merged.get(pt, 0) + m
        return Divisor(merged)

    def to_json(self):
        return {repr(pt): m for pt, m in sorted(
            self._data.items(), key=lambda kv: (kv[0].i is None, kv[0].i or 0))}

    def __repr__(self):
        return f"Divisor({self.to_json()})"


class RatMap:
    """Degree-d self-map of P^1 as a normalized coprime pair (F, G)."""

    __slots__ = ("field", "F", "G")

    def __init__(self, F, G):
        if F.field != G.field:
            raise ValueError("numerator and denominator over different fields")
        if F.is_zero or G.is_zero:
            raise ValueError("constant maps are rejected")
        g = poly_gcd(F, G)
        if g.degree > 0:
            raise ValueError("pair has common factors; use RatMap.new")
        d = max(F.degree, G.degree)
        if d < 1:
            raise ValueError("constant maps are rejected")
        field = F.field
        # normalize: leading coefficient of the higher-degree member becomes 1
        lead_poly = F if F.degree == d else G
        scale = field.inv_i(lead_poly.leading())
        self.field = field
        self.F = F.scale(scale)
        self.G = G.scale(scale)

    @classmethod
    def new(cls, F, G, root_budget=DEFAULT_ROOT_BUDGET):
        """Cancel common factors; returns (map, cancelled base divisor)."""
        if F.field != G.field:
            raise ValueError("numerator and denominator over different fields")
        if F.is_zero or G.is_zero:
            raise ValueError("constant maps are rejected")
        base = Divisor()
        g = poly_gcd(F, G)
        if g.degree > 0:
            F, G = F // g, G // g
            ext, embed, roots = splitting_field_roots(g, root_budget)
            base = Divisor({ProjPoint(ext, r): m for r, m in roots})
        return cls(F, G), base

    @property
    def degree(self):
        return max(self.F.degree, self.G.degree)

    def __eq__(self, other):
        """Same map: equal normalized pairs (common scalar already fixed)."""
        return (isinstance(other, RatMap) and self.field == other.field
                and self.F == other.F and self.G == other.G)

    def __hash__(self):
        return hash((self.field, self.F, self.G))

    def __repr__(self):
        return f"({self.F.to_string() or '0'})/({self.G.to_string() or '0'})"

    def to_string(self):
        return f"{self.F.to_string()}/{self.G.to_string()}"

    @classmethod
    def from_string(cls, field, text):
        num, _, den = text.partition("/")
        return cls(Poly.from_string(field, num), Poly.from_string(field, den))

    # -- pencil view ---------------------------------------------------------

    def pencil_rows(self):
        """Canonical RREF of the 2 x (d+1) coefficient matrix: the map modulo
        automorphism of the image (a point of G(1, d))."""
        from .algebra import rref
        d = self.degree
        rows = []
        for poly in (self.F, self.G):
            padded = list(poly.coeffs) + [0] * (d + 1 - len(poly.coeffs))
            rows.append(padded)
        reduced, _ = rref(rows, self.field)
        return tuple(reduced)

    def aut_equivalent(self, other):
        """Equal modulo automorphism of the image P^1."""
        return self.degree == other.degree and self.pencil_rows() == other.pencil_rows()

    # -- evaluation ----------------------------------------------------------

    def __call__(self, point):
        """Value at a ProjPoint (or finite encoding), as a ProjPoint."""
        if not isinstance(point, ProjPoint):
            point = ProjPoint(self.field, int(point) % self.field.q)
        if point.field != self.field:
            raise ValueError("point in a different field; embed the map first")
        if point.is_infinity:
            fs, gs = self._swapped()
            num, den = fs(0), gs(0)
        else:
            num, den = self.F(point.i), self.G(point.i)
        if den == 0:
            return ProjPoint.infinity(self.field)
        return ProjPoint(self.field, self.field.div_i(num, den))

    def _swapped(self):
        """The pair after x -> 1/x: both coefficient sequences reversed,
        padded to degree d."""
        d = self.degree
        return self.F.reverse(d), self.G.reverse(d)

    def lift(self, target):
        """The same map over an extension field."""
        if target == self.field:
            return self
        embed = self.field.embedding(target)
        return RatMap(Poly(target, tuple(embed(c) for c in self.F.coeffs)),
                      Poly(target, tuple(embed(c) for c in self.G.coeffs)))


# ---------------------------------------------------------------------------
# ramification queries
# ---------------------------------------------------------------------------

def wronskian(f):
    """F'G - FG'; zero exactly when the map is inseparable."""
    return f.F.derivative() * f.G - f.F * f.G.derivative()


def is_separable(f):
    return not wronskian(f).is_zero


def ram_index(f, point):
    """Ramification index e_P >= 1 at the given point."""
    if not isinstance(point, ProjPoint):
        point = ProjPoint(f.field, int(point) % f.field.q)
    if point.field != f.field:
        f = f.lift(point.field)
    if point.is_infinity:
        # the swapped pair stays coprime: a shared root r != 0 would give a
        # shared root 1/r of the original pair, and 0 divides at most one side
        Fs, Gs = f._swapped()
        return _ram_index_finite(Fs, Gs, 0, f.field)
    return _ram_index_finite(f.F, f.G, point.i, f.field)


def _ram_index_finite(F, G, a, field):
    gval = G(a)
    if gval == 0:
        return poly_valuation(G, a)
    v = field.div_i(F(a), gval)
    return poly_valuation(F - G.scale(v), a)


def ramification_profile(f, root_budget=DEFAULT_ROOT_BUDGET):
    """Divisor of ramification indices (only points with e_P >= 2),
    computed over the splitting field of the Wronskian."""
    w = wronskian(f)
    if w.is_zero:
        raise InseparableMapError("inseparable map has no ramification profile")
    d = f.degree
    ext, roots = f.field, []
    if w.degree > 0:
        ext, _, roots = splitting_field_roots(w, root_budget)
    lifted = f.lift(ext)
    out = {}
    for r, _ in roots:
        pt = ProjPoint(ext, r)
        e = ram_index(lifted, pt)
        if e > 1:
            out[pt] = e
    if w.degree < 2 * d - 2:
        e = ram_index(lifted, ProjPoint.infinity(ext))
        if e > 1:
            out[ProjPoint.infinity(ext)] = e
    return Divisor(out)


def wronskian_divisor(f, root_budget=DEFAULT_ROOT_BUDGET):
    """div(W) on P^1: valuations of the Wronskian plus the degree-deficiency
    part at infinity.  Total is 2d - 2 identically; asserted."""
    w = wronskian(f)
    if w.is_zero:
        raise InseparableMapError("wronskian divisor of an inseparable map")
    d = f.degree
    data = {}
    inf_mult = (2 * d - 2) - w.degree
    if w.degree > 0:
        ext, _, roots = splitting_field_roots(w, root_budget)
        for r, m in roots:
            data[ProjPoint(ext, r)] = m
        if inf_mult > 0:
            data[ProjPoint.infinity(ext)] = inf_mult
    elif inf_mult > 0:
        data[ProjPoint.infinity(f.field)] = inf_mult
    div = Divisor(data)
    if div.total != 2 * d - 2:
        raise ArithmeticError("wronskian accounting failed to reach 2d-2")
    return div


def different_divisor(f, root_budget=DEFAULT_ROOT_BUDGET):
    """The different of a separable map, with the tame accounting audit.

    At every point carrying Wronskian valuation the ramification index is
    recomputed independently; tame points must satisfy ord = e_P - 1 and the
    total must be exactly 2d - 2.  A wildly ramified point (p | e_P) raises
    WildRamificationError carrying the raw valuation, since tame
    bookkeeping does not apply there.
    """
    div = wronskian_divisor(f, root_budget)
    p = f.field.p
    for pt, mult in div.items():
        lifted = f if pt.field == f.field else f.lift(pt.field)
        e = ram_index(lifted, pt)
        if e % p == 0:
            raise WildRamificationError(pt, e, mult)
        if mult != e - 1:
            raise ArithmeticError(
                f"tame accounting violated at {pt}: index {e}, valuation {mult}")
    return div


# ---------------------------------------------------------------------------
# Moebius actions
# ---------------------------------------------------------------------------

def _check_matrix(field, M):
    (a, b), (c, e) = M
    a, b, c, e = (x % field.q for x in (a, b, c, e))
    det = field.sub_i(field.mul_i(a, e), field.mul_i(b, c))
    if det == 0:
        raise ValueError("matrix is singular")
    return (a, b, c, e)


def mobius_apply(field, M, point):
    """Apply (a b; c e) as w -> (aw+b)/(cw+e) to a ProjPoint."""
    a, b, c, e = _check_matrix(field, M)
    if point.is_infinity:
        if c == 0:
            return ProjPoint.infinity(field)
        return ProjPoint(field, field.div_i(a, c))
    num = field.add_i(field.mul_i(a, point.i), b)
    den = field.add_i(field.mul_i(c, point.i), e)
    if den == 0:
        return ProjPoint.infinity(field)
    return ProjPoint(field, field.div_i(num, den))


def mobius_inverse(field, M):
    a, b, c, e = _check_matrix(field, M)
    return ((e, field.neg_i(b)), (field.neg_i(c), a))


def mobius_act(f, M, side):
    """Act on the map by an invertible 2x2 matrix.

    image side: (F, G) -> (aF + bG, cF + eG), i.e. post-compose with the
    fractional linear transformation.  domain side: substitute
    x -> (ax+b)/(cx+e) and clear denominators to degree d, i.e. pre-compose.
    """
    field = f.field
    a, b, c, e = _check_matrix(field, M)
    if side == "image":
        F2 = f.F.scale(a) + f.G.scale(b)
        G2 = f.F.scale(c) + f.G.scale(e)
        return RatMap(F2, G2)
    if side == "domain":
        d = f.degree
        lin1 = Poly(field, (b, a))  # ax + b
        lin2 = Poly(field, (e, c))  # cx + e
        pow1 = [Poly.one(field)]
        pow2 = [Poly.one(field)]
        for _ in range(d):
            pow1.append(pow1[-1] * lin1)
            pow2.append(pow2[-1] * lin2)
        def subst(poly):
            acc = Poly.zero(field)
            for i, coeff in enumerate(poly.coeffs):
                if coeff:
                    acc = acc + (pow1[i] * pow2[d - i]).scale(coeff)
            return acc
        return RatMap(subst(f.F), subst(f.G))
    raise ValueError("side must be 'image' or 'domain'")


# ---------------------------------------------------------------------------
# involution transform (multiply by (x-P2)^p / (x-P1)^p)
# ---------------------------------------------------------------------------

class InvolutionResult:
    """Transformed map plus the normalizations that were applied."""

    __slots__ = ("map", "domain_mobius", "image_mobius")

    def __init__(self, map, domain_mobius, image_mobius):
        self.map = map
        self.domain_mobius = domain_mobius
        self.image_mobius = image_mobius


def involution_transform(f, P1, P2):
    """Trade ramification orders (e1, e2) at finite P1, P2 for (p-e1, p-e2).

    Requires e1, e2 < p, f(P1) != f(P2), and f separable.  If f is ramified
    at infinity it is first pre-composed with a recorded domain Moebius map
    moving an unramified point to infinity; the returned map carries the
    stated orders at the original P1, P2.
    """
    field = f.field
    p = field.p
    if not isinstance(P1, ProjPoint):
        P1 = ProjPoint(field, int(P1) % field.q)
    if not isinstance(P2, ProjPoint):
        P2 = ProjPoint(field, int(P2) % field.q)
    if P1.is_infinity or P2.is_infinity:
        raise ValueError("P1 and P2 must be finite (apply a domain Moebius first)")
    if P1 == P2:
        raise ValueError("P1 and P2 must be distinct")
    if not is_separable(f):
        raise InseparableMapError("involution transform needs a separable map")
    e1 = ram_index(f, P1)
    e2 = ram_index(f, P2)
    if e1 >= p or e2 >= p:
        raise ValueError(f"orders ({e1}, {e2}) must be < p = {p}")
    v1, v2 = f(P1), f(P2)
    if v1 == v2:
        raise ValueError("f(P1) = f(P2); transform undefined")

    domain_m = None
    work = f
    Q1, Q2 = P1, P2
    if ram_index(f, ProjPoint.infinity(field)) > 1:
        domain_m = _unramified_to_infinity(f, (P1, P2))
        work = mobius_act(f, domain_m, "domain")
        inv = mobius_inverse(field, domain_m)
        Q1 = mobius_apply(field, inv, P1)
        Q2 = mobius_apply(field, inv, P2)
        v1, v2 = work(Q1), work(Q2)

    image_m = _image_to_zero_infinity(field, v1, v2)
    norm = mobius_act(work, image_m, "image")
    # now norm(Q1) = 0 with valuation e1 and norm(Q2) = infinity with
    # denominator valuation e2; peel those factors off exactly
    lin1 = Poly(field, (field.neg_i(Q1.i), 1))
    lin2 = Poly(field, (field.neg_i(Q2.i), 1))
    Fp = norm.F
    Gp = norm.G
    for _ in range(e1):
        Fp, rem = Fp.divrem(lin1)
        if not rem.is_zero:
            raise ArithmeticError("numerator does not vanish to order e1 at P1")
    for _ in range(e2):
        Gp, rem = Gp.divrem(lin2)
        if not rem.is_zero:
            raise ArithmeticError("denominator does not vanish to order e2 at P2")
    Fh = Fp * lin2 ** (p - e2)
    Gh = Gp * lin1 ** (p - e1)
    hat = RatMap(Fh, Gh)
    if domain_m is not None:
        hat = mobius_act(hat, mobius_inverse(field, domain_m), "domain")
    return InvolutionResult(hat, domain_m, image_m)


def _image_to_zero_infinity(field, v1, v2):
    """Image Moebius sending v1 -> 0 and v2 -> infinity."""
    if v1.is_infinity:
        # w -> 1/(w - v2)
        return ((0, 1), (1, field.neg_i(v2.i)))
    if v2.is_infinity:
        # w -> w - v1
        return ((1, field.neg_i(v1.i)), (0, 1))
    return ((1, field.neg_i(v1.i)), (1, field.neg_i(v2.i)))


def _unramified_to_infinity(f, keep_finite):
    """Domain Moebius x -> c + 1/x with c unramified and off the kept points."""
    field = f.field
    forbidden = {pt.i for pt in keep_finite}
    for c in range(field.q):
        if c in forbidden:
            continue
        if ram_index(f, ProjPoint(field, c)) == 1:
            return ((c, 1), (1, 0))  # x -> (cx + 1)/x = c + 1/x
    raise ValueError("no unramified finite point available; enlarge the field")
