"""Exact arithmetic in F_{p^k} and dense univariate polynomials over it.

Fields are represented as F_p[y]/(modulus) with a deterministically chosen
modulus, so results are bit-identical across runs.  Elements are encoded as
integers in [0, q): the base-p digits of the encoding are the coordinates
with respect to the basis 1, y, ..., y^{k-1} (constant digit least
significant).  Polynomials are dense coefficient tuples, low degree first,
with no trailing zeros; the zero polynomial is the empty tuple and its
degree is the NEG_INFINITY sentinel, never -1.

p = 2 is rejected at construction.
"""

from __future__ import annotations

import math
from functools import lru_cache

NEG_INFINITY = float("-inf")

# Largest field order for which multiplication log/exp tables are built.
_TABLE_LIMIT = 1 << 16

# Default ceiling on extension-field size during splitting-field searches.
DEFAULT_ROOT_BUDGET = 10 ** 6


class BudgetExceeded(RuntimeError):
    """An enumeration or search would exceed its configured budget."""


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# ---------------------------------------------------------------------------
# bootstrap helpers: polynomials over F_p as plain int lists (coeffs low->high)
# ---------------------------------------------------------------------------

def _fp_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _fp_mulmod(a, b, mod, p):
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    return _fp_mod(prod, mod, p)


def _fp_mod(a, mod, p):
    a = list(a)
    dm = len(mod) - 1
    inv_lead = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        if a[-1] == 0:
            a.pop()
            continue
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(mod):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _fp_trim(a)
    return a


def _fp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a = _fp_mod(a, b, p)
        a, b = b, a
    return a


def _fp_powmod_x(exp, mod, p):
    """x^exp reduced mod the F_p polynomial `mod`."""
    result = [1]
    base = _fp_mod([0, 1], mod, p)
    while exp:
        if exp & 1:
            result = _fp_mulmod(result, base, mod, p)
        base = _fp_mulmod(base, base, mod, p)
        exp >>= 1
    return result


def _fp_is_irreducible(f, p):
    """Degree-k poly over F_p: no factor of degree j for 1 <= j <= k//2."""
    k = len(f) - 1
    if k <= 0:
        return False
    for j in range(1, k // 2 + 1):
        frob = _fp_powmod_x(p ** j, f, p)  # x^{p^j} mod f
        frob = list(frob)
        while len(frob) < 2:
            frob.append(0)
        frob[1] = (frob[1] - 1) % p  # x^{p^j} - x
        if len(_fp_gcd(f, _fp_trim(frob), p)) - 1 != 0:
            return False
    return True


def _lexleast_modulus(p, k):
    """Monic irreducible of degree k over F_p with least integer encoding."""
    if k == 1:
        return (0, 1)
    for m in range(p ** k):
        digits = []
        t = m
        for _ in range(k):
            t, r = divmod(t, p)
            digits.append(r)
        cand = digits + [1]
        if _fp_is_irreducible(cand, p):
            return tuple(cand)
    raise ArithmeticError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------
# finite fields
# ---------------------------------------------------------------------------

class FiniteField:
    """F_{p^k} = F_p[y]/(modulus), elements encoded as integers in [0, q)."""

    def __init__(self, p, k=1, modulus=None):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if p == 2:
            raise ValueError("characteristic 2 is not supported (p > 2 required)")
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.k = k
        self.q = p ** k
        if modulus is None:
            modulus = _lexleast_modulus(p, k)
        else:
            modulus = tuple(c % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise ValueError("modulus must be monic of degree k")
            if k > 1 and not _fp_is_irreducible(list(modulus), p):
                raise ValueError("modulus is reducible over F_p")
        self.modulus = modulus
        self._log = None
        self._exp = None
        self._embeddings = {}

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FiniteField)
                and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus))

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    # -- encoding ----------------------------------------------------------

    def decode(self, a):
        """Digits of a, constant coordinate first."""
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return tuple(out)

    def encode(self, digits):
        a = 0
        for d in reversed(digits):
            a = a * self.p + d % self.p
        return a

    def element_str(self, a):
        """Digit string, most significant coordinate first; plain int for k=1."""
        if self.k == 1:
            return str(a)
        digits = self.decode(a)
        return "".join(str(d) for d in reversed(digits))

    def element_parse(self, s):
        s = s.strip()
        if self.k == 1:
            a = int(s)
            if not 0 <= a < self.p:
                raise ValueError(f"element {s!r} out of range for {self}")
            return a
        if not s.isdigit() or len(s) > self.k:
            raise ValueError(f"element {s!r} must be at most {self.k} base-{self.p} digits")
        digits = [int(c) for c in reversed(s)]
        if any(d >= self.p for d in digits):
            raise ValueError(f"element {s!r} has digits >= {self.p}")
        return self.encode(digits + [0] * (self.k - len(digits)))

    # -- arithmetic on encodings --------------------------------------------

    def add_i(self, a, b):
        p = self.p
        if self.k == 1:
            return (a + b) % p
        out, mult = 0, 1
        for _ in range(self.k):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def sub_i(self, a, b):
        p = self.p
        if self.k == 1:
            return (a - b) % p
        out, mult = 0, 1
        for _ in range(self.k):
            out += ((a - b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg_i(self, a):
        return self.sub_i(0, a)

    def _ensure_tables(self):
        if self._exp is not None or self.q > _TABLE_LIMIT:
            return self._exp is not None
        g = self._find_generator()
        exp = [1] * (self.q - 1)
        log = [0] * self.q
        cur = 1
        for i in range(1, self.q - 1):
            cur = self._mul_raw(cur, g)
            exp[i] = cur
            log[cur] = i
        log[1] = 0
        self._exp = exp
        self._log = log
        return True

    def _mul_raw(self, a, b):
        red = _fp_mulmod(list(self.decode(a)), list(self.decode(b)),
                         list(self.modulus), self.p)
        return self.encode(red + [0] * (self.k - len(red)))

    def _pow_raw(self, a, n):
        result = 1
        while n:
            if n & 1:
                result = self._mul_raw(result, a)
            a = self._mul_raw(a, a)
            n >>= 1
        return result

    def _find_generator(self):
        order = self.q - 1
        factors = []
        n, d = order, 2
        while d * d <= n:
            if n % d == 0:
                factors.append(d)
                while n % d == 0:
                    n //= d
            d += 1
        if n > 1:
            factors.append(n)
        for g in range(1, self.q):
            if all(self._pow_raw(g, order // f) != 1 for f in factors):
                return g
        raise ArithmeticError("no generator found")  # unreachable

    def mul_i(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self.k == 1:
            return (a * b) % self.p
        if self._ensure_tables():
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_raw(a, b)

    def inv_i(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverting zero in {self}")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._ensure_tables():
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self.pow_i(a, self.q - 2)

    def div_i(self, a, b):
        return self.mul_i(a, self.inv_i(b))

    def pow_i(self, a, n):
        if n < 0:
            return self.pow_i(self.inv_i(a), -n)
        result = 1
        while n:
            if n & 1:
                result = self.mul_i(result, a)
            a = self.mul_i(a, a)
            n >>= 1
        return result

    def pth_root_i(self, a):
        """Inverse of Frobenius: the unique b with b^p = a."""
        if self.k == 1:
            return a
        return self.pow_i(a, self.p ** (self.k - 1))

    # -- public element interface -------------------------------------------

    def element(self, value):
        """Coerce: ints are prime-subfield values (reduced mod p)."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("field mismatch")
            return value
        if isinstance(value, int):
            return FieldElement(self, value % self.p)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return range(self.q)

    def random_i(self, rng):
        return rng.randrange(self.q)

    # -- extensions and embeddings -------------------------------------------

    def extension(self, m):
        """The canonical field F_{p^{k*m}}."""
        if m == 1:
            return self
        return finite_field(self.p, self.k * m)

    def embedding(self, target):
        """Map of encodings F_{p^k} -> F_{p^{k*m}}: sends y to the first root
        of this field's modulus in the target (first in encoding order)."""
        if target == self:
            return lambda a: a
        key = (target.p, target.k, target.modulus)
        if key in self._embeddings:
            powers = self._embeddings[key]
        else:
            if target.p != self.p or target.k % self.k != 0:
                raise ValueError(f"{target} does not contain {self}")
            if self.k == 1:
                powers = None
            else:
                root = None
                for cand in range(target.q):
                    acc = 0
                    # evaluate modulus at cand inside target
                    for c in reversed(self.modulus):
                        acc = target.add_i(target.mul_i(acc, cand), c % self.p)
                    if acc == 0:
                        root = cand
                        break
                if root is None:
                    raise ArithmeticError("modulus has no root in target field")
                powers = [1]
                for _ in range(self.k - 1):
                    powers.append(target.mul_i(powers[-1], root))
            self._embeddings[key] = powers
        if powers is None:
            return lambda a: a
        def embed(a, _powers=powers, _t=target, _s=self):
            digits = _s.decode(a)
            acc = 0
            for d, pw in zip(digits, _powers):
                if d:
                    acc = _t.add_i(acc, _t.mul_i(d, pw))
            return acc
        return embed


@lru_cache(maxsize=None)
def finite_field(p, k=1):
    """Canonical (cached) field instance with the deterministic modulus."""
    return FiniteField(p, k)


class FieldElement:
    """Element of a FiniteField; thin wrapper over the integer encoding."""

    __slots__ = ("field", "i")

    def __init__(self, field, i):
        self.field = field
        self.i = i % field.q

    @property
    def vector(self):
        return self.field.decode(self.i)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("field mismatch")
            return other.i
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.add_i(self.i, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.sub_i(self.i, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.sub_i(o, self.i))

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.mul_i(self.i, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, self.field.div_i(self.i, o))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_i(self.i))

    def __pow__(self, n):
        return FieldElement(self.field, self.field.pow_i(self.i, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv_i(self.i))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.i == other % self.field.p
        return (isinstance(other, FieldElement)
                and self.field == other.field and self.i == other.i)

    def __hash__(self):
        return hash((self.field, self.i))

    def __bool__(self):
        return self.i != 0

    def __repr__(self):
        return self.field.element_str(self.i)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """Dense univariate polynomial over a FiniteField.

    coeffs: tuple of integer encodings, low degree first, no trailing zeros.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c % field.q,))

    @classmethod
    def monomial(cls, field, deg, c=1):
        return cls(field, (0,) * deg + (c,))

    @classmethod
    def from_ints(cls, field, ints):
        """Coefficients as plain integers reduced mod p (prime-subfield values)."""
        return cls(field, tuple(c % field.p for c in ints))

    @classmethod
    def from_string(cls, field, text):
        """Parse the exchange format: comma-separated elements, low degree first."""
        text = text.strip()
        if not text:
            return cls.zero(field)
        return cls(field, tuple(field.element_parse(tok) for tok in text.split(",")))

    def to_string(self):
        return ",".join(self.field.element_str(c) for c in self.coeffs)

    # -- structure -----------------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"Poly[{self.to_string() or '0'}]"

    def _check(self, other):
        if self.field != other.field:
            raise ValueError("polynomials over different fields")

    # -- ring operations -------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(f, tuple(f.add_i(self.coeff(i), other.coeff(i)) for i in range(n)))

    def __sub__(self, other):
        self._check(other)
        f = self.field
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(f, tuple(f.sub_i(self.coeff(i), other.coeff(i)) for i in range(n)))

    def __neg__(self):
        f = self.field
        return Poly(f, tuple(f.neg_i(c) for c in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        f = self.field
        if not self.coeffs or not other.coeffs:
            return Poly.zero(f)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = f.add_i(out[i + j], f.mul_i(a, b))
        return Poly(f, out)

    def scale(self, c):
        f = self.field
        c %= f.q
        if c == 0:
            return Poly.zero(f)
        return Poly(f, tuple(f.mul_i(a, c) for a in self.coeffs))

    def shift(self, n):
        """Multiply by x^n."""
        if not self.coeffs:
            return self
        return Poly(self.field, (0,) * n + self.coeffs)

    def __pow__(self, n):
        result = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divrem(self, other):
        """(q, r) with self = q*other + r and deg r < deg other."""
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        rem = list(self.coeffs)
        dv = other.coeffs
        dd = len(dv) - 1
        inv_lead = f.inv_i(dv[-1])
        if len(rem) - 1 < dd:
            return Poly.zero(f), self
        quot = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                c = f.mul_i(c, inv_lead)
                quot[i - dd] = c
                for j, m in enumerate(dv):
                    rem[i - dd + j] = f.sub_i(rem[i - dd + j], f.mul_i(c, m))
        return Poly(f, quot), Poly(f, rem)

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def __mod__(self, other):
        return self.divrem(other)[1]

    def monic(self):
        """(self/lc, lc)."""
        if self.is_zero:
            return self, 1
        lc = self.leading()
        if lc == 1:
            return self, 1
        return self.scale(self.field.inv_i(lc)), lc

    # -- evaluation & calculus ---------------------------------------------------

    def __call__(self, a):
        f = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = f.add_i(f.mul_i(acc, a), c)
        return acc

    def derivative(self):
        f = self.field
        out = []
        for i in range(1, len(self.coeffs)):
            out.append(f.mul_i(i % f.p, self.coeffs[i]))
        return Poly(f, out)

    def reverse(self, d):
        """x^d * self(1/x): reversed coefficients padded to degree d."""
        if not self.is_zero and self.degree > d:
            raise ValueError("degree exceeds reversal bound")
        padded = list(self.coeffs) + [0] * (d + 1 - len(self.coeffs))
        return Poly(self.field, tuple(reversed(padded)))


# ---------------------------------------------------------------------------
# module-level polynomial operations
# ---------------------------------------------------------------------------

def poly_gcd(a, b):
    """Monic gcd."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()[0] if not a.is_zero else a


def poly_xgcd(a, b):
    """(g, u, v) with g monic, u*a + v*b = g, standard degree bounds."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials is undefined")
    f = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(f), Poly.zero(f)
    t0, t1 = Poly.zero(f), Poly.one(f)
    while not r1.is_zero:
        q, r = r0.divrem(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    g, lc = r0.monic()
    if lc != 1:
        inv = f.inv_i(lc)
        s0, t0 = s0.scale(inv), t0.scale(inv)
    return g, s0, t0


def poly_valuation(fpoly, a):
    """Largest m with (x - a)^m dividing fpoly (a: integer encoding)."""
    if fpoly.is_zero:
        raise ValueError("valuation of the zero polynomial is undefined")
    field = fpoly.field
    if a == 0:
        m = 0
        while m < len(fpoly.coeffs) and fpoly.coeffs[m] == 0:
            m += 1
        return m
    lin = Poly(field, (field.neg_i(a), 1))
    m = 0
    cur = fpoly
    while True:
        q, r = cur.divrem(lin)
        if not r.is_zero:
            return m
        m += 1
        cur = q


def poly_is_inseparable(fpoly):
    """True iff the formal derivative vanishes (constants included)."""
    return fpoly.derivative().is_zero


def poly_pth_root(fpoly):
    """g with g(x)^p = fpoly; requires fpoly in k[x^p]."""
    field = fpoly.field
    p = field.p
    if fpoly.is_zero:
        return fpoly
    out = []
    for i, c in enumerate(fpoly.coeffs):
        if i % p == 0:
            out.append(field.pth_root_i(c))
        elif c:
            raise ValueError("polynomial is not in k[x^p]")
    return Poly(field, out)


def frobenius_power(fpoly):
    """fpoly(x)^p computed via the Frobenius identity (cheap and exact)."""
    field = fpoly.field
    p = field.p
    if fpoly.is_zero:
        return fpoly
    out = [0] * (p * (len(fpoly.coeffs) - 1) + 1)
    for i, c in enumerate(fpoly.coeffs):
        if c:
            out[p * i] = field.pow_i(c, p)
    return Poly(field, out)


def bezout_inseparable(a, b):
    """(H1, H2) inseparable with a*H2 - b*H1 = 1, for coprime a, b in k[x^p].

    Degree bounds deg H1 < deg a, deg H2 < deg b hold except in the standard
    degenerate constant cases.
    """
    field = a.field
    if a.field != b.field:
        raise ValueError("polynomials over different fields")
    for h in (a, b):
        if not poly_is_inseparable(h):
            raise ValueError("inputs must be inseparable or constant")
    if a.is_zero or b.is_zero:
        raise ValueError("inputs must be nonzero")
    if a.degree == 0:
        return Poly.zero(field), Poly.constant(field, field.inv_i(a.coeffs[0]))
    if b.degree == 0:
        return Poly.constant(field, field.neg_i(field.inv_i(b.coeffs[0]))), Poly.zero(field)
    ra, rb = poly_pth_root(a), poly_pth_root(b)
    g, u, v = poly_xgcd(ra, rb)
    if g.degree != 0:
        raise ValueError("inputs are not coprime")
    # u*ra + v*rb = 1; raise to the p-th power: u^p*a + v^p*b = 1
    h2 = frobenius_power(u)
    h1 = -frobenius_power(v)
    return h1, h2


# ---------------------------------------------------------------------------
# exact linear algebra on encoded row vectors
# ---------------------------------------------------------------------------

def rref(rows, field):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv_i(rows[r][c])
        if inv != 1:
            rows[r] = [field.mul_i(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [field.sub_i(x, field.mul_i(factor, y))
                           for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(row) for row in rows], pivots


def nullspace(rows, field, ncols=None):
    """Basis of the right kernel of the matrix, as encoded vectors."""
    if ncols is None:
        if not rows:
            raise ValueError("empty matrix needs an explicit column count")
        ncols = len(rows[0])
    if not rows:
        return [tuple(1 if j == c else 0 for j in range(ncols)) for c in range(ncols)]
    red, pivots = rref(rows, field)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg_i(red[r][fc])
        basis.append(tuple(vec))
    return basis


# ---------------------------------------------------------------------------
# roots and splitting fields
# ---------------------------------------------------------------------------

def poly_powmod(base, exp, mod):
    result = Poly.one(base.field)
    base = base % mod
    while exp:
        if exp & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        exp >>= 1
    return result


def roots_with_multiplicity(fpoly):
    """All roots of fpoly in its own field, with multiplicities, by scan."""
    field = fpoly.field
    if fpoly.is_zero:
        raise ValueError("roots of the zero polynomial")
    out = []
    cur = fpoly
    for a in range(field.q):
        if cur.is_zero or cur.degree == 0:
            break
        if cur(a) == 0:
            lin = Poly(field, (field.neg_i(a), 1))
            m = 0
            while True:
                qt, r = cur.divrem(lin)
                if not r.is_zero:
                    break
                cur = qt
                m += 1
            out.append((a, m))
    return out


def distinct_degree_profile(fpoly):
    """Sorted degrees of the irreducible factors (multiplicities ignored).

    Works directly on non-squarefree input: gcd with x^{q^j} - x picks up
    every degree-j factor once, and repeated gcd-division strips that degree
    to full multiplicity before moving on.
    """
    field = fpoly.field
    work = fpoly.monic()[0]
    degs = set()
    x = Poly.x(field)
    j = 0
    while work.degree > 0:
        j += 1
        if j > fpoly.degree:
            raise ArithmeticError("distinct-degree factorization did not terminate")
        frob = poly_powmod(x, field.q ** j, work)
        g = poly_gcd(frob - x, work)
        if g.degree > 0:
            degs.add(j)
            while True:
                h = poly_gcd(work, g)
                if h.degree == 0:
                    break
                work = work // h
    return sorted(degs) or [1]


def splitting_field_roots(fpoly, budget=DEFAULT_ROOT_BUDGET):
    """(ext_field, embed_fn, [(root, mult)]) over the smallest F_{q^K} where
    fpoly splits into linear factors; roots found by exhaustive scan."""
    field = fpoly.field
    if fpoly.is_zero:
        raise ValueError("cannot split the zero polynomial")
    if fpoly.degree == 0:
        return field, (lambda a: a), []
    degs = distinct_degree_profile(fpoly)
    ext_deg = 1
    for dj in degs:
        ext_deg = ext_deg * dj // math.gcd(ext_deg, dj)
    if field.q ** ext_deg > budget:
        raise BudgetExceeded(
            f"splitting field F_{{{field.p}^{field.k * ext_deg}}} exceeds budget {budget}")
    ext = field.extension(ext_deg)
    embed = field.embedding(ext)
    lifted = Poly(ext, tuple(embed(c) for c in fpoly.coeffs))
    roots = roots_with_multiplicity(lifted)
    total = sum(m for _, m in roots)
    if total != fpoly.degree:
        raise ArithmeticError("polynomial failed to split over computed field")
    return ext, embed, roots
