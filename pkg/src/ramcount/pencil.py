"""Pencils of polynomials: enumeration of G(1, d)(F_q), Schubert-condition
membership, the three-point linear solver, and brute-force census counts.

A pencil is stored as the reduced row echelon form of its 2 x (d+1)
coefficient matrix, the unique canonical representative of the subspace.
The census filters the full enumeration by the vanishing conditions; a
vectorized engine (numpy, stratum by stratum over echelon shapes) and a
plain scan engine compute identical results, and the tests compare them.

Schubert-condition membership at (P, e) is a rank condition: the two rows'
order-e Taylor jets at P (Hasse derivatives; top coefficients for P = inf)
must form a matrix of rank <= 1, i.e. all 2x2 minors vanish.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from dataclasses import dataclass

import numpy as np

from .algebra import BudgetExceeded, Poly, nullspace, rref
from .ratmap import Divisor, ProjPoint, RatMap, is_separable, ram_index

DEFAULT_BUDGET = 10 ** 7

_CHUNK = 1 << 20


def enumeration_budget(budget=None):
    if budget is not None:
        return budget
    env = os.environ.get("RAMCOUNT_BUDGET")
    if env:
        return int(env)
    return DEFAULT_BUDGET


def gaussian_binomial_pencils(d, q):
    """Number of 2-dimensional subspaces of a (d+1)-dimensional F_q space."""
    return ((q ** (d + 1) - 1) * (q ** d - 1)) // ((q ** 2 - 1) * (q - 1))


class Pencil:
    """A point of G(1, d): canonical echelon basis of a rank-2 subspace."""

    __slots__ = ("field", "d", "rows")

    def __init__(self, field, d, rows, canonical=False):
        if len(rows) != 2 or any(len(r) != d + 1 for r in rows):
            raise ValueError("pencil needs two rows of length d+1")
        if not canonical:
            rows, pivots = rref(rows, field)
            if len(pivots) != 2:
                raise ValueError("rows do not span a 2-dimensional space")
        self.field = field
        self.d = d
        self.rows = (tuple(rows[0]), tuple(rows[1]))

    @classmethod
    def from_polys(cls, f, g, d=None):
        field = f.field
        if d is None:
            d = max(f.degree, g.degree)
        rows = []
        for poly in (f, g):
            if not poly.is_zero and poly.degree > d:
                raise ValueError("polynomial degree exceeds pencil bound")
            rows.append(list(poly.coeffs) + [0] * (d + 1 - len(poly.coeffs)))
        return cls(field, d, rows)

    def polys(self):
        return Poly(self.field, self.rows[0]), Poly(self.field, self.rows[1])

    def to_map(self):
        """(reduced map, base divisor including the point at infinity)."""
        A, B = self.polys()
        m, base = RatMap.new(A, B)
        inf_mult = self.d - max(A.degree, B.degree)
        if inf_mult > 0:
            base = base + Divisor({ProjPoint.infinity(self.field): inf_mult})
        return m, base

    def __eq__(self, other):
        return (isinstance(other, Pencil) and self.field == other.field
                and self.d == other.d and self.rows == other.rows)

    def __hash__(self):
        return hash((self.field, self.d, self.rows))

    def __repr__(self):
        A, B = self.polys()
        return f"Pencil<{A.to_string() or '0'} ; {B.to_string() or '0'}>"

    def to_json(self):
        return {"d": self.d,
                "rows": [",".join(self.field.element_str(c) for c in row)
                         for row in self.rows]}


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _strata(d):
    return [(j1, j2) for j1 in range(d + 1) for j2 in range(j1 + 1, d + 1)]


def _stratum_frees(d, j1, j2):
    free_a = [j for j in range(j1 + 1, d + 1) if j != j2]
    free_b = list(range(j2 + 1, d + 1))
    return free_a, free_b


def enumerate_pencils(d, field, budget=None):
    """Every pencil exactly once, as canonical echelon forms."""
    total = gaussian_binomial_pencils(d, field.q)
    limit = enumeration_budget(budget)
    if total > limit:
        raise BudgetExceeded(f"{total} pencils exceed budget {limit}")
    q = field.q
    for j1, j2 in _strata(d):
        free_a, free_b = _stratum_frees(d, j1, j2)
        na = len(free_a)
        for vals in itertools.product(range(q), repeat=na + len(free_b)):
            row_a = [0] * (d + 1)
            row_b = [0] * (d + 1)
            row_a[j1] = 1
            row_b[j2] = 1
            for pos, v in zip(free_a, vals[:na]):
                row_a[pos] = v
            for pos, v in zip(free_b, vals[na:]):
                row_b[pos] = v
            yield Pencil(field, d, (tuple(row_a), tuple(row_b)), canonical=True)


# ---------------------------------------------------------------------------
# Schubert conditions via jets
# ---------------------------------------------------------------------------

def vanishing_jet_matrix(field, d, point, e):
    """e x (d+1) matrix whose kernel is {polys of degree <= d with
    valuation >= e at the point}; rows are Hasse-derivative evaluations."""
    rows = []
    if point.is_infinity:
        for r in range(e):
            rows.append(tuple(1 if j == d - r else 0 for j in range(d + 1)))
    else:
        a = point.i
        powers = [1]
        for _ in range(d):
            powers.append(field.mul_i(powers[-1], a))
        for r in range(e):
            row = []
            for j in range(d + 1):
                if j < r:
                    row.append(0)
                else:
                    c = math.comb(j, r) % field.p
                    row.append(field.mul_i(c, powers[j - r]) if c else 0)
            rows.append(tuple(row))
    return rows


def schubert_condition(pencil, point, e):
    """True iff the pencil contains a nonzero member vanishing to order >= e
    at the point (valuation at infinity being d - degree)."""
    if not isinstance(point, ProjPoint):
        point = ProjPoint(pencil.field, int(point) % pencil.field.q)
    if not 1 <= e <= pencil.d:
        raise ValueError(f"order e = {e} outside 1..d")
    field = pencil.field
    M = vanishing_jet_matrix(field, pencil.d, point, e)
    jets = []
    for row in pencil.rows:
        jet = []
        for mrow in M:
            acc = 0
            for m, a in zip(mrow, row):
                if m and a:
                    acc = field.add_i(acc, field.mul_i(m, a))
            jet.append(acc)
        jets.append(jet)
    ja, jb = jets
    for r in range(e):
        for s in range(r + 1, e):
            minor = field.sub_i(field.mul_i(ja[r], jb[s]),
                                field.mul_i(ja[s], jb[r]))
            if minor != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# three-point solver (points normalized to 0, infinity, 1)
# ---------------------------------------------------------------------------

@dataclass
class ThreePointSolution:
    m: int                      # projective dimension of the solution space
    pencil: object              # Pencil when m == 0, else None
    separable: object           # bool when m == 0, else None
    base_divisor: object        # Divisor when m == 0
    count: object               # 1 iff the unique pencil is a separable map

    def to_json(self):
        out = {"m": self.m, "count": self.count}
        out["separable"] = self.separable
        out["pencil"] = self.pencil.to_json() if self.pencil is not None else None
        return out


def solve_three_point(d, e1, e2, e3, field):
    """Solve the normalized three-point linear system: F supported in
    degrees [e1, d], G in [0, d - e2], and (x-1)^{e3} dividing F - G.

    The solution space is a projective space P^m; when m = 0 the unique
    pencil is returned together with its separability.
    """
    orders = (e1, e2, e3)
    if any(e < 1 for e in orders):
        raise ValueError("orders must be >= 1")
    if sum(e - 1 for e in orders) != 2 * (d - 1):
        raise ValueError("orders do not match degree d (parity/degree check)")
    if any(e > d for e in orders):
        raise ValueError("some order exceeds d: no valid instance")
    # unknowns: a_j for j in [e1, d], then b_j for j in [0, d - e2]
    a_idx = list(range(e1, d + 1))
    b_idx = list(range(0, d - e2 + 1))
    ncols = len(a_idx) + len(b_idx)
    one = ProjPoint(field, 1)
    M = vanishing_jet_matrix(field, d, one, e3)
    rows = []
    for mrow in M:
        row = [mrow[j] for j in a_idx]
        row += [field.neg_i(mrow[j]) for j in b_idx]
        rows.append(row)
    kernel = nullspace(rows, field, ncols)
    m = len(kernel) - 1
    if m != 0:
        return ThreePointSolution(m=m, pencil=None, separable=None,
                                  base_divisor=None, count=0 if m > 0 else None)
    vec = kernel[0]
    fc = [0] * (d + 1)
    gc = [0] * (d + 1)
    for pos, j in enumerate(a_idx):
        fc[j] = vec[pos]
    for pos, j in enumerate(b_idx):
        gc[j] = vec[len(a_idx) + pos]
    F, G = Poly(field, fc), Poly(field, gc)
    pencil = Pencil.from_polys(F, G, d)
    rmap, base = pencil.to_map()
    sep = is_separable(rmap)
    count = 1 if (sep and base.total == 0) else 0
    if sep and base.total == 0:
        for pt, e in ((ProjPoint(field, 0), e1),
                      (ProjPoint.infinity(field), e2),
                      (ProjPoint(field, 1), e3)):
            if e > 1 and ram_index(rmap, pt) != e:
                raise ArithmeticError("three-point witness failed its ramification audit")
    return ThreePointSolution(m=0, pencil=pencil, separable=sep,
                              base_divisor=base, count=count)


# ---------------------------------------------------------------------------
# census
# ---------------------------------------------------------------------------

@dataclass
class CensusReport:
    total: int
    separable: int
    inseparable: int
    with_base_points: int
    witnesses: list
    d: int
    assignments: tuple
    field: object
    distinct_images: object = None  # bool: witnesses send the P_i to distinct points

    def to_json(self):
        return {
            "schema": 1,
            "total": self.total,
            "separable": self.separable,
            "inseparable": self.inseparable,
            "with_base_points": self.with_base_points,
            "d": self.d,
            "q": self.field.q,
            "points": [repr(pt) for pt, _ in self.assignments],
            "orders": [e for _, e in self.assignments],
            "distinct_images": self.distinct_images,
            "witnesses": [{"pencil": pencil.to_json(), "map": rmap.to_string()}
                          for pencil, rmap in self.witnesses],
        }


def count_maps_bruteforce(d, assignments, field, budget=None, engine="vector"):
    """Census of the intersection of the vanishing conditions in G(1, d)(F_q).

    assignments: sequence of (ProjPoint, order).  Every surviving pencil is
    classified through its reduced map; separable witnesses are audited for
    exact ramification orders and the Riemann-Hurwitz total.
    """
    assignments = tuple(
        (pt if isinstance(pt, ProjPoint) else ProjPoint(field, int(pt) % field.q), int(e))
        for pt, e in assignments)
    pts = [pt for pt, _ in assignments]
    if len(set(pts)) != len(pts):
        raise ValueError("assigned points must be distinct")
    for _, e in assignments:
        if not 1 <= e <= d:
            raise ValueError(f"order {e} outside 1..d")
    codim = sum(e - 1 for _, e in assignments)
    if codim != 2 * d - 2:
        raise ValueError(
            f"orders impose codimension {codim}, expected 2d-2 = {2 * d - 2}")
    total_pencils = gaussian_binomial_pencils(d, field.q)
    limit = enumeration_budget(budget)
    if total_pencils > limit:
        raise BudgetExceeded(f"{total_pencils} pencils exceed budget {limit}")
    if engine == "vector":
        survivors = _vector_survivors(d, assignments, field)
    elif engine == "scan":
        survivors = [pencil for pencil in enumerate_pencils(d, field, budget)
                     if all(schubert_condition(pencil, pt, e) for pt, e in assignments)]
    else:
        raise ValueError("engine must be 'vector' or 'scan'")
    return _classify_survivors(d, assignments, field, survivors)


def _classify_survivors(d, assignments, field, survivors):
    total = len(survivors)
    separable = inseparable = with_base = 0
    witnesses = []
    for pencil in survivors:
        rmap, base = pencil.to_map()
        has_base = base.total > 0
        if has_base:
            with_base += 1
        if is_separable(rmap) and not has_base:
            separable += 1
            _audit_witness(rmap, assignments, d)
            witnesses.append((pencil, rmap))
        else:
            inseparable += 1
    witnesses.sort(key=lambda pair: pair[0].rows)
    distinct = None
    if witnesses:
        # genuine ramification points only: an order-1 condition is vacuous
        # and puts no constraint on where its point lands
        ram_points = [pt for pt, e in assignments if e >= 2]
        distinct = True
        for _, rmap in witnesses:
            images = [rmap(pt) for pt in ram_points]
            if len({(im.field, im.i) for im in images}) != len(images):
                distinct = False
    return CensusReport(total=total, separable=separable, inseparable=inseparable,
                        with_base_points=with_base, witnesses=witnesses, d=d,
                        assignments=assignments, field=field,
                        distinct_images=distinct)


def _audit_witness(rmap, assignments, d):
    """Separable survivors must be exact: Riemann-Hurwitz forces the orders."""
    if rmap.degree != d:
        raise ArithmeticError("separable witness lost degree")
    claimed = 0
    for pt, e in assignments:
        if ram_index(rmap, pt) != e:
            raise ArithmeticError(f"witness ramification at {pt} is not exactly {e}")
        claimed += e - 1
    if claimed != 2 * d - 2:
        raise ArithmeticError("witness orders do not exhaust the different")


# -- vectorized engine --------------------------------------------------------

def _np_tables(field):
    if field.k == 1:
        return None
    field._ensure_tables()
    log = np.asarray(field._log, dtype=np.int64)
    exp = np.asarray(field._exp + [0], dtype=np.int64)  # sentinel slot
    return log, exp


def _np_mul_const(field, tables, c, arr):
    if c == 0:
        return np.zeros_like(arr)
    if c == 1:
        return arr.copy()
    if field.k == 1:
        return (arr * c) % field.p
    log, exp = tables
    idx = (log[arr] + int(log[c])) % (field.q - 1)
    out = exp[idx]
    return np.where(arr == 0, 0, out)


def _np_mul(field, tables, a, b):
    if field.k == 1:
        return (a * b) % field.p
    log, exp = tables
    idx = (log[a] + log[b]) % (field.q - 1)
    out = exp[idx]
    return np.where((a == 0) | (b == 0), 0, out)


def _np_add(field, a, b):
    p = field.p
    if field.k == 1:
        return (a + b) % p
    out = np.zeros_like(a)
    mult = 1
    aa, bb = a, b
    for _ in range(field.k):
        out += ((aa + bb) % p) * mult
        aa = aa // p
        bb = bb // p
        mult *= p
    return out


def _np_sub(field, a, b):
    p = field.p
    if field.k == 1:
        return (a - b) % p
    out = np.zeros_like(a)
    mult = 1
    aa, bb = a, b
    for _ in range(field.k):
        out += ((aa - bb) % p) * mult
        aa = aa // p
        bb = bb // p
        mult *= p
    return out


def _np_jet(field, tables, M, cols):
    """Jets of row vectors: cols is a list of (d+1) arrays of encodings."""
    jets = []
    for mrow in M:
        acc = None
        for m, col in zip(mrow, cols):
            if m == 0:
                continue
            term = _np_mul_const(field, tables, m, col)
            acc = term if acc is None else _np_add(field, acc, term)
        if acc is None:
            acc = np.zeros_like(cols[0])
        jets.append(acc)
    return jets


def _vector_survivors(d, assignments, field):
    q = field.q
    tables = _np_tables(field)
    mats = [vanishing_jet_matrix(field, d, pt, e) for pt, e in assignments]
    survivors = []
    for j1, j2 in _strata(d):
        free_a, free_b = _stratum_frees(d, j1, j2)
        n_total = q ** (len(free_a) + len(free_b))
        for start in range(0, n_total, _CHUNK):
            idx = np.arange(start, min(start + _CHUNK, n_total), dtype=np.int64)
            zeros = np.zeros(idx.size, dtype=np.int64)
            acols = [zeros] * (d + 1)
            bcols = [zeros] * (d + 1)
            acols[j1] = np.ones(idx.size, dtype=np.int64)
            bcols[j2] = acols[j1]
            div = idx
            for pos in free_a:
                acols[pos] = div % q
                div = div // q
            for pos in free_b:
                bcols[pos] = div % q
                div = div // q
            for M in mats:
                ja = _np_jet(field, tables, M, acols)
                jb = _np_jet(field, tables, M, bcols)
                e = len(M)
                mask = np.ones(acols[0].shape, dtype=bool)
                for r in range(e):
                    for s in range(r + 1, e):
                        minor = _np_sub(field,
                                        _np_mul(field, tables, ja[r], jb[s]),
                                        _np_mul(field, tables, ja[s], jb[r]))
                        mask &= (minor == 0)
                if not mask.all():
                    acols = [c[mask] for c in acols]
                    bcols = [c[mask] for c in bcols]
                if acols[0].size == 0:
                    break
            for t in range(acols[0].size):
                row_a = tuple(int(acols[j][t]) for j in range(d + 1))
                row_b = tuple(int(bcols[j][t]) for j in range(d + 1))
                survivors.append(Pencil(field, d, (row_a, row_b), canonical=True))
    return survivors


# ---------------------------------------------------------------------------
# general-position sampling
# ---------------------------------------------------------------------------

def sample_general_points(n, field, seed, forbidden_predicates=(), min_ratio=4,
                          max_tries=2000, include_infinity=False):
    """n distinct seeded-random points avoiding the degeneracy predicates.

    Deterministic for a given (n, field, seed).  The field must satisfy
    q >= min_ratio * n so that rejection sampling has room.
    """
    if field.q < min_ratio * n:
        raise ValueError(
            f"field of size {field.q} too small for {n} general points "
            f"(need q >= {min_ratio * n})")
    rng = random.Random(seed)
    pool_size = field.q + (1 if include_infinity else 0)
    for _ in range(max_tries):
        picks = rng.sample(range(pool_size), n)
        points = tuple(
            ProjPoint.infinity(field) if x == field.q else ProjPoint(field, x)
            for x in picks)
        if any(pred(points) for pred in forbidden_predicates):
            continue
        return points
    raise ValueError("rejection budget exhausted while sampling general points")
