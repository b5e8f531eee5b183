"""Pieri-rule intersection numbers on the Grassmannian of pencils G(1, d).

Classes are two-row partitions (a, b) with d-1 >= a >= b >= 0; a
ramification condition of order e is the special class (e-1, 0).  These
are characteristic-zero intersection numbers: coefficients are exact
integers with no modular reduction.
"""

from __future__ import annotations


def _check_class(cls, d):
    a, b = cls
    if not (d - 1 >= a >= b >= 0):
        raise ValueError(f"class {cls} outside the 2 x {d - 1} box")


def pieri_multiply(class_sum, e, d):
    """Multiply by the special class (e-1, 0).

    Each (a, b) contributes every (a', b') with a' + b' = a + b + e - 1,
    d-1 >= a' >= a and a >= b' >= b; coefficients accumulate.
    """
    if not 1 <= e <= d:
        raise ValueError(f"order e = {e} outside 1..d")
    out = {}
    step = e - 1
    for (a, b), coeff in class_sum.items():
        _check_class((a, b), d)
        target = a + b + step
        for bp in range(b, a + 1):
            ap = target - bp
            if ap < a or ap > d - 1 or ap < bp:
                continue
            out[(ap, bp)] = out.get((ap, bp), 0) + coeff
    return out


def intersection_number(d, orders, full=False):
    """Coefficient of the point class (d-1, d-1) in the product of the
    special classes (e_i - 1, 0), starting from the identity class.

    Requires complementary total codimension: sum (e_i - 1) = 2(d - 1).
    With full=True, returns (number, final expansion).
    """
    orders = tuple(int(e) for e in orders)
    if any(e < 1 for e in orders):
        raise ValueError("orders must be >= 1")
    codim = sum(e - 1 for e in orders)
    if codim != 2 * (d - 1):
        raise ValueError(
            f"codimension mismatch: sum(e_i - 1) = {codim} != 2(d-1) = {2 * (d - 1)}")
    acc = {(0, 0): 1}
    for e in orders:
        acc = pieri_multiply(acc, e, d)
        if not acc:
            break
    number = acc.get((d - 1, d - 1), 0)
    if full:
        return number, acc
    return number
