"""Integer binary forms in (x0, x1).

A form of degree d is a tuple ``cs`` of d+1 integers with ``cs[k]`` the
coefficient of x0^(d-k) x1^k, i.e. descending powers of x0 (so the
dehomogenization at x1 = 1 reads like a univariate polynomial coefficient
list).  The zero form is represented as the length-(d+1) tuple of zeros
only where a degree is forced; most operations reject it.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import sympy

Form = tuple[int, ...]

_t = sympy.Symbol("t")


class FormError(ValueError):
    pass


def degree(cs: Sequence[int]) -> int:
    return len(cs) - 1


def evaluate(cs: Sequence[int], a0: int, a1: int) -> int:
    """Evaluate the form at integer coordinates (a0, a1)."""
    d = degree(cs)
    pows0 = [1] * (d + 1)
    for i in range(1, d + 1):
        pows0[i] = pows0[i - 1] * a0
    acc = 0
    p1 = 1
    for k, c in enumerate(cs):
        if c:
            acc += c * pows0[d - k] * p1
        p1 *= a1
    return acc


def mul(a: Sequence[int], b: Sequence[int]) -> Form:
    """Product form (convolution of coefficient lists)."""
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return tuple(out)


def add(a: Sequence[int], b: Sequence[int]) -> Form:
    if len(a) != len(b):
        raise FormError("degree mismatch")
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Form:
    if len(a) != len(b):
        raise FormError("degree mismatch")
    return tuple(x - y for x, y in zip(a, b))


def scale(a: Sequence[int], c: int) -> Form:
    return tuple(c * x for x in a)


def power(a: Sequence[int], n: int) -> Form:
    out: Form = (1,)
    for _ in range(n):
        out = mul(out, a)
    return out


def content(cs: Sequence[int]) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    return g


def primitive(cs: Sequence[int]) -> Form:
    """Divide out the content; sign fixed so the leading nonzero is positive."""
    g = content(cs)
    if g == 0:
        raise FormError("zero form")
    out = [c // g for c in cs]
    for c in out:
        if c != 0:
            if c < 0:
                out = [-x for x in out]
            break
    return tuple(out)


def dx0(cs: Sequence[int]) -> Form:
    """Partial derivative with respect to x0 (degree drops by one)."""
    d = degree(cs)
    return tuple((d - k) * cs[k] for k in range(d))


def dx1(cs: Sequence[int]) -> Form:
    """Partial derivative with respect to x1."""
    d = degree(cs)
    return tuple(k * cs[k] for k in range(1, d + 1))


def compose_pair(
    outer: Sequence[int], inner0: Sequence[int], inner1: Sequence[int]
) -> Form:
    """Substitute forms: outer(inner0, inner1).

    inner0, inner1 must have equal degree D; result has degree deg(outer)*D.
    """
    d = degree(outer)
    if len(inner0) != len(inner1):
        raise FormError("inner degree mismatch")
    pows0 = [(1,)]
    pows1 = [(1,)]
    for _ in range(d):
        pows0.append(mul(pows0[-1], inner0))
        pows1.append(mul(pows1[-1], inner1))
    out_len = d * degree(inner0) + 1
    out = [0] * out_len
    for k, c in enumerate(outer):
        if c == 0:
            continue
        term = mul(pows0[d - k], pows1[k])
        assert len(term) == out_len
        for i, v in enumerate(term):
            out[i] += c * v
    return tuple(out)


def sylvester_resultant(p: Sequence[int], q: Sequence[int]) -> int:
    """Resultant of two binary forms via Bareiss fraction-free elimination."""
    n, m = degree(p), degree(q)
    size = n + m
    if size == 0:
        return 1
    mat = [[0] * size for _ in range(size)]
    for i in range(m):
        for j, c in enumerate(p):
            mat[i][i + j] = c
    for i in range(n):
        for j, c in enumerate(q):
            mat[m + i][i + j] = c
    return _bareiss_det(mat)


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            for r in range(k + 1, n):
                if mat[r][k] != 0:
                    mat[k], mat[r] = mat[r], mat[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = mat[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * pivot - mat[i][k] * mat[k][j]) // prev
            mat[i][k] = 0
        prev = pivot
    return sign * mat[n - 1][n - 1]


def bezout_cofactors(
    p: Sequence[int], q: Sequence[int]
) -> tuple[int, Form, Form, Form, Form]:
    """Integer forms (g1, g2, h1, h2) of degree d-1 with

        g1*p + g2*q = R * x0^(2d-1)      h1*p + h2*q = R * x1^(2d-1)

    where R = Res(p, q) != 0.  Returns (R, g1, g2, h1, h2).
    """
    d = degree(p)
    if degree(q) != d:
        raise FormError("degree mismatch")
    res = sylvester_resultant(p, q)
    if res == 0:
        raise FormError("resultant is zero")
    size = 2 * d
    # columns: a_0..a_{d-1} (g1, descending), b_0..b_{d-1} (g2)
    # row r = coefficient of x0^(2d-1-r) x1^r in g1*p + g2*q
    mat = [[Fraction(0)] * size for _ in range(size)]
    for i in range(d):
        for j, c in enumerate(p):
            mat[i + j][i] = Fraction(c)
        for j, c in enumerate(q):
            mat[i + j][d + i] = Fraction(c)
    sol_top = _solve_fraction(mat, 0, size, res)
    sol_bot = _solve_fraction(mat, size - 1, size, res)
    g1 = tuple(int(x) for x in sol_top[:d])
    g2 = tuple(int(x) for x in sol_top[d:])
    h1 = tuple(int(x) for x in sol_bot[:d])
    h2 = tuple(int(x) for x in sol_bot[d:])
    return res, g1, g2, h1, h2


def _solve_fraction(mat, rhs_row: int, size: int, res: int) -> list[Fraction]:
    """Solve M x = res * e_{rhs_row} by Gaussian elimination over Q.

    The solution is res * (M^{-1} e) = adj(M) e up to the sign of det,
    hence integral; integrality is asserted.
    """
    a = [row[:] + [Fraction(0)] for row in mat]
    a[rhs_row][size] = Fraction(res)
    for col in range(size):
        piv = None
        for r in range(col, size):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise FormError("singular cofactor system")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = [a[r][size] for r in range(size)]
    for x in out:
        if x.denominator != 1:
            raise FormError("cofactor solution not integral")
    return out


def to_sympy(cs: Sequence[int]) -> sympy.Poly:
    """Dehomogenization at x1 = 1 as a sympy Poly in t (may drop degree)."""
    return sympy.Poly(list(cs), _t, domain="ZZ")


def x1_multiplicity(cs: Sequence[int]) -> int:
    """Multiplicity of the x1 factor (= leading zero count)."""
    m = 0
    for c in cs:
        if c == 0:
            m += 1
        else:
            break
    return m


def distinct_root_count(cs: Sequence[int]) -> int:
    """Number of distinct projective roots over the algebraic closure."""
    if all(c == 0 for c in cs):
        raise FormError("zero form")
    m = x1_multiplicity(cs)
    uni = list(cs[m:])
    count = 1 if m > 0 else 0
    if len(uni) <= 1:
        return count
    poly = sympy.Poly(uni, _t, domain="QQ")
    g = sympy.gcd(poly, poly.diff(_t))
    count += poly.degree() - sympy.Poly(g, _t).degree()
    return count


def factor_form(cs: Sequence[int]) -> tuple[int, list[tuple[Form, int]]]:
    """Factor a binary form over Q.

    Returns ``(x1_mult, factors)`` where factors are primitive irreducible
    non-x1 forms (descending coefficient tuples) with multiplicities.
    """
    m = x1_multiplicity(cs)
    uni = list(cs[m:])
    if len(uni) <= 1:
        return m, []
    poly = sympy.Poly(uni, _t, domain="QQ")
    _, factors = sympy.factor_list(poly)
    out = []
    for fac, mult in factors:
        fac_cs = tuple(int(c) for c in sympy.Poly(fac, _t, domain="QQ").all_coeffs())
        out.append((primitive(fac_cs), int(mult)))
    return m, out


def rational_projective_roots(cs: Sequence[int]) -> list[tuple[int, int]]:
    """Rational projective roots [a0:a1] (coprime, a1 >= 0) of a binary form,
    including [1:0] when x1 divides the form."""
    m, factors = factor_form(cs)
    roots = []
    if m > 0:
        roots.append((1, 0))
    for fac, _ in factors:
        if degree(fac) == 1:
            a, b = fac  # a*t + b
            g = math.gcd(a, b)
            a0, a1 = -b // g, a // g
            if a1 < 0 or (a1 == 0 and a0 < 0):
                a0, a1 = -a0, -a1
            roots.append((a0, a1))
    return roots


def divides(div: Sequence[int], num: Sequence[int]) -> bool:
    """Exact divisibility of binary forms over Q."""
    md, mn = x1_multiplicity(div), x1_multiplicity(num)
    if md > mn:
        return False
    pd = sympy.Poly(list(div[md:]), _t, domain="QQ")
    pn = sympy.Poly(list(num[mn:]), _t, domain="QQ")
    if pd.degree() > pn.degree():
        return False
    return sympy.rem(pn, pd, _t) == 0
