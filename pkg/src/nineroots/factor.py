"""Univariate factorization over finite fields and exact root solvers.

Covers what the verification suites actually need: squarefree/distinct-degree/
equal-degree factorization over GF(2^k) and GF(p), square roots and
Artin-Schreier roots in rational function fields over GF(2^k), rational-root
search over function fields by divisor enumeration, and irreducibility over Q
up to degree four.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

from .fields import Field, GF2Ext, PrimeField, QQ
from .poly import FunctionField, MultiPoly, RatFunc, poly_gcd


# ---------------------------------------------------------------------------
# square roots of polynomials (characteristic 2 and exact rationals)
# ---------------------------------------------------------------------------

def poly_sqrt(p: MultiPoly) -> MultiPoly | None:
    """Exact square root of a polynomial, or None."""
    if p.is_zero():
        return p
    F = p.field
    out = {}
    for e, c in p.terms.items():
        if any(x % 2 for x in e):
            return None
        r = F.sqrt(c)
        if r is None:
            return None
        out[tuple(x // 2 for x in e)] = r
    cand = MultiPoly(F, p.vars, out)
    return cand if cand * cand == p else None


# ---------------------------------------------------------------------------
# finite-field univariate factorization
# ---------------------------------------------------------------------------

def _field_size(F: Field) -> int:
    if isinstance(F, GF2Ext):
        return 1 << F.k
    if isinstance(F, PrimeField):
        return F.p
    raise ValueError(f"not a finite field: {F!r}")


def _pth_root_poly(f: MultiPoly, var: str) -> MultiPoly:
    """Inverse Frobenius: f = g(x^p) -> g, over a perfect finite field."""
    F = f.field
    p = F.char
    q = _field_size(F)
    out = {}
    i = f.vars.index(var)
    for e, c in f.terms.items():
        assert e[i] % p == 0
        root = F.pow(c, q // p)
        out[e[:i] + (e[i] // p,) + e[i + 1:]] = root
    return MultiPoly(F, f.vars, out)


def squarefree_decomposition(f: MultiPoly, var: str) -> list[tuple[MultiPoly, int]]:
    """Monic squarefree factors with multiplicities (finite fields)."""
    F = f.field
    p = F.char
    f = f.monic()
    out: list[tuple[MultiPoly, int]] = []
    if f.degree(var) <= 0:
        return out
    df = f.derivative(var)
    if df.is_zero():
        root = _pth_root_poly(f, var)
        return [(g, m * p) for g, m in squarefree_decomposition(root, var)]
    c = poly_gcd(f, df)
    w = f.divrem(c, var)[0]
    i = 1
    while w.degree(var) > 0:
        y = poly_gcd(w, c)
        z = w.divrem(y, var)[0]
        if z.degree(var) > 0:
            out.append((z.monic(), i))
        w = y
        c = c.divrem(y, var)[0]
        i += 1
    if c.degree(var) > 0:
        root = _pth_root_poly(c, var)
        out.extend((g, m * p) for g, m in squarefree_decomposition(root, var))
    return out


def _powmod(base: MultiPoly, e: int, mod: MultiPoly, var: str) -> MultiPoly:
    r = MultiPoly.one(base.field, base.vars)
    b = base.divrem(mod, var)[1]
    while e:
        if e & 1:
            r = (r * b).divrem(mod, var)[1]
        b = (b * b).divrem(mod, var)[1]
        e >>= 1
    return r


def _distinct_degree(f: MultiPoly, var: str) -> list[tuple[MultiPoly, int]]:
    """Split a monic squarefree f into products of irreducibles of equal degree."""
    F = f.field
    q = _field_size(F)
    out = []
    x = MultiPoly.variable(F, f.vars, var)
    h = x
    d = 0
    rest = f
    while rest.degree(var) > 0:
        d += 1
        if 2 * d > rest.degree(var):
            out.append((rest, rest.degree(var)))
            break
        h = _powmod(h, q, rest, var)
        g = poly_gcd(h - x, rest)
        if g.degree(var) > 0:
            out.append((g.monic(), d))
            rest = rest.divrem(g, var)[0].monic()
            h = h.divrem(rest, var)[1]
    return out


def _equal_degree(f: MultiPoly, d: int, var: str) -> list[MultiPoly]:
    """Factor a monic squarefree product of degree-d irreducibles."""
    F = f.field
    n = f.degree(var)
    if n == d:
        return [f.monic()]
    q = _field_size(F)
    # deterministic candidate sequence
    cands = []
    for j in range(1, n):
        for c in range(1, min(q, 64)):
            cands.append((j, c))
    for j, c in cands:
        alpha = MultiPoly(F, f.vars, {
            tuple(j if v == var else 0 for v in f.vars): F.from_int(c)
            if isinstance(F, PrimeField) else c % q
        })
        if F.char == 2:
            k_total = d * (F.k if isinstance(F, GF2Ext) else 1)
            t = MultiPoly.zero(F, f.vars)
            b = alpha.divrem(f, var)[1]
            for _ in range(k_total):
                t = t + b
                b = (b * b).divrem(f, var)[1]
            g = poly_gcd(t, f)
        else:
            e = (q ** d - 1) // 2
            t = _powmod(alpha, e, f, var) - MultiPoly.one(F, f.vars)
            g = poly_gcd(t, f)
        if 0 < g.degree(var) < n:
            a = g.monic()
            b = f.divrem(a, var)[0].monic()
            return _equal_degree(a, d, var) + _equal_degree(b, d, var)
    raise RuntimeError(f"equal-degree split failed for {f}")


def factor_univariate(f: MultiPoly, var: str | None = None) -> list[tuple[MultiPoly, int]]:
    """Monic irreducible factors with multiplicities, over a finite field.

    The unit (leading coefficient) is dropped; multiply-back checks should
    compare against the monic part of the input.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if var is None:
        active = f.active_vars()
        if len(active) != 1:
            raise ValueError("factor_univariate needs exactly one active variable")
        var = active[0]
    out: list[tuple[MultiPoly, int]] = []
    for g, m in squarefree_decomposition(f, var):
        for h, d in _distinct_degree(g, var):
            for irr in _equal_degree(h, d, var):
                out.append((irr, m))
    out.sort(key=lambda t: (t[0].degree(var), sorted(t[0].terms)))
    return out


def is_irreducible_finite(f: MultiPoly, var: str) -> bool:
    fs = factor_univariate(f, var)
    return len(fs) == 1 and fs[0][1] == 1 and fs[0][0].degree(var) == f.degree(var)


def roots_in_finite_field(f: MultiPoly, var: str) -> list:
    """All roots of f in its (finite) coefficient field, sorted."""
    F = f.field
    q = _field_size(F)
    if q <= 1 << 12:
        return sorted(a for a in F.elements() if F.is_zero(f.evaluate({var: a})))
    roots = []
    for g, _ in factor_univariate(f, var):
        if g.degree(var) == 1:
            c1 = g.coeff_of(var, 1).as_constant()
            c0 = g.coeff_of(var, 0).as_constant()
            roots.append(F.neg(F.div(c0, c1)))
    return sorted(roots)


# ---------------------------------------------------------------------------
# Artin-Schreier and quadratic roots over function fields GF(2^k)(u)
# ---------------------------------------------------------------------------

def _as_root_post_clear(e: MultiPoly, n: MultiPoly, var: str):
    """Solve P^2 + e*P = n for a polynomial P over GF(2^k)[var], or None.

    Peels leading terms; the only branch point is when deg n = 2 deg e, where a
    quadratic in the base field decides the leading coefficient.
    """
    F = e.field
    de = e.degree(var)
    elead = e.coeff_of(var, de).as_constant() if de >= 0 else None
    stack = [(n, MultiPoly.zero(F, n.vars))]
    while stack:
        cur, acc = stack.pop()
        while True:
            if cur.is_zero():
                return acc
            D = cur.degree(var)
            x = MultiPoly.variable(F, cur.vars, var)
            if de >= 0 and D == 2 * de:
                lead = cur.coeff_of(var, D).as_constant()
                # c^2 + elead*c = lead
                zeta = F.solve_artin_schreier(F.div(lead, F.mul(elead, elead)))
                if zeta is None:
                    break
                branches = []
                for z in (zeta, F.add(zeta, F.one())):
                    c = F.mul(elead, z)
                    t = MultiPoly.const(F, cur.vars, c) * x ** de
                    branches.append((cur + t * t + e * t, acc + t))
                cur, acc = branches[0]
                stack.append(branches[1])
                continue
            if de >= 0 and D > 2 * de:
                if D % 2:
                    break
                j = D // 2
                c = F.sqrt(cur.coeff_of(var, D).as_constant())
                t = MultiPoly.const(F, cur.vars, c) * x ** j
                cur, acc = cur + t * t + e * t, acc + t
                continue
            # D < 2*de (or e == 0 handled above since de = -1 -> D > 2de false)
            if de < 0:
                # equation P^2 = n
                r = poly_sqrt(cur)
                if r is None:
                    break
                return acc + r
            j = D - de
            if j < 0:
                break
            c = F.div(cur.coeff_of(var, D).as_constant(), elead)
            t = MultiPoly.const(F, cur.vars, c) * x ** j
            cur, acc = cur + t * t + e * t, acc + t
    return None


def artin_schreier_root_ff(K: FunctionField, c: RatFunc) -> RatFunc | None:
    """A solution w of w^2 + w = c in GF(2^k)(u), or None."""
    if K.char != 2:
        raise ValueError("Artin-Schreier roots only in characteristic 2")
    d = c.den
    e = poly_sqrt(d)
    if e is None:
        return None
    p = _as_root_post_clear(e, c.num, K.var)
    if p is None:
        return None
    w = RatFunc(p, e)
    assert w * w + w == c
    return w


def solve_artin_schreier_generic(F: Field, c):
    """Dispatch z^2 + z = c over any supported characteristic-2 field."""
    return F.solve_artin_schreier(c)


def quadratic_roots(F: Field, a, b, c) -> list:
    """All roots in F of a*z^2 + b*z + c (a != 0), deterministic order."""
    if F.is_zero(a):
        if F.is_zero(b):
            return []
        return [F.neg(F.div(c, b))]
    if F.char == 2:
        if F.is_zero(b):
            r = F.sqrt(F.div(c, a))
            return [] if r is None else [r]
        # z = (b/a) * zeta with zeta^2 + zeta = a*c/b^2
        rhs = F.div(F.mul(a, c), F.mul(b, b))
        zeta = F.solve_artin_schreier(rhs)
        if zeta is None:
            return []
        scale = F.div(b, a)
        return [F.mul(scale, zeta), F.mul(scale, F.add(zeta, F.one()))]
    # odd or zero characteristic
    disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, c)))
    r = F.sqrt(disc)
    if r is None:
        return []
    inv2a = F.inv(F.mul(F.from_int(2), a))
    z1 = F.mul(F.sub(r, b), inv2a)
    z2 = F.mul(F.sub(F.neg(r), b), inv2a)
    return [z1] if z1 == z2 else [z1, z2]


# ---------------------------------------------------------------------------
# rational roots over function fields (divisor enumeration)
# ---------------------------------------------------------------------------

def _monic_divisors(f: MultiPoly, var: str, cap: int = 4096):
    """All monic divisors of f over a finite field (f != 0)."""
    facs = factor_univariate(f, var)
    divs = [MultiPoly.one(f.field, f.vars)]
    for g, m in facs:
        new = []
        for d in divs:
            p = d
            for _ in range(m + 1):
                new.append(p)
                p = p * g
        if len(new) > cap:
            raise RuntimeError("divisor enumeration too large")
        divs = new
    return divs


def rational_roots_ff(coeffs: list[RatFunc], K: FunctionField) -> list[RatFunc]:
    """Roots in K of sum coeffs[i] * x^i, coefficients in K = F(u)."""
    # clear coefficient denominators
    den = MultiPoly.one(K.base, (K.var,))
    for c in coeffs:
        den = (den * c.den).exact_div(poly_gcd(den, c.den))
    ints = []
    for c in coeffs:
        ints.append((c.num * den.exact_div(c.den)))
    while ints and ints[-1].is_zero():
        ints.pop()
    if not ints:
        return []
    roots: list[RatFunc] = []
    if ints[0].is_zero():
        roots.append(K.zero())
        k = next(i for i, c in enumerate(ints) if not c.is_zero())
        ints = ints[k:]
    a0, an = ints[0], ints[-1]
    if a0.is_zero():
        return sorted_roots(roots)
    F = K.base
    units = [c for c in F.elements() if not F.is_zero(c)]
    for p in _monic_divisors(a0, K.var):
        for q in _monic_divisors(an, K.var):
            if not poly_gcd(p, q).is_constant():
                continue
            for c in units:
                cand = RatFunc(p.scale(c), q)
                acc = K.zero()
                for co in reversed(ints):
                    acc = acc * cand + RatFunc(co)
                if acc.is_zero():
                    if not any(cand == r for r in roots):
                        roots.append(cand)
    return sorted_roots(roots)


def sorted_roots(roots):
    return sorted(roots, key=lambda r: (r.num.degree(), r.den.degree(), r.render()))


def roots_in_field(F: Field, coeffs: list) -> list:
    """Roots in F of sum coeffs[i] x^i for generic F (small degrees)."""
    while coeffs and F.is_zero(coeffs[-1]):
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return []
    if len(coeffs) == 2:
        return [F.neg(F.div(coeffs[0], coeffs[1]))]
    if len(coeffs) == 3:
        return quadratic_roots(F, coeffs[2], coeffs[1], coeffs[0])
    if isinstance(F, FunctionField):
        return rational_roots_ff([c if isinstance(c, RatFunc) else RatFunc(c) for c in coeffs], F)
    if isinstance(F, (GF2Ext, PrimeField)):
        out = []
        for a in F.elements():
            acc = F.zero()
            for co in reversed(coeffs):
                acc = F.add(F.mul(acc, a), co)
            if F.is_zero(acc):
                out.append(a)
        return out
    if F is QQ or isinstance(F, type(QQ)):
        return _rational_roots_qq(coeffs)
    raise NotImplementedError(f"root finding over {F!r}")


def _rational_roots_qq(coeffs: list[Fraction]) -> list[Fraction]:
    den = 1
    for c in coeffs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = int_gcd(g, c)
    if g:
        ints = [c // g for c in ints]
    a0, an = ints[0], ints[-1]
    if a0 == 0:
        rest = _rational_roots_qq([Fraction(c) for c in ints[1:]])
        return sorted(set([Fraction(0)] + rest))
    roots = set()
    for p in _int_divisors(abs(a0)):
        for q in _int_divisors(abs(an)):
            for sign in (1, -1):
                cand = Fraction(sign * p, q)
                acc = Fraction(0)
                for c in reversed(ints):
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return sorted(roots)


def _int_divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# irreducibility over Q (degree <= 4)
# ---------------------------------------------------------------------------

def qq_irreducible_deg_le4(f: MultiPoly, var: str) -> bool:
    """Irreducibility over Q for degree 2..4 by roots plus quadratic-factor search."""
    d = f.degree(var)
    if d < 1 or d > 4:
        raise ValueError("degree must be between 1 and 4")
    if d == 1:
        return True
    coeffs = [f.coeff_of(var, i).as_constant() for i in range(d + 1)]
    if _rational_roots_qq(coeffs):
        return False
    if d <= 3:
        return True
    # integer primitive form
    den = 1
    for c in coeffs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for c in ints:
        g = int_gcd(g, c)
    ints = [c // g for c in ints]
    a0, a1, a2, a3, a4 = ints
    # search (e x^2 + b x + c)(h x^2 + r x + s) over Z (Gauss's lemma)
    for e in _signed_divisors(a4):
        h = a4 // e
        for c in _signed_divisors(a0):
            s = a0 // c
            # h*b + e*r = a3 and s*b + c*r = a1, then check the x^2 equation
            det = h * c - e * s
            if det != 0:
                bn, rn = c * a3 - e * a1, h * a1 - s * a3
                if bn % det or rn % det:
                    continue
                b, r = bn // det, rn // det
                if e * s + b * r + h * c == a2:
                    return False
            else:
                bound = sum(abs(x) for x in ints) + 2
                for b in range(-bound, bound + 1):
                    rn = a3 - h * b
                    if e == 0 or rn % e:
                        continue
                    r = rn // e
                    if s * b + c * r == a1 and e * s + b * r + h * c == a2:
                        return False
    return True


def _signed_divisors(n: int) -> list[int]:
    if n == 0:
        return [1, -1]
    ds = _int_divisors(abs(n))
    return [d for x in ds for d in (x, -x)]
