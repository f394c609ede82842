"""Weierstrass models over function fields, point arithmetic, section solving.

A model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 keeps its coefficients
as univariate polynomials in the base coordinate over an exact field, plus the
Euler characteristic chi (1 for rational elliptic, 2 for K3).  All formulas
are characteristic-free.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .poly import MultiPoly, RatFunc, parse_poly


class WeierstrassModel:
    def __init__(self, K: Field, var: str, a: tuple, chi: int = 1):
        self.K = K
        self.var = var
        self.chi = chi
        a1, a2, a3, a4, a6 = a
        self.a1, self.a2, self.a3, self.a4, self.a6 = a1, a2, a3, a4, a6
        for i, ai in zip((1, 2, 3, 4, 6), a):
            if ai.degree(var) > i * chi:
                raise ValueError(f"deg a{i} = {ai.degree(var)} exceeds {i}*chi")

    @staticmethod
    def from_strings(K: Field, var: str, strings: tuple[str, str, str, str, str],
                     chi: int = 1) -> "WeierstrassModel":
        a = tuple(parse_poly(s, K, (var,)) for s in strings)
        return WeierstrassModel(K, var, a, chi)

    def coeffs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def _const(self, n: int) -> MultiPoly:
        return MultiPoly.from_int(self.K, (self.var,), n)

    # -- invariants ------------------------------------------------------
    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.coeffs()
        four = self._const(4)
        two = self._const(2)
        b2 = a1 * a1 + four * a2
        b4 = two * a4 + a1 * a3
        b6 = a3 * a3 + four * a6
        b8 = (a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3
              - a4 * a4)
        return b2, b4, b6, b8

    def c_invariants(self):
        b2, b4, b6, _ = self.b_invariants()
        c4 = b2 * b2 - self._const(24) * b4
        c6 = -(b2 * b2 * b2) + self._const(36) * b2 * b4 - self._const(216) * b6
        return c4, c6

    def discriminant(self) -> MultiPoly:
        b2, b4, b6, b8 = self.b_invariants()
        return (-(b2 * b2 * b8) - self._const(8) * b4 ** 3
                - self._const(27) * b6 * b6 + self._const(9) * b2 * b4 * b6)

    def j_invariant(self) -> RatFunc:
        d = self.discriminant()
        if d.is_zero():
            raise ValueError("j undefined: discriminant vanishes identically "
                             "(quasi-elliptic model rejected)")
        c4, _ = self.c_invariants()
        return RatFunc(c4 ** 3, d)

    def is_elliptic(self) -> bool:
        return not self.discriminant().is_zero()

    # -- coordinate changes ----------------------------------------------
    def rst_shift(self, r: MultiPoly, s: MultiPoly, t: MultiPoly) -> "WeierstrassModel":
        """Substitute x = x' + r, y = y' + s x' + t (unit scale)."""
        a1, a2, a3, a4, a6 = self.coeffs()
        two, three = self._const(2), self._const(3)
        na1 = a1 + two * s
        na2 = a2 - s * a1 + three * r - s * s
        na3 = a3 + r * a1 + two * t
        na4 = (a4 - s * a3 + two * r * a2 - (t + r * s) * a1 + three * r * r
               - two * s * t)
        na6 = (a6 + r * a4 + r * r * a2 + r ** 3 - t * a3 - t * t - r * t * a1)
        return WeierstrassModel(self.K, self.var, (na1, na2, na3, na4, na6),
                                self.chi)

    def scale_down(self, u: MultiPoly) -> "WeierstrassModel":
        """(x, y) -> (u^2 x, u^3 y): a_i -> a_i / u^i (must divide exactly)."""
        a = []
        for i, ai in zip((1, 2, 3, 4, 6), self.coeffs()):
            a.append(ai.exact_div(u ** i))
        return WeierstrassModel(self.K, self.var, tuple(a), self.chi)

    def shift_var(self, c) -> "WeierstrassModel":
        """Base shift t -> t + c for a field element c."""
        shifted = MultiPoly.variable(self.K, (self.var,), self.var) + \
            MultiPoly.const(self.K, (self.var,), c)
        return WeierstrassModel(
            self.K, self.var,
            tuple(ai.subst_poly(self.var, shifted) for ai in self.coeffs()),
            self.chi,
        )

    def flip(self) -> "WeierstrassModel":
        """Move t = infinity to t = 0: a_i(tau) = tau^(i*chi) a_i(1/tau)."""
        return WeierstrassModel(
            self.K, self.var,
            tuple(ai.reversed_weight(self.var, i * self.chi)
                  for i, ai in zip((1, 2, 3, 4, 6), self.coeffs())),
            self.chi,
        )

    def mobius(self, mu, lam) -> "WeierstrassModel":
        """Reposition fibers along t -> t/(mu*t + lam), lam != 0."""
        if self.K.is_zero(lam):
            raise ValueError("mobius reposition needs lam != 0")
        tvar = MultiPoly.variable(self.K, (self.var,), self.var)
        u = tvar.scale(mu) + MultiPoly.const(self.K, (self.var,), lam)
        out = []
        for i, ai in zip((1, 2, 3, 4, 6), self.coeffs()):
            w = i * self.chi
            acc = MultiPoly.zero(self.K, (self.var,))
            for k, c in ai.univar_coeffs(self.var).items():
                acc = acc + c * tvar ** k * u ** (w - k)
            out.append(acc)
        return WeierstrassModel(self.K, self.var, tuple(out), self.chi)

    def base_change_artin_schreier(self, new_var: str = "s",
                                   shift=None) -> "WeierstrassModel":
        """Pull back along t = s^2 + s + shift.

        In characteristic 2 this is the Artin-Schreier cover, wildly ramified
        over infinity only; elsewhere it is an ordinary quadratic base change
        ramified over t = shift - 1/4 and infinity.
        """
        s = MultiPoly.variable(self.K, (new_var,), new_var)
        image = s * s + s
        if shift is not None:
            image = image + MultiPoly.const(self.K, (new_var,), shift)
        out = []
        for ai in self.coeffs():
            acc = MultiPoly.zero(self.K, (new_var,))
            for k, c in ai.univar_coeffs(self.var).items():
                cc = MultiPoly.const(self.K, (new_var,), c.as_constant())
                acc = acc + cc * image ** k
            out.append(acc)
        return WeierstrassModel(self.K, new_var, tuple(out), 2 * self.chi)

    def base_change_ramified(self, lam, new_var: str = "s") -> "WeierstrassModel":
        """Pull back along t = lam*s^2/(s-1), totally ramified over t = 0."""
        if self.K.is_zero(lam):
            raise ValueError("base change needs lam != 0")
        s = MultiPoly.variable(self.K, (new_var,), new_var)
        one = MultiPoly.one(self.K, (new_var,))
        num = (s * s).scale(lam)
        den = s - one
        out = []
        for i, ai in zip((1, 2, 3, 4, 6), self.coeffs()):
            w = i * self.chi
            acc = MultiPoly.zero(self.K, (new_var,))
            for k, c in ai.univar_coeffs(self.var).items():
                cc = MultiPoly.const(self.K, (new_var,), c.as_constant())
                acc = acc + cc * num ** k * den ** (w - k)
            out.append(acc)
        return WeierstrassModel(self.K, new_var, tuple(out), 2 * self.chi)

    def quadratic_twist(self, shift=None) -> "WeierstrassModel":
        """Companion model with a2 += (t+c)*a1^2, a6 += (t+c)*a3^2.

        Needs a1 != 0.  The optional shift c selects the twist trivialized by
        the cover t = s^2 + s + c; different c are inequivalent over the
        ground field (they differ by a constant Artin-Schreier class).
        """
        if self.K.char != 2:
            raise ValueError("this quadratic twist form is characteristic 2 only")
        if self.a1.is_zero():
            raise ValueError("twist requires a1 not identically zero")
        t = MultiPoly.variable(self.K, (self.var,), self.var)
        if shift is not None:
            t = t + MultiPoly.const(self.K, (self.var,), shift)
        return WeierstrassModel(
            self.K, self.var,
            (self.a1, self.a2 + t * self.a1 * self.a1, self.a3,
             self.a4, self.a6 + t * self.a3 * self.a3),
            2 * self.chi,
        )

    def __repr__(self):
        return (f"W(chi={self.chi}; a1={self.a1}, a2={self.a2}, a3={self.a3}, "
                f"a4={self.a4}, a6={self.a6})")


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionPoint:
    x: RatFunc | None
    y: RatFunc | None

    @property
    def is_zero(self) -> bool:
        return self.x is None

    @staticmethod
    def zero() -> "SectionPoint":
        return SectionPoint(None, None)

    @staticmethod
    def of(x, y) -> "SectionPoint":
        x = x if isinstance(x, RatFunc) else RatFunc(x)
        y = y if isinstance(y, RatFunc) else RatFunc(y)
        return SectionPoint(x, y)

    def __str__(self):
        return "O" if self.is_zero else f"({self.x}, {self.y})"


def on_curve(W: WeierstrassModel, P: SectionPoint) -> bool:
    if P.is_zero:
        return True
    a1, a2, a3, a4, a6 = (RatFunc(c) for c in W.coeffs())
    x, y = P.x, P.y
    lhs = y * y + a1 * x * y + a3 * y
    rhs = x ** 3 + a2 * x * x + a4 * x + a6
    return (lhs - rhs).is_zero()


def point_neg(W: WeierstrassModel, P: SectionPoint) -> SectionPoint:
    if P.is_zero:
        return P
    a1, a3 = RatFunc(W.a1), RatFunc(W.a3)
    return SectionPoint(P.x, -P.y - a1 * P.x - a3)


def point_add(W: WeierstrassModel, P: SectionPoint, Q: SectionPoint) -> SectionPoint:
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P
    a1, a2, a3, a4, a6 = (RatFunc(c) for c in W.coeffs())
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if (x1 - x2).is_zero():
        # either inverse points or a doubling
        if (y2 + y1 + a1 * x1 + a3).is_zero():
            return SectionPoint.zero()
        two, three = RatFunc(W._const(2)), RatFunc(W._const(3))
        denom = two * y1 + a1 * x1 + a3
        lam = (three * x1 * x1 + two * a2 * x1 + a4 - a1 * y1) / denom
        nu = (-(x1 ** 3) + a4 * x1 + two * a6 - a3 * y1) / denom
    else:
        lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return SectionPoint(x3, y3)


def point_mul(W: WeierstrassModel, n: int, P: SectionPoint) -> SectionPoint:
    if n < 0:
        return point_mul(W, -n, point_neg(W, P))
    R = SectionPoint.zero()
    Q = P
    while n:
        if n & 1:
            R = point_add(W, R, Q)
        Q = point_add(W, Q, Q)
        n >>= 1
    return R


def point_order(W: WeierstrassModel, P: SectionPoint, cap: int = 16) -> int | None:
    R = P
    for n in range(1, cap + 1):
        if R.is_zero:
            return n
        R = point_add(W, R, P)
    return None


# ---------------------------------------------------------------------------
# section solving
# ---------------------------------------------------------------------------

def solve_y_for_x(W: WeierstrassModel, X) -> list[SectionPoint]:
    """All integral sections with the given polynomial x-coordinate.

    Coefficient-matches a polynomial ansatz of degree <= 3*chi for y against
    y^2 + A y = B with A = a1 X + a3, B = X^3 + a2 X^2 + a4 X + a6, peeling
    unknowns from the top degree down and branching at quadratic steps.
    """
    if isinstance(X, RatFunc):
        if not X.is_poly():
            return []
        X = X.as_poly()
    K, var = W.K, W.var
    A = W.a1 * X + W.a3
    B = X ** 3 + W.a2 * X * X + W.a4 * X + W.a6
    dy = 3 * W.chi
    sols = _solve_poly_quadratic(A, -B, dy, K, var)
    out = []
    for Y in sols:
        P = SectionPoint.of(RatFunc(X), RatFunc(Y))
        if on_curve(W, P):
            out.append(P)
    # deterministic order
    out.sort(key=lambda p: p.y.render())
    return out


def _solve_poly_quadratic(A: MultiPoly, C: MultiPoly, dmax: int,
                          K: Field, var: str) -> list[MultiPoly]:
    """All polynomial solutions Y (deg <= dmax) of Y^2 + A Y + C = 0.

    In characteristic 2 the square contributes no cross terms, so unknown
    coefficients peel off the top degree one quadratic at a time.  In other
    characteristics the square is completed instead.
    """
    from .factor import poly_sqrt, quadratic_roots

    if K.char != 2:
        half = MultiPoly.const(K, A.vars, K.inv(K.from_int(2)))
        Ah = A * half
        Z2 = Ah * Ah - C
        Z = poly_sqrt(Z2)
        sols = []
        if Z is not None:
            for s in (Z, -Z):
                Y = s - Ah
                if Y.is_zero() or Y.degree(var) <= dmax:
                    if not any(Y == t for t in sols):
                        sols.append(Y)
        return sols

    results: list[MultiPoly] = []
    degA = A.degree(var)
    coeffsA = {k: v.as_constant() for k, v in A.univar_coeffs(var).items()}

    def as_poly(partial: dict[int, object]) -> MultiPoly:
        return MultiPoly(K, (var,), {(k,): c for k, c in partial.items()
                                     if not K.is_zero(c)})

    def emit(Y: MultiPoly):
        if not any(Y == s for s in results):
            results.append(Y)

    def rec(partial: dict[int, object], unknown: list[int]):
        if len(results) > 64:
            return
        Y = as_poly(partial)
        r = Y * Y + A * Y + C
        if r.is_zero():
            emit(Y)  # remaining coefficients zero; the Vieta twin is added below
            return
        if not unknown:
            return
        j = unknown[0]
        k_top = max(2 * j, (j + degA) if degA >= 0 else -1)
        if r.degree(var) > k_top:
            return  # lower unknowns cannot reach this degree
        ccoef = r.coeff_of(var, k_top).as_constant()
        quad = K.one() if k_top == 2 * j else K.zero()
        lin = coeffsA.get(k_top - j, K.zero())
        if K.is_zero(quad) and K.is_zero(lin):
            if K.is_zero(ccoef):
                rec({**partial, j: K.zero()}, unknown[1:])
            return
        for root in quadratic_roots(K, quad, lin, ccoef):
            rec({**partial, j: root}, unknown[1:])

    rec({}, list(range(dmax, -1, -1)))
    # a quadratic has at most two roots: the twin of Y is A + Y (char 2)
    for Y in list(results):
        twin = Y + A
        if (twin.is_zero() or twin.degree(var) <= dmax):
            r = twin * twin + A * twin + C
            if r.is_zero():
                emit(twin)
    return results


def find_integral_sections(W: WeierstrassModel, field_degree: int | None = None):
    """Brute-force integral sections of a rational elliptic surface.

    Enumerates x-coordinates of degree <= 2 over GF(2^k) and solves for y.
    Returns (points including the zero section, group invariant factors).
    """
    from .fields import GF2Ext

    if W.chi != 1:
        raise ValueError("integral-section enumeration is for chi = 1 models")
    K = W.K
    if not isinstance(K, GF2Ext):
        raise ValueError("expected a binary constant field")
    k = field_degree or K.k
    if k > 4:
        raise ValueError("field degree capped at 4")
    if k % K.k:
        raise ValueError("field degree must be a multiple of the base degree")
    if k != K.k:
        big = GF2Ext(k)
        emb = K.embed_into(big)
        lift = lambda p: p.map_coeffs(emb, big)  # noqa: E731
        W = WeierstrassModel(big, W.var, tuple(lift(c) for c in W.coeffs()), W.chi)
        K = big
    var = W.var
    pts = []
    for c2 in K.elements():
        for c1 in K.elements():
            for c0 in K.elements():
                X = MultiPoly(K, (var,), {(2,): c2, (1,): c1, (0,): c0})
                pts.extend(solve_y_for_x(W, X))
    # group structure from element orders
    orders = []
    for P in pts:
        o = point_order(W, P)
        if o is None:
            raise RuntimeError("non-torsion integral section on an extremal surface")
        orders.append(o)
    n = len(pts) + 1
    if n == 1:
        return [SectionPoint.zero()], ()
    exponent = 1
    for o in orders:
        exponent = exponent * o // _gcd(exponent, o)
    if exponent == n:
        invariants = (n,)
    else:
        assert n % exponent == 0
        invariants = (n // exponent, exponent)
    return [SectionPoint.zero()] + pts, invariants


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# transporting sections through the model constructors
# ---------------------------------------------------------------------------

def _poly_at_ratfunc(p: MultiPoly, num: MultiPoly, den: MultiPoly, var: str) -> tuple[MultiPoly, int]:
    """p(num/den) * den^deg(p) as a polynomial, with the power used."""
    d = max(p.degree(var), 0)
    acc = MultiPoly.zero(p.field, num.vars)
    for k, c in p.univar_coeffs(var).items():
        cc = MultiPoly.const(p.field, num.vars, c.as_constant())
        acc = acc + cc * num ** k * den ** (d - k)
    return acc, d


def ratfunc_compose(f: RatFunc, num: MultiPoly, den: MultiPoly, var: str) -> RatFunc:
    """f(num/den) for a rational function f in `var`."""
    n, dn = _poly_at_ratfunc(f.num, num, den, var)
    d, dd = _poly_at_ratfunc(f.den, num, den, var)
    if dn >= dd:
        return RatFunc(n, d * den ** (dn - dd))
    return RatFunc(n * den ** (dd - dn), d)


def transport_section_mobius(W_src: WeierstrassModel, P: SectionPoint,
                             mu, lam) -> SectionPoint:
    """Image of a section under the mobius reposition of the model."""
    if P.is_zero:
        return P
    K, var, chi = W_src.K, W_src.var, W_src.chi
    t = MultiPoly.variable(K, (var,), var)
    u = t.scale(mu) + MultiPoly.const(K, (var,), lam)
    x = ratfunc_compose(P.x, t, u, var) * RatFunc(u ** (2 * chi))
    y = ratfunc_compose(P.y, t, u, var) * RatFunc(u ** (3 * chi))
    return SectionPoint(x, y)


def transport_section_artin_schreier(W_src: WeierstrassModel, P: SectionPoint,
                                     new_var: str = "s", shift=None) -> SectionPoint:
    if P.is_zero:
        return P
    K = W_src.K
    s = MultiPoly.variable(K, (new_var,), new_var)
    img = s * s + s
    if shift is not None:
        img = img + MultiPoly.const(K, (new_var,), shift)
    one = MultiPoly.one(K, (new_var,))
    x = ratfunc_compose(_rename(P.x, W_src.var, new_var), img, one, new_var)
    y = ratfunc_compose(_rename(P.y, W_src.var, new_var), img, one, new_var)
    return SectionPoint(x, y)


def transport_section_ramified(W_src: WeierstrassModel, P: SectionPoint, lam,
                               new_var: str = "s") -> SectionPoint:
    if P.is_zero:
        return P
    K, chi = W_src.K, W_src.chi
    s = MultiPoly.variable(K, (new_var,), new_var)
    one = MultiPoly.one(K, (new_var,))
    num = (s * s).scale(lam)
    den = s - one
    x = ratfunc_compose(_rename(P.x, W_src.var, new_var), num, den, new_var) \
        * RatFunc(den ** (2 * chi))
    y = ratfunc_compose(_rename(P.y, W_src.var, new_var), num, den, new_var) \
        * RatFunc(den ** (3 * chi))
    return SectionPoint(x, y)


def _rename(f: RatFunc, old: str, new: str) -> RatFunc:
    def ren(p: MultiPoly) -> MultiPoly:
        i = p.vars.index(old)
        vs = tuple(new if j == i else v for j, v in enumerate(p.vars))
        return MultiPoly(p.field, vs, p.terms)
    return RatFunc(ren(f.num), ren(f.den), reduce=False)


def twist_pullback_section(W_twist: WeierstrassModel, P: SectionPoint,
                           new_var: str = "s", shift=None) -> SectionPoint:
    """Section of the base-changed original model induced by a twist section.

    Pulling the (t+c)-twist back along t = s^2 + s + c and substituting
    y -> y + s*(a1 x + a3) identifies it with the pullback of the original
    model; this maps sections of the twist to anti-invariant sections there.
    """
    if P.is_zero:
        return P
    Ps = transport_section_artin_schreier(W_twist, P, new_var, shift)
    A = W_twist.base_change_artin_schreier(new_var, shift)
    s = RatFunc(MultiPoly.variable(W_twist.K, (new_var,), new_var))
    y = Ps.y + s * (RatFunc(A.a1) * Ps.x + RatFunc(A.a3))
    return SectionPoint(Ps.x, y)
