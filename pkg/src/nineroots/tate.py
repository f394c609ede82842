"""Kodaira fiber classification by Tate's algorithm, valid in residue
characteristic 2 and 3.

Everything is computed through exact polynomial arithmetic: a place is a monic
irreducible polynomial h (or infinity, handled by flipping the base
coordinate), valuations are h-divisibility counts, and residue work happens in
K or in K[t]/(h).  The algorithm follows the classical translation-based
steps; no shortcut valuation tables are used, so wild places come out right.

`FiberDatum.vdelta` is the local valuation of the minimal discriminant; it
exceeds the Kodaira Euler number exactly by the wild part, and the per-surface
sum of deg(place) * v(Delta) is 12*chi.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .factor import factor_univariate, poly_sqrt, roots_in_field
from .fields import Field, GF2Ext, PrimeField
from .poly import MultiPoly, PolyQuotientField, RatFunc, poly_gcd
from .lattice import RootType
from .weierstrass import SectionPoint, WeierstrassModel

INF = "inf"


@dataclass(frozen=True)
class Place:
    """A closed point of the base line: monic irreducible poly, or infinity."""

    poly: MultiPoly | None

    @staticmethod
    def infinity() -> "Place":
        return Place(None)

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    def degree(self, var: str) -> int:
        return 1 if self.poly is None else self.poly.degree(var)

    def render(self) -> str:
        return "inf" if self.poly is None else self.poly.render()

    def __str__(self):
        return self.render()


KODAIRA_EULER = {"I0": 0, "II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}
KODAIRA_COMPONENTS = {"I0": 1, "II": 1, "III": 2, "IV": 3, "IV*": 7, "III*": 8, "II*": 9}


def parse_kodaira(kod: str) -> tuple[str, int]:
    """('In', n) / ('In*', n) for the two series, ('add', 0) otherwise."""
    m = re.fullmatch(r"I(\d+)(\*?)", kod)
    if m:
        return ("In*" if m.group(2) else "In"), int(m.group(1))
    if kod in ("II", "III", "IV", "IV*", "III*", "II*"):
        return "add", 0
    raise ValueError(f"unknown Kodaira symbol {kod!r}")


def kodaira_euler(kod: str) -> int:
    if kod in KODAIRA_EULER:
        return KODAIRA_EULER[kod]
    kind, n = parse_kodaira(kod)
    return n + 6 if kind == "In*" else n


def kodaira_root_lattice(kod: str) -> RootType | None:
    table = {"I0": None, "I1": None, "II": None, "III": RootType.parse("A1"),
             "IV": RootType.parse("A2"), "IV*": RootType.parse("E6"),
             "III*": RootType.parse("E7"), "II*": RootType.parse("E8")}
    if kod in table:
        return table[kod]
    kind, n = parse_kodaira(kod)
    if kind == "In*":
        return RootType.parse(f"D{n + 4}")
    return RootType.parse(f"A{n - 1}") if n >= 2 else None


def kodaira_component_group_order(kod: str) -> int:
    table = {"I0": 1, "II": 1, "III": 2, "IV": 3, "IV*": 3, "III*": 2, "II*": 1}
    if kod in table:
        return table[kod]
    kind, n = parse_kodaira(kod)
    return 4 if kind == "In*" else n


@dataclass(frozen=True)
class FiberDatum:
    place: Place
    degree: int
    kodaira: str
    vdelta: int                    # valuation of the minimal discriminant
    split: bool | None = None      # multiplicative fibers over solvable residues
    scale_steps: int = 0           # times the model had to be un-scaled

    @property
    def euler(self) -> int:
        """Local Euler contribution including the wild part."""
        return self.vdelta

    @property
    def tame_euler(self) -> int:
        return kodaira_euler(self.kodaira)

    @property
    def wild(self) -> int:
        return self.vdelta - kodaira_euler(self.kodaira)

    @property
    def root_lattice(self) -> RootType | None:
        return kodaira_root_lattice(self.kodaira)

    @property
    def component_group_order(self) -> int:
        return kodaira_component_group_order(self.kodaira)

    def __str__(self):
        return f"{self.kodaira}/{self.place}"


class LocalAdapter:
    """Valuation, reduction and lifting at one finite place h."""

    def __init__(self, K: Field, var: str, h: MultiPoly):
        self.K = K
        self.var = var
        self.h = h.monic()
        self.deg = self.h.degree(var)
        if self.deg == 1:
            self.root = K.neg(self.h.coeff_of(var, 0).as_constant())
            self.residue: Field = K
        else:
            self.root = None
            self.residue = PolyQuotientField(K, self.h, var)

    def val(self, p: MultiPoly) -> int:
        if p.is_zero():
            return 1 << 30
        v = 0
        while True:
            q, r = p.divrem(self.h, self.var)
            if not r.is_zero():
                return v
            p = q
            v += 1

    def shifted(self, p: MultiPoly, k: int) -> MultiPoly:
        """p / h^k, exact."""
        for _ in range(k):
            q, r = p.divrem(self.h, self.var)
            if not r.is_zero():
                raise ValueError("inexact division by the uniformizer")
            p = q
        return p

    def reduce(self, p: MultiPoly):
        if self.deg == 1:
            return p.evaluate({self.var: self.root})
        return self.residue.reduce(p)

    def reduce_shifted(self, p: MultiPoly, k: int):
        return self.reduce(self.shifted(p, k))

    def lift(self, r) -> MultiPoly:
        if self.deg == 1:
            return MultiPoly.const(self.K, (self.var,), r)
        return r  # residue elements of K[t]/(h) are reduced polynomials

    def res_zero(self, r) -> bool:
        return self.residue.is_zero(r)


def _residue_roots(adapter: LocalAdapter, coeffs: list) -> list | None:
    """Roots in the residue field, or None when solving is unsupported."""
    try:
        return roots_in_field(adapter.residue, coeffs)
    except (NotImplementedError, ValueError):
        return None


def _sqrt_res(adapter: LocalAdapter, a):
    r = adapter.residue.sqrt(a)
    if r is None:
        raise ValueError("residue square root does not exist")
    return r


@dataclass
class LocalData:
    """Normalized local model and the coordinate changes that got there."""

    model: WeierstrassModel
    ops: list
    adapter: LocalAdapter
    fiber: "FiberDatum"


def transport_point(P: SectionPoint, ops: list, K: Field, var: str,
                    chi: int) -> SectionPoint:
    """Apply the recorded local coordinate changes to a section."""
    if P.is_zero:
        return P
    x, y = P.x, P.y
    for op in ops:
        kind = op[0]
        if kind == "flip":
            x = _ratfunc_flip(x, var, 2 * chi)
            y = _ratfunc_flip(y, var, 3 * chi)
        elif kind == "rst":
            _, r, s, t = op
            rr, ss, tt = (RatFunc(r), RatFunc(s), RatFunc(t))
            x2 = x - rr
            y2 = y - ss * x2 - tt
            x, y = x2, y2
        elif kind == "scale":
            _, hpow = op
            u = RatFunc(hpow)
            x = x / (u * u)
            y = y / (u * u * u)
        else:
            raise ValueError(f"unknown op {kind}")
    return SectionPoint(x, y)


def _ratfunc_flip(f: RatFunc, var: str, weight: int) -> RatFunc:
    """tau^weight * f(1/tau)."""
    num, den = f.num, f.den
    dn, dd = max(num.degree(var), 0), max(den.degree(var), 0)
    m = max(dn, dd)
    rn = num.reversed_weight(var, m)
    rd = den.reversed_weight(var, m)
    x = MultiPoly.variable(num.field, num.vars, var)
    out = RatFunc(rn, rd)
    if weight >= 0:
        return out * RatFunc(x ** weight)
    return out / RatFunc(x ** (-weight))


def tate_local(W: WeierstrassModel, place: Place) -> LocalData:
    """Full Tate algorithm at one place; returns fiber data plus transforms."""
    K, var, chi = W.K, W.var, W.chi
    ops: list = []
    if place.is_infinity:
        W = W.flip()
        ops.append(("flip",))
        h = MultiPoly.variable(K, (var,), var)
    else:
        h = place.poly
    ad = LocalAdapter(K, var, h)
    zero = MultiPoly.zero(K, (var,))
    scale_steps = 0

    while True:
        delta = W.discriminant()
        if delta.is_zero():
            raise ValueError("quasi-elliptic model rejected (discriminant vanishes)")
        v = ad.val(delta)
        if v == 0:
            fiber = FiberDatum(place, ad.deg, "I0", 0, None, scale_steps)
            return LocalData(W, ops, ad, fiber)

        # move the singular point of the reduction to (0, 0)
        x0, y0 = _singular_point(W, ad)
        r, t = ad.lift(x0), ad.lift(y0)
        W = W.rst_shift(r, zero, t)
        ops.append(("rst", r, zero, t))

        b2, b4, b6, b8 = W.b_invariants()
        if ad.val(b2) == 0:
            split = _split_multiplicative(W, ad)
            fiber = FiberDatum(place, ad.deg, f"I{v}", v, split, scale_steps)
            return LocalData(W, ops, ad, fiber)
        if ad.val(W.a6) < 2:
            fiber = FiberDatum(place, ad.deg, "II", v, None, scale_steps)
            return LocalData(W, ops, ad, fiber)
        if ad.val(b8) < 3:
            fiber = FiberDatum(place, ad.deg, "III", v, None, scale_steps)
            return LocalData(W, ops, ad, fiber)
        if ad.val(b6) < 3:
            roots = _residue_roots(ad, [ad.residue.neg(ad.reduce_shifted(W.a6, 2)),
                                        ad.reduce_shifted(W.a3, 1),
                                        ad.residue.one()])
            split = None if roots is None else len(roots) == 2
            fiber = FiberDatum(place, ad.deg, "IV", v, split, scale_steps)
            return LocalData(W, ops, ad, fiber)

        # normalize: h | a1, a2; h^2 | a3, a4; h^3 | a6
        W, ops = _normalize_step6(W, ad, ops, zero)
        R = ad.residue
        # P(T) = T^3 + a2,1 T^2 + a4,2 T + a6,3 over the residue field
        p_coeffs = [ad.reduce_shifted(W.a6, 3), ad.reduce_shifted(W.a4, 2),
                    ad.reduce_shifted(W.a2, 1), R.one()]
        mult_root, kind = _cubic_multiplicity(R, p_coeffs)
        if kind == "distinct":
            roots = _residue_roots(ad, p_coeffs)
            split = None if roots is None else len(roots) == 3
            fiber = FiberDatum(place, ad.deg, "I0*", v, split, scale_steps)
            return LocalData(W, ops, ad, fiber)
        if kind == "double":
            rlift = ad.lift(mult_root) * h
            W = W.rst_shift(rlift, zero, zero)
            ops.append(("rst", rlift, zero, zero))
            data = _in_star_loop(W, ad, ops, zero, h, v, place, scale_steps)
            if data is not None:
                return data
            raise RuntimeError("I_n* loop failed to terminate")
        # triple root
        rlift = ad.lift(mult_root) * h
        W = W.rst_shift(rlift, zero, zero)
        ops.append(("rst", rlift, zero, zero))
        # step 8: Y^2 + a3,2 Y - a6,4
        c1 = ad.reduce_shifted(W.a3, 2)
        c0 = ad.reduce_shifted(W.a6, 4)
        if _quadratic_distinct(R, c1, c0):
            roots = _residue_roots(ad, [R.neg(c0), c1, R.one()])
            split = None if roots is None else len(roots) == 2
            fiber = FiberDatum(place, ad.deg, "IV*", v, split, scale_steps)
            return LocalData(W, ops, ad, fiber)
        y1 = _quadratic_double_root(R, c1, c0)
        tlift = ad.lift(y1) * h * h
        W = W.rst_shift(zero, zero, tlift)
        ops.append(("rst", zero, zero, tlift))
        if ad.val(W.a4) < 4:
            fiber = FiberDatum(place, ad.deg, "III*", v, None, scale_steps)
            return LocalData(W, ops, ad, fiber)
        if ad.val(W.a6) < 6:
            fiber = FiberDatum(place, ad.deg, "II*", v, None, scale_steps)
            return LocalData(W, ops, ad, fiber)
        # non-minimal: scale down and restart
        W = W.scale_down(h)
        ops.append(("scale", h))
        scale_steps += 1


def _singular_point(W: WeierstrassModel, ad: LocalAdapter):
    R = ad.residue
    a1 = ad.reduce(W.a1)
    a2 = ad.reduce(W.a2)
    a3 = ad.reduce(W.a3)
    a4 = ad.reduce(W.a4)
    a6 = ad.reduce(W.a6)
    if R.char == 2:
        if not R.is_zero(a1):
            x0 = R.div(a3, a1)
            y0 = R.div(R.add(R.mul(x0, x0), a4), a1)
            return x0, y0
        if not R.is_zero(a3):
            raise ValueError("reduction is smooth but the discriminant vanishes")
        x0 = _sqrt_res(ad, a4)
        rhs = R.add(R.add(R.mul(R.mul(x0, x0), x0), R.mul(a2, R.mul(x0, x0))),
                    R.add(R.mul(a4, x0), a6))
        y0 = _sqrt_res(ad, rhs)
        return x0, y0
    # odd or zero characteristic: complete the square, use g = 4x^3+b2x^2+2b4x+b6;
    # the singular x is the unique multiple root of g, read off gcd(g, g')
    b2 = R.add(R.mul(a1, a1), R.mul(R.from_int(4), a2))
    b4 = R.add(R.mul(R.from_int(2), a4), R.mul(a1, a3))
    b6 = R.add(R.mul(a3, a3), R.mul(R.from_int(4), a6))
    var = "X"
    g = MultiPoly(R, (var,), {(3,): R.from_int(4), (2,): b2,
                              (1,): R.mul(R.from_int(2), b4), (0,): b6})
    gd = g.derivative(var)
    if gd.is_zero():
        # characteristic 3 with a triple root: 4 x^3 = -b6
        c = R.neg(R.div(b6, R.from_int(4)))
        if isinstance(R, PrimeField) and R.p == 3:
            x0 = c  # the cube map is the identity on GF(3)
        else:
            raise NotImplementedError("cube root in this residue field")
    else:
        gg = poly_gcd(g, gd).monic()
        dg = gg.degree(var)
        if dg == 1:
            x0 = R.neg(gg.coeff_of(var, 0).as_constant())
        elif dg == 2:
            x0 = R.neg(R.div(gg.coeff_of(var, 1).as_constant(), R.from_int(2)))
        else:
            raise ValueError("no rational multiple root: singular point not found")
    y0 = R.neg(R.div(R.add(R.mul(a1, x0), a3), R.from_int(2)))
    return x0, y0


def _split_multiplicative(W: WeierstrassModel, ad: LocalAdapter) -> bool | None:
    R = ad.residue
    a1 = ad.reduce(W.a1)
    a2 = ad.reduce(W.a2)
    roots = _residue_roots(ad, [R.neg(a2), a1, R.one()])
    if roots is None:
        return None
    return len(roots) == 2


def _normalize_step6(W, ad: LocalAdapter, ops, zero):
    R = ad.residue
    if R.char == 2:
        s0 = _sqrt_res(ad, ad.reduce(W.a2))
    else:
        s0 = R.neg(R.div(ad.reduce(W.a1), R.from_int(2)))
    slift = ad.lift(s0)
    W = W.rst_shift(zero, slift, zero)
    ops.append(("rst", zero, slift, zero))
    assert ad.val(W.a1) >= 1 and ad.val(W.a2) >= 1
    # kill a6 mod h^3 (and a3 mod h^2) through the double root of the
    # step-5 quadratic Y^2 + a3,1 Y - a6,2
    c1 = ad.reduce_shifted(W.a3, 1)
    c0 = ad.reduce_shifted(W.a6, 2)
    y1 = _quadratic_double_root(R, c1, c0)
    tlift = ad.lift(y1) * ad.h
    W = W.rst_shift(zero, zero, tlift)
    ops.append(("rst", zero, zero, tlift))
    assert ad.val(W.a3) >= 2 and ad.val(W.a6) >= 3 and ad.val(W.a4) >= 2
    return W, ops


def _quadratic_distinct(R: Field, c1, c0) -> bool:
    """Does Y^2 + c1 Y - c0 have distinct roots (over the algebraic closure)?"""
    if R.char == 2:
        return not R.is_zero(c1)
    disc = R.add(R.mul(c1, c1), R.mul(R.from_int(4), c0))
    return not R.is_zero(disc)


def _quadratic_double_root(R: Field, c1, c0):
    """The double root of Y^2 + c1 Y - c0 (assumes it is inseparable/double)."""
    if R.char == 2:
        r = R.sqrt(c0)
        if r is None:
            raise ValueError("double root not in the residue field")
        return r
    return R.neg(R.div(c1, R.from_int(2)))


def _cubic_multiplicity(R: Field, coeffs: list):
    """(multiple root or None, 'distinct' | 'double' | 'triple') for a monic cubic."""
    c0, c1, c2, _ = coeffs
    if R.char == 3:
        # P' = 2*c2*T + c1 (the cubic term drops out)
        if R.is_zero(c2) and R.is_zero(c1):
            # T^3 + c0 = (T - r)^3 with r^3 = -c0; only GF(3) is needed here
            if isinstance(R, PrimeField) and R.p == 3:
                return R.neg(c0), "triple"
            raise NotImplementedError("cube roots in this residue field")
        if R.is_zero(c2):
            return None, "distinct"  # derivative is a nonzero constant
        root = R.neg(R.div(c1, R.mul(R.from_int(2), c2)))
        if R.is_zero(_cubic_value(R, coeffs, root)):
            return root, "double"
        return None, "distinct"
    # characteristic != 3: the unique multiple root is the root of gcd(P, P')
    var = "T"
    F = R
    P = MultiPoly(F, (var,), {(3,): F.one(), (2,): c2, (1,): c1, (0,): c0})
    Pd = P.derivative(var)
    g = poly_gcd(P, Pd).monic()
    dg = g.degree(var)
    if dg <= 0:
        return None, "distinct"
    if dg == 1:
        root = F.neg(g.coeff_of(var, 0).as_constant())
    else:
        # a cubic has one multiple root, so a degree-2 gcd must be (T - r)^2
        if F.char == 2:
            root = F.sqrt(g.coeff_of(var, 0).as_constant())
            if root is None:
                raise ValueError("multiple root not rational over the residue field")
        else:
            root = F.neg(F.div(g.coeff_of(var, 1).as_constant(), F.from_int(2)))
    # multiplicity by repeated division
    lin = MultiPoly(F, (var,), {(1,): F.one(), (0,): F.neg(root)})
    e = 0
    q = P
    while True:
        qq, rr = q.divrem(lin, var)
        if not rr.is_zero():
            break
        q = qq
        e += 1
    return root, ("double" if e == 2 else "triple")


def _cubic_value(R: Field, coeffs, x):
    acc = R.zero()
    for c in reversed(coeffs):
        acc = R.add(R.mul(acc, x), c)
    return acc


def _in_star_loop(W, ad: LocalAdapter, ops, zero, h, v, place, scale_steps):
    R = ad.residue
    m = 1
    a2_1 = ad.reduce_shifted(W.a2, 1)
    while m < 64:
        c1 = ad.reduce_shifted(W.a3, m + 1)
        c0 = ad.reduce_shifted(W.a6, 2 * m + 2)
        if _quadratic_distinct(R, c1, c0):
            roots = _residue_roots(ad, [R.neg(c0), c1, R.one()])
            split = None if roots is None else len(roots) == 2
            n = 2 * m - 1
            fiber = FiberDatum(place, ad.deg, f"I{n}*", v, split, scale_steps)
            return LocalData(W, ops, ad, fiber)
        y1 = _quadratic_double_root(R, c1, c0)
        tlift = ad.lift(y1) * h ** (m + 1)
        W = W.rst_shift(zero, zero, tlift)
        ops.append(("rst", zero, zero, tlift))
        # quadratic a2,1 X^2 + a4,(m+2) X + a6,(2m+3)
        d1 = ad.reduce_shifted(W.a4, m + 2)
        d0 = ad.reduce_shifted(W.a6, 2 * m + 3)
        if _quad2_distinct(R, a2_1, d1, d0):
            roots = _residue_roots(ad, [d0, d1, a2_1])
            split = None if roots is None else len(roots) == 2
            n = 2 * m
            fiber = FiberDatum(place, ad.deg, f"I{n}*", v, split, scale_steps)
            return LocalData(W, ops, ad, fiber)
        x1 = _quad2_double_root(R, a2_1, d1, d0)
        rlift = ad.lift(x1) * h ** (m + 1)
        W = W.rst_shift(rlift, zero, zero)
        ops.append(("rst", rlift, zero, zero))
        m += 1
    return None


def _quad2_distinct(R: Field, a, b, c) -> bool:
    if R.char == 2:
        return not R.is_zero(b)
    disc = R.sub(R.mul(b, b), R.mul(R.from_int(4), R.mul(a, c)))
    return not R.is_zero(disc)


def _quad2_double_root(R: Field, a, b, c):
    if R.char == 2:
        r = R.sqrt(R.div(c, a))
        if r is None:
            raise ValueError("double root not in the residue field")
        return r
    return R.neg(R.div(b, R.mul(R.from_int(2), a)))


# ---------------------------------------------------------------------------
# whole-surface fiber configurations
# ---------------------------------------------------------------------------

def fiber_places(W: WeierstrassModel, hints: list[Place] = ()) -> list[Place]:
    """All places where the discriminant vanishes (plus infinity if needed)."""
    K, var, chi = W.K, W.var, W.chi
    delta = W.discriminant()
    if delta.is_zero():
        raise ValueError("quasi-elliptic model rejected (discriminant vanishes)")
    places: list[Place] = []
    leftover = delta.monic()

    def register(h: MultiPoly):
        nonlocal leftover
        h = h.monic()
        ad = LocalAdapter(K, var, h)
        v = ad.val(leftover)
        if v > 0 and not any((not p.is_infinity) and p.poly == h for p in places):
            places.append(Place(h))
            leftover = ad.shifted(leftover, v)

    for p in hints:
        if p is not None and not p.is_infinity:
            register(p.poly)

    if not leftover.is_constant() and isinstance(K, (GF2Ext, PrimeField)):
        for f, _ in factor_univariate(leftover, var):
            register(f)
    guard = 0
    while not leftover.is_constant():
        guard += 1
        if guard > 40:
            raise NotImplementedError(f"cannot split discriminant factor {leftover}")
        coeffs = [leftover.coeff_of(var, i).as_constant()
                  for i in range(leftover.degree(var) + 1)]
        roots = roots_in_field(K, coeffs)
        if roots:
            for c in roots:
                tpoly = MultiPoly.variable(K, (var,), var) - \
                    MultiPoly.const(K, (var,), c)
                register(tpoly)
            continue
        if leftover.degree(var) <= 2:
            register(leftover)
            continue
        sq = poly_sqrt(leftover.monic())
        if sq is not None:
            leftover = sq
            continue
        raise NotImplementedError(f"cannot split discriminant factor {leftover}")

    vinf = 12 * chi - delta.degree(var)
    if vinf > 0:
        places.append(Place.infinity())
    places.sort(key=lambda p: (p.is_infinity, p.degree(var), p.render()))
    return places


def fiber_configuration(W: WeierstrassModel, hints: list[Place] = ()) -> list[FiberDatum]:
    """Kodaira data at every singular place; checks full Euler accounting."""
    var = W.var
    delta = W.discriminant()
    out = []
    total = 0
    for place in fiber_places(W, hints):
        data = tate_local(W, place)
        out.append(data.fiber)
        if place.is_infinity:
            v_global = 12 * W.chi - delta.degree(var)
        else:
            v_global = LocalAdapter(W.K, var, place.poly).val(delta)
        total += place.degree(var) * v_global
        if data.fiber.scale_steps:
            raise ValueError(f"model is not minimal at {place}")
    if total != 12 * W.chi:
        raise RuntimeError(
            f"Euler accounting failed: sum {total} != {12 * W.chi}"
        )
    return out


def configuration_root_type(fibers: list[FiberDatum]) -> RootType:
    """Direct sum of the fiber root lattices (with place degrees)."""
    comps: list[tuple[str, int]] = []
    for f in fibers:
        rt = f.root_lattice
        if rt is None:
            continue
        comps.extend(list(rt.components) * f.degree)
    return RootType(tuple(comps))
