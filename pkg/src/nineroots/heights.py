"""Mordell-Weil height pairing and Neron-Severi discriminants.

The height of an integral section is 2*chi + 2 (P.O) - sum of local
correction terms; the corrections are entries of the inverse Gram matrices of
the fiber root lattices, evaluated through exact local data from Tate's
algorithm.  The bilinear pairing is recovered by polarization, so only
single-section component identification is ever needed.
"""

from __future__ import annotations

from fractions import Fraction

from .factor import quadratic_roots
from .lattice import RootType, dual_vector
from .poly import MultiPoly, RatFunc
from .tate import (FiberDatum, LocalAdapter, LocalData, Place, fiber_places,
                   parse_kodaira, tate_local, transport_point)
from .weierstrass import SectionPoint, WeierstrassModel, point_add


def contribution_value(kod: str, category: str) -> Fraction:
    """Correction terms as inverse-Gram entries of the fiber root lattice."""
    if category == "zero":
        return Fraction(0)
    if kod == "III":
        return -dual_vector(RootType.parse("A1"), 0, 1).norm()
    if kod == "IV":
        return -dual_vector(RootType.parse("A2"), 0, 1).norm()
    if kod == "I0*":
        return -dual_vector(RootType.parse("D4"), 0, 1).norm()
    if kod == "IV*":
        return -dual_vector(RootType.parse("E6"), 0, 1).norm()
    if kod == "III*":
        return -dual_vector(RootType.parse("E7"), 0, 7).norm()
    kind, n = parse_kodaira(kod)
    if kind == "In*":
        d = RootType.parse(f"D{n + 4}")
        if category == "near":
            return -dual_vector(d, 0, 1).norm()
        return -dual_vector(d, 0, n + 4).norm()
    raise ValueError(f"no table entry for {kod}/{category}")


def in_contribution(n: int, i: int) -> Fraction:
    """Correction i(n-i)/n for component i of an I_n fiber, via the dual Gram."""
    i = i % n
    if i == 0:
        return Fraction(0)
    return -dual_vector(RootType.parse(f"A{n - 1}"), 0, i).norm()


def _val_ratfunc(ad: LocalAdapter, f: RatFunc) -> int:
    return ad.val(f.num) - ad.val(f.den)


def _invert_mod(a: MultiPoly, m: MultiPoly, var: str) -> MultiPoly:
    """Inverse of a modulo m in K[var] (a must be a unit mod m)."""
    r0, r1 = m, a.divrem(m, var)[1]
    s0 = MultiPoly.zero(a.field, a.vars)
    s1 = MultiPoly.one(a.field, a.vars)
    while not r1.is_zero():
        lc = r1.coeff_of(var, r1.degree(var))
        q, r = r0.divrem(r1.monic(), var)
        q = q.scale(a.field.inv(lc.as_constant()))
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0.degree(var) != 0:
        raise ZeroDivisionError("element is not a unit modulo m")
    c = a.field.inv(r0.as_constant())
    return s0.scale(c).divrem(m, var)[1]


def _hensel_lift_slope(local: LocalData, precision: int) -> MultiPoly | None:
    """Lift a root of T^2 + a1 T - a2 to the requested h-adic precision."""
    W = local.model
    ad = local.adapter
    R = ad.residue
    a1r = ad.reduce(W.a1)
    a2r = ad.reduce(W.a2)
    roots = quadratic_roots(R, R.one(), a1r, R.neg(a2r))
    if not roots:
        return None
    alpha = ad.lift(roots[0])
    var = W.var
    hN = ad.h ** precision
    two = MultiPoly.from_int(W.K, (var,), 2)
    for _ in range(precision.bit_length() + 1):
        f = (alpha * alpha + W.a1 * alpha - W.a2).divrem(hN, var)[1]
        fp = (two * alpha + W.a1).divrem(hN, var)[1]
        inv = _invert_mod(fp, hN, var)
        alpha = (alpha - f * inv).divrem(hN, var)[1]
    return alpha


def component_index_multiplicative(local: LocalData, P: SectionPoint) -> int:
    """min(i, n-i) for the fiber component met by P at a split I_n place."""
    fiber = local.fiber
    _, n = parse_kodaira(fiber.kodaira)
    ad = local.adapter
    Pt = transport_point(P, local.ops, local.model.K, local.model.var,
                         local.model.chi)
    vX = _val_ratfunc(ad, Pt.x)
    vY = _val_ratfunc(ad, Pt.y)
    if vX < 1 or vY < 1:
        return 0
    if n <= 3:
        return 1
    alpha = _hensel_lift_slope(local, n + 2)
    if alpha is None:
        raise ValueError("component index at a non-split multiplicative fiber")
    var = local.model.var
    w1 = Pt.y - RatFunc(alpha) * Pt.x
    beta = -(alpha + local.model.a1)
    w2 = Pt.y - RatFunc(beta) * Pt.x
    v1 = min(_val_ratfunc(ad, w1), n)
    v2 = min(_val_ratfunc(ad, w2), n)
    i = min(v1, v2)
    if i > n // 2:
        i = n - i
    return i


def local_contribution(local: LocalData, P: SectionPoint) -> Fraction:
    """Single-section correction term at one place (per geometric fiber)."""
    fiber = local.fiber
    kod = fiber.kodaira
    if kod in ("I0", "I1", "II", "II*"):
        return Fraction(0)
    ad = local.adapter
    Pt = transport_point(P, local.ops, local.model.K, local.model.var,
                         local.model.chi)
    vX = _val_ratfunc(ad, Pt.x)
    vY = _val_ratfunc(ad, Pt.y)
    if vX < 1 or vY < 1:
        return Fraction(0)
    kind, n = parse_kodaira(kod)
    if kind == "In":
        return in_contribution(n, component_index_multiplicative(local, P))
    if kind == "In*" and n >= 1:
        category = "near" if vX == 1 else "far"
        return contribution_value(kod, category)
    return contribution_value(kod, "nonzero")


def compute_local_data(W: WeierstrassModel, hints=()) -> list[LocalData]:
    out = []
    for place in fiber_places(W, hints):
        data = tate_local(W, place)
        if data.fiber.kodaira != "I0":
            out.append(data)
    return out


def intersection_with_zero(W: WeierstrassModel, P: SectionPoint) -> Fraction:
    if P.is_zero:
        raise ValueError("P.O undefined for the zero section")
    var = W.var
    den_deg = max(P.x.den.degree(var), 0)
    num_deg = max(P.x.num.degree(var), 0)
    total = den_deg + max(0, num_deg - den_deg - 2 * W.chi)
    if total % 2:
        raise ValueError("odd contact order with the zero section")
    return Fraction(total, 2)


def section_height(W: WeierstrassModel, P: SectionPoint,
                   locals_: list[LocalData] | None = None, hints=()) -> Fraction:
    """Canonical height 2*chi + 2 (P.O) - sum of corrections; 0 for torsion."""
    if P.is_zero:
        return Fraction(0)
    if locals_ is None:
        locals_ = compute_local_data(W, hints)
    h = Fraction(2 * W.chi) + 2 * intersection_with_zero(W, P)
    for local in locals_:
        contr = local_contribution(local, P)
        if contr:
            h -= local.fiber.degree * contr
    return h


def height_pairing(W: WeierstrassModel, P: SectionPoint, Q: SectionPoint,
                   locals_: list[LocalData] | None = None, hints=()) -> Fraction:
    """Bilinear pairing by polarization of the height quadratic form."""
    if locals_ is None:
        locals_ = compute_local_data(W, hints)
    if P.is_zero or Q.is_zero:
        return Fraction(0)
    hP = section_height(W, P, locals_)
    hQ = section_height(W, Q, locals_)
    hPQ = section_height(W, point_add(W, P, Q), locals_)
    return (hPQ - hP - hQ) / 2


def ns_discriminant(W: WeierstrassModel, sections: list[SectionPoint],
                    torsion_order: int, hints=()) -> int:
    """|disc| of the lattice spanned by the zero section, fibers, and the
    given sections: product of fiber-lattice discriminants times the height
    Gram determinant over the torsion order squared."""
    locals_ = compute_local_data(W, hints)
    disc = 1
    for local in locals_:
        rt = local.fiber.root_lattice
        if rt is not None:
            disc *= rt.discriminant() ** local.fiber.degree
    k = len(sections)
    if k:
        gram = [[Fraction(0)] * k for _ in range(k)]
        for i in range(k):
            gram[i][i] = section_height(W, sections[i], locals_)
            for j in range(i + 1, k):
                gram[i][j] = gram[j][i] = height_pairing(W, sections[i],
                                                         sections[j], locals_)
        det = _det_fraction(gram)
    else:
        det = Fraction(1)
    if det <= 0:
        raise ValueError("degenerate height Gram matrix")
    val = Fraction(disc) * det / Fraction(torsion_order ** 2)
    if val.denominator != 1:
        raise ValueError(f"non-integral discriminant {val}")
    return int(val)


def _det_fraction(M) -> Fraction:
    n = len(M)
    A = [row[:] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


# ---------------------------------------------------------------------------
# torsion bounds from component groups and correction-term feasibility
# ---------------------------------------------------------------------------

def torsion_contribution_feasible(fibers: list[FiberDatum], order: int,
                                  chi: int) -> bool:
    """Can a section of exact order `order` have corrections summing to 2*chi?

    A torsion section injects into the product of the component groups, so an
    order-m section needs component choices of order dividing m at every
    fiber, of height zero, with the orders' lcm equal to m.  Conjugate fibers
    over one closed place behave identically.
    """
    target = Fraction(2 * chi)
    options: list[list[tuple[Fraction, int]]] = []
    for f in fibers:
        kod = f.kodaira
        opts = {(Fraction(0), 1)}
        kind, n = parse_kodaira(kod)
        if kind == "In" and n >= 2:
            for i in range(1, n):
                if (i * order) % n == 0:
                    elt_order = n // _gcd_int(i, n)
                    opts.add((f.degree * in_contribution(n, i), elt_order))
        elif kod in ("III", "III*"):
            if order % 2 == 0:
                opts.add((f.degree * contribution_value(kod, "nonzero"), 2))
        elif kod in ("IV", "IV*"):
            if order % 3 == 0:
                opts.add((f.degree * contribution_value(kod, "nonzero"), 3))
        elif kind == "In*":
            if n == 0:
                if order % 2 == 0:
                    opts.add((f.degree * contribution_value(kod, "nonzero"), 2))
            else:
                far_order = 4 if n % 2 else 2
                if order % 2 == 0:
                    opts.add((f.degree * contribution_value(kod, "near"), 2))
                if order % far_order == 0:
                    opts.add((f.degree * contribution_value(kod, "far"), far_order))
        options.append(sorted(opts))

    def dfs(idx: int, acc: Fraction, lcm: int) -> bool:
        if acc > target:
            return False
        if idx == len(options):
            return acc == target and lcm == order
        rest = sum(max(o)[0] for o in options[idx:])
        if acc + rest < target:
            return False
        return any(
            dfs(idx + 1, acc + contr, lcm * o // _gcd_int(lcm, o))
            for contr, o in options[idx]
        )

    return dfs(0, Fraction(0), 1)


def _gcd_int(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def torsion_exponent_bound(fibers: list[FiberDatum]) -> dict[int, int]:
    """Exponent of the p-part of the product of geometric component groups."""
    bound: dict[int, int] = {}
    for f in fibers:
        g = f.component_group_order
        kind, n = parse_kodaira(f.kodaira)
        if kind == "In*":
            g = 4 if n % 2 else 2  # Z/4 for odd n, else exponent 2
        p = 2
        while g > 1:
            e = 0
            while g % p == 0:
                g //= p
                e += 1
            if e:
                bound[p] = max(bound.get(p, 0), p ** e)
            p += 1
    return bound
