import pytest

from nineroots.fields import GF2, GF2Ext, PrimeField, QQ
from nineroots.poly import FunctionField, MultiPoly, RatFunc, parse_poly, parse_ratfunc
from nineroots.tate import (Place, configuration_root_type, fiber_configuration,
                            tate_local)
from nineroots.weierstrass import (SectionPoint, WeierstrassModel,
                                   find_integral_sections, on_curve, point_add,
                                   point_mul, point_neg, point_order,
                                   solve_y_for_x)

CATALOG = {
    "X9111": ("1", "0", "t^3", "0", "0"),
    "X8211": ("1", "t^2", "t^2", "0", "0"),
    "X6321": ("1", "0", "t^2", "0", "0"),
    "X5511": ("t+1", "t", "t^2", "0", "0"),
    "X3333": ("1", "0", "t^3+1", "0", "0"),
    "X431":  ("t", "0", "t^2", "0", "0"),
    "X321":  ("1", "0", "0", "t", "0"),
    "X141":  ("1", "0", "0", "t^2", "0"),
}

EXPECTED_FIBERS = {
    "X9111": {"I9/t", "I1/t+1", "I1/t^2+t+1"},
    "X8211": {"I8/t", "III/inf"},
    "X6321": {"I6/t", "IV/inf", "I2/t+1"},
    "X5511": {"I5/t", "I5/inf", "I1/t^2+t+1"},
    "X3333": {"I3/t", "I3/t+1", "I3/t^2+t+1"},
    "X431":  {"IV*/t", "I3/inf", "I1/t+1"},
    "X321":  {"III*/inf", "I2/t"},
    "X141":  {"I4/t", "I1*/inf"},
}

EXPECTED_MW = {
    "X9111": (3,), "X8211": (4,), "X6321": (6,), "X5511": (5,),
    "X3333": (3, 3), "X431": (3,), "X321": (2,), "X141": (4,),
}


def build(name, K=GF2):
    return WeierstrassModel.from_strings(K, "t", CATALOG[name], 1)


class TestInvariants:
    def test_b8_identity(self):
        W = build("X5511")
        b2, b4, b6, b8 = W.b_invariants()
        four = MultiPoly.from_int(GF2, ("t",), 4)
        assert four * b8 == b2 * b6 - b4 * b4  # trivially 0 = 0 in char 2
        WQ = WeierstrassModel.from_strings(QQ, "t", ("2*t-1", "0-t", "t-t^2", "0", "0"), 1)
        b2, b4, b6, b8 = WQ.b_invariants()
        four = MultiPoly.from_int(QQ, ("t",), 4)
        assert four * b8 == b2 * b6 - b4 * b4

    def test_discriminant_orders(self):
        W = build("X9111")
        d = W.discriminant()
        assert d.valuation("t") == 9
        assert d == parse_poly("t^9*(t^3+1)", GF2, ("t",))
        W = build("X321")
        assert W.discriminant().valuation("t") == 2

    def test_constant_curve_smooth(self):
        W = WeierstrassModel.from_strings(GF2, "t", ("1", "0", "0", "0", "1"), 1)
        d = W.discriminant()
        assert d.is_constant() and not d.is_zero()

    def test_quasi_elliptic_rejected(self):
        W = WeierstrassModel.from_strings(GF2, "t", ("0", "0", "0", "t", "1"), 1)
        with pytest.raises(ValueError):
            W.j_invariant()


class TestGroupLaw:
    def test_negation_on_torsion_shape(self):
        W = build("X6321")
        P = SectionPoint.of(parse_poly("0", GF2, ("t",)), parse_poly("0", GF2, ("t",)))
        nP = point_neg(W, P)
        assert nP.x == RatFunc(parse_poly("0", GF2, ("t",)))
        assert nP.y == RatFunc(W.a3)

    def test_three_torsion(self):
        W = build("X6321")
        P = SectionPoint.of(parse_poly("0", GF2, ("t",)), parse_poly("0", GF2, ("t",)))
        assert point_add(W, P, P) == point_neg(W, P)
        assert point_order(W, P) == 3

    def test_two_torsion_on_x321(self):
        W = build("X321")
        P = SectionPoint.of(parse_poly("0", GF2, ("t",)), parse_poly("0", GF2, ("t",)))
        assert on_curve(W, P)
        assert point_neg(W, P) == P
        assert point_order(W, P) == 2


class TestSectionSolving:
    def test_x_zero(self):
        W = build("X6321")
        sols = solve_y_for_x(W, parse_poly("0", GF2, ("t",)))
        ys = sorted(str(p.y) for p in sols)
        assert ys == ["0", "t^2"]

    def test_no_solution(self):
        W = build("X321")
        assert solve_y_for_x(W, parse_poly("t", GF2, ("t",))) == []

    def test_d5_a4_row_x_coordinate(self):
        K = FunctionField(GF2, "u")
        W = build("X5511", K)
        mu = parse_ratfunc("u^2", GF2, ("u",))
        lam = parse_ratfunc("u^5/(u+1)", GF2, ("u",))
        Wt = W.mobius(mu, lam).quadratic_twist()
        X = parse_ratfunc("u^2*t^2/(u+1)^2", K, ("t",))
        sols = solve_y_for_x(Wt, X)
        assert sols and all(on_curve(Wt, P) for P in sols)

    def test_integral_sections_orders(self):
        for name, want in EXPECTED_MW.items():
            k = 2 if name == "X3333" else 1
            pts, inv = find_integral_sections(build(name), k)
            assert inv == want, name
            for P in pts:
                assert on_curve(build(name, GF2Ext(k)), P) or P.is_zero


class TestTate:
    def test_catalog_fibers(self):
        for name in CATALOG:
            fibers = fiber_configuration(build(name))
            got = {str(f) for f in fibers}
            assert got == EXPECTED_FIBERS[name], name
            total = sum(f.degree * f.vdelta for f in fibers)
            assert total == 12

    def test_wild_parts(self):
        wilds = {}
        for name in ("X141", "X321", "X8211"):
            for f in fiber_configuration(build(name)):
                if f.place.is_infinity:
                    wilds[name] = f.wild
        assert wilds == {"X141": 1, "X321": 1, "X8211": 1}

    def test_artin_schreier_pullback(self):
        A = build("X6321").base_change_artin_schreier()
        fibers = fiber_configuration(A)
        names = sorted((f.kodaira, f.degree, f.vdelta) for f in fibers)
        assert ("I6", 1, 6) in names and ("I2", 2, 2) in names
        inf = next(f for f in fibers if f.place.is_infinity)
        assert inf.vdelta == 8
        assert sum(f.degree * f.vdelta for f in fibers) == 24

    def test_reposition_moves_fibers(self):
        K = GF2Ext(3)
        W = build("X6321", K)
        Wr = W.mobius(2, 1)  # mu = generator, lam = 1
        fibers = fiber_configuration(Wr)
        kinds = sorted(f.kodaira for f in fibers)
        assert kinds == ["I2", "I6", "IV"]
        assert not any(f.place.is_infinity for f in fibers if f.kodaira == "IV")

    def test_identity_mobius(self):
        W = build("X5511")
        Wr = W.mobius(GF2.zero(), GF2.one())
        assert all((a - b).is_zero() for a, b in zip(W.coeffs(), Wr.coeffs()))

    def test_integral_model_reductions(self):
        coeffs = ("2*t-1", "0-t", "t-t^2", "0", "0")
        for K in (QQ, PrimeField(5), PrimeField(13)):
            W = WeierstrassModel.from_strings(K, "t", coeffs, 1)
            fibers = fiber_configuration(W)
            assert str(configuration_root_type(fibers)) == "A5+A2+A1"
        W3 = WeierstrassModel.from_strings(PrimeField(3), "t", coeffs, 1)
        assert any(f.kodaira == "III" for f in fiber_configuration(W3))

    def test_mu_family_matches_reposition(self):
        # the integer mu-family reduces mod 2 to the repositioned catalog
        # surface after the substitutions t -> mu t, mu -> mu^2
        K = FunctionField(GF2, "mu")
        W = WeierstrassModel.from_strings(K, "t", CATALOG["X8211"], 1)
        Wr = W.mobius(K.gen(), K.one())
        mu = MultiPoly.const(K, ("t",), K.gen())
        t = MultiPoly.variable(K, ("t",), "t")
        scaled = [a.subst_poly("t", mu * t) for a in Wr.coeffs()]
        intmod = WeierstrassModel.from_strings(
            K, "t", ("mu*t+1", "mu*t^2", "mu*(mu*t+1)*t^2", "0", "0"), 1)
        musq = [a.map_coeffs(lambda c: _subst_musq(K, c)) for a in intmod.coeffs()]
        assert all((x - y).is_zero() for x, y in zip(scaled, musq))
        # in characteristic two the three moving fibers merge into one III
        fibs = fiber_configuration(
            intmod, [Place(parse_poly("t", K, ("t",))),
                     Place(parse_poly("t+1/mu", K, ("t",)))])
        assert sorted(f.kodaira for f in fibs) == ["I8", "III"]


def _subst_musq(K, c):
    num = c.num.subst_poly("mu", parse_poly("mu^2", GF2, ("mu",)))
    den = c.den.subst_poly("mu", parse_poly("mu^2", GF2, ("mu",)))
    return RatFunc(num, den)


class TestTwist:
    def test_twist_pullback_isomorphism(self):
        W = build("X6321")
        A = W.base_change_artin_schreier()
        B = W.quadratic_twist().base_change_artin_schreier()
        zero = MultiPoly.zero(GF2, ("s",))
        s = MultiPoly.variable(GF2, ("s",), "s")
        A2 = A.rst_shift(zero, s * A.a1, s * A.a3)
        assert all((x - y).is_zero() for x, y in zip(A2.coeffs(), B.coeffs()))

    def test_twist_requires_a1(self):
        W = WeierstrassModel.from_strings(GF2, "t", ("0", "0", "1", "0", "t"), 1)
        with pytest.raises(ValueError):
            W.quadratic_twist()
