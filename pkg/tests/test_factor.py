from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nineroots.factor import (artin_schreier_root_ff, factor_univariate,
                              poly_sqrt, qq_irreducible_deg_le4,
                              quadratic_roots, roots_in_field)
from nineroots.fields import GF2, GF2Ext, QQ
from nineroots.poly import FunctionField, MultiPoly, RatFunc, parse_poly

F4 = GF2Ext(2)


def poly(s, field=GF2, variables=("t",)):
    return parse_poly(s, field, variables)


def brute_irreducible(f, var="t"):
    """Independent irreducibility oracle for degree <= 4: trial division by
    every lower-degree monic polynomial."""
    F = f.field
    d = f.degree(var)
    q = len(list(F.elements()))
    for deg in range(1, d):
        for mask in range(q ** deg):
            coeffs = []
            m = mask
            for _ in range(deg):
                coeffs.append(m % q)
                m //= q
            g = MultiPoly(F, f.vars, {(deg,): F.one(),
                                      **{(i,): c for i, c in enumerate(coeffs) if c}})
            _, r = f.divrem(g, var)
            if r.is_zero():
                return False
    return True


class TestFactorFinite:
    def test_cube_plus_one(self):
        fs = factor_univariate(poly("t^3+1"))
        assert [(str(p), m) for p, m in fs] == [("t+1", 1), ("t^2+t+1", 1)]

    def test_quadratic_over_gf4(self):
        fs = factor_univariate(poly("t^2+t+1", F4))
        assert len(fs) == 2 and all(p.degree("t") == 1 for p, _ in fs)

    def test_monomial(self):
        fs = factor_univariate(poly("t"))
        assert [(str(p), m) for p, m in fs] == [("t", 1)]

    @given(st.lists(st.integers(0, 3), min_size=2, max_size=7))
    @settings(max_examples=40, deadline=None)
    def test_multiply_back(self, cs):
        f = MultiPoly(F4, ("t",), {(i,): c for i, c in enumerate(cs)})
        if f.is_zero() or f.degree("t") < 1:
            return
        fs = factor_univariate(f)
        prod = MultiPoly.one(F4, ("t",))
        for p, m in fs:
            prod = prod * p ** m
        assert prod == f.monic()
        for p, _ in fs:
            if p.degree("t") <= 4:
                assert brute_irreducible(p)

    def test_repeated_factors(self):
        fs = factor_univariate(poly("t^6+t^4"))  # t^4 (t+1)^2
        assert sorted((str(p), m) for p, m in fs) == [("t", 4), ("t+1", 2)]


class TestRoots:
    def test_quadratic_inert(self):
        KL = FunctionField(GF2, "l")
        assert quadratic_roots(KL, KL.gen(), KL.one(), KL.one()) == []

    def test_quadratic_split(self):
        K = FunctionField(GF2, "u")
        u = K.gen()
        # z^2 + z + u^2+u = (z+u)(z+u+1)
        roots = quadratic_roots(K, K.one(), K.one(), K.mul(u, K.add(u, K.one())))
        assert len(roots) == 2 and u in roots

    def test_artin_schreier_ff(self):
        K = FunctionField(GF2, "u")
        c = RatFunc(poly("u^4+u", GF2, ("u",)))  # (u^2+u)^2 + (u^2+u)
        w = artin_schreier_root_ff(K, c)
        assert w is not None and w * w + w == c
        assert artin_schreier_root_ff(K, RatFunc(poly("u", GF2, ("u",)))) is None
        assert artin_schreier_root_ff(K, RatFunc(poly("u^4+u^2+u", GF2, ("u",)))) is None

    def test_rational_function_roots(self):
        K = FunctionField(GF2, "u")
        u = K.gen()
        # (x + u)(x + 1/(u+1)) expanded
        b = K.add(u, K.inv(K.add(u, K.one())))
        c = K.mul(u, K.inv(K.add(u, K.one())))
        roots = roots_in_field(K, [c, b, K.one()])
        assert u in roots and K.inv(K.add(u, K.one())) in roots

    def test_poly_sqrt(self):
        assert poly_sqrt(poly("t^2+1")) == poly("t+1")
        assert poly_sqrt(poly("t^3")) is None


class TestRationalIrreducibility:
    def test_unit_polynomials(self):
        mu = ("mu",)
        for s in ("mu*(mu-256)-1", "mu*(mu-256)+1",
                  "mu*(mu-4)*(mu+32)-1", "mu*(mu-4)*(mu+32)+1",
                  "mu*(mu+4)*(mu-4)*(mu+16)-1", "mu*(mu+4)*(mu-4)*(mu+16)+1"):
            assert qq_irreducible_deg_le4(parse_poly(s, QQ, mu), "mu"), s

    def test_reducible_detected(self):
        mu = ("mu",)
        assert not qq_irreducible_deg_le4(parse_poly("(mu^2+1)*(mu^2+3)", QQ, mu), "mu")
        assert not qq_irreducible_deg_le4(parse_poly("mu^2-1", QQ, mu), "mu")
        assert not qq_irreducible_deg_le4(
            parse_poly("(mu^2-2)*(mu^2-3)", QQ, mu), "mu")
        assert not qq_irreducible_deg_le4(
            parse_poly("(mu^2+mu+1)*(mu^2+2)", QQ, mu), "mu")

    def test_irreducible_quartics(self):
        mu = ("mu",)
        assert qq_irreducible_deg_le4(parse_poly("mu^4+mu+1", QQ, mu), "mu")
        assert qq_irreducible_deg_le4(parse_poly("mu^4-mu-1", QQ, mu), "mu")
