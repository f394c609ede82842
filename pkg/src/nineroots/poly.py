"""Sparse exact polynomials and rational functions over a pluggable field.

`MultiPoly` stores a map  exponent-vector -> nonzero coefficient  together
with its coefficient field and an ordered tuple of variable names.  On top of
it sit `RatFunc` (normalized fractions), `FunctionField` (rational functions
as a coefficient field in their own right) and `PolyQuotientField` (residue
rings K[x]/(h), used as residue fields of places).

No floating point anywhere; coefficients live in the exact fields from
`fields.py`.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, QQ, GF2Ext


def _monomial_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: Field, variables: tuple[str, ...], terms: dict):
        self.field = field
        self.vars = tuple(variables)
        self.terms = {e: c for e, c in terms.items() if not field.is_zero(c)}

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(field, variables):
        return MultiPoly(field, variables, {})

    @staticmethod
    def const(field, variables, c):
        z = (0,) * len(variables)
        return MultiPoly(field, variables, {z: c})

    @staticmethod
    def one(field, variables):
        return MultiPoly.const(field, variables, field.one())

    @staticmethod
    def variable(field, variables, name):
        i = variables.index(name)
        e = tuple(1 if j == i else 0 for j in range(len(variables)))
        return MultiPoly(field, variables, {e: field.one()})

    @staticmethod
    def from_int(field, variables, n: int):
        return MultiPoly.const(field, variables, field.from_int(n))

    # -- basics --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(all(x == 0 for x in e) for e in self.terms)

    def as_constant(self):
        if not self.terms:
            return self.field.zero()
        [(e, c)] = self.terms.items()
        if any(e):
            raise ValueError(f"not a constant: {self}")
        return c

    def degree(self, var: str | None = None) -> int:
        """Degree in `var`, or total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def valuation(self, var: str) -> int:
        """Multiplicity of `var` dividing self (inf -> large sentinel)."""
        if not self.terms:
            return 1 << 30
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def lead_term(self):
        """(exps, coeff) for the graded-lex leading monomial."""
        e = max(self.terms, key=_monomial_key)
        return e, self.terms[e]

    def coeff_of(self, var: str, k: int) -> "MultiPoly":
        """Coefficient of var^k, as a polynomial in the same variables."""
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == k:
                out[e[:i] + (0,) + e[i + 1:]] = c
        return MultiPoly(self.field, self.vars, out)

    def univar_coeffs(self, var: str) -> dict[int, "MultiPoly"]:
        i = self.vars.index(var)
        buckets: dict[int, dict] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MultiPoly(self.field, self.vars, t) for k, t in buckets.items()}

    def constant_coeff(self, var: str):
        return self.coeff_of(var, 0)

    def with_vars(self, variables: tuple[str, ...]) -> "MultiPoly":
        """Reinterpret over another variable tuple.

        Variables may be added or reordered freely; a variable can only be
        dropped when it never occurs with a positive exponent.
        """
        if variables == self.vars:
            return self
        idx = []
        for j, v in enumerate(self.vars):
            if v in variables:
                idx.append(variables.index(v))
            else:
                if any(e[j] for e in self.terms):
                    raise ValueError(f"cannot drop used variable {v!r}")
                idx.append(None)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for j, x in enumerate(e):
                if idx[j] is not None:
                    ne[idx[j]] = x
            out[tuple(ne)] = c
        return MultiPoly(self.field, variables, out)

    # -- arithmetic ----------------------------------------------------
    def _check(self, other):
        if self.field is not other.field and self.field != other.field:
            raise ValueError("coefficient field mismatch")
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = F.add(out.get(e, F.zero()), c)
            if F.is_zero(s):
                out.pop(e, None)
            else:
                out[e] = s
        return MultiPoly(F, self.vars, out)

    def __neg__(self):
        F = self.field
        return MultiPoly(F, self.vars, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = F.mul(c1, c2)
                s = F.add(out.get(e, F.zero()), p)
                if F.is_zero(s):
                    out.pop(e, None)
                else:
                    out[e] = s
        return MultiPoly(F, self.vars, out)

    def scale(self, c):
        F = self.field
        if F.is_zero(c):
            return MultiPoly.zero(F, self.vars)
        return MultiPoly(F, self.vars, {e: F.mul(v, c) for e, v in self.terms.items()})

    def __pow__(self, n: int):
        r = MultiPoly.one(self.field, self.vars)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def mul_var_power(self, var: str, k: int) -> "MultiPoly":
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            ne = e[:i] + (e[i] + k,) + e[i + 1:]
            if ne[i] < 0:
                raise ValueError("negative exponent; polynomial not divisible")
            out[ne] = c
        return MultiPoly(self.field, self.vars, out)

    def reversed_weight(self, var: str, w: int) -> "MultiPoly":
        """x^w * f(1/x) for the given variable; requires w >= deg."""
        i = self.vars.index(var)
        if self.degree(var) > w:
            raise ValueError("weight smaller than degree")
        out = {}
        for e, c in self.terms.items():
            out[e[:i] + (w - e[i],) + e[i + 1:]] = c
        return MultiPoly(self.field, self.vars, out)

    # -- division ------------------------------------------------------
    def divrem(self, g: "MultiPoly", var: str):
        """Division in `var` assuming g's leading var-coefficient is a constant."""
        self._check(g)
        F = self.field
        dg = g.degree(var)
        if dg < 0:
            raise ZeroDivisionError("division by zero polynomial")
        lc = g.coeff_of(var, dg)
        if not lc.is_constant():
            raise ValueError("divisor leading coefficient is not constant")
        lcinv = F.inv(lc.as_constant())
        q = MultiPoly.zero(F, self.vars)
        r = self
        while not r.is_zero() and r.degree(var) >= dg:
            dr = r.degree(var)
            cr = r.coeff_of(var, dr)
            t = cr.scale(lcinv).mul_var_power(var, dr - dg)
            q = q + t
            r = r - t * g
        return q, r

    def exact_div(self, g: "MultiPoly") -> "MultiPoly":
        """Quotient self/g when g divides self exactly (any number of vars)."""
        self._check(g)
        F = self.field
        if g.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        q = MultiPoly.zero(F, self.vars)
        r = self
        ge, gc = g.lead_term()
        gcinv = F.inv(gc)
        while not r.is_zero():
            re, rc = r.lead_term()
            e = tuple(a - b for a, b in zip(re, ge))
            if any(x < 0 for x in e):
                raise ValueError("not an exact division")
            t = MultiPoly(F, self.vars, {e: F.mul(rc, gcinv)})
            q = q + t
            r = r - t * g
        return q

    # -- substitution ---------------------------------------------------
    def evaluate(self, assign: dict):
        """Full evaluation; assign maps every variable name to a field element."""
        F = self.field
        acc = F.zero()
        for e, c in self.terms.items():
            t = c
            for v, k in zip(self.vars, e):
                if k:
                    t = F.mul(t, F.pow(assign[v], k))
            acc = F.add(acc, t)
        return acc

    def specialize(self, assign: dict) -> "MultiPoly":
        """Substitute field elements for a subset of the variables."""
        bad = set(assign) - set(self.vars)
        if bad:
            raise ValueError(f"unknown variables: {sorted(bad)}")
        keep = tuple(v for v in self.vars if v not in assign)
        F = self.field
        out: dict = {}
        for e, c in self.terms.items():
            t = c
            ne = []
            for v, k in zip(self.vars, e):
                if v in assign:
                    if k:
                        t = F.mul(t, F.pow(assign[v], k))
                else:
                    ne.append(k)
            ne = tuple(ne)
            s = F.add(out.get(ne, F.zero()), t)
            if F.is_zero(s):
                out.pop(ne, None)
            else:
                out[ne] = s
        return MultiPoly(F, keep, out)

    def subst_poly(self, var: str, val: "MultiPoly") -> "MultiPoly":
        """Substitute a polynomial (same field/vars) for one variable."""
        val = val.with_vars(self.vars) if val.vars != self.vars else val
        F = self.field
        coeffs = self.univar_coeffs(var)
        if not coeffs:
            return self
        # Horner in descending powers
        dmax = max(coeffs)
        acc = MultiPoly.zero(F, self.vars)
        for k in range(dmax, -1, -1):
            acc = acc * val
            if k in coeffs:
                acc = acc + coeffs[k]
        return acc

    def derivative(self, var: str) -> "MultiPoly":
        F = self.field
        i = self.vars.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            nc = F.mul(c, F.from_int(e[i]))
            if F.is_zero(nc):
                continue
            ne = e[:i] + (e[i] - 1,) + e[i + 1:]
            s = F.add(out.get(ne, F.zero()), nc)
            if F.is_zero(s):
                out.pop(ne, None)
            else:
                out[ne] = s
        return MultiPoly(F, self.vars, out)

    def map_coeffs(self, fn, new_field=None) -> "MultiPoly":
        F = new_field or self.field
        return MultiPoly(F, self.vars, {e: fn(c) for e, c in self.terms.items()})

    # -- gcd ------------------------------------------------------------
    def active_vars(self):
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    used[i] = True
        return [v for v, u in zip(self.vars, used) if u]

    def monic(self) -> "MultiPoly":
        """Scale so the graded-lex leading coefficient is one."""
        if self.is_zero():
            return self
        _, c = self.lead_term()
        return self.scale(self.field.inv(c))

    def content(self, var: str) -> "MultiPoly":
        cs = list(self.univar_coeffs(var).values())
        g = MultiPoly.zero(self.field, self.vars)
        for c in cs:
            g = poly_gcd(g, c)
        return g

    def primitive_part(self, var: str) -> "MultiPoly":
        c = self.content(var)
        return self.exact_div(c)

    # -- rendering -------------------------------------------------------
    def render(self) -> str:
        if not self.terms:
            return "0"
        F = self.field
        items = sorted(self.terms.items(), key=lambda t: _monomial_key(t[0]), reverse=True)
        parts = []
        for e, c in items:
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k
            )
            cs = F.to_str(c)
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                if ("+" in cs or "-" in cs.lstrip("-") or "/" in cs) \
                        and not (cs.startswith("(") and cs.endswith(")")):
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"MultiPoly({self.render()!r})"


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Normalized gcd; univariate Euclid with a primitive-PRS fallback."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    active = sorted(set(f.active_vars()) | set(g.active_vars()),
                    key=lambda v: f.vars.index(v))
    if not active:
        return MultiPoly.one(f.field, f.vars)
    if len(active) == 1:
        v = active[0]
        a, b = f, g
        while not b.is_zero():
            _, r = a.divrem(b.monic(), v)
            a, b = b, r
        return a.monic()
    # multivariate: recurse on the last active variable
    v = active[-1]
    cf, cg = f.content(v), g.content(v)
    c = poly_gcd(cf, cg)
    a = f.exact_div(cf)
    b = g.exact_div(cg)
    if a.degree(v) < b.degree(v):
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b, v)
        if r.is_zero():
            a = b
            b = r
            break
        rc = r.content(v)
        a, b = b, r.exact_div(rc)
    res = a.primitive_part(v) if not a.is_constant() else MultiPoly.one(f.field, f.vars)
    return (c * res).monic()


def _pseudo_rem(f: MultiPoly, g: MultiPoly, var: str) -> MultiPoly:
    df, dg = f.degree(var), g.degree(var)
    lc = g.coeff_of(var, dg)
    r = f
    while not r.is_zero() and r.degree(var) >= dg:
        dr = r.degree(var)
        cr = r.coeff_of(var, dr)
        r = r * lc - cr.mul_var_power(var, dr - dg) * g
    return r


def poly_lcm(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if f.is_zero() or g.is_zero():
        return MultiPoly.zero(f.field, f.vars)
    return (f * g).exact_div(poly_gcd(f, g)).monic()


class RatFunc:
    """Normalized fraction of `MultiPoly`s: gcd-reduced, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, reduce=True):
        if den is None:
            den = MultiPoly.one(num.field, num.vars)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if reduce and not num.is_zero():
            g = poly_gcd(num, den)
            if not (g.is_constant()):
                num = num.exact_div(g)
                den = den.exact_div(g)
        if num.is_zero():
            den = MultiPoly.one(num.field, num.vars)
        else:
            _, lc = den.lead_term()
            if not num.field.is_one(lc):
                inv = num.field.inv(lc)
                num = num.scale(inv)
                den = den.scale(inv)
        self.num = num
        self.den = den

    # helpers
    @staticmethod
    def from_poly(p: MultiPoly):
        return RatFunc(p)

    @staticmethod
    def zero(field, variables):
        return RatFunc(MultiPoly.zero(field, variables))

    @staticmethod
    def one(field, variables):
        return RatFunc(MultiPoly.one(field, variables))

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_constant()

    def as_poly(self) -> MultiPoly:
        if not self.is_poly():
            raise ValueError(f"not a polynomial: {self}")
        return self.num.exact_div(self.den)

    def __add__(self, other):
        other = self._coerce(other)
        n = self.num * other.den + other.num * self.den
        return RatFunc(n, self.den * other.den)

    def __sub__(self, other):
        other = self._coerce(other)
        n = self.num * other.den - other.num * self.den
        return RatFunc(n, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other)
        raise TypeError(f"cannot combine RatFunc with {type(other)}")

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def specialize(self, assign: dict) -> "RatFunc":
        d = self.den.specialize(assign)
        if d.is_zero():
            raise ZeroDivisionError("denominator vanishes under specialization")
        return RatFunc(self.num.specialize(assign), d)

    def evaluate(self, assign: dict):
        F = self.num.field
        d = self.den.evaluate(assign)
        if F.is_zero(d):
            raise ZeroDivisionError("denominator vanishes at the point")
        return F.mul(self.num.evaluate(assign), F.inv(d))

    def render(self):
        if self.den.is_constant() and self.num.field.is_one(self.den.as_constant()):
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"RatFunc({self.render()!r})"


class FunctionField(Field):
    """Rational functions F(var) as a coefficient field."""

    def __init__(self, base: Field, var: str):
        self.base = base
        self.var = var
        self.char = base.char
        self._vars = (var,)

    def poly(self, terms: dict[int, object]) -> MultiPoly:
        return MultiPoly(self.base, self._vars, {(k,): c for k, c in terms.items()})

    def zero(self):
        return RatFunc.zero(self.base, self._vars)

    def one(self):
        return RatFunc.one(self.base, self._vars)

    def gen(self):
        return RatFunc(MultiPoly.variable(self.base, self._vars, self.var))

    def from_int(self, n):
        return RatFunc(MultiPoly.from_int(self.base, self._vars, n))

    def from_base(self, c):
        return RatFunc(MultiPoly.const(self.base, self._vars, c))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inv()

    def is_zero(self, a):
        return a.is_zero()

    def sqrt(self, a):
        from .factor import poly_sqrt  # local import to avoid a cycle
        if a.is_zero():
            return a
        n = poly_sqrt(a.num)
        d = poly_sqrt(a.den)
        if n is None or d is None:
            return None
        return RatFunc(n, d)

    def solve_artin_schreier(self, c):
        from .factor import artin_schreier_root_ff
        return artin_schreier_root_ff(self, c)

    def to_str(self, a):
        return a.render()

    def __repr__(self):
        return f"{self.base!r}({self.var})"

    def __eq__(self, other):
        return (
            isinstance(other, FunctionField)
            and other.base == self.base
            and other.var == self.var
        )

    def __hash__(self):
        return hash(("FunctionField", repr(self.base), self.var))


class PolyQuotientField(Field):
    """K[x]/(h) for h irreducible over K; elements are reduced polynomials."""

    def __init__(self, base: Field, modulus: MultiPoly, var: str):
        self.base = base
        self.var = var
        self.modulus = modulus.monic()
        self.deg = modulus.degree(var)
        self.char = base.char
        if self.deg < 1:
            raise ValueError("modulus must have positive degree")

    def reduce(self, p: MultiPoly) -> MultiPoly:
        _, r = p.divrem(self.modulus, self.var)
        return r

    def zero(self):
        return MultiPoly.zero(self.base, self.modulus.vars)

    def one(self):
        return MultiPoly.one(self.base, self.modulus.vars)

    def gen(self):
        return MultiPoly.variable(self.base, self.modulus.vars, self.var)

    def from_int(self, n):
        return MultiPoly.from_int(self.base, self.modulus.vars, n)

    def from_base(self, c):
        return MultiPoly.const(self.base, self.modulus.vars, c)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return self.reduce(a * b)

    def inv(self, a):
        if a.is_zero():
            raise ZeroDivisionError("inverse of zero residue")
        # extended Euclid in K[x]
        r0, r1 = self.modulus, a
        s0 = MultiPoly.zero(self.base, self.modulus.vars)
        s1 = MultiPoly.one(self.base, self.modulus.vars)
        v = self.var
        while not r1.is_zero():
            lc = r1.coeff_of(v, r1.degree(v))
            if not lc.is_constant():
                raise ValueError("non-constant leading coefficient in residue field")
            q, r = r0.divrem(r1, v)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
        if r0.degree(v) != 0 or not r0.is_constant():
            raise ZeroDivisionError("modulus not irreducible or element not invertible")
        c = self.base.inv(r0.as_constant())
        return self.reduce(s0.scale(c))

    def is_zero(self, a):
        return a.is_zero()

    def size_bits(self):
        """log2 of field size when base is GF(2^k)."""
        if isinstance(self.base, GF2Ext):
            return self.base.k * self.deg
        raise ValueError("size only defined over finite bases")

    def sqrt(self, a):
        if a.is_zero():
            return a
        if isinstance(self.base, GF2Ext):
            n = self.size_bits()
            return self.pow(a, 1 << (n - 1))
        if self.char == 2 and self.deg == 2:
            # z = p*x + q against modulus x^2 + alpha*x + beta
            v = self.var
            alpha = self.modulus.coeff_of(v, 1)
            beta = self.modulus.coeff_of(v, 0)
            c1 = a.coeff_of(v, 1)
            c0 = a.coeff_of(v, 0)
            if alpha.is_zero():
                raise NotImplementedError("inseparable quadratic residue field")
            # (p*x+q)^2 = p^2*(alpha*x+beta) + q^2
            p2 = _field_sqrt_poly(self.base, c1.exact_div(alpha) if not c1.is_zero() else c1)
            if p2 is None:
                return None
            rest = c0 - p2 * p2 * beta
            q2 = _field_sqrt_poly(self.base, rest)
            if q2 is None:
                return None
            return self.reduce(p2 * MultiPoly.variable(self.base, self.modulus.vars, v) + q2)
        raise NotImplementedError("sqrt in this residue field")

    def trace_to_gf2(self, a):
        if not isinstance(self.base, GF2Ext):
            raise ValueError("trace only over binary fields")
        n = self.size_bits()
        t = self.zero()
        b = a
        for _ in range(n):
            t = self.add(t, b)
            b = self.mul(b, b)
        return t

    def solve_artin_schreier(self, c):
        if isinstance(self.base, GF2Ext):
            if not self.trace_to_gf2(c).is_zero():
                return None
            n = self.size_bits()
            if n > 20:
                raise NotImplementedError("residue field too large for scan")
            for bits in range(1 << n):
                z = self._from_bits(bits)
                if self.add(self.mul(z, z), z) == self.reduce(c):
                    return z
            return None
        raise NotImplementedError("Artin-Schreier solve in this residue field")

    def _from_bits(self, bits: int) -> MultiPoly:
        k = self.base.k
        vs = self.modulus.vars
        j = vs.index(self.var)
        terms = {}
        for i in range(self.deg):
            chunk = (bits >> (i * k)) & ((1 << k) - 1)
            if chunk:
                e = tuple(i if jj == j else 0 for jj in range(len(vs)))
                terms[e] = chunk
        return MultiPoly(self.base, vs, terms)

    def to_str(self, a):
        return a.render()

    def __repr__(self):
        return f"{self.base!r}[{self.var}]/({self.modulus})"


def _field_sqrt_poly(base: Field, p: MultiPoly):
    """Coefficient-wise helper: sqrt of a constant polynomial."""
    if p.is_zero():
        return p
    c = p.as_constant()
    r = base.sqrt(c)
    if r is None:
        return None
    return MultiPoly.const(base, p.vars, r)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str, field: Field, variables: tuple[str, ...]):
        self.text = text
        self.pos = 0
        self.field = field
        self.vars = variables

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expr(self) -> RatFunc:
        t = self.term()
        while True:
            c = self.peek()
            if c == "+":
                self.pos += 1
                t = t + self.term()
            elif c == "-":
                self.pos += 1
                t = t - self.term()
            else:
                return t

    def term(self) -> RatFunc:
        f = self.factor()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                f = f * self.factor()
            elif c == "/":
                self.pos += 1
                f = f / self.factor()
            else:
                return f

    def factor(self) -> RatFunc:
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.factor()
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            n = self.integer()
            return base ** n
        return base

    def atom(self) -> RatFunc:
        c = self.peek()
        if c == "(":
            self.pos += 1
            e = self.expr()
            if self.peek() != ")":
                raise ValueError(f"expected ')' at {self.pos} in {self.text!r}")
            self.pos += 1
            return e
        if c.isdigit():
            n = self.integer()
            return RatFunc(MultiPoly.from_int(self.field, self.vars, n))
        if c.isalpha() or c == "_":
            name = self.name()
            if name in self.vars:
                return RatFunc(MultiPoly.variable(self.field, self.vars, name))
            const = _field_constant_by_name(self.field, name)
            if const is not None:
                return RatFunc(MultiPoly.const(self.field, self.vars, const))
            raise ValueError(f"unknown variable {name!r} (have {self.vars})")
        raise ValueError(f"unexpected character {c!r} at {self.pos} in {self.text!r}")

    def integer(self) -> int:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ValueError(f"expected integer at {start} in {self.text!r}")
        return int(self.text[start:self.pos])

    def name(self) -> str:
        self.peek()
        start = self.pos
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start:self.pos]


def _field_constant_by_name(field: Field, name: str):
    """Resolve a parameter name to a constant of the coefficient field."""
    if isinstance(field, FunctionField):
        if name == field.var:
            return field.gen()
        inner = _field_constant_by_name(field.base, name)
        if inner is not None:
            return field.from_base(inner)
    return None


def parse_ratfunc(text: str, field: Field, variables: tuple[str, ...]) -> RatFunc:
    p = _Parser(text, field, variables)
    out = p.expr()
    if p.peek():
        raise ValueError(f"trailing input at {p.pos} in {text!r}")
    return out


def parse_poly(text: str, field: Field, variables: tuple[str, ...]) -> MultiPoly:
    return parse_ratfunc(text, field, variables).as_poly()


def is_identically_zero(f: RatFunc | MultiPoly) -> bool:
    """Exact zero test for polynomials and normalized rational functions."""
    return f.is_zero() if isinstance(f, (RatFunc, MultiPoly)) else not f
