"""Exact coefficient fields: the rationals, prime fields, and GF(2^k).

Every field object exposes the same small protocol (zero/one/add/mul/inv/...)
so the polynomial layer can stay characteristic-agnostic.  Elements are plain
Python values: `Fraction` for the rationals, small ints for prime fields,
integer bit masks for binary extension fields.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


class Field:
    """Protocol base; concrete fields override everything they support."""

    char: int = 0

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def is_one(self, a) -> bool:
        return a == self.one()

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r, b = self.one(), a
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    def sqrt(self, a):
        """An exact square root, or None if a is not a square."""
        raise NotImplementedError

    def solve_artin_schreier(self, c):
        """A solution z of z^2 + z = c (characteristic 2), or None."""
        raise NotImplementedError

    def to_str(self, a) -> str:
        return str(a)

    def elements(self):
        """Iterate all elements (finite fields only)."""
        raise NotImplementedError


class RationalField(Field):
    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("1/0 in Q")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def sqrt(self, a):
        if a < 0:
            return None
        p, q = a.numerator, a.denominator
        rp, rq = isqrt(p), isqrt(q)
        if rp * rp == p and rq * rq == q:
            return Fraction(rp, rq)
        return None

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField(Field):
    """GF(p) with elements 0..p-1."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, isqrt(p) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"1/0 in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def sqrt(self, a):
        a %= self.p
        if self.p == 2 or a == 0:
            return a
        # p is tiny in every use here, so scanning is fine.
        for z in range(self.p):
            if z * z % self.p == a:
                return z
        return None

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


def _gf2_poly_mul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _gf2_poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def _gf2_poly_gcd(a: int, b: int) -> int:
    while b:
        if a.bit_length() < b.bit_length():
            a, b = b, a
            continue
        a, b = b, _gf2_poly_mod(a, b)
    return a


def _gf2_poly_is_irreducible(f: int) -> bool:
    """Irreducibility of f in GF(2)[x] via x^(2^d) == x mod f and gcd tests."""
    d = f.bit_length() - 1
    if d <= 0:
        return False
    x = 2  # the polynomial x
    t = x
    for _ in range(d):
        t = _gf2_poly_mod(_gf2_poly_mul(t, t), f)
    if t != x:
        return False
    # no factor of degree d/q for prime divisors q of d
    q = 2
    dd = d
    primes = []
    while dd > 1:
        if dd % q == 0:
            primes.append(q)
            while dd % q == 0:
                dd //= q
        q += 1
    for q in primes:
        t = x
        for _ in range(d // q):
            t = _gf2_poly_mod(_gf2_poly_mul(t, t), f)
        if _gf2_poly_gcd(t ^ x, f) != 1:
            return False
    return True


def _smallest_irreducible(k: int) -> int:
    """Lexicographically smallest irreducible of degree k over GF(2)."""
    if k == 1:
        return 0b10  # x
    for low in range(1, 1 << k, 2):  # constant term must be 1
        f = (1 << k) | low
        if _gf2_poly_is_irreducible(f):
            return f
    raise RuntimeError("unreachable")


class GF2Ext(Field):
    """GF(2^k) as GF(2)[x]/(m) with a canonical modulus, elements = bit masks."""

    _cache: dict[int, "GF2Ext"] = {}

    def __new__(cls, k: int):
        if k in cls._cache:
            return cls._cache[k]
        self = super().__new__(cls)
        cls._cache[k] = self
        return self

    def __init__(self, k: int):
        if getattr(self, "k", None) == k:
            return
        if not 1 <= k <= 16:
            raise ValueError("GF(2^k) supported for 1 <= k <= 16")
        self.k = k
        self.char = 2
        self.modulus = _smallest_irreducible(k)
        self._as_table = None

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n & 1

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        return _gf2_poly_mod(_gf2_poly_mul(a, b), self.modulus)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"1/0 in GF(2^{self.k})")
        return self.pow(a, (1 << self.k) - 2)

    def is_zero(self, a):
        return a == 0

    def sqrt(self, a):
        # Frobenius is bijective: the square root always exists.
        return self.pow(a, 1 << (self.k - 1))

    def trace(self, a):
        t, b = 0, a
        for _ in range(self.k):
            t ^= b
            b = self.mul(b, b)
        return t & 1 if self.k else t

    def solve_artin_schreier(self, c):
        """Smallest z with z^2 + z = c, or None (exists iff trace(c) = 0)."""
        t, b = 0, c
        for _ in range(self.k):
            t = self.add(t, b)
            b = self.mul(b, b)
        if t != 0:
            return None
        if self._as_table is None:
            self._as_table = {}
            for z in range(1 << self.k):
                key = self.add(self.mul(z, z), z)
                if key not in self._as_table:
                    self._as_table[key] = z
        return self._as_table.get(c)

    def elements(self):
        return range(1 << self.k)

    def embed_into(self, big: "GF2Ext"):
        """Return the embedding map GF(2^k) -> GF(2^K) for k | K."""
        if big.k % self.k:
            raise ValueError("no embedding: degree does not divide")
        if self.k == 1 or self.k == big.k:
            return (lambda a: a) if self.k == big.k else (lambda a: a & 1)
        # image of our generator = smallest root of our modulus in the big field
        root = None
        for z in range(1 << big.k):
            acc, p = 0, self.modulus
            i = 0
            zp = 1
            while p:
                if p & 1:
                    acc = big.add(acc, zp)
                zp = big.mul(zp, z)
                p >>= 1
                i += 1
            if acc == 0:
                root = z
                break
        assert root is not None

        def emb(a, root=root, big=big):
            acc, zp = 0, 1
            while a:
                if a & 1:
                    acc = big.add(acc, zp)
                zp = big.mul(zp, root)
                a >>= 1
            return acc

        return emb

    def to_str(self, a):
        if a in (0, 1):
            return str(a)
        return f"g{a}"  # g<mask>: polynomial representative in the generator

    def __repr__(self):
        return f"GF(2^{self.k})" if self.k > 1 else "GF(2)"


GF2 = GF2Ext(1)
