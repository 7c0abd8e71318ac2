"""Arithmetic in GF(p^2) = GF(p)[i] / (i^2 + 1).

The modulus i^2 = -1 is irreducible exactly when p = 3 (mod 4), which every
parameter set guarantees.  Elements are kept in canonical reduced form
c0 + c1*i with 0 <= c0, c1 < p.
"""


class Fp2:
    __slots__ = ("p", "c0", "c1")

    def __init__(self, p: int, c0: int = 0, c1: int = 0):
        self.p = p
        self.c0 = c0 % p
        self.c1 = c1 % p

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, p):
        return cls(p, 0, 0)

    @classmethod
    def one(cls, p):
        return cls(p, 1, 0)

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return self.c0 == 0 and self.c1 == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, Fp2)
            and self.p == other.p
            and self.c0 == other.c0
            and self.c1 == other.c1
        )

    def __hash__(self):
        return hash((self.p, self.c0, self.c1))

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        return Fp2(self.p, self.c0 + other.c0, self.c1 + other.c1)

    def __sub__(self, other):
        return Fp2(self.p, self.c0 - other.c0, self.c1 - other.c1)

    def __neg__(self):
        return Fp2(self.p, -self.c0, -self.c1)

    def __mul__(self, other):
        if isinstance(other, int):
            return Fp2(self.p, self.c0 * other, self.c1 * other)
        a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
        return Fp2(self.p, a0 * b0 - a1 * b1, a0 * b1 + a1 * b0)

    __rmul__ = __mul__

    def inv(self):
        # (c0 + c1 i)^-1 = (c0 - c1 i) / (c0^2 + c1^2); the norm vanishes
        # only at zero because -1 is a non-square mod p.
        p = self.p
        n = (self.c0 * self.c0 + self.c1 * self.c1) % p
        if n == 0:
            raise ZeroDivisionError("inverse of zero in GF(p^2)")
        ninv = pow(n, p - 2, p)
        return Fp2(p, self.c0 * ninv, -self.c1 * ninv)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        r = Fp2.one(self.p)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def frobenius(self):
        """x -> x^p, i.e. conjugation c0 - c1*i."""
        return Fp2(self.p, self.c0, -self.c1)

    # -- square roots ----------------------------------------------------

    def sqrt(self):
        """Canonical square root, or None if the element is not a square.

        Of the two roots +-r the one with the lexicographically smaller
        (c0, c1) pair is returned, so the choice is deterministic.
        """
        p = self.p
        if self.is_zero():
            return Fp2.zero(p)
        if self.c1 == 0:
            # root stays in GF(p) or is purely imaginary
            s = pow(self.c0, (p + 1) // 4, p)
            if s * s % p == self.c0:
                return _lex_min(Fp2(p, s, 0))
            t = pow(p - self.c0, (p + 1) // 4, p)
            if t * t % p == p - self.c0:
                return _lex_min(Fp2(p, 0, t))
            return None
        # write self = (u + v i)^2; the norm of a square is a square mod p
        n = (self.c0 * self.c0 + self.c1 * self.c1) % p
        s = pow(n, (p + 1) // 4, p)
        if s * s % p != n:
            return None
        inv2 = pow(2, p - 2, p)
        for sign in (s, p - s):
            u2 = (self.c0 + sign) * inv2 % p
            u = pow(u2, (p + 1) // 4, p)
            if u * u % p != u2 or u == 0:
                continue
            v = self.c1 * pow(2 * u, p - 2, p) % p
            r = Fp2(p, u, v)
            if r * r == self:
                return _lex_min(r)
        return None

    # -- misc -------------------------------------------------------------

    def lex_key(self):
        return (self.c0, self.c1)

    def __repr__(self):
        return f"Fp2({self.c0}, {self.c1})"


def _lex_min(r: Fp2) -> Fp2:
    m = -r
    return r if r.lex_key() <= m.lex_key() else m


def cube_roots(x: Fp2):
    """All cube roots of x in GF(p^2), in canonical (c0, c1) order.

    The 3-Sylow subgroup of GF(p^2)* has order 3^s with s = v3(p+1), which
    is tiny for every parameter set, so the fix-up factor is found by scan.
    """
    p = x.p
    n = p * p - 1
    s = 0
    m = n
    while m % 3 == 0:
        m //= 3
        s += 1
    if x.is_zero():
        return [Fp2.zero(p)]
    if s == 0:
        r = x ** pow(3, -1, n)
        return [r] if r * r * r == x else []
    # candidate root from the prime-to-3 part, then rotate by mu_{3^s}
    d = pow(3, -1, m)
    r0 = x ** d
    mu = _mu_power_group(p, 3, s)
    roots = [r0 * z for z in mu if (r0 * z) ** 3 == x]
    roots.sort(key=Fp2.lex_key)
    return roots


def _mu_power_group(p, ell, s):
    """All elements of order dividing ell^s in GF(p^2)*."""
    n = p * p - 1
    co = n // (ell**s)
    # scan field elements until a generator of the full ell^s-subgroup shows up
    one = Fp2.one(p)
    c0 = 0
    while True:
        c0 += 1
        for c1 in range(0, p):
            g = Fp2(p, c0, c1) ** co
            if g ** (ell ** (s - 1)) != one:
                out = []
                z = one
                for _ in range(ell**s):
                    out.append(z)
                    z = z * g
                return out
