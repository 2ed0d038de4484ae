"""Finite fields GF(p^m) as polynomials over GF(p) modulo a fixed irreducible.

Elements are encoded as integers 0..q-1 whose base-p digits are the
coefficients (lowest degree first), so 0 and 1 are the field's zero and one
and the prime field occupies 0..p-1.
"""

from __future__ import annotations

from itertools import product

from .errors import ValidationError

# Shipped moduli, coefficients lowest degree first, monic.
STANDARD_MODULI = {
    (2, 2): (1, 1, 1),     # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (3, 2): (1, 0, 1),     # x^2 + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < dm:
            break
        shift = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for i, mc in enumerate(m):
            a[i + shift] = (a[i + shift] - c * mc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(modulus, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..m//2."""
    m = len(modulus) - 1
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            if not _poly_mod(list(modulus), list(low) + [1], p):
                return False
    return True


class FiniteField:
    def __init__(self, p: int, m: int = 1, modulus=None):
        if not is_prime(p):
            raise ValidationError(f"{p} is not prime")
        if m < 1:
            raise ValidationError("extension degree must be at least 1")
        if modulus is None:
            modulus = STANDARD_MODULI.get((p, m))
            if modulus is None:
                if m != 1:
                    raise ValidationError(f"no standard modulus for GF({p}^{m}); pass one explicitly")
                modulus = (0, 1)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValidationError(f"modulus must be monic of degree {m}")
        if not is_irreducible(modulus, p):
            raise ValidationError(f"modulus {modulus} is reducible over GF({p})")
        self.p, self.m, self.modulus = p, m, modulus
        self.q = p**m
        self._build_tables()

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"

    @property
    def elements(self) -> range:
        return range(self.q)

    def coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, cs) -> int:
        v = 0
        for c in reversed(list(cs)[: self.m]):
            v = v * self.p + int(c) % self.p
        return v

    def _mul_slow(self, a: int, b: int) -> int:
        ca, cb = self.coeffs(a), self.coeffs(b)
        prod = [0] * (2 * self.m - 1)
        for i, x in enumerate(ca):
            for j, y in enumerate(cb):
                prod[i + j] = (prod[i + j] + x * y) % self.p
        return self.from_coeffs(_poly_mod(prod, list(self.modulus), self.p) + [0] * self.m)

    def _build_tables(self):
        q = self.q
        self._add = [[self.from_coeffs([(x + y) % self.p for x, y in zip(self.coeffs(a), self.coeffs(b))])
                      for b in range(q)] for a in range(q)]
        self._mul = [[self._mul_slow(a, b) for b in range(q)] for a in range(q)]
        self._neg = [self._add[a].index(0) for a in range(q)]
        self._inv = [None] + [self._mul[a].index(1) for a in range(1, q)]
        self.generator = next(g for g in range(1, q) if self.mult_order(g) == q - 1)

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self._mul[a][self.inv(b)]

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = 1
        for _ in range(k):
            r = self._mul[r][a]
        return r

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self._mul[x][a]
            k += 1
        return k

    def x(self) -> int:
        """The class of the indeterminate (the prime field generator when m = 1)."""
        return self.p if self.m > 1 else 1


def ff_make(p: int, m: int = 1, modulus=None) -> FiniteField:
    return FiniteField(p, m, modulus)
