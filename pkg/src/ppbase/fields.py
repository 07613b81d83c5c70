"""Small finite fields GF(p^d) with elements encoded as integers 0..q-1.

An element sum c_i x^i (0 <= c_i < p) is stored as sum c_i p^i. Arithmetic
is modulo the Conway polynomial listed in ``CONWAY``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, List, Tuple

from sympy import factorint

# coefficients low -> high, monic
CONWAY: Dict[Tuple[int, int], Tuple[int, ...]] = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (3, 3): (1, 2, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (5, 2): (2, 4, 1),
    (5, 3): (3, 3, 0, 1),
    (7, 2): (3, 6, 1),
    (11, 2): (2, 7, 1),
    (13, 2): (2, 12, 1),
}


def prime_power(q: int) -> Tuple[int, int]:
    f = factorint(q)
    if q < 2 or len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, d), = f.items()
    return p, d


class GF:
    """GF(q) with precomputed addition and multiplication tables."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.d = prime_power(q)
        p, d = self.p, self.d
        if d == 1:
            self.modulus = (0, 1)
        elif (p, d) in CONWAY:
            self.modulus = CONWAY[(p, d)]
        else:
            raise ValueError(f"no Conway polynomial recorded for GF({q})")
        self.add_table = [[self._add(a, b) for b in range(q)] for a in range(q)]
        self.mul_table = [[self._mul(a, b) for b in range(q)] for a in range(q)]
        self.neg_table = [self._neg(a) for a in range(q)]
        self.inv_table = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a][b] == 1:
                    self.inv_table[a] = b
                    break
        self.primitive = self._find_primitive()

    def digits(self, a: int) -> List[int]:
        out = []
        for _ in range(self.d):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_digits(self, ds: List[int]) -> int:
        v = 0
        for c in reversed(ds):
            v = v * self.p + c % self.p
        return v

    def _add(self, a, b):
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def _neg(self, a):
        return self.from_digits([-x for x in self.digits(a)])

    def _mul(self, a, b):
        p, d = self.p, self.d
        if d == 1:
            return a * b % p
        x, y = self.digits(a), self.digits(b)
        prod = [0] * (2 * d - 1)
        for i, xi in enumerate(x):
            for j, yj in enumerate(y):
                prod[i + j] = (prod[i + j] + xi * yj) % p
        mod = self.modulus
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                for i in range(d + 1):
                    prod[k - d + i] = (prod[k - d + i] - c * mod[i]) % p
        return self.from_digits(prod[:d])

    def _find_primitive(self) -> int:
        for a in range(2 if self.q > 2 else 1, self.q):
            if self.mult_order(a) == self.q - 1:
                return a
        return 1

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add_table[a][self.neg_table[b]]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.inv_table[a]

    def pow(self, a, k):
        r = 1
        for _ in range(k):
            r = self.mul_table[r][a]
        return r

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("0 has no multiplicative order")
        k, x = 1, a
        while x != 1:
            x = self._mul(x, a)
            k += 1
        return k

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
