"""Permutations of {0, ..., n-1} and their prime-power decomposition.

Products are read left to right: ``a * b`` applies ``a`` first, then ``b``,
so the image of point ``i`` under ``a * b`` is ``b[a[i]]``. Cycle notation
in text is 1-based, e.g. ``"(1,2)(3,4,5)"``; ``"()"`` is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy import factorint

from .exceptions import CycleParseError, DegreeMismatch


class Permutation:
    """Immutable bijection of ``range(degree)`` stored as an image tuple."""

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(int(i) for i in images)
        if check and sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Sequence[Sequence[int]], degree: int) -> "Permutation":
        """Build from 0-based disjoint (or not) cycles, applied left to right."""
        result = list(range(degree))
        for cyc in cycles:
            img = list(range(degree))
            for k, pt in enumerate(cyc):
                if not 0 <= pt < degree:
                    raise DegreeMismatch(f"point {pt} outside degree {degree}")
                img[pt] = cyc[(k + 1) % len(cyc)]
            result = [img[result[i]] for i in range(degree)]
        return cls(result)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeMismatch(f"cannot compose degrees {self.degree} and {other.degree}")
        b = other.images
        return Permutation([b[i] for i in self.images], check=False)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv, check=False)

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, by: "Permutation") -> "Permutation":
        """Return ``by^-1 * self * by``."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> List[Tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> Tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    def order(self) -> int:
        result = 1
        for c in self.cycles():
            result = result * len(c) // gcd(result, len(c))
        return result

    def moved_points(self) -> List[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)


def identity(degree: int) -> Permutation:
    return Permutation.identity(degree)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a`` followed by ``b``."""
    return a * b


def inverse(a: Permutation) -> Permutation:
    return a.inverse()


def element_order(g: Permutation) -> int:
    return g.order()


def prime_power_parts(n: int) -> List[Tuple[int, int]]:
    """``[(p, p**a), ...]`` for the prime factorisation of ``n``, sorted by p."""
    return [(p, p**a) for p, a in sorted(factorint(n).items())]


def is_prime_power(n: int) -> bool:
    return n > 1 and len(factorint(n)) == 1


def is_pp_element(g: Permutation) -> bool:
    """True iff ``g`` has prime-power order; the identity does not count."""
    return is_prime_power(g.order())


@dataclass(frozen=True)
class PrimaryDecomposition:
    """Commuting prime-power parts of ``source``, one per prime of its order."""

    parts: Tuple[Permutation, ...]
    source: Permutation
    exponents: Tuple[int, ...]

    def product(self) -> Permutation:
        result = Permutation.identity(self.source.degree)
        for p in self.parts:
            result = result * p
        return result


def crt_exponents(order: int) -> List[int]:
    """Exponents e_i with g**e_i the p_i-part of an element of this order.

    e_i is 1 mod p_i**a_i and 0 mod order / p_i**a_i, so the exponents sum to
    1 mod ``order``.
    """
    out = []
    for _, q in prime_power_parts(order):
        rest = order // q
        # rest * inv(rest mod q) is 1 mod q and 0 mod rest
        e = rest * pow(rest, -1, q) % order
        out.append(e)
    return out


def pp_decompose(g: Permutation) -> PrimaryDecomposition:
    n = g.order()
    if n == 1:
        raise ValueError("no primary parts: the identity has order 1")
    exps = crt_exponents(n)
    parts = tuple(g**e for e in exps)
    return PrimaryDecomposition(parts=parts, source=g, exponents=tuple(exps))


def parse_cycles(text: str, degree: Optional[int] = None) -> Permutation:
    """Parse 1-based cycle notation such as ``"(1,2)(3,4,5)"``.

    With ``degree=None`` the degree is the largest point mentioned.
    """
    cycles: List[List[int]] = []
    pos = 0
    s = text
    n = len(s)

    def skip_ws(k):
        while k < n and s[k].isspace():
            k += 1
        return k

    pos = skip_ws(pos)
    if pos == n:
        raise CycleParseError("empty permutation string", text, pos)
    while pos < n:
        if s[pos] != "(":
            raise CycleParseError("expected '('", text, pos)
        pos = skip_ws(pos + 1)
        cyc: List[int] = []
        if pos < n and s[pos] == ")":
            pos = skip_ws(pos + 1)
            cycles.append(cyc)
            continue
        while True:
            start = pos
            while pos < n and s[pos].isdigit():
                pos += 1
            if start == pos:
                raise CycleParseError("expected a point", text, pos)
            pt = int(s[start:pos])
            if pt < 1:
                raise CycleParseError("points are 1-based", text, start)
            if pt - 1 in cyc:
                raise CycleParseError(f"point {pt} repeated in cycle", text, start)
            cyc.append(pt - 1)
            pos = skip_ws(pos)
            if pos >= n:
                raise CycleParseError("unterminated cycle", text, pos)
            if s[pos] == ",":
                pos = skip_ws(pos + 1)
                continue
            if s[pos] == ")":
                pos = skip_ws(pos + 1)
                break
            raise CycleParseError("expected ',' or ')'", text, pos)
        cycles.append(cyc)
    top = max((max(c) + 1 for c in cycles if c), default=0)
    if degree is None:
        degree = top
    elif top > degree:
        raise DegreeMismatch(f"point {top} exceeds degree {degree} in {text!r}")
    return Permutation.from_cycles([c for c in cycles if len(c) > 1], degree)


def format_cycles(g: Permutation) -> str:
    cyc = g.cycles()
    if not cyc:
        return "()"
    return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)
