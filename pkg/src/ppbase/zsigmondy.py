"""Primitive prime divisors of x^n - 1 and the exceptions to their existence.

A prime r is primitive for x^n - 1 when the multiplicative order of x mod r
is n. Every such r divides the cyclotomic value Phi_n(x) and does not divide
n, so the primitive part of Phi_n(x) (Phi_n(x) with all primes dividing n
removed) is exactly the product of the primitive prime powers. Existence
questions are decided from that number without factoring it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import List, Optional, Tuple

import flint
from sympy import cyclotomic_poly, factorint, n_order
from sympy.abc import X as _X

_cyclo_cache: dict = {}


def _factor_large(v: int) -> List[Tuple[int, int]]:
    """Prime factorization of a large integer (FLINT's trial division, rho and ECM)."""
    return sorted((int(p), int(e)) for p, e in flint.fmpz(v).factor())


def _check(x: int, n: int) -> None:
    if x < 2 or n < 2:
        raise ValueError("x and n must both be at least 2")


def cyclotomic_value(x: int, n: int) -> int:
    coeffs = _cyclo_cache.get(n)
    if coeffs is None:
        coeffs = [int(c) for c in cyclotomic_poly(n, _X, polys=True).all_coeffs()]
        _cyclo_cache[n] = coeffs
    v = 0
    for c in coeffs:
        v = v * x + c
    return v


def primitive_part(x: int, n: int) -> int:
    """Product of the primitive prime powers dividing x^n - 1."""
    _check(x, n)
    v = cyclotomic_value(x, n)
    for r in factorint(n):
        while v % r == 0:
            v //= r
    return v


def primitive_prime_divisors(x: int, n: int) -> List[int]:
    v = primitive_part(x, n)
    if v == 1:
        return []
    return [r for r, _ in _factor_large(v)]


def has_primitive_prime_divisor(x: int, n: int) -> bool:
    return primitive_part(x, n) > 1


def has_large_ppd(x: int, n: int) -> bool:
    """Decided without factoring: every primitive prime is 1 mod n, hence at least n+1.

    So the only primitive prime that can fail to be large is n+1 itself,
    dividing x^n - 1 exactly once.
    """
    v = primitive_part(x, n)
    return v not in (1, n + 1)


def large_ppd(x: int, n: int) -> Optional[int]:
    """Smallest primitive prime r with r > n+1 or r^2 | x^n - 1."""
    v = primitive_part(x, n)
    if v in (1, n + 1):
        return None
    for r, e in _factor_large(v):
        if r > n + 1 or e >= 2:
            return r
    raise AssertionError("primitive part has an unexpected factorization")


def _is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


def zsigmondy_exception(x: int, n: int) -> Optional[str]:
    if x == 2 and n == 6:
        return "Zsigmondy-26"
    if n == 2 and _is_power_of_two(x + 1):
        return "Zsigmondy-n2"
    return None


def _is_feit_case1(x: int) -> bool:
    """x = 2^s 3^t - 1 with t in {0, 1}, s >= 2 when t = 0 (s = 0, t = 1 gives x = 2)."""
    y = x + 1
    if y % 3 == 0:
        y //= 3
        return _is_power_of_two(y)
    return _is_power_of_two(y) and y >= 4


def feit_case(x: int, n: int) -> Optional[int]:
    """Which of the four listed situations without a large ppd (x, n) falls in."""
    if n == 2 and _is_feit_case1(x):
        return 1
    if x == 2 and n in (4, 6, 10, 12, 18):
        return 2
    if x == 3 and n in (4, 6):
        return 3
    if x == 5 and n == 6:
        return 4
    return None


@dataclass
class PpdReport:
    x: int
    n: int
    ppds: List[int] = field(default_factory=list)
    large_ppd: Optional[int] = None
    exception_class: Optional[str] = None

    def to_dict(self):
        return {"x": self.x, "n": self.n, "ppds": self.ppds, "large": self.large_ppd,
                "exception": self.exception_class}


def ppd_report(x: int, n: int) -> PpdReport:
    ppds = primitive_prime_divisors(x, n)
    large = large_ppd(x, n)
    tag = None
    if not ppds:
        tag = zsigmondy_exception(x, n)
    elif large is None:
        case = feit_case(x, n)
        tag = f"Feit-{case}" if case else None
    if tag is None and large is None:
        tag = "unclassified"
    return PpdReport(x, n, ppds, large, tag)


def feit_scan(x_max: int, n_max: int) -> List[Tuple[int, int]]:
    """All (x, n) in range for which x^n - 1 has no large primitive prime divisor."""
    return [(x, n) for x in range(2, x_max + 1) for n in range(2, n_max + 1) if not has_large_ppd(x, n)]


def zsigmondy_scan(x_max: int, n_max: int) -> List[Tuple[int, int]]:
    """All (x, n) in range with no primitive prime divisor at all."""
    return [(x, n) for x in range(2, x_max + 1) for n in range(2, n_max + 1)
            if not has_primitive_prime_divisor(x, n)]


def is_primitive_for(r: int, x: int, n: int) -> bool:
    return gcd(r, x) == 1 and n_order(x, r) == n
