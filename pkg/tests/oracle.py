"""Slow reference implementations built from plain Python sets of tuples.

Nothing here touches the element tables, lattices or masks of the package;
they are used to check those against definitions on small groups.
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations
from math import gcd
from typing import FrozenSet, Iterable, List, Set, Tuple

Perm = Tuple[int, ...]


def mul(a: Perm, b: Perm) -> Perm:
    """a then b."""
    return tuple(b[i] for i in a)


def inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def closure(gens: Iterable[Perm], degree: int) -> FrozenSet[Perm]:
    e = tuple(range(degree))
    gens = [g for g in gens if g != e]
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def order_of(a: Perm) -> int:
    e = tuple(range(len(a)))
    k, x = 1, a
    while x != e:
        x = mul(x, a)
        k += 1
    return k


def is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(d for d in range(2, n + 1) if n % d == 0)
    while n % p == 0:
        n //= p
    return n == 1


def all_subgroups(G: FrozenSet[Perm], degree: int) -> Set[FrozenSet[Perm]]:
    """Close every known subgroup under one more element until nothing new appears."""
    subs = {closure([], degree)}
    frontier = list(subs)
    while frontier:
        nxt = []
        for H in frontier:
            for g in G:
                if g in H:
                    continue
                K = closure(list(H) + [g], degree) if len(H) < 64 else closure(_gens(H, degree) + [g], degree)
                if K not in subs:
                    subs.add(K)
                    nxt.append(K)
        frontier = nxt
    return subs


def _gens(H: FrozenSet[Perm], degree: int) -> List[Perm]:
    gens: List[Perm] = []
    cur = closure([], degree)
    for h in sorted(H):
        if h not in cur:
            gens.append(h)
            cur = closure(gens, degree)
    return gens


def maximal_subgroups(G: FrozenSet[Perm], degree: int) -> List[FrozenSet[Perm]]:
    proper = [H for H in all_subgroups(G, degree) if len(H) < len(G)]
    return [H for H in proper if not any(len(K) > len(H) and H < K for K in proper)]


def frattini(G: FrozenSet[Perm], degree: int) -> FrozenSet[Perm]:
    maxes = maximal_subgroups(G, degree)
    if not maxes:
        return closure([], degree)
    return reduce(lambda a, b: a & b, maxes)


def _generates_with(X, extra, G, degree) -> bool:
    return len(closure(list(X) + list(extra), degree)) == len(G)


def _independent(X, phi, degree) -> bool:
    for i, x in enumerate(X):
        rest = list(X[:i]) + list(X[i + 1:])
        if x in closure(rest + list(phi), degree):
            return False
    return True


def independent_generating_sizes(G: FrozenSet[Perm], degree: int, pp_only: bool) -> Set[int]:
    """Sizes of all independent generating sets (pp-elements only if asked).

    Independence is inherited by subsets, so sets are grown one element at a
    time in increasing element order.
    """
    phi = _gens(frattini(G, degree), degree)
    e = tuple(range(degree))
    pool = sorted(g for g in G if g != e and (not pp_only or is_prime_power(order_of(g))))
    sizes: Set[int] = set()
    if len(G) == 1:
        return {0}

    def grow(X: List[Perm], start: int):
        if X and _generates_with(X, [], G, degree):
            sizes.add(len(X))
            return  # a generating independent set cannot be extended independently
        for k in range(start, len(pool)):
            Y = X + [pool[k]]
            if _independent(Y, phi, degree):
                grow(Y, k + 1)

    grow([], 0)
    return sizes


def m_value(G, degree) -> int:
    return max(independent_generating_sizes(G, degree, pp_only=False))


def pp_profile(G, degree) -> Tuple[int, int]:
    """(smallest, largest) pp-base size."""
    s = independent_generating_sizes(G, degree, pp_only=True)
    return min(s), max(s)


def naive_ppds(x: int, n: int) -> List[int]:
    """Primitive prime divisors by trial division, straight from the definition."""
    N = x**n - 1
    out = []
    r = 2
    M = N
    while r * r <= M:
        if M % r == 0:
            while M % r == 0:
                M //= r
            if all((x**i - 1) % r for i in range(1, n)):
                out.append(r)
        r += 1
    if M > 1 and all((x**i - 1) % M for i in range(1, n)):
        out.append(M)
    return sorted(out)


def primitive_residue(x: int, n: int) -> int:
    """x^n - 1 with every prime dividing some x^i - 1 (i < n) stripped, using gcds only."""
    N = x**n - 1
    for i in range(1, n):
        g = gcd(N, x**i - 1)
        while g > 1:
            while N % g == 0:
                N //= g
            g = gcd(N, g)
    return N


def as_tuples(G) -> FrozenSet[Perm]:
    return frozenset(tuple(g.images) for g in G.elements())
