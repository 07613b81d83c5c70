"""Polynomials and matrices over the prime field GF(p).

Polynomials are coefficient lists, lowest degree first, without trailing
zeros (the zero polynomial is ``[]``). Matrices are lists of rows.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from sympy import factorint

Poly = List[int]
Matrix = List[List[int]]


def trim(f: Sequence[int], p: int) -> Poly:
    out = [c % p for c in f]
    while out and out[-1] == 0:
        out.pop()
    return out


def deg(f: Poly) -> int:
    return len(f) - 1


def padd(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)], p)


def psub(f: Poly, g: Poly, p: int) -> Poly:
    return padd(f, [-c for c in g], p)


def pmul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return trim(out, p)


def pdivmod(f: Poly, g: Poly, p: int) -> Tuple[Poly, Poly]:
    g = trim(g, p)
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    r = trim(f, p)
    inv_lead = pow(g[-1], -1, p)
    qt = [0] * max(len(r) - len(g) + 1, 0)
    while len(r) >= len(g):
        c = r[-1] * inv_lead % p
        shift = len(r) - len(g)
        qt[shift] = c
        r = trim([r[i] - (c * g[i - shift] if i >= shift else 0) for i in range(len(r))], p)
    return trim(qt, p), r


def pmod(f: Poly, g: Poly, p: int) -> Poly:
    return pdivmod(f, g, p)[1]


def monic(f: Poly, p: int) -> Poly:
    f = trim(f, p)
    if not f:
        return f
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def pgcd(f: Poly, g: Poly, p: int) -> Poly:
    a, b = trim(f, p), trim(g, p)
    while b:
        a, b = b, pmod(a, b, p)
    return monic(a, p)


def ppow(f: Poly, k: int, p: int) -> Poly:
    out: Poly = [1]
    for _ in range(k):
        out = pmul(out, f, p)
    return out


def ppowmod(f: Poly, k: int, mod: Poly, p: int) -> Poly:
    result: Poly = [1]
    base = pmod(f, mod, p)
    while k:
        if k & 1:
            result = pmod(pmul(result, base, p), mod, p)
        base = pmod(pmul(base, base, p), mod, p)
        k >>= 1
    return result


def is_irreducible(f: Poly, p: int) -> bool:
    """Rabin's test: x^(p^n) = x mod f and gcd(x^(p^(n/r)) - x, f) = 1 for primes r | n."""
    f = monic(f, p)
    n = deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    for r in factorint(n):
        h = psub(ppowmod(x, p ** (n // r), f, p), x, p)
        if deg(pgcd(f, h, p)) > 0:
            return False
    return not psub(ppowmod(x, p**n, f, p), x, p)


def format_poly(f: Poly) -> str:
    if not f:
        return "0"
    terms = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if not c:
            continue
        mon = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if i == 0:
            terms.append(str(c))
        elif c == 1:
            terms.append(mon)
        else:
            terms.append(f"{c}*{mon}")
    return " + ".join(terms)


# matrices


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A: Matrix, B: Matrix, p: int) -> Matrix:
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    return [[sum(A[i][t] * B[t][j] for t in range(k)) % p for j in range(m)] for i in range(n)]


def mat_add_scaled(acc: Matrix, c: int, B: Matrix, p: int) -> Matrix:
    return [[(a + c * b) % p for a, b in zip(ra, rb)] for ra, rb in zip(acc, B)]


def rank(A: Matrix, p: int) -> int:
    return len(_echelon([row[:] for row in A], p)[1])


def _echelon(M: Matrix, p: int):
    """Reduced row echelon form in place; returns (M, pivot columns)."""
    rows = len(M)
    cols = len(M[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] % p), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [v * inv % p for v in M[r]]
        for i in range(rows):
            if i != r and M[i][c] % p:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M, pivots


def nullspace(A: Matrix, p: int) -> List[List[int]]:
    """Basis of {v : A v = 0}."""
    if not A:
        return []
    cols = len(A[0])
    M, pivots = _echelon([row[:] for row in A], p)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * cols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-M[r][fc]) % p
        basis.append(v)
    return basis


def is_invertible(A: Matrix, p: int) -> bool:
    return rank(A, p) == len(A)


def mat_eval_poly(f: Poly, A: Matrix, p: int) -> Matrix:
    n = len(A)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(f):
        acc = mat_mul(acc, A, p)
        acc = mat_add_scaled(acc, c, identity_matrix(n), p)
    return acc


def minimal_polynomial_of(A: Matrix, p: int) -> Poly:
    """Least k with A^k in the span of I, ..., A^(k-1), found by linear dependence."""
    n = len(A)
    powers = [identity_matrix(n)]
    for k in range(1, n + 1):
        powers.append(mat_mul(powers[-1], A, p))
        # columns are the flattened powers A^0 .. A^k
        cols = [[x for row in P for x in row] for P in powers]
        system = [[cols[j][i] for j in range(k + 1)] for i in range(n * n)]
        ns = nullspace(system, p)
        if ns:
            # the dependence must involve A^k since lower powers were independent
            v = ns[0]
            return monic(v, p)
    raise RuntimeError("no dependence found up to degree n")


def charpoly(A: Matrix, p: int) -> Poly:
    """Characteristic polynomial det(xI - A) via Hessenberg reduction."""
    n = len(A)
    H = [[v % p for v in row] for row in A]
    for m in range(1, n - 1):
        i = next((r for r in range(m + 1, n) if H[r][m - 1]), None)
        if H[m][m - 1] == 0:
            if i is None:
                continue
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = pow(H[m][m - 1], -1, p)
        for r in range(m + 1, n):
            u = H[r][m - 1] * inv % p
            if not u:
                continue
            H[r] = [(a - u * b) % p for a, b in zip(H[r], H[m])]
            for row in H:
                row[m] = (row[m] + u * row[r]) % p
    polys: List[Poly] = [[1]]
    for m in range(1, n + 1):
        cur = pmul([(-H[m - 1][m - 1]) % p, 1], polys[m - 1], p)
        t = 1
        for i in range(m - 1, 0, -1):
            t = t * H[i][i - 1] % p
            cur = psub(cur, [c * t * H[i - 1][m - 1] % p for c in polys[i - 1]], p)
        polys.append(cur)
    return polys[n]


def mat_mult_order(A: Matrix, p: int, limit: int = 10**6) -> int:
    n = len(A)
    I = identity_matrix(n)
    X = [row[:] for row in A]
    k = 1
    while X != I:
        X = mat_mul(X, A, p)
        k += 1
        if k > limit:
            raise RuntimeError("matrix order exceeds limit")
    return k
