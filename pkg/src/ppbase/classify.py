"""Structural B_pp decision for Frattini-free groups.

A Frattini-free group is B_pp exactly when it is elementary abelian, a
scalar extension P : Q (P elementary abelian, Q a cyclic q-group acting
faithfully with P a sum of pairwise isomorphic simple modules), or a direct
product of such groups with pairwise coprime orders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Optional, Tuple

from sympy import factorint

from . import gfp
from .exceptions import FrattiniNotTrivial
from .group import PermGroup
from .structure import LATTICE_CAP, frattini_bits
from .table import GroupTable


@dataclass
class ModuleAction:
    """Matrix of a generator of Q acting on P = GF(p)^dim (row vectors, v -> v A)."""

    p: int
    dim: int
    matrix: List[List[int]]

    def __post_init__(self):
        if len(self.matrix) != self.dim or any(len(r) != self.dim for r in self.matrix):
            raise ValueError("matrix shape does not match dim")
        self.matrix = [[v % self.p for v in row] for row in self.matrix]

    def is_invertible(self) -> bool:
        return gfp.is_invertible(self.matrix, self.p)

    def order(self) -> int:
        return gfp.mat_mult_order(self.matrix, self.p)


def minimal_polynomial(A: ModuleAction) -> List[int]:
    """Monic minimal polynomial of the action matrix, coefficients low to high."""
    if not A.is_invertible():
        raise ValueError("matrix is singular")
    return gfp.minimal_polynomial_of(A.matrix, A.p)


def characteristic_polynomial(A: ModuleAction) -> List[int]:
    return gfp.charpoly(A.matrix, A.p)


# descriptors


@dataclass
class ElementaryAbelian:
    p: Optional[int]
    rank: int
    evidence: Dict[str, Any] = field(default_factory=dict)
    verdict = "ElementaryAbelian"

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict, "p": self.p, "rank": self.rank, "evidence": self.evidence}


@dataclass
class ScalarExtension:
    p: int
    q: int
    dim: int
    q_order: int
    action: ModuleAction
    minpoly: List[int]
    charpoly: List[int]
    evidence: Dict[str, Any] = field(default_factory=dict)
    verdict = "ScalarExtension"

    @property
    def simple_dim(self) -> int:
        return len(self.minpoly) - 1

    @property
    def multiplicity(self) -> int:
        return self.dim // self.simple_dim

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict, "p": self.p, "q": self.q, "dim": self.dim,
            "q_order": self.q_order, "matrix": self.action.matrix,
            "minpoly": gfp.format_poly(self.minpoly), "charpoly": gfp.format_poly(self.charpoly),
            "simple_dim": self.simple_dim, "multiplicity": self.multiplicity,
            "evidence": self.evidence,
        }


@dataclass
class CoprimeProduct:
    factors: List[Any]
    evidence: Dict[str, Any] = field(default_factory=dict)
    verdict = "CoprimeProduct"

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict, "factors": [f.to_dict() for f in self.factors],
                "evidence": self.evidence}


@dataclass
class NotBpp:
    reason: str
    evidence: Dict[str, Any] = field(default_factory=dict)
    verdict = "NotBpp"

    def to_dict(self) -> Dict[str, Any]:
        return {"verdict": self.verdict, "reason": self.reason, "evidence": self.evidence}


# work on subgroups given as bitsets of a fixed table


def _cycles(T: GroupTable, idx) -> List[str]:
    return [str(T.perm(int(i))) for i in idx]


def _order_primes(o: int) -> set:
    return set(factorint(int(o)))


def _pi_part(T: GroupTable, bits: int, primes) -> int:
    """Bitset of elements of ``bits`` whose order involves only ``primes``."""
    primes = set(primes)
    mem = T.members(bits)
    keep = [x for x in mem.tolist() if _order_primes(T.orders[x]) <= primes]
    return T.to_bits(keep)


def _normal_hall(T: GroupTable, bits: int, primes) -> Optional[int]:
    """The normal Hall pi-subgroup of ``bits``, if it exists.

    It exists iff the pi-elements number exactly |F|_pi and form a subgroup;
    it is then the unique Hall pi-subgroup and is characteristic.
    """
    n = bits.bit_count()
    target = 1
    for r, e in factorint(n).items():
        if r in primes:
            target *= r**e
    H = _pi_part(T, bits, primes)
    if H.bit_count() != target:
        return None
    if T.subgroup_bits(T.small_generators(H)) != H:
        return None
    return H


def _coprime_factor_bits(T: GroupTable, bits: int) -> List[int]:
    primes = sorted(factorint(bits.bit_count()))
    if len(primes) < 2:
        return [bits]
    for size in range(1, len(primes) // 2 + 1):
        for pi in combinations(primes, size):
            rest = [r for r in primes if r not in pi]
            A = _normal_hall(T, bits, pi)
            if A is None:
                continue
            B = _normal_hall(T, bits, rest)
            if B is None:
                continue
            if A & B != 1 or not _commute(T, A, B):
                continue
            parts = _coprime_factor_bits(T, A) + _coprime_factor_bits(T, B)
            return sorted(parts, key=lambda b: min(factorint(b.bit_count())))
    return [bits]


def _commute(T: GroupTable, A: int, B: int) -> bool:
    ga, gb = T.small_generators(A), T.small_generators(B)
    return all(T.mul[x, y] == T.mul[y, x] for x in ga for y in gb)


def _is_elementary_abelian(T: GroupTable, bits: int) -> Optional[int]:
    """The prime p if ``bits`` is elementary abelian of exponent p (0 for trivial)."""
    if bits == 1:
        return 0
    mem = T.members(bits)[1:]
    orders = set(T.orders[mem].tolist())
    if len(orders) != 1:
        return None
    (p,) = orders
    if factorint(int(p)) != {int(p): 1}:
        return None
    gens = T.small_generators(bits)
    if not all(T.mul[x, y] == T.mul[y, x] for x in gens for y in gens):
        return None
    return int(p)


def _basis(T: GroupTable, P: int, p: int) -> Tuple[List[int], Dict[int, Tuple[int, ...]]]:
    """Greedy basis of the elementary abelian group P and the coordinate map."""
    coords: Dict[int, Tuple[int, ...]] = {0: ()}
    basis: List[int] = []
    for x in T.members(P).tolist():
        if x in coords:
            continue
        basis.append(x)
        new: Dict[int, Tuple[int, ...]] = {}
        for y, c in coords.items():
            cur = y
            for k in range(p):
                new[cur] = c + (k,)
                cur = int(T.mul[cur, x])
        coords = new
    dim = len(basis)
    return basis, {e: c + (0,) * (dim - len(c)) for e, c in coords.items()}


def _scalar_extension_bits(T: GroupTable, bits: int):
    """ScalarExtension descriptor for the subgroup ``bits`` or a NotBpp reason."""
    n = bits.bit_count()
    f = factorint(n)
    if len(f) != 2:
        return NotBpp(f"order {n} is not divisible by exactly two primes")
    reasons = []
    for p, q in (tuple(f), tuple(f)[::-1]):
        a, b = f[p], f[q]
        P = _pi_part(T, bits, {p})
        if P.bit_count() != p**a:
            reasons.append(f"Sylow {p}-subgroup is not normal")
            continue
        if _is_elementary_abelian(T, P) != p:
            reasons.append(f"normal Sylow {p}-subgroup is not elementary abelian")
            continue
        mem = T.members(bits)
        gen = next((int(x) for x in mem if T.orders[x] == q**b), None)
        if gen is None:
            reasons.append(f"Sylow {q}-subgroup is not cyclic")
            continue
        basis, coords = _basis(T, P, p)
        cmap = T.conj_map(gen)
        mat = [list(coords[int(cmap[e])]) for e in basis]
        A = ModuleAction(p, a, mat)
        evidence = {"P": _cycles(T, basis), "Q": _cycles(T, [gen])}
        if A.order() != q**b:
            return NotBpp(f"Q of order {q**b} does not act faithfully on P", evidence)
        mp = minimal_polynomial(A)
        cp = characteristic_polynomial(A)
        d = len(mp) - 1
        if not gfp.is_irreducible(mp, p):
            return NotBpp("P is not a semisimple homogeneous module (minimal polynomial reducible)", evidence)
        if a % d or gfp.ppow(mp, a // d, p) != cp:
            return NotBpp("P is not homogeneous (characteristic polynomial is not a power of the minimal polynomial)", evidence)
        return ScalarExtension(p=p, q=q, dim=a, q_order=q**b, action=A, minpoly=mp, charpoly=cp,
                               evidence=evidence)
    return NotBpp("; ".join(reasons))


def _classify_factor(T: GroupTable, bits: int):
    p = _is_elementary_abelian(T, bits)
    if p is not None:
        rank = 0 if p == 0 else factorint(bits.bit_count())[p]
        return ElementaryAbelian(p or None, rank, {"generators": _cycles(T, T.small_generators(bits))})
    return _scalar_extension_bits(T, bits)


def _require_frattini_free(G: PermGroup, order_cap: int) -> GroupTable:
    T = G.table(max(order_cap, G.order()))
    if G.order() > 1 and frattini_bits(G, order_cap) != 1:
        raise FrattiniNotTrivial("Frattini subgroup is nontrivial; classify G/Phi(G) instead")
    return T


def recognize_scalar_extension(G: PermGroup, order_cap: int = LATTICE_CAP) -> Optional[ScalarExtension]:
    T = _require_frattini_free(G, order_cap)
    res = _scalar_extension_bits(T, T.full)
    return res if isinstance(res, ScalarExtension) else None


def coprime_factorize(G: PermGroup, order_cap: int = LATTICE_CAP) -> List[PermGroup]:
    """Finest splitting of G into direct factors of pairwise coprime order."""
    T = _require_frattini_free(G, order_cap)
    return [T.as_group(b) for b in _coprime_factor_bits(T, T.full)]


def is_bpp_structural(G: PermGroup, order_cap: int = LATTICE_CAP):
    """Descriptor for one of the three B_pp shapes, or NotBpp with a reason."""
    from .group import is_solvable

    T = _require_frattini_free(G, order_cap)
    if G.order() == 1:
        return ElementaryAbelian(None, 0, {"generators": []})
    if not is_solvable(G):
        return NotBpp("non-solvable")
    whole = _classify_factor(T, T.full)
    if not isinstance(whole, NotBpp):
        return whole
    parts = _coprime_factor_bits(T, T.full)
    if len(parts) == 1:
        return whole
    descs = [_classify_factor(T, b) for b in parts]
    orders = [b.bit_count() for b in parts]
    evidence = {"factor_orders": orders}
    bad = [(o, d) for o, d in zip(orders, descs) if isinstance(d, NotBpp)]
    if bad:
        o, d = bad[0]
        return NotBpp(f"coprime factor of order {o}: {d.reason}", evidence)
    return CoprimeProduct(descs, evidence)

