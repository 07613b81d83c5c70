"""Subgroup lattice, Frattini subgroup, minimal normal subgroups and chief series."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import CapExceeded
from .group import PermGroup, is_solvable as _is_solvable
from .table import GroupTable

LATTICE_CAP = 2016


class SubgroupLattice:
    """Every subgroup of ``G`` as a bitset over the element table.

    ``bits[i]`` is the i-th subgroup, sorted by (order, bits); ``class_of[i]``
    is the conjugacy class of subgroups it belongs to and ``maximal[i]``
    flags maximal subgroups.
    """

    def __init__(self, table: GroupTable, bits, gens, class_of, maximal):
        self.table = table
        self.bits: List[int] = bits
        self.gens: List[List[int]] = gens
        self.class_of: List[int] = class_of
        self.maximal: List[bool] = maximal
        self.orders: List[int] = [b.bit_count() for b in bits]
        self.position: Dict[int, int] = {b: i for i, b in enumerate(bits)}

    def __len__(self) -> int:
        return len(self.bits)

    @property
    def class_count(self) -> int:
        return max(self.class_of) + 1

    def class_representatives(self) -> List[int]:
        """Index of the first subgroup of each conjugacy class."""
        seen: Dict[int, int] = {}
        for i, c in enumerate(self.class_of):
            seen.setdefault(c, i)
        return [seen[c] for c in sorted(seen)]

    def class_size(self, c: int) -> int:
        return sum(1 for x in self.class_of if x == c)

    def subgroup(self, i: int) -> PermGroup:
        T = self.table
        return PermGroup(T.degree, [T.perm(g) for g in self.gens[i]])

    @cached_property
    def subgroups(self) -> List[PermGroup]:
        return [self.subgroup(i) for i in range(len(self))]

    def maximal_bits(self) -> List[int]:
        return [b for b, m in zip(self.bits, self.maximal) if m]

    def index_of(self, bits: int) -> int:
        return self.position[bits]


def _pp_cyclic_subgroups(T: GroupTable) -> List[Tuple[int, int]]:
    """(bits, generator) for every cyclic subgroup of prime-power order."""
    out: Dict[int, int] = {}
    for x in np.flatnonzero(T.is_pp).tolist():
        b = T.subgroup_bits([x])
        out.setdefault(b, x)
    return sorted(out.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))


def _build_lattice(T: GroupTable) -> SubgroupLattice:
    n = T.n
    cyclics = _pp_cyclic_subgroups(T)
    known: Dict[int, int] = {}  # bits -> class id
    gens_of: Dict[int, List[int]] = {}
    reps: List[int] = []  # class representatives, in discovery order
    rep_gens: List[List[int]] = []

    def register(bits: int, gens: List[int]) -> None:
        cid = len(reps)
        reps.append(bits)
        rep_gens.append(gens)
        for b in T.conjugates(bits):
            known[b] = cid
        gens_of[bits] = gens

    register(1, [])
    maximal_class: Dict[int, bool] = {}
    k = 0
    # reps are processed in order; joins only grow, so every class is reached
    queue = [0]
    while k < len(queue):
        cid = queue[k]
        k += 1
        A = reps[cid]
        ga = rep_gens[cid]
        is_max = A != T.full
        for C, c in cyclics:
            if C & A == C:
                continue
            J = T.subgroup_bits(ga + [c], early_full=True)
            if J != T.full:
                is_max = False
            if J not in known:
                register(J, ga + [c])
                queue.append(len(reps) - 1)
        maximal_class[cid] = is_max and A != T.full
    # trivial group is maximal only in groups of prime order, handled above
    if n == 1:
        maximal_class[0] = False

    # conjugates carry conjugated generators
    entries = []
    for cid, A in enumerate(reps):
        ga = rep_gens[cid]
        seen = {A: ga}
        queue2 = [A]
        j = 0
        while j < len(queue2):
            b = queue2[j]
            j += 1
            mem = T.members(b)
            for cmap in T.gen_conj:
                c = T.to_bits(cmap[mem])
                if c not in seen:
                    seen[c] = [int(cmap[g]) for g in seen[b]]
                    queue2.append(c)
        for b, g in seen.items():
            entries.append((b.bit_count(), b, g, cid))
    entries.sort(key=lambda e: (e[0], e[1]))
    # renumber classes by first appearance in sorted order
    renum: Dict[int, int] = {}
    for e in entries:
        renum.setdefault(e[3], len(renum))
    bits = [e[1] for e in entries]
    gens = [e[2] for e in entries]
    class_of = [renum[e[3]] for e in entries]
    maximal = [maximal_class[e[3]] for e in entries]
    return SubgroupLattice(T, bits, gens, class_of, maximal)


def subgroup_lattice(G: PermGroup, order_cap: int = LATTICE_CAP) -> SubgroupLattice:
    if G.order() > order_cap:
        raise CapExceeded(f"order exceeds lattice cap: {G.order()} > {order_cap}")
    cached = G.__dict__.get("_lattice")
    if cached is None:
        cached = _build_lattice(G.table(max(order_cap, G.order())))
        G.__dict__["_lattice"] = cached
    return cached


def maximal_subgroup_bits(G: PermGroup, order_cap: int = LATTICE_CAP) -> List[int]:
    return subgroup_lattice(G, order_cap).maximal_bits()


def frattini_bits(G: PermGroup, order_cap: int = LATTICE_CAP) -> int:
    T = G.table(max(order_cap, G.order()))
    result = T.full
    for b in maximal_subgroup_bits(G, order_cap):
        result &= b
    return result if G.order() > 1 else 1


def frattini(G: PermGroup, order_cap: int = LATTICE_CAP) -> PermGroup:
    T = G.table(max(order_cap, G.order()))
    return T.as_group(frattini_bits(G, order_cap))


def is_frattini_free(G: PermGroup, order_cap: int = LATTICE_CAP) -> bool:
    return frattini_bits(G, order_cap) == 1


def normal_subgroup_bits(G: PermGroup, cap: int = 6000) -> List[int]:
    return G.table(max(cap, G.order())).normal_subgroups()


def _minimal_over(normals: Sequence[int], base: int) -> List[int]:
    above = [b for b in normals if b & base == base and b != base]
    return [b for b in above if not any(c != b and c & b == c and c & base == base and c != base for c in above)]


def minimal_normal_subgroup_bits(G: PermGroup) -> List[int]:
    return _minimal_over(normal_subgroup_bits(G), 1)


def minimal_normal_subgroups(G: PermGroup) -> List[PermGroup]:
    T = G.table()
    return [T.as_group(b) for b in minimal_normal_subgroup_bits(G)]


def socle(G: PermGroup) -> PermGroup:
    T = G.table()
    gens: List[int] = []
    for b in minimal_normal_subgroup_bits(G):
        gens += T.small_generators(b)
    return T.as_group(T.subgroup_bits(gens))


def is_monolithic(G: PermGroup) -> bool:
    return len(minimal_normal_subgroup_bits(G)) == 1


def is_solvable(G: PermGroup) -> bool:
    return _is_solvable(G)


def is_nilpotent(G: PermGroup) -> bool:
    """Lower central series reaches 1."""
    T = G.table()
    cur = T.full
    while cur != 1:
        nxt = T.commutator_bits(cur, T.full)
        if nxt == cur:
            return False
        cur = nxt
    return True


@dataclass(frozen=True)
class ChiefFactor:
    order: int
    is_abelian: bool
    is_frattini: bool


@dataclass
class ChiefSeries:
    """Descending chief series; ``terms[0]`` is G and ``terms[-1]`` is 1."""

    terms: List[PermGroup]
    factor_info: List[ChiefFactor]
    term_bits: List[int] = field(default_factory=list, repr=False)

    @property
    def a(self) -> int:
        return sum(not f.is_frattini for f in self.factor_info)

    @property
    def b(self) -> int:
        return sum(not f.is_abelian for f in self.factor_info)

    def signature(self):
        return sorted((f.order, f.is_abelian, f.is_frattini) for f in self.factor_info)


def chief_series(G: PermGroup, order_cap: int = LATTICE_CAP, select: str = "smallest") -> ChiefSeries:
    """Chief series built upward from 1 by adjoining a minimal normal subgroup of the quotient.

    ``select`` picks among the candidates: ``"smallest"`` (by order, then
    bits) or ``"largest"``; both give the same factor multiset.
    """
    T = G.table(max(order_cap, G.order()))
    normals = T.normal_subgroups()
    maxes = maximal_subgroup_bits(G, order_cap) if G.order() > 1 else []
    up = [1]
    while up[-1] != T.full:
        cands = _minimal_over(normals, up[-1])
        key = lambda b: (b.bit_count(), b)
        cands.sort(key=key, reverse=(select == "largest"))
        up.append(cands[0])
    terms_bits = up[::-1]
    info = []
    for upper, lower in zip(terms_bits, terms_bits[1:]):
        size = upper.bit_count() // lower.bit_count()
        abelian = T.derived_bits(upper) & lower == T.derived_bits(upper)
        # upper/lower <= Phi(G/lower) iff upper lies in every maximal subgroup containing lower
        phi_pre = T.full
        for M in maxes:
            if M & lower == lower:
                phi_pre &= M
        info.append(ChiefFactor(order=size, is_abelian=abelian, is_frattini=(upper & phi_pre == upper)))
    return ChiefSeries(terms=[T.as_group(b) for b in terms_bits], factor_info=info, term_bits=terms_bits)


def chief_counts(G: PermGroup, order_cap: int = LATTICE_CAP) -> Tuple[int, int]:
    """(a, b): numbers of non-Frattini and of non-abelian chief factors."""
    cs = chief_series(G, order_cap)
    return cs.a, cs.b
