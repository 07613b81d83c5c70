"""Fixed point ratios, P(g,s), t(H,K), t(H) and m_K(H) by exact enumeration.

Everything here is exact: ratios are ``fractions.Fraction`` and every
subgroup test runs on the element table of H.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from .exceptions import CapExceeded, NotASubgroup, NotInGroup, NotNormal
from .genset import DEFAULT_BUDGET, MaskSpace, _Deadline, _max_search, _min_search
from .group import PermGroup
from .perm import Permutation, parse_cycles
from .structure import LATTICE_CAP, socle, subgroup_lattice
from .table import GroupTable

T_HK_CAP = 3


class SearchCapExceeded(RuntimeError):
    """t(H,K) exceeded the iterative-deepening cap."""


def _table(H: PermGroup) -> GroupTable:
    return H.table(max(6000, H.order()))


def _bits_in(T: GroupTable, H: PermGroup, M: PermGroup) -> int:
    try:
        bits = T.bits_of_group(M)
    except NotInGroup as exc:
        raise NotASubgroup("M is not a subgroup of H") from exc
    return bits


def _class_bits(T: GroupTable, g: int) -> int:
    return T.to_bits(T.class_members(int(T.class_of[g])))


def fixed_point_ratio(H: PermGroup, g: Permutation, M: PermGroup) -> Fraction:
    """Fraction of right cosets of M fixed by g, checked against |g^H n M| / |g^H|."""
    T = _table(H)
    gi = T.index(g)
    mb = _bits_in(T, H, M)
    labels, reps = T.right_coset_labels(mb)
    rep_idx = np.asarray(reps, dtype=np.int64)
    fixed = int(np.count_nonzero(labels[T.mul[rep_idx, gi]] == labels[rep_idx]))
    via_cosets = Fraction(fixed, len(reps))
    cls = _class_bits(T, gi)
    via_class = Fraction((cls & mb).bit_count(), cls.bit_count())
    # both counts are exact and must agree
    assert via_cosets == via_class, "fixed point ratio mismatch"
    return via_cosets


def _covers(T: GroupTable, gens: Sequence[int], S_bits: int) -> bool:
    return T.subgroup_bits(gens) & S_bits == S_bits


def spread_P(H: PermGroup, S: PermGroup, g: Permutation, s: Permutation) -> Fraction:
    """|{t in s^H : <g,t> does not contain S}| / |s^H|."""
    T = _table(H)
    S_bits = _bits_in(T, H, S)
    si, gi = T.index(s), T.index(g)
    if not (S_bits >> si) & 1:
        raise NotInGroup("s is not in the socle")
    cls = T.class_members(int(T.class_of[si])).tolist()
    bad = sum(1 for t in cls if not _covers(T, [gi, t], S_bits))
    return Fraction(bad, len(cls))


def _maximal_bits_containing(H: PermGroup, gi: int, order_cap: int) -> List[int]:
    L = subgroup_lattice(H, order_cap)
    return [b for b in L.maximal_bits() if (b >> gi) & 1]


def maximal_overgroups(H: PermGroup, g: Permutation, order_cap: int = LATTICE_CAP) -> List[PermGroup]:
    T = _table(H)
    return [T.as_group(b) for b in _maximal_bits_containing(H, T.index(g), order_cap)]


@dataclass
class SpreadReport:
    group: str
    socle: str
    g: str
    s: str
    P_value: Fraction
    overgroup_sum: Fraction
    bound_value: Fraction
    maximal_overgroups_of_s: int

    def to_dict(self):
        return {"group": self.group, "socle": self.socle, "g": self.g, "s": self.s,
                "P_value": _frac(self.P_value), "overgroup_sum": _frac(self.overgroup_sum),
                "bound_value": _frac(self.bound_value),
                "maximal_overgroups_of_s": self.maximal_overgroups_of_s}


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def spread_bound_check(H: PermGroup, S: PermGroup, g: Permutation, s: Permutation,
                       order_cap: int = LATTICE_CAP) -> SpreadReport:
    """Both sides of P(g,s) <= sum over maximal M containing s of mu(g, M\\H).

    Also returns the intermediate sum over maximal M containing g of the
    share of s^H lying in M.
    """
    T = _table(H)
    gi, si = T.index(g), T.index(s)
    P = spread_P(H, S, g, s)
    g_cls = _class_bits(T, gi)
    s_cls = _class_bits(T, si)
    through_g = sum((Fraction((s_cls & M).bit_count(), s_cls.bit_count())
                     for M in _maximal_bits_containing(H, gi, order_cap)), Fraction(0))
    over_s = _maximal_bits_containing(H, si, order_cap)
    bound = sum((Fraction((g_cls & M).bit_count(), g_cls.bit_count()) for M in over_s), Fraction(0))
    assert 0 <= P <= through_g <= bound, "spread inequality violated"
    return SpreadReport(H.name, S.name or "socle", str(g), str(s), P, through_g, bound, len(over_s))


def spread_reports(H: PermGroup, S: Optional[PermGroup] = None,
                   order_cap: int = LATTICE_CAP) -> List[SpreadReport]:
    """One report per (class rep g, pp class rep s in S), g and s nontrivial."""
    S = socle(H) if S is None else S
    T = _table(H)
    S_bits = _bits_in(T, H, S)
    reps = [int(r) for r in T.class_reps if r != 0]
    pp_reps = [r for r in reps if T.is_pp[r] and (S_bits >> r) & 1]
    return [spread_bound_check(H, S, T.perm(g), T.perm(s), order_cap) for g in reps for s in pp_reps]


def _check_supplement(T: GroupTable, K_bits: int, S_bits: int) -> None:
    prod = K_bits.bit_count() * S_bits.bit_count() // (K_bits & S_bits).bit_count()
    if prod != T.n:
        raise ValueError("K S is not the whole group")


def _t_hk_bits(T: GroupTable, maximals: Sequence[int], K_bits: int, S_bits: int,
               deadline: _Deadline) -> int:
    space = MaskSpace(T, maximals, restrict_to=K_bits, symmetry=[])
    if space.top == 0:
        return 0
    pp_in_S = [x for x in T.members(S_bits).tolist() if T.is_pp[x]]
    masks, _, starts = space.candidates(pp_in_S)
    try:
        return len(_min_search(masks, starts, space.top, deadline, max_k=T_HK_CAP))
    except RuntimeError as exc:
        raise SearchCapExceeded(f"t(H,K) exceeds {T_HK_CAP}") from exc


def t_HK(H: PermGroup, S: PermGroup, K: PermGroup, order_cap: int = LATTICE_CAP,
         budget: Optional[float] = DEFAULT_BUDGET) -> int:
    """Fewest pp-elements X of S with <K, X> = H."""
    T = _table(H)
    S_bits, K_bits = _bits_in(T, H, S), _bits_in(T, H, K)
    _check_supplement(T, K_bits, S_bits)
    if H.order() <= order_cap:
        maximals = subgroup_lattice(H, order_cap).maximal_bits()
        return _t_hk_bits(T, maximals, K_bits, S_bits, _Deadline(budget))
    return _t_hk_closure(T, K_bits, S_bits)


def _t_hk_closure(T: GroupTable, K_bits: int, S_bits: int) -> int:
    """Iterative deepening by closures, for groups too large for the lattice."""
    if K_bits == T.full:
        return 0
    kg = T.small_generators(K_bits)
    pp_in_S = [x for x in T.members(S_bits).tolist() if T.is_pp[x]]
    for x in pp_in_S:
        if T.generates(kg + [x]):
            return 1
    for i, x in enumerate(pp_in_S):
        for y in pp_in_S[i + 1:]:
            if T.generates(kg + [x, y]):
                return 2
    raise SearchCapExceeded("t(H,K) exceeds 2 in the closure search")


def t_H(H: PermGroup, S: Optional[PermGroup] = None, order_cap: int = LATTICE_CAP,
        budget: Optional[float] = DEFAULT_BUDGET) -> int:
    """max t(H,K) over supplements K of S.

    t(H,K) can only drop as K grows, so the maximum is reached on minimal
    supplements. Within the lattice cap every conjugacy class of subgroups is
    tried. Beyond it H/S must be cyclic; the minimal supplements are then
    cyclic groups <g> with gS generating H/S, and one g per conjugacy class
    of elements suffices.
    """
    S = socle(H) if S is None else S
    T = _table(H)
    S_bits = _bits_in(T, H, S)
    deadline = _Deadline(budget)
    if H.order() <= order_cap:
        L = subgroup_lattice(H, order_cap)
        maximals = L.maximal_bits()
        best = 0
        for i in L.class_representatives():
            K_bits = L.bits[i]
            prod = K_bits.bit_count() * S_bits.bit_count() // (K_bits & S_bits).bit_count()
            if prod != T.n:
                continue
            best = max(best, _t_hk_bits(T, maximals, K_bits, S_bits, deadline))
        return best
    index = T.n // S_bits.bit_count()
    best = 0
    found = False
    for r in T.class_reps:
        r = int(r)
        K_bits = T.subgroup_bits([r])
        if K_bits.bit_count() * S_bits.bit_count() // (K_bits & S_bits).bit_count() != T.n:
            continue
        found = True
        best = max(best, _t_hk_closure(T, K_bits, S_bits))
    if not found:
        raise CapExceeded(f"H/S of order {index} is not cyclic and H exceeds the lattice cap")
    return best


def _normalizer_gens(T: GroupTable, K_bits: int) -> List[int]:
    mem = T.members(K_bits)
    norm = [g for g in range(T.n) if T.to_bits(T.conj_map(g)[mem]) == K_bits]
    return T.small_generators(T.to_bits(norm))


def m_K(H: PermGroup, S: PermGroup, K: PermGroup, order_cap: int = LATTICE_CAP,
        budget: Optional[float] = DEFAULT_BUDGET) -> int:
    """Largest Y with <K, Y> = H and no proper subset of Y doing the same."""
    T = _table(H)
    S_bits, K_bits = _bits_in(T, H, S), _bits_in(T, H, K)
    _check_supplement(T, K_bits, S_bits)
    maximals = subgroup_lattice(H, order_cap).maximal_bits()
    space = MaskSpace(T, maximals, restrict_to=K_bits, symmetry=_normalizer_gens(T, K_bits))
    if space.top == 0:
        return 0
    masks, _, starts = space.candidates(list(range(1, T.n)))
    return len(_max_search(masks, starts, space.top, _Deadline(budget)))


def is_k_generating(H: PermGroup, K: PermGroup, Y: Sequence[Permutation]) -> bool:
    return PermGroup(H.degree, list(K.generators) + list(Y)).order() == H.order()


def is_k_independent(H: PermGroup, K: PermGroup, Y: Sequence[Permutation]) -> bool:
    """K-generating, and no Y minus one element is (generation is monotone)."""
    for y in Y:
        if not H.contains(y):
            raise NotInGroup(f"{y} is not in H")
    if not is_k_generating(H, K, Y):
        return False
    return all(not is_k_generating(H, K, list(Y[:i]) + list(Y[i + 1:])) for i in range(len(Y)))


def transposition_lambda(n: int) -> List[Permutation]:
    """(1,2,3), (1,2)(3,4), ..., (1,2)(3,n): independent over K = <(1,2)> in Sym(n)."""
    if n < 4:
        raise ValueError("n must be at least 4")
    out = [parse_cycles("(1,2,3)", n)]
    out += [parse_cycles(f"(1,2)(3,{j})", n) for j in range(4, n + 1)]
    return out


def spread_hypothesis(H: PermGroup, S: Optional[PermGroup] = None) -> bool:
    """Every g in H outside S has a pp-element s of S with P(g,s) < 1."""
    S = socle(H) if S is None else S
    T = _table(H)
    S_bits = _bits_in(T, H, S)
    pp_reps = [int(r) for r in T.class_reps if r != 0 and T.is_pp[r] and (S_bits >> int(r)) & 1]
    for g in T.class_reps:
        g = int(g)
        if (S_bits >> g) & 1:
            continue
        if not any(spread_P(H, S, T.perm(g), T.perm(s)) < 1 for s in pp_reps):
            return False
    return True


def monolithic_delta(G: PermGroup, order_cap: int = LATTICE_CAP,
                     budget: Optional[float] = DEFAULT_BUDGET) -> int:
    """m(G) - m(G/N) for the unique minimal normal subgroup N of a monolithic G."""
    from .genset import max_independent_generating
    from .group import quotient
    from .structure import is_monolithic

    if not is_monolithic(G):
        raise NotNormal("group is not monolithic")
    N = socle(G)
    Q, _ = quotient(G, N)
    return max_independent_generating(G, budget, order_cap)[0] - max_independent_generating(Q, budget, order_cap)[0]
