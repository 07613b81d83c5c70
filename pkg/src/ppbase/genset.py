"""Independent generating sets, m(G), m_pp(G) and the brute-force B_pp decision.

A set X generates G exactly when no maximal subgroup contains all of X, and
a generating X is independent exactly when every X minus one element lies in
some maximal subgroup (Frattini elements are non-generators). So each element
is summarised by the bitmask of maximal subgroups containing it, and the
searches below run on those masks alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import BudgetExceeded, NotInGroup
from .group import PermGroup
from .perm import Permutation, pp_decompose
from .structure import LATTICE_CAP, frattini_bits, maximal_subgroup_bits
from .table import GroupTable

DEFAULT_BUDGET = 600.0


class _Deadline:
    def __init__(self, seconds: Optional[float]):
        self.end = None if seconds is None else time.monotonic() + seconds
        self.ticks = 0

    def check(self) -> None:
        self.ticks += 1
        if self.end is not None and self.ticks % 1024 == 0 and time.monotonic() > self.end:
            raise BudgetExceeded("time budget exceeded")


class MaskSpace:
    """Maximal-subgroup membership masks for the elements of a group.

    ``restrict_to`` keeps only the maximal subgroups containing a given
    subgroup (for K-generation); ``symmetry`` lists element indices whose
    conjugation action may be used to prune searches.
    """

    def __init__(self, table: GroupTable, maximals: Sequence[int], restrict_to: int = 1,
                 symmetry: Optional[Sequence[int]] = None):
        self.table = T = table
        self.maximals = [M for M in maximals if M & restrict_to == restrict_to]
        r = len(self.maximals)
        self.top = (1 << r) - 1
        if r:
            mat = np.stack([T.bits_to_mask(M) for M in self.maximals])  # (r, n)
            packed = np.packbits(mat.T, axis=1, bitorder="little")
            self.mask = [int.from_bytes(row.tobytes(), "little") for row in packed]
        else:
            self.mask = [0] * T.n
        self.symmetry = list(T.gen_idx if symmetry is None else symmetry)

    def candidates(self, elems: Sequence[int]):
        """Distinct useful masks among ``elems`` in symmetry-orbit blocks.

        Returns (masks, witness element per mask, list of block starts).
        """
        T = self.table
        elems = [int(x) for x in elems]
        allowed = set(elems)
        witness: Dict[int, int] = {}
        for x in sorted(elems):
            m = self.mask[x]
            if m == self.top:
                continue  # lies in every relevant maximal subgroup
            witness.setdefault(m, x)
        masks = list(witness)
        pos = {m: i for i, m in enumerate(masks)}
        parent = list(range(len(masks)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        cmaps = [T.conj_map(g) for g in self.symmetry]
        for x in allowed:
            mx = self.mask[x]
            if mx not in pos:
                continue
            for cm in cmaps:
                y = int(cm[x])
                my = self.mask[y]
                if my in pos and y in allowed:
                    a, b = find(pos[mx]), find(pos[my])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        blocks: Dict[int, List[int]] = {}
        for m in masks:
            blocks.setdefault(find(pos[m]), []).append(m)
        ordered: List[int] = []
        starts: List[int] = []
        for key in sorted(blocks, key=lambda k: (min(blocks[k]), k)):
            starts.append(len(ordered))
            ordered.extend(sorted(blocks[key]))
        return ordered, [witness[m] for m in ordered], starts


def _max_search(masks: Sequence[int], starts: Sequence[int], top: int, deadline: _Deadline):
    """Largest set with AND == 0 whose leave-one-out ANDs are all nonzero."""
    best: List[int] = []
    rep_set = set(starts)

    def dfs(T: int, Ls: List[int], chosen: List[int], pool: List[int]):
        nonlocal best
        deadline.check()
        if T == 0:
            if len(chosen) > len(best):
                best = list(chosen)
            return
        if len(chosen) + min(len(pool), T.bit_count()) <= len(best):
            return
        for k, ci in enumerate(pool):
            if len(chosen) + min(len(pool) - k, T.bit_count()) <= len(best):
                return
            a = masks[ci]
            nT = T & a
            nLs = [L & a for L in Ls]
            nLs.append(T)
            if nT == 0:
                child = []
            else:
                child = [c for c in pool[k + 1:] if masks[c] & nT != nT and all(L & masks[c] for L in nLs)]
            chosen.append(ci)
            dfs(nT, nLs, chosen, child)
            chosen.pop()

    first = [i for i in range(len(masks)) if i in rep_set and masks[i] & top != top]
    for ci in first:
        a = masks[ci]
        nT = top & a
        if nT == 0:
            if not best:
                best = [ci]
            continue
        pool = [c for c in range(ci + 1, len(masks)) if masks[c] & nT != nT and masks[c] & top]
        # leave-one-out for the first element is "top", always nonzero when top != 0
        dfs_start = [ci]
        _run = dfs
        _run(nT, [top], dfs_start, pool)
    return best


def _min_search(masks: Sequence[int], starts: Sequence[int], top: int, deadline: _Deadline,
                max_k: int = 64):
    """Smallest set of masks whose AND with ``top`` is 0."""
    if top == 0:
        return []
    rep_set = set(starts)

    def dfs(T: int, depth: int, chosen: List[int], lo: int) -> bool:
        deadline.check()
        if T == 0:
            return True
        if depth == 0:
            return False
        for c in range(lo, len(masks)):
            a = masks[c]
            if a & T == T:
                continue
            if depth == 1 and a & T:
                continue
            chosen.append(c)
            if dfs(T & a, depth - 1, chosen, c + 1):
                return True
            chosen.pop()
        return False

    for k in range(1, max_k + 1):
        for ci in range(len(masks)):
            if ci not in rep_set:
                continue
            chosen = [ci]
            if dfs(top & masks[ci], k - 1, chosen, ci + 1):
                return chosen
    raise RuntimeError("no generating set found; the candidate set does not generate")


@dataclass
class GenSetReport:
    m: int
    m_pp: int
    min_pp: int
    is_bpp: bool
    witness_max: List[Permutation] = field(default_factory=list)
    witness_max_pp: List[Permutation] = field(default_factory=list)
    witness_min: List[Permutation] = field(default_factory=list)


def _space(G: PermGroup, order_cap: int) -> MaskSpace:
    cached = G.__dict__.get("_maskspace")
    if cached is None:
        T = G.table(max(order_cap, G.order()))
        cached = MaskSpace(T, maximal_subgroup_bits(G, order_cap))
        G.__dict__["_maskspace"] = cached
    return cached


def _check_members(G: PermGroup, X: Sequence[Permutation]) -> None:
    for x in X:
        if not G.contains(x):
            raise NotInGroup(f"{x} is not in the group")


def is_independent(G: PermGroup, X: Sequence[Permutation], order_cap: int = LATTICE_CAP) -> bool:
    """True iff no x in X lies in <X - {x}, Phi(G)>."""
    _check_members(G, X)
    T = G.table(max(order_cap, G.order()))
    phi = T.small_generators(frattini_bits(G, order_cap))
    idx = [T.index(x) for x in X]
    if len(set(idx)) != len(idx):
        return False
    for k, x in enumerate(idx):
        rest = idx[:k] + idx[k + 1:]
        if T.closure_mask(rest + phi)[x]:
            return False
    return True


def generates(G: PermGroup, X: Sequence[Permutation]) -> bool:
    return PermGroup(G.degree, list(X)).order() == G.order()


def _nonidentity(T: GroupTable) -> List[int]:
    return list(range(1, T.n))


def _pp_elements(T: GroupTable) -> List[int]:
    return np.flatnonzero(T.is_pp).tolist()


def max_independent_generating(G: PermGroup, budget: Optional[float] = DEFAULT_BUDGET,
                               order_cap: int = LATTICE_CAP) -> Tuple[int, List[Permutation]]:
    """m(G) and an independent generating set of that size."""
    if G.order() == 1:
        return 0, []
    S = _space(G, order_cap)
    masks, wit, starts = S.candidates(_nonidentity(S.table))
    best = _max_search(masks, starts, S.top, _Deadline(budget))
    return len(best), [S.table.perm(wit[i]) for i in best]


def max_pp_independent_generating(G: PermGroup, budget: Optional[float] = DEFAULT_BUDGET,
                                  order_cap: int = LATTICE_CAP) -> Tuple[int, List[Permutation]]:
    """m_pp(G) and a pp-base of that size."""
    if G.order() == 1:
        return 0, []
    S = _space(G, order_cap)
    masks, wit, starts = S.candidates(_pp_elements(S.table))
    best = _max_search(masks, starts, S.top, _Deadline(budget))
    return len(best), [S.table.perm(wit[i]) for i in best]


def min_pp_generating(G: PermGroup, budget: Optional[float] = DEFAULT_BUDGET,
                      order_cap: int = LATTICE_CAP) -> Tuple[int, List[Permutation]]:
    """Smallest number of pp-elements generating G, with a witness."""
    if G.order() == 1:
        return 0, []
    S = _space(G, order_cap)
    masks, wit, starts = S.candidates(_pp_elements(S.table))
    best = _min_search(masks, starts, S.top, _Deadline(budget))
    return len(best), [S.table.perm(wit[i]) for i in best]


def is_bpp_bruteforce(G: PermGroup, budget: Optional[float] = DEFAULT_BUDGET,
                      order_cap: int = LATTICE_CAP) -> bool:
    return genset_report(G, budget, order_cap, with_m=False).is_bpp


def genset_report(G: PermGroup, budget: Optional[float] = DEFAULT_BUDGET,
                  order_cap: int = LATTICE_CAP, with_m: bool = True) -> GenSetReport:
    deadline_start = time.monotonic()

    def remaining():
        if budget is None:
            return None
        left = budget - (time.monotonic() - deadline_start)
        if left <= 0:
            raise BudgetExceeded("time budget exceeded")
        return left

    mpp, wpp = max_pp_independent_generating(G, remaining(), order_cap)
    kmin, wmin = min_pp_generating(G, remaining(), order_cap)
    if with_m:
        m, wm = max_independent_generating(G, remaining(), order_cap)
    else:
        m, wm = mpp, wpp
    return GenSetReport(m=m, m_pp=mpp, min_pp=kmin, is_bpp=(kmin == mpp),
                        witness_max=wm, witness_max_pp=wpp, witness_min=wmin)


def pp_base_convert(G: PermGroup, X: Sequence[Permutation], order_cap: int = LATTICE_CAP) -> List[Permutation]:
    """Extract a pp-base from the primary parts of an independent generating set.

    Parts are listed member by member (primes ascending) and dropped greedily
    whenever the remaining parts still generate G.
    """
    if not generates(G, X) or not is_independent(G, X, order_cap):
        raise ValueError("X is not an independent generating set")
    parts: List[Permutation] = []
    for x in X:
        if x.is_identity():
            continue
        parts.extend(pp_decompose(x).parts)
    keep = list(parts)
    k = 0
    while k < len(keep):
        trial = keep[:k] + keep[k + 1:]
        if generates(G, trial):
            keep = trial
        else:
            k += 1
    return keep


def m_of_frattini_quotient(G: PermGroup, budget: Optional[float] = DEFAULT_BUDGET,
                           order_cap: int = LATTICE_CAP) -> int:
    """m(G/Phi(G)) computed in an explicit quotient group."""
    from .group import quotient

    T = G.table(max(order_cap, G.order()))
    phi = T.as_group(frattini_bits(G, order_cap))
    Q, _ = quotient(G, phi)
    return max_independent_generating(Q, budget, order_cap)[0]


def chief_delta(G: PermGroup, budget: Optional[float] = DEFAULT_BUDGET, order_cap: int = LATTICE_CAP,
                series=None) -> List[int]:
    """Increments m(G/G_{i+1}) - m(G/G_i) along a descending chief series.

    They add up to m(G). An abelian factor contributes 1, or 0 when it is
    Frattini in its quotient; a non-abelian one contributes at least 2.
    """
    from .group import quotient
    from .structure import chief_series

    if series is None:
        series = chief_series(G, order_cap)
    start = time.monotonic()
    values = []
    for N in series.terms:
        left = None if budget is None else budget - (time.monotonic() - start)
        if left is not None and left <= 0:
            raise BudgetExceeded("time budget exceeded")
        if N.order() == G.order():
            values.append(0)
        elif N.order() == 1:
            values.append(max_independent_generating(G, left, order_cap)[0])
        else:
            Q, _ = quotient(G, N, order_cap=order_cap)
            values.append(max_independent_generating(Q, left, order_cap)[0])
    return [b - a for a, b in zip(values, values[1:])]
