"""Permutation groups backed by a deterministic Schreier-Sims stabilizer chain."""

from __future__ import annotations

from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .exceptions import CapExceeded, DegreeMismatch, NotASubgroup, NotInGroup, NotNormal
from .perm import Permutation, format_cycles

ENUMERATION_CAP = 20_000

Tup = Tuple[int, ...]


def _mul(a: Tup, b: Tup) -> Tup:
    return tuple([b[i] for i in a])


def _inv(a: Tup) -> Tup:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


class _Level:
    __slots__ = ("point", "gens", "transversal")

    def __init__(self, point: int):
        self.point = point
        self.gens: List[Tup] = []
        # orbit point -> u with point^u == key
        self.transversal: Dict[int, Tup] = {}


class StabChain:
    """Base, strong generators and transversals for a permutation group.

    Base points are chosen as the smallest point moved by the element that
    forces a new level, so the chain depends only on the generator list.
    """

    def __init__(self, degree: int, gens: Sequence[Tup]):
        self.degree = degree
        self.identity: Tup = tuple(range(degree))
        self.levels: List[_Level] = []
        for g in gens:
            if g != self.identity and not self._contains(g):
                self._add_strong(g, 0)
                self._complete()

    @property
    def base(self) -> List[int]:
        return [lv.point for lv in self.levels]

    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.transversal)
        return n

    def strip(self, g: Tup, start: int = 0) -> Tuple[Tup, int]:
        for i in range(start, len(self.levels)):
            lv = self.levels[i]
            img = g[lv.point]
            u = lv.transversal.get(img)
            if u is None:
                return g, i
            g = _mul(g, _inv(u))
        return g, len(self.levels)

    def _contains(self, g: Tup) -> bool:
        h, _ = self.strip(g)
        return h == self.identity

    def _orbit(self, i: int) -> None:
        lv = self.levels[i]
        if not lv.transversal:
            lv.transversal[lv.point] = self.identity
        queue = list(lv.transversal)
        k = 0
        while k < len(queue):
            pt = queue[k]
            k += 1
            u = lv.transversal[pt]
            for s in lv.gens:
                img = s[pt]
                if img not in lv.transversal:
                    lv.transversal[img] = _mul(u, s)
                    queue.append(img)

    def _add_strong(self, g: Tup, i: int) -> None:
        # g fixes the base points of levels < i
        for j in range(i, len(self.levels) + 1):
            if j == len(self.levels):
                moved = next(p for p in range(self.degree) if g[p] != p)
                self.levels.append(_Level(moved))
            self.levels[j].gens.append(g)
            self._orbit(j)
            if g[self.levels[j].point] != self.levels[j].point:
                break

    def _complete(self) -> None:
        i = len(self.levels) - 1
        while i >= 0:
            lv = self.levels[i]
            restart = False
            for pt, u in list(lv.transversal.items()):
                for s in lv.gens:
                    img = s[pt]
                    h = _mul(_mul(u, s), _inv(lv.transversal[img]))
                    if h == self.identity:
                        continue
                    y, j = self.strip(h, i + 1)
                    if y != self.identity:
                        self._add_strong(y, i + 1)
                        i = len(self.levels) - 1
                        restart = True
                        break
                if restart:
                    break
            if not restart:
                i -= 1

    def elements(self) -> Iterator[Tup]:
        """All elements as products ``u_k ... u_1`` of transversal elements."""
        reps = [list(lv.transversal.values()) for lv in self.levels]

        def rec(level: int, acc: Tup):
            if level < 0:
                yield acc
                return
            for u in reps[level]:
                yield from rec(level - 1, _mul(acc, u))

        yield from rec(len(reps) - 1, self.identity)


class PermGroup:
    """A permutation group ``<generators>`` of the given degree."""

    def __init__(self, degree: int, generators: Sequence[Permutation] = (), name: str = ""):
        gens = []
        for g in generators:
            if g.degree != degree:
                raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
            gens.append(g)
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(gens)
        self.name = name

    @cached_property
    def chain(self) -> StabChain:
        return StabChain(self.degree, [g.images for g in self.generators])

    @cached_property
    def _order(self) -> int:
        return self.chain.order()

    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise DegreeMismatch(f"element degree {g.degree} != group degree {self.degree}")
        return self.chain._contains(g.images)

    __contains__ = contains

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def elements(self, cap: int = ENUMERATION_CAP) -> List[Permutation]:
        """All elements in lexicographic order of their image arrays."""
        if self.order() > cap:
            raise CapExceeded(f"order exceeds cap: {self.order()} > {cap}")
        return [Permutation(t, check=False) for t in sorted(self.chain.elements())]

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(other.contains(g) for g in self.generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        return self.is_subgroup_of(other) and all(
            self.contains(h.conjugate(g)) for h in self.generators for g in other.generators
        )

    def same_as(self, other: "PermGroup") -> bool:
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1 :])

    def table(self, cap: int = 6000):
        """Element table (multiplication table, classes) for small groups; cached."""
        from .table import GroupTable

        cached = self.__dict__.get("_table")
        if cached is None:
            cached = GroupTable(self, cap)
            self.__dict__["_table"] = cached
        return cached

    def cycle_strings(self) -> List[str]:
        return [format_cycles(g) for g in self.generators]

    def __repr__(self) -> str:
        label = self.name or "PermGroup"
        return f"<{label} degree={self.degree} gens={self.cycle_strings()}>"


def build_group(degree: int, gens: Sequence[Permutation], name: str = "") -> PermGroup:
    G = PermGroup(degree, gens, name=name)
    G.order()
    return G


def order(G: PermGroup) -> int:
    return G.order()


def contains(G: PermGroup, g: Permutation) -> bool:
    return G.contains(g)


def elements(G: PermGroup, cap: int = ENUMERATION_CAP) -> List[Permutation]:
    return G.elements(cap)


def closure(G: PermGroup, seed: Sequence[Permutation]) -> PermGroup:
    """Smallest subgroup containing ``seed`` (inside Sym of G's degree)."""
    for s in seed:
        if s.degree != G.degree:
            raise DegreeMismatch(f"seed {s} has degree {s.degree}, expected {G.degree}")
    return PermGroup(G.degree, [s for s in seed if not s.is_identity()])


def normal_closure(G: PermGroup, seed: Sequence[Permutation]) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing ``seed``."""
    for s in seed:
        if not G.contains(s):
            raise NotInGroup(f"seed {s} is not in the group")
    gens = [s for s in seed if not s.is_identity()]
    N = PermGroup(G.degree, gens)
    queue = list(gens)
    while queue:
        h = queue.pop()
        for g in G.generators:
            c = h.conjugate(g)
            if not N.contains(c):
                gens.append(c)
                N = PermGroup(G.degree, gens)
                queue.append(c)
    return N


def derived_subgroup(G: PermGroup) -> PermGroup:
    gs = G.generators
    comms = [a.inverse() * b.inverse() * a * b for a in gs for b in gs]
    return normal_closure(G, [c for c in comms if not c.is_identity()])


def is_solvable(G: PermGroup) -> bool:
    H = G
    while H.order() > 1:
        D = derived_subgroup(H)
        if D.order() == H.order():
            return False
        H = D
    return True


def intersection(A: PermGroup, B: PermGroup, cap: int = ENUMERATION_CAP) -> PermGroup:
    small, big = (A, B) if A.order() <= B.order() else (B, A)
    return subgroup_from_elements(small.degree, [g for g in small.elements(cap) if big.contains(g)])


def subgroup_from_elements(degree: int, elems: Sequence[Permutation]) -> PermGroup:
    """Group generated by a greedy subset of ``elems`` (which should form a group)."""
    gens: List[Permutation] = []
    H = PermGroup(degree, [])
    for g in sorted(elems):
        if not H.contains(g):
            gens.append(g)
            H = PermGroup(degree, gens)
    return H


class Homomorphism:
    """Group homomorphism determined by the images of the source generators."""

    def __init__(self, source: PermGroup, target: PermGroup, image_of_generator: Sequence[Permutation]):
        if len(image_of_generator) != len(source.generators):
            raise ValueError("need one image per source generator")
        self.source = source
        self.target = target
        self.image_of_generator = tuple(image_of_generator)

    @cached_property
    def _element_map(self) -> Dict[Tup, Tup]:
        ident = tuple(range(self.source.degree))
        timg = tuple(range(self.target.degree))
        mapping = {ident: timg}
        frontier = [ident]
        pairs = [(g.images, h.images) for g, h in zip(self.source.generators, self.image_of_generator)]
        while frontier:
            nxt = []
            for x in frontier:
                ix = mapping[x]
                for g, h in pairs:
                    y = _mul(x, g)
                    if y not in mapping:
                        mapping[y] = _mul(ix, h)
                        nxt.append(y)
            frontier = nxt
        if len(mapping) != self.source.order():
            raise RuntimeError("homomorphism walk did not reach every element")
        return mapping

    def image(self, g: Permutation) -> Permutation:
        if not self.source.contains(g):
            raise NotInGroup(f"{g} is not in the source group")
        return Permutation(self._element_map[g.images], check=False)

    def kernel(self) -> PermGroup:
        timg = tuple(range(self.target.degree))
        ker = [Permutation(x, check=False) for x, y in self._element_map.items() if y == timg]
        return subgroup_from_elements(self.source.degree, ker)

    def is_well_defined(self) -> bool:
        """Check multiplicativity on every (element, generator) pair."""
        m = self._element_map
        for x, ix in m.items():
            for g in self.source.generators:
                if m[_mul(x, g.images)] != _mul(ix, m[g.images]):
                    return False
        return True


def coset_action(G: PermGroup, M: PermGroup, cap: int = ENUMERATION_CAP) -> Homomorphism:
    """Action of ``G`` on the right cosets ``Mx`` by right multiplication.

    Cosets are numbered by their lexicographically least element.
    """
    if not M.is_subgroup_of(G):
        raise NotASubgroup("M is not a subgroup of G")
    T = G.table(max(cap, G.order()))
    mbits = T.subgroup_bits([T.index(g) for g in M.generators])
    labels, reps = T.right_coset_labels(mbits)
    images = []
    for g in G.generators:
        gi = T.index(g)
        images.append(Permutation([int(labels[T.mul[r, gi]]) for r in reps]))
    target = PermGroup(len(reps), images)
    return Homomorphism(G, target, images)


def quotient(G: PermGroup, N: PermGroup, reduce_degree: bool = True, order_cap: int = 2016):
    """Permutation representation of ``G/N`` and the projection onto it.

    Uses the action on cosets of the largest subgroup ``M`` containing ``N``
    with core exactly ``N`` (when the subgroup lattice is within
    ``order_cap``), else the regular action on the cosets of ``N``.
    """
    if not N.is_normal_in(G):
        raise NotNormal("N is not normal in G")
    if N.order() == 1:
        return G, Homomorphism(G, G, G.generators)
    M = N
    if reduce_degree and N.order() < G.order() and G.order() <= order_cap:
        from .structure import subgroup_lattice

        T = G.table()
        lat = subgroup_lattice(G, order_cap)
        nbits = T.subgroup_bits([T.index(g) for g in N.generators])
        best = None
        for bits, size in zip(lat.bits, lat.orders):
            if bits & nbits != nbits:
                continue
            if best is not None and size <= best[1]:
                continue
            if T.core(bits) == nbits:
                best = (bits, size)
        if best is not None:
            M = T.as_group(best[0])
    hom = coset_action(G, M)
    return hom.target, hom
