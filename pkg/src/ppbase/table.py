"""Element tables for small permutation groups.

Elements are numbered by their lexicographic rank (the identity is 0), the
multiplication table is a dense numpy array, and subgroups are Python ints
used as bitsets over element indices.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .exceptions import CapExceeded, NotInGroup
from .perm import Permutation, is_prime_power


def _hash_weights(degree: int) -> np.ndarray:
    rng = np.random.default_rng(20240517)
    return rng.integers(1, 2**62, size=degree, dtype=np.int64)


class GroupTable:
    def __init__(self, group, cap: int = 6000):
        n = group.order()
        if n > cap:
            raise CapExceeded(f"order exceeds cap: {n} > {cap}")
        self.group = group
        self.n = n
        self.degree = d = group.degree
        rows = sorted(group.chain.elements())
        E = np.array(rows, dtype=np.int16).reshape(n, d)
        self.E = E
        self.nbytes = (n + 7) // 8
        self._w = _hash_weights(max(d, 1))
        keys = self._keys(E)
        self._order_keys = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._order_keys]
        if np.unique(keys).size != n:
            raise RuntimeError("hash collision in element table")
        dtype = np.int16 if n < 2**15 else np.int32
        mul = np.empty((n, n), dtype=dtype)
        for a in range(n):
            # row a: a*b for every b, images b[a[i]]
            prod = E[:, E[a]] if d else E
            mul[a] = self._lookup(prod)
        self.mul = mul
        self.inv = np.argmin(mul, axis=1).astype(np.int64)  # identity is index 0
        self.full = (1 << n) - 1
        self.gen_idx = [self.index(g) for g in group.generators]
        self._compute_orders()
        self._compute_classes()

    def _keys(self, rows: np.ndarray) -> np.ndarray:
        with np.errstate(over="ignore"):
            return (rows.astype(np.int64) * self._w[None, : rows.shape[1]]).sum(axis=1)

    def _lookup(self, rows: np.ndarray) -> np.ndarray:
        keys = self._keys(rows)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, self.n - 1)
        idx = self._order_keys[pos]
        if not np.array_equal(self.E[idx], rows):
            raise NotInGroup("element not in group table")
        return idx

    def index(self, g: Permutation) -> int:
        if g.degree != self.degree:
            raise NotInGroup("degree mismatch")
        row = np.array(g.images, dtype=np.int16).reshape(1, -1)
        return int(self._lookup(row)[0])

    def perm(self, i: int) -> Permutation:
        return Permutation(self.E[i].tolist(), check=False)

    # bitsets

    def to_bits(self, idx) -> int:
        mask = np.zeros(self.n, dtype=bool)
        mask[np.asarray(idx, dtype=np.int64)] = True
        return self.mask_to_bits(mask)

    def mask_to_bits(self, mask: np.ndarray) -> int:
        return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")

    def bits_to_mask(self, bits: int) -> np.ndarray:
        raw = np.frombuffer(bits.to_bytes(self.nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[: self.n].astype(bool)

    def members(self, bits: int) -> np.ndarray:
        return np.flatnonzero(self.bits_to_mask(bits))

    # element data

    def _compute_orders(self) -> None:
        n = self.n
        order = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        ar = np.arange(n)
        k = 1
        while True:
            hit = (cur == 0) & (order == 0)
            order[hit] = k
            if (order > 0).all():
                break
            cur = self.mul[cur, ar]
            k += 1
        self.orders = order
        self.is_pp = np.array([is_prime_power(int(o)) for o in order], dtype=bool)

    def power(self, i: int, k: int) -> int:
        k %= int(self.orders[i])
        result, base = 0, i
        while k:
            if k & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            k >>= 1
        return result

    def conj_map(self, g: int) -> np.ndarray:
        """Index array sending x to g^-1 x g."""
        return self.mul[self.mul[self.inv[g]], g].astype(np.int64)

    def _compute_classes(self) -> None:
        n = self.n
        ar = np.arange(n)
        self.gen_conj = [self.conj_map(g) for g in self.gen_idx]
        if self.gen_conj:
            rows = np.concatenate([ar] * len(self.gen_conj))
            cols = np.concatenate(self.gen_conj)
            graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
            _, labels = connected_components(graph, directed=True, connection="weak")
        else:
            labels = np.zeros(n, dtype=np.int64)
        # renumber classes by their least member
        first: Dict[int, int] = {}
        for i, lab in enumerate(labels.tolist()):
            first.setdefault(lab, i)
        order = sorted(first, key=first.get)
        remap = {lab: k for k, lab in enumerate(order)}
        self.class_of = np.array([remap[lab] for lab in labels.tolist()], dtype=np.int64)
        self.class_reps = [first[lab] for lab in order]
        self.class_sizes = np.bincount(self.class_of).tolist()

    def class_members(self, c: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == c)

    # subgroups

    def closure_mask(self, gens: Sequence[int], early_full: bool = False) -> np.ndarray:
        n = self.n
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        g = np.unique(np.asarray([x for x in gens if x != 0], dtype=np.int64))
        if g.size == 0:
            return seen
        frontier = np.array([0], dtype=np.int64)
        count = 1
        while frontier.size:
            nxt = self.mul[frontier[:, None], g[None, :]].ravel()
            nxt = nxt[~seen[nxt]]
            if nxt.size == 0:
                break
            nxt = np.unique(nxt)
            seen[nxt] = True
            count += nxt.size
            if early_full and 2 * count > n:
                return np.ones(n, dtype=bool)
            frontier = nxt.astype(np.int64)
        return seen

    def subgroup_bits(self, gens: Sequence[int], early_full: bool = False) -> int:
        return self.mask_to_bits(self.closure_mask(gens, early_full))

    def generates(self, gens: Sequence[int]) -> bool:
        return self.closure_mask(gens, early_full=True).all()

    def small_generators(self, bits: int) -> List[int]:
        """Greedy generating set: repeatedly add the least element not yet covered."""
        members = self.members(bits)
        gens: List[int] = []
        cur = np.zeros(self.n, dtype=bool)
        cur[0] = True
        for x in members.tolist():
            if not cur[x]:
                gens.append(x)
                cur = self.closure_mask(gens)
        return gens

    def as_group(self, bits: int, name: str = ""):
        from .group import PermGroup

        return PermGroup(self.degree, [self.perm(i) for i in self.small_generators(bits)], name=name)

    def bits_of_group(self, H) -> int:
        return self.subgroup_bits([self.index(g) for g in H.generators])

    def conjugate_bits(self, bits: int, cmap: np.ndarray) -> int:
        return self.to_bits(cmap[self.members(bits)])

    def conjugates(self, bits: int) -> List[int]:
        """Orbit of a subgroup under conjugation, in discovery order."""
        seen = {bits: None}
        queue = [bits]
        k = 0
        while k < len(queue):
            b = queue[k]
            k += 1
            mem = self.members(b)
            for cmap in self.gen_conj:
                c = self.to_bits(cmap[mem])
                if c not in seen:
                    seen[c] = None
                    queue.append(c)
        return queue

    def core(self, bits: int) -> int:
        result = bits
        for c in self.conjugates(bits):
            result &= c
        return result

    def is_normal_bits(self, bits: int) -> bool:
        mem = self.members(bits)
        return all(self.to_bits(c[mem]) == bits for c in self.gen_conj)

    def normal_closure_bits(self, idx: Sequence[int]) -> int:
        gens = list(dict.fromkeys(int(i) for i in idx if i != 0))
        bits = self.subgroup_bits(gens)
        while True:
            mem = self.members(bits)
            extra = set()
            for c in self.gen_conj:
                img = c[np.asarray(gens, dtype=np.int64)] if gens else np.array([], dtype=np.int64)
                for y in img.tolist():
                    if not (bits >> y) & 1:
                        extra.add(y)
            if not extra:
                return bits
            gens.extend(sorted(extra))
            bits = self.subgroup_bits(gens)

    def commutator_bits(self, a_bits: int, b_bits: int) -> int:
        """Subgroup [A, B] for normal subgroups A, B (normal closure of generator commutators)."""
        ga = self.small_generators(a_bits)
        gb = self.small_generators(b_bits)
        comms = []
        for x in ga:
            for y in gb:
                c = self.mul[self.mul[self.inv[x], self.inv[y]], self.mul[x, y]]
                if c != 0:
                    comms.append(int(c))
        return self.normal_closure_bits(comms) if comms else 1

    def derived_bits(self, bits: int) -> int:
        """Derived subgroup of the subgroup ``bits`` (closure under its own conjugation)."""
        gens = self.small_generators(bits)
        comms = set()
        for x in gens:
            for y in gens:
                c = int(self.mul[self.mul[self.inv[x], self.inv[y]], self.mul[x, y]])
                if c:
                    comms.add(c)
        if not comms:
            return 1
        cur = sorted(comms)
        out = self.subgroup_bits(cur)
        while True:
            mem = self.members(out)
            extra = []
            for g in gens:
                cm = self.conj_map(g)
                for y in cm[np.asarray(cur, dtype=np.int64)].tolist():
                    if not (out >> y) & 1:
                        extra.append(y)
            if not extra:
                return out
            cur = sorted(set(cur) | set(extra))
            out = self.subgroup_bits(cur)

    def right_coset_labels(self, bits: int) -> Tuple[np.ndarray, List[int]]:
        """Label each element by its right coset ``Mx``; labels ordered by least member."""
        mem = self.members(bits)
        least = self.mul[mem].min(axis=0)  # least element of M x, for each x
        reps = sorted(set(least.tolist()))
        pos = {r: k for k, r in enumerate(reps)}
        labels = np.array([pos[v] for v in least.tolist()], dtype=np.int64)
        return labels, reps

    def normal_subgroups(self) -> List[int]:
        """All normal subgroups as bitsets, sorted by (order, bits)."""
        cached = self.__dict__.get("_normals")
        if cached is not None:
            return cached
        class_closures = []
        for c, r in enumerate(self.class_reps):
            if r == 0:
                continue
            class_closures.append(self.normal_closure_bits([r]))
        class_closures = list(dict.fromkeys(class_closures))
        found = {1: None}
        queue = [1]
        k = 0
        while k < len(queue):
            A = queue[k]
            k += 1
            for C in class_closures:
                if C & A == C:
                    continue
                J = self.normal_closure_bits(self.small_generators(A) + self.small_generators(C))
                if J not in found:
                    found[J] = None
                    queue.append(J)
        out = sorted(found, key=lambda b: (b.bit_count(), b))
        self.__dict__["_normals"] = out
        return out
